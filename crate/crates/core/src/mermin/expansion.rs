use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hyperstate::MAX_QUBITS;
use crate::scalar::Real;

/// Exact dyadic rational `num / 2^log2_den`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Dyadic {
    pub num: i64,
    pub log2_den: u32,
}

impl Dyadic {
    pub fn to_real<T: Real>(self) -> T {
        T::lit(self.num as f64) / T::lit((1u64 << self.log2_den) as f64)
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.log2_den == 0 || self.num == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, 1u64 << self.log2_den)
        }
    }
}

/// Monomial coefficients of `M_n` and `M_n'`.
///
/// Index `i` stands for `c_1 … c_n`, where `c_j = a_j'` iff bit `n - j` of
/// `i` is set. Coefficients are stored exactly as numerators over the
/// common denominator `2^log2_den`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MerminExpansion {
    n: usize,
    numerators: Vec<i64>,
    log2_den: u32,
}

/// Unrolls `M_1 = a_1`, `M_k = ½ M_{k-1}(a_k + a_k') + ½ M_{k-1}'(a_k − a_k')`.
pub fn expand_mermin(n: usize) -> Result<MerminExpansion> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::QubitCount { n, min: 1, max: MAX_QUBITS });
    }
    let mut nums = vec![1i64, 0];
    let mut log2_den = 0u32;
    for k in 2..=n {
        let mask = (1usize << (k - 1)) - 1;
        let mut next = vec![0i64; 1 << k];
        for (i, &c) in nums.iter().enumerate() {
            let swapped = nums[!i & mask];
            next[i << 1] = c + swapped;
            next[(i << 1) | 1] = c - swapped;
        }
        nums = next;
        log2_den += 1;
        while log2_den > 0 && nums.iter().all(|c| c % 2 == 0) {
            nums.iter_mut().for_each(|c| *c /= 2);
            log2_den -= 1;
        }
    }
    Ok(MerminExpansion { n, numerators: nums, log2_den })
}

impl MerminExpansion {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.numerators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.numerators.is_empty()
    }

    pub fn coeff(&self, i: usize) -> Dyadic {
        self.reduce(self.numerators[i])
    }

    /// Coefficient in `M_n'`, the primed/unprimed swap of `M_n`.
    pub fn coeff_prime(&self, i: usize) -> Dyadic {
        self.coeff(!i & (self.len() - 1))
    }

    pub fn coeffs<T: Real>(&self) -> Vec<T> {
        (0..self.len()).map(|i| self.coeff(i).to_real()).collect()
    }

    pub fn coeffs_prime<T: Real>(&self) -> Vec<T> {
        (0..self.len()).map(|i| self.coeff_prime(i).to_real()).collect()
    }

    /// `(index, coefficient)` for the monomials actually present in `M_n`.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, Dyadic)> + '_ {
        (0..self.len())
            .map(|i| (i, self.coeff(i)))
            .filter(|(_, c)| !c.is_zero())
    }

    fn reduce(&self, mut num: i64) -> Dyadic {
        let mut log2_den = self.log2_den;
        while log2_den > 0 && num % 2 == 0 {
            num /= 2;
            log2_den -= 1;
        }
        if num == 0 {
            log2_den = 0;
        }
        Dyadic { num, log2_den }
    }
}

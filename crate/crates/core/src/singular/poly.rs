use std::fmt;

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hyperstate::StateVector;
use crate::scalar::{Cplx, Real};

type C = Cplx<f64>;

/// Affine chart of `(P¹)ⁿ`: bit `n-1-q` of `mask` says which homogeneous
/// coordinate of factor `q` is set to 1 (the other one becomes the affine
/// variable). Mask 0 is the chart `x₀ = 1` on every factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Chart {
    pub n: usize,
    pub mask: usize,
}

impl Chart {
    pub fn new(n: usize, mask: usize) -> Result<Self> {
        if mask >> n != 0 {
            return Err(Error::InvalidConfig(format!("chart mask {mask:#b} has more than {n} bits")));
        }
        Ok(Self { n, mask })
    }

    pub fn all(n: usize) -> impl Iterator<Item = Chart> {
        (0..1usize << n).map(move |mask| Chart { n, mask })
    }

    /// Which homogeneous coordinate of factor `q` is fixed to 1.
    pub fn fixed(&self, q: usize) -> usize {
        (self.mask >> (self.n - 1 - q)) & 1
    }

    /// Homogeneous pair of factor `q` for affine value `t`.
    pub fn lift(&self, q: usize, t: C) -> [C; 2] {
        let one = C::new(1.0, 0.0);
        if self.fixed(q) == 0 {
            [one, t]
        } else {
            [t, one]
        }
    }
}

impl fmt::Display for Chart {
    /// One digit per factor: the index of the coordinate set to 1.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        (0..self.n).try_for_each(|q| write!(f, "{}", self.fixed(q)))
    }
}

/// Multilinear polynomial in `n` affine variables; `coeffs[m]` multiplies
/// `∏ t_j` over the variables `j` whose bit `n-1-j` is set in `m`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SectionPolynomial {
    pub n: usize,
    pub chart: Chart,
    pub coeffs: Vec<C>,
}

/// Restriction of `Σ conj(a_i) ∏ x^{(q)}_{i_q}` to `chart`, scaled so the
/// largest coefficient has modulus 1 (sign vectors give exact `±1`).
pub fn section_polynomial<T: Real>(state: &StateVector<T>, chart: Chart) -> Result<SectionPolynomial> {
    if chart.n != state.n() {
        return Err(Error::DimensionMismatch { expected: state.n(), found: chart.n });
    }
    let amps = state.to_f64().into_amps();
    let scale = amps.iter().map(|a| a.norm()).fold(0.0, f64::max);
    let mut coeffs = vec![C::new(0.0, 0.0); amps.len()];
    for (idx, a) in amps.iter().enumerate() {
        coeffs[idx ^ chart.mask] = a.conj() / scale;
    }
    Ok(SectionPolynomial { n: state.n(), chart, coeffs })
}

impl SectionPolynomial {
    pub fn from_coeffs(n: usize, coeffs: Vec<C>) -> Result<Self> {
        if coeffs.len() != 1 << n {
            return Err(Error::DimensionMismatch { expected: 1 << n, found: coeffs.len() });
        }
        Ok(Self { n, chart: Chart { n, mask: 0 }, coeffs })
    }

    fn bit(&self, j: usize) -> usize {
        1 << (self.n - 1 - j)
    }

    /// `prod[m] = ∏_{j ∈ m} t_j` for every mask.
    fn monomials(&self, t: &[C]) -> Vec<C> {
        let mut prod = vec![C::new(1.0, 0.0); self.coeffs.len()];
        for m in 1..prod.len() {
            let low = m & m.wrapping_neg();
            let j = self.n - 1 - low.trailing_zeros() as usize;
            prod[m] = prod[m ^ low] * t[j];
        }
        prod
    }

    /// `Σ_{m ⊇ fixed} c_m ∏_{j ∈ m∖fixed} t_j`, a mixed partial derivative.
    fn partial(&self, prod: &[C], fixed: usize) -> C {
        let free = (self.coeffs.len() - 1) & !fixed;
        let mut sum = C::new(0.0, 0.0);
        let mut s = free;
        loop {
            sum += self.coeffs[s | fixed] * prod[s];
            if s == 0 {
                break;
            }
            s = (s - 1) & free;
        }
        sum
    }

    /// Direct monomial sum.
    pub fn value(&self, t: &[C]) -> C {
        let prod = self.monomials(t);
        self.partial(&prod, 0)
    }

    /// Nested evaluation, contracting one variable at a time; an evaluation
    /// path independent of [`Self::value`].
    pub fn value_horner(&self, t: &[C]) -> C {
        let mut table = self.coeffs.clone();
        for j in (0..self.n).rev() {
            // variable j is the current least significant bit
            let half = table.len() / 2;
            table = (0..half).map(|m| table[2 * m] + t[j] * table[2 * m + 1]).collect();
        }
        table[0]
    }

    pub fn gradient(&self, t: &[C]) -> Vec<C> {
        let prod = self.monomials(t);
        (0..self.n).map(|j| self.partial(&prod, self.bit(j))).collect()
    }

    /// Gradient by central differences on the Horner path, for cross-checks.
    pub fn gradient_horner(&self, t: &[C]) -> Vec<C> {
        // multilinear in each variable: the secant through t_j ± 1 is exact
        (0..self.n)
            .map(|j| {
                let mut hi = t.to_vec();
                let mut lo = t.to_vec();
                hi[j] += 1.0;
                lo[j] -= 1.0;
                (self.value_horner(&hi) - self.value_horner(&lo)) / 2.0
            })
            .collect()
    }

    /// Value, gradient and Hessian (zero diagonal) in one pass.
    pub fn jet(&self, t: &[C]) -> (C, Vec<C>, DMatrix<C>) {
        let prod = self.monomials(t);
        let value = self.partial(&prod, 0);
        let grad = (0..self.n).map(|j| self.partial(&prod, self.bit(j))).collect();
        let mut hess = DMatrix::from_element(self.n, self.n, C::new(0.0, 0.0));
        for j in 0..self.n {
            for k in j + 1..self.n {
                let h = self.partial(&prod, self.bit(j) | self.bit(k));
                hess[(j, k)] = h;
                hess[(k, j)] = h;
            }
        }
        (value, grad, hess)
    }

    pub fn hessian(&self, t: &[C]) -> DMatrix<C> {
        self.jet(t).2
    }

    /// Signs of the real coefficients, `0` where the coefficient vanishes.
    pub fn signs(&self) -> Vec<i8> {
        self.coeffs
            .iter()
            .map(|c| if c.re > 0.5 { 1 } else if c.re < -0.5 { -1 } else { 0 })
            .collect()
    }
}

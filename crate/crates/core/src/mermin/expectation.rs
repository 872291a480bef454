use crate::error::{Error, Result};
use crate::hyperstate::{apply_1q, StateVector};
use crate::mermin::{expand_mermin, observable_matrix, BlochVector, MerminExpansion, ObservableFamily};
use crate::scalar::{czero, Cplx, Real};

/// `⟨ψ| c_1 ⊗ … ⊗ c_n |ψ⟩` before discarding the imaginary part.
pub fn monomial_expectation_complex<T: Real>(
    state: &StateVector<T>,
    directions: &[BlochVector<T>],
) -> Result<Cplx<T>> {
    if directions.len() != state.n() {
        return Err(Error::DimensionMismatch { expected: state.n(), found: directions.len() });
    }
    let mut phi = state.amps().to_vec();
    for (q, v) in directions.iter().enumerate() {
        apply_1q(&mut phi, state.n(), q, &observable_matrix(v));
    }
    Ok(inner(state.amps(), &phi))
}

/// Expectation of a tensor product of single-qubit observables.
///
/// Each 2×2 observable is applied to a copy of the amplitudes, so the cost
/// is `O(n·2ⁿ)`.
pub fn monomial_expectation<T: Real>(state: &StateVector<T>, directions: &[BlochVector<T>]) -> Result<T> {
    Ok(monomial_expectation_complex(state, directions)?.re)
}

fn inner<T: Real>(a: &[Cplx<T>], b: &[Cplx<T>]) -> Cplx<T> {
    a.iter().zip(b).fold(czero(), |acc, (x, y)| acc + x.conj() * y)
}

/// Expectations of all `2ⁿ` monomials of a family, indexed as in
/// [`MerminExpansion`]. Shares operator applications between monomials with
/// a common prefix.
pub fn all_monomial_expectations<T: Real>(state: &StateVector<T>, family: &ObservableFamily<T>) -> Result<Vec<T>> {
    let n = state.n();
    if family.n != n {
        return Err(Error::DimensionMismatch { expected: n, found: family.n });
    }
    let ops: Vec<[[[Cplx<T>; 2]; 2]; 2]> = (0..n)
        .map(|q| [observable_matrix(&family.a[q]), observable_matrix(&family.a_prime[q])])
        .collect();
    let mut out = vec![T::zero(); 1 << n];
    let mut stack: Vec<Vec<Cplx<T>>> = vec![state.amps().to_vec()];
    descend(state.amps(), n, 0, 0, &ops, &mut stack, &mut out);
    Ok(out)
}

fn descend<T: Real>(
    psi: &[Cplx<T>],
    n: usize,
    q: usize,
    index: usize,
    ops: &[[[[Cplx<T>; 2]; 2]; 2]],
    stack: &mut Vec<Vec<Cplx<T>>>,
    out: &mut [T],
) {
    if q == n {
        out[index] = inner(psi, &stack[q]).re;
        return;
    }
    for primed in 0..2 {
        let mut next = stack[q].clone();
        apply_1q(&mut next, n, q, &ops[q][primed]);
        stack.push(next);
        descend(psi, n, q + 1, (index << 1) | primed, ops, stack, out);
        stack.pop();
    }
}

/// `⟨ψ|M_n|ψ⟩` (or `⟨ψ|M_n'|ψ⟩` with `use_prime`).
pub fn mermin_expectation<T: Real>(state: &StateVector<T>, family: &ObservableFamily<T>, use_prime: bool) -> Result<T> {
    let expansion = expand_mermin(state.n())?;
    let values = all_monomial_expectations(state, family)?;
    let coeffs = if use_prime { expansion.coeffs_prime::<T>() } else { expansion.coeffs::<T>() };
    Ok(coeffs.iter().zip(&values).map(|(c, v)| *c * *v).sum())
}

/// Pauli correlation tensor `T_μ = ⟨ψ|σ_{μ_1} ⊗ … ⊗ σ_{μ_n}|ψ⟩`, `μ ∈ {X, Y, Z}ⁿ`.
///
/// Index is base 3 with qubit 1 as the most significant digit. Every
/// full-weight product observable is a contraction of this tensor with one
/// real 3-vector per qubit.
#[derive(Clone, Debug)]
pub struct CorrelationTensor<T: Real> {
    n: usize,
    values: Vec<T>,
}

impl<T: Real> CorrelationTensor<T> {
    pub fn new(state: &StateVector<T>) -> Self {
        let n = state.n();
        let paulis = [
            BlochVector::x(),
            BlochVector { alpha: T::zero(), beta: T::one(), gamma: T::zero() },
            BlochVector::z(),
        ]
        .map(|v| observable_matrix(&v));
        let mut values = Vec::with_capacity(3usize.pow(n as u32));
        let mut stack = vec![state.amps().to_vec()];
        fill(state.amps(), n, 0, &paulis, &mut stack, &mut values);
        Self { n, values }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// Expectations of all `2ⁿ` monomials of `family`.
    pub fn monomials(&self, family: &ObservableFamily<T>) -> Vec<T> {
        let mut blocks = vec![self.values.clone()];
        for q in 0..self.n {
            let dirs = [family.a[q].as_array(), family.a_prime[q].as_array()];
            let len = blocks[0].len() / 3;
            let mut next = Vec::with_capacity(blocks.len() * 2);
            for block in &blocks {
                for v in &dirs {
                    next.push(
                        (0..len)
                            .map(|j| v[0] * block[j] + v[1] * block[len + j] + v[2] * block[2 * len + j])
                            .collect::<Vec<T>>(),
                    );
                }
            }
            blocks = next;
        }
        blocks.into_iter().map(|b| b[0]).collect()
    }
}

fn fill<T: Real>(
    psi: &[Cplx<T>],
    n: usize,
    q: usize,
    paulis: &[[[Cplx<T>; 2]; 2]; 3],
    stack: &mut Vec<Vec<Cplx<T>>>,
    out: &mut Vec<T>,
) {
    if q == n {
        out.push(inner(psi, &stack[q]).re);
        return;
    }
    for p in paulis {
        let mut next = stack[q].clone();
        apply_1q(&mut next, n, q, p);
        stack.push(next);
        fill(psi, n, q + 1, paulis, stack, out);
        stack.pop();
    }
}

/// Fast `(⟨M_n⟩, ⟨M_n'⟩)` evaluation for one fixed state.
#[derive(Clone, Debug)]
pub struct MerminEvaluator<T: Real> {
    tensor: CorrelationTensor<T>,
    coeffs: Vec<T>,
    coeffs_prime: Vec<T>,
}

impl<T: Real> MerminEvaluator<T> {
    pub fn new(state: &StateVector<T>) -> Result<Self> {
        let expansion: MerminExpansion = expand_mermin(state.n())?;
        Ok(Self {
            tensor: CorrelationTensor::new(state),
            coeffs: expansion.coeffs(),
            coeffs_prime: expansion.coeffs_prime(),
        })
    }

    pub fn n(&self) -> usize {
        self.tensor.n
    }

    pub fn evaluate(&self, family: &ObservableFamily<T>) -> (T, T) {
        let e = self.tensor.monomials(family);
        let m = self.coeffs.iter().zip(&e).map(|(c, v)| *c * *v).sum();
        let mp = self.coeffs_prime.iter().zip(&e).map(|(c, v)| *c * *v).sum();
        (m, mp)
    }
}

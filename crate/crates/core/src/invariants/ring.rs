//! Minimal commutative-ring abstraction so the hyperdeterminant formulas run
//! unchanged over complex floats, exact integers, magnitude bounds and
//! binary forms.

use std::ops::{Add, Mul, Sub};

use crate::scalar::{Cplx, Real};

pub trait Ring: Clone + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> {
    fn from_int(k: i64) -> Self;

    fn zero() -> Self {
        Self::from_int(0)
    }
}

impl<T: Real> Ring for Cplx<T> {
    fn from_int(k: i64) -> Self {
        Cplx::new(T::lit(k as f64), T::zero())
    }
}

impl Ring for i128 {
    fn from_int(k: i64) -> Self {
        k as i128
    }
}

/// Upper bound on the sum of absolute values of all monomials.
///
/// Subtraction adds, so evaluating a polynomial in this ring on `|x_i|`
/// yields `Σ |monomial|`, the natural scale for a zero test.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Magnitude<T: Real>(pub T);

impl<T: Real> Add for Magnitude<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Magnitude(self.0 + rhs.0)
    }
}

impl<T: Real> Sub for Magnitude<T> {
    type Output = Self;
    // magnitudes of both operands accumulate
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, rhs: Self) -> Self {
        Magnitude(self.0 + rhs.0)
    }
}

impl<T: Real> Mul for Magnitude<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Magnitude(self.0 * rhs.0)
    }
}

impl<T: Real> Ring for Magnitude<T> {
    fn from_int(k: i64) -> Self {
        Magnitude(T::lit(k.unsigned_abs() as f64))
    }
}

/// Homogeneous polynomial in `(z₀, z₁)`; `coeffs[k]` multiplies `z₀^{d-k} z₁^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct BinaryForm<R: Ring> {
    pub coeffs: Vec<R>,
}

impl<R: Ring> BinaryForm<R> {
    pub fn linear(c0: R, c1: R) -> Self {
        Self { coeffs: vec![c0, c1] }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

impl<R: Ring> Add for BinaryForm<R> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        zip_with(self, rhs, |a, b| a + b)
    }
}

impl<R: Ring> Sub for BinaryForm<R> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        zip_with(self, rhs, |a, b| a - b)
    }
}

fn zip_with<R: Ring>(a: BinaryForm<R>, b: BinaryForm<R>, f: impl Fn(R, R) -> R) -> BinaryForm<R> {
    // only forms of equal degree are ever combined; constants pad up
    let len = a.coeffs.len().max(b.coeffs.len());
    let pad = |mut v: Vec<R>| {
        v.resize(len, R::zero());
        v
    };
    BinaryForm {
        coeffs: pad(a.coeffs)
            .into_iter()
            .zip(pad(b.coeffs))
            .map(|(x, y)| f(x, y))
            .collect(),
    }
}

impl<R: Ring> Mul for BinaryForm<R> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = vec![R::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        BinaryForm { coeffs: out }
    }
}

impl<R: Ring> Ring for BinaryForm<R> {
    fn from_int(k: i64) -> Self {
        Self { coeffs: vec![R::from_int(k)] }
    }
}

//! Cayley hyperdeterminants of formats 2×2×2 and 2×2×2×2.
//!
//! The four-qubit hyperdeterminant is obtained by Schläfli's method: keep the
//! fourth tensor slot symbolic, `b_{ijk}(z₀, z₁) = a_{ijk0} z₀ + a_{ijk1} z₁`,
//! take the 2×2×2 hyperdeterminant of `b` (a binary quartic in `z`), and
//! return the discriminant of that quartic. The result is a degree-24
//! polynomial in the amplitudes, fixed up to a global constant; only its
//! vanishing is meaningful.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hyperstate::StateVector;
use crate::invariants::ring::{BinaryForm, Magnitude, Ring};
use crate::scalar::{Cplx, Real};

/// Relative zero threshold for the hyperdeterminant.
pub const HDET_ZERO_TOL: f64 = 1e-10;

/// Entries `t_{ijk}` stored at `4i + 2j + k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor222<R>(pub [R; 8]);

/// `q(z₀, z₁) = Σ c_k z₀^{4-k} z₁^k`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BinaryQuartic<R>(pub [R; 5]);

/// Classical degree-4 Cayley hyperdeterminant of a 2×2×2 tensor.
pub fn cayley_hyperdet_222<R: Ring>(t: &Tensor222<R>) -> R {
    let [t000, t001, t010, t011, t100, t101, t110, t111] = t.0.clone();
    let sq = |a: &R, b: &R| a.clone() * a.clone() * b.clone() * b.clone();
    let p4 = |a: &R, b: &R, c: &R, d: &R| a.clone() * b.clone() * c.clone() * d.clone();
    let squares = sq(&t000, &t111) + sq(&t001, &t110) + sq(&t010, &t101) + sq(&t100, &t011);
    let paired = p4(&t000, &t001, &t110, &t111)
        + p4(&t000, &t010, &t101, &t111)
        + p4(&t000, &t100, &t011, &t111)
        + p4(&t001, &t010, &t101, &t110)
        + p4(&t001, &t100, &t011, &t110)
        + p4(&t010, &t100, &t011, &t101);
    let crossed = p4(&t000, &t011, &t101, &t110) + p4(&t001, &t010, &t100, &t111);
    squares - R::from_int(2) * paired + R::from_int(4) * crossed
}

/// Schläfli quartic of sixteen amplitudes (index `8i + 4j + 2k + l`).
pub fn schlafli_quartic_of<R: Ring>(amps: &[R]) -> BinaryQuartic<R> {
    assert_eq!(amps.len(), 16);
    let entries: [BinaryForm<R>; 8] =
        std::array::from_fn(|ijk| BinaryForm::linear(amps[2 * ijk].clone(), amps[2 * ijk + 1].clone()));
    let form = cayley_hyperdet_222(&Tensor222(entries));
    let mut coeffs = form.coeffs;
    coeffs.resize(5, R::zero());
    BinaryQuartic(std::array::from_fn(|k| coeffs[k].clone()))
}

pub fn schlafli_quartic<T: Real>(state: &StateVector<T>) -> Result<BinaryQuartic<Cplx<T>>> {
    check_four(state.n())?;
    Ok(schlafli_quartic_of(state.amps()))
}

/// Invariants `I`, `J` and discriminant `Δ = 4I³ − J²` of a binary quartic.
///
/// `Δ` equals 27 times the classical discriminant
/// `c₀⁶ ∏_{i<j} (r_i − r_j)²`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuarticInvariants<R> {
    pub i: R,
    pub j: R,
    pub delta: R,
}

pub fn quartic_invariants<R: Ring>(q: &BinaryQuartic<R>) -> QuarticInvariants<R> {
    let [c0, c1, c2, c3, c4] = q.0.clone();
    let k = R::from_int;
    let i = k(12) * c0.clone() * c4.clone() - k(3) * c1.clone() * c3.clone() + c2.clone() * c2.clone();
    let j = k(72) * c0.clone() * c2.clone() * c4.clone() + k(9) * c1.clone() * c2.clone() * c3.clone()
        - k(27) * c0 * c3.clone() * c3
        - k(27) * c1.clone() * c1 * c4
        - k(2) * c2.clone() * c2.clone() * c2;
    let delta = k(4) * i.clone() * i.clone() * i.clone() - j.clone() * j.clone();
    QuarticInvariants { i, j, delta }
}

pub fn quartic_discriminant<R: Ring>(q: &BinaryQuartic<R>) -> R {
    quartic_invariants(q).delta
}

/// Value of the four-qubit hyperdeterminant together with its zero test.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Hyperdeterminant<T: Real> {
    pub value: Cplx<T>,
    /// Sum of absolute values of all monomials contributing to `value`.
    pub scale: T,
}

impl<T: Real> Hyperdeterminant<T> {
    pub fn is_zero(&self) -> bool {
        self.value.norm().as_f64() <= HDET_ZERO_TOL * self.scale.as_f64()
    }

    pub fn relative(&self) -> f64 {
        let s = self.scale.as_f64();
        if s == 0.0 {
            0.0
        } else {
            self.value.norm().as_f64() / s
        }
    }
}

/// Four-qubit hyperdeterminant of raw (not necessarily normalized) amplitudes.
pub fn hdet_2222_amplitudes<T: Real>(amps: &[Cplx<T>]) -> Result<Hyperdeterminant<T>> {
    if amps.len() != 16 {
        return Err(Error::DimensionMismatch { expected: 16, found: amps.len() });
    }
    let value = quartic_discriminant(&schlafli_quartic_of(amps));
    let mags: Vec<Magnitude<T>> = amps.iter().map(|a| Magnitude(a.norm())).collect();
    let scale = quartic_discriminant(&schlafli_quartic_of(&mags)).0;
    Ok(Hyperdeterminant { value, scale })
}

pub fn hdet_2222<T: Real>(state: &StateVector<T>) -> Result<Hyperdeterminant<T>> {
    check_four(state.n())?;
    hdet_2222_amplitudes(state.amps())
}

/// Exact hyperdeterminant of a `±1` sign vector (amplitudes scaled by 4).
///
/// For the unit-norm state the value is this integer times `4^{-24}`.
pub fn hdet_exact_signs(signs: &[i8]) -> Result<i128> {
    if signs.len() != 16 {
        return Err(Error::DimensionMismatch { expected: 16, found: signs.len() });
    }
    let ints: Vec<i128> = signs.iter().map(|&s| s as i128).collect();
    Ok(quartic_discriminant(&schlafli_quartic_of(&ints)))
}

fn check_four(n: usize) -> Result<()> {
    if n != 4 {
        return Err(Error::QubitCount { n, min: 4, max: 4 });
    }
    Ok(())
}

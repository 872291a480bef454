use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{cplx, Cplx, Real};

/// Unit direction `(α, β, γ)` on the Bloch sphere, i.e. the observable `αX + βY + γZ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 3]", into = "[f64; 3]", bound = "T: Real")]
pub struct BlochVector<T: Real = f64> {
    pub alpha: T,
    pub beta: T,
    pub gamma: T,
}

impl<T: Real> BlochVector<T> {
    /// Renormalizes `(α, β, γ)`; rejects the zero vector.
    #[allow(clippy::neg_cmp_op_on_partial_ord)] // also rejects NaN
    pub fn new(alpha: T, beta: T, gamma: T) -> Result<Self> {
        let norm = (alpha * alpha + beta * beta + gamma * gamma).sqrt();
        if !(norm > T::zero()) || !norm.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "direction ({alpha}, {beta}, {gamma}) has no usable norm"
            )));
        }
        Ok(Self {
            alpha: alpha / norm,
            beta: beta / norm,
            gamma: gamma / norm,
        })
    }

    pub fn x() -> Self {
        Self { alpha: T::one(), beta: T::zero(), gamma: T::zero() }
    }

    pub fn z() -> Self {
        Self { alpha: T::zero(), beta: T::zero(), gamma: T::one() }
    }

    /// `(sin θ cos φ, sin θ sin φ, cos θ)` with polar `theta` and azimuth `phi`.
    pub fn from_angles(theta: T, phi: T) -> Self {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        Self { alpha: st * cp, beta: st * sp, gamma: ct }
    }

    /// `(polar, azimuth)`, polar in `[0, π]`, azimuth in `(-π, π]`.
    pub fn angles(&self) -> (T, T) {
        let polar = self.gamma.max(-T::one()).min(T::one()).acos();
        let azimuth = self.beta.atan2(self.alpha);
        (polar, azimuth)
    }

    pub fn neg(&self) -> Self {
        Self { alpha: -self.alpha, beta: -self.beta, gamma: -self.gamma }
    }

    pub fn as_array(&self) -> [T; 3] {
        [self.alpha, self.beta, self.gamma]
    }

    pub fn to_f64(&self) -> BlochVector<f64> {
        BlochVector {
            alpha: self.alpha.as_f64(),
            beta: self.beta.as_f64(),
            gamma: self.gamma.as_f64(),
        }
    }
}

impl<T: Real> TryFrom<[f64; 3]> for BlochVector<T> {
    type Error = Error;

    fn try_from([a, b, c]: [f64; 3]) -> Result<Self> {
        Self::new(T::lit(a), T::lit(b), T::lit(c))
    }
}

impl<T: Real> From<BlochVector<T>> for [f64; 3] {
    fn from(v: BlochVector<T>) -> Self {
        [v.alpha.as_f64(), v.beta.as_f64(), v.gamma.as_f64()]
    }
}

/// `αX + βY + γZ` as a dense 2×2 matrix.
pub fn observable_matrix<T: Real>(v: &BlochVector<T>) -> [[Cplx<T>; 2]; 2] {
    let z = T::zero();
    [
        [cplx(v.gamma, z), cplx(v.alpha, -v.beta)],
        [cplx(v.alpha, v.beta), cplx(-v.gamma, z)],
    ]
}

/// The `2n` directions `a_1, a_1', …, a_n, a_n'` of a Mermin polynomial.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawFamily<T>", bound = "T: Real")]
pub struct ObservableFamily<T: Real = f64> {
    pub n: usize,
    pub a: Vec<BlochVector<T>>,
    pub a_prime: Vec<BlochVector<T>>,
}

#[derive(Deserialize)]
#[serde(bound(deserialize = "T: Real"))]
struct RawFamily<T: Real> {
    n: usize,
    a: Vec<BlochVector<T>>,
    a_prime: Vec<BlochVector<T>>,
}

impl<T: Real> TryFrom<RawFamily<T>> for ObservableFamily<T> {
    type Error = Error;

    fn try_from(raw: RawFamily<T>) -> Result<Self> {
        Self::new(raw.a, raw.a_prime).and_then(|f| {
            if f.n != raw.n {
                Err(Error::DimensionMismatch { expected: raw.n, found: f.n })
            } else {
                Ok(f)
            }
        })
    }
}

impl<T: Real> ObservableFamily<T> {
    pub fn new(a: Vec<BlochVector<T>>, a_prime: Vec<BlochVector<T>>) -> Result<Self> {
        if a.len() != a_prime.len() {
            return Err(Error::DimensionMismatch { expected: a.len(), found: a_prime.len() });
        }
        if a.is_empty() {
            return Err(Error::InvalidConfig("empty observable family".into()));
        }
        Ok(Self { n: a.len(), a, a_prime })
    }

    /// Family from `4n` angles laid out `[θ_j, φ_j, θ'_j, φ'_j]` per qubit.
    pub fn from_angles(angles: &[T]) -> Self {
        assert!(angles.len().is_multiple_of(4) && !angles.is_empty());
        let n = angles.len() / 4;
        let (a, a_prime) = angles
            .chunks_exact(4)
            .map(|c| (BlochVector::from_angles(c[0], c[1]), BlochVector::from_angles(c[2], c[3])))
            .unzip();
        Self { n, a, a_prime }
    }

    pub fn to_angles(&self) -> Vec<T> {
        self.a
            .iter()
            .zip(&self.a_prime)
            .flat_map(|(u, v)| {
                let (t, p) = u.angles();
                let (tp, pp) = v.angles();
                [t, p, tp, pp]
            })
            .collect()
    }

    /// Directions of monomial `index`: qubit `j` is primed iff bit `n-1-j` is set.
    pub fn monomial(&self, index: usize) -> Vec<BlochVector<T>> {
        (0..self.n)
            .map(|j| {
                if index >> (self.n - 1 - j) & 1 == 1 {
                    self.a_prime[j]
                } else {
                    self.a[j]
                }
            })
            .collect()
    }

    /// Primed and unprimed directions exchanged.
    pub fn swapped(&self) -> Self {
        Self { n: self.n, a: self.a_prime.clone(), a_prime: self.a.clone() }
    }

    pub fn to_f64(&self) -> ObservableFamily<f64> {
        ObservableFamily {
            n: self.n,
            a: self.a.iter().map(BlochVector::to_f64).collect(),
            a_prime: self.a_prime.iter().map(BlochVector::to_f64).collect(),
        }
    }
}

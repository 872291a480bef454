use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Cplx;
use crate::singular::SectionPolynomial;

type C = Cplx<f64>;

/// Thresholds and budgets of the numerical singularity search.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SectionConfig {
    /// Random starts per chart.
    pub starts: usize,
    pub seed: u64,
    /// Starts are uniform in the disk of this radius, per coordinate.
    pub start_radius: f64,
    pub max_iterations: usize,
    /// Stop when the update norm falls below this.
    pub step_tol: f64,
    /// Acceptance: `‖∇f‖ ≤ grad_tol` and `|f| ≤ value_tol`.
    pub grad_tol: f64,
    pub value_tol: f64,
    /// Looser thresholds; points between the two bands make a report inconclusive.
    pub near_grad_tol: f64,
    pub near_value_tol: f64,
    /// Same-chart deduplication radius (max coordinate distance).
    pub dedup_tol: f64,
    /// Cross-chart merge radius (per-factor chordal distance).
    pub merge_tol: f64,
    /// Two distinct points closer than this suggest a continuum.
    pub cluster_tol: f64,
    /// More distinct points than this suggest a continuum.
    pub max_isolated: usize,
    /// Merged points kept in a report; further findings are only counted.
    pub max_points: usize,
    /// Singular values below `corank_cutoff · σ_max` count toward the corank.
    pub corank_cutoff: f64,
    /// Iterates leaving this radius are abandoned (they live in another chart).
    pub escape_radius: f64,
    pub max_step: f64,
}

impl Default for SectionConfig {
    fn default() -> Self {
        Self {
            starts: 500,
            seed: 0,
            start_radius: 3.0,
            max_iterations: 50,
            step_tol: 1e-12,
            grad_tol: 1e-10,
            value_tol: 1e-8,
            near_grad_tol: 1e-6,
            near_value_tol: 1e-5,
            dedup_tol: 1e-6,
            merge_tol: 1e-6,
            cluster_tol: 1e-2,
            max_isolated: 20,
            max_points: 200,
            corank_cutoff: 1e-7,
            escape_radius: 1e3,
            max_step: 2.0,
        }
    }
}

impl SectionConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    #[allow(clippy::neg_cmp_op_on_partial_ord)] // also rejects NaN
    pub fn validate(&self) -> Result<()> {
        let positive = [
            self.start_radius,
            self.step_tol,
            self.grad_tol,
            self.value_tol,
            self.dedup_tol,
            self.merge_tol,
            self.cluster_tol,
            self.corank_cutoff,
            self.escape_radius,
            self.max_step,
        ];
        if self.starts == 0 || self.max_iterations == 0 || self.max_points <= self.max_isolated || positive.iter().any(|x| !(*x > 0.0)) {
            return Err(Error::InvalidConfig("section search budgets and tolerances must be positive".into()));
        }
        if self.near_grad_tol < self.grad_tol || self.near_value_tol < self.value_tol {
            return Err(Error::InvalidConfig("near-miss band must contain the acceptance band".into()));
        }
        Ok(())
    }
}

/// Per-chart bookkeeping of the multistart search.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct SearchDiagnostics {
    pub starts: usize,
    /// Iterates that left the escape radius or hit a singular linear system.
    pub diverged: usize,
    /// Critical points with `f ≠ 0`.
    pub nonsingular_critical: usize,
    /// Starts that neither converged to a critical point nor diverged.
    pub unconverged: usize,
    pub accepted: usize,
    /// Points inside the unit polydisc that fall between the two bands and
    /// are not near any accepted point.
    pub near_misses: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriticalSearch {
    pub points: Vec<Vec<C>>,
    pub diagnostics: SearchDiagnostics,
}

/// Multistart Levenberg–Marquardt on `∇f = 0`, keeping solutions with `f = 0`.
///
/// The damping `μ = ‖∇f‖²` keeps convergence quadratic even where the
/// solution set is not isolated.
pub fn find_critical_points(poly: &SectionPolynomial, config: &SectionConfig) -> Result<CriticalSearch> {
    config.validate()?;
    Ok(search(poly, config, 0))
}

pub(crate) fn search(poly: &SectionPolynomial, config: &SectionConfig, stream: u64) -> CriticalSearch {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(stream);
    let n = poly.n;
    let mut diag = SearchDiagnostics { starts: config.starts, ..Default::default() };
    let mut points: Vec<Vec<C>> = Vec::new();
    let mut near: Vec<Vec<C>> = Vec::new();
    for _ in 0..config.starts {
        let start: Vec<C> = (0..n)
            .map(|_| {
                let r = config.start_radius * rng.random::<f64>().sqrt();
                let a = std::f64::consts::TAU * rng.random::<f64>();
                C::from_polar(r, a)
            })
            .collect();
        let Some(t) = newton(poly, start, config) else {
            diag.diverged += 1;
            continue;
        };
        let (f, grad, _) = poly.jet(&t);
        let g = norm(&grad);
        if g <= config.grad_tol && f.norm() <= config.value_tol {
            if !points.iter().any(|p| max_dist(p, &t) <= config.dedup_tol) {
                points.push(t);
            }
            diag.accepted += 1;
        } else if g <= config.near_grad_tol && f.norm() <= config.near_value_tol {
            near.push(t);
        } else if g <= config.near_grad_tol {
            diag.nonsingular_critical += 1;
        } else {
            diag.unconverged += 1;
        }
    }
    // near misses are only suspicious inside the unit polydisc, where every
    // point has its best-conditioned chart, and away from accepted points
    diag.near_misses = near
        .iter()
        .filter(|t| t.iter().all(|x| x.norm() <= 1.0 + 1e-9))
        .filter(|t| !points.iter().any(|p| max_dist(p, t) <= 1e-4))
        .count();
    diag.unconverged += near.len() - diag.near_misses;
    CriticalSearch { points, diagnostics: diag }
}

fn newton(poly: &SectionPolynomial, mut t: Vec<C>, config: &SectionConfig) -> Option<Vec<C>> {
    let n = poly.n;
    for _ in 0..config.max_iterations {
        let (_, grad, hess) = poly.jet(&t);
        let fnorm = norm(&grad);
        if fnorm <= 1e-15 {
            break;
        }
        let jh = hess.adjoint();
        let lhs = &jh * &hess + DMatrix::from_diagonal_element(n, n, C::new(fnorm * fnorm, 0.0));
        let rhs = -(&jh * DVector::from_vec(grad));
        let mut step = lhs.lu().solve(&rhs)?;
        let len = step.norm();
        if !len.is_finite() {
            return None;
        }
        if len > config.max_step {
            step *= C::new(config.max_step / len, 0.0);
        }
        for (x, d) in t.iter_mut().zip(step.iter()) {
            *x += d;
        }
        if t.iter().any(|x| x.norm() > config.escape_radius) {
            return None;
        }
        if len <= config.step_tol {
            break;
        }
    }
    Some(t)
}

pub(crate) fn norm(v: &[C]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

fn max_dist(a: &[C], b: &[C]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Hessian corank at a point: singular values below `cutoff · σ_max`.
pub fn hessian_corank(hess: &DMatrix<C>, cutoff: f64) -> (usize, Vec<f64>) {
    let sv: Vec<f64> = hess.clone().svd(false, false).singular_values.iter().copied().collect();
    let max = sv.iter().copied().fold(0.0, f64::max);
    let corank = if max == 0.0 {
        sv.len()
    } else {
        sv.iter().filter(|&&s| s < cutoff * max).count()
    };
    (corank, sv)
}

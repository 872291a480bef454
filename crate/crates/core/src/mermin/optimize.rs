//! Seeded multistart hill climbing for `μ` and `μ̃`.
//!
//! Directions are parametrized by spherical angles, four per qubit, so the
//! unit-norm constraint never has to be enforced. Each restart draws a
//! uniform random family, then repeatedly perturbs every angle with Gaussian
//! noise of the current step size and keeps the proposal only if the
//! objective strictly increases. The step shrinks geometrically.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hyperstate::StateVector;
use crate::mermin::{MerminEvaluator, ObservableFamily};
use crate::scalar::Real;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimizationConfig {
    pub restarts: usize,
    pub iterations: usize,
    /// Initial Gaussian step, radians.
    pub initial_step: f64,
    /// Multiplicative step decay per iteration, in `(0, 1)`.
    pub step_decay: f64,
    pub seed: u64,
    /// A restart stops early once its step falls below this.
    pub tolerance: f64,
}

impl Default for OptimizationConfig {
    fn default() -> Self {
        Self {
            restarts: 20,
            iterations: 5000,
            initial_step: 0.5,
            step_decay: 0.999,
            seed: 0,
            tolerance: 1e-9,
        }
    }
}

impl OptimizationConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self { seed, ..Self::default() }
    }

    #[allow(clippy::neg_cmp_op_on_partial_ord)] // also rejects NaN
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidConfig(msg.to_string()));
        if self.restarts == 0 || self.iterations == 0 {
            return bad("restarts and iterations must be positive");
        }
        if !(self.initial_step > 0.0) || !(self.tolerance > 0.0) {
            return bad("step and tolerance must be positive");
        }
        if !(self.step_decay > 0.0 && self.step_decay < 1.0) {
            return bad("step decay must lie in (0, 1)");
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Objective {
    /// `⟨M_n⟩`
    Mu,
    /// `⟨M_n⟩² + ⟨M_n'⟩²`
    MuTilde,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MuResult<T: Real = f64> {
    pub value: T,
    pub objective: Objective,
    pub family: ObservableFamily<T>,
    /// Best value reached by each restart, in restart order.
    pub trace: Vec<T>,
    pub best_restart: usize,
    pub seed: u64,
}

impl<T: Real> MuResult<T> {
    /// Quantum upper bound `2^{(n-1)/2}` for `μ`, `2^{n-1}` for `μ̃`.
    pub fn bound(&self) -> f64 {
        let n = self.family.n as f64;
        match self.objective {
            Objective::Mu => 2f64.powf((n - 1.0) / 2.0),
            Objective::MuTilde => 2f64.powf(n - 1.0),
        }
    }
}

/// `μ(ψ) = max ⟨ψ|M_n|ψ⟩` over all directions.
pub fn optimize_mu<T: Real>(state: &StateVector<T>, config: &OptimizationConfig) -> Result<MuResult<T>> {
    optimize(state, config, Objective::Mu)
}

/// `μ̃(ψ) = max (⟨ψ|M_n|ψ⟩² + ⟨ψ|M_n'|ψ⟩²)` over one shared family.
pub fn optimize_mu_tilde<T: Real>(state: &StateVector<T>, config: &OptimizationConfig) -> Result<MuResult<T>> {
    optimize(state, config, Objective::MuTilde)
}

pub fn optimize<T: Real>(state: &StateVector<T>, config: &OptimizationConfig, objective: Objective) -> Result<MuResult<T>> {
    config.validate()?;
    let evaluator = MerminEvaluator::new(state)?;
    let runs: Vec<(T, Vec<T>)> = (0..config.restarts)
        .into_par_iter()
        .map(|r| climb(&evaluator, config, objective, r))
        .collect();
    // lowest restart index wins ties
    let mut best = 0;
    for (i, run) in runs.iter().enumerate() {
        if run.0 > runs[best].0 {
            best = i;
        }
    }
    let trace = runs.iter().map(|r| r.0).collect();
    let (value, angles) = runs.into_iter().nth(best).expect("at least one restart");
    Ok(MuResult {
        value,
        objective,
        family: ObservableFamily::from_angles(&angles),
        trace,
        best_restart: best,
        seed: config.seed,
    })
}

fn score<T: Real>(evaluator: &MerminEvaluator<T>, angles: &[T], objective: Objective) -> T {
    let (m, mp) = evaluator.evaluate(&ObservableFamily::from_angles(angles));
    match objective {
        Objective::Mu => m,
        Objective::MuTilde => m * m + mp * mp,
    }
}

fn climb<T: Real>(
    evaluator: &MerminEvaluator<T>,
    config: &OptimizationConfig,
    objective: Objective,
    restart: usize,
) -> (T, Vec<T>) {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(restart as u64);
    let n = evaluator.n();
    let mut angles: Vec<T> = (0..2 * n)
        .flat_map(|_| {
            // uniform on the sphere
            let polar = (2.0 * rng.random::<f64>() - 1.0).acos();
            let azimuth = 2.0 * std::f64::consts::PI * rng.random::<f64>();
            [T::lit(polar), T::lit(azimuth)]
        })
        .collect();
    let mut best = score(evaluator, &angles, objective);
    let mut proposal = angles.clone();
    let mut step = config.initial_step;
    for _ in 0..config.iterations {
        if step < config.tolerance {
            break;
        }
        for (p, a) in proposal.iter_mut().zip(&angles) {
            let z: f64 = StandardNormal.sample(&mut rng);
            *p = *a + T::lit(step * z);
        }
        let value = score(evaluator, &proposal, objective);
        if value > best {
            best = value;
            angles.copy_from_slice(&proposal);
        }
        step *= config.step_decay;
    }
    (best, angles)
}

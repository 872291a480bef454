use std::path::Path;

use anyhow::{bail, Result};
use clap::Args;
use hypermermin::mermin::{optimize, Objective, OptimizationConfig};
use hypermermin::reference::{reaches, KUNIFORM_MU};
use serde_json::json;

use crate::fmt::{pass, sig, table};
use crate::source::StateSource;
use crate::Outcome;

#[derive(Args, Debug)]
pub struct MuArgs {
    #[command(flatten)]
    pub source: StateSource,
    /// Maximize ⟨M⟩² + ⟨M'⟩² instead of ⟨M⟩
    #[arg(long)]
    pub mu_tilde: bool,
    #[arg(long, default_value_t = OptimizationConfig::default().restarts)]
    pub restarts: usize,
    #[arg(long, default_value_t = OptimizationConfig::default().iterations)]
    pub iters: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Initial step in radians
    #[arg(long, default_value_t = OptimizationConfig::default().initial_step)]
    pub step: f64,
    /// Per-iteration step decay
    #[arg(long, default_value_t = OptimizationConfig::default().step_decay)]
    pub decay: f64,
    /// Fail unless the value reaches the published target (catalog or k-uniform table)
    #[arg(long)]
    pub check: bool,
    /// Tolerance for --check [default: 1e-2 for μ, 2e-2 for μ̃]
    #[arg(long)]
    pub tol: Option<f64>,
}

pub fn run(args: &MuArgs, catalog: Option<&Path>) -> Result<Outcome> {
    let r = args.source.resolve(catalog)?;
    let config = OptimizationConfig {
        restarts: args.restarts,
        iterations: args.iters,
        initial_step: args.step,
        step_decay: args.decay,
        seed: args.seed,
        ..OptimizationConfig::default()
    };
    let objective = if args.mu_tilde { Objective::MuTilde } else { Objective::Mu };
    let result = optimize(&r.state, &config, objective)?;
    let name = if args.mu_tilde { "mu~" } else { "mu" };

    let target = match (&args.source.kuniform, objective) {
        (Some(nk), Objective::Mu) => KUNIFORM_MU.iter().find(|e| e.0 == nk[0] && e.1 == nk[1]).map(|e| e.2),
        (Some(_), Objective::MuTilde) => None,
        (None, Objective::Mu) => r.expected.mu,
        (None, Objective::MuTilde) => r.expected.mu_tilde,
    };
    let tol = args.tol.unwrap_or(if args.mu_tilde { 2e-2 } else { 1e-2 });

    let mut text = format!(
        "{}: {name} = {} (bound {}, seed {}, best restart {}/{})\n",
        r.label,
        sig(result.value),
        sig(result.bound()),
        config.seed,
        result.best_restart + 1,
        config.restarts
    );
    let rows: Vec<Vec<String>> = (0..result.family.n)
        .map(|j| {
            let (t, p) = result.family.a[j].angles();
            let (tp, pp) = result.family.a_prime[j].angles();
            vec![(j + 1).to_string(), sig(t), sig(p), sig(tp), sig(pp)]
        })
        .collect();
    text += &table(&["qubit", "theta", "phi", "theta'", "phi'"], &rows);
    text += &format!("restart bests: {}\n", result.trace.iter().map(|v| sig(*v)).collect::<Vec<_>>().join(" "));

    let mut passed = true;
    let mut check = serde_json::Value::Null;
    if args.check {
        let Some(t) = target else {
            bail!("--check needs a published target; none is known for {}", r.label);
        };
        passed = reaches(result.value, t, tol) && result.value <= result.bound() + 1e-9;
        text += &format!("check: {name} {} vs target {} (tol {}) {}\n", sig(result.value), sig(t), tol, pass(passed));
        check = json!({ "target": t, "tol": tol, "passed": passed });
    } else if let Some(t) = target {
        text += &format!("published: {}\n", sig(t));
    }
    Ok(Outcome {
        text,
        config: json!({ "input": r.label, "optimizer": config, "seeds": [config.seed] }),
        results: json!({ "result": result, "check": check }),
        passed,
    })
}

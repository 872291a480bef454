use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Subcommand, ValueEnum};
use hypermermin::circuits::{
    ancilla_purity, emit_qasm, estimate_mermin, hypergraph_circuit, main_register, measurement_circuit, simulate,
    Estimation,
};
use hypermermin::mermin::{mermin_expectation, ObservableFamily};
use serde_json::json;

use crate::fmt::{pass, sig, table};
use crate::source::StateSource;
use crate::Outcome;

/// Largest deviation from the direct statevector accepted by `verify`.
const STATE_TOL: f64 = 1e-12;
/// Largest `|1 − purity|` of the ancilla register accepted by `verify`.
const PURITY_TOL: f64 = 1e-10;

#[derive(Subcommand, Debug)]
pub enum CircuitCmd {
    /// Print or write the preparation (or measurement) circuit
    Emit(EmitArgs),
    /// Simulate the preparation circuit and compare with the direct state
    Verify(VerifyArgs),
    /// Estimate ⟨M_n⟩ from one measurement circuit per Mermin monomial
    Estimate(EstimateArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Qasm,
    Json,
}

#[derive(Args, Debug)]
pub struct EmitArgs {
    #[command(flatten)]
    pub source: StateSource,
    #[arg(long, value_enum, default_value_t = Format::Qasm)]
    pub format: Format,
    /// Observable family file; with --monomial, emit that monomial's measurement circuit
    #[arg(long, value_name = "FILE", requires = "monomial")]
    pub angles: Option<PathBuf>,
    /// Monomial index (qubit j primed iff bit n-1-j is set)
    #[arg(long, requires = "angles")]
    pub monomial: Option<usize>,
    #[arg(long, short, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub source: StateSource,
}

#[derive(Args, Debug)]
pub struct EstimateArgs {
    #[command(flatten)]
    pub source: StateSource,
    /// Observable family file (`{"n":..,"a":[[x,y,z],..],"a_prime":[..]}`)
    #[arg(long, value_name = "FILE")]
    pub angles: PathBuf,
    /// Shots per monomial; omit for the exact outcome distribution
    #[arg(long)]
    pub shots: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Fail unless the estimate lies within --tol of this value
    #[arg(long, requires = "tol")]
    pub expect: Option<f64>,
    #[arg(long, requires = "expect")]
    pub tol: Option<f64>,
}

pub fn run(cmd: &CircuitCmd, catalog: Option<&Path>) -> Result<Outcome> {
    match cmd {
        CircuitCmd::Emit(args) => emit(args, catalog),
        CircuitCmd::Verify(args) => verify(args, catalog),
        CircuitCmd::Estimate(args) => estimate(args, catalog),
    }
}

fn load_family(path: &Path) -> Result<ObservableFamily<f64>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing observable family {}", path.display()))
}

fn emit(args: &EmitArgs, catalog: Option<&Path>) -> Result<Outcome> {
    let r = args.source.resolve(catalog)?;
    let g = r.require_hypergraph()?;
    let mut circuit = hypergraph_circuit(g)?;
    if let (Some(path), Some(index)) = (&args.angles, args.monomial) {
        let family = load_family(path)?;
        if family.n != g.n() {
            bail!("family has {} qubits, state has {}", family.n, g.n());
        }
        if index >> g.n() != 0 {
            bail!("monomial index {index} out of range for {} qubits", g.n());
        }
        circuit = measurement_circuit(&circuit, &family.monomial(index))?;
    }
    let body = match args.format {
        Format::Qasm => emit_qasm(&circuit),
        Format::Json => circuit.to_json() + "\n",
    };
    let counts = json!({
        "h": circuit.count("h"), "cz": circuit.count("cz"), "ccx": circuit.count("ccx"),
        "u3": circuit.count("u3"), "measure": circuit.count("measure"),
    });
    let text = match &args.out {
        Some(path) => {
            std::fs::write(path, &body).with_context(|| format!("writing {}", path.display()))?;
            format!("{}: {} gates -> {} ({counts})\n", r.label, circuit.gates().len(), path.display())
        }
        None => body,
    };
    Ok(Outcome::ok(
        text,
        json!({ "input": r.label, "format": format!("{:?}", args.format).to_lowercase(), "monomial": args.monomial }),
        json!({ "qubits": circuit.qubits(), "ancillas": circuit.ancillas(), "gate_counts": counts }),
    ))
}

fn verify(args: &VerifyArgs, catalog: Option<&Path>) -> Result<Outcome> {
    let r = args.source.resolve(catalog)?;
    let g = r.require_hypergraph()?;
    let circuit = hypergraph_circuit(g)?;
    let out = simulate::<f64>(&circuit)?;
    let (main, leak) = main_register(&out, &circuit)?;
    let deviation = main.distance_up_to_phase(&r.state);
    let purity = ancilla_purity(&out, &circuit)?;
    let passed = deviation <= STATE_TOL && (1.0 - purity).abs() <= PURITY_TOL;
    let text = format!(
        "{}: {} qubits + {} ancillas, {} gates\nmax amplitude deviation {:.2e} (tol {:.0e})\nancilla purity {} (leak {:.2e}, tol {:.0e})\n{}\n",
        r.label,
        circuit.qubits(),
        circuit.ancillas(),
        circuit.gates().len(),
        deviation,
        STATE_TOL,
        sig(purity),
        leak,
        PURITY_TOL,
        pass(passed)
    );
    Ok(Outcome {
        text,
        config: json!({ "input": r.label, "state_tol": STATE_TOL, "purity_tol": PURITY_TOL }),
        results: json!({ "deviation": deviation, "purity": purity, "leak": leak, "passed": passed }),
        passed,
    })
}

fn estimate(args: &EstimateArgs, catalog: Option<&Path>) -> Result<Outcome> {
    let r = args.source.resolve(catalog)?;
    let g = r.require_hypergraph()?;
    let family = load_family(&args.angles)?;
    let mode = match args.shots {
        Some(0) => bail!("--shots must be positive"),
        Some(shots) => Estimation::Shots { shots, seed: args.seed },
        None => Estimation::Exact,
    };
    let est = estimate_mermin(g, &family, mode)?;
    let exact = mermin_expectation(&r.state, &family, false)?;
    let rows: Vec<Vec<String>> = est
        .terms
        .iter()
        .map(|t| vec![t.label.clone(), sig(t.coeff), sig(t.estimate)])
        .collect();
    let mut text = format!("{}: {} measurement circuits\n", r.label, est.terms.len());
    text += &table(&["monomial", "coeff", "estimate"], &rows);
    text += &match mode {
        Estimation::Exact => format!("<M{}> = {}\n", g.n(), sig(est.value)),
        Estimation::Shots { shots, seed } => format!(
            "<M{}> ≈ {} ({shots} shots per circuit, seed {seed}); exact {}\n",
            g.n(),
            sig(est.value),
            sig(exact)
        ),
    };
    let mut passed = true;
    if let (Some(target), Some(tol)) = (args.expect, args.tol) {
        passed = (est.value - target).abs() <= tol;
        text += &format!("check: |{} - {}| <= {tol} {}\n", sig(est.value), sig(target), pass(passed));
    }
    Ok(Outcome {
        text,
        config: json!({ "input": r.label, "angles": args.angles, "mode": mode, "seeds": [args.seed] }),
        results: json!({ "estimate": est, "exact": exact, "passed": passed }),
        passed,
    })
}

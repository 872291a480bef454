use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Args, Subcommand};
use hypermermin::hyperstate::{hypergraph_signs, infer_hypergraph, StateVector};
use serde_json::json;

use crate::source::StateSource;
use crate::Outcome;

#[derive(Subcommand, Debug)]
pub enum StateCmd {
    /// Write the statevector of a hypergraph state
    Build(BuildArgs),
    /// Recover the hyperedges of a statevector file
    Infer(InferArgs),
}

#[derive(Args, Debug)]
pub struct BuildArgs {
    #[command(flatten)]
    pub source: StateSource,
    /// Output file; the statevector is printed when omitted
    #[arg(long, short, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct InferArgs {
    /// Statevector file
    #[arg(value_name = "FILE")]
    pub input: PathBuf,
}

pub fn run(cmd: &StateCmd, catalog: Option<&Path>) -> Result<Outcome> {
    match cmd {
        StateCmd::Build(args) => build(args, catalog),
        StateCmd::Infer(args) => infer(args),
    }
}

fn build(args: &BuildArgs, catalog: Option<&Path>) -> Result<Outcome> {
    let r = args.source.resolve(catalog)?;
    let g = r.require_hypergraph()?;
    let signs = hypergraph_signs(g);
    let negative: Vec<usize> = (0..signs.len()).filter(|&i| signs[i] < 0).collect();
    let body = r.state.to_json();
    let text = match &args.out {
        Some(path) => {
            std::fs::write(path, &body).with_context(|| format!("writing {}", path.display()))?;
            format!(
                "{}: {} amplitudes, edges \"{}\", negative at {:?} -> {}\n",
                r.label,
                signs.len(),
                g.edges_string(),
                negative,
                path.display()
            )
        }
        None => body + "\n",
    };
    Ok(Outcome::ok(
        text,
        json!({ "input": r.label, "out": args.out }),
        json!({ "n": g.n(), "edges": g.edges(), "signs": signs }),
    ))
}

fn infer(args: &InferArgs) -> Result<Outcome> {
    let text = std::fs::read_to_string(&args.input).with_context(|| format!("reading {}", args.input.display()))?;
    let state: StateVector<f64> = StateVector::from_json(&text).with_context(|| format!("parsing {}", args.input.display()))?;
    let g = infer_hypergraph(&state).with_context(|| format!("{} is not a hypergraph state", args.input.display()))?;
    Ok(Outcome::ok(
        format!("{}\n", g.edges_string()),
        json!({ "input": args.input }),
        json!({ "n": g.n(), "edges": g.edges() }),
    ))
}

//! Resolution of the `--state / --catalog / --kuniform / --n --edges` inputs.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::Args;
use hypermermin::hyperstate::{build_hypergraph_state, infer_hypergraph, Catalog, Expected, Hypergraph, StateVector};

#[derive(Args, Debug, Clone, Default)]
pub struct StateSource {
    /// Statevector file (`{"n":..,"amps":[[re,im],..]}`)
    #[arg(long, value_name = "FILE")]
    pub state: Option<PathBuf>,
    /// Catalog entry name
    #[arg(long, value_name = "NAME")]
    pub catalog: Option<String>,
    /// k-uniform hypergraph state on n qubits
    #[arg(long, num_args = 2, value_names = ["N", "K"])]
    pub kuniform: Option<Vec<usize>>,
    /// Number of qubits for --edges
    #[arg(long, requires = "edges")]
    pub n: Option<usize>,
    /// Hyperedges such as "1,2,3;3,4" (vertices 1-based)
    #[arg(long, requires = "n")]
    pub edges: Option<String>,
}

pub struct Resolved {
    pub label: String,
    pub state: StateVector<f64>,
    /// Present whenever the state is a hypergraph state.
    pub hypergraph: Option<Hypergraph>,
    pub expected: Expected,
}

impl Resolved {
    pub fn n(&self) -> usize {
        self.state.n()
    }

    pub fn require_hypergraph(&self) -> Result<&Hypergraph> {
        self.hypergraph
            .as_ref()
            .with_context(|| format!("{} is not a hypergraph state", self.label))
    }
}

pub fn load_catalog(path: Option<&Path>) -> Result<Catalog> {
    match path {
        Some(p) => Catalog::load(p).with_context(|| format!("loading catalog {}", p.display())),
        None => Ok(Catalog::builtin()),
    }
}

impl StateSource {
    pub fn resolve(&self, catalog_path: Option<&Path>) -> Result<Resolved> {
        let given = [self.state.is_some(), self.catalog.is_some(), self.kuniform.is_some(), self.edges.is_some()];
        match given.iter().filter(|&&g| g).count() {
            0 => bail!("no input: pass one of --state, --catalog, --kuniform or --n/--edges"),
            1 => {}
            _ => bail!("conflicting inputs: pass exactly one of --state, --catalog, --kuniform or --n/--edges"),
        }
        if let Some(path) = &self.state {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let state = StateVector::from_json(&text).with_context(|| format!("parsing {}", path.display()))?;
            return Ok(Resolved {
                label: path.display().to_string(),
                hypergraph: infer_hypergraph(&state).ok(),
                state,
                expected: Expected::default(),
            });
        }
        if let Some(name) = &self.catalog {
            let catalog = load_catalog(catalog_path)?;
            let entry = catalog.get(name)?;
            return Ok(Resolved {
                label: entry.name.clone(),
                state: entry.state()?,
                hypergraph: Some(entry.hypergraph()?),
                expected: entry.expected.clone(),
            });
        }
        let (label, g) = if let Some(nk) = &self.kuniform {
            (format!("H({},{})", nk[0], nk[1]), Hypergraph::k_uniform(nk[0], nk[1])?)
        } else {
            let n = self.n.expect("clap enforces --n with --edges");
            let edges = self.edges.as_deref().unwrap_or_default();
            let g = Hypergraph::parse_edges(n, edges).context("invalid --edges")?;
            (format!("n={n} edges={}", g.edges_string()), g)
        };
        Ok(Resolved { label, state: build_hypergraph_state(&g)?, hypergraph: Some(g), expected: Expected::default() })
    }
}

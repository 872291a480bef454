use std::path::Path;

use anyhow::{bail, Result};
use clap::{Args, ValueEnum};
use hypermermin::invariants::{classify_stratum, hdet_2222};
use hypermermin::reference::SingularDescriptor;
use hypermermin::singular::{analyze_section, SectionConfig, SectionReport, Verdict};
use serde_json::{json, Value};

use crate::fmt::{pass, sig, sig_c, table};
use crate::source::StateSource;
use crate::Outcome;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Hyperdeterminant plus section analysis (four qubits)
    Stratum,
    /// Hyperdeterminant only (four qubits)
    Hdet,
    /// Section analysis only (up to seven qubits)
    Singular,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub source: StateSource,
    #[arg(long, value_enum, default_value_t = Mode::Stratum)]
    pub mode: Mode,
    /// Newton starts per chart
    #[arg(long, default_value_t = SectionConfig::default().starts)]
    pub starts: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Fail unless the singular points match the catalog's descriptor
    #[arg(long)]
    pub check: bool,
}

pub fn point_table(report: &SectionReport) -> String {
    if report.points.is_empty() {
        return "(no singular points)\n".into();
    }
    let rows: Vec<Vec<String>> = report
        .points
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let coords: Vec<String> = p.affine.iter().map(|z| sig_c(*z)).collect();
            vec![
                (i + 1).to_string(),
                p.chart.to_string(),
                format!("({})", coords.join(", ")),
                p.hessian_corank.to_string(),
                format!("{:.1e}", p.residual),
                p.seen_in.len().to_string(),
            ]
        })
        .collect();
    let mut out = table(&["#", "chart", "coordinates", "corank", "residual", "charts"], &rows);
    if report.overflow > 0 {
        out += &format!("(+{} further chart findings not merged)\n", report.overflow);
    }
    out
}

/// Checks a section report against a `"Smooth"` / `"<k>A1"` descriptor.
pub fn matches_descriptor(report: &SectionReport, descriptor: SingularDescriptor) -> bool {
    match descriptor {
        SingularDescriptor::Smooth => report.verdict == Verdict::Smooth,
        SingularDescriptor::Morse(k) => {
            report.verdict == Verdict::IsolatedSingular && report.points.len() == k && report.all_morse()
        }
    }
}

/// `"Smooth"`, `"2A1"`, or the verdict with its corank counts.
pub fn describe(report: &SectionReport) -> String {
    match report.verdict {
        Verdict::Smooth => "Smooth".into(),
        Verdict::IsolatedSingular if report.all_morse() => format!("{}A1", report.points.len()),
        v => format!("{v:?} {:?}", report.corank_counts),
    }
}

pub fn run(args: &ClassifyArgs, catalog: Option<&Path>) -> Result<Outcome> {
    let r = args.source.resolve(catalog)?;
    let config = SectionConfig { starts: args.starts, seed: args.seed, ..SectionConfig::default() };
    config.validate()?;
    if args.mode != Mode::Singular && r.n() != 4 {
        bail!("the hyperdeterminant is defined for four qubits; {} has {} (use --mode singular)", r.label, r.n());
    }
    let mut text = String::new();
    let results: Value;
    let section: Option<SectionReport>;
    match args.mode {
        Mode::Hdet => {
            let h = hdet_2222(&r.state)?;
            text += &format!(
                "{}: HDet = {} (relative {}) -> {}\n",
                r.label,
                sig_c(h.value),
                sig(h.relative()),
                if h.is_zero() { "zero" } else { "nonzero" }
            );
            results = json!({ "hdet": [h.value.re, h.value.im], "relative": h.relative(), "zero": h.is_zero() });
            section = None;
        }
        Mode::Stratum => {
            let s = classify_stratum(&r.state, &config)?;
            text += &format!(
                "{}: HDet = {} (relative {}, {})\nstratum: {:?}\nsection: {:?}, {} point(s)\n",
                r.label,
                sig_c(s.hdet.value),
                sig(s.hdet.relative()),
                if s.hdet_zero() { "zero" } else { "nonzero" },
                s.stratum,
                s.evidence.verdict,
                s.evidence.points.len()
            );
            text += &point_table(&s.evidence);
            for note in &s.notes {
                text += &format!("note: {note}\n");
            }
            results = serde_json::to_value(&s)?;
            section = Some(s.evidence);
        }
        Mode::Singular => {
            let rep = analyze_section(&r.state, &config)?;
            text += &format!("{}: section {:?}, {} point(s)\n", r.label, rep.verdict, rep.points.len());
            text += &point_table(&rep);
            results = serde_json::to_value(&rep)?;
            section = Some(rep);
        }
    }

    let mut passed = true;
    let mut check = Value::Null;
    if args.check {
        let (Some(rep), Some(expected)) = (&section, r.expected.singular.as_deref()) else {
            bail!("--check needs a section analysis and a catalog descriptor for {}", r.label);
        };
        let Some(descriptor) = SingularDescriptor::parse(expected) else {
            bail!("unrecognized descriptor {expected:?}");
        };
        passed = matches_descriptor(rep, descriptor);
        text += &format!("check: found {} vs published {} {}\n", describe(rep), expected, pass(passed));
        check = json!({ "expected": expected, "found": describe(rep), "passed": passed });
    }
    Ok(Outcome {
        text,
        config: json!({ "input": r.label, "mode": format!("{:?}", args.mode), "section": config, "seeds": [config.seed] }),
        results: json!({ "classification": results, "check": check }),
        passed,
    })
}

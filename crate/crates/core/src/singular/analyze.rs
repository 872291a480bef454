use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hyperstate::{build_hypergraph_state, Hypergraph, StateVector};
use crate::scalar::{Cplx, Real};
use crate::singular::solve::{hessian_corank, norm, search, SearchDiagnostics};
use crate::singular::{section_polynomial, Chart, SectionConfig, SectionPolynomial};

type C = Cplx<f64>;

/// Largest register for which all `2ⁿ` charts are searched.
pub const MAX_SECTION_QUBITS: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    Smooth,
    IsolatedSingular,
    NonIsolatedCandidate,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SingularPoint {
    /// Chart in which `affine` is expressed (the best-conditioned one it was seen in).
    pub chart: Chart,
    pub affine: Vec<C>,
    /// One homogeneous pair per factor, scaled to max modulus 1.
    pub projective: Vec<[C; 2]>,
    /// `max(|f|, ‖∇f‖)` at `affine`.
    pub residual: f64,
    pub hessian_corank: usize,
    pub singular_values: Vec<f64>,
    /// Every chart whose search found this point.
    pub seen_in: Vec<Chart>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChartDiagnostics {
    pub chart: Chart,
    pub points: usize,
    #[serde(flatten)]
    pub search: SearchDiagnostics,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SectionReport {
    pub n: usize,
    pub verdict: Verdict,
    pub points: Vec<SingularPoint>,
    /// Chart-level findings left unmerged once `max_points` was reached.
    pub overflow: usize,
    pub corank_counts: BTreeMap<usize, usize>,
    /// Smallest per-factor chordal distance between two reported points.
    pub min_separation: Option<f64>,
    pub charts: Vec<ChartDiagnostics>,
    pub seed: u64,
}

impl SectionReport {
    pub fn all_morse(&self) -> bool {
        self.points.iter().all(|p| p.hessian_corank == 0)
    }

    pub fn near_misses(&self) -> usize {
        self.charts.iter().map(|c| c.search.near_misses).sum()
    }
}

/// Residual and Hessian corank of a (near-)critical point of `poly`.
pub fn classify_point(poly: &SectionPolynomial, point: &[C], config: &SectionConfig) -> Result<SingularPoint> {
    if point.len() != poly.n {
        return Err(Error::DimensionMismatch { expected: poly.n, found: point.len() });
    }
    let (value, grad, hess) = poly.jet(point);
    let (corank, singular_values) = hessian_corank(&hess, config.corank_cutoff);
    Ok(SingularPoint {
        chart: poly.chart,
        affine: point.to_vec(),
        projective: projective(poly.chart, point),
        residual: value.norm().max(norm(&grad)),
        hessian_corank: corank,
        singular_values,
        seen_in: vec![poly.chart],
    })
}

fn projective(chart: Chart, t: &[C]) -> Vec<[C; 2]> {
    t.iter()
        .enumerate()
        .map(|(q, &x)| {
            let [a, b] = chart.lift(q, x);
            let m = a.norm().max(b.norm());
            [a / m, b / m]
        })
        .collect()
}

/// Largest per-factor chordal distance `|u₀v₁ − u₁v₀| / (‖u‖‖v‖)`.
pub fn projective_distance(u: &[[C; 2]], v: &[[C; 2]]) -> f64 {
    u.iter()
        .zip(v)
        .map(|(a, b)| {
            let na = (a[0].norm_sqr() + a[1].norm_sqr()).sqrt();
            let nb = (b[0].norm_sqr() + b[1].norm_sqr()).sqrt();
            (a[0] * b[1] - a[1] * b[0]).norm() / (na * nb)
        })
        .fold(0.0, f64::max)
}

/// Chart in which every coordinate of a projective point has modulus ≤ 1.
fn home_chart(p: &[[C; 2]]) -> (Chart, Vec<C>) {
    let n = p.len();
    let mut mask = 0;
    let coords = p
        .iter()
        .enumerate()
        .map(|(q, [a, b])| {
            if a.norm() >= b.norm() {
                b / a
            } else {
                mask |= 1 << (n - 1 - q);
                a / b
            }
        })
        .collect();
    (Chart { n, mask }, coords)
}

/// Searches all `2ⁿ` charts, merges the findings projectively and classifies.
pub fn analyze_section<T: Real>(state: &StateVector<T>, config: &SectionConfig) -> Result<SectionReport> {
    config.validate()?;
    let n = state.n();
    if n > MAX_SECTION_QUBITS {
        return Err(Error::QubitCount { n, min: 1, max: MAX_SECTION_QUBITS });
    }
    let state = state.to_f64();
    let polys: Vec<SectionPolynomial> =
        Chart::all(n).map(|ch| section_polynomial(&state, ch)).collect::<Result<_>>()?;
    let searches: Vec<_> = polys
        .par_iter()
        .map(|p| search(p, config, p.chart.mask as u64))
        .collect();

    // deterministic sequential merge in chart order
    let mut merged: Vec<(Vec<[C; 2]>, Vec<Chart>)> = Vec::new();
    let mut overflow = 0;
    for (poly, found) in polys.iter().zip(&searches) {
        for t in &found.points {
            let proj = projective(poly.chart, t);
            let full = merged.len() >= config.max_points;
            match merged.iter_mut().find(|(p, _)| projective_distance(p, &proj) <= config.merge_tol) {
                Some((_, seen)) => seen.push(poly.chart),
                None if full => overflow += 1,
                None => merged.push((proj, vec![poly.chart])),
            }
        }
    }

    let points: Vec<SingularPoint> = merged
        .into_iter()
        .map(|(proj, seen_in)| {
            let (home, coords) = home_chart(&proj);
            let mut pt = classify_point(&polys[home.mask], &coords, config)?;
            pt.projective = proj;
            pt.seen_in = seen_in;
            Ok(pt)
        })
        .collect::<Result<_>>()?;

    let mut min_separation: Option<f64> = None;
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            let d = projective_distance(&a.projective, &b.projective);
            min_separation = Some(min_separation.map_or(d, |m| m.min(d)));
        }
    }
    let mut corank_counts = BTreeMap::new();
    for p in &points {
        *corank_counts.entry(p.hessian_corank).or_insert(0) += 1;
    }
    let charts: Vec<ChartDiagnostics> = polys
        .iter()
        .zip(searches)
        .map(|(p, s)| ChartDiagnostics { chart: p.chart, points: s.points.len(), search: s.diagnostics })
        .collect();
    let near_misses: usize = charts.iter().map(|c| c.search.near_misses).sum();

    let verdict = if points.len() + overflow > config.max_isolated || min_separation.is_some_and(|d| d < config.cluster_tol) {
        Verdict::NonIsolatedCandidate
    } else if near_misses > 0 {
        Verdict::Inconclusive
    } else if points.is_empty() {
        Verdict::Smooth
    } else {
        Verdict::IsolatedSingular
    };
    Ok(SectionReport { n, verdict, points, overflow, corank_counts, min_separation, charts, seed: config.seed })
}

/// Reports from several seeds and whether they agree point for point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StableSection {
    pub reports: Vec<SectionReport>,
    pub consistent: bool,
}

impl StableSection {
    /// Point count, claimed only when every seed produced the same point set.
    pub fn count(&self) -> Option<usize> {
        self.consistent.then(|| self.reports[0].points.len())
    }

    pub fn verdict(&self) -> Verdict {
        if self.consistent {
            self.reports[0].verdict
        } else {
            Verdict::Inconclusive
        }
    }
}

pub fn analyze_section_seeds<T: Real>(
    state: &StateVector<T>,
    config: &SectionConfig,
    seeds: &[u64],
) -> Result<StableSection> {
    if seeds.is_empty() {
        return Err(Error::InvalidConfig("at least one seed required".into()));
    }
    let reports: Vec<SectionReport> = seeds
        .iter()
        .map(|&s| analyze_section(state, &config.clone().with_seed(s)))
        .collect::<Result<_>>()?;
    let first = &reports[0];
    let consistent = reports.iter().all(|r| {
        r.verdict == first.verdict
            && r.points.len() == first.points.len()
            && r.points.iter().all(|p| {
                first
                    .points
                    .iter()
                    .any(|q| projective_distance(&p.projective, &q.projective) <= config.merge_tol)
            })
    });
    Ok(StableSection { reports, consistent })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SurveyRow {
    pub n: usize,
    pub k: usize,
    pub verdict: Verdict,
    pub points: usize,
    pub corank_counts: BTreeMap<usize, usize>,
}

/// Section verdicts of the `k`-uniform states `H_{n,k}` for each `k`.
pub fn kuniform_section_survey(
    n: usize,
    ks: impl IntoIterator<Item = usize>,
    config: &SectionConfig,
) -> Result<Vec<SurveyRow>> {
    ks.into_iter()
        .map(|k| {
            let state = build_hypergraph_state::<f64>(&Hypergraph::k_uniform(n, k)?)?;
            let report = analyze_section(&state, config)?;
            Ok(SurveyRow { n, k, verdict: report.verdict, points: report.points.len(), corank_counts: report.corank_counts })
        })
        .collect()
}

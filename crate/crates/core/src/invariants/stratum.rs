use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::Result;
use crate::hyperstate::StateVector;
use crate::invariants::{hdet_2222, Hyperdeterminant};
use crate::scalar::{Cplx, Real};
use crate::singular::{analyze_section, SectionConfig, SectionReport, Verdict};

/// Position of a four-qubit state relative to the dual variety `HDet = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Stratum {
    /// `HDet ≠ 0`: the hyperplane section is smooth.
    Generic,
    /// At least two singular points, all with full-rank Hessian.
    Node,
    /// Some singular point has a degenerate Hessian.
    CuspCandidate,
    /// `HDet = 0` but the numerical evidence fits neither component.
    Undetermined,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StratumReport {
    pub hdet: Hyperdeterminant<f64>,
    pub stratum: Stratum,
    pub evidence: SectionReport,
    pub notes: Vec<String>,
}

impl StratumReport {
    pub fn hdet_value(&self) -> Cplx<f64> {
        self.hdet.value
    }

    pub fn hdet_zero(&self) -> bool {
        self.hdet.is_zero()
    }
}

impl Serialize for StratumReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("StratumReport", 8)?;
        st.serialize_field("hdet", &[self.hdet.value.re, self.hdet.value.im])?;
        st.serialize_field("hdet_zero", &self.hdet_zero())?;
        st.serialize_field("hdet_relative", &self.hdet.relative())?;
        st.serialize_field("stratum", &self.stratum)?;
        st.serialize_field("verdict", &self.evidence.verdict)?;
        st.serialize_field("points", &self.evidence.points)?;
        st.serialize_field("corank_counts", &self.evidence.corank_counts)?;
        st.serialize_field("notes", &self.notes)?;
        st.end()
    }
}

/// Combines the hyperdeterminant with the section analysis.
///
/// The stratum is `Generic` exactly when `HDet ≠ 0`; the section analysis
/// always runs and any disagreement with the hyperdeterminant is noted.
pub fn classify_stratum<T: Real>(state: &StateVector<T>, config: &SectionConfig) -> Result<StratumReport> {
    let state = state.to_f64();
    let hdet = hdet_2222(&state)?;
    let evidence = analyze_section(&state, config)?;
    let mut notes = Vec::new();
    let stratum = if !hdet.is_zero() {
        if evidence.verdict != Verdict::Smooth {
            notes.push(format!("HDet is nonzero but the section search reported {:?}", evidence.verdict));
        }
        Stratum::Generic
    } else {
        match evidence.verdict {
            _ if evidence.points.iter().any(|p| p.hessian_corank > 0) => Stratum::CuspCandidate,
            Verdict::NonIsolatedCandidate => Stratum::CuspCandidate,
            Verdict::IsolatedSingular if evidence.points.len() >= 2 => Stratum::Node,
            Verdict::IsolatedSingular => {
                notes.push("a single Morse point cannot come from a node".into());
                Stratum::Undetermined
            }
            Verdict::Smooth => {
                notes.push("HDet vanishes but no singular point was found".into());
                Stratum::Undetermined
            }
            Verdict::Inconclusive => {
                notes.push(format!("{} near-miss critical points", evidence.near_misses()));
                Stratum::Undetermined
            }
        }
    };
    Ok(StratumReport { hdet, stratum, evidence, notes })
}

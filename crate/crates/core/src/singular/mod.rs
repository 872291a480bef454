//! Singularities of the hyperplane section `X ∩ H_ψ` of the Segre variety
//! `(P¹)ⁿ`, found numerically chart by chart.
//!
//! Computations run in `f64` regardless of the input precision: the Newton
//! thresholds sit below what `f32` can resolve.

mod analyze;
mod poly;
mod solve;

pub use analyze::{
    analyze_section, analyze_section_seeds, classify_point, kuniform_section_survey, projective_distance,
    ChartDiagnostics, SectionReport, SingularPoint, StableSection, SurveyRow, Verdict, MAX_SECTION_QUBITS,
};
pub use poly::{section_polynomial, Chart, SectionPolynomial};
pub use solve::{find_critical_points, hessian_corank, CriticalSearch, SearchDiagnostics, SectionConfig};

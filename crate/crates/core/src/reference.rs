//! Published values that reports and acceptance checks compare against.
//!
//! Optimizer outputs in these tables are lower targets: a computed value
//! passes when it comes within tolerance or exceeds them (never beyond the
//! quantum bound).

use crate::singular::Verdict;

/// `(n, k, μ)` for the `k`-uniform state on `n ≤ 6` qubits.
pub const KUNIFORM_MU: &[(usize, usize, f64)] = &[
    (5, 2, 4.0),
    (5, 3, 2.45751),
    (5, 4, 2.02319),
    (5, 5, 1.29200),
    (6, 2, 5.65685),
    (6, 3, 2.85947),
    (6, 4, 3.29038),
    (6, 5, 3.20848),
    (6, 6, 1.14326),
];

/// Expected section type of a `k`-uniform state.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SectionType {
    Smooth,
    /// Isolated Morse (`A₁`) points only.
    A1,
    /// Isolated points with a degenerate Hessian.
    Am,
    NonIsolated,
}

impl SectionType {
    pub fn label(self) -> &'static str {
        match self {
            Self::Smooth => "Smooth",
            Self::A1 => "A1",
            Self::Am => "A_m, m>1",
            Self::NonIsolated => "Non-isolated",
        }
    }

    /// Whether a computed verdict (with all-Morse flag) matches this type.
    pub fn matches(self, verdict: Verdict, all_morse: bool) -> bool {
        match self {
            Self::Smooth => verdict == Verdict::Smooth,
            Self::A1 => verdict == Verdict::IsolatedSingular && all_morse,
            Self::Am => verdict == Verdict::IsolatedSingular && !all_morse,
            Self::NonIsolated => verdict == Verdict::NonIsolatedCandidate,
        }
    }
}

/// `(n, k, type)` for `n ∈ {5, 6, 7}`; inconclusive published entries are omitted.
pub const KUNIFORM_SECTIONS: &[(usize, usize, SectionType)] = &[
    (5, 2, SectionType::NonIsolated),
    (5, 3, SectionType::Smooth),
    (5, 4, SectionType::A1),
    (5, 5, SectionType::NonIsolated),
    (6, 2, SectionType::NonIsolated),
    (6, 3, SectionType::Smooth),
    (6, 4, SectionType::Am),
    (6, 6, SectionType::NonIsolated),
    (7, 2, SectionType::NonIsolated),
    (7, 3, SectionType::Smooth),
    (7, 4, SectionType::Am),
    (7, 7, SectionType::NonIsolated),
];

/// Parsed catalog singularity descriptor such as `"Smooth"` or `"6A1"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SingularDescriptor {
    Smooth,
    /// `count` isolated Morse points.
    Morse(usize),
}

impl SingularDescriptor {
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("smooth") {
            return Some(Self::Smooth);
        }
        let count = s.strip_suffix("A1")?;
        count.parse().ok().map(Self::Morse)
    }
}

/// Reach-or-exceed test: `value ≥ target − tol`.
pub fn reaches(value: f64, target: f64, tol: f64) -> bool {
    value >= target - tol
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptors() {
        assert_eq!(SingularDescriptor::parse("Smooth"), Some(SingularDescriptor::Smooth));
        assert_eq!(SingularDescriptor::parse("6A1"), Some(SingularDescriptor::Morse(6)));
        assert_eq!(SingularDescriptor::parse("A3"), None);
    }

    #[test]
    fn kuniform_values_respect_the_bound() {
        for &(n, _, mu) in KUNIFORM_MU {
            assert!(mu <= 2f64.powf((n as f64 - 1.0) / 2.0) + 1e-5);
        }
    }
}

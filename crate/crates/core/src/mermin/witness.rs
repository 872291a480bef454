use serde::Serialize;

/// Margin above each threshold before a witness fires.
pub const WITNESS_MARGIN: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EntanglementWitness {
    /// `μ̃ > 4`: no 3-entangled (or less) four-qubit state reaches this.
    GenuinelyFourEntangled,
    /// `μ̃ > 2`: rules out states that are at most 2-entangled.
    AtLeastThreeEntangled,
    Inconclusive,
}

impl EntanglementWitness {
    pub fn describe(self) -> &'static str {
        match self {
            Self::GenuinelyFourEntangled => "genuinely 4-entangled",
            Self::AtLeastThreeEntangled => "at least 3-entangled",
            Self::Inconclusive => "inconclusive",
        }
    }
}

/// Four-qubit entanglement-depth witness from `μ̃`.
///
/// Only the contrapositive of the `μ̃ ≤ 2` / `μ̃ ≤ 4` bounds is used, so a
/// small value never certifies separability.
pub fn entanglement_witness(mu_tilde: f64) -> EntanglementWitness {
    if mu_tilde > 4.0 + WITNESS_MARGIN {
        EntanglementWitness::GenuinelyFourEntangled
    } else if mu_tilde > 2.0 + WITNESS_MARGIN {
        EntanglementWitness::AtLeastThreeEntangled
    } else {
        EntanglementWitness::Inconclusive
    }
}

//! Mermin polynomials: construction, evaluation and maximization.

mod bloch;
mod expansion;
mod expectation;
mod optimize;
mod witness;

pub use bloch::{observable_matrix, BlochVector, ObservableFamily};
pub use expansion::{expand_mermin, Dyadic, MerminExpansion};
pub use expectation::{
    all_monomial_expectations, mermin_expectation, monomial_expectation, monomial_expectation_complex,
    CorrelationTensor, MerminEvaluator,
};
pub use optimize::{optimize, optimize_mu, optimize_mu_tilde, MuResult, Objective, OptimizationConfig};
pub use witness::{entanglement_witness, EntanglementWitness, WITNESS_MARGIN};

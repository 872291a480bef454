//! Gate-level circuits that prepare hypergraph states and measure Mermin
//! monomials, a dense statevector simulator with shot sampling, and
//! OpenQASM 2.0 text.

mod compile;
mod ir;
mod qasm;
mod sim;

pub use compile::{basis_change_u3, hypergraph_circuit, measurement_circuit, u3_matrix};
pub use ir::{Circuit, Gate};
pub use qasm::{emit_qasm, eval_expr, parse_qasm};
pub use sim::{
    ancilla_purity, estimate_mermin, estimate_monomial, main_register, outcome_distribution, sample, simulate,
    Estimation, MerminEstimate, ShotCounts, TermEstimate, MAX_SIM_QUBITS,
};

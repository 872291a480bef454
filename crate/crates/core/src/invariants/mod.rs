//! Polynomial invariants of four-qubit states: the Cayley hyperdeterminant
//! via Schläfli's construction, and the stratum of the dual variety it
//! places a state in.

mod hdet;
mod ring;
mod stratum;

pub use hdet::{
    cayley_hyperdet_222, hdet_2222, hdet_2222_amplitudes, hdet_exact_signs, quartic_discriminant,
    quartic_invariants, schlafli_quartic, schlafli_quartic_of, BinaryQuartic, Hyperdeterminant,
    QuarticInvariants, Tensor222, HDET_ZERO_TOL,
};
pub use ring::{BinaryForm, Magnitude, Ring};
pub use stratum::{classify_stratum, Stratum, StratumReport};

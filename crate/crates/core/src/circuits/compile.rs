use std::f64::consts::PI;

use crate::circuits::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::hyperstate::Hypergraph;
use crate::mermin::BlochVector;
use crate::scalar::{cplx, Cplx, Real};

/// Circuit preparing `|G⟩` on the main register from `|0…0⟩`.
///
/// Edges of size 1, 2 and 3 become `Z`, `CZ` and `H·CCX·H`; a size-`k` edge
/// with `k ≥ 4` computes the AND of its first `k−1` vertices into a ladder of
/// `k−2` ancillas, applies one `CZ` from the last ancilla to the last vertex,
/// and uncomputes the ladder so the ancillas end in `|0⟩`.
pub fn hypergraph_circuit(g: &Hypergraph) -> Result<Circuit> {
    let n = g.n();
    let ancillas = if g.max_edge_size() >= 4 { g.max_edge_size() - 2 } else { 0 };
    let mut c = Circuit::new(n, ancillas);
    for q in 0..n {
        c.push(Gate::H(q))?;
    }
    for edge in g.edges() {
        let v: Vec<usize> = edge.iter().map(|&x| x - 1).collect();
        match v.len() {
            1 => c.push(Gate::U3 { qubit: v[0], theta: 0.0, phi: 0.0, lambda: PI })?,
            2 => c.push(Gate::Cz(v[0], v[1]))?,
            3 => {
                c.push(Gate::H(v[2]))?;
                c.push(Gate::Toffoli { controls: [v[0], v[1]], target: v[2] })?;
                c.push(Gate::H(v[2]))?;
            }
            k => {
                let anc = |i: usize| n + i;
                let mut ladder = vec![Gate::Toffoli { controls: [v[0], v[1]], target: anc(0) }];
                for i in 1..=k - 3 {
                    ladder.push(Gate::Toffoli { controls: [v[i + 1], anc(i - 1)], target: anc(i) });
                }
                for gate in &ladder {
                    c.push(gate.clone())?;
                }
                c.push(Gate::Cz(anc(k - 3), v[k - 1]))?;
                for gate in ladder.into_iter().rev() {
                    c.push(gate)?;
                }
            }
        }
    }
    Ok(c)
}

/// Standard `U3(θ, φ, λ) = [[cos θ/2, −e^{iλ} sin θ/2], [e^{iφ} sin θ/2, e^{i(φ+λ)} cos θ/2]]`.
pub fn u3_matrix<T: Real>(theta: f64, phi: f64, lambda: f64) -> [[Cplx<T>; 2]; 2] {
    let (s, c) = (theta / 2.0).sin_cos();
    let e = |a: f64| {
        let (sa, ca) = a.sin_cos();
        cplx(T::lit(ca), T::lit(sa))
    };
    let r = |x: f64| cplx(T::lit(x), T::zero());
    [
        [r(c), -e(lambda) * r(s)],
        [e(phi) * r(s), e(phi + lambda) * r(c)],
    ]
}

/// Angles `(θ, φ, λ)` of the `U3` after which a `Z` measurement measures
/// `v·σ`: `(polar, π, −azimuth − π)`.
pub fn basis_change_u3<T: Real>(direction: &BlochVector<T>) -> (f64, f64, f64) {
    let (polar, azimuth) = direction.to_f64().angles();
    (polar, PI, -azimuth - PI)
}

/// `base` followed by one basis change and one measurement per main qubit
/// (qubit `q` into classical bit `q`); ancillas are not measured.
pub fn measurement_circuit<T: Real>(base: &Circuit, directions: &[BlochVector<T>]) -> Result<Circuit> {
    if directions.len() != base.qubits() {
        return Err(Error::DimensionMismatch { expected: base.qubits(), found: directions.len() });
    }
    let mut c = base.clone();
    for (q, d) in directions.iter().enumerate() {
        let (theta, phi, lambda) = basis_change_u3(d);
        c.push(Gate::U3 { qubit: q, theta, phi, lambda })?;
    }
    for q in 0..base.qubits() {
        c.push(Gate::Measure { qubit: q, cbit: q })?;
    }
    Ok(c)
}

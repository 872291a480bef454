use std::collections::BTreeMap;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::circuits::{hypergraph_circuit, measurement_circuit, u3_matrix, Circuit, Gate};
use crate::error::{Error, Result};
use crate::hyperstate::{apply_1q, Hypergraph, StateVector};
use crate::mermin::{expand_mermin, ObservableFamily};
use crate::scalar::{Cplx, Real};

/// Largest register (main + ancilla) the simulator accepts.
pub const MAX_SIM_QUBITS: usize = 14;

/// Runs the unitary part of `c` on `|0…0⟩`; measurements are ignored.
pub fn simulate<T: Real>(c: &Circuit) -> Result<StateVector<T>> {
    let n = c.total_qubits();
    if n == 0 || n > MAX_SIM_QUBITS {
        return Err(Error::QubitBudget { needed: n, max: MAX_SIM_QUBITS });
    }
    let mut amps = vec![Cplx::new(T::zero(), T::zero()); 1 << n];
    amps[0] = Cplx::new(T::one(), T::zero());
    let bit = |q: usize| 1usize << (n - 1 - q);
    let h = T::lit(0.5).sqrt();
    let hadamard = [
        [Cplx::new(h, T::zero()), Cplx::new(h, T::zero())],
        [Cplx::new(h, T::zero()), Cplx::new(-h, T::zero())],
    ];
    for gate in c.gates() {
        match *gate {
            Gate::H(q) => apply_1q(&mut amps, n, q, &hadamard),
            Gate::U3 { qubit, theta, phi, lambda } => apply_1q(&mut amps, n, qubit, &u3_matrix(theta, phi, lambda)),
            Gate::Cz(a, b) => {
                let m = bit(a) | bit(b);
                for (i, x) in amps.iter_mut().enumerate() {
                    if i & m == m {
                        *x = -*x;
                    }
                }
            }
            Gate::Toffoli { controls: [a, b], target } => {
                let m = bit(a) | bit(b);
                let t = bit(target);
                for i in 0..amps.len() {
                    if i & m == m && i & t == 0 {
                        amps.swap(i, i | t);
                    }
                }
            }
            Gate::Measure { .. } => {}
        }
    }
    Ok(StateVector::from_raw(n, amps))
}

/// Main-register state obtained by projecting the ancillas onto `|0…0⟩`,
/// and the probability weight lost by that projection.
pub fn main_register<T: Real>(state: &StateVector<T>, c: &Circuit) -> Result<(StateVector<T>, f64)> {
    if state.n() != c.total_qubits() {
        return Err(Error::DimensionMismatch { expected: c.total_qubits(), found: state.n() });
    }
    let k = c.ancillas();
    let amps: Vec<Cplx<T>> = (0..1usize << c.qubits()).map(|i| state.amps()[i << k]).collect();
    let kept: f64 = amps.iter().map(|a| a.norm_sqr().as_f64()).sum();
    Ok((StateVector::from_raw(c.qubits(), amps), (1.0 - kept).max(0.0)))
}

/// `Tr ρ²` of the ancilla register's reduced state (1 when it factors out).
pub fn ancilla_purity<T: Real>(state: &StateVector<T>, c: &Circuit) -> Result<f64> {
    if state.n() != c.total_qubits() {
        return Err(Error::DimensionMismatch { expected: c.total_qubits(), found: state.n() });
    }
    let k = c.ancillas();
    let da = 1usize << k;
    let amps: Vec<Cplx<f64>> = state.amps().iter().map(|a| Cplx::new(a.re.as_f64(), a.im.as_f64())).collect();
    // ρ_anc[a][b] = Σ_m ψ[m,a] ψ*[m,b]
    let mut rho = vec![Cplx::new(0.0, 0.0); da * da];
    for m in 0..1usize << c.qubits() {
        let row = &amps[m * da..(m + 1) * da];
        for a in 0..da {
            for b in 0..da {
                rho[a * da + b] += row[a] * row[b].conj();
            }
        }
    }
    let mut purity = 0.0;
    for a in 0..da {
        for b in 0..da {
            purity += (rho[a * da + b] * rho[b * da + a]).re;
        }
    }
    Ok(purity)
}

/// Exact distribution over the classical register; outcome index has
/// classical bit 0 as its most significant bit.
pub fn outcome_distribution<T: Real>(state: &StateVector<T>, c: &Circuit) -> Result<Vec<f64>> {
    if !c.has_measurements() {
        return Err(Error::NoMeasurements);
    }
    if state.n() != c.total_qubits() {
        return Err(Error::DimensionMismatch { expected: c.total_qubits(), found: state.n() });
    }
    let n = state.n();
    let m = c.clbits();
    let mut route: Vec<Option<usize>> = vec![None; m];
    for g in c.gates() {
        if let Gate::Measure { qubit, cbit } = *g {
            route[cbit] = Some(qubit);
        }
    }
    let mut dist = vec![0.0; 1 << m];
    for (i, a) in state.amps().iter().enumerate() {
        let mut out = 0;
        for (cbit, q) in route.iter().enumerate() {
            if let Some(q) = q {
                if i >> (n - 1 - q) & 1 == 1 {
                    out |= 1 << (m - 1 - cbit);
                }
            }
        }
        dist[out] += a.norm_sqr().as_f64();
    }
    Ok(dist)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShotCounts {
    /// Bitstring (classical bit 0 leftmost) → count.
    pub counts: BTreeMap<String, u64>,
    pub shots: u64,
}

impl ShotCounts {
    fn draw(dist: &[f64], bits: usize, shots: u64, rng: &mut ChaCha8Rng) -> Result<Self> {
        let index = WeightedIndex::new(dist).map_err(|e| Error::InvalidConfig(format!("outcome weights: {e}")))?;
        let mut tally = vec![0u64; dist.len()];
        for _ in 0..shots {
            tally[index.sample(rng)] += 1;
        }
        let counts = tally
            .into_iter()
            .enumerate()
            .filter(|&(_, k)| k > 0)
            .map(|(i, k)| (format!("{i:0bits$b}"), k))
            .collect();
        Ok(Self { counts, shots })
    }
}

/// Draws `shots` outcomes of the measured register; deterministic per seed.
pub fn sample(c: &Circuit, shots: u64, seed: u64) -> Result<ShotCounts> {
    let dist = outcome_distribution(&simulate::<f64>(c)?, c)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    ShotCounts::draw(&dist, c.clbits(), shots, &mut rng)
}

/// Mean parity `⟨(−1)^{Σ bits}⟩` of the recorded outcomes.
pub fn estimate_monomial(counts: &ShotCounts) -> Result<f64> {
    let total: u64 = counts.counts.values().sum();
    if total == 0 {
        return Err(Error::InvalidConfig("empty shot counts".into()));
    }
    let signed: i64 = counts
        .counts
        .iter()
        .map(|(bits, &k)| if bits.matches('1').count() % 2 == 0 { k as i64 } else { -(k as i64) })
        .sum();
    Ok(signed as f64 / total as f64)
}

fn exact_parity(dist: &[f64]) -> f64 {
    dist.iter()
        .enumerate()
        .map(|(i, p)| if i.count_ones() % 2 == 0 { *p } else { -*p })
        .sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum Estimation {
    /// Analytic parity expectation of each measurement circuit.
    Exact,
    /// Finite sampling; term `i` uses RNG stream `i` of `seed`.
    Shots { shots: u64, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TermEstimate {
    pub index: usize,
    /// Monomial as primes per qubit, e.g. `a1 a2' a3`.
    pub label: String,
    pub coeff: f64,
    pub estimate: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MerminEstimate {
    pub value: f64,
    pub terms: Vec<TermEstimate>,
    pub mode: Estimation,
}

/// `⟨M_n⟩` on `|G⟩` from one measurement circuit per nonzero monomial.
pub fn estimate_mermin<T: Real>(g: &Hypergraph, family: &ObservableFamily<T>, mode: Estimation) -> Result<MerminEstimate> {
    let n = g.n();
    if family.n != n {
        return Err(Error::DimensionMismatch { expected: n, found: family.n });
    }
    let base = hypergraph_circuit(g)?;
    let expansion = expand_mermin(n)?;
    let mut terms = Vec::new();
    let mut value = 0.0;
    for (index, coeff) in expansion.nonzero() {
        let c = measurement_circuit(&base, &family.monomial(index))?;
        let dist = outcome_distribution(&simulate::<f64>(&c)?, &c)?;
        let estimate = match mode {
            Estimation::Exact => exact_parity(&dist),
            Estimation::Shots { shots, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(index as u64);
                estimate_monomial(&ShotCounts::draw(&dist, c.clbits(), shots, &mut rng)?)?
            }
        };
        let coeff = coeff.to_real::<f64>();
        value += coeff * estimate;
        let label = (0..n)
            .map(|j| format!("a{}{}", j + 1, if index >> (n - 1 - j) & 1 == 1 { "'" } else { "" }))
            .collect::<Vec<_>>()
            .join(" ");
        terms.push(TermEstimate { index, label, coeff, estimate });
    }
    Ok(MerminEstimate { value, terms, mode })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperstate::{build_hypergraph_state, ghz_state};
    use crate::mermin::{mermin_expectation, monomial_expectation, BlochVector};
    use proptest::prelude::*;
    use rand::Rng;

    fn ccz() -> Hypergraph {
        Hypergraph::new(3, vec![vec![1, 2, 3]]).unwrap()
    }

    fn case_study_family() -> ObservableFamily<f64> {
        let a = BlochVector::new(0.58, 0.44, -0.68).unwrap();
        let ap = BlochVector::new(0.37, -0.83, -0.41).unwrap();
        ObservableFamily::new(vec![a, a.neg(), a], vec![ap, ap.neg(), ap]).unwrap()
    }

    #[test]
    fn hadamard_makes_plus() {
        let mut c = Circuit::new(1, 0);
        c.push(Gate::H(0)).unwrap();
        let s = simulate::<f64>(&c).unwrap();
        let h = 0.5f64.sqrt();
        assert!(s.amps().iter().all(|a| (a.re - h).abs() < 1e-15 && a.im == 0.0));
    }

    #[test]
    fn toffoli_truth_table() {
        for input in 0..8usize {
            let mut c = Circuit::new(3, 0);
            for q in 0..3 {
                if input >> (2 - q) & 1 == 1 {
                    c.push(Gate::U3 { qubit: q, theta: std::f64::consts::PI, phi: 0.0, lambda: std::f64::consts::PI })
                        .unwrap();
                }
            }
            c.push(Gate::Toffoli { controls: [0, 1], target: 2 }).unwrap();
            let s = simulate::<f64>(&c).unwrap();
            let want = if input >= 6 { input ^ 1 } else { input };
            let hit = s.amps().iter().position(|a| a.norm() > 0.5).unwrap();
            assert_eq!(hit, want, "input {input:03b}");
        }
    }

    #[test]
    fn ladder_circuit_prepares_g17_and_frees_ancillas() {
        let g = Hypergraph::new(4, vec![vec![1, 2, 3, 4]]).unwrap();
        let c = hypergraph_circuit(&g).unwrap();
        let out = simulate::<f64>(&c).unwrap();
        let (main, leak) = main_register(&out, &c).unwrap();
        assert!(leak < 1e-12);
        let want = build_hypergraph_state::<f64>(&g).unwrap();
        assert!(main.distance_up_to_phase(&want) < 1e-12);
        assert!((ancilla_purity(&out, &c).unwrap() - 1.0).abs() < 1e-10);
    }

    fn connected_hypergraph(rng: &mut ChaCha8Rng) -> Hypergraph {
        loop {
            let n = rng.random_range(2..=5);
            let count = rng.random_range(1..=6);
            let mut edges = Vec::new();
            for _ in 0..count {
                let mask = rng.random_range(1..1usize << n);
                let e: Vec<usize> = (1..=n).filter(|v| mask >> (v - 1) & 1 == 1).collect();
                if !edges.contains(&e) {
                    edges.push(e);
                }
            }
            let g = Hypergraph::new(n, edges).unwrap();
            if g.is_connected() {
                return g;
            }
        }
    }

    #[test]
    fn circuits_prepare_random_connected_hypergraph_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let g = connected_hypergraph(&mut rng);
            let c = hypergraph_circuit(&g).unwrap();
            let out = simulate::<f64>(&c).unwrap();
            assert!((out.norm_sqr() - 1.0).abs() < 1e-12);
            let (main, leak) = main_register(&out, &c).unwrap();
            assert!(leak < 1e-12, "{g:?}");
            assert!(main.distance_up_to_phase(&build_hypergraph_state(&g).unwrap()) < 1e-12, "{g:?}");
            assert!((ancilla_purity(&out, &c).unwrap() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn rotated_z_measurement_reproduces_observables() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..200 {
            let n = rng.random_range(1..=3);
            let amps: Vec<Cplx<f64>> =
                (0..1 << n).map(|_| Cplx::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)).collect();
            let psi = StateVector::normalized(amps).unwrap();
            let dirs: Vec<BlochVector<f64>> = (0..n)
                .map(|_| BlochVector::from_angles(rng.random::<f64>() * std::f64::consts::PI, rng.random::<f64>() * std::f64::consts::TAU))
                .collect();
            let mut rotated = psi.clone();
            let mut c = Circuit::new(n, 0);
            for (q, d) in dirs.iter().enumerate() {
                let (t, p, l) = crate::circuits::basis_change_u3(d);
                rotated.apply_single_qubit(q, &u3_matrix(t, p, l)).unwrap();
                c.push(Gate::Measure { qubit: q, cbit: q }).unwrap();
            }
            let got = exact_parity(&outcome_distribution(&rotated, &c).unwrap());
            let want = monomial_expectation(&psi, &dirs).unwrap();
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn sampling_statistics() {
        let mut c = Circuit::new(1, 0);
        c.push(Gate::H(0)).unwrap();
        c.push(Gate::Measure { qubit: 0, cbit: 0 }).unwrap();
        let shots = 100_000u64;
        let counts = sample(&c, shots, 3).unwrap();
        assert_eq!(counts.counts.values().sum::<u64>(), shots);
        let zeros = counts.counts["0"] as f64;
        assert!((zeros - shots as f64 / 2.0).abs() <= 5.0 * (shots as f64 * 0.25).sqrt());
        assert_eq!(sample(&c, shots, 3).unwrap(), counts);
    }

    #[test]
    fn ghz_outcomes_are_correlated() {
        let mut c = Circuit::new(2, 0);
        c.push(Gate::H(0)).unwrap();
        c.push(Gate::H(1)).unwrap();
        c.push(Gate::Cz(0, 1)).unwrap();
        c.push(Gate::H(1)).unwrap();
        c.push(Gate::Measure { qubit: 0, cbit: 0 }).unwrap();
        c.push(Gate::Measure { qubit: 1, cbit: 1 }).unwrap();
        assert!(simulate::<f64>(&c).unwrap().distance_up_to_phase(&ghz_state(2).unwrap()) < 1e-12);
        let counts = sample(&c, 1000, 1).unwrap();
        assert!(counts.counts.keys().all(|k| k == "00" || k == "11"));
    }

    #[test]
    fn parity_estimates() {
        let mk = |pairs: &[(&str, u64)]| ShotCounts {
            counts: pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            shots: pairs.iter().map(|p| p.1).sum(),
        };
        assert_eq!(estimate_monomial(&mk(&[("000", 10)])).unwrap(), 1.0);
        assert_eq!(estimate_monomial(&mk(&[("00", 5), ("01", 5), ("10", 5), ("11", 5)])).unwrap(), 0.0);
        assert_eq!(estimate_monomial(&mk(&[("001", 750), ("000", 250)])).unwrap(), -0.5);
        assert!(estimate_monomial(&mk(&[])).is_err());
    }

    #[test]
    fn bitstrings_put_cbit_zero_first() {
        let mut c = Circuit::new(2, 0);
        c.push(Gate::U3 { qubit: 1, theta: std::f64::consts::PI, phi: 0.0, lambda: 0.0 }).unwrap();
        c.push(Gate::Measure { qubit: 1, cbit: 0 }).unwrap();
        c.push(Gate::Measure { qubit: 0, cbit: 1 }).unwrap();
        let counts = sample(&c, 10, 0).unwrap();
        assert_eq!(counts.counts.keys().collect::<Vec<_>>(), vec!["10"]);
    }

    #[test]
    fn exact_estimate_matches_the_statevector_route() {
        let est = estimate_mermin(&ccz(), &case_study_family(), Estimation::Exact).unwrap();
        assert_eq!(est.terms.len(), 4);
        let psi = build_hypergraph_state::<f64>(&ccz()).unwrap();
        let direct = mermin_expectation(&psi, &case_study_family(), false).unwrap();
        assert!((est.value - direct).abs() < 1e-12);
        assert!((est.value - 1.52).abs() < 1e-2);
    }

    #[test]
    fn sampled_terms_within_five_sigma() {
        let shots = 1u64 << 13;
        let exact = estimate_mermin(&ccz(), &case_study_family(), Estimation::Exact).unwrap();
        let est = estimate_mermin(&ccz(), &case_study_family(), Estimation::Shots { shots, seed: 4 }).unwrap();
        for (e, s) in exact.terms.iter().zip(&est.terms) {
            assert!((e.estimate - s.estimate).abs() <= 5.0 / (shots as f64).sqrt());
        }
        assert!((est.value - 1.52).abs() < 0.1);
    }

    #[test]
    fn budget_is_enforced() {
        let c = Circuit::new(15, 0);
        assert!(matches!(simulate::<f64>(&c), Err(Error::QubitBudget { .. })));
        assert!(matches!(sample(&Circuit::new(1, 0), 1, 0), Err(Error::NoMeasurements)));
    }

    proptest! {
        #[test]
        fn simulation_preserves_norm(gates in prop::collection::vec((0usize..3, 0usize..4, any::<f64>()), 0..30)) {
            let mut c = Circuit::new(4, 0);
            for (kind, q, x) in gates {
                let x = if x.is_finite() { x % 10.0 } else { 0.5 };
                let g = match kind {
                    0 => Gate::H(q),
                    1 => Gate::Cz(q, (q + 1) % 4),
                    _ => Gate::U3 { qubit: q, theta: x, phi: -x, lambda: 2.0 * x },
                };
                c.push(g).unwrap();
            }
            let s = simulate::<f64>(&c).unwrap();
            prop_assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
        }
    }
}

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hyperstate::{mask_vertices, vertex_mask, Hypergraph, MAX_QUBITS};
use crate::scalar::{czero, Cplx, Real};

/// Dense amplitude vector of an `n`-qubit pure state.
///
/// Basis index `i = a_{n-1}2^{n-1} + … + a_0`; qubit `q` (0-based, vertex
/// `q + 1`) owns bit `n - 1 - q`, so vertex 1 is the most significant bit.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StateVector<T: Real = f64> {
    n: usize,
    amps: Vec<Cplx<T>>,
}

#[derive(Deserialize)]
struct RawState {
    n: usize,
    amps: Vec<[f64; 2]>,
}

impl<T: Real> StateVector<T> {
    /// Validates length `2ⁿ` and unit norm.
    pub fn new(amps: Vec<Cplx<T>>) -> Result<Self> {
        let len = amps.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::BadLength { len });
        }
        let n = len.trailing_zeros() as usize;
        let state = Self { n, amps };
        let norm = state.norm_sqr().as_f64();
        if (norm - 1.0).abs() > T::AMPLITUDE_TOL.max(1e-12) {
            return Err(Error::NotNormalized(norm));
        }
        Ok(state)
    }

    /// Rescales an arbitrary nonzero vector to unit norm.
    pub fn normalized(mut amps: Vec<Cplx<T>>) -> Result<Self> {
        let len = amps.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::BadLength { len });
        }
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<T>().sqrt();
        if norm == T::zero() || !norm.is_finite() {
            return Err(Error::NotNormalized(norm.as_f64()));
        }
        for a in &mut amps {
            *a = *a / norm;
        }
        Ok(Self {
            n: len.trailing_zeros() as usize,
            amps,
        })
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(n: usize, index: usize) -> Result<Self> {
        check_n(n)?;
        let mut amps = vec![czero(); 1 << n];
        if index >= amps.len() {
            return Err(Error::DimensionMismatch { expected: amps.len(), found: index });
        }
        amps[index] = Cplx::new(T::one(), T::zero());
        Ok(Self { n, amps })
    }

    pub(crate) fn from_raw(n: usize, amps: Vec<Cplx<T>>) -> Self {
        debug_assert_eq!(amps.len(), 1 << n);
        Self { n, amps }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amps(&self) -> &[Cplx<T>] {
        &self.amps
    }

    pub fn into_amps(self) -> Vec<Cplx<T>> {
        self.amps
    }

    pub fn norm_sqr(&self) -> T {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Cplx<T> {
        self.amps
            .iter()
            .zip(&other.amps)
            .fold(czero(), |acc, (a, b)| acc + a.conj() * b)
    }

    /// Largest amplitude deviation after removing the global phase of `other`
    /// relative to `self`.
    pub fn distance_up_to_phase(&self, other: &Self) -> T {
        let ov = self.inner(other);
        let phase = if ov.norm() > T::zero() {
            ov / ov.norm()
        } else {
            Cplx::new(T::one(), T::zero())
        };
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (*a * phase - b).norm())
            .fold(T::zero(), T::max)
    }

    /// Applies a 2×2 matrix `[[m00, m01], [m10, m11]]` to qubit `q` (0-based).
    pub fn apply_single_qubit(&mut self, q: usize, m: &[[Cplx<T>; 2]; 2]) -> Result<()> {
        if q >= self.n {
            return Err(Error::InvalidVertex { vertex: q + 1, n: self.n });
        }
        apply_1q(&mut self.amps, self.n, q, m);
        Ok(())
    }

    pub fn to_f64(&self) -> StateVector<f64> {
        StateVector {
            n: self.n,
            amps: self
                .amps
                .iter()
                .map(|a| Cplx::new(a.re.as_f64(), a.im.as_f64()))
                .collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawState = serde_json::from_str(text)?;
        let amps: Vec<Cplx<T>> = raw
            .amps
            .iter()
            .map(|[re, im]| Cplx::new(T::lit(*re), T::lit(*im)))
            .collect();
        let state = Self::new(amps)?;
        if state.n != raw.n {
            return Err(Error::DimensionMismatch { expected: 1 << raw.n, found: state.dim() });
        }
        Ok(state)
    }

    pub fn to_json(&self) -> String {
        let raw: Vec<[f64; 2]> = self
            .amps
            .iter()
            .map(|a| [a.re.as_f64(), a.im.as_f64()])
            .collect();
        serde_json::json!({ "n": self.n, "amps": raw }).to_string()
    }
}

/// In-place single-qubit update over the full amplitude buffer.
pub(crate) fn apply_1q<T: Real>(amps: &mut [Cplx<T>], n: usize, q: usize, m: &[[Cplx<T>; 2]; 2]) {
    let stride = 1usize << (n - 1 - q);
    let mut base = 0;
    while base < amps.len() {
        for i in base..base + stride {
            let a0 = amps[i];
            let a1 = amps[i + stride];
            amps[i] = m[0][0] * a0 + m[0][1] * a1;
            amps[i + stride] = m[1][0] * a0 + m[1][1] * a1;
        }
        base += stride << 1;
    }
}

/// `|+⟩^⊗n`.
pub fn plus_state<T: Real>(n: usize) -> Result<StateVector<T>> {
    check_n(n)?;
    let dim = 1usize << n;
    let amp = T::one() / T::lit(dim as f64).sqrt();
    Ok(StateVector {
        n,
        amps: vec![Cplx::new(amp, T::zero()); dim],
    })
}

/// `(|0…0⟩ + |1…1⟩)/√2`.
pub fn ghz_state<T: Real>(n: usize) -> Result<StateVector<T>> {
    check_n(n)?;
    let mut amps = vec![czero(); 1 << n];
    let h = T::lit(0.5).sqrt();
    amps[0] = Cplx::new(h, T::zero());
    amps[(1 << n) - 1] = Cplx::new(h, T::zero());
    Ok(StateVector { n, amps })
}

/// `C_eZ`: negates every amplitude whose index has all bits of `edge` set.
pub fn apply_controlled_z<T: Real>(state: &StateVector<T>, edge: &[usize]) -> Result<StateVector<T>> {
    let mut out = state.clone();
    apply_controlled_z_mut(&mut out, edge)?;
    Ok(out)
}

pub fn apply_controlled_z_mut<T: Real>(state: &mut StateVector<T>, edge: &[usize]) -> Result<()> {
    if edge.is_empty() {
        return Err(Error::EmptyEdge);
    }
    if let Some(&bad) = edge.iter().find(|&&v| v == 0 || v > state.n) {
        return Err(Error::InvalidVertex { vertex: bad, n: state.n });
    }
    flip_signs(&mut state.amps, vertex_mask(state.n, edge));
    Ok(())
}

fn flip_signs<T: Real>(amps: &mut [Cplx<T>], mask: usize) {
    for (i, a) in amps.iter_mut().enumerate() {
        if i & mask == mask {
            *a = -*a;
        }
    }
}

/// `∏_e C_eZ |+⟩^⊗n`.
pub fn build_hypergraph_state<T: Real>(g: &Hypergraph) -> Result<StateVector<T>> {
    let mut state = plus_state(g.n())?;
    for mask in g.edge_masks() {
        flip_signs(&mut state.amps, mask);
    }
    Ok(state)
}

/// Sign pattern (`+1`/`-1` per basis index) of a hypergraph state.
pub fn hypergraph_signs(g: &Hypergraph) -> Vec<i8> {
    let mut signs = vec![1i8; 1 << g.n()];
    for mask in g.edge_masks() {
        for (i, s) in signs.iter_mut().enumerate() {
            if i & mask == mask {
                *s = -*s;
            }
        }
    }
    signs
}

/// State with amplitudes `sign_i / √2ⁿ`.
pub fn state_from_signs<T: Real>(signs: &[i8]) -> Result<StateVector<T>> {
    let len = signs.len();
    if len < 2 || !len.is_power_of_two() {
        return Err(Error::BadLength { len });
    }
    let n = len.trailing_zeros() as usize;
    check_n(n)?;
    let amp = T::one() / T::lit(len as f64).sqrt();
    let amps = signs
        .iter()
        .map(|&s| match s {
            1 => Ok(Cplx::new(amp, T::zero())),
            -1 => Ok(Cplx::new(-amp, T::zero())),
            other => Err(Error::InvalidConfig(format!("sign {other} is not ±1"))),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(StateVector { n, amps })
}

/// Recovers the hypergraph of a `±1/√2ⁿ` state.
///
/// The sign function `f` (amplitude `(-1)^{f(i)}/√2ⁿ`) is turned into its
/// algebraic normal form by the Möbius transform over the subset lattice;
/// the monomials of the ANF are the hyperedges.
pub fn infer_hypergraph<T: Real>(state: &StateVector<T>) -> Result<Hypergraph> {
    let dim = state.dim();
    let expected = 1.0 / (dim as f64).sqrt();
    let tol = T::AMPLITUDE_TOL;
    let mut anf: Vec<u8> = Vec::with_capacity(dim);
    for (index, a) in state.amps.iter().enumerate() {
        let (re, im) = (a.re.as_f64(), a.im.as_f64());
        let bit = if (re - expected).abs() <= tol && im.abs() <= tol {
            0
        } else if (re + expected).abs() <= tol && im.abs() <= tol {
            1
        } else {
            return Err(Error::NotHypergraphState { index, re, im, dim });
        };
        anf.push(bit);
    }
    mobius_transform(&mut anf);
    if anf[0] != 0 {
        // constant term = global sign −1, which no edge set produces
        return Err(Error::NotHypergraphState {
            index: 0,
            re: state.amps[0].re.as_f64(),
            im: state.amps[0].im.as_f64(),
            dim,
        });
    }
    let n = state.n;
    let edges = anf
        .iter()
        .enumerate()
        .filter(|(_, &c)| c == 1)
        .map(|(mask, _)| mask_vertices(n, mask));
    Hypergraph::new(n, edges)
}

/// In-place GF(2) Möbius transform (truth table ↔ ANF coefficients).
pub fn mobius_transform(table: &mut [u8]) {
    let len = table.len();
    let mut step = 1;
    while step < len {
        for i in 0..len {
            if i & step != 0 {
                table[i] ^= table[i ^ step];
            }
        }
        step <<= 1;
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::QubitCount { n, min: 1, max: MAX_QUBITS });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn signs_of(state: &StateVector<f64>) -> Vec<i8> {
        state.amps().iter().map(|a| if a.re < 0.0 { -1 } else { 1 }).collect()
    }

    #[test]
    fn plus_state_amplitudes() {
        let s1 = plus_state::<f64>(1).unwrap();
        assert!(s1.amps().iter().all(|a| (a.re - 0.5f64.sqrt()).abs() < 1e-15));
        let s2 = plus_state::<f64>(2).unwrap();
        assert!(s2.amps().iter().all(|a| a.re == 0.5 && a.im == 0.0));
        let s4 = plus_state::<f64>(4).unwrap();
        assert_eq!(s4.dim(), 16);
        assert!(s4.amps().iter().all(|a| a.re == 0.25));
        assert!(plus_state::<f64>(0).is_err());
        assert!(plus_state::<f64>(13).is_err());
    }

    #[test]
    fn controlled_z_examples() {
        let z = apply_controlled_z(&plus_state::<f64>(1).unwrap(), &[1]).unwrap();
        assert!(z.amps()[0].re > 0.0 && z.amps()[1].re < 0.0);

        let p3 = plus_state::<f64>(3).unwrap();
        let ccz = apply_controlled_z(&p3, &[1, 2, 3]).unwrap();
        let neg: Vec<usize> = (0..8).filter(|&i| ccz.amps()[i].re < 0.0).collect();
        assert_eq!(neg, vec![7]);

        let twice = apply_controlled_z(&ccz, &[3, 1, 2]).unwrap();
        assert_eq!(twice, p3);

        assert!(matches!(
            apply_controlled_z(&p3, &[4]),
            Err(Error::InvalidVertex { vertex: 4, n: 3 })
        ));
    }

    #[test]
    fn build_examples() {
        let g = Hypergraph::new(4, vec![vec![1, 2, 3, 4]]).unwrap();
        let s = build_hypergraph_state::<f64>(&g).unwrap();
        let neg: Vec<usize> = (0..16).filter(|&i| s.amps()[i].re < 0.0).collect();
        assert_eq!(neg, vec![15]);

        let empty = build_hypergraph_state::<f64>(&Hypergraph::empty(3).unwrap()).unwrap();
        assert_eq!(empty, plus_state(3).unwrap());
    }

    #[test]
    fn infer_examples() {
        assert_eq!(
            infer_hypergraph(&plus_state::<f64>(3).unwrap()).unwrap(),
            Hypergraph::empty(3).unwrap()
        );
        let mut signs = vec![1i8; 8];
        signs[7] = -1;
        let s = state_from_signs::<f64>(&signs).unwrap();
        assert_eq!(infer_hypergraph(&s).unwrap().edges(), &[vec![1, 2, 3]]);
    }

    #[test]
    fn infer_rejects_non_hypergraph_input() {
        let ghz = StateVector::<f64>::normalized(vec![
            Cplx::new(1.0, 0.0),
            czero(),
            czero(),
            Cplx::new(1.0, 0.0),
        ])
        .unwrap();
        assert!(matches!(infer_hypergraph(&ghz), Err(Error::NotHypergraphState { .. })));

        let flipped = state_from_signs::<f64>(&[-1, -1, -1, -1]).unwrap();
        assert!(matches!(infer_hypergraph(&flipped), Err(Error::NotHypergraphState { index: 0, .. })));
    }

    /// Brute-force ANF: coefficient of monomial `m` is the XOR of `f` over all subsets of `m`.
    fn anf_brute_force(f: &[u8]) -> Vec<u8> {
        (0..f.len())
            .map(|m| (0..f.len()).filter(|&s| s & m == s).fold(0, |acc, s| acc ^ f[s]))
            .collect()
    }

    #[test]
    fn g7_signs_invert_to_edges_and_back() {
        let mut signs = vec![1i8; 16];
        for i in [5, 9, 11, 14] {
            signs[i] = -1;
        }
        let f: Vec<u8> = signs.iter().map(|&s| u8::from(s < 0)).collect();
        let brute = anf_brute_force(&f);
        let expected: Vec<Vec<usize>> = (0..16)
            .filter(|&m| brute[m] == 1)
            .map(|m| mask_vertices(4, m))
            .collect();
        let g = infer_hypergraph(&state_from_signs::<f64>(&signs).unwrap()).unwrap();
        assert_eq!(g, Hypergraph::new(4, expected).unwrap());
        assert_eq!(hypergraph_signs(&g), signs);
    }

    #[test]
    fn f32_build_and_infer() {
        let g = Hypergraph::new(5, vec![vec![1, 2, 3], vec![4, 5], vec![2]]).unwrap();
        let s = build_hypergraph_state::<f32>(&g).unwrap();
        assert_eq!(infer_hypergraph(&s).unwrap(), g);
    }

    #[test]
    fn json_round_trip() {
        let s = build_hypergraph_state::<f64>(&Hypergraph::new(2, vec![vec![1, 2]]).unwrap()).unwrap();
        let back = StateVector::<f64>::from_json(&s.to_json()).unwrap();
        assert_eq!(back, s);
        assert!(StateVector::<f64>::from_json(r#"{"n":1,"amps":[[1,0],[1,0]]}"#).is_err());
    }

    fn arb_hypergraph() -> impl Strategy<Value = Hypergraph> {
        (1usize..=5).prop_flat_map(|n| {
            proptest::collection::btree_set(1usize..(1 << n), 0..12)
                .prop_map(move |masks| Hypergraph::new(n, masks.into_iter().map(|m| mask_vertices(n, m))).unwrap())
        })
    }

    proptest! {
        #[test]
        fn anf_round_trip(g in arb_hypergraph()) {
            let s = build_hypergraph_state::<f64>(&g).unwrap();
            prop_assert_eq!(infer_hypergraph(&s).unwrap(), g);
        }

        #[test]
        fn edge_order_is_irrelevant(g in arb_hypergraph(), seed in any::<u64>()) {
            let mut masks: Vec<usize> = g.edge_masks().collect();
            let len = masks.len();
            // deterministic shuffle from the seed
            for i in (1..len).rev() {
                let j = (seed.rotate_left(i as u32) as usize) % (i + 1);
                masks.swap(i, j);
            }
            let mut s = plus_state::<f64>(g.n()).unwrap();
            for m in masks {
                apply_controlled_z_mut(&mut s, &mask_vertices(g.n(), m)).unwrap();
            }
            prop_assert_eq!(s, build_hypergraph_state::<f64>(&g).unwrap());
        }

        #[test]
        fn amplitudes_are_exactly_plus_minus(g in arb_hypergraph()) {
            let s = build_hypergraph_state::<f64>(&g).unwrap();
            let amp = 1.0 / ((1usize << g.n()) as f64).sqrt();
            prop_assert!(s.amps().iter().all(|a| a.im == 0.0 && a.re.abs() == amp));
            prop_assert_eq!(signs_of(&s), hypergraph_signs(&g));
        }
    }
}

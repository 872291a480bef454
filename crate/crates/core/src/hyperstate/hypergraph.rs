use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hyperstate::MAX_QUBITS;

/// Vertex count plus a set of hyperedges over `1..=n`.
///
/// Edges are kept sorted (vertices within an edge, and edges among
/// themselves), so two hypergraphs with the same edge set compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawHypergraph")]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
struct RawHypergraph {
    n: usize,
    #[serde(default)]
    edges: Vec<Vec<usize>>,
}

impl TryFrom<RawHypergraph> for Hypergraph {
    type Error = Error;

    fn try_from(raw: RawHypergraph) -> Result<Self> {
        Hypergraph::new(raw.n, raw.edges)
    }
}

impl Hypergraph {
    pub fn new<E, V>(n: usize, edges: E) -> Result<Self>
    where
        E: IntoIterator<Item = V>,
        V: IntoIterator<Item = usize>,
    {
        check_n(n)?;
        let mut seen = BTreeSet::new();
        for edge in edges {
            let verts: BTreeSet<usize> = edge.into_iter().collect();
            if verts.is_empty() {
                return Err(Error::EmptyEdge);
            }
            if let Some(&bad) = verts.iter().find(|&&v| v == 0 || v > n) {
                return Err(Error::InvalidVertex { vertex: bad, n });
            }
            let sorted: Vec<usize> = verts.into_iter().collect();
            if !seen.insert(sorted.clone()) {
                return Err(Error::DuplicateEdge(sorted));
            }
        }
        Ok(Self {
            n,
            edges: seen.into_iter().collect(),
        })
    }

    /// Hypergraph without edges; its state is `|+⟩^⊗n`.
    pub fn empty(n: usize) -> Result<Self> {
        Self::new(n, Vec::<Vec<usize>>::new())
    }

    /// All `C(n, k)` subsets of size `k` as edges.
    pub fn k_uniform(n: usize, k: usize) -> Result<Self> {
        check_n(n)?;
        if k == 0 || k > n {
            return Err(Error::EdgeSize { k, n });
        }
        let mut edges = Vec::new();
        let mut combo: Vec<usize> = (1..=k).collect();
        loop {
            edges.push(combo.clone());
            // advance to the next k-combination in lexicographic order
            let mut i = k;
            while i > 0 && combo[i - 1] == n - k + i {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            combo[i - 1] += 1;
            for j in i..k {
                combo[j] = combo[j - 1] + 1;
            }
        }
        Self::new(n, edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn max_edge_size(&self) -> usize {
        self.edges.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Basis-index masks of the edges (vertex `j` owns bit `n - j`).
    pub fn edge_masks(&self) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().map(move |e| vertex_mask(self.n, e))
    }

    /// True iff the edges join all `n` vertices into one component.
    pub fn is_connected(&self) -> bool {
        let mut parent: Vec<usize> = (0..=self.n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for edge in &self.edges {
            let root = find(&mut parent, edge[0]);
            for &v in &edge[1..] {
                let r = find(&mut parent, v);
                parent[r] = root;
            }
        }
        let root = find(&mut parent, 1);
        (2..=self.n).all(|v| find(&mut parent, v) == root)
    }

    /// Edge list in the `1,2;2,3` syntax accepted by [`Hypergraph::parse_edges`].
    pub fn edges_string(&self) -> String {
        self.edges
            .iter()
            .map(|e| {
                e.iter()
                    .map(usize::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join(";")
    }

    /// Parses `"1,2,3;3,4"`: edges separated by `;`, vertices by `,`.
    pub fn parse_edges(n: usize, text: &str) -> Result<Self> {
        let mut edges = Vec::new();
        for chunk in text.split(';').map(str::trim).filter(|c| !c.is_empty()) {
            let mut edge = Vec::new();
            for tok in chunk.split(',').map(str::trim) {
                let v = tok
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidConfig(format!("bad vertex {tok:?} in edge list")))?;
                edge.push(v);
            }
            edges.push(edge);
        }
        Self::new(n, edges)
    }
}

/// Bit mask of a vertex set under the vertex-1-is-most-significant convention.
pub fn vertex_mask(n: usize, vertices: &[usize]) -> usize {
    vertices.iter().fold(0, |m, &v| m | (1 << (n - v)))
}

/// Inverse of [`vertex_mask`].
pub fn mask_vertices(n: usize, mask: usize) -> Vec<usize> {
    (1..=n).filter(|&v| mask & (1 << (n - v)) != 0).collect()
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::QubitCount { n, min: 1, max: MAX_QUBITS });
    }
    Ok(())
}

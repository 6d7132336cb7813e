//! Vertex-weighted simple graphs and the edge/vertex subset statistics the
//! chromatic invariants are built from.

mod generate;
mod io;
mod union_find;

pub use generate::{
    labeled_trees, prufer_decode, random_forest, weight_assignments, WeightAssignments,
};
pub use io::{parse_graph, serialize_graph};
pub use union_find::UnionFind;

use crate::algebra::{VectorPartition, VectorVec};
use crate::error::{Error, Result};

/// A finite simple graph on vertices `0..n` with weights in ℙ^r.
///
/// Edges are stored as `(u, v)` with `u < v`, sorted. Edge-subset bitmasks
/// throughout the crate index into this sorted list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightedGraph {
    r: usize,
    weights: Vec<VectorVec>,
    edges: Vec<(usize, usize)>,
}

/// One connected component of a spanning subgraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub vertices: Vec<usize>,
    pub weight: VectorVec,
}

impl Component {
    pub fn size(&self) -> usize {
        self.vertices.len()
    }
}

/// Components of `(V, S)`, ordered by their minimum vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentDecomposition {
    pub components: Vec<Component>,
}

impl WeightedGraph {
    /// Validates and builds a graph. `weights[v]` must have length `r ≥ 1`
    /// with every coordinate ≥ 1.
    pub fn new(r: usize, weights: Vec<VectorVec>, edges: Vec<(usize, usize)>) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidParameter(
                "weight dimension r must be ≥ 1".into(),
            ));
        }
        for (v, w) in weights.iter().enumerate() {
            if w.width() != r {
                return Err(Error::WidthMismatch {
                    expected: r,
                    found: w.width(),
                });
            }
            if !w.is_positive() {
                return Err(Error::NonPositiveWeight(v));
            }
        }
        let n = weights.len();
        let mut norm = Vec::with_capacity(edges.len());
        for &(a, b) in &edges {
            if a >= n {
                return Err(Error::VertexOutOfRange(a));
            }
            if b >= n {
                return Err(Error::VertexOutOfRange(b));
            }
            if a == b {
                return Err(Error::Loop(a));
            }
            norm.push((a.min(b), a.max(b)));
        }
        norm.sort_unstable();
        if let Some(w) = norm.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::MultiEdge(w[0].0, w[0].1));
        }
        Ok(WeightedGraph {
            r,
            weights,
            edges: norm,
        })
    }

    /// Scalar-weighted (r = 1) convenience constructor.
    pub fn with_scalar_weights(weights: &[u32], edges: &[(usize, usize)]) -> Result<Self> {
        Self::new(
            1,
            weights.iter().map(|&w| VectorVec::new([w])).collect(),
            edges.to_vec(),
        )
    }

    /// The path `0 - 1 - … - (n-1)` with the given scalar weights.
    pub fn path(weights: &[u32]) -> Self {
        let edges: Vec<_> = (1..weights.len()).map(|i| (i - 1, i)).collect();
        Self::with_scalar_weights(weights, &edges).expect("path weights must be positive")
    }

    pub fn empty(r: usize) -> Self {
        WeightedGraph {
            r,
            weights: Vec::new(),
            edges: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    /// Weight dimension r.
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn weights(&self) -> &[VectorVec] {
        &self.weights
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Total weight wt(G).
    pub fn total_weight(&self) -> VectorVec {
        let mut t = VectorVec::zero(self.r);
        for w in &self.weights {
            t.add_assign(w);
        }
        t
    }

    /// `true` when the graph has no cycle.
    pub fn is_forest(&self) -> bool {
        let mut uf = UnionFind::new(self.n());
        self.edges.iter().all(|&(a, b)| uf.union(a, b))
    }

    /// Number of connected components c(G).
    pub fn num_components(&self) -> usize {
        let mut uf = UnionFind::new(self.n());
        let merged = self.edges.iter().filter(|&&(a, b)| uf.union(a, b)).count();
        self.n() - merged
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &WeightedGraph) -> Result<WeightedGraph> {
        if self.r != other.r {
            return Err(Error::WidthMismatch {
                expected: self.r,
                found: other.r,
            });
        }
        let off = self.n();
        let mut weights = self.weights.clone();
        weights.extend(other.weights.iter().cloned());
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(a, b)| (a + off, b + off)));
        WeightedGraph::new(self.r, weights, edges)
    }

    fn subset_mask(&self, subset: &[(usize, usize)]) -> Result<u128> {
        let mut mask = 0u128;
        for &(a, b) in subset {
            let key = (a.min(b), a.max(b));
            let idx = self
                .edges
                .binary_search(&key)
                .map_err(|_| Error::NotAnEdge(a, b))?;
            if idx >= 128 {
                return Err(Error::CapExceeded {
                    what: "edge index",
                    value: idx as u128,
                    cap: 127,
                });
            }
            mask |= 1 << idx;
        }
        Ok(mask)
    }

    fn union_find_of(&self, mask: u128) -> UnionFind {
        let mut uf = UnionFind::new(self.n());
        for (i, &(a, b)) in self.edges.iter().enumerate().take(128) {
            if mask >> i & 1 == 1 {
                uf.union(a, b);
            }
        }
        uf
    }

    /// Connected components of `(V, S)`.
    pub fn components(&self, subset: &[(usize, usize)]) -> Result<ComponentDecomposition> {
        let mask = self.subset_mask(subset)?;
        Ok(self.components_of_mask(mask))
    }

    pub(crate) fn components_of_mask(&self, mask: u128) -> ComponentDecomposition {
        let mut uf = self.union_find_of(mask);
        let mut slot = vec![usize::MAX; self.n()];
        let mut components: Vec<Component> = Vec::new();
        for v in 0..self.n() {
            let root = uf.find(v);
            if slot[root] == usize::MAX {
                slot[root] = components.len();
                components.push(Component {
                    vertices: Vec::new(),
                    weight: VectorVec::zero(self.r),
                });
            }
            let c = &mut components[slot[root]];
            c.vertices.push(v);
            c.weight.add_assign(&self.weights[v]);
        }
        ComponentDecomposition { components }
    }

    /// Bitype (weighted type) of `S`: one part `(|C|, wt(C))` per component
    /// of `(V, S)`. Width is `r + 1`.
    pub fn bitype(&self, subset: &[(usize, usize)]) -> Result<VectorPartition> {
        let mask = self.subset_mask(subset)?;
        Ok(self.bitype_of_mask(mask))
    }

    /// Bitype of the edge subset encoded by `mask` (bit i = edge i).
    pub fn bitype_of_mask(&self, mask: u128) -> VectorPartition {
        let n = self.n();
        let width = self.r + 1;
        let mut uf = self.union_find_of(mask);
        let mut acc: Vec<Option<VectorVec>> = vec![None; n];
        for v in 0..n {
            let root = uf.find(v);
            let part = acc[root].get_or_insert_with(|| VectorVec::zero(width));
            let c = part.coords_mut();
            c[0] += 1;
            for (dst, src) in c[1..].iter_mut().zip(self.weights[v].coords()) {
                *dst += *src;
            }
        }
        VectorPartition::from_parts_unchecked(width, acc.into_iter().flatten().collect())
    }

    /// The bitype of the whole graph, `bitype(E)`.
    pub fn full_bitype(&self) -> VectorPartition {
        let mask = if self.edges.len() >= 128 {
            u128::MAX
        } else {
            (1u128 << self.edges.len()) - 1
        };
        self.bitype_of_mask(mask)
    }

    fn check_vertices(&self, a: &[usize]) -> Result<Vec<bool>> {
        let mut inside = vec![false; self.n()];
        for &v in a {
            if v >= self.n() {
                return Err(Error::VertexOutOfRange(v));
            }
            inside[v] = true;
        }
        Ok(inside)
    }

    /// The induced subgraph `G|_A`, with vertices relabelled `0..|A|` in
    /// increasing order of their original index.
    pub fn induced(&self, a: &[usize]) -> Result<WeightedGraph> {
        let inside = self.check_vertices(a)?;
        let mut new_index = vec![usize::MAX; self.n()];
        let mut weights = Vec::new();
        for v in (0..self.n()).filter(|&v| inside[v]) {
            new_index[v] = weights.len();
            weights.push(self.weights[v].clone());
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(x, y)| inside[x] && inside[y])
            .map(|&(x, y)| (new_index[x], new_index[y]))
            .collect();
        Ok(WeightedGraph {
            r: self.r,
            weights,
            edges,
        })
    }

    /// Induced subgraph on the vertex bitmask `mask` (n ≤ 64).
    pub fn induced_mask(&self, mask: u64) -> WeightedGraph {
        let a: Vec<usize> = (0..self.n()).filter(|&v| mask >> v & 1 == 1).collect();
        self.induced(&a).expect("mask within range")
    }

    /// `(ext(A), int(A))`: edges with exactly one, resp. both, endpoints in A.
    pub fn ext_int(&self, a: &[usize]) -> Result<(usize, usize)> {
        let inside = self.check_vertices(a)?;
        let mut ext = 0;
        let mut int = 0;
        for &(x, y) in &self.edges {
            match (inside[x], inside[y]) {
                (true, true) => int += 1,
                (true, false) | (false, true) => ext += 1,
                _ => {}
            }
        }
        Ok((ext, int))
    }

    /// Vertex bitmask form of [`WeightedGraph::ext_int`] (n ≤ 64).
    pub fn ext_int_mask(&self, mask: u64) -> (usize, usize) {
        let mut ext = 0;
        let mut int = 0;
        for &(x, y) in &self.edges {
            match (mask >> x & 1, mask >> y & 1) {
                (1, 1) => int += 1,
                (0, 0) => {}
                _ => ext += 1,
            }
        }
        (ext, int)
    }
}

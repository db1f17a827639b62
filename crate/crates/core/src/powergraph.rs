//! Simple graphs and digraphs over vertex indices, and the two power-graph
//! builders.
//!
//! Arc convention: `x -> y` iff `y != x` and `y = x^n` for some integer `n`
//! (`y` is a power of `x`). In a finite group every non-identity element
//! therefore has an arc to the identity.

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::groups::FiniteGroup;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for {count} vertices")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
}

/// Simple undirected graph with one adjacency bit-row per vertex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<FixedBitSet>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph({} vertices, {:?})", self.vertex_count(), self.edges())
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![FixedBitSet::with_capacity(n); n] }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            g.adj[u].insert_range(..);
            g.adj[u].set(u, false);
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, count: n });
                }
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert_ne!(u, v);
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> &FixedBitSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones(..)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones(..)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, row) in self.adj.iter().enumerate() {
            out.extend(row.ones().filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    pub fn is_complete(&self) -> bool {
        let n = self.vertex_count();
        (0..n).all(|v| self.degree(v) + 1 == n)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.vertex_count());
        let mut g = Graph::empty(self.vertex_count());
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }
}

/// Simple digraph; `x -> y` and `y -> x` may both be present.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DiGraph {
    out: Vec<FixedBitSet>,
}

impl std::fmt::Debug for DiGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "DiGraph({} vertices, {:?})", self.vertex_count(), self.arcs())
    }
}

impl DiGraph {
    pub fn empty(n: usize) -> Self {
        DiGraph { out: vec![FixedBitSet::with_capacity(n); n] }
    }

    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut d = DiGraph::empty(n);
        for &(u, v) in arcs {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, count: n });
                }
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            d.add_arc(u, v);
        }
        Ok(d)
    }

    pub(crate) fn add_arc(&mut self, u: usize, v: usize) {
        debug_assert_ne!(u, v);
        self.out[u].insert(v);
    }

    pub fn vertex_count(&self) -> usize {
        self.out.len()
    }

    #[inline]
    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u].contains(v)
    }

    pub fn out_neighbors(&self, v: usize) -> &FixedBitSet {
        &self.out[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].count_ones(..)
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.out.iter().filter(|row| row.contains(v)).count()
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(|r| r.count_ones(..)).sum()
    }

    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, row) in self.out.iter().enumerate() {
            out.extend(row.ones().map(|v| (u, v)));
        }
        out
    }

    /// Symmetrized graph with loops dropped.
    pub fn underlying(&self) -> Graph {
        let mut g = Graph::empty(self.vertex_count());
        for (u, v) in self.arcs() {
            g.add_edge(u, v);
        }
        g
    }

    pub fn reverse(&self) -> DiGraph {
        let mut d = DiGraph::empty(self.vertex_count());
        for (u, v) in self.arcs() {
            d.add_arc(v, u);
        }
        d
    }

    pub fn permute(&self, perm: &[usize]) -> DiGraph {
        assert_eq!(perm.len(), self.vertex_count());
        let mut d = DiGraph::empty(self.vertex_count());
        for (u, v) in self.arcs() {
            d.add_arc(perm[u], perm[v]);
        }
        d
    }

    /// Treats each undirected edge as a pair of opposite arcs.
    pub fn symmetric(g: &Graph) -> DiGraph {
        DiGraph { out: (0..g.vertex_count()).map(|v| g.neighbors(v).clone()).collect() }
    }
}

/// `x -> y` iff `y` is a power of `x` other than `x` itself.
pub fn directed_power_graph(group: &FiniteGroup) -> DiGraph {
    let n = group.order();
    let mut d = DiGraph::empty(n);
    for x in 0..n {
        for y in group.powers(x) {
            if y != x {
                d.add_arc(x, y);
            }
        }
    }
    d
}

/// `x ~ y` iff one of them is a power of the other.
pub fn power_graph(group: &FiniteGroup) -> Graph {
    directed_power_graph(group).underlying()
}

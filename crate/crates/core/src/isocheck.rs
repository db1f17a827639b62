//! Canonical forms and exact isomorphism tests for small graphs and
//! digraphs.
//!
//! The canonical labeling is found by individualization-refinement: color
//! refinement to a stable coloring, then backtracking over the vertices of
//! the first non-singleton cell, keeping the leaf whose permuted adjacency
//! serialization is lexicographically least. Automorphisms discovered at
//! equal leaves prune sibling branches in the same orbit.
//!
//! Power graphs have huge closed-twin classes, so by default twins (closed
//! and open) are collapsed into labeled modules first; the search then runs
//! on the much smaller quotient and the labeling is re-expanded.
//!
//! The byte layout is an internal format and may change between versions.

use std::cmp::Ordering;
use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::powergraph::{DiGraph, Graph};

/// Default vertex bound for canonicalization.
pub const DEFAULT_CANON_BOUND: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsoError {
    #[error("graph has {vertices} vertices, above the canonicalization bound {bound}")]
    BoundExceeded { vertices: usize, bound: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CanonOptions {
    pub bound: usize,
    /// Collapse twin modules before searching.
    pub collapse_twins: bool,
}

impl Default for CanonOptions {
    fn default() -> Self {
        CanonOptions { bound: DEFAULT_CANON_BOUND, collapse_twins: true }
    }
}

/// Canonical adjacency serialization plus the labeling that produces it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    bytes: Vec<u8>,
    /// `labeling[v]` is the canonical position of vertex `v`.
    labeling: Vec<usize>,
}

impl CanonicalForm {
    pub fn bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn labeling(&self) -> &[usize] {
        &self.labeling
    }
}

const KIND_GRAPH: u8 = b'G';
const KIND_DIGRAPH: u8 = b'D';

/// Directed adjacency with both arc directions indexed.
struct Adj {
    out: Vec<FixedBitSet>,
    inc: Vec<FixedBitSet>,
}

impl Adj {
    fn from_rows(out: Vec<FixedBitSet>) -> Adj {
        let n = out.len();
        let mut inc = vec![FixedBitSet::with_capacity(n); n];
        for (u, row) in out.iter().enumerate() {
            for v in row.ones() {
                inc[v].insert(u);
            }
        }
        Adj { out, inc }
    }

    fn len(&self) -> usize {
        self.out.len()
    }
}

fn graph_rows(g: &Graph) -> Vec<FixedBitSet> {
    (0..g.vertex_count()).map(|v| g.neighbors(v).clone()).collect()
}

fn digraph_rows(d: &DiGraph) -> Vec<FixedBitSet> {
    (0..d.vertex_count()).map(|v| d.out_neighbors(v).clone()).collect()
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm, IsoError> {
    canonical_form_with(g, CanonOptions::default())
}

pub fn canonical_form_with(g: &Graph, options: CanonOptions) -> Result<CanonicalForm, IsoError> {
    canonicalize(KIND_GRAPH, graph_rows(g), options)
}

pub fn digraph_canonical_form(d: &DiGraph) -> Result<CanonicalForm, IsoError> {
    digraph_canonical_form_with(d, CanonOptions::default())
}

pub fn digraph_canonical_form_with(d: &DiGraph, options: CanonOptions) -> Result<CanonicalForm, IsoError> {
    canonicalize(KIND_DIGRAPH, digraph_rows(d), options)
}

/// `Some(witness)` iff the graphs are isomorphic; `witness[v]` is the image
/// in `b` of vertex `v` of `a`.
pub fn are_isomorphic(a: &Graph, b: &Graph) -> Result<Option<Vec<usize>>, IsoError> {
    are_isomorphic_with(a, b, CanonOptions::default())
}

pub fn are_isomorphic_with(a: &Graph, b: &Graph, options: CanonOptions) -> Result<Option<Vec<usize>>, IsoError> {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return check_bounds(a.vertex_count(), b.vertex_count(), options.bound).map(|_| None);
    }
    let ca = canonical_form_with(a, options)?;
    let cb = canonical_form_with(b, options)?;
    Ok(witness(&ca, &cb))
}

pub fn are_digraph_isomorphic(a: &DiGraph, b: &DiGraph) -> Result<bool, IsoError> {
    Ok(digraph_isomorphism(a, b, CanonOptions::default())?.is_some())
}

pub fn digraph_isomorphism(a: &DiGraph, b: &DiGraph, options: CanonOptions) -> Result<Option<Vec<usize>>, IsoError> {
    if a.vertex_count() != b.vertex_count() || a.arc_count() != b.arc_count() {
        return check_bounds(a.vertex_count(), b.vertex_count(), options.bound).map(|_| None);
    }
    let ca = digraph_canonical_form_with(a, options)?;
    let cb = digraph_canonical_form_with(b, options)?;
    Ok(witness(&ca, &cb))
}

fn check_bounds(na: usize, nb: usize, bound: usize) -> Result<(), IsoError> {
    let vertices = na.max(nb);
    if vertices > bound {
        Err(IsoError::BoundExceeded { vertices, bound })
    } else {
        Ok(())
    }
}

fn witness(a: &CanonicalForm, b: &CanonicalForm) -> Option<Vec<usize>> {
    if a.bytes != b.bytes {
        return None;
    }
    let mut at_position = vec![0; b.labeling.len()];
    for (v, &pos) in b.labeling.iter().enumerate() {
        at_position[pos] = v;
    }
    Some(a.labeling.iter().map(|&pos| at_position[pos]).collect())
}

fn canonicalize(kind: u8, rows: Vec<FixedBitSet>, options: CanonOptions) -> Result<CanonicalForm, IsoError> {
    let n = rows.len();
    check_bounds(n, 0, options.bound)?;
    let adj = Adj::from_rows(rows);
    let labeling = if options.collapse_twins {
        let modules = TwinReduction::run(&adj);
        let quotient_positions = search(&modules.quotient, &modules.colors);
        modules.expand(&quotient_positions)
    } else {
        search(&adj, &vec![0; n])
    };
    let bytes = serialize(kind, &adj, &labeling);
    Ok(CanonicalForm { bytes, labeling })
}

fn serialize(kind: u8, adj: &Adj, labeling: &[usize]) -> Vec<u8> {
    let n = adj.len();
    let mut at_position = vec![0; n];
    for (v, &p) in labeling.iter().enumerate() {
        at_position[p] = v;
    }
    let mut bytes = Vec::with_capacity(5 + (n * n).div_ceil(8));
    bytes.push(kind);
    bytes.extend_from_slice(&(n as u32).to_le_bytes());
    let mut acc = 0u8;
    let mut filled = 0;
    for i in 0..n {
        let row = &adj.out[at_position[i]];
        for j in 0..n {
            acc = (acc << 1) | row.contains(at_position[j]) as u8;
            filled += 1;
            if filled == 8 {
                bytes.push(acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        bytes.push(acc << (8 - filled));
    }
    bytes
}

/// Iterated collapse of closed twins (mutually adjacent, equal other
/// neighbors) and open twins (non-adjacent, equal neighbors).
struct TwinReduction {
    quotient: Adj,
    /// Initial colors of quotient vertices: ranks of their module labels.
    colors: Vec<u32>,
    /// Module tree per quotient vertex.
    roots: Vec<usize>,
    nodes: Vec<ModuleNode>,
}

struct ModuleNode {
    label: String,
    /// Children in expansion order; empty for an original vertex.
    children: Vec<usize>,
    vertex: usize,
}

impl TwinReduction {
    fn run(adj: &Adj) -> TwinReduction {
        let n = adj.len();
        let mut nodes: Vec<ModuleNode> =
            (0..n).map(|v| ModuleNode { label: ".".to_string(), children: Vec::new(), vertex: v }).collect();
        let mut roots: Vec<usize> = (0..n).collect();
        let mut out = adj.out.clone();
        let mut inc = adj.inc.clone();
        loop {
            let m = roots.len();
            let mut closed: HashMap<(FixedBitSet, FixedBitSet), Vec<usize>> = HashMap::new();
            let mut open: HashMap<(&FixedBitSet, &FixedBitSet), Vec<usize>> = HashMap::new();
            for v in 0..m {
                let (mut o, mut i) = (out[v].clone(), inc[v].clone());
                o.insert(v);
                i.insert(v);
                closed.entry((o, i)).or_default().push(v);
                open.entry((&out[v], &inc[v])).or_default().push(v);
            }
            // a vertex never sits in both a closed and an open class of size > 1
            let mut class_of = vec![usize::MAX; m];
            let mut classes: Vec<(bool, Vec<usize>)> = Vec::new();
            for (is_closed, members) in
                closed.into_values().map(|c| (true, c)).chain(open.into_values().map(|c| (false, c)))
            {
                if members.len() > 1 {
                    for &v in &members {
                        class_of[v] = classes.len();
                    }
                    classes.push((is_closed, members));
                }
            }
            if classes.is_empty() {
                break;
            }
            // new vertex ids: in order of smallest old member
            let mut new_id = vec![usize::MAX; m];
            let mut new_roots = Vec::new();
            for v in 0..m {
                if new_id[v] != usize::MAX {
                    continue;
                }
                let id = new_roots.len();
                if class_of[v] == usize::MAX {
                    new_id[v] = id;
                    new_roots.push(roots[v]);
                } else {
                    let (is_closed, members) = &classes[class_of[v]];
                    let mut children: Vec<usize> = members.iter().map(|&u| roots[u]).collect();
                    children.sort_by(|&a, &b| nodes[a].label.cmp(&nodes[b].label));
                    let inner: Vec<&str> = children.iter().map(|&c| nodes[c].label.as_str()).collect();
                    let label =
                        if *is_closed { format!("[{}]", inner.join("")) } else { format!("{{{}}}", inner.join("")) };
                    nodes.push(ModuleNode { label, children, vertex: usize::MAX });
                    for &u in members {
                        new_id[u] = id;
                    }
                    new_roots.push(nodes.len() - 1);
                }
            }
            let k = new_roots.len();
            let mut new_out = vec![FixedBitSet::with_capacity(k); k];
            for v in 0..m {
                for w in out[v].ones() {
                    let (a, b) = (new_id[v], new_id[w]);
                    if a != b {
                        new_out[a].insert(b);
                    }
                }
            }
            let quotient = Adj::from_rows(new_out);
            out = quotient.out;
            inc = quotient.inc;
            roots = new_roots;
        }
        let mut distinct: Vec<&str> = roots.iter().map(|&r| nodes[r].label.as_str()).collect();
        distinct.sort_unstable();
        distinct.dedup();
        let colors = roots.iter().map(|&r| distinct.binary_search(&nodes[r].label.as_str()).unwrap() as u32).collect();
        TwinReduction { quotient: Adj { out, inc }, colors, roots, nodes }
    }

    /// Turns quotient positions into positions of the original vertices.
    fn expand(&self, quotient_positions: &[usize]) -> Vec<usize> {
        let k = self.roots.len();
        let mut order = vec![0; k];
        for (q, &p) in quotient_positions.iter().enumerate() {
            order[p] = q;
        }
        let n = self.nodes.iter().filter(|node| node.children.is_empty()).count();
        let mut labeling = vec![0; n];
        let mut next = 0;
        let mut stack = Vec::new();
        for &q in &order {
            stack.push(self.roots[q]);
            while let Some(id) = stack.pop() {
                let node = &self.nodes[id];
                if node.children.is_empty() {
                    labeling[node.vertex] = next;
                    next += 1;
                } else {
                    stack.extend(node.children.iter().rev());
                }
            }
        }
        labeling
    }
}

/// Refines `colors` (ranks `0..k`) to the coarsest equitable coloring that
/// refines it, preserving the relative order of existing colors.
fn refine(adj: &Adj, colors: &mut Vec<u32>) {
    let n = adj.len();
    let mut count = distinct_count(colors);
    loop {
        if count == n {
            return;
        }
        let mut sigs: Vec<(u32, Vec<u32>, Vec<u32>, usize)> = (0..n)
            .map(|v| {
                let mut o: Vec<u32> = adj.out[v].ones().map(|w| colors[w]).collect();
                let mut i: Vec<u32> = adj.inc[v].ones().map(|w| colors[w]).collect();
                o.sort_unstable();
                i.sort_unstable();
                (colors[v], o, i, v)
            })
            .collect();
        sigs.sort_unstable();
        let mut rank = 0;
        for idx in 0..n {
            if idx > 0 {
                let (a, b) = (&sigs[idx - 1], &sigs[idx]);
                if (a.0, &a.1, &a.2) != (b.0, &b.1, &b.2) {
                    rank += 1;
                }
            }
            colors[sigs[idx].3] = rank;
        }
        let next = rank as usize + 1;
        if next == count {
            return;
        }
        count = next;
    }
}

fn distinct_count(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn dense_ranks(colors: &[u32]) -> Vec<u32> {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    colors.iter().map(|x| c.binary_search(x).unwrap() as u32).collect()
}

fn individualize(colors: &[u32], v: usize) -> Vec<u32> {
    let c = colors[v];
    colors
        .iter()
        .enumerate()
        .map(|(w, &x)| match x.cmp(&c) {
            Ordering::Less => x,
            Ordering::Equal if w == v => x,
            _ => x + 1,
        })
        .collect()
}

struct Searcher<'a> {
    adj: &'a Adj,
    initial: &'a [u32],
    best: Option<(Vec<u64>, Vec<usize>)>,
    automorphisms: Vec<Vec<usize>>,
}

/// Canonical positions for the vertices of `adj` under the vertex colors
/// `initial` (ranks).
fn search(adj: &Adj, initial: &[u32]) -> Vec<usize> {
    let n = adj.len();
    if n == 0 {
        return Vec::new();
    }
    let mut colors = dense_ranks(initial);
    refine(adj, &mut colors);
    let mut s = Searcher { adj, initial, best: None, automorphisms: Vec::new() };
    s.descend(colors, &mut Vec::new());
    s.best.unwrap().1
}

impl Searcher<'_> {
    fn certificate(&self, positions: &[usize]) -> Vec<u64> {
        let n = self.adj.len();
        let mut at = vec![0; n];
        for (v, &p) in positions.iter().enumerate() {
            at[p] = v;
        }
        let mut cert: Vec<u64> = at.iter().map(|&v| self.initial[v] as u64).collect();
        let mut word = 0u64;
        let mut filled = 0;
        for i in 0..n {
            let row = &self.adj.out[at[i]];
            for j in 0..n {
                word = (word << 1) | row.contains(at[j]) as u64;
                filled += 1;
                if filled == 64 {
                    cert.push(word);
                    word = 0;
                    filled = 0;
                }
            }
        }
        if filled > 0 {
            cert.push(word << (64 - filled));
        }
        cert
    }

    fn descend(&mut self, colors: Vec<u32>, path: &mut Vec<usize>) {
        let n = self.adj.len();
        let Some(cell) = target_cell(&colors) else {
            let positions: Vec<usize> = colors.iter().map(|&c| c as usize).collect();
            let cert = self.certificate(&positions);
            match &self.best {
                None => self.best = Some((cert, positions)),
                Some((best_cert, best_pos)) => match cert.cmp(best_cert) {
                    Ordering::Less => self.best = Some((cert, positions)),
                    Ordering::Equal => {
                        let mut at_best = vec![0; n];
                        for (v, &p) in best_pos.iter().enumerate() {
                            at_best[p] = v;
                        }
                        let auto: Vec<usize> = positions.iter().map(|&p| at_best[p]).collect();
                        if auto.iter().enumerate().any(|(v, &w)| v != w) {
                            self.automorphisms.push(auto);
                        }
                    }
                    Ordering::Greater => {}
                },
            }
            return;
        };
        let members: Vec<usize> = (0..n).filter(|&v| colors[v] == cell).collect();
        let mut explored: Vec<usize> = Vec::new();
        for &v in &members {
            if !explored.is_empty() && self.same_orbit(path, &explored, v) {
                continue;
            }
            let mut child = individualize(&colors, v);
            refine(self.adj, &mut child);
            path.push(v);
            self.descend(child, path);
            path.pop();
            explored.push(v);
        }
    }

    /// Whether `v` shares an orbit with an explored sibling under the known
    /// automorphisms that fix the current path pointwise.
    fn same_orbit(&self, path: &[usize], explored: &[usize], v: usize) -> bool {
        let n = self.adj.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut any = false;
        for auto in &self.automorphisms {
            if path.iter().any(|&p| auto[p] != p) {
                continue;
            }
            any = true;
            for (x, &y) in auto.iter().enumerate() {
                let (a, b) = (find(&mut parent, x), find(&mut parent, y));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        if !any {
            return false;
        }
        let root = find(&mut parent, v);
        explored.iter().any(|&e| find(&mut parent, e) == root)
    }
}

/// The non-singleton cell with the smallest color.
fn target_cell(colors: &[u32]) -> Option<u32> {
    let mut sizes: HashMap<u32, usize> = HashMap::new();
    for &c in colors {
        *sizes.entry(c).or_default() += 1;
    }
    sizes.into_iter().filter(|&(_, s)| s > 1).map(|(c, _)| c).min()
}

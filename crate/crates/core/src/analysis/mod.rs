//! Closed neighborhoods, closed-twin classes, root counting, maximal cyclic
//! subgroups and minimal cyclic covers of prime roots.

mod cover;

pub use cover::min_set_cover;

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::groups::{gcd, is_prime, ElementSet, FiniteGroup};
use crate::powergraph::{DiGraph, Graph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("partition covers {partition} vertices but the digraph has {graph}")]
pub struct PartitionMismatch {
    pub partition: usize,
    pub graph: usize,
}

pub fn closed_neighborhood_bits(g: &Graph, v: usize) -> FixedBitSet {
    let mut set = g.neighbors(v).clone();
    set.insert(v);
    set
}

/// `{v}` together with every neighbor of `v`, sorted.
pub fn closed_neighborhood(g: &Graph, v: usize) -> Vec<usize> {
    closed_neighborhood_bits(g, v).ones().collect()
}

/// Partition of the vertices into closed-twin classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivPartition {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl EquivPartition {
    /// Builds a partition from disjoint blocks covering `0..n`.
    pub fn from_blocks(n: usize, blocks: Vec<Vec<usize>>) -> Option<Self> {
        let mut block_of = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return None;
            }
            for &v in block {
                if v >= n || block_of[v] != usize::MAX {
                    return None;
                }
                block_of[v] = b;
            }
        }
        block_of.iter().all(|&b| b != usize::MAX).then_some(EquivPartition { blocks, block_of })
    }

    pub fn singletons(n: usize) -> Self {
        EquivPartition { blocks: (0..n).map(|v| vec![v]).collect(), block_of: (0..n).collect() }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_of(&self, v: usize) -> usize {
        self.block_of[v]
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.block_of.len()
    }
}

/// Groups vertices by closed neighborhood; blocks are ordered by their
/// smallest member and each block is sorted.
pub fn equivalence_classes(g: &Graph) -> EquivPartition {
    let n = g.vertex_count();
    let mut index: HashMap<FixedBitSet, usize> = HashMap::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut block_of = Vec::with_capacity(n);
    for v in 0..n {
        let key = closed_neighborhood_bits(g, v);
        let next = blocks.len();
        let b = *index.entry(key).or_insert(next);
        if b == next {
            blocks.push(Vec::new());
        }
        blocks[b].push(v);
        block_of.push(b);
    }
    EquivPartition { blocks, block_of }
}

/// Vertices are blocks; `B -> C` for `B != C` iff some arc leaves `B` into `C`.
pub fn quotient_digraph(d: &DiGraph, partition: &EquivPartition) -> Result<DiGraph, PartitionMismatch> {
    if partition.vertex_count() != d.vertex_count() {
        return Err(PartitionMismatch { partition: partition.vertex_count(), graph: d.vertex_count() });
    }
    let mut q = DiGraph::empty(partition.len());
    for (u, v) in d.arcs() {
        let (bu, bv) = (partition.block_of(u), partition.block_of(v));
        if bu != bv {
            q.add_arc(bu, bv);
        }
    }
    Ok(q)
}

/// Vertices adjacent to every other vertex.
pub fn dominating_vertices(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    (0..n).filter(|&v| g.degree(v) + 1 == n).collect()
}

/// `{x^n : n an integer other than -1, 0, 1}`.
///
/// The excluded set restricts exponents, not values. For an element of
/// finite order `o` every residue class mod `o` contains admissible
/// exponents, so the result is the whole of `<x>`.
pub fn o_set(group: &FiniteGroup, x: usize) -> ElementSet {
    let powers = group.powers(x);
    let o = powers.len() as i64;
    let mut hit = FixedBitSet::with_capacity(group.order());
    // exponents 2..=o+1 form a complete residue system mod o
    for n in 2..=o + 1 {
        hit.insert(powers[n.rem_euclid(o) as usize]);
    }
    hit.ones().collect()
}

/// `{x : x^n = u}`.
pub fn nth_roots(group: &FiniteGroup, u: usize, n: u64) -> ElementSet {
    (0..group.order())
        .filter(|&x| {
            let powers = group.powers(x);
            powers[(n % powers.len() as u64) as usize] == u
        })
        .collect()
}

/// Elements `x` with `x^q = u` for some prime `q`.
///
/// `x^q` only depends on `q mod o(x)`. A residue `r` contains a prime iff
/// `gcd(r, o) = 1` (Dirichlet) or `gcd(r, o)` is itself a prime congruent
/// to `r`; the latter means `r` is prime, or `r = 0` with `o` prime.
pub fn prime_roots(group: &FiniteGroup, u: usize) -> ElementSet {
    (0..group.order())
        .filter(|&x| {
            let powers = group.powers(x);
            let o = powers.len();
            powers.iter().enumerate().any(|(r, &val)| val == u && residue_holds_prime(r, o))
        })
        .collect()
}

fn residue_holds_prime(r: usize, o: usize) -> bool {
    let d = gcd(r, o);
    d == 1 || (is_prime(d) && d % o == r)
}

/// A cyclic subgroup together with its least-index generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicSubgroup {
    pub generator: usize,
    pub elements: ElementSet,
}

/// All cyclic subgroups not properly contained in another cyclic
/// subgroup, sorted by generator.
pub fn maximal_cyclic_subgroups(group: &FiniteGroup) -> Vec<CyclicSubgroup> {
    let n = group.order();
    let mut seen: HashMap<FixedBitSet, usize> = HashMap::new();
    let mut subgroups: Vec<(usize, FixedBitSet)> = Vec::new();
    for x in 0..n {
        let mut bits = FixedBitSet::with_capacity(n);
        for y in group.powers(x) {
            bits.insert(y);
        }
        if let std::collections::hash_map::Entry::Vacant(slot) = seen.entry(bits.clone()) {
            slot.insert(x);
            subgroups.push((x, bits));
        }
    }
    subgroups
        .iter()
        .filter(|(_, a)| !subgroups.iter().any(|(_, b)| b.count_ones(..) > a.count_ones(..) && a.is_subset(b)))
        .map(|(generator, bits)| CyclicSubgroup { generator: *generator, elements: bits.ones().collect() })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicCover {
    pub count: usize,
    pub cover: Vec<CyclicSubgroup>,
}

/// Minimum number of maximal cyclic subgroups whose union contains every
/// prime root of `u`, with an optimal family. Ties are broken towards the
/// lexicographically least list of generators.
pub fn min_cyclic_cover_of_prime_roots(group: &FiniteGroup, u: usize) -> CyclicCover {
    let roots = prime_roots(group, u);
    if roots.is_empty() {
        return CyclicCover { count: 0, cover: Vec::new() };
    }
    let n = group.order();
    let family = maximal_cyclic_subgroups(group);
    let sets: Vec<FixedBitSet> = family
        .iter()
        .map(|c| {
            let mut b = FixedBitSet::with_capacity(n);
            c.elements.iter().for_each(|&e| b.insert(e));
            b
        })
        .collect();
    let mut universe = FixedBitSet::with_capacity(n);
    roots.iter().for_each(|&r| universe.insert(r));
    let chosen = min_set_cover(&universe, &sets).expect("maximal cyclic subgroups cover the group");
    let cover: Vec<CyclicSubgroup> = chosen.into_iter().map(|i| family[i].clone()).collect();
    CyclicCover { count: cover.len(), cover }
}

fn phi_prime_power(p: usize, i: u32) -> usize {
    if i == 0 {
        1
    } else {
        p.pow(i) - p.pow(i - 1)
    }
}

/// Level structure of a closed-twin class in a `p`-group power graph: the
/// class is the union of the generator sets of a chain of cyclic
/// subgroups of orders `p^i` for `i` in an interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassProfile {
    pub prime: usize,
    /// `(i, phi(p^i))` for increasing `i`.
    pub levels: Vec<(u32, usize)>,
}

impl ClassProfile {
    /// Infers the levels of a class of `class_size` vertices whose strict
    /// down-set (vertices with a strictly larger closed neighborhood) has
    /// `below` vertices. The top of the chain has order
    /// `class_size + below = p^b`; `below` is then `0` (interval starts at
    /// 0) or `p^(a-1)` (interval starts at `a`).
    pub fn infer(prime: usize, class_size: usize, below: usize) -> Option<ClassProfile> {
        let top = class_size.checked_add(below)?;
        let b = exact_log(prime, top)?;
        let a = if below == 0 { 0 } else { exact_log(prime, below)? + 1 };
        if a > b || class_size == 0 {
            return None;
        }
        let levels = (a..=b).map(|i| (i, phi_prime_power(prime, i))).collect();
        Some(ClassProfile { prime, levels })
    }

    pub fn size(&self) -> usize {
        self.levels.iter().map(|&(_, s)| s).sum()
    }
}

/// `k` with `p^k = n`.
fn exact_log(p: usize, n: usize) -> Option<u32> {
    let mut k = 0;
    let mut m = n;
    if m == 0 {
        return None;
    }
    while m.is_multiple_of(p) {
        m /= p;
        k += 1;
    }
    (m == 1).then_some(k)
}

/// Size of the strict down-set of every block: vertices whose closed
/// neighborhood strictly contains the block's.
pub fn strict_down_sets(g: &Graph, partition: &EquivPartition) -> Vec<FixedBitSet> {
    let nbhds: Vec<FixedBitSet> = partition.blocks().iter().map(|b| closed_neighborhood_bits(g, b[0])).collect();
    let n = g.vertex_count();
    nbhds
        .iter()
        .enumerate()
        .map(|(i, mine)| {
            let mut below = FixedBitSet::with_capacity(n);
            for (j, other) in nbhds.iter().enumerate() {
                if i != j && mine.is_subset(other) {
                    partition.blocks()[j].iter().for_each(|&v| below.insert(v));
                }
            }
            below
        })
        .collect()
}

/// Class profiles for every block of a `p`-group power graph, or `None`
/// when some block does not fit the chain structure for `prime`.
pub fn class_profiles(g: &Graph, partition: &EquivPartition, prime: usize) -> Option<Vec<ClassProfile>> {
    strict_down_sets(g, partition)
        .iter()
        .zip(partition.blocks())
        .map(|(below, block)| ClassProfile::infer(prime, block.len(), below.count_ones(..)))
        .collect()
}

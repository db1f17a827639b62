//! Recovering arc directions from an unlabeled power graph of a finite
//! nilpotent group.
//!
//! Cases are tried in order, first match wins:
//!
//! * complete graph on `p^k` vertices: the directed power graph of `C_{p^k}`;
//! * graph isomorphic to the power graph of `C_n`: transport `D(C_n)`;
//! * `p`-group containment on `p^k` vertices: between closed-twin classes
//!   `x -> y` iff `N[x]` is a proper subset of `N[y]`; inside a class, levels
//!   of generator sets of a chain of cyclic subgroups, with arcs from each
//!   level to itself and every lower level;
//! * catalog fallback: match against the power graphs of all catalog groups
//!   of the same order and transport the matching group's digraph.

use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::analysis::{
    closed_neighborhood_bits, dominating_vertices, equivalence_classes, strict_down_sets, ClassProfile, EquivPartition,
};
use crate::catalog::{catalog_specs, CATALOG_BOUND};
use crate::groups::{cyclic, prime_power, CLI_MAX_ORDER};
use crate::isocheck::{are_isomorphic_with, digraph_isomorphism, CanonOptions, IsoError};
use crate::powergraph::{directed_power_graph, power_graph, DiGraph, Graph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReconstructError {
    #[error("input graph has no vertices")]
    Empty,
    #[error("graph has {vertices} vertices, above the configured maximum {max}")]
    TooLarge { vertices: usize, max: usize },
    #[error("not the power graph of a finite nilpotent group: {0}")]
    NotNilpotentPowerGraph(String),
    #[error(transparent)]
    Iso(#[from] IsoError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReconstructionCase {
    CompletePrimePower,
    CyclicMatch,
    PGroupContainment,
    CatalogFallback,
}

impl ReconstructionCase {
    pub fn name(&self) -> &'static str {
        match self {
            ReconstructionCase::CompletePrimePower => "complete_prime_power",
            ReconstructionCase::CyclicMatch => "cyclic_match",
            ReconstructionCase::PGroupContainment => "p_group_containment",
            ReconstructionCase::CatalogFallback => "catalog_fallback",
        }
    }
}

#[derive(Debug, Clone)]
pub struct ReconstructionReport {
    pub digraph: DiGraph,
    pub case_used: ReconstructionCase,
    /// Dominating vertices: the closed-twin class of the identity.
    pub identity_class: Vec<usize>,
    pub partition: EquivPartition,
    /// Level profiles keyed by block index (containment case only).
    pub class_profiles: BTreeMap<usize, ClassProfile>,
    pub notes: Vec<String>,
}

pub fn reconstruct_digraph(g: &Graph) -> Result<ReconstructionReport, ReconstructError> {
    reconstruct_digraph_bounded(g, CLI_MAX_ORDER)
}

pub fn reconstruct_digraph_bounded(g: &Graph, max_order: usize) -> Result<ReconstructionReport, ReconstructError> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(ReconstructError::Empty);
    }
    if n > max_order {
        return Err(ReconstructError::TooLarge { vertices: n, max: max_order });
    }
    let options = CanonOptions { bound: max_order, collapse_twins: true };
    let mut report = ReconstructionReport {
        digraph: DiGraph::empty(n),
        case_used: ReconstructionCase::CompletePrimePower,
        identity_class: dominating_vertices(g),
        partition: equivalence_classes(g),
        class_profiles: BTreeMap::new(),
        notes: Vec::new(),
    };

    if g.is_complete() {
        if n > 1 && prime_power(n).is_none() {
            return Err(ReconstructError::NotNilpotentPowerGraph(format!(
                "complete graph on {n} vertices, which is not a prime power"
            )));
        }
        report.digraph = directed_power_graph(&cyclic(n));
        report.notes.push(format!("complete graph on {n} vertices: cyclic group of order {n}"));
        return Ok(report);
    }

    let cyclic_graph = power_graph(&cyclic(n));
    if let Some(w) = are_isomorphic_with(&cyclic_graph, g, options)? {
        report.case_used = ReconstructionCase::CyclicMatch;
        report.digraph = directed_power_graph(&cyclic(n)).permute(&w);
        report.notes.push(format!("isomorphic to the power graph of C{n}"));
        return Ok(report);
    }
    report.notes.push(format!("not isomorphic to the power graph of C{n}"));

    if let Some((p, _)) = prime_power(n) {
        match containment_orientation(g, &report.partition, p) {
            Ok((digraph, profiles)) => {
                report.case_used = ReconstructionCase::PGroupContainment;
                report.digraph = digraph;
                report.class_profiles = profiles;
                report.notes.push(format!("{p}-group containment rule over {} classes", report.partition.len()));
                return Ok(report);
            }
            Err(why) => report.notes.push(format!("containment rule rejected: {why}")),
        }
    }

    if n > CATALOG_BOUND {
        return Err(ReconstructError::NotNilpotentPowerGraph(format!(
            "no case applies and order {n} is beyond the catalog bound {CATALOG_BOUND}"
        )));
    }
    for spec in catalog_specs(n).into_iter().filter(|s| s.order() == n) {
        let group = spec.realize();
        if let Some(w) = are_isomorphic_with(&power_graph(&group), g, options)? {
            report.case_used = ReconstructionCase::CatalogFallback;
            report.digraph = directed_power_graph(&group).permute(&w);
            report.notes.push(format!("matched the power graph of catalog group {spec}"));
            return Ok(report);
        }
    }
    Err(ReconstructError::NotNilpotentPowerGraph(format!("no catalog group of order {n} has this power graph")))
}

type Orientation = (DiGraph, BTreeMap<usize, ClassProfile>);

fn containment_orientation(g: &Graph, partition: &EquivPartition, p: usize) -> Result<Orientation, String> {
    let n = g.vertex_count();
    let nbhd: Vec<FixedBitSet> = (0..n).map(|v| closed_neighborhood_bits(g, v)).collect();
    for (u, v) in g.edges() {
        if partition.block_of(u) == partition.block_of(v) {
            continue;
        }
        let (a, b) = (nbhd[u].is_subset(&nbhd[v]), nbhd[v].is_subset(&nbhd[u]));
        if a == b {
            return Err(format!("adjacent vertices {u} and {v} have incomparable closed neighborhoods"));
        }
    }
    let below = strict_down_sets(g, partition);
    let mut level = vec![0u32; n];
    let mut profiles = BTreeMap::new();
    for (b, block) in partition.blocks().iter().enumerate() {
        let down = below[b].count_ones(..);
        let profile = ClassProfile::infer(p, block.len(), down).ok_or_else(|| {
            format!("class of {} vertices over a down-set of {down} does not fit a {p}-power chain", block.len())
        })?;
        let mut members = block.iter();
        for &(i, size) in &profile.levels {
            for &v in members.by_ref().take(size) {
                level[v] = i;
            }
        }
        profiles.insert(b, profile);
    }
    let mut d = DiGraph::empty(n);
    for (u, v) in g.edges() {
        if partition.block_of(u) == partition.block_of(v) {
            if level[u] >= level[v] {
                d.add_arc(u, v);
            }
            if level[v] >= level[u] {
                d.add_arc(v, u);
            }
        } else if nbhd[u].is_subset(&nbhd[v]) {
            d.add_arc(u, v);
        } else {
            d.add_arc(v, u);
        }
    }
    if d.underlying() != *g {
        return Err("oriented graph does not reproduce the input".into());
    }
    Ok((d, profiles))
}

/// Whether the reconstructed digraph is isomorphic to the true one.
pub fn verify_reconstruction(truth: &DiGraph, reconstructed: &DiGraph) -> Result<bool, IsoError> {
    if truth.vertex_count() != reconstructed.vertex_count() {
        return Ok(false);
    }
    let options = CanonOptions { bound: usize::MAX, collapse_twins: true };
    Ok(digraph_isomorphism(truth, reconstructed, options)?.is_some())
}

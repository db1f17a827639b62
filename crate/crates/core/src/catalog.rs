//! The nilpotent catalog and the finite isomorphism sweeps run over it.
//!
//! The catalog holds one representative per isomorphism class of direct
//! products of indecomposable atoms: cyclic groups of prime-power order,
//! dihedral and generalized quaternion 2-groups of order at least 8, and
//! Heisenberg groups over odd primes. By Krull-Schmidt distinct normal forms
//! are distinct groups.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::groups::{is_prime, Atom, FiniteGroup, GroupSpec};
use crate::isocheck::{canonical_form_with, digraph_canonical_form_with, CanonOptions, CanonicalForm, IsoError};
use crate::powergraph::{directed_power_graph, power_graph, DiGraph, Graph};

/// Largest `max_order` accepted by [`build_catalog`].
pub const CATALOG_BOUND: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("catalog order {requested} exceeds the bound {bound}")]
    BoundExceeded { requested: usize, bound: usize },
    #[error(transparent)]
    Iso(#[from] IsoError),
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub spec: GroupSpec,
    pub group: FiniteGroup,
    pub power_graph: Graph,
    pub directed: DiGraph,
    pub canonical: CanonicalForm,
    pub directed_canonical: CanonicalForm,
}

impl CatalogEntry {
    pub fn new(spec: GroupSpec) -> Result<CatalogEntry, IsoError> {
        let group = spec.realize();
        let power_graph = power_graph(&group);
        let directed = directed_power_graph(&group);
        let options = CanonOptions { bound: usize::MAX, collapse_twins: true };
        let canonical = canonical_form_with(&power_graph, options)?;
        let directed_canonical = digraph_canonical_form_with(&directed, options)?;
        Ok(CatalogEntry { spec, group, power_graph, directed, canonical, directed_canonical })
    }
}

fn indecomposable_atoms(max_order: usize) -> Vec<Atom> {
    let mut atoms = Vec::new();
    for p in (2..=max_order).filter(|&p| is_prime(p)) {
        let mut q = p;
        while q <= max_order {
            atoms.push(Atom::Cyclic(q));
            q = match q.checked_mul(p) {
                Some(next) => next,
                None => break,
            };
        }
    }
    let mut m = 8;
    while m <= max_order {
        atoms.push(Atom::Dihedral(m));
        atoms.push(Atom::Quaternion(m));
        m *= 2;
    }
    for p in (3..=max_order).filter(|&p| is_prime(p)) {
        match p.checked_pow(3) {
            Some(o) if o <= max_order => atoms.push(Atom::Heisenberg(p)),
            _ => break,
        }
    }
    atoms
}

/// Normal forms of every catalog group of order at most `max_order`,
/// sorted by order and then by name.
pub fn catalog_specs(max_order: usize) -> Vec<GroupSpec> {
    let atoms = indecomposable_atoms(max_order);
    let mut out = vec![GroupSpec::new(vec![Atom::Cyclic(1)]).expect("trivial spec")];
    fn extend(atoms: &[Atom], start: usize, order: usize, max: usize, cur: &mut Vec<Atom>, out: &mut Vec<GroupSpec>) {
        for i in start..atoms.len() {
            let next = order * atoms[i].order();
            if next > max {
                continue;
            }
            cur.push(atoms[i]);
            out.push(GroupSpec::new(cur.clone()).expect("bounded by construction").normal_form());
            extend(atoms, i, next, max, cur, out);
            cur.pop();
        }
    }
    if max_order >= 1 {
        extend(&atoms, 0, 1, max_order, &mut Vec::new(), &mut out);
    }
    out.sort_by(spec_order);
    out.dedup();
    out
}

fn spec_order(a: &GroupSpec, b: &GroupSpec) -> Ordering {
    a.order().cmp(&b.order()).then_with(|| a.to_string().cmp(&b.to_string()))
}

pub fn build_catalog(max_order: usize) -> Result<Vec<CatalogEntry>, CatalogError> {
    if max_order > CATALOG_BOUND {
        return Err(CatalogError::BoundExceeded { requested: max_order, bound: CATALOG_BOUND });
    }
    Ok(catalog_specs(max_order).into_par_iter().map(CatalogEntry::new).collect::<Result<Vec<_>, _>>()?)
}

/// Evidence that two groups are not isomorphic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NonIsomorphism {
    /// The sorted element-order multisets differ.
    OrderMultiset { left: Vec<usize>, right: Vec<usize> },
    /// Exactly one of the groups is abelian; `witness` is a non-commuting
    /// pair in the other one.
    Commutativity { abelian_left: bool, witness: (usize, usize) },
}

impl NonIsomorphism {
    /// Finds a certificate, or `None` if neither invariant separates the groups.
    pub fn find(left: &FiniteGroup, right: &FiniteGroup) -> Option<NonIsomorphism> {
        let (lo, ro) = (left.order_multiset(), right.order_multiset());
        if lo != ro {
            return Some(NonIsomorphism::OrderMultiset { left: lo, right: ro });
        }
        let (la, ra) = (left.is_abelian(), right.is_abelian());
        if la != ra {
            let nonabelian = if la { right } else { left };
            let witness = non_commuting_pair(nonabelian)?;
            return Some(NonIsomorphism::Commutativity { abelian_left: la, witness });
        }
        None
    }

    /// Re-checks the certificate against the two groups.
    pub fn check(&self, left: &FiniteGroup, right: &FiniteGroup) -> bool {
        match self {
            NonIsomorphism::OrderMultiset { left: lo, right: ro } => {
                lo != ro && *lo == left.order_multiset() && *ro == right.order_multiset()
            }
            NonIsomorphism::Commutativity { abelian_left, witness: (a, b) } => {
                let (abelian, other) = if *abelian_left { (left, right) } else { (right, left) };
                abelian.is_abelian() && !other.commutes(*a, *b)
            }
        }
    }

    pub fn describe(&self) -> String {
        match self {
            NonIsomorphism::OrderMultiset { .. } => "element orders differ".to_string(),
            NonIsomorphism::Commutativity { abelian_left, witness: (a, b) } => {
                let side = if *abelian_left { "right" } else { "left" };
                format!("{side} group is non-abelian ({a}*{b} != {b}*{a})")
            }
        }
    }
}

fn non_commuting_pair(g: &FiniteGroup) -> Option<(usize, usize)> {
    let n = g.order();
    (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).find(|&(a, b)| !g.commutes(a, b))
}

/// A pair of non-isomorphic groups with isomorphic power graphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Twin {
    pub left: GroupSpec,
    pub right: GroupSpec,
    /// `None` only if the cheap invariants fail to separate the groups.
    pub certificate: Option<NonIsomorphism>,
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub pairs_tested: usize,
    pub pg_isomorphic_pairs: Vec<(GroupSpec, GroupSpec)>,
    /// Pairs with isomorphic power graphs but non-isomorphic directed power graphs.
    pub violations: Vec<(GroupSpec, GroupSpec)>,
    pub twins: Vec<Twin>,
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("left\tright\tpower_graphs\tdirected\tgroups\n");
        for (a, b) in &self.pg_isomorphic_pairs {
            let violated = self.violations.iter().any(|(x, y)| x == a && y == b);
            let twin = self.twins.iter().find(|t| &t.left == a && &t.right == b);
            let groups = match twin {
                Some(Twin { certificate: Some(c), .. }) => format!("non-isomorphic: {}", c.describe()),
                Some(Twin { certificate: None, .. }) => "non-isomorphic (uncertified)".to_string(),
                None => "isomorphic".to_string(),
            };
            out.push_str(&format!(
                "{a}\t{b}\tisomorphic\t{}\t{groups}\n",
                if violated { "NOT isomorphic" } else { "isomorphic" }
            ));
        }
        out
    }

    pub fn summary(&self) -> String {
        format!(
            "pairs tested: {}\npower-graph isomorphic pairs: {}\nviolations: {}\ntwins: {}\nelapsed: {:.2?}\n",
            self.pairs_tested,
            self.pg_isomorphic_pairs.len(),
            self.violations.len(),
            self.twins.len(),
            self.elapsed
        )
    }
}

/// Pairs of catalog indices whose power graphs are isomorphic, sorted.
fn pg_isomorphic_index_pairs(catalog: &[CatalogEntry]) -> Vec<(usize, usize)> {
    let mut buckets: BTreeMap<&[u8], Vec<usize>> = BTreeMap::new();
    for (i, e) in catalog.iter().enumerate() {
        buckets.entry(e.canonical.bytes()).or_default().push(i);
    }
    let mut pairs: Vec<(usize, usize)> = buckets
        .values()
        .flat_map(|members| {
            members.iter().enumerate().flat_map(move |(k, &i)| members[k + 1..].iter().map(move |&j| (i, j)))
        })
        .collect();
    pairs.sort_unstable();
    pairs
}

fn twin_of(a: &CatalogEntry, b: &CatalogEntry) -> Option<Twin> {
    (a.spec != b.spec).then(|| Twin {
        left: a.spec.clone(),
        right: b.spec.clone(),
        certificate: NonIsomorphism::find(&a.group, &b.group),
    })
}

/// Checks, for every unordered catalog pair with isomorphic power graphs,
/// that the directed power graphs are isomorphic too.
pub fn run_theorem_suite(catalog: &[CatalogEntry]) -> VerificationReport {
    let start = Instant::now();
    let n = catalog.len();
    let pairs = pg_isomorphic_index_pairs(catalog);
    let checked: Vec<(usize, usize, bool, Option<Twin>)> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (a, b) = (&catalog[i], &catalog[j]);
            let directed_iso = a.directed_canonical.bytes() == b.directed_canonical.bytes();
            (i, j, directed_iso, twin_of(a, b))
        })
        .collect();
    let mut report = VerificationReport {
        pairs_tested: n * n.saturating_sub(1) / 2,
        pg_isomorphic_pairs: Vec::new(),
        violations: Vec::new(),
        twins: Vec::new(),
        elapsed: Duration::ZERO,
    };
    for (i, j, directed_iso, twin) in checked {
        let pair = (catalog[i].spec.clone(), catalog[j].spec.clone());
        if !directed_iso {
            report.violations.push(pair.clone());
        }
        report.pg_isomorphic_pairs.push(pair);
        report.twins.extend(twin);
    }
    report.elapsed = start.elapsed();
    report
}

/// Pairs of distinct catalog groups whose power graphs are isomorphic.
pub fn find_powergraph_twins(catalog: &[CatalogEntry]) -> Vec<Twin> {
    pg_isomorphic_index_pairs(catalog).into_iter().filter_map(|(i, j)| twin_of(&catalog[i], &catalog[j])).collect()
}

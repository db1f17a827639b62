//! Brute-force oracles and corpora shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use nilpower::catalog::catalog_specs;
use nilpower::{DiGraph, FiniteGroup, Graph, GroupSpec};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_perm(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

pub fn group(spec: &str) -> FiniteGroup {
    GroupSpec::parse(spec).unwrap().realize()
}

pub fn primes_up_to(n: usize) -> Vec<usize> {
    (2..=n).filter(|&q| (2..q).take_while(|d| d * d <= q).all(|d| q % d != 0)).collect()
}

/// `x^k` by repeated multiplication, no shortcuts.
pub fn power_slow(g: &FiniteGroup, x: usize, k: usize) -> usize {
    (0..k).fold(g.identity(), |acc, _| g.mul(acc, x))
}

pub fn order_slow(g: &FiniteGroup, x: usize) -> usize {
    (1..=g.order()).find(|&k| power_slow(g, x, k) == g.identity()).unwrap()
}

/// `y` is a power of `x` other than `x` itself.
pub fn is_nontrivial_power(g: &FiniteGroup, x: usize, y: usize) -> bool {
    x != y && (0..g.order()).any(|k| power_slow(g, x, k) == y)
}

pub fn cyclic_subgroup_slow(g: &FiniteGroup, x: usize) -> Vec<usize> {
    let mut s: Vec<usize> = (0..g.order()).map(|k| power_slow(g, x, k)).collect();
    s.sort_unstable();
    s.dedup();
    s
}

pub fn closed_nbhd_slow(g: &Graph, v: usize) -> Vec<usize> {
    (0..g.vertex_count()).filter(|&u| u == v || g.has_edge(u, v)).collect()
}

fn graph_maps(a: &Graph, b: &Graph, perm: &[usize]) -> bool {
    a.edges().iter().all(|&(u, v)| b.has_edge(perm[u], perm[v]))
}

fn digraph_maps(a: &DiGraph, b: &DiGraph, perm: &[usize]) -> bool {
    a.arcs().iter().all(|&(u, v)| b.has_arc(perm[u], perm[v]))
}

/// Exhaustive search over all bijections, with edge-count pre-check only.
fn search(n: usize, ok: &dyn Fn(&[usize]) -> bool) -> Option<Vec<usize>> {
    fn rec(perm: &mut Vec<usize>, used: &mut Vec<bool>, n: usize, ok: &dyn Fn(&[usize]) -> bool) -> bool {
        if perm.len() == n {
            return ok(perm);
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                perm.push(v);
                if rec(perm, used, n, ok) {
                    return true;
                }
                perm.pop();
                used[v] = false;
            }
        }
        false
    }
    let mut perm = Vec::with_capacity(n);
    rec(&mut perm, &mut vec![false; n], n, ok).then_some(perm)
}

pub fn brute_graph_iso(a: &Graph, b: &Graph) -> bool {
    a.vertex_count() == b.vertex_count()
        && a.edge_count() == b.edge_count()
        && search(a.vertex_count(), &|p| graph_maps(a, b, p)).is_some()
}

pub fn brute_digraph_iso(a: &DiGraph, b: &DiGraph) -> bool {
    a.vertex_count() == b.vertex_count()
        && a.arc_count() == b.arc_count()
        && search(a.vertex_count(), &|p| digraph_maps(a, b, p)).is_some()
}

pub fn random_graph(n: usize, density: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

pub fn random_digraph(n: usize, density: f64, rng: &mut ChaCha8Rng) -> DiGraph {
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(density) {
                arcs.push((u, v));
            }
        }
    }
    DiGraph::from_arcs(n, &arcs).unwrap()
}

fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

fn cycle(n: usize) -> Graph {
    let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    edges.push((n - 1, 0));
    Graph::from_edges(n, &edges).unwrap()
}

fn complete_bipartite(a: usize, b: usize) -> Graph {
    let edges: Vec<_> = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))).collect();
    Graph::from_edges(a + b, &edges).unwrap()
}

/// Catalog power graphs on at most 7 vertices.
pub fn small_catalog_graphs() -> Vec<(String, Graph, DiGraph)> {
    catalog_specs(7)
        .into_iter()
        .map(|s| {
            let g = s.realize();
            (s.to_string(), nilpower::power_graph(&g), nilpower::directed_power_graph(&g))
        })
        .collect()
}

/// Undirected corpus on at most 7 vertices: catalog power graphs, a few
/// structured families, random graphs, and a relabeled copy of each of
/// the above so that isomorphic pairs are well represented.
pub fn small_graph_corpus(seed: u64) -> Vec<Graph> {
    let mut r = rng(seed);
    let mut base: Vec<Graph> = small_catalog_graphs().into_iter().map(|(_, g, _)| g).collect();
    for n in 0..=7 {
        base.push(Graph::empty(n));
        base.push(Graph::complete(n));
    }
    for n in 2..=7 {
        base.push(path(n));
    }
    for n in 3..=7 {
        base.push(cycle(n));
    }
    base.extend([
        complete_bipartite(1, 6),
        complete_bipartite(2, 5),
        complete_bipartite(3, 3),
        complete_bipartite(3, 4),
    ]);
    // two non-isomorphic 6-vertex 2-regular graphs
    base.push(Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap());
    for n in 1..=7 {
        for &d in &[0.3, 0.5, 0.7] {
            for _ in 0..3 {
                base.push(random_graph(n, d, &mut r));
            }
        }
    }
    let copies: Vec<Graph> = base.iter().map(|g| g.permute(&random_perm(g.vertex_count(), &mut r))).collect();
    base.extend(copies);
    base
}

pub fn small_digraph_corpus(seed: u64) -> Vec<DiGraph> {
    let mut r = rng(seed);
    let mut base: Vec<DiGraph> = small_catalog_graphs().into_iter().map(|(_, _, d)| d).collect();
    let reversed: Vec<DiGraph> = base.iter().map(|d| d.reverse()).collect();
    base.extend(reversed);
    for n in 1..=6 {
        for &d in &[0.2, 0.4, 0.6] {
            for _ in 0..3 {
                base.push(random_digraph(n, d, &mut r));
            }
        }
    }
    let copies: Vec<DiGraph> = base.iter().map(|d| d.permute(&random_perm(d.vertex_count(), &mut r))).collect();
    base.extend(copies);
    base
}

/// Prime exponent of a catalog p-group, `None` for other groups.
pub fn p_group_prime(spec: &GroupSpec) -> Option<usize> {
    if spec.order() == 1 || !spec.is_p_group() {
        return None;
    }
    nilpower::groups::prime_power(spec.order()).map(|(p, _)| p)
}

/// `x^q` for every prime `q <= bound`, walking the exponents one
/// multiplication at a time.
pub fn prime_power_images(g: &FiniteGroup, bound: usize) -> Vec<BTreeSet<usize>> {
    let primes = primes_up_to(bound);
    (0..g.order())
        .map(|x| {
            let mut images = BTreeSet::new();
            let (mut acc, mut k) = (g.identity(), 0);
            for &q in &primes {
                while k < q {
                    acc = g.mul(acc, x);
                    k += 1;
                }
                images.insert(acc);
            }
            images
        })
        .collect()
}

/// A prime bound that reaches every coprime residue class mod `o` for
/// every `o <= 128` dividing the order. `4|G|` is not enough: the least
/// prime congruent to 1 mod 7 is 29.
pub fn prime_bound(order: usize) -> usize {
    (4 * order).max(order * order)
}

/// Exhaustive minimum cover: subsets by increasing size, each size in
/// lexicographic order, so the first hit is the lexicographically least.
pub fn cover_brute(universe: &[usize], family: &[Vec<usize>]) -> Option<Vec<usize>> {
    fn combos(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == k {
            return f(cur);
        }
        for i in start..n {
            cur.push(i);
            if combos(n, k, i + 1, cur, f) {
                return true;
            }
            cur.pop();
        }
        false
    }
    for k in 0..=family.len() {
        let mut found = None;
        combos(family.len(), k, 0, &mut Vec::new(), &mut |c| {
            let ok = universe.iter().all(|e| c.iter().any(|&i| family[i].contains(e)));
            if ok {
                found = Some(c.to_vec());
            }
            ok
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

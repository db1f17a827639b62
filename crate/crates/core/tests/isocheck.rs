mod common;

use common::{brute_digraph_iso, brute_graph_iso, random_perm, rng, small_digraph_corpus, small_graph_corpus};
use nilpower::catalog::catalog_specs;
use nilpower::isocheck::{
    are_isomorphic_with, canonical_form, canonical_form_with, digraph_canonical_form, digraph_canonical_form_with,
    digraph_isomorphism, CanonOptions,
};
use nilpower::{directed_power_graph, power_graph, DiGraph, Graph};

const COLLAPSED: CanonOptions = CanonOptions { bound: 512, collapse_twins: true };
const PLAIN: CanonOptions = CanonOptions { bound: 512, collapse_twins: false };

/// Kind byte, little-endian vertex count, then the adjacency matrix of the
/// relabeled graph packed MSB-first row by row.
fn expected_bytes(kind: u8, n: usize, has: impl Fn(usize, usize) -> bool, labeling: &[usize]) -> Vec<u8> {
    let mut inv = vec![0; n];
    for (v, &p) in labeling.iter().enumerate() {
        inv[p] = v;
    }
    let bits: Vec<bool> = (0..n * n).map(|k| has(inv[k / n], inv[k % n])).collect();
    let mut out = vec![kind];
    out.extend_from_slice(&(n as u32).to_le_bytes());
    for chunk in bits.chunks(8) {
        let mut b = 0u8;
        for (i, &bit) in chunk.iter().enumerate() {
            b |= (bit as u8) << (7 - i);
        }
        out.push(b);
    }
    out
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&v| v < p.len() && !std::mem::replace(&mut seen[v], true))
}

#[test]
fn graph_verdicts_match_permutation_search() {
    let corpus = small_graph_corpus(11);
    let mut pairs = 0;
    let mut positive = 0;
    for (i, a) in corpus.iter().enumerate() {
        for b in &corpus[i..] {
            if a.vertex_count() != b.vertex_count() {
                continue;
            }
            let truth = brute_graph_iso(a, b);
            for options in [COLLAPSED, PLAIN] {
                let w = are_isomorphic_with(a, b, options).unwrap();
                assert_eq!(w.is_some(), truth, "{a:?} vs {b:?} ({options:?})");
                if let Some(w) = w {
                    assert!(is_permutation(&w));
                    assert_eq!(&a.permute(&w), b);
                }
                let back = are_isomorphic_with(b, a, options).unwrap();
                assert_eq!(back.is_some(), truth);
            }
            pairs += 1;
            positive += truth as usize;
        }
    }
    assert!(pairs > 1000 && positive > 100, "{pairs} pairs, {positive} isomorphic");
}

#[test]
fn digraph_verdicts_match_permutation_search() {
    let corpus = small_digraph_corpus(12);
    for (i, a) in corpus.iter().enumerate() {
        for b in &corpus[i..] {
            if a.vertex_count() != b.vertex_count() {
                continue;
            }
            let truth = brute_digraph_iso(a, b);
            for options in [COLLAPSED, PLAIN] {
                let w = digraph_isomorphism(a, b, options).unwrap();
                assert_eq!(w.is_some(), truth, "{a:?} vs {b:?} ({options:?})");
                if let Some(w) = w {
                    assert_eq!(&a.permute(&w), b);
                }
            }
        }
    }
}

#[test]
fn collapsing_does_not_change_verdicts_on_power_graphs() {
    let specs = catalog_specs(32);
    let graphs: Vec<Graph> = specs.iter().map(|s| power_graph(&s.realize())).collect();
    for (i, a) in graphs.iter().enumerate() {
        for b in &graphs[i..] {
            if a.vertex_count() != b.vertex_count() {
                continue;
            }
            let fast = are_isomorphic_with(a, b, COLLAPSED).unwrap().is_some();
            let slow = are_isomorphic_with(a, b, PLAIN).unwrap().is_some();
            assert_eq!(fast, slow);
        }
    }
}

#[test]
fn labeling_reproduces_bytes() {
    for g in small_graph_corpus(13) {
        for options in [COLLAPSED, PLAIN] {
            let c = canonical_form_with(&g, options).unwrap();
            assert!(is_permutation(c.labeling()));
            let want = expected_bytes(b'G', g.vertex_count(), |u, v| g.has_edge(u, v), c.labeling());
            assert_eq!(c.bytes(), &want[..]);
        }
    }
    for d in small_digraph_corpus(14) {
        let c = digraph_canonical_form(&d).unwrap();
        let want = expected_bytes(b'D', d.vertex_count(), |u, v| d.has_arc(u, v), c.labeling());
        assert_eq!(c.bytes(), &want[..]);
    }
}

#[test]
fn canonical_bytes_survive_relabeling() {
    let mut r = rng(15);
    let mut graphs: Vec<Graph> = small_graph_corpus(16);
    graphs.extend(catalog_specs(64).iter().map(|s| power_graph(&s.realize())));
    for g in &graphs {
        let base = canonical_form(g).unwrap();
        for _ in 0..100 {
            let h = g.permute(&random_perm(g.vertex_count(), &mut r));
            assert_eq!(canonical_form(&h).unwrap().bytes(), base.bytes());
        }
    }
    let digraphs: Vec<DiGraph> = catalog_specs(32).iter().map(|s| directed_power_graph(&s.realize())).collect();
    for d in &digraphs {
        let base = digraph_canonical_form(d).unwrap();
        for _ in 0..100 {
            let h = d.permute(&random_perm(d.vertex_count(), &mut r));
            assert_eq!(digraph_canonical_form(&h).unwrap().bytes(), base.bytes());
        }
    }
}

#[test]
fn graph_and_digraph_bytes_never_collide() {
    let g = Graph::complete(3);
    let d = DiGraph::symmetric(&g);
    assert_ne!(canonical_form(&g).unwrap().bytes(), digraph_canonical_form(&d).unwrap().bytes());
}

#[test]
fn uncollapsed_route_agrees_on_larger_power_graphs() {
    let mut r = rng(17);
    for spec in catalog_specs(16) {
        let g = power_graph(&spec.realize());
        let h = g.permute(&random_perm(g.vertex_count(), &mut r));
        assert!(are_isomorphic_with(&g, &h, PLAIN).unwrap().is_some(), "{spec}");
        let d = directed_power_graph(&spec.realize());
        let e = d.permute(&random_perm(d.vertex_count(), &mut r));
        let plain = digraph_canonical_form_with(&d, PLAIN).unwrap();
        assert_eq!(plain.bytes(), digraph_canonical_form_with(&e, PLAIN).unwrap().bytes(), "{spec}");
    }
}

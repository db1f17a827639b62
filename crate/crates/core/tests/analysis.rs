mod common;

use std::collections::BTreeSet;

use common::{
    closed_nbhd_slow, cover_brute, cyclic_subgroup_slow, group, p_group_prime, power_slow, prime_bound,
    prime_power_images, primes_up_to,
};
use fixedbitset::FixedBitSet;
use nilpower::analysis::{
    class_profiles, equivalence_classes, maximal_cyclic_subgroups, min_cyclic_cover_of_prime_roots, min_set_cover,
    nth_roots, o_set, prime_roots, quotient_digraph,
};
use nilpower::catalog::catalog_specs;
use nilpower::{power_graph, DiGraph, FiniteGroup};
use proptest::prelude::*;

fn nth_roots_brute(g: &FiniteGroup, u: usize, n: usize) -> Vec<usize> {
    (0..g.order()).filter(|&x| power_slow(g, x, n) == u).collect()
}

fn bits(n: usize, items: &[usize]) -> FixedBitSet {
    let mut b = FixedBitSet::with_capacity(n);
    items.iter().for_each(|&i| b.insert(i));
    b
}

#[test]
fn spec_examples() {
    let c6 = power_graph(&group("C6"));
    let blocks = equivalence_classes(&c6);
    assert_eq!(blocks.blocks(), &[vec![0, 1, 5], vec![2, 4], vec![3]]);
    let q8 = equivalence_classes(&power_graph(&group("Q8")));
    assert_eq!(q8.len(), 4);
    assert!(q8.blocks().iter().all(|b| b.len() == 2));

    let c4 = nilpower::directed_power_graph(&group("C4"));
    let one = equivalence_classes(&c4.underlying());
    assert_eq!(quotient_digraph(&c4, &one).unwrap(), DiGraph::empty(1));

    // D(C6) on its classes {0,1,5}, {2,4}, {3}: the generator class reaches
    // both others, which each reach the generator class only through the identity
    let d6 = nilpower::directed_power_graph(&group("C6"));
    assert_eq!(quotient_digraph(&d6, &blocks).unwrap().arcs(), vec![(0, 1), (0, 2), (1, 0), (2, 0)]);

    let c12 = group("C12");
    assert_eq!(nth_roots(&c12, 4, 2), vec![2, 8]);
    let klein = group("C2xC2");
    assert_eq!(nth_roots(&klein, 0, 2), vec![0, 1, 2, 3]);

    let c4g = group("C4");
    assert_eq!(prime_roots(&c4g, 2), vec![1, 2, 3]);
    assert_eq!(prime_roots(&c4g, 0), vec![0, 2]);

    assert_eq!(maximal_cyclic_subgroups(&klein).len(), 3);
    assert_eq!(maximal_cyclic_subgroups(&c12).len(), 1);
    let cover = min_cyclic_cover_of_prime_roots(&c4g, 0);
    assert_eq!(cover.count, 1);
    assert_eq!(cover.cover[0].elements, vec![0, 1, 2, 3]);
    assert_eq!(min_cyclic_cover_of_prime_roots(&klein, 0).count, 3);
    for u in 0..12 {
        assert_eq!(min_cyclic_cover_of_prime_roots(&c12, u).count, 1);
    }
}

#[test]
fn o_set_is_the_cyclic_subgroup() {
    // exponents outside {-1, 0, 1}, two full periods on each side
    for spec in catalog_specs(32) {
        let g = spec.realize();
        for x in 0..g.order() {
            let o = g.element_order(x) as i64;
            let mut hit = BTreeSet::new();
            for n in (-2 * o - 2..=2 * o + 2).filter(|n| !(-1..=1).contains(n)) {
                hit.insert(g.pow(x, n));
            }
            assert_eq!(o_set(&g, x), hit.into_iter().collect::<Vec<_>>(), "{spec} x={x}");
        }
    }
    let c5 = group("C5");
    assert_eq!(o_set(&c5, 1), vec![0, 1, 2, 3, 4]);
    assert_eq!(o_set(&group("C2"), 1), vec![0, 1]);
}

#[test]
fn partition_invariants() {
    for spec in catalog_specs(64) {
        let g = power_graph(&spec.realize());
        let part = equivalence_classes(&g);
        let n = g.vertex_count();
        let mut seen = vec![false; n];
        for (b, block) in part.blocks().iter().enumerate() {
            let first = closed_nbhd_slow(&g, block[0]);
            for &v in block {
                assert!(!seen[v]);
                seen[v] = true;
                assert_eq!(part.block_of(v), b);
                assert_eq!(closed_nbhd_slow(&g, v), first, "{spec}");
            }
        }
        assert!(seen.iter().all(|&s| s));
        for a in 0..part.len() {
            for b in a + 1..part.len() {
                assert_ne!(closed_nbhd_slow(&g, part.blocks()[a][0]), closed_nbhd_slow(&g, part.blocks()[b][0]));
            }
        }
        // collapsing once leaves nothing further to collapse
        let q = quotient_digraph(&DiGraph::symmetric(&g), &part).unwrap().underlying();
        assert_eq!(equivalence_classes(&q).len(), part.len(), "{spec}");
    }
}

/// In a p-group each closed-twin class is the union of the generator sets
/// of a chain of cyclic subgroups whose orders are consecutive powers of p,
/// and the profile inferred from the graph alone names that chain.
#[test]
fn class_structure_matches_subgroup_chains() {
    for spec in catalog_specs(64) {
        let Some(p) = p_group_prime(&spec) else { continue };
        let g = spec.realize();
        let pg = power_graph(&g);
        let part = equivalence_classes(&pg);
        let profiles = class_profiles(&pg, &part, p).unwrap_or_else(|| panic!("{spec}: no profile"));
        for (block, profile) in part.blocks().iter().zip(&profiles) {
            let mut chain: Vec<Vec<usize>> = block.iter().map(|&y| cyclic_subgroup_slow(&g, y)).collect();
            chain.sort();
            chain.dedup();
            chain.sort_by_key(|c| c.len());
            for w in chain.windows(2) {
                assert!(w[0].iter().all(|e| w[1].binary_search(e).is_ok()), "{spec}: not a chain");
                assert_eq!(w[1].len(), w[0].len() * p, "{spec}: exponent gap");
            }
            // every generator of every subgroup in the chain lies in the block
            let gens: usize =
                chain.iter().map(|c| c.iter().filter(|&&y| cyclic_subgroup_slow(&g, y).len() == c.len()).count()).sum();
            assert_eq!(gens, block.len(), "{spec}");
            let levels: Vec<usize> = chain.iter().map(|c| c.len()).collect();
            let inferred: Vec<usize> = profile.levels.iter().map(|&(i, _)| p.pow(i)).collect();
            assert_eq!(inferred, levels, "{spec}: profile");
            assert_eq!(profile.size(), block.len());
        }
        // closed neighborhoods are unions of whole generator sets
        for x in 0..g.order() {
            let nb = closed_nbhd_slow(&pg, x);
            for &y in &nb {
                let hy = cyclic_subgroup_slow(&g, y);
                for &z in &hy {
                    if cyclic_subgroup_slow(&g, z) == hy {
                        assert!(nb.contains(&z), "{spec}: N[{x}] splits gen<{y}>");
                    }
                }
            }
        }
    }
}

#[test]
fn prime_roots_match_brute_force() {
    for spec in catalog_specs(64) {
        let g = spec.realize();
        let images = prime_power_images(&g, prime_bound(g.order()));
        for u in 0..g.order() {
            let fast = prime_roots(&g, u);
            let brute: Vec<usize> = (0..g.order()).filter(|&x| images[x].contains(&u)).collect();
            assert_eq!(fast, brute, "{spec} u={u}");
            // u^q = u for a prime q = 1 mod o(u), so u is always its own prime root
            assert!(fast.contains(&u));
        }
    }
}

#[test]
fn four_times_order_is_too_small_a_prime_bound() {
    let c7 = group("C7");
    let images = prime_power_images(&c7, 28);
    assert!(!images[1].contains(&1));
    assert!(prime_roots(&c7, 1).contains(&1));
    assert!(prime_power_images(&c7, prime_bound(7))[1].contains(&1));
}

#[test]
fn root_counts() {
    for spec in catalog_specs(48) {
        let g = spec.realize();
        for n in 0..=(2 * g.order()) {
            let at_identity = nth_roots(&g, g.identity(), n as u64).len();
            let mut total = 0;
            for u in 0..g.order() {
                let r = nth_roots(&g, u, n as u64);
                assert_eq!(r, nth_roots_brute(&g, u, n), "{spec} u={u} n={n}");
                if g.is_abelian() {
                    assert!(r.is_empty() || r.len() == at_identity, "{spec} u={u} n={n}");
                }
                total += r.len();
            }
            assert_eq!(total, g.order());
        }
    }
}

#[test]
fn power_maps_coprime_to_p_are_bijections() {
    for spec in catalog_specs(128).into_iter().filter(|s| s.is_cyclic_p_group() && s.order() > 1) {
        let g = spec.realize();
        let p = p_group_prime(&spec).unwrap();
        for q in primes_up_to(13).into_iter().filter(|&q| q != p) {
            for u in 0..g.order() {
                assert_eq!(nth_roots(&g, u, q as u64).len(), 1, "{spec} q={q}");
            }
        }
        // while the p-th power map is not injective
        assert_eq!(nth_roots(&g, 0, p as u64).len(), p);
    }
}

#[test]
fn cyclic_cover_matches_exhaustive_search() {
    let mut checked = 0;
    for spec in catalog_specs(64) {
        let g = spec.realize();
        let family = maximal_cyclic_subgroups(&g);
        if family.len() > 20 {
            continue;
        }
        let sets: Vec<Vec<usize>> = family.iter().map(|c| c.elements.clone()).collect();
        for u in 0..g.order() {
            let roots = prime_roots(&g, u);
            let got = min_cyclic_cover_of_prime_roots(&g, u);
            let want = cover_brute(&roots, &sets).unwrap();
            assert_eq!(got.count, want.len(), "{spec} u={u}");
            assert!(got.count <= family.len());
            let chosen: Vec<Vec<usize>> = want.iter().map(|&i| sets[i].clone()).collect();
            assert_eq!(got.cover.iter().map(|c| c.elements.clone()).collect::<Vec<_>>(), chosen, "{spec} u={u}");
            assert!(roots.iter().all(|r| got.cover.iter().any(|c| c.elements.contains(r))));
            checked += 1;
        }
    }
    assert!(checked > 1000);
}

#[test]
fn maximal_cyclic_subgroups_match_brute_force() {
    for spec in catalog_specs(64) {
        let g = spec.realize();
        let all: BTreeSet<Vec<usize>> = (0..g.order()).map(|x| cyclic_subgroup_slow(&g, x)).collect();
        let maximal: Vec<Vec<usize>> = all
            .iter()
            .filter(|a| !all.iter().any(|b| b.len() > a.len() && a.iter().all(|e| b.contains(e))))
            .cloned()
            .collect();
        let mut got: Vec<Vec<usize>> = maximal_cyclic_subgroups(&g).into_iter().map(|c| c.elements).collect();
        got.sort();
        assert_eq!(got, maximal, "{spec}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn set_cover_matches_exhaustive(
        n in 1usize..12,
        family in prop::collection::vec(prop::collection::vec(0usize..12, 0..6), 0..14),
        universe in prop::collection::vec(0usize..12, 0..12),
    ) {
        let family: Vec<Vec<usize>> = family.into_iter().map(|s| s.into_iter().filter(|&e| e < n).collect()).collect();
        let universe: Vec<usize> = universe.into_iter().filter(|&e| e < n).collect::<BTreeSet<_>>().into_iter().collect();
        let fam_bits: Vec<FixedBitSet> = family.iter().map(|s| bits(n, s)).collect();
        prop_assert_eq!(min_set_cover(&bits(n, &universe), &fam_bits), cover_brute(&universe, &family));
    }
}

//! Deciders against brute force on graphs small enough to enumerate.

use std::collections::BTreeSet;

use measiso_core::generate::{
    connected_multigraphs, random_connected_multigraph, random_relabel, random_two_isomorphic,
};
use measiso_core::{
    cycle_isomorphic, cycle_realizable_exact, enumerate_cycles, graph_isomorphic, two_isomorphic,
    two_isomorphic_search, Graph, SearchOptions,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Sorted endpoint-index multiset of `g` after renaming vertex `i` to `perm[i]`.
fn edge_multiset(g: &Graph, perm: &[usize]) -> Vec<(usize, usize)> {
    let mut es: Vec<_> = (0..g.edge_count())
        .map(|i| {
            let (a, b) = g.ends(i);
            let (a, b) = (perm[a], perm[b]);
            (a.min(b), a.max(b))
        })
        .collect();
    es.sort_unstable();
    es
}

fn brute_isomorphic(g: &Graph, h: &Graph) -> bool {
    if g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count() {
        return false;
    }
    let target = edge_multiset(h, &(0..h.vertex_count()).collect::<Vec<_>>());
    permutations(g.vertex_count())
        .iter()
        .any(|p| edge_multiset(g, p) == target)
}

fn brute_canonical(g: &Graph) -> Vec<(usize, usize)> {
    permutations(g.vertex_count())
        .iter()
        .map(|p| edge_multiset(g, p))
        .min()
        .unwrap_or_default()
}

/// Edge subsets that are connected and 2-regular on the vertices they touch.
fn brute_cycles(g: &Graph) -> BTreeSet<u128> {
    let e = g.edge_count();
    let mut out = BTreeSet::new();
    for mask in 1u128..(1 << e) {
        let mut deg = vec![0; g.vertex_count()];
        let mut parent: Vec<usize> = (0..g.vertex_count()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            if p[x] != x {
                p[x] = find(p, p[x]);
            }
            p[x]
        }
        for i in (0..e).filter(|i| mask >> i & 1 == 1) {
            let (a, b) = g.ends(i);
            deg[a] += 1;
            deg[b] += 1;
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
        let touched: Vec<usize> = (0..deg.len()).filter(|&v| deg[v] > 0).collect();
        let roots: BTreeSet<usize> = touched.iter().map(|&v| find(&mut parent, v)).collect();
        if touched.iter().all(|&v| deg[v] == 2) && roots.len() == 1 {
            out.insert(mask);
        }
    }
    out
}

/// Some edge bijection carries the cycle family of `g` exactly onto that of `h`.
fn brute_cycle_isomorphic(g: &Graph, h: &Graph) -> bool {
    let e = g.edge_count();
    if e != h.edge_count() {
        return false;
    }
    let (cg, ch) = (brute_cycles(g), brute_cycles(h));
    if cg.len() != ch.len() {
        return false;
    }
    permutations(e).iter().any(|p| {
        cg.iter().all(|&m| {
            let image = (0..e)
                .filter(|i| m >> i & 1 == 1)
                .fold(0u128, |acc, i| acc | 1 << p[i]);
            ch.contains(&image)
        })
    })
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn class_counts_match_permutation_canonical_forms() {
    let classes = connected_multigraphs(5);
    for (e, family) in classes.iter().enumerate().skip(1) {
        let forms: BTreeSet<_> = family
            .iter()
            .map(|g| (g.vertex_count(), brute_canonical(g)))
            .collect();
        assert_eq!(forms.len(), family.len(), "duplicate classes at e={e}");
    }
    let counts: Vec<_> = classes.iter().skip(1).map(Vec::len).collect();
    assert_eq!(counts, [1, 2, 5, 12, 33]);
}

#[test]
fn isomorphism_matches_brute_force() {
    let mut r = rng(11);
    for _ in 0..300 {
        let e = r.gen_range(1..=8);
        let g = random_connected_multigraph(&mut r, 2..=(e + 1).min(6), e, true);
        let h = if r.gen_bool(0.5) {
            random_relabel(&mut r, &g).0
        } else {
            random_connected_multigraph(&mut r, g.vertex_count()..=g.vertex_count(), e, true)
        };
        let fast = graph_isomorphic(&g, &h);
        assert_eq!(fast.is_some(), brute_isomorphic(&g, &h), "{g:?} vs {h:?}");
        if let Some(map) = fast {
            assert!(map.verify(&g, &h));
        }
    }
}

#[test]
fn cycle_enumeration_matches_subsets() {
    let mut r = rng(12);
    for _ in 0..200 {
        let e = r.gen_range(1..=11);
        let g = random_connected_multigraph(&mut r, 2..=(e + 1).min(7), e, true);
        let fast: BTreeSet<u128> = enumerate_cycles(&g)
            .unwrap()
            .masks()
            .iter()
            .copied()
            .collect();
        assert_eq!(fast, brute_cycles(&g), "{}", g.to_edge_list());
    }
}

#[test]
fn cycle_isomorphism_matches_all_bijections() {
    let mut r = rng(13);
    let mut positives = 0;
    for _ in 0..150 {
        let e = r.gen_range(2..=6);
        let g = random_connected_multigraph(&mut r, 2..=(e + 1).min(6), e, true);
        let h = match r.gen_range(0..3) {
            0 => random_two_isomorphic(&mut r, &g, 2).0,
            _ => random_connected_multigraph(&mut r, 2..=(e + 1).min(6), e, true),
        };
        let expected = brute_cycle_isomorphic(&g, &h);
        let found = cycle_isomorphic(&g, &h).unwrap();
        assert_eq!(found.is_some(), expected, "{g:?} vs {h:?}");
        if let Some(sigma) = found {
            assert!(sigma.preserves_cycles(&g, &h).unwrap());
            positives += 1;
        }
        // the orbit route agrees with the brute-force cycle criterion
        let search = two_isomorphic_search(&g, &h, &SearchOptions::orbit_complete());
        assert_eq!(search.is_equivalent(), expected, "{g:?} vs {h:?}");
        assert_eq!(two_isomorphic(&g, &h).unwrap().is_some(), expected);
    }
    assert!(positives > 20, "too few positive cases: {positives}");
}

#[test]
fn line_closure_matches_sign_enumeration() {
    let mut r = rng(14);
    for _ in 0..400 {
        let k = r.gen_range(2..=9);
        // integer lengths keep the brute force exact
        let lengths: Vec<f64> = (0..k).map(|_| r.gen_range(0..5) as f64).collect();
        let brute = (0u32..1 << k).any(|signs| {
            lengths
                .iter()
                .enumerate()
                .map(|(i, l)| if signs >> i & 1 == 1 { *l } else { -l })
                .sum::<f64>()
                == 0.0
        });
        let squared: Vec<f64> = lengths.iter().map(|l| l * l).collect();
        assert_eq!(
            cycle_realizable_exact(&squared, 1).unwrap(),
            brute,
            "{lengths:?}"
        );
    }
}

#[test]
fn plane_closure_matches_polygon_inequality() {
    let mut r = rng(15);
    for _ in 0..400 {
        let k = r.gen_range(2..=8);
        let mut lengths: Vec<f64> = (0..k).map(|_| r.gen_range(0..6) as f64).collect();
        lengths.shuffle(&mut r);
        let total: f64 = lengths.iter().sum();
        let longest = lengths.iter().cloned().fold(0.0, f64::max);
        let squared: Vec<f64> = lengths.iter().map(|l| l * l).collect();
        for d in 2..=4 {
            assert_eq!(
                cycle_realizable_exact(&squared, d).unwrap(),
                2.0 * longest <= total,
                "{lengths:?}"
            );
        }
    }
}

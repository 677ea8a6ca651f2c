//! Graph families and random instances for tests, benchmarks and experiments.

use std::collections::{BTreeMap, HashSet};
use std::ops::RangeInclusive;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::cycles::EdgeBijection;
use crate::graph::{canonical_form, components, Edge, Graph, UnionFind};
use crate::whitney::{enumerate_two_separations, reversal, split_fully};

fn vname(i: usize) -> String {
    format!("v{i}")
}

fn from_index_pairs(pairs: &[(usize, usize)]) -> Graph {
    let edges = pairs
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| Edge::new(format!("e{i}"), vname(a), vname(b)))
        .collect();
    Graph::new(Vec::<String>::new(), edges).expect("generated edges are valid")
}

/// `K_n` on `v0..v{n-1}`.
pub fn complete(n: usize) -> Graph {
    let pairs: Vec<_> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    from_index_pairs(&pairs)
}

/// The cycle with `k >= 2` edges; `k = 2` gives a digon.
pub fn cycle(k: usize) -> Graph {
    assert!(k >= 2, "a cycle needs two edges");
    let pairs: Vec<_> = (0..k).map(|i| (i, (i + 1) % k)).collect();
    from_index_pairs(&pairs)
}

/// The path with `k` edges.
pub fn path(k: usize) -> Graph {
    let pairs: Vec<_> = (0..k).map(|i| (i, i + 1)).collect();
    from_index_pairs(&pairs)
}

/// A uniformly labelled random tree on `n` vertices, as index pairs.
fn random_tree_pairs<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<(usize, usize)> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    (1..n)
        .map(|i| (order[rng.gen_range(0..i)], order[i]))
        .collect()
}

/// A connected graph with exactly `e` edges and a vertex count drawn from
/// `vertices`, restricted to counts that can carry `e` edges.
///
/// # Panics
/// When no count in the range is compatible with `e`.
pub fn random_connected_multigraph<R: Rng + ?Sized>(
    rng: &mut R,
    vertices: RangeInclusive<usize>,
    e: usize,
    allow_parallel: bool,
) -> Graph {
    let feasible: Vec<usize> = vertices
        .filter(|&n| n >= 2 && n - 1 <= e && (allow_parallel || e <= n * (n - 1) / 2))
        .collect();
    let n = *feasible
        .choose(rng)
        .unwrap_or_else(|| panic!("no vertex count carries {e} edges"));
    let mut pairs = random_tree_pairs(rng, n);
    let mut used: HashSet<(usize, usize)> =
        pairs.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    while pairs.len() < e {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a == b {
            continue;
        }
        if !allow_parallel && !used.insert((a.min(b), a.max(b))) {
            continue;
        }
        pairs.push((a, b));
    }
    pairs.shuffle(rng);
    from_index_pairs(&pairs)
}

/// A random forest with `e` edges and between one and `e` trees (one when `e = 0`).
pub fn random_forest<R: Rng + ?Sized>(rng: &mut R, e: usize) -> Graph {
    if e == 0 {
        return from_index_pairs(&[]);
    }
    let trees = rng.gen_range(1..=e.min(3));
    let mut sizes = vec![0usize; trees];
    for i in 0..e {
        let t = if i < trees {
            i
        } else {
            rng.gen_range(0..trees)
        };
        sizes[t] += 1;
    }
    let mut pairs = Vec::new();
    let mut offset = 0;
    for s in sizes {
        let n = s + 1;
        pairs.extend(
            random_tree_pairs(rng, n)
                .into_iter()
                .map(|(a, b)| (a + offset, b + offset)),
        );
        offset += n;
    }
    pairs.shuffle(rng);
    from_index_pairs(&pairs)
}

/// Simple, at least four vertices, and still connected after deleting any two.
pub fn is_three_connected(g: &Graph) -> bool {
    let n = g.vertex_count();
    if n < 4 || !g.is_simple() {
        return false;
    }
    let connected_without = |skip: &[usize]| {
        let mut uf = UnionFind::new(n);
        let mut parts = n - skip.len();
        for i in 0..g.edge_count() {
            let (a, b) = g.ends(i);
            if !skip.contains(&a) && !skip.contains(&b) && uf.union(a, b) {
                parts -= 1;
            }
        }
        parts == 1
    };
    if !connected_without(&[]) {
        return false;
    }
    (0..n).all(|a| (a + 1..n).all(|b| connected_without(&[a, b])))
}

/// A random simple 3-connected graph with a vertex count from `vertices`
/// (at least 4), found by rejection over dense random graphs.
pub fn random_three_connected<R: Rng + ?Sized>(
    rng: &mut R,
    vertices: RangeInclusive<usize>,
) -> Graph {
    let (lo, hi) = (vertices.start().max(&4).to_owned(), *vertices.end());
    assert!(lo <= hi, "3-connected graphs need four vertices");
    loop {
        let n = rng.gen_range(lo..=hi);
        let max = n * (n - 1) / 2;
        let min = (3 * n).div_ceil(2);
        let e = rng.gen_range(min..=max);
        let g = random_connected_multigraph(rng, n..=n, e, false);
        if is_three_connected(&g) {
            return g;
        }
    }
}

/// Renames vertices to `w0, w1, ...` and edges to `f0, f1, ...` in random
/// order, shuffling the edge order too. Returns the result and the edge renaming.
pub fn random_relabel<R: Rng + ?Sized>(rng: &mut R, g: &Graph) -> (Graph, EdgeBijection) {
    let mut vperm: Vec<usize> = (0..g.vertex_count()).collect();
    vperm.shuffle(rng);
    let mut eperm: Vec<usize> = (0..g.edge_count()).collect();
    eperm.shuffle(rng);
    let vmap: BTreeMap<&str, String> = g
        .vertices()
        .iter()
        .zip(&vperm)
        .map(|(v, &i)| (v.as_str(), format!("w{i}")))
        .collect();
    let mut edges: Vec<(usize, Edge)> = g
        .edges()
        .iter()
        .zip(&eperm)
        .map(|(e, &i)| {
            (
                i,
                Edge::new(
                    format!("f{i}"),
                    vmap[e.u.as_str()].clone(),
                    vmap[e.v.as_str()].clone(),
                ),
            )
        })
        .collect();
    edges.sort_by_key(|(i, _)| *i);
    let sigma = EdgeBijection {
        sigma: g
            .edges()
            .iter()
            .zip(&eperm)
            .map(|(e, &i)| (e.id.clone(), format!("f{i}")))
            .collect(),
    };
    let h = Graph::new(
        vmap.into_values(),
        edges.into_iter().map(|(_, e)| e).collect(),
    )
    .expect("relabelling preserves validity");
    (h, sigma)
}

/// Splits `g` into its blocks and glues them back into a connected graph at
/// randomly chosen vertices. The result is 1-isomorphic to `g`; edge ids are kept.
pub fn random_regluing<R: Rng + ?Sized>(rng: &mut R, g: &Graph) -> Graph {
    let (flat, _) = split_fully(g);
    let labels = components(&flat);
    let count = labels.iter().max().map_or(0, |m| m + 1);
    let mut buckets: Vec<Vec<String>> = vec![Vec::new(); count];
    for (i, e) in flat.edges().iter().enumerate() {
        let (a, _) = flat.ends(i);
        buckets[labels[a]].push(e.id.clone());
    }
    let parts: Vec<Graph> = buckets
        .iter()
        .filter(|b| !b.is_empty())
        .map(|b| flat.edge_induced(b).expect("ids come from the graph"))
        .collect();
    if parts.len() <= 1 {
        return g.clone();
    }
    let mut order: Vec<usize> = (0..parts.len()).collect();
    order.shuffle(rng);
    let mut merged: Vec<Edge> = Vec::new();
    let mut merged_vertices: Vec<String> = Vec::new();
    for (k, &p) in order.iter().enumerate() {
        let block = &parts[p];
        // block-local vertex names get a unique prefix, one is identified with an old vertex
        let glue_from = block
            .vertices()
            .choose(rng)
            .expect("block has vertices")
            .clone();
        let glue_to = merged_vertices.choose(rng).cloned();
        let name = |v: &String| -> String {
            match &glue_to {
                Some(t) if *v == glue_from => t.clone(),
                _ => format!("b{k}.{v}"),
            }
        };
        for e in block.edges() {
            merged.push(Edge::new(e.id.clone(), name(&e.u), name(&e.v)));
        }
        for v in block.vertices() {
            let n = name(v);
            if !merged_vertices.contains(&n) {
                merged_vertices.push(n);
            }
        }
    }
    let order: BTreeMap<&str, usize> = g
        .edges()
        .iter()
        .enumerate()
        .map(|(i, e)| (e.id.as_str(), i))
        .collect();
    merged.sort_by_key(|e| order[e.id.as_str()]);
    Graph::new(Vec::<String>::new(), merged).expect("regluing preserves validity")
}

/// Applies up to `reversals` random reversals, each across a uniformly chosen
/// 2-separation of the current graph. Edge ids are kept.
pub fn random_reversals<R: Rng + ?Sized>(rng: &mut R, g: &Graph, reversals: usize) -> Graph {
    let mut cur = g.clone();
    for _ in 0..reversals {
        let seps = enumerate_two_separations(&cur);
        let Some(sep) = seps.choose(rng) else { break };
        cur = reversal(&cur, sep).expect("enumerated separations are valid");
    }
    cur
}

/// A graph 2-isomorphic to connected `g`: random regluing, random reversals,
/// another regluing, then a random relabel. Returns it with the edge map
/// from `g`, which sends cycles onto cycles by construction.
pub fn random_two_isomorphic<R: Rng + ?Sized>(
    rng: &mut R,
    g: &Graph,
    reversals: usize,
) -> (Graph, EdgeBijection) {
    let a = random_regluing(rng, g);
    let b = random_reversals(rng, &a, reversals);
    let c = random_regluing(rng, &b);
    random_relabel(rng, &c)
}

/// Every connected loopless multigraph with `1..=max_edges` edges, one per
/// isomorphism class, grouped by edge count (index `k` holds `k` edges; index
/// 0 is empty).
///
/// Each connected graph arises from a smaller one by adding an edge between
/// existing vertices (delete a cycle edge) or a pendant edge to a new vertex
/// (delete a leaf), so augmentation plus canonical deduplication is complete.
pub fn connected_multigraphs(max_edges: usize) -> Vec<Vec<Graph>> {
    let mut out: Vec<Vec<Graph>> = vec![Vec::new(); max_edges + 1];
    if max_edges == 0 {
        return out;
    }
    let mut layer: Vec<Vec<(usize, usize)>> = vec![vec![(0, 1)]];
    out[1].push(from_index_pairs(&layer[0]));
    for bucket in out.iter_mut().skip(2) {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for pairs in &layer {
            let n = pairs.iter().map(|&(a, b)| a.max(b)).max().unwrap_or(0) + 1;
            let mut push = |p: Vec<(usize, usize)>| {
                let g = from_index_pairs(&p);
                if seen.insert(canonical_form(&g)) {
                    bucket.push(g);
                    next.push(p);
                }
            };
            for a in 0..n {
                for b in a + 1..n {
                    let mut p = pairs.clone();
                    p.push((a, b));
                    push(p);
                }
                let mut p = pairs.clone();
                p.push((a, n));
                push(p);
            }
        }
        layer = next;
    }
    out
}

/// Vertex count of each connected component, in component-label order.
pub fn component_sizes(g: &Graph) -> Vec<usize> {
    let labels = components(g);
    let mut sizes = vec![0; labels.iter().max().map_or(0, |m| m + 1)];
    for l in labels {
        sizes[l] += 1;
    }
    sizes
}

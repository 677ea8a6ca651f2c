//! Circuits of a multigraph and cycle isomorphism.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, UnionFind};

/// Cycle enumeration refuses to go past this many distinct cycles by default.
pub const DEFAULT_CYCLE_CAP: usize = 1_000_000;

/// All circuits of a graph, stored as masks over the graph's edge order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleSet {
    edge_ids: Vec<String>,
    masks: Vec<u128>,
}

impl CycleSet {
    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    /// Sorted, deduplicated edge masks.
    pub fn masks(&self) -> &[u128] {
        &self.masks
    }

    pub fn contains_mask(&self, mask: u128) -> bool {
        self.masks.binary_search(&mask).is_ok()
    }

    /// Each cycle as its edge ids in edge order.
    pub fn cycles(&self) -> Vec<Vec<String>> {
        self.masks
            .iter()
            .map(|&m| {
                self.edge_ids
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| m >> i & 1 == 1)
                    .map(|(_, id)| id.clone())
                    .collect()
            })
            .collect()
    }

    /// Multiset of cycle lengths, sorted.
    pub fn length_profile(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.masks.iter().map(|m| m.count_ones()).collect();
        v.sort_unstable();
        v
    }
}

/// An edge map from one graph onto another. Serializes as `{"sigma": {...}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeBijection {
    pub sigma: BTreeMap<String, String>,
}

impl EdgeBijection {
    /// The map sending every edge of `g` to the edge with the same id.
    pub fn identity(g: &Graph) -> Self {
        EdgeBijection {
            sigma: g
                .edges()
                .iter()
                .map(|e| (e.id.clone(), e.id.clone()))
                .collect(),
        }
    }

    pub fn get(&self, id: &str) -> Option<&str> {
        self.sigma.get(id).map(String::as_str)
    }

    pub fn inverse(&self) -> Self {
        EdgeBijection {
            sigma: self
                .sigma
                .iter()
                .map(|(a, b)| (b.clone(), a.clone()))
                .collect(),
        }
    }

    /// Edge-index permutation `g index -> h index`; fails unless this is a bijection E(g) -> E(h).
    pub fn index_map(&self, g: &Graph, h: &Graph) -> Result<Vec<usize>> {
        if g.edge_count() != h.edge_count() || self.sigma.len() != g.edge_count() {
            return Err(Error::InvalidBijection(format!(
                "sizes differ: {} pairs, {} and {} edges",
                self.sigma.len(),
                g.edge_count(),
                h.edge_count()
            )));
        }
        let mut out = Vec::with_capacity(g.edge_count());
        let mut hit = vec![false; h.edge_count()];
        for e in g.edges() {
            let target = self
                .sigma
                .get(&e.id)
                .ok_or_else(|| Error::InvalidBijection(format!("`{}` is unmapped", e.id)))?;
            let j = h
                .edge_index(target)
                .ok_or_else(|| Error::UnknownEdge(target.clone()))?;
            if std::mem::replace(&mut hit[j], true) {
                return Err(Error::InvalidBijection(format!("`{target}` is hit twice")));
            }
            out.push(j);
        }
        Ok(out)
    }

    /// Whether this map sends cycles of `g` exactly onto cycles of `h`.
    pub fn preserves_cycles(&self, g: &Graph, h: &Graph) -> Result<bool> {
        let map = self.index_map(g, h)?;
        let cg = enumerate_cycles(g)?;
        let ch = enumerate_cycles(h)?;
        if cg.len() != ch.len() {
            return Ok(false);
        }
        Ok(cg
            .masks()
            .iter()
            .all(|&m| ch.contains_mask(map_mask(m, &map))))
    }
}

pub(crate) fn map_mask(mask: u128, map: &[usize]) -> u128 {
    let mut out = 0u128;
    let mut rest = mask;
    while rest != 0 {
        let i = rest.trailing_zeros() as usize;
        out |= 1u128 << map[i];
        rest &= rest - 1;
    }
    out
}

/// Whether the edges in `s` form a single simple cycle (a digon counts).
pub fn is_cycle_subset<S: AsRef<str>>(g: &Graph, s: &[S]) -> Result<bool> {
    let idx = g.edge_indices(s)?;
    let mut sorted = idx.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != idx.len() {
        return Ok(false);
    }
    Ok(is_cycle_indices(g, &sorted))
}

#[cfg(test)]
pub(crate) fn is_cycle_mask(g: &Graph, mask: u128) -> bool {
    let idx: Vec<usize> = (0..g.edge_count()).filter(|i| mask >> i & 1 == 1).collect();
    is_cycle_indices(g, &idx)
}

fn is_cycle_indices(g: &Graph, idx: &[usize]) -> bool {
    if idx.len() < 2 {
        return false;
    }
    let mut deg = BTreeMap::new();
    let mut uf = UnionFind::new(g.vertex_count());
    for &i in idx {
        let (a, b) = g.ends(i);
        *deg.entry(a).or_insert(0) += 1;
        *deg.entry(b).or_insert(0) += 1;
        uf.union(a, b);
    }
    if deg.values().any(|&d| d != 2) {
        return false;
    }
    let mut roots = deg.keys().map(|&v| uf.find(v));
    let first = roots.next().expect("nonempty");
    roots.all(|r| r == first)
}

/// Every circuit of `g`, with the default cap.
pub fn enumerate_cycles(g: &Graph) -> Result<CycleSet> {
    enumerate_cycles_capped(g, DEFAULT_CYCLE_CAP)
}

/// Every circuit of `g`. Depth-first search from each start vertex through
/// higher-indexed vertices only, so each circuit is met once per direction and
/// deduplicated by edge set.
pub fn enumerate_cycles_capped(g: &Graph, cap: usize) -> Result<CycleSet> {
    g.check_mask_width()?;
    let adj = g.adjacency();
    let mut found = HashSet::new();
    let mut on_path = vec![false; g.vertex_count()];
    for s in 0..g.vertex_count() {
        on_path[s] = true;
        walk(&adj, s, s, 0, &mut on_path, &mut found, cap)?;
        on_path[s] = false;
    }
    let mut masks: Vec<u128> = found.into_iter().collect();
    masks.sort_unstable();
    Ok(CycleSet {
        edge_ids: g.edge_ids(),
        masks,
    })
}

fn walk(
    adj: &[Vec<(usize, usize)>],
    start: usize,
    v: usize,
    mask: u128,
    on_path: &mut [bool],
    found: &mut HashSet<u128>,
    cap: usize,
) -> Result<()> {
    for &(w, e) in &adj[v] {
        if mask >> e & 1 == 1 {
            continue;
        }
        if w == start {
            if mask != 0 {
                found.insert(mask | 1u128 << e);
                if found.len() > cap {
                    return Err(Error::CycleCapExceeded(cap));
                }
            }
        } else if w > start && !on_path[w] {
            on_path[w] = true;
            walk(adj, start, w, mask | 1u128 << e, on_path, found, cap)?;
            on_path[w] = false;
        }
    }
    Ok(())
}

/// Cycles of one graph plus the per-edge statistics used to prune bijection search.
#[derive(Debug, Clone)]
pub struct CycleIndex {
    edge_ids: Vec<String>,
    cycles: CycleSet,
    by_edge: Vec<Vec<usize>>,
    /// `co[i][j]`: number of cycles through both edges (diagonal: through `i`).
    co: Vec<Vec<u32>>,
    /// Sorted cycle lengths through each edge.
    lengths: Vec<Vec<u32>>,
}

impl CycleIndex {
    pub fn new(g: &Graph) -> Result<Self> {
        Self::with_cap(g, DEFAULT_CYCLE_CAP)
    }

    pub fn with_cap(g: &Graph, cap: usize) -> Result<Self> {
        let cycles = enumerate_cycles_capped(g, cap)?;
        let e = g.edge_count();
        let mut by_edge = vec![Vec::new(); e];
        let mut co = vec![vec![0u32; e]; e];
        let mut lengths = vec![Vec::new(); e];
        for (ci, &m) in cycles.masks().iter().enumerate() {
            let members: Vec<usize> = (0..e).filter(|i| m >> i & 1 == 1).collect();
            for &a in &members {
                by_edge[a].push(ci);
                lengths[a].push(m.count_ones());
                for &b in &members {
                    co[a][b] += 1;
                }
            }
        }
        for l in &mut lengths {
            l.sort_unstable();
        }
        Ok(CycleIndex {
            edge_ids: g.edge_ids(),
            cycles,
            by_edge,
            co,
            lengths,
        })
    }

    pub fn cycles(&self) -> &CycleSet {
        &self.cycles
    }

    pub fn edge_count(&self) -> usize {
        self.edge_ids.len()
    }

    /// Cycle-length multiset through edge `i`, an invariant of any cycle isomorphism.
    pub fn edge_lengths(&self, i: usize) -> &[u32] {
        &self.lengths[i]
    }

    fn profile(&self) -> Vec<Vec<u32>> {
        let mut p = self.lengths.clone();
        p.sort();
        p
    }
}

/// Searches for an edge bijection carrying cycles onto cycles in both directions.
pub fn cycle_isomorphic(g: &Graph, h: &Graph) -> Result<Option<EdgeBijection>> {
    if g.edge_count() != h.edge_count() {
        return Ok(None);
    }
    let gi = CycleIndex::new(g)?;
    let hi = CycleIndex::new(h)?;
    Ok(cycle_isomorphic_indexed(&gi, &hi))
}

/// [`cycle_isomorphic`] over precomputed indices.
///
/// Edges of `g` are assigned in decreasing order of (cycles through the edge,
/// shortest cycle through it); each assignment must match the per-edge length
/// multiset and the pairwise co-occurrence counts against every edge already
/// assigned, and every cycle completed on either side must map to a cycle.
/// The first witness in this order is returned.
pub fn cycle_isomorphic_indexed(gi: &CycleIndex, hi: &CycleIndex) -> Option<EdgeBijection> {
    let e = gi.edge_count();
    if e != hi.edge_count() || gi.cycles.len() != hi.cycles.len() {
        return None;
    }
    if gi.cycles.length_profile() != hi.cycles.length_profile() || gi.profile() != hi.profile() {
        return None;
    }
    let mut order: Vec<usize> = (0..e).collect();
    order.sort_by_key(|&i| {
        let min_len = gi.lengths[i].first().copied().unwrap_or(u32::MAX);
        (std::cmp::Reverse(gi.co[i][i]), min_len, i)
    });
    let mut position = vec![0usize; e];
    for (k, &i) in order.iter().enumerate() {
        position[i] = k;
    }
    // cycles of g whose last edge in `order` sits at position k
    let mut completes = vec![Vec::new(); e];
    for &m in gi.cycles.masks() {
        let last = (0..e)
            .filter(|i| m >> i & 1 == 1)
            .map(|i| position[i])
            .max()
            .expect("nonempty cycle");
        completes[last].push(m);
    }
    let candidates: Vec<Vec<usize>> = order
        .iter()
        .map(|&i| {
            let mut c: Vec<usize> = (0..e).filter(|&j| gi.lengths[i] == hi.lengths[j]).collect();
            if let Some(same) = c.iter().position(|&j| hi.edge_ids[j] == gi.edge_ids[i]) {
                let j = c.remove(same);
                c.insert(0, j);
            }
            c
        })
        .collect();
    let h_set: HashSet<u128> = hi.cycles.masks().iter().copied().collect();
    let g_set: HashSet<u128> = gi.cycles.masks().iter().copied().collect();
    let mut search = CycleSearch {
        gi,
        hi,
        order: &order,
        candidates: &candidates,
        completes: &completes,
        h_set: &h_set,
        g_set: &g_set,
        forward: vec![usize::MAX; e],
        backward: vec![usize::MAX; e],
        image: 0,
    };
    if !search.extend(0) {
        return None;
    }
    let sigma = (0..e)
        .map(|i| {
            (
                gi.edge_ids[i].clone(),
                hi.edge_ids[search.forward[i]].clone(),
            )
        })
        .collect();
    Some(EdgeBijection { sigma })
}

struct CycleSearch<'a> {
    gi: &'a CycleIndex,
    hi: &'a CycleIndex,
    order: &'a [usize],
    candidates: &'a [Vec<usize>],
    completes: &'a [Vec<u128>],
    h_set: &'a HashSet<u128>,
    g_set: &'a HashSet<u128>,
    forward: Vec<usize>,
    backward: Vec<usize>,
    image: u128,
}

impl CycleSearch<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let i = self.order[depth];
        for &j in &self.candidates[depth] {
            if self.backward[j] != usize::MAX {
                continue;
            }
            let pairs_ok = self.order[..depth]
                .iter()
                .all(|&p| self.gi.co[i][p] == self.hi.co[j][self.forward[p]]);
            if !pairs_ok {
                continue;
            }
            self.forward[i] = j;
            self.backward[j] = i;
            self.image |= 1u128 << j;
            if self.closed_cycles_ok(depth, j) && self.extend(depth + 1) {
                return true;
            }
            self.image &= !(1u128 << j);
            self.backward[j] = usize::MAX;
            self.forward[i] = usize::MAX;
        }
        false
    }

    fn closed_cycles_ok(&self, depth: usize, j: usize) -> bool {
        let fwd_ok = self.completes[depth]
            .iter()
            .all(|&m| self.h_set.contains(&map_mask(m, &self.forward)));
        if !fwd_ok {
            return false;
        }
        self.hi.by_edge[j].iter().all(|&c| {
            let m = self.hi.cycles.masks()[c];
            m & !self.image != 0 || self.g_set.contains(&map_mask(m, &self.backward))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    fn triangle() -> Graph {
        Graph::from_pairs(&[("a", "b"), ("b", "c"), ("c", "a")]).unwrap()
    }

    fn path3() -> Graph {
        Graph::from_pairs(&[("a", "b"), ("b", "c"), ("c", "d")]).unwrap()
    }

    /// Oracle: test every edge subset directly.
    fn brute_cycles(g: &Graph) -> Vec<u128> {
        let e = g.edge_count();
        (1u128..1 << e).filter(|&m| is_cycle_mask(g, m)).collect()
    }

    #[test]
    fn cycle_subset_basics() {
        let t = triangle();
        assert!(is_cycle_subset(&t, &["e0", "e1", "e2"]).unwrap());
        assert!(!is_cycle_subset(&path3(), &["e0", "e1", "e2"]).unwrap());
        let digon = Graph::from_pairs(&[("a", "b"), ("a", "b")]).unwrap();
        assert!(is_cycle_subset(&digon, &["e0", "e1"]).unwrap());
        assert!(!is_cycle_subset(&digon, &["e0"]).unwrap());
        assert!(is_cycle_subset(&t, &["nope"]).is_err());
    }

    #[test]
    fn two_triangles_are_not_one_cycle() {
        let g = Graph::from_pairs(&[
            ("a", "b"),
            ("b", "c"),
            ("c", "a"),
            ("x", "y"),
            ("y", "z"),
            ("z", "x"),
        ])
        .unwrap();
        assert!(!is_cycle_subset(&g, &["e0", "e1", "e2", "e3", "e4", "e5"]).unwrap());
    }

    #[test]
    fn enumerate_small_cases() {
        assert!(enumerate_cycles(&path3()).unwrap().is_empty());
        assert_eq!(enumerate_cycles(&triangle()).unwrap().len(), 1);
        let k4 = generate::complete(4);
        let cs = enumerate_cycles(&k4).unwrap();
        assert_eq!(brute_cycles(&k4).len(), 7);
        assert_eq!(cs.masks(), brute_cycles(&k4).as_slice());
        assert_eq!(cs.length_profile(), [3, 3, 3, 3, 4, 4, 4]);
    }

    #[test]
    fn enumerate_matches_brute_force_on_multigraphs() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..40 {
            let g = generate::random_connected_multigraph(&mut rng, 3..=6, 8, true);
            let mut fast = enumerate_cycles(&g).unwrap().masks().to_vec();
            fast.sort_unstable();
            assert_eq!(fast, brute_cycles(&g));
        }
    }

    #[test]
    fn cap_is_enforced() {
        let k6 = generate::complete(6);
        assert_eq!(
            enumerate_cycles_capped(&k6, 10),
            Err(Error::CycleCapExceeded(10))
        );
    }

    #[test]
    fn triangle_versus_path() {
        assert!(cycle_isomorphic(&triangle(), &path3()).unwrap().is_none());
        let w = cycle_isomorphic(&triangle(), &triangle()).unwrap().unwrap();
        assert!(w.preserves_cycles(&triangle(), &triangle()).unwrap());
    }

    #[test]
    fn self_witness_prefers_identity() {
        let k4 = generate::complete(4);
        let w = cycle_isomorphic(&k4, &k4).unwrap().unwrap();
        assert_eq!(w, EdgeBijection::identity(&k4));
    }

    #[test]
    fn k4_relabeled_maps_triangles_to_triangles() {
        let g = generate::complete(4);
        let h = Graph::from_pairs(&[
            ("p", "q"),
            ("r", "s"),
            ("p", "r"),
            ("q", "s"),
            ("p", "s"),
            ("q", "r"),
        ])
        .unwrap();
        let w = cycle_isomorphic(&g, &h).unwrap().unwrap();
        let map = w.index_map(&g, &h).unwrap();
        let ch = enumerate_cycles(&h).unwrap();
        for &m in enumerate_cycles(&g).unwrap().masks() {
            let image = map_mask(m, &map);
            assert!(ch.contains_mask(image));
            assert_eq!(image.count_ones(), m.count_ones());
        }
    }

    #[test]
    fn index_map_rejects_non_bijections() {
        let t = triangle();
        let mut sigma = EdgeBijection::identity(&t);
        sigma.sigma.insert("e0".into(), "e1".into());
        assert!(sigma.index_map(&t, &t).is_err());
    }
}

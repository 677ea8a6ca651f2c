use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::canon::refine;
use super::Graph;

/// A vertex map from one graph onto another.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexBijection {
    pub pairs: BTreeMap<String, String>,
}

impl VertexBijection {
    pub fn inverse(&self) -> VertexBijection {
        VertexBijection {
            pairs: self
                .pairs
                .iter()
                .map(|(a, b)| (b.clone(), a.clone()))
                .collect(),
        }
    }

    /// Checks bijectivity onto `h` and preservation of every edge multiplicity.
    pub fn verify(&self, g: &Graph, h: &Graph) -> bool {
        if self.pairs.len() != g.vertex_count() || g.vertex_count() != h.vertex_count() {
            return false;
        }
        let mut image = Vec::with_capacity(g.vertex_count());
        for v in g.vertices() {
            let Some(w) = self.pairs.get(v).and_then(|w| h.vertex_index(w)) else {
                return false;
            };
            image.push(w);
        }
        let mut seen = image.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != image.len() {
            return false;
        }
        let mg = g.multiplicity_matrix();
        let mh = h.multiplicity_matrix();
        (0..image.len()).all(|a| (0..image.len()).all(|b| mg[a][b] == mh[image[a]][image[b]]))
    }
}

/// Finds a vertex bijection preserving edge multiplicities, if one exists.
///
/// Backtracking in the VF2 style: vertices of `g` are matched in an order that
/// favors vertices adjacent to already-matched ones, and candidates are pruned
/// by a joint colour refinement of both graphs plus consistency with the
/// partial map.
pub fn graph_isomorphic(g: &Graph, h: &Graph) -> Option<VertexBijection> {
    let n = g.vertex_count();
    if n != h.vertex_count() || g.edge_count() != h.edge_count() {
        return None;
    }
    let mg = g.multiplicity_matrix();
    let mh = h.multiplicity_matrix();
    let mut dg: Vec<u32> = mg.iter().map(|r| r.iter().sum()).collect();
    let mut dh: Vec<u32> = mh.iter().map(|r| r.iter().sum()).collect();
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return None;
    }

    // Refine the disjoint union so colours are comparable across graphs.
    let mut union = vec![vec![0u32; 2 * n]; 2 * n];
    for a in 0..n {
        for b in 0..n {
            union[a][b] = mg[a][b];
            union[n + a][n + b] = mh[a][b];
        }
    }
    let cells = refine(&union, vec![(0..2 * n).collect()]);
    let mut colour = vec![0usize; 2 * n];
    for (ci, c) in cells.iter().enumerate() {
        if c.iter().filter(|&&v| v < n).count() * 2 != c.len() {
            return None;
        }
        for &v in c {
            colour[v] = ci;
        }
    }

    let order = matching_order(&mg, &colour[..n], &cells);
    let mut state = Matcher {
        mg: &mg,
        mh: &mh,
        colour: &colour,
        n,
        order: &order,
        map: vec![usize::MAX; n],
        used: vec![false; n],
    };
    if !state.extend(0) {
        return None;
    }
    let pairs = state
        .map
        .iter()
        .enumerate()
        .map(|(a, &b)| (g.vertices()[a].clone(), h.vertices()[b].clone()))
        .collect();
    Some(VertexBijection { pairs })
}

fn matching_order(mg: &[Vec<u32>], colour: &[usize], cells: &[Vec<usize>]) -> Vec<usize> {
    let n = mg.len();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let linked = order.iter().filter(|&&w: &&usize| mg[v][w] > 0).count();
                (
                    linked,
                    std::cmp::Reverse(cells[colour[v]].len()),
                    std::cmp::Reverse(v),
                )
            })
            .expect("unplaced vertex remains");
        placed[next] = true;
        order.push(next);
    }
    order
}

struct Matcher<'a> {
    mg: &'a [Vec<u32>],
    mh: &'a [Vec<u32>],
    colour: &'a [usize],
    n: usize,
    order: &'a [usize],
    map: Vec<usize>,
    used: Vec<bool>,
}

impl Matcher<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let u = self.order[depth];
        for v in 0..self.n {
            if self.used[v] || self.colour[self.n + v] != self.colour[u] {
                continue;
            }
            let consistent = self.order[..depth]
                .iter()
                .all(|&x| self.mg[u][x] == self.mh[v][self.map[x]]);
            if !consistent {
                continue;
            }
            self.map[u] = v;
            self.used[v] = true;
            if self.extend(depth + 1) {
                return true;
            }
            self.used[v] = false;
            self.map[u] = usize::MAX;
        }
        false
    }
}

//! Canonical certificates for small multigraphs.
//!
//! Individualization-refinement without automorphism groups: refine an ordered
//! partition to equitability, branch on every vertex of the first non-singleton
//! cell, and keep the lexicographically least adjacency code over all leaves.
//! Vertices with identical multiplicity rows are interchangeable, so only one
//! per twin class is branched on. Exponential in the worst case; intended for
//! graphs with a dozen or so vertices.

use serde::{Deserialize, Serialize};

use super::Graph;

/// Isomorphism-invariant encoding: two graphs have equal forms iff they are isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub vertices: usize,
    pub code: Vec<u32>,
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    canonical_labeling(g).0
}

/// Canonical form plus an ordering of vertex indices that produces it.
pub fn canonical_labeling(g: &Graph) -> (CanonicalForm, Vec<usize>) {
    let m = g.multiplicity_matrix();
    let (code, order) = canonize(&m);
    (
        CanonicalForm {
            vertices: m.len(),
            code,
        },
        order,
    )
}

/// Canonical code of a symmetric multiplicity matrix.
pub fn canonize(m: &[Vec<u32>]) -> (Vec<u32>, Vec<usize>) {
    let n = m.len();
    if n == 0 {
        return (Vec::new(), Vec::new());
    }
    let mut best: Option<(Vec<u32>, Vec<usize>)> = None;
    search(m, vec![(0..n).collect()], &mut best);
    best.expect("at least one leaf")
}

fn search(m: &[Vec<u32>], cells: Vec<Vec<usize>>, best: &mut Option<(Vec<u32>, Vec<usize>)>) {
    let cells = refine(m, cells);
    let Some(target) = cells.iter().position(|c| c.len() > 1) else {
        let order: Vec<usize> = cells.into_iter().map(|c| c[0]).collect();
        let code = encode(m, &order);
        if best.as_ref().is_none_or(|(b, _)| code < *b) {
            *best = Some((code, order));
        }
        return;
    };
    let cell = &cells[target];
    let mut explored: Vec<usize> = Vec::new();
    for &v in cell {
        if explored.iter().any(|&w| twins(m, v, w)) {
            continue;
        }
        explored.push(v);
        let mut next = Vec::with_capacity(cells.len() + 1);
        next.extend_from_slice(&cells[..target]);
        next.push(vec![v]);
        next.push(cell.iter().copied().filter(|&w| w != v).collect());
        next.extend_from_slice(&cells[target + 1..]);
        search(m, next, best);
    }
}

fn twins(m: &[Vec<u32>], v: usize, w: usize) -> bool {
    (0..m.len()).all(|x| x == v || x == w || m[v][x] == m[w][x])
}

/// Splits cells by neighbor counts into every cell until nothing changes.
pub(crate) fn refine(m: &[Vec<u32>], mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    let n = m.len();
    loop {
        let mut cell_of = vec![0usize; n];
        for (ci, c) in cells.iter().enumerate() {
            for &v in c {
                cell_of[v] = ci;
            }
        }
        let k = cells.len();
        let mut changed = false;
        let mut next = Vec::with_capacity(k);
        for c in &cells {
            if c.len() == 1 {
                next.push(c.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, usize)> = c
                .iter()
                .map(|&v| {
                    let mut sig = vec![0u32; k];
                    for (x, &mult) in m[v].iter().enumerate() {
                        sig[cell_of[x]] += mult;
                    }
                    (sig, v)
                })
                .collect();
            keyed.sort();
            let mut group = vec![keyed[0].1];
            for w in keyed.windows(2) {
                if w[0].0 == w[1].0 {
                    group.push(w[1].1);
                } else {
                    next.push(std::mem::take(&mut group));
                    group.push(w[1].1);
                    changed = true;
                }
            }
            next.push(group);
        }
        cells = next;
        if !changed {
            return cells;
        }
    }
}

fn encode(m: &[Vec<u32>], order: &[usize]) -> Vec<u32> {
    let n = order.len();
    let mut code = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
    for i in 0..n {
        for j in i + 1..n {
            code.push(m[order[i]][order[j]]);
        }
    }
    code
}

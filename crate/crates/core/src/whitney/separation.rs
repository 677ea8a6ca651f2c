use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, UnionFind};

/// An edge partition `{s, t}` whose two sides share exactly the vertices of `cut_pair`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoSeparation {
    pub s: Vec<String>,
    pub t: Vec<String>,
    pub cut_pair: [String; 2],
}

impl TwoSeparation {
    /// Builds the separation with side `s`, taking `t` as the remaining edges
    /// and the cut pair from the shared vertices. Fails if that is not a 2-separation.
    pub fn from_side<S: AsRef<str>>(g: &Graph, s: &[S]) -> Result<Self> {
        let s_idx: BTreeSet<usize> = g.edge_indices(s)?.into_iter().collect();
        let side = |pick: bool| -> Vec<String> {
            g.edges()
                .iter()
                .enumerate()
                .filter(|(i, _)| s_idx.contains(i) == pick)
                .map(|(_, e)| e.id.clone())
                .collect()
        };
        let (s, t) = (side(true), side(false));
        let shared = shared_vertices(g, &s, &t)?;
        if shared.len() != 2 {
            return Err(Error::InvalidSeparation(format!(
                "sides share {} vertices",
                shared.len()
            )));
        }
        let mut it = shared.into_iter();
        let cut_pair = [it.next().unwrap(), it.next().unwrap()];
        let sep = TwoSeparation { s, t, cut_pair };
        validate_separation(g, &sep)?;
        Ok(sep)
    }
}

fn shared_vertices(g: &Graph, s: &[String], t: &[String]) -> Result<BTreeSet<String>> {
    let touch = |ids: &[String]| -> Result<BTreeSet<String>> {
        let mut out = BTreeSet::new();
        for id in ids {
            let e = g.edge(id).ok_or_else(|| Error::UnknownEdge(id.clone()))?;
            out.insert(e.u.clone());
            out.insert(e.v.clone());
        }
        Ok(out)
    };
    let (vs, vt) = (touch(s)?, touch(t)?);
    Ok(vs.intersection(&vt).cloned().collect())
}

/// Checks that `sep` partitions the edges of `g`, that both sides have at least
/// two edges, and that the sides meet exactly in the cut pair.
pub fn validate_separation(g: &Graph, sep: &TwoSeparation) -> Result<()> {
    let bad = |m: String| Err(Error::InvalidSeparation(m));
    if sep.s.len() < 2 || sep.t.len() < 2 {
        return bad(format!(
            "sides have {} and {} edges",
            sep.s.len(),
            sep.t.len()
        ));
    }
    let mut all: Vec<&String> = sep.s.iter().chain(&sep.t).collect();
    all.sort();
    all.dedup();
    if all.len() != sep.s.len() + sep.t.len() || all.len() != g.edge_count() {
        return bad("sides do not partition the edge set".into());
    }
    let [x, y] = &sep.cut_pair;
    if x == y {
        return bad("cut pair vertices coincide".into());
    }
    let shared = shared_vertices(g, &sep.s, &sep.t)?;
    if shared != BTreeSet::from([x.clone(), y.clone()]) {
        return bad(format!("sides meet in {shared:?}, not {{{x}, {y}}}"));
    }
    Ok(())
}

/// Every 2-separation of `g`, each partition once with `s` holding the edge
/// that comes first in edge order.
///
/// For a candidate pair `{x, y}`, edges are grouped by connectivity through
/// vertices other than `x` and `y`. A 2-separation with that cut pair is a
/// union of groups such that both sides have two or more edges and both
/// sides touch both `x` and `y`. Every other vertex lies in one group only,
/// so no further shared vertex can appear.
pub fn enumerate_two_separations(g: &Graph) -> Vec<TwoSeparation> {
    let n = g.vertex_count();
    let e = g.edge_count();
    let mut out = Vec::new();
    if e < 4 {
        return out;
    }
    let adj = g.adjacency();
    for x in 0..n {
        for y in x + 1..n {
            let mut uf = UnionFind::new(e);
            for (w, incident) in adj.iter().enumerate() {
                if w == x || w == y {
                    continue;
                }
                for pair in incident.windows(2) {
                    uf.union(pair[0].1, pair[1].1);
                }
            }
            // groups in order of their first edge
            let mut root_group = vec![usize::MAX; e];
            let mut groups: Vec<Group> = Vec::new();
            for i in 0..e {
                let r = uf.find(i);
                if root_group[r] == usize::MAX {
                    root_group[r] = groups.len();
                    groups.push(Group::default());
                }
                let gr = &mut groups[root_group[r]];
                gr.edges.push(i);
                let (a, b) = g.ends(i);
                gr.touches_x |= a == x || b == x;
                gr.touches_y |= a == y || b == y;
            }
            let k = groups.len();
            if !(2..=24).contains(&k) {
                // more than 2^23 assignments is not desk scale
                continue;
            }
            // group 0 holds edge 0 and always sits in s
            for bits in 0u32..1 << (k - 1) {
                let in_s = |gi: usize| gi == 0 || bits >> (gi - 1) & 1 == 1;
                let (mut ns, mut sx, mut sy, mut tx, mut ty) = (0, false, false, false, false);
                for (gi, gr) in groups.iter().enumerate() {
                    if in_s(gi) {
                        ns += gr.edges.len();
                        sx |= gr.touches_x;
                        sy |= gr.touches_y;
                    } else {
                        tx |= gr.touches_x;
                        ty |= gr.touches_y;
                    }
                }
                if ns < 2 || e - ns < 2 || !(sx && sy && tx && ty) {
                    continue;
                }
                let mut s_mask = vec![false; e];
                for (gi, gr) in groups.iter().enumerate() {
                    if in_s(gi) {
                        for &i in &gr.edges {
                            s_mask[i] = true;
                        }
                    }
                }
                let pick = |want: bool| -> Vec<String> {
                    (0..e)
                        .filter(|&i| s_mask[i] == want)
                        .map(|i| g.edges()[i].id.clone())
                        .collect()
                };
                out.push(TwoSeparation {
                    s: pick(true),
                    t: pick(false),
                    cut_pair: [g.vertices()[x].clone(), g.vertices()[y].clone()],
                });
            }
        }
    }
    out
}

#[derive(Default)]
struct Group {
    edges: Vec<usize>,
    touches_x: bool,
    touches_y: bool,
}

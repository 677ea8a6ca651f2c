use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::separation::{validate_separation, TwoSeparation};
use crate::error::{Error, Result};
use crate::graph::{cut_vertices, Edge, Graph, UnionFind};

/// Which cut vertex to split and which incident side moves to the new copy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitSpec {
    pub cut_vertex: String,
    pub side: Vec<String>,
}

/// A replayable step. Serialized with an `"op"` tag.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum Operation {
    Reversal {
        s: Vec<String>,
        cut_pair: [String; 2],
    },
    Split {
        cut_vertex: String,
        side: Vec<String>,
        /// Id given to the copy of the cut vertex; chosen automatically when absent.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        new_vertex: Option<String>,
    },
}

impl Operation {
    pub fn apply(&self, g: &Graph) -> Result<Graph> {
        match self {
            Operation::Reversal { s, cut_pair } => {
                let sep = TwoSeparation::from_side(g, s)?;
                if sorted_pair(&sep.cut_pair) != sorted_pair(cut_pair) {
                    return Err(Error::InvalidSeparation(format!(
                        "side meets the rest in {:?}, not {:?}",
                        sep.cut_pair, cut_pair
                    )));
                }
                reversal(g, &sep)
            }
            Operation::Split {
                cut_vertex,
                side,
                new_vertex,
            } => {
                let spec = SplitSpec {
                    cut_vertex: cut_vertex.clone(),
                    side: side.clone(),
                };
                match new_vertex {
                    Some(name) => split_named(g, &spec, name),
                    None => split(g, &spec),
                }
            }
        }
    }
}

fn sorted_pair(p: &[String; 2]) -> (&str, &str) {
    if p[0] <= p[1] {
        (&p[0], &p[1])
    } else {
        (&p[1], &p[0])
    }
}

/// Replays a sequence of operations.
pub fn apply_operations(g: &Graph, ops: &[Operation]) -> Result<Graph> {
    ops.iter().try_fold(g.clone(), |acc, op| op.apply(&acc))
}

/// Swaps `x` and `y` on every edge of side `s`. Edge ids, edge order and the
/// `t` side are untouched; an `s` edge joining `x` to `y` stays as it is.
pub fn reversal(g: &Graph, sep: &TwoSeparation) -> Result<Graph> {
    validate_separation(g, sep)?;
    let [x, y] = &sep.cut_pair;
    let in_s: BTreeSet<&str> = sep.s.iter().map(String::as_str).collect();
    let swap = |w: &String| -> String {
        if w == x {
            y.clone()
        } else if w == y {
            x.clone()
        } else {
            w.clone()
        }
    };
    let edges = g
        .edges()
        .iter()
        .map(|e| {
            let spans_pair = (&e.u == x && &e.v == y) || (&e.u == y && &e.v == x);
            if in_s.contains(e.id.as_str()) && !spans_pair {
                Edge::new(e.id.clone(), swap(&e.u), swap(&e.v))
            } else {
                e.clone()
            }
        })
        .collect();
    g.with_edges(edges)
}

/// First of `c'`, `c''`, ... not already a vertex of `g`.
fn fresh_name(g: &Graph, c: &str) -> String {
    let mut name = format!("{c}'");
    while g.contains_vertex(&name) {
        name.push('\'');
    }
    name
}

/// Splits a cut vertex: the edges of `spec.side` are reattached to a fresh copy of it.
pub fn split(g: &Graph, spec: &SplitSpec) -> Result<Graph> {
    split_named(g, spec, &fresh_name(g, &spec.cut_vertex))
}

fn split_named(g: &Graph, spec: &SplitSpec, new_vertex: &str) -> Result<Graph> {
    let c = spec.cut_vertex.as_str();
    let bad = |m: String| Err(Error::InvalidSplit(m));
    if !g.contains_vertex(c) {
        return Err(Error::UnknownVertex(c.to_string()));
    }
    if g.contains_vertex(new_vertex) {
        return bad(format!("vertex `{new_vertex}` already exists"));
    }
    if !cut_vertices(g).contains(c) {
        return bad(format!("`{c}` is not a cut vertex"));
    }
    let side: BTreeSet<usize> = g.edge_indices(&spec.side)?.into_iter().collect();
    if side.is_empty() || side.len() == g.edge_count() {
        return bad("both sides must be nonempty".into());
    }
    let mut vs = BTreeSet::new();
    let mut vr = BTreeSet::new();
    for (i, e) in g.edges().iter().enumerate() {
        let bucket = if side.contains(&i) { &mut vs } else { &mut vr };
        bucket.insert(e.u.as_str());
        bucket.insert(e.v.as_str());
    }
    let shared: Vec<&str> = vs.intersection(&vr).copied().collect();
    if shared != [c] {
        return bad(format!("sides meet in {shared:?}, not only at `{c}`"));
    }
    let mut vertices = g.vertices().to_vec();
    vertices.push(new_vertex.to_string());
    let edges = g
        .edges()
        .iter()
        .enumerate()
        .map(|(i, e)| {
            if !side.contains(&i) {
                return e.clone();
            }
            let re = |w: &String| {
                if w == c {
                    new_vertex.to_string()
                } else {
                    w.clone()
                }
            };
            Edge::new(e.id.clone(), re(&e.u), re(&e.v))
        })
        .collect();
    Graph::new(vertices, edges)
}

/// Splits every cut vertex until each block is its own component. Returns the
/// result and the splits performed, which replay on `g` through [`apply_operations`].
pub fn split_fully(g: &Graph) -> (Graph, Vec<Operation>) {
    let mut cur = g.clone();
    let mut ops = Vec::new();
    while let Some(c) = cut_vertices(&cur).into_iter().next() {
        let ci = cur.vertex_index(&c).expect("cut vertex exists");
        let e = cur.edge_count();
        let mut uf = UnionFind::new(e);
        for (w, incident) in cur.adjacency().iter().enumerate() {
            if w == ci {
                continue;
            }
            for pair in incident.windows(2) {
                uf.union(pair[0].1, pair[1].1);
            }
        }
        let first = (0..e)
            .find(|&i| {
                let (a, b) = cur.ends(i);
                a == ci || b == ci
            })
            .expect("cut vertex has an edge");
        let root = uf.find(first);
        let side: Vec<String> = (0..e)
            .filter(|&i| uf.find(i) == root)
            .map(|i| cur.edges()[i].id.clone())
            .collect();
        let new_vertex = fresh_name(&cur, &c);
        let op = Operation::Split {
            cut_vertex: c,
            side,
            new_vertex: Some(new_vertex),
        };
        cur = op.apply(&cur).expect("component side splits a cut vertex");
        ops.push(op);
    }
    (cur, ops)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{block_decomposition, components, graph_isomorphic};

    fn g(pairs: &[(&str, &str)]) -> Graph {
        Graph::from_pairs(pairs).unwrap()
    }

    fn component_count(g: &Graph) -> usize {
        components(&g.without_isolated())
            .into_iter()
            .max()
            .map_or(0, |m| m + 1)
    }

    #[test]
    fn bowtie_split_gives_two_triangles() {
        let b = g(&[
            ("a", "b"),
            ("b", "m"),
            ("m", "a"),
            ("m", "c"),
            ("c", "d"),
            ("d", "m"),
        ]);
        let spec = SplitSpec {
            cut_vertex: "m".into(),
            side: vec!["e3".into(), "e4".into(), "e5".into()],
        };
        let s = split(&b, &spec).unwrap();
        assert_eq!(s.vertex_count(), 6);
        assert_eq!(s.edge_ids(), b.edge_ids());
        assert_eq!(component_count(&s), 2);
        assert!(s.contains_vertex("m'"));
    }

    #[test]
    fn path_split_gives_two_edges() {
        let p = g(&[("a", "b"), ("b", "c")]);
        let spec = SplitSpec {
            cut_vertex: "b".into(),
            side: vec!["e1".into()],
        };
        let s = split(&p, &spec).unwrap();
        assert_eq!(s.vertex_count(), 4);
        assert_eq!(component_count(&s), 2);
    }

    #[test]
    fn triangle_with_pendant_split() {
        let t = g(&[("a", "b"), ("b", "c"), ("c", "a"), ("a", "d")]);
        let spec = SplitSpec {
            cut_vertex: "a".into(),
            side: vec!["e3".into()],
        };
        let s = split(&t, &spec).unwrap();
        let bd = block_decomposition(&s);
        assert_eq!(bd.blocks.len(), 2);
        assert!(bd.cut_vertices.is_empty());
    }

    #[test]
    fn invalid_splits() {
        let t = g(&[("a", "b"), ("b", "c"), ("c", "a"), ("a", "d")]);
        let not_cut = SplitSpec {
            cut_vertex: "b".into(),
            side: vec!["e0".into()],
        };
        assert!(matches!(split(&t, &not_cut), Err(Error::InvalidSplit(_))));
        let not_separating = SplitSpec {
            cut_vertex: "a".into(),
            side: vec!["e0".into()],
        };
        assert!(matches!(
            split(&t, &not_separating),
            Err(Error::InvalidSplit(_))
        ));
    }

    #[test]
    fn reversal_matches_hand_computation() {
        let base = g(&[("x", "a"), ("a", "b"), ("b", "y"), ("x", "c"), ("c", "y")]);
        let sep = TwoSeparation::from_side(&base, &["e0", "e1", "e2"]).unwrap();
        let r = reversal(&base, &sep).unwrap();
        let ends: Vec<(String, String)> = r
            .edges()
            .iter()
            .map(|e| (e.u.clone(), e.v.clone()))
            .collect();
        let expect = [("y", "a"), ("a", "b"), ("b", "x"), ("x", "c"), ("c", "y")];
        let expect: Vec<(String, String)> = expect
            .iter()
            .map(|(u, v)| (u.to_string(), v.to_string()))
            .collect();
        assert_eq!(ends, expect);
        assert_eq!(reversal(&r, &sep).unwrap(), base);
    }

    #[test]
    fn square_reversal_is_isomorphic() {
        let sq = g(&[("x", "a"), ("a", "y"), ("y", "b"), ("b", "x")]);
        let sep = TwoSeparation::from_side(&sq, &["e0", "e1"]).unwrap();
        let r = reversal(&sq, &sep).unwrap();
        assert!(graph_isomorphic(&sq, &r).is_some());
    }

    #[test]
    fn cut_pair_edge_is_fixed() {
        let base = g(&[("x", "y"), ("x", "a"), ("a", "y"), ("x", "b"), ("b", "y")]);
        let sep = TwoSeparation::from_side(&base, &["e0", "e1", "e2"]).unwrap();
        let r = reversal(&base, &sep).unwrap();
        assert_eq!(r.edge("e0").unwrap(), base.edge("e0").unwrap());
    }

    #[test]
    fn split_fully_yields_blocks_and_replays() {
        let t = g(&[
            ("a", "b"),
            ("b", "c"),
            ("c", "a"),
            ("a", "d"),
            ("d", "e"),
            ("c", "f"),
        ]);
        let (s, ops) = split_fully(&t);
        assert!(cut_vertices(&s).is_empty());
        assert_eq!(component_count(&s), block_decomposition(&t).blocks.len());
        assert_eq!(apply_operations(&t, &ops).unwrap(), s);
    }

    #[test]
    fn operation_json_shape() {
        let op = Operation::Reversal {
            s: vec!["e0".into()],
            cut_pair: ["x".into(), "y".into()],
        };
        let j = serde_json::to_value(&op).unwrap();
        assert_eq!(
            j,
            serde_json::json!({"op":"reversal","s":["e0"],"cut_pair":["x","y"]})
        );
        let back: Operation = serde_json::from_value(j).unwrap();
        assert_eq!(back, op);
    }
}

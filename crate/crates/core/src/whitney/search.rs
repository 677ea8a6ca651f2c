use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::one_iso_key;
use super::ops::{apply_operations, reversal, split_fully, Operation};
use super::separation::enumerate_two_separations;
use crate::error::Result;
use crate::graph::{canonical_form, graph_isomorphic, CanonicalForm, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOptions {
    pub max_depth: usize,
    pub max_orbit: usize,
    /// Skip reversals that add parallel edges.
    pub simple_only: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            max_depth: 8,
            max_orbit: 100_000,
            simple_only: false,
        }
    }
}

impl SearchOptions {
    /// No depth limit; only the orbit-size cap can stop the search early.
    pub fn orbit_complete() -> Self {
        SearchOptions {
            max_depth: usize::MAX,
            ..Self::default()
        }
    }
}

/// Replayable evidence that two graphs are 2-isomorphic: `ops` applied to the
/// first graph and `target_ops` applied to the second give isomorphic graphs
/// once isolated vertices are dropped. `ops` is the reversal path followed by
/// the splits that separate all blocks; `target_ops` only splits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoIsoWitness {
    pub ops: Vec<Operation>,
    pub target_ops: Vec<Operation>,
    pub reversals: usize,
}

impl TwoIsoWitness {
    pub fn verify(&self, g: &Graph, h: &Graph) -> Result<bool> {
        let a = apply_operations(g, &self.ops)?.without_isolated();
        let b = apply_operations(h, &self.target_ops)?.without_isolated();
        Ok(graph_isomorphic(&a, &b).is_some())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "lowercase")]
pub enum SearchOutcome {
    Equivalent {
        witness: TwoIsoWitness,
    },
    /// The whole reversal orbit was visited without reaching the target.
    Exhausted {
        orbit_size: usize,
    },
    /// A depth or size cap stopped the search before the orbit was complete.
    Unknown {
        reason: String,
        explored: usize,
    },
}

impl SearchOutcome {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, SearchOutcome::Equivalent { .. })
    }
}

/// One isomorphism class in a reversal orbit, with a representative and the
/// shortest reversal path reaching it from the start graph.
#[derive(Debug, Clone)]
pub struct OrbitNode {
    pub graph: Graph,
    pub path: Vec<Operation>,
    pub form: CanonicalForm,
    pub one_iso: Vec<crate::graph::CanonicalForm>,
}

#[derive(Debug, Clone)]
pub struct ReversalOrbit {
    pub nodes: Vec<OrbitNode>,
    pub complete: bool,
    pub stop_reason: Option<String>,
}

impl ReversalOrbit {
    /// Position of the first node 1-isomorphic to `h`.
    pub fn find_one_isomorphic(&self, h: &Graph) -> Option<usize> {
        let key = one_iso_key(h);
        self.nodes.iter().position(|n| n.one_iso == key)
    }
}

/// Breadth-first walk over the reversal orbit of `g`, one node per
/// isomorphism class. `stop` is consulted on each node as it is discovered;
/// returning true ends the walk early with that node last.
fn walk_orbit(
    g: &Graph,
    opts: &SearchOptions,
    mut stop: impl FnMut(&OrbitNode) -> bool,
) -> ReversalOrbit {
    let start = OrbitNode {
        graph: g.clone(),
        path: Vec::new(),
        form: canonical_form(g),
        one_iso: one_iso_key(g),
    };
    let mut seen: HashSet<CanonicalForm> = HashSet::from([start.form.clone()]);
    let done = stop(&start);
    let mut nodes = vec![start];
    if done {
        return ReversalOrbit {
            nodes,
            complete: false,
            stop_reason: None,
        };
    }
    let mut head = 0;
    while head < nodes.len() {
        let depth = nodes[head].path.len();
        let parent = nodes[head].graph.clone();
        let parent_excess = parent.parallel_excess();
        for sep in enumerate_two_separations(&parent) {
            let child = reversal(&parent, &sep).expect("enumerated separations are valid");
            if opts.simple_only && child.parallel_excess() > parent_excess {
                continue;
            }
            let form = canonical_form(&child);
            if seen.contains(&form) {
                continue;
            }
            if depth >= opts.max_depth {
                return ReversalOrbit {
                    nodes,
                    complete: false,
                    stop_reason: Some(format!("depth limit {} reached", opts.max_depth)),
                };
            }
            if nodes.len() >= opts.max_orbit {
                return ReversalOrbit {
                    nodes,
                    complete: false,
                    stop_reason: Some(format!("orbit cap {} reached", opts.max_orbit)),
                };
            }
            seen.insert(form.clone());
            let mut path = nodes[head].path.clone();
            path.push(Operation::Reversal {
                s: sep.s.clone(),
                cut_pair: sep.cut_pair.clone(),
            });
            let node = OrbitNode {
                one_iso: one_iso_key(&child),
                graph: child,
                path,
                form,
            };
            let done = stop(&node);
            nodes.push(node);
            if done {
                return ReversalOrbit {
                    nodes,
                    complete: false,
                    stop_reason: None,
                };
            }
        }
        head += 1;
    }
    ReversalOrbit {
        nodes,
        complete: true,
        stop_reason: None,
    }
}

/// The full reversal orbit of `g` up to isomorphism, within the caps of `opts`.
pub fn reversal_orbit(g: &Graph, opts: &SearchOptions) -> ReversalOrbit {
    walk_orbit(g, opts, |_| false)
}

/// Searches the reversal orbit of `g` for a graph 1-isomorphic to `h`.
///
/// Nodes are visited breadth-first with separations in enumeration order, so
/// a returned witness uses as few reversals as possible.
pub fn two_isomorphic_search(g: &Graph, h: &Graph, opts: &SearchOptions) -> SearchOutcome {
    if g.edge_count() != h.edge_count() {
        return SearchOutcome::Exhausted { orbit_size: 0 };
    }
    let target = one_iso_key(h);
    let orbit = walk_orbit(g, opts, |n| n.one_iso == target);
    let last = orbit.nodes.last().expect("orbit holds the start graph");
    if last.one_iso == target {
        let (_, splits) = split_fully(&last.graph);
        let (_, target_ops) = split_fully(h);
        let mut ops = last.path.clone();
        let reversals = ops.len();
        ops.extend(splits);
        return SearchOutcome::Equivalent {
            witness: TwoIsoWitness {
                ops,
                target_ops,
                reversals,
            },
        };
    }
    if orbit.complete {
        SearchOutcome::Exhausted {
            orbit_size: orbit.nodes.len(),
        }
    } else {
        SearchOutcome::Unknown {
            reason: orbit.stop_reason.unwrap_or_default(),
            explored: orbit.nodes.len(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::whitney::TwoSeparation;

    fn theta_with_tail() -> Graph {
        // two x-y routes of different lengths plus a pendant on the long one
        Graph::from_pairs(&[
            ("x", "a"),
            ("a", "b"),
            ("b", "y"),
            ("x", "c"),
            ("c", "y"),
            ("a", "t"),
        ])
        .unwrap()
    }

    #[test]
    fn single_reversal_is_found() {
        let g = theta_with_tail();
        for sep in enumerate_two_separations(&g) {
            let h = reversal(&g, &sep).unwrap();
            match two_isomorphic_search(&g, &h, &SearchOptions::default()) {
                SearchOutcome::Equivalent { witness } => {
                    assert!(witness.reversals <= 1);
                    assert!(witness.verify(&g, &h).unwrap());
                }
                other => panic!("expected a witness, got {other:?}"),
            }
        }
    }

    #[test]
    fn different_edge_counts_are_rejected() {
        let k4 = crate::generate::complete(4);
        let sub = Graph::from_pairs(&[
            ("v0", "v1"),
            ("v0", "v2"),
            ("v0", "v3"),
            ("v1", "v2"),
            ("v1", "v3"),
            ("v2", "m"),
            ("m", "v3"),
        ])
        .unwrap();
        assert!(matches!(
            two_isomorphic_search(&k4, &sub, &SearchOptions::default()),
            SearchOutcome::Exhausted { .. }
        ));
    }

    #[test]
    fn non_equivalent_exhausts() {
        let c6 = crate::generate::cycle(6);
        let k4 = crate::generate::complete(4);
        assert!(matches!(
            two_isomorphic_search(&c6, &k4, &SearchOptions::default()),
            SearchOutcome::Exhausted { orbit_size: 1 }
        ));
    }

    #[test]
    fn one_isomorphic_pair_after_reversal() {
        // triangle abc with a-d-e path, versus triangle with edges a-d and b-e
        let g = Graph::from_pairs(&[("a", "b"), ("b", "c"), ("c", "a"), ("a", "d"), ("d", "e")])
            .unwrap();
        let h = Graph::from_pairs(&[("a", "b"), ("b", "c"), ("c", "a"), ("a", "d"), ("b", "e")])
            .unwrap();
        let out = two_isomorphic_search(&g, &h, &SearchOptions::default());
        let SearchOutcome::Equivalent { witness } = out else {
            panic!("expected equivalence");
        };
        assert_eq!(witness.reversals, 0);
        assert!(witness.verify(&g, &h).unwrap());
    }

    #[test]
    fn depth_cap_reports_unknown() {
        let g = theta_with_tail();
        let sep = TwoSeparation::from_side(&g, &["e0", "e1", "e2", "e5"]).unwrap();
        let h = reversal(&g, &sep).unwrap();
        let opts = SearchOptions {
            max_depth: 0,
            ..SearchOptions::default()
        };
        if crate::graph::graph_isomorphic(&g, &h).is_none() {
            assert!(matches!(
                two_isomorphic_search(&g, &h, &opts),
                SearchOutcome::Unknown { .. }
            ));
        }
    }

    #[test]
    fn simple_only_changes_nothing_on_simple_graphs() {
        // A reversal acts on the s side by swapping x and y, so it cannot pair
        // an s edge with a t edge; simple graphs stay simple.
        let g = Graph::from_pairs(&[
            ("x", "a"),
            ("a", "y"),
            ("x", "b"),
            ("b", "c"),
            ("c", "y"),
            ("x", "y"),
            ("a", "d"),
        ])
        .unwrap();
        let strict = SearchOptions {
            simple_only: true,
            ..SearchOptions::orbit_complete()
        };
        let orbit = reversal_orbit(&g, &strict);
        let all = reversal_orbit(&g, &SearchOptions::orbit_complete());
        assert!(orbit.complete && all.complete);
        assert!(all.nodes.iter().all(|n| n.graph.is_simple()));
        assert_eq!(orbit.nodes.len(), all.nodes.len());
    }
}

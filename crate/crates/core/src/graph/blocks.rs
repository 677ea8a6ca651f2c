use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::Graph;

/// Blocks (maximal 2-connected pieces and bridges) plus the cut vertices joining them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDecomposition {
    pub blocks: Vec<Graph>,
    pub cut_vertices: BTreeSet<String>,
}

struct LowLink<'a> {
    adj: &'a [Vec<(usize, usize)>],
    disc: Vec<usize>,
    low: Vec<usize>,
    timer: usize,
    edge_stack: Vec<usize>,
    blocks: Vec<Vec<usize>>,
    articulation: Vec<bool>,
}

impl LowLink<'_> {
    fn dfs(&mut self, v: usize, via: Option<usize>) {
        self.timer += 1;
        self.disc[v] = self.timer;
        self.low[v] = self.timer;
        let mut children = 0;
        for &(w, e) in &self.adj[v] {
            if Some(e) == via {
                continue;
            }
            if self.disc[w] == 0 {
                children += 1;
                self.edge_stack.push(e);
                self.dfs(w, Some(e));
                self.low[v] = self.low[v].min(self.low[w]);
                if self.low[w] >= self.disc[v] {
                    if via.is_some() {
                        self.articulation[v] = true;
                    }
                    let mut block = Vec::new();
                    while let Some(top) = self.edge_stack.pop() {
                        block.push(top);
                        if top == e {
                            break;
                        }
                    }
                    self.blocks.push(block);
                }
            } else if self.disc[w] < self.disc[v] {
                // back edge (or parallel copy of the tree edge)
                self.edge_stack.push(e);
                self.low[v] = self.low[v].min(self.disc[w]);
            }
        }
        if via.is_none() && children > 1 {
            self.articulation[v] = true;
        }
    }
}

fn low_link(g: &Graph) -> (Vec<Vec<usize>>, Vec<bool>) {
    let adj = g.adjacency();
    let n = g.vertex_count();
    let mut ll = LowLink {
        adj: &adj,
        disc: vec![0; n],
        low: vec![0; n],
        timer: 0,
        edge_stack: Vec::new(),
        blocks: Vec::new(),
        articulation: vec![false; n],
    };
    for v in 0..n {
        if ll.disc[v] == 0 {
            ll.dfs(v, None);
        }
    }
    (ll.blocks, ll.articulation)
}

/// Vertices whose removal increases the number of connected components.
pub fn cut_vertices(g: &Graph) -> BTreeSet<String> {
    let (_, art) = low_link(g);
    art.iter()
        .enumerate()
        .filter(|(_, &a)| a)
        .map(|(i, _)| g.vertices()[i].clone())
        .collect()
}

/// Splits `g` into blocks. Each block keeps the original edge ids; blocks are
/// ordered by their first edge in `g`'s edge order.
pub fn block_decomposition(g: &Graph) -> BlockDecomposition {
    let (mut blocks, art) = low_link(g);
    for b in &mut blocks {
        b.sort_unstable();
    }
    blocks.sort();
    let blocks = blocks
        .into_iter()
        .map(|b| {
            let edges = b.into_iter().map(|i| g.edges()[i].clone()).collect();
            Graph::new(Vec::<String>::new(), edges).expect("sub-multigraph of a valid graph")
        })
        .collect();
    let cut_vertices = art
        .iter()
        .enumerate()
        .filter(|(_, &a)| a)
        .map(|(i, _)| g.vertices()[i].clone())
        .collect();
    BlockDecomposition {
        blocks,
        cut_vertices,
    }
}

/// Component label per vertex index, numbered from 0 in vertex order.
pub fn components(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut uf = UnionFind::new(n);
    for i in 0..g.edge_count() {
        let (a, b) = g.ends(i);
        uf.union(a, b);
    }
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    let mut out = vec![0; n];
    for (v, slot) in out.iter_mut().enumerate() {
        let r = uf.find(v);
        if label[r] == usize::MAX {
            label[r] = next;
            next += 1;
        }
        *slot = label[r];
    }
    out
}

/// True iff `g` has no cycle. Two parallel edges already form one.
pub fn is_forest(g: &Graph) -> bool {
    let mut uf = UnionFind::new(g.vertex_count());
    (0..g.edge_count()).all(|i| {
        let (a, b) = g.ends(i);
        uf.union(a, b)
    })
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

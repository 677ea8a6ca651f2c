//! Labeled multigraphs with opaque string ids.
//!
//! Vertices are kept sorted by id so every index-based algorithm in the crate
//! breaks ties the same way. Edges keep their insertion order and may be
//! parallel; self-loops are rejected at construction.

mod blocks;
pub mod canon;
mod iso;
mod parse;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub(crate) use blocks::UnionFind;
pub use blocks::{block_decomposition, components, cut_vertices, is_forest, BlockDecomposition};
pub use canon::{canonical_form, CanonicalForm};
pub use iso::{graph_isomorphic, VertexBijection};

/// One identified edge. The endpoint order carries no meaning.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub id: String,
    pub u: String,
    pub v: String,
}

impl Edge {
    pub fn new(id: impl Into<String>, u: impl Into<String>, v: impl Into<String>) -> Self {
        Edge {
            id: id.into(),
            u: u.into(),
            v: v.into(),
        }
    }

    /// The endpoint opposite `w`, if `w` is an endpoint.
    pub fn other(&self, w: &str) -> Option<&str> {
        if self.u == w {
            Some(&self.v)
        } else if self.v == w {
            Some(&self.u)
        } else {
            None
        }
    }

    pub fn touches(&self, w: &str) -> bool {
        self.u == w || self.v == w
    }
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

/// A finite undirected multigraph without self-loops.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    ends: Vec<(usize, usize)>,
    index: HashMap<String, usize>,
}

impl TryFrom<GraphRepr> for Graph {
    type Error = Error;

    fn try_from(r: GraphRepr) -> Result<Self> {
        Graph::new(r.vertices, r.edges)
    }
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> Self {
        GraphRepr {
            vertices: g.vertices,
            edges: g.edges,
        }
    }
}

impl Graph {
    /// Builds a graph from explicit vertices plus edges. Edge endpoints missing
    /// from `vertices` are added; duplicate explicit vertices are an error.
    pub fn new<I, S>(vertices: I, edges: Vec<Edge>) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut set = BTreeSet::new();
        for v in vertices {
            let v = v.into();
            if !set.insert(v.clone()) {
                return Err(Error::DuplicateVertex(v));
            }
        }
        let mut ids = BTreeSet::new();
        for e in &edges {
            if e.u == e.v {
                return Err(Error::SelfLoop(e.u.clone()));
            }
            if !ids.insert(e.id.as_str()) {
                return Err(Error::DuplicateEdge(e.id.clone()));
            }
            set.insert(e.u.clone());
            set.insert(e.v.clone());
        }
        let vertices: Vec<String> = set.into_iter().collect();
        let index: HashMap<String, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i))
            .collect();
        let ends = edges.iter().map(|e| (index[&e.u], index[&e.v])).collect();
        Ok(Graph {
            vertices,
            edges,
            ends,
            index,
        })
    }

    /// Builds a graph from endpoint pairs, naming the edges `e0, e1, ...`.
    pub fn from_pairs<S: AsRef<str>>(pairs: &[(S, S)]) -> Result<Self> {
        let edges = pairs
            .iter()
            .enumerate()
            .map(|(i, (u, v))| Edge::new(format!("e{i}"), u.as_ref(), v.as_ref()))
            .collect();
        Graph::new(Vec::<String>::new(), edges)
    }

    /// Parses the line-oriented edge-list format (`u v` or `id: u v`, `#` comments).
    pub fn parse(text: &str) -> Result<Self> {
        parse::parse_graph(text)
    }

    /// Renders the graph in the edge-list format accepted by [`Graph::parse`].
    /// Isolated vertices are not representable and are dropped.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for e in &self.edges {
            out.push_str(&format!("{}: {} {}\n", e.id, e.u, e.v));
        }
        out
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_index(&self, v: &str) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    pub fn edge(&self, id: &str) -> Option<&Edge> {
        self.edges.iter().find(|e| e.id == id)
    }

    pub fn contains_vertex(&self, v: &str) -> bool {
        self.index.contains_key(v)
    }

    /// Vertex indices of edge `i`.
    pub fn ends(&self, i: usize) -> (usize, usize) {
        self.ends[i]
    }

    pub fn edge_ids(&self) -> Vec<String> {
        self.edges.iter().map(|e| e.id.clone()).collect()
    }

    /// Incidence lists: for each vertex, `(neighbor, edge index)` in edge order.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for (i, &(a, b)) in self.ends.iter().enumerate() {
            adj[a].push((b, i));
            adj[b].push((a, i));
        }
        adj
    }

    pub fn degree(&self, v: &str) -> Option<usize> {
        let i = self.vertex_index(v)?;
        Some(self.ends.iter().filter(|&&(a, b)| a == i || b == i).count())
    }

    /// Symmetric matrix of edge multiplicities.
    pub fn multiplicity_matrix(&self) -> Vec<Vec<u32>> {
        let n = self.vertices.len();
        let mut m = vec![vec![0u32; n]; n];
        for &(a, b) in &self.ends {
            m[a][b] += 1;
            m[b][a] += 1;
        }
        m
    }

    /// True when no two edges share the same endpoint pair.
    pub fn is_simple(&self) -> bool {
        self.parallel_excess() == 0
    }

    /// Number of edges beyond the first in every parallel class.
    pub fn parallel_excess(&self) -> usize {
        let mut seen = BTreeMap::new();
        for &(a, b) in &self.ends {
            *seen.entry((a.min(b), a.max(b))).or_insert(0usize) += 1;
        }
        seen.values().map(|c| c - 1).sum()
    }

    /// Resolves edge ids to indices, rejecting unknown ids.
    pub fn edge_indices<S: AsRef<str>>(&self, ids: &[S]) -> Result<Vec<usize>> {
        ids.iter()
            .map(|id| {
                self.edge_index(id.as_ref())
                    .ok_or_else(|| Error::UnknownEdge(id.as_ref().to_string()))
            })
            .collect()
    }

    /// Bitmask over edge indices. Fails past 128 edges.
    pub fn edge_mask<S: AsRef<str>>(&self, ids: &[S]) -> Result<u128> {
        self.check_mask_width()?;
        Ok(self
            .edge_indices(ids)?
            .into_iter()
            .fold(0u128, |m, i| m | (1u128 << i)))
    }

    pub(crate) fn check_mask_width(&self) -> Result<()> {
        if self.edges.len() > 128 {
            Err(Error::TooManyEdges(self.edges.len()))
        } else {
            Ok(())
        }
    }

    /// Edge ids selected by a mask, in edge order.
    pub fn ids_of_mask(&self, mask: u128) -> Vec<String> {
        self.edges
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, e)| e.id.clone())
            .collect()
    }

    /// Vertices incident to at least one edge of the mask.
    pub fn vertices_of_mask(&self, mask: u128) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for (i, &(a, b)) in self.ends.iter().enumerate() {
            if mask >> i & 1 == 1 {
                out.insert(a);
                out.insert(b);
            }
        }
        out
    }

    /// Same vertex set with the listed edges removed.
    pub fn delete_edges<S: AsRef<str>>(&self, remove: &[S]) -> Result<Graph> {
        let idx: BTreeSet<usize> = self.edge_indices(remove)?.into_iter().collect();
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|(i, _)| !idx.contains(i))
            .map(|(_, e)| e.clone())
            .collect();
        Graph::new(self.vertices.clone(), edges)
    }

    /// The subgraph induced by an edge subset: only those edges and their endpoints.
    /// Edges keep the order in which they appear in `keep`.
    pub fn edge_induced<S: AsRef<str>>(&self, keep: &[S]) -> Result<Graph> {
        let idx = self.edge_indices(keep)?;
        let edges = idx.into_iter().map(|i| self.edges[i].clone()).collect();
        Graph::new(Vec::<String>::new(), edges)
    }

    /// Drops vertices with no incident edge.
    pub fn without_isolated(&self) -> Graph {
        Graph::new(Vec::<String>::new(), self.edges.clone()).expect("edges already validated")
    }

    /// Renames vertices and edges. Ids absent from a map keep their name.
    pub fn relabel(
        &self,
        vertex_map: &BTreeMap<String, String>,
        edge_map: &BTreeMap<String, String>,
    ) -> Result<Graph> {
        let rv = |v: &String| vertex_map.get(v).cloned().unwrap_or_else(|| v.clone());
        let vertices: Vec<String> = self.vertices.iter().map(rv).collect();
        let edges = self
            .edges
            .iter()
            .map(|e| Edge {
                id: edge_map.get(&e.id).cloned().unwrap_or_else(|| e.id.clone()),
                u: rv(&e.u),
                v: rv(&e.v),
            })
            .collect();
        Graph::new(vertices, edges)
    }

    /// Replaces the edge list, keeping the vertex set.
    pub(crate) fn with_edges(&self, edges: Vec<Edge>) -> Result<Graph> {
        Graph::new(self.vertices.clone(), edges)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("graph serializes")
    }
}

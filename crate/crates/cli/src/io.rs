use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use measiso_core::generate;
use measiso_core::{EdgeAxisMap, Graph, MeasurementPoint};

/// Reads a graph file: JSON when the first non-blank character is `{`,
/// the edge-list format otherwise.
pub fn read_graph(path: impl AsRef<Path>) -> Result<Graph> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_graph(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    if text.trim_start().starts_with('{') {
        Ok(serde_json::from_str(text)?)
    } else {
        Ok(Graph::parse(text)?)
    }
}

/// `k<n>`, `c<n>`, `p<n>` (path with n edges) and `ladder<n>`.
pub fn builtin_graph(name: &str) -> Option<Graph> {
    let num = |prefix: &str| name.strip_prefix(prefix)?.parse::<usize>().ok();
    if let Some(n) = num("ladder") {
        return Some(ladder(n));
    }
    if let Some(n) = num("k").filter(|&n| n >= 2) {
        return Some(generate::complete(n));
    }
    if let Some(n) = num("c").filter(|&n| n >= 2) {
        return Some(generate::cycle(n));
    }
    if let Some(n) = num("p").filter(|&n| n >= 1) {
        return Some(generate::path(n));
    }
    None
}

/// A builtin name, or else a graph file.
pub fn graph_arg(spec: &str) -> Result<Graph> {
    match builtin_graph(spec) {
        Some(g) => Ok(g),
        None => read_graph(spec),
    }
}

/// `k` squares in a row, sharing rungs.
pub fn ladder(k: usize) -> Graph {
    let mut pairs = Vec::new();
    for i in 0..=k {
        pairs.push((format!("a{i}"), format!("b{i}")));
        if i < k {
            pairs.push((format!("a{i}"), format!("a{}", i + 1)));
            pairs.push((format!("b{i}"), format!("b{}", i + 1)));
        }
    }
    Graph::from_pairs(&pairs).expect("ladder has no loops")
}

/// A point given inline as JSON, as a comma list in `g`'s edge order (or
/// along `axes`), or as `@file` holding JSON.
pub fn parse_point(spec: &str, g: Option<&Graph>, axes: Option<&str>) -> Result<MeasurementPoint> {
    let spec = spec.trim();
    if let Some(file) = spec.strip_prefix('@') {
        let text = fs::read_to_string(file).with_context(|| format!("reading {file}"))?;
        return Ok(serde_json::from_str(&text)?);
    }
    if spec.starts_with('{') {
        return Ok(serde_json::from_str(spec)?);
    }
    let coords = split_list(spec)
        .iter()
        .map(|c| {
            c.parse::<f64>()
                .with_context(|| format!("bad coordinate `{c}`"))
        })
        .collect::<Result<Vec<_>>>()?;
    let axes = match (axes, g) {
        (Some(a), _) => EdgeAxisMap::new(split_list(a))?,
        (None, Some(g)) => EdgeAxisMap::identity(g),
        (None, None) => bail!("a comma-list point needs --axes"),
    };
    if axes.len() != coords.len() {
        bail!("{} coordinates for {} axes", coords.len(), axes.len());
    }
    Ok(MeasurementPoint::new(axes, coords)?)
}

pub fn split_list(s: &str) -> Vec<String> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(str::to_string)
        .collect()
}

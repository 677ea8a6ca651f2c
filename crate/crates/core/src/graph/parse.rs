use std::collections::BTreeSet;

use super::{Edge, Graph};
use crate::error::{Error, Result};

pub(super) fn parse_graph(text: &str) -> Result<Graph> {
    let mut edges = Vec::new();
    let mut ids = BTreeSet::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let line_no = lineno + 1;
        let mut tokens: Vec<&str> = line.split_whitespace().collect();
        let mut id = None;
        if let Some(first) = tokens.first() {
            if let Some(name) = first.strip_suffix(':') {
                if name.is_empty() {
                    return Err(Error::Parse {
                        line: line_no,
                        message: "empty edge id".into(),
                    });
                }
                id = Some(name.to_string());
                tokens.remove(0);
            } else if let Some((name, rest)) = first.split_once(':') {
                // `e1:a b` without a space after the colon
                id = Some(name.to_string());
                tokens[0] = rest;
            }
        }
        if tokens.len() != 2 {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected `u v`, found `{line}`"),
            });
        }
        let (u, v) = (tokens[0], tokens[1]);
        if u == v {
            return Err(Error::Parse {
                line: line_no,
                message: format!("self-loop on `{u}`"),
            });
        }
        let id = id.unwrap_or_else(|| format!("e{}", edges.len()));
        if !ids.insert(id.clone()) {
            return Err(Error::Parse {
                line: line_no,
                message: format!("duplicate edge id `{id}`"),
            });
        }
        edges.push(Edge::new(id, u, v));
    }
    Graph::new(Vec::<String>::new(), edges)
}

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::solver::{realize_best, RealizeOptions};
use super::{lengths_squared, Configuration, MeasurementPoint};
use crate::cycles::enumerate_cycles_capped;
use crate::error::{Error, Result};
use crate::graph::{is_forest, Graph};

/// Relative slack used when comparing sums of square roots.
const SQRT_SUM_SLACK: f64 = 1e-12;

/// Exact rules that rule a point out of a measurement set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateRule {
    /// Around a cycle, one length exceeds the sum of all the others. No
    /// framework in any dimension closes such a polygon.
    PolygonInequality,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub rule: CertificateRule,
    /// Edges of the violating cycle.
    pub edges: Vec<String>,
}

impl Certificate {
    /// Re-checks the rule against `target` on graph `g`.
    pub fn verify(&self, g: &Graph, target: &MeasurementPoint) -> bool {
        match self.rule {
            CertificateRule::PolygonInequality => {
                if !crate::cycles::is_cycle_subset(g, &self.edges).unwrap_or(false) {
                    return false;
                }
                let lengths: Option<Vec<f64>> = self
                    .edges
                    .iter()
                    .map(|e| target.get(e).map(f64::sqrt))
                    .collect();
                lengths.is_some_and(|l| polygon_violated(&l))
            }
        }
    }
}

fn polygon_violated(lengths: &[f64]) -> bool {
    let total: f64 = lengths.iter().sum();
    let max = lengths.iter().fold(0.0_f64, |m, &l| m.max(l));
    let rest = total - max;
    max > rest + SQRT_SUM_SLACK * total
}

/// Outcome of a membership query. Only exact rules produce `Infeasible`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MembershipVerdict {
    Realizable {
        witness: Configuration,
        residual: f64,
        method: String,
    },
    Infeasible {
        certificate: Certificate,
    },
    Unknown {
        residual: f64,
    },
}

impl MembershipVerdict {
    pub fn is_realizable(&self) -> bool {
        matches!(self, MembershipVerdict::Realizable { .. })
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self, MembershipVerdict::Infeasible { .. })
    }

    pub fn residual(&self) -> Option<f64> {
        match self {
            MembershipVerdict::Realizable { residual, .. }
            | MembershipVerdict::Unknown { residual } => Some(*residual),
            MembershipVerdict::Infeasible { .. } => None,
        }
    }

    /// Re-verifies the verdict: the witness residual is recomputed and must be
    /// within `tol`; a certificate must pass its rule again.
    pub fn verify(&self, g: &Graph, target: &MeasurementPoint, tol: f64) -> bool {
        match self {
            MembershipVerdict::Realizable { witness, .. } => {
                lengths_squared(g, witness, &target.axes)
                    .map(|m| m.max_abs_diff(target) <= tol)
                    .unwrap_or(false)
            }
            MembershipVerdict::Infeasible { certificate } => certificate.verify(g, target),
            MembershipVerdict::Unknown { .. } => false,
        }
    }
}

/// Exact realizability of a closed polygon with the given squared side lengths.
///
/// In two or more dimensions a polygon closes iff no side exceeds the sum of
/// the others. On a line it closes iff the sides can be signed to sum to zero;
/// that is decided by meet-in-the-middle subset sums, exhaustive for up to 30 sides.
pub fn cycle_realizable_exact(lengths_sq: &[f64], dim: usize) -> Result<bool> {
    let k = lengths_sq.len();
    if k < 2 {
        return Err(Error::InvalidMeasurement(
            "a cycle has at least two edges".into(),
        ));
    }
    if dim == 0 {
        return Err(Error::InvalidConfiguration(
            "dimension must be positive".into(),
        ));
    }
    if lengths_sq.iter().any(|y| !y.is_finite() || *y < 0.0) {
        return Err(Error::InvalidMeasurement(
            "squared lengths must be finite and nonnegative".into(),
        ));
    }
    let lengths: Vec<f64> = lengths_sq.iter().map(|y| y.sqrt()).collect();
    if dim >= 2 {
        return Ok(!polygon_violated(&lengths));
    }
    if k > 30 {
        return Err(Error::Unsupported(format!(
            "exact one-dimensional test needs at most 30 sides, got {k}"
        )));
    }
    Ok(signed_sum_vanishes(&lengths))
}

/// Whether some choice of signs makes the lengths sum to zero, within a
/// relative tolerance of 1e-12.
fn signed_sum_vanishes(lengths: &[f64]) -> bool {
    let total: f64 = lengths.iter().sum();
    if total == 0.0 {
        return true;
    }
    let tol = SQRT_SUM_SLACK * total;
    let (left, right) = lengths.split_at(lengths.len() / 2);
    let sums = |part: &[f64]| -> Vec<f64> {
        let mut out = vec![0.0];
        for &l in part {
            let extra: Vec<f64> = out.iter().map(|s| s + l).collect();
            out.extend(extra);
        }
        out
    };
    let l_sums = sums(left);
    let mut r_sums = sums(right);
    r_sums.sort_by(f64::total_cmp);
    let half = total / 2.0;
    l_sums.iter().any(|&a| {
        let want = half - a;
        let pos = r_sums.partition_point(|&b| b < want);
        [pos.checked_sub(1), Some(pos)]
            .into_iter()
            .flatten()
            .filter_map(|i| r_sums.get(i))
            .any(|&b| (2.0 * (a + b) - total).abs() <= tol)
    })
}

/// Decides membership of `target` in the measurement set of `g` in dimension `dim`.
///
/// 1. Forests: every nonnegative point is realized by laying each tree out
///    along the first axis, edge by edge.
/// 2. Every cycle is checked against the polygon inequality; a violation is
///    an infeasibility certificate valid in all dimensions.
/// 3. On a line, sign patterns on a spanning forest are enumerated exactly.
/// 4. Otherwise the numerical solver runs; failure yields `Unknown`.
pub fn is_member(
    g: &Graph,
    target: &MeasurementPoint,
    dim: usize,
    opts: &RealizeOptions,
) -> Result<MembershipVerdict> {
    if dim == 0 {
        return Err(Error::InvalidConfiguration(
            "dimension must be positive".into(),
        ));
    }
    let y = target.by_edge_index(g)?;
    if y.iter().any(|v| !v.is_finite() || *v < 0.0) {
        return Err(Error::InvalidMeasurement(
            "target must be finite and nonnegative".into(),
        ));
    }
    if is_forest(g) {
        let witness = lay_out_forest(g, &y, dim);
        return Ok(realizable(g, target, witness, "forest-layout"));
    }
    if let Ok(cycles) = enumerate_cycles_capped(g, opts.cycle_cap) {
        for &mask in cycles.masks() {
            let lengths: Vec<f64> = (0..g.edge_count())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| y[i].sqrt())
                .collect();
            if polygon_violated(&lengths) {
                return Ok(MembershipVerdict::Infeasible {
                    certificate: Certificate {
                        rule: CertificateRule::PolygonInequality,
                        edges: g.ids_of_mask(mask),
                    },
                });
            }
        }
    }
    if dim == 1 {
        if let Some(witness) = line_sign_search(g, &y, opts.tol) {
            return Ok(realizable(g, target, witness, "line-sign-enumeration"));
        }
    }
    let (witness, residual) = realize_best(g, target, dim, opts)?;
    if residual <= opts.tol {
        Ok(MembershipVerdict::Realizable {
            witness,
            residual,
            method: "least-squares".into(),
        })
    } else {
        Ok(MembershipVerdict::Unknown { residual })
    }
}

fn realizable(
    g: &Graph,
    target: &MeasurementPoint,
    witness: Configuration,
    method: &str,
) -> MembershipVerdict {
    let got = lengths_squared(g, &witness, &target.axes).expect("witness covers g");
    MembershipVerdict::Realizable {
        residual: got.max_abs_diff(target),
        witness,
        method: method.into(),
    }
}

/// Spanning forest edges in BFS order, as `(parent, child, edge)` vertex/edge indices.
fn spanning_forest(g: &Graph) -> (Vec<(usize, usize, usize)>, Vec<bool>) {
    let adj = g.adjacency();
    let mut seen = vec![false; g.vertex_count()];
    let mut in_tree = vec![false; g.edge_count()];
    let mut tree = Vec::new();
    for root in 0..g.vertex_count() {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &(w, e) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    in_tree[e] = true;
                    tree.push((v, w, e));
                    queue.push_back(w);
                }
            }
        }
    }
    (tree, in_tree)
}

fn lay_out_forest(g: &Graph, y: &[f64], dim: usize) -> Configuration {
    let (tree, _) = spanning_forest(g);
    let mut first = vec![0.0; g.vertex_count()];
    for &(parent, child, e) in &tree {
        first[child] = first[parent] + y[e].sqrt();
    }
    line_configuration(g, &first, dim)
}

fn line_configuration(g: &Graph, first: &[f64], dim: usize) -> Configuration {
    let points: BTreeMap<String, Vec<f64>> = g
        .vertices()
        .iter()
        .zip(first)
        .map(|(v, &x)| {
            let mut p = vec![0.0; dim];
            p[0] = x;
            (v.clone(), p)
        })
        .collect();
    Configuration { dim, points }
}

/// Exhausts the signs of spanning-forest edges on a line and keeps a layout
/// whose other edges are within `tol`. Skipped beyond 22 forest edges.
fn line_sign_search(g: &Graph, y: &[f64], tol: f64) -> Option<Configuration> {
    let (tree, in_tree) = spanning_forest(g);
    if tree.len() > 22 {
        return None;
    }
    let others: Vec<usize> = (0..g.edge_count()).filter(|&e| !in_tree[e]).collect();
    let mut pos = vec![0.0; g.vertex_count()];
    for signs in 0u32..1 << tree.len() {
        for (k, &(parent, child, e)) in tree.iter().enumerate() {
            let s = if signs >> k & 1 == 1 { -1.0 } else { 1.0 };
            pos[child] = pos[parent] + s * y[e].sqrt();
        }
        let fits = others.iter().all(|&e| {
            let (a, b) = g.ends(e);
            ((pos[a] - pos[b]).powi(2) - y[e]).abs() <= tol
        });
        if fits {
            return Some(line_configuration(g, &pos, 1));
        }
    }
    None
}

#[cfg(test)]
fn point_in_edge_order(g: &Graph, coords: Vec<f64>) -> Result<MeasurementPoint> {
    MeasurementPoint::new(super::EdgeAxisMap::identity(g), coords)
}

use std::collections::BTreeSet;

use super::Configuration;
use crate::error::Result;
use crate::graph::Graph;
use crate::whitney::{validate_separation, TwoSeparation};

/// Mirrors the vertices of side `s` (other than the cut pair) across the
/// hyperplane that perpendicularly bisects the segment between the cut pair.
///
/// The result realizes, on the reversed graph with the same edge axes, exactly
/// the squared lengths `p` realizes on `g`. When both cut vertices sit at the
/// same point the configuration is returned unchanged.
pub fn reflect_across_cut_pair(
    g: &Graph,
    sep: &TwoSeparation,
    p: &Configuration,
) -> Result<Configuration> {
    validate_separation(g, sep)?;
    p.check_covers(g)?;
    let [x, y] = &sep.cut_pair;
    let px = &p.points[x];
    let py = &p.points[y];
    let normal: Vec<f64> = py.iter().zip(px).map(|(b, a)| b - a).collect();
    let norm_sq: f64 = normal.iter().map(|c| c * c).sum();
    if norm_sq == 0.0 {
        return Ok(p.clone());
    }
    let mid: Vec<f64> = px.iter().zip(py).map(|(a, b)| 0.5 * (a + b)).collect();

    let mut moved: BTreeSet<&str> = BTreeSet::new();
    for id in &sep.s {
        let e = g.edge(id).expect("validated separation");
        moved.insert(&e.u);
        moved.insert(&e.v);
    }
    moved.remove(x.as_str());
    moved.remove(y.as_str());

    let mut out = p.clone();
    for v in moved {
        let q = out.points.get_mut(v).expect("configuration covers g");
        let along: f64 = q
            .iter()
            .zip(&mid)
            .zip(&normal)
            .map(|((qi, mi), ni)| (qi - mi) * ni)
            .sum::<f64>()
            / norm_sq;
        for (qi, ni) in q.iter_mut().zip(&normal) {
            *qi -= 2.0 * along * ni;
        }
    }
    Ok(out)
}

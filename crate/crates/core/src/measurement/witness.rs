//! Points that separate the measurement sets of graphs that are not cycle isomorphic.
//!
//! Fix an edge bijection. If it sends some cycle `c` to a non-cycle `b`, then
//! either `b` is a forest, and the point with a single 1 on `c` (zeros
//! elsewhere on `c`) is outside the cycle's set but inside the forest's; or `b`
//! properly contains a cycle `c'`, and deleting an edge of `b` outside `c'`
//! together with its partner in `c` leaves a path on one side and a graph
//! containing `c'` on the other, told apart by a single 1 on `c'`.

use serde::{Deserialize, Serialize};

use super::membership::{is_member, MembershipVerdict};
use super::solver::RealizeOptions;
use super::{EdgeAxisMap, MeasurementPoint};
use crate::cycles::{cycle_isomorphic_indexed, map_mask, CycleIndex, EdgeBijection};
use crate::error::{Error, Result};
use crate::graph::{is_forest, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    G,
    H,
}

/// Evidence, for one edge bijection, that two measurement sets differ.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Distinction {
    pub sigma: EdgeBijection,
    /// A cycle whose image (or preimage) under `sigma` is not a cycle.
    pub cycle: Vec<String>,
    pub cycle_side: Side,
    /// The distinguishing point on the kept axes of `g`.
    pub point: MeasurementPoint,
    /// Membership of `point` for `g` restricted to the kept edges.
    pub g_verdict: MembershipVerdict,
    /// Membership of the relabeled point for `h` restricted to their images.
    pub h_verdict: MembershipVerdict,
}

impl Distinction {
    /// The point, renamed onto `h`'s edges.
    pub fn point_for_h(&self) -> Result<MeasurementPoint> {
        self.point.relabeled(&self.sigma)
    }

    /// One side carries a certificate that re-verifies, the other a witness
    /// within `tol`.
    pub fn is_conclusive(&self, g: &Graph, h: &Graph, tol: f64) -> Result<bool> {
        let gk = g.edge_induced(self.point.axes.axes())?;
        let ph = self.point_for_h()?;
        let hk = h.edge_induced(ph.axes.axes())?;
        let g_ok = self.g_verdict.verify(&gk, &self.point, tol);
        let h_ok = self.h_verdict.verify(&hk, &ph, tol);
        Ok(g_ok
            && h_ok
            && self.g_verdict.is_infeasible() != self.h_verdict.is_infeasible()
            && (self.g_verdict.is_realizable() || self.h_verdict.is_realizable()))
    }
}

/// Builds the distinguishing point for one bijection, or `None` when `sigma`
/// carries cycles onto cycles in both directions.
pub fn distinguish_under(
    g: &Graph,
    h: &Graph,
    sigma: &EdgeBijection,
    dim: usize,
    opts: &RealizeOptions,
) -> Result<Option<Distinction>> {
    let gi = CycleIndex::with_cap(g, opts.cycle_cap)?;
    let hi = CycleIndex::with_cap(h, opts.cycle_cap)?;
    distinguish_indexed(g, h, &gi, &hi, sigma, dim, opts)
}

#[allow(clippy::too_many_arguments)]
fn distinguish_indexed(
    g: &Graph,
    h: &Graph,
    gi: &CycleIndex,
    hi: &CycleIndex,
    sigma: &EdgeBijection,
    dim: usize,
    opts: &RealizeOptions,
) -> Result<Option<Distinction>> {
    let forward = sigma.index_map(g, h)?;
    let mut backward = vec![0usize; forward.len()];
    for (i, &j) in forward.iter().enumerate() {
        backward[j] = i;
    }
    let broken = |from: &CycleIndex, to: &CycleIndex, map: &[usize]| {
        from.cycles()
            .masks()
            .iter()
            .copied()
            .find(|&m| !to.cycles().contains_mask(map_mask(m, map)))
    };
    // a: the graph holding the cycle, b: the other; phi maps a-edges to b-edges
    let (side, cycle, a, b, b_index, phi, phi_inv) = if let Some(c) = broken(gi, hi, &forward) {
        (Side::G, c, g, h, hi, &forward, &backward)
    } else if let Some(c) = broken(hi, gi, &backward) {
        (Side::H, c, h, g, gi, &backward, &forward)
    } else {
        return Ok(None);
    };

    let image = map_mask(cycle, phi);
    let image_graph = b.edge_induced(&b.ids_of_mask(image))?;
    // kept edges and the unit edge, both as a-side masks
    let (kept, unit) = if is_forest(&image_graph) {
        (cycle, 1u128 << (127 - cycle.leading_zeros()))
    } else {
        let inner = b_index
            .cycles()
            .masks()
            .iter()
            .copied()
            .find(|&m| m & !image == 0)
            .expect("a non-forest contains a cycle");
        let outside = image & !inner;
        debug_assert!(outside != 0, "image is not itself a cycle");
        let drop_b = outside.trailing_zeros() as usize;
        let unit_b = 127 - inner.leading_zeros() as usize;
        (
            cycle & !(1u128 << phi_inv[drop_b]),
            1u128 << phi_inv[unit_b],
        )
    };

    // express kept edges and the point on g's axes
    let kept_g = match side {
        Side::G => kept,
        Side::H => map_mask(kept, phi),
    };
    let unit_g = match side {
        Side::G => unit,
        Side::H => map_mask(unit, phi),
    };
    let axes = g.ids_of_mask(kept_g);
    let coords = (0..g.edge_count())
        .filter(|i| kept_g >> i & 1 == 1)
        .map(|i| if unit_g >> i & 1 == 1 { 1.0 } else { 0.0 })
        .collect();
    let point = MeasurementPoint::new(EdgeAxisMap::new(axes.clone())?, coords)?;
    let g_sub = g.edge_induced(&axes)?;
    let point_h = point.relabeled(sigma)?;
    let h_sub = h.edge_induced(point_h.axes.axes())?;
    let g_verdict = is_member(&g_sub, &point, dim, opts)?;
    let h_verdict = is_member(&h_sub, &point_h, dim, opts)?;
    Ok(Some(Distinction {
        sigma: sigma.clone(),
        cycle: a.ids_of_mask(cycle),
        cycle_side: side,
        point,
        g_verdict,
        h_verdict,
    }))
}

/// For graphs that are not cycle isomorphic, one [`Distinction`] per
/// candidate bijection. `None` when the graphs are cycle isomorphic, since
/// then no separating point exists.
pub fn distinguish_witness(
    g: &Graph,
    h: &Graph,
    candidates: &[EdgeBijection],
    dim: usize,
    opts: &RealizeOptions,
) -> Result<Option<Vec<Distinction>>> {
    if g.edge_count() != h.edge_count() {
        return Err(Error::InvalidBijection(format!(
            "edge counts differ: {} and {}",
            g.edge_count(),
            h.edge_count()
        )));
    }
    let gi = CycleIndex::with_cap(g, opts.cycle_cap)?;
    let hi = CycleIndex::with_cap(h, opts.cycle_cap)?;
    if cycle_isomorphic_indexed(&gi, &hi).is_some() {
        return Ok(None);
    }
    candidates
        .iter()
        .map(|sigma| {
            distinguish_indexed(g, h, &gi, &hi, sigma, dim, opts)?.ok_or_else(|| {
                Error::InvalidBijection("candidate preserves cycles; search missed it".into())
            })
        })
        .collect::<Result<Vec<_>>>()
        .map(Some)
}

/// Every bijection from `E(g)` to `E(h)`; only sensible for a handful of edges.
pub fn all_bijections(g: &Graph, h: &Graph) -> Result<Vec<EdgeBijection>> {
    let e = g.edge_count();
    if e != h.edge_count() {
        return Err(Error::InvalidBijection("edge counts differ".into()));
    }
    if e > 8 {
        return Err(Error::Unsupported(format!("{e}! bijections is too many")));
    }
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..e).collect();
    permute(&mut perm, 0, &mut |p| {
        out.push(EdgeBijection {
            sigma: p
                .iter()
                .enumerate()
                .map(|(i, &j)| (g.edges()[i].id.clone(), h.edges()[j].id.clone()))
                .collect(),
        })
    });
    Ok(out)
}

fn permute(p: &mut [usize], k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        visit(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, visit);
        p.swap(k, i);
    }
}

//! Squared edge lengths of frameworks and membership in measurement sets.
//!
//! A [`Configuration`] places the vertices of a graph in `d`-dimensional space;
//! [`lengths_squared`] maps it to a [`MeasurementPoint`] with one coordinate
//! per edge, in the order fixed by an [`EdgeAxisMap`]. The set of all such
//! points for a graph and dimension is its measurement set. Membership is
//! answered three ways: exact constructions, exact infeasibility
//! certificates, and a numerical least-squares search.

mod membership;
mod reflect;
mod solver;
mod witness;

use std::collections::{BTreeMap, BTreeSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::cycles::EdgeBijection;
use crate::error::{Error, Result};
use crate::graph::Graph;

pub use membership::{
    cycle_realizable_exact, is_member, Certificate, CertificateRule, MembershipVerdict,
};
pub use reflect::reflect_across_cut_pair;
pub use solver::{realize, realize_best, RealizationObjective, RealizeOptions};
pub use witness::{all_bijections, distinguish_under, distinguish_witness, Distinction, Side};

/// Vertex positions in `dim`-dimensional Euclidean space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ConfigurationRepr")]
pub struct Configuration {
    pub dim: usize,
    pub points: BTreeMap<String, Vec<f64>>,
}

#[derive(Deserialize)]
struct ConfigurationRepr {
    dim: usize,
    points: BTreeMap<String, Vec<f64>>,
}

impl TryFrom<ConfigurationRepr> for Configuration {
    type Error = Error;

    fn try_from(r: ConfigurationRepr) -> Result<Self> {
        Configuration::new(r.dim, r.points)
    }
}

impl Configuration {
    pub fn new(dim: usize, points: BTreeMap<String, Vec<f64>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidConfiguration(
                "dimension must be positive".into(),
            ));
        }
        for (v, p) in &points {
            if p.len() != dim {
                return Err(Error::InvalidConfiguration(format!(
                    "`{v}` has {} coordinates, expected {dim}",
                    p.len()
                )));
            }
            if p.iter().any(|c| !c.is_finite()) {
                return Err(Error::InvalidConfiguration(format!(
                    "`{v}` has a non-finite coordinate"
                )));
            }
        }
        Ok(Configuration { dim, points })
    }

    /// Every vertex of `g` at the origin.
    pub fn origin(g: &Graph, dim: usize) -> Self {
        Configuration {
            dim,
            points: g
                .vertices()
                .iter()
                .map(|v| (v.clone(), vec![0.0; dim]))
                .collect(),
        }
    }

    pub fn point(&self, v: &str) -> Option<&[f64]> {
        self.points.get(v).map(Vec::as_slice)
    }

    /// Fails unless every vertex of `g` has a point.
    pub fn check_covers(&self, g: &Graph) -> Result<()> {
        match g.vertices().iter().find(|v| !self.points.contains_key(*v)) {
            Some(v) => Err(Error::UnknownVertex(v.clone())),
            None => Ok(()),
        }
    }

    /// The same configuration in a higher dimension, padded with zeros.
    pub fn zero_padded(&self, dim: usize) -> Result<Self> {
        if dim < self.dim {
            return Err(Error::InvalidConfiguration(format!(
                "cannot pad from {} down to {dim}",
                self.dim
            )));
        }
        let points = self
            .points
            .iter()
            .map(|(v, p)| {
                let mut q = p.clone();
                q.resize(dim, 0.0);
                (v.clone(), q)
            })
            .collect();
        Ok(Configuration { dim, points })
    }

    /// Orthogonal projection onto a best-fitting affine subspace of dimension
    /// `dim`, expressed in `dim` coordinates. Congruent to `self` whenever the
    /// points span an affine subspace of dimension at most `dim`, which holds
    /// for `n` points once `dim >= n - 1`.
    pub fn flattened_to(&self, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidConfiguration(
                "dimension must be positive".into(),
            ));
        }
        let n = self.points.len();
        if n == 0 {
            return Ok(Configuration {
                dim,
                points: BTreeMap::new(),
            });
        }
        let rows: Vec<&Vec<f64>> = self.points.values().collect();
        let mut centroid = vec![0.0; self.dim];
        for p in &rows {
            for (c, x) in centroid.iter_mut().zip(p.iter()) {
                *c += x / n as f64;
            }
        }
        let m = nalgebra::DMatrix::from_fn(n, self.dim, |i, k| rows[i][k] - centroid[k]);
        let svd = m.clone().svd(false, true);
        let vt = svd.v_t.expect("right singular vectors requested");
        let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
        order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
        let points = self
            .points
            .keys()
            .enumerate()
            .map(|(i, v)| {
                let q = (0..dim)
                    .map(|k| match order.get(k) {
                        Some(&r) => (0..self.dim).map(|j| m[(i, j)] * vt[(r, j)]).sum(),
                        None => 0.0,
                    })
                    .collect();
                (v.clone(), q)
            })
            .collect();
        Ok(Configuration { dim, points })
    }

    /// Flattened coordinates in `g`'s vertex order.
    pub fn flatten(&self, g: &Graph) -> Result<Vec<f64>> {
        self.check_covers(g)?;
        Ok(g.vertices()
            .iter()
            .flat_map(|v| self.points[v].iter().copied())
            .collect())
    }

    pub(crate) fn from_flat(g: &Graph, dim: usize, x: &[f64]) -> Self {
        Configuration {
            dim,
            points: g
                .vertices()
                .iter()
                .enumerate()
                .map(|(i, v)| (v.clone(), x[i * dim..(i + 1) * dim].to_vec()))
                .collect(),
        }
    }
}

/// Which edge owns which coordinate axis: axis `i` belongs to edge `axes[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct EdgeAxisMap {
    axes: Vec<String>,
}

impl TryFrom<Vec<String>> for EdgeAxisMap {
    type Error = Error;

    fn try_from(axes: Vec<String>) -> Result<Self> {
        EdgeAxisMap::new(axes)
    }
}

impl From<EdgeAxisMap> for Vec<String> {
    fn from(ax: EdgeAxisMap) -> Self {
        ax.axes
    }
}

impl EdgeAxisMap {
    pub fn new(axes: Vec<String>) -> Result<Self> {
        let unique: BTreeSet<&String> = axes.iter().collect();
        if unique.len() != axes.len() {
            return Err(Error::InvalidMeasurement("repeated axis edge id".into()));
        }
        Ok(EdgeAxisMap { axes })
    }

    /// Axes in the graph's edge order.
    pub fn identity(g: &Graph) -> Self {
        EdgeAxisMap { axes: g.edge_ids() }
    }

    /// Axes for the image graph under `sigma`: axis `i` goes to `sigma(axes[i])`.
    pub fn through(&self, sigma: &EdgeBijection) -> Result<Self> {
        let axes = self
            .axes
            .iter()
            .map(|id| {
                sigma
                    .get(id)
                    .map(str::to_string)
                    .ok_or_else(|| Error::InvalidBijection(format!("`{id}` is unmapped")))
            })
            .collect::<Result<Vec<_>>>()?;
        EdgeAxisMap::new(axes)
    }

    pub fn axes(&self) -> &[String] {
        &self.axes
    }

    pub fn len(&self) -> usize {
        self.axes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.axes.is_empty()
    }

    pub fn axis_of(&self, edge: &str) -> Option<usize> {
        self.axes.iter().position(|a| a == edge)
    }

    /// Edge index in `g` for each axis. Fails unless the axes are exactly `E(g)`.
    pub fn edge_indices(&self, g: &Graph) -> Result<Vec<usize>> {
        if self.axes.len() != g.edge_count() {
            return Err(Error::InvalidMeasurement(format!(
                "{} axes for {} edges",
                self.axes.len(),
                g.edge_count()
            )));
        }
        g.edge_indices(&self.axes)
    }
}

/// One squared length per axis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PointRepr")]
pub struct MeasurementPoint {
    pub axes: EdgeAxisMap,
    pub coords: Vec<f64>,
}

#[derive(Deserialize)]
struct PointRepr {
    axes: EdgeAxisMap,
    coords: Vec<f64>,
}

impl TryFrom<PointRepr> for MeasurementPoint {
    type Error = Error;

    fn try_from(r: PointRepr) -> Result<Self> {
        MeasurementPoint::new(r.axes, r.coords)
    }
}

impl MeasurementPoint {
    pub fn new(axes: EdgeAxisMap, coords: Vec<f64>) -> Result<Self> {
        if axes.len() != coords.len() {
            return Err(Error::InvalidMeasurement(format!(
                "{} axes but {} coordinates",
                axes.len(),
                coords.len()
            )));
        }
        if coords.iter().any(|c| !c.is_finite() || *c < 0.0) {
            return Err(Error::InvalidMeasurement(
                "coordinates must be finite and nonnegative".into(),
            ));
        }
        Ok(MeasurementPoint { axes, coords })
    }

    pub fn get(&self, edge: &str) -> Option<f64> {
        self.axes.axis_of(edge).map(|i| self.coords[i])
    }

    /// The same coordinates with every axis renamed through `sigma`.
    pub fn relabeled(&self, sigma: &EdgeBijection) -> Result<Self> {
        Ok(MeasurementPoint {
            axes: self.axes.through(sigma)?,
            coords: self.coords.clone(),
        })
    }

    /// Coordinates indexed by `g`'s edge order.
    pub(crate) fn by_edge_index(&self, g: &Graph) -> Result<Vec<f64>> {
        let idx = self.axes.edge_indices(g)?;
        let mut out = vec![0.0; g.edge_count()];
        for (axis, i) in idx.into_iter().enumerate() {
            out[i] = self.coords[axis];
        }
        Ok(out)
    }

    /// Largest absolute coordinate difference, axis by axis.
    pub fn max_abs_diff(&self, other: &MeasurementPoint) -> f64 {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// The squared length of every edge of `g` under `p`, laid out along `ax`.
pub fn lengths_squared(g: &Graph, p: &Configuration, ax: &EdgeAxisMap) -> Result<MeasurementPoint> {
    p.check_covers(g)?;
    let idx = ax.edge_indices(g)?;
    let coords = idx
        .into_iter()
        .map(|i| {
            let e = &g.edges()[i];
            squared_distance(&p.points[&e.u], &p.points[&e.v])
        })
        .collect();
    Ok(MeasurementPoint {
        axes: ax.clone(),
        coords,
    })
}

pub(crate) fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// `n` configurations with i.i.d. normal coordinates of standard deviation `spread`.
pub fn sample_configurations(
    g: &Graph,
    dim: usize,
    n: usize,
    seed: u64,
    spread: f64,
) -> Vec<Configuration> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| Configuration {
            dim,
            points: g
                .vertices()
                .iter()
                .map(|v| {
                    let p = (0..dim)
                        .map(|_| {
                            let z: f64 = StandardNormal.sample(&mut rng);
                            spread * z
                        })
                        .collect::<Vec<f64>>();
                    (v.clone(), p)
                })
                .collect(),
        })
        .collect()
}

/// `n` points of the measurement set of `g` in dimension `dim`, deterministic in `seed`.
pub fn sample_measurement_set(
    g: &Graph,
    dim: usize,
    n: usize,
    seed: u64,
    spread: f64,
) -> Vec<MeasurementPoint> {
    let ax = EdgeAxisMap::identity(g);
    sample_configurations(g, dim, n, seed, spread)
        .iter()
        .map(|p| lengths_squared(g, p, &ax).expect("sampled configuration covers g"))
        .collect()
}

/// Restricts a point to the axes of `keep`, preserving the original axis order.
pub fn project_point<S: AsRef<str>>(pt: &MeasurementPoint, keep: &[S]) -> Result<MeasurementPoint> {
    let wanted: BTreeSet<&str> = keep.iter().map(AsRef::as_ref).collect();
    for id in &wanted {
        if pt.axes.axis_of(id).is_none() {
            return Err(Error::UnknownEdge(id.to_string()));
        }
    }
    let (axes, coords): (Vec<String>, Vec<f64>) = pt
        .axes
        .axes()
        .iter()
        .zip(&pt.coords)
        .filter(|(a, _)| wanted.contains(a.as_str()))
        .map(|(a, c)| (a.clone(), *c))
        .unzip();
    Ok(MeasurementPoint {
        axes: EdgeAxisMap { axes },
        coords,
    })
}

//! Numerical inverse of the squared-length map.
//!
//! Minimizes `sum_e (|p(u) - p(w)|^2 - y_e)^2` over configurations with a
//! damped Gauss-Newton (Levenberg-Marquardt) iteration from several random
//! starts. Success means the max-norm residual fell below the tolerance;
//! failure says nothing about feasibility.

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use super::{Configuration, MeasurementPoint};
use crate::cycles::DEFAULT_CYCLE_CAP;
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RealizeOptions {
    /// Max-norm residual accepted as a realization.
    pub tol: f64,
    pub restarts: usize,
    pub max_iters: usize,
    pub seed: u64,
    /// Standard deviation of starting coordinates; `sqrt(max target + 1)` when absent.
    pub spread: Option<f64>,
    /// Cycle enumeration cap for the exact certificate pass of membership.
    pub cycle_cap: usize,
}

impl Default for RealizeOptions {
    fn default() -> Self {
        RealizeOptions {
            tol: 1e-8,
            restarts: 32,
            max_iters: 500,
            seed: 0,
            spread: None,
            cycle_cap: DEFAULT_CYCLE_CAP,
        }
    }
}

/// The least-squares objective for one graph, target and dimension, over
/// flattened coordinates (vertex-major, in the graph's vertex order).
#[derive(Debug, Clone)]
pub struct RealizationObjective {
    ends: Vec<(usize, usize)>,
    target: Vec<f64>,
    vertices: usize,
    dim: usize,
}

impl RealizationObjective {
    pub fn new(g: &Graph, target: &MeasurementPoint, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidConfiguration(
                "dimension must be positive".into(),
            ));
        }
        Ok(RealizationObjective {
            ends: (0..g.edge_count()).map(|i| g.ends(i)).collect(),
            target: target.by_edge_index(g)?,
            vertices: g.vertex_count(),
            dim,
        })
    }

    pub fn parameters(&self) -> usize {
        self.vertices * self.dim
    }

    /// Residual per edge (graph edge order).
    pub fn residuals(&self, x: &[f64]) -> Vec<f64> {
        let d = self.dim;
        self.ends
            .iter()
            .zip(&self.target)
            .map(|(&(a, b), y)| {
                let sq: f64 = (0..d).map(|k| (x[a * d + k] - x[b * d + k]).powi(2)).sum();
                sq - y
            })
            .collect()
    }

    pub fn value(&self, x: &[f64]) -> f64 {
        self.residuals(x).iter().map(|r| r * r).sum()
    }

    /// Analytic gradient of [`value`](Self::value): `2 J^T r`.
    pub fn gradient(&self, x: &[f64]) -> Vec<f64> {
        let r = self.residuals(x);
        let d = self.dim;
        let mut g = vec![0.0; x.len()];
        for (&(a, b), ri) in self.ends.iter().zip(&r) {
            for k in 0..d {
                let diff = x[a * d + k] - x[b * d + k];
                g[a * d + k] += 4.0 * ri * diff;
                g[b * d + k] -= 4.0 * ri * diff;
            }
        }
        g
    }

    fn jacobian(&self, x: &[f64]) -> DMatrix<f64> {
        let d = self.dim;
        let mut j = DMatrix::zeros(self.ends.len(), x.len());
        for (row, &(a, b)) in self.ends.iter().enumerate() {
            for k in 0..d {
                let diff = 2.0 * (x[a * d + k] - x[b * d + k]);
                j[(row, a * d + k)] = diff;
                j[(row, b * d + k)] = -diff;
            }
        }
        j
    }

    /// Levenberg-Marquardt from `x`, with Nielsen's damping update.
    fn descend(&self, mut x: Vec<f64>, tol: f64, max_iters: usize) -> (Vec<f64>, f64) {
        let n = x.len();
        let mut r = DVector::from_vec(self.residuals(&x));
        let mut cost = 0.5 * r.norm_squared();
        let mut lambda: Option<f64> = None;
        let mut nu = 2.0;
        for _ in 0..max_iters {
            if r.amax() <= tol {
                break;
            }
            let j = self.jacobian(&x);
            let jt = j.transpose();
            let a = &jt * &j;
            let grad = &jt * &r;
            let mu = *lambda.get_or_insert_with(|| 1e-3 * a.diagonal().max().max(1e-12));
            let mut damped = a.clone();
            for i in 0..n {
                damped[(i, i)] += mu;
            }
            let Some(chol) = damped.cholesky() else {
                lambda = Some(mu * nu);
                nu *= 2.0;
                continue;
            };
            let step = chol.solve(&(-&grad));
            let trial: Vec<f64> = x.iter().zip(step.iter()).map(|(a, b)| a + b).collect();
            let r_trial = DVector::from_vec(self.residuals(&trial));
            let cost_trial = 0.5 * r_trial.norm_squared();
            let predicted = 0.5 * step.dot(&(mu * &step - &grad));
            let rho = if predicted > 0.0 {
                (cost - cost_trial) / predicted
            } else {
                -1.0
            };
            if rho > 0.0 {
                x = trial;
                r = r_trial;
                cost = cost_trial;
                let shrink = (1.0_f64 / 3.0).max(1.0 - (2.0 * rho - 1.0).powi(3));
                lambda = Some((mu * shrink).max(1e-300));
                nu = 2.0;
            } else {
                lambda = Some(mu * nu);
                nu *= 2.0;
                if mu > 1e20 {
                    break;
                }
            }
        }
        let res = r.amax();
        (x, res)
    }
}

/// Best configuration found over all restarts and its max-norm residual.
/// Restart `k` draws its start from stream `k` of the seed, so the outcome does
/// not depend on how restarts are scheduled.
pub fn realize_best(
    g: &Graph,
    target: &MeasurementPoint,
    dim: usize,
    opts: &RealizeOptions,
) -> Result<(Configuration, f64)> {
    let obj = RealizationObjective::new(g, target, dim)?;
    let max_y = target.coords.iter().fold(0.0_f64, |m, &y| m.max(y));
    let spread = opts.spread.unwrap_or_else(|| (max_y + 1.0).sqrt());
    let mut best: Option<(Vec<f64>, f64)> = None;
    for restart in 0..opts.restarts.max(1) {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        rng.set_stream(restart as u64);
        let start: Vec<f64> = (0..obj.parameters())
            .map(|_| {
                spread * <StandardNormal as Distribution<f64>>::sample(&StandardNormal, &mut rng)
            })
            .collect();
        let (x, res) = obj.descend(start, opts.tol, opts.max_iters);
        if best.as_ref().is_none_or(|(_, b)| res < *b) {
            best = Some((x, res));
        }
        if res <= opts.tol {
            break;
        }
    }
    let (x, res) = best.expect("at least one restart");
    Ok((Configuration::from_flat(g, dim, &x), res))
}

/// A configuration whose squared lengths match `target` to within `opts.tol`
/// in max norm, if the multi-start search finds one.
pub fn realize(
    g: &Graph,
    target: &MeasurementPoint,
    dim: usize,
    opts: &RealizeOptions,
) -> Result<Option<Configuration>> {
    let (p, res) = realize_best(g, target, dim, opts)?;
    Ok((res <= opts.tol).then_some(p))
}

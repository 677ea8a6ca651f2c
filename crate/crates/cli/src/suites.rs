//! The experiment suites. Every case draws from its own random stream derived
//! from the suite seed and the case index, so results do not depend on how
//! rayon schedules the cases; reports are sorted by id before returning.

use std::collections::HashSet;
use std::time::Instant;

use anyhow::{anyhow, ensure, Result};
use measiso_core::generate::{
    connected_multigraphs, is_three_connected, random_connected_multigraph, random_relabel,
    random_three_connected, random_two_isomorphic,
};
use measiso_core::measurement::{all_bijections, sample_configurations};
use measiso_core::whitney::{one_iso_key, reversal_orbit};
use measiso_core::{
    cycle_isomorphic, distinguish_witness, enumerate_two_separations, graph_isomorphic, is_member,
    lengths_squared, one_isomorphic, reflect_across_cut_pair, reversal, two_isomorphic_search,
    CanonicalForm, CycleIndex, Edge, EdgeAxisMap, EdgeBijection, Graph, RealizeOptions,
    SearchOptions, SearchOutcome,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::report::{
    DeciderVerdicts, ExperimentReport, MeasurementEvidence, NestingReport, PairReport, RouteTally,
    Verdict,
};

/// Settings shared by all suites, taken from the global CLI flags.
#[derive(Debug, Clone, Serialize)]
pub struct HarnessOptions {
    pub seed: u64,
    pub tol: f64,
    pub restarts: usize,
    /// Reversal depth for the orbit search; unlimited when absent.
    pub max_depth: Option<usize>,
    pub simple_only: bool,
}

impl Default for HarnessOptions {
    fn default() -> Self {
        HarnessOptions {
            seed: 0,
            tol: 1e-8,
            restarts: RealizeOptions::default().restarts,
            max_depth: None,
            simple_only: false,
        }
    }
}

impl HarnessOptions {
    pub fn search(&self) -> SearchOptions {
        SearchOptions {
            max_depth: self.max_depth.unwrap_or(usize::MAX),
            simple_only: self.simple_only,
            ..SearchOptions::default()
        }
    }

    pub fn realize(&self, seed: u64) -> RealizeOptions {
        RealizeOptions {
            tol: self.tol,
            restarts: self.restarts,
            seed,
            ..RealizeOptions::default()
        }
    }
}

const SALT_CROSSCHECK: u64 = 0x5eed_0001;
const SALT_FORWARD: u64 = 0x5eed_0002;
const SALT_REVERSE: u64 = 0x5eed_0003;
const SALT_NESTING: u64 = 0x5eed_0004;
const SALT_THREE: u64 = 0x5eed_0005;

/// Stream `index` of the suite seed; independent of evaluation order.
pub fn case_rng(seed: u64, salt: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ salt.rotate_left(32));
    rng.set_stream(index as u64);
    rng
}

fn search_verdict(outcome: &SearchOutcome) -> Verdict {
    match outcome {
        SearchOutcome::Equivalent { .. } => Verdict::Equivalent,
        SearchOutcome::Exhausted { .. } => Verdict::NotEquivalent,
        SearchOutcome::Unknown { .. } => Verdict::Unknown,
    }
}

/// Runs the orbit search, failing loudly if a claimed witness does not replay.
fn checked_search(
    g: &Graph,
    h: &Graph,
    opts: &SearchOptions,
) -> Result<(Verdict, Option<serde_json::Value>)> {
    let outcome = two_isomorphic_search(g, h, opts);
    if let SearchOutcome::Equivalent { witness } = &outcome {
        ensure!(witness.verify(g, h)?, "orbit witness does not replay");
        return Ok((Verdict::Equivalent, Some(serde_json::to_value(witness)?)));
    }
    Ok((search_verdict(&outcome), None))
}

/// Runs the cycle route, failing loudly if a claimed edge map does not preserve cycles.
fn checked_cycle(g: &Graph, h: &Graph) -> Result<(Verdict, Option<EdgeBijection>)> {
    match cycle_isomorphic(g, h) {
        Ok(Some(sigma)) => {
            ensure!(
                sigma.preserves_cycles(g, h)?,
                "cycle map does not preserve cycles"
            );
            Ok((Verdict::Equivalent, Some(sigma)))
        }
        Ok(None) => Ok((Verdict::NotEquivalent, None)),
        Err(measiso_core::Error::CycleCapExceeded(_)) => Ok((Verdict::Unknown, None)),
        Err(e) => Err(e.into()),
    }
}

fn blank_pair(id: String, g: &Graph, h: &Graph) -> PairReport {
    PairReport {
        pair_id: id,
        edges: g.edge_count(),
        g: g.to_json(),
        h: h.to_json(),
        verdicts: DeciderVerdicts::default(),
        constructed: None,
        three_connected: false,
        evidence: None,
        sigma: None,
        operations: None,
    }
}

/// Moves one random edge endpoint to another vertex, keeping the graph
/// connected and loop-free. Usually breaks 2-isomorphism while keeping the
/// degree profile close.
fn perturb<R: Rng + ?Sized>(rng: &mut R, g: &Graph) -> Graph {
    for _ in 0..64 {
        let i = rng.gen_range(0..g.edge_count());
        let e = &g.edges()[i];
        let w = g
            .vertices()
            .choose(rng)
            .expect("graph has vertices")
            .clone();
        let keep = if rng.gen_bool(0.5) { &e.u } else { &e.v };
        if &w == keep {
            continue;
        }
        let mut edges = g.edges().to_vec();
        edges[i] = Edge::new(e.id.clone(), keep.clone(), w);
        let Ok(h) = Graph::new(Vec::<String>::new(), edges) else {
            continue;
        };
        if h.vertex_count() == g.vertex_count()
            && measiso_core::generate::component_sizes(&h).len() == 1
        {
            return h;
        }
    }
    g.clone()
}

fn finish(
    suite: &str,
    opts: &HarnessOptions,
    params: serde_json::Value,
    mut pairs: Vec<PairReport>,
    tally: Option<RouteTally>,
    mut nesting: Vec<NestingReport>,
    started: Instant,
) -> ExperimentReport {
    pairs.sort_by(|a, b| a.pair_id.cmp(&b.pair_id));
    nesting.sort_by(|a, b| a.graph_id.cmp(&b.graph_id));
    ExperimentReport {
        suite: suite.to_string(),
        seed: opts.seed,
        tol: opts.tol,
        params,
        pairs,
        tally,
        nesting,
        elapsed_ms: started.elapsed().as_millis(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CrosscheckParams {
    /// Every connected multigraph up to this many edges, up to isomorphism.
    pub max_edges: usize,
    pub random_pairs: usize,
    pub random_max_edges: usize,
    pub random_max_vertices: usize,
}

impl Default for CrosscheckParams {
    fn default() -> Self {
        CrosscheckParams {
            max_edges: 7,
            random_pairs: 200,
            random_max_edges: 10,
            random_max_vertices: 8,
        }
    }
}

struct Prepared {
    key: Vec<CanonicalForm>,
    orbit_keys: HashSet<Vec<CanonicalForm>>,
    complete: bool,
    index: Option<CycleIndex>,
}

/// Compares the orbit route and the cycle route on every pair of
/// isomorphism classes with equal edge count, plus random pairs.
///
/// For the exhaustive part the reversal orbit of each class is walked once
/// and its block-multiset keys reused for every partner, which is what the
/// orbit search does pair by pair.
pub fn whitney_crosscheck(opts: &HarnessOptions, p: &CrosscheckParams) -> Result<ExperimentReport> {
    let started = Instant::now();
    let search = opts.search();
    let classes = connected_multigraphs(p.max_edges);
    let mut tally = RouteTally {
        max_edges: p.max_edges,
        classes: classes.iter().skip(1).map(Vec::len).collect(),
        ..RouteTally::default()
    };
    for (e, graphs) in classes.iter().enumerate().skip(1) {
        let prepared: Vec<Prepared> = graphs
            .par_iter()
            .map(|g| {
                let orbit = reversal_orbit(g, &search);
                let index = match CycleIndex::new(g) {
                    Ok(i) => Some(i),
                    Err(measiso_core::Error::CycleCapExceeded(_)) => None,
                    Err(e) => return Err(e.into()),
                };
                Ok(Prepared {
                    key: one_iso_key(g),
                    orbit_keys: orbit.nodes.iter().map(|n| n.one_iso.clone()).collect(),
                    complete: orbit.complete,
                    index,
                })
            })
            .collect::<Result<_>>()?;
        let rows: Vec<RouteTally> = (0..prepared.len())
            .into_par_iter()
            .map(|i| {
                let mut t = RouteTally::default();
                let a = &prepared[i];
                for (j, b) in prepared.iter().enumerate().skip(i + 1) {
                    t.pairs += 1;
                    let by_search = if a.orbit_keys.contains(&b.key) {
                        Verdict::Equivalent
                    } else if a.complete {
                        Verdict::NotEquivalent
                    } else {
                        Verdict::Unknown
                    };
                    let by_cycle = match (&a.index, &b.index) {
                        (Some(x), Some(y)) => Verdict::from_bool(
                            measiso_core::cycles::cycle_isomorphic_indexed(x, y).is_some(),
                        ),
                        _ => Verdict::Unknown,
                    };
                    match (by_search, by_cycle) {
                        (Verdict::Unknown, _) | (_, Verdict::Unknown) => t.unknown += 1,
                        (Verdict::Equivalent, Verdict::Equivalent) => t.both_equivalent += 1,
                        (Verdict::NotEquivalent, Verdict::NotEquivalent) => {
                            t.both_not_equivalent += 1
                        }
                        (Verdict::Equivalent, _) => t.search_only += 1,
                        (_, Verdict::Equivalent) => t.cycle_only += 1,
                    }
                    if by_search != by_cycle || !by_search.is_known() {
                        t.disagreements.push(format!("e{e}-{i}-{j}"));
                    }
                }
                t
            })
            .collect();
        for r in rows {
            tally.pairs += r.pairs;
            tally.both_equivalent += r.both_equivalent;
            tally.both_not_equivalent += r.both_not_equivalent;
            tally.search_only += r.search_only;
            tally.cycle_only += r.cycle_only;
            tally.unknown += r.unknown;
            tally.disagreements.extend(r.disagreements);
        }
    }

    let pairs = (0..p.random_pairs)
        .into_par_iter()
        .map(|k| {
            let mut rng = case_rng(opts.seed, SALT_CROSSCHECK, k);
            let e = rng.gen_range(2..=p.random_max_edges);
            let vmax = p.random_max_vertices.min(e + 1);
            let g = random_connected_multigraph(&mut rng, 2..=vmax, e, true);
            let (h, constructed) = match k % 4 {
                0 | 2 => {
                    let r = rng.gen_range(1..=4);
                    (
                        random_two_isomorphic(&mut rng, &g, r).0,
                        Some(Verdict::Equivalent),
                    )
                }
                1 => (
                    random_connected_multigraph(&mut rng, 2..=vmax, e, true),
                    None,
                ),
                _ => {
                    let r = rng.gen_range(1..=4);
                    let (scrambled, _) = random_two_isomorphic(&mut rng, &g, r);
                    (perturb(&mut rng, &scrambled), None)
                }
            };
            let mut pr = blank_pair(format!("rand-{k:04}"), &g, &h);
            pr.constructed = constructed;
            pr.verdicts.iso = Some(Verdict::from_bool(graph_isomorphic(&g, &h).is_some()));
            pr.verdicts.one_iso = Some(Verdict::from_bool(one_isomorphic(&g, &h)));
            let (sv, ops) = checked_search(&g, &h, &search)?;
            let (cv, sigma) = checked_cycle(&g, &h)?;
            pr.verdicts.two_iso_search = Some(sv);
            pr.verdicts.cycle_iso = Some(cv);
            pr.operations = ops;
            pr.sigma = sigma.map(serde_json::to_value).transpose()?;
            Ok(pr)
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(finish(
        "whitney-crosscheck",
        opts,
        json!(p),
        pairs,
        Some(tally),
        Vec::new(),
        started,
    ))
}

#[derive(Debug, Clone, Serialize)]
pub struct MainTheoremParams {
    /// Constructed 2-isomorphic pairs for the forward direction.
    pub pairs: usize,
    /// Pairs that are not cycle isomorphic, for the reverse direction.
    pub nonpairs: usize,
    /// Sampled points per pair and dimension.
    pub samples: usize,
    pub dims: Vec<usize>,
    pub max_edges: usize,
    pub max_vertices: usize,
    /// Up to this many edges every bijection is a candidate for the reverse
    /// direction; above it, `random_candidates` random ones plus the positional one.
    pub exhaustive_edges: usize,
    pub random_candidates: usize,
}

impl Default for MainTheoremParams {
    fn default() -> Self {
        MainTheoremParams {
            pairs: 200,
            nonpairs: 100,
            samples: 20,
            dims: vec![1, 2, 3],
            max_edges: 10,
            max_vertices: 8,
            exhaustive_edges: 5,
            random_candidates: 24,
        }
    }
}

fn forward_case(opts: &HarnessOptions, p: &MainTheoremParams, k: usize) -> Result<PairReport> {
    let mut rng = case_rng(opts.seed, SALT_FORWARD, k);
    let e = rng.gen_range(3..=p.max_edges);
    let g = random_connected_multigraph(&mut rng, 2..=p.max_vertices.min(e + 1), e, true);
    let reversals = rng.gen_range(1..=4);
    let (h, _) = random_two_isomorphic(&mut rng, &g, reversals);
    let mut pr = blank_pair(format!("fwd-{k:04}"), &g, &h);
    pr.constructed = Some(Verdict::Equivalent);
    let (sv, ops) = checked_search(&g, &h, &opts.search())?;
    let (cv, sigma) = checked_cycle(&g, &h)?;
    pr.verdicts.two_iso_search = Some(sv);
    pr.verdicts.cycle_iso = Some(cv);
    pr.operations = ops;
    let Some(sigma) = sigma else {
        return Ok(pr);
    };
    pr.sigma = Some(serde_json::to_value(&sigma)?);

    let ax = EdgeAxisMap::identity(&g);
    let seps = enumerate_two_separations(&g);
    let mut ev = MeasurementEvidence {
        dims: p.dims.clone(),
        reflection_error: (!seps.is_empty()).then_some(0.0),
        ..MeasurementEvidence::default()
    };
    let mut residual_sum = 0.0;
    for &d in &p.dims {
        let sample_seed = rng.gen();
        for (i, conf) in sample_configurations(&g, d, p.samples, sample_seed, 1.0)
            .into_iter()
            .enumerate()
        {
            let y = lengths_squared(&g, &conf, &ax)?;
            let target = y.relabeled(&sigma)?;
            let ropts = opts.realize(sample_seed ^ i as u64);
            let verdict = is_member(&h, &target, d, &ropts)?;
            ev.samples_tested += 1;
            if verdict.is_realizable() && verdict.verify(&h, &target, opts.tol) {
                ev.realizable += 1;
                let r = verdict.residual().unwrap_or(0.0);
                residual_sum += r;
                ev.max_residual = ev.max_residual.max(r);
            } else {
                ev.max_residual = ev
                    .max_residual
                    .max(verdict.residual().unwrap_or(f64::INFINITY));
                ev.witness.get_or_insert(json!({
                    "dimension": d,
                    "target": target,
                    "verdict": verdict,
                }));
            }
            if let Some(sep) = seps.choose(&mut rng) {
                let reflected = reflect_across_cut_pair(&g, sep, &conf)?;
                let flipped = reversal(&g, sep)?;
                let err = y.max_abs_diff(&lengths_squared(&flipped, &reflected, &ax)?);
                ev.reflection_error = ev.reflection_error.map(|m| m.max(err));
            }
        }
    }
    ev.mean_residual = residual_sum / ev.realizable.max(1) as f64;
    pr.evidence = Some(ev);
    Ok(pr)
}

fn random_bijection<R: Rng + ?Sized>(rng: &mut R, g: &Graph, h: &Graph) -> EdgeBijection {
    let mut targets = h.edge_ids();
    targets.shuffle(rng);
    EdgeBijection {
        sigma: g.edge_ids().into_iter().zip(targets).collect(),
    }
}

fn positional_bijection(g: &Graph, h: &Graph) -> EdgeBijection {
    EdgeBijection {
        sigma: g.edge_ids().into_iter().zip(h.edge_ids()).collect(),
    }
}

fn reverse_case(opts: &HarnessOptions, p: &MainTheoremParams, k: usize) -> Result<PairReport> {
    let mut rng = case_rng(opts.seed, SALT_REVERSE, k);
    let (g, h) = loop {
        let e = rng.gen_range(3..=p.max_edges);
        let vmax = p.max_vertices.min(e + 1);
        let g = random_connected_multigraph(&mut rng, 2..=vmax, e, true);
        let h = if k.is_multiple_of(2) {
            random_connected_multigraph(&mut rng, 2..=vmax, e, true)
        } else {
            let (scrambled, _) = random_two_isomorphic(&mut rng, &g, 2);
            perturb(&mut rng, &scrambled)
        };
        if cycle_isomorphic(&g, &h)?.is_none() {
            break (g, h);
        }
    };
    let mut pr = blank_pair(format!("rev-{k:04}"), &g, &h);
    let (sv, _) = checked_search(&g, &h, &opts.search())?;
    let (cv, _) = checked_cycle(&g, &h)?;
    pr.verdicts.two_iso_search = Some(sv);
    pr.verdicts.cycle_iso = Some(cv);

    let candidates = if g.edge_count() <= p.exhaustive_edges {
        all_bijections(&g, &h)?
    } else {
        let mut c = vec![positional_bijection(&g, &h)];
        c.extend((0..p.random_candidates).map(|_| random_bijection(&mut rng, &g, &h)));
        c
    };
    let mut ev = MeasurementEvidence {
        dims: p.dims.clone(),
        ..MeasurementEvidence::default()
    };
    for &d in &p.dims {
        let ropts = opts.realize(rng.gen());
        let found = distinguish_witness(&g, &h, &candidates, d, &ropts)?.ok_or_else(|| {
            anyhow!(
                "{}: no witness for a pair that is not cycle isomorphic",
                pr.pair_id
            )
        })?;
        for w in &found {
            ev.distinctions += 1;
            if w.is_conclusive(&g, &h, opts.tol)? {
                ev.conclusive += 1;
            }
        }
        if ev.witness.is_none() {
            if let Some(w) = found.first() {
                ev.witness = Some(json!({ "dimension": d, "distinction": w }));
            }
        }
    }
    pr.evidence = Some(ev);
    Ok(pr)
}

/// Forward direction on constructed 2-isomorphic pairs (every sampled point
/// of the first graph is realizable for the second under the certificate,
/// and the reflection identity holds) and reverse direction on pairs that
/// are not cycle isomorphic (a conclusive distinguishing point exists for
/// every candidate bijection), in each requested dimension.
pub fn main_theorem(opts: &HarnessOptions, p: &MainTheoremParams) -> Result<ExperimentReport> {
    let started = Instant::now();
    let mut pairs = (0..p.pairs)
        .into_par_iter()
        .map(|k| forward_case(opts, p, k))
        .collect::<Result<Vec<_>>>()?;
    pairs.extend(
        (0..p.nonpairs)
            .into_par_iter()
            .map(|k| reverse_case(opts, p, k))
            .collect::<Result<Vec<_>>>()?,
    );
    Ok(finish(
        "main-theorem",
        opts,
        json!(p),
        pairs,
        None,
        Vec::new(),
        started,
    ))
}

#[derive(Debug, Clone, Serialize)]
pub struct NestingParams {
    pub dims: Vec<usize>,
    pub samples: usize,
    /// Named graphs; random ones are added on top.
    #[serde(skip)]
    pub graphs: Vec<(String, Graph)>,
    pub random_graphs: usize,
}

impl Default for NestingParams {
    fn default() -> Self {
        NestingParams {
            dims: vec![1, 2, 3],
            samples: 100,
            graphs: vec![
                ("k4".into(), measiso_core::generate::complete(4)),
                ("c5".into(), measiso_core::generate::cycle(5)),
                ("ladder2".into(), crate::io::ladder(2)),
            ],
            random_graphs: 3,
        }
    }
}

fn nesting_case(
    opts: &HarnessOptions,
    p: &NestingParams,
    id: &str,
    g: &Graph,
    d: usize,
    k: usize,
) -> Result<NestingReport> {
    let mut rng = case_rng(opts.seed, SALT_NESTING, k);
    let ax = EdgeAxisMap::identity(g);
    let mut nested_exact = 0;
    for conf in sample_configurations(g, d, p.samples, rng.gen(), 1.0) {
        let y = lengths_squared(g, &conf, &ax)?;
        let up = conf.zero_padded(d + 1)?;
        if lengths_squared(g, &up, &ax)?.coords == y.coords {
            nested_exact += 1;
        }
    }
    let v = g.vertex_count();
    let mut realized = 0;
    let mut max_residual: f64 = 0.0;
    for conf in sample_configurations(g, v - 1, p.samples, rng.gen(), 1.0) {
        let y = lengths_squared(g, &conf, &ax)?;
        let r = y.max_abs_diff(&lengths_squared(g, &conf.zero_padded(v)?, &ax)?);
        max_residual = max_residual.max(r);
        realized += usize::from(r <= opts.tol);
    }
    for conf in sample_configurations(g, v, p.samples, rng.gen(), 1.0) {
        let y = lengths_squared(g, &conf, &ax)?;
        let r = y.max_abs_diff(&lengths_squared(g, &conf.flattened_to(v - 1)?, &ax)?);
        max_residual = max_residual.max(r);
        realized += usize::from(r <= opts.tol);
    }
    Ok(NestingReport {
        graph_id: format!("{id}@d{d}"),
        vertices: v,
        d,
        samples: p.samples,
        nested_exact,
        stabilization_samples: 2 * p.samples,
        stabilization_realized: realized,
        stabilization_max_residual: max_residual,
    })
}

/// Zero-padding nesting from `d` to `d + 1`, and mutual realizability of
/// samples at `v - 1` and `v` dimensions.
pub fn nesting(opts: &HarnessOptions, p: &NestingParams) -> Result<ExperimentReport> {
    let started = Instant::now();
    let mut graphs = p.graphs.clone();
    for k in 0..p.random_graphs {
        let mut rng = case_rng(opts.seed, SALT_NESTING ^ 0xff, k);
        let e = rng.gen_range(3..=9);
        graphs.push((
            format!("rand-{k:02}"),
            random_connected_multigraph(&mut rng, 2..=6.min(e + 1), e, true),
        ));
    }
    let jobs: Vec<(usize, &String, &Graph, usize)> = graphs
        .iter()
        .flat_map(|(id, g)| p.dims.iter().map(move |&d| (id, g, d)))
        .enumerate()
        .map(|(k, (id, g, d))| (k, id, g, d))
        .collect();
    let nesting = jobs
        .into_par_iter()
        .map(|(k, id, g, d)| nesting_case(opts, p, id, g, d, k))
        .collect::<Result<Vec<_>>>()?;
    let params = json!({
        "dims": p.dims,
        "samples": p.samples,
        "graphs": graphs.iter().map(|(id, g)| json!({"id": id, "graph": g})).collect::<Vec<_>>(),
    });
    Ok(finish(
        "nesting",
        opts,
        params,
        Vec::new(),
        None,
        nesting,
        started,
    ))
}

#[derive(Debug, Clone, Serialize)]
pub struct ThreeConnectedParams {
    #[serde(skip)]
    pub graphs: Vec<(String, Graph)>,
    pub random_graphs: usize,
    pub min_vertices: usize,
    pub max_vertices: usize,
}

impl Default for ThreeConnectedParams {
    fn default() -> Self {
        ThreeConnectedParams {
            graphs: vec![
                ("k4".into(), measiso_core::generate::complete(4)),
                ("k5".into(), measiso_core::generate::complete(5)),
            ],
            random_graphs: 10,
            min_vertices: 5,
            max_vertices: 7,
        }
    }
}

/// A random 3-connected graph with the same vertex and edge counts, when the
/// rejection sampler finds one quickly.
fn same_shape_three_connected<R: Rng + ?Sized>(rng: &mut R, g: &Graph) -> Option<Graph> {
    let (n, e) = (g.vertex_count(), g.edge_count());
    (0..500)
        .map(|_| random_connected_multigraph(rng, n..=n, e, false))
        .find(is_three_connected)
}

fn three_pair(opts: &HarnessOptions, id: String, g: &Graph, h: &Graph) -> Result<PairReport> {
    let mut pr = blank_pair(id, g, h);
    pr.three_connected = true;
    let iso = graph_isomorphic(g, h);
    pr.verdicts.iso = Some(Verdict::from_bool(iso.is_some()));
    pr.verdicts.one_iso = Some(Verdict::from_bool(one_isomorphic(g, h)));
    let (sv, ops) = checked_search(g, h, &opts.search())?;
    let (cv, sigma) = checked_cycle(g, h)?;
    pr.verdicts.two_iso_search = Some(sv);
    pr.verdicts.cycle_iso = Some(cv);
    pr.operations = ops;
    pr.sigma = sigma.map(serde_json::to_value).transpose()?;
    Ok(pr)
}

/// On 3-connected graphs 2-isomorphism must coincide with isomorphism.
/// Pairs: each graph with a random relabelling of itself, each graph with a
/// random 3-connected graph of the same size, and all equal-size pairs of
/// listed graphs.
pub fn three_connected(
    opts: &HarnessOptions,
    p: &ThreeConnectedParams,
) -> Result<ExperimentReport> {
    let started = Instant::now();
    let mut graphs = p.graphs.clone();
    for (id, g) in &graphs {
        ensure!(is_three_connected(g), "{id} is not 3-connected");
    }
    for k in 0..p.random_graphs {
        let mut rng = case_rng(opts.seed, SALT_THREE ^ 0xff, k);
        graphs.push((
            format!("rand-{k:02}"),
            random_three_connected(&mut rng, p.min_vertices..=p.max_vertices),
        ));
    }
    let mut jobs: Vec<(String, usize, Option<usize>)> = Vec::new();
    for (i, (a, ga)) in graphs.iter().enumerate() {
        jobs.push((format!("{a}~relabel"), i, None));
        jobs.push((format!("{a}~same-size"), i, Some(usize::MAX)));
        for (j, (b, gb)) in graphs.iter().enumerate().skip(i + 1) {
            if ga.edge_count() == gb.edge_count() && ga.vertex_count() == gb.vertex_count() {
                jobs.push((format!("{a}~{b}"), i, Some(j)));
            }
        }
    }
    let pairs = jobs
        .into_par_iter()
        .enumerate()
        .map(|(k, (id, i, j))| {
            let mut rng = case_rng(opts.seed, SALT_THREE, k);
            let g = &graphs[i].1;
            let h = match j {
                None => random_relabel(&mut rng, g).0,
                Some(usize::MAX) => match same_shape_three_connected(&mut rng, g) {
                    Some(h) => random_relabel(&mut rng, &h).0,
                    None => random_relabel(&mut rng, g).0,
                },
                Some(j) => graphs[j].1.clone(),
            };
            three_pair(opts, id, g, &h)
        })
        .collect::<Result<Vec<_>>>()?;
    let params = json!({
        "random_graphs": p.random_graphs,
        "min_vertices": p.min_vertices,
        "max_vertices": p.max_vertices,
        "graphs": graphs.iter().map(|(id, g)| json!({"id": id, "graph": g})).collect::<Vec<_>>(),
    });
    Ok(finish(
        "three-connected",
        opts,
        params,
        pairs,
        None,
        Vec::new(),
        started,
    ))
}

//! `check` and `measure`: thin wrappers that turn library results into an
//! exit code plus a JSON document.

use anyhow::{bail, Result};
use measiso_core::measurement::{all_bijections, sample_configurations};
use measiso_core::{
    cycle_isomorphic, distinguish_witness, graph_isomorphic, is_member, lengths_squared,
    project_point, split_fully, two_isomorphic_search, EdgeAxisMap, EdgeBijection, Graph,
    MeasurementPoint, SearchOutcome,
};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::report::Verdict;
use crate::suites::HarnessOptions;

pub const EXIT_EQUIVALENT: i32 = 0;
pub const EXIT_NOT_EQUIVALENT: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

/// What a command prints and how the process exits.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub json: Value,
    /// One-line rendering for `--json false`.
    pub text: String,
}

impl Outcome {
    fn verdict(kind: &str, verdict: Verdict, mut body: Value) -> Self {
        let code = match verdict {
            Verdict::Equivalent => EXIT_EQUIVALENT,
            Verdict::NotEquivalent => EXIT_NOT_EQUIVALENT,
            Verdict::Unknown => EXIT_UNKNOWN,
        };
        body["kind"] = json!(kind);
        body["result"] = json!(verdict);
        Outcome {
            code,
            text: format!("{kind}: {}", verdict.as_str()),
            json: body,
        }
    }

    fn data(json: Value, text: String) -> Self {
        Outcome {
            code: 0,
            json,
            text,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    Iso,
    OneIso,
    TwoIso,
    CycleIso,
}

impl CheckKind {
    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Iso => "iso",
            CheckKind::OneIso => "1iso",
            CheckKind::TwoIso => "2iso",
            CheckKind::CycleIso => "cycleiso",
        }
    }
}

pub fn check(kind: CheckKind, g: &Graph, h: &Graph, opts: &HarnessOptions) -> Result<Outcome> {
    let name = kind.name();
    Ok(match kind {
        CheckKind::Iso => match graph_isomorphic(g, h) {
            Some(map) => Outcome::verdict(name, Verdict::Equivalent, json!({ "witness": map })),
            None => Outcome::verdict(name, Verdict::NotEquivalent, json!({})),
        },
        CheckKind::OneIso => {
            let (sg, g_ops) = split_fully(g);
            let (sh, h_ops) = split_fully(h);
            match graph_isomorphic(&sg.without_isolated(), &sh.without_isolated()) {
                Some(map) => Outcome::verdict(
                    name,
                    Verdict::Equivalent,
                    json!({ "witness": { "g_ops": g_ops, "h_ops": h_ops, "vertex_map": map } }),
                ),
                None => Outcome::verdict(name, Verdict::NotEquivalent, json!({})),
            }
        }
        CheckKind::CycleIso => match cycle_isomorphic(g, h) {
            Ok(Some(sigma)) => {
                Outcome::verdict(name, Verdict::Equivalent, json!({ "witness": sigma }))
            }
            Ok(None) => Outcome::verdict(name, Verdict::NotEquivalent, json!({})),
            Err(measiso_core::Error::CycleCapExceeded(cap)) => Outcome::verdict(
                name,
                Verdict::Unknown,
                json!({ "reason": format!("more than {cap} cycles") }),
            ),
            Err(e) => return Err(e.into()),
        },
        CheckKind::TwoIso => {
            // the cycle route decides; the orbit search supplies replayable operations
            let search = two_isomorphic_search(g, h, &opts.search());
            let by_search = match &search {
                SearchOutcome::Equivalent { .. } => Verdict::Equivalent,
                SearchOutcome::Exhausted { .. } => Verdict::NotEquivalent,
                SearchOutcome::Unknown { .. } => Verdict::Unknown,
            };
            let (verdict, sigma) = match cycle_isomorphic(g, h) {
                Ok(Some(s)) => (Verdict::Equivalent, Some(s)),
                Ok(None) => (Verdict::NotEquivalent, None),
                Err(measiso_core::Error::CycleCapExceeded(_)) => (by_search, None),
                Err(e) => return Err(e.into()),
            };
            let mut body = json!({ "search": search });
            if let Some(s) = sigma {
                body["witness"] = json!(s);
            }
            if let SearchOutcome::Equivalent { witness } = &search {
                body["operations"] = json!(witness);
            }
            Outcome::verdict(name, verdict, body)
        }
    })
}

pub fn sample(g: &Graph, d: usize, n: usize, seed: u64, spread: f64) -> Result<Outcome> {
    if n == 0 {
        bail!("--n must be at least 1");
    }
    let ax = EdgeAxisMap::identity(g);
    let points = sample_configurations(g, d, n, seed, spread)
        .iter()
        .map(|p| lengths_squared(g, p, &ax))
        .collect::<measiso_core::Result<Vec<_>>>()?;
    let text = points
        .iter()
        .map(|p| format!("{:?}", p.coords))
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Outcome::data(json!(points), text))
}

pub fn member(
    g: &Graph,
    target: &MeasurementPoint,
    d: usize,
    opts: &HarnessOptions,
) -> Result<Outcome> {
    let verdict = is_member(g, target, d, &opts.realize(opts.seed))?;
    let text = match verdict.residual() {
        Some(r) => format!("{} (residual {r:.3e})", kind_of(&verdict)),
        None => kind_of(&verdict).to_string(),
    };
    Ok(Outcome::data(json!(verdict), text))
}

fn kind_of(v: &measiso_core::MembershipVerdict) -> &'static str {
    if v.is_realizable() {
        "realizable"
    } else if v.is_infeasible() {
        "infeasible"
    } else {
        "unknown"
    }
}

pub fn project(point: &MeasurementPoint, keep: &[String]) -> Result<Outcome> {
    let p = project_point(point, keep)?;
    let text = format!("{:?}", p.coords);
    Ok(Outcome::data(json!(p), text))
}

/// Which bijections the witness must defeat.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Candidates {
    /// Edge `i` of the first graph to edge `i` of the second.
    Positional,
    /// Every bijection; small graphs only.
    All,
    /// The positional one plus this many random ones.
    Random(usize),
}

impl std::str::FromStr for Candidates {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "positional" => Ok(Candidates::Positional),
            "all" => Ok(Candidates::All),
            n => n
                .parse()
                .map(Candidates::Random)
                .map_err(|_| format!("expected `positional`, `all` or a count, got `{s}`")),
        }
    }
}

fn candidate_list(g: &Graph, h: &Graph, c: Candidates, seed: u64) -> Result<Vec<EdgeBijection>> {
    let positional = EdgeBijection {
        sigma: g.edge_ids().into_iter().zip(h.edge_ids()).collect(),
    };
    Ok(match c {
        Candidates::Positional => vec![positional],
        Candidates::All => all_bijections(g, h)?,
        Candidates::Random(n) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut out = vec![positional];
            for _ in 0..n {
                let mut t = h.edge_ids();
                t.shuffle(&mut rng);
                out.push(EdgeBijection {
                    sigma: g.edge_ids().into_iter().zip(t).collect(),
                });
            }
            out
        }
    })
}

pub fn witness(
    g: &Graph,
    h: &Graph,
    d: usize,
    candidates: Candidates,
    opts: &HarnessOptions,
) -> Result<Outcome> {
    if g.edge_count() != h.edge_count() {
        bail!(
            "graphs have {} and {} edges; measurement sets live in different spaces",
            g.edge_count(),
            h.edge_count()
        );
    }
    let list = candidate_list(g, h, candidates, opts.seed)?;
    let found = distinguish_witness(g, h, &list, d, &opts.realize(opts.seed))?;
    Ok(match found {
        None => Outcome::data(
            json!({ "witness": null, "reason": "cycle isomorphic" }),
            "no witness: the graphs are cycle isomorphic".into(),
        ),
        Some(ds) => {
            let conclusive = ds
                .iter()
                .map(|w| w.is_conclusive(g, h, opts.tol))
                .collect::<measiso_core::Result<Vec<_>>>()?;
            let first = &ds[0];
            let text = format!(
                "cycle {:?}, point {:?} on {:?}",
                first.cycle,
                first.point.coords,
                first.point.axes.axes()
            );
            Outcome::data(
                json!({
                    "witness": {
                        "cycle": first.cycle,
                        "cycle_side": first.cycle_side,
                        "point": first.point,
                    },
                    "candidates": ds.len(),
                    "all_conclusive": conclusive.iter().all(|&c| c),
                    "distinctions": ds,
                }),
                text,
            )
        }
    })
}

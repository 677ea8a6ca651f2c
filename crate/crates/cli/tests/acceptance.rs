//! End-to-end acceptance criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so that every criterion reports even when
//! an earlier one fails; the process exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use measiso_cli::report::{ExperimentReport, Verdict};
use measiso_cli::suites::{
    self, case_rng, CrosscheckParams, HarnessOptions, MainTheoremParams, NestingParams,
    ThreeConnectedParams,
};
use measiso_core::generate::{random_connected_multigraph, random_forest};
use measiso_core::measurement::RealizationObjective;
use measiso_core::{
    enumerate_two_separations, generate, is_member, reversal, EdgeAxisMap, Graph, MeasurementPoint,
    RealizeOptions,
};
use rand::seq::SliceRandom;
use rand::Rng;

const TOL: f64 = 1e-8;
const SEED: u64 = 0;
const SALT: u64 = 0xacce_7000;

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn opts() -> HarnessOptions {
    HarnessOptions {
        seed: SEED,
        tol: TOL,
        ..HarnessOptions::default()
    }
}

fn no_disagreement(report: &ExperimentReport) -> Result<(), String> {
    let s = report.summary();
    ensure(s.all_agree, || {
        let bad: Vec<_> = report
            .pairs
            .iter()
            .filter(|p| !p.agreement(TOL).all() || p.has_unknown(TOL))
            .map(|p| p.pair_id.as_str())
            .take(5)
            .collect();
        format!(
            "{} disagreeing, {} unknown; first: {bad:?}",
            s.disagreeing, s.unknown
        )
    })
}

fn whitney_crosscheck() -> Check {
    let started = Instant::now();
    let p = CrosscheckParams {
        max_edges: 7,
        random_pairs: 200,
        random_max_edges: 10,
        random_max_vertices: 8,
    };
    let report = suites::whitney_crosscheck(&opts(), &p).map_err(|e| format!("{e:#}"))?;
    let elapsed = started.elapsed();
    let tally = report.tally.as_ref().ok_or("no exhaustive tally")?;
    // connected loopless multigraphs with 1..=7 edges, up to isomorphism
    ensure(tally.classes == [1, 2, 5, 12, 33, 103, 333], || {
        format!("class counts {:?}", tally.classes)
    })?;
    ensure(tally.agrees() && tally.disagreements.is_empty(), || {
        format!(
            "exhaustive: {} search-only, {} cycle-only, {} unknown",
            tally.search_only, tally.cycle_only, tally.unknown
        )
    })?;
    let random = report.pairs.len();
    ensure(random >= 200, || format!("only {random} random pairs"))?;
    for pr in &report.pairs {
        let v = &pr.verdicts;
        ensure(
            v.cycle_iso.is_some_and(Verdict::is_known) && v.cycle_iso == v.two_iso_search,
            || {
                format!(
                    "{}: routes {:?} vs {:?}",
                    pr.pair_id, v.cycle_iso, v.two_iso_search
                )
            },
        )?;
    }
    no_disagreement(&report)?;
    ensure(elapsed < Duration::from_secs(300), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "{} exhaustive pairs over {} classes, {} random pairs, zero unknown, {:.1}s",
        tally.pairs,
        tally.classes.iter().sum::<usize>(),
        random,
        elapsed.as_secs_f64()
    ))
}

fn main_theorem() -> Result<ExperimentReport, String> {
    let p = MainTheoremParams {
        pairs: 200,
        nonpairs: 100,
        samples: 20,
        dims: vec![1, 2, 3],
        ..MainTheoremParams::default()
    };
    suites::main_theorem(&opts(), &p).map_err(|e| format!("{e:#}"))
}

fn forward(report: &ExperimentReport) -> Check {
    let fwd: Vec<_> = report
        .pairs
        .iter()
        .filter(|p| p.pair_id.starts_with("fwd-"))
        .collect();
    ensure(fwd.len() >= 200, || format!("only {} pairs", fwd.len()))?;
    let (mut points, mut worst, mut worst_reflection) = (0, 0.0f64, 0.0f64);
    for pr in &fwd {
        ensure(pr.two_iso() == Some(Verdict::Equivalent), || {
            format!("{}: constructed pair not recognized", pr.pair_id)
        })?;
        let ev = pr
            .evidence
            .as_ref()
            .ok_or(format!("{}: no samples", pr.pair_id))?;
        ensure(ev.samples_tested == 60 && ev.realizable == 60, || {
            format!(
                "{}: {}/{} realizable",
                pr.pair_id, ev.realizable, ev.samples_tested
            )
        })?;
        ensure(ev.max_residual <= TOL, || {
            format!("{}: residual {:e}", pr.pair_id, ev.max_residual)
        })?;
        let r = ev.reflection_error.unwrap_or(0.0);
        ensure(r <= 1e-9, || {
            format!("{}: reflection error {r:e}", pr.pair_id)
        })?;
        points += ev.samples_tested;
        worst = worst.max(ev.max_residual);
        worst_reflection = worst_reflection.max(r);
    }
    Ok(format!(
        "{} pairs, {points} points realizable, max residual {worst:.2e}, max reflection error {worst_reflection:.2e}",
        fwd.len()
    ))
}

fn reverse(report: &ExperimentReport) -> Check {
    let rev: Vec<_> = report
        .pairs
        .iter()
        .filter(|p| p.pair_id.starts_with("rev-"))
        .collect();
    ensure(rev.len() >= 100, || format!("only {} pairs", rev.len()))?;
    let mut total = 0;
    for pr in &rev {
        ensure(
            pr.verdicts.cycle_iso == Some(Verdict::NotEquivalent),
            || format!("{}: pair is cycle isomorphic", pr.pair_id),
        )?;
        let (ge, he) = (
            pr.g["edges"].as_array().map(Vec::len),
            pr.h["edges"].as_array().map(Vec::len),
        );
        ensure(ge.is_some() && ge == he, || {
            format!("{}: edge counts {ge:?} and {he:?}", pr.pair_id)
        })?;
        let ev = pr
            .evidence
            .as_ref()
            .ok_or(format!("{}: no witness", pr.pair_id))?;
        // at least one distinction per dimension, every one re-verified
        ensure(
            ev.distinctions >= ev.dims.len() && ev.conclusive == ev.distinctions,
            || {
                format!(
                    "{}: {}/{} conclusive",
                    pr.pair_id, ev.conclusive, ev.distinctions
                )
            },
        )?;
        total += ev.distinctions;
    }
    Ok(format!(
        "{} pairs, {total} witnesses conclusive across d=1,2,3",
        rev.len()
    ))
}

fn unit_on_last(g: &Graph) -> MeasurementPoint {
    let e = g.edge_count();
    let mut y = vec![0.0; e];
    y[e - 1] = 1.0;
    MeasurementPoint::new(EdgeAxisMap::identity(g), y).expect("nonnegative")
}

fn unit_point_on_cycles() -> Check {
    let ropts = RealizeOptions::default();
    let mut forests = 0;
    for k in 3..=6 {
        let c = generate::cycle(k);
        for d in 1..=6 {
            let v = is_member(&c, &unit_on_last(&c), d, &ropts).map_err(|e| e.to_string())?;
            ensure(v.is_infeasible(), || format!("C_{k} at d={d}: {v:?}"))?;
        }
        let mut rng = case_rng(SEED, SALT ^ 4, k);
        let mut family = vec![generate::path(k)];
        family.extend((0..10).map(|_| random_forest(&mut rng, k)));
        for f in &family {
            let t = unit_on_last(f);
            for d in 1..=6 {
                let v = is_member(f, &t, d, &ropts).map_err(|e| e.to_string())?;
                ensure(v.is_realizable() && v.verify(f, &t, TOL), || {
                    format!("forest {} at d={d}: {v:?}", f.to_edge_list().trim())
                })?;
            }
            forests += 1;
        }
    }
    Ok(format!(
        "C_3..C_6 infeasible and {forests} forests realizable for d=1..6"
    ))
}

fn forest_octant() -> Check {
    let ropts = RealizeOptions::default();
    let mut worst = 0.0f64;
    for i in 0..500 {
        let mut rng = case_rng(SEED, SALT ^ 5, i);
        let e = rng.gen_range(1..=10);
        let f = random_forest(&mut rng, e);
        let coords: Vec<f64> = (0..e)
            .map(|_| {
                if rng.gen_bool(0.2) {
                    0.0
                } else {
                    rng.gen_range(0.0..10.0)
                }
            })
            .collect();
        let t = MeasurementPoint::new(EdgeAxisMap::identity(&f), coords).expect("nonnegative");
        let v = is_member(&f, &t, 1, &ropts).map_err(|e| e.to_string())?;
        ensure(v.is_realizable() && v.verify(&f, &t, TOL), || {
            format!("case {i}: {v:?}")
        })?;
        worst = worst.max(v.residual().unwrap_or(0.0));
    }
    Ok(format!(
        "500 targets realizable at d=1, max residual {worst:.2e}"
    ))
}

fn nesting() -> Check {
    let p = NestingParams {
        samples: 100,
        ..NestingParams::default()
    };
    let report = suites::nesting(&opts(), &p).map_err(|e| format!("{e:#}"))?;
    ensure(!report.nesting.is_empty(), || "no graphs".into())?;
    let mut worst = 0.0f64;
    for n in &report.nesting {
        ensure(n.samples == 100 && n.nested_exact == n.samples, || {
            format!("{}: {}/{} nested", n.graph_id, n.nested_exact, n.samples)
        })?;
        ensure(
            n.stabilization_samples > 0
                && n.stabilization_realized == n.stabilization_samples
                && n.stabilization_max_residual <= TOL,
            || {
                format!(
                    "{}: {}/{} stabilized, residual {:e}",
                    n.graph_id,
                    n.stabilization_realized,
                    n.stabilization_samples,
                    n.stabilization_max_residual
                )
            },
        )?;
        worst = worst.max(n.stabilization_max_residual);
    }
    ensure(report.exit_code() == 0, || {
        "report exit code nonzero".into()
    })?;
    Ok(format!(
        "{} (graph, d) cases, 100 samples each, stabilization residual {worst:.2e}",
        report.nesting.len()
    ))
}

fn three_connected() -> Check {
    let report = suites::three_connected(&opts(), &ThreeConnectedParams::default())
        .map_err(|e| format!("{e:#}"))?;
    for name in ["k4~", "k5~"] {
        ensure(
            report.pairs.iter().any(|p| p.pair_id.starts_with(name)),
            || format!("no pairs for {name}"),
        )?;
    }
    let randoms = (0..10)
        .filter(|k| {
            let id = format!("rand-{k:02}~");
            report.pairs.iter().any(|p| p.pair_id.starts_with(&id))
        })
        .count();
    ensure(randoms == 10, || format!("{randoms} random graphs"))?;
    let (mut eq, mut ne) = (0, 0);
    for pr in &report.pairs {
        let v = &pr.verdicts;
        ensure(
            pr.three_connected
                && v.iso.is_some_and(Verdict::is_known)
                && v.iso == v.cycle_iso
                && v.iso == v.two_iso_search,
            || {
                format!(
                    "{}: iso {:?}, cycle {:?}, search {:?}",
                    pr.pair_id, v.iso, v.cycle_iso, v.two_iso_search
                )
            },
        )?;
        if v.iso == Some(Verdict::Equivalent) {
            eq += 1;
        } else {
            ne += 1;
        }
    }
    no_disagreement(&report)?;
    Ok(format!(
        "{} pairs ({eq} isomorphic, {ne} not), 2-iso matches iso on all",
        report.pairs.len()
    ))
}

fn numerical_hygiene() -> Check {
    let mut worst = 0.0f64;
    for i in 0..100 {
        let mut rng = case_rng(SEED, SALT ^ 8, i);
        let e = rng.gen_range(1..=10);
        let g = random_connected_multigraph(&mut rng, 2..=(e + 1).min(8), e, true);
        let d = rng.gen_range(1..=3);
        let coords = (0..e).map(|_| rng.gen_range(0.0..4.0)).collect();
        let t = MeasurementPoint::new(EdgeAxisMap::identity(&g), coords).expect("nonnegative");
        let obj = RealizationObjective::new(&g, &t, d).map_err(|e| e.to_string())?;
        let x: Vec<f64> = (0..obj.parameters())
            .map(|_| rng.gen_range(-2.0..2.0))
            .collect();
        let grad = obj.gradient(&x);
        let h = 1e-6;
        let fd: Vec<f64> = (0..x.len())
            .map(|j| {
                let (mut a, mut b) = (x.clone(), x.clone());
                a[j] += h;
                b[j] -= h;
                (obj.value(&a) - obj.value(&b)) / (2.0 * h)
            })
            .collect();
        let diff = grad
            .iter()
            .zip(&fd)
            .map(|(a, b)| (a - b).powi(2))
            .sum::<f64>()
            .sqrt();
        let scale = fd.iter().map(|v| v * v).sum::<f64>().sqrt().max(1.0);
        let rel = diff / scale;
        ensure(rel <= 1e-5, || {
            format!("gradient case {i}: relative error {rel:e}")
        })?;
        worst = worst.max(rel);
    }
    let mut involutions = 0;
    let mut i = 0;
    while involutions < 100 {
        let mut rng = case_rng(SEED, SALT ^ 9, i);
        i += 1;
        ensure(i < 10_000, || "too few graphs with a 2-separation".into())?;
        let e = rng.gen_range(3..=10);
        let g = random_connected_multigraph(&mut rng, 3..=(e + 1).min(8), e, true);
        let seps = enumerate_two_separations(&g);
        let Some(sep) = seps.choose(&mut rng) else {
            continue;
        };
        let once = reversal(&g, sep).map_err(|e| e.to_string())?;
        let twice = reversal(&once, sep).map_err(|e| e.to_string())?;
        ensure(twice == g, || {
            format!("reversal twice differs on {}", g.to_edge_list().trim())
        })?;
        involutions += 1;
    }
    Ok(format!(
        "gradient relative error {worst:.2e} on 100 instances; 100 reversals are involutions"
    ))
}

fn main() -> ExitCode {
    let started = Instant::now();
    let mut failed = 0;
    let mut report = |n: usize, name: &str, r: Check| match &r {
        Ok(detail) => println!("PASS {n} {name}: {detail}"),
        Err(why) => {
            failed += 1;
            println!("FAIL {n} {name}: {why}");
        }
    };
    report(1, "whitney-crosscheck", whitney_crosscheck());
    match main_theorem() {
        Ok(mt) => {
            report(2, "forward-direction", forward(&mt));
            report(3, "reverse-direction", reverse(&mt));
        }
        Err(e) => {
            report(2, "forward-direction", Err(e.clone()));
            report(3, "reverse-direction", Err(e));
        }
    }
    report(4, "cycle-unit-point", unit_point_on_cycles());
    report(5, "forest-octant", forest_octant());
    report(6, "nesting-stabilization", nesting());
    report(7, "three-connected", three_connected());
    report(8, "numerical-hygiene", numerical_hygiene());
    println!(
        "acceptance: {} of 8 criteria failed ({:.1}s)",
        failed,
        started.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

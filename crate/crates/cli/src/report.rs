//! Experiment reports. Agreement flags and summaries are derived from the
//! stored verdicts at serialization time and never stored themselves.

use serde::{Deserialize, Serialize, Serializer};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Equivalent,
    NotEquivalent,
    Unknown,
}

impl Verdict {
    pub fn from_bool(equivalent: bool) -> Self {
        if equivalent {
            Verdict::Equivalent
        } else {
            Verdict::NotEquivalent
        }
    }

    pub fn is_known(self) -> bool {
        self != Verdict::Unknown
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Equivalent => "equivalent",
            Verdict::NotEquivalent => "not-equivalent",
            Verdict::Unknown => "unknown",
        }
    }
}

/// One verdict per decider; `None` when the decider was not run on the case.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeciderVerdicts {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iso: Option<Verdict>,
    #[serde(rename = "1iso", skip_serializing_if = "Option::is_none")]
    pub one_iso: Option<Verdict>,
    #[serde(rename = "2iso-search", skip_serializing_if = "Option::is_none")]
    pub two_iso_search: Option<Verdict>,
    #[serde(rename = "cycleiso", skip_serializing_if = "Option::is_none")]
    pub cycle_iso: Option<Verdict>,
}

/// Sampled evidence about the measurement sets of a pair.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct MeasurementEvidence {
    pub dims: Vec<usize>,
    /// Sampled points of the first graph checked against the second.
    pub samples_tested: usize,
    pub realizable: usize,
    pub max_residual: f64,
    pub mean_residual: f64,
    /// Largest deviation of the reflection identity over the samples.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reflection_error: Option<f64>,
    /// Distinguishing points built, and how many re-verified on both sides.
    pub distinctions: usize,
    pub conclusive: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl MeasurementEvidence {
    /// Equivalent when every sample was realizable, not equivalent when every
    /// distinguishing point was conclusive, unknown otherwise.
    pub fn verdict(&self, tol: f64) -> Verdict {
        let reflection_ok = self.reflection_error.is_none_or(|r| r <= 1e-9);
        if self.samples_tested > 0
            && self.realizable == self.samples_tested
            && self.max_residual <= tol
            && reflection_ok
        {
            Verdict::Equivalent
        } else if self.samples_tested == 0
            && self.distinctions > 0
            && self.conclusive == self.distinctions
        {
            Verdict::NotEquivalent
        } else {
            Verdict::Unknown
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairReport {
    pub pair_id: String,
    pub edges: usize,
    pub g: Value,
    pub h: Value,
    pub verdicts: DeciderVerdicts,
    /// Ground truth known from how the pair was built.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constructed: Option<Verdict>,
    /// Both graphs are 3-connected, so 2-isomorphism must coincide with isomorphism.
    pub three_connected: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub evidence: Option<MeasurementEvidence>,
    /// Edge map certifying 2-isomorphism, when one was found.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Value>,
    /// Reversal/split witness from the orbit search, when one was found.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub operations: Option<Value>,
}

/// Agreement checks for one pair; each is `None` when it does not apply.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Agreement {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub routes_agree: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iso_implies_2iso: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub one_iso_implies_2iso: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iso_iff_2iso: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matches_construction: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub measurement_agrees: Option<bool>,
}

impl Agreement {
    fn flags(&self) -> [Option<bool>; 6] {
        [
            self.routes_agree,
            self.iso_implies_2iso,
            self.one_iso_implies_2iso,
            self.iso_iff_2iso,
            self.matches_construction,
            self.measurement_agrees,
        ]
    }

    pub fn all(&self) -> bool {
        self.flags().iter().all(|f| f.unwrap_or(true))
    }
}

impl PairReport {
    /// The 2-isomorphism verdict the pair is judged by: the cycle route when
    /// it ran, the orbit search otherwise.
    pub fn two_iso(&self) -> Option<Verdict> {
        self.verdicts.cycle_iso.or(self.verdicts.two_iso_search)
    }

    /// Some decider, or the measurement evidence, gave no answer.
    pub fn has_unknown(&self, tol: f64) -> bool {
        let v = &self.verdicts;
        [v.iso, v.one_iso, v.two_iso_search, v.cycle_iso]
            .iter()
            .flatten()
            .any(|x| !x.is_known())
            || self
                .evidence
                .as_ref()
                .is_some_and(|e| !e.verdict(tol).is_known())
    }

    pub fn agreement(&self, tol: f64) -> Agreement {
        let v = &self.verdicts;
        let known = |x: Option<Verdict>| x.filter(|x| x.is_known());
        let two = known(self.two_iso());
        let implies = |a: Option<Verdict>| {
            Some(known(a)? != Verdict::Equivalent || two? == Verdict::Equivalent)
        };
        Agreement {
            routes_agree: known(v.two_iso_search)
                .zip(known(v.cycle_iso))
                .map(|(a, b)| a == b),
            iso_implies_2iso: implies(v.iso),
            one_iso_implies_2iso: implies(v.one_iso),
            iso_iff_2iso: if self.three_connected {
                known(v.iso).zip(two).map(|(a, b)| a == b)
            } else {
                None
            },
            matches_construction: self.constructed.zip(two).map(|(c, t)| c == t),
            measurement_agrees: self
                .evidence
                .as_ref()
                .map(|e| e.verdict(tol))
                .filter(|m| m.is_known())
                .zip(two)
                .map(|(m, t)| m == t),
        }
    }
}

/// Pair counts by (orbit route, cycle route) verdict over an exhaustive family.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct RouteTally {
    pub max_edges: usize,
    /// Isomorphism classes per edge count, starting at one edge.
    pub classes: Vec<usize>,
    pub pairs: usize,
    pub both_equivalent: usize,
    pub both_not_equivalent: usize,
    pub search_only: usize,
    pub cycle_only: usize,
    pub unknown: usize,
    /// Ids of disagreeing pairs, for replay.
    pub disagreements: Vec<String>,
}

impl RouteTally {
    pub fn agrees(&self) -> bool {
        self.search_only == 0 && self.cycle_only == 0 && self.unknown == 0
    }
}

/// Per-graph results of the nesting and stabilization checks.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NestingReport {
    pub graph_id: String,
    pub vertices: usize,
    pub d: usize,
    pub samples: usize,
    /// Samples at `d` whose zero-padded configuration reproduces them exactly at `d + 1`.
    pub nested_exact: usize,
    /// Samples checked between `v - 1` and `v` in each direction.
    pub stabilization_samples: usize,
    pub stabilization_realized: usize,
    pub stabilization_max_residual: f64,
}

impl NestingReport {
    pub fn agrees(&self, tol: f64) -> bool {
        self.nested_exact == self.samples
            && self.stabilization_realized == self.stabilization_samples
            && self.stabilization_max_residual <= tol
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub suite: String,
    pub seed: u64,
    pub tol: f64,
    pub params: Value,
    /// Sorted by pair id.
    pub pairs: Vec<PairReport>,
    pub tally: Option<RouteTally>,
    /// Sorted by graph id.
    pub nesting: Vec<NestingReport>,
    pub elapsed_ms: u128,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub cases: usize,
    pub agreeing: usize,
    pub disagreeing: usize,
    pub unknown: usize,
    pub all_agree: bool,
}

impl ExperimentReport {
    /// Each case counts once: disagreeing if any applicable flag fails,
    /// else unknown if some verdict is missing, else agreeing.
    pub fn summary(&self) -> Summary {
        let mut s = Summary {
            cases: 0,
            agreeing: 0,
            disagreeing: 0,
            unknown: 0,
            all_agree: true,
        };
        for p in &self.pairs {
            s.cases += 1;
            if !p.agreement(self.tol).all() {
                s.disagreeing += 1;
            } else if p.has_unknown(self.tol) {
                s.unknown += 1;
            } else {
                s.agreeing += 1;
            }
        }
        if let Some(t) = &self.tally {
            s.cases += t.pairs;
            s.disagreeing += t.search_only + t.cycle_only;
            s.unknown += t.unknown;
            s.agreeing += t.both_equivalent + t.both_not_equivalent;
        }
        for n in &self.nesting {
            s.cases += 1;
            if n.agrees(self.tol) {
                s.agreeing += 1;
            } else {
                s.disagreeing += 1;
            }
        }
        s.all_agree = s.disagreeing == 0 && s.unknown == 0;
        s
    }

    /// 0 when every check agrees, 1 on any disagreement, 2 when the only
    /// failures are unknown verdicts.
    pub fn exit_code(&self) -> i32 {
        let s = self.summary();
        if s.disagreeing > 0 {
            1
        } else if s.unknown > 0 {
            2
        } else {
            0
        }
    }
}

#[derive(Serialize)]
struct PairView<'a> {
    #[serde(flatten)]
    pair: &'a PairReport,
    agreement: Agreement,
}

#[derive(Serialize)]
struct TallyView<'a> {
    #[serde(flatten)]
    tally: &'a RouteTally,
    agrees: bool,
}

#[derive(Serialize)]
struct NestingView<'a> {
    #[serde(flatten)]
    nesting: &'a NestingReport,
    agrees: bool,
}

#[derive(Serialize)]
struct ReportView<'a> {
    suite: &'a str,
    seed: u64,
    tol: f64,
    params: &'a Value,
    summary: Summary,
    #[serde(skip_serializing_if = "Option::is_none")]
    tally: Option<TallyView<'a>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pairs: Vec<PairView<'a>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    nesting: Vec<NestingView<'a>>,
    elapsed_ms: u128,
}

impl Serialize for ExperimentReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ReportView {
            suite: &self.suite,
            seed: self.seed,
            tol: self.tol,
            params: &self.params,
            summary: self.summary(),
            tally: self.tally.as_ref().map(|t| TallyView {
                tally: t,
                agrees: t.agrees(),
            }),
            pairs: self
                .pairs
                .iter()
                .map(|p| PairView {
                    pair: p,
                    agreement: p.agreement(self.tol),
                })
                .collect(),
            nesting: self
                .nesting
                .iter()
                .map(|n| NestingView {
                    nesting: n,
                    agrees: n.agrees(self.tol),
                })
                .collect(),
            elapsed_ms: self.elapsed_ms,
        }
        .serialize(s)
    }
}

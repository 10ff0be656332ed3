//! Report records and their JSON-lines and CSV renderings.

use std::collections::BTreeMap;

use reflexive_core::pathcond::{PathConditionVerdict, Witness};
use reflexive_core::slupecki::{SlupeckiOutcome, Verdict};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationRecord {
    pub schema_version: u32,
    pub canonical_word: String,
    pub girth: usize,
    pub automorphism_count: usize,
    pub path_condition: PathConditionReport,
    pub slupecki: Vec<SlupeckiReport>,
    /// Set when two verdicts contradict each other.
    pub mismatch: bool,
    pub errors: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathConditionReport {
    pub syntactic: Option<SyntacticReport>,
    pub bruteforce: Option<BruteforceReport>,
    pub witness: Option<WitnessReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyntacticReport {
    pub fails: bool,
    pub witness: WitnessShape,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessShape {
    AlmostSymmetric,
    SStarDecomposition { s: String, k: usize },
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum BruteforceReport {
    Computed { fails: bool },
    Skipped { max_girth: usize },
}

/// Outcome of trying `W_N(P)` on every spanning path `P`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub n: usize,
    pub separates_all: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchVerdict {
    NoCounterexample,
    Counterexample,
    Inconclusive,
}

/// Operation table as a flat array in mixed radix, first argument most
/// significant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableReport {
    pub radices: Vec<usize>,
    pub entries: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlupeckiReport {
    pub arity: usize,
    pub verdict: SearchVerdict,
    pub nodes_explored: u64,
    pub counterexample: Option<TableReport>,
}

impl From<&PathConditionVerdict> for SyntacticReport {
    fn from(v: &PathConditionVerdict) -> Self {
        let witness = match &v.witness {
            Witness::AlmostSymmetric => WitnessShape::AlmostSymmetric,
            Witness::SStarDecomposition { s, k } => WitnessShape::SStarDecomposition { s: s.to_string(), k: *k },
            Witness::None => WitnessShape::None,
        };
        SyntacticReport { fails: v.fails, witness }
    }
}

impl From<&SlupeckiOutcome> for SlupeckiReport {
    fn from(o: &SlupeckiOutcome) -> Self {
        let (verdict, counterexample) = match &o.verdict {
            Verdict::NoCounterexample => (SearchVerdict::NoCounterexample, None),
            Verdict::Inconclusive => (SearchVerdict::Inconclusive, None),
            Verdict::Counterexample(t) => (
                SearchVerdict::Counterexample,
                Some(TableReport { radices: vec![t.domain_size(); t.arity()], entries: t.entries().to_vec() }),
            ),
        };
        SlupeckiReport { arity: o.arity, verdict, nodes_explored: o.nodes_explored, counterexample }
    }
}

impl ClassificationRecord {
    pub fn is_inconclusive(&self) -> bool {
        self.slupecki.iter().any(|s| s.verdict == SearchVerdict::Inconclusive)
    }

    /// Recomputes `mismatch`: the syntactic and brute-force verdicts differ,
    /// a separating witness contradicts a failing verdict, or a
    /// counterexample turns up on a cycle of girth at least 4 that
    /// satisfies the path condition.
    pub fn detect_mismatch(&self) -> bool {
        let pc = &self.path_condition;
        let syn = pc.syntactic.as_ref().map(|s| s.fails);
        let brute = match pc.bruteforce {
            Some(BruteforceReport::Computed { fails }) => Some(fails),
            _ => None,
        };
        if let (Some(a), Some(b)) = (syn, brute) {
            if a != b {
                return true;
            }
        }
        let fails = syn.or(brute);
        if pc.witness.as_ref().is_some_and(|w| w.separates_all) && fails == Some(true) {
            return true;
        }
        let satisfied = fails == Some(false) || pc.witness.as_ref().is_some_and(|w| w.separates_all);
        self.girth >= 4 && satisfied && self.slupecki.iter().any(|s| s.verdict == SearchVerdict::Counterexample)
    }
}

/// Wall time per phase, kept out of the report so reports stay byte-stable.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TimingRecord {
    pub canonical_word: String,
    pub cached: bool,
    pub phases_ms: BTreeMap<String, f64>,
}

pub fn to_json_lines<T: Serialize>(items: &[T]) -> serde_json::Result<String> {
    let mut out = String::new();
    for item in items {
        out.push_str(&serde_json::to_string(item)?);
        out.push('\n');
    }
    Ok(out)
}

#[derive(Serialize)]
struct CsvRow<'a> {
    canonical_word: &'a str,
    girth: usize,
    automorphism_count: usize,
    syntactic: String,
    syntactic_witness: String,
    bruteforce: String,
    witness: String,
    slupecki: String,
    mismatch: bool,
    errors: String,
}

fn fails_text(fails: bool) -> String {
    if fails { "fails" } else { "holds" }.to_string()
}

/// One summary row per record. Columns that did not run are left empty.
pub fn to_csv(records: &[ClassificationRecord]) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in records {
        let pc = &r.path_condition;
        let witness_shape = match pc.syntactic.as_ref().map(|s| &s.witness) {
            Some(WitnessShape::AlmostSymmetric) => "almost_symmetric".to_string(),
            Some(WitnessShape::SStarDecomposition { s, k }) => format!("s={s};k={k}"),
            Some(WitnessShape::None) | None => String::new(),
        };
        let slupecki: Vec<String> = r
            .slupecki
            .iter()
            .map(|s| {
                let v = match s.verdict {
                    SearchVerdict::NoCounterexample => "none",
                    SearchVerdict::Counterexample => "found",
                    SearchVerdict::Inconclusive => "inconclusive",
                };
                format!("k{}:{v}", s.arity)
            })
            .collect();
        w.serialize(CsvRow {
            canonical_word: &r.canonical_word,
            girth: r.girth,
            automorphism_count: r.automorphism_count,
            syntactic: pc.syntactic.as_ref().map(|s| fails_text(s.fails)).unwrap_or_default(),
            syntactic_witness: witness_shape,
            bruteforce: match pc.bruteforce {
                Some(BruteforceReport::Computed { fails }) => fails_text(fails),
                Some(BruteforceReport::Skipped { .. }) => "skipped".to_string(),
                None => String::new(),
            },
            witness: pc.witness.as_ref().map(|w| format!("N={};separates_all={}", w.n, w.separates_all)).unwrap_or_default(),
            slupecki: slupecki.join(";"),
            mismatch: r.mismatch,
            errors: r.errors.join("; "),
        })?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

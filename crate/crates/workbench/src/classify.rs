//! The classification run: per-cycle pipeline and the worker pool.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use reflexive_core::digraph::{automorphisms, enumerate_cycles};
use reflexive_core::pathcond::{
    path_condition_bruteforce, path_condition_by_construction, path_condition_syntactic, WitnessParams,
};
use reflexive_core::slupecki::find_slupecki_counterexample_until;
use reflexive_core::CycleId;
use serde::Serialize;

use crate::args::{ClassifyArgs, MethodName};
use crate::cache::Cache;
use crate::report::{
    BruteforceReport, ClassificationRecord, PathConditionReport, SlupeckiReport, SyntacticReport, TimingRecord,
    WitnessReport, SCHEMA_VERSION,
};
use crate::CliError;

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub girths: RangeInclusive<usize>,
    pub methods: BTreeSet<MethodName>,
    pub witness_n: Option<usize>,
    pub arity: Option<usize>,
    pub node_budget: u64,
    pub wall_budget: Option<Duration>,
    pub bruteforce_max_girth: usize,
    pub jobs: usize,
    pub cache: Option<PathBuf>,
}

/// The parts of the config that can change a record, resolved for one
/// girth. Worker count, wall cap and output options are left out: they
/// never change a conclusive record, and inconclusive ones are not cached.
#[derive(Serialize)]
struct Fingerprint<'a> {
    methods: &'a BTreeSet<MethodName>,
    witness_n: Option<usize>,
    arities: Vec<usize>,
    node_budget: u64,
    bruteforce_max_girth: usize,
}

impl RunConfig {
    pub fn from_args(a: &ClassifyArgs) -> RunConfig {
        let jobs = a.jobs.map(|j| j as usize).unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
        RunConfig {
            girths: a.girth.clone(),
            methods: a.methods.iter().copied().collect(),
            witness_n: a.witness_n.map(|n| n as usize),
            arity: a.arity.map(|k| k as usize),
            node_budget: a.budget_nodes,
            wall_budget: a.budget_secs.map(Duration::from_secs_f64),
            bruteforce_max_girth: a.bruteforce_max_girth,
            jobs,
            cache: a.cache.clone(),
        }
    }

    /// Arities searched at a girth: the override if given, else 2, plus 3
    /// at girth 4.
    pub fn arities(&self, girth: usize) -> Vec<usize> {
        match self.arity {
            Some(k) => vec![k],
            None if girth == 4 => vec![2, 3],
            None => vec![2],
        }
    }

    fn witness_params(&self, girth: usize) -> WitnessParams {
        match self.witness_n {
            Some(n) => WitnessParams::new(n).expect("parser rejects 0"),
            None => WitnessParams::for_girth(girth),
        }
    }

    pub fn fingerprint(&self, girth: usize) -> String {
        let fp = Fingerprint {
            methods: &self.methods,
            witness_n: self.methods.contains(&MethodName::Witness).then(|| self.witness_params(girth).n()),
            arities: if self.methods.contains(&MethodName::Slupecki) { self.arities(girth) } else { vec![] },
            node_budget: self.node_budget,
            bruteforce_max_girth: self.bruteforce_max_girth,
        };
        serde_json::to_string(&fp).expect("fingerprint serializes")
    }
}

fn timed<T>(phases: &mut BTreeMap<String, f64>, name: String, f: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let out = f();
    phases.insert(name, start.elapsed().as_secs_f64() * 1e3);
    out
}

/// Runs every configured method on one cycle. Failures are recorded in the
/// record's `errors` and do not stop the other methods.
pub fn classify_cycle(c: &CycleId, cfg: &RunConfig) -> (ClassificationRecord, TimingRecord) {
    let n = c.girth();
    let mut phases = BTreeMap::new();
    let mut errors = Vec::new();
    let mut pc = PathConditionReport::default();
    let automorphism_count = match automorphisms(&c.digraph()) {
        Ok(a) => a.len(),
        Err(e) => {
            errors.push(format!("automorphisms: {e}"));
            0
        }
    };
    if cfg.methods.contains(&MethodName::Syntactic) {
        let v = timed(&mut phases, "syntactic".into(), || path_condition_syntactic(c));
        pc.syntactic = Some(SyntacticReport::from(&v));
    }
    if cfg.methods.contains(&MethodName::Bruteforce) {
        pc.bruteforce = if n > cfg.bruteforce_max_girth {
            Some(BruteforceReport::Skipped { max_girth: cfg.bruteforce_max_girth })
        } else {
            match timed(&mut phases, "bruteforce".into(), || path_condition_bruteforce(c, cfg.bruteforce_max_girth)) {
                Ok(v) => Some(BruteforceReport::Computed { fails: v.fails }),
                Err(e) => {
                    errors.push(format!("bruteforce: {e}"));
                    None
                }
            }
        };
    }
    if cfg.methods.contains(&MethodName::Witness) {
        let params = cfg.witness_params(n);
        match timed(&mut phases, "witness".into(), || path_condition_by_construction(c, params)) {
            Ok(v) => pc.witness = Some(WitnessReport { n: params.n(), separates_all: v.is_some() }),
            Err(e) => errors.push(format!("witness: {e}")),
        }
    }
    let mut slupecki = Vec::new();
    if cfg.methods.contains(&MethodName::Slupecki) {
        for k in cfg.arities(n) {
            let start = Instant::now();
            let deadline = cfg.wall_budget.map(|d| start + d);
            let stop = || deadline.is_some_and(|d| Instant::now() >= d);
            match timed(&mut phases, format!("slupecki_k{k}"), || find_slupecki_counterexample_until(c, k, cfg.node_budget, &stop)) {
                Ok(o) => slupecki.push(SlupeckiReport::from(&o)),
                Err(e) => errors.push(format!("slupecki k={k}: {e}")),
            }
        }
    }
    let word = c.word().to_string();
    let mut record = ClassificationRecord {
        schema_version: SCHEMA_VERSION,
        canonical_word: word.clone(),
        girth: n,
        automorphism_count,
        path_condition: pc,
        slupecki,
        mismatch: false,
        errors,
    };
    record.mismatch = record.detect_mismatch();
    (record, TimingRecord { canonical_word: word, cached: false, phases_ms: phases })
}

/// Classifies every cycle in the girth range, in canonical order.
pub fn run(cfg: &RunConfig) -> Result<Vec<(ClassificationRecord, TimingRecord)>, CliError> {
    let mut cycles = Vec::new();
    for g in cfg.girths.clone() {
        cycles.extend(enumerate_cycles(g)?);
    }
    let cache = match &cfg.cache {
        Some(dir) => Some(Cache::open(dir).map_err(|e| CliError::io(dir, e))?),
        None => None,
    };
    let fingerprints: BTreeMap<usize, String> = cfg.girths.clone().map(|g| (g, cfg.fingerprint(g))).collect();
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<(ClassificationRecord, TimingRecord)>>> = cycles.iter().map(|_| Mutex::new(None)).collect();
    let cache_errors = Mutex::new(Vec::new());
    std::thread::scope(|scope| {
        for _ in 0..cfg.jobs.max(1).min(cycles.len().max(1)) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(c) = cycles.get(i) else { break };
                let word = c.word().to_string();
                let key = cache.as_ref().map(|_| Cache::key(&word, &fingerprints[&c.girth()]));
                let hit = cache.as_ref().zip(key.as_ref()).and_then(|(cache, key)| cache.get(key, &word));
                let result = match hit {
                    Some(record) => (record, TimingRecord { canonical_word: word, cached: true, phases_ms: BTreeMap::new() }),
                    None => {
                        let (record, timing) = classify_cycle(c, cfg);
                        if let (Some(cache), Some(key)) = (&cache, &key) {
                            if record.errors.is_empty() && !record.is_inconclusive() {
                                if let Err(e) = cache.put(key, &record) {
                                    cache_errors.lock().expect("no poisoned lock").push(e);
                                }
                            }
                        }
                        (record, timing)
                    }
                };
                *slots[i].lock().expect("no poisoned lock") = Some(result);
            });
        }
    });
    if let Some(e) = cache_errors.into_inner().expect("no poisoned lock").into_iter().next() {
        let dir = cfg.cache.as_ref().expect("errors only arise with a cache");
        return Err(CliError::io(dir, e));
    }
    Ok(slots.into_iter().map(|s| s.into_inner().expect("no poisoned lock").expect("every slot is filled")).collect())
}

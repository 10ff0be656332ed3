//! Polymorphisms of reflexive cycles: the search for surjective operations
//! that are not essentially unary, the relation `theta`, the embedding
//! criterion and the alternating-word connectivity check.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use crate::digraph::{for_each_embedding, product, CycleId, Digraph};
use crate::homsearch::{is_essentially_unary, is_polymorphism, reach};
use crate::words::{Symbol, Word};
use crate::{Error, Result};

/// An operation `{0..n}^k -> {0..n}` stored as a table indexed in mixed
/// radix with `x_1` the most significant digit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OperationTable {
    n: usize,
    arity: usize,
    entries: Vec<usize>,
}

impl OperationTable {
    pub fn new(n: usize, arity: usize, entries: Vec<usize>) -> Result<OperationTable> {
        let expected = n.pow(arity as u32);
        if entries.len() != expected {
            return Err(Error::TableSize { got: entries.len(), expected });
        }
        if let Some(&bad) = entries.iter().find(|&&e| e >= n) {
            return Err(Error::VertexOutOfRange { vertex: bad, count: n });
        }
        Ok(OperationTable { n, arity, entries })
    }

    pub fn from_fn(n: usize, arity: usize, mut f: impl FnMut(&[usize]) -> usize) -> OperationTable {
        let mut x = vec![0usize; arity];
        let entries = (0..n.pow(arity as u32))
            .map(|t| {
                decode(t, n, &mut x);
                f(&x)
            })
            .collect();
        OperationTable { n, arity, entries }
    }

    pub fn domain_size(&self) -> usize {
        self.n
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn index_of(&self, x: &[usize]) -> usize {
        x.iter().fold(0, |acc, &c| acc * self.n + c)
    }

    pub fn eval(&self, x: &[usize]) -> usize {
        self.entries[self.index_of(x)]
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.n];
        self.entries.iter().for_each(|&e| seen[e] = true);
        seen.into_iter().all(|b| b)
    }
}

fn decode(mut t: usize, n: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = t % n;
        t /= n;
    }
}

/// Membership in `theta`: the `n`-tuple has fewer than `n` distinct values.
pub fn theta_membership(tuple: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n.max(tuple.iter().max().map_or(0, |m| m + 1))];
    let mut distinct = 0;
    for &a in tuple {
        if !seen[a] {
            seen[a] = true;
            distinct += 1;
        }
    }
    distinct < n
}

/// Whether `f` preserves `theta`, using the characterisation of its
/// polymorphisms: the non-surjective and the essentially unary operations.
/// Below three elements `theta` is empty or the diagonal, preserved by
/// every operation.
pub fn preserves_theta(f: &OperationTable) -> bool {
    f.domain_size() < 3 || !f.is_surjective() || is_essentially_unary(f).is_some()
}

/// Whether `f` preserves `theta`, checked on every selection of `k`
/// columns from `theta`. Only for domains of size at most 3.
pub fn preserves_theta_direct(f: &OperationTable) -> Result<bool> {
    let (n, k) = (f.domain_size(), f.arity());
    if n > 3 {
        return Err(Error::Unsupported("direct theta check needs a domain of size at most 3"));
    }
    let mut col = vec![0usize; n];
    let theta: Vec<Vec<usize>> = (0..n.pow(n as u32))
        .filter_map(|t| {
            decode(t, n, &mut col);
            theta_membership(&col, n).then(|| col.clone())
        })
        .collect();
    let total = theta.len().pow(k as u32);
    let mut pick = vec![0usize; k];
    let mut row = vec![0usize; k];
    let mut image = vec![0usize; n];
    for sel in 0..total {
        decode(sel, theta.len(), &mut pick);
        for i in 0..n {
            for (j, &c) in pick.iter().enumerate() {
                row[j] = theta[c][i];
            }
            image[i] = f.eval(&row);
        }
        if !theta_membership(&image, n) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Every surjective polymorphism of this arity is essentially unary.
    NoCounterexample,
    Counterexample(OperationTable),
    /// The node budget or the stop request ran out first.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlupeckiOutcome {
    pub verdict: Verdict,
    pub arity: usize,
    pub nodes_explored: u64,
}

/// Default node budget per search.
pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

// How often the stop callback is polled.
const STOP_POLL: u64 = 1 << 12;

/// Backtracking over the table of a `k`-ary operation on the cycle.
/// Domains are value bitmasks; constraints are the arcs of `G^k`.
struct Engine<'a> {
    full: u32,
    out_adj: Vec<Vec<u32>>,
    in_adj: Vec<Vec<u32>>,
    sup_out: Vec<u32>,
    sup_in: Vec<u32>,
    dom: Vec<u32>,
    trail: Vec<(u32, u32)>,
    queue: Vec<u32>,
    queued: Vec<bool>,
    nodes: u64,
    budget: u64,
    should_stop: &'a dyn Fn() -> bool,
    stopped: bool,
}

enum Step {
    Continue,
    Found,
    Stop,
}

impl<'a> Engine<'a> {
    fn new(g: &Digraph, k: usize, budget: u64, should_stop: &'a dyn Fn() -> bool) -> Result<Engine<'a>> {
        let n = g.vertex_count();
        if n > 16 {
            return Err(Error::Unsupported("polymorphism search needs at most 16 vertices"));
        }
        let nv = n.checked_pow(k as u32).filter(|&v| v <= 1 << 20).ok_or(Error::Unsupported("too many tuples"))?;
        let out_mask: Vec<u32> = (0..n).map(|a| g.out_neighbors(a).iter().fold(0, |m, b| m | 1 << b)).collect();
        let in_mask: Vec<u32> = (0..n).map(|a| g.in_neighbors(a).iter().fold(0, |m, b| m | 1 << b)).collect();
        let table = |masks: &[u32]| -> Vec<u32> {
            (0..1u32 << n)
                .map(|m| (0..n).filter(|&a| m >> a & 1 == 1).fold(0, |acc, a| acc | masks[a]))
                .collect()
        };
        let sup_out = table(&out_mask);
        let sup_in = table(&in_mask);
        let mut out_adj = vec![Vec::new(); nv];
        let mut in_adj = vec![Vec::new(); nv];
        let mut t = vec![0usize; k];
        for u in 0..nv {
            decode(u, n, &mut t);
            // all tuples reachable coordinatewise along arcs
            let mut targets = vec![0usize];
            for &c in &t {
                targets = targets.iter().flat_map(|&acc| g.out_neighbors(c).iter().map(move |b| acc * n + b)).collect();
            }
            for v in targets.into_iter().filter(|&v| v != u) {
                out_adj[u].push(v as u32);
                in_adj[v].push(u as u32);
            }
        }
        let full = (1u32 << n) - 1;
        Ok(Engine {
            full,
            out_adj,
            in_adj,
            sup_out,
            sup_in,
            dom: vec![full; nv],
            trail: Vec::new(),
            queue: Vec::new(),
            queued: vec![false; nv],
            nodes: 0,
            budget,
            should_stop,
            stopped: false,
        })
    }

    fn set(&mut self, v: usize, mask: u32) {
        if self.dom[v] != mask {
            self.trail.push((v as u32, self.dom[v]));
            self.dom[v] = mask;
            if !self.queued[v] {
                self.queued[v] = true;
                self.queue.push(v as u32);
            }
        }
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (v, old) = self.trail.pop().expect("above mark");
            self.dom[v as usize] = old;
        }
    }

    fn propagate(&mut self) -> bool {
        let mut ok = true;
        while let Some(u) = self.queue.pop() {
            let u = u as usize;
            self.queued[u] = false;
            if !ok {
                continue;
            }
            let d = self.dom[u] as usize;
            let (so, si) = (self.sup_out[d], self.sup_in[d]);
            for i in 0..self.out_adj[u].len() {
                let v = self.out_adj[u][i] as usize;
                let nd = self.dom[v] & so;
                if nd == 0 {
                    ok = false;
                    break;
                }
                self.set(v, nd);
            }
            if !ok {
                continue;
            }
            for i in 0..self.in_adj[u].len() {
                let v = self.in_adj[u][i] as usize;
                let nd = self.dom[v] & si;
                if nd == 0 {
                    ok = false;
                    break;
                }
                self.set(v, nd);
            }
        }
        ok
    }

    fn assign(&mut self, v: usize, mask: u32) -> bool {
        self.set(v, mask);
        self.propagate()
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget || (self.nodes.is_multiple_of(STOP_POLL) && (self.should_stop)()) {
            self.stopped = true;
        }
        !self.stopped
    }

    /// Tries each entry of `choices` in turn on `var`, removing it again
    /// after its subtree is exhausted.
    fn branch(&mut self, var: usize, choices: u32, leaf: &mut dyn FnMut(&[u32]) -> bool) -> Step {
        let mark = self.trail.len();
        let mut rest = choices;
        while rest != 0 {
            let a = rest.trailing_zeros();
            rest &= rest - 1;
            if !self.tick() {
                self.undo(mark);
                return Step::Stop;
            }
            let inner = self.trail.len();
            if self.assign(var, 1 << a) {
                match self.dfs(leaf) {
                    Step::Continue => {}
                    other => {
                        self.undo(mark);
                        return other;
                    }
                }
            }
            self.undo(inner);
            let without = self.dom[var] & !(1 << a);
            if without == 0 || !self.assign(var, without) {
                break;
            }
        }
        self.undo(mark);
        Step::Continue
    }

    fn dfs(&mut self, leaf: &mut dyn FnMut(&[u32]) -> bool) -> Step {
        let mut cover = 0;
        let mut hit = 0;
        for &d in &self.dom {
            cover |= d;
            if d & (d - 1) == 0 {
                hit |= d;
            }
        }
        if cover != self.full {
            return Step::Continue;
        }
        if hit != self.full {
            // surjectivity first: decide where the smallest missing value
            // is taken for the first time
            let v = (!hit & self.full).trailing_zeros();
            let mark = self.trail.len();
            let mut idx = 0;
            while idx < self.dom.len() {
                if self.dom[idx] >> v & 1 == 1 {
                    if !self.tick() {
                        self.undo(mark);
                        return Step::Stop;
                    }
                    let inner = self.trail.len();
                    if self.assign(idx, 1 << v) {
                        match self.dfs(leaf) {
                            Step::Continue => {}
                            other => {
                                self.undo(mark);
                                return other;
                            }
                        }
                    }
                    self.undo(inner);
                    let without = self.dom[idx] & !(1 << v);
                    if without == 0 || !self.assign(idx, without) {
                        break;
                    }
                }
                idx += 1;
            }
            self.undo(mark);
            return Step::Continue;
        }
        let pick = (0..self.dom.len())
            .filter(|&v| self.dom[v].count_ones() > 1)
            .min_by_key(|&v| self.dom[v].count_ones());
        match pick {
            None => {
                if leaf(&self.dom) {
                    Step::Found
                } else {
                    Step::Continue
                }
            }
            Some(var) => self.branch(var, self.dom[var], leaf),
        }
    }
}

/// Result of one shard of the search, where `f(0, ..., 0)` is fixed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShardOutcome {
    pub shard: usize,
    pub verdict: Verdict,
    pub nodes_explored: u64,
}

/// Searches for a surjective, not essentially unary, `k`-ary polymorphism
/// of `c` with `f(0, ..., 0) = shard`.
pub fn search_shard(
    c: &CycleId,
    k: usize,
    shard: usize,
    budget: u64,
    should_stop: &dyn Fn() -> bool,
) -> Result<ShardOutcome> {
    let mut collected = None;
    let (verdict, nodes) = run_search(c, k, shard, budget, should_stop, &mut |table| {
        if is_essentially_unary(table).is_none() {
            collected = Some(table.clone());
            true
        } else {
            false
        }
    })?;
    let verdict = match verdict {
        Step::Found => Verdict::Counterexample(collected.expect("recorded on success")),
        Step::Continue => Verdict::NoCounterexample,
        Step::Stop => Verdict::Inconclusive,
    };
    Ok(ShardOutcome { shard, verdict, nodes_explored: nodes })
}

fn run_search(
    c: &CycleId,
    k: usize,
    shard: usize,
    budget: u64,
    should_stop: &dyn Fn() -> bool,
    on_leaf: &mut dyn FnMut(&OperationTable) -> bool,
) -> Result<(Step, u64)> {
    if k == 0 {
        return Err(Error::Unsupported("arity must be positive"));
    }
    let g = c.digraph();
    let n = g.vertex_count();
    if shard >= n {
        return Err(Error::VertexOutOfRange { vertex: shard, count: n });
    }
    let mut engine = Engine::new(&g, k, budget, should_stop)?;
    let mut leaf = |dom: &[u32]| {
        let entries = dom.iter().map(|d| d.trailing_zeros() as usize).collect();
        let table = OperationTable { n, arity: k, entries };
        debug_assert!(is_polymorphism(&g, &table));
        on_leaf(&table)
    };
    for v in 0..engine.dom.len() {
        engine.queued[v] = true;
        engine.queue.push(v as u32);
    }
    let step = if engine.propagate() && engine.assign(0, 1 << shard) {
        engine.dfs(&mut leaf)
    } else {
        Step::Continue
    };
    Ok((step, engine.nodes))
}

/// Merges shard outcomes: a counterexample from the lowest shard that found
/// one wins; otherwise any inconclusive shard makes the whole inconclusive.
pub fn merge_shards(arity: usize, mut shards: Vec<ShardOutcome>) -> SlupeckiOutcome {
    shards.sort_by_key(|s| s.shard);
    let nodes_explored = shards.iter().map(|s| s.nodes_explored).sum();
    let verdict = if let Some(s) = shards.iter().find(|s| matches!(s.verdict, Verdict::Counterexample(_))) {
        s.verdict.clone()
    } else if shards.iter().any(|s| s.verdict == Verdict::Inconclusive) {
        Verdict::Inconclusive
    } else {
        Verdict::NoCounterexample
    };
    SlupeckiOutcome { verdict, arity, nodes_explored }
}

/// Per-shard share of a total node budget.
pub fn shard_budget(total: u64, shards: usize) -> u64 {
    total.div_ceil(shards.max(1) as u64)
}

/// Exhaustive search for a surjective `k`-ary polymorphism of `c` that is
/// not essentially unary. The space is split by the value of
/// `f(0, ..., 0)`; each of the `n` shards gets an equal share of
/// `node_budget`.
pub fn find_slupecki_counterexample(c: &CycleId, k: usize, node_budget: u64) -> Result<SlupeckiOutcome> {
    find_slupecki_counterexample_until(c, k, node_budget, &|| false)
}

/// As [`find_slupecki_counterexample`], also stopping when `should_stop`
/// returns true (polled every few thousand nodes).
pub fn find_slupecki_counterexample_until(
    c: &CycleId,
    k: usize,
    node_budget: u64,
    should_stop: &dyn Fn() -> bool,
) -> Result<SlupeckiOutcome> {
    let n = c.girth();
    let per = shard_budget(node_budget, n);
    let mut shards = Vec::with_capacity(n);
    for shard in 0..n {
        let out = search_shard(c, k, shard, per, should_stop)?;
        let found = matches!(out.verdict, Verdict::Counterexample(_));
        shards.push(out);
        if found {
            break;
        }
    }
    Ok(merge_shards(k, shards))
}

/// All surjective `k`-ary polymorphisms of `c`, up to `limit` of them, in
/// search order. `None` when the node budget runs out first.
pub fn surjective_polymorphisms(c: &CycleId, k: usize, limit: usize, node_budget: u64) -> Result<Option<Vec<OperationTable>>> {
    let mut out = Vec::new();
    for shard in 0..c.girth() {
        let (step, _) = run_search(c, k, shard, node_budget, &|| false, &mut |t| {
            out.push(t.clone());
            out.len() >= limit
        })?;
        match step {
            Step::Stop => return Ok(None),
            Step::Found => break,
            Step::Continue => {}
        }
    }
    Ok(Some(out))
}

/// An embedding `e` of the cycle into `G^p` with `f` onto on its image,
/// given as encoded product vertices (first coordinate most significant).
pub fn check_embedding_criterion(c: &CycleId, f: &OperationTable) -> Result<Option<Vec<usize>>> {
    let g = c.digraph();
    if !is_polymorphism(&g, f) || !f.is_surjective() {
        return Err(Error::NotSurjectivePolymorphism);
    }
    let factors: Vec<&Digraph> = vec![&g; f.arity()];
    let power = product(&factors);
    let n = g.vertex_count();
    Ok(for_each_embedding(&g, &power.digraph, |e| {
        let mut seen = 0u64;
        for &v in e {
            seen |= 1 << f.entries()[v];
        }
        if seen.count_ones() as usize == n {
            ControlFlow::Break(e.to_vec())
        } else {
            ControlFlow::Continue(())
        }
    }))
}

fn alternating(first: Symbol, pairs: usize) -> Word {
    Word::from_symbols([first, first.dual()].repeat(pairs))
}

/// Whether `x W y` holds for every ordered pair of vertices of `g`.
pub fn connects_every_pair(g: &Digraph, w: &Word) -> Result<bool> {
    let n = g.vertex_count();
    for x in 0..n {
        if reach(g, x, w)?.count() != n {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For a cycle `C(P+)` with `P` self-dual, `|P| >= 3` and at least two `*`
/// in `P`, checks that an alternating word connects every ordered pair of
/// vertices.
///
/// `|P|` odd (girth `2t + 2`): `(+-)^t`. `|P|` even (girth `2t + 1`):
/// `(-+)^(t-1)-`, falling back to `(-+)^t`.
pub fn alternating_reach_check(c: &CycleId) -> Result<bool> {
    let shape = c.representations().into_iter().find(|r| {
        let (last, p) = (r.symbols().last(), r.slice(0..r.len() - 1));
        last == Some(&Symbol::Plus) && p.is_self_dual() && p.len() >= 3 && p.star_count() >= 2
    });
    if shape.is_none() {
        return Err(Error::ShapeMismatch(alloc::format!("{}", c.word())));
    }
    let g = c.digraph();
    let p_len = c.girth() - 1;
    let t = p_len / 2;
    if p_len % 2 == 1 {
        return connects_every_pair(&g, &alternating(Symbol::Plus, t));
    }
    let short = alternating(Symbol::Minus, t - 1).concat(&Word::from_symbols(vec![Symbol::Minus]));
    Ok(connects_every_pair(&g, &short)? || connects_every_pair(&g, &alternating(Symbol::Minus, t))?)
}

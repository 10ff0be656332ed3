//! Homomorphism search between finite digraphs, walk languages, and
//! extension and surjectivity questions with paths as targets.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use crate::bitset::Bitset;
use crate::digraph::Digraph;
use crate::slupecki::OperationTable;
use crate::words::{Symbol, Word};
use crate::{Error, Result};

/// Required images for some source vertices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PinSet(BTreeMap<usize, usize>);

impl PinSet {
    pub fn new() -> PinSet {
        PinSet::default()
    }

    pub fn with(mut self, source: usize, target: usize) -> PinSet {
        self.0.insert(source, target);
        self
    }

    pub fn insert(&mut self, source: usize, target: usize) {
        self.0.insert(source, target);
    }

    pub fn get(&self, source: usize) -> Option<usize> {
        self.0.get(&source).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.iter().map(|(&a, &b)| (a, b))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn check(&self, source: &Digraph, target: &Digraph) -> Result<()> {
        for (a, b) in self.iter() {
            for (v, g) in [(a, source), (b, target)] {
                if v >= g.vertex_count() {
                    return Err(Error::VertexOutOfRange { vertex: v, count: g.vertex_count() });
                }
            }
        }
        Ok(())
    }
}

impl FromIterator<(usize, usize)> for PinSet {
    fn from_iter<I: IntoIterator<Item = (usize, usize)>>(iter: I) -> Self {
        PinSet(iter.into_iter().collect())
    }
}

/// A vertex map `source -> target`, indexed by source vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Homomorphism(Vec<usize>);

impl Homomorphism {
    pub fn new(map: Vec<usize>) -> Homomorphism {
        Homomorphism(map)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn image(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn is_onto(&self, target_size: usize) -> bool {
        let mut seen = Bitset::new(target_size);
        self.0.iter().for_each(|&x| {
            seen.insert(x);
        });
        seen.count() == target_size
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

/// Whether `map` sends every arc of `source` to an arc of `target`.
pub fn is_homomorphism(source: &Digraph, target: &Digraph, map: &[usize]) -> bool {
    map.len() == source.vertex_count()
        && map.iter().all(|&x| x < target.vertex_count())
        && source.arcs().all(|(u, v)| target.has_arc(map[u], map[v]))
}

struct Csp<'a> {
    target: &'a Digraph,
    // (neighbour, true when the arc points from this vertex to the neighbour)
    constraints: Vec<Vec<(usize, bool)>>,
    nodes: u64,
}

impl<'a> Csp<'a> {
    fn new(source: &Digraph, target: &'a Digraph) -> Csp<'a> {
        let mut constraints = vec![Vec::new(); source.vertex_count()];
        for (u, v) in source.arcs().filter(|(u, v)| u != v) {
            constraints[u].push((v, true));
            constraints[v].push((u, false));
        }
        Csp { target, constraints, nodes: 0 }
    }

    fn support(&self, dom: &Bitset, forward: bool) -> Bitset {
        let mut s = Bitset::new(self.target.vertex_count());
        for a in dom.iter() {
            s.union_with(if forward { self.target.out_neighbors(a) } else { self.target.in_neighbors(a) });
        }
        s
    }

    /// AC-3 from the variables in `queue`. False on a wipe-out.
    fn propagate(&self, domains: &mut [Bitset], mut queue: VecDeque<usize>) -> bool {
        let mut queued = Bitset::new(domains.len());
        queue.iter().for_each(|&q| {
            queued.insert(q);
        });
        while let Some(u) = queue.pop_front() {
            queued.remove(u);
            for &(v, forward) in &self.constraints[u] {
                let sup = self.support(&domains[u], forward);
                if !domains[v].is_subset(&sup) {
                    domains[v].intersect_with(&sup);
                    if domains[v].is_empty() {
                        return false;
                    }
                    if queued.insert(v) {
                        queue.push_back(v);
                    }
                }
            }
        }
        true
    }

    fn search<B>(&mut self, domains: Vec<Bitset>, visit: &mut dyn FnMut(&[usize]) -> ControlFlow<B>) -> Option<B> {
        // smallest domain first, ties to the lowest index
        let pick = (0..domains.len()).filter(|&v| domains[v].count() > 1).min_by_key(|&v| domains[v].count());
        let Some(var) = pick else {
            let map: Vec<usize> = domains.iter().map(|d| d.first().expect("non-empty")).collect();
            return match visit(&map) {
                ControlFlow::Break(b) => Some(b),
                ControlFlow::Continue(()) => None,
            };
        };
        for value in domains[var].iter() {
            self.nodes += 1;
            let mut next = domains.clone();
            next[var] = Bitset::singleton(self.target.vertex_count(), value);
            if self.propagate(&mut next, VecDeque::from([var])) {
                if let Some(b) = self.search(next, visit) {
                    return Some(b);
                }
            }
        }
        None
    }
}

/// Calls `visit` on every homomorphism respecting `pins` (in a fixed
/// order), stopping when it breaks.
pub fn for_each_homomorphism<B>(
    source: &Digraph,
    target: &Digraph,
    pins: &PinSet,
    mut visit: impl FnMut(&[usize]) -> ControlFlow<B>,
) -> Result<Option<B>> {
    pins.check(source, target)?;
    let nt = target.vertex_count();
    let looped: Bitset = {
        let mut s = Bitset::new(nt);
        (0..nt).filter(|&a| target.has_arc(a, a)).for_each(|a| {
            s.insert(a);
        });
        s
    };
    let mut domains: Vec<Bitset> = (0..source.vertex_count())
        .map(|v| {
            let mut d = match pins.get(v) {
                Some(t) => Bitset::singleton(nt, t),
                None => Bitset::full(nt),
            };
            if source.has_arc(v, v) {
                d.intersect_with(&looped);
            }
            d
        })
        .collect();
    if domains.iter().any(Bitset::is_empty) {
        return Ok(None);
    }
    let mut csp = Csp::new(source, target);
    if !csp.propagate(&mut domains, (0..source.vertex_count()).collect()) {
        return Ok(None);
    }
    Ok(csp.search(domains, &mut visit))
}

/// The first homomorphism respecting `pins`, if any. Variables are chosen
/// smallest domain first and values in increasing order, so the answer is
/// deterministic.
pub fn hom_search(source: &Digraph, target: &Digraph, pins: &PinSet) -> Result<Option<Homomorphism>> {
    for_each_homomorphism(source, target, pins, |m| ControlFlow::Break(Homomorphism(m.to_vec())))
}

/// Whether some homomorphism `source -> target` is onto. Tries every
/// injective choice of one preimage per target vertex, so it is meant for
/// targets of a handful of vertices.
pub fn onto_homomorphism_exists(source: &Digraph, target: &Digraph) -> Result<bool> {
    fn place(source: &Digraph, target: &Digraph, pins: &PinSet, t: usize) -> Result<bool> {
        if hom_search(source, target, pins)?.is_none() {
            return Ok(false);
        }
        if t == target.vertex_count() {
            return Ok(true);
        }
        for v in 0..source.vertex_count() {
            if pins.get(v).is_none() && place(source, target, &pins.clone().with(v, t), t + 1)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
    place(source, target, &PinSet::new(), 0)
}

fn letter_successors(g: &Digraph, a: usize, s: Symbol) -> Bitset {
    match s {
        Symbol::Plus => g.out_neighbors(a).clone(),
        Symbol::Minus => g.in_neighbors(a).clone(),
        Symbol::Star => {
            let mut b = g.out_neighbors(a).clone();
            b.intersect_with(g.in_neighbors(a));
            b
        }
    }
}

fn step_set(g: &Digraph, set: &Bitset, s: Symbol) -> Bitset {
    let mut next = Bitset::new(g.vertex_count());
    for a in set.iter() {
        next.union_with(&letter_successors(g, a, s));
    }
    next
}

/// `{ y : x W y }`: end points of walks from `x` that read `W`.
pub fn reach(g: &Digraph, x: usize, w: &Word) -> Result<Bitset> {
    if x >= g.vertex_count() {
        return Err(Error::VertexOutOfRange { vertex: x, count: g.vertex_count() });
    }
    let start = Bitset::singleton(g.vertex_count(), x);
    Ok(w.symbols().iter().fold(start, |s, &l| step_set(g, &s, l)))
}

/// A nondeterministic automaton on the vertices of a digraph whose language
/// is `{ W : x W y }`.
#[derive(Clone, Debug)]
pub struct WordAutomaton {
    pub start: usize,
    pub accept: usize,
    transitions: [Vec<Bitset>; 3],
}

impl WordAutomaton {
    pub fn state_count(&self) -> usize {
        self.transitions[0].len()
    }

    pub fn successors(&self, state: usize, s: Symbol) -> &Bitset {
        &self.transitions[s.index()][state]
    }

    pub fn step(&self, set: &Bitset, s: Symbol) -> Bitset {
        let mut next = Bitset::new(self.state_count());
        for a in set.iter() {
            next.union_with(self.successors(a, s));
        }
        next
    }

    pub fn accepts(&self, w: &Word) -> bool {
        let start = Bitset::singleton(self.state_count(), self.start);
        w.symbols().iter().fold(start, |s, &l| self.step(&s, l)).contains(self.accept)
    }
}

pub fn word_language_automaton(g: &Digraph, x: usize, y: usize) -> Result<WordAutomaton> {
    for v in [x, y] {
        if v >= g.vertex_count() {
            return Err(Error::VertexOutOfRange { vertex: v, count: g.vertex_count() });
        }
    }
    let transitions = Symbol::ALL.map(|s| (0..g.vertex_count()).map(|a| letter_successors(g, a, s)).collect());
    Ok(WordAutomaton { start: x, accept: y, transitions })
}

/// A word read by a walk between two pinned vertices of `K` that cannot be
/// read between their images in `P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separation {
    pub from: usize,
    pub to: usize,
    pub word: Word,
}

fn check_path_target(p: &Digraph) -> Result<()> {
    p.path_order().map(|_| ())
}

/// Route A: does a homomorphism `K -> P` extending `pins` exist? Direct
/// search.
pub fn extension_by_search(k: &Digraph, pins: &PinSet, p: &Digraph) -> Result<bool> {
    check_path_target(p)?;
    Ok(hom_search(k, p, pins)?.is_some())
}

/// Route B: language inclusion. For every ordered pair of pinned vertices
/// `(x, y)`, each word read from `x` to `y` in `K` must be readable from
/// `f(x)` to `f(y)` in `P`. Returns the first violation found, or `None`
/// when every inclusion holds.
///
/// Explores pairs `(vertex of K, reach set in P)` breadth first. Reach sets
/// in a reflexive target only grow, so a branch whose set already holds
/// `f(y)` can be dropped.
pub fn extension_by_inclusion(k: &Digraph, pins: &PinSet, p: &Digraph) -> Result<Option<Separation>> {
    check_path_target(p)?;
    pins.check(k, p)?;
    for (x, fx) in pins.iter() {
        for (y, fy) in pins.iter() {
            if x == y {
                continue;
            }
            if let Some(word) = separate(k, x, y, p, fx, fy) {
                return Ok(Some(Separation { from: x, to: y, word }));
            }
        }
    }
    Ok(None)
}

fn separate(k: &Digraph, x: usize, y: usize, p: &Digraph, fx: usize, fy: usize) -> Option<Word> {
    struct Node {
        vertex: usize,
        set: Bitset,
        parent: usize,
        letter: Option<Symbol>,
    }
    let start = Bitset::singleton(p.vertex_count(), fx);
    if start.contains(fy) {
        return None;
    }
    let mut nodes = vec![Node { vertex: x, set: start.clone(), parent: 0, letter: None }];
    let mut seen = BTreeSet::from([(x, start)]);
    let mut head = 0;
    while head < nodes.len() {
        let (kv, set) = (nodes[head].vertex, nodes[head].set.clone());
        for s in Symbol::ALL {
            let next_set = step_set(p, &set, s);
            if next_set.contains(fy) {
                continue;
            }
            for kn in letter_successors(k, kv, s).iter() {
                if !seen.insert((kn, next_set.clone())) {
                    continue;
                }
                nodes.push(Node { vertex: kn, set: next_set.clone(), parent: head, letter: Some(s) });
                if kn == y {
                    let mut letters = Vec::new();
                    let mut at = nodes.len() - 1;
                    while let Some(l) = nodes[at].letter {
                        letters.push(l);
                        at = nodes[at].parent;
                    }
                    letters.reverse();
                    return Some(Word::from_symbols(letters));
                }
            }
        }
        head += 1;
    }
    None
}

/// Both extension routes and their common answer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionVerdict {
    pub exists: bool,
    pub separation: Option<Separation>,
}

/// Runs both routes and insists they agree.
pub fn extension_exists_to_path(k: &Digraph, pins: &PinSet, p: &Digraph) -> Result<ExtensionVerdict> {
    let by_search = extension_by_search(k, pins, p)?;
    let separation = extension_by_inclusion(k, pins, p)?;
    if by_search != separation.is_none() {
        return Err(Error::RoutesDisagree);
    }
    Ok(ExtensionVerdict { exists: by_search, separation })
}

/// Greedy position in `P(U)`: the furthest vertex reachable from `0`
/// after reading a word. Reach sets there are intervals `[0, j]`, since
/// `min(., j - 1)` retracts `P(U)` onto `[0, j - 1]`.
#[inline]
fn advance(u: &[Symbol], j: u8, v: Symbol) -> u8 {
    match u.get(j as usize) {
        Some(&next) if next.below(v) => j + 1,
        _ => j,
    }
}

/// A word `W` with `W >= Q` for every `Q` in `qs` but not `W >= p`, if one
/// exists. That is exactly a witness that no homomorphism from the product
/// of the `P(Q)` onto `P(p)` sends the all-zero corner to `0` and the
/// all-end corner to `|p|`.
///
/// Runs a breadth-first search over tuples of greedy positions, one per
/// factor plus one for `p`; the product itself is never built.
pub fn product_separating_word(qs: &[Word], p: &Word) -> Result<Option<Word>> {
    if qs.iter().chain([p]).any(|w| w.len() > u8::MAX as usize - 1) {
        return Err(Error::Unsupported("words longer than 254 letters"));
    }
    let factors: Vec<&[Symbol]> = qs.iter().collect::<BTreeSet<_>>().into_iter().map(Word::symbols).collect();
    let m = factors.len();
    let p_end = p.len() as u8;
    let is_goal = |s: &[u8]| s[m] < p_end && factors.iter().zip(s).all(|(f, &j)| j as usize == f.len());
    let start = vec![0u8; m + 1];
    if is_goal(&start) {
        return Ok(Some(Word::new()));
    }
    let mut states = vec![(start.clone(), usize::MAX, Symbol::Star)];
    let mut seen = BTreeSet::from([start]);
    let mut head = 0;
    while head < states.len() {
        for v in Symbol::ALL {
            let cur = &states[head].0;
            let mut next = Vec::with_capacity(m + 1);
            next.extend(factors.iter().zip(cur).map(|(f, &j)| advance(f, j, v)));
            next.push(advance(p.symbols(), cur[m], v));
            if next[m] == p_end || !seen.insert(next.clone()) {
                continue;
            }
            let goal = is_goal(&next);
            states.push((next, head, v));
            if goal {
                let mut letters = Vec::new();
                let mut at = states.len() - 1;
                while states[at].1 != usize::MAX {
                    letters.push(states[at].2);
                    at = states[at].1;
                }
                letters.reverse();
                return Ok(Some(Word::from_symbols(letters)));
            }
        }
        head += 1;
    }
    Ok(None)
}

/// Whether the product of the paths `P(Q)`, `Q` in `qs`, maps onto `P(p)`.
///
/// An onto map sends some vertex to each end of `P(p)`; reading each factor
/// from the coordinate of the first towards that of the second reduces to a
/// corner check with every factor used in one orientation. `P(Q)` and
/// `P(dual Q)` are the same digraph read from opposite ends, so factors are
/// grouped into dual classes. A class met at least twice (or self-dual) can
/// supply both orientations at once, which only adds constraints on a
/// separating word; orientations are enumerated for the remaining classes.
pub fn surjective_product_onto_path(qs: &[Word], p: &Word) -> Result<bool> {
    let mut classes: BTreeMap<Word, usize> = BTreeMap::new();
    for q in qs {
        *classes.entry(core::cmp::min(q.clone(), q.dual())).or_default() += 1;
    }
    let mut fixed: Vec<Word> = Vec::new();
    let mut free: Vec<Word> = Vec::new();
    for (rep, count) in classes {
        if count >= 2 || rep.is_self_dual() {
            fixed.push(rep.dual());
            fixed.push(rep);
        } else {
            free.push(rep);
        }
    }
    if free.len() > 20 {
        return Err(Error::Unsupported("more than 20 orientation classes"));
    }
    for mask in 0u32..(1 << free.len()) {
        let mut chosen = fixed.clone();
        for (bit, q) in free.iter().enumerate() {
            chosen.push(if mask >> bit & 1 == 1 { q.dual() } else { q.clone() });
        }
        if product_separating_word(&chosen, p)?.is_none() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Whether `f` is a polymorphism of `g`: a homomorphism `g^k -> g`.
pub fn is_polymorphism(g: &Digraph, f: &OperationTable) -> bool {
    let n = g.vertex_count();
    if f.domain_size() != n {
        return false;
    }
    let k = f.arity();
    let total = f.entries().len();
    // walk all arcs of g^k by iterating over tuple pairs coordinatewise
    let mut u = vec![0usize; k];
    for ui in 0..total {
        decode_into(ui, n, &mut u);
        let mut ok = true;
        let succ: Vec<Vec<usize>> = u.iter().map(|&c| g.out_neighbors(c).iter().collect()).collect();
        let mut idx = vec![0usize; k];
        'tuples: loop {
            let vi = idx.iter().zip(&succ).fold(0, |acc, (&i, s)| acc * n + s[i]);
            if !g.has_arc(f.entries()[ui], f.entries()[vi]) {
                ok = false;
                break;
            }
            for c in (0..k).rev() {
                idx[c] += 1;
                if idx[c] < succ[c].len() {
                    continue 'tuples;
                }
                idx[c] = 0;
            }
            break;
        }
        if !ok {
            return false;
        }
    }
    true
}

fn decode_into(mut v: usize, n: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = v % n;
        v /= n;
    }
}

/// The 1-based coordinate `i` such that `f` depends only on `x_i`, if any.
/// Constant operations report coordinate 1.
pub fn is_essentially_unary(f: &OperationTable) -> Option<usize> {
    let (n, k) = (f.domain_size(), f.arity());
    let entries = f.entries();
    let mut coords = vec![0usize; k];
    (0..k)
        .find(|&i| {
            let stride = n.pow((k - 1 - i) as u32);
            (0..entries.len()).all(|t| {
                decode_into(t, n, &mut coords);
                entries[t] == entries[coords[i] * stride]
            })
        })
        .map(|i| i + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::{cycle_of_word, path_of_word};
    use crate::words::word_leq;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn pinned_examples() {
        let from = path_of_word(&w("+"));
        let to = path_of_word(&w("-"));
        assert_eq!(hom_search(&from, &to, &PinSet::new().with(0, 0).with(1, 1)).unwrap(), None);
        let c = cycle_of_word(&w("***")).unwrap();
        let id = hom_search(&c, &c, &PinSet::new().with(0, 0).with(1, 1).with(2, 2)).unwrap().unwrap();
        assert_eq!(id.as_slice(), &[0, 1, 2]);
        assert!(hom_search(&c, &c, &PinSet::new().with(5, 0)).is_err());
    }

    #[test]
    fn search_counts_match_brute_force() {
        let target = cycle_of_word(&w("+*-")).unwrap();
        for source in Word::all_up_to_length(3).map(|x| path_of_word(&x)) {
            let mut found = 0;
            for_each_homomorphism::<()>(&source, &target, &PinSet::new(), |m| {
                assert!(is_homomorphism(&source, &target, m));
                found += 1;
                ControlFlow::Continue(())
            })
            .unwrap();
            let n = source.vertex_count();
            let brute = (0..3usize.pow(n as u32))
                .filter(|&code| {
                    let map: Vec<usize> = (0..n).map(|i| code / 3usize.pow(i as u32) % 3).collect();
                    is_homomorphism(&source, &target, &map)
                })
                .count();
            assert_eq!(found, brute);
        }
    }

    #[test]
    fn reach_on_paths_follows_greedy_order() {
        for u in Word::all_up_to_length(3) {
            let p = path_of_word(&u);
            for v in Word::all_up_to_length(4) {
                assert_eq!(reach(&p, 0, &v).unwrap().contains(u.len()), word_leq(&u, &v));
            }
        }
    }

    #[test]
    fn automaton_language_matches_reach() {
        let c = cycle_of_word(&w("+*-+")).unwrap();
        for x in 0..4 {
            for y in 0..4 {
                let a = word_language_automaton(&c, x, y).unwrap();
                for v in Word::all_up_to_length(4) {
                    assert_eq!(a.accepts(&v), reach(&c, x, &v).unwrap().contains(y));
                }
            }
        }
    }

    #[test]
    fn single_factor_uses_both_orientations() {
        // "*+" maps onto "-" by reversing the path
        assert!(!word_leq(&w("-"), &w("*+")));
        assert!(surjective_product_onto_path(&[w("*+")], &w("-")).unwrap());
        for p in Word::all_up_to_length(3) {
            for q in Word::all_up_to_length(4) {
                let want = word_leq(&p, &q) || word_leq(&p, &q.dual());
                assert_eq!(surjective_product_onto_path(core::slice::from_ref(&q), &p).unwrap(), want, "{q} onto {p}");
            }
        }
    }

    #[test]
    fn separating_word_is_valid() {
        let qs = [w("+*"), w("*-")];
        let p = w("+-");
        let sep = product_separating_word(&qs, &p).unwrap().unwrap();
        assert!(qs.iter().all(|q| word_leq(q, &sep)));
        assert!(!word_leq(&p, &sep));
    }

    #[test]
    fn essentially_unary_detection() {
        let proj2 = OperationTable::from_fn(3, 2, |x| x[1]);
        assert_eq!(is_essentially_unary(&proj2), Some(2));
        let min = OperationTable::from_fn(3, 2, |x| x[0].min(x[1]));
        assert_eq!(is_essentially_unary(&min), None);
        let g = path_of_word(&w("++"));
        assert!(is_polymorphism(&g, &min));
        let c = cycle_of_word(&w("+++")).unwrap();
        assert!(!is_polymorphism(&c, &min));
        assert!(is_polymorphism(&c, &proj2));
    }
}

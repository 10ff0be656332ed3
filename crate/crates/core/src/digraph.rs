//! Finite digraphs with dense bitset adjacency, reflexive paths and cycles
//! built from words, products, canonical cycle names and embeddings.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::fmt::Write;
use core::ops::ControlFlow;

use crate::bitset::Bitset;
use crate::words::{Symbol, Word};
use crate::{Error, Result};

/// A digraph on vertices `0..n`. Loops are ordinary arcs.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Digraph {
    out: Vec<Bitset>,
    inc: Vec<Bitset>,
}

impl Digraph {
    /// `n` vertices and no arcs.
    pub fn empty(n: usize) -> Digraph {
        Digraph { out: vec![Bitset::new(n); n], inc: vec![Bitset::new(n); n] }
    }

    /// `n` vertices, each with a loop.
    pub fn reflexive(n: usize) -> Digraph {
        let mut g = Digraph::empty(n);
        for v in 0..n {
            g.add_arc(v, v);
        }
        g
    }

    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Result<Digraph> {
        let mut g = Digraph::empty(n);
        for &(u, v) in arcs {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, count: n });
                }
            }
            g.add_arc(u, v);
        }
        Ok(g)
    }

    /// Adds `u -> v`. Panics if either end is out of range.
    pub fn add_arc(&mut self, u: usize, v: usize) {
        self.out[u].insert(v);
        self.inc[v].insert(u);
    }

    pub fn vertex_count(&self) -> usize {
        self.out.len()
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u].contains(v)
    }

    pub fn out_neighbors(&self, u: usize) -> &Bitset {
        &self.out[u]
    }

    pub fn in_neighbors(&self, v: usize) -> &Bitset {
        &self.inc[v]
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out.iter().enumerate().flat_map(|(u, s)| s.iter().map(move |v| (u, v)))
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(Bitset::count).sum()
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.vertex_count()).all(|v| self.has_arc(v, v))
    }

    /// Neighbours ignoring direction and loops.
    pub fn neighbors(&self, u: usize) -> Bitset {
        let mut s = self.out[u].clone();
        s.union_with(&self.inc[u]);
        s.remove(u);
        s
    }

    /// Weak connectivity. The empty digraph counts as connected.
    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen = Bitset::singleton(n, 0);
        let mut queue = VecDeque::from([0]);
        while let Some(u) = queue.pop_front() {
            for v in self.neighbors(u).iter() {
                if seen.insert(v) {
                    queue.push_back(v);
                }
            }
        }
        seen.count() == n
    }

    /// The subgraph induced on `vertices`, renumbered in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Digraph {
        let mut g = Digraph::empty(vertices.len());
        for (i, &a) in vertices.iter().enumerate() {
            for (j, &b) in vertices.iter().enumerate() {
                if self.has_arc(a, b) {
                    g.add_arc(i, j);
                }
            }
        }
        g
    }

    /// Vertex order along a reflexive path, starting at the endpoint with
    /// the smaller label.
    pub fn path_order(&self) -> Result<Vec<usize>> {
        let n = self.vertex_count();
        if n == 0 {
            return Err(Error::NotAPath("no vertices"));
        }
        if !self.is_reflexive() {
            return Err(Error::NotAPath("missing loop"));
        }
        if n == 1 {
            return Ok(vec![0]);
        }
        let nbrs: Vec<Bitset> = (0..n).map(|v| self.neighbors(v)).collect();
        if nbrs.iter().any(|s| s.count() > 2 || s.is_empty()) {
            return Err(Error::NotAPath("vertex degree"));
        }
        let start = (0..n).find(|&v| nbrs[v].count() == 1).ok_or(Error::NotAPath("no endpoint"))?;
        let order = walk_chain(&nbrs, start);
        if order.len() != n {
            return Err(Error::NotAPath("disconnected"));
        }
        Ok(order)
    }

    /// Vertex order around a reflexive cycle of girth at least 3, starting
    /// at `0` and heading to its smaller neighbour.
    pub fn cycle_order(&self) -> Result<Vec<usize>> {
        let n = self.vertex_count();
        if n < 3 {
            return Err(Error::NotACycle("fewer than 3 vertices"));
        }
        if !self.is_reflexive() {
            return Err(Error::NotACycle("missing loop"));
        }
        let nbrs: Vec<Bitset> = (0..n).map(|v| self.neighbors(v)).collect();
        if nbrs.iter().any(|s| s.count() != 2) {
            return Err(Error::NotACycle("vertex degree"));
        }
        let order = walk_chain(&nbrs, 0);
        if order.len() != n {
            return Err(Error::NotACycle("disconnected"));
        }
        Ok(order)
    }

    fn letter_between(&self, a: usize, b: usize) -> Symbol {
        match (self.has_arc(a, b), self.has_arc(b, a)) {
            (true, true) => Symbol::Star,
            (true, false) => Symbol::Plus,
            _ => Symbol::Minus,
        }
    }

    /// The word read along a reflexive path from its smaller-labelled end.
    pub fn word_of_path(&self) -> Result<Word> {
        let order = self.path_order()?;
        Ok(Word::from_symbols(order.windows(2).map(|p| self.letter_between(p[0], p[1])).collect()))
    }

    /// The word read around a reflexive cycle from vertex `0`.
    pub fn word_of_cycle(&self) -> Result<Word> {
        let order = self.cycle_order()?;
        let n = order.len();
        Ok(Word::from_symbols((0..n).map(|i| self.letter_between(order[i], order[(i + 1) % n])).collect()))
    }
}

// Follows a chain of degree <= 2 vertices from `start`.
fn walk_chain(nbrs: &[Bitset], start: usize) -> Vec<usize> {
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(v) = nbrs[cur].iter().find(|&v| v != prev && v != start) {
        if order.contains(&v) {
            break;
        }
        order.push(v);
        prev = cur;
        cur = v;
    }
    order
}

fn add_letter(g: &mut Digraph, s: Symbol, a: usize, b: usize) {
    if s.has_forward() {
        g.add_arc(a, b);
    }
    if s.has_backward() {
        g.add_arc(b, a);
    }
}

/// `P(W)`: vertices `0..=|W|`, loops everywhere, letter `i` on edge `(i-1, i)`.
pub fn path_of_word(w: &Word) -> Digraph {
    let mut g = Digraph::reflexive(w.len() + 1);
    for (i, &s) in w.symbols().iter().enumerate() {
        add_letter(&mut g, s, i, i + 1);
    }
    g
}

/// `C(W)`: vertices `0..|W|`, letter `i` on edge `(i-1, i mod |W|)`.
pub fn cycle_of_word(w: &Word) -> Result<Digraph> {
    let n = w.len();
    if n < 3 {
        return Err(Error::CycleTooShort(n));
    }
    let mut g = Digraph::reflexive(n);
    for (i, &s) in w.symbols().iter().enumerate() {
        add_letter(&mut g, s, i, (i + 1) % n);
    }
    Ok(g)
}

/// A categorical product with its mixed-radix vertex numbering: the first
/// coordinate is the most significant digit.
#[derive(Clone, Debug)]
pub struct Product {
    pub digraph: Digraph,
    pub radices: Vec<usize>,
}

impl Product {
    pub fn encode(&self, coords: &[usize]) -> usize {
        coords.iter().zip(&self.radices).fold(0, |acc, (&c, &r)| acc * r + c)
    }

    pub fn decode(&self, mut v: usize) -> Vec<usize> {
        let mut coords = vec![0; self.radices.len()];
        for (slot, &r) in coords.iter_mut().zip(&self.radices).rev() {
            *slot = v % r;
            v /= r;
        }
        coords
    }

    /// The projection onto coordinate `i` (0-based) as a vertex map.
    pub fn projection(&self, i: usize) -> Vec<usize> {
        (0..self.digraph.vertex_count()).map(|v| self.decode(v)[i]).collect()
    }
}

/// The categorical product: `u -> v` iff `u_i -> v_i` in every factor.
pub fn product(factors: &[&Digraph]) -> Product {
    let radices: Vec<usize> = factors.iter().map(|g| g.vertex_count()).collect();
    let total: usize = radices.iter().product();
    let mut digraph = Digraph::empty(total);
    let mut p = Product { digraph: Digraph::empty(0), radices };
    for u in 0..total {
        let coords = p.decode(u);
        let mut targets = vec![0usize];
        for (f, &c) in factors.iter().zip(&coords) {
            let succ: Vec<usize> = f.out_neighbors(c).iter().collect();
            targets = targets.iter().flat_map(|&t| succ.iter().map(move |&s| t * f.vertex_count() + s)).collect();
        }
        for v in targets {
            digraph.add_arc(u, v);
        }
    }
    p.digraph = digraph;
    p
}

/// The product of the paths `P(W)` for `W` in `words`.
pub fn product_of_paths(words: &[Word]) -> Product {
    let paths: Vec<Digraph> = words.iter().map(path_of_word).collect();
    let refs: Vec<&Digraph> = paths.iter().collect();
    product(&refs)
}

/// A reflexive cycle named by its canonical word: the lexicographically
/// smallest among all rotations of the word and of its dual.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CycleId {
    word: Word,
}

impl CycleId {
    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn girth(&self) -> usize {
        self.word.len()
    }

    pub fn digraph(&self) -> Digraph {
        cycle_of_word(&self.word).expect("canonical words have length >= 3")
    }

    /// The `2n` words naming this cycle: rotations of the canonical word,
    /// then rotations of its dual.
    pub fn representations(&self) -> Vec<Word> {
        let n = self.girth();
        let d = self.word.dual();
        (0..n).map(|r| self.word.rotated(r)).chain((0..n).map(|r| d.rotated(r))).collect()
    }
}

impl fmt::Display for CycleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C({})", self.word)
    }
}

fn min_rotation(w: &Word) -> Word {
    (0..w.len()).map(|r| w.rotated(r)).min().unwrap_or_default()
}

pub fn canonical_cycle(w: &Word) -> Result<CycleId> {
    if w.len() < 3 {
        return Err(Error::CycleTooShort(w.len()));
    }
    let word = core::cmp::min(min_rotation(w), min_rotation(&w.dual()));
    Ok(CycleId { word })
}

/// All reflexive cycles of girth `n` up to isomorphism, in increasing
/// canonical order.
///
/// Necklaces (rotation-minimal words) come out of the FKM generator in
/// lexicographic order; a necklace is canonical when it is no larger than
/// the necklace of its dual.
pub fn enumerate_cycles(n: usize) -> Result<Vec<CycleId>> {
    if n < 3 {
        return Err(Error::CycleTooShort(n));
    }
    let mut out = Vec::new();
    let mut a = vec![0usize; n + 1];
    let mut p = 1;
    // Iterative FKM: `a[1..=n]` walks the prenecklaces in lexicographic order.
    loop {
        if n.is_multiple_of(p) {
            let w = Word::from_symbols(a[1..=n].iter().map(|&d| Symbol::ALL[d]).collect());
            if w <= min_rotation(&w.dual()) {
                out.push(CycleId { word: w });
            }
        }
        let mut t = n;
        while t > 0 && a[t] == 2 {
            t -= 1;
        }
        if t == 0 {
            break;
        }
        a[t] += 1;
        p = t;
        for j in t + 1..=n {
            a[j] = a[j - p];
        }
    }
    Ok(out)
}

/// Words of the length-`len` subpaths of `C(W)`: windows starting at each
/// vertex, in both orientations.
///
/// For `len <= girth - 2` these are the induced subpaths. For
/// `len = girth - 1` they are the spanning paths obtained by deleting one
/// edge of the cycle.
pub fn induced_subpaths(c: &CycleId, len: usize) -> Result<Vec<Word>> {
    let n = c.girth();
    if len == 0 || len >= n {
        return Err(Error::SubpathLength { length: len, girth: n });
    }
    let g = c.digraph();
    let mut out = Vec::with_capacity(2 * n);
    for s in 0..n {
        let window: Vec<usize> = (0..=len).map(|i| (s + i) % n).collect();
        if len <= n - 2 {
            debug_assert_eq!(g.induced(&window).word_of_path().ok().as_ref(), Some(&window_word(c, s, len)));
        }
        out.push(window_word(c, s, len));
    }
    let duals: Vec<Word> = out.iter().map(Word::dual).collect();
    out.extend(duals);
    Ok(out)
}

fn window_word(c: &CycleId, s: usize, len: usize) -> Word {
    let n = c.girth();
    Word::from_symbols((0..len).map(|i| c.word().symbols()[(s + i) % n]).collect())
}

/// All automorphisms of a reflexive cycle as vertex permutations, identity
/// first.
pub fn automorphisms(g: &Digraph) -> Result<Vec<Vec<usize>>> {
    let order = g.cycle_order()?;
    let n = order.len();
    let mut found = BTreeSet::new();
    let mut out = Vec::new();
    for reflect in [false, true] {
        for r in 0..n {
            let mut perm = vec![0; n];
            for i in 0..n {
                let j = if reflect { (r + n - i) % n } else { (r + i) % n };
                perm[order[i]] = order[j];
            }
            if g.arcs().all(|(u, v)| g.has_arc(perm[u], perm[v])) && found.insert(perm.clone()) {
                out.push(perm);
            }
        }
    }
    Ok(out)
}

/// Calls `visit` with every embedding of `h` into `g`: an injective map
/// with `u -> v` in `h` iff `f(u) -> f(v)` in `g`. Stops early when `visit`
/// breaks.
pub fn for_each_embedding<B>(
    h: &Digraph,
    g: &Digraph,
    mut visit: impl FnMut(&[usize]) -> ControlFlow<B>,
) -> Option<B> {
    let nh = h.vertex_count();
    if nh > g.vertex_count() {
        return None;
    }
    // BFS order so that each vertex after the first of its component has an
    // already placed neighbour.
    let mut order = Vec::with_capacity(nh);
    let mut anchor = vec![None; nh];
    let mut seen = Bitset::new(nh);
    for root in 0..nh {
        if !seen.insert(root) {
            continue;
        }
        order.push(root);
        let mut i = order.len() - 1;
        while i < order.len() {
            let u = order[i];
            for v in h.neighbors(u).iter() {
                if seen.insert(v) {
                    anchor[v] = Some(u);
                    order.push(v);
                }
            }
            i += 1;
        }
    }
    let mut map = vec![usize::MAX; nh];
    let mut used = Bitset::new(g.vertex_count());
    fn rec<B>(
        h: &Digraph,
        g: &Digraph,
        order: &[usize],
        anchor: &[Option<usize>],
        depth: usize,
        map: &mut Vec<usize>,
        used: &mut Bitset,
        visit: &mut dyn FnMut(&[usize]) -> ControlFlow<B>,
    ) -> Option<B> {
        if depth == order.len() {
            return match visit(map) {
                ControlFlow::Break(b) => Some(b),
                ControlFlow::Continue(()) => None,
            };
        }
        let u = order[depth];
        let candidates = match anchor[u] {
            Some(a) => g.neighbors(map[a]),
            None => Bitset::full(g.vertex_count()),
        };
        for x in candidates.iter() {
            if used.contains(x) {
                continue;
            }
            let consistent = h.has_arc(u, u) == g.has_arc(x, x)
                && order[..depth].iter().all(|&w| {
                    h.has_arc(u, w) == g.has_arc(x, map[w]) && h.has_arc(w, u) == g.has_arc(map[w], x)
                });
            if !consistent {
                continue;
            }
            map[u] = x;
            used.insert(x);
            if let Some(b) = rec(h, g, order, anchor, depth + 1, map, used, visit) {
                return Some(b);
            }
            used.remove(x);
            map[u] = usize::MAX;
        }
        None
    }
    rec(h, g, &order, &anchor, 0, &mut map, &mut used, &mut visit)
}

/// All embeddings of `h` into `g`.
pub fn find_embeddings(h: &Digraph, g: &Digraph) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_embedding::<()>(h, g, |m| {
        out.push(m.to_vec());
        ControlFlow::Continue(())
    });
    out
}

/// Renders `g` in graphviz DOT. A symmetric pair of arcs becomes one edge
/// with `dir=both`; loops are dropped unless `loops` is set. `labels`, when
/// given, supplies one node label per vertex.
pub fn to_dot(g: &Digraph, loops: bool, labels: Option<&[String]>) -> String {
    let mut out = String::from("digraph G {\n");
    for v in 0..g.vertex_count() {
        match labels.and_then(|l| l.get(v)) {
            Some(label) => writeln!(out, "  {v} [label=\"{}\"];", label.replace('"', "\\\"")),
            None => writeln!(out, "  {v};"),
        }
        .expect("writing to a String");
    }
    for (u, v) in g.arcs() {
        let line = if u == v {
            if !loops {
                continue;
            }
            format!("  {u} -> {v};")
        } else if g.has_arc(v, u) {
            if u > v {
                continue;
            }
            format!("  {u} -> {v} [dir=both];")
        } else {
            format!("  {u} -> {v};")
        };
        out.push_str(&line);
        out.push('\n');
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::string::ToString;
    use proptest::prelude::*;
    use std::collections::BTreeMap;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn path_and_cycle_round_trip() {
        for word in Word::all_up_to_length(5) {
            assert_eq!(path_of_word(&word).word_of_path().unwrap(), word);
            if word.len() >= 3 {
                assert_eq!(cycle_of_word(&word).unwrap().word_of_cycle().unwrap(), word);
            }
        }
        assert_eq!(cycle_of_word(&w("+-")), Err(Error::CycleTooShort(2)));
    }

    #[test]
    fn path_shape_is_checked() {
        let g = Digraph::from_arcs(3, &[(0, 0), (1, 1), (2, 2), (0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(g.word_of_path().is_err());
        assert!(g.cycle_order().is_ok());
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(canonical_cycle(&w("+*-")).unwrap().word(), &w("*-+"));
        assert_eq!(canonical_cycle(&w("+++")).unwrap().word(), &w("+++"));
        assert_eq!(canonical_cycle(&w("---")).unwrap().word(), &w("+++"));
    }

    #[test]
    fn enumerate_matches_orbit_oracle() {
        for n in 3..=8 {
            let oracle: BTreeSet<Word> =
                Word::all_of_length(n).map(|x| canonical_cycle(&x).unwrap().word().clone()).collect();
            let got: Vec<Word> = enumerate_cycles(n).unwrap().into_iter().map(|c| c.word).collect();
            assert_eq!(got, oracle.into_iter().collect::<Vec<_>>(), "n = {n}");
        }
    }

    #[test]
    fn orbits_partition_all_words() {
        for n in 3..=7 {
            let total: usize = enumerate_cycles(n)
                .unwrap()
                .iter()
                .map(|c| c.representations().into_iter().collect::<BTreeSet<_>>().len())
                .sum();
            assert_eq!(total, 3usize.pow(n as u32));
        }
    }

    #[test]
    fn subpath_example() {
        let c = canonical_cycle(&w("****+")).unwrap();
        let mut counts = BTreeMap::new();
        for p in induced_subpaths(&c, 3).unwrap() {
            *counts.entry(p.to_string()).or_insert(0) += 1;
        }
        // forward windows and their duals
        let want: BTreeMap<String, i32> =
            [("***", 4), ("**+", 1), ("*+*", 1), ("+**", 1), ("**-", 1), ("*-*", 1), ("-**", 1)]
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect();
        assert_eq!(counts, want);
        assert!(induced_subpaths(&c, 5).is_err());
        assert!(induced_subpaths(&c, 0).is_err());
    }

    #[test]
    fn spanning_subpaths_are_edge_deletions() {
        let c = canonical_cycle(&w("*+-+")).unwrap();
        let g = c.digraph();
        let forward = &induced_subpaths(&c, 3).unwrap()[..4];
        for (s, p) in forward.iter().enumerate() {
            // delete the edge entering vertex s
            let mut h = Digraph::reflexive(4);
            for (a, b) in g.arcs() {
                let cut = |x: usize, y: usize| (x + 1) % 4 == s && y == s;
                if a != b && !cut(a, b) && !cut(b, a) {
                    h.add_arc(a, b);
                }
            }
            let order: Vec<usize> = (0..4).map(|i| (s + i) % 4).collect();
            assert_eq!(&h.induced(&order).word_of_path().unwrap(), p);
        }
    }

    #[test]
    fn automorphism_counts() {
        let c = cycle_of_word(&w("+++")).unwrap();
        assert_eq!(automorphisms(&c).unwrap().len(), 3);
        let c = cycle_of_word(&w("***")).unwrap();
        assert_eq!(automorphisms(&c).unwrap().len(), 6);
        let c = cycle_of_word(&w("*+-")).unwrap();
        let auts = automorphisms(&c).unwrap();
        assert_eq!(auts[0], vec![0, 1, 2]);
        assert_eq!(auts.len(), 2);
    }

    #[test]
    fn automorphisms_match_brute_force() {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for i in 0..n {
                    let mut q = p.clone();
                    q.insert(i, n - 1);
                    out.push(q);
                }
            }
            out
        }
        for n in 3..=6 {
            let all = perms(n);
            for c in enumerate_cycles(n).unwrap() {
                let g = c.digraph();
                let brute = all.iter().filter(|p| g.arcs().all(|(u, v)| g.has_arc(p[u], p[v]))).count();
                assert_eq!(automorphisms(&g).unwrap().len(), brute, "{c}");
            }
        }
    }

    #[test]
    fn product_arcs_are_coordinatewise() {
        let a = path_of_word(&w("+-"));
        let b = cycle_of_word(&w("*+-")).unwrap();
        let p = product(&[&a, &b]);
        assert_eq!(p.digraph.vertex_count(), 9);
        for u in 0..9 {
            for v in 0..9 {
                let (cu, cv) = (p.decode(u), p.decode(v));
                assert_eq!(p.digraph.has_arc(u, v), a.has_arc(cu[0], cv[0]) && b.has_arc(cu[1], cv[1]));
            }
            assert_eq!(p.encode(&p.decode(u)), u);
        }
    }

    #[test]
    fn embeddings_of_cycle_into_itself_are_automorphisms() {
        for c in enumerate_cycles(5).unwrap() {
            let g = c.digraph();
            let mut emb = find_embeddings(&g, &g);
            emb.sort();
            let mut auts = automorphisms(&g).unwrap();
            auts.sort();
            assert_eq!(emb, auts);
        }
    }

    #[test]
    fn dot_export_merges_symmetric_pairs() {
        let g = cycle_of_word(&w("+*+-**")).unwrap();
        let dot = to_dot(&g, false, None);
        let nodes = dot.lines().filter(|l| l.trim_end().ends_with(';') && !l.contains("->")).count();
        assert_eq!(nodes, 6);
        assert_eq!(dot.matches("dir=both").count(), 3);
        assert_eq!(dot.matches("->").count(), 6);
        let with_loops = to_dot(&g, true, None);
        assert_eq!(with_loops.matches("->").count(), 12);
        let labels: Vec<String> = (0..6).map(|i| format!("v{i}")).collect();
        assert!(to_dot(&g, false, Some(&labels)).contains("5 [label=\"v5\"];"));
    }

    proptest! {
        #[test]
        fn canonical_is_invariant(symbols in prop::collection::vec(0usize..3, 3..9), r in 0usize..9, flip in any::<bool>()) {
            let x = Word::from_symbols(symbols.iter().map(|&i| Symbol::ALL[i]).collect());
            let y = if flip { x.dual().rotated(r) } else { x.rotated(r) };
            prop_assert_eq!(canonical_cycle(&x).unwrap(), canonical_cycle(&y).unwrap());
        }
    }
}

//! Oracles and generators shared by the integration suites.
#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use reflexive_core::digraph::{canonical_cycle, path_of_word};
use reflexive_core::{CycleId, Digraph, Symbol, Word};

pub fn w(s: &str) -> Word {
    s.parse().unwrap()
}

pub fn cyc(s: &str) -> CycleId {
    canonical_cycle(&w(s)).unwrap()
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn random_word(rng: &mut StdRng, min_len: usize, max_len: usize) -> Word {
    let len = rng.gen_range(min_len..=max_len);
    Word::from_symbols((0..len).map(|_| Symbol::ALL[rng.gen_range(0..3)]).collect())
}

/// A word above `u`: insert a random letter, or raise a `*` to `+` or `-`.
pub fn random_above(rng: &mut StdRng, u: &Word) -> Word {
    let mut s = u.symbols().to_vec();
    let stars: Vec<usize> = (0..s.len()).filter(|&i| s[i] == Symbol::Star).collect();
    if !stars.is_empty() && rng.gen_bool(0.4) {
        let i = stars[rng.gen_range(0..stars.len())];
        s[i] = if rng.gen_bool(0.5) { Symbol::Plus } else { Symbol::Minus };
    } else {
        s.insert(rng.gen_range(0..=s.len()), Symbol::ALL[rng.gen_range(0..3)]);
    }
    Word::from_symbols(s)
}

/// Exhaustive search for an endpoint-preserving homomorphism `P(V) -> P(U)`
/// over the arcs of the two path digraphs. Vertex `i` of `P(V)` is sent to
/// some vertex of `P(U)`; failed partial states `(i, image)` are memoised.
pub fn leq_oracle(u: &Word, v: &Word) -> bool {
    let (pu, pv) = (path_of_word(u), path_of_word(v));
    let (m, n) = (u.len(), v.len());
    let mut dead = BTreeSet::new();
    fn go(pu: &Digraph, pv: &Digraph, m: usize, n: usize, i: usize, img: usize, dead: &mut BTreeSet<(usize, usize)>) -> bool {
        if i == n {
            return img == m;
        }
        if dead.contains(&(i, img)) {
            return false;
        }
        for next in 0..=m {
            let ok = (!pv.has_arc(i, i + 1) || pu.has_arc(img, next)) && (!pv.has_arc(i + 1, i) || pu.has_arc(next, img));
            if ok && go(pu, pv, m, n, i + 1, next, dead) {
                return true;
            }
        }
        dead.insert((i, img));
        false
    }
    go(&pu, &pv, m, n, 0, 0, &mut dead)
}

/// Shortest walk from `x` to `y` ignoring arc directions.
pub fn shortest_walk(g: &Digraph, x: usize, y: usize) -> Vec<usize> {
    let mut parent = vec![usize::MAX; g.vertex_count()];
    parent[x] = x;
    let mut queue = VecDeque::from([x]);
    while let Some(u) = queue.pop_front() {
        for v in g.neighbors(u).iter() {
            if parent[v] == usize::MAX {
                parent[v] = u;
                queue.push_back(v);
            }
        }
    }
    let mut walk = vec![y];
    while *walk.last().unwrap() != x {
        walk.push(parent[*walk.last().unwrap()]);
    }
    walk.reverse();
    walk
}

/// A random walk of a few steps from `x`, then a shortest walk to `y`.
pub fn random_walk(rng: &mut StdRng, g: &Digraph, x: usize, y: usize, steps: usize) -> Vec<usize> {
    let mut walk = vec![x];
    for _ in 0..steps {
        let u = *walk.last().unwrap();
        let nbrs: Vec<usize> = g.neighbors(u).iter().collect();
        if !nbrs.is_empty() {
            walk.push(nbrs[rng.gen_range(0..nbrs.len())]);
        }
    }
    let tail = shortest_walk(g, *walk.last().unwrap(), y);
    walk.extend_from_slice(&tail[1..]);
    walk
}

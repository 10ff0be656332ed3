//! Winding numbers, finite windows of the universal covering path of a
//! reflexive cycle, and lifting homomorphisms into it.
//!
//! The cycle is cut at a gate edge `(a - 1, a)`. A window with `L` levels
//! on each side is the path on pairs `(x, i)`, `-L <= i <= L`, where the
//! gate edge climbs one level. Window vertices are numbered along the path:
//! position `p` is `(a + p mod n, -L + p div n)`.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::digraph::{induced_subpaths, path_of_word, product_of_paths, CycleId, Digraph};
use crate::homsearch::{is_homomorphism, onto_homomorphism_exists, surjective_product_onto_path};
use crate::words::Word;
use crate::{Error, Result};

/// A sequence of vertices in which consecutive entries are equal or joined
/// by an arc in some direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Walk(Vec<usize>);

impl Walk {
    pub fn new(g: &Digraph, vertices: Vec<usize>) -> Result<Walk> {
        for &v in &vertices {
            if v >= g.vertex_count() {
                return Err(Error::VertexOutOfRange { vertex: v, count: g.vertex_count() });
            }
        }
        for p in vertices.windows(2) {
            if p[0] != p[1] && !g.has_arc(p[0], p[1]) && !g.has_arc(p[1], p[0]) {
                return Err(Error::NotAHomomorphism(p[0], p[1]));
            }
        }
        Ok(Walk(vertices))
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    /// The image of the walk under a vertex map.
    pub fn map(&self, f: &[usize]) -> Vec<usize> {
        self.0.iter().map(|&v| f[v]).collect()
    }
}

/// Cycle order, position of each vertex in it, and each vertex's predecessor.
fn cycle_neighbours(g: &Digraph) -> Result<(Vec<usize>, Vec<usize>, Vec<usize>)> {
    let order = g.cycle_order()?;
    let n = order.len();
    let mut pos = vec![0; n];
    let mut pred = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
        pred[v] = order[(i + n - 1) % n];
    }
    Ok((order, pos, pred))
}

fn gate_delta(gate_from: usize, gate_to: usize, u: usize, v: usize) -> i64 {
    if u == gate_from && v == gate_to {
        1
    } else if u == gate_to && v == gate_from {
        -1
    } else {
        0
    }
}

/// Signed number of crossings of the gate edge `(a - 1, a)` by a walk in a
/// cycle: `+1` for each step `a - 1 -> a`, `-1` for each step back.
pub fn winding_number(g: &Digraph, a: usize, walk: &[usize]) -> Result<i64> {
    let (_, _, pred) = cycle_neighbours(g)?;
    if a >= g.vertex_count() {
        return Err(Error::VertexOutOfRange { vertex: a, count: g.vertex_count() });
    }
    Ok(walk.windows(2).map(|p| gate_delta(pred[a], a, p[0], p[1])).sum())
}

/// The levels `-L..=L` of the covering path of a cycle cut at gate `a`.
#[derive(Clone, Debug)]
pub struct CoverWindow {
    pub gate: usize,
    pub levels: usize,
    order: Vec<usize>,
    gate_pos: usize,
    pub digraph: Digraph,
}

impl CoverWindow {
    pub fn vertex_count(&self) -> usize {
        self.digraph.vertex_count()
    }

    /// The pair `(x, level)` at window position `p`.
    pub fn label(&self, p: usize) -> (usize, i64) {
        let n = self.order.len();
        (self.order[(self.gate_pos + p) % n], (p / n) as i64 - self.levels as i64)
    }

    /// The window position of `(x, level)`, if inside the window.
    pub fn position(&self, x: usize, level: i64) -> Option<usize> {
        let n = self.order.len();
        let row = level + self.levels as i64;
        if row < 0 || row > 2 * self.levels as i64 || x >= n {
            return None;
        }
        let offset = (self.order.iter().position(|&v| v == x)? + n - self.gate_pos) % n;
        Some(row as usize * n + offset)
    }

    /// Whether the window digraph is a reflexive path in vertex order.
    pub fn is_path(&self) -> bool {
        match self.digraph.word_of_path() {
            Ok(word) => path_of_word(&word) == self.digraph,
            Err(_) => false,
        }
    }

    /// The covering projection `(x, i) -> x` as a vertex map.
    pub fn projection(&self) -> Vec<usize> {
        (0..self.vertex_count()).map(|p| self.label(p).0).collect()
    }
}

/// The window of the covering path of `g` with gate `a` and levels `-L..=L`.
///
/// Arcs are taken from the definition: `(x, i) -> (y, i)` for arcs of `g`
/// away from the gate, and the gate arcs join level `i` to level `i + 1`.
pub fn cover_window(g: &Digraph, a: usize, levels: usize) -> Result<CoverWindow> {
    let (order, pos, pred) = cycle_neighbours(g)?;
    let n = order.len();
    if a >= n {
        return Err(Error::VertexOutOfRange { vertex: a, count: n });
    }
    let gate_pos = pos[a];
    let mut w = CoverWindow { gate: a, levels, order, gate_pos, digraph: Digraph::empty(0) };
    let size = n * (2 * levels + 1);
    let mut d = Digraph::empty(size);
    let top = levels as i64;
    for p in 0..size {
        let (x, i) = w.label(p);
        for y in g.out_neighbors(x).iter() {
            let j = if x == pred[a] && y == a && x != y {
                i + 1
            } else if x == a && y == pred[a] && x != y {
                i - 1
            } else {
                i
            };
            if (-top..=top).contains(&j) {
                let q = w.position(y, j).expect("in range");
                d.add_arc(p, q);
            }
        }
    }
    w.digraph = d;
    Ok(w)
}

/// A lift of `f: K -> G` into a cover window.
#[derive(Clone, Debug)]
pub struct Lift {
    pub window: CoverWindow,
    /// Window position of each vertex of `K`.
    pub map: Vec<usize>,
    /// Level of each vertex of `K`.
    pub levels: Vec<i64>,
}

/// Lifts `f: K -> G` through the covering projection.
///
/// Levels come from the winding number of `f` along a breadth-first
/// spanning tree rooted at `root`. The result is checked arc by arc; `None`
/// means some arc fails, which happens exactly when `f` winds around a
/// cycle of `K`. `levels` defaults to the vertex count of `K`.
pub fn lift(
    k: &Digraph,
    f: &[usize],
    g: &Digraph,
    root: usize,
    gate: usize,
    levels: Option<usize>,
) -> Result<Option<Lift>> {
    let nk = k.vertex_count();
    if f.len() != nk {
        return Err(Error::MapSize { got: f.len(), expected: nk });
    }
    if root >= nk {
        return Err(Error::VertexOutOfRange { vertex: root, count: nk });
    }
    if !is_homomorphism(k, g, f) {
        let bad = |&(u, v): &(usize, usize)| f[u] >= g.vertex_count() || f[v] >= g.vertex_count() || !g.has_arc(f[u], f[v]);
        let (u, v) = k.arcs().find(bad).unwrap_or((0, 0));
        return Err(Error::NotAHomomorphism(u, v));
    }
    if !k.is_connected() {
        return Err(Error::Disconnected);
    }
    let (_, _, pred) = cycle_neighbours(g)?;
    let window = cover_window(g, gate, levels.unwrap_or(nk))?;
    let mut level = vec![None; nk];
    level[root] = Some(0i64);
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        let lu = level[u].expect("visited");
        for v in k.neighbors(u).iter() {
            if level[v].is_none() {
                level[v] = Some(lu + gate_delta(pred[gate], gate, f[u], f[v]));
                queue.push_back(v);
            }
        }
    }
    let levels: Vec<i64> = level.into_iter().map(|l| l.expect("connected")).collect();
    let mut map = Vec::with_capacity(nk);
    for v in 0..nk {
        match window.position(f[v], levels[v]) {
            Some(p) => map.push(p),
            None => return Ok(None),
        }
    }
    if !k.arcs().all(|(u, v)| window.digraph.has_arc(map[u], map[v])) {
        return Ok(None);
    }
    Ok(Some(Lift { window, map, levels }))
}

/// Whether the product of the paths `P(Q)` maps onto the cycle `c`.
///
/// From girth 4 on, every homomorphism from the product lifts to the
/// universal cover, so it suffices that some spanning path of `c` (one
/// edge deleted, either orientation) is the image of the product. At
/// girth 3 triangles of the product can wind around `c`, and the product
/// is built and searched directly.
pub fn surjective_product_onto_cycle(qs: &[Word], c: &CycleId) -> Result<bool> {
    if c.girth() == 3 {
        let k = product_of_paths(qs);
        return onto_homomorphism_exists(&k.digraph, &c.digraph());
    }
    for p in induced_subpaths(c, c.girth() - 1)? {
        if surjective_product_onto_path(qs, &p)? {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::{canonical_cycle, cycle_of_word, enumerate_cycles, product_of_paths};
    use crate::homsearch::{hom_search, PinSet};

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn winding_examples() {
        let g = cycle_of_word(&w("*****")).unwrap();
        assert_eq!(winding_number(&g, 0, &[2, 2, 2]).unwrap(), 0);
        assert_eq!(winding_number(&g, 0, &[0, 1, 2, 3, 4, 0]).unwrap(), 1);
        assert_eq!(winding_number(&g, 0, &[0, 4, 3, 2, 1, 0]).unwrap(), -1);
        let p = [0, 1, 2, 3, 4, 0, 1];
        let mut back: Vec<usize> = p.to_vec();
        back.reverse();
        let mut there_and_back = p.to_vec();
        there_and_back.extend_from_slice(&back[1..]);
        assert_eq!(winding_number(&g, 2, &there_and_back).unwrap(), 0);
    }

    #[test]
    fn windows_are_unrolled_paths() {
        for n in 3..=6 {
            for c in enumerate_cycles(n).unwrap() {
                let g = c.digraph();
                for a in 0..n {
                    for levels in 0..=2 {
                        let win = cover_window(&g, a, levels).unwrap();
                        assert_eq!(win.vertex_count(), n * (2 * levels + 1));
                        assert!(win.is_path());
                        let unrolled = c.word().rotated(a).power(2 * levels + 1);
                        let want = unrolled.slice(0..unrolled.len() - 1);
                        assert_eq!(win.digraph.word_of_path().unwrap(), want, "{c} gate {a}");
                        assert!(is_homomorphism(&win.digraph, &g, &win.projection()));
                        for p in 0..win.vertex_count() {
                            let (x, i) = win.label(p);
                            assert_eq!(win.position(x, i), Some(p));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn identity_on_a_cycle_does_not_lift() {
        let g = cycle_of_word(&w("****")).unwrap();
        let id: Vec<usize> = (0..4).collect();
        assert!(lift(&g, &id, &g, 0, 0, None).unwrap().is_none());
        let constant = vec![2; 4];
        let l = lift(&g, &constant, &g, 0, 0, None).unwrap().unwrap();
        assert!(l.levels.iter().all(|&x| x == 0));
    }

    #[test]
    fn lifts_from_products_of_subpaths() {
        let c = canonical_cycle(&w("**+-*")).unwrap();
        let g = c.digraph();
        let subs = induced_subpaths(&c, 3).unwrap();
        let k = product_of_paths(&[subs[0].clone(), subs[3].clone()]);
        for target in 0..5 {
            let f = hom_search(&k.digraph, &g, &PinSet::new().with(0, target).with(15, (target + 2) % 5))
                .unwrap();
            let Some(f) = f else { continue };
            let l = lift(&k.digraph, f.as_slice(), &g, 0, 0, None).unwrap().expect("products of paths lift");
            let proj = l.window.projection();
            assert!((0..k.digraph.vertex_count()).all(|v| proj[l.map[v]] == f.image(v)));
        }
        let disconnected = Digraph::reflexive(2);
        assert_eq!(lift(&disconnected, &[0, 0], &g, 0, 0, None).unwrap_err(), Error::Disconnected);
    }

    #[test]
    fn onto_cycle_examples() {
        let c = canonical_cycle(&w("****+")).unwrap();
        let qs = induced_subpaths(&c, 3).unwrap();
        assert!(surjective_product_onto_cycle(&qs, &c).unwrap());
        let sym = canonical_cycle(&w("****")).unwrap();
        assert!(!surjective_product_onto_cycle(&[w("**")], &sym).unwrap());
    }
}

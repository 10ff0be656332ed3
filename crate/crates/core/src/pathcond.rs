//! The path condition for reflexive cycles: no product of subpaths of
//! length `n - 2` maps onto the cycle.
//!
//! Three routes are provided. [`path_condition_syntactic`] recognises the
//! failing shapes directly. [`path_condition_bruteforce`] decides
//! surjectivity from products of subpaths. [`check_word_criterion`] tests
//! a single candidate separating word, typically [`w_construction`].

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::cover::surjective_product_onto_cycle;
use crate::digraph::{induced_subpaths, CycleId};
use crate::words::{word_leq, Symbol, Word};
use crate::{Error, Result};

/// Girth above which the brute-force route refuses to run by default.
pub const DEFAULT_BRUTEFORCE_BUDGET: usize = 7;

/// Repetition length `N` used by [`hat`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WitnessParams {
    n: usize,
}

impl WitnessParams {
    pub fn new(n: usize) -> Result<WitnessParams> {
        if n == 0 {
            return Err(Error::Unsupported("repetition length must be positive"));
        }
        Ok(WitnessParams { n })
    }

    /// `2 * girth + 2`.
    pub fn for_girth(girth: usize) -> WitnessParams {
        WitnessParams { n: 2 * girth + 2 }
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    AlmostSymmetric,
    /// The cycle reads `(S**)^k S+` for a self-dual `S`.
    SStarDecomposition { s: Word, k: usize },
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Syntactic,
    WordCriterion,
    BruteForce,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathConditionVerdict {
    pub fails: bool,
    pub witness: Witness,
    pub method: Method,
}

/// `[x, y]`: the larger letter when `x` and `y` are comparable, else `yx`.
pub fn bracket(x: Symbol, y: Symbol) -> Word {
    if x.below(y) {
        Word::from_symbols(alloc::vec![y])
    } else if y.below(x) {
        Word::from_symbols(alloc::vec![x])
    } else {
        Word::from_symbols(alloc::vec![y, x])
    }
}

/// `-^N` for `+`, `+^N` for `-`, empty for `*`.
pub fn hat(x: Symbol, n: usize) -> Word {
    match x {
        Symbol::Star => Word::new(),
        s => Word::from_symbols(alloc::vec![s.dual(); n]),
    }
}

/// `W_N(X) = hat(x_1) [x_1, x_2] hat(x_2) ... [x_{r-1}, x_r] hat(x_r)`.
pub fn w_construction(x: &Word, params: WitnessParams) -> Result<Word> {
    let letters = x.symbols();
    let (&first, rest) = letters.split_first().ok_or(Error::EmptyWord)?;
    let mut out = hat(first, params.n);
    let mut prev = first;
    for &cur in rest {
        out = out.concat(&bracket(prev, cur)).concat(&hat(cur, params.n));
        prev = cur;
    }
    Ok(out)
}

/// Whether `w` separates the spanning path `p` of `c`: `w` is above every
/// subpath of length `n - 2` (both orientations) but not above `p`.
pub fn check_word_criterion(c: &CycleId, p: &Word, w: &Word) -> Result<bool> {
    let n = c.girth();
    if !induced_subpaths(c, n - 1)?.contains(p) {
        return Err(Error::SubpathLength { length: p.len(), girth: n });
    }
    let qs: BTreeSet<Word> = induced_subpaths(c, n - 2)?.into_iter().collect();
    Ok(qs.iter().all(|q| word_leq(q, w)) && !word_leq(p, w))
}

/// Recognises cycles failing the path condition: almost symmetric ones
/// (exactly one non-`*` letter) and those reading `(S**)^k S+` with `S`
/// self-dual and `k >= 1`.
///
/// The decomposition is searched over the `2n` representations ending in
/// `+`; the reported `S` is the shortest, ties going to the first
/// representation in [`CycleId::representations`] order.
pub fn path_condition_syntactic(c: &CycleId) -> PathConditionVerdict {
    let verdict = |fails, witness| PathConditionVerdict { fails, witness, method: Method::Syntactic };
    let n = c.girth();
    if c.word().star_count() + 1 == n {
        return verdict(true, Witness::AlmostSymmetric);
    }
    let reps: Vec<Word> = c.representations().into_iter().filter(|r| r.symbols().last() == Some(&Symbol::Plus)).collect();
    for s_len in 0..n {
        // (s + 2) k + s + 1 = n
        let Some(rest) = n.checked_sub(s_len + 1) else { break };
        if rest == 0 || rest % (s_len + 2) != 0 {
            continue;
        }
        let k = rest / (s_len + 2);
        for r in &reps {
            let s = r.slice(0..s_len);
            if !s.is_self_dual() {
                continue;
            }
            let stars = Word::from_symbols(alloc::vec![Symbol::Star; 2]);
            let shape = s.concat(&stars).power(k).concat(&s).concat(&Word::from_symbols(alloc::vec![Symbol::Plus]));
            if &shape == r {
                return verdict(true, Witness::SStarDecomposition { s, k });
            }
        }
    }
    verdict(false, Witness::None)
}

/// Decides the path condition from its definition: the cycle fails when
/// some product of its subpaths of length `n - 2` maps onto it. Adding
/// factors only helps, and from girth 4 on the answer depends only on which
/// subpaths occur, so the product of all of them (both orientations) is
/// checked. At girth 3 two copies of each subpath are used, which already
/// maps onto `C(***)` where one copy does not. Refuses girths above
/// `budget`.
pub fn path_condition_bruteforce(c: &CycleId, budget: usize) -> Result<PathConditionVerdict> {
    let n = c.girth();
    if n > budget {
        return Err(Error::BudgetExceeded { girth: n, budget });
    }
    let mut qs: Vec<Word> = induced_subpaths(c, n - 2)?.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
    if n == 3 {
        // P(Q) and P(dual Q) are isomorphic
        let classes: BTreeSet<Word> = qs.iter().map(|q| core::cmp::min(q.clone(), q.dual())).collect();
        qs = classes.into_iter().flat_map(|q| [q.clone(), q]).collect();
    }
    let fails = surjective_product_onto_cycle(&qs, c)?;
    Ok(PathConditionVerdict { fails, witness: Witness::None, method: Method::BruteForce })
}

/// Word-criterion run with `W_N(P)` as the candidate for every spanning
/// path `P`. `Some(false)` when every candidate separates (so the cycle
/// satisfies the condition); `None` when some candidate does not, which
/// by itself decides nothing.
pub fn path_condition_by_construction(c: &CycleId, params: WitnessParams) -> Result<Option<PathConditionVerdict>> {
    for p in induced_subpaths(c, c.girth() - 1)? {
        let w = w_construction(&p, params)?;
        if !check_word_criterion(c, &p, &w)? {
            return Ok(None);
        }
    }
    Ok(Some(PathConditionVerdict { fails: false, witness: Witness::None, method: Method::WordCriterion }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::{canonical_cycle, enumerate_cycles};

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn cyc(s: &str) -> CycleId {
        canonical_cycle(&w(s)).unwrap()
    }

    #[test]
    fn bracket_and_hat_examples() {
        assert_eq!(bracket(Symbol::Star, Symbol::Plus), w("+"));
        assert_eq!(bracket(Symbol::Plus, Symbol::Minus), w("-+"));
        assert_eq!(bracket(Symbol::Plus, Symbol::Plus), w("+"));
        assert_eq!(hat(Symbol::Plus, 3), w("---"));
        assert_eq!(hat(Symbol::Star, 5), w(""));
        assert_eq!(hat(Symbol::Minus, 2), w("++"));
    }

    #[test]
    fn construction_examples() {
        let p = WitnessParams::new(4).unwrap();
        assert_eq!(w_construction(&w("+"), p).unwrap(), w("----"));
        assert_eq!(w_construction(&w("*"), p).unwrap(), w(""));
        assert_eq!(w_construction(&w(""), p), Err(Error::EmptyWord));
        assert_eq!(w_construction(&w("+-"), p).unwrap(), w("-----+++++"));
        assert!(WitnessParams::new(0).is_err());
    }

    #[test]
    fn syntactic_examples() {
        assert_eq!(path_condition_syntactic(&cyc("****+")).witness, Witness::AlmostSymmetric);
        let v = path_condition_syntactic(&cyc("+*-**+*-+"));
        assert!(v.fails);
        assert_eq!(v.witness, Witness::SStarDecomposition { s: w("+*-"), k: 1 });
        for n in 3..=9 {
            assert!(!path_condition_syntactic(&cyc(&"*".repeat(n))).fails);
        }
    }

    #[test]
    fn word_criterion_examples() {
        let c = cyc("****+");
        let p = w("****");
        let wp = w_construction(&p, WitnessParams::for_girth(5)).unwrap();
        assert!(!check_word_criterion(&c, &p, &wp).unwrap());
        assert!(!check_word_criterion(&c, &p, &p).unwrap());
        assert!(check_word_criterion(&c, &w("**"), &p).is_err());
        let sym = cyc("****");
        let p = w("***");
        let wp = w_construction(&p, WitnessParams::for_girth(4)).unwrap();
        assert_eq!(wp, w("**"));
        assert!(check_word_criterion(&sym, &p, &wp).unwrap());
    }

    #[test]
    fn bruteforce_examples() {
        assert!(path_condition_bruteforce(&cyc("****+"), 7).unwrap().fails);
        assert!(!path_condition_bruteforce(&cyc("****"), 7).unwrap().fails);
        assert_eq!(
            path_condition_bruteforce(&cyc("********"), 7),
            Err(Error::BudgetExceeded { girth: 8, budget: 7 })
        );
    }

    #[test]
    fn routes_agree_from_girth_four() {
        for n in 4..=5 {
            for c in enumerate_cycles(n).unwrap() {
                let s = path_condition_syntactic(&c);
                let b = path_condition_bruteforce(&c, 7).unwrap();
                assert_eq!(s.fails, b.fails, "{c}");
            }
        }
    }

    #[test]
    fn at_girth_three_only_the_directed_triangle_satisfies() {
        for c in enumerate_cycles(3).unwrap() {
            let b = path_condition_bruteforce(&c, 7).unwrap();
            assert_eq!(b.fails, c.word() != &w("+++"), "{c}");
        }
        assert!(path_condition_syntactic(&cyc("**+")).fails);
        assert!(!path_condition_syntactic(&cyc("***")).fails);
    }
}

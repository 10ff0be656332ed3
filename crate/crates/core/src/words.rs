//! Words over `{+, -, *}` and the homomorphism order on them.
//!
//! A word `W = x_1 ... x_n` names the reflexive path `P(W)` on vertices
//! `0..=n` whose `i`-th letter orients the edge `(i-1, i)`: `+` is a forward
//! arc, `-` a backward arc and `*` both. `U <= V` holds when there is a
//! homomorphism from `P(V)` onto `P(U)` sending `0` to `0` and `|V|` to `|U|`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::bitset::Bitset;
use crate::{Error, Result};

/// One letter. The derived `Ord` is the lexicographic order used for
/// canonical forms (`*` < `+` < `-`); the homomorphism order on letters is
/// [`Symbol::below`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Star,
    Plus,
    Minus,
}

impl Symbol {
    pub const ALL: [Symbol; 3] = [Symbol::Star, Symbol::Plus, Symbol::Minus];

    pub fn dual(self) -> Symbol {
        match self {
            Symbol::Star => Symbol::Star,
            Symbol::Plus => Symbol::Minus,
            Symbol::Minus => Symbol::Plus,
        }
    }

    /// `self <= other` in the letter order: `*` is below both `+` and `-`,
    /// which are incomparable.
    pub fn below(self, other: Symbol) -> bool {
        self == other || self == Symbol::Star
    }

    pub fn as_char(self) -> char {
        match self {
            Symbol::Star => '*',
            Symbol::Plus => '+',
            Symbol::Minus => '-',
        }
    }

    pub fn from_char(c: char) -> Option<Symbol> {
        match c {
            '*' => Some(Symbol::Star),
            '+' => Some(Symbol::Plus),
            '-' => Some(Symbol::Minus),
            _ => None,
        }
    }

    pub(crate) fn index(self) -> usize {
        self as usize
    }

    /// Whether the letter puts a forward arc on its edge.
    pub fn has_forward(self) -> bool {
        self != Symbol::Minus
    }

    pub fn has_backward(self) -> bool {
        self != Symbol::Plus
    }
}

/// A finite word over `{+, -, *}`; possibly empty.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn new() -> Word {
        Word(Vec::new())
    }

    pub fn from_symbols(symbols: Vec<Symbol>) -> Word {
        Word(symbols)
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, s: Symbol) {
        self.0.push(s);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn power(&self, n: usize) -> Word {
        Word(self.0.repeat(n))
    }

    pub fn dual(&self) -> Word {
        Word(self.0.iter().rev().map(|s| s.dual()).collect())
    }

    pub fn is_self_dual(&self) -> bool {
        let n = self.0.len();
        (0..n).all(|i| self.0[i] == self.0[n - 1 - i].dual())
    }

    /// The word with every `*` removed.
    pub fn strip_stars(&self) -> Word {
        Word(self.0.iter().copied().filter(|&s| s != Symbol::Star).collect())
    }

    pub fn star_count(&self) -> usize {
        self.0.iter().filter(|&&s| s == Symbol::Star).count()
    }

    /// Number of `+` minus number of `-`.
    pub fn height(&self) -> i64 {
        self.0
            .iter()
            .map(|s| match s {
                Symbol::Plus => 1,
                Symbol::Minus => -1,
                Symbol::Star => 0,
            })
            .sum()
    }

    /// Cyclic left rotation by `r` letters.
    pub fn rotated(&self, r: usize) -> Word {
        if self.0.is_empty() {
            return self.clone();
        }
        let r = r % self.0.len();
        let mut v = self.0[r..].to_vec();
        v.extend_from_slice(&self.0[..r]);
        Word(v)
    }

    /// Letters `range` of the word as a new word.
    pub fn slice(&self, range: core::ops::Range<usize>) -> Word {
        Word(self.0[range].to_vec())
    }

    /// Whether `self` is a (scattered) subsequence of `other`.
    pub fn is_subword_of(&self, other: &Word) -> bool {
        let mut it = other.0.iter();
        self.0.iter().all(|s| it.any(|t| t == s))
    }

    /// `self <= other` in the homomorphism order.
    pub fn leq(&self, other: &Word) -> bool {
        word_leq(self, other)
    }

    /// All words of length `n` in lexicographic order.
    pub fn all_of_length(n: usize) -> impl Iterator<Item = Word> {
        let total = 3usize.checked_pow(n as u32).expect("word length too large");
        (0..total).map(move |mut code| {
            let mut v = vec![Symbol::Star; n];
            for slot in v.iter_mut().rev() {
                *slot = Symbol::ALL[code % 3];
                code /= 3;
            }
            Word(v)
        })
    }

    /// All words of length at most `n`, shortest first.
    pub fn all_up_to_length(n: usize) -> impl Iterator<Item = Word> {
        (0..=n).flat_map(Word::all_of_length)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word(\"{self}\")")
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        s.chars()
            .enumerate()
            .map(|(position, found)| Symbol::from_char(found).ok_or(Error::InvalidSymbol { position, found }))
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

impl From<Word> for String {
    fn from(w: Word) -> String {
        alloc::format!("{w}")
    }
}

/// Tracks the set of vertices of `P(U)` reachable from `0` by walks that read
/// a given word, for `|U| < 128`.
///
/// Reading letter `v` from vertex `i - 1` to `i` needs `u_i <= v`; from `i`
/// back to `i - 1` it needs `u_i <= dual(v)`. Staying put uses a loop.
#[derive(Clone, Debug)]
pub struct PathTracker {
    end: u32,
    fwd: [u128; 3],
    bwd: [u128; 3],
}

impl PathTracker {
    pub const MAX_LEN: usize = 127;

    pub fn new(u: &Word) -> Option<PathTracker> {
        if u.len() > Self::MAX_LEN {
            return None;
        }
        let mut fwd = [0u128; 3];
        let mut bwd = [0u128; 3];
        for v in Symbol::ALL {
            for (i, &ui) in u.symbols().iter().enumerate() {
                // letter i (0-based) joins vertices i and i + 1
                if ui.below(v) {
                    fwd[v.index()] |= 1 << (i + 1);
                }
                if ui.below(v.dual()) {
                    bwd[v.index()] |= 1 << i;
                }
            }
        }
        Some(PathTracker { end: u.len() as u32, fwd, bwd })
    }

    pub fn start(&self) -> u128 {
        1
    }

    pub fn end(&self) -> usize {
        self.end as usize
    }

    pub fn end_mask(&self) -> u128 {
        1 << self.end
    }

    #[inline]
    pub fn step(&self, s: u128, v: Symbol) -> u128 {
        s | ((s << 1) & self.fwd[v.index()]) | ((s >> 1) & self.bwd[v.index()])
    }

    pub fn run(&self, word: &Word) -> u128 {
        word.symbols().iter().fold(self.start(), |s, &v| self.step(s, v))
    }
}

fn word_leq_wide(u: &Word, v: &Word) -> bool {
    let m = u.len();
    let fwd: [Bitset; 3] = Symbol::ALL.map(|letter| {
        let mut b = Bitset::new(m + 1);
        for (i, &ui) in u.symbols().iter().enumerate() {
            if ui.below(letter) {
                b.insert(i + 1);
            }
        }
        b
    });
    let bwd: [Bitset; 3] = Symbol::ALL.map(|letter| {
        let mut b = Bitset::new(m + 1);
        for (i, &ui) in u.symbols().iter().enumerate() {
            if ui.below(letter.dual()) {
                b.insert(i);
            }
        }
        b
    });
    let mut s = Bitset::singleton(m + 1, 0);
    let mut up = Bitset::new(m + 1);
    let mut down = Bitset::new(m + 1);
    for &letter in v.symbols() {
        up.clone_from(&s);
        up.shift_up();
        up.intersect_with(&fwd[letter.index()]);
        down.clone_from(&s);
        down.shift_down();
        down.intersect_with(&bwd[letter.index()]);
        s.union_with(&up);
        s.union_with(&down);
    }
    s.contains(m)
}

/// `U <= V`: some homomorphism maps `P(V)` onto `P(U)` preserving endpoints.
pub fn word_leq(u: &Word, v: &Word) -> bool {
    if u.len() > v.len() {
        return false;
    }
    match PathTracker::new(u) {
        Some(t) => t.run(v) & t.end_mask() != 0,
        None => word_leq_wide(u, v),
    }
}

/// An explicit endpoint-preserving homomorphism `P(V) -> P(U)` when
/// `U <= V`, as the image of each vertex `0..=|V|`.
///
/// The returned map is monotone: consecutive images differ by at most one
/// step forward.
pub fn word_leq_witness(u: &Word, v: &Word) -> Option<Vec<usize>> {
    let (m, n) = (u.len(), v.len());
    if m > n {
        return None;
    }
    // reach[i][j]: after reading i letters of V we can stand on vertex j.
    let mut reach = vec![vec![false; m + 1]; n + 1];
    reach[0][0] = true;
    for i in 0..n {
        let letter = v.symbols()[i];
        for j in 0..=m {
            if !reach[i][j] {
                continue;
            }
            reach[i + 1][j] = true;
            if j < m && u.symbols()[j].below(letter) {
                reach[i + 1][j + 1] = true;
            }
        }
    }
    if !reach[n][m] {
        return None;
    }
    let mut map = vec![0; n + 1];
    let mut j = m;
    for i in (0..n).rev() {
        map[i + 1] = j;
        let letter = v.symbols()[i];
        if reach[i][j] {
            continue;
        }
        debug_assert!(j > 0 && reach[i][j - 1] && u.symbols()[j - 1].below(letter));
        j -= 1;
    }
    map[0] = j;
    debug_assert_eq!(j, 0);
    Some(map)
}

/// All shuffles of `x` and `y`: words of length `|x| + |y|` that contain both
/// as subwords, start with the first letter of `x` and end with the last
/// letter of `y`. Sorted and without repeats.
pub fn shuffles(x: &Word, y: &Word) -> Result<Vec<Word>> {
    let (Some(&first), Some(&last)) = (x.symbols().first(), y.symbols().last()) else {
        return Err(Error::EmptyWord);
    };
    let total = x.len() + y.len();
    let mut out = Vec::new();
    let mut buf = Vec::with_capacity(total);
    // Greedy subsequence matching is exact, so (i, j) are the longest matched
    // prefixes of x and y.
    fn go(
        x: &[Symbol],
        y: &[Symbol],
        total: usize,
        first: Symbol,
        last: Symbol,
        buf: &mut Vec<Symbol>,
        i: usize,
        j: usize,
        out: &mut Vec<Word>,
    ) {
        let left = total - buf.len();
        if left < x.len() - i || left < y.len() - j {
            return;
        }
        if left == 0 {
            out.push(Word(buf.clone()));
            return;
        }
        for s in Symbol::ALL {
            if (buf.is_empty() && s != first) || (left == 1 && s != last) {
                continue;
            }
            let ni = i + usize::from(i < x.len() && x[i] == s);
            let nj = j + usize::from(j < y.len() && y[j] == s);
            buf.push(s);
            go(x, y, total, first, last, buf, ni, nj, out);
            buf.pop();
        }
    }
    go(x.symbols(), y.symbols(), total, first, last, &mut buf, 0, 0, &mut out);
    Ok(out)
}

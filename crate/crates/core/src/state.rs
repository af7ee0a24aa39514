//! Bit-packed cyclic states over `Circ_n` and sets of them.
//!
//! Vertices are 0-based. Vertex `p` lives in bit `p` of the packed word and the
//! string form lists `y_0 y_1 … y_{n-1}` left to right, so `"1000"` is the
//! integer 1.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::rule::Rule;
use crate::Error;

/// Smallest ring size handled everywhere.
pub const MIN_N: u32 = 4;
/// Largest ring size for operations that touch all `2^n` states.
pub const MAX_ENUMERATION_N: u32 = 24;
/// Largest ring size a packed [`State`] can hold.
pub const MAX_STATE_N: u32 = 64;

/// Validates `n` for a full state-space operation.
pub fn check_enumerable(n: u32) -> Result<(), Error> {
    if (MIN_N..=MAX_ENUMERATION_N).contains(&n) {
        Ok(())
    } else {
        Err(Error::UnsupportedSize { n, min: MIN_N, max: MAX_ENUMERATION_N })
    }
}

#[inline]
fn low_mask(n: u32) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Applies the local function of `rule` at vertex `i` to a packed state.
#[inline]
pub fn apply_local_bits(rule: Rule, bits: u64, n: u32, i: u32) -> u64 {
    let left = if i == 0 { n - 1 } else { i - 1 };
    let right = if i + 1 == n { 0 } else { i + 1 };
    let j = (((bits >> left) & 1) << 2) | (((bits >> i) & 1) << 1) | ((bits >> right) & 1);
    let new = (rule.0 as u64 >> j) & 1;
    (bits & !(1u64 << i)) | (new << i)
}

/// A binary state on the ring `Circ_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct State {
    bits: u64,
    n: u32,
}

impl State {
    pub fn new(bits: u64, n: u32) -> Result<Self, Error> {
        if !(1..=MAX_STATE_N).contains(&n) {
            return Err(Error::UnsupportedSize { n, min: 1, max: MAX_STATE_N });
        }
        if bits & !low_mask(n) != 0 {
            return Err(Error::InvalidState);
        }
        Ok(State { bits, n })
    }

    /// Caller guarantees only the low `n` bits are set.
    #[inline]
    pub(crate) fn from_bits_unchecked(bits: u64, n: u32) -> Self {
        debug_assert!(bits & !low_mask(n) == 0);
        State { bits, n }
    }

    pub fn zeros(n: u32) -> Self {
        State { bits: 0, n }
    }

    pub fn ones(n: u32) -> Self {
        State { bits: low_mask(n), n }
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn n(self) -> u32 {
        self.n
    }

    /// Value at vertex `i` (taken mod n).
    pub fn get(self, i: i64) -> bool {
        let p = i.rem_euclid(self.n as i64) as u32;
        (self.bits >> p) & 1 == 1
    }

    pub fn is_uniform(self) -> bool {
        self.bits == 0 || self.bits == low_mask(self.n)
    }

    pub fn count_ones(self) -> u32 {
        self.bits.count_ones()
    }

    pub fn apply_local(self, rule: Rule, i: u32) -> Result<State, Error> {
        if i >= self.n {
            return Err(Error::VertexOutOfRange { vertex: i, n: self.n });
        }
        Ok(State { bits: apply_local_bits(rule, self.bits, self.n, i), n: self.n })
    }

    pub fn complement(self) -> State {
        State { bits: !self.bits & low_mask(self.n), n: self.n }
    }

    /// Cyclic shift: the value at vertex `p` moves to vertex `p + r`.
    pub fn rotate(self, r: i64) -> State {
        let n = self.n;
        let r = r.rem_euclid(n as i64) as u32;
        if r == 0 {
            return self;
        }
        let m = low_mask(n);
        let bits = ((self.bits << r) | (self.bits >> (n - r))) & m;
        State { bits, n }
    }

    /// Mirror image: vertex `p` moves to vertex `n - 1 - p`.
    pub fn reflect(self) -> State {
        let bits = self.bits.reverse_bits() >> (64 - self.n);
        State { bits, n: self.n }
    }

    /// True if `word` occurs starting at some vertex, reading cyclically.
    pub fn contains_word(self, word: &Word) -> bool {
        contains_cyclic(self.bits, self.n, word)
    }

    /// Maximal runs, the first one starting at the smallest vertex that
    /// begins a run. Uniform states have no runs.
    pub fn blocks(self) -> BlockDecomposition {
        if self.is_uniform() {
            return BlockDecomposition::Uniform(self.bits != 0);
        }
        let n = self.n as i64;
        let start = (0..n).find(|&p| self.get(p) != self.get(p - 1)).unwrap_or(0);
        let mut blocks = Vec::new();
        let mut p = start;
        while p < start + n {
            let value = self.get(p);
            let mut len = 1;
            while p + len < start + n && self.get(p + len) == value {
                len += 1;
            }
            blocks.push(Block { value, start: (p % n) as u32, len: len as u32 });
            p += len;
        }
        BlockDecomposition::Runs(blocks)
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in 0..self.n {
            let c = if (self.bits >> p) & 1 == 1 { '1' } else { '0' };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl core::str::FromStr for State {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let n = s.len() as u32;
        if n == 0 || n > MAX_STATE_N {
            return Err(Error::InvalidState);
        }
        let mut bits = 0u64;
        for (p, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => bits |= 1 << p,
                _ => return Err(Error::InvalidState),
            }
        }
        Ok(State { bits, n })
    }
}

/// A maximal run of equal values.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Block {
    pub value: bool,
    pub start: u32,
    pub len: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BlockDecomposition {
    /// `0̄` (false) or `1̄` (true).
    Uniform(bool),
    Runs(Vec<Block>),
}

impl BlockDecomposition {
    pub fn runs(&self) -> &[Block] {
        match self {
            BlockDecomposition::Uniform(_) => &[],
            BlockDecomposition::Runs(r) => r,
        }
    }

    pub fn blocks_of(&self, value: bool) -> impl Iterator<Item = &Block> {
        self.runs().iter().filter(move |b| b.value == value)
    }

    /// `10`-blocks `1^i 0^j` as `(start, length)`.
    pub fn ten_blocks(&self) -> Vec<(u32, u32)> {
        let runs = self.runs();
        let k = runs.len();
        (0..k)
            .filter(|&i| runs[i].value)
            .map(|i| (runs[i].start, runs[i].len + runs[(i + 1) % k].len))
            .collect()
    }
}

/// A finite binary word, character `k` in bit `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    pub bits: u64,
    pub len: u32,
}

impl Word {
    pub fn parse(s: &str) -> Result<Word, Error> {
        let len = s.len() as u32;
        if len == 0 || len > 32 {
            return Err(Error::InvalidWord);
        }
        let mut bits = 0;
        for (k, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => bits |= 1 << k,
                _ => return Err(Error::InvalidWord),
            }
        }
        Ok(Word { bits, len })
    }

    pub fn reversed(self) -> Word {
        Word { bits: self.bits.reverse_bits() >> (64 - self.len), len: self.len }
    }

    /// The abbreviation letters `A`..`F`.
    pub fn abbreviation(letter: char) -> Option<Word> {
        let s = match letter {
            'A' => "11",
            'B' => "000",
            'C' => "111",
            'D' => "010",
            'E' => "101",
            'F' => "1100",
            _ => return None,
        };
        Word::parse(s).ok()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in 0..self.len {
            write!(f, "{}", (self.bits >> k) & 1)?;
        }
        Ok(())
    }
}

#[inline]
fn contains_cyclic(bits: u64, n: u32, word: &Word) -> bool {
    let doubled = (bits as u128) | ((bits as u128) << n);
    let mask = (1u128 << word.len) - 1;
    let w = word.bits as u128;
    (0..n).any(|p| (doubled >> p) & mask == w)
}

/// A list of words to avoid.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AvoidSpec {
    pub words: Vec<Word>,
}

impl AvoidSpec {
    pub fn new(words: Vec<Word>) -> Self {
        AvoidSpec { words }
    }

    /// Parses either abbreviation letters (`"AB"`) or comma-separated binary
    /// words (`"11,000"`).
    pub fn parse(s: &str) -> Result<AvoidSpec, Error> {
        let s = s.trim();
        if !s.is_empty() && s.chars().all(|c| ('A'..='F').contains(&c)) {
            let words = s.chars().map(|c| Word::abbreviation(c).unwrap()).collect();
            return Ok(AvoidSpec { words });
        }
        let words = s
            .split(',')
            .map(|w| Word::parse(w.trim()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(AvoidSpec { words })
    }

    pub fn admits(&self, y: State) -> bool {
        !self.words.iter().any(|w| y.contains_word(w))
    }
}

/// A set of states of `Circ_n`, as a bitset over the `2^n` packed values.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StateSet {
    n: u32,
    words: Vec<u64>,
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StateSet").field("n", &self.n).field("len", &self.len()).finish()
    }
}

impl StateSet {
    pub fn empty(n: u32) -> Result<Self, Error> {
        check_enumerable(n)?;
        let size = 1usize << n;
        Ok(StateSet { n, words: alloc::vec![0; size.div_ceil(64)] })
    }

    pub fn full(n: u32) -> Result<Self, Error> {
        let mut s = Self::empty(n)?;
        let size = 1usize << n;
        for (k, w) in s.words.iter_mut().enumerate() {
            let lo = k * 64;
            let cnt = (size - lo).min(64);
            *w = if cnt == 64 { u64::MAX } else { (1u64 << cnt) - 1 };
        }
        Ok(s)
    }

    /// All states satisfying `pred`.
    pub fn from_predicate(n: u32, mut pred: impl FnMut(State) -> bool) -> Result<Self, Error> {
        let mut s = Self::empty(n)?;
        for bits in 0..(1u64 << n) {
            if pred(State::from_bits_unchecked(bits, n)) {
                s.words[(bits >> 6) as usize] |= 1 << (bits & 63);
            }
        }
        Ok(s)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn contains_bits(&self, bits: u64) -> bool {
        (bits >> self.n) == 0 && (self.words[(bits >> 6) as usize] >> (bits & 63)) & 1 == 1
    }

    pub fn contains(&self, y: State) -> bool {
        y.n() == self.n && self.contains_bits(y.bits())
    }

    pub fn insert_bits(&mut self, bits: u64) {
        self.words[(bits >> 6) as usize] |= 1 << (bits & 63);
    }

    pub fn insert(&mut self, y: State) {
        debug_assert_eq!(y.n(), self.n);
        self.insert_bits(y.bits());
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Packed values in increasing order.
    pub fn iter_bits(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            core::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as u64;
                w &= w - 1;
                Some(((k as u64) << 6) | t)
            })
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = State> + '_ {
        let n = self.n;
        self.iter_bits().map(move |b| State::from_bits_unchecked(b, n))
    }

    pub fn to_sorted_vec(&self) -> Vec<u64> {
        self.iter_bits().collect()
    }

    pub fn union(&self, other: &StateSet) -> StateSet {
        debug_assert_eq!(self.n, other.n);
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect();
        StateSet { n: self.n, words }
    }

    pub fn intersection(&self, other: &StateSet) -> StateSet {
        debug_assert_eq!(self.n, other.n);
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect();
        StateSet { n: self.n, words }
    }

    pub fn is_subset(&self, other: &StateSet) -> bool {
        self.n == other.n && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn with(mut self, y: State) -> StateSet {
        self.insert(y);
        self
    }

    /// Human-readable listing, e.g. `{0000, 1010}`.
    pub fn describe(&self) -> String {
        let mut out = String::from("{");
        for (k, y) in self.iter().enumerate() {
            if k > 0 {
                out.push_str(", ");
            }
            out.push_str(&alloc::format!("{y}"));
        }
        out.push('}');
        out
    }
}

/// All states of `Circ_n` containing none of the words in `spec` cyclically.
pub fn avoid_set(n: u32, spec: &AvoidSpec) -> Result<StateSet, Error> {
    check_enumerable(n)?;
    if let Some(w) = spec.words.iter().find(|w| w.len > n) {
        return Err(Error::WordTooLong { len: w.len, n });
    }
    StateSet::from_predicate(n, |y| spec.admits(y))
}

/// Neighbourhood triples `(left, centre, right)` read left to right as words
/// that the rule alters.
pub fn altering_triples(rule: Rule) -> AvoidSpec {
    let words = (0..8usize)
        .filter(|&j| rule.bit(j) != ((j >> 1) & 1 == 1))
        .map(|j| {
            // word character 0 is the left neighbour
            let bits = (((j >> 2) & 1) | (((j >> 1) & 1) << 1) | ((j & 1) << 2)) as u64;
            Word { bits, len: 3 }
        })
        .collect();
    AvoidSpec { words }
}

/// States left unchanged by every local function of `rule`.
pub fn fixed_states(rule: Rule, n: u32) -> Result<StateSet, Error> {
    avoid_set(n, &altering_triples(rule))
}

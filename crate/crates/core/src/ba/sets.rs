//! Fixed-universe bit sets used as keys of the structural quasiorders.
//!
//! [`StateSet`] holds a subset of the states of one automaton. [`ContextSet`]
//! holds triples `(q, q', k)` stored as two rows per source state: the `⊥` row
//! (every `q'` reachable from `q`) and the `⊤` row (those reachable while
//! visiting an accepting state). Rows are only materialized for the source
//! states the set was built from, so context sets relative to a small anchor
//! stay small even when the automaton is large.

use std::fmt;
use std::sync::Arc;

use super::State;

const BITS: usize = 64;

#[inline]
fn words_for(universe: usize) -> usize {
    universe.div_ceil(BITS).max(1)
}

#[inline]
fn is_subset_words(lhs: &[u64], rhs: &[u64]) -> bool {
    lhs.iter().zip(rhs).all(|(l, r)| l & !r == 0)
}

fn iter_bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(i, &w)| {
        let mut rest = w;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let bit = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i * BITS + bit)
        })
    })
}

/// A subset of `0..universe`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateSet {
    universe: usize,
    words: Box<[u64]>,
}

impl StateSet {
    pub fn empty(universe: usize) -> Self {
        StateSet {
            universe,
            words: vec![0; words_for(universe)].into_boxed_slice(),
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut set = Self::empty(universe);
        for q in 0..universe {
            set.insert(q);
        }
        set
    }

    pub fn singleton(universe: usize, q: State) -> Self {
        let mut set = Self::empty(universe);
        set.insert(q);
        set
    }

    pub fn from_states(universe: usize, states: impl IntoIterator<Item = State>) -> Self {
        let mut set = Self::empty(universe);
        for q in states {
            set.insert(q);
        }
        set
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    #[inline]
    pub fn insert(&mut self, q: State) -> bool {
        assert!(q < self.universe, "state {q} outside universe {}", self.universe);
        let (w, b) = (q / BITS, q % BITS);
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    #[inline]
    pub fn contains(&self, q: State) -> bool {
        q < self.universe && self.words[q / BITS] & (1 << (q % BITS)) != 0
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Subset test; both sets must share the universe.
    #[inline]
    pub fn is_subset(&self, other: &StateSet) -> bool {
        debug_assert_eq!(self.universe, other.universe);
        is_subset_words(&self.words, &other.words)
    }

    pub fn union_with(&mut self, other: &StateSet) {
        for (l, r) in self.words.iter_mut().zip(other.words.iter()) {
            *l |= r;
        }
    }

    pub fn intersects(&self, other: &StateSet) -> bool {
        self.words.iter().zip(other.words.iter()).any(|(l, r)| l & r != 0)
    }

    /// Ascending iteration.
    pub fn iter(&self) -> impl Iterator<Item = State> + '_ {
        iter_bits(&self.words)
    }

    pub(crate) fn words_mut(&mut self) -> &mut [u64] {
        &mut self.words
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A set of contexts `(source, sink, accepting)`.
///
/// Every `⊤` triple is accompanied by its `⊥` twin; all constructors in this
/// crate maintain that closure.
#[derive(Clone)]
pub struct ContextSet {
    universe: usize,
    sources: Arc<[State]>,
    row_words: usize,
    // row 2i: ⊥ sinks of sources[i]; row 2i+1: ⊤ sinks of sources[i]
    bits: Box<[u64]>,
}

impl ContextSet {
    pub fn empty(universe: usize, sources: Arc<[State]>) -> Self {
        debug_assert!(sources.windows(2).all(|w| w[0] < w[1]));
        let row_words = words_for(universe);
        ContextSet {
            universe,
            bits: vec![0; sources.len() * 2 * row_words].into_boxed_slice(),
            sources,
            row_words,
        }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    /// Source states rows are kept for (ascending).
    pub fn sources(&self) -> &Arc<[State]> {
        &self.sources
    }

    #[inline]
    pub(crate) fn row(&self, idx: usize, top: bool) -> &[u64] {
        let start = (2 * idx + top as usize) * self.row_words;
        &self.bits[start..start + self.row_words]
    }

    #[inline]
    pub(crate) fn row_mut(&mut self, idx: usize, top: bool) -> &mut [u64] {
        let start = (2 * idx + top as usize) * self.row_words;
        &mut self.bits[start..start + self.row_words]
    }

    /// Inserts `(q, q', k)`; inserting a `⊤` triple also inserts its `⊥` twin.
    /// Panics if `q` is not one of the sources.
    pub fn insert(&mut self, q: State, q2: State, top: bool) {
        let idx = self
            .sources
            .binary_search(&q)
            .unwrap_or_else(|_| panic!("state {q} is not a source of this context set"));
        assert!(q2 < self.universe);
        let (w, b) = (q2 / BITS, q2 % BITS);
        self.row_mut(idx, false)[w] |= 1 << b;
        if top {
            self.row_mut(idx, true)[w] |= 1 << b;
        }
    }

    pub fn contains(&self, q: State, q2: State, top: bool) -> bool {
        if q2 >= self.universe {
            return false;
        }
        match self.sources.binary_search(&q) {
            Ok(idx) => self.row(idx, top)[q2 / BITS] & (1 << (q2 % BITS)) != 0,
            Err(_) => false,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// All triples in ascending `(q, q', k)` order with `⊥ < ⊤`.
    pub fn triples(&self) -> Vec<(State, State, bool)> {
        let mut out = Vec::new();
        for (idx, &q) in self.sources.iter().enumerate() {
            let bot = self.row(idx, false);
            let top = self.row(idx, true);
            for q2 in iter_bits(bot) {
                out.push((q, q2, false));
                if top[q2 / BITS] & (1 << (q2 % BITS)) != 0 {
                    out.push((q, q2, true));
                }
            }
        }
        out
    }

    /// `⊥`-projection: the sinks of `q`.
    pub fn sinks(&self, q: State) -> StateSet {
        let mut out = StateSet::empty(self.universe);
        if let Ok(idx) = self.sources.binary_search(&q) {
            out.words_mut().copy_from_slice(self.row(idx, false));
        }
        out
    }

    /// Sinks of `q` reachable with an accepting visit.
    pub fn accepting_sinks(&self, q: State) -> StateSet {
        let mut out = StateSet::empty(self.universe);
        if let Ok(idx) = self.sources.binary_search(&q) {
            out.words_mut().copy_from_slice(self.row(idx, true));
        }
        out
    }

    /// Checks the `⊤`-implies-`⊥` closure.
    pub fn is_closed(&self) -> bool {
        (0..self.sources.len()).all(|i| is_subset_words(self.row(i, true), self.row(i, false)))
    }

    pub fn is_subset(&self, other: &ContextSet) -> bool {
        debug_assert_eq!(self.universe, other.universe);
        if Arc::ptr_eq(&self.sources, &other.sources) || self.sources == other.sources {
            return is_subset_words(&self.bits, &other.bits);
        }
        for (idx, q) in self.sources.iter().enumerate() {
            let bot = self.row(idx, false);
            let top = self.row(idx, true);
            match other.sources.binary_search(q) {
                Ok(j) => {
                    if !is_subset_words(bot, other.row(j, false))
                        || !is_subset_words(top, other.row(j, true))
                    {
                        return false;
                    }
                }
                Err(_) => {
                    if bot.iter().any(|&w| w != 0) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

impl PartialEq for ContextSet {
    fn eq(&self, other: &Self) -> bool {
        self.universe == other.universe && self.is_subset(other) && other.is_subset(self)
    }
}

impl Eq for ContextSet {}

impl fmt::Debug for ContextSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set()
            .entries(
                self.triples()
                    .into_iter()
                    .map(|(q, q2, k)| (q, q2, if k { '⊤' } else { '⊥' })),
            )
            .finish()
    }
}

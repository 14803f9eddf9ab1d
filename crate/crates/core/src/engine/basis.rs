//! Per-state antichains of annotated words and the one-step right
//! concatenation that grows them.

use std::collections::{BTreeSet, HashSet};
use std::time::Instant;

use crate::ba::{Buchi, State, Symbol, Word};
use crate::error::{Error, Result};

/// How an antichain treats a candidate whose key is equivalent to a stored one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tie {
    /// The stored word stays.
    KeepFirst,
    /// The candidate replaces a stored word of the same length (same round);
    /// shorter stored words stay.
    PreferLaterSameLength,
}

#[derive(Clone, Debug)]
pub struct Entry<K> {
    pub word: Word,
    pub key: K,
    round: usize,
}

impl<K> Entry<K> {
    /// Round of the fixpoint loop the word was inserted in.
    pub fn round(&self) -> usize {
        self.round
    }
}

/// A set of annotated words kept free of subsumed elements when pruning is on.
///
/// `leq(x, y)` means "`x` subsumes `y`" for the governing order: a candidate
/// subsumed by a stored word is rejected, and stored words subsumed by an
/// accepted candidate are dropped. Without pruning every new word is kept and
/// only identical words are merged.
#[derive(Clone, Debug)]
pub struct Antichain<K> {
    entries: Vec<Entry<K>>,
    words: Option<HashSet<Word>>,
}

impl<K> Antichain<K> {
    pub fn new(prune: bool) -> Self {
        Antichain {
            entries: Vec::new(),
            words: (!prune).then(HashSet::new),
        }
    }

    pub fn prunes(&self) -> bool {
        self.words.is_none()
    }

    pub fn entries(&self) -> &[Entry<K>] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Inserts `(word, key)`; returns whether the chain changed.
    pub fn insert(
        &mut self,
        word: Word,
        key: K,
        round: usize,
        tie: Tie,
        leq: &impl Fn(&K, &K) -> bool,
    ) -> bool {
        if let Some(words) = &mut self.words {
            if !words.insert(word.clone()) {
                return false;
            }
            self.entries.push(Entry { word, key, round });
            return true;
        }
        for e in &mut self.entries {
            if leq(&e.key, &key) {
                if tie == Tie::PreferLaterSameLength
                    && e.word.len() == word.len()
                    && leq(&key, &e.key)
                {
                    *e = Entry { word, key, round };
                    return true;
                }
                return false;
            }
        }
        self.entries.retain(|e| !leq(&key, &e.key));
        self.entries.push(Entry { word, key, round });
        true
    }

    /// Whether some word inserted before `round` subsumes `key`.
    pub fn covers_before(&self, key: &K, round: usize, leq: &impl Fn(&K, &K) -> bool) -> bool {
        self.entries
            .iter()
            .any(|e| e.round < round && leq(&e.key, key))
    }

    /// Whether some stored word subsumes `key`.
    pub fn covers(&self, key: &K, leq: &impl Fn(&K, &K) -> bool) -> bool {
        self.entries.iter().any(|e| leq(&e.key, key))
    }
}

/// One antichain per state of the left automaton.
#[derive(Clone, Debug)]
pub struct BasisVector<K> {
    comps: Vec<Antichain<K>>,
    round: usize,
    tie: Tie,
}

impl<K: Clone> BasisVector<K> {
    pub fn new(n_states: usize, prune: bool, tie: Tie) -> Self {
        BasisVector {
            comps: (0..n_states).map(|_| Antichain::new(prune)).collect(),
            round: 0,
            tie,
        }
    }

    /// Adds an initial word at state `p`.
    pub fn seed(&mut self, p: State, word: Word, key: K, leq: &impl Fn(&K, &K) -> bool) {
        let round = self.round;
        self.comps[p].insert(word, key, round, self.tie, leq);
    }

    pub fn component(&self, p: State) -> &[Entry<K>] {
        self.comps[p].entries()
    }

    pub fn components(&self) -> impl Iterator<Item = &Antichain<K>> {
        self.comps.iter()
    }

    /// Number of completed `Rcat` steps.
    pub fn rounds(&self) -> usize {
        self.round
    }

    pub fn max_len(&self) -> usize {
        self.comps.iter().map(Antichain::len).max().unwrap_or(0)
    }

    /// One application of `Rcat_A`: every word inserted in the previous round
    /// is extended along the transitions of `a`, keys derived from the
    /// parent's key. Returns `false` when every new word is subsumed by a
    /// word already present before the step, i.e. when the vector was already
    /// a basis of its own right concatenation.
    pub fn step(
        &mut self,
        a: &Buchi,
        extend: &impl Fn(&K, Symbol) -> K,
        leq: &impl Fn(&K, &K) -> bool,
        deadline: Option<Instant>,
    ) -> Result<bool> {
        let born = self.round;
        let round = born + 1;
        let frontier: Vec<(State, Word, K)> = self
            .comps
            .iter()
            .enumerate()
            .flat_map(|(p, chain)| {
                chain
                    .entries()
                    .iter()
                    .filter(|e| e.round == born)
                    .map(move |e| (p, e.word.clone(), e.key.clone()))
            })
            .collect();
        let mut changed = false;
        for (src, word, key) in frontier {
            if deadline.is_some_and(|d| Instant::now() >= d) {
                return Err(Error::Timeout);
            }
            for &(sym, dst) in a.edges(src) {
                let cand_key = extend(&key, sym);
                let chain = &mut self.comps[dst];
                if chain.prunes() {
                    changed |= chain.insert(word.appended(sym), cand_key, round, self.tie, leq);
                } else {
                    let novel = !chain.covers_before(&cand_key, round, leq);
                    changed |= chain.insert(word.appended(sym), cand_key, round, self.tie, leq) && novel;
                }
            }
        }
        self.round = round;
        Ok(changed)
    }

    /// Steps until the vector is a basis of its right concatenation.
    pub fn run(
        &mut self,
        a: &Buchi,
        extend: &impl Fn(&K, Symbol) -> K,
        leq: &impl Fn(&K, &K) -> bool,
        deadline: Option<Instant>,
    ) -> Result<()> {
        while self.step(a, extend, leq, deadline)? {}
        Ok(())
    }
}

/// `Rcat_A` on plain word sets.
pub fn rcat(a: &Buchi, sets: &[BTreeSet<Word>]) -> Vec<BTreeSet<Word>> {
    let mut out = sets.to_vec();
    for (src, words) in sets.iter().enumerate() {
        for w in words {
            for &(sym, dst) in a.edges(src) {
                out[dst].insert(w.appended(sym));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ba::StateSet;
    use crate::forq::{Forq, StructuralForq};
    use crate::testkit::fixtures::running_example;

    fn subset(x: &StateSet, y: &StateSet) -> bool {
        x.is_subset(y)
    }

    #[test]
    fn insert_into_empty_chain() {
        let mut chain = Antichain::new(true);
        assert!(chain.insert(Word::empty(), StateSet::empty(2), 0, Tie::KeepFirst, &subset));
        assert_eq!(chain.len(), 1);
    }

    #[test]
    fn equivalent_candidate_rejected_and_incomparable_kept() {
        let (_, b) = running_example();
        let f = StructuralForq::new(&b);
        let key = |s: &[usize]| f.stem_key(s);
        let mut chain = Antichain::new(true);
        assert!(chain.insert(vec![0].into(), key(&[0]), 0, Tie::KeepFirst, &subset));
        // ε and a are incomparable
        assert!(chain.insert(Word::empty(), key(&[]), 0, Tie::KeepFirst, &subset));
        // a ≤I b: b is rejected
        assert!(!chain.insert(vec![1].into(), key(&[1]), 0, Tie::KeepFirst, &subset));
        let words: Vec<_> = chain.entries().iter().map(|e| e.word.clone()).collect();
        assert_eq!(words, vec![Word::from(vec![0]), Word::empty()]);
    }

    #[test]
    fn strictly_smaller_candidate_evicts() {
        let mut chain = Antichain::new(true);
        chain.insert(vec![0, 0].into(), StateSet::from_states(3, [1, 2]), 0, Tie::KeepFirst, &subset);
        chain.insert(vec![1].into(), StateSet::from_states(3, [2]), 1, Tie::KeepFirst, &subset);
        assert_eq!(chain.len(), 1);
        assert_eq!(chain.entries()[0].word, Word::from(vec![1]));
    }

    #[test]
    fn later_same_length_tie_replaces() {
        let mut chain = Antichain::new(true);
        let k = StateSet::from_states(2, [1]);
        chain.insert(vec![0].into(), k.clone(), 0, Tie::PreferLaterSameLength, &subset);
        assert!(chain.insert(vec![1].into(), k.clone(), 0, Tie::PreferLaterSameLength, &subset));
        assert_eq!(chain.entries()[0].word, Word::from(vec![1]));
        // longer equivalent words never replace shorter ones
        assert!(!chain.insert(vec![1, 1].into(), k, 1, Tie::PreferLaterSameLength, &subset));
        assert_eq!(chain.entries()[0].word, Word::from(vec![1]));
    }

    #[test]
    fn no_prune_keeps_everything_but_duplicates() {
        let mut chain = Antichain::new(false);
        let k = StateSet::from_states(2, [1]);
        assert!(chain.insert(vec![0].into(), k.clone(), 0, Tie::KeepFirst, &subset));
        assert!(chain.insert(vec![1].into(), k.clone(), 0, Tie::KeepFirst, &subset));
        assert!(!chain.insert(vec![1].into(), k, 0, Tie::KeepFirst, &subset));
        assert_eq!(chain.len(), 2);
    }

    #[test]
    fn rcat_on_self_loops() {
        let (a, _) = running_example();
        let start = vec![BTreeSet::from([Word::empty()])];
        let next = rcat(&a, &start);
        let expected = BTreeSet::from([Word::empty(), vec![0].into(), vec![1].into()]);
        assert_eq!(next[0], expected);
        let empty = vec![BTreeSet::new()];
        assert_eq!(rcat(&a, &empty), empty);
    }
}

//! Büchi automata over an indexed alphabet.
//!
//! States and symbols are dense `usize` ids. Original state names are kept in
//! a side table so counterexamples and printed automata use them.

pub(crate) mod scc;
mod sets;
mod structure;

use std::collections::HashMap;
use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use crate::error::{Error, Result};

pub use scc::{sccs, Scc};
pub use sets::{ContextSet, StateSet};

pub type State = usize;
pub type Symbol = usize;

/// Ordered set of distinct symbol names; ids follow insertion order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<String>,
    index: HashMap<String, Symbol>,
}

impl Alphabet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_symbols<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut alphabet = Alphabet::new();
        for s in symbols {
            let s = s.into();
            if alphabet.id(&s).is_some() {
                return Err(Error::InvalidSymbol(s));
            }
            alphabet.intern(s)?;
        }
        Ok(alphabet)
    }

    /// Returns the id of `name`, adding it if absent.
    pub fn intern(&mut self, name: impl Into<String>) -> Result<Symbol> {
        let name = name.into();
        if name.is_empty() {
            return Err(Error::InvalidSymbol(name));
        }
        if let Some(&id) = self.index.get(&name) {
            return Ok(id);
        }
        let id = self.symbols.len();
        self.index.insert(name.clone(), id);
        self.symbols.push(name);
        Ok(id)
    }

    pub fn id(&self, name: &str) -> Option<Symbol> {
        self.index.get(name).copied()
    }

    pub fn name(&self, sym: Symbol) -> &str {
        &self.symbols[sym]
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> {
        0..self.symbols.len()
    }

    /// Parses a whitespace-separated list of symbol names.
    pub fn word(&self, text: &str) -> Result<Word> {
        text.split_whitespace()
            .map(|s| self.id(s).ok_or_else(|| Error::InvalidSymbol(s.to_string())))
            .collect::<Result<Vec<_>>>()
            .map(Word::from)
    }
}

/// A finite word of symbol ids.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// `self · a`
    pub fn appended(&self, a: Symbol) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.extend_from_slice(&self.0);
        v.push(a);
        Word(v)
    }

    pub fn concat(&self, other: &[Symbol]) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(other);
        Word(v)
    }

    pub fn repeat(&self, times: usize) -> Word {
        Word(self.0.repeat(times))
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> impl fmt::Display + 'a {
        struct Shown<'a>(&'a Word, &'a Alphabet);
        impl fmt::Display for Shown<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                for (i, &a) in self.0 .0.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    f.write_str(self.1.name(a))?;
                }
                Ok(())
            }
        }
        Shown(self, alphabet)
    }
}

impl Deref for Word {
    type Target = [Symbol];
    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

impl From<&[Symbol]> for Word {
    fn from(v: &[Symbol]) -> Self {
        Word(v.to_vec())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        for &a in &self.0 {
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

/// A Büchi automaton `(Q, q_I, Δ, F)` with a single initial state.
#[derive(Clone)]
pub struct Buchi {
    alphabet: Arc<Alphabet>,
    names: Vec<String>,
    initial: State,
    accepting: StateSet,
    // outgoing edges per state, sorted by (symbol, target), no duplicates
    out: Vec<Vec<(Symbol, State)>>,
    n_transitions: usize,
}

impl Buchi {
    /// Builds an automaton; `names` fixes the number of states.
    pub fn new(
        alphabet: Arc<Alphabet>,
        names: Vec<String>,
        initial: State,
        transitions: impl IntoIterator<Item = (State, Symbol, State)>,
        accepting: impl IntoIterator<Item = State>,
    ) -> Result<Self> {
        let n = names.len();
        if initial >= n {
            return Err(Error::Malformed(format!("initial state {initial} out of range")));
        }
        let mut out = vec![Vec::new(); n];
        for (src, sym, dst) in transitions {
            if src >= n || dst >= n {
                return Err(Error::Malformed(format!(
                    "transition ({src}, {sym}, {dst}) mentions an unknown state"
                )));
            }
            if sym >= alphabet.len() {
                return Err(Error::Malformed(format!("symbol id {sym} out of range")));
            }
            out[src].push((sym, dst));
        }
        let mut n_transitions = 0;
        for edges in &mut out {
            edges.sort_unstable();
            edges.dedup();
            n_transitions += edges.len();
        }
        let mut acc = StateSet::empty(n);
        for q in accepting {
            if q >= n {
                return Err(Error::Malformed(format!("accepting state {q} out of range")));
            }
            acc.insert(q);
        }
        Ok(Buchi {
            alphabet,
            names,
            initial,
            accepting: acc,
            out,
            n_transitions,
        })
    }

    /// Builds an automaton from several initial states. With more than one,
    /// a fresh non-accepting state inheriting the outgoing transitions of all
    /// initial states becomes the sole initial state.
    pub fn normalize_initials(
        alphabet: Arc<Alphabet>,
        mut names: Vec<String>,
        initials: &[State],
        transitions: impl IntoIterator<Item = (State, Symbol, State)>,
        accepting: impl IntoIterator<Item = State>,
    ) -> Result<Self> {
        let mut initials = initials.to_vec();
        initials.sort_unstable();
        initials.dedup();
        match initials.as_slice() {
            [] => Err(Error::Malformed("no initial state".into())),
            &[q] => Buchi::new(alphabet, names, q, transitions, accepting),
            _ => {
                let n = names.len();
                if let Some(&bad) = initials.iter().find(|&&q| q >= n) {
                    return Err(Error::Malformed(format!("initial state {bad} out of range")));
                }
                let fresh = n;
                names.push(fresh_name(&names, "init"));
                let mut delta: Vec<_> = transitions.into_iter().collect();
                let inherited: Vec<_> = delta
                    .iter()
                    .filter(|(src, _, _)| initials.binary_search(src).is_ok())
                    .map(|&(_, sym, dst)| (fresh, sym, dst))
                    .collect();
                delta.extend(inherited);
                Buchi::new(alphabet, names, fresh, delta, accepting)
            }
        }
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn n_states(&self) -> usize {
        self.names.len()
    }

    pub fn n_transitions(&self) -> usize {
        self.n_transitions
    }

    pub fn initial(&self) -> State {
        self.initial
    }

    pub fn accepting(&self) -> &StateSet {
        &self.accepting
    }

    #[inline]
    pub fn is_accepting(&self, q: State) -> bool {
        self.accepting.contains(q)
    }

    pub fn state_name(&self, q: State) -> &str {
        &self.names[q]
    }

    pub fn state_names(&self) -> &[String] {
        &self.names
    }

    /// Outgoing edges of `q` sorted by `(symbol, target)`.
    #[inline]
    pub fn edges(&self, q: State) -> &[(Symbol, State)] {
        &self.out[q]
    }

    /// Targets of `q` on `a`, ascending.
    #[inline]
    pub fn successors(&self, q: State, a: Symbol) -> impl Iterator<Item = State> + '_ {
        let edges = &self.out[q];
        let lo = edges.partition_point(|&(s, _)| s < a);
        let hi = edges.partition_point(|&(s, _)| s <= a);
        edges[lo..hi].iter().map(|&(_, d)| d)
    }

    /// All transitions in ascending `(src, symbol, dst)` order.
    pub fn transitions(&self) -> impl Iterator<Item = (State, Symbol, State)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(src, edges)| edges.iter().map(move |&(a, dst)| (src, a, dst)))
    }

    /// Same automaton with a different accepting set.
    pub fn with_accepting(&self, accepting: StateSet) -> Buchi {
        assert_eq!(accepting.universe(), self.n_states());
        Buchi {
            accepting,
            ..self.clone()
        }
    }

    /// States reachable from the initial state.
    pub fn reachable(&self) -> StateSet {
        let mut seen = StateSet::singleton(self.n_states(), self.initial);
        let mut stack = vec![self.initial];
        while let Some(q) = stack.pop() {
            for &(_, d) in &self.out[q] {
                if seen.insert(d) {
                    stack.push(d);
                }
            }
        }
        seen
    }

    /// Drops from `F` every state that is unreachable or lies in a trivial
    /// SCC; such states occur at most once on any run.
    pub fn reduce_final_states(&self) -> Buchi {
        let mut keep = StateSet::empty(self.n_states());
        for scc in sccs(self) {
            if scc.nontrivial {
                for &q in &scc.states {
                    if self.is_accepting(q) {
                        keep.insert(q);
                    }
                }
            }
        }
        self.with_accepting(keep)
    }

    /// Automaton accepting `L(self) ∪ L(other)`.
    pub fn union(&self, other: &Buchi) -> Result<Buchi> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let shift = self.n_states();
        let names = self
            .names
            .iter()
            .map(|s| format!("l.{s}"))
            .chain(other.names.iter().map(|s| format!("r.{s}")))
            .collect();
        let delta = self
            .transitions()
            .chain(other.transitions().map(|(s, a, d)| (s + shift, a, d + shift)));
        let acc = self
            .accepting
            .iter()
            .chain(other.accepting.iter().map(|q| q + shift));
        Buchi::normalize_initials(
            Arc::clone(&self.alphabet),
            names,
            &[self.initial, other.initial + shift],
            delta,
            acc,
        )
    }
}

impl fmt::Debug for Buchi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Buchi")
            .field("n_states", &self.n_states())
            .field("initial", &self.initial)
            .field("accepting", &self.accepting)
            .field("transitions", &self.transitions().collect::<Vec<_>>())
            .finish()
    }
}

fn fresh_name(names: &[String], base: &str) -> String {
    let mut candidate = base.to_string();
    while names.contains(&candidate) {
        candidate.push('\'');
    }
    candidate
}

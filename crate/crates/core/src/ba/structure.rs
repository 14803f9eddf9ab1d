//! Target sets `Tgt(u)` and context sets `Cxt(X, v)`, computed one letter at
//! a time.

use std::sync::Arc;

use super::{Buchi, ContextSet, State, StateSet, Symbol};
use crate::error::{Error, Result};

impl Buchi {
    /// `Tgt(ε) = {q_I}`
    pub fn tgt_initial(&self) -> StateSet {
        StateSet::singleton(self.n_states(), self.initial())
    }

    /// `Tgt(ua)` from `Tgt(u)`: the `a`-successors of `x`.
    pub fn tgt_extend(&self, x: &StateSet, a: Symbol) -> StateSet {
        let mut out = StateSet::empty(self.n_states());
        for q in x.iter() {
            for d in self.successors(q, a) {
                out.insert(d);
            }
        }
        out
    }

    pub fn tgt_of_word(&self, u: &[Symbol]) -> StateSet {
        self.tgt_from(&self.tgt_initial(), u)
    }

    /// States reached from `x` by reading `u`.
    pub fn tgt_from(&self, x: &StateSet, u: &[Symbol]) -> StateSet {
        u.iter().fold(x.clone(), |acc, &a| self.tgt_extend(&acc, a))
    }

    /// `Cxt(X, ε)`: every `q ∈ X` reaches itself, visiting an accepting state
    /// iff `q` is accepting.
    pub fn cxt_identity(&self, x: &StateSet) -> ContextSet {
        let sources: Arc<[State]> = x.iter().collect();
        let mut out = ContextSet::empty(self.n_states(), Arc::clone(&sources));
        for &q in sources.iter() {
            out.insert(q, q, self.is_accepting(q));
        }
        out
    }

    /// `Cxt(X, a)`: a single step visits an accepting state iff one of its
    /// endpoints is accepting.
    pub fn cxt_unit(&self, x: &StateSet, a: Symbol) -> ContextSet {
        let sources: Arc<[State]> = x.iter().collect();
        self.cxt_unit_with(sources, a)
    }

    pub(crate) fn cxt_unit_with(&self, sources: Arc<[State]>, a: Symbol) -> ContextSet {
        let mut out = ContextSet::empty(self.n_states(), Arc::clone(&sources));
        for (idx, &q) in sources.iter().enumerate() {
            let src_acc = self.is_accepting(q);
            for d in self.successors(q, a) {
                let (w, b) = (d / 64, d % 64);
                out.row_mut(idx, false)[w] |= 1 << b;
                if src_acc || self.is_accepting(d) {
                    out.row_mut(idx, true)[w] |= 1 << b;
                }
            }
        }
        out
    }

    /// `Cxt(X, va)` from `Cxt(X, v)`.
    pub fn cxt_extend(&self, c: &ContextSet, a: Symbol) -> ContextSet {
        let mut out = ContextSet::empty(self.n_states(), Arc::clone(c.sources()));
        for idx in 0..c.sources().len() {
            let bot = c.row(idx, false);
            let top = c.row(idx, true);
            for (wi, &word) in bot.iter().enumerate() {
                let mut rest = word;
                while rest != 0 {
                    let bit = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    let mid = wi * 64 + bit;
                    let carried = top[wi] & (1 << bit) != 0 || self.is_accepting(mid);
                    for d in self.successors(mid, a) {
                        let (w, b) = (d / 64, d % 64);
                        out.row_mut(idx, false)[w] |= 1 << b;
                        if carried || self.is_accepting(d) {
                            out.row_mut(idx, true)[w] |= 1 << b;
                        }
                    }
                }
            }
        }
        out
    }

    /// `Cxt(X, v)` for a non-empty `v`.
    pub fn cxt_of_word(&self, x: &StateSet, v: &[Symbol]) -> Result<ContextSet> {
        let (&first, rest) = v.split_first().ok_or(Error::EmptyPeriod)?;
        let unit = self.cxt_unit(x, first);
        Ok(rest.iter().fold(unit, |acc, &a| self.cxt_extend(&acc, a)))
    }
}

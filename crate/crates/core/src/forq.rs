//! Families of right quasiorders.
//!
//! A FORQ pairs a right-monotonic quasiorder on stems with one quasiorder on
//! periods per stem. The inclusion engine only ever touches words through
//! precomputed keys: the [`Forq`] trait exposes how keys are created, extended
//! one letter at a time, and compared.
//!
//! [`StructuralForq`] is the family induced by a Büchi automaton `B`: a stem
//! `u` is keyed by `Tgt_B(u)` and a period `v` relative to an anchor stem `w`
//! by `Cxt_B(Tgt_B(w), v)`, both compared by set inclusion.

use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use crate::ba::{Buchi, ContextSet, State, StateSet, Symbol, Word};
use crate::error::{Error, Result};

pub trait Forq {
    type StemKey: Clone + Eq + Hash + fmt::Debug;
    /// Stem key prepared for seeding period keys.
    type Anchor: Clone;
    type PeriodKey: Clone + fmt::Debug;

    /// Key of the empty stem.
    fn empty_stem(&self) -> Self::StemKey;
    fn extend_stem(&self, key: &Self::StemKey, a: Symbol) -> Self::StemKey;
    fn stem_leq(&self, x: &Self::StemKey, y: &Self::StemKey) -> bool;

    fn stem_geq(&self, x: &Self::StemKey, y: &Self::StemKey) -> bool {
        self.stem_leq(y, x)
    }

    fn stem_key(&self, u: &[Symbol]) -> Self::StemKey {
        u.iter()
            .fold(self.empty_stem(), |k, &a| self.extend_stem(&k, a))
    }

    fn anchor(&self, stem: &Self::StemKey) -> Self::Anchor;
    /// Key of the one-letter period `a`.
    fn unit_period(&self, anchor: &Self::Anchor, a: Symbol) -> Self::PeriodKey;
    fn extend_period(&self, key: &Self::PeriodKey, a: Symbol) -> Self::PeriodKey;
    /// Fails when the keys were built relative to different anchors.
    fn period_leq(&self, x: &Self::PeriodKey, y: &Self::PeriodKey) -> Result<bool>;

    fn period_key(&self, anchor: &Self::Anchor, v: &[Symbol]) -> Result<Self::PeriodKey> {
        let (&first, rest) = v.split_first().ok_or(Error::EmptyPeriod)?;
        Ok(rest
            .iter()
            .fold(self.unit_period(anchor, first), |k, &a| self.extend_period(&k, a)))
    }
}

/// A word stored with its key.
#[derive(Clone, Debug)]
pub struct Annotated<K> {
    pub word: Word,
    pub key: K,
}

pub type AnnotatedStem = Annotated<StateSet>;
pub type AnnotatedPeriod = Annotated<PeriodKey>;

/// `Cxt_B(Tgt_B(w), v)` together with the anchor `Tgt_B(w)` it is relative to.
#[derive(Clone)]
pub struct PeriodKey {
    anchor: Arc<StateSet>,
    contexts: ContextSet,
}

impl PeriodKey {
    pub fn anchor(&self) -> &StateSet {
        &self.anchor
    }

    pub fn contexts(&self) -> &ContextSet {
        &self.contexts
    }
}

impl fmt::Debug for PeriodKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}@{:?}", self.contexts, self.anchor)
    }
}

#[derive(Clone)]
pub struct StructuralAnchor {
    set: Arc<StateSet>,
    sources: Arc<[State]>,
}

/// The structural FORQ of an automaton.
#[derive(Clone, Copy)]
pub struct StructuralForq<'a> {
    b: &'a Buchi,
}

impl<'a> StructuralForq<'a> {
    pub fn new(b: &'a Buchi) -> Self {
        StructuralForq { b }
    }

    pub fn automaton(&self) -> &'a Buchi {
        self.b
    }

    /// One instance of `u ≤I u' ⇒ ≤F_u' ⊆ ≤F_u`, evaluated on `(v, v')`.
    pub fn check_forq_constraint(
        &self,
        u: &[Symbol],
        u2: &[Symbol],
        v: &[Symbol],
        v2: &[Symbol],
    ) -> Result<bool> {
        let (t, t2) = (self.stem_key(u), self.stem_key(u2));
        let (small, large) = (self.anchor(&t), self.anchor(&t2));
        if !self.stem_leq(&t, &t2) {
            return Ok(true);
        }
        if !self.period_leq(&self.period_key(&large, v)?, &self.period_key(&large, v2)?)? {
            return Ok(true);
        }
        self.period_leq(&self.period_key(&small, v)?, &self.period_key(&small, v2)?)
    }

    /// One instance of `v ≤F_u v' ⇒ uv ≤I uv'`.
    pub fn check_picky(&self, u: &[Symbol], v: &[Symbol], v2: &[Symbol]) -> Result<bool> {
        let t = self.stem_key(u);
        let anchor = self.anchor(&t);
        if !self.period_leq(&self.period_key(&anchor, v)?, &self.period_key(&anchor, v2)?)? {
            return Ok(true);
        }
        let uv = self.b.tgt_from(&t, v);
        let uv2 = self.b.tgt_from(&t, v2);
        Ok(self.stem_leq(&uv, &uv2))
    }
}

impl Forq for StructuralForq<'_> {
    type StemKey = StateSet;
    type Anchor = StructuralAnchor;
    type PeriodKey = PeriodKey;

    fn empty_stem(&self) -> StateSet {
        self.b.tgt_initial()
    }

    fn extend_stem(&self, key: &StateSet, a: Symbol) -> StateSet {
        self.b.tgt_extend(key, a)
    }

    #[inline]
    fn stem_leq(&self, x: &StateSet, y: &StateSet) -> bool {
        x.is_subset(y)
    }

    fn anchor(&self, stem: &StateSet) -> StructuralAnchor {
        StructuralAnchor {
            set: Arc::new(stem.clone()),
            sources: stem.iter().collect(),
        }
    }

    fn unit_period(&self, anchor: &StructuralAnchor, a: Symbol) -> PeriodKey {
        PeriodKey {
            anchor: Arc::clone(&anchor.set),
            contexts: self.b.cxt_unit_with(Arc::clone(&anchor.sources), a),
        }
    }

    fn extend_period(&self, key: &PeriodKey, a: Symbol) -> PeriodKey {
        PeriodKey {
            anchor: Arc::clone(&key.anchor),
            contexts: self.b.cxt_extend(&key.contexts, a),
        }
    }

    #[inline]
    fn period_leq(&self, x: &PeriodKey, y: &PeriodKey) -> Result<bool> {
        if !Arc::ptr_eq(&x.anchor, &y.anchor) && x.anchor != y.anchor {
            return Err(Error::AnchorMismatch);
        }
        Ok(x.contexts.is_subset(&y.contexts))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testkit::fixtures::running_example;

    fn w(s: &str) -> Vec<Symbol> {
        s.bytes().map(|c| (c - b'a') as Symbol).collect()
    }

    #[test]
    fn stem_comparisons_on_running_example() {
        let (_, b) = running_example();
        let f = StructuralForq::new(&b);
        let (eps, a, aa) = (f.stem_key(&w("")), f.stem_key(&w("a")), f.stem_key(&w("aa")));
        assert!(f.stem_leq(&a, &aa));
        assert!(!f.stem_leq(&eps, &a) && !f.stem_leq(&a, &eps));
        assert!(f.stem_geq(&aa, &a));
        assert!(!f.stem_geq(&eps, &aa) && !f.stem_geq(&aa, &eps));
        assert!(f.stem_leq(&aa, &aa) && f.stem_geq(&aa, &aa));
    }

    #[test]
    fn period_comparisons_on_running_example() {
        let (_, b) = running_example();
        let f = StructuralForq::new(&b);
        let big = f.anchor(&f.stem_key(&w("aa")));
        let (pa, pb) = (f.period_key(&big, &w("a")).unwrap(), f.period_key(&big, &w("b")).unwrap());
        assert!(f.period_leq(&pa, &pb).unwrap());
        assert!(!f.period_leq(&pb, &pa).unwrap());
        assert!(f.period_leq(&pb, &pb).unwrap());

        let eps = f.anchor(&f.stem_key(&w("")));
        let (ea, eb) = (f.period_key(&eps, &w("a")).unwrap(), f.period_key(&eps, &w("b")).unwrap());
        assert!(f.period_leq(&ea, &eb).unwrap() && f.period_leq(&eb, &ea).unwrap());
    }

    #[test]
    fn cross_anchor_comparison_fails() {
        let (_, b) = running_example();
        let f = StructuralForq::new(&b);
        let x = f.period_key(&f.anchor(&f.stem_key(&w(""))), &w("a")).unwrap();
        let y = f.period_key(&f.anchor(&f.stem_key(&w("aa"))), &w("a")).unwrap();
        assert_eq!(f.period_leq(&x, &y).unwrap_err(), Error::AnchorMismatch);
    }

    #[test]
    fn constraint_instances_on_running_example() {
        let (_, b) = running_example();
        let f = StructuralForq::new(&b);
        // a ≤I aa and a ≤F_aa b, so a ≤F_a b must hold too
        assert!(f.check_forq_constraint(&w("a"), &w("aa"), &w("a"), &w("b")).unwrap());
        assert!(f.check_forq_constraint(&w("ab"), &w("ab"), &w("b"), &w("a")).unwrap());
        assert!(f.check_picky(&w("aa"), &w("a"), &w("b")).unwrap());
        assert!(f.check_picky(&w("b"), &w("ba"), &w("ba")).unwrap());
        assert_eq!(
            f.check_picky(&w("a"), &w(""), &w("a")).unwrap_err(),
            Error::EmptyPeriod
        );
    }
}

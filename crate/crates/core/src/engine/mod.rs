//! Antichain-based language inclusion `L(A) ⊆ L(B)`.
//!
//! The engine builds finite bases of the stems reaching each accepting state
//! `s` of `A` (one basis per direction of the stem order) and, for every
//! anchor `w`, a basis of the periods looping on `s`. Inclusion holds iff
//! every lasso `u(v)^ω` from those bases is accepted by `B`; the first lasso
//! that `B` rejects is returned as a counterexample.

mod basis;

use std::collections::{HashMap, HashSet};
use std::rc::Rc;
use std::time::{Duration, Instant};

use crate::ba::{Buchi, State, Word};
use crate::error::{Error, Result};
use crate::forq::{Forq, StructuralForq};
use crate::membership::member;

pub use basis::{rcat, Antichain, BasisVector, Entry, Tie};

#[derive(Clone, Copy, Debug)]
pub struct EngineOptions {
    /// Keep only minimal (resp. maximal) words in each basis. Off, every
    /// generated word is kept and fixpoints are detected by subsumption.
    pub prune: bool,
    /// Skip periods `v` for which `wv` is not below `w`.
    pub picky: bool,
    pub collect_stats: bool,
    /// Query the periods found at `s` after every fixpoint round instead of
    /// waiting for the period basis to stabilize. Any such period yields a
    /// genuine lasso of `A`, so counterexamples stay sound; once the basis is
    /// complete every element of it has been queried.
    pub eager_queries: bool,
    /// Remove accepting states of `A` that can occur at most once on a run.
    pub reduce_accepting: bool,
    pub deadline: Option<Instant>,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions {
            prune: true,
            picky: false,
            collect_stats: true,
            eager_queries: true,
            reduce_accepting: true,
            deadline: None,
        }
    }
}

impl EngineOptions {
    pub fn with_timeout(mut self, timeout: Duration) -> Self {
        self.deadline = Some(Instant::now() + timeout);
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Included,
    NotIncluded,
}

/// The ultimately periodic word `stem (period)^ω`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lasso {
    pub stem: Word,
    pub period: Word,
}

impl Lasso {
    pub fn new(stem: impl Into<Word>, period: impl Into<Word>) -> Self {
        Lasso {
            stem: stem.into(),
            period: period.into(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    pub membership_queries: usize,
    /// `Rcat` steps over all fixpoint computations.
    pub rounds: usize,
    /// Largest component of the two stem bases.
    pub stem_basis_max: usize,
    /// Largest component over all period bases.
    pub period_basis_max: usize,
    /// Period bases actually computed.
    pub period_fixpoints: usize,
    /// Anchors served from the per-state cache.
    pub anchor_cache_hits: usize,
    pub elapsed: Duration,
}

#[derive(Clone, Debug)]
pub struct InclusionResult {
    pub verdict: Verdict,
    pub witness: Option<Lasso>,
    pub stats: Stats,
}

/// Minimal and maximal stem bases, `U` and `W`.
pub struct StemBases<K> {
    pub lower: BasisVector<K>,
    pub upper: BasisVector<K>,
}

/// Fixpoint of the stem bases for the left automaton `a`.
pub fn compute_stem_bases<F: Forq>(
    a: &Buchi,
    forq: &F,
    opts: &EngineOptions,
) -> Result<StemBases<F::StemKey>> {
    let leq = |x: &F::StemKey, y: &F::StemKey| forq.stem_leq(x, y);
    let geq = |x: &F::StemKey, y: &F::StemKey| forq.stem_leq(y, x);
    let extend = |k: &F::StemKey, sym| forq.extend_stem(k, sym);
    let n = a.n_states();

    let mut lower = BasisVector::new(n, opts.prune, Tie::KeepFirst);
    lower.seed(a.initial(), Word::empty(), forq.empty_stem(), &leq);
    lower.run(a, &extend, &leq, opts.deadline)?;

    let mut upper = BasisVector::new(n, opts.prune, Tie::KeepFirst);
    upper.seed(a.initial(), Word::empty(), forq.empty_stem(), &geq);
    upper.run(a, &extend, &geq, opts.deadline)?;

    Ok(StemBases { lower, upper })
}

/// Basis of the periods from `s` back to itself, keyed relative to `anchor`.
/// Component `p` holds periods from `s` to `p`.
pub fn compute_period_basis<F: Forq>(
    a: &Buchi,
    forq: &F,
    s: State,
    anchor: &F::Anchor,
    opts: &EngineOptions,
) -> Result<BasisVector<F::PeriodKey>> {
    let basis = period_basis_observed(a, forq, s, anchor, opts, |_| true)?;
    Ok(basis.expect("observer never stops"))
}

/// Like [`compute_period_basis`], handing the words inserted at `s` in each
/// round to `observe`; returns `None` as soon as `observe` returns `false`.
fn period_basis_observed<F: Forq>(
    a: &Buchi,
    forq: &F,
    s: State,
    anchor: &F::Anchor,
    opts: &EngineOptions,
    mut observe: impl FnMut(&[&Entry<F::PeriodKey>]) -> bool,
) -> Result<Option<BasisVector<F::PeriodKey>>> {
    let leq = |x: &F::PeriodKey, y: &F::PeriodKey| {
        forq.period_leq(x, y).expect("periods of one basis share an anchor")
    };
    let extend = |k: &F::PeriodKey, sym| forq.extend_period(k, sym);
    let mut basis = BasisVector::new(a.n_states(), opts.prune, Tie::PreferLaterSameLength);
    for &(sym, p) in a.edges(s) {
        basis.seed(p, Word::from(vec![sym]), forq.unit_period(anchor, sym), &leq);
    }
    loop {
        let round = basis.rounds();
        let fresh: Vec<_> = basis.component(s).iter().filter(|e| e.round() == round).collect();
        if !fresh.is_empty() && !observe(&fresh) {
            return Ok(None);
        }
        if !basis.step(a, &extend, &leq, opts.deadline)? {
            return Ok(Some(basis));
        }
    }
}

/// Walks the test set in order, handing each lasso to `visit`; stops early
/// when `visit` returns `false`.
struct Walk<'f, F: Forq> {
    forq: &'f F,
    opts: EngineOptions,
    stats: Stats,
}

type Visit<'v> = dyn FnMut(&Word, &Word, &mut Stats) -> bool + 'v;

impl<'f, F: Forq> Walk<'f, F> {
    fn new(forq: &'f F, opts: &EngineOptions) -> Self {
        Walk {
            forq,
            opts: *opts,
            stats: Stats::default(),
        }
    }

    /// Offers `(u, v)` for every `u` in `lower` below `w`; `false` means stop.
    fn offer(
        &mut self,
        w: &Entry<F::StemKey>,
        v: &Word,
        lower: &[Entry<F::StemKey>],
        visit: &mut Visit<'_>,
    ) -> Result<bool> {
        if self.opts.deadline.is_some_and(|d| Instant::now() >= d) {
            return Err(Error::Timeout);
        }
        let forq = self.forq;
        if self.opts.picky {
            let wv = v.iter().fold(w.key.clone(), |k, &sym| forq.extend_stem(&k, sym));
            if !forq.stem_leq(&wv, &w.key) {
                return Ok(true);
            }
        }
        for u in lower {
            if forq.stem_leq(&u.key, &w.key) && !visit(&u.word, v, &mut self.stats) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn run(&mut self, a: &Buchi, visit: &mut Visit<'_>) -> Result<()> {
        if a.accepting().is_empty() {
            return Ok(());
        }
        let forq = self.forq;
        let bases = compute_stem_bases(a, forq, &self.opts)?;
        self.stats.rounds += bases.lower.rounds() + bases.upper.rounds();
        if self.opts.collect_stats {
            self.stats.stem_basis_max = bases.lower.max_len().max(bases.upper.max_len());
        }

        for s in a.accepting().iter() {
            let lower = bases.lower.component(s);
            let mut cache: HashMap<F::StemKey, Rc<BasisVector<F::PeriodKey>>> = HashMap::new();
            for w in bases.upper.component(s) {
                if let Some(p) = cache.get(&w.key) {
                    self.stats.anchor_cache_hits += 1;
                    let p = Rc::clone(p);
                    for v in p.component(s) {
                        if !self.offer(w, &v.word, lower, visit)? {
                            return Ok(());
                        }
                    }
                    continue;
                }
                let anchor = forq.anchor(&w.key);
                let eager = self.opts.eager_queries;
                let mut outcome = Ok(true);
                let opts = self.opts;
                let basis = period_basis_observed(a, forq, s, &anchor, &opts, |fresh| {
                    if !eager {
                        return true;
                    }
                    for v in fresh {
                        outcome = self.offer(w, &v.word, lower, visit);
                        if !matches!(outcome, Ok(true)) {
                            return false;
                        }
                    }
                    true
                })?;
                if !outcome? {
                    return Ok(());
                }
                let p = Rc::new(basis.expect("observer only stops on a verdict"));
                self.stats.period_fixpoints += 1;
                self.stats.rounds += p.rounds();
                if self.opts.collect_stats {
                    self.stats.period_basis_max = self.stats.period_basis_max.max(p.max_len());
                }
                if !eager {
                    for v in p.component(s) {
                        if !self.offer(w, &v.word, lower, visit)? {
                            return Ok(());
                        }
                    }
                }
                cache.insert(w.key.clone(), p);
            }
        }
        Ok(())
    }
}

/// Decides `L(a) ⊆ L(B)` for the language `B` behind `forq`, where `member`
/// answers whether `B` accepts `u(v)^ω`.
///
/// `a` is used as given; accepting-state reduction is the caller's business.
pub fn decide_with<F: Forq>(
    a: &Buchi,
    forq: &F,
    mut member: impl FnMut(&Word, &Word) -> bool,
    opts: &EngineOptions,
) -> Result<InclusionResult> {
    let start = Instant::now();
    let mut walk = Walk::new(forq, opts);
    let mut asked: HashSet<(Word, Word)> = HashSet::new();
    let mut witness = None;
    walk.run(a, &mut |u, v, stats| {
        if asked.contains(&(u.clone(), v.clone())) {
            return true;
        }
        stats.membership_queries += 1;
        if member(u, v) {
            asked.insert((u.clone(), v.clone()));
            true
        } else {
            witness = Some(Lasso::new(u.clone(), v.clone()));
            false
        }
    })?;
    let mut stats = walk.stats;
    stats.elapsed = start.elapsed();
    Ok(InclusionResult {
        verdict: if witness.is_some() {
            Verdict::NotIncluded
        } else {
            Verdict::Included
        },
        witness,
        stats,
    })
}

fn prepare(a: &Buchi, b: &Buchi, opts: &EngineOptions) -> Result<Buchi> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    Ok(if opts.reduce_accepting {
        a.reduce_final_states()
    } else {
        a.clone()
    })
}

/// Decides `L(a) ⊆ L(b)` using the FORQ induced by `b`.
///
/// A returned counterexample is checked to lie in `L(a) \ L(b)`.
pub fn decide_inclusion(a: &Buchi, b: &Buchi, opts: &EngineOptions) -> Result<InclusionResult> {
    let a2 = prepare(a, b, opts)?;
    let forq = StructuralForq::new(b);
    let result = decide_with(
        &a2,
        &forq,
        |u, v| member(b, u, v).expect("periods are non-empty"),
        opts,
    )?;
    if let Some(w) = &result.witness {
        assert!(
            member(a, &w.stem, &w.period)? && !member(b, &w.stem, &w.period)?,
            "counterexample {w:?} is not in L(A) \\ L(B)"
        );
    }
    Ok(result)
}

/// The lassos built from the stable bases, in the order the engine queries
/// them when `eager_queries` is off, without duplicates.
pub fn enumerate_test_set(a: &Buchi, b: &Buchi, opts: &EngineOptions) -> Result<Vec<Lasso>> {
    let a2 = prepare(a, b, opts)?;
    let forq = StructuralForq::new(b);
    let opts = EngineOptions {
        eager_queries: false,
        ..*opts
    };
    let mut walk = Walk::new(&forq, &opts);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    walk.run(&a2, &mut |u, v, _| {
        let l = Lasso::new(u.clone(), v.clone());
        if seen.insert(l.clone()) {
            out.push(l);
        }
        true
    })?;
    Ok(out)
}

/// The lassos obtained by anchoring periods at the minimal stems `u` instead
/// of the maximal ones. This set is generally not complete for inclusion.
pub fn enumerate_wrong_test_set(a: &Buchi, b: &Buchi, opts: &EngineOptions) -> Result<Vec<Lasso>> {
    let a2 = prepare(a, b, opts)?;
    let forq = StructuralForq::new(b);
    let mut out = Vec::new();
    if a2.accepting().is_empty() {
        return Ok(out);
    }
    let bases = compute_stem_bases(&a2, &forq, opts)?;
    let mut seen = HashSet::new();
    for s in a2.accepting().iter() {
        for u in bases.lower.component(s) {
            let anchor = forq.anchor(&u.key);
            let periods = compute_period_basis(&a2, &forq, s, &anchor, opts)?;
            for v in periods.component(s) {
                let l = Lasso::new(u.word.clone(), v.word.clone());
                if seen.insert(l.clone()) {
                    out.push(l);
                }
            }
        }
    }
    Ok(out)
}

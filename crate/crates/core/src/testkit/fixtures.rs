//! The two-automaton running example over `{a, b}`.
//!
//! `A` has one accepting state with `a`/`b` self-loops, so `L(A) = Σ^ω`.
//! `B` moves from `qI` to `q1` on any letter, loops on `q1`, may jump to the
//! accepting `q2` on any letter and then only reads `b`: `L(B) = Σ⁺Σ*b^ω`.
//! Inclusion fails with `a^ω` as the counterexample.

use std::sync::Arc;

use crate::ba::{Alphabet, Buchi, State};

pub const QI: State = 0;
pub const Q1: State = 1;
pub const Q2: State = 2;

pub const RUNNING_EXAMPLE_A: &str = "\
pI
a,pI->pI
b,pI->pI
pI
";

pub const RUNNING_EXAMPLE_B: &str = "\
qI
a,qI->q1
b,qI->q1
a,q1->q1
b,q1->q1
a,q1->q2
b,q1->q2
b,q2->q2
q2
";

/// `(A, B)` over the alphabet `[a, b]`.
pub fn running_example() -> (Buchi, Buchi) {
    let alphabet = Arc::new(Alphabet::from_symbols(["a", "b"]).expect("distinct symbols"));
    let (a, b) = (0, 1);
    let left = Buchi::new(
        Arc::clone(&alphabet),
        vec!["pI".into()],
        0,
        [(0, a, 0), (0, b, 0)],
        [0],
    )
    .expect("valid automaton");
    let right = Buchi::new(
        alphabet,
        vec!["qI".into(), "q1".into(), "q2".into()],
        QI,
        [
            (QI, a, Q1),
            (QI, b, Q1),
            (Q1, a, Q1),
            (Q1, b, Q1),
            (Q1, a, Q2),
            (Q1, b, Q2),
            (Q2, b, Q2),
        ],
        [Q2],
    )
    .expect("valid automaton");
    (left, right)
}

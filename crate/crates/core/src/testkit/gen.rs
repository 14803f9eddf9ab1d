//! Seeded random automata in the Tabakov–Vardi style.

use std::sync::Arc;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::ba::{Alphabet, Buchi};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GenParams {
    pub n_states: usize,
    pub alphabet_size: usize,
    /// Expected transitions per state and symbol, in `[0, 2]`.
    pub transition_density: f64,
    /// Fraction of accepting states, in `(0, 1]`.
    pub acceptance_density: f64,
    pub seed: u64,
}

impl GenParams {
    pub fn new(n_states: usize, alphabet_size: usize, seed: u64) -> Self {
        GenParams {
            n_states,
            alphabet_size,
            transition_density: 1.5,
            acceptance_density: 0.3,
            seed,
        }
    }

    pub fn densities(mut self, transition: f64, acceptance: f64) -> Self {
        self.transition_density = transition;
        self.acceptance_density = acceptance;
        self
    }
}

/// Symbols `a`, `b`, … (or `s0`, `s1`, … past 26 letters).
pub fn alphabet(size: usize) -> Alphabet {
    let names: Vec<String> = if size <= 26 {
        (0..size).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
    } else {
        (0..size).map(|i| format!("s{i}")).collect()
    };
    Alphabet::from_symbols(names).expect("distinct names")
}

/// For every symbol, `round(density · n)` distinct transitions chosen
/// uniformly; `round(acceptance · n)` accepting states (at least one); state 0
/// is initial.
pub fn generate(p: &GenParams) -> Buchi {
    assert!(p.n_states >= 1 && p.alphabet_size >= 1);
    assert!((0.0..=2.0).contains(&p.transition_density));
    assert!(p.acceptance_density > 0.0 && p.acceptance_density <= 1.0);
    let n = p.n_states;
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let per_symbol = ((p.transition_density * n as f64).round() as usize).min(n * n);
    let mut delta = Vec::new();
    for sym in 0..p.alphabet_size {
        for pair in sample(&mut rng, n * n, per_symbol) {
            delta.push((pair / n, sym, pair % n));
        }
    }
    let n_acc = ((p.acceptance_density * n as f64).round() as usize).clamp(1, n);
    let accepting = sample(&mut rng, n, n_acc).into_vec();
    let names = (0..n).map(|i| format!("s{i}")).collect();
    Buchi::new(Arc::new(alphabet(p.alphabet_size)), names, 0, delta, accepting)
        .expect("generated automaton is well-formed")
}

/// Pair `i` of the desk-scale random suite: `n_A, n_B ∈ 1..=4`, two symbols,
/// transition density 1.0, acceptance density 0.5.
pub fn suite_pair(i: u64) -> (Buchi, Buchi) {
    let n_a = 1 + (i % 4) as usize;
    let n_b = 1 + ((i / 4) % 4) as usize;
    let a = generate(&GenParams::new(n_a, 2, 2 * i).densities(1.0, 0.5));
    let b = generate(&GenParams::new(n_b, 2, 2 * i + 1).densities(1.0, 0.5));
    (a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_in_seed() {
        let p = GenParams::new(6, 3, 42);
        let (x, y) = (generate(&p), generate(&p));
        assert_eq!(x.transitions().collect::<Vec<_>>(), y.transitions().collect::<Vec<_>>());
        assert_eq!(x.accepting(), y.accepting());
    }

    #[test]
    fn full_acceptance_density() {
        let b = generate(&GenParams::new(7, 2, 1).densities(1.0, 1.0));
        assert_eq!(b.accepting().len(), 7);
    }

    #[test]
    fn single_state_self_loop() {
        let b = generate(&GenParams::new(1, 1, 9).densities(1.0, 1.0));
        assert_eq!(b.n_states(), 1);
        assert_eq!(b.transitions().collect::<Vec<_>>(), vec![(0, 0, 0)]);
        assert!(b.is_accepting(0));
    }

    #[test]
    fn transition_count_follows_density() {
        let b = generate(&GenParams::new(10, 2, 5).densities(1.5, 0.3));
        assert_eq!(b.n_transitions(), 30);
        assert_eq!(b.accepting().len(), 3);
        assert_eq!(b.initial(), 0);
    }
}

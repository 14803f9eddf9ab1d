//! Ground truth for tiny automata, sharing nothing with the inclusion engine.
//!
//! `L(A) ⊆ L(B)` is decided as emptiness of `A × ¬B`, where `¬B` is the
//! level-ranking complement: a state is a ranking `f` of the states `B` can
//! currently be in (ranks `0..=2n`, accepting states even) together with the
//! set `O` of even-ranked states still owing a visit to an odd rank. Ranks
//! never increase along transitions and `¬B` accepts when `O` empties
//! infinitely often.

use std::collections::{BTreeSet, HashMap};

use crate::ba::{Buchi, State, Word};
use crate::error::{Error, Result};

/// Largest right-hand automaton the oracle accepts.
pub const MAX_ORACLE_STATES: usize = 5;
/// Largest number of words `enumerate_stems` is willing to build.
pub const MAX_ENUMERATED_WORDS: usize = 1 << 20;

const UNRANKED: u8 = 0xF;

/// Packed product state: bits 0..4 the state of `A`, then 4 bits of rank
/// per state of `B`, then the owing set.
type Node = u64;

struct Complement<'a> {
    b: &'a Buchi,
    n: usize,
    // succ[q][a] as a bitmask over states of B
    succ: Vec<Vec<u32>>,
    accepting: u32,
}

impl<'a> Complement<'a> {
    fn new(b: &'a Buchi) -> Self {
        let n = b.n_states();
        let k = b.alphabet().len();
        let mut succ = vec![vec![0u32; k]; n];
        for (s, a, d) in b.transitions() {
            succ[s][a] |= 1 << d;
        }
        let accepting = b.accepting().iter().fold(0, |m, q| m | 1 << q);
        Complement { b, n, succ, accepting }
    }

    fn initial(&self) -> (Vec<u8>, u32) {
        let mut f = vec![UNRANKED; self.n];
        f[self.b.initial()] = (2 * self.n) as u8;
        (f, 0)
    }

    /// All successors of `(f, owing)` on `a`.
    fn successors(&self, f: &[u8], owing: u32, a: usize, out: &mut Vec<(Vec<u8>, u32)>) {
        let mut bound = vec![UNRANKED; self.n];
        let mut reached = 0u32;
        let mut owing_next = 0u32;
        for q in 0..self.n {
            if f[q] == UNRANKED {
                continue;
            }
            let s = self.succ[q][a];
            reached |= s;
            if owing & (1 << q) != 0 {
                owing_next |= s;
            }
            for d in 0..self.n {
                if s & (1 << d) != 0 && (bound[d] == UNRANKED || f[q] < bound[d]) {
                    bound[d] = f[q];
                }
            }
        }
        let targets: Vec<usize> = (0..self.n).filter(|&d| reached & (1 << d) != 0).collect();
        let mut g = vec![UNRANKED; self.n];
        self.assign(&targets, 0, &bound, &mut g, owing, owing_next, out);
    }

    #[allow(clippy::too_many_arguments)]
    fn assign(
        &self,
        targets: &[usize],
        i: usize,
        bound: &[u8],
        g: &mut Vec<u8>,
        owing: u32,
        owing_next: u32,
        out: &mut Vec<(Vec<u8>, u32)>,
    ) {
        if i == targets.len() {
            let even = targets
                .iter()
                .filter(|&&d| g[d].is_multiple_of(2))
                .fold(0u32, |m, &d| m | 1 << d);
            let o = if owing == 0 { even } else { owing_next & even };
            out.push((g.clone(), o));
            return;
        }
        let d = targets[i];
        let step = if self.accepting & (1 << d) != 0 { 2 } else { 1 };
        let mut r = 0;
        while r <= bound[d] {
            g[d] = r;
            self.assign(targets, i + 1, bound, g, owing, owing_next, out);
            r += step;
        }
        g[d] = UNRANKED;
    }
}

fn pack(p: State, f: &[u8], owing: u32) -> Node {
    let mut x = p as u64;
    for (i, &r) in f.iter().enumerate() {
        x |= (r as u64) << (4 + 4 * i);
    }
    x | (owing as u64) << (4 + 4 * MAX_ORACLE_STATES)
}

fn unpack(x: Node, n: usize) -> (State, Vec<u8>, u32) {
    let p = (x & 0xF) as State;
    let f = (0..n).map(|i| ((x >> (4 + 4 * i)) & 0xF) as u8).collect();
    let owing = (x >> (4 + 4 * MAX_ORACLE_STATES)) as u32;
    (p, f, owing)
}

/// States of `a` from which some accepting cycle is reachable.
fn live_states(a: &Buchi) -> Vec<bool> {
    let n = a.n_states();
    let mut reach = vec![vec![false; n]; n];
    for (s, _, d) in a.transitions() {
        reach[s][d] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if reach[i][k] {
                for j in 0..n {
                    if reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    (0..n)
        .map(|p| (0..n).any(|f| a.is_accepting(f) && reach[f][f] && (p == f || reach[p][f])))
        .collect()
}

/// Whether `L(a) ⊆ L(b)`. Refuses when `b` has more than
/// [`MAX_ORACLE_STATES`] states or `a` more than 16.
pub fn oracle_inclusion(a: &Buchi, b: &Buchi) -> Result<bool> {
    if b.n_states() > MAX_ORACLE_STATES {
        return Err(Error::Refused(format!(
            "right automaton has {} states, limit is {MAX_ORACLE_STATES}",
            b.n_states()
        )));
    }
    if a.n_states() > 16 {
        return Err(Error::Refused("left automaton has more than 16 states".into()));
    }
    if a.alphabet() != b.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    let live = live_states(a);
    if !live[a.initial()] {
        return Ok(true);
    }
    let comp = Complement::new(b);
    let n = b.n_states();
    let (f0, o0) = comp.initial();
    let root = pack(a.initial(), &f0, o0);
    let successors = |x: Node| -> Vec<Node> {
        let (p, f, owing) = unpack(x, n);
        let mut out = Vec::new();
        let mut buf = Vec::new();
        for &(sym, p2) in a.edges(p) {
            if !live[p2] {
                continue;
            }
            buf.clear();
            comp.successors(&f, owing, sym, &mut buf);
            out.extend(buf.iter().map(|(g, o)| pack(p2, g, *o)));
        }
        out.sort_unstable();
        out.dedup();
        out
    };
    let accepting_left = |x: Node| a.is_accepting(unpack(x, n).0);
    let accepting_right = |x: Node| unpack(x, n).2 == 0;
    Ok(!has_fair_cycle(root, successors, accepting_left, accepting_right))
}

/// Iterative Tarjan over an implicit graph; stops at the first closed SCC
/// that has an internal edge and contains a node of each acceptance kind.
fn has_fair_cycle(
    root: Node,
    successors: impl Fn(Node) -> Vec<Node>,
    acc1: impl Fn(Node) -> bool,
    acc2: impl Fn(Node) -> bool,
) -> bool {
    let mut index: HashMap<Node, usize> = HashMap::new();
    let mut low: Vec<usize> = Vec::new();
    let mut on_stack: Vec<bool> = Vec::new();
    let mut nodes: Vec<Node> = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    let mut calls: Vec<(usize, Vec<Node>, usize)> = Vec::new();

    let visit = |x: Node,
                     index: &mut HashMap<Node, usize>,
                     low: &mut Vec<usize>,
                     on_stack: &mut Vec<bool>,
                     nodes: &mut Vec<Node>,
                     stack: &mut Vec<usize>,
                     calls: &mut Vec<(usize, Vec<Node>, usize)>| {
        let i = nodes.len();
        index.insert(x, i);
        nodes.push(x);
        low.push(i);
        on_stack.push(true);
        stack.push(i);
        calls.push((i, successors(x), 0));
    };
    visit(root, &mut index, &mut low, &mut on_stack, &mut nodes, &mut stack, &mut calls);

    while let Some((v, succs, cursor)) = calls.last_mut() {
        let v = *v;
        if *cursor < succs.len() {
            let w = succs[*cursor];
            *cursor += 1;
            match index.get(&w) {
                None => visit(w, &mut index, &mut low, &mut on_stack, &mut nodes, &mut stack, &mut calls),
                Some(&j) => {
                    if on_stack[j] {
                        low[v] = low[v].min(j);
                    }
                }
            }
            continue;
        }
        let self_loop = succs.contains(&nodes[v]);
        calls.pop();
        if let Some((parent, _, _)) = calls.last() {
            low[*parent] = low[*parent].min(low[v]);
        }
        if low[v] == v {
            let mut members = Vec::new();
            loop {
                let w = stack.pop().expect("stack underflow");
                on_stack[w] = false;
                members.push(w);
                if w == v {
                    break;
                }
            }
            let cyclic = members.len() > 1 || self_loop;
            if cyclic
                && members.iter().any(|&m| acc1(nodes[m]))
                && members.iter().any(|&m| acc2(nodes[m]))
            {
                return true;
            }
        }
    }
    false
}

/// All words of length at most `n` leading from the initial state of `a`
/// to `p`.
pub fn enumerate_stems(a: &Buchi, p: State, n: usize) -> Result<BTreeSet<Word>> {
    let k = a.alphabet().len().max(1);
    let total = (0..=n as u32).try_fold(0usize, |acc, i| acc.checked_add(k.checked_pow(i)?));
    if total.is_none_or(|t| t > MAX_ENUMERATED_WORDS) {
        return Err(Error::Refused(format!("{k}^{n} words is too many")));
    }
    let mut out = BTreeSet::new();
    // (word, states reached)
    let mut layer: Vec<(Word, Vec<bool>)> = vec![(Word::empty(), {
        let mut v = vec![false; a.n_states()];
        v[a.initial()] = true;
        v
    })];
    for len in 0..=n {
        for (w, at) in &layer {
            if at[p] {
                out.insert(w.clone());
            }
        }
        if len == n {
            break;
        }
        let mut next = Vec::new();
        for (w, at) in &layer {
            for sym in a.alphabet().symbols() {
                let mut to = vec![false; a.n_states()];
                let mut any = false;
                for (q, _) in at.iter().enumerate().filter(|(_, &on)| on) {
                    for d in a.successors(q, sym) {
                        to[d] = true;
                        any = true;
                    }
                }
                if any {
                    next.push((w.appended(sym), to));
                }
            }
        }
        layer = next;
    }
    Ok(out)
}

//! Acceptance of ultimately periodic words `u(v)^ω`.

use crate::ba::scc::tarjan;
use crate::ba::{Buchi, StateSet, Symbol};
use crate::error::{Error, Result};

/// Whether `b` accepts `u(v)^ω`.
///
/// Reading whole copies of `v` gives a graph on the states of `b` whose
/// edges are the pairs of `Cxt(Q, v)`. The word is accepted iff some edge
/// that visits an accepting state lies inside an SCC reachable from `Tgt(u)`.
pub fn member(b: &Buchi, u: &[Symbol], v: &[Symbol]) -> Result<bool> {
    if v.is_empty() {
        return Err(Error::EmptyPeriod);
    }
    let n = b.n_states();
    let start = b.tgt_of_word(u);
    if start.is_empty() {
        return Ok(false);
    }
    let blocks = b.cxt_of_word(&StateSet::full(n), v)?;
    // node n is a virtual root pointing at Tgt(u)
    let succ = |q: usize| -> std::vec::IntoIter<usize> {
        if q == n {
            start.iter().collect::<Vec<_>>().into_iter()
        } else {
            blocks.sinks(q).iter().collect::<Vec<_>>().into_iter()
        }
    };
    let mut comp_of = vec![usize::MAX; n];
    for (i, comp) in tarjan(n + 1, n, succ).into_iter().enumerate() {
        for q in comp {
            if q < n {
                comp_of[q] = i;
            }
        }
    }
    for q in 0..n {
        if comp_of[q] == usize::MAX {
            continue;
        }
        if blocks.accepting_sinks(q).iter().any(|d| comp_of[d] == comp_of[q]) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Letter-by-letter search for a state `q` reached after `u v^i` that returns
/// to itself after `v^k` while visiting an accepting state, for
/// `i < bound` and `1 ≤ k ≤ bound`. Exact once `bound ≥ 2|Q|`.
pub fn member_bruteforce(b: &Buchi, u: &[Symbol], v: &[Symbol], bound: usize) -> Result<bool> {
    if v.is_empty() {
        return Err(Error::EmptyPeriod);
    }
    let n = b.n_states();
    let mut at = b.tgt_of_word(u);
    for _ in 0..bound {
        for q in at.iter() {
            // (state, visited accepting) pairs
            let mut cur = vec![[false; 2]; n];
            cur[q][b.is_accepting(q) as usize] = true;
            for _ in 0..bound {
                for &a in v {
                    let mut next = vec![[false; 2]; n];
                    for (p, flags) in cur.iter().enumerate() {
                        for (f, &on) in flags.iter().enumerate() {
                            if !on {
                                continue;
                            }
                            for d in b.successors(p, a) {
                                let f2 = f == 1 || b.is_accepting(d);
                                next[d][f2 as usize] = true;
                            }
                        }
                    }
                    cur = next;
                }
                if cur[q][1] {
                    return Ok(true);
                }
            }
        }
        at = b.tgt_from(&at, v);
    }
    Ok(false)
}

//! Strongly connected components of the transition graph (labels ignored).

use super::{Buchi, State};

/// One strongly connected component. `nontrivial` holds when the component
/// has an internal edge, self-loops included.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scc {
    pub states: Vec<State>,
    pub nontrivial: bool,
}

/// SCCs of the states reachable from the initial state, in the order Tarjan's
/// algorithm closes them (reverse topological). States within a component are
/// sorted.
pub fn sccs(b: &Buchi) -> Vec<Scc> {
    let succ = |q: State| b.edges(q).iter().map(|&(_, d)| d);
    let comps = tarjan(b.n_states(), b.initial(), succ);
    comps
        .into_iter()
        .map(|mut states| {
            states.sort_unstable();
            let nontrivial = states.len() > 1 || {
                let q = states[0];
                b.edges(q).iter().any(|&(_, d)| d == q)
            };
            Scc { states, nontrivial }
        })
        .collect()
}

/// Iterative Tarjan from `root` over a graph given by a successor function.
pub(crate) fn tarjan<I>(n: usize, root: usize, succ: impl Fn(usize) -> I) -> Vec<Vec<usize>>
where
    I: Iterator<Item = usize>,
{
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comps = Vec::new();
    let mut next = 0;

    // call stack of (node, materialized successors, cursor)
    let mut calls: Vec<(usize, Vec<usize>, usize)> = Vec::new();
    index[root] = next;
    low[root] = next;
    next += 1;
    stack.push(root);
    on_stack[root] = true;
    calls.push((root, succ(root).collect(), 0));

    while let Some((v, succs, cursor)) = calls.last_mut() {
        let v = *v;
        if *cursor < succs.len() {
            let w = succs[*cursor];
            *cursor += 1;
            if index[w] == UNSEEN {
                index[w] = next;
                low[w] = next;
                next += 1;
                stack.push(w);
                on_stack[w] = true;
                calls.push((w, succ(w).collect(), 0));
            } else if on_stack[w] {
                low[v] = low[v].min(index[w]);
            }
            continue;
        }
        calls.pop();
        if let Some((parent, _, _)) = calls.last() {
            low[*parent] = low[*parent].min(low[v]);
        }
        if low[v] == index[v] {
            let mut comp = Vec::new();
            loop {
                let w = stack.pop().expect("tarjan stack underflow");
                on_stack[w] = false;
                comp.push(w);
                if w == v {
                    break;
                }
            }
            comps.push(comp);
        }
    }
    comps
}

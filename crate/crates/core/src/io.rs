//! The `.ba` text format.
//!
//! ```text
//! [0]              initial states, one per line (optional)
//! a,[0]->[1]       transitions `label,src->dst` (at least one)
//! b,[1]->[1]
//! [1]              accepting states, one per line (optional)
//! ```
//!
//! States are declared by use. Without an initial line the first state
//! mentioned is initial; without accepting lines every state is accepting.
//! Several initial states are merged into a fresh one.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::ba::{Alphabet, Buchi, State, Symbol};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default)]
pub struct ParseOptions {
    /// Reject files that rely on the missing-initial or missing-accepting
    /// defaults.
    pub strict: bool,
}

/// A parsed file, before its labels are mapped onto an alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedBa {
    pub states: Vec<String>,
    /// Labels in order of first appearance.
    pub symbols: Vec<String>,
    pub initials: Vec<State>,
    /// `(src, label index, dst)`
    pub transitions: Vec<(State, usize, State)>,
    pub accepting: Vec<State>,
}

#[derive(PartialEq, PartialOrd)]
enum Section {
    Initial,
    Transitions,
    Accepting,
}

fn token(raw: &str, line: usize) -> Result<&str> {
    let t = raw.trim();
    if t.is_empty() {
        return Err(malformed(line, "empty token"));
    }
    if t.contains(char::is_whitespace) || t.contains(',') || t.contains("->") {
        return Err(malformed(line, &format!("invalid token {t:?}")));
    }
    Ok(t)
}

fn malformed(line: usize, msg: &str) -> Error {
    Error::Malformed(format!("line {line}: {msg}"))
}

struct Interner {
    names: Vec<String>,
    ids: HashMap<String, usize>,
}

impl Interner {
    fn new() -> Self {
        Interner {
            names: Vec::new(),
            ids: HashMap::new(),
        }
    }

    fn id(&mut self, name: &str) -> usize {
        if let Some(&i) = self.ids.get(name) {
            return i;
        }
        self.names.push(name.to_string());
        self.ids.insert(name.to_string(), self.names.len() - 1);
        self.names.len() - 1
    }
}

pub fn parse_ba(text: &str) -> Result<ParsedBa> {
    parse_ba_with(text, ParseOptions::default())
}

pub fn parse_ba_with(text: &str, opts: ParseOptions) -> Result<ParsedBa> {
    let mut states = Interner::new();
    let mut labels = Interner::new();
    let mut initial_names = Vec::new();
    let mut accepting_names = Vec::new();
    let mut transitions = Vec::new();
    let mut section = Section::Initial;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.trim();
        if body.is_empty() {
            continue;
        }
        if body.contains(',') || body.contains("->") {
            if section == Section::Accepting {
                return Err(malformed(line, "transition after accepting states"));
            }
            section = Section::Transitions;
            let (label, rest) = body
                .split_once(',')
                .ok_or_else(|| malformed(line, "expected `label,src->dst`"))?;
            let (src, dst) = rest
                .split_once("->")
                .ok_or_else(|| malformed(line, "expected `label,src->dst`"))?;
            let label = token(label, line)?;
            let (src, dst) = (token(src, line)?, token(dst, line)?);
            let src = states.id(src);
            let dst = states.id(dst);
            transitions.push((src, labels.id(label), dst));
        } else {
            let name = token(body, line)?;
            if section == Section::Initial {
                initial_names.push(states.id(name));
            } else {
                section = Section::Accepting;
                accepting_names.push((line, name.to_string()));
            }
        }
    }

    if transitions.is_empty() {
        return Err(Error::Malformed("no transitions".into()));
    }

    let mut initials = Vec::new();
    if initial_names.is_empty() {
        if opts.strict {
            return Err(Error::Malformed("no initial state".into()));
        }
        initials.push(0);
    }
    initials.extend(&initial_names);

    let accepting = if accepting_names.is_empty() {
        if opts.strict {
            return Err(Error::Malformed("no accepting states".into()));
        }
        (0..states.names.len()).collect()
    } else {
        accepting_names
            .iter()
            .map(|(line, name)| {
                states
                    .ids
                    .get(name)
                    .copied()
                    .ok_or_else(|| malformed(*line, &format!("unknown accepting state {name:?}")))
            })
            .collect::<Result<Vec<_>>>()?
    };

    Ok(ParsedBa {
        states: states.names,
        symbols: labels.names,
        initials,
        transitions,
        accepting,
    })
}

impl ParsedBa {
    /// Builds the automaton over `alphabet`, which must contain every label.
    pub fn build(&self, alphabet: Arc<Alphabet>) -> Result<Buchi> {
        let map: Vec<Symbol> = self
            .symbols
            .iter()
            .map(|s| alphabet.id(s).ok_or_else(|| Error::InvalidSymbol(s.clone())))
            .collect::<Result<_>>()?;
        let delta = self.transitions.iter().map(|&(s, a, d)| (s, map[a], d));
        Buchi::normalize_initials(
            alphabet,
            self.states.clone(),
            &self.initials,
            delta,
            self.accepting.iter().copied(),
        )
    }

    /// Builds the automaton over its own labels.
    pub fn build_alone(&self) -> Result<Buchi> {
        let alphabet = Alphabet::from_symbols(self.symbols.iter().cloned())?;
        self.build(Arc::new(alphabet))
    }
}

/// Builds two automata over the union of their labels, those of `a` first.
pub fn build_pair(a: &ParsedBa, b: &ParsedBa) -> Result<(Buchi, Buchi)> {
    let mut alphabet = Alphabet::new();
    for s in a.symbols.iter().chain(&b.symbols) {
        alphabet.intern(s.clone())?;
    }
    let alphabet = Arc::new(alphabet);
    Ok((a.build(Arc::clone(&alphabet))?, b.build(alphabet)?))
}

pub fn parse_pair(text_a: &str, text_b: &str) -> Result<(Buchi, Buchi)> {
    build_pair(&parse_ba(text_a)?, &parse_ba(text_b)?)
}

/// Renders `b` in `.ba` syntax with transitions and accepting states sorted by
/// id. States that neither have transitions nor are initial are dropped; if no
/// accepting state survives, an unreachable accepting state is added so the
/// file does not fall back to the all-accepting default.
pub fn print_ba(b: &Buchi) -> Result<String> {
    if b.n_transitions() == 0 {
        return Err(Error::Malformed("automaton has no transitions".into()));
    }
    let alphabet = b.alphabet();
    let mut mentioned = vec![false; b.n_states()];
    mentioned[b.initial()] = true;
    let mut out = String::new();
    writeln!(out, "{}", b.state_name(b.initial())).unwrap();
    for (s, a, d) in b.transitions() {
        mentioned[s] = true;
        mentioned[d] = true;
        writeln!(out, "{},{}->{}", alphabet.name(a), b.state_name(s), b.state_name(d)).unwrap();
    }
    let accepting: Vec<State> = b.accepting().iter().filter(|&q| mentioned[q]).collect();
    if accepting.is_empty() {
        let mut sink = String::from("sink");
        while b.state_names().contains(&sink) {
            sink.push('\'');
        }
        let label = alphabet.name(b.transitions().next().expect("non-empty").1);
        writeln!(out, "{label},{sink}->{sink}").unwrap();
        writeln!(out, "{sink}").unwrap();
    }
    for q in accepting {
        writeln!(out, "{}", b.state_name(q)).unwrap();
    }
    Ok(out)
}

//! The `.ba` interchange format: an optional initial-state line, transition
//! lines `label,[src]->[dst]`, then one line `[state]` per accepting state.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write;

use crate::automaton::{Alphabet, ColorSet, Sgra, StateAccAutomaton, StateId, Transition};
use crate::error::{Error, Result};

enum Line {
    State(String),
    Transition(String, String, String),
}

fn parse_lines(input: &str) -> Result<Vec<(usize, Line)>> {
    let mut out = Vec::new();
    for (i, raw) in input.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let no = i + 1;
        let parsed = match line.split_once(',') {
            Some((label, rest)) => {
                let (src, dst) = rest
                    .split_once("->")
                    .ok_or_else(|| Error::syntax(no, label.len() + 2, "expected '->'"))?;
                Line::Transition(
                    label.trim().to_string(),
                    bracketed(src.trim(), no)?,
                    bracketed(dst.trim(), no)?,
                )
            }
            None => Line::State(bracketed(line, no)?),
        };
        out.push((no, parsed));
    }
    Ok(out)
}

fn bracketed(s: &str, line: usize) -> Result<String> {
    s.strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .filter(|inner| !inner.is_empty())
        .map(str::to_string)
        .ok_or_else(|| Error::syntax(line, 1, format!("expected a state of the form [name], found {s:?}")))
}

/// Parses a `.ba` file; letters are the distinct labels in sorted order.
pub fn parse_ba(input: &str) -> Result<Sgra> {
    let lines = parse_lines(input)?;
    let labels: BTreeSet<&str> = lines
        .iter()
        .filter_map(|(_, l)| match l {
            Line::Transition(label, _, _) => Some(label.as_str()),
            Line::State(_) => None,
        })
        .collect();
    let alphabet = if labels.is_empty() {
        Alphabet::anonymous(1)
    } else {
        Alphabet::from_labels(labels)?
    };
    build(lines, alphabet)
}

/// Parses a `.ba` file against a fixed alphabet.
pub fn parse_ba_over(input: &str, alphabet: &Alphabet) -> Result<Sgra> {
    build(parse_lines(input)?, alphabet.clone())
}

fn build(lines: Vec<(usize, Line)>, alphabet: Alphabet) -> Result<Sgra> {
    let mut ids: HashMap<String, StateId> = HashMap::new();
    let mut id_of = |name: &str| -> StateId {
        let next = ids.len();
        *ids.entry(name.to_string()).or_insert(next)
    };
    let mut initial = Vec::new();
    let mut transitions = Vec::new();
    let mut accepting = Vec::new();
    for (i, (no, line)) in lines.iter().enumerate() {
        match line {
            Line::State(name) if i == 0 => initial.push(id_of(name)),
            Line::State(name) => accepting.push(id_of(name)),
            Line::Transition(label, src, dst) => {
                if !accepting.is_empty() {
                    return Err(Error::syntax(*no, 1, "transition after the accepting states"));
                }
                let letter = alphabet.letter_of(label).ok_or_else(|| {
                    Error::AlphabetMismatch(format!("line {no}: label {label:?} not in the alphabet"))
                })?;
                let (s, d) = (id_of(src), id_of(dst));
                transitions.push(Transition::new(s, letter, d, ColorSet::EMPTY));
            }
        }
    }
    if initial.is_empty() {
        if let Some(t) = transitions.first() {
            initial.push(t.src);
        }
    }
    let num_states = ids.len();
    let mut state_marks = vec![ColorSet::EMPTY; num_states];
    for q in accepting {
        state_marks[q] = ColorSet::singleton(1);
    }
    StateAccAutomaton {
        alphabet,
        num_states,
        initial,
        transitions,
        state_marks,
        num_colors: 2,
        fin_used: false,
    }
    .push_state_acceptance()
}

/// Renders a Büchi automaton in `.ba` format. Several initial states are
/// merged into a fresh one; acceptance that cannot be moved onto states is
/// handled by splitting every state by the mark of its incoming transition.
pub fn print_ba(a: &Sgra) -> Result<String> {
    let a = a.to_buchi()?;
    let mut out = String::new();
    if a.initial().is_empty() {
        out.push_str("[0]\n");
        return Ok(out);
    }
    let a = single_initial(&a);
    let a = if state_pushable(&a) { a } else { split_by_incoming_mark(&a) };
    writeln!(out, "[{}]", a.initial()[0]).unwrap();
    for t in a.transitions() {
        writeln!(out, "{},[{}]->[{}]", a.alphabet().label(t.letter), t.src, t.dst).unwrap();
    }
    for q in 0..a.num_states() {
        let outgoing = a.outgoing(q);
        if !outgoing.is_empty() && outgoing.iter().all(|t| t.colors.contains(1)) {
            writeln!(out, "[{q}]").unwrap();
        }
    }
    Ok(out)
}

fn single_initial(a: &Sgra) -> Sgra {
    if a.initial().len() == 1 {
        return a.clone();
    }
    let fresh = a.num_states();
    let mut transitions = a.transitions().to_vec();
    for &q in a.initial() {
        for t in a.outgoing(q) {
            // the fresh state is visited once, so its marks are irrelevant
            transitions.push(Transition::new(fresh, t.letter, t.dst, ColorSet::EMPTY));
        }
    }
    Sgra::buchi(a.alphabet().clone(), fresh + 1, [fresh], transitions).expect("valid merge")
}

fn state_pushable(a: &Sgra) -> bool {
    (0..a.num_states()).all(|q| {
        let outgoing = a.outgoing(q);
        outgoing.iter().all(|t| t.colors.contains(1)) || outgoing.iter().all(|t| !t.colors.contains(1))
    })
}

/// State `(q, m)` is `q` entered through a transition with mark `m`; the
/// copies with `m = 1` are the accepting ones.
fn split_by_incoming_mark(a: &Sgra) -> Sgra {
    let id = |q: StateId, marked: bool| 2 * q + usize::from(marked);
    let mut transitions = Vec::new();
    for t in a.transitions() {
        let marked = t.colors.contains(1);
        for from_marked in [false, true] {
            let colors = if from_marked { ColorSet::singleton(1) } else { ColorSet::EMPTY };
            transitions.push(Transition::new(id(t.src, from_marked), t.letter, id(t.dst, marked), colors));
        }
    }
    let initial = a.initial().iter().map(|&q| id(q, false));
    Sgra::buchi(a.alphabet().clone(), 2 * a.num_states(), initial, transitions)
        .expect("valid split")
        .remove_unreachable()
}

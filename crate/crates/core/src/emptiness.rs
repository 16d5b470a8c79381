//! Lazy emptiness check for automata with acceptance
//! `Fin(0) & Inf(1) & ... & Inf(k-1)`.
//!
//! The check is a Couvreur-style DFS over *transitions*: transitions carrying
//! color 0 are never followed by the DFS; their targets are scheduled as new
//! entry points instead. The stack holds sets of transitions; closing a cycle
//! merges the stack from the lowest occurrence of the cycle's target upward,
//! and the search stops as soon as a merged set carries every Inf color.

use std::collections::{HashMap, HashSet};

use crate::automaton::{ColorSet, Letter, Sgra, StateId};
use crate::error::Result;
use crate::scc::tarjan;
use crate::stateset::StateSet;

/// Outgoing edge of an implicit automaton.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub letter: Letter,
    pub target: usize,
    pub colors: ColorSet,
}

/// Automaton explored on demand. State handles are plain integers; repeated
/// calls to `outgoing` for a state must return the same list.
pub trait ImplicitSgra {
    fn num_colors(&self) -> u32;
    fn initial(&mut self) -> Result<Vec<usize>>;
    fn outgoing(&mut self, state: usize) -> Result<Vec<Edge>>;
}

/// Adapter exposing an explicit automaton through [`ImplicitSgra`].
pub struct Explicit<'a>(pub &'a Sgra);

impl ImplicitSgra for Explicit<'_> {
    fn num_colors(&self) -> u32 {
        self.0.num_colors()
    }

    fn initial(&mut self) -> Result<Vec<usize>> {
        Ok(self.0.initial().to_vec())
    }

    fn outgoing(&mut self, state: usize) -> Result<Vec<Edge>> {
        Ok(self
            .0
            .outgoing(state)
            .iter()
            .map(|t| Edge {
                letter: t.letter,
                target: t.dst,
                colors: t.colors,
            })
            .collect())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EmptinessStats {
    pub explored_transitions: usize,
    pub expanded_states: usize,
    pub peak_stack: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EmptinessResult {
    pub empty: bool,
    pub stats: EmptinessStats,
}

struct Frame {
    colors: ColorSet,
    /// Sources and targets of the member transitions; targets only count as
    /// occurrences once the frame contains a cycle.
    states: Vec<usize>,
    targets: HashSet<usize>,
    /// Targets whose outgoing transitions may still be unexplored.
    pending: Vec<usize>,
    cyclic: bool,
    size: usize,
}

enum Visit {
    Accepting,
    Bypassed,
    Pushed(usize),
}

struct Search<'a, A: ImplicitSgra> {
    aut: &'a mut A,
    required: ColorSet,
    // transition arena
    src: Vec<usize>,
    dst: Vec<usize>,
    colors: Vec<ColorSet>,
    explored: Vec<bool>,
    // state -> first transition id and count
    expanded: HashMap<usize, (usize, usize)>,
    cursor: HashMap<usize, usize>,
    entry: Vec<usize>,
    in_entry: HashSet<usize>,
    stack: Vec<Frame>,
    occurrence: HashMap<usize, usize>,
    stats: EmptinessStats,
}

impl<'a, A: ImplicitSgra> Search<'a, A> {
    fn new(aut: &'a mut A) -> Self {
        let required = ColorSet::inf_colors(aut.num_colors());
        Search {
            aut,
            required,
            src: Vec::new(),
            dst: Vec::new(),
            colors: Vec::new(),
            explored: Vec::new(),
            expanded: HashMap::new(),
            cursor: HashMap::new(),
            entry: Vec::new(),
            in_entry: HashSet::new(),
            stack: Vec::new(),
            occurrence: HashMap::new(),
            stats: EmptinessStats::default(),
        }
    }

    fn expand(&mut self, state: usize) -> Result<(usize, usize)> {
        if let Some(&range) = self.expanded.get(&state) {
            return Ok(range);
        }
        let edges = self.aut.outgoing(state)?;
        let first = self.src.len();
        for e in &edges {
            self.src.push(state);
            self.dst.push(e.target);
            self.colors.push(e.colors);
            self.explored.push(false);
        }
        let range = (first, edges.len());
        self.expanded.insert(state, range);
        self.stats.expanded_states += 1;
        Ok(range)
    }

    fn add_entry_from(&mut self, state: usize) -> Result<()> {
        let (first, len) = self.expand(state)?;
        for t in first..first + len {
            if self.in_entry.insert(t) {
                self.entry.push(t);
            }
        }
        Ok(())
    }

    fn run(mut self) -> Result<EmptinessResult> {
        for q in self.aut.initial()? {
            self.add_entry_from(q)?;
        }
        let mut next = 0;
        while next < self.entry.len() {
            let t = self.entry[next];
            next += 1;
            if self.explored[t] {
                continue;
            }
            if self.explore(t)? {
                return Ok(EmptinessResult {
                    empty: false,
                    stats: self.stats,
                });
            }
        }
        Ok(EmptinessResult {
            empty: true,
            stats: self.stats,
        })
    }

    /// Explores `t` and everything the DFS reaches from it; true when an
    /// accepting cycle was found.
    fn explore(&mut self, t: usize) -> Result<bool> {
        // one entry per active call: the stack index of the frame it pushed
        let mut calls: Vec<usize> = Vec::new();
        match self.visit(t)? {
            Visit::Accepting => return Ok(true),
            Visit::Bypassed => return Ok(false),
            Visit::Pushed(i) => calls.push(i),
        }
        while let Some(&frame) = calls.last() {
            match self.next_unexplored()? {
                Some(t) => match self.visit(t)? {
                    Visit::Accepting => return Ok(true),
                    Visit::Bypassed => {}
                    Visit::Pushed(i) => calls.push(i),
                },
                None => {
                    calls.pop();
                    // a frame merged into a lower one is popped by its owner
                    if self.stack.len() == frame + 1 {
                        self.pop_frame();
                    }
                }
            }
        }
        Ok(false)
    }

    fn visit(&mut self, t: usize) -> Result<Visit> {
        self.explored[t] = true;
        self.stats.explored_transitions += 1;
        let (src, dst, colors) = (self.src[t], self.dst[t], self.colors[t]);
        if colors.contains(0) {
            self.add_entry_from(dst)?;
            return Ok(Visit::Bypassed);
        }
        debug_assert!(
            self.stack.last().is_none_or(|top| top.targets.contains(&src)),
            "transition {t} does not continue the top of the stack"
        );
        let index = self.stack.len();
        self.stack.push(Frame {
            colors,
            states: vec![src, dst],
            targets: HashSet::from([dst]),
            pending: vec![dst],
            cyclic: false,
            size: 1,
        });
        self.stats.peak_stack = self.stats.peak_stack.max(self.stack.len());
        self.occurrence.entry(src).or_insert(index);
        if let Some(&lowest) = self.occurrence.get(&dst) {
            self.merge_from(lowest);
            let top = self.stack.last().expect("merged frame");
            if top.colors.is_superset(self.required) {
                return Ok(Visit::Accepting);
            }
        }
        Ok(Visit::Pushed(index))
    }

    fn merge_from(&mut self, lowest: usize) {
        while self.stack.len() > lowest + 1 {
            let upper = self.stack.pop().expect("frame above lowest");
            let below = self.stack.last_mut().expect("frame at lowest");
            below.colors = below.colors.union(upper.colors);
            below.states.extend(upper.states);
            below.targets.extend(upper.targets);
            below.pending.extend(upper.pending);
            below.size += upper.size;
        }
        let frame = self.stack.last_mut().expect("frame at lowest");
        frame.cyclic = true;
        for &s in &frame.states {
            let slot = self.occurrence.entry(s).or_insert(lowest);
            *slot = (*slot).min(lowest);
        }
    }

    fn pop_frame(&mut self) {
        let index = self.stack.len() - 1;
        let frame = self.stack.pop().expect("pop on empty stack");
        for s in frame.states {
            if self.occurrence.get(&s) == Some(&index) {
                self.occurrence.remove(&s);
            }
        }
    }

    /// Some unexplored transition leaving a target of the top frame.
    fn next_unexplored(&mut self) -> Result<Option<usize>> {
        loop {
            let Some(&state) = self.stack.last().and_then(|f| f.pending.last()) else {
                return Ok(None);
            };
            let (first, len) = self.expand(state)?;
            let cursor = self.cursor.entry(state).or_insert(0);
            while *cursor < len && self.explored[first + *cursor] {
                *cursor += 1;
            }
            if *cursor < len {
                return Ok(Some(first + *cursor));
            }
            self.stack.last_mut().expect("top frame").pending.pop();
        }
    }
}

/// Lazy emptiness check; explores only what is needed to decide.
pub fn is_empty<A: ImplicitSgra>(aut: &mut A) -> Result<EmptinessResult> {
    Search::new(aut).run()
}

/// Emptiness of an explicit automaton through the lazy algorithm.
pub fn is_empty_explicit(a: &Sgra) -> bool {
    is_empty(&mut Explicit(a))
        .expect("explicit automata never fail")
        .empty
}

/// States lying in an accepting component: a non-trivial SCC of the
/// subgraph without color-0 transitions whose internal transitions carry
/// every Inf color.
pub fn accepting_component_states(a: &Sgra) -> StateSet {
    let n = a.num_states();
    let free = |q: StateId| a.outgoing(q).iter().filter(|t| !t.colors.contains(0));
    let components = tarjan(n, |q| free(q).map(|t| t.dst).collect::<Vec<_>>());
    let mut comp_of = vec![0; n];
    for (i, c) in components.iter().enumerate() {
        for &q in c {
            comp_of[q] = i;
        }
    }
    let required = ColorSet::inf_colors(a.num_colors());
    let mut good = StateSet::new(n);
    for (i, c) in components.iter().enumerate() {
        let mut internal = false;
        let mut colors = ColorSet::EMPTY;
        for &q in c {
            for t in free(q).filter(|t| comp_of[t.dst] == i) {
                internal = true;
                colors = colors.union(t.colors);
            }
        }
        if internal && colors.is_superset(required) {
            for &q in c {
                good.insert(q);
            }
        }
    }
    good
}

/// Non-lazy reference check by SCC analysis of the whole automaton.
pub fn is_empty_oracle(a: &Sgra) -> bool {
    let good = accepting_component_states(a);
    a.reachable().is_disjoint(&good)
}

//! Language inclusion `L(A1) ⊆ L(A2)` by emptiness of `A1 × complement(A2)`,
//! with the complement built on the fly.

use std::collections::{HashMap, VecDeque};

use crate::automaton::{ColorSet, Sgra, Transition};
use crate::complement::{Complementer, Macrostate, NacStrategy, DEFAULT_MAX_MACROSTATES};
use crate::emptiness::{self, Edge, ImplicitSgra};
use crate::error::{Error, Result};

/// Product of a Büchi automaton with the complement of another, explored on
/// demand. The acceptance color of the left automaton is the last color.
pub struct ProductAutomaton {
    left: Sgra,
    right: Complementer,
    a1_color: u32,
    macrostates: HashMap<Macrostate, usize>,
    macro_list: Vec<Macrostate>,
    states: HashMap<(usize, usize), usize>,
    state_list: Vec<(usize, usize)>,
    max_macrostates: usize,
}

impl ProductAutomaton {
    pub fn new(a1: &Sgra, a2: &Sgra) -> Result<Self> {
        Self::with_capacity(a1, a2, DEFAULT_MAX_MACROSTATES)
    }

    pub fn with_capacity(a1: &Sgra, a2: &Sgra, max_macrostates: usize) -> Result<Self> {
        let (left, right) = prepare(a1, a2)?;
        let a1_color = right.plan().num_colors;
        Ok(ProductAutomaton {
            left,
            right,
            a1_color,
            macrostates: HashMap::new(),
            macro_list: Vec::new(),
            states: HashMap::new(),
            state_list: Vec::new(),
            max_macrostates,
        })
    }

    pub fn a1_color(&self) -> u32 {
        self.a1_color
    }

    /// Product states created so far.
    pub fn num_states(&self) -> usize {
        self.state_list.len()
    }

    pub fn num_macrostates(&self) -> usize {
        self.macro_list.len()
    }

    fn intern(&mut self, q: usize, m: Macrostate) -> Result<usize> {
        let mid = match self.macrostates.get(&m) {
            Some(&id) => id,
            None => {
                if self.macro_list.len() >= self.max_macrostates {
                    return Err(Error::Capacity(format!(
                        "more than {} macrostates",
                        self.max_macrostates
                    )));
                }
                let id = self.macro_list.len();
                self.macrostates.insert(m.clone(), id);
                self.macro_list.push(m);
                id
            }
        };
        let next = self.state_list.len();
        let id = *self.states.entry((q, mid)).or_insert(next);
        if id == next {
            self.state_list.push((q, mid));
        }
        Ok(id)
    }
}

impl ImplicitSgra for ProductAutomaton {
    fn num_colors(&self) -> u32 {
        self.a1_color + 1
    }

    fn initial(&mut self) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        let initial_left = self.left.initial().to_vec();
        for m in self.right.init_macrostates() {
            for &q in &initial_left {
                out.push(self.intern(q, m.clone())?);
            }
        }
        Ok(out)
    }

    fn outgoing(&mut self, state: usize) -> Result<Vec<Edge>> {
        let (q, mid) = self.state_list[state];
        let m = self.macro_list[mid].clone();
        let mut out = Vec::new();
        for letter in self.left.letters() {
            let left: Vec<Transition> = self.left.successors(q, letter).to_vec();
            if left.is_empty() {
                continue;
            }
            for (next, colors) in self.right.succ_macrostate(&m, letter) {
                for t in &left {
                    let colors = if t.colors.contains(1) {
                        colors.with(self.a1_color)
                    } else {
                        colors
                    };
                    let target = self.intern(t.dst, next.clone())?;
                    out.push(Edge {
                        letter,
                        target,
                        colors,
                    });
                }
            }
        }
        Ok(out)
    }
}

fn prepare(a1: &Sgra, a2: &Sgra) -> Result<(Sgra, Complementer)> {
    if a1.alphabet().labels() != a2.alphabet().labels() {
        return Err(Error::AlphabetMismatch(format!(
            "left alphabet {:?} differs from right alphabet {:?}",
            a1.alphabet().labels(),
            a2.alphabet().labels()
        )));
    }
    let left = a1.to_buchi()?.remove_unreachable().normalize_colors();
    let right = Complementer::new(&a2.to_buchi()?, NacStrategy::Decompose)?;
    Ok((left, right))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InclusionResult {
    pub holds: bool,
    pub product_states: usize,
    pub explored_transitions: usize,
}

/// Decides `L(a1) ⊆ L(a2)` lazily.
pub fn included(a1: &Sgra, a2: &Sgra) -> Result<InclusionResult> {
    let mut product = ProductAutomaton::new(a1, a2)?;
    let r = emptiness::is_empty(&mut product)?;
    Ok(InclusionResult {
        holds: r.empty,
        product_states: product.num_states(),
        explored_transitions: r.stats.explored_transitions,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleInclusion {
    pub holds: bool,
    /// Reachable states of the explicit product.
    pub product_states: usize,
}

/// Reference pipeline: full complement, explicit product, SCC-based
/// emptiness.
pub fn included_oracle(a1: &Sgra, a2: &Sgra) -> Result<OracleInclusion> {
    let (left, right) = prepare(a1, a2)?;
    let comp = right.materialize(DEFAULT_MAX_MACROSTATES)?.automaton;
    let product = explicit_product(&left, &comp)?;
    Ok(OracleInclusion {
        holds: emptiness::is_empty_oracle(&product),
        product_states: product.num_states(),
    })
}

/// Reachable part of the product of a Büchi automaton with an SGRA; the
/// Büchi color is appended after the colors of `right`.
pub fn explicit_product(left: &Sgra, right: &Sgra) -> Result<Sgra> {
    let extra = right.num_colors();
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut pairs = Vec::new();
    let mut queue = VecDeque::new();
    let mut intern = |pair: (usize, usize), pairs: &mut Vec<(usize, usize)>, queue: &mut VecDeque<usize>| {
        *index.entry(pair).or_insert_with(|| {
            pairs.push(pair);
            queue.push_back(pairs.len() - 1);
            pairs.len() - 1
        })
    };
    let mut initial = Vec::new();
    for &p in left.initial() {
        for &r in right.initial() {
            initial.push(intern((p, r), &mut pairs, &mut queue));
        }
    }
    let mut transitions = Vec::new();
    while let Some(id) = queue.pop_front() {
        let (p, r) = pairs[id];
        for letter in left.letters() {
            for tl in left.successors(p, letter) {
                for tr in right.successors(r, letter) {
                    let dst = intern((tl.dst, tr.dst), &mut pairs, &mut queue);
                    let mut colors: ColorSet = tr.colors;
                    if tl.colors.contains(1) {
                        colors.insert(extra);
                    }
                    transitions.push(Transition::new(id, letter, dst, colors));
                }
            }
        }
    }
    Sgra::new(
        left.alphabet().clone(),
        pairs.len(),
        initial,
        transitions,
        extra + 1,
        right.fin_used(),
    )
}

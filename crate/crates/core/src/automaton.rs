//! Explicit transition-based ω-automata with one-Fin-pair acceptance.
//!
//! Every automaton in this crate is an [`Sgra`]: colors `1..k` are Inf colors
//! and color `0` is reserved for the (optional) Fin color, giving the
//! acceptance `Fin(0) & Inf(1) & ... & Inf(k-1)`. Büchi automata are the
//! special case `k = 2` without Fin.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};
use crate::scc;
use crate::stateset::StateSet;

pub type StateId = usize;
pub type Letter = usize;

/// Largest supported number of colors (Fin color included).
pub const MAX_COLORS: u32 = 32;

/// Finite, ordered alphabet. Letters are dense indices `0..len`.
///
/// When the alphabet is built from atomic propositions, letter `v` is the
/// valuation whose bit `i` gives the truth value of proposition `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    labels: Vec<String>,
    ap_names: Option<Vec<String>>,
}

impl Alphabet {
    /// Alphabet with explicit letter labels.
    pub fn from_labels<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::InvalidAutomaton("alphabet must be nonempty".into()));
        }
        let mut sorted = labels.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != labels.len() {
            return Err(Error::InvalidAutomaton("duplicate letter label".into()));
        }
        Ok(Alphabet {
            labels,
            ap_names: None,
        })
    }

    /// The `2^|aps|` valuations of the given atomic propositions.
    pub fn from_aps<S: Into<String>>(aps: impl IntoIterator<Item = S>) -> Self {
        let aps: Vec<String> = aps.into_iter().map(Into::into).collect();
        let labels = (0..1usize << aps.len())
            .map(|v| valuation_label(&aps, v))
            .collect();
        Alphabet {
            labels,
            ap_names: Some(aps),
        }
    }

    /// `n` letters named `a`, `b`, `c`, ... (`l26`, `l27`, ... beyond `z`).
    pub fn anonymous(n: usize) -> Self {
        assert!(n > 0, "alphabet must be nonempty");
        let labels = (0..n)
            .map(|i| {
                if i < 26 {
                    ((b'a' + i as u8) as char).to_string()
                } else {
                    format!("l{i}")
                }
            })
            .collect();
        Alphabet {
            labels,
            ap_names: None,
        }
    }

    /// Proposition-based alphabet when `n` is a power of two, anonymous otherwise.
    pub fn sized(n: usize) -> Self {
        if n.is_power_of_two() {
            let bits = n.trailing_zeros() as usize;
            Alphabet::from_aps((0..bits).map(|i| format!("p{i}")))
        } else {
            Alphabet::anonymous(n)
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, letter: Letter) -> &str {
        &self.labels[letter]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn ap_names(&self) -> Option<&[String]> {
        self.ap_names.as_deref()
    }

    pub fn letter_of(&self, label: &str) -> Option<Letter> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn letters(&self) -> std::ops::Range<Letter> {
        0..self.labels.len()
    }
}

fn valuation_label(aps: &[String], valuation: usize) -> String {
    if aps.is_empty() {
        return "t".to_string();
    }
    aps.iter()
        .enumerate()
        .map(|(i, name)| {
            if valuation >> i & 1 == 1 {
                name.clone()
            } else {
                format!("!{name}")
            }
        })
        .collect::<Vec<_>>()
        .join("&")
}

/// Subset of the colors `0..32`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColorSet(u32);

impl ColorSet {
    pub const EMPTY: ColorSet = ColorSet(0);

    pub fn singleton(color: u32) -> Self {
        ColorSet(1 << color)
    }

    pub fn from_bits(bits: u32) -> Self {
        ColorSet(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn contains(self, color: u32) -> bool {
        color < 32 && self.0 >> color & 1 == 1
    }

    pub fn insert(&mut self, color: u32) {
        self.0 |= 1 << color;
    }

    pub fn with(mut self, color: u32) -> Self {
        self.insert(color);
        self
    }

    pub fn union(self, other: ColorSet) -> Self {
        ColorSet(self.0 | other.0)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_superset(self, other: ColorSet) -> bool {
        self.0 & other.0 == other.0
    }

    /// Largest member plus one, 0 when empty.
    pub fn bound(self) -> u32 {
        32 - self.0.leading_zeros()
    }

    pub fn iter(self) -> impl Iterator<Item = u32> {
        (0..32).filter(move |c| self.contains(*c))
    }

    /// The Inf colors `{1, ..., k-1}` of an automaton with `k` colors.
    pub fn inf_colors(num_colors: u32) -> Self {
        if num_colors <= 1 {
            ColorSet::EMPTY
        } else {
            ColorSet(((1u64 << num_colors) - 2) as u32)
        }
    }
}

impl fmt::Debug for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<u32> for ColorSet {
    fn from_iter<T: IntoIterator<Item = u32>>(iter: T) -> Self {
        let mut set = ColorSet::EMPTY;
        for c in iter {
            set.insert(c);
        }
        set
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transition {
    pub src: StateId,
    pub letter: Letter,
    pub dst: StateId,
    pub colors: ColorSet,
}

impl Transition {
    pub fn new(src: StateId, letter: Letter, dst: StateId, colors: ColorSet) -> Self {
        Transition {
            src,
            letter,
            dst,
            colors,
        }
    }
}

/// Simple generalized Rabin automaton with transition-based acceptance
/// `Fin(0) & Inf(1) & ... & Inf(k-1)`.
///
/// Transitions are kept sorted by `(src, letter, dst, colors)` without
/// duplicates, which makes structural equality meaningful.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sgra {
    alphabet: Alphabet,
    num_states: usize,
    initial: Vec<StateId>,
    transitions: Vec<Transition>,
    // offsets[src * |Σ| + letter] .. offsets[src * |Σ| + letter + 1]
    offsets: Vec<usize>,
    num_colors: u32,
    fin_used: bool,
}

impl Sgra {
    pub fn new(
        alphabet: Alphabet,
        num_states: usize,
        initial: impl IntoIterator<Item = StateId>,
        transitions: impl IntoIterator<Item = Transition>,
        num_colors: u32,
        fin_used: bool,
    ) -> Result<Self> {
        if num_colors == 0 || num_colors > MAX_COLORS {
            return Err(Error::InvalidAutomaton(format!(
                "number of colors must be in 1..={MAX_COLORS}, got {num_colors}"
            )));
        }
        let mut initial: Vec<StateId> = initial.into_iter().collect();
        initial.sort_unstable();
        initial.dedup();
        if let Some(&q) = initial.iter().find(|&&q| q >= num_states) {
            return Err(Error::InvalidAutomaton(format!("initial state {q} out of range")));
        }
        let mut transitions: Vec<Transition> = transitions.into_iter().collect();
        for t in &transitions {
            if t.src >= num_states || t.dst >= num_states {
                return Err(Error::InvalidAutomaton(format!(
                    "transition {} -> {} out of range ({num_states} states)",
                    t.src, t.dst
                )));
            }
            if t.letter >= alphabet.len() {
                return Err(Error::InvalidAutomaton(format!("letter {} out of range", t.letter)));
            }
            if t.colors.bound() > num_colors {
                return Err(Error::InvalidAutomaton(format!(
                    "color {:?} exceeds {num_colors} colors",
                    t.colors
                )));
            }
            if !fin_used && t.colors.contains(0) {
                return Err(Error::InvalidAutomaton(
                    "color 0 used although Fin is not part of the acceptance".into(),
                ));
            }
        }
        transitions.sort_unstable();
        transitions.dedup();
        let width = alphabet.len();
        let mut offsets = vec![0; num_states * width + 1];
        for t in &transitions {
            offsets[t.src * width + t.letter + 1] += 1;
        }
        for i in 1..offsets.len() {
            offsets[i] += offsets[i - 1];
        }
        Ok(Sgra {
            alphabet,
            num_states,
            initial,
            transitions,
            offsets,
            num_colors,
            fin_used,
        })
    }

    /// Büchi automaton: `k = 2`, Inf(1) only.
    pub fn buchi(
        alphabet: Alphabet,
        num_states: usize,
        initial: impl IntoIterator<Item = StateId>,
        transitions: impl IntoIterator<Item = Transition>,
    ) -> Result<Self> {
        Sgra::new(alphabet, num_states, initial, transitions, 2, false)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn num_letters(&self) -> usize {
        self.alphabet.len()
    }

    pub fn letters(&self) -> std::ops::Range<Letter> {
        self.alphabet.letters()
    }

    pub fn initial(&self) -> &[StateId] {
        &self.initial
    }

    pub fn initial_set(&self) -> StateSet {
        StateSet::from_iter_with(self.num_states, self.initial.iter().copied())
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn num_colors(&self) -> u32 {
        self.num_colors
    }

    pub fn fin_used(&self) -> bool {
        self.fin_used
    }

    /// Transitions leaving `src` on `letter`.
    pub fn successors(&self, src: StateId, letter: Letter) -> &[Transition] {
        let i = src * self.alphabet.len() + letter;
        &self.transitions[self.offsets[i]..self.offsets[i + 1]]
    }

    /// All transitions leaving `src`, ordered by letter.
    pub fn outgoing(&self, src: StateId) -> &[Transition] {
        let w = self.alphabet.len();
        &self.transitions[self.offsets[src * w]..self.offsets[(src + 1) * w]]
    }

    /// `δ(set, letter)`.
    pub fn post(&self, set: &StateSet, letter: Letter) -> StateSet {
        let mut out = StateSet::new(self.num_states);
        for q in set.iter() {
            for t in self.successors(q, letter) {
                out.insert(t.dst);
            }
        }
        out
    }

    pub fn is_buchi(&self) -> bool {
        self.num_colors == 2 && !self.fin_used
    }

    /// Views the automaton as a Büchi automaton.
    ///
    /// `t` acceptance (one color, no Fin) becomes Büchi with every transition
    /// accepting.
    pub fn to_buchi(&self) -> Result<Sgra> {
        if self.is_buchi() {
            return Ok(self.clone());
        }
        if self.num_colors == 1 && !self.fin_used {
            let transitions = self
                .transitions
                .iter()
                .map(|t| Transition::new(t.src, t.letter, t.dst, ColorSet::singleton(1)));
            return Sgra::buchi(
                self.alphabet.clone(),
                self.num_states,
                self.initial.clone(),
                transitions,
            );
        }
        Err(Error::Contract(format!(
            "expected a Büchi automaton, got acceptance {}",
            self.acceptance_formula()
        )))
    }

    /// Canonical Emerson–Lei rendering of the acceptance condition.
    pub fn acceptance_formula(&self) -> String {
        let mut atoms = Vec::new();
        if self.fin_used {
            atoms.push("Fin(0)".to_string());
        }
        atoms.extend((1..self.num_colors).map(|c| format!("Inf({c})")));
        if atoms.is_empty() {
            "t".to_string()
        } else {
            atoms.join(" & ")
        }
    }

    /// Clears the colors of all transitions between different SCCs.
    pub fn normalize_colors(&self) -> Sgra {
        let decomposition = scc::sccs(self);
        let transitions = self.transitions.iter().map(|t| {
            if decomposition.scc_of(t.src) == decomposition.scc_of(t.dst) {
                *t
            } else {
                Transition::new(t.src, t.letter, t.dst, ColorSet::EMPTY)
            }
        });
        self.with_transitions(transitions)
    }

    /// Keeps the transitions with both endpoints in `states`; state ids are kept.
    pub fn restrict(&self, states: &StateSet) -> Sgra {
        let transitions = self
            .transitions
            .iter()
            .filter(|t| states.contains(t.src) && states.contains(t.dst))
            .copied();
        self.with_transitions(transitions)
    }

    fn with_transitions(&self, transitions: impl IntoIterator<Item = Transition>) -> Sgra {
        Sgra::new(
            self.alphabet.clone(),
            self.num_states,
            self.initial.clone(),
            transitions,
            self.num_colors,
            self.fin_used,
        )
        .expect("transition subset of a valid automaton")
    }

    /// States reachable from the initial states.
    pub fn reachable(&self) -> StateSet {
        let mut seen = self.initial_set();
        let mut queue: VecDeque<StateId> = self.initial.iter().copied().collect();
        while let Some(q) = queue.pop_front() {
            for t in self.outgoing(q) {
                if seen.insert(t.dst) {
                    queue.push_back(t.dst);
                }
            }
        }
        seen
    }

    /// Sub-automaton induced by `keep`, renumbered densely in id order.
    pub fn induced(&self, keep: &StateSet) -> Sgra {
        let mut new_id = vec![usize::MAX; self.num_states];
        for (i, q) in keep.iter().enumerate() {
            new_id[q] = i;
        }
        let transitions = self
            .transitions
            .iter()
            .filter(|t| keep.contains(t.src) && keep.contains(t.dst))
            .map(|t| Transition::new(new_id[t.src], t.letter, new_id[t.dst], t.colors));
        Sgra::new(
            self.alphabet.clone(),
            keep.len(),
            self.initial.iter().filter(|q| keep.contains(**q)).map(|q| new_id[*q]),
            transitions,
            self.num_colors,
            self.fin_used,
        )
        .expect("induced sub-automaton of a valid automaton")
    }

    pub fn remove_unreachable(&self) -> Sgra {
        self.induced(&self.reachable())
    }

    /// Renumbers states in BFS order from the sorted initial states, letters
    /// ascending, then unreachable states in id order.
    ///
    /// Two automata produced from one another by a printer/parser pair that
    /// keeps state ids compare equal after canonicalization.
    pub fn canonical(&self) -> Sgra {
        let mut order = Vec::with_capacity(self.num_states);
        let mut new_id = vec![usize::MAX; self.num_states];
        let mut queue = VecDeque::new();
        for &q in &self.initial {
            new_id[q] = order.len();
            order.push(q);
            queue.push_back(q);
        }
        while let Some(q) = queue.pop_front() {
            for t in self.outgoing(q) {
                if new_id[t.dst] == usize::MAX {
                    new_id[t.dst] = order.len();
                    order.push(t.dst);
                    queue.push_back(t.dst);
                }
            }
        }
        for (q, id) in new_id.iter_mut().enumerate() {
            if *id == usize::MAX {
                *id = order.len();
                order.push(q);
            }
        }
        let transitions = self
            .transitions
            .iter()
            .map(|t| Transition::new(new_id[t.src], t.letter, new_id[t.dst], t.colors));
        Sgra::new(
            self.alphabet.clone(),
            self.num_states,
            self.initial.iter().map(|q| new_id[*q]),
            transitions,
            self.num_colors,
            self.fin_used,
        )
        .expect("renumbering of a valid automaton")
    }
}

/// Automaton whose acceptance marks may sit on states, on transitions, or
/// both (but never both for the same color).
#[derive(Clone, Debug)]
pub struct StateAccAutomaton {
    pub alphabet: Alphabet,
    pub num_states: usize,
    pub initial: Vec<StateId>,
    pub transitions: Vec<Transition>,
    pub state_marks: Vec<ColorSet>,
    pub num_colors: u32,
    pub fin_used: bool,
}

impl StateAccAutomaton {
    /// Moves every mark of a state onto all of its outgoing transitions.
    pub fn push_state_acceptance(&self) -> Result<Sgra> {
        if self.state_marks.len() != self.num_states {
            return Err(Error::InvalidAutomaton("one state mark set per state required".into()));
        }
        let state_colors = self
            .state_marks
            .iter()
            .fold(ColorSet::EMPTY, |acc, m| acc.union(*m));
        let transition_colors = self
            .transitions
            .iter()
            .fold(ColorSet::EMPTY, |acc, t| acc.union(t.colors));
        let mixed = ColorSet::from_bits(state_colors.bits() & transition_colors.bits());
        if !mixed.is_empty() {
            return Err(Error::InvalidAutomaton(format!(
                "acceptance sets {mixed:?} used both on states and on transitions"
            )));
        }
        let transitions = self.transitions.iter().map(|t| {
            let colors = match self.state_marks.get(t.src) {
                Some(m) => t.colors.union(*m),
                None => t.colors,
            };
            Transition::new(t.src, t.letter, t.dst, colors)
        });
        Sgra::new(
            self.alphabet.clone(),
            self.num_states,
            self.initial.clone(),
            transitions,
            self.num_colors,
            self.fin_used,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(colors: &[u32]) -> ColorSet {
        colors.iter().copied().collect()
    }

    fn fin_a() -> Sgra {
        Sgra::buchi(
            Alphabet::anonymous(2),
            1,
            [0],
            [Transition::new(0, 0, 0, c(&[1])), Transition::new(0, 1, 0, c(&[]))],
        )
        .unwrap()
    }

    fn iwac() -> Sgra {
        Sgra::buchi(
            Alphabet::anonymous(1),
            2,
            [0],
            [
                Transition::new(0, 0, 0, c(&[])),
                Transition::new(0, 0, 1, c(&[])),
                Transition::new(1, 0, 1, c(&[1])),
            ],
        )
        .unwrap()
    }

    #[test]
    fn acceptance_formulas() {
        let a = Alphabet::anonymous(1);
        let sgra = Sgra::new(a.clone(), 1, [0], [], 3, true).unwrap();
        assert_eq!(sgra.acceptance_formula(), "Fin(0) & Inf(1) & Inf(2)");
        assert_eq!(fin_a().acceptance_formula(), "Inf(1)");
        let t = Sgra::new(a, 1, [0], [], 1, false).unwrap();
        assert_eq!(t.acceptance_formula(), "t");
    }

    #[test]
    fn rejects_out_of_range_colors_and_fin_misuse() {
        let a = Alphabet::anonymous(1);
        assert!(Sgra::buchi(a.clone(), 1, [0], [Transition::new(0, 0, 0, c(&[2]))]).is_err());
        assert!(Sgra::buchi(a.clone(), 1, [0], [Transition::new(0, 0, 0, c(&[0]))]).is_err());
        assert!(Sgra::buchi(a.clone(), 1, [1], []).is_err());
        assert!(Sgra::buchi(a, 1, [0], [Transition::new(0, 0, 3, c(&[]))]).is_err());
    }

    #[test]
    fn normalize_strips_inter_scc_colors_only() {
        let a = Sgra::buchi(
            Alphabet::anonymous(1),
            2,
            [0],
            [Transition::new(0, 0, 1, c(&[1])), Transition::new(1, 0, 1, c(&[1]))],
        )
        .unwrap();
        let n = a.normalize_colors();
        assert_eq!(n.successors(0, 0), &[Transition::new(0, 0, 1, c(&[]))]);
        assert_eq!(n.successors(1, 0), &[Transition::new(1, 0, 1, c(&[1]))]);
        assert_eq!(fin_a().normalize_colors(), fin_a());
        assert_eq!(n.normalize_colors(), n);
    }

    #[test]
    fn restrict_examples() {
        let a = iwac();
        let all = StateSet::from_iter_with(2, [0, 1]);
        assert_eq!(a.restrict(&all).transitions(), a.transitions());
        assert!(a.restrict(&StateSet::new(2)).transitions().is_empty());
        let only_q = a.restrict(&StateSet::from_iter_with(2, [1]));
        assert_eq!(only_q.transitions(), &[Transition::new(1, 0, 1, c(&[1]))]);
        assert_eq!(only_q.num_states(), 2);
    }

    #[test]
    fn push_state_acceptance_marks_outgoing() {
        let aut = StateAccAutomaton {
            alphabet: Alphabet::anonymous(2),
            num_states: 1,
            initial: vec![0],
            transitions: vec![Transition::new(0, 0, 0, c(&[])), Transition::new(0, 1, 0, c(&[]))],
            state_marks: vec![c(&[1])],
            num_colors: 2,
            fin_used: false,
        };
        let pushed = aut.push_state_acceptance().unwrap();
        assert!(pushed.transitions().iter().all(|t| t.colors == c(&[1])));

        let unmarked = StateAccAutomaton {
            state_marks: vec![c(&[])],
            ..aut.clone()
        };
        let pushed = unmarked.push_state_acceptance().unwrap();
        assert!(pushed.transitions().iter().all(|t| t.colors.is_empty()));

        let mixed = StateAccAutomaton {
            transitions: vec![Transition::new(0, 0, 0, c(&[1]))],
            ..aut
        };
        assert!(mixed.push_state_acceptance().is_err());
    }

    #[test]
    fn to_buchi_from_true_acceptance() {
        let t = Sgra::new(
            Alphabet::anonymous(1),
            1,
            [0],
            [Transition::new(0, 0, 0, c(&[]))],
            1,
            false,
        )
        .unwrap();
        let ba = t.to_buchi().unwrap();
        assert!(ba.is_buchi());
        assert_eq!(ba.transitions()[0].colors, c(&[1]));
        let sgra = Sgra::new(Alphabet::anonymous(1), 1, [0], [], 2, true).unwrap();
        assert!(matches!(sgra.to_buchi(), Err(Error::Contract(_))));
    }

    #[test]
    fn alphabet_valuations() {
        let a = Alphabet::from_aps(["x", "y"]);
        assert_eq!(a.len(), 4);
        assert_eq!(a.label(0), "!x&!y");
        assert_eq!(a.label(1), "x&!y");
        assert_eq!(Alphabet::sized(1).label(0), "t");
        assert_eq!(Alphabet::sized(3).labels(), &["a", "b", "c"]);
        assert!(Alphabet::from_labels(["a", "a"]).is_err());
    }
}

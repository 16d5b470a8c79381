//! SCC decomposition, classification of accepting SCCs and the block
//! partitioning that drives modular complementation.

use std::fmt;

use crate::automaton::{Sgra, StateId};
use crate::error::{Error, Result};
use crate::stateset::StateSet;

/// Tarjan's algorithm over the nodes `0..n`, iterative.
///
/// Components are returned in the order Tarjan completes them, i.e. sinks of
/// the condensation first.
pub fn tarjan<F, I>(n: usize, mut successors: F) -> Vec<Vec<usize>>
where
    F: FnMut(usize) -> I,
    I: IntoIterator<Item = usize>,
{
    const UNVISITED: usize = usize::MAX;
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut components = Vec::new();
    let mut next_index = 0;
    // (node, its successors, cursor)
    let mut call: Vec<(usize, Vec<usize>, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        call.push((root, successors(root).into_iter().collect(), 0));

        while let Some((v, succ, cursor)) = call.last_mut() {
            let v = *v;
            if *cursor < succ.len() {
                let w = succ[*cursor];
                *cursor += 1;
                if index[w] == UNVISITED {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, successors(w).into_iter().collect(), 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some((parent, _, _)) = call.last() {
                low[*parent] = low[*parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut component = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    component.push(w);
                    if w == v {
                        break;
                    }
                }
                component.sort_unstable();
                components.push(component);
            }
        }
    }
    components
}

/// Raw SCC decomposition of an automaton's transition graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SccDecomposition {
    scc_of: Vec<usize>,
    members: Vec<Vec<StateId>>,
    trivial: Vec<bool>,
}

impl SccDecomposition {
    pub fn scc_of(&self, state: StateId) -> usize {
        self.scc_of[state]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self, scc: usize) -> &[StateId] {
        &self.members[scc]
    }

    pub fn is_trivial(&self, scc: usize) -> bool {
        self.trivial[scc]
    }
}

/// SCCs numbered in topological order of the condensation (sources first).
pub fn sccs(a: &Sgra) -> SccDecomposition {
    let mut components = tarjan(a.num_states(), |q| a.outgoing(q).iter().map(|t| t.dst));
    components.reverse();
    let mut scc_of = vec![0; a.num_states()];
    for (i, c) in components.iter().enumerate() {
        for &q in c {
            scc_of[q] = i;
        }
    }
    let trivial = components
        .iter()
        .map(|c| c.len() == 1 && !a.outgoing(c[0]).iter().any(|t| t.dst == c[0]))
        .collect();
    SccDecomposition {
        scc_of,
        members: components,
        trivial,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SccClass {
    NonAccepting,
    Iadac,
    Iwac,
    Dac,
    Nac,
}

impl fmt::Display for SccClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SccClass::NonAccepting => "nonacc",
            SccClass::Iadac => "iadac",
            SccClass::Iwac => "iwac",
            SccClass::Dac => "dac",
            SccClass::Nac => "nac",
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SccFlags {
    pub trivial: bool,
    pub accepting: bool,
    pub inherently_weak: bool,
    pub deterministic: bool,
    pub initial_deterministic: bool,
    pub initial_almost_deterministic: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SccInfo {
    pub decomposition: SccDecomposition,
    pub flags: Vec<SccFlags>,
    pub classes: Vec<SccClass>,
}

impl SccInfo {
    pub fn class_of_state(&self, state: StateId) -> SccClass {
        self.classes[self.decomposition.scc_of(state)]
    }

    pub fn count(&self, class: SccClass) -> usize {
        self.classes.iter().filter(|c| **c == class).count()
    }

    /// No SCC is a NAC.
    pub fn is_elevator(&self) -> bool {
        !self.classes.contains(&SccClass::Nac)
    }
}

/// Classifies every SCC of a Büchi automaton.
///
/// The automaton is expected to be color-normalized; colors on transitions
/// between different SCCs are ignored either way.
pub fn classify(a: &Sgra) -> Result<SccInfo> {
    if !a.is_buchi() {
        return Err(Error::Contract(format!(
            "classification needs a Büchi automaton, got {}",
            a.acceptance_formula()
        )));
    }
    let decomposition = sccs(a);
    let n = a.num_states();
    let mut flags = Vec::with_capacity(decomposition.len());
    let mut classes = Vec::with_capacity(decomposition.len());
    for scc in 0..decomposition.len() {
        let members = decomposition.members(scc);
        let inside = |q: StateId| decomposition.scc_of(q) == scc;
        let internal = || {
            members
                .iter()
                .flat_map(|&q| a.outgoing(q))
                .filter(|t| inside(t.dst))
        };
        let trivial = decomposition.is_trivial(scc);
        let accepting = internal().any(|t| t.colors.contains(1));
        debug_assert!(!(trivial && accepting));

        // Non-accepting cycles inside the SCC exist iff the uncolored
        // internal subgraph has a non-trivial component.
        let local: Vec<usize> = {
            let mut v = vec![usize::MAX; n];
            for (i, &q) in members.iter().enumerate() {
                v[q] = i;
            }
            v
        };
        let uncolored_cyclic = {
            let comps = tarjan(members.len(), |i| {
                a.outgoing(members[i])
                    .iter()
                    .filter(|t| inside(t.dst) && !t.colors.contains(1))
                    .map(|t| local[t.dst])
                    .collect::<Vec<_>>()
            });
            comps.iter().any(|c| {
                c.len() > 1
                    || a.outgoing(members[c[0]])
                        .iter()
                        .any(|t| t.dst == members[c[0]] && !t.colors.contains(1))
            })
        };
        let inherently_weak = !accepting || !uncolored_cyclic;
        let deterministic = members.iter().all(|&q| {
            a.letters()
                .all(|l| distinct_targets(a, q, l, inside) <= 1)
        });

        let (initial_deterministic, initial_almost_deterministic) = if accepting {
            initial_determinism(a, &decomposition, scc)
        } else {
            (false, false)
        };

        let class = if !accepting {
            SccClass::NonAccepting
        } else if initial_almost_deterministic {
            SccClass::Iadac
        } else if inherently_weak {
            SccClass::Iwac
        } else if deterministic {
            SccClass::Dac
        } else {
            SccClass::Nac
        };
        flags.push(SccFlags {
            trivial,
            accepting,
            inherently_weak,
            deterministic,
            initial_deterministic,
            initial_almost_deterministic,
        });
        classes.push(class);
    }
    Ok(SccInfo {
        decomposition,
        flags,
        classes,
    })
}

fn distinct_targets(a: &Sgra, q: StateId, letter: usize, keep: impl Fn(StateId) -> bool) -> usize {
    let mut targets: Vec<StateId> = a
        .successors(q, letter)
        .iter()
        .map(|t| t.dst)
        .filter(|p| keep(*p))
        .collect();
    targets.dedup();
    targets.len()
}

/// Initial (almost) determinism of accepting SCC `scc`, evaluated on the
/// automaton with accepting transitions outside `scc` dropped and useless
/// states removed. Every state of a non-trivial accepting SCC lies on an
/// accepting cycle, so the useful states are exactly those reaching `scc`.
fn initial_determinism(a: &Sgra, decomposition: &SccDecomposition, scc: usize) -> (bool, bool) {
    let n = a.num_states();
    let mut predecessors = vec![Vec::new(); n];
    for t in a.transitions() {
        predecessors[t.dst].push(t.src);
    }
    let mut useful = StateSet::new(n);
    let mut queue: Vec<StateId> = decomposition.members(scc).to_vec();
    for &q in &queue {
        useful.insert(q);
    }
    while let Some(q) = queue.pop() {
        for &p in &predecessors[q] {
            if useful.insert(p) {
                queue.push(p);
            }
        }
    }
    let useful_initial = a.initial().iter().filter(|q| useful.contains(**q)).count();
    let mut deterministic = useful_initial <= 1;
    let mut almost = true;
    for q in useful.iter() {
        for letter in a.letters() {
            let mut targets: Vec<StateId> = a
                .successors(q, letter)
                .iter()
                .map(|t| t.dst)
                .filter(|p| useful.contains(*p))
                .collect();
            targets.dedup();
            if targets.len() > 1 {
                deterministic = false;
                let own = decomposition.scc_of(q);
                if targets.iter().any(|p| decomposition.scc_of(*p) == own) {
                    almost = false;
                }
            }
        }
    }
    (deterministic, almost)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BlockKind {
    Iadac,
    Iwac,
    Dac,
    Nac,
}

impl fmt::Display for BlockKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BlockKind::Iadac => "iadac",
            BlockKind::Iwac => "iwac",
            BlockKind::Dac => "dac",
            BlockKind::Nac => "nac",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub kind: BlockKind,
    pub states: StateSet,
}

/// Ordered, pairwise disjoint blocks covering every accepting SCC.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partitioning {
    pub blocks: Vec<Block>,
}

impl Partitioning {
    pub fn count(&self, kind: BlockKind) -> usize {
        self.blocks.iter().filter(|b| b.kind == kind).count()
    }
}

/// One block for all IADACs, one for all IWACs, one for all DACs and one
/// per NAC, in that order; NACs ordered by smallest state id.
pub fn build_partitioning(info: &SccInfo) -> Partitioning {
    let n = info.decomposition.scc_of.len();
    let mut blocks = Vec::new();
    for (kind, class) in [
        (BlockKind::Iadac, SccClass::Iadac),
        (BlockKind::Iwac, SccClass::Iwac),
        (BlockKind::Dac, SccClass::Dac),
    ] {
        let states = StateSet::from_iter_with(
            n,
            (0..info.decomposition.len())
                .filter(|s| info.classes[*s] == class)
                .flat_map(|s| info.decomposition.members(s).iter().copied()),
        );
        if !states.is_empty() {
            blocks.push(Block { kind, states });
        }
    }
    blocks.extend(nac_blocks(info, |c| c == SccClass::Nac));
    Partitioning { blocks }
}

/// Every accepting SCC as its own NAC block.
pub fn mono_nac_partitioning(info: &SccInfo) -> Partitioning {
    Partitioning {
        blocks: nac_blocks(info, |c| c != SccClass::NonAccepting),
    }
}

fn nac_blocks(info: &SccInfo, select: impl Fn(SccClass) -> bool) -> Vec<Block> {
    let n = info.decomposition.scc_of.len();
    let mut sccs: Vec<usize> = (0..info.decomposition.len())
        .filter(|s| select(info.classes[*s]))
        .collect();
    sccs.sort_by_key(|s| info.decomposition.members(*s)[0]);
    sccs.into_iter()
        .map(|s| Block {
            kind: BlockKind::Nac,
            states: StateSet::from_iter_with(n, info.decomposition.members(s).iter().copied()),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::{Alphabet, ColorSet, Transition};

    fn t(src: usize, letter: usize, dst: usize, acc: bool) -> Transition {
        let colors = if acc { ColorSet::singleton(1) } else { ColorSet::EMPTY };
        Transition::new(src, letter, dst, colors)
    }

    fn ba(letters: usize, states: usize, ts: &[Transition]) -> Sgra {
        Sgra::buchi(Alphabet::anonymous(letters), states, [0], ts.iter().copied()).unwrap()
    }

    fn aut_loop() -> Sgra {
        ba(1, 1, &[t(0, 0, 0, true)])
    }

    fn aut_fin_a() -> Sgra {
        ba(2, 1, &[t(0, 0, 0, true), t(0, 1, 0, false)])
    }

    fn aut_iwac() -> Sgra {
        ba(1, 2, &[t(0, 0, 0, false), t(0, 0, 1, false), t(1, 0, 1, true)])
    }

    fn aut_nac() -> Sgra {
        ba(1, 2, &[t(0, 0, 0, false), t(0, 0, 1, true), t(1, 0, 0, false)])
    }

    #[test]
    fn tarjan_orders_sinks_first() {
        let comps = tarjan(3, |v| if v < 2 { vec![v + 1] } else { vec![] });
        assert_eq!(comps, vec![vec![2], vec![1], vec![0]]);
    }

    #[test]
    fn raw_sccs() {
        let d = sccs(&aut_loop());
        assert_eq!(d.len(), 1);
        assert!(!d.is_trivial(0));

        let chain = ba(1, 3, &[t(0, 0, 1, false), t(1, 0, 2, false)]);
        let d = sccs(&chain);
        assert_eq!(d.len(), 3);
        assert!((0..3).all(|s| d.is_trivial(s)));
        // sources first
        assert_eq!(d.scc_of(0), 0);
        assert_eq!(d.scc_of(2), 2);

        let d = sccs(&aut_iwac());
        assert_eq!(d.len(), 2);
        assert_ne!(d.scc_of(0), d.scc_of(1));
        assert!(!d.is_trivial(0) && !d.is_trivial(1));
    }

    #[test]
    fn classify_fin_a() {
        let info = classify(&aut_fin_a()).unwrap();
        let f = info.flags[0];
        assert!(f.accepting && !f.inherently_weak && f.deterministic);
        assert!(f.initial_deterministic && f.initial_almost_deterministic);
        assert_eq!(info.classes, vec![SccClass::Iadac]);
        assert!(info.is_elevator());
        let p = build_partitioning(&info);
        assert_eq!(p.blocks.len(), 1);
        assert_eq!(p.blocks[0].kind, BlockKind::Iadac);
        assert_eq!(p.blocks[0].states.iter().collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn classify_iwac() {
        let info = classify(&aut_iwac()).unwrap();
        assert_eq!(info.class_of_state(1), SccClass::Iwac);
        assert_eq!(info.class_of_state(0), SccClass::NonAccepting);
        let q = info.decomposition.scc_of(1);
        assert!(info.flags[q].inherently_weak);
        assert!(!info.flags[q].initial_almost_deterministic);
    }

    #[test]
    fn classify_nac() {
        let info = classify(&aut_nac()).unwrap();
        assert_eq!(info.classes, vec![SccClass::Nac]);
        assert!(!info.flags[0].deterministic && !info.flags[0].inherently_weak);
        assert!(!info.is_elevator());
        let p = build_partitioning(&info);
        assert_eq!(p.blocks.len(), 1);
        assert_eq!(p.blocks[0].kind, BlockKind::Nac);
        assert_eq!(p.blocks[0].states.iter().collect::<Vec<_>>(), vec![0, 1]);
    }

    #[test]
    fn no_accepting_scc_is_elevator() {
        let a = ba(1, 1, &[t(0, 0, 0, false)]);
        let info = classify(&a).unwrap();
        assert!(info.is_elevator());
        assert!(build_partitioning(&info).blocks.is_empty());
    }

    #[test]
    fn two_nacs_make_two_blocks() {
        // two disjoint copies of AUT_NAC reachable from a fresh initial state 4
        let a = Sgra::buchi(
            Alphabet::anonymous(1),
            5,
            [4],
            [
                t(0, 0, 0, false),
                t(0, 0, 1, true),
                t(1, 0, 0, false),
                t(2, 0, 2, false),
                t(2, 0, 3, true),
                t(3, 0, 2, false),
                t(4, 0, 0, false),
                t(4, 0, 2, false),
            ],
        )
        .unwrap();
        let info = classify(&a).unwrap();
        assert_eq!(info.count(SccClass::Nac), 2);
        let p = build_partitioning(&info);
        assert_eq!(p.blocks.len(), 2);
        assert_eq!(p.blocks[0].states.iter().collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(p.blocks[1].states.iter().collect::<Vec<_>>(), vec![2, 3]);
    }

    #[test]
    fn classify_requires_buchi() {
        let a = Sgra::new(Alphabet::anonymous(1), 1, [0], [], 3, true).unwrap();
        assert!(classify(&a).is_err());
    }

    #[test]
    fn mono_partitioning_uses_nac_blocks() {
        let info = classify(&aut_fin_a()).unwrap();
        let p = mono_nac_partitioning(&info);
        assert_eq!(p.blocks.len(), 1);
        assert_eq!(p.blocks[0].kind, BlockKind::Nac);
    }
}

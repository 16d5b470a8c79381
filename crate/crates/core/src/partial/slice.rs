use crate::automaton::{Letter, Sgra};
use crate::stateset::StateSet;

/// Slice-based construction for one NAC block `P`.
///
/// The macrostate is a level of the reduced split tree of the runs inside
/// `P`: an ordered list of disjoint sets. Successors of a set reached through
/// an accepting transition form its left child, the others its right child,
/// and a state keeps only its leftmost occurrence. A run-free source node
/// collects the states entering `P` from outside.
///
/// An accepting run inside `P` exists iff some infinite branch of the tree
/// turns left infinitely often. After waiting, the algorithm guesses once
/// which nodes lie on infinite branches (`Infinite`) and which die out
/// (`Dying`); left children of infinite nodes must die, and a breakpoint
/// over the dying nodes checks that they do. The block's Inf color is
/// emitted whenever no dying node is tracked.
#[derive(Clone, Debug)]
pub struct SliceAlg {
    block: StateSet,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SliceLabel {
    Unlabeled,
    Infinite,
    Dying,
    /// Dying and tracked since the last breakpoint.
    Tracked,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SliceNode {
    pub states: StateSet,
    pub source: bool,
    pub label: SliceLabel,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SliceMacro {
    pub nodes: Vec<SliceNode>,
}

impl SliceMacro {
    pub fn is_labeled(&self) -> bool {
        self.nodes.iter().any(|n| n.label != SliceLabel::Unlabeled)
    }

    fn has_tracked(&self) -> bool {
        self.nodes.iter().any(|n| n.label == SliceLabel::Tracked)
    }
}

struct Child {
    states: StateSet,
    source: bool,
    parent: usize,
    left: bool,
}

impl SliceAlg {
    pub fn new(block: StateSet) -> Self {
        SliceAlg { block }
    }

    pub fn block(&self) -> &StateSet {
        &self.block
    }

    pub fn init(&self, top: &StateSet) -> SliceMacro {
        SliceMacro {
            nodes: vec![SliceNode {
                states: top.intersection(&self.block),
                source: true,
                label: SliceLabel::Unlabeled,
            }],
        }
    }

    fn children(&self, ba: &Sgra, top: &StateSet, m: &SliceMacro, letter: Letter) -> Vec<Child> {
        let n = top.capacity();
        let mut entries = ba.post(&top.difference(&self.block), letter);
        entries.intersect_with(&self.block);
        let mut placed = StateSet::new(n);
        let mut out = Vec::with_capacity(2 * m.nodes.len());
        for (i, node) in m.nodes.iter().enumerate() {
            let mut left = StateSet::new(n);
            let mut right = StateSet::new(n);
            for q in node.states.iter() {
                for t in ba.successors(q, letter) {
                    if !self.block.contains(t.dst) || placed.contains(t.dst) {
                        continue;
                    }
                    if t.colors.contains(1) {
                        left.insert(t.dst);
                    } else {
                        right.insert(t.dst);
                    }
                }
            }
            if node.source {
                right.union_with(&entries);
                right.difference_with(&placed);
            }
            right.difference_with(&left);
            placed.union_with(&left);
            placed.union_with(&right);
            if !left.is_empty() {
                out.push(Child {
                    states: left,
                    source: false,
                    parent: i,
                    left: true,
                });
            }
            if !right.is_empty() || node.source {
                out.push(Child {
                    states: right,
                    source: node.source,
                    parent: i,
                    left: false,
                });
            }
        }
        out
    }

    pub fn succ(&self, ba: &Sgra, top: &StateSet, m: &SliceMacro, letter: Letter) -> Vec<(SliceMacro, bool)> {
        let children = self.children(ba, top, m, letter);
        if !m.is_labeled() {
            let waiting = SliceMacro {
                nodes: children
                    .iter()
                    .map(|c| SliceNode {
                        states: c.states.clone(),
                        source: c.source,
                        label: SliceLabel::Unlabeled,
                    })
                    .collect(),
            };
            let free: Vec<usize> = (0..children.len()).filter(|&i| !children[i].source).collect();
            assert!(free.len() < 32, "too many slices to guess labels");
            let mut out = Vec::with_capacity(1 + (1 << free.len()));
            out.push((waiting, false));
            for mask in 0u32..(1u32 << free.len()) {
                let mut nodes: Vec<SliceNode> = children
                    .iter()
                    .map(|c| SliceNode {
                        states: c.states.clone(),
                        source: c.source,
                        label: SliceLabel::Infinite,
                    })
                    .collect();
                for (bit, &i) in free.iter().enumerate() {
                    if mask >> bit & 1 == 1 {
                        nodes[i].label = SliceLabel::Dying;
                    }
                }
                out.push((SliceMacro { nodes }, false));
            }
            return out;
        }
        let emit = !m.has_tracked();
        let nodes = children
            .into_iter()
            .map(|c| {
                let label = match (m.nodes[c.parent].label, c.left) {
                    (SliceLabel::Infinite, false) => SliceLabel::Infinite,
                    (SliceLabel::Tracked, _) => SliceLabel::Tracked,
                    _ if emit => SliceLabel::Tracked,
                    _ => SliceLabel::Dying,
                };
                SliceNode {
                    states: c.states,
                    source: c.source,
                    label,
                }
            })
            .collect();
        vec![(SliceMacro { nodes }, emit)]
    }

    pub fn check(&self, top: &StateSet, m: &SliceMacro) -> Vec<String> {
        let mut errors = Vec::new();
        let mut union = StateSet::new(top.capacity());
        for node in &m.nodes {
            if !union.is_disjoint(&node.states) {
                errors.push(format!("slice: overlapping node {:?}", node.states));
            }
            union.union_with(&node.states);
            if node.states.is_empty() && !node.source {
                errors.push("slice: empty node".into());
            }
            if node.source && m.is_labeled() && node.label != SliceLabel::Infinite {
                errors.push("slice: source node not infinite".into());
            }
        }
        if m.nodes.iter().filter(|n| n.source).count() != 1 {
            errors.push("slice: source node not unique".into());
        }
        if m.is_labeled() && m.nodes.iter().any(|n| n.label == SliceLabel::Unlabeled) {
            errors.push("slice: partially labeled level".into());
        }
        if union != top.intersection(&self.block) {
            errors.push(format!(
                "slice: nodes cover {:?} instead of {:?}",
                union,
                top.intersection(&self.block)
            ));
        }
        errors
    }

    /// Labels persist: a labeled level only has labeled successors.
    pub fn check_step(&self, m: &SliceMacro, next: &SliceMacro) -> Vec<String> {
        if m.is_labeled() && !next.is_labeled() {
            vec!["slice: labels dropped".into()]
        } else {
            Vec::new()
        }
    }
}

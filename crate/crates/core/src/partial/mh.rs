use crate::automaton::{Letter, Sgra};
use crate::stateset::StateSet;

/// Miyano–Hayashi breakpoint construction for the block of inherently weak
/// accepting SCCs.
#[derive(Clone, Debug)]
pub struct MhAlg {
    block: StateSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MhMacro {
    pub brk: StateSet,
}

impl MhAlg {
    pub fn new(block: StateSet) -> Self {
        MhAlg { block }
    }

    pub fn block(&self) -> &StateSet {
        &self.block
    }

    pub fn init(&self, top: &StateSet) -> MhMacro {
        MhMacro {
            brk: top.intersection(&self.block),
        }
    }

    pub fn succ(&self, ba: &Sgra, top: &StateSet, m: &MhMacro, letter: Letter) -> (MhMacro, bool) {
        let emit = m.brk.is_empty();
        let source = if emit { top } else { &m.brk };
        let mut brk = ba.post(source, letter);
        brk.intersect_with(&self.block);
        (MhMacro { brk }, emit)
    }

    pub fn check(&self, top: &StateSet, m: &MhMacro) -> Vec<String> {
        let mut errors = Vec::new();
        if !m.brk.is_subset(&self.block) {
            errors.push(format!("mh: breakpoint {:?} leaves the block", m.brk));
        }
        if !m.brk.is_subset(top) {
            errors.push(format!("mh: breakpoint {:?} not reached", m.brk));
        }
        errors
    }
}

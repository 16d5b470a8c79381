//! Partial complementation algorithms, one per partition block.
//!
//! Each algorithm sees the global reached set `top` (all states of the input
//! automaton reached so far) together with its own partial macrostate, and
//! produces successor macrostates paired with a flag telling whether the
//! block's color is emitted on the step. The IADAC algorithm emits a Fin
//! color, all others an Inf color.

mod csb;
mod iadac;
mod mh;
mod rank;
mod slice;

pub use csb::{CsbAlg, CsbMacro};
pub use iadac::{IadacAlg, IadacMacro};
pub use mh::{MhAlg, MhMacro};
pub use rank::{RankAlg, RankMacro};
pub use slice::{SliceAlg, SliceLabel, SliceMacro, SliceNode};

use crate::automaton::{Letter, Sgra};
use crate::scc::{Block, BlockKind, SccDecomposition};
use crate::stateset::StateSet;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PartialMacrostate {
    Iadac(IadacMacro),
    Mh(MhMacro),
    Csb(CsbMacro),
    Rank(RankMacro),
    Slice(SliceMacro),
}

#[derive(Clone, Debug)]
pub enum PartialAlg {
    Iadac(IadacAlg),
    Mh(MhAlg),
    Csb(CsbAlg),
    Rank(RankAlg),
    Slice(SliceAlg),
}

/// Partial algorithm used for NAC blocks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum NacAlgorithm {
    #[default]
    Slice,
    Rank,
}

impl PartialAlg {
    pub fn for_block(ba: &Sgra, sccs: &SccDecomposition, block: &Block, nac: NacAlgorithm) -> Self {
        let states = block.states.clone();
        match block.kind {
            BlockKind::Iadac => PartialAlg::Iadac(IadacAlg::new(states)),
            BlockKind::Iwac => PartialAlg::Mh(MhAlg::new(states)),
            BlockKind::Dac => PartialAlg::Csb(CsbAlg::new(ba, sccs, states)),
            BlockKind::Nac => match nac {
                NacAlgorithm::Slice => PartialAlg::Slice(SliceAlg::new(states)),
                NacAlgorithm::Rank => PartialAlg::Rank(RankAlg::new(states)),
            },
        }
    }

    pub fn kind(&self) -> BlockKind {
        match self {
            PartialAlg::Iadac(_) => BlockKind::Iadac,
            PartialAlg::Mh(_) => BlockKind::Iwac,
            PartialAlg::Csb(_) => BlockKind::Dac,
            PartialAlg::Rank(_) | PartialAlg::Slice(_) => BlockKind::Nac,
        }
    }

    /// Whether the emitted color is a Fin color.
    pub fn emits_fin(&self) -> bool {
        matches!(self, PartialAlg::Iadac(_))
    }

    pub fn init(&self, top: &StateSet) -> Vec<PartialMacrostate> {
        match self {
            PartialAlg::Iadac(alg) => vec![PartialMacrostate::Iadac(alg.init(top))],
            PartialAlg::Mh(alg) => vec![PartialMacrostate::Mh(alg.init(top))],
            PartialAlg::Csb(alg) => vec![PartialMacrostate::Csb(alg.init(top))],
            PartialAlg::Rank(alg) => vec![PartialMacrostate::Rank(alg.init(top))],
            PartialAlg::Slice(alg) => vec![PartialMacrostate::Slice(alg.init(top))],
        }
    }

    /// Successors of `m` on `letter`; `top` is the reached set before the step.
    pub fn succ(
        &self,
        ba: &Sgra,
        top: &StateSet,
        m: &PartialMacrostate,
        letter: Letter,
    ) -> Vec<(PartialMacrostate, bool)> {
        match (self, m) {
            (PartialAlg::Iadac(alg), PartialMacrostate::Iadac(m)) => {
                let (next, emit) = alg.succ(ba, top, m, letter);
                vec![(PartialMacrostate::Iadac(next), emit)]
            }
            (PartialAlg::Mh(alg), PartialMacrostate::Mh(m)) => {
                let (next, emit) = alg.succ(ba, top, m, letter);
                vec![(PartialMacrostate::Mh(next), emit)]
            }
            (PartialAlg::Csb(alg), PartialMacrostate::Csb(m)) => alg
                .succ(ba, top, m, letter)
                .into_iter()
                .map(|(m, e)| (PartialMacrostate::Csb(m), e))
                .collect(),
            (PartialAlg::Rank(alg), PartialMacrostate::Rank(m)) => alg
                .succ(ba, top, m, letter)
                .into_iter()
                .map(|(m, e)| (PartialMacrostate::Rank(m), e))
                .collect(),
            (PartialAlg::Slice(alg), PartialMacrostate::Slice(m)) => alg
                .succ(ba, top, m, letter)
                .into_iter()
                .map(|(m, e)| (PartialMacrostate::Slice(m), e))
                .collect(),
            _ => panic!("partial macrostate does not belong to this algorithm"),
        }
    }

    /// Structural invariants of a macrostate reached with global set `top`.
    pub fn check(&self, top: &StateSet, m: &PartialMacrostate) -> Vec<String> {
        match (self, m) {
            (PartialAlg::Iadac(alg), PartialMacrostate::Iadac(m)) => alg.check(top, m),
            (PartialAlg::Mh(alg), PartialMacrostate::Mh(m)) => alg.check(top, m),
            (PartialAlg::Csb(alg), PartialMacrostate::Csb(m)) => alg.check(top, m),
            (PartialAlg::Rank(alg), PartialMacrostate::Rank(m)) => alg.check(top, m),
            (PartialAlg::Slice(alg), PartialMacrostate::Slice(m)) => alg.check(top, m),
            _ => vec!["partial macrostate does not belong to this algorithm".into()],
        }
    }

    /// Invariants relating a macrostate to one of its successors.
    pub fn check_step(
        &self,
        ba: &Sgra,
        m: &PartialMacrostate,
        letter: Letter,
        next: &PartialMacrostate,
    ) -> Vec<String> {
        match (self, m, next) {
            (PartialAlg::Rank(alg), PartialMacrostate::Rank(m), PartialMacrostate::Rank(n)) => {
                alg.check_step(ba, m, letter, n)
            }
            (PartialAlg::Slice(alg), PartialMacrostate::Slice(m), PartialMacrostate::Slice(n)) => {
                alg.check_step(m, n)
            }
            _ => Vec::new(),
        }
    }

    /// Whether a step on `letter` may legitimately have no successor.
    pub fn may_block(&self, ba: &Sgra, m: &PartialMacrostate, letter: Letter) -> bool {
        match (self, m) {
            (PartialAlg::Csb(alg), PartialMacrostate::Csb(m)) => alg.blocks(ba, m, letter),
            _ => false,
        }
    }
}

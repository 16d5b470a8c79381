use crate::automaton::{Letter, Sgra};
use crate::stateset::StateSet;

/// Subset construction over the IADAC block that raises the Fin color
/// whenever a tracked state takes an accepting transition.
#[derive(Clone, Debug)]
pub struct IadacAlg {
    block: StateSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IadacMacro {
    pub tracked: StateSet,
}

impl IadacAlg {
    pub fn new(block: StateSet) -> Self {
        IadacAlg { block }
    }

    pub fn block(&self) -> &StateSet {
        &self.block
    }

    pub fn init(&self, top: &StateSet) -> IadacMacro {
        IadacMacro {
            tracked: top.intersection(&self.block),
        }
    }

    pub fn succ(&self, ba: &Sgra, top: &StateSet, m: &IadacMacro, letter: Letter) -> (IadacMacro, bool) {
        let emit = m
            .tracked
            .iter()
            .any(|q| ba.successors(q, letter).iter().any(|t| t.colors.contains(1)));
        let mut tracked = ba.post(top, letter);
        tracked.intersect_with(&self.block);
        (IadacMacro { tracked }, emit)
    }

    pub fn check(&self, top: &StateSet, m: &IadacMacro) -> Vec<String> {
        if m.tracked == top.intersection(&self.block) {
            Vec::new()
        } else {
            vec![format!("iadac: tracked {:?} differs from reached states in block", m.tracked)]
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::{Alphabet, ColorSet, Transition};

    fn fin_a() -> Sgra {
        Sgra::buchi(
            Alphabet::anonymous(2),
            1,
            [0],
            [
                Transition::new(0, 0, 0, ColorSet::singleton(1)),
                Transition::new(0, 1, 0, ColorSet::EMPTY),
            ],
        )
        .unwrap()
    }

    #[test]
    fn fin_a_steps() {
        let ba = fin_a();
        let alg = IadacAlg::new(StateSet::from_iter_with(1, [0]));
        let top = StateSet::from_iter_with(1, [0]);
        let m = alg.init(&top);
        assert_eq!(m.tracked, top);
        let (next, emit) = alg.succ(&ba, &top, &m, 0);
        assert!(emit);
        assert_eq!(next.tracked, top);
        let (next, emit) = alg.succ(&ba, &top, &m, 1);
        assert!(!emit);
        assert_eq!(next.tracked, top);
    }

    #[test]
    fn empty_tracked_never_emits() {
        // 1 -a-> 0 enters the block; 0 has a colored loop
        let ba = Sgra::buchi(
            Alphabet::anonymous(1),
            2,
            [1],
            [
                Transition::new(0, 0, 0, ColorSet::singleton(1)),
                Transition::new(1, 0, 0, ColorSet::EMPTY),
            ],
        )
        .unwrap();
        let alg = IadacAlg::new(StateSet::from_iter_with(2, [0]));
        let top = StateSet::from_iter_with(2, [1]);
        let m = alg.init(&top);
        assert!(m.tracked.is_empty());
        let (next, emit) = alg.succ(&ba, &top, &m, 0);
        assert!(!emit);
        assert_eq!(next.tracked.iter().collect::<Vec<_>>(), vec![0]);
    }
}

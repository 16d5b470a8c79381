use crate::automaton::{Letter, Sgra, StateId};
use crate::stateset::StateSet;

const UNRANKED: u8 = u8::MAX;

/// Rank-based breakpoint construction for one NAC block `P`.
///
/// Every reached state of `P` carries a rank in `0..=2|P|`. Ranks never
/// increase along transitions inside `P`, and an accepting transition
/// leaving an odd rank must strictly decrease it. Obligations track
/// even-ranked runs since the last breakpoint; the block's Inf color is
/// emitted whenever the obligation set is empty.
///
/// A successor ranks each state `p` with its maximal legal rank `f_max(p)`,
/// or with `f_max(p) - 1` when `f_max(p)` is even and the step is a
/// breakpoint or `p` is reached from an obligation. Odd ranks only drop when
/// forced by an accepting transition.
#[derive(Clone, Debug)]
pub struct RankAlg {
    block: StateSet,
    members: Vec<StateId>,
    local: Vec<usize>,
    max_rank: u8,
}

/// Ranks are indexed by position in the block's sorted member list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RankMacro {
    pub ranks: Box<[u8]>,
    pub obligations: StateSet,
}

impl RankMacro {
    pub fn rank(&self, local: usize) -> Option<u8> {
        match self.ranks[local] {
            UNRANKED => None,
            r => Some(r),
        }
    }
}

impl RankAlg {
    pub fn new(block: StateSet) -> Self {
        let members: Vec<StateId> = block.iter().collect();
        assert!(members.len() < 127, "NAC block too large for 8-bit ranks");
        let mut local = vec![usize::MAX; block.capacity()];
        for (i, &q) in members.iter().enumerate() {
            local[q] = i;
        }
        let max_rank = (2 * members.len()) as u8;
        RankAlg {
            block,
            members,
            local,
            max_rank,
        }
    }

    pub fn block(&self) -> &StateSet {
        &self.block
    }

    pub fn max_rank(&self) -> u8 {
        self.max_rank
    }

    /// Rank of global state `q`, if it is a ranked member of the block.
    pub fn rank_of(&self, m: &RankMacro, q: StateId) -> Option<u8> {
        match self.local.get(q) {
            Some(&i) if i != usize::MAX => m.rank(i),
            _ => None,
        }
    }

    pub fn init(&self, top: &StateSet) -> RankMacro {
        let mut ranks = vec![UNRANKED; self.members.len()].into_boxed_slice();
        for q in top.iter() {
            if self.block.contains(q) {
                ranks[self.local[q]] = self.max_rank;
            }
        }
        RankMacro {
            ranks,
            obligations: StateSet::new(top.capacity()),
        }
    }

    /// Pointwise upper bound on successor ranks; `UNRANKED` outside the
    /// reached part of the block.
    fn max_ranking(&self, ba: &Sgra, top: &StateSet, m: &RankMacro, letter: Letter) -> Vec<u8> {
        let mut bound = vec![UNRANKED; self.members.len()];
        for q in top.iter() {
            let from = self.rank_of(m, q);
            for t in ba.successors(q, letter) {
                if !self.block.contains(t.dst) {
                    continue;
                }
                let slot = &mut bound[self.local[t.dst]];
                let cap = match from {
                    // entry from outside the block
                    None => self.max_rank,
                    Some(r) if t.colors.contains(1) && r % 2 == 1 => r - 1,
                    Some(r) => r,
                };
                *slot = if *slot == UNRANKED { cap } else { (*slot).min(cap) };
            }
        }
        bound
    }

    pub fn succ(&self, ba: &Sgra, top: &StateSet, m: &RankMacro, letter: Letter) -> Vec<(RankMacro, bool)> {
        let bound = self.max_ranking(ba, top, m, letter);
        let n = top.capacity();
        let emit = m.obligations.is_empty();
        // states reached from the obligations through the block
        let from_obligations = if emit {
            None
        } else {
            let mut s = ba.post(&m.obligations, letter);
            s.intersect_with(&self.block);
            Some(s)
        };
        let choices: Vec<usize> = (0..bound.len())
            .filter(|&i| bound[i] != UNRANKED && bound[i] > 0 && bound[i].is_multiple_of(2))
            .filter(|&i| from_obligations.as_ref().is_none_or(|s| s.contains(self.members[i])))
            .collect();
        let mut out = Vec::with_capacity(1 << choices.len());
        for mask in 0u64..(1u64 << choices.len()) {
            let mut ranks = bound.clone();
            for (bit, &i) in choices.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    ranks[i] -= 1;
                }
            }

            let mut obligations = StateSet::new(n);
            for (i, &r) in ranks.iter().enumerate() {
                let q = self.members[i];
                let tracked = match &from_obligations {
                    None => true,
                    Some(s) => s.contains(q),
                };
                if r != UNRANKED && r % 2 == 0 && tracked {
                    obligations.insert(q);
                }
            }
            out.push((
                RankMacro {
                    ranks: ranks.into_boxed_slice(),
                    obligations,
                },
                emit,
            ));
        }
        out
    }

    pub fn check(&self, top: &StateSet, m: &RankMacro) -> Vec<String> {
        let mut errors = Vec::new();
        for (i, &q) in self.members.iter().enumerate() {
            match m.rank(i) {
                Some(r) if r > self.max_rank => {
                    errors.push(format!("rank: state {q} has rank {r} above {}", self.max_rank))
                }
                Some(_) if !top.contains(q) => errors.push(format!("rank: unreached state {q} ranked")),
                None if top.contains(q) => errors.push(format!("rank: reached state {q} unranked")),
                _ => {}
            }
        }
        for q in m.obligations.iter() {
            match self.rank_of(m, q) {
                Some(r) if r % 2 == 0 => {}
                other => errors.push(format!("rank: obligation {q} has rank {other:?}")),
            }
        }
        errors
    }

    /// Ranks never increase along block transitions, and accepting
    /// transitions out of odd ranks strictly decrease.
    pub fn check_step(&self, ba: &Sgra, m: &RankMacro, letter: Letter, next: &RankMacro) -> Vec<String> {
        let mut errors = Vec::new();
        for (i, &q) in self.members.iter().enumerate() {
            let Some(r) = m.rank(i) else { continue };
            for t in ba.successors(q, letter) {
                let Some(r2) = self.rank_of(next, t.dst) else {
                    if self.block.contains(t.dst) {
                        errors.push(format!("rank: successor {} of ranked {q} unranked", t.dst));
                    }
                    continue;
                };
                if r2 > r {
                    errors.push(format!("rank: {q}({r}) -> {}({r2}) increases", t.dst));
                }
                if t.colors.contains(1) && r % 2 == 1 && r2 >= r {
                    errors.push(format!("rank: accepting {q}({r}) -> {}({r2}) keeps odd rank", t.dst));
                }
            }
        }
        errors
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::{Alphabet, ColorSet, Transition};

    fn aut_loop() -> Sgra {
        Sgra::buchi(
            Alphabet::anonymous(1),
            1,
            [0],
            [Transition::new(0, 0, 0, ColorSet::singleton(1))],
        )
        .unwrap()
    }

    #[test]
    fn single_colored_loop() {
        let ba = aut_loop();
        let alg = RankAlg::new(StateSet::from_iter_with(1, [0]));
        let top = StateSet::from_iter_with(1, [0]);
        let m = alg.init(&top);
        assert_eq!(m.rank(0), Some(2));
        let succ = alg.succ(&ba, &top, &m, 0);
        let ranks: Vec<u8> = succ.iter().map(|(n, _)| n.rank(0).unwrap()).collect();
        assert_eq!(ranks, vec![2, 1]);
        assert!(succ.iter().all(|(_, emit)| *emit));
        // from odd rank 1 the colored loop forces rank 0 or lower
        let odd = &succ[1].0;
        let next: Vec<u8> = alg
            .succ(&ba, &top, odd, 0)
            .iter()
            .map(|(n, _)| n.rank(0).unwrap())
            .collect();
        assert_eq!(next, vec![0]);
        for (n, _) in &succ {
            assert!(alg.check_step(&ba, &m, 0, n).is_empty());
            assert!(alg.check(&top, n).is_empty());
        }
    }

    #[test]
    fn unreached_block_is_vacuous() {
        let ba = aut_loop();
        let alg = RankAlg::new(StateSet::from_iter_with(1, [0]));
        let top = StateSet::new(1);
        let m = alg.init(&top);
        let succ = alg.succ(&ba, &top, &m, 0);
        assert_eq!(succ.len(), 1);
        assert!(succ[0].1);
        assert_eq!(succ[0].0, m);
    }

    #[test]
    fn even_loop_keeps_obligation() {
        let ba = aut_loop();
        let alg = RankAlg::new(StateSet::from_iter_with(1, [0]));
        let top = StateSet::from_iter_with(1, [0]);
        let m = RankMacro {
            ranks: vec![2].into_boxed_slice(),
            obligations: top.clone(),
        };
        let succ = alg.succ(&ba, &top, &m, 0);
        assert!(succ.iter().all(|(_, emit)| !emit));
        let keep = succ.iter().find(|(n, _)| n.rank(0) == Some(2)).unwrap();
        assert_eq!(keep.0.obligations, top);
        let drop = succ.iter().find(|(n, _)| n.rank(0) == Some(1)).unwrap();
        assert!(drop.0.obligations.is_empty());
    }
}

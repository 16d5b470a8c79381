use crate::automaton::{Letter, Sgra};
use crate::scc::SccDecomposition;
use crate::stateset::StateSet;

/// NCSB-style construction for the block of deterministic accepting SCCs.
///
/// Runs in the block are split into a check part `C`, whose runs may still
/// see accepting transitions, and a safe part `X`, whose runs are guessed to
/// never take an accepting transition again while they stay in their SCC.
/// `B ⊆ C` holds the breakpoint obligations.
#[derive(Clone, Debug)]
pub struct CsbAlg {
    block: StateSet,
    scc_of: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CsbMacro {
    pub check: StateSet,
    pub safe: StateSet,
    pub brk: StateSet,
}

impl CsbAlg {
    pub fn new(ba: &Sgra, sccs: &SccDecomposition, block: StateSet) -> Self {
        let scc_of = (0..ba.num_states()).map(|q| sccs.scc_of(q)).collect();
        CsbAlg { block, scc_of }
    }

    pub fn block(&self) -> &StateSet {
        &self.block
    }

    pub fn init(&self, top: &StateSet) -> CsbMacro {
        let check = top.intersection(&self.block);
        CsbMacro {
            brk: check.clone(),
            safe: StateSet::new(top.capacity()),
            check,
        }
    }

    /// A safe state takes an accepting transition on `letter`.
    pub fn blocks(&self, ba: &Sgra, m: &CsbMacro, letter: Letter) -> bool {
        m.safe
            .iter()
            .any(|q| ba.successors(q, letter).iter().any(|t| t.colors.contains(1)))
    }

    pub fn succ(&self, ba: &Sgra, top: &StateSet, m: &CsbMacro, letter: Letter) -> Vec<(CsbMacro, bool)> {
        if self.blocks(ba, m, letter) {
            return Vec::new();
        }
        let n = top.capacity();
        let mut safe_base = StateSet::new(n);
        for q in m.safe.iter() {
            for t in ba.successors(q, letter) {
                if self.scc_of[t.dst] == self.scc_of[q] {
                    safe_base.insert(t.dst);
                }
            }
        }
        let mut candidates = ba.post(top, letter);
        candidates.intersect_with(&self.block);
        candidates.difference_with(&safe_base);

        let emit = m.brk.is_empty();
        let brk_source = if emit {
            None
        } else {
            let mut b = ba.post(&m.brk, letter);
            b.intersect_with(&self.block);
            Some(b)
        };
        let cand: Vec<usize> = candidates.iter().collect();
        assert!(cand.len() < 32, "too many candidate states for the safe-set guess");
        let mut out = Vec::with_capacity(1 << cand.len());
        for mask in 0u32..(1 << cand.len()) {
            let mut check = candidates.clone();
            let mut safe = safe_base.clone();
            for (i, &q) in cand.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    check.remove(q);
                    safe.insert(q);
                }
            }
            let brk = match &brk_source {
                None => check.clone(),
                Some(b) => b.intersection(&check),
            };
            out.push((CsbMacro { check, safe, brk }, emit));
        }
        out
    }

    pub fn check(&self, top: &StateSet, m: &CsbMacro) -> Vec<String> {
        let mut errors = Vec::new();
        if !m.check.is_disjoint(&m.safe) {
            errors.push(format!("csb: C {:?} and X {:?} overlap", m.check, m.safe));
        }
        if !m.brk.is_subset(&m.check) {
            errors.push(format!("csb: B {:?} not within C {:?}", m.brk, m.check));
        }
        let mut covered = m.check.clone();
        covered.union_with(&m.safe);
        if covered != top.intersection(&self.block) {
            errors.push(format!("csb: C ∪ X = {covered:?} differs from reached block states"));
        }
        errors
    }
}

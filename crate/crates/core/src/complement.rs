//! Modular complementation: one partial algorithm per partition block,
//! synchronized over a shared letter and combined by Cartesian product.

use std::collections::{HashMap, VecDeque};

use crate::automaton::{ColorSet, Letter, Sgra, Transition};
use crate::error::{Error, Result};
use crate::partial::{NacAlgorithm, PartialAlg, PartialMacrostate};
use crate::postprocess;
use crate::scc::{self, BlockKind, Partitioning, SccInfo};
use crate::stateset::StateSet;

pub const DEFAULT_MAX_MACROSTATES: usize = 1_000_000;

/// State of the complement: the reached set plus one partial macrostate per
/// instantiated block, in block order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Macrostate {
    pub reached: StateSet,
    pub parts: Vec<PartialMacrostate>,
}

/// Color assignment: Fin color 0 for the IADAC block, Inf colors `1, 2, ...`
/// for the remaining blocks in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorPlan {
    pub block_colors: Vec<u32>,
    pub fin_used: bool,
    pub num_colors: u32,
}

impl ColorPlan {
    pub fn new(kinds: &[BlockKind]) -> Result<Self> {
        let mut next = 1;
        let mut fin_used = false;
        let mut block_colors = Vec::with_capacity(kinds.len());
        for kind in kinds {
            if *kind == BlockKind::Iadac {
                if fin_used {
                    return Err(Error::Contract("at most one IADAC block".into()));
                }
                fin_used = true;
                block_colors.push(0);
            } else {
                block_colors.push(next);
                next += 1;
            }
        }
        if next > crate::automaton::MAX_COLORS {
            return Err(Error::Capacity(format!("{} Inf colors needed", next - 1)));
        }
        Ok(ColorPlan {
            block_colors,
            fin_used,
            num_colors: next,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum NacStrategy {
    /// IADAC / IWAC / DAC / per-NAC blocks.
    #[default]
    Decompose,
    /// Every accepting SCC handled as a separate NAC block.
    MonoNac,
}

/// On-demand successor generation for the complement of a Büchi automaton.
#[derive(Clone, Debug)]
pub struct Complementer {
    ba: Sgra,
    info: SccInfo,
    partitioning: Partitioning,
    algs: Vec<PartialAlg>,
    plan: ColorPlan,
}

impl Complementer {
    /// Prepares the complement of `ba`: unreachable states are dropped and
    /// colors normalized before classification.
    pub fn new(ba: &Sgra, strategy: NacStrategy) -> Result<Self> {
        Self::with_nac(ba, strategy, NacAlgorithm::default())
    }

    pub fn with_nac(ba: &Sgra, strategy: NacStrategy, nac: NacAlgorithm) -> Result<Self> {
        if !ba.is_buchi() {
            return Err(Error::Contract(format!(
                "complementation needs a Büchi automaton, got {}",
                ba.acceptance_formula()
            )));
        }
        let ba = ba.remove_unreachable().normalize_colors();
        let info = scc::classify(&ba)?;
        let partitioning = match strategy {
            NacStrategy::Decompose => scc::build_partitioning(&info),
            NacStrategy::MonoNac => scc::mono_nac_partitioning(&info),
        };
        let algs: Vec<PartialAlg> = partitioning
            .blocks
            .iter()
            .map(|b| PartialAlg::for_block(&ba, &info.decomposition, b, nac))
            .collect();
        let kinds: Vec<BlockKind> = algs.iter().map(PartialAlg::kind).collect();
        let plan = ColorPlan::new(&kinds)?;
        Ok(Complementer {
            ba,
            info,
            partitioning,
            algs,
            plan,
        })
    }

    /// The preprocessed input automaton the macrostates refer to.
    pub fn input(&self) -> &Sgra {
        &self.ba
    }

    pub fn scc_info(&self) -> &SccInfo {
        &self.info
    }

    pub fn partitioning(&self) -> &Partitioning {
        &self.partitioning
    }

    pub fn plan(&self) -> &ColorPlan {
        &self.plan
    }

    pub fn algorithms(&self) -> &[PartialAlg] {
        &self.algs
    }

    pub fn init_macrostates(&self) -> Vec<Macrostate> {
        let reached = self.ba.initial_set();
        let mut out = vec![Macrostate {
            reached: reached.clone(),
            parts: Vec::with_capacity(self.algs.len()),
        }];
        for alg in &self.algs {
            let options = alg.init(&reached);
            out = out
                .into_iter()
                .flat_map(|m| {
                    options.iter().map(move |p| {
                        let mut m = m.clone();
                        m.parts.push(p.clone());
                        m
                    })
                })
                .collect();
        }
        out
    }

    /// All successors of `m` on `letter` with the colors emitted on the step.
    /// Empty iff some block blocks every branch.
    pub fn succ_macrostate(&self, m: &Macrostate, letter: Letter) -> Vec<(Macrostate, ColorSet)> {
        let reached = self.ba.post(&m.reached, letter);
        let mut out: Vec<(Vec<PartialMacrostate>, ColorSet)> =
            vec![(Vec::with_capacity(self.algs.len()), ColorSet::EMPTY)];
        for (i, alg) in self.algs.iter().enumerate() {
            let options = alg.succ(&self.ba, &m.reached, &m.parts[i], letter);
            if options.is_empty() {
                return Vec::new();
            }
            let color = self.plan.block_colors[i];
            let mut next = Vec::with_capacity(out.len() * options.len());
            for (parts, colors) in &out {
                for (p, emit) in &options {
                    let mut parts = parts.clone();
                    parts.push(p.clone());
                    let colors = if *emit { colors.with(color) } else { *colors };
                    next.push((parts, colors));
                }
            }
            out = next;
        }
        out.into_iter()
            .map(|(parts, colors)| {
                (
                    Macrostate {
                        reached: reached.clone(),
                        parts,
                    },
                    colors,
                )
            })
            .collect()
    }

    /// Structural invariant violations of one macrostate.
    pub fn check_macrostate(&self, m: &Macrostate) -> Vec<String> {
        let mut errors = Vec::new();
        if m.parts.len() != self.algs.len() {
            errors.push("macrostate has the wrong number of parts".to_string());
            return errors;
        }
        for (alg, part) in self.algs.iter().zip(&m.parts) {
            errors.extend(alg.check(&m.reached, part));
        }
        errors
    }

    /// Invariant violations of one step `m --letter--> succs`, including the
    /// requirement that a step may only be empty when a safe CSB run takes an
    /// accepting transition.
    pub fn check_step(&self, m: &Macrostate, letter: Letter, succs: &[(Macrostate, ColorSet)]) -> Vec<String> {
        let mut errors = Vec::new();
        if succs.is_empty() {
            let justified = self
                .algs
                .iter()
                .zip(&m.parts)
                .any(|(alg, part)| alg.may_block(&self.ba, part, letter));
            if !justified {
                errors.push(format!("macrostate {m:?} has no successor on letter {letter}"));
            }
        }
        for (next, _) in succs {
            errors.extend(self.check_macrostate(next));
            for (i, alg) in self.algs.iter().enumerate() {
                errors.extend(alg.check_step(&self.ba, &m.parts[i], letter, &next.parts[i]));
            }
        }
        errors
    }

    /// Breadth-first materialization of all reachable macrostates.
    pub fn materialize(&self, max_macrostates: usize) -> Result<Materialized> {
        let mut index: HashMap<Macrostate, usize> = HashMap::new();
        let mut states: Vec<Macrostate> = Vec::new();
        let mut queue = VecDeque::new();
        let mut initial = Vec::new();
        let mut intern = |m: Macrostate, states: &mut Vec<Macrostate>, queue: &mut VecDeque<usize>| -> Result<usize> {
            if let Some(&id) = index.get(&m) {
                return Ok(id);
            }
            if states.len() >= max_macrostates {
                return Err(Error::Capacity(format!(
                    "more than {max_macrostates} macrostates"
                )));
            }
            let id = states.len();
            index.insert(m.clone(), id);
            states.push(m);
            queue.push_back(id);
            Ok(id)
        };
        for m in self.init_macrostates() {
            initial.push(intern(m, &mut states, &mut queue)?);
        }
        let mut transitions = Vec::new();
        while let Some(id) = queue.pop_front() {
            for letter in self.ba.letters() {
                let succs = self.succ_macrostate(&states[id], letter);
                for (next, colors) in succs {
                    let dst = intern(next, &mut states, &mut queue)?;
                    transitions.push(Transition::new(id, letter, dst, colors));
                }
            }
        }
        let automaton = Sgra::new(
            self.ba.alphabet().clone(),
            states.len(),
            initial,
            transitions,
            self.plan.num_colors,
            self.plan.fin_used,
        )?;
        Ok(Materialized {
            automaton,
            macrostates: states,
        })
    }
}

/// Explicit complement together with the macrostate behind each state id.
#[derive(Clone, Debug)]
pub struct Materialized {
    pub automaton: Sgra,
    pub macrostates: Vec<Macrostate>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ComplementOptions {
    pub strategy: NacStrategy,
    pub nac: NacAlgorithm,
    pub postprocess: bool,
    pub max_macrostates: usize,
}

impl Default for ComplementOptions {
    fn default() -> Self {
        ComplementOptions {
            strategy: NacStrategy::Decompose,
            nac: NacAlgorithm::default(),
            postprocess: true,
            max_macrostates: DEFAULT_MAX_MACROSTATES,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ComplementResult {
    pub automaton: Sgra,
    /// Macrostates materialized before postprocessing.
    pub macrostates: usize,
    pub block_counts: BlockCounts,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BlockCounts {
    pub iadac: usize,
    pub iwac: usize,
    pub dac: usize,
    pub nac: usize,
}

impl BlockCounts {
    pub fn of(p: &Partitioning) -> Self {
        BlockCounts {
            iadac: p.count(BlockKind::Iadac),
            iwac: p.count(BlockKind::Iwac),
            dac: p.count(BlockKind::Dac),
            nac: p.count(BlockKind::Nac),
        }
    }
}

pub fn complement_with(ba: &Sgra, options: &ComplementOptions) -> Result<ComplementResult> {
    let complementer = Complementer::with_nac(ba, options.strategy, options.nac)?;
    let materialized = complementer.materialize(options.max_macrostates)?;
    let macrostates = materialized.macrostates.len();
    let automaton = if options.postprocess {
        postprocess::trim(&materialized.automaton)
    } else {
        materialized.automaton
    };
    Ok(ComplementResult {
        automaton,
        macrostates,
        block_counts: BlockCounts::of(complementer.partitioning()),
    })
}

/// Complement of a Büchi automaton as a trimmed SGRA.
pub fn complement(ba: &Sgra) -> Result<Sgra> {
    complement_with(ba, &ComplementOptions::default()).map(|r| r.automaton)
}

/// Complement with every accepting SCC handled as a NAC block.
pub fn complement_mono_nac(ba: &Sgra) -> Result<Sgra> {
    let options = ComplementOptions {
        strategy: NacStrategy::MonoNac,
        ..ComplementOptions::default()
    };
    complement_with(ba, &options).map(|r| r.automaton)
}

//! Complementation of Büchi automata by SCC decomposition, with lazy
//! emptiness and inclusion checks over generalized Rabin acceptance.

pub mod automaton;
pub mod complement;
pub mod emptiness;
pub mod error;
pub mod hoa;
pub mod inclusion;
pub mod oracle;
pub mod partial;
pub mod postprocess;
pub mod scc;
pub mod stateset;

pub use automaton::{Alphabet, ColorSet, Letter, Sgra, StateAccAutomaton, StateId, Transition};
pub use complement::{complement, complement_mono_nac, complement_with, ComplementOptions, ComplementResult, NacStrategy};
pub use partial::NacAlgorithm;
pub use emptiness::{is_empty, is_empty_oracle, ImplicitSgra};
pub use error::{Error, Result};
pub use inclusion::{included, included_oracle, InclusionResult};

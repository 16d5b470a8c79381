//! Removal of unreachable and useless states.

use crate::automaton::Sgra;
use crate::emptiness::accepting_component_states;
use crate::stateset::StateSet;

/// Keeps the states that are reachable from an initial state and can reach
/// an accepting component; ids are renumbered densely in their old order.
pub fn trim(a: &Sgra) -> Sgra {
    let n = a.num_states();
    let mut predecessors = vec![Vec::new(); n];
    for t in a.transitions() {
        predecessors[t.dst].push(t.src);
    }
    let mut useful = accepting_component_states(a);
    let mut stack: Vec<usize> = useful.iter().collect();
    while let Some(q) = stack.pop() {
        for &p in &predecessors[q] {
            if useful.insert(p) {
                stack.push(p);
            }
        }
    }
    let mut keep: StateSet = a.reachable();
    keep.intersect_with(&useful);
    a.induced(&keep)
}

//! Brute-force semantic tools for differential testing: lasso membership,
//! lasso enumeration and seeded random automata.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automaton::{Alphabet, ColorSet, Letter, Sgra, Transition};
use crate::error::{Error, Result};
use crate::scc::tarjan;
use crate::stateset::StateSet;

/// The ultimately periodic word `prefix · period^ω`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LassoWord {
    pub prefix: Vec<Letter>,
    pub period: Vec<Letter>,
}

impl LassoWord {
    pub fn new(prefix: Vec<Letter>, period: Vec<Letter>) -> Self {
        assert!(!period.is_empty(), "period must be nonempty");
        LassoWord { prefix, period }
    }

    /// Renders the word with the labels of `alphabet`, e.g. `a b (a)^w`.
    pub fn display(&self, alphabet: &Alphabet) -> String {
        let part = |ws: &[Letter]| ws.iter().map(|&l| alphabet.label(l)).collect::<Vec<_>>().join(" ");
        format!("{} ({})^w", part(&self.prefix), part(&self.period))
    }
}

/// Whether `a` accepts `w`.
pub fn member(a: &Sgra, w: &LassoWord) -> Result<bool> {
    if let Some(&l) = w.prefix.iter().chain(&w.period).find(|&&l| l >= a.num_letters()) {
        return Err(Error::AlphabetMismatch(format!(
            "letter {l} outside an alphabet of {} letters",
            a.num_letters()
        )));
    }
    let mut reached = a.initial_set();
    for &l in &w.prefix {
        reached = a.post(&reached, l);
    }
    let n = a.num_states();
    let p = w.period.len();
    let node = |q: usize, i: usize| q * p + i;
    let edges = |v: usize| {
        let (q, i) = (v / p, v % p);
        a.successors(q, w.period[i])
            .iter()
            .map(move |t| (node(t.dst, (i + 1) % p), t.colors))
    };
    let mut seen = StateSet::new(n * p);
    let mut stack: Vec<usize> = reached.iter().map(|q| node(q, 0)).collect();
    for &v in &stack {
        seen.insert(v);
    }
    while let Some(v) = stack.pop() {
        for (u, _) in edges(v) {
            if seen.insert(u) {
                stack.push(u);
            }
        }
    }
    let free = |v: usize| {
        let reachable = seen.contains(v);
        edges(v)
            .filter(move |(_, c)| reachable && !c.contains(0))
            .map(|(u, _)| u)
    };
    let components = tarjan(n * p, |v| free(v).collect::<Vec<_>>());
    let mut comp_of = vec![0; n * p];
    for (i, c) in components.iter().enumerate() {
        for &v in c {
            comp_of[v] = i;
        }
    }
    let required = ColorSet::inf_colors(a.num_colors());
    for (i, c) in components.iter().enumerate() {
        if !seen.contains(c[0]) {
            continue;
        }
        let mut internal = false;
        let mut colors = ColorSet::EMPTY;
        for &v in c {
            for (u, col) in edges(v) {
                if comp_of[u] == i && !col.contains(0) {
                    internal = true;
                    colors = colors.union(col);
                }
            }
        }
        if internal && colors.is_superset(required) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// All lassos with `|prefix| <= max_prefix` and `1 <= |period| <= max_period`,
/// prefixes outermost, each word list ordered by length then lexicographically.
pub fn enumerate_lassos(num_letters: usize, max_prefix: usize, max_period: usize) -> Vec<LassoWord> {
    let prefixes = words(num_letters, 0, max_prefix);
    let periods = words(num_letters, 1, max_period);
    let mut out = Vec::with_capacity(prefixes.len() * periods.len());
    for u in &prefixes {
        for v in &periods {
            out.push(LassoWord::new(u.clone(), v.clone()));
        }
    }
    out
}

fn words(num_letters: usize, min_len: usize, max_len: usize) -> Vec<Vec<Letter>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<Letter>> = vec![Vec::new()];
    for len in 0..=max_len {
        if len >= min_len {
            out.extend(layer.iter().cloned());
        }
        layer = layer
            .iter()
            .flat_map(|w| {
                (0..num_letters).map(move |l| {
                    let mut next = w.clone();
                    next.push(l);
                    next
                })
            })
            .collect();
    }
    out
}

/// Seeded random Büchi automaton: `ceil(density * n)` transitions per
/// letter with uniform endpoints, each accepting with probability
/// `acc_prob`; initial state 0; colors normalized afterwards.
pub fn random_ba(seed: u64, num_states: usize, num_letters: usize, density: f64, acc_prob: f64) -> Sgra {
    assert!(density > 0.0 && num_states > 0 && num_letters > 0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let per_letter = (density * num_states as f64).ceil() as usize;
    let mut edges: BTreeMap<(usize, Letter, usize), ColorSet> = BTreeMap::new();
    for letter in 0..num_letters {
        for _ in 0..per_letter {
            let src = rng.gen_range(0..num_states);
            let dst = rng.gen_range(0..num_states);
            let accepting = rng.gen_bool(acc_prob);
            let colors = edges.entry((src, letter, dst)).or_insert(ColorSet::EMPTY);
            if accepting {
                colors.insert(1);
            }
        }
    }
    let transitions = edges
        .into_iter()
        .map(|((src, letter, dst), colors)| Transition::new(src, letter, dst, colors));
    Sgra::buchi(Alphabet::sized(num_letters), num_states, [0], transitions)
        .expect("generated automaton is valid")
        .normalize_colors()
}

/// Seeded random deterministic Büchi automaton: each state has at most one
/// successor per letter (a missing one with probability 0.1).
pub fn random_dba(seed: u64, num_states: usize, num_letters: usize, acc_prob: f64) -> Sgra {
    assert!(num_states > 0 && num_letters > 0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut transitions = Vec::new();
    for src in 0..num_states {
        for letter in 0..num_letters {
            if rng.gen_bool(0.1) {
                continue;
            }
            let dst = rng.gen_range(0..num_states);
            let colors = if rng.gen_bool(acc_prob) {
                ColorSet::singleton(1)
            } else {
                ColorSet::EMPTY
            };
            transitions.push(Transition::new(src, letter, dst, colors));
        }
    }
    Sgra::buchi(Alphabet::sized(num_letters), num_states, [0], transitions)
        .expect("generated automaton is valid")
        .normalize_colors()
}

/// Seeded random SGRA with up to `max_states` states, `max_letters` letters
/// and `max_colors` colors; color 0 appears when Fin is drawn as used.
pub fn random_sgra(seed: u64, max_states: usize, max_letters: usize, max_colors: u32) -> Sgra {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=max_states);
    let letters = rng.gen_range(1..=max_letters);
    let k = rng.gen_range(1..=max_colors);
    let fin_used = rng.gen_bool(0.5);
    let first_color = if fin_used { 0 } else { 1 };
    let density = rng.gen_range(0.5..2.5);
    let per_letter = (density * n as f64).ceil() as usize;
    let mut transitions = Vec::new();
    for letter in 0..letters {
        for _ in 0..per_letter {
            let src = rng.gen_range(0..n);
            let dst = rng.gen_range(0..n);
            let colors: ColorSet = (first_color..k).filter(|_| rng.gen_bool(0.4)).collect();
            transitions.push(Transition::new(src, letter, dst, colors));
        }
    }
    let initial: Vec<usize> = (0..n).filter(|&q| q == 0 || rng.gen_bool(0.15)).collect();
    Sgra::new(Alphabet::anonymous(letters), n, initial, transitions, k, fin_used)
        .expect("generated automaton is valid")
}

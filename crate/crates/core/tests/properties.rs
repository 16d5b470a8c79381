use std::collections::BTreeSet;

use bacomp::oracle::{member, random_sgra, LassoWord};
use bacomp::postprocess::trim;
use bacomp::Sgra;
use proptest::prelude::*;

/// Color bitmask of a transition, with Fin color 0 kept as bit 0.
fn mask(t: &bacomp::Transition) -> u32 {
    t.colors.iter().fold(0, |m, c| m | 1 << c)
}

type Relation = BTreeSet<(usize, usize, u32)>;

fn letter_relation(a: &Sgra, letter: usize) -> Relation {
    (0..a.num_states())
        .flat_map(|q| a.outgoing(q).iter().filter(move |t| t.letter == letter))
        .map(|t| (t.src, t.dst, mask(t)))
        .collect()
}

fn compose(x: &Relation, y: &Relation) -> Relation {
    let mut out = Relation::new();
    for &(p, q, c1) in x {
        for &(q2, r, c2) in y {
            if q == q2 {
                out.insert((p, r, c1 | c2));
            }
        }
    }
    out
}

fn word_relation(a: &Sgra, word: &[usize]) -> Relation {
    let mut rel: Relation = (0..a.num_states()).map(|q| (q, q, 0)).collect();
    for &l in word {
        rel = compose(&rel, &letter_relation(a, l));
    }
    rel
}

/// Membership via the transitive closure of the period's transition
/// relation: accepted iff some state reachable after `u v^i` lies on a
/// `v^n` cycle that avoids Fin and covers every Inf color.
fn closure_member(a: &Sgra, w: &LassoWord) -> bool {
    let prefix = word_relation(a, &w.prefix);
    let period = word_relation(a, &w.period);
    let mut after: BTreeSet<usize> = prefix
        .iter()
        .filter(|(p, _, _)| a.initial().contains(p))
        .map(|&(_, q, _)| q)
        .collect();
    loop {
        let next: BTreeSet<usize> = period
            .iter()
            .filter(|(p, _, _)| after.contains(p))
            .map(|&(_, q, _)| q)
            .chain(after.iter().copied())
            .collect();
        if next == after {
            break;
        }
        after = next;
    }
    let mut plus = period.clone();
    loop {
        let next: Relation = plus.union(&compose(&plus, &period)).copied().collect();
        if next == plus {
            break;
        }
        plus = next;
    }
    let inf: u32 = (1..a.num_colors()).fold(0, |m, c| m | 1 << c);
    plus.iter().any(|&(p, q, c)| {
        p == q && after.contains(&p) && c & inf == inf && !(a.fin_used() && c & 1 == 1)
    })
}

fn word(a: &Sgra, u: &[usize], v: &[usize]) -> LassoWord {
    let n = a.num_letters();
    LassoWord::new(u.iter().map(|l| l % n).collect(), v.iter().map(|l| l % n).collect())
}

fn letters(max: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..4, 0..=max)
}

fn period() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..4, 1..=3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn period_doubling(seed in any::<u64>(), u in letters(3), v in period()) {
        let a = random_sgra(seed, 6, 3, 4);
        let w = word(&a, &u, &v);
        let doubled = LassoWord::new(w.prefix.clone(), [w.period.clone(), w.period.clone()].concat());
        prop_assert_eq!(member(&a, &w).unwrap(), member(&a, &doubled).unwrap());
    }

    #[test]
    fn prefix_rotation(seed in any::<u64>(), u in letters(3), v in period()) {
        let a = random_sgra(seed, 6, 3, 4);
        let w = word(&a, &u, &v);
        let mut prefix = w.prefix.clone();
        prefix.push(w.period[0]);
        let mut rotated = w.period.clone();
        rotated.rotate_left(1);
        prop_assert_eq!(member(&a, &w).unwrap(), member(&a, &LassoWord::new(prefix, rotated)).unwrap());
    }

    #[test]
    fn member_matches_closure_oracle(seed in any::<u64>(), u in letters(3), v in period()) {
        let a = random_sgra(seed, 3, 2, 4);
        let w = word(&a, &u, &v);
        prop_assert_eq!(member(&a, &w).unwrap(), closure_member(&a, &w));
    }

    #[test]
    fn normalize_is_idempotent(seed in any::<u64>()) {
        let a = random_sgra(seed, 8, 3, 4).normalize_colors();
        prop_assert_eq!(a.normalize_colors(), a);
    }

    #[test]
    fn trim_is_idempotent_and_keeps_language(seed in any::<u64>(), u in letters(3), v in period()) {
        let a = random_sgra(seed, 8, 3, 4);
        let t = trim(&a);
        prop_assert_eq!(trim(&t), t.clone());
        let w = word(&a, &u, &v);
        prop_assert_eq!(member(&a, &w).unwrap(), member(&t, &w).unwrap());
    }
}

//! Reading and writing automata: the HOA v1 subset with explicit
//! transition labels, and the `.ba` format.

mod ba;
mod lexer;
mod parse;
mod print;

pub use ba::{parse_ba, parse_ba_over, print_ba};
pub use parse::parse_hoa;
pub use print::print_hoa;

/// Default bound on the number of atomic propositions accepted by
/// [`parse_hoa`]; every valuation becomes a letter.
pub const DEFAULT_MAX_APS: usize = 12;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::{Alphabet, ColorSet, Sgra, Transition};
    use crate::error::Error;

    fn c(colors: &[u32]) -> ColorSet {
        colors.iter().copied().collect()
    }

    #[test]
    fn one_state_buchi() {
        let text = "HOA: v1\nStates: 1\nStart: 0\nAP: 1 \"a\"\nAcceptance: 1 Inf(0)\n--BODY--\nState: 0\n[t] 0 {0}\n--END--\n";
        let a = parse_hoa(text, DEFAULT_MAX_APS).unwrap();
        assert!(a.is_buchi());
        assert_eq!(a.alphabet().labels(), &["!a".to_string(), "a".to_string()]);
        assert_eq!(a.transitions().len(), 2);
        assert!(a.transitions().iter().all(|t| t.colors == c(&[1])));
    }

    #[test]
    fn fin_inf_mapping() {
        let text = "HOA: v1\nStates: 1\nStart: 0\nAP: 0\nAcceptance: 2 Inf(0) & Fin(1)\n--BODY--\nState: 0\n[t] 0 {0 1}\n--END--\n";
        let a = parse_hoa(text, DEFAULT_MAX_APS).unwrap();
        assert_eq!(a.num_colors(), 2);
        assert!(a.fin_used());
        assert_eq!(a.transitions()[0].colors, c(&[0, 1]));
    }

    #[test]
    fn state_marks_are_pushed() {
        let text = "HOA: v1\nStates: 2\nStart: 0\nAP: 1 \"a\"\nAcceptance: 1 Inf(0)\n--BODY--\nState: 0 {0}\n[0] 1\n[!0] 0\nState: 1\n[t] 1\n--END--\n";
        let a = parse_hoa(text, DEFAULT_MAX_APS).unwrap();
        assert!(a.outgoing(0).iter().all(|t| t.colors == c(&[1])));
        assert!(a.outgoing(1).iter().all(|t| t.colors.is_empty()));
    }

    #[test]
    fn rejected_inputs() {
        let header = |acc: &str| format!("HOA: v1\nStates: 1\nStart: 0\nAP: 0\nAcceptance: {acc}\n--BODY--\nState: 0\n[t] 0\n--END--\n");
        assert!(matches!(
            parse_hoa(&header("2 Fin(0) & Fin(1)"), 12),
            Err(Error::UnsupportedAcceptance(_))
        ));
        assert!(matches!(
            parse_hoa(&header("2 Inf(0) | Inf(1)"), 12),
            Err(Error::UnsupportedAcceptance(_))
        ));
        let aps = "HOA: v1\nAP: 2 \"a\" \"b\"\nAcceptance: 0 t\n--BODY--\n--END--\n";
        assert!(matches!(parse_hoa(aps, 1), Err(Error::Capacity(_))));
        let implicit = "HOA: v1\nStates: 1\nAP: 0\nAcceptance: 0 t\n--BODY--\nState: 0\n0\n--END--\n";
        assert!(matches!(parse_hoa(implicit, 12), Err(Error::Unsupported(_))));
        let alias = "HOA: v1\nAlias: @x 0\nAcceptance: 0 t\n--BODY--\n--END--\n";
        assert!(matches!(parse_hoa(alias, 12), Err(Error::Unsupported(_))));
        let abort = "HOA: v1\nAcceptance: 0 t\n--BODY--\n--ABORT--\n";
        assert!(matches!(parse_hoa(abort, 12), Err(Error::Unsupported(_))));
        let bad = "HOA: v1\nAcceptance: 0 t\n--BODY--\nState: 0\n[t 0\n--END--\n";
        assert!(matches!(parse_hoa(bad, 12), Err(Error::Syntax { line: 5, .. })));
    }

    #[test]
    fn multiple_start_lines_merge() {
        let text = "HOA: v1\nStates: 2\nStart: 1\nStart: 0\nAP: 0\nAcceptance: 0 t\n--BODY--\nState: 0\nState: 1\n--END--\n";
        let a = parse_hoa(text, 12).unwrap();
        assert_eq!(a.initial(), &[0, 1]);
        assert_eq!(a.acceptance_formula(), "t");
    }

    #[test]
    fn printed_acceptance_is_compacted() {
        let ba = Sgra::buchi(Alphabet::anonymous(2), 1, [0], [Transition::new(0, 0, 0, c(&[1]))]).unwrap();
        let text = print_hoa(&ba);
        assert!(text.contains("Acceptance: 1 Inf(0)\n"));
        assert!(text.contains("[!0] 0 {0}\n"));
        let sgra = Sgra::new(Alphabet::anonymous(1), 1, [0], [Transition::new(0, 0, 0, c(&[0, 2]))], 3, true).unwrap();
        let text = print_hoa(&sgra);
        assert!(text.contains("Acceptance: 3 Fin(0) & Inf(1) & Inf(2)\n"));
        assert!(text.contains("[t] 0 {0 2}\n"));
        let back = parse_hoa(&text, 12).unwrap();
        assert_eq!(back.transitions()[0].colors, c(&[0, 2]));
    }

    #[test]
    fn ba_format() {
        let a = parse_ba("a,[0]->[0]\n[0]\n").unwrap();
        assert_eq!(a.num_states(), 1);
        assert_eq!(a.initial(), &[0]);
        assert_eq!(a.transitions()[0].colors, c(&[1]));
        let empty = parse_ba("[0]\na,[0]->[0]\n").unwrap();
        assert!(empty.transitions().iter().all(|t| t.colors.is_empty()));
        assert!(matches!(parse_ba("a,[0]-[1]\n"), Err(Error::Syntax { line: 1, .. })));
        assert!(matches!(parse_ba("[0]\na,0->[1]\n"), Err(Error::Syntax { line: 2, .. })));
    }

    #[test]
    fn ba_print_splits_mixed_states() {
        let a = Sgra::buchi(
            Alphabet::anonymous(2),
            1,
            [0],
            [Transition::new(0, 0, 0, c(&[1])), Transition::new(0, 1, 0, c(&[]))],
        )
        .unwrap();
        let text = print_ba(&a).unwrap();
        let back = parse_ba_over(&text, a.alphabet()).unwrap();
        assert_eq!(back.num_states(), 2);
    }
}

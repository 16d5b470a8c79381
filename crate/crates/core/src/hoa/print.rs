use std::fmt::Write;

use crate::automaton::Sgra;

/// Number of fresh propositions needed to encode `n` letters.
fn fresh_ap_count(n: usize) -> usize {
    n.next_power_of_two().trailing_zeros() as usize
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn valuation_label(valuation: usize, num_aps: usize) -> String {
    if num_aps == 0 {
        return "t".into();
    }
    (0..num_aps)
        .map(|i| {
            if valuation >> i & 1 == 1 {
                i.to_string()
            } else {
                format!("!{i}")
            }
        })
        .collect::<Vec<_>>()
        .join("&")
}

/// HOA v1 rendering. Colors are compacted: without Fin, color `c` is printed
/// as set `c - 1`. Letters without proposition names are encoded by fresh
/// propositions `p0, p1, ...` (letter `l` is the valuation with bits `l`).
pub fn print_hoa(a: &Sgra) -> String {
    let aps: Vec<String> = match a.alphabet().ap_names() {
        Some(names) => names.to_vec(),
        None => (0..fresh_ap_count(a.num_letters())).map(|i| format!("p{i}")).collect(),
    };
    let k = a.num_colors();
    let offset = if a.fin_used() { 0 } else { 1 };
    let declared = k - offset;
    let mut atoms = Vec::new();
    if a.fin_used() {
        atoms.push("Fin(0)".to_string());
    }
    atoms.extend((1..k).map(|c| format!("Inf({})", c - offset)));
    let formula = if atoms.is_empty() { "t".to_string() } else { atoms.join(" & ") };
    let acc_name = match (a.fin_used(), k) {
        (false, 1) => "all".to_string(),
        (false, 2) => "Buchi".to_string(),
        (false, _) => format!("generalized-Buchi {}", k - 1),
        (true, 1) => "co-Buchi".to_string(),
        (true, _) => format!("generalized-Rabin 1 {}", k - 1),
    };

    let mut out = String::new();
    out.push_str("HOA: v1\n");
    writeln!(out, "States: {}", a.num_states()).unwrap();
    for q in a.initial() {
        writeln!(out, "Start: {q}").unwrap();
    }
    let names: Vec<String> = aps.iter().map(|s| quote(s)).collect();
    if names.is_empty() {
        writeln!(out, "AP: 0").unwrap();
    } else {
        writeln!(out, "AP: {} {}", aps.len(), names.join(" ")).unwrap();
    }
    writeln!(out, "acc-name: {acc_name}").unwrap();
    writeln!(out, "Acceptance: {declared} {formula}").unwrap();
    out.push_str("properties: trans-labels explicit-labels trans-acc\n");
    out.push_str("--BODY--\n");
    for q in 0..a.num_states() {
        writeln!(out, "State: {q}").unwrap();
        for t in a.outgoing(q) {
            write!(out, "[{}] {}", valuation_label(t.letter, aps.len()), t.dst).unwrap();
            if !t.colors.is_empty() {
                let sets: Vec<String> = t.colors.iter().map(|c| (c - offset).to_string()).collect();
                write!(out, " {{{}}}", sets.join(" ")).unwrap();
            }
            out.push('\n');
        }
    }
    out.push_str("--END--\n");
    out
}

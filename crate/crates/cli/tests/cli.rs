use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

// infinitely many a
const FIN_A: &str = "HOA: v1
States: 1
Start: 0
AP: 1 \"a\"
Acceptance: 1 Inf(0)
--BODY--
State: 0
[0] 0 {0}
[!0] 0
--END--
";

const SIGMA: &str = "HOA: v1
States: 1
Start: 0
AP: 1 \"a\"
Acceptance: 1 Inf(0)
--BODY--
State: 0
[t] 0 {0}
--END--
";

const EMPTY: &str = "HOA: v1
States: 1
Start: 0
AP: 1 \"a\"
Acceptance: 1 Inf(0)
--BODY--
State: 0
[t] 0
--END--
";

fn bacomp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bacomp")).args(args).output().unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn mask_time(bytes: &[u8]) -> String {
    let text = String::from_utf8(bytes.to_vec()).unwrap();
    let mut out = String::new();
    for line in text.lines() {
        match line.find("\"time_ms\":") {
            Some(i) => {
                let rest = &line[i + 10..];
                let end = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
                out.push_str(&line[..i + 10]);
                out.push('T');
                out.push_str(&rest[end..]);
            }
            None => out.push_str(line),
        }
        out.push('\n');
    }
    out
}

#[test]
fn inclusion_exit_codes() {
    let dir = TempDir::new().unwrap();
    let fin = write(&dir, "fin.hoa", FIN_A);
    let sigma = write(&dir, "sigma.hoa", SIGMA);
    assert_eq!(bacomp(&["inclusion", s(&fin), s(&sigma)]).status.code(), Some(0));
    assert_eq!(bacomp(&["inclusion", s(&sigma), s(&fin)]).status.code(), Some(1));
    let out = bacomp(&["inclusion", s(&sigma), s(&fin), "--stats"]);
    let stats: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(stats["result"], "violated");
    assert!(stats["product_states"].as_u64().unwrap() > 0);
    let keys: Vec<&String> = stats.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["explored_transitions", "product_states", "result", "time_ms"]);
}

#[test]
fn emptiness_exit_codes() {
    let dir = TempDir::new().unwrap();
    let empty = write(&dir, "empty.hoa", EMPTY);
    let sigma = write(&dir, "sigma.hoa", SIGMA);
    assert_eq!(bacomp(&["emptiness", s(&empty)]).status.code(), Some(0));
    assert_eq!(bacomp(&["emptiness", s(&sigma)]).status.code(), Some(1));
}

#[test]
fn complement_writes_hoa_and_stats() {
    let dir = TempDir::new().unwrap();
    let fin = write(&dir, "fin.hoa", FIN_A);
    let out_path = dir.path().join("out.hoa");
    let out = bacomp(&["complement", s(&fin), "-o", s(&out_path), "--stats"]);
    assert_eq!(out.status.code(), Some(0));
    let hoa = fs::read_to_string(&out_path).unwrap();
    assert!(hoa.starts_with("HOA: v1\n") && hoa.ends_with("--END--\n"));
    let stats: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(stats["in_states"], 1);
    assert_eq!(stats["blocks"]["iadac"], 1);
    assert_eq!(stats["blocks"]["nac"], 0);
    for key in ["out_states", "macrostates", "time_ms"] {
        assert!(stats[key].is_u64(), "{key}");
    }
    // the complement accepts the words with finitely many a
    let comp = write(&dir, "comp.hoa", &hoa);
    assert!(hoa.contains("Acceptance: 1 Fin(0)\n"));
    assert_eq!(bacomp(&["inclusion", s(&comp), s(&fin)]).status.code(), Some(2));
    assert_eq!(bacomp(&["emptiness", s(&comp)]).status.code(), Some(1));
}

#[test]
fn analyze_reports_classes() {
    let dir = TempDir::new().unwrap();
    let fin = write(&dir, "fin.hoa", FIN_A);
    let out = bacomp(&["analyze", s(&fin)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "{\"sccs\":1,\"classes\":{\"nonacc\":0,\"iadac\":1,\"iwac\":0,\"dac\":0,\"nac\":0},\"elevator\":true}\n"
    );
}

#[test]
fn errors_exit_two_with_prefix() {
    let dir = TempDir::new().unwrap();
    let rabin = write(
        &dir,
        "rabin.hoa",
        "HOA: v1\nStates: 1\nStart: 0\nAP: 0\nAcceptance: 2 Fin(0) | Inf(1)\n--BODY--\nState: 0\n[t] 0\n--END--\n",
    );
    let out = bacomp(&["complement", s(&rabin)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8(out.stderr).unwrap().starts_with("unsupported-acceptance:"));

    let wide = write(
        &dir,
        "wide.hoa",
        "HOA: v1\nStates: 1\nStart: 0\nAP: 3 \"a\" \"b\" \"c\"\nAcceptance: 1 Inf(0)\n--BODY--\nState: 0\n[t] 0\n--END--\n",
    );
    let out = bacomp(&["--max-aps", "2", "emptiness", s(&wide)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().starts_with("capacity:"));

    let gen = bacomp(&["gen", "--seed", "4", "--states", "7"]);
    let big = write(&dir, "big.hoa", std::str::from_utf8(&gen.stdout).unwrap());
    let out = bacomp(&["complement", s(&big), "--max-states", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().starts_with("capacity:"));

    let missing = dir.path().join("missing.hoa");
    assert_eq!(bacomp(&["emptiness", s(&missing)]).status.code(), Some(2));
}

#[test]
fn ba_inputs_share_an_alphabet() {
    let dir = TempDir::new().unwrap();
    let x = write(&dir, "x.ba", "a,[0]->[0]\n[0]\n");
    let y = write(&dir, "y.ba", "a,[0]->[0]\nb,[0]->[0]\n[0]\n");
    assert_eq!(bacomp(&["--from-ba", "inclusion", s(&x), s(&y)]).status.code(), Some(0));
    assert_eq!(bacomp(&["--from-ba", "inclusion", s(&y), s(&x)]).status.code(), Some(1));
}

#[test]
fn outputs_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let fin = write(&dir, "fin.hoa", FIN_A);
    let sigma = write(&dir, "sigma.hoa", SIGMA);
    let gen_args = ["gen", "--seed", "11", "--states", "5", "--letters", "2"];
    let generated = bacomp(&gen_args);
    let g = write(&dir, "g.hoa", std::str::from_utf8(&generated.stdout).unwrap());
    let runs: Vec<Vec<&str>> = vec![
        gen_args.to_vec(),
        vec!["complement", s(&g), "--stats"],
        vec!["complement", s(&g), "--nac-alg", "rank"],
        vec!["complement", s(&g), "--nac-alg", "mono", "--no-postprocess"],
        vec!["inclusion", s(&fin), s(&g), "--stats"],
        vec!["inclusion", s(&sigma), s(&fin), "--stats"],
        vec!["emptiness", s(&g)],
        vec!["analyze", s(&g)],
    ];
    for args in runs {
        let first = bacomp(&args);
        let second = bacomp(&args);
        assert_eq!(first.status.code(), second.status.code(), "{args:?}");
        assert_eq!(mask_time(&first.stdout), mask_time(&second.stdout), "{args:?}");
        assert_eq!(first.stderr, second.stderr, "{args:?}");
    }
}

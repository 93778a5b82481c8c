use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use splicing::format::parse_system;
use splicing::fixtures;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.spl"))
}

fn splice(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_splice")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn fixture_files_match_library_fixtures() {
    for (name, s, _) in fixtures::all() {
        let text = std::fs::read_to_string(fixture(name)).unwrap();
        assert_eq!(parse_system(&text).unwrap(), s, "{name}");
    }
}

#[test]
fn closure_lists_anbn() {
    let o = splice(&["closure", path(&fixture("anbn")), "--max-len", "8"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "ab\naabb\naaabbb\naaaabbbb\n");
}

#[test]
fn closure_linearizes_circular_words() {
    let o = splice(&["closure", path(&fixture("anbn_circular")), "--max-len", "4", "--linearize"]);
    let got: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(got, ["ab", "ba", "aabb", "abba", "baab", "bbaa"]);
}

#[test]
fn decide_equal_reports_shortest_witness() {
    let o = splice(&["decide-equal", path(&fixture("anbn")), "--regex", "(ab)+"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "NOT-EQUAL 2 aabb\n");
}

#[test]
fn decide_equal_reads_automata() {
    let dir = tempfile::tempdir().unwrap();
    let dfa = dir.path().join("k.dfa");
    std::fs::write(&dfa, "alphabet a b\nstart 0\nfinal 2\n0 a 1\n1 b 2\n").unwrap();
    let o = splice(&["decide-equal", path(&fixture("anbn")), "--dfa", dfa.to_str().unwrap()]);
    assert_eq!(stdout(&o), "NOT-EQUAL 2 aabb\n");

    let o = splice(&["decide-equal", path(&fixture("dyck")), "--regex", "(aā)+"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn check_passes_on_alphabetic_fixtures() {
    for (name, _, bound) in fixtures::all() {
        let o = splice(&["check", path(&fixture(name)), "--max-len", &bound.min(9).to_string()]);
        if name == "doubling" {
            assert_eq!(o.status.code(), Some(2), "{name}");
        } else {
            assert_eq!(o.status.code(), Some(0), "{name}: {}", stdout(&o));
            assert!(stdout(&o).starts_with("OK "));
        }
    }
}

#[test]
fn member_exit_codes_and_trace() {
    let f = fixture("anbn");
    let o = splice(&["member", path(&f), "aaabbb", "--trace"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("member\n"));
    assert!(out.lines().count() > 1);

    assert_eq!(splice(&["member", path(&f), "abab"]).status.code(), Some(1));
    assert_eq!(splice(&["member", path(&f), "_"]).status.code(), Some(1));
    assert_eq!(splice(&["member", path(&f), "abx"]).status.code(), Some(2));

    let d = fixture("doubling");
    let o = splice(&["member", path(&d), "▶0123012301230123◀", "--budget", "10"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn parse_errors_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.spl");
    std::fs::write(&f, "alphabet a b\nmode flat\ninitial finite: ab\nrules:\nsplice a#b$a\n").unwrap();
    let o = splice(&["closure", f.to_str().unwrap(), "--max-len", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 5"));

    assert_eq!(splice(&["closure", "/nonexistent.spl", "--max-len", "4"]).status.code(), Some(2));
    assert_eq!(splice(&["closure"]).status.code(), Some(2));
}

#[test]
fn generable_finds_systems_or_none() {
    let o = splice(&["generable", "--alphabet", "a", "--regex", "a+"]);
    assert_eq!(o.status.code(), Some(0));
    let s = parse_system(&stdout(&o)).unwrap();
    assert!(s.rules.iter().all(|r| r.is_alphabetic()));

    let o = splice(&["generable", "--alphabet", "a b", "--regex", "a*b"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "NONE\n");
}

#[test]
fn synthesized_grammar_enumerates_closure() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.cfg");
    for name in ["anbn", "pure_cab", "concat_nonregular"] {
        let o = splice(&["synthesize", path(&fixture(name)), "-o", g.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{name}");
        let from_grammar = splice(&["enumerate", g.to_str().unwrap(), "--max-len", "8"]);
        let from_closure = splice(&["closure", path(&fixture(name)), "--max-len", "8"]);
        let mut a: Vec<String> = stdout(&from_grammar).lines().map(String::from).collect();
        let mut b: Vec<String> = stdout(&from_closure).lines().map(String::from).collect();
        a.sort();
        b.sort();
        assert_eq!(a, b, "{name}");
    }
}

#[test]
fn transforms_print_parseable_systems() {
    for cmd in ["complete", "split"] {
        let o = splice(&[cmd, path(&fixture("mixed_cab"))]);
        assert_eq!(o.status.code(), Some(0), "{cmd}");
        let s = parse_system(&stdout(&o)).unwrap();
        assert!(s.rules.len() > 2, "{cmd}");
    }
    let o = splice(&["to-flat", path(&fixture("anbn_circular"))]);
    let s = parse_system(&stdout(&o)).unwrap();
    assert_eq!(s.mode, splicing::system::Mode::Flat);
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["synthesize", "pure_cab"],
        vec!["split", "mixed_cab"],
        vec!["closure", "dyck_circular", "--max-len", "6"],
    ] {
        let f = fixture(args[1]);
        let mut full = args.clone();
        full[1] = path(&f);
        assert_eq!(stdout(&splice(&full)), stdout(&splice(&full)));
    }
}

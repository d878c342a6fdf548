use std::path::{Path, PathBuf};
use std::process::Command;

use ratsub_core::oracle::brute_subgroup;
use ratsub_core::{ball, FreeGroup, Group, Word};

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).to_string_lossy().into_owned()
}

fn scratch(name: &str, contents: &str) -> String {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("ratsub-cli");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn ratsub(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_ratsub")).args(args).output().expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

#[test]
fn reduce_cancels_adjacent_pairs() {
    let r = ratsub(&["reduce", "--word", "a a^-1 b"]);
    assert_eq!((r.code, r.stdout.as_str()), (0, "b\n"));
    let r = ratsub(&["reduce", "--word", "a b b^-1 a^-1"]);
    assert_eq!(r.stdout, "1\n");
}

#[test]
fn member_example_and_brute_force_agreement() {
    let grp = data("free2.grp");
    let r = ratsub(&["member", "--group", &grp, "--subgroup", "a a, b", "--word", "a a b a a"]);
    assert_eq!((r.code, r.stdout.as_str()), (0, "yes\n"));

    let f = FreeGroup::new(2).unwrap();
    let gens: Vec<Word> = ["a a", "b"].iter().map(|w| Word::parse(f.alphabet(), w).unwrap()).collect();
    let inside = brute_subgroup(&f, &gens, 5).unwrap();
    for (x, w) in ball(&f, 3) {
        let shown = w.display(f.alphabet()).to_string();
        let r = ratsub(&["member", "--group", &grp, "--subgroup", "a a, b", "--word", &shown]);
        // Elements of <a a, b> in ball(3) use at most 3 generator factors, well inside the horizon of 5.
        let expected = inside.contains(&x);
        assert_eq!(r.code, if expected { 0 } else { 1 }, "word {shown}");
        assert_eq!(r.stdout, if expected { "yes\n" } else { "no\n" });
    }
}

#[test]
fn member_in_finite_and_virtually_cyclic_groups() {
    let r = ratsub(&["member", "--group", &data("z3.grp"), "--subgroup", "g g", "--word", "g"]);
    assert_eq!(r.stdout, "yes\n");
    let dinf = data("dinf.grp");
    let r = ratsub(&["member", "--group", &dinf, "--subgroup", "t t, s", "--word", "t s t"]);
    assert_eq!(r.stdout, "yes\n");
    let r = ratsub(&["member", "--group", &dinf, "--subgroup", "t t, s", "--word", "t"]);
    assert_eq!((r.code, r.stdout.as_str()), (1, "no\n"));
}

#[test]
fn epi_check_accepts_the_standard_witness_only() {
    let z = data("z.grp");
    let r = ratsub(&["epi-check", "--group", &z, "--nfa", &data("epi_z.aut")]);
    assert_eq!((r.code, r.stdout.as_str()), (0, "yes\n"));
    let r = ratsub(&["epi-check", "--group", &z, "--nfa", &data("pos_z.aut")]);
    assert_eq!((r.code, r.stdout.as_str()), (1, "no\n"));
}

#[test]
fn epi_transfer_output_passes_epi_check() {
    let r = ratsub(&["epi-transfer", "--group", &data("z.grp"), "--nfa", &data("epi_z.aut"), "--modulus", "2"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    // The transferred witness lives over u = t^2, which is again a copy of Z.
    let renamed = scratch("z_u.grp", "kind: virtually_cyclic\nn: 1\nphi: +\ncocycle: 1 1 0 1\nalphabet: u\n");
    let witness = scratch("transferred.aut", &r.stdout);
    let r = ratsub(&["epi-check", "--group", &renamed, "--nfa", &witness]);
    assert_eq!(r.stdout, "yes\n");
    let r = ratsub(&["epi-transfer", "--group", &data("z.grp"), "--nfa", &data("pos_z.aut"), "--modulus", "2"]);
    assert_eq!(r.code, 3);
}

#[test]
fn decompose_then_recompose_preserves_membership() {
    let grp = data("free2.grp");
    let d = ratsub(&["decompose", "--group", &grp, "--nfa", &data("ab_star.aut"), "--subgroup", "a a, b, a b a^-1"]);
    assert_eq!(d.code, 0, "{}", d.stderr);
    assert!(d.stdout.starts_with("kind: decomposition\n"));
    let path = scratch("free.dec", &d.stdout);
    let back = ratsub(&["recompose", "--group", &grp, "--decomposition", &path]);
    assert_eq!(back.code, 0, "{}", back.stderr);
    let aut = scratch("recomposed.aut", &back.stdout);
    for (word, expected) in [("1", true), ("a b", true), ("a b a b", true), ("a", false), ("b a", false), ("a b a", false)] {
        let r = ratsub(&["rat-member", "--group", &grp, "--nfa", &aut, "--word", word]);
        assert_eq!(r.stdout == "yes\n", expected, "word {word}");
    }

    let z = data("z.grp");
    let d = ratsub(&["decompose", "--group", &z, "--nfa", &data("epi_z.aut"), "--modulus", "3"]);
    assert_eq!(d.code, 0, "{}", d.stderr);
    assert_eq!(d.stdout.matches("component: ").count(), 3);
    let path = scratch("z.dec", &d.stdout);
    let back = ratsub(&["recompose", "--group", &z, "--decomposition", &path]);
    let aut = scratch("z_recomposed.aut", &back.stdout);
    for k in -4i32..=4 {
        let word = if k == 0 { "1".to_string() } else { vec![if k > 0 { "t" } else { "t^-1" }; k.unsigned_abs() as usize].join(" ") };
        let r = ratsub(&["rat-member", "--group", &z, "--nfa", &aut, "--word", &word]);
        assert_eq!(r.stdout == "yes\n", k != 0, "t^{k}");
    }
}

#[test]
fn rewrite_reports_a_witness_when_not_contained() {
    let grp = data("free2.grp");
    let r = ratsub(&["rewrite", "--group", &grp, "--nfa", &data("ab_star.aut"), "--subgroup", "a b"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.starts_with("basis: x1 = a b\nalphabet: x1\n"));
    let r = ratsub(&["rewrite", "--group", &grp, "--nfa", &data("ab_star.aut"), "--subgroup", "a"]);
    assert_eq!(r.code, 3);
    assert!(r.stderr.contains("witness: a b"), "{}", r.stderr);
}

#[test]
fn recognizable_operations() {
    let dinf = data("dinf.grp");
    let r = ratsub(&["rec-op", "--group", &dinf, "--op", "from-modulus", "--modulus", "2", "--accept", "0:1, 1:2"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let a = scratch("even_or_odd_reflection.act", &r.stdout);
    let c = ratsub(&["rec-op", "--group", &dinf, "--op", "complement", "--a", &a]);
    let b = scratch("complement.act", &c.stdout);
    let u = ratsub(&["rec-op", "--group", &dinf, "--op", "union", "--a", &a, "--b", &b]);
    let whole = scratch("union.act", &u.stdout);
    let i = ratsub(&["rec-op", "--group", &dinf, "--op", "intersect", "--a", &a, "--b", &b]);
    let none = scratch("intersection.act", &i.stdout);
    for word in ["1", "t", "s", "t s", "t t s", "s t t t"] {
        let in_a = ratsub(&["rec-op", "--group", &dinf, "--op", "member", "--a", &a, "--word", word]).code == 0;
        let in_b = ratsub(&["rec-op", "--group", &dinf, "--op", "member", "--a", &b, "--word", word]).code == 0;
        assert_ne!(in_a, in_b, "{word}");
        assert_eq!(ratsub(&["rec-op", "--group", &dinf, "--op", "member", "--a", &whole, "--word", word]).code, 0);
        assert_eq!(ratsub(&["rec-op", "--group", &dinf, "--op", "member", "--a", &none, "--word", word]).code, 1);
    }
    // (z, i) with z even and i = 1, or z odd and i = 2.
    let member = |w: &str| ratsub(&["rec-op", "--group", &dinf, "--op", "member", "--a", &a, "--word", w]).stdout;
    assert_eq!(member("t t"), "yes\n");
    assert_eq!(member("t s"), "yes\n");
    assert_eq!(member("s"), "no\n");

    let h = ratsub(&["rec-op", "--group", &data("free2.grp"), "--op", "subgroup", "--subgroup", "a a, b, a b a^-1"]);
    assert!(h.stdout.starts_with("kind: coset_action\nalphabet: a b\nstates: 2\nstart: 0\naccept: 0\n"), "{}", h.stdout);
    let r = ratsub(&["rec-op", "--group", &data("free2.grp"), "--op", "subgroup", "--subgroup", "a"]);
    assert_eq!(r.code, 3);
}

#[test]
fn word_problem_acceptors_trace_and_decide() {
    let r = ratsub(&["wp-accept", "--group", &data("dinf.grp"), "--machine", "oca", "--word", "s t s t"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout.lines().count(), 6);
    assert!(r.stdout.ends_with("accept\n"));
    let r = ratsub(&["wp-accept", "--group", &data("z3.grp"), "--machine", "dfa", "--word", "g g"]);
    assert_eq!((r.code, r.stdout.as_str()), (1, "state 0\nstate 1\nstate 2\nreject\n"));
    let r = ratsub(&["wp-accept", "--group", &data("free2.grp"), "--machine", "stack", "--word", "a b b^-1 a^-1"]);
    assert_eq!(r.stdout, "stack 1\nstack a\nstack a b\nstack a\nstack 1\naccept\n");
    let r = ratsub(&["wp-accept", "--group", &data("free2.grp"), "--machine", "dfa", "--word", "a"]);
    assert_eq!(r.code, 3);
}

#[test]
fn conjugacy_classes_in_the_infinite_dihedral_group() {
    let dinf = data("dinf.grp");
    let r = ratsub(&["conj-class", "--group", &dinf, "--element", "t t"]);
    assert_eq!(r.stdout, "finite: 2\n(-2,1)\n(2,1)\n");
    let r = ratsub(&["conj-class", "--group", &dinf, "--element", "(1,2)"]);
    assert_eq!(r.stdout, "cosets of 2Z\n(1,2) + 2Z\n");
    let r = ratsub(&["conj-class", "--group", &dinf, "--element", "(0,1)"]);
    assert_eq!(r.stdout, "finite: 1\n(0,1)\n");
}

#[test]
fn nerode_search_reports_exhaustion() {
    let r = ratsub(&["nerode", "--group", &data("z3.grp"), "--k", "3", "--radius", "6"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.starts_with("found: 3\n"));
    let r = ratsub(&["nerode", "--group", &data("z3.grp"), "--k", "4", "--radius", "6"]);
    assert_eq!((r.code, r.stdout.as_str()), (1, "exhausted: 3\n"));
    let r = ratsub(&["nerode", "--nfa", &data("ab_star.aut"), "--k", "3", "--radius", "4"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
}

#[test]
fn json_lines_records() {
    let r = ratsub(&["--format", "json-lines", "index", "--group", &data("free2.grp"), "--subgroup", "a a, b, a b a^-1"]);
    let lines: Vec<&str> = r.stdout.lines().collect();
    assert_eq!(lines[0], r#"{"kind":"index","value":"index: 2"}"#);
    assert_eq!(lines[1], r#"{"kind":"transversal","value":"transversal: 1"}"#);
    assert_eq!(lines.len(), 6);
}

#[test]
fn malformed_files_exit_2_with_line_numbers() {
    let bad = scratch("bad.grp", "kind: finite\norder: 2\ngenerators: g=1\ntable: 0 1\ntable: 1 x\n");
    let r = ratsub(&["eval", "--group", &bad, "--word", "g"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("line 5:"), "{}", r.stderr);

    let aut = scratch("bad.aut", "alphabet: a b\nstates: 2\nstart: 0\naccept: 1\ntrans: 0 a 1\ntrans: 0 c 1\n");
    let r = ratsub(&["rat-member", "--group", &data("free2.grp"), "--nfa", &aut, "--word", "a"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("line 6:"), "{}", r.stderr);

    let r = ratsub(&["eval", "--group", &data("free2.grp"), "--word", "a c"]);
    assert_eq!(r.code, 2);
    let r = ratsub(&["eval", "--group", "/nonexistent/group.grp", "--word", "a"]);
    assert_eq!(r.code, 2);
}

#[test]
fn validate_checks_files() {
    let r = ratsub(&["validate", "--group", &data("dinf.grp"), "--nfa", &data("ab_star.aut")]);
    assert_eq!(r.code, 2, "ab_star is over a b, not t s");
    let r = ratsub(&["validate", "--group", &data("free2.grp"), "--nfa", &data("ab_star.aut")]);
    assert_eq!(r.stdout, "ok: free group of rank 2\nok: automaton with 2 states, 2 transitions (0 eps)\n");
    // With `s` acting trivially, s t s = t^-1 forces t to be an involution; a 3-cycle is not.
    let act = scratch(
        "bad.act",
        "kind: coset_action\nalphabet: t s\nstates: 3\nstart: 0\naccept: 0\ntrans: 0 t 1\ntrans: 1 t 2\ntrans: 2 t 0\ntrans: 0 s 0\ntrans: 1 s 1\ntrans: 2 s 2\n",
    );
    let r = ratsub(&["validate", "--group", &data("dinf.grp"), "--coset-action", &act]);
    assert_eq!(r.code, 3, "{}", r.stderr);
}

#[test]
fn output_is_byte_identical_across_runs() {
    let args = ["decompose", "--group", &data("free2.grp"), "--nfa", &data("ab_star.aut"), "--subgroup", "a a, b, a b a^-1"];
    let first = ratsub(&args).stdout;
    for _ in 0..3 {
        assert_eq!(ratsub(&args).stdout, first);
    }
    let args = ["stallings", "--group", &data("free2.grp"), "--subgroup", "a b a^-1, b a"];
    assert_eq!(ratsub(&args).stdout, ratsub(&args).stdout);
}

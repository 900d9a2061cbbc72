use std::path::PathBuf;
use std::process::Command;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn equidiv(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_equidiv"))
        .args(args)
        .output()
        .expect("binary runs");
    let mut text = String::from_utf8(out.stdout).unwrap();
    text.push_str(&String::from_utf8(out.stderr).unwrap());
    (out.status.code().unwrap_or(-1), text)
}

fn e1() -> String {
    fixture("e1.eqd").display().to_string()
}

#[test]
fn quotient_full_is_refused_with_witness() {
    let (code, out) = equidiv(&["quotient", "--in", &e1(), "--group", "full"]);
    assert_eq!(code, 1, "{out}");
    assert!(out.starts_with("verdict not-exists\nreason: half-fixed-witness\n"));
    assert!(out.contains("witness: alpha () beta (1,2) gamma (a,b)\n"));
}

#[test]
fn quotient_trivial_exists() {
    let (code, out) = equidiv(&["quotient", "--in", &e1(), "--group", "trivial"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("quotient: 0 1\n"));
}

#[test]
fn certificate_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("e1.cert");
    let (code, out) = equidiv(&[
        "quotient",
        "--in",
        &e1(),
        "--group",
        "gens (a,b)",
        "--certificate",
        cert.to_str().unwrap(),
    ]);
    assert_eq!(code, 1);
    assert_eq!(std::fs::read_to_string(cert).unwrap(), out);
}

#[test]
fn divide_prints_the_quotient() {
    assert_eq!(equidiv(&["divide", "--in", &e1(), "--base", "0"]), (0, "0 1\n".into()));
    assert_eq!(equidiv(&["divide", "--in", &e1(), "--base", "b"]), (0, "1 0\n".into()));
    assert_eq!(equidiv(&["divide", "--in", &e1(), "--base", "7"]).0, 3);
}

#[test]
fn parallelize_round_trips_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("p.eqd");
    let (code, text) = equidiv(&["parallelize", "--in", &e1(), "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(std::fs::read_to_string(&out).unwrap(), text);
    // E1 is already parallel
    assert_eq!(text, std::fs::read_to_string(fixture("e1.eqd")).unwrap());
}

#[test]
fn stab_lists_four_triples() {
    let (code, out) = equidiv(&["stab", "--in", &e1(), "--group", "full"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("symmetries 4\n"));
}

#[test]
fn subset_mode() {
    let dir = tempfile::tempdir().unwrap();
    let syms = dir.path().join("s.txt");
    std::fs::write(&syms, "alpha ()\nbeta (1,2)\ngamma (a,b)\n").unwrap();
    let (code, out) = equidiv(&["quotient", "--in", &e1(), "--symmetries", syms.to_str().unwrap()]);
    assert_eq!(code, 1, "{out}");
    std::fs::write(&syms, "alpha (x,y)\nbeta (1,2)\ngamma ()\n").unwrap();
    let (code, out) = equidiv(&["quotient", "--in", &e1(), "--symmetries", syms.to_str().unwrap()]);
    assert_eq!((code, out.as_str()), (4, "undecided: subset\n"));
    // not a symmetry
    std::fs::write(&syms, "alpha (x,y)\nbeta ()\ngamma ()\n").unwrap();
    assert_eq!(equidiv(&["quotient", "--in", &e1(), "--symmetries", syms.to_str().unwrap()]).0, 3);
}

#[test]
fn invalid_inputs_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.eqd");
    std::fs::write(&bad, "EQUIDIV 1\nbij nA 2 nB 2 nC 1\nrow 0: 0:0 0:0\n").unwrap();
    assert_eq!(equidiv(&["quotient", "--in", bad.to_str().unwrap(), "--group", "full"]).0, 3);
    assert_eq!(equidiv(&["quotient", "--in", "/nonexistent", "--group", "full"]).0, 3);
    assert_eq!(equidiv(&["gallery", "checkered", "(a,b)(c)"]).0, 3);
}

#[test]
fn usage_and_budget_codes() {
    assert_eq!(equidiv(&["probe", "--nA", "2"]).0, 2);
    assert_eq!(equidiv(&["quotient", "--in", &e1()]).0, 2);
    let (code, out) = equidiv(&["probe", "--nA", "4", "--nC", "3", "--group", "full", "--mode", "all"]);
    assert_eq!(code, 4, "{out}");
    let (code, _) = equidiv(&["stab", "--in", &e1(), "--group", "full", "--group-cap", "1"]);
    assert_eq!(code, 4);
}

#[test]
fn probe_writes_certificates() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out) = equidiv(&[
        "probe", "--nA", "2", "--nC", "2", "--group", "full", "--mode", "all", "--cert-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("cert=cert-0000001.txt"));
    let cert = std::fs::read_to_string(dir.path().join("cert-0000001.txt")).unwrap();
    assert!(cert.starts_with("verdict not-exists"));
}

#[test]
fn gallery_outputs() {
    let (code, out) = equidiv(&["gallery", "cyclic", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out, "EQUIDIV 1\nbij nA 2 nB 2 nC 2\nrow 0: 0:0 1:0\nrow 1: 1:1 0:1\n");
    let (_, out) = equidiv(&["gallery", "thm4", "(a,b,c)(d)", "--window", "5"]);
    assert!(out.starts_with("a: Ka Kb Kc Kd 1a\nb: Qb Qc Qa Qd 1b\n"), "{out}");
    let (_, out) = equidiv(&["gallery", "gadget-xy", "b,a", "--window", "4"]);
    assert!(out.contains("b: Kb Ka Kc 1b\n"), "{out}");
    let (code, _) = equidiv(&["gallery", "gadget-xyz", "a,b"]);
    assert_eq!(code, 2);
    let dir = tempfile::tempdir().unwrap();
    let t = dir.path().join("z3.txt");
    std::fs::write(&t, "0 1 2\n1 2 0\n2 0 1\n").unwrap();
    let (code, out) = equidiv(&["gallery", "regular-rep", t.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(out, equidiv(&["gallery", "cyclic", "3"]).1);
}

#[test]
fn gallery_output_parses_back() {
    let (_, out) = equidiv(&["gallery", "checkered", "(a,b,c)(d,e)"]);
    let file = equidiv::bijection::parse_bijection(&out).unwrap();
    assert_eq!(file.bij.n_a(), 12);
    assert_eq!(file.bij.n_c(), 5);
}

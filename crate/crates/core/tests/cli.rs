use std::process::{Command, Output};

use cayley_lintime::framework::{FuzzReport, GroupId, LinearityReport, Representation};
use cayley_lintime::tapevm::render;
use cayley_lintime::Gen;

fn cayley(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cayley")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn mul_matches_library() {
    for (group, nf, gen) in [
        (GroupId::Z2WrZ2, "C0", Gen::A),
        (GroupId::Z2WrF2, "(D0AC0)", Gen::BInv),
        (GroupId::ThompsonF, "b###b", Gen::X1Inv),
        (GroupId::ThompsonF, "", Gen::X1),
    ] {
        let o = cayley(&["mul", "--group", group.name(), "--nf", nf, "--gen", gen.token()]);
        assert!(o.status.success(), "{o:?}");
        let rep = Representation::new(group);
        let run = rep.apply(&rep.parse_nf(nf).unwrap(), gen).unwrap();
        assert_eq!(stdout(&o), format!("{}\nsteps {}\n", render(&run.output), run.steps));
    }
    assert!(stdout(&cayley(&["mul", "--group", "z2wrz2", "--nf", "C0", "--gen", "a"])).starts_with("0C0\nsteps "));
}

#[test]
fn normalize_and_word_problem() {
    assert_eq!(stdout(&cayley(&["normalize", "--group", "z2wrf2", "--word", ""])), "B0\n");
    assert_eq!(stdout(&cayley(&["normalize", "--group", "thompson-f", "--word", "x0- x1-"])), "b##b\n");
    let relator = "x1 x0- x0- x1- x0 x0 x1- x0- x1 x0";
    assert_eq!(stdout(&cayley(&["wp", "--group", "thompson-f", "--word", relator])), "trivial\n");
    assert_eq!(stdout(&cayley(&["wp", "--group", "z2wrz2", "--word", "c a c a-"])), "nontrivial\n");
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| cayley(args).status.code().unwrap();
    assert_eq!(code(&["mul", "--group", "z2wrz2", "--nf", "C0C0", "--gen", "a"]), 1);
    assert_eq!(code(&["normalize", "--group", "z2wrz2", "--word", "x0"]), 1);
    assert_eq!(code(&["normalize", "--group", "z2wrz2", "--word", "q"]), 1);
    assert_eq!(code(&["normalize", "--word", "a"]), 64);
    assert_eq!(code(&["normalize", "--group", "z3", "--word", "a"]), 64);
    assert_eq!(code(&[]), 64);
    assert_eq!(code(&["--help"]), 0);
    let o = cayley(&["bench", "--group", "z2wrz2", "--sizes", "8,4", "--gen", "a"]);
    assert_eq!(o.status.code(), Some(64));
    assert!(String::from_utf8_lossy(&o.stderr).contains("strictly increasing"));
}

#[test]
fn fuzz_report_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fuzz.json");
    let o = cayley(&[
        "fuzz", "--group", "thompson-f", "--trials", "20", "--max-len", "30", "--seed", "7", "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{o:?}");
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let r: FuzzReport = serde_json::from_str(&text).unwrap();
    assert!(r.passed && r.trials == 20 && r.seed == 7);
    assert_eq!(serde_json::to_string_pretty(&r).unwrap() + "\n", text);
}

#[test]
fn planted_defects_fail() {
    let o = cayley(&["fuzz", "--group", "thompson-f", "--trials", "200", "--max-len", "80", "--disable-case", "2.2.2b"]);
    assert_eq!(o.status.code(), Some(1));
    let r: FuzzReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(r.witness.is_some());

    let o = cayley(&["bench", "--group", "thompson-f", "--gen", "x0", "--sizes", "64,256,1024", "--samples", "2", "--mutant"]);
    assert_eq!(o.status.code(), Some(1));
    let r: LinearityReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(!r.verdict);
}

#[test]
fn demo_table() {
    let o = cayley(&["demo-nonqg", "--group", "z2wrz2", "--ks", "1,10"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 3);
    assert!(text.lines().next().unwrap().contains("ratio"));
}

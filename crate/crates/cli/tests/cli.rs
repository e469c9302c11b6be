use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn monodt(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_monodt"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, body).unwrap();
    p
}

fn tables() -> TempDir {
    let dir = TempDir::new().unwrap();
    write(&dir, "xor.tt", "n=2\n6\n");
    write(&dir, "and.tt", "n=2\n8\n");
    write(&dir, "mixed.tt", "n=2\n2\n");
    write(&dir, "zero.tt", "n=3\n00\n");
    dir
}

#[test]
fn alt_lines() {
    let dir = tables();
    let o = monodt(dir.path(), &["alt", "xor.tt"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("alt=2 uniform=true dtm=2 dtm_na=2\n"));
    let o = monodt(dir.path(), &["alt", "zero.tt"]);
    assert!(stdout(&o).starts_with("alt=0 uniform=true dtm=0 dtm_na=0\n"));
    let o = monodt(
        dir.path(),
        &["table", "candidate", "-n", "4", "--out", "f4.tt"],
    );
    assert_eq!(code(&o), 0);
    let o = monodt(dir.path(), &["alt", "f4.tt"]);
    assert!(stdout(&o).contains("alt=4 "), "{}", stdout(&o));
    assert!(stdout(&o).contains("dtm=3 dtm_na=4"));
}

#[test]
fn decompositions() {
    let dir = tables();
    let o = monodt(dir.path(), &["decompose", "xor.tt", "--out", "d.txt"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("components=2 "));
    let text = fs::read_to_string(dir.path().join("d.txt")).unwrap();
    assert_eq!(text, "n=2 m=2 dir=asc\n8\ne\n6\n");
    let o = monodt(dir.path(), &["verify", "d.txt", "xor.tt"]);
    assert_eq!(stdout(&o), "EQUIV\n");

    let o = monodt(
        dir.path(),
        &[
            "decompose",
            "xor.tt",
            "--kind",
            "threshold",
            "--out",
            "t.txt",
        ],
    );
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("components=5 xor_equals_target=true"));

    let o = monodt(dir.path(), &["decompose", "mixed.tt", "--kind", "uniform"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("uniform"));
}

#[test]
fn build_and_verify() {
    let dir = tables();
    for model in ["mdl", "mdt", "namdt", "nmdt", "nmdt2"] {
        let out = format!("{model}.json");
        let o = monodt(
            dir.path(),
            &["build", "xor.tt", "--model", model, "--out", &out],
        );
        assert_eq!(code(&o), 0, "{model}");
        assert!(stdout(&o).ends_with("EQUIV\n"), "{model}: {}", stdout(&o));
        let o = monodt(dir.path(), &["verify", &out, "xor.tt"]);
        assert_eq!((code(&o), stdout(&o).as_str()), (0, "EQUIV\n"), "{model}");
    }
    let o = monodt(dir.path(), &["verify", "mdt.json", "and.tt"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).starts_with("NOT EQUIV x="));
}

#[test]
fn conversions() {
    let dir = tables();
    monodt(
        dir.path(),
        &["build", "xor.tt", "--model", "mdl", "--out", "l.json"],
    );
    let o = monodt(
        dir.path(),
        &[
            "convert", "l.json", "--from", "mdl", "--to", "mdt", "--out", "t.json",
        ],
    );
    assert_eq!(code(&o), 0);
    let o = monodt(
        dir.path(),
        &["convert", "t.json", "--to", "mdl", "--out", "l2.json"],
    );
    assert_eq!(code(&o), 0);
    let o = monodt(dir.path(), &["verify", "l2.json", "xor.tt"]);
    assert_eq!(code(&o), 0);

    monodt(
        dir.path(),
        &["build", "mixed.tt", "--model", "nmdt", "--out", "m1.json"],
    );
    let o = monodt(
        dir.path(),
        &["convert", "m1.json", "--to", "nmdt2", "--out", "m2.json"],
    );
    assert!(stdout(&o).contains("height=4"));
    let o = monodt(dir.path(), &["convert", "m2.json", "--to", "table"]);
    assert_eq!(stdout(&o), "n=2\n2\n");

    let o = monodt(dir.path(), &["convert", "m1.json", "--to", "mdt"]);
    assert_eq!(code(&o), 2);
    let o = monodt(
        dir.path(),
        &["convert", "m1.json", "--from", "mdt", "--to", "nmdt2"],
    );
    assert_eq!(code(&o), 2);
}

#[test]
fn synthesis() {
    let dir = tables();
    let o = monodt(dir.path(), &["synth", "markov", "xor.tt", "--out", "x.net"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).ends_with("EQUIV\n"));
    let net = fs::read_to_string(dir.path().join("x.net")).unwrap();
    assert!(net.matches("NOT(").count() <= 2);

    let o = monodt(
        dir.path(),
        &["synth", "mdt_from_circuit", "x.net", "--out", "t.json"],
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(dir.path().join("t.c1.net").exists());
    let o = monodt(dir.path(), &["verify", "t.json", "x.net"]);
    assert_eq!(stdout(&o), "EQUIV\n");

    for (target, extra) in [
        ("inverter_sorted", vec!["--m", "7"]),
        ("inverter_fischer", vec!["--m", "5"]),
        (
            "inverter_blocks",
            vec!["--m", "16", "--t", "4", "--levels", "2"],
        ),
    ] {
        let mut args = vec!["synth", target];
        args.extend(extra);
        args.extend(["--out", "inv.net"]);
        let o = monodt(dir.path(), &args);
        assert_eq!(code(&o), 0, "{target}");
        assert!(stdout(&o).contains("inverter check: ok"), "{target}");
    }
    let o = monodt(dir.path(), &["synth", "inverter_sorted"]);
    assert_eq!(code(&o), 2);

    monodt(
        dir.path(),
        &["build", "mixed.tt", "--model", "mdl", "--out", "l.json"],
    );
    let o = monodt(
        dir.path(),
        &["synth", "circuit_from_mdl", "l.json", "--out", "l.net"],
    );
    assert_eq!(code(&o), 0);
    let o = monodt(dir.path(), &["verify", "l.net", "mixed.tt"]);
    assert_eq!(stdout(&o), "EQUIV\n");
}

const COIN_TREE: &str = r#"{
  "kind": "rmdt",
  "n": 2,
  "queries": ["tt:8", "tt:e"],
  "root": {"coin": true, "c0": {"q": 0, "c0": {"leaf": false}, "c1": {"leaf": true}},
                         "c1": {"q": 1, "c0": {"leaf": false}, "c1": {"leaf": true}}}
}"#;

#[test]
fn randomized_trees() {
    let dir = tables();
    write(&dir, "r.json", COIN_TREE);
    write(&dir, "or.tt", "n=2\ne\n");
    let o = monodt(dir.path(), &["rmdt", "prob", "r.json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o), "x=00 p=0\nx=10 p=1/2\nx=01 p=1/2\nx=11 p=1\n");
    let o = monodt(
        dir.path(),
        &["rmdt", "computes", "r.json", "--table", "or.tt"],
    );
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "computes=true\n"));
    let o = monodt(
        dir.path(),
        &[
            "rmdt",
            "computes",
            "r.json",
            "--table",
            "or.tt",
            "--theta",
            "two-thirds",
        ],
    );
    assert_eq!((code(&o), stdout(&o).as_str()), (1, "computes=false\n"));

    let o = monodt(
        dir.path(),
        &["rmdt", "derandomize", "r.json", "--out", "d.json"],
    );
    assert_eq!(code(&o), 0);
    let o = monodt(dir.path(), &["verify", "d.json", "or.tt"]);
    assert_eq!(stdout(&o), "EQUIV\n");

    let o = monodt(
        dir.path(),
        &["rmdt", "normalize", "r.json", "--out", "n.json"],
    );
    assert_eq!(code(&o), 0);
    let a = monodt(dir.path(), &["rmdt", "prob", "n.json"]);
    assert_eq!(stdout(&a), "x=00 p=0\nx=10 p=1/2\nx=01 p=1/2\nx=11 p=1\n");

    let o = monodt(dir.path(), &["rmdt", "majority", "r.json"]);
    assert_eq!(code(&o), 2);
    monodt(
        dir.path(),
        &["build", "xor.tt", "--model", "mdt", "--out", "x.json"],
    );
    let o = monodt(dir.path(), &["rmdt", "majority", "x.json", "--out", "maj"]);
    assert_eq!(stdout(&o), "subtrees=1\nEQUIV\n");
    assert!(dir.path().join("maj/t0.json").exists());
}

#[test]
fn query_set_trees() {
    let dir = tables();
    write(
        &dir,
        "w.json",
        r#"{"kind": "wrmdt", "n": 2, "w": 2, "queries": ["tt:8", "tt:e"],
            "root": {"qset": [0, 1], "c0": {"leaf": false}, "c1": {"leaf": true}}}"#,
    );
    let o = monodt(
        dir.path(),
        &["rmdt", "from_wrmdt", "w.json", "--out", "r.json"],
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("height=2"));
    let a = monodt(dir.path(), &["rmdt", "prob", "r.json"]);
    assert_eq!(stdout(&a), "x=00 p=0\nx=10 p=1/2\nx=01 p=1/2\nx=11 p=1\n");
}

#[test]
fn usage_errors() {
    let dir = tables();
    write(&dir, "bad.tt", "n=2\nzz\n");
    assert_eq!(code(&monodt(dir.path(), &["alt", "bad.tt"])), 2);
    assert_eq!(code(&monodt(dir.path(), &["alt", "missing.tt"])), 2);
    assert_eq!(code(&monodt(dir.path(), &["frobnicate"])), 2);
    let o = monodt(dir.path(), &["alt", "zero.tt", "--max-n", "2"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("exceeds"));
}

#[test]
fn selftest_subset() {
    let dir = tables();
    let o = monodt(
        dir.path(),
        &["selftest", "quick", "--only", "1,3,11", "--jobs", "2"],
    );
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).ends_with("3 passed, 0 failed\n"));
    let o = monodt(dir.path(), &["selftest", "quick", "--only", "13"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).starts_with("[FAIL] C13"));
    let one = monodt(
        dir.path(),
        &["selftest", "quick", "--only", "9", "--jobs", "1"],
    );
    let four = monodt(
        dir.path(),
        &["selftest", "quick", "--only", "9", "--jobs", "4"],
    );
    assert_eq!(stdout(&one), stdout(&four));
}

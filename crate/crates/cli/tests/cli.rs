use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fusionring"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

/// Z[S3]: pointed, rank 6, not commutative.
fn s3_group_ring() -> String {
    // elements r^a s^b as index a + 3b
    let mul = |x: usize, y: usize| {
        let (a, b, c, d) = (x % 3, x / 3, y % 3, y / 3);
        let a2 = if b == 0 { (a + c) % 3 } else { (a + 3 - c) % 3 };
        a2 + 3 * ((b + d) % 2)
    };
    let mut s = String::from("ring s3\nrank 6\nnames 1 r r2 s rs r2s\ndual 0 2 1 3 4 5\n");
    for i in 1..6 {
        for j in 1..6 {
            let row: Vec<String> = (0..6).map(|k| ((mul(i, j) == k) as u8).to_string()).collect();
            s.push_str(&format!("N {i} {j} : {}\n", row.join(" ")));
        }
    }
    s.push_str("end\n");
    s
}

/// Even part of SU(2)_5; its dimensions are cubic irrationals.
const CUBIC: &str = "ring su2_5_even\nrank 3\nnames 1 X Y\ndual 0 1 2\n\
N 1 1 : 1 0 1\nN 1 2 : 0 1 1\nN 2 1 : 0 1 1\nN 2 2 : 1 1 1\nend\n";

#[test]
fn catalog_documents_are_byte_stable() {
    for name in ["fib", "z2", "k12", "fib_z2", "fib_fib", "z2_z2"] {
        let o = run(&["catalog", name]);
        assert_eq!(code(&o), 0);
        assert_eq!(stdout(&o), fs::read_to_string(golden(&format!("{name}.ring"))).unwrap(), "{name}");
    }
    let o = run(&["catalog", "k_n", "--n", "3"]);
    assert_eq!(stdout(&o), fs::read_to_string(golden("k_3.ring")).unwrap());
    for name in ["fib", "k12", "fib_z2"] {
        let o = run(&["check", golden(&format!("{name}.ring")).to_str().unwrap()]);
        assert_eq!(code(&o), 0, "{name}");
    }
}

#[test]
fn exit_code_contract() {
    let dir = tempfile::tempdir().unwrap();
    // 0: valid / pass / isomorphic
    assert_eq!(code(&run(&["check", "catalog:k12"])), 0);
    assert_eq!(code(&run(&["obstruct", "catalog:fib_z2"])), 0);
    // 1: invalid / obstructed / not isomorphic
    let bad = dir.path().join("bad.ring");
    let text = fs::read_to_string(golden("fib_z2.ring")).unwrap().replace("N 1 1 : 1 1 0 0", "N 1 1 : 0 1 0 0");
    fs::write(&bad, text).unwrap();
    let o = run(&["check", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 5"), "{err}");
    assert_eq!(code(&run(&["obstruct", "catalog:k12"])), 1);
    assert_eq!(code(&run(&["iso", "catalog:k12", "catalog:fib_z2"])), 1);
    // 2: usage and parse errors
    let cut = dir.path().join("cut.ring");
    let text: String =
        fs::read_to_string(golden("k12.ring")).unwrap().lines().filter(|l| !l.starts_with("N 2 3")).map(|l| format!("{l}\n")).collect();
    fs::write(&cut, text).unwrap();
    let o = run(&["check", cut.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8(o.stderr).unwrap().contains("(2,3)"));
    assert_eq!(code(&run(&["check"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
    assert_eq!(code(&run(&["check", "catalog:nope"])), 2);
    assert_eq!(code(&run(&["enumerate", "--rank", "3", "--max-coeff", "2", "--budget", "3"])), 2);
    // 3: undecided
    let s3 = dir.path().join("s3.ring");
    fs::write(&s3, s3_group_ring()).unwrap();
    assert_eq!(code(&run(&["check", s3.to_str().unwrap()])), 0);
    let o = run(&["obstruct", s3.to_str().unwrap()]);
    assert_eq!(code(&o), 3);
    assert!(stdout(&o).contains("not commutative"));
    let cubic = dir.path().join("cubic.ring");
    fs::write(&cubic, CUBIC).unwrap();
    let o = run(&["fpdim", cubic.to_str().unwrap()]);
    assert_eq!(code(&o), 3);
    assert!(stdout(&o).contains("numeric"));
}

#[test]
fn obstruct_reports() {
    let o = run(&["obstruct", "catalog:k12"]);
    let out = stdout(&o);
    assert!(out.contains("10 + t1 + t2 = 0"), "{out}");
    assert!(out.contains("verdict: obstructed"));
    assert!(out.contains("pseudo-unitary"));
    let o = run(&["obstruct", "catalog:fib_z2"]);
    let out = stdout(&o);
    assert!(out.contains("center summands: 16"));
    assert!(out.contains("sum of squared dimensions: 30+10*sqrt(5)"));
    assert!(out.contains("theta = -1/4-1/4*sqrt(5) is not a root of unity"));
}

#[test]
fn codegrees_text() {
    let o = run(&["codegrees", "catalog:fib_z2"]);
    assert!(stdout(&o).contains("formal codegrees: 5+1*sqrt(5) (x2), 5-1*sqrt(5) (x2)"));
}

#[test]
fn product_and_iso() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("p.ring");
    let o = run(&["product", "catalog:fib", "catalog:z2", "-o", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(code(&run(&["check", out.to_str().unwrap()])), 0);
    let o = run(&["iso", out.to_str().unwrap(), golden("fib_z2.ring").to_str().unwrap(), "--json"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["isomorphic"], true);
    assert_eq!(v["permutation"].as_array().unwrap().len(), 4);
}

/// Every number in the JSON report appears verbatim in the text report.
#[test]
fn text_and_json_agree() {
    fn strings(v: &Value, out: &mut Vec<String>) {
        match v {
            Value::String(s) => out.push(s.clone()),
            Value::Array(a) => a.iter().for_each(|x| strings(x, out)),
            Value::Object(m) => m.values().for_each(|x| strings(x, out)),
            _ => {}
        }
    }
    for cmd in ["fpdim", "codegrees", "grading"] {
        for ring in ["catalog:fib_z2", "catalog:k12"] {
            let text = stdout(&run(&[cmd, ring]));
            let json: Value = serde_json::from_str(&stdout(&run(&[cmd, ring, "--json"]))).unwrap();
            let mut all = Vec::new();
            strings(&json, &mut all);
            for s in all {
                assert!(text.contains(&s), "{cmd} {ring}: {s:?} missing from\n{text}");
            }
        }
    }
    let text = stdout(&run(&["obstruct", "catalog:fib_z2"]));
    let json: Value = serde_json::from_str(&stdout(&run(&["obstruct", "catalog:fib_z2", "--json"]))).unwrap();
    assert_eq!(json["verdict"], "pass");
    assert_eq!(json["dim_square_total"], "30+10*sqrt(5)");
    for d in json["center_dims"].as_array().unwrap() {
        assert!(text.contains(d.as_str().unwrap()));
    }
}

#[test]
fn enumerate_writes_files_and_index() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["enumerate", "--rank", "2", "--max-coeff", "3", "--self-dual", "-o", dir.path().to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let index = fs::read_to_string(dir.path().join("index.tsv")).unwrap();
    let lines: Vec<&str> = index.lines().collect();
    assert_eq!(lines.len(), 5);
    assert!(lines[0].starts_with("hash\tname\tfpdim"));
    for l in &lines[1..] {
        let hash = l.split('\t').next().unwrap();
        assert_eq!(hash.len(), 16);
        let file = dir.path().join(format!("{hash}.ring"));
        assert_eq!(code(&run(&["check", file.to_str().unwrap()])), 0);
    }
    assert!(stdout(&o).contains("complete within bound B = 3"));
    // rerunning gives identical files
    let dir2 = tempfile::tempdir().unwrap();
    run(&["enumerate", "--rank", "2", "--max-coeff", "3", "--self-dual", "-o", dir2.path().to_str().unwrap()]);
    assert_eq!(index, fs::read_to_string(dir2.path().join("index.tsv")).unwrap());
}

#[test]
fn budget_from_environment() {
    let o = bin()
        .args(["enumerate", "--rank", "3", "--max-coeff", "2"])
        .env("FUSIONRING_NODE_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8(o.stderr).unwrap().contains("budget"));
}

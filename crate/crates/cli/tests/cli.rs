use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_totneg"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p
}

const N3: &str = "3 3\n-1 -2 -4\n-2 -3 -5\n-4 -5 -6\n";
const NEAR: &str = "2 2\n-1 -2\n-2 -5\n";
const EXAMPLE: &str = "3 3\n0 0 0\n-1 -3 -3\n-1 -1 -1\n";

struct Fixture {
    dir: TempDir,
}

impl Fixture {
    fn new() -> Self {
        Fixture { dir: TempDir::new().unwrap() }
    }

    fn file(&self, name: &str, body: &str) -> String {
        write(self.dir.path(), name, body).to_string_lossy().into_owned()
    }

    fn path(&self, name: &str) -> String {
        self.dir.path().join(name).to_string_lossy().into_owned()
    }
}

#[test]
fn check_all_methods_on_n3() {
    let f = Fixture::new();
    let p = f.file("n3.mat", N3);
    let out = run(&["check", &p, "--class", "tn", "--order", "3", "--method", "all", "--json"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let methods = v["methods"].as_array().unwrap();
    assert_eq!(methods.len(), 6);
    assert!(methods.iter().all(|m| m["holds"] == Value::Bool(true)));
    assert_eq!(v["class"], "tn");
    assert_eq!(v["order"], 3);
    for key in ["input_digest", "seed", "elapsed_ms", "command"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn near_miss_reports_witnesses_that_verify() {
    let f = Fixture::new();
    let p = f.file("near.mat", NEAR);
    for method in ["minors", "contiguous", "snr", "vd", "lcp", "all"] {
        let out = run(&["check", &p, "--class", "tn", "--order", "2", "--method", method, "--json"]);
        assert_eq!(code(&out), 1, "{method}");
        let json = stdout(&out);
        let v: Value = serde_json::from_str(&json).unwrap();
        assert!(v["methods"][0]["witness"].is_object(), "{method}");
        let rp = f.file("report.json", &json);
        let ver = run(&["verify-witness", &rp, &p]);
        assert_eq!(code(&ver), 0, "{method}: {}", stdout(&ver));
        assert!(!stdout(&ver).contains("REJECTED"));
    }
    let out = run(&["check", &p, "--class", "tn", "--order", "2", "--method", "minors"]);
    assert!(stdout(&out).contains("non-negative-minor"));
    assert!(stdout(&out).contains("value 1"));
}

#[test]
fn tampered_reports_are_rejected() {
    let f = Fixture::new();
    let p = f.file("near.mat", NEAR);
    let out = run(&["check", &p, "--class", "tn", "--method", "minors", "--json"]);
    let mut v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    v["methods"][0]["witness"]["detail"] = Value::String("-3".into());
    let rp = f.file("bad.json", &v.to_string());
    assert_eq!(code(&run(&["verify-witness", &rp, &p])), 1);
    let other = f.file("n3.mat", N3);
    let rp = f.file("good.json", &stdout(&out));
    assert_eq!(code(&run(&["verify-witness", &rp, &other])), 1);
}

#[test]
fn report_round_trips() {
    let f = Fixture::new();
    let p = f.file("near.mat", NEAR);
    let out = run(&["check", &p, "--class", "tn", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let again: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(v, again);
}

#[test]
fn worked_example_is_tnp() {
    let f = Fixture::new();
    let p = f.file("ex.mat", EXAMPLE);
    let out = run(&["check", &p, "--class", "tnp", "--order", "3"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("tnp-lcp: inconclusive"));
    let out = run(&["check", &p, "--class", "tnp", "--order", "3", "--method", "lcp", "--json"]);
    assert_eq!(code(&out), 1);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["methods"][0]["holds"], Value::Null);
    assert_eq!(code(&run(&["check", &p, "--class", "tn", "--order", "1"])), 1);
}

#[test]
fn hull_commands() {
    let f = Fixture::new();
    let same = f.file("same.hull", &format!("{N3}\n{N3}"));
    assert_eq!(code(&run(&["hull", &same, "--class", "tn", "--order", "3"])), 0);

    let h = f.file("h.hull", "2 2\n-1 -2\n-2 -1\n\n2 2\n-2 -3\n-3 -2\n");
    let out = run(&["hull", &h, "--class", "tn", "--order", "2", "--json"]);
    assert_eq!(code(&out), 1);
    let json = stdout(&out);
    let v: Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["methods"][0]["hull"]["label"], "C+");
    let rp = f.file("h.json", &json);
    assert_eq!(code(&run(&["verify-witness", &rp, &h])), 0);

    assert_eq!(code(&run(&["hull", &h, "--class", "tn", "--order", "0"])), 2);
    let bad = f.file("bad.hull", "2 2\n-1 -2\n-2 -1\n\n1 1\n-2\n");
    assert_eq!(code(&run(&["hull", &bad, "--class", "tn"])), 2);
}

#[test]
fn lcp_commands() {
    let f = Fixture::new();
    let l = f.file("l.lcp", "1 1\n-2\nq: 4\n");
    let out = run(&["lcp", &l, "--enumerate"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("solutions: {(0), (2)}"));

    let ex = f.file("ex.lcp", &format!("{EXAMPLE}q: 0 1 1\n"));
    let out = run(&["lcp", &ex, "--enumerate", "--json"]);
    assert_eq!(code(&out), 0);
    let json = stdout(&out);
    let v: Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["lcp"]["kind"], "infinite");
    let rp = f.file("ex.json", &json);
    assert_eq!(code(&run(&["verify-witness", &rp, &ex])), 0);
    assert!(stdout(&run(&["lcp", &ex, "--enumerate"])).contains("infinite solution set"));

    let n2 = f.file("n2.mat", "2 2\n-1 -2\n-2 -1\n");
    assert_eq!(code(&run(&["lcp", &n2, "--single-vector", "--order", "2"])), 0);
    assert_eq!(code(&run(&["lcp", &n2])), 2);
}

#[test]
fn generate_commands() {
    let f = Fixture::new();
    let out_dir = f.path("out");
    let out = run(&["generate", "--class", "tn", "--shape", "3x3", "--order", "3", "--seed", "7", "--out-dir", &out_dir]);
    assert_eq!(code(&out), 0);
    let path = stdout(&out).trim().to_string();
    let meta = fs::read_to_string(Path::new(&path).with_extension("meta")).unwrap();
    assert!(meta.contains("class=TN_3") && meta.contains("seed=7"));
    assert_eq!(code(&run(&["check", &path, "--class", "tn", "--order", "3"])), 0);

    let out = run(&[
        "generate", "--class", "near-miss", "--shape", "3x3", "--order", "3", "--seed", "7", "--count", "2",
        "--out-dir", &out_dir,
    ]);
    assert_eq!(code(&out), 0);
    for path in stdout(&out).lines() {
        assert_eq!(code(&run(&["check", path, "--class", "tn", "--order", "3"])), 1);
        let meta = fs::read_to_string(Path::new(path).with_extension("meta")).unwrap();
        assert!(meta.contains("failing_minor="));
    }

    let out = run(&["generate", "--class", "tn", "--shape", "3x3", "--order", "3", "--seed", "7", "--count", "0", "--out-dir", &out_dir]);
    assert_eq!(code(&out), 2);
    let out = run(&["generate", "--class", "tn", "--shape", "3x3", "--seed", "7", "--out-dir", &out_dir]);
    assert_eq!(code(&out), 2);
}

#[test]
fn usage_and_resource_errors() {
    let f = Fixture::new();
    let bad = f.file("bad.mat", "2 2\n-1 x\n-2 -1\n");
    let out = run(&["check", &bad, "--class", "tn"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    let p = f.file("n3.mat", N3);
    assert_eq!(code(&run(&["check", &p, "--class", "tn", "--order", "4"])), 2);
    assert_eq!(code(&run(&["check", &p, "--class", "tnp", "--method", "contiguous"])), 2);
    assert_eq!(code(&run(&["check", &p, "--class", "tn", "--method", "snr", "--alpha", "1,1"])), 2);
    assert_eq!(code(&run(&["check", &p, "--class", "tn", "--method", "snr", "--alpha", "1,-1/2"])), 0);

    let big: String = {
        let n = 13;
        let mut s = format!("{n} {n}\n");
        for _ in 0..n {
            s.push_str(&vec!["-1"; n].join(" "));
            s.push('\n');
        }
        s
    };
    let p = f.file("big.mat", &big);
    assert_eq!(code(&run(&["check", &p, "--class", "tnp", "--method", "snr"])), 3);
}

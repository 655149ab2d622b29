#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use bsegal::bisset::box_product;
use bsegal::json::bisset_to_doc;
use bsegal::{igroupoid_nerve, standard_simplex};
use serde_json::Value;

pub struct Run {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Run {
    pub fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| panic!("stdout is not json ({e}): {}", self.stdout))
    }
}

pub fn run<S: AsRef<str>>(args: &[S]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_bsegal"))
        .args(args.iter().map(|a| a.as_ref()))
        .output()
        .expect("spawn bsegal");
    Run {
        status: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

pub fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).to_string_lossy().into_owned()
}

fn golden_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.json"))
}

/// Files generated per test run: a box product bisimplicial set and an
/// intact filtration certificate.
pub struct Scratch {
    pub dir: tempfile::TempDir,
}

impl Scratch {
    pub fn new() -> Self {
        let dir = tempfile::tempdir().expect("tempdir");
        let x = box_product(&standard_simplex(1, 2), &igroupoid_nerve(1, 2)).unwrap();
        fs::write(dir.path().join("box.json"), serde_json::to_string(&bisset_to_doc(&x)).unwrap()).unwrap();
        let cert = run(&["filtration", "2"]);
        assert_eq!(cert.status, 0, "{}", cert.stderr);
        fs::write(dir.path().join("filtration.json"), &cert.stdout).unwrap();
        Scratch { dir }
    }

    pub fn path(&self, name: &str) -> String {
        self.dir.path().join(name).to_string_lossy().into_owned()
    }
}

pub struct Golden {
    pub name: &'static str,
    pub args: Vec<String>,
    pub status: i32,
}

pub fn golden_cases(s: &Scratch) -> Vec<Golden> {
    let case = |name, args: &[&str], status| Golden { name, args: args.iter().map(|a| a.to_string()).collect(), status };
    let arrow = fixture("walking-arrow.json");
    let z2 = fixture("z2.json");
    vec![
        case("shape-3-cone", &["shape", "3", "cone"], 0),
        case("shape-2-horn-1", &["-D", "2", "shape", "2", "horn", "-i", "1"], 0),
        case("inerve-1", &["-D", "2", "inerve", "1"], 0),
        case("filtration-1", &["filtration", "1"], 0),
        case("horn-chain-3", &["filtration", "3", "--builder", "horn-chain"], 0),
        case("certify-filtration-2", &["certify", &s.path("filtration.json")], 0),
        case("nerve-check-walking-arrow", &["nerve-check", &arrow], 0),
        case("core-walking-arrow", &["core", &arrow], 0),
        case("ho-walking-arrow", &["ho", &arrow], 0),
        case("ho-bousfield-z2", &["ho", "--bousfield", &z2], 0),
        case("ho-bousfield-walking-arrow", &["ho", "--bousfield", &arrow], 1),
        case("fraction-table-z2", &["fraction-table", &z2], 0),
        case("divide-simplex-1", &["-D", "2", "divide", "simplex:1", &s.path("box.json")], 0),
        case("sweep-fixtures", &["sweep", "--corpus", &fixture("corpus")], 0),
    ]
}

/// Runs a golden case; with `BSEGAL_BLESS` set, rewrites its file instead.
pub fn check_golden(g: &Golden) -> Result<(), String> {
    let r = run(&g.args);
    if r.status != g.status {
        return Err(format!("{}: status {} (expected {}): {}", g.name, r.status, g.status, r.stderr));
    }
    let path = golden_path(g.name);
    if std::env::var_os("BSEGAL_BLESS").is_some() {
        fs::write(&path, &r.stdout).map_err(|e| e.to_string())?;
        return Ok(());
    }
    let expected = fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if expected != r.stdout {
        return Err(format!("{}: output differs from {}", g.name, path.display()));
    }
    let again = run(&g.args);
    if again.stdout != r.stdout {
        return Err(format!("{}: output is not deterministic", g.name));
    }
    Ok(())
}

/// Mutations of valid inputs together with the exit status they must produce.
pub fn mutation_checks(s: &Scratch) -> Vec<(&'static str, Result<(), String>)> {
    let cert: Value = serde_json::from_str(&fs::read_to_string(s.path("filtration.json")).unwrap()).unwrap();
    let write = |name: &str, v: &Value| {
        let p = s.path(name);
        fs::write(&p, serde_json::to_string(v).unwrap()).unwrap();
        p
    };
    let expect = |r: Run, status: i32, check: &dyn Fn(&Run) -> bool| {
        if r.status != status {
            Err(format!("status {} (expected {status}): {}{}", r.status, r.stdout, r.stderr))
        } else if !check(&r) {
            Err(format!("unexpected output: {}{}", r.stdout, r.stderr))
        } else {
            Ok(())
        }
    };
    let failing = |step: u64| move |r: &Run| r.json()["failing_step"] == Value::from(step) && r.json()["accepted"] == false;

    let mut dropped = cert.clone();
    dropped["steps"][1]["attachments"].as_array_mut().unwrap().pop();
    let mut grown = cert.clone();
    grown["steps"][0]["stage_counts"][1] = Value::from(99);
    let mut wrong_gen = cert.clone();
    wrong_gen["steps"][2]["generator"] = Value::from("h0^3");
    let mut truncated = cert.clone();
    truncated["steps"].as_array_mut().unwrap().pop();

    let arrow_json = fs::read_to_string(fixture("walking-arrow.json")).unwrap();
    let broken = arrow_json.replacen("\"cod\": \"1\"", "\"cod\": ", 1);
    vec![
        ("certify: dropped attachment", expect(run(&["certify", &write("m1.json", &dropped)]), 1, &failing(1))),
        ("certify: wrong stage count", expect(run(&["certify", &write("m2.json", &grown)]), 1, &failing(0))),
        ("certify: wrong generator", expect(run(&["certify", &write("m3.json", &wrong_gen)]), 1, &failing(2))),
        ("certify: missing last step", expect(run(&["certify", &write("m4.json", &truncated)]), 1, &failing(2))),
        (
            "fraction-table: groupoid -> non-groupoid",
            expect(run(&["fraction-table", &fixture("walking-arrow.json")]), 1, &|r| {
                r.json()["beta2_counterexample"] == serde_json::json!(["f", "id0"])
            }),
        ),
        (
            "malformed json has a location",
            expect(run(&["nerve-check", "--json", &broken]), 2, &|r| r.stderr.contains("line") && r.stderr.contains("column")),
        ),
        ("horn index out of range", expect(run(&["shape", "3", "horn", "-i", "4"]), 2, &|_| true)),
        ("filtration needs D >= 2", expect(run(&["-D", "1", "filtration", "1"]), 2, &|_| true)),
        ("unknown subcommand", expect(run(&["frobnicate"]), 2, &|_| true)),
        ("file and --json together", expect(run(&["core", &fixture("z2.json"), "--json", "{}"]), 2, &|_| true)),
    ]
}

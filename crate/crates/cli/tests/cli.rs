mod common;

use bsegal::json::{self, SSetDoc};
use common::*;
use serde_json::json;

#[test]
fn golden_outputs() {
    let s = Scratch::new();
    let failures: Vec<String> = golden_cases(&s).iter().filter_map(|g| check_golden(g).err()).collect();
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn mutations_flip_status() {
    let s = Scratch::new();
    for (name, r) in mutation_checks(&s) {
        assert!(r.is_ok(), "{name}: {}", r.unwrap_err());
    }
}

#[test]
fn cone_has_pinnacle_counts() {
    let doc: SSetDoc = json::parse(&run(&["shape", "3", "cone"]).stdout).unwrap();
    assert_eq!(doc.nondegenerate, Some(vec![4, 3]));
    assert_eq!(doc.truncation, 3);
    assert_eq!(doc.trust_dimension, Some(2));
}

#[test]
fn walking_arrow_verdicts() {
    let r = run(&["nerve-check", &fixture("walking-arrow.json")]);
    assert_eq!(r.status, 0);
    let v = r.json();
    assert_eq!(
        (&v["segal"], &v["bousfield"], &v["complete"], &v["beta2_counterexample"]),
        (&json!(true), &json!(false), &json!(true), &json!(["f", "id0"]))
    );
}

#[test]
fn emitted_documents_round_trip() {
    for args in [&["shape", "2", "spc"][..], &["-D", "2", "inerve", "2"], &["shape", "2", "isp2"]] {
        let text = run(args).stdout;
        let doc: SSetDoc = json::parse(&text).unwrap();
        let mut back = json::sset_to_doc(&json::sset_from_doc(&doc).unwrap());
        back.trust_dimension = doc.trust_dimension;
        assert_eq!(back, doc, "{args:?}");
    }
    let text = run(&["filtration", "2", "--builder", "spine"]).stdout;
    let v: serde_json::Value = json::parse(&text).unwrap();
    let c = bsegal::CellularCertificate::from_json(&v).unwrap();
    assert_eq!(c.to_json(), v);
}

#[test]
fn inline_json_matches_file() {
    let path = fixture("z2.json");
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(run(&["core", &path]).stdout, run(&["core", "--json", &text]).stdout);
}

#[test]
fn divide_by_simplex_counts_column() {
    let s = Scratch::new();
    let doc: SSetDoc = json::parse(&run(&["divide", "simplex:0", &s.path("box.json")]).stdout).unwrap();
    // column 0 of Δ¹ □ IΔ¹ is two copies of IΔ¹
    assert_eq!(doc.simplices, vec![4, 8, 16]);
    let mismatch = run(&["-D", "3", "divide", "simplex:0", &s.path("box.json")]);
    assert_eq!(mismatch.status, 2);
}

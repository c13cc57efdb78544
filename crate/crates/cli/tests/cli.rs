use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn quiver_file(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("clustercat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_clustercat"))
        .args(args)
        .output()
        .unwrap()
}

fn run_on(quiver: &Path, args: &[&str]) -> Output {
    let mut all = vec!["--quiver", quiver.to_str().unwrap()];
    all.extend_from_slice(args);
    run(&all)
}

fn stdout_json(o: &Output) -> Value {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn a2() -> PathBuf {
    quiver_file("a2.txt", "vertices 2\narrow 1 2\n")
}

fn a3() -> PathBuf {
    quiver_file("a3.txt", "# linear\nvertices 3\narrow 1 2\narrow 2 3\n")
}

#[test]
fn ar_listing() {
    let o = stdout_json(&run_on(&a2(), &["ar"]));
    assert_eq!(o["schema_version"], 1);
    assert_eq!(o["modules"].as_array().unwrap().len(), 3);

    let a1 = quiver_file("a1.txt", "vertices 1\n");
    let o = stdout_json(&run_on(&a1, &["ar"]));
    let modules = o["modules"].as_array().unwrap();
    assert_eq!(modules.len(), 1);
    assert!(modules[0]["tau"].is_null() && modules[0]["tau_inverse"].is_null());

    let tsv = run_on(&a2(), &["ar", "--format", "tsv"]);
    assert_eq!(String::from_utf8(tsv.stdout).unwrap().lines().count(), 4);
}

#[test]
fn cyclic_quiver_is_rejected() {
    let q = quiver_file("cyc.txt", "vertices 3\narrow 1 2\narrow 2 3\narrow 3 1\n");
    let o = run_on(&q, &["ar"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("oriented cycle"));
}

#[test]
fn hom_pairs() {
    let o = stdout_json(&run_on(&a2(), &["hom", "m1[0]", "m1[0]", "--m", "2"]));
    assert_eq!((o["hom"].as_u64(), o["ext"].as_u64()), (Some(1), Some(0)));

    // every object of C_{F^2} has no self-extensions, whichever representative is named
    let cat = stdout_json(&run_on(&a2(), &["ind", "--m", "2"]));
    for e in cat["objects"].as_array().unwrap() {
        let x = e["object"].as_str().unwrap();
        let o = stdout_json(&run_on(&a2(), &["hom", x, x, "--m", "2"]));
        assert_eq!(o["ext"], 0);
        assert_eq!(o["hom"], 1);
    }
    let far = stdout_json(&run_on(&a2(), &["hom", "m1[40]", "m1[40]", "--m", "2"]));
    assert_eq!(far["ext"], 0);

    let bad = run_on(&a2(), &["hom", "m1[", "m1[0]"]);
    assert_eq!(bad.status.code(), Some(2));
    let unknown = run_on(&a2(), &["hom", "m9[0]", "m1[0]"]);
    assert_eq!(unknown.status.code(), Some(2));
}

#[test]
fn tables_export() {
    let tsv = run_on(&a2(), &["hom", "--format", "tsv"]);
    let text = String::from_utf8(tsv.stdout).unwrap();
    assert!(text.starts_with("hom\tm1\tm2\tm3\n"));
    let o = stdout_json(&run_on(&a2(), &["hom", "--m", "2"]));
    assert_eq!(o["entries"].as_array().unwrap().len(), 100);
}

#[test]
fn tilting_catalog() {
    let tsv = run_on(&a3(), &["tilting", "--format", "tsv"]);
    let text = String::from_utf8(tsv.stdout).unwrap();
    assert_eq!(text.lines().count(), 1 + 14);
    let o = stdout_json(&run_on(&a3(), &["tilting", "--m", "2"]));
    assert_eq!(o["count"], 14);
    assert!(o["objects"]
        .as_array()
        .unwrap()
        .iter()
        .all(|v| v.as_array().unwrap().len() == 6));
}

#[test]
fn graph_export() {
    let o = stdout_json(&run_on(&a2(), &["graph", "--m", "2"]));
    assert_eq!(o["schema_version"], 1);
    assert_eq!(o["vertices"].as_array().unwrap().len(), 5);
    assert_eq!(o["edges"].as_array().unwrap().len(), 5);
    assert_eq!(o["connected"], true);
    let dot = run_on(&a2(), &["graph", "--format", "dot"]);
    assert!(String::from_utf8(dot.stdout)
        .unwrap()
        .starts_with("graph tilting_m1 {"));
    let wrong = run_on(&a2(), &["tilting", "--format", "dot"]);
    assert_eq!(wrong.status.code(), Some(2));
}

#[test]
fn endo_report() {
    let ts = stdout_json(&run_on(&a2(), &["tilting"]));
    let h = ts["generators"]
        .as_array()
        .unwrap()
        .iter()
        .position(|g| {
            g.as_array()
                .unwrap()
                .iter()
                .all(|x| x.as_str().unwrap().ends_with("[0]"))
                && {
                    // both projectives: m1 = S_2 = P_2 and m2 = P_1
                    let names: Vec<&str> = g
                        .as_array()
                        .unwrap()
                        .iter()
                        .map(|x| x.as_str().unwrap())
                        .collect();
                    names == ["m1[0]", "m2[0]"]
                }
        })
        .unwrap();
    let o = stdout_json(&run_on(
        &a2(),
        &["endo", "--m", "2", "--vertex", &h.to_string()],
    ));
    assert_eq!(o["pattern_ok"], true);
    assert_eq!(o["dim_E"], 0);
    assert_eq!(o["dim_C"], 3);
    let out_of_range = run_on(&a2(), &["endo", "--vertex", "5"]);
    assert_eq!(out_of_range.status.code(), Some(2));
}

#[test]
fn verify_battery() {
    let o = run(&["verify", "--battery", "A2"]);
    let v = stdout_json(&o);
    assert_eq!(v["passed"], true);
    assert_eq!(v["failed"], 0);
    let bad = run(&["verify", "--battery", "B3"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["ar"]).status.code(), Some(2));
    assert_eq!(run_on(&a2(), &["ar", "--m", "0"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic_and_can_go_to_a_file() {
    let a = run_on(&a3(), &["graph", "--m", "3"]).stdout;
    let b = run_on(&a3(), &["graph", "--m", "3"]).stdout;
    assert_eq!(a, b);
    let target = std::env::temp_dir().join(format!("clustercat-out-{}.json", std::process::id()));
    let o = run_on(
        &a3(),
        &["graph", "--m", "3", "--out", target.to_str().unwrap()],
    );
    assert!(o.status.success() && o.stdout.is_empty());
    assert_eq!(std::fs::read(&target).unwrap(), a);
    std::fs::remove_file(target).unwrap();
}

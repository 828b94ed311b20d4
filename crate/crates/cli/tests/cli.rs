use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn vsg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vsg")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn yamada_of_theta() {
    let out = vsg(&["--format", "text", "yamada", &data("theta.json")]);
    assert_eq!(code(&out), 0);
    // σ − σ² with σ = A + 1 + A⁻¹
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "-1*A^2-1*A^1-2*A^0-1*A^-1-1*A^-2\n");
    let out = vsg(&["yamada", "--normalized", &data("kink.json")]);
    let v = json(&out);
    assert!(v["normalized"].is_string() && v["yamada"].is_string());
}

#[test]
fn validate_reports_rules() {
    let out = vsg(&["validate", &data("broken.json")]);
    assert_eq!(code(&out), 1);
    let v = json(&out);
    assert_eq!(v["ok"], false);
    assert_eq!(v["violations"][0]["rule"], "unpaired-crossing");
    assert_eq!(code(&vsg(&["validate", &data("theta.json")])), 0);
    // invalid input to any other command
    let out = vsg(&["yamada", &data("broken.json")]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("unpaired-crossing"));
    assert_eq!(code(&vsg(&["yamada", "/nonexistent.json"])), 1);
    assert_eq!(code(&vsg(&["frobnicate"])), 1);
}

#[test]
fn search_exit_codes() {
    let kink = data("kink.json");
    let unknot = data("unknot.json");
    let out = vsg(&["search", &kink, &unknot, "--max-crossings", "3", "--max-states", "1000"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["outcome"], "equivalent");
    assert_eq!(v["witness"].as_array().unwrap().len(), 1);
    assert_eq!(v["witness"][0]["move"], "I");

    let vt = data("virtual_trefoil.json");
    let out = vsg(&["search", &unknot, &vt, "--max-crossings", "3", "--max-states", "1000"]);
    assert_eq!(code(&out), 3);
    assert_eq!(json(&out)["outcome"], "exhausted");
    // budget smaller than the inputs
    assert_eq!(code(&vsg(&["search", &unknot, &vt, "--max-crossings", "1", "--max-states", "1000"])), 2);
    assert_eq!(code(&vsg(&["yamada", "--max-crossings", "1", &data("trefoil.json")])), 2);
}

#[test]
fn group_of_theta() {
    let out = vsg(&["group", "--simplify", "--abelianize", "--homs", "S3", "--homs", "Z3", &data("theta.json")]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["generators"].as_array().unwrap().len(), 2);
    assert_eq!(v["relators"].as_array().unwrap().len(), 0);
    assert_eq!(v["abelianization"]["free_rank"], 2);
    // free group on two generators: |G|² homomorphisms
    assert_eq!(v["homs"]["S3"], 36);
    assert_eq!(v["homs"]["Z3"], 9);
}

#[test]
fn quandle_counts() {
    let count = |file: &str| json(&vsg(&["quandle", "--structure", "dihedral3", &data(file)]))["colorings"].clone();
    assert_eq!(count("unknot.json"), 3);
    assert_eq!(count("trefoil.json"), 9);
    let out = vsg(&["quandle", "--structure", "dihedral3", &data("theta.json")]);
    assert_eq!(code(&out), 1);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("vqs.json");
    std::fs::write(&path, r#"{"elements":["a"],"op":[[0]],"bar":[0],"f":[0],"d":1}"#).unwrap();
    let out = vsg(&["quandle", "--structure", path.to_str().unwrap(), &data("theta.json")]);
    assert_eq!(json(&out)["colorings"], 1);
}

#[test]
fn tg_tables() {
    let out = vsg(&["tg", "--linking", "--bracket", &data("two_loops.json")]);
    let v = json(&out);
    assert_eq!(v["count"], 1);
    assert_eq!(v["links"][0]["linking"][0], "1/2");
    let out = vsg(&["--format", "text", "tg", "--linking", &data("theta.json")]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "choice\tcomponents\tcrossings\tlinking");
    assert_eq!(lines.len(), 10);
    assert_eq!(lines.iter().skip(1).filter(|l| l.split('\t').nth(1) == Some("1")).count(), 3);
}

#[test]
fn realize_and_read_back() {
    let dir = tempfile::tempdir().unwrap();
    let diagram = dir.path().join("d.json");
    let svg = dir.path().join("d.svg");
    let input = data("virtual_trefoil.json");
    let out = vsg(&["realize", "--out", diagram.to_str().unwrap(), "--svg", svg.to_str().unwrap(), &input]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["classical"], 2);
    assert!(v["virtual"].as_u64().unwrap() >= 1);
    assert!(std::fs::read_to_string(&svg).unwrap().contains("class=\"virtual\""));
    let out = vsg(&["gauss", diagram.to_str().unwrap()]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), std::fs::read_to_string(&input).unwrap());
}

#[test]
fn moves_apply_and_undo() {
    let trefoil = data("trefoil.json");
    let sites = json(&vsg(&["moves", "list", "--max-crossings", "4", &trefoil]));
    let sites = sites.as_array().unwrap();
    assert!(!sites.is_empty());
    let dir = tempfile::tempdir().unwrap();
    for site in sites.iter().step_by(7) {
        let out = json(&vsg(&["moves", "apply", "--site", &site.to_string(), &trefoil]));
        let next = dir.path().join("next.json");
        std::fs::write(&next, out["code"].to_string()).unwrap();
        let back = vsg(&["--format", "text", "moves", "apply", "--site", &out["inverse"].to_string(), next.to_str().unwrap()]);
        assert_eq!(code(&back), 0, "{site}");
        let original: Value = serde_json::from_str(&std::fs::read_to_string(&trefoil).unwrap()).unwrap();
        let undone: Value = serde_json::from_slice(&back.stdout).unwrap();
        assert_eq!(undone, original, "{site}");
    }
    // forbidden moves need --allow
    let site = r#"{"move":"VIII*","edge":"e1","index":0}"#;
    assert_eq!(code(&vsg(&["moves", "apply", "--site", site, &trefoil])), 1);
    assert_eq!(code(&vsg(&["moves", "apply", "--allow", "viii*", "--site", site, &trefoil])), 0);
}

#[test]
fn normalize_forbidden() {
    let out = vsg(&["normalize", "--forbidden", "viii", &data("virtual_trefoil.json")]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["passages"]["e1"].as_array().unwrap().len(), 0);
}

#[test]
fn output_is_deterministic() {
    let runs: Vec<Vec<String>> = vec![
        vec!["tg".into(), "--linking".into(), "--bracket".into(), data("hopf.json")],
        vec!["moves".into(), "list".into(), "--pliable".into(), data("trefoil.json")],
        vec!["search".into(), data("trefoil.json"), data("trefoil.json"), "--max-crossings".into(), "4".into()],
        vec!["group".into(), "--simplify".into(), "--homs".into(), "S4".into(), data("trefoil.json")],
        vec!["realize".into(), data("trefoil.json")],
        vec!["quandle".into(), "--structure".into(), "dihedral5".into(), data("virtual_trefoil.json")],
    ];
    for args in runs {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let first = vsg(&args);
        assert_eq!(code(&first), 0, "{args:?}");
        for workers in ["1", "4"] {
            let mut with = vec!["--workers", workers];
            with.extend(&args);
            assert_eq!(vsg(&with).stdout, first.stdout, "{args:?} with {workers} workers");
        }
    }
}

use std::process::Command;

use khbord::cli::run_with;
use khbord::paperdata::{default_max_arity, run_all, Catalog};

fn run(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_with(std::iter::once("khbord").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> serde_json::Value {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn trefoil_reduced_f2() {
    let v = json(&["kh-homology", "--braid", "1 1 1", "--strands", "2", "--closure", "trace", "--reduced", "--ring", "f2", "--json"]);
    assert_eq!(v["total"], 3);
    assert_eq!(v["delta_thin"], true);
}

#[test]
fn t37_reduced_bar_natan_dimension() {
    let v = json(&[
        "kh-homology", "--braid", "1 2 1 2 1 2 1 2 1 2 1 2 1 2", "--strands", "3", "--closure", "trace", "--reduced", "--ring", "f2q",
        "--json",
    ]);
    assert_eq!(v["total"], 14);
    assert_eq!(v["crossings"], 14);
}

#[test]
fn bordered_check_all_agrees_with_run_all() {
    let expected = run_all(&Catalog::builtin(), default_max_arity()).unwrap();
    let (code, out, _) = run(&["bordered-check", "all", "--report", "json"]);
    assert_eq!(code, i32::from(expected.iter().any(|r| !r.passed())));
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), expected.len());
    for (row, r) in rows.iter().zip(&expected) {
        assert_eq!(row["check"], r.check.as_str());
        assert_eq!(row["status"], "pass");
        assert_eq!(row["detail"], r.detail.as_str());
    }
}

#[test]
fn single_checks_and_their_exit_codes() {
    for check in ["omega", "az-pairing", "gprime-K", "gprime-U", "basis-change", "catalog"] {
        let (code, out, _) = run(&["bordered-check", check]);
        assert_eq!(code, 0, "{out}");
        assert!(out.starts_with(&format!("PASS {check}")), "{out}");
    }
    assert_eq!(run(&["bordered-check", "omega", "--max-arity", "3"]).0, 2);
}

#[test]
fn text_and_json_carry_equal_numbers() {
    let args = ["kh-ss", "--braid", "1 1 1 1 1", "--strands", "2", "--reduced"];
    let (_, text, _) = run(&args);
    let pages = json(&[&args[..], &["--json"]].concat());
    for p in pages.as_array().unwrap() {
        let line = format!("E_{}", p["page"]);
        let header = text.lines().find(|l| l.starts_with(&line)).unwrap();
        assert!(header.contains(&format!("total dim {}", p["total"])), "{header}");
        assert!(header.contains(&format!("= {}", p["d_rank"])), "{header}");
    }
    let h = json(&["kh-homology", "--braid", "1 1 1 1 1", "--strands", "2", "--json"]);
    let (_, text, _) = run(&["kh-homology", "--braid", "1 1 1 1 1", "--strands", "2"]);
    assert!(text.contains(&format!("total dim {}", h["total"])));
}

#[test]
fn reports_are_deterministic() {
    for args in [
        &["kh-homology", "--braid", "1 -2 1 -2", "--strands", "3", "--ring", "f2q", "--json"][..],
        &["kh-ss", "--braid", "1 2 1 2 1 2 1 2", "--reduced", "--json"][..],
        &["bordered-check", "all", "--report", "json"][..],
        &["bordered-box", "azbar*az", "--json"][..],
    ] {
        assert_eq!(run(args).1, run(args).1);
    }
}

#[test]
fn mirror_flag_negates_gradings() {
    let a = json(&["kh-homology", "--braid", "1 1 1", "--json"]);
    let b = json(&["kh-homology", "--braid", "1 1 1", "--as-mirror", "--json"]);
    let flip = |v: &serde_json::Value| {
        let mut e: Vec<(i64, i64, i64)> = v["dims"]
            .as_array()
            .unwrap()
            .iter()
            .map(|d| (-d["h"].as_i64().unwrap(), -d["q"].as_i64().unwrap(), d["dim"].as_i64().unwrap()))
            .collect();
        e.sort();
        e
    };
    let mut direct: Vec<(i64, i64, i64)> = b["dims"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| (d["h"].as_i64().unwrap(), d["q"].as_i64().unwrap(), d["dim"].as_i64().unwrap()))
        .collect();
    direct.sort();
    assert_eq!(flip(&a), direct);
}

#[test]
fn determinant_and_plat_closure() {
    let (code, out, _) = run(&["kh-det", "--braid", "2 2 2", "--strands", "4", "--closure", "plat"]);
    assert_eq!((code, out.trim()), (0, "determinant 3"));
    let (code, _, err) = run(&["kh-det", "--braid", "1 1", "--strands", "2"]);
    assert_eq!(code, 2, "two components have no determinant here");
    assert!(err.contains("components"));
}

#[test]
fn pd_input_and_crossing_limit() {
    let path = std::env::temp_dir().join(format!("khbord-trefoil-{}.pd", std::process::id()));
    std::fs::write(&path, "X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)\n").unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(json(&["kh-homology", "--pd", p, "--json"])["total"], 6);
    assert_eq!(run(&["kh-homology", "--pd", p, "--max-crossings", "2"]).0, 2);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(run(&["kh-homology", "--pd", "/nonexistent/file.pd"]).0, 2);
}

#[test]
fn validate_reports_pass_and_fail() {
    let dir = std::env::temp_dir().join(format!("khbord-validate-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cat = Catalog::builtin();
    let mut def = cat.module_definition("cfd_minus1").unwrap().clone();
    let good = dir.join("good.json");
    std::fs::write(&good, def.to_json()).unwrap();
    let (code, out, _) = run(&["bordered-validate", good.to_str().unwrap(), "--report", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v[0]["status"], "pass");

    // a square-zero failure: δ(a) = r12 ⊗ b + r34 ⊗ b gains δ(b) = r23 ⊗ a.
    let mut extra = def.ops[0].clone();
    extra.in_gen = "b".into();
    extra.out_gen = "a".into();
    extra.alg_out = Some("r23".into());
    def.ops.push(extra);
    let bad = dir.join("bad.json");
    std::fs::write(&bad, def.to_json()).unwrap();
    let (code, out, _) = run(&["bordered-validate", bad.to_str().unwrap()]);
    assert_eq!(code, 1, "{out}");
    assert!(out.starts_with("FAIL"));

    std::fs::write(dir.join("junk.json"), "{ not json").unwrap();
    assert_eq!(run(&["bordered-validate", dir.join("junk.json").to_str().unwrap()]).0, 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn binary_forwards_exit_codes_and_reports_progress() {
    let bin = env!("CARGO_BIN_EXE_khbord");
    let out = Command::new(bin).args(["kh-homology", "--braid", "1 2 1 2 1 2 1 2 1 2", "--reduced"]).output().unwrap();
    assert!(out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.lines().any(|l| l == "progress: 1024/1024 vertices"), "{err}");
    assert_eq!(Command::new(bin).arg("kh-homology").status().unwrap().code(), Some(2));
    assert_eq!(Command::new(bin).args(["bordered-check", "catalog"]).status().unwrap().code(), Some(0));
}

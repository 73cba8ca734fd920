use std::process::Command;

use floer_core::cli::run;
use floer_core::fixtures;
use serde_json::Value;

fn floer(args: &str) -> (i32, String) {
    run(std::iter::once("floer").chain(args.split_whitespace()))
}

fn floer_json(args: &str) -> (i32, Value) {
    let (code, out) = floer(&format!("--format json {args}"));
    (code, serde_json::from_str(&out).unwrap_or_else(|e| panic!("{args}: {e}\n{out}")))
}

#[test]
fn homology_of_rp2() {
    let (code, out) = floer("homology rp2");
    assert_eq!(code, 0);
    assert!(out.contains("H0: Λ\nH1: Λ/(2)\nH2: 0\n"), "{out}");
}

#[test]
fn homology_json_has_schema_and_ranks() {
    let (code, v) = floer_json("homology rp3_cells");
    assert_eq!(code, 0);
    assert_eq!(v["schema"], "1");
    assert_eq!(v["command"], "homology");
    let ranks: Vec<u64> = (0..4).map(|i| v["classes"][i.to_string()]["rank"].as_u64().unwrap()).collect();
    assert_eq!(ranks, [1, 0, 0, 1]);
    assert_eq!(v["classes"]["1"]["invariant_factors"], serde_json::json!(["2"]));
}

#[test]
fn every_complex_fixture_checks_clean_except_the_broken_one() {
    for name in ["s1", "s2", "t2", "rp2", "rp3", "cp2", "rp3_cells", "pearl_demo", "hmtp_demo"] {
        let (code, out) = floer(&format!("check {name}"));
        assert_eq!(code, 0, "{name}: {out}");
    }
    let (code, out) = floer("check rp3_broken");
    assert_eq!(code, 1);
    assert!(out.contains("class 3: entry (x1, y3)"), "{out}");
}

#[test]
fn broken_complex_json_locates_the_entry() {
    let (code, v) = floer_json("check rp3_broken");
    assert_eq!(code, 1);
    assert_eq!(v["ok"], false);
    let bad = v["d_squared"].as_array().unwrap();
    assert_eq!(bad.len(), 1);
    assert_eq!(bad[0]["class"], 3);
    assert_eq!(bad[0]["row_id"], "x1");
    assert_eq!(bad[0]["col_id"], "y3");
}

#[test]
fn arnold_bound_of_rp3() {
    let (code, v) = floer_json("arnold rp3_homology");
    assert_eq!(code, 0);
    assert_eq!(v["bound"], 4);
    assert_eq!(v["minimal_chern"], 1);
    let (_, v) = floer_json("--two-n 4 arnold rp3_homology");
    assert_eq!(v["minimal_chern"], 2);
    assert_eq!(v["bound"], 4);
}

#[test]
fn verify_reports_slack() {
    let (code, out) = floer("verify rp3 rp3_homology");
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("rank CF = 4, bound = 4, total slack 0"), "{out}");
    let (code, v) = floer_json("verify rp3_cells rp3_homology");
    assert_eq!(code, 0);
    assert_eq!(v["total_rank"], 6);
    assert_eq!(v["bound"], 4);
    for q in v["inequalities"].as_array().unwrap() {
        assert!(q["slack"].as_i64().unwrap() >= 0, "{q}");
    }
    let (code, _) = floer("verify rp3_broken rp3_homology");
    assert_eq!(code, 1);
}

#[test]
fn equipoly_dimension_and_table() {
    let (code, v) =
        floer_json("equipoly dim --group 3 --v-weights 1 --w-weights 2 --degree 2 --stabilizer trivial --trials 10");
    assert_eq!(code, 0);
    assert_eq!(v["dim_poly"], 1);
    assert_eq!(v["report"]["minimal_surjective_degree"], 2);
    assert_eq!(v["report"]["expected_dimension"], 1);
    // V = C with weight 1 under Z/3, W = C with weight 2: the monomials z^2 and
    // z^5 (degree <= 5) are equivariant.
    let (_, v) = floer_json("equipoly dim --group 3 --v-weights 1 --w-weights 2 --degree 5");
    assert_eq!(v["dim_poly"], 2);
    let (code, v) = floer_json("equipoly table --trials 3");
    assert_eq!(code, 0);
    assert_eq!(v["cases"].as_array().unwrap().len(), 10);
}

#[test]
fn equipoly_empty_stratum_is_an_input_error() {
    // V is the trivial representation, so every point has stabilizer G and the
    // stratum of the trivial subgroup is empty.
    let (code, _) = floer("equipoly dim --group 2 --v-weights 0 --w-weights 1 --degree 1 --stabilizer G --trials 2");
    assert_eq!(code, 0);
    let (code, out) = floer("equipoly dim --group 2 --v-weights 0 --w-weights 1 --degree 1 --stabilizer trivial");
    assert_eq!(code, 2, "{out}");
}

#[test]
fn strata_words_and_deltas() {
    let (code, v) = floer_json("strata words chain5_poset p q --actions 0,1,2,3,9");
    assert_eq!(code, 0);
    let words = v["words"].as_array().unwrap();
    assert_eq!(words.len(), 8);
    let prq = words.iter().find(|w| w["word"] == "prq").unwrap();
    assert_eq!(prq["depth"], 1);
    assert_eq!(prq["delta"], serde_json::json!([1, 8]));
    let (code, out) = floer("strata words diamond_poset p q");
    assert_eq!(code, 0);
    assert!(out.starts_with("3 words"), "{out}");
    let (code, _) = floer("strata words diamond_poset p nowhere");
    assert_eq!(code, 2);
    let (code, _) = floer("strata words diamond_poset p q --actions 1,2");
    assert_eq!(code, 2);
}

#[test]
fn strata_collar_identities() {
    for width in ["1", "3/2", "0"] {
        let (code, v) = floer_json(&format!("strata collar --left 2 --right 2 --samples 100 --width {width}"));
        assert_eq!(code, 0, "{v}");
        assert_eq!(v["failures"].as_array().unwrap().len(), 0);
    }
    assert_eq!(floer("strata collar --width -1").0, 2);
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(floer("check no_such_fixture").0, 2);
    assert_eq!(floer("homology rp2 --precision 0").0, 2);
    assert_eq!(floer("frobnicate").0, 2);
    assert_eq!(floer("arnold rp2").0, 2);
    // rp2 is Z-graded; regrading mod 3 is not allowed.
    assert_eq!(floer("homology rp2 --two-n 3").0, 2);
    let (code, v) = floer_json("check no_such_fixture");
    assert_eq!(code, 2);
    assert_eq!(v["schema"], "1");
    assert!(v["error"].as_str().unwrap().contains("no_such_fixture"));
}

#[test]
fn files_on_disk_take_precedence() {
    let dir = std::env::temp_dir().join(format!("floer-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("rp2.json");
    std::fs::write(&path, fixtures::fixture("rp2").unwrap()).unwrap();
    let (code, out) = floer(&format!("homology {}", path.display()));
    assert_eq!(code, 0);
    assert!(out.contains("H1: Λ/(2)"));
    std::fs::write(&path, "{ not json").unwrap();
    assert_eq!(floer(&format!("homology {}", path.display())).0, 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_is_deterministic() {
    for args in [
        "--format json equipoly table --trials 4 --seed 7",
        "--format json strata collar --samples 40 --seed 3",
        "--format json homology cp2",
        "verify rp3_cells rp3_homology",
    ] {
        assert_eq!(floer(args), floer(args), "{args}");
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_floer");
    let out = Command::new(bin).args(["homology", "rp2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("H1: Λ/(2)"));
    let out = Command::new(bin).args(["check", "rp3_broken"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = Command::new(bin).args(["check", "missing"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

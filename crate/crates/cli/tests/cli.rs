use std::io::Write;
use std::process::{Command, Output};

use arbor_hopf::{ForestSum, Tree};

fn arbor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arbor")).args(args).output().expect("arbor runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn enumerate_five_vertices() {
    let o = arbor(&["trees", "enumerate", "--vertices", "5"]);
    assert!(o.status.success());
    let lines: Vec<String> = stdout(&o).lines().map(str::to_string).collect();
    assert_eq!(lines.len(), 9);
    for l in &lines {
        assert_eq!(Tree::parse(l).unwrap().to_string(), *l);
    }
    let mut sorted = lines.clone();
    sorted.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    assert_eq!(sorted, lines);
    let e = arbor(&["trees", "enumerate", "--edges", "4"]);
    assert_eq!(stdout(&e), stdout(&o));
}

#[test]
fn stats_of_a_corolla() {
    let o = arbor(&["trees", "stats", "[[][][]]", "--format", "csv"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "forest,vertices,edges,factorial,sigma,cm\n[[][][]],4,3,4,6,1\n");
}

#[test]
fn antipode_of_the_two_edge_ladder() {
    let o = arbor(&["hopf", "antipode", "--variant", "H_sigma", "[[[]]]"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim_end(), "−[[[]]] + 2·[[]]·[[]]");
    for method in ["right", "closed"] {
        let m = arbor(&["hopf", "antipode", "--variant", "H_sigma", "--method", method, "[[[]]]"]);
        assert_eq!(stdout(&m), stdout(&o));
    }
}

#[test]
fn antipode_table_lines_parse_back() {
    let o = arbor(&["hopf", "antipode", "--variant", "CK", "--max-degree", "4"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 1 + 1 + 2 + 4);
    for line in text.lines() {
        let (_, rhs) = line.split_once(" = ").unwrap();
        assert_eq!(ForestSum::parse(rhs).unwrap().to_string(), rhs);
    }
}

#[test]
fn coproduct_output() {
    let o = arbor(&["hopf", "coproduct", "--variant", "CK", "[[]]"]);
    assert_eq!(stdout(&o).trim_end(), "∅⊗[[]] + []⊗[] + [[]]⊗∅");
    let r = arbor(&["hopf", "coproduct", "--reduced", "[[][]]"]);
    assert_eq!(stdout(&r).trim_end(), "2·[[]]⊗[[]]");
    let j = arbor(&["hopf", "coproduct", "--format", "json", "[[]]"]);
    let v: serde_json::Value = serde_json::from_slice(&j.stdout).unwrap();
    assert_eq!(v["variant"], "H");
}

#[test]
fn verify_coassociativity() {
    for variant in ["H", "H_sigma", "Htilde", "CK"] {
        let o = arbor(&["hopf", "verify-coassoc", "--variant", variant, "--max-degree", "4"]);
        assert!(o.status.success(), "{variant}: {}", stdout(&o));
    }
}

#[test]
fn omega_table_formats() {
    let j = arbor(&["characters", "table", "--name", "omega", "--max-vertices", "5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&j.stdout).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 17);
    assert_eq!(rows[16]["value/sigma"], "-1/720");
    let t = arbor(&["characters", "omega", "--max-vertices", "4"]);
    assert!(t.status.success());
    let text = stdout(&t);
    assert_eq!(text.lines().count(), 4);
    assert!(text.lines().nth(2).unwrap().contains("-1/12"));
}

#[test]
fn convolution_of_e_with_l_is_the_counit() {
    let o = arbor(&["characters", "convolve", "E", "L", "--max-degree", "4", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let values: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').nth(2).unwrap()).collect();
    assert_eq!(values[0], "1");
    assert!(values[1..].iter().all(|v| *v == "0"));
    let mismatch = arbor(&["characters", "convolve", "E", "delta"]);
    assert_eq!(mismatch.status.code(), Some(2));
}

#[test]
fn prelie_products() {
    assert_eq!(stdout(&arbor(&["prelie", "graft", "[]", "[[]]", "--normalized"])).trim_end(), "[[[]]] + [[][]]");
    assert_eq!(stdout(&arbor(&["prelie", "graft", "[]", "[[]]"])).trim_end(), "[[[]]] + 2·[[][]]");
    assert_eq!(stdout(&arbor(&["prelie", "insert", "[[]]", "[[]]"])).trim_end(), "2·[[[]]] + 2·[[][]]");
    assert_eq!(stdout(&arbor(&["prelie", "insert", "[[]]", "[[]]", "--normalized"])).trim_end(), "2·[[[]]] + [[][]]");
    assert_eq!(
        stdout(&arbor(&["prelie", "magnus", "--max-vertices", "3"])).trim_end(),
        "[] − 1/2·[[]] + 1/3·[[[]]] + 1/12·[[][]]"
    );
}

#[test]
fn quasi_shuffle_commands() {
    assert_eq!(stdout(&arbor(&["qshuffle", "qsh", "2", "2"])).trim_end(), "6x^4 + 6x^3 + x^2");
    assert_eq!(stdout(&arbor(&["qshuffle", "qsh", "2", "2", "--r", "1"])).trim_end(), "6");
    assert_eq!(stdout(&arbor(&["qshuffle", "lambda", "[[][]]"])).trim_end(), "2x^3 + x^2");
    let o = stdout(&arbor(&["qshuffle", "omega-s", "[[][]]"]));
    assert!(o.ends_with("ω([[][]]) = 1/6\n"), "{o}");
}

#[test]
fn bseries_defaults_and_files() {
    assert!(arbor(&["bseries", "verify-substitution"]).status.success());
    assert!(arbor(&["bseries", "verify-composition", "--dim", "2", "--field", "y1*y2; y1 - y2^2", "--order", "3"])
        .status
        .success());
    let dir = std::env::temp_dir().join(format!("arbor-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let alpha = dir.join("alpha.json");
    std::fs::File::create(&alpha).unwrap().write_all(br#"{"[]": "2", "[[]]": "1/3"}"#).unwrap();
    let a = alpha.to_str().unwrap();
    let refused = arbor(&["bseries", "verify-substitution", "--alpha", a, "--order", "3"]);
    assert_eq!(refused.status.code(), Some(2));
    let general = arbor(&["bseries", "verify-substitution", "--alpha", a, "--order", "3", "--general-bullet"]);
    assert!(general.status.success(), "{}", stdout(&general));
    let wrong_dim = arbor(&["bseries", "verify-composition", "--dim", "2", "--field", "y1"]);
    assert_eq!(wrong_dim.status.code(), Some(2));
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn verification_reports() {
    let o = arbor(&["verify", "chv", "--max-degree", "4", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v.as_array().unwrap().iter().all(|c| c["passed"] == true));
    let o = arbor(&["verify", "all", "--max-degree", "4"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("0 failed"));
}

#[test]
fn usage_errors() {
    assert_eq!(arbor(&["trees", "stats", "[[]"]).status.code(), Some(2));
    assert_eq!(arbor(&["hopf", "antipode", "--variant", "Htilde", "[]"]).status.code(), Some(2));
    assert_eq!(arbor(&["hopf", "antipode", "--variant", "H", "[]·[[]]"]).status.code(), Some(2));
    assert_eq!(arbor(&["nonsense"]).status.code(), Some(2));
    assert_eq!(arbor(&["characters", "table", "--name", "zeta"]).status.code(), Some(2));
}

#[test]
fn degree_cap_warns() {
    let o = arbor(&["trees", "enumerate", "--vertices", "12", "--format", "json"]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("lowered to 9"));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 286);
}

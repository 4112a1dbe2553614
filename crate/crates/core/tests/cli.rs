use std::path::PathBuf;
use std::process::Command;

use quiver_sod::cli::{main_with_args, Outcome};
use quiver_sod::hn::{HnContext, HnType};
use quiver_sod::quiver::{DimensionVector, StabilityParameter};
use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).to_string_lossy().into_owned()
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn run(args: &[&str]) -> Outcome {
    main_with_args(std::iter::once("quiver-sod").chain(args.iter().copied()))
}

fn json(out: &Outcome) -> Value {
    assert_eq!(out.stderr, "");
    serde_json::from_str(&out.stdout).unwrap()
}

#[test]
fn table_one_golden() {
    let input = data("kronecker3-d34.json");
    let out = run(&["teleman-table", "--input", &input]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, golden("table1.txt"));
    assert_eq!(out.stdout.lines().count(), 18);
    let out = run(&["teleman-table", "--input", &input, "--format", "json"]);
    assert_eq!(out.stdout, golden("table1.json"));
}

#[test]
fn table_two_golden() {
    for m in 3..=5 {
        let out = run(&["teleman-table", "--input", &data(&format!("kronecker{m}-d23.json"))]);
        assert_eq!(out.stdout, golden(&format!("table2-m{m}.txt")), "m = {m}");
        assert_eq!(out.stdout.lines().count(), 7);
    }
}

#[test]
fn hodge_line() {
    let out = run(&["hodge", "--input", &data("kronecker3-d34.json")]);
    assert_eq!(out.stdout, "1 1 3 5 8 10 12 10 8 5 3 1 1 | HH0 = 68\n");
    assert_eq!(out.stdout, golden("hodge-kronecker3-d34.txt"));
}

#[test]
fn text_and_json_payloads_agree() {
    let input = data("kronecker3-d34.json");
    let text = run(&["teleman-table", "--input", &input]).stdout;
    let value = json(&run(&["teleman-table", "--input", &input, "--format", "json"]));
    for (line, row) in text.lines().zip(value["rows"].as_array().unwrap()) {
        let cols: Vec<&str> = line.split(" | ").collect();
        let set = |key: &str| {
            let items: Vec<&str> = row[key].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
            format!("{{{}}}", items.join(", "))
        };
        assert_eq!(cols[1], set("hom_weights"));
        assert_eq!(cols[2], set("universal_weights"));
        assert_eq!(cols[3], row["h_weight"].as_str().unwrap());
        assert_eq!(cols[4], row["eta"].as_str().unwrap());
    }
    let text = run(&["hodge", "--input", &input]).stdout;
    let value = json(&run(&["hodge", "--input", &input, "--format", "json"]));
    let column: Vec<String> = value["hodge_column"].as_array().unwrap().iter().map(|v| v.to_string()).collect();
    assert_eq!(text, format!("{} | HH0 = {}\n", column.join(" "), value["hh0"]));
    assert_eq!(value["schema"], "quiver-sod/1");
}

#[test]
fn hn_types_round_trip() {
    let input = data("kronecker3-d34.json");
    let value = json(&run(&["hn-types", "--input", &input, "--format", "json"]));
    let theta = StabilityParameter::new(vec![12, -9]).unwrap();
    let d = DimensionVector::new(vec![3, 4]).unwrap();
    let types: Vec<HnType> = serde_json::from_value(value["hn_types"].clone()).unwrap();
    assert_eq!(types.len(), 19);
    let q = quiver_sod::quiver::Quiver::kronecker(3);
    let mut ctx = HnContext::new(&q);
    for t in &types {
        let rebuilt = HnType::new(t.parts().to_vec(), &theta).unwrap();
        rebuilt.validate(&mut ctx, &d, &theta).unwrap();
    }
}

#[test]
fn euler_characteristic_expressions() {
    let input = data("p2.json");
    let out = run(&["euler-char", "--input", &input, "--expr", "O(2H)"]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "chi(O(2H)) = 6\n"));
    let out = run(&["euler-char", "--input", &input, "--expr", "U2^ * U1", "--format", "json"]);
    assert_eq!(json(&out)["chi"], "0");
    let out = run(&["euler-char", "--input", &input, "--expr", "U1^ * U2 * O(-1H)"]);
    assert_eq!(out.stdout, "chi(U1^ * U2 * O(-1H)) = 1\n");
    let out = run(&["euler-char", "--input", &input, "--expr", "U3"]);
    assert_eq!(out.code, 3);
}

#[test]
fn verify_sod_exit_codes() {
    assert_eq!(run(&["verify-sod", "--input", &data("p1.json")]).code, 1);
    assert_eq!(run(&["verify-sod", "--input", &data("p2.json")]).code, 0);
    assert_eq!(run(&["verify-sod", "--input", &data("p2.json"), "--question", "b"]).code, 1);
    // the smallest linearisation fails, the scanned one succeeds
    let out = run(&["verify-sod", "--input", &data("p2.json"), "--linearisation", "0,1", "--scan", "1,0;2,-1"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    let out = run(&["verify-sod", "--input", &data("fano3fold.json"), "--question", "c", "--format", "json"]);
    assert_eq!(out.code, 0);
    let value = json(&out);
    assert_eq!(value["runs"][0]["questions"][1]["answer"], "negative");
    assert_eq!(value["runs"][0]["questions"][2]["predicted_collection_length"], 4);
}

#[test]
fn errors_name_the_problem() {
    let dir = std::env::temp_dir().join(format!("quiver-sod-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let write = |name: &str, text: &str| {
        let p = dir.join(name);
        std::fs::write(&p, text).unwrap();
        p.to_string_lossy().into_owned()
    };
    let extra = write("extra.json", r#"{"vertices":2,"arrows":[[1,2]],"d":[1,1],"colour":1}"#);
    let out = run(&["hodge", "--input", &extra]);
    assert_eq!(out.code, 3);
    assert!(out.stderr.contains("colour"), "{}", out.stderr);
    let cyclic = write("cyclic.json", r#"{"vertices":2,"arrows":[[1,2],[2,1]],"d":[1,2],"theta":[2,-1]}"#);
    let out = run(&["teleman-table", "--input", &cyclic]);
    assert_eq!(out.code, 4);
    assert!(out.stderr.contains("acyclic"), "{}", out.stderr);
    assert_eq!(run(&["check-assumptions", "--input", &cyclic]).code, 1);
    let out = run(&["hodge", "--input", &data("p2.json"), "--theta", "1,2,3"]);
    assert_eq!(out.code, 3);
    assert_eq!(run(&["euler-char", "--input", &data("p2.json")]).code, 3);
}

#[test]
fn binary_forwards_exit_codes() {
    let out = Command::new(env!("CARGO_BIN_EXE_quiver-sod"))
        .args(["verify-sod", "--input", &data("p1.json")])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("answer to question A: negative"));
}

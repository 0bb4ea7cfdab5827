//! End-to-end tests driving the compiled `bvl` binary as a subprocess:
//! exit-code conventions, JSON shape, determinism across worker counts,
//! and the `.pcg` file round trip.

use std::process::{Command, Output};

use anyhow::Result;
use serde_json::Value;

fn bvl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bvl"))
        .args(args)
        .output()
        .expect("spawning the bvl binary")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("process terminated by signal")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is UTF-8")
}

fn json(out: &Output) -> Value {
    serde_json::from_str(&stdout(out)).expect("stdout is a single JSON document")
}

#[test]
fn verified_structure_exits_zero() {
    let out = bvl(&[
        "verify",
        "holder_heisenberg:p=7",
        "--s1",
        "x,y",
        "--s2",
        "x*y^2,x*y^3",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("beauville_verified"));
}

#[test]
fn refuted_structure_exits_one_with_overlap_witness() {
    // At p = 5 the (x*y^2, x*y^3) pair shares Σ-classes with (x, y):
    // the product (x*y^2)(x*y^3) is x^2 up to central factors.
    let out = bvl(&[
        "verify",
        "holder_heisenberg:p=5",
        "--s1",
        "x,y",
        "--s2",
        "x*y^2,x*y^3",
    ]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(text.contains("not_a_structure"), "got: {text}");
    assert!(text.contains("overlap"), "got: {text}");
}

#[test]
fn json_verdict_is_machine_readable() {
    let out = bvl(&[
        "--json",
        "verify",
        "holder_heisenberg:p=7",
        "--s1",
        "x,y",
        "--s2",
        "x*y^2,x*y^3",
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["result"]["verdict"], "beauville_verified");
    assert_eq!(v["result"]["sigma_size_first"], 127);
    assert_eq!(v["result"]["sigma_size_second"], 127);
    assert_eq!(v["order"], 343);
}

#[test]
fn certification_exits_one_with_certificate() {
    let out = bvl(&["--json", "certify", "lemma10:p=3,n=2"]);
    assert_eq!(code(&out), 1);
    let v = json(&out);
    assert_eq!(v["result"]["verdict"], "certified");
    assert_eq!(v["result"]["certificate"]["kind"], "universal_element");
    assert!(v["result"]["certificate"]["gen_pairs_scanned"].as_u64().unwrap() > 0);
}

#[test]
fn complete_search_exits_by_outcome() {
    let found = bvl(&["search", "holder_heisenberg:p=5"]);
    assert_eq!(code(&found), 0);
    assert!(stdout(&found).contains("found"));

    let none = bvl(&["search", "cn_x_cn:p=3"]);
    assert_eq!(code(&none), 1);
    assert!(stdout(&none).contains("exhausted_none"));
}

#[test]
fn heuristic_miss_is_inconclusive_exit_two() {
    let out = bvl(&[
        "search",
        "lemma10:p=3,n=2",
        "--heuristic",
        "--seed",
        "1",
        "--budget",
        "25",
    ]);
    assert_eq!(code(&out), 2);
    let text = stdout(&out);
    assert!(text.contains("inconclusive"), "got: {text}");
    assert!(text.contains("seed 1"), "got: {text}");
}

#[test]
fn usage_and_input_errors_exit_three() {
    for args in [
        &["--nosuchflag", "list"][..],
        &["build", "--family", "nosuch", "--p", "5"][..],
        &["verify", "holder_heisenberg:p=5", "--s1", "x,q", "--s2", "x,y"][..],
        &["verify", "holder_heisenberg:p=5", "--s1", "x y", "--s2", "x,y"][..],
        &["search", "holder_heisenberg:p=5", "--heuristic"][..],
        &["search", "holder_heisenberg:p=5", "--complete", "--heuristic", "--seed", "1"][..],
        &["census", "--suite", "p9", "--p", "5"][..],
        &["census", "--suite", "p3", "--p", "4"][..],
        &["certify", "lemma10:p=3,n=2,q=1"][..],
        &["--jobs", "0", "list"][..],
    ] {
        let out = bvl(args);
        assert_eq!(code(&out), 3, "args {args:?}: stderr {}", stderr(&out));
    }
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(code(&bvl(&["--help"])), 0);
    assert_eq!(code(&bvl(&["--version"])), 0);
    assert_eq!(code(&bvl(&["verify", "--help"])), 0);
}

#[test]
fn word_errors_name_the_position_or_generator() {
    let out = bvl(&["verify", "holder_heisenberg:p=5", "--s1", "x,q", "--s2", "x,y"]);
    assert!(stderr(&out).contains("unknown generator `q`"));

    let out = bvl(&["sigma", "holder_heisenberg:p=5", "--pair", "x*,y"]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("position 2"), "got: {}", stderr(&out));
}

#[test]
fn json_bytes_are_identical_for_any_worker_count() {
    let one = bvl(&["--json", "--jobs", "1", "search", "holder_heisenberg:p=5"]);
    let four = bvl(&["--json", "--jobs", "4", "search", "holder_heisenberg:p=5"]);
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, four.stdout);

    let one = bvl(&["--json", "--jobs", "1", "census", "--suite", "p3", "--p", "5"]);
    let three = bvl(&["--json", "--jobs", "3", "census", "--suite", "p3", "--p", "5"]);
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, three.stdout);
}

#[test]
fn census_reports_the_unique_beauville_class_of_order_125() {
    let out = bvl(&["--json", "census", "--suite", "p3", "--p", "5"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["distinct_classes"], 5);
    assert_eq!(v["beauville_count"], 1);
    assert_eq!(v["lower_bound_only"], true);
    let rows = v["rows"].as_array().unwrap();
    let heis: Vec<_> = rows.iter().filter(|r| r["beauville"] == true).collect();
    assert_eq!(heis.len(), 1);
    assert_eq!(heis[0]["label"], "heisenberg");
}

#[test]
fn sigma_reports_size_and_sorted_exponent_vectors() {
    let out = bvl(&["--json", "sigma", "holder_heisenberg:p=5", "--pair", "x,y"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["size"], 61);
    assert_eq!(v["class_count"], 13);
    let elements = v["elements"].as_array().unwrap();
    assert_eq!(elements.len(), 61);
    // Identity first: element ids ascend, and id order is exponent-vector
    // lexicographic order.
    assert_eq!(elements[0], serde_json::json!([0, 0, 0]));
    let as_vecs: Vec<Vec<u64>> = elements
        .iter()
        .map(|e| e.as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect())
        .collect();
    let mut sorted = as_vecs.clone();
    sorted.sort();
    assert_eq!(as_vecs, sorted);
}

#[test]
fn build_validates_and_emits_a_working_pcg_file() -> Result<()> {
    let dir = tempfile::tempdir()?;
    let path = dir.path().join("heis.pcg");
    let built = bvl(&[
        "build",
        "--family",
        "holder_heisenberg",
        "--p",
        "5",
        "--emit-pcg",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&built), 0, "stderr: {}", stderr(&built));
    assert!(stdout(&built).contains("all relations hold"));

    // The emitted presentation is a first-class group argument.
    let verified = bvl(&[
        "verify",
        path.to_str().unwrap(),
        "--s1",
        "x,y",
        "--s2",
        "x*y^2,x*y^4",
    ]);
    assert_eq!(code(&verified), 0, "stderr: {}", stderr(&verified));
    assert!(stdout(&verified).contains("beauville_verified"));
    Ok(())
}

#[test]
fn build_accepts_free_form_params() {
    let out = bvl(&[
        "--json",
        "build",
        "--family",
        "abelian",
        "--p",
        "5",
        "--param",
        "e1=2",
        "--param",
        "e2=1",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["order"], 125);
    assert_eq!(v["abelian_invariants"], serde_json::json!([5, 25]));
}

#[test]
fn list_names_every_family() {
    let out = bvl(&["list"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    for id in [
        "holder_heisenberg",
        "lemma10",
        "lemma11",
        "lemma12",
        "table1_G1",
        "table1_G8",
        "table2_G4'",
        "H1",
        "H7",
        "H_ijkl",
        "K_r",
        "example17",
        "cyclic",
        "abelian",
        "cn_x_cn",
    ] {
        assert!(text.contains(id), "family `{id}` missing from list output");
    }
}

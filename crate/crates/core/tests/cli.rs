//! End-to-end tests of the command-line binary: exit codes, report text,
//! sibling-file resolution, and the machine-readable output mode.

mod common;

use common::{fixture_path, fixture_text, lattice};
use std::path::Path;
use std::process::{Command, Output};

fn unilat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_unilat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_unilat"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn fixture_arg(name: &str) -> String {
    fixture_path(name).to_string_lossy().into_owned()
}

#[test]
fn validate_accepts_every_fixture() {
    for name in [
        "L1.lat", "L2.lat", "L3.lat", "L4.lat", "T1.opt", "T2.opt", "T3.opt", "T4.opt",
        "T5.opt", "T6.opt", "cl4.unm",
    ] {
        let out = unilat(&["validate", &fixture_arg(name)]);
        assert_eq!(out.status.code(), Some(0), "{name}: {}", stderr(&out));
    }
}

#[test]
fn validate_reports_lattice_statistics() {
    let out = unilat(&["validate", &fixture_arg("L1.lat")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("lattice L1: 13 elements, bottom = 0, top = 1, 17 cover pairs"));

    let machine = unilat(&["--machine", "validate", &fixture_arg("L1.lat")]);
    assert!(stdout(&machine).contains("result=pass kind=lattice name=L1 elements=13 covers=17"));
}

#[test]
fn validate_emit_covers_lists_the_edge_list() {
    let out = unilat(&["validate", &fixture_arg("L4.lat"), "--emit-covers"]);
    let text = stdout(&out);
    for edge in ["0 < e", "0 < k", "0 < m", "e < a", "e < b", "a < 1", "k < b", "m < b", "b < 1"] {
        assert!(text.contains(edge), "missing cover {edge}");
    }
}

#[test]
fn validate_rejects_a_duplicated_element_with_a_math_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dup.lat");
    std::fs::write(
        &path,
        "lattice dup\nelements: 0 x x 1\nbottom: 0\ntop: 1\ncovers:\n0 < x\nx < 1\n",
    )
    .unwrap();
    let out = unilat(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("duplicate element `x`"));
}

#[test]
fn validate_rejects_malformed_input_with_a_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.lat");
    std::fs::write(&path, "lattice broken\nelems: 0 1\n").unwrap();
    let out = unilat(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 2"));
}

#[test]
fn validate_flags_the_non_associative_table() {
    let out = unilat(&["validate", &fixture_arg("T7.opt"), "--as-uninorm", "e"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("associativity: FAIL at (k, k, m)"), "{text}");
    assert!(text.contains("op(k, op(k, m)) = 1 but op(op(k, k), m) = b"), "{text}");
    assert!(text.contains("commutativity: pass"));
}

#[test]
fn validate_reports_the_unary_fixture_as_a_closure() {
    let out = unilat(&["validate", &fixture_arg("cl4.unm")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("closure: true, interior: false"));
}

#[test]
fn sibling_lattice_resolution_and_the_lattice_flag() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("T1.opt");
    std::fs::write(&table, fixture_text("T1.opt")).unwrap();

    let missing = unilat(&["validate", table.to_str().unwrap()]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(stderr(&missing).contains("--lattice"));

    let explicit = unilat(&[
        "validate",
        table.to_str().unwrap(),
        "--lattice",
        &fixture_arg("L1.lat"),
    ]);
    assert_eq!(explicit.status.code(), Some(0), "{}", stderr(&explicit));
}

#[test]
fn construct_reproduces_the_committed_extension_and_verifies() {
    let out = unilat(&[
        "construct",
        "u1",
        &fixture_arg("L1.lat"),
        "a",
        &fixture_arg("T1.opt"),
        "--verify",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    let expected = fixture_text("T2.opt").replace("op T2 on L1", "op u1(T1) on L1");
    assert!(text.starts_with(&expected), "constructed table differs:\n{text}");
    assert!(text.contains("associativity: pass"));
    assert!(text.contains("monotonicity: pass"));
}

#[test]
fn construct_surfaces_the_known_associativity_failure() {
    let out = unilat(&[
        "construct",
        "u3",
        &fixture_arg("L4.lat"),
        "a",
        &fixture_arg("T6.opt"),
        &fixture_arg("cl4.unm"),
        "--verify",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    let expected = fixture_text("T7.opt").replace("op T7 on L4", "op u3(T6) on L4");
    assert!(text.starts_with(&expected), "constructed table differs:\n{text}");
    assert!(text.contains("associativity: FAIL at (k, k, m)"));
}

#[test]
fn construct_writes_to_a_file_that_validates() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("built.opt");
    let out = unilat(&[
        "construct",
        "u3",
        &fixture_arg("L3.lat"),
        "a",
        &fixture_arg("T4.opt"),
        "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let written = std::fs::read_to_string(&path).unwrap();
    let expected = fixture_text("T5.opt").replace("op T5 on L3", "op u3(T4) on L3");
    assert_eq!(written, expected);

    let check = unilat(&[
        "validate",
        path.to_str().unwrap(),
        "--lattice",
        &fixture_arg("L3.lat"),
        "--as-uninorm",
        "e",
    ]);
    assert_eq!(check.status.code(), Some(0), "{}", stderr(&check));
}

#[test]
fn construct_runs_a_named_special_from_a_restricted_base() {
    let dir = tempfile::tempdir().unwrap();
    let base = dir.path().join("Tm.opt");
    std::fs::write(
        &base,
        "op Tm on L1\ncarrier: 0 b e\nneutral: e\n0 0 0\n0 b b\n0 b e\n",
    )
    .unwrap();
    let out = unilat(&[
        "construct",
        "ut1",
        &fixture_arg("L1.lat"),
        "e",
        base.to_str().unwrap(),
        "--verify",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("associativity: pass"));
}

#[test]
fn conditions_reports_the_range_violation_with_witnesses() {
    let out = unilat(&[
        "conditions",
        "u3",
        &fixture_arg("L4.lat"),
        "a",
        &fixture_arg("T6.opt"),
        &fixture_arg("cl4.unm"),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("[VIOLATED] range-inside"), "{text}");
    assert!(text.contains("pair = (k, m), value = b"), "{text}");
}

#[test]
fn classify_prints_the_profile_flags() {
    let machine = unilat(&["--machine", "classify", &fixture_arg("T2.opt")]);
    assert_eq!(machine.status.code(), Some(0));
    let line = stdout(&machine);
    assert!(line.contains("name=T2 neutral=e"));
    assert!(line.contains("disjunctive=true"));
    assert!(line.contains("idempotent=true"));
    assert!(line.contains("in_umax_star=true"));

    let plain = unilat(&["classify", &fixture_arg("T3.opt")]);
    assert_eq!(plain.status.code(), Some(0));
    assert!(stdout(&plain).contains("in U_max*:    false"));
}

#[test]
fn verify_distinguishes_passing_and_failing_tables() {
    let ok = unilat(&["verify", &fixture_arg("T4.opt"), "--kind", "uninorm"]);
    assert_eq!(ok.status.code(), Some(0));

    let bad = unilat(&["--machine", "verify", &fixture_arg("T7.opt")]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("result=fail name=T7"));
    assert!(stdout(&bad).contains("associativity=false"));
}

#[test]
fn suite_passes_a_standard_claim_and_fails_an_alternate_reading() {
    let ok = unilat(&["--machine", "--max-elements", "4", "suite", "u1"]);
    assert_eq!(ok.status.code(), Some(0), "{}", stderr(&ok));
    assert!(stdout(&ok).contains("claim=u1"));
    assert!(stdout(&ok).contains("verdict=pass"));

    let alt = unilat(&["--machine", "--max-elements", "5", "suite", "u1-anchor-filter"]);
    assert_eq!(alt.status.code(), Some(1));
    assert!(stdout(&alt).contains("verdict=fail"));
}

#[test]
fn suite_can_compare_both_parallelism_readings() {
    let out = unilat(&["--max-elements", "4", "suite", "u3-2ii", "--parallel-with", "both"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("claim u3-2ii"));
    assert!(text.contains("u3-2ii-anchor-parallel"));
    assert!(text.contains("alternate reading"));
}

#[test]
fn enum_counts_match_the_known_sequence() {
    let out = unilat(&["--machine", "--max-elements", "6", "enum"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "n=2 count=1\nn=3 count=1\nn=4 count=2\nn=5 count=5\nn=6 count=15\n");
}

#[test]
fn reconstruct_recovers_the_committed_lattice_from_its_tables() {
    let out = unilat(&[
        "reconstruct",
        "u3",
        &fixture_arg("T4.opt"),
        &fixture_arg("T5.opt"),
        "--name",
        "L3",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.starts_with(&fixture_text("L3.lat")), "{text}");
    assert!(text.contains("1 consistent order(s) found"));
}

#[test]
fn reconstruct_reports_ambiguity_with_every_candidate() {
    let out = unilat(&["reconstruct", "u1", &fixture_arg("T1.opt"), &fixture_arg("T2.opt")]);
    assert_eq!(out.status.code(), Some(1));
    let text = stderr(&out);
    assert!(text.contains("minimal lattices are consistent with the tables"), "{text}");
    let l1 = lattice("L1.lat");
    let committed = l1
        .covers()
        .iter()
        .map(|&(x, y)| format!("{} < {}", l1.label(x), l1.label(y)))
        .collect::<Vec<_>>()
        .join(", ");
    assert!(
        text.contains(&format!("candidate with covers: {committed}")),
        "committed order missing from candidates:\n{text}"
    );
}

#[test]
fn unknown_names_are_input_errors() {
    let bad_claim = unilat(&["suite", "no-such-claim"]);
    assert_eq!(bad_claim.status.code(), Some(2));
    assert!(stderr(&bad_claim).contains("unknown claim"));

    let bad_id = unilat(&["construct", "u9", &fixture_arg("L1.lat"), "a", &fixture_arg("T1.opt")]);
    assert_eq!(bad_id.status.code(), Some(2));
    assert!(stderr(&bad_id).contains("unknown construction"));

    let bad_element = unilat(&["validate", &fixture_arg("T1.opt"), "--as-uninorm", "zz"]);
    assert_eq!(bad_element.status.code(), Some(2));
}

#[test]
fn machine_mode_emits_stable_suite_records() {
    let a = run_in(
        fixture_path(".").parent().unwrap(),
        &["--machine", "--max-elements", "4", "suite", "partition"],
    );
    let b = unilat(&["--machine", "--max-elements", "4", "suite", "partition"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b), "same configuration must print the same record");
    assert!(stdout(&a).contains("claim=partition instances=200"));
}

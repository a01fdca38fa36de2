//! Black-box tests of the `stoichos` binary: output text, JSON payloads,
//! and the exit-code contract (0 success, 1 domain error, 2 usage error).

use std::io::Write as _;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

const BIN: &str = env!("CARGO_BIN_EXE_stoichos");

fn run_cli(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

/// Unique temp file per test name; callers clean up best-effort.
fn temp_file(name: &str, content: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!(
        "stoichos-cli-test-{}-{}",
        std::process::id(),
        name
    ));
    std::fs::write(&path, content).expect("temp file written");
    path
}

const AZOMETHANE_JSON: &str = r#"{
  "species": ["C2H6N2", "N2", "CH4", "C2H6", "C3H8N2", "C4H12N2", "CH3", "C2H5N2", "C3H9N2"],
  "known": [0, 1, 2, 3, 4, 5],
  "intermediates": [6, 7, 8],
  "N": [
    [-1, -1, 0, 0, -1, 0],
    [1, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 0],
    [0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 0, 1],
    [2, -1, -2, -1, -1, -1],
    [0, 1, 0, -1, 0, 0],
    [0, 0, 0, 0, 1, -1]
  ]
}"#;

const AZOMETHANE_ELEMENTS: &str =
    "[[2,0,1,2,3,4,1,2,3],[6,0,4,6,8,12,3,5,9],[2,2,0,0,2,2,0,2,2]]";

#[test]
fn balance_unique_methane() {
    let o = run_cli(&["balance", "CH4 + O2 -> CO2 + H2O"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("unique balancing up to scale"), "{}", out);
    assert!(out.contains("CH4 + 2O2 = CO2 + 2H2O"), "{}", out);
}

#[test]
fn balance_reports_no_balancing_with_exit_zero() {
    let o = run_cli(&["balance", "XY + YZ -> XYZ2"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).contains("no balancing exists"), "{}", stdout(&o));
}

#[test]
fn balance_family_evaluates_at_a_point() {
    let o = run_cli(&["balance", "NO + O3 -> NO2 + O2", "--at", "1/5,4/5"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("balancing family of dimension 1"), "{}", out);
    assert!(out.contains("at (1/5, 4/5): NO + O3 = NO2 + O2"), "{}", out);
}

#[test]
fn balance_json_reports_the_kind() {
    let o = run_cli(&["--json", "balance", "CH4 + O2 -> CO2 + H2O"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).expect("valid JSON");
    assert_eq!(v["classification"]["kind"], "unique_up_to_scale");
    assert_eq!(v["balances"].as_array().unwrap().len(), 1);
}

#[test]
fn ratio_restriction_pins_the_permanganate_family() {
    let o = run_cli(&[
        "balance",
        "KMnO4 + H2O2 + H2SO4 -> MnSO4 + K2SO4 + O2 + H2O",
        "--restrict",
        "reactants:KMnO4,H2O2=2:5",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("balancing family of dimension 1"), "{}", out);
    assert!(
        out.contains("restricted reactants KMnO4:H2O2 = 2:5: unique balancing up to scale"),
        "{}",
        out
    );
}

#[test]
fn malformed_equation_exits_one() {
    let o = run_cli(&["balance", "CH4 +"]);
    assert_eq!(code(&o), 1);
    assert!(!stderr(&o).is_empty());
}

#[test]
fn unknown_flag_exits_two() {
    let o = run_cli(&["balance", "--bogus", "CH4 + O2 -> CO2 + H2O"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn missing_subcommand_exits_two() {
    let o = run_cli(&[]);
    assert_eq!(code(&o), 2);
}

#[test]
fn inline_input_conflicts_with_file_flag() {
    let o = run_cli(&["balance", "CH4 + O2 -> CO2 + H2O", "--file", "whatever.txt"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn unreadable_file_exits_two() {
    let o = run_cli(&["balance", "--file", "/nonexistent/missing-equation.txt"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("cannot read"), "{}", stderr(&o));
}

#[test]
fn equation_arrives_via_stdin() {
    let mut child = Command::new(BIN)
        .arg("balance")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(b"CH4 + O2 -> CO2 + H2O\n")
        .unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).contains("CH4 + 2O2 = CO2 + 2H2O"), "{}", stdout(&o));
}

#[test]
fn equation_arrives_via_file() {
    let path = temp_file("equation", "CH4 + O2 -> CO2 + H2O\n");
    let o = run_cli(&["balance", "--file", path.to_str().unwrap()]);
    let _ = std::fs::remove_file(&path);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).contains("CH4 + 2O2 = CO2 + 2H2O"), "{}", stdout(&o));
}

#[test]
fn redox_half_balances_permanganate_in_acid() {
    let o = run_cli(&["redox", "--half", "MnO4^- -> Mn^2+"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("5e^- + MnO4^- + 8H^+ = Mn^2+ + 4H2O"), "{}", out);
    assert!(out.contains("electron coefficient: -5"), "{}", out);
}

#[test]
fn redox_charge_row_balances_iron_permanganate() {
    let o = run_cli(&[
        "redox",
        "--method",
        "charge-row",
        "Fe^2+ + MnO4^- + H^+ -> Fe^3+ + Mn^2+ + H2O",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(
        stdout(&o).contains("5Fe^2+ + MnO4^- + 8H^+ = 5Fe^3+ + Mn^2+ + 4H2O"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn redox_spectator_balances_silver_copper_exchange() {
    let o = run_cli(&["redox", "--method", "spectator", "Ag^+ + Cu -> Ag + Cu^2+"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("bound form:"), "{}", out);
    assert!(out.contains("2Ag^+ + Cu = 2Ag + Cu^2+"), "{}", out);
}

#[test]
fn redox_splits_enumerates_gold_cyanide() {
    let o = run_cli(&[
        "redox",
        "--splits",
        "Au + CN^- + O2 -> [Au(CN)2]^- + H2O2",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).contains("half-reaction splits: 4"), "{}", stdout(&o));
}

#[test]
fn redox_half_with_other_method_exits_two() {
    let o = run_cli(&["redox", "--half", "--method", "charge-row", "MnO4^- -> Mn^2+"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn mechanism_consistent_counts_the_azomethane_census() {
    let path = temp_file("azomethane-consistent", AZOMETHANE_JSON);
    let o = run_cli(&[
        "mechanism",
        "consistent",
        "--t",
        "6",
        "--file",
        path.to_str().unwrap(),
    ]);
    let _ = std::fs::remove_file(&path);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(
        stdout(&o).contains("step budget 6: 35 (34 nonzero)"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn mechanism_represent_finds_the_unique_expansion() {
    let path = temp_file("azomethane-represent", AZOMETHANE_JSON);
    let o = run_cli(&[
        "mechanism",
        "represent",
        "--c",
        "-5,3,1,1,1,1,0,0,0",
        "--file",
        path.to_str().unwrap(),
    ]);
    let _ = std::fs::remove_file(&path);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("representation space: finite"), "{}", out);
    assert!(out.contains("representations: 1"), "{}", out);
    assert!(out.contains("steps [3, 1, 1, 1, 1, 1]"), "{}", out);
}

#[test]
fn mechanism_report_reads_inline_json() {
    let chain = r#"{"species": ["S1", "S2", "S3"], "known": [0, 1, 2],
                    "intermediates": [], "N": [[-1, -1], [1, -1], [1, 2]]}"#;
    let o = run_cli(&["mechanism", "report", chain]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("mass space dimension: 1"), "{}", out);
    assert!(out.contains("conservative: yes"), "{}", out);
}

#[test]
fn mechanism_precedence_stages_the_intermediates() {
    let path = temp_file("azomethane-precedence", AZOMETHANE_JSON);
    let o = run_cli(&["mechanism", "precedence", "--file", path.to_str().unwrap()]);
    let _ = std::fs::remove_file(&path);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("after round 1: {CH3}"), "{}", out);
    assert!(out.contains("after round 2: {CH3, C2H5N2, C3H9N2}"), "{}", out);
}

#[test]
fn mechanism_candidates_counts_the_unit_box() {
    let path = temp_file("azomethane-elements", AZOMETHANE_ELEMENTS);
    let o = run_cli(&[
        "mechanism",
        "candidates",
        "--bound",
        "1",
        "--file",
        path.to_str().unwrap(),
    ]);
    let _ = std::fs::remove_file(&path);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("kernel dimension: 6"), "{}", out);
    assert!(out.contains("116 (58 up to sign)"), "{}", out);
}

#[test]
fn mechanism_inverse_reports_the_spaces() {
    let path = temp_file("azomethane-inverse", AZOMETHANE_JSON);
    let observed = "[[-1,-3,1,2,0,1,0,0,0],[2,4,0,-2,0,0,0,0,0],[0,0,-1,0,1,0,0,0,0]]";
    let o = run_cli(&[
        "mechanism",
        "inverse",
        "--observed",
        observed,
        "--elements",
        AZOMETHANE_ELEMENTS,
        "--complete",
        "--file",
        path.to_str().unwrap(),
    ]);
    let _ = std::fs::remove_file(&path);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("observations beyond elemental laws: dimension 0"), "{}", out);
    assert!(out.contains("hidden kernel dimension:"), "{}", out);
    assert!(out.contains("lift:"), "{}", out);
}

#[test]
fn count_doubled_quadrilateral() {
    let path = temp_file("quad-vertices", "[[15,15,6],[16,10,10],[10,16,10],[12,12,12]]");
    let o = run_cli(&["count", "--n", "2", "--file", path.to_str().unwrap()]);
    let _ = std::fs::remove_file(&path);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(
        stdout(&o).contains("denominator 2: 79 lattice points (67 interior)"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn count_interior_flag_focuses_the_output() {
    let path = temp_file("quad-interior", "[[15,15,6],[16,10,10],[10,16,10],[12,12,12]]");
    let o = run_cli(&[
        "count",
        "--n",
        "2",
        "--interior",
        "--file",
        path.to_str().unwrap(),
    ]);
    let _ = std::fs::remove_file(&path);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(
        stdout(&o).contains("denominator 2: 67 interior lattice points"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn count_fits_the_unit_square_polynomial() {
    let path = temp_file("unit-square", "[[0,0],[1,0],[0,1],[1,1]]");
    let o = run_cli(&["count", "--fit", "2", "--file", path.to_str().unwrap()]);
    let _ = std::fs::remove_file(&path);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(
        stdout(&o).contains("fitted inclusive: n^2 + 2n + 1"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn count_rejects_float_vertices() {
    let path = temp_file("float-vertices", "[[0.5, 0.5]]");
    let o = run_cli(&["count", "--file", path.to_str().unwrap()]);
    let _ = std::fs::remove_file(&path);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("p/q"), "{}", stderr(&o));
}

#[test]
fn polytope_text_shows_the_ozone_segment() {
    let o = run_cli(&["polytope", "NO + O3 -> NO2 + O2"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("intersection polytope: dimension 1"), "{}", out);
    assert!(out.contains("(1/3, 2/3)"), "{}", out);
}

#[test]
fn polytope_json_round_trips_into_count() {
    let o = run_cli(&["--json", "polytope", "NO + O3 -> NO2 + O2"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).expect("valid JSON");
    let intersection = serde_json::to_string(&v["intersection"]).unwrap();
    assert!(v["intersection"]["vertices"].is_array());

    let path = temp_file("roundtrip-intersection", &intersection);
    let o2 = run_cli(&["count", "--n", "1", "--file", path.to_str().unwrap()]);
    let _ = std::fs::remove_file(&path);
    assert_eq!(code(&o2), 0, "{}", stderr(&o2));
    assert!(
        stdout(&o2).contains("denominator 1: 1 lattice points (0 interior)"),
        "{}",
        stdout(&o2)
    );
}

#[test]
fn corpus_reports_the_expected_profile_and_exits_zero() {
    let o = run_cli(&["corpus"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("criterion 01: PASS"), "{}", out);
    assert!(
        out.contains("criterion 04: FAIL (documented reference mismatch)"),
        "{}",
        out
    );
    assert!(
        out.contains("criterion 13: FAIL (documented reference mismatch)"),
        "{}",
        out
    );
    assert!(
        out.contains("summary: 14 passed, 2 documented reference mismatches, 0 unexpected"),
        "{}",
        out
    );
}

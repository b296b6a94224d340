//! End-to-end tests against the built binary: exact CSV goldens, exit codes,
//! and the frozen shapes of the classify/polygon renderings.

use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_sextic-index"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("utf-8 stdout"),
        String::from_utf8(out.stderr).expect("utf-8 stderr"),
    )
}

#[test]
fn classify_reports_the_even_index_field() {
    let (code, stdout, _) = run(&["classify", "18", "33"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("\"index\": 2"));
    assert!(stdout.contains("\"nu2\": 1"));
    assert!(stdout.contains("\"Thm2-3\""));
    assert!(stdout.contains("\"maximal_order_is_Zalpha\": false"));
    assert!(stdout.contains("\"monogenic_obstruction\": true"));
}

#[test]
fn classify_accepts_negative_coefficients() {
    let (code, stdout, _) = run(&["classify", "-42", "-1258"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("\"index\": 3"));
    assert!(stdout.contains("\"Thm3-5\""));
}

#[test]
fn classify_rejects_reducible_input() {
    let (code, _, stderr) = run(&["classify", "0", "1"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("reducible"));
}

#[test]
fn classify_rejects_zero_constant_term() {
    let (code, _, stderr) = run(&["classify", "5", "0"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("nonzero"));
}

#[test]
fn classify_explains_and_verifies() {
    let (code, stdout, _) = run(&["classify", "18", "33", "--explain", "--verify"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("valuations at 2: nu(5a+6) = 5, nu(a+b+1) = 2"));
    assert!(stdout.contains("maximality: violated conditions ii"));
    assert!(stdout.contains("p = 2: index bound 2, splitting {(1, 2), (2, 2)}"));
    assert!(stdout.contains("residual y^2 + y + 1"));
    assert!(stdout.contains("# oracle cross-checks"));
    assert!(stdout.contains("exponent table at 2: ok (1)"));
    assert!(!stdout.contains("MISMATCH"));
}

#[test]
fn scan_emits_exact_golden_csv() {
    let (code, stdout, _) = run(&["scan", "-1", "1", "-1", "1"]);
    assert_eq!(code, 0);
    let expected = "a,b,nu2,nu3,nu5,index,matched_rules,maximal_order_is_Zalpha,verify_status\n\
                    -1,-1,0,0,0,1,-,true,-\n\
                    -1,1,0,0,0,1,-,true,-\n\
                    1,-1,0,0,0,1,-,true,-\n\
                    1,1,0,0,0,1,-,true,-\n\
                    # index 1: 4\n";
    assert_eq!(stdout, expected);
}

#[test]
fn scan_single_point_with_verification() {
    let (code, stdout, _) = run(&["scan", "18", "18", "33", "33", "--verify"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("18,33,1,0,0,2,Thm2-3,false,agree\n"));
    assert!(stdout.contains("# index 2: 1"));
}

#[test]
fn scan_parallelism_does_not_change_bytes() {
    let (code1, serial, _) = run(&["scan", "-15", "15", "-15", "15", "--jobs", "1"]);
    let (code4, parallel, _) = run(&["scan", "-15", "15", "-15", "15", "--jobs", "4"]);
    assert_eq!(code1, 0);
    assert_eq!(code4, 0);
    assert_eq!(serial, parallel);
}

#[test]
fn scan_writes_to_a_file() {
    let path = std::env::temp_dir().join(format!("sextic-scan-{}.csv", std::process::id()));
    let path_text = path.to_str().expect("utf-8 temp path");
    let (code, stdout, _) = run(&["scan", "2", "3", "2", "3", "--out", path_text]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let written = std::fs::read_to_string(&path).expect("scan file written");
    let (_, direct, _) = run(&["scan", "2", "3", "2", "3"]);
    assert_eq!(written, direct);
    std::fs::remove_file(&path).ok();
}

#[test]
fn polygon_renders_the_shifted_expansion() {
    let (code, stdout, _) = run(&["polygon", "18", "33", "2", "x-3"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("a_0 = 5136   (nu_2 = 4)"));
    assert!(stdout.contains("a_1 = 8748   (nu_2 = 2)"));
    assert!(stdout.contains("a_2 = 6075   (nu_2 = 0)"));
    assert!(stdout.contains("principal polygon: (0, 4)-(2, 0) slope -2/1"));
    assert!(stdout.contains("residual y^2 + y + 1"));
    assert!(stdout.contains("ind_phi = 2"));
    assert!(stdout.contains("phi-regular: true"));
}

#[test]
fn polygon_renders_three_sides() {
    let (code, stdout, _) = run(&["polygon", "-42", "-1258", "3", "x-8"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("a_0 = -1115370   (nu_3 = 8)"));
    assert!(stdout.contains("a_1 = -663552   (nu_3 = 4)"));
    assert!(stdout.contains("a_2 = -153600   (nu_3 = 1)"));
    assert!(stdout.contains("a_3 = -16640   (nu_3 = 0)"));
    assert!(stdout.contains("(0, 8)-(1, 4) slope -4/1"));
    assert!(stdout.contains("(1, 4)-(2, 1) slope -3/1"));
    assert!(stdout.contains("(2, 1)-(3, 0) slope -1/1"));
}

#[test]
fn polygon_rejects_a_modulus_coprime_to_f() {
    let (code, _, stderr) = run(&["polygon", "18", "33", "2", "x"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("does not divide F mod 2"));
}

#[test]
fn polygon_rejects_garbage_phi() {
    let (code, _, stderr) = run(&["polygon", "18", "33", "2", "x^-1+q"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("cannot parse"));
}

#[test]
fn polygon_accepts_spaced_and_starred_terms() {
    let (code, stdout, _) = run(&["polygon", "18", "33", "2", "x^2 + 1*x + 1"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("phi = x^2 + x + 1, p = 2"));
}

#[test]
fn examples_replay_the_six_reference_fields() {
    let (code, stdout, _) = run(&["examples"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("(288, 154): index 1 expected 1 ... ok"));
    assert!(stdout.contains("(360, 35): index 12 expected 12 ... ok"));
    assert!(stdout.contains("6/6 examples match"));
}

#[test]
fn examples_verify_against_the_oracles() {
    let (code, stdout, _) = run(&["examples", "--verify"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("fast path Cor-6: ok (12)"));
    assert!(!stdout.contains("MISMATCH"));
}

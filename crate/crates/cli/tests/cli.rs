//! End-to-end checks of the `qlorentz` binary: exit codes, JSON output, and
//! agreement with the library values bit for bit.

use std::process::Command;

fn qlorentz(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_qlorentz"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
        out.status.code().unwrap_or(-1),
    )
}

fn parse_json_value(s: &str) -> (f64, f64) {
    let v: serde_json::Value = serde_json::from_str(s.trim()).expect("json output");
    (v["re"].as_f64().unwrap(), v["im"].as_f64().unwrap())
}

#[test]
fn plancherel_at_origin_vanishes() {
    let (out, _, code) = qlorentz(&["eval", "plancherel", "--m", "0", "--rho", "0"]);
    assert_eq!(code, 0);
    let (re, im) = parse_json_value(&out);
    assert_eq!((re, im), (0.0, 0.0));
}

#[test]
fn unit_lambda() {
    let (out, _, code) =
        qlorentz(&["eval", "lambda", "--b", "0", "--c", "1", "--a", "1", "--d", "1", "--m", "0", "--rho", "1.3"]);
    assert_eq!(code, 0);
    let (re, im) = parse_json_value(&out);
    assert!((re - 1.0).abs() < 1e-12 && im.abs() < 1e-12);
}

#[test]
fn sixj0_matches_library_bit_for_bit() {
    let ctx = qlorentz::QContext::new(0.9).unwrap();
    let h = qlorentz::HalfInt::from_int;
    let want = qlorentz::sixj::sixj0(&ctx, [h(1), h(1), h(2), h(1), h(1), h(2)]).unwrap();
    let (out, _, code) = qlorentz(&["--q", "0.9", "eval", "sixj0", "1", "1", "2", "1", "1", "2"]);
    assert_eq!(code, 0);
    let (re, _) = parse_json_value(&out);
    assert_eq!(re, want);
}

#[test]
fn exit_codes() {
    // usage error
    let (_, _, code) = qlorentz(&["verify", "not-a-suite"]);
    assert_eq!(code, 2);
    // pole at a requested point: (a)_inf with a = -1 has a vanishing factor
    let (out, _, code) = qlorentz(&["eval", "poch", "--", "-1"]);
    assert_eq!(code, 3);
    assert!(out.contains("\"pole\": true"));
    // q out of range
    let (_, _, code) = qlorentz(&["--q", "1.5", "eval", "qnum", "1"]);
    assert_eq!(code, 2);
}

#[test]
fn verify_report_is_deterministic() {
    let dir = std::env::temp_dir();
    let p1 = dir.join("qlorentz_rep_1.json");
    let p2 = dir.join("qlorentz_rep_2.json");
    for p in [&p1, &p2] {
        let (_, err, code) = qlorentz(&[
            "verify",
            "sixj1",
            "--samples",
            "3",
            "--max-spin",
            "1",
            "--report",
            p.to_str().unwrap(),
        ]);
        assert_eq!(code, 0, "stderr: {err}");
    }
    let a = std::fs::read(&p1).unwrap();
    let b = std::fs::read(&p2).unwrap();
    assert_eq!(a, b, "reports must be byte-identical for equal settings");
}

#[test]
fn table_round_trip() {
    let (out, _, code) = qlorentz(&["table", "lambda", "--max-spin", "1", "--m", "0", "--rho", "1.1"]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next().unwrap(), "B,C,A,re,im");
    let ctx = qlorentz::QContext::new(0.6).unwrap();
    let w = qlorentz::lorentz::PrincipalWeight::new(&ctx, qlorentz::qnum::ZERO, 1.1);
    for line in lines {
        let cols: Vec<&str> = line.split(',').collect();
        let parse = |s: &str| s.parse::<qlorentz::HalfInt>().unwrap();
        let (b, c, a) = (parse(cols[0]), parse(cols[1]), parse(cols[2]));
        let re: f64 = cols[3].parse().unwrap();
        let im: f64 = cols[4].parse().unwrap();
        let v = qlorentz::lorentz::lambda_coeff(&ctx, b, c, a, a, &w.label()).unwrap();
        assert_eq!((re, im), (v.re, v.im), "row {line} must round-trip");
    }
}

#[test]
fn extended_precision_flag_accepted() {
    let (out, _, code) = qlorentz(&["--prec", "ext", "eval", "qnum", "2"]);
    assert_eq!(code, 0);
    let (re, _) = parse_json_value(&out);
    assert!((re - (0.6 + 1.0 / 0.6)).abs() < 1e-12);
}

use std::io::Write;
use std::process::{Command, Output};

fn braidlo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_braidlo"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn grid(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn classify_outputs_json() {
    let o = braidlo(&["classify", "h s2^5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), r#"{"type":2,"d":1,"m":5}"#);
    let o = braidlo(&["classify", "s1 s2^-1"]);
    assert_eq!(stdout(&o).trim(), r#"{"type":1,"d":0,"a":[1]}"#);
}

#[test]
fn parse_error_exits_two() {
    assert_eq!(braidlo(&["classify", "zzz"]).status.code(), Some(2));
    assert_eq!(braidlo(&["pipeline", "s3"]).status.code(), Some(2));
}

#[test]
fn pipeline_certifies_both_cases() {
    for (w, case) in [("h s1 s2^-2 s1 s2^-2", 1), ("h^-1 s1 s2^-1 s1 s2^-2", 2)] {
        let o = braidlo(&["pipeline", w, "--json", "--canonical", "--recheck"]);
        assert_eq!(o.status.code(), Some(0));
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["verdict"], "NonLO_Certified");
        assert_eq!(v["certificate"]["hypothesis"]["case"], case);
        assert_eq!(v["recheck"], true);
    }
}

#[test]
fn alternating_route_is_flagged_external() {
    let o = braidlo(&["pipeline", "s1 s2^-1", "--json", "--canonical"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "NonLO_CitedTheorem");
    assert_eq!(v["external"], true);
}

#[test]
fn canonical_json_is_byte_identical() {
    let args = ["pipeline", "h^2 s1^-2 s2^-1", "--json", "--canonical"];
    let a = stdout(&braidlo(&args));
    assert_eq!(a, stdout(&braidlo(&args)));
    assert!(a.contains("\"group_order\": 48"));
    assert!(!a.contains("timing_ms"));
}

#[test]
fn inconclusive_exits_one() {
    let o = braidlo(&["pipeline", "h^2 s1^-3 s2^-1", "--max-cosets", "5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("Inconclusive"));
}

#[test]
fn dot_output() {
    let o = braidlo(&["pipeline", "s1^3 s2", "--dot"]);
    let s = stdout(&o);
    assert!(s.starts_with("graph white {"));
    assert!(s.contains("[root=true]"));
}

#[test]
fn batch_counts_and_hypothesis() {
    let f = grid("# mixed grid\n(1;1,1;1)\n(2;1,2;1)\nh s1 s2^-2 s1 s2^-2\n");
    let o = braidlo(&["batch", f.path().to_str().unwrap(), "--json", "--canonical"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["total"], 3);
    assert_eq!(v["hypothesis_not_met"], 1);
    assert_eq!(v["soundness_failures"], 0);
    assert_eq!(v["verdicts"]["NonLO_Certified"], 2);
}

#[test]
fn empty_batch() {
    let f = grid("# nothing\n\n");
    let o = braidlo(&["batch", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("total 0"));
}

#[test]
fn bad_grid_exits_two() {
    let f = grid("(1;2)\n");
    assert_eq!(
        braidlo(&["batch", f.path().to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn recheck_accepts_and_rejects() {
    let o = braidlo(&["pipeline", "h s1 s2^-3 s1 s2^-1", "--json", "--canonical"]);
    let report = stdout(&o);
    let good = grid(&report);
    assert_eq!(
        braidlo(&["recheck", good.path().to_str().unwrap()])
            .status
            .code(),
        Some(0)
    );

    let mut v: serde_json::Value = serde_json::from_str(&report).unwrap();
    v["certificate"]["steps"][0]["sign"] = "positive".into();
    let bad = grid(&v["certificate"].to_string());
    assert_eq!(
        braidlo(&["recheck", bad.path().to_str().unwrap()])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn golden_reports() {
    let cases = [
        (
            &["pipeline", "h s1 s2^-2 s1 s2^-2", "--json", "--canonical"][..],
            include_str!("golden/case1.json"),
        ),
        (
            &[
                "pipeline",
                "h^2 s1^-3 s2^-1",
                "--json",
                "--canonical",
                "--depth",
                "4",
            ][..],
            include_str!("golden/type3_order24.json"),
        ),
    ];
    for (args, want) in cases {
        assert_eq!(stdout(&braidlo(args)), want, "{args:?}");
    }
}

use std::process::{Command, Output};

fn tricover(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tricover")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// The first real following `key = ` in a report.
fn field(report: &str, key: &str) -> f64 {
    let line = report.lines().find(|l| l.trim_start().starts_with(&format!("{key} = "))).unwrap_or_else(|| panic!("no {key}"));
    line.split(" = ").nth(1).unwrap().parse().unwrap()
}

#[test]
fn group_suite_passes() {
    let o = tricover(&["verify", "--suite", "group"]);
    assert_eq!(o.status.code(), Some(0));
    let r = stdout(&o);
    assert!(r.contains("status = \"pass\""));
    assert!(r.contains("braid"));
    assert!(r.contains("eps = 9.9999999999999998e-13"));
}

#[test]
fn invert_at_the_symmetric_point() {
    let o = tricover(&["invert", "--x", "0,0;0,0;0,0;1,0"]);
    assert_eq!(o.status.code(), Some(0));
    let r = stdout(&o);
    assert!(field(&r, "linear_residual") < 1e-8);
    assert!(field(&r, "cubic_residual") < 1e-8);
    assert!(field(&r, "max_tail_bound") <= 1e-12);
    assert!(r.contains("ell = \"undefined\""));
}

#[test]
fn invert_at_a_generic_point_gives_ell() {
    let o = tricover(&["invert", "--x", "0.2,0.1;-0.1,0.15;0.05,-0.2;1,0"]);
    assert_eq!(o.status.code(), Some(0));
    let r = stdout(&o);
    assert!(r.contains("ell = [["));
    assert!(field(&r, "ell_route_deviation") < 1e-7);
}

#[test]
fn roundtrip_at_equally_spaced_points() {
    let o = tricover(&["roundtrip", "--lambda", "0,1,2,3,4,5"]);
    assert_eq!(o.status.code(), Some(0));
    let r = stdout(&o);
    assert!(field(&r, "best_deviation") < 1e-6);
    assert!(field(&r, "ell_deviation") < 1e-6);
    assert!(r.contains("best_permutation = \"id\""));
}

#[test]
fn embed_and_theta() {
    let x = "0.1,0.05;0,-0.1;0.2,0;1,0";
    let o = tricover(&["embed", "--x", x]);
    assert_eq!(o.status.code(), Some(0));
    assert!(field(&stdout(&o), "imag_lambda_min") > 0.0);
    let o = tricover(&["theta", "--x", x]);
    assert_eq!(o.status.code(), Some(0));
    let r = stdout(&o);
    assert_eq!(r.matches("tail_bound = ").count(), 81 + 1);
    assert!(field(&r, "max_abs_vanishing") < 1e-9);
    assert!(field(&r, "min_abs_surviving") > 1e-4);
}

#[test]
fn forward_from_a_file_and_output_path() {
    let dir = std::env::temp_dir().join(format!("tricover-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("lambda.txt");
    std::fs::write(&input, "# two sextuples\n0,1,2,3,4,5\n-1,0.5,1.25,3,3.5,7\n").unwrap();
    let out = dir.join("report.txt");
    let o = tricover(&["forward", "--lambda-file", input.to_str().unwrap(), "--output", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let r = std::fs::read_to_string(&out).unwrap();
    assert_eq!(r.matches("twist_residual = ").count(), 2);
    assert_eq!(r.matches("embedding_deviation = ").count(), 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn reports_are_deterministic() {
    let args = ["verify", "--suite", "relations", "--samples", "4", "--seed", "11"];
    let a = tricover(&args);
    let b = tricover(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("seed = 11"));
}

#[test]
fn reals_round_trip_through_the_report() {
    let o = tricover(&["embed", "--x", "0.1,0.05;0,-0.1;0.2,0;1,0"]);
    let r = stdout(&o);
    let line = r.lines().find(|l| l.trim_start().starts_with("margin = ")).unwrap();
    let text = line.split(" = ").nth(1).unwrap();
    let v: f64 = text.parse().unwrap();
    assert_eq!(format!("{v:.16e}"), text);
}

#[test]
fn failed_checks_exit_with_one() {
    let o = tricover(&["theta", "--x", "0.1,0;0,0;0,0;1,0", "--eps", "1e-1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("status = \"fail\""));
    assert!(String::from_utf8_lossy(&o.stderr).contains("non-surviving theta constants vanish"));

    let o = tricover(&["forward", "--lambda", "0,1,2,3,4,5", "--tol", "1e-17"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("quadrature did not converge"));
}

#[test]
fn bad_input_exits_with_two() {
    for args in [
        vec!["embed", "--x", "2,0;0,0;0,0;1,0"],
        vec!["embed", "--x", "0,0;0,0;1,0"],
        vec!["verify", "--suite", "nope"],
        vec!["forward", "--lambda", "0,2,1,3,4,5"],
        vec!["forward", "--lambda", "0,1,2"],
        vec!["forward"],
        vec!["roundtrip", "--lambda", "0,1,2,3,4,5", "--tol", "-1"],
        vec!["forward", "--lambda-file", "/nonexistent/lambda.txt"],
        vec!["frobnicate"],
    ] {
        let o = tricover(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
    }
}

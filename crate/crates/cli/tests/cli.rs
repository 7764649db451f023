//! End-to-end tests of the command-line interface: worked examples, output
//! formats, the JSONL round trip, and the exit-code contract.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_alphacf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn interval_shows_worked_endpoints() {
    let out = run(&["interval", "1/3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("(-3+1*sqrt(13))/2"));
    assert!(text.contains("(-1+1*sqrt(3))/2"));
    assert!(text.contains("maximal: true"));
}

#[test]
fn expand_prints_twins() {
    let out = run(&["expand", "1/3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("even: [2,1]"));
    assert!(text.contains("odd:  [3]"));
    // digit-string input is accepted
    let out = run(&["expand", "[2,1]"]);
    assert!(stdout(&out).contains("rational: 1/3"));
}

#[test]
fn maximal_reports_container() {
    let out = run(&["maximal", "2/3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("maximal: false"));
    assert!(text.contains("interval of 1/1"));
}

#[test]
fn enumerate_jsonl_round_trips() {
    let out = run(&["enumerate", "0.5", "1.0", "--den-max", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    let mut pseudocenters = Vec::new();
    for line in &lines {
        let record = alphacf::IntervalRecord::from_jsonl(line).unwrap();
        let (interval, _, _) = record.to_interval().unwrap();
        pseudocenters.push(interval.pseudocenter().to_string());
    }
    assert_eq!(pseudocenters, vec!["1/2", "1"]);
}

#[test]
fn enumerate_range_flag_matches_positionals() {
    let a = run(&["enumerate", "0.4", "0.7", "--den-max", "5"]);
    let b = run(&["enumerate", "--range", "0.4", "0.7", "--den-max", "5"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn match_reports_all_true_for_one_third() {
    let out = run(&["match", "1/3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("N=1 M=2 class=inc"));
    assert!(text.contains("algebraic: true"));
    assert!(text.contains("c1=true c2=true c3=true"));
}

#[test]
fn match_accepts_sample_points() {
    let out = run(&["match", "1/3", "7/20", "per[2,1,3]"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("sample 7/20: algebraic=true orbit=true c1=true c2=true c3=true"));
    // the periodic extension is an exceptional point for the third condition
    assert!(text.contains("c3=false"));
}

#[test]
fn orbit_trace_format() {
    let out = run(&["orbit", "1/3", "-2/3", "--steps", "5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "step\tx\tx_dec\tepsilon\tc\tp_n\tq_n");
    // the orbit reaches zero after two steps and stops
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("1\t-1/2\t"));
    assert!(lines[2].starts_with("2\t0\t"));
}

#[test]
fn double_prints_chain_and_bracket() {
    let out = run(&["double", "1/2", "--depth", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("1/2"));
    assert!(text.contains("2/5"));
    assert!(text.contains("12/31"));
    assert!(text.contains("limit bracket"));
}

#[test]
fn coverage_csv_header_and_monotone_rows() {
    let out = run(&["coverage", "1/3", "1", "--den-max", "100", "--precision", "6"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "D,covered_length,residual");
    let covered: Vec<f64> = lines[1..]
        .iter()
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert!(covered.windows(2).all(|w| w[1] >= w[0] - 1e-6));
}

#[test]
fn entropy_scan_deterministic_bytes() {
    let args =
        ["entropy-scan", "0.4", "0.5", "--steps", "2", "--iters", "5000", "--orbits", "3", "--seed", "7"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).starts_with("alpha,estimate,stderr,iters,n_orbits,seed"));
}

#[test]
fn output_flag_writes_file() {
    let dir = std::env::temp_dir().join("alphacf-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("rows.jsonl");
    let out = run(&["enumerate", "0.5", "1.0", "--den-max", "1", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
    let contents = std::fs::read_to_string(&path).unwrap();
    assert_eq!(contents.lines().count(), 2);
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn exit_codes_for_malformed_inputs() {
    // out-of-domain rationals and garbage all exit with code 2
    for args in [
        vec!["interval", "0"],
        vec!["interval", "5/3"],
        vec!["interval", "abc"],
        vec!["expand", "-1/2"],
        vec!["match", "2/3"],
        vec!["orbit", "1/3", "9/10"],
        vec!["enumerate", "0.9", "0.5", "--den-max", "5"],
        vec!["coverage", "0", "1", "--den-max", "10"],
        vec!["entropy-scan", "0.5", "0.4"],
        vec!["double", "2/3"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "args {args:?} should exit 2");
    }
    // unknown flags are usage errors (clap also uses 2)
    let out = run(&["interval", "1/3", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
}

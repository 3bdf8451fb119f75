use std::fs;
use std::process::{Command, Output};

use tempfile::tempdir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_interfam")).args(args).output().expect("spawn interfam")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

fn rows(text: &str) -> Vec<Vec<String>> {
    text.lines().map(|l| l.split(',').map(str::to_string).collect()).collect()
}

#[test]
fn eval_examples() {
    assert_eq!(
        stdout(&["--dist", "exponential", "--c", "1", "eval", "--what", "pdf", "--at", "0,1"]),
        "x,pdf\n0,1\n1,0.36787944117144233\n"
    );
    assert_eq!(
        stdout(&["--dist", "pareto_i", "--x0", "1", "--q", "2", "eval", "--what", "quantile", "--at", "0.75"]),
        "y,quantile\n0.75,2\n"
    );
    assert_eq!(
        stdout(&["--p", "inf", "--b", "-1", "--c", "1", "--q", "2", "eval", "--what", "cdf", "--at", "0"]),
        "x,cdf\n0,0\n"
    );
}

#[test]
fn eval_keeps_input_order_and_prints_inf() {
    let out = stdout(&["--p", "0", "--b", "0.5", "--c", "1", "--q", "2", "eval", "--what", "pdf", "--at", "2,0,1"]);
    let r = rows(&out);
    assert_eq!(r[1][0], "2");
    assert_eq!(r[2], ["0", "inf"]);
    assert_eq!(r[3][0], "1");
}

#[test]
fn eval_values_parse_back() {
    let out = stdout(&[
        "--p",
        "2",
        "--b",
        "1.3",
        "--c",
        "3",
        "--q",
        "1.7",
        "--x0",
        "0.5",
        "eval",
        "--what",
        "cdf",
        "--at",
        "0.7,1.9,40",
    ]);
    let d = interfam::Distribution::new(interfam::IFParams::new(2.0, 1.3, 3.0, 1.7, 0.5)).unwrap();
    for r in rows(&out).iter().skip(1) {
        let x: f64 = r[0].parse().unwrap();
        let v: f64 = r[1].parse().unwrap();
        assert_eq!(v, d.cdf(x).unwrap());
    }
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["--p", "1", "--b", "0", "--c", "1", "--q", "2", "summary"]), 1);
    assert_eq!(code(&["--p", "1", "--b", "1", "--c", "-1", "--q", "2", "summary"]), 1);
    assert_eq!(code(&["--b", "1", "--c", "1", "--q", "2", "summary"]), 1);
    assert_eq!(code(&["--dist", "nonexistent", "summary"]), 1);
    assert_eq!(code(&["--dist", "lomax", "--c", "1", "--q", "2", "--x0", "1", "summary"]), 1);
    assert_eq!(code(&["--p", "1", "--b", "1", "--c", "1", "--q", "2", "eval", "--what", "quantile", "--at", "1.5"]), 1);
    assert_eq!(code(&["--p", "1", "--b", "1", "--c", "1", "--q", "2", "eval", "--what", "logpdf", "--at", "0"]), 1);
    assert_eq!(code(&["frobnicate"]), 1);
    assert_eq!(code(&["--help"]), 0);
    assert_eq!(code(&["catalog", "show", "nonexistent"]), 1);
}

#[test]
fn summary_pareto_i() {
    let out = stdout(&["--dist", "pareto_i", "--x0", "1", "--q", "2", "summary"]);
    let r = rows(&out);
    let field = |name: &str| r.iter().find(|row| row[0] == name).unwrap_or_else(|| panic!("{name}")).clone();
    let fields: Vec<&str> = r.iter().map(|row| row[0].as_str()).collect();
    assert_eq!(fields, ["field", "params", "subfamily", "catalog", "boundary", "median", "mean", "variance", "mode"]);
    assert_eq!(field("mean")[1..], ["finite", "closed-form", "2"]);
    assert_eq!(field("variance")[1..], ["nonexistent", "", "requires r < bq"]);
    let median: f64 = field("median")[3].parse().unwrap();
    assert!((median - 2f64.sqrt()).abs() < 1e-15);
    assert_eq!(field("mode")[1..], ["boundary", "closed-form", "1"]);
    assert_eq!(field("subfamily")[3], "IF1");
}

#[test]
fn summary_rayleigh_and_asymptote() {
    let r = rows(&stdout(&["--dist", "rayleigh", "--c", "1", "summary"]));
    let mean: f64 = r[6][3].parse().unwrap();
    assert!((mean - std::f64::consts::PI.sqrt() / 2.0).abs() < 1e-15);
    assert_eq!(r[8][1], "interior");
    let mode: f64 = r[8][3].parse().unwrap();
    assert!((mode - 0.5f64.sqrt()).abs() < 1e-15);

    let r = rows(&stdout(&["--p", "0", "--b", "0.5", "--q", "2", "--c", "1", "--x0", "0", "summary"]));
    assert_eq!(r[8][1], "asymptote");
}

#[test]
fn summary_general_is_numeric() {
    let r = rows(&stdout(&["--p", "2", "--b", "2", "--c", "1", "--q", "3", "summary"]));
    assert_eq!(r[2][3], "General");
    assert_eq!(r[6][2], "numeric");
    assert_eq!(r[8][2], "numeric");
}

#[test]
fn sample_files() {
    let dir = tempdir().unwrap();
    let empty = dir.path().join("empty.csv");
    stdout(&["--dist", "exponential", "--c", "1", "sample", "--n", "0", "--out", empty.to_str().unwrap()]);
    assert_eq!(fs::read_to_string(&empty).unwrap(), "x\n");

    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for f in [&a, &b] {
        stdout(&[
            "--dist",
            "weibull",
            "--c",
            "2",
            "--q",
            "1.5",
            "--x0",
            "1",
            "sample",
            "--n",
            "500",
            "--seed",
            "9",
            "--out",
            f.to_str().unwrap(),
        ]);
    }
    let text = fs::read(&a).unwrap();
    assert_eq!(text, fs::read(&b).unwrap());
    assert_eq!(String::from_utf8(text).unwrap().lines().count(), 501);
}

#[test]
fn sample_mean_of_a_million_exponentials() {
    let dir = tempdir().unwrap();
    let path = dir.path().join("exp.csv");
    stdout(&[
        "--dist",
        "exponential",
        "--c",
        "1",
        "sample",
        "--n",
        "1000000",
        "--seed",
        "42",
        "--out",
        path.to_str().unwrap(),
    ]);
    let text = fs::read_to_string(&path).unwrap();
    let xs: Vec<f64> = text.lines().skip(1).map(|l| l.parse().unwrap()).collect();
    assert_eq!(xs.len(), 1_000_000);
    let mean = xs.iter().sum::<f64>() / xs.len() as f64;
    assert!((mean - 1.0).abs() < 0.004, "{mean}");
}

#[test]
fn sample_to_unwritable_path_is_io_error() {
    let dir = tempdir().unwrap();
    let path = dir.path().join("missing").join("x.csv");
    assert_eq!(code(&["--dist", "exponential", "--c", "1", "sample", "--n", "3", "--out", path.to_str().unwrap()]), 3);
}

#[test]
fn params_file_with_override() {
    let dir = tempdir().unwrap();
    let path = dir.path().join("p.txt");
    fs::write(&path, "# rayleigh\np = inf\nb = -1\nc = 3\nq = 2\nx0 = 0\n").unwrap();
    let file = path.to_str().unwrap();
    let base = stdout(&["--params", file, "eval", "--what", "cdf", "--at", "1"]);
    let direct = stdout(&["--p", "inf", "--b", "-1", "--c", "3", "--q", "2", "eval", "--what", "cdf", "--at", "1"]);
    assert_eq!(base, direct);
    let over = stdout(&["--params", file, "--c", "1", "eval", "--what", "cdf", "--at", "1"]);
    assert_eq!(over, stdout(&["--dist", "rayleigh", "--c", "1", "eval", "--what", "cdf", "--at", "1"]));
    assert_eq!(code(&["--params", dir.path().join("none").to_str().unwrap(), "summary"]), 3);
    assert_eq!(code(&["--params", file, "--dist", "rayleigh", "--c", "1", "summary"]), 1);
}

#[test]
fn curve_p_sweep() {
    let out =
        stdout(&["curve", "--vary", "p", "--values", "0,1,inf", "--from", "0", "--to", "4000", "--points", "4001"]);
    let r = rows(&out);
    assert_eq!(r[0], ["x", "p=0", "p=1", "p=inf"]);
    for col in 1..=3 {
        let ys: Vec<f64> = r[1..].iter().map(|row| row[col].parse().unwrap()).collect();
        let mass: f64 = ys.windows(2).map(|w| 0.5 * (w[0] + w[1])).sum();
        assert!(ys.iter().all(|y| *y >= 0.0));
        assert!(mass > 0.5 && mass < 1.0, "column {col} mass {mass}");
    }
}

#[test]
fn curve_defaults_and_panels() {
    let r = rows(&stdout(&["curve"]));
    assert_eq!(r[0], ["x", "p=0", "p=1", "p=10", "p=inf"]);
    assert_eq!(r.len(), 202);
    for panel in 1..=6 {
        let r = rows(&stdout(&["curve", "--panel", &panel.to_string(), "--points", "5"]));
        assert_eq!(r.len(), 6);
    }
    assert_eq!(code(&["curve", "--panel", "7"]), 1);
    assert_eq!(code(&["curve", "--points", "1"]), 1);
    assert_eq!(code(&["--x0", "5", "curve", "--from", "0"]), 1);
}

#[test]
fn curve_scale_columns() {
    let r = rows(&stdout(&[
        "curve",
        "--vary",
        "c",
        "--values",
        "100,200,400",
        "--from",
        "0",
        "--to",
        "1000",
        "--points",
        "101",
    ]));
    let v = |i: usize, col: usize| r[1 + i][col].parse::<f64>().unwrap();
    for i in 0..=50 {
        let (a, b) = (v(2 * i, 3), v(i, 2) / 2.0);
        assert!((a - b).abs() <= 1e-10 * a.abs().max(b.abs()), "{a} {b}");
    }
}

#[test]
fn modegrid_sentinels() {
    let r = rows(&stdout(&["--p", "0", "modegrid", "--axis1", "b:1.1:3:5", "--axis2", "q:0.5:3:6"]));
    assert_eq!(r[0][0], "b/q");
    assert_eq!(r.len(), 6);
    for row in &r[1..] {
        let b: f64 = row[0].parse().unwrap();
        for (j, cell) in row[1..].iter().enumerate() {
            let q: f64 = r[0][1 + j].parse().unwrap();
            let x: f64 = cell.parse().unwrap();
            let closed = ((b - 1.0) / (b * q + 1.0)).powf(1.0 / b);
            assert!((x - closed).abs() < 1e-12, "b={b} q={q}");
        }
    }
    // IF2 with q = 1: b = -1 is the boundary case, b > -1 an asymptote
    let r = rows(&stdout(&["--p", "inf", "modegrid", "--axis1", "b:-2:-0.5:4", "--axis2", "q:1:1:1"]));
    let cells: Vec<&str> = r[1..].iter().map(|row| row[1].as_str()).collect();
    assert_eq!(cells[2], "-1");
    assert_eq!(cells[3], "-2");
    assert!(cells[0].parse::<f64>().unwrap() > 0.0);
}

#[test]
fn modegrid_if3_matches_closed_form() {
    let r = rows(&stdout(&["--b", "1", "modegrid", "--axis1", "p:0.1:5:4", "--axis2", "q:0.5:4:5"]));
    for row in &r[1..] {
        let p: f64 = row[0].parse().unwrap();
        for (j, cell) in row[1..].iter().enumerate() {
            let q: f64 = r[0][1 + j].parse().unwrap();
            let closed = (p + 1.0).powf(-1.0 / q) * (((q + 1.0) / ((p + 1.0) * q + 1.0)).powf(-1.0 / q) - 1.0);
            assert!((cell.parse::<f64>().unwrap() - closed).abs() < 1e-12);
        }
    }
    assert_eq!(code(&["--b", "1", "modegrid", "--axis1", "q:1:2:2", "--axis2", "q:1:2:2"]), 1);
}

#[test]
fn catalog_commands() {
    let list = stdout(&["catalog", "list"]);
    assert!(list.lines().count() > 20);
    assert!(list.lines().any(|l| l.starts_with("lomax,Lomax,2,")));
    let show = stdout(&["catalog", "show", "stoppa"]);
    assert!(show.contains("(m-1, 1, c, q, c*m^(-1/q))"), "{show}");
    assert!(show.contains("B(1 - 1/q, m)"));
}

#[test]
fn deterministic_output() {
    let args = ["--p", "3", "--b", "-1.5", "--c", "2", "--q", "0.8", "curve", "--vary", "q", "--points", "50"];
    assert_eq!(stdout(&args), stdout(&args));
    let args = ["--dist", "lomax", "--c", "1", "--q", "3", "sample", "--n", "200", "--seed", "3"];
    assert_eq!(stdout(&args), stdout(&args));
}

#[test]
fn check_suites() {
    let out = stdout(&["check", "--suite", "moments", "--tol", "1e-6"]);
    assert!(out.lines().nth(1).unwrap().ends_with(",pass"));
    assert!(out.contains("# lomax"));
    assert!(stdout(&["check", "--suite", "roundtrip", "--tol", "1e-9"]).contains(",pass"));
    assert!(stdout(&["check", "--suite", "normalization", "--tol", "1e-6"]).contains(",pass"));
    let strict = run(&["check", "--suite", "modes", "--tol", "1e-14"]);
    assert_eq!(strict.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&strict.stdout).contains("# FAIL (p="));
    assert_eq!(code(&["check", "--suite", "bogus"]), 1);
}

//! End-to-end tests of the `fide` binary: flags, formats, exit codes and
//! stream discipline.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    run_with_env(args, &[])
}

fn run_with_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_fide"));
    cmd.args(args);
    cmd.env_remove("FIDE_QUAD_ORDER");
    for (key, value) in env {
        cmd.env(key, value);
    }
    cmd.output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).unwrap()
}

fn tmp_path(name: &str) -> PathBuf {
    let mut path = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    path.push(name);
    path
}

/// Parse a rendered CSV into rows of cells (no quoted fields are produced by
/// the numeric tables).
fn parse_csv(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn solve_prints_known_nodal_value() {
    let output = run(&["solve", "--problem", "ex5.3", "--scheme", "s1", "--n", "10"]);
    assert!(output.status.success());
    let text = stdout(&output);
    let row = text
        .lines()
        .find(|l| l.trim_start().starts_with("0.2 "))
        .unwrap();
    // published table prints this cell as 0.093188 (six decimals); the table
    // style here is six significant digits of the same value
    assert!(row.contains("0.0931879"), "row: {row}");
    assert!(stderr(&output).is_empty());
}

#[test]
fn solve_rejects_unknown_scheme_listing_valid_ones() {
    let output = run(&["solve", "--problem", "ex5.1", "--scheme", "s9", "--n", "5"]);
    assert_eq!(output.status.code(), Some(1));
    assert!(stdout(&output).is_empty());
    let err = stderr(&output);
    assert!(err.contains("s1, s2, s3"), "stderr: {err}");
}

#[test]
fn solve_rejects_zero_subintervals() {
    let output = run(&["solve", "--problem", "ex5.1", "--scheme", "s1", "--n", "0"]);
    assert_eq!(output.status.code(), Some(1));
    assert!(stdout(&output).is_empty());
}

#[test]
fn solve_rejects_unknown_problem() {
    let output = run(&["solve", "--problem", "ex5.9", "--scheme", "s1", "--n", "5"]);
    assert_eq!(output.status.code(), Some(1));
    assert!(stderr(&output).contains("ex5.1"));
}

#[test]
fn convergence_matches_published_ladder() {
    let output = run(&[
        "convergence",
        "--problem",
        "ex5.2",
        "--schemes",
        "s1,s2,s3",
        "--format",
        "csv",
    ]);
    assert!(output.status.success());
    let rows = parse_csv(&stdout(&output));
    assert_eq!(rows[0], ["scheme", "h", "mae", "co"]);
    assert_eq!(rows.len(), 1 + 3 * 5);
    let s2_rows: Vec<_> = rows.iter().filter(|r| r[0] == "s2").collect();
    let table_mae = [6.70569e-2, 1.47491e-2, 3.28518e-3, 7.33189e-4, 1.63575e-4];
    let table_co = [2.18476, 2.16658, 2.16373, 2.16423];
    for (row, want) in s2_rows.iter().zip(table_mae) {
        let got: f64 = row[2].parse().unwrap();
        assert!((got - want).abs() <= 5e-4 * want, "{got} vs {want}");
    }
    assert!(s2_rows[0][3].is_empty(), "first rung has no order");
    for (row, want) in s2_rows[1..].iter().zip(table_co) {
        let got: f64 = row[3].parse().unwrap();
        assert!((got - want).abs() <= 1e-3, "{got} vs {want}");
    }
}

#[test]
fn convergence_rejects_non_doubling_ladder() {
    let output = run(&["convergence", "--problem", "ex5.1", "--n-ladder", "5,12"]);
    assert_eq!(output.status.code(), Some(1));
    assert!(stdout(&output).is_empty());
    assert!(stderr(&output).contains("double"));
}

#[test]
fn convergence_rejects_problems_without_exact_solution() {
    let path = tmp_path("no_exact.cfg");
    fs::write(
        &path,
        "name = plain\nalpha = 0.5\ndelta = 0\nf = x\nkernel = x*t\n",
    )
    .unwrap();
    let output = run(&["convergence", "--problem", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(1));
    assert!(stderr(&output).contains("exact"));
}

#[test]
fn csv_output_lands_in_the_requested_file() {
    let path = tmp_path("ladder.csv");
    let _ = fs::remove_file(&path);
    let output = run(&[
        "convergence",
        "--problem",
        "ex5.1",
        "--schemes",
        "s1",
        "--n-ladder",
        "5,10",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(output.status.success());
    assert!(stdout(&output).is_empty());
    let written = fs::read_to_string(&path).unwrap();
    assert!(written.starts_with("scheme,h,mae,co"), "{written}");
    // full-precision cells round-trip
    let rows = parse_csv(&written);
    let mae: f64 = rows[1][2].parse().unwrap();
    assert!((mae - 5.05046e-2).abs() < 1e-6);
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = ["convergence", "--problem", "ex5.3", "--schemes", "s2,s3"];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn bounds_ratios_stay_below_one() {
    let output = run(&[
        "bounds",
        "--problem",
        "ex5.1",
        "--scheme",
        "s1",
        "--n-ladder",
        "5,10",
        "--format",
        "csv",
    ]);
    assert!(output.status.success());
    let rows = parse_csv(&stdout(&output));
    assert_eq!(rows[0], ["h", "mae", "bound", "ratio"]);
    for row in &rows[1..] {
        let ratio: f64 = row[3].parse().unwrap();
        assert!(ratio <= 1.0 && ratio > 0.0, "ratio {ratio}");
    }
}

#[test]
fn bounds_shrink_with_the_step_for_the_hybrid_scheme() {
    let output = run(&[
        "bounds",
        "--problem",
        "ex5.2",
        "--scheme",
        "s3",
        "--n-ladder",
        "5,10,20",
        "--format",
        "csv",
    ]);
    assert!(output.status.success());
    let rows = parse_csv(&stdout(&output));
    let column =
        |j: usize| -> Vec<f64> { rows[1..].iter().map(|r| r[j].parse().unwrap()).collect() };
    for j in [1, 2] {
        let values = column(j);
        assert!(
            values.windows(2).all(|w| w[1] < w[0]),
            "column {j}: {values:?}"
        );
    }
    for ratio in column(3) {
        assert!(ratio <= 1.0);
    }
}

#[test]
fn bounds_refuse_the_problem_with_unbounded_derivatives() {
    let output = run(&["bounds", "--problem", "ex5.3", "--scheme", "s1"]);
    assert_eq!(output.status.code(), Some(1));
    assert!(stdout(&output).is_empty());
    assert!(stderr(&output).contains("unbounded second derivative"));
}

#[test]
fn config_file_problems_solve() {
    let path = tmp_path("custom.cfg");
    fs::write(
        &path,
        "name = custom\nalpha = 1/2\ndelta = 0\n\
         f = (8/3*x^(3/2) - 2*x^(1/2))/sqrt(pi) - (3*x^5 - 4*x^4)/12\n\
         kernel = x*t\nexact = x^2 - x\n",
    )
    .unwrap();
    let output = run(&[
        "solve",
        "--problem",
        path.to_str().unwrap(),
        "--scheme",
        "s1",
        "--n",
        "5",
    ]);
    assert!(output.status.success(), "{}", stderr(&output));
    let text = stdout(&output);
    assert!(text.contains("0.0505046"), "{text}");
    assert!(text.lines().next().unwrap().contains("custom"));
}

#[test]
fn config_syntax_errors_name_the_field() {
    let path = tmp_path("broken.cfg");
    fs::write(
        &path,
        "name = broken\nalpha = 0.5\ndelta = 0\nf = x+\nkernel = x*t\n",
    )
    .unwrap();
    let output = run(&[
        "solve",
        "--problem",
        path.to_str().unwrap(),
        "--scheme",
        "s1",
        "--n",
        "5",
    ]);
    assert_eq!(output.status.code(), Some(1));
    let err = stderr(&output);
    assert!(err.contains("field `f`"), "stderr: {err}");
    assert!(err.contains("byte 2"), "stderr: {err}");
}

#[test]
fn quadrature_order_env_var_is_honored() {
    let bad = run_with_env(
        &["solve", "--problem", "ex5.1", "--scheme", "s1", "--n", "5"],
        &[("FIDE_QUAD_ORDER", "lots")],
    );
    assert_eq!(bad.status.code(), Some(1));
    assert!(stderr(&bad).contains("FIDE_QUAD_ORDER"));

    let out_of_range = run_with_env(
        &["solve", "--problem", "ex5.1", "--scheme", "s1", "--n", "5"],
        &[("FIDE_QUAD_ORDER", "65")],
    );
    assert_eq!(out_of_range.status.code(), Some(1));

    let fine = run_with_env(
        &[
            "convergence",
            "--problem",
            "ex5.2",
            "--schemes",
            "s2",
            "--n-ladder",
            "5,10",
        ],
        &[("FIDE_QUAD_ORDER", "32")],
    );
    assert!(fine.status.success());
    // flag wins over the environment
    let flagged = run_with_env(
        &[
            "solve",
            "--problem",
            "ex5.1",
            "--scheme",
            "s1",
            "--n",
            "5",
            "--quad-order",
            "10",
        ],
        &[("FIDE_QUAD_ORDER", "lots")],
    );
    assert!(flagged.status.success());
}

#[test]
fn numerical_failures_exit_with_code_two() {
    // constant kernel tuned to cancel the first diagonal: 2 / Gamma(3/2)
    let singular = tmp_path("singular.cfg");
    fs::write(
        &singular,
        "name = singular\nalpha = 1/2\ndelta = 0\nf = 1\nkernel = 2.256758334191025\n",
    )
    .unwrap();
    let output = run(&[
        "solve",
        "--problem",
        singular.to_str().unwrap(),
        "--scheme",
        "s1",
        "--n",
        "1",
    ]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr(&output).contains("pivot"));

    // forcing term that evaluates to NaN past x = 1/2
    let nan = tmp_path("nan.cfg");
    fs::write(
        &nan,
        "name = nan\nalpha = 1/2\ndelta = 0\nf = sqrt(x - 1/2)\nkernel = 0\n",
    )
    .unwrap();
    let output = run(&[
        "solve",
        "--problem",
        nan.to_str().unwrap(),
        "--scheme",
        "s1",
        "--n",
        "4",
    ]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stdout(&output).is_empty());
}

#[test]
fn help_exits_zero() {
    let output = run(&["--help"]);
    assert!(output.status.success());
    assert!(stdout(&output).contains("solve"));
}

use std::process::{Command, Output};

fn meixner(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_meixner"))
        .args(args)
        .env_remove("MEIXNER_ORDER")
        .output()
        .expect("run meixner")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn csv_output_is_deterministic() {
    let args = ["verify", "--suite", "decomposition", "-n", "6", "--format", "csv"];
    let a = meixner(&args);
    let b = meixner(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.starts_with("suite,framework,lambda,eta,t,order,status,max_abs_error,detail\n"));
    assert!(!text.contains("elapsed"));
    // five-case grid, both frameworks, in grid order
    let rows: Vec<_> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 10);
    assert_eq!(rows[0], "decomposition,classical,0,0,1,6,pass,exact,");
    assert_eq!(rows[9], "decomposition,free,1,1,1,6,pass,exact,");
}

#[test]
fn json_reports_carry_every_field() {
    let o = meixner(&["verify", "--framework", "classical", "--lambda", "3", "--eta", "2", "--suite", "cumulants", "--format", "json", "-n", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let line = stdout(&o);
    let v: serde_json::Value = serde_json::from_str(line.trim()).unwrap();
    for key in ["schema", "suite", "framework", "lambda", "eta", "t", "order", "status", "max_abs_error", "detail", "elapsed_ms"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["schema"], 1);
    assert_eq!(v["max_abs_error"], "exact");
    assert_eq!(v["framework"], "classical");
    assert!(v["detail"].is_null());
}

#[test]
fn order_comes_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_meixner"))
        .args(["table", "moments", "--framework", "free"])
        .env("MEIXNER_ORDER", "3")
        .output()
        .unwrap();
    assert_eq!(stdout(&o), "n,moment\n0,1\n1,0\n2,1\n3,0\n");
}

#[test]
fn rational_and_decimal_inputs_agree() {
    let a = meixner(&["table", "jacobi", "--framework", "classical", "--lambda", "1/2", "--eta", "0.25", "-n", "3"]);
    let b = meixner(&["table", "jacobi", "--framework", "classical", "--lambda", "0.5", "--eta", "1/4", "-n", "3"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a), "n,b,a\n0,0,\n1,1/2,1\n2,1,5/2\n3,3/2,9/2\n");
}

#[test]
fn quadrature_tables() {
    let o = meixner(&["quad", "--measure", "mu", "--framework", "free", "--lambda", "0", "--eta", "0", "-m", "2"]);
    assert_eq!(stdout(&o), "i,node,weight\n0,-1,0.5\n1,1,0.5\n");
    let o = meixner(&["quad", "--framework", "classical", "--lambda", "3", "--eta", "2", "-m", "1"]);
    assert_eq!(stdout(&o), "i,node,weight\n0,0,1\n");
    let o = meixner(&["quad", "--support", "-m", "40", "--framework", "free"]);
    let text = stdout(&o);
    let row = text.lines().nth(1).unwrap();
    let (lo, hi) = row.split_once(',').unwrap();
    let (lo, hi): (f64, f64) = (lo.parse().unwrap(), hi.parse().unwrap());
    assert!((lo + 1.99).abs() < 0.01 && (hi - 1.99).abs() < 0.01, "{row}");
}

#[test]
fn series_and_cumulant_tables() {
    let o = meixner(&["table", "series", "--which", "cumulant", "--framework", "classical", "--lambda", "1", "--eta", "0", "-n", "4"]);
    assert_eq!(stdout(&o), "k,coefficient\n0,0\n1,0\n2,1/2\n3,1/6\n4,1/24\n");
    let o = meixner(&["table", "cumulants", "--framework", "free", "--lambda", "0", "--eta", "0", "-n", "4"]);
    // semicircle: only the second free cumulant survives
    assert_eq!(stdout(&o), "n,cumulant\n1,0\n2,1\n3,0\n4,0\n");
    let o = meixner(&["table", "series", "--which", "gf", "--framework", "free", "--x0", "2", "-n", "2"]);
    // (1 - 2z + z^2)^{-1}
    assert_eq!(stdout(&o), "k,coefficient\n0,1\n1,2\n2,3\n");
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["verify", "--suite", "nonsense"][..],
        &["verify", "--lambda", "x"],
        &["verify", "--framework", "quantum"],
        &["table", "poly", "--t", "0"],
        &["table"],
    ] {
        let o = meixner(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
    let o = meixner(&["verify", "--lambda", "0", "--eta", "-1"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("eta must be nonnegative"));
}

#[test]
fn table_format_lists_failures() {
    let o = meixner(&["verify", "--framework", "classical", "--lambda", "1", "--eta", "1", "--suite", "raising", "-n", "4", "--tolerance", "0"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("fail"), "{text}");
    assert!(text.trim_end().ends_with("1 reports, 1 failed"));
}

use std::fs;
use std::process::Command;

use noma_accuracy::output::read_csv;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_noma-accuracy"))
}

fn body(text: &str) -> String {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn same_seed_gives_identical_csv() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let st = bin()
            .args([
                "sweep",
                "--model",
                "mcp,tcp",
                "--alpha",
                "3,4",
                "--n-users",
                "2,3",
                "--samples",
                "20000",
                "--quiet",
            ])
            .arg("--out")
            .arg(&path)
            .status()
            .unwrap();
        assert!(st.success());
        fs::read_to_string(path).unwrap()
    };
    let (a, b) = (run("a.csv"), run("b.csv"));
    assert_eq!(a, b);
    let (_, rows) = read_csv(&a).unwrap();
    assert_eq!(rows.len(), 16);
    assert!(rows[..8].iter().all(|r| r.kind == "accuracy-analytic"));
    for r in &rows {
        let v = r.value.unwrap();
        assert!((0.0..=1.0).contains(&v) && r.error.unwrap() >= 0.0);
        if r.kind == "accuracy-mc" {
            assert!(r.error.unwrap() > 0.0);
        } else {
            assert!(["series", "quadrature-2F1", "tensor-quadrature"].contains(&r.method.as_str()));
        }
    }
}

#[test]
fn timing_only_changes_runtime_column() {
    let out = |timing: bool| {
        let mut c = bin();
        c.args(["mc", "--model", "ppp", "--samples", "10000", "--quiet"]);
        if timing {
            c.arg("--timing");
        }
        String::from_utf8(c.output().unwrap().stdout).unwrap()
    };
    let (plain, timed) = (out(false), out(true));
    let (_, a) = read_csv(&plain).unwrap();
    let (_, b) = read_csv(&timed).unwrap();
    assert!(a[0].runtime_ms.is_none() && b[0].runtime_ms.is_some());
    assert_eq!(a[0].value, b[0].value);
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "# accuracy at one point\nmodel = mcp\nalpha = 3\nn_users = 2\n").unwrap();
    let out = bin()
        .args(["analytic", "--quiet", "--alpha", "4", "--config"])
        .arg(&cfg)
        .output()
        .unwrap();
    assert!(out.status.success());
    let (_, rows) = read_csv(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0].alpha, Some(4.0));
    assert!((rows[0].value.unwrap() - std::f64::consts::FRAC_PI_4).abs() < 1e-6);
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| bin().args(args).output().unwrap().status.code().unwrap();
    assert_eq!(code(&["analytic", "--quiet"]), 0);
    assert_eq!(code(&["analytic", "--model", "fractal"]), 1);
    assert_eq!(code(&["analytic", "--no-such-flag"]), 1);
    assert_eq!(code(&["reproduce", "fig9"]), 1);
    assert_eq!(code(&["analytic", "--config", "/nonexistent/run.cfg"]), 3);
    assert_eq!(code(&["analytic", "--quiet", "--out", "/nonexistent/dir/x.csv"]), 3);
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn bad_grid_points_are_reported_and_run_continues() {
    let out = bin()
        .args(["analytic", "--quiet", "--model", "mcp", "--alpha", "1.5,4"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("# error: "));
    let (_, rows) = read_csv(&text).unwrap();
    assert_eq!(rows.len(), 2);
    assert!(rows[0].is_error() && rows[0].message.is_some());
    assert!(!rows[1].is_error());
    assert!(String::from_utf8(out.stderr).unwrap().contains("error: "));
}

#[test]
fn reproduce_coverage_preset() {
    let out = bin()
        .args([
            "reproduce",
            "fig2",
            "--quiet",
            "--samples",
            "10000",
            "--theta-db",
            "0,10",
            "--beta",
            "0",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("# noma-accuracy coverage-mc\n# preset fig2"));
    let (_, rows) = read_csv(&text).unwrap();
    // per point: near and far for isp and two msp modes, plus the weight
    assert_eq!(rows.len(), 2 * 7);
    assert!(rows
        .iter()
        .all(|r| r.kind.starts_with("coverage-downlink") && r.model.as_deref() == Some("mcp")));
    let msp = rows
        .iter()
        .filter(|r| r.ranking.as_deref() == Some("msp-unconditional"))
        .count();
    assert_eq!(msp, 4);
    assert!(!body(&text).is_empty());
}

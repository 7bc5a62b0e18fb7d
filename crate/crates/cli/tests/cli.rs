use std::path::PathBuf;
use std::process::{Command, Output};

fn config(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(name)
}

fn cfm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cfm")).args(args).output().expect("spawn cfm")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Non-comment rows split on tabs.
fn rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split('\t').map(str::to_string).collect())
        .collect()
}

fn num(s: &str) -> f64 {
    s.parse().unwrap_or_else(|_| panic!("not a number: {s}"))
}

fn write_config(dir: &tempfile::TempDir, text: &str) -> PathBuf {
    let p = dir.path().join("problem.cfg");
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn solve_oscillator() {
    let o = cfm(&["solve", "--config", config("oscillator.cfg").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("# index\tenergy\tresidual\n"));
    let r = rows(&text);
    assert_eq!(r.len(), 3);
    for (row, want) in r.iter().zip([3.0, 7.0, 11.0]) {
        assert!((num(&row[1]) - want).abs() < 1e-10, "{row:?}");
    }
}

#[test]
fn solve_lj_gives_24_rows_with_nine_digits() {
    let o = cfm(&["solve", "--config", config("lj.cfg").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r = rows(&stdout(&o));
    assert_eq!(r.len(), 24);
    for (k, row) in r.iter().enumerate() {
        assert_eq!(row[0], (k + 1).to_string());
        let mantissa = row[1].trim_start_matches('-').split('e').next().unwrap();
        assert_eq!(mantissa.replace('.', "").len(), 9, "{}", row[1]);
    }
}

#[test]
fn rk4_na2_0g_is_partial() {
    let o = cfm(&["solve", "--config", config("na2_0g.cfg").to_str().unwrap(), "--method", "rk4"]);
    assert_eq!(o.status.code(), Some(2));
    let n = rows(&stdout(&o)).len();
    assert!(n >= 25 && n <= 33, "{n} rows");
    assert!(String::from_utf8_lossy(&o.stderr).contains("partial"));
}

#[test]
fn scan_rows_match_the_plan() {
    let o = cfm(&["scan", "--config", config("oscillator.cfg").to_str().unwrap(), "--points", "64"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let r = rows(&text);
    assert_eq!(r.len(), 64);
    let e: Vec<f64> = r.iter().map(|row| num(&row[0])).collect();
    assert!(e.windows(2).all(|w| w[1] > w[0]));
    assert!(r.iter().all(|row| row[2] == "ok"));
    let marks: Vec<&str> = text.lines().filter(|l| l.starts_with("# ") && l[2..].starts_with(char::is_numeric)).collect();
    assert_eq!(marks.len(), 3);
}

#[test]
fn scan_overrides_energy_window() {
    let o = cfm(&[
        "scan",
        "--config",
        config("lj.cfg").to_str().unwrap(),
        "--emin",
        "-0.95",
        "--emax",
        "-0.5 epsilon",
        "--points",
        "40",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r = rows(&stdout(&o));
    assert_eq!(r.len(), 40);
    assert!((num(&r[0][0]) - 0.95).abs() < 1e-12);
    assert!((num(&r[39][0]) - 0.5).abs() < 1e-12);
}

#[test]
fn potential_dumps() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_config(&dir, "potential.kind = alj\npotential.epsilon = 1 epsilon\npotential.r_min = 1 r_min\nmass.b = 1e4\n");
    let o = cfm(&["potential", "--config", p.to_str().unwrap(), "--rlo", "0.9", "--rhi", "3", "--points", "50"]);
    assert_eq!(o.status.code(), Some(0));
    let r = rows(&stdout(&o));
    let min = r.iter().find(|row| row[2] == "min").unwrap();
    assert_eq!(num(&min[0]), 1.0);
    assert_eq!(num(&min[1]), -1.0);

    let depth = |name: &str| {
        let o = cfm(&["potential", "--config", config(name).to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        let r = rows(&stdout(&o));
        let min = r.iter().find(|row| row[2] == "min").unwrap().clone();
        (num(&min[0]), num(&min[1]))
    };
    let (re, v0g) = depth("na2_0g.cfg");
    assert!((re - 71.6).abs() < 0.1, "{re}");
    assert!((v0g + 1.908).abs() < 1e-3, "{v0g}");
    let (_, v1u) = depth("na2_1u.cfg");
    assert!(v1u < 0.0 && v1u > v0g);
}

#[test]
fn compare_lj_with_reference_table() {
    let o = cfm(&["compare", "--config", config("lj.cfg").to_str().unwrap(), "--reference", "trost_lj"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("# index\tcomputed\treference\tratio\n"));
    let r = rows(&text);
    assert_eq!(r.len(), 24);
    for row in &r[..23] {
        assert!((num(&row[3]) - 1.0).abs() <= 5e-5, "{row:?}");
    }
    let last = &r[23];
    assert_eq!(last[0], "24");
    assert_eq!(last[2], "-2.69700000e-06");
    assert!((num(&last[1]) / -2.697e-6 - 1.0).abs() < 1e-3);
    assert!(text.lines().last().unwrap().starts_with("# max deviation"));
}

#[test]
fn compare_marks_extrapolated_rows() {
    let o = cfm(&["compare", "--config", config("na2_1u.cfg").to_str().unwrap(), "--reference", "stw1u"]);
    assert_eq!(o.status.code(), Some(0));
    let r = rows(&stdout(&o));
    let starred: Vec<&str> = r.iter().filter(|row| row.len() == 5 && row[4] == "*").map(|row| row[0].as_str()).collect();
    assert_eq!(starred, ["15", "16"]);
    assert!(r.iter().any(|row| row[0] == "16" && row[1] == "-"));
}

#[test]
fn errors_exit_with_one() {
    let o = cfm(&["compare", "--config", config("lj.cfg").to_str().unwrap(), "--reference", "nope"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("nope"));

    let dir = tempfile::tempdir().unwrap();
    let p = write_config(&dir, "potential.kind = alj\nsolver.magic = 3\n");
    for cmd in ["solve", "scan", "potential"] {
        let o = cfm(&[cmd, "--config", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(1), "{cmd}");
        let err = String::from_utf8_lossy(&o.stderr);
        assert!(err.contains("solver.magic") && err.contains("line 2"), "{err}");
    }
    let o = cfm(&["solve", "--config", dir.path().join("missing.cfg").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn partial_exit_for_scan_and_compare() {
    let lj = config("lj.cfg");
    for args in [
        vec!["scan", "--config", lj.to_str().unwrap(), "--method", "rk4"],
        vec!["compare", "--config", lj.to_str().unwrap(), "--method", "rk4", "--reference", "rk4_lj"],
    ] {
        let o = cfm(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn output_is_reproducible_and_provenance_is_opt_in() {
    let dir = tempfile::tempdir().unwrap();
    let osc = config("oscillator.cfg");
    let a = dir.path().join("a.tsv");
    let b = dir.path().join("b.tsv");
    for out in [&a, &b] {
        let o = cfm(&["scan", "--config", osc.to_str().unwrap(), "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        assert!(o.stdout.is_empty());
    }
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    assert!(!ta.contains(&b'\r'));

    let o = cfm(&["solve", "--config", osc.to_str().unwrap(), "--provenance"]);
    let text = stdout(&o);
    assert!(text.starts_with("# cfm "));
    assert!(text.contains("# config: potential.kind = oscillator"));
    assert_eq!(rows(&text).len(), 3);
}

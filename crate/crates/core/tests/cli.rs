use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const SCENARIO: &str = "\
# small scenario
steps = 20
runs = 8
seed = 1
system_noise = 0 1 1 0 -8
meas_noise = 0 1 1 0 -2
";

fn bingham(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bingham"))
        .args(args)
        .output()
        .unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn entries(dir: &Path) -> Vec<String> {
    let mut v: Vec<String> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    v.sort();
    v
}

#[test]
fn figures_uniform_curve_is_constant() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("pdf.csv");
    let o = bingham(&["figures", "--z1", "0", "--out", s(&out)]);
    assert!(o.status.success());
    let text = fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("theta_rad,z1,pdf"));
    let mut n = 0;
    for line in lines {
        let pdf: f64 = line.rsplit(',').next().unwrap().parse().unwrap();
        assert!((pdf - 1.0 / std::f64::consts::TAU).abs() < 1e-14);
        n += 1;
    }
    assert_eq!(n, 720);
    assert!(text.ends_with('\n'));
}

#[test]
fn figures_default_list_and_kld_table() {
    let dir = tempfile::tempdir().unwrap();
    let (pdf, kld) = (dir.path().join("pdf.csv"), dir.path().join("kld.csv"));
    let o = bingham(&["figures", "--out", s(&pdf), "--kld-out", s(&kld)]);
    assert!(o.status.success());
    assert_eq!(
        fs::read_to_string(&pdf).unwrap().lines().count(),
        1 + 3 * 720
    );
    let k = fs::read_to_string(&kld).unwrap();
    let rows: Vec<&str> = k.lines().collect();
    assert_eq!(rows[0], "z1,kld_nats");
    assert_eq!(rows.len(), 4);
    assert!(rows[1].starts_with("-2.00000000000000e0,"));
}

#[test]
fn simulate_twice_gives_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("s.cfg");
    fs::write(&cfg, SCENARIO).unwrap();
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    let oa = bingham(&["simulate", "--config", s(&cfg), "--out", s(&a)]);
    let ob = bingham(&["simulate", "--config", s(&cfg), "--out", s(&b)]);
    assert!(oa.status.success() && ob.status.success());
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(oa.stdout, ob.stdout);
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(
        text.lines().next(),
        Some("step,run,err_bingham_rad,err_kalman_rad")
    );
    assert_eq!(text.lines().count(), 1 + 20 * 8);
}

#[test]
fn seed_override_and_thread_cap() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("s.cfg");
    fs::write(&cfg, SCENARIO).unwrap();
    let (a, b, c) = (
        dir.path().join("a.csv"),
        dir.path().join("b.csv"),
        dir.path().join("c.csv"),
    );
    assert!(
        bingham(&["-q", "simulate", "--config", s(&cfg), "--out", s(&a)])
            .status
            .success()
    );
    let o = bingham(&[
        "-q",
        "simulate",
        "--config",
        s(&cfg),
        "--out",
        s(&b),
        "--seed",
        "99",
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert_ne!(fs::read(&a).unwrap(), fs::read(&b).unwrap());

    let o = Command::new(env!("CARGO_BIN_EXE_bingham"))
        .env("BINGHAM_THREADS", "1")
        .args(["simulate", "--config", s(&cfg), "--out", s(&c)])
        .output()
        .unwrap();
    assert!(o.status.success());
    assert_eq!(fs::read(&a).unwrap(), fs::read(&c).unwrap());

    let o = Command::new(env!("CARGO_BIN_EXE_bingham"))
        .env("BINGHAM_THREADS", "0")
        .args(["simulate", "--config", s(&cfg), "--out", s(&c)])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn unknown_flag_exits_one_with_usage() {
    let o = bingham(&["simulate", "--frobnicate"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
    assert_eq!(bingham(&["bogus"]).status.code(), Some(1));
}

#[test]
fn bad_config_exits_two_without_output() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("s.cfg");
    fs::write(&cfg, "steps = 5\nruns = two\n").unwrap();
    let out = dir.path().join("run.csv");
    let o = bingham(&["simulate", "--config", s(&cfg), "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    assert_eq!(entries(dir.path()), vec!["s.cfg"]);

    let missing = dir.path().join("nope.cfg");
    let o = bingham(&["simulate", "--config", s(&missing), "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(entries(dir.path()), vec!["s.cfg"]);
}

#[test]
fn numeric_failure_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("s.cfg");
    // a point-mass prior forces the filter past the concentration cap
    fs::write(
        &cfg,
        "steps = 5\nruns = 1\nsystem_noise = 0 1 1 0 -1000000\nmeas_noise = 0 1 1 0 -1000000\ninitial_estimate = 0 1 1 0 -1000000\n",
    )
    .unwrap();
    let out = dir.path().join("run.csv");
    let o = bingham(&["simulate", "--config", s(&cfg), "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("multiply"));
    assert_eq!(entries(dir.path()), vec!["s.cfg"]);
}

#[test]
fn selftest_reports_every_check() {
    let o = bingham(&["selftest"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    let checks: Vec<&str> = text.lines().filter(|l| l.starts_with("PASS")).collect();
    assert_eq!(checks.len(), 10);
    assert!(text.contains("compose_cov_monte_carlo"));
    assert!(text.ends_with("10 of 10 checks passed\n"));
}

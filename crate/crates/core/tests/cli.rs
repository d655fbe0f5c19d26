use std::path::Path;
use std::process::{Command, Output};

fn cli(args: &[&str], out: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_sideband-comb"));
    cmd.args(args);
    if let Some(dir) = out {
        cmd.arg("--out").arg(dir);
    }
    cmd.output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn value<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(" = ")))
        .unwrap_or_else(|| panic!("no key {key} in\n{text}"))
}

#[test]
fn run_writes_spectrum_metrics_and_config() {
    let dir = tempfile::tempdir().unwrap();
    let o = cli(&["run", "--preset", "fig3c"], Some(dir.path()));
    assert!(o.status.success());
    let metrics = std::fs::read_to_string(dir.path().join("metrics.txt")).unwrap();
    assert_eq!(metrics, stdout(&o));
    assert_eq!(value(&metrics, "present_orders"), "-1 -1/2 0 1/2 1");
    assert_eq!(value(&metrics, "f_rep_order"), "1/2");
    let csv = std::fs::read_to_string(dir.path().join("spectrum.csv")).unwrap();
    assert!(csv.starts_with("k,order_num,order_den,freq_hz,re_out,im_out,abs_out,abs_out_db,kind\n"));
    assert_eq!(csv.lines().count(), 1 + 2 * 24 + 1);
    let config = std::fs::read_to_string(dir.path().join("config.json")).unwrap();
    let again = tempfile::tempdir().unwrap();
    let path = again.path().join("c.json");
    std::fs::write(&path, config).unwrap();
    let o2 = cli(&["run", "--config", path.to_str().unwrap()], Some(again.path()));
    assert!(o2.status.success());
    assert_eq!(std::fs::read(again.path().join("spectrum.csv")).unwrap(), csv.as_bytes());
}

#[test]
fn repeated_runs_are_byte_identical() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for d in [&a, &b] {
        assert!(cli(&["run", "--preset", "fig2b"], Some(d.path())).status.success());
    }
    for f in ["spectrum.csv", "metrics.txt", "config.json"] {
        assert_eq!(std::fs::read(a.path().join(f)).unwrap(), std::fs::read(b.path().join(f)).unwrap(), "{f}");
    }
}

#[test]
fn threshold_flag_is_applied() {
    let dir = tempfile::tempdir().unwrap();
    let o = cli(&["run", "--preset", "fig2b", "--threshold", "0.01"], Some(dir.path()));
    let text = stdout(&o);
    assert_eq!(value(&text, "threshold_rel"), "0.01");
    assert_eq!(value(&text, "cutoff_pos"), "4");
    assert_eq!(value(&text, "cutoff_neg"), "-3");
}

#[test]
fn errors_produce_a_machine_readable_line() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"omega_b_hz": 1}"#).unwrap();
    let o = cli(&["run", "--config", bad.to_str().unwrap()], Some(dir.path()));
    assert!(!o.status.success());
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.lines().any(|l| l.starts_with("error code=config message=\"")), "{err}");

    let o = cli(&["run", "--threshold", "2"], Some(dir.path()));
    assert!(!o.status.success());
    assert!(String::from_utf8(o.stderr).unwrap().contains("error code=invalid_threshold"));

    let o = cli(&["run", "--preset", "fig9"], None);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stderr).unwrap().contains("error code=usage"));
}

#[test]
fn steady_lists_branches() {
    let o = cli(&["steady"], None);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(value(&text, "branches"), "1");
    assert_eq!(value(&text, "branch0.stable"), "true");
}

#[test]
fn oracle_agrees_for_weak_probes() {
    let o = cli(&["oracle", "--preset", "fig3a"], None);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(value(&text, "outside_weak_regime"), "false");
    assert!(value(&text, "max_rel_error").parse::<f64>().unwrap() < 1e-3);
}

#[test]
fn sweep_table_rows_in_order() {
    let dir = tempfile::tempdir().unwrap();
    let o = cli(&["sweep", "--axis", "eps_p", "--values", "9,3000,-1", "--preset", "fig2a"], Some(dir.path()));
    assert!(o.status.success());
    let text = std::fs::read_to_string(dir.path().join("sweep.csv")).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "value,status,cutoff_neg,cutoff_pos,f_rep_over_omega_b,range_lo_over_omega_b,range_hi_over_omega_b,largest_abs_out,error");
    assert!(rows[1].starts_with("9.0,ok,-1,1,"));
    assert!(rows[2].starts_with("3000.0,ok,-6,7,"));
    assert!(rows[3].starts_with("-1.0,error,"));
    let o = cli(&["sweep", "--axis", "kappa", "--values", "1"], None);
    assert!(String::from_utf8(o.stderr).unwrap().contains("error code=config"));
}

use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_uqcenter"))
        .args(args)
        .env_remove("UQCENTER_MAX_GRID")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn golden(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name].iter().collect();
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn assert_golden(args: &[&str], name: &str) {
    let first = run(args);
    assert_eq!(first.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&first.stderr));
    assert_eq!(stdout(&first), golden(name), "{args:?}");
    // byte-stable across invocations
    assert_eq!(first.stdout, run(args).stdout, "{args:?}");
}

#[test]
fn blocks_a2_l7_totals() {
    let o = run(&["blocks", "--type", "A", "--rank", "2", "--l", "7", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["totals"]["ztilde"], 49);
    assert_eq!(v["totals"]["sum"], 86);
    assert_eq!(v["totals"]["xbar"], 12);
}

#[test]
fn check_l_reports_gcd() {
    let o = run(&["check-l", "--type", "A", "--rank", "2", "--l", "9"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("gcd(l, det)=3"));
    let ok = run(&["check-l", "--type", "A", "--rank", "2", "--l", "7"]);
    assert_eq!(ok.status.code(), Some(0));
}

#[test]
fn sl2_verify_all_l3() {
    let o = run(&["sl2", "--l", "3", "verify-all"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("dim Z=4"), "{text}");
    assert!(text.contains("all checks pass"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn inadmissible_l_exits_2() {
    for args in [
        &["blocks", "--l", "4"][..],
        &["orbits", "--rank", "2", "--l", "9"],
        &["sl2", "--l", "6", "center"],
        &["charring", "--l", "8", "socle"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&o.stderr).contains("not admissible"), "{args:?}");
    }
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["orbits", "--l", "5", "--action", "sideways"]).status.code(), Some(2));
    assert_eq!(run(&["orbits", "--l", "5", "--csv"]).status.code(), Some(2));
    assert_eq!(run(&["charring", "--l", "5", "xi", "9"]).status.code(), Some(2));
}

#[test]
fn budget_is_enforced() {
    let o = run(&["orbits", "--rank", "2", "--l", "13", "--budget", "100"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
}

#[test]
fn grid_cap_skips_without_failing() {
    let o = Command::new(env!("CARGO_BIN_EXE_uqcenter"))
        .args(["sl2", "--l", "3", "verify-all"])
        .env("UQCENTER_MAX_GRID", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("SKIP delta_left_r"));
}

#[test]
fn crosscheck_passes() {
    let o = run(&["crosscheck", "--rank", "2", "--max-l", "13"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("l=9   skip (inadmissible)"));
}

#[test]
fn golden_outputs() {
    assert_golden(&["blocks", "--type", "A", "--rank", "2", "--l", "7", "--json"], "blocks_a2_l7.json");
    assert_golden(&["blocks", "--l", "5", "--csv"], "blocks_a1_l5.csv");
    assert_golden(&["orbits", "--type", "A", "--rank", "1", "--l", "5", "--json"], "orbits_a1_l5.json");
    assert_golden(&["orbits", "--type", "A", "--rank", "2", "--l", "5"], "orbits_a2_l5.txt");
    assert_golden(&["charring", "--l", "5", "socle", "--json"], "charring_l5_socle.json");
    assert_golden(&["sl2", "--l", "3", "center", "--json"], "sl2_l3_center.json");
    assert_golden(&["sl2", "--l", "3", "verify-all", "--json"], "sl2_l3_verify.json");
}

#[test]
fn golden_check_l_inadmissible() {
    let o = run(&["check-l", "--type", "A", "--rank", "2", "--l", "9", "--json"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stdout(&o), golden("check_l_a2_l9.json"));
}

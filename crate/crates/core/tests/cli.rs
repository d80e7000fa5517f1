mod common;

use std::process::{Command, Output};

use common::fixture;

const TREFOIL: &str = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)";

fn sl3(args: &[&str], cache: &std::path::Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sl3"))
        .args(args)
        .arg("--cache-dir")
        .arg(cache)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn bracket_of_the_trefoil() {
    let dir = tempfile::tempdir().unwrap();
    let o = sl3(&["--mode", "bracket", "--pd", TREFOIL], dir.path());
    assert!(o.status.success());
    assert_eq!(
        stdout(&o).trim(),
        "-q^-14 - q^-12 + q^-8 + 2*q^-6 + q^-4 + q^-2"
    );
}

#[test]
fn homology_json_matches_golden_file() {
    let dir = tempfile::tempdir().unwrap();
    let golden: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(fixture("trefoil_homology.json")).unwrap())
            .unwrap();
    for _ in 0..2 {
        // the second run is served from the cache
        let o = sl3(&["--format", "json", "--pd", TREFOIL], dir.path());
        assert!(o.status.success());
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["homology"], golden["homology"]);
        assert_eq!(v["euler_check"], true);
    }
    assert!(dir.path().join("brackets.json").exists());
    assert_eq!(
        std::fs::read_dir(dir.path().join("homology"))
            .unwrap()
            .count(),
        1
    );
}

#[test]
fn invariance_fixture_passes() {
    let dir = tempfile::tempdir().unwrap();
    let path = fixture("invariance.json");
    let o = sl3(
        &["--mode", "invariance", path.to_str().unwrap()],
        dir.path(),
    );
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("19 of 19 pairs agree"));
}

#[test]
fn invariance_failure_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let pairs = dir.path().join("pairs.txt");
    std::fs::write(
        &pairs,
        "trefoils: X(1,2,4,3) X(3,4,6,5) X(5,6,2,1) | X(2,4,3,1) X(4,6,5,3) X(6,2,1,5)\n",
    )
    .unwrap();
    let o = sl3(
        &["--mode", "invariance", pairs.to_str().unwrap()],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(3), "{}", stdout(&o));
    assert!(stdout(&o).contains("FAIL trefoils"));
}

#[test]
fn selftest_passes() {
    let dir = tempfile::tempdir().unwrap();
    let o = sl3(&["--mode", "selftest", "--no-cache"], dir.path());
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("0 failed"));
}

#[test]
fn bad_input_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let o = sl3(&["--pd", "X(1,2,3)"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(!o.stderr.is_empty());
    let o = sl3(&["--threads", "0", "--pd", "O"], dir.path());
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn foams_are_dumped_per_cube_edge() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("foams");
    let o = sl3(
        &["--pd", TREFOIL, "--dump-foams", out.to_str().unwrap()],
        dir.path(),
    );
    assert!(o.status.success());
    assert_eq!(std::fs::read_dir(&out).unwrap().count(), 12);
}

#[test]
fn webs_listing_has_every_flattening() {
    let dir = tempfile::tempdir().unwrap();
    let o = sl3(&["--mode", "webs", "--pd", TREFOIL], dir.path());
    assert!(o.status.success());
    assert_eq!(
        stdout(&o).lines().filter(|l| l.starts_with("J=")).count(),
        8
    );
}

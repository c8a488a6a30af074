//! End-to-end runs of the binary against the bundled instance files,
//! pinned byte-for-byte.

use std::path::PathBuf;
use std::process::{Command, Output};

fn instances() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../instances")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bcktop"))
        .current_dir(instances())
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

#[test]
fn verify_reports_counts() {
    let out = run(&["verify", "m4.bck"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "valid: |M| = 4, |X| = 2, 3 submodules, 3 dss, 2 homs, 3 checks\n"
    );
}

#[test]
fn topology_opens_base_connected() {
    let out = run(&["topology", "m4.bck", "--dss", "A", "--list-opens"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "{}\n{0,2}\n{1,3}\n{0,1,2,3}\n");

    let out = run(&["topology", "m4.bck", "--dss", "A", "--base"]);
    assert_eq!(stdout(&out), "{0,2}\n{1,3}\n{0,1,2,3}\n");

    let out = run(&["topology", "m4.bck", "--dss", "A", "--connected"]);
    assert_eq!(stdout(&out), "connected = false\n");

    let out = run(&["topology", "m4.bck", "--dss", "C", "--connected"]);
    assert_eq!(stdout(&out), "connected = true\n");
}

#[test]
fn check_map_reports_witnesses() {
    let out = run(&[
        "check-map",
        "m2.bck",
        "--hom",
        "g",
        "--source-dss",
        "Z1",
        "--target-dss",
        "A",
    ]);
    assert!(!out.status.success());
    assert_eq!(
        stdout(&out),
        "compatible=true\n\
         strict=false witness=n=1 f(M_1)={0} f(M)\u{2229}M'_1={0,2}\n\
         open=false\n\
         continuous=true\n\
         homeo=false\n"
    );

    let out = run(&[
        "check-map",
        "m4.bck",
        "--hom",
        "p2",
        "--source-dss",
        "A",
        "--target-dss",
        "D",
        "--props",
        "compatible,strict,continuous",
    ]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "compatible=true\nstrict=true\ncontinuous=true\n"
    );
}

#[test]
fn suite_passes_on_bundled_corpus() {
    for file in ["trivial.bck", "m2.bck", "m4.bck", "klein.bck"] {
        let out = run(&["suite", file]);
        assert!(out.status.success(), "suite failed on {file}");
        let text = stdout(&out);
        assert!(!text.contains("FAIL"), "unexpected FAIL in {file}");
        assert!(text.ends_with("0 failed\n"));
    }
}

#[test]
fn suite_output_is_deterministic() {
    let a = stdout(&run(&["suite", "m4.bck"]));
    let b = stdout(&run(&["suite", "m4.bck"]));
    assert_eq!(a, b);
}

#[test]
fn enumerate_listings() {
    let out = run(&["enumerate", "m4.bck", "--what", "submodules"]);
    assert_eq!(stdout(&out), "{0}\n{0,2}\n{0,1,2,3}\n");

    let out = run(&["enumerate", "m4.bck", "--what", "homs"]);
    assert_eq!(stdout(&out), "0 0 0 0\n0 1 2 3\n0 2 0 2\n0 3 2 1\n");
}

#[test]
fn unknown_names_list_alternatives() {
    let out = run(&["topology", "m4.bck", "--dss", "X", "--list-opens"]);
    assert!(!out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("unknown dss `X`"));
    assert!(err.contains("A, B, C"));
}

#[test]
fn carrier_cap_env_var_is_honored() {
    let out = Command::new(env!("CARGO_BIN_EXE_bcktop"))
        .current_dir(instances())
        .env("BCKTOP_MAX_CARRIER", "2")
        .args(["topology", "m4.bck", "--dss", "A", "--list-opens"])
        .output()
        .expect("binary runs");
    assert!(!out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("carrier"), "stderr was: {err}");
}

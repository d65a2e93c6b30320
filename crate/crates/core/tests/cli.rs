//! The `qmds` binary: outputs, files and exit codes.

use std::collections::BTreeMap;
use std::path::Path;
use std::process::Command;

struct Run {
    code: i32,
    stdout: String,
    summary: BTreeMap<String, String>,
}

fn qmds(args: &[&str], dir: &Path) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_qmds"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs");
    let stdout = String::from_utf8(out.stdout).expect("utf-8");
    let block = stdout.rsplit("\n\n").next().unwrap_or("");
    let summary = block
        .lines()
        .filter_map(|l| l.split_once('='))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect();
    Run { code: out.status.code().expect("exit code"), stdout, summary }
}

#[test]
fn construct_family_a() {
    let dir = tempfile::tempdir().unwrap();
    let r = qmds(&["construct", "--family", "A", "--q", "2", "--h", "2", "--k", "2", "--r0", "1", "-o", "a.aqc"], dir.path());
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert_eq!(r.stdout.lines().next(), Some("[6, 3/2, 5]_2^2 QMDS long"));
    assert_eq!(r.summary["d"], "5");
    assert_eq!(r.summary["status"], "ok");
    assert!(dir.path().join("a.aqc").exists() && dir.path().join("a.pkg").exists());

    let v = qmds(&["verify", "--qmds", "--faithful", "--system", "--packing", "1", "a.aqc"], dir.path());
    assert_eq!(v.code, 0, "{}", v.stdout);
    let v = qmds(&["verify", "--packing", "1", "a.pkg"], dir.path());
    assert_eq!(v.code, 0, "{}", v.stdout);
}

#[test]
fn construct_spread_and_family_b_limits() {
    let dir = tempfile::tempdir().unwrap();
    let r = qmds(&["construct", "--family", "spread", "--q", "2", "--h", "2", "--r0", "1"], dir.path());
    assert_eq!(r.code, 0);
    assert!(r.stdout.starts_with("[7, 3/2, 6]_2^2"), "{}", r.stdout);
    let r = qmds(&["construct", "--family", "B", "--q", "2", "--h", "4", "--k", "3", "--r0", "1"], dir.path());
    assert_eq!(r.code, 2, "{}", r.stdout);
    assert_eq!(r.summary["status"], "error");
}

#[test]
fn bbar_at_full_g_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let r = qmds(&["construct", "--family", "Bbar", "--q", "2", "--h", "6", "--r0", "1"], dir.path());
    assert_eq!(r.code, 1, "{}", r.stdout);
    let r = qmds(&["construct", "--family", "Bbar", "--q", "2", "--h", "6", "--r0", "1", "--g", "6"], dir.path());
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert!(r.stdout.starts_with("[70, 13/6, 68]_2^6"), "{}", r.stdout);
}

#[test]
fn verify_dually_reports_witness() {
    let dir = tempfile::tempdir().unwrap();
    qmds(&["construct", "--family", "A", "--q", "2", "--h", "2", "--k", "3", "--r0", "1", "-o", "a3.aqc"], dir.path());
    let r = qmds(&["verify", "--dually", "a3.aqc"], dir.path());
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("witness: J = {5,6}"), "{}", r.stdout);
    assert_eq!(r.summary["dually_witness"], "5,6");
}

#[test]
fn verify_faithful_on_zero_column() {
    let dir = tempfile::tempdir().unwrap();
    let text = "aqc v1\nfield p=2 e=1 f=0,1 h=2 g=1,1,1\ncode n=2 r=2\n1,0 0,0\n0,1 0,0\n";
    std::fs::write(dir.path().join("z.aqc"), text).unwrap();
    let r = qmds(&["verify", "--faithful", "z.aqc"], dir.path());
    assert_eq!(r.code, 1, "{}", r.stdout);
    assert_eq!(r.summary["faithful_witness"], "2");
}

#[test]
fn dual_quotient_distance() {
    let dir = tempfile::tempdir().unwrap();
    qmds(&["construct", "--family", "spread", "--q", "2", "--h", "2", "--r0", "1", "-o", "s.aqc"], dir.path());
    let r = qmds(&["dual", "s.aqc", "-o", "sd.aqc"], dir.path());
    assert_eq!(r.code, 0);
    assert_eq!(r.summary["r"], "11");
    let r = qmds(&["distance", "sd.aqc"], dir.path());
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout.lines().next(), Some("[7, 11/2, 2]_2^2"));
    let r = qmds(&["quotient", "--j", "1", "s.aqc", "-o", "q.aqc"], dir.path());
    assert_eq!(r.code, 0);
    // dim W_1 = r0 = 1
    assert_eq!(r.summary["n"], "6");
    assert_eq!(r.summary["r"], "1");
    let r = qmds(&["distance", "q.aqc"], dir.path());
    assert_eq!(r.code, 0);
}

#[test]
fn bounds_and_table() {
    let dir = tempfile::tempdir().unwrap();
    let r = qmds(&["bounds", "--q", "2", "--h", "2", "--k", "3", "--r0", "1"], dir.path());
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout.lines().next(), Some("n ≤ 8, k ≤ 6"));
    let r = qmds(&["table", "--family", "A", "--q", "2,3", "--h", "2", "--k", "2..3", "--r0", "1"], dir.path());
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert_eq!(r.summary["rows"], "4");
    assert!(r.stdout.contains("\nA 2 2 2 1 6 3 5 true true\n"), "{}", r.stdout);
    assert!(r.stdout.contains("\nA 2 2 3 1 6 5 4 true false\n"), "{}", r.stdout);
}

#[test]
fn search_dho_writes_packing_and_code() {
    let dir = tempfile::tempdir().unwrap();
    let r = qmds(&["search-dho", "--q", "2", "--h", "2", "-o", "dho.pkg"], dir.path());
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert_eq!(r.stdout.lines().next(), Some("[8, 5/2, 6]_2^2 dually QMDS"));
    assert_eq!(r.summary["blocks"], "8");
    let v = qmds(&["verify", "--dually", "--packing", "2", "dho.pkg"], dir.path());
    assert_eq!(v.code, 0, "{}", v.stdout);
    let v = qmds(&["verify", "--dually", "dho.aqc"], dir.path());
    assert_eq!(v.code, 0, "{}", v.stdout);
}

#[test]
fn usage_parse_and_cap_errors() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(qmds(&["frobnicate"], dir.path()).code, 2);
    assert_eq!(qmds(&["distance", "missing.aqc"], dir.path()).code, 2);
    std::fs::write(dir.path().join("bad.aqc"), "aqc v1\nfield p=4 e=1 f=0,1 h=2 g=1,1,1\n").unwrap();
    let r = qmds(&["distance", "bad.aqc"], dir.path());
    assert_eq!(r.code, 2, "{}", r.stdout);
    qmds(&["construct", "--family", "A", "--q", "2", "--h", "2", "--k", "3", "--r0", "1", "-o", "a3.aqc"], dir.path());
    let r = qmds(&["--cap", "4", "distance", "a3.aqc"], dir.path());
    assert_eq!(r.code, 3, "{}", r.stdout);
    assert_eq!(r.summary["status"], "cap-exceeded");
}

#[test]
fn output_does_not_depend_on_workers() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["construct", "--family", "A", "--q", "3", "--h", "2", "--k", "3", "--r0", "1"];
    let one = qmds(&[&["--workers", "1"], &args[..]].concat(), dir.path());
    let four = qmds(&[&["--workers", "4"], &args[..]].concat(), dir.path());
    assert_eq!(one.code, 0);
    assert_eq!(one.stdout, four.stdout);
}

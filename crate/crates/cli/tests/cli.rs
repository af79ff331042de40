//! End-to-end tests of the binary: exit codes, usage errors, file
//! output and byte-for-byte determinism across thread counts.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mandelsphere"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn render2d_writes_a_pgm() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("slice.pgm");
    let res = run(&[
        "render2d",
        "--engine",
        "spherical",
        "--plane",
        "z=0",
        "--center",
        "0,0",
        "--extent",
        "2,2",
        "--res",
        "64x64",
        "--max-iter",
        "100",
        "--format",
        "pgm",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(res.status.success(), "{}", stderr(&res));
    let bytes = std::fs::read(&out).unwrap();
    assert!(bytes.starts_with(b"P5\n64 64\n255\n"));
    assert_eq!(bytes.len(), 13 + 64 * 64);
    assert!(stdout(&res).contains("engine=spherical"));
}

#[test]
fn goldenbulb_slice_renders() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("golden.ppm");
    let res = run(&[
        "render2d",
        "--engine",
        "spherical-ab",
        "--a",
        "1.6180339887",
        "--b",
        "2",
        "--res",
        "32",
        "--format",
        "ppm",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(res.status.success(), "{}", stderr(&res));
    assert!(std::fs::read(&out)
        .unwrap()
        .starts_with(b"P6\n32 32\n255\n"));
}

#[test]
fn invalid_power_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.pgm");
    let res = run(&[
        "render2d",
        "--engine",
        "spherical-m",
        "--m",
        "1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(res.status.code(), Some(2));
    let msg = stderr(&res);
    assert!(msg.contains("--m") && msg.contains("2"), "{msg}");
}

#[test]
fn missing_out_is_a_usage_error() {
    let res = run(&[
        "render3d",
        "--engine",
        "spherical-m",
        "--m",
        "8",
        "--res",
        "8",
    ]);
    assert_eq!(res.status.code(), Some(2));
    assert!(stderr(&res).contains("--out"));
}

#[test]
fn render3d_writes_raw_and_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("bulb.raw");
    let res = run(&[
        "render3d",
        "--engine",
        "spherical-m",
        "--m",
        "8",
        "--res",
        "16",
        "--max-iter",
        "32",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(res.status.success(), "{}", stderr(&res));
    assert_eq!(std::fs::read(&out).unwrap().len(), 16 * 16 * 16 * 2);
    let sidecar = std::fs::read_to_string(dir.path().join("bulb.raw.meta")).unwrap();
    assert!(sidecar.contains("engine=spherical-m(8)"), "{sidecar}");
    assert!(sidecar.contains("width=16"));
    assert!(sidecar.contains("order=x-fastest"));
}

#[test]
fn metasphere_volume_renders() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("meta.raw");
    let res = run(&[
        "render3d",
        "--engine",
        "quat-slice",
        "--units",
        "i,j,k",
        "--res",
        "8",
        "--max-iter",
        "16",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(res.status.success(), "{}", stderr(&res));
    assert!(out.exists());
}

#[test]
fn quat_slice_requires_units() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.raw");
    let res = run(&[
        "render3d",
        "--engine",
        "quat-slice",
        "--res",
        "8",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(res.status.code(), Some(2));
    assert!(stderr(&res).contains("--units"));

    let res = run(&[
        "render3d",
        "--engine",
        "quat-slice",
        "--units",
        "i,i,k",
        "--res",
        "8",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(res.status.code(), Some(2));
    assert!(stderr(&res).contains("distinct"));
}

#[test]
fn oversized_max_iter_rejected_for_raw() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.raw");
    let res = run(&[
        "render3d",
        "--engine",
        "spherical",
        "--res",
        "4",
        "--max-iter",
        "70000",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(res.status.code(), Some(2));
    assert!(stderr(&res).contains("65535"));
}

#[test]
fn profile_writes_csv_with_gap_pattern() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("prof.csv");
    let res = run(&[
        "profile",
        "--engine",
        "quat-slice",
        "--units",
        "i,j,k",
        "--dir",
        "1,0,0",
        "--rmax",
        "2",
        "--samples",
        "4096",
        "--max-iter",
        "1000",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(res.status.success(), "{}", stderr(&res));
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("radius,escape_iteration"));
    // member runs: 1000 marks a member at this depth
    let members: Vec<bool> = lines.map(|l| l.ends_with(",1000")).collect();
    assert_eq!(members.len(), 4096);
    let runs = members
        .iter()
        .zip(members.iter().skip(1))
        .filter(|(a, b)| !**a && **b)
        .count()
        + usize::from(members[0]);
    assert!(runs >= 2, "expected a nested-ball gap, found {runs} run(s)");
}

#[test]
fn profile_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("p.csv");
    let res = run(&[
        "profile",
        "--engine",
        "quat",
        "--samples",
        "1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(res.status.code(), Some(2));
    assert!(stderr(&res).contains("samples"));

    let res = run(&[
        "profile",
        "--engine",
        "quat",
        "--rmax",
        "0",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(res.status.code(), Some(2));
    assert!(stderr(&res).contains("r_max"));
}

#[test]
fn verify_single_check_and_unknown_id() {
    let res = run(&["verify", "--check", "nonassociativity"]);
    assert!(res.status.success());
    assert!(stdout(&res).contains("nonassociativity passed=true"));

    let res = run(&["verify", "--check", "bogus"]);
    assert_eq!(res.status.code(), Some(2));
    let msg = stderr(&res);
    assert!(msg.contains("bogus") && msg.contains("magma_laws"), "{msg}");
}

#[test]
fn verify_suite_all_passes() {
    let res = run(&["verify", "--suite", "all", "--seed", "42"]);
    assert!(res.status.success(), "{}", stderr(&res));
    let text = stdout(&res);
    assert_eq!(
        text.lines().filter(|l| l.contains(" passed=true ")).count(),
        14
    );
    assert!(text.contains("all 14 checks passed"));
}

#[test]
fn identical_command_lines_are_byte_identical_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let render = |threads: &str, name: &str| {
        let out = dir.path().join(name);
        let res = bin()
            .env("RAYON_NUM_THREADS", threads)
            .args([
                "render2d",
                "--engine",
                "spherical-ab",
                "--a",
                "1.5",
                "--b",
                "2",
                "--res",
                "96x64",
                "--max-iter",
                "64",
                "--format",
                "ppm",
                "--out",
                out.to_str().unwrap(),
            ])
            .output()
            .unwrap();
        assert!(res.status.success(), "{}", stderr(&res));
        std::fs::read(out).unwrap()
    };
    assert_eq!(render("1", "a.ppm"), render("4", "b.ppm"));

    let volume = |threads: &str, name: &str| {
        let out = dir.path().join(name);
        let res = bin()
            .env("RAYON_NUM_THREADS", threads)
            .args([
                "render3d",
                "--engine",
                "spherical-m",
                "--m",
                "3",
                "--res",
                "24",
                "--max-iter",
                "32",
                "--out",
                out.to_str().unwrap(),
            ])
            .output()
            .unwrap();
        assert!(res.status.success(), "{}", stderr(&res));
        std::fs::read(out).unwrap()
    };
    assert_eq!(volume("1", "a.raw"), volume("3", "b.raw"));
}

#[test]
fn seeded_verify_is_reproducible() {
    let a = run(&["verify", "--check", "magma_laws", "--seed", "7"]);
    let b = run(&["verify", "--check", "magma_laws", "--seed", "7"]);
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn render2d_csv_and_raw_formats() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("g.csv");
    let res = run(&[
        "render2d",
        "--engine",
        "complex",
        "--res",
        "8",
        "--max-iter",
        "20",
        "--format",
        "csv",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert!(res.status.success(), "{}", stderr(&res));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("col,row,u,v,escape_iteration\n"));
    assert_eq!(text.lines().count(), 1 + 64);

    let raw = dir.path().join("g.raw");
    let res = run(&[
        "render2d",
        "--engine",
        "complex",
        "--res",
        "8",
        "--max-iter",
        "20",
        "--format",
        "raw",
        "--out",
        raw.to_str().unwrap(),
    ]);
    assert!(res.status.success(), "{}", stderr(&res));
    assert_eq!(std::fs::read(&raw).unwrap().len(), 8 * 8 * 2);
    assert!(Path::new(&dir.path().join("g.raw.meta")).exists());
}

//! Byte-exact reports for the bundled examples. Set `EQUILEF_BLESS=1` to
//! rewrite the expected files.

use std::fs;
use std::path::PathBuf;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn data_dir() -> PathBuf {
    root().join("../../data")
}

fn render(args: &[&str]) -> String {
    let data = data_dir();
    let full: Vec<String> = args
        .iter()
        .map(|a| match a.strip_prefix("data/") {
            Some(rest) => data.join(rest).display().to_string(),
            None => a.to_string(),
        })
        .collect();
    let out = equilef_cli::run(std::iter::once("equilef".to_string()).chain(full));
    let prefix = format!("{}/", data.display());
    format!(
        "$ equilef {}\nexit {}\n--- stdout\n{}--- stderr\n{}",
        args.join(" "),
        out.code,
        out.stdout.replace(&prefix, "data/"),
        out.stderr.replace(&prefix, "data/")
    )
}

fn check(name: &str, args: &[&str]) {
    let actual = render(args);
    let path = root().join("tests/golden").join(format!("{name}.txt"));
    if std::env::var_os("EQUILEF_BLESS").is_some() {
        fs::write(&path, &actual).unwrap();
        return;
    }
    let expected = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(actual, expected, "golden mismatch for {name}");
}

#[test]
fn info_groups() {
    check("info_z2", &["info", "data/z2.group"]);
    check("info_s3", &["info", "data/s3.group"]);
}

#[test]
fn lefschetz_reports() {
    check(
        "lefschetz_circle",
        &[
            "lefschetz",
            "data/z2_circle_f0.map",
            "--method",
            "both",
            "--index",
        ],
    );
    check(
        "lefschetz_circle_hom",
        &["lefschetz", "data/z2_circle_f0.map", "--method", "hom"],
    );
    check(
        "lefschetz_rw",
        &[
            "lefschetz",
            "data/rw_S3_C3.map",
            "--method",
            "an",
            "--index",
        ],
    );
}

#[test]
fn decompositions() {
    check("decompose_circle", &["decompose", "data/z2_circle_f0.map"]);
    check("decompose_rw", &["decompose", "data/rw_S3_C3.map"]);
}

#[test]
fn fixed_orbit_reports() {
    check("report_circle", &["report", "data/z2_circle_f0.map"]);
    check("report_rw", &["report", "data/rw_S3_C3.map"]);
}

#[test]
fn validation() {
    check("validate_disk", &["validate", "data/z2_disk.complex"]);
    check(
        "validate_disk_mutated",
        &["validate", "data/z2_disk_mutated.complex"],
    );
    check("validate_suite", &["validate", "data/examples.suite"]);
}

#[test]
fn axiom_suite() {
    check("axioms_suite", &["axioms", "data/examples.suite"]);
}

#[test]
fn reports_are_reproducible() {
    let args = [
        "lefschetz",
        "data/rw_S3_C3.map",
        "--method",
        "both",
        "--index",
    ];
    assert_eq!(render(&args), render(&args));
}

//! Criterion 9 — the command-line surface: every fixture literal
//! round-trips byte-identically through the grammar, and the fixture
//! problem files reproduce the worked examples of criteria 1–3 using only
//! the binary's output documents.

use std::panic::{catch_unwind, resume_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use lqds_cli::literal::{parse_quat, render_quat};
use lqds_cli::problem::RawDocument;
use lqds_core::{drazin_verify, phase_equivalent, samples, QMatrix, Quaternion, Rat};

fn report(number: u32, label: &str, body: impl FnOnce()) {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(body));
    let verdict = if outcome.is_ok() { "PASS" } else { "FAIL" };
    println!(
        "criterion {number} — {label}: {verdict} ({:.2?})",
        start.elapsed()
    );
    if let Err(panic) = outcome {
        resume_unwind(panic);
    }
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn run_ok(args: &[&str]) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_lqds"))
        .args(args)
        .output()
        .expect("spawn lqds");
    assert!(
        out.status.success(),
        "lqds {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 output")
}

fn run_fixture(command: &str, name: &str, extra: &[&str]) -> String {
    let path = fixture(name);
    let mut args = vec![command, path.to_str().unwrap()];
    args.extend(extra);
    run_ok(&args)
}

fn get<'a>(doc: &'a str, key: &str) -> &'a str {
    doc.lines()
        .find_map(|line| {
            let (k, v) = line.split_once(" = ")?;
            (k == key).then_some(v)
        })
        .unwrap_or_else(|| panic!("no key {key:?} in:\n{doc}"))
}

/// Parses a ", "-joined vector of literals from a document value.
fn parse_vector<S: lqds_core::Scalar>(value: &str) -> Vec<Quaternion<S>> {
    value
        .split(", ")
        .map(|text| parse_quat(text).unwrap_or_else(|e| panic!("{text:?}: {e}")))
        .collect()
}

/// Rebuilds the n×n matrix printed under `{prefix}.row.1 ..= .row.{n}`.
fn parse_matrix<S: lqds_core::Scalar>(doc: &str, prefix: &str, n: usize) -> QMatrix<S> {
    let rows = (1..=n)
        .map(|r| parse_vector(get(doc, &format!("{prefix}.row.{r}"))))
        .collect();
    QMatrix::from_rows(rows)
}

fn fixture_literals_round_trip() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let mut checked = 0usize;
    for entry in std::fs::read_dir(&dir).expect("fixtures directory") {
        let path = entry.unwrap().path();
        if path.extension().map_or(true, |e| e != "toml") {
            continue;
        }
        let raw = RawDocument::load(&path)
            .unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        for text in raw.literals() {
            let parsed: Quaternion<Rat> = parse_quat(text)
                .unwrap_or_else(|e| panic!("{} literal {text:?}: {e}", path.display()));
            assert_eq!(
                render_quat(&parsed),
                text,
                "{}: literal {text:?} is not in canonical form",
                path.display()
            );
            checked += 1;
        }
    }
    assert!(checked >= 30, "only {checked} fixture literals found");
}

fn criterion_1_through_cli() {
    // Standard eigenvalues of the normal fixture, exactly, in canonical
    // (descending) order, with an exactly unitary eigenvector matrix.
    let doc = run_fixture("eig-normal", "normal.toml", &[]);
    assert_eq!(get(&doc, "backend"), "exact");
    assert_eq!(get(&doc, "unitary"), "true");
    assert_eq!(get(&doc, "eigenvalue.1"), "3+i");
    assert_eq!(get(&doc, "eigenvalue.2"), "1+i");
    assert_eq!(get(&doc, "eigenvalue.3"), "i");
    let v: QMatrix<Rat> = parse_matrix(&doc, "v", 3);
    let d: QMatrix<Rat> = parse_matrix(&doc, "d", 3);
    let n_mat = samples::normal_3x3();
    assert_eq!(&n_mat * &v, &v * &d, "N·V = V·D must hold exactly");

    // The transported decomposition: same eigenvalues, eigenvectors moved
    // through the similarity fixture, defining relation exact on the dense
    // similar matrix.
    let sim = fixture("similarity.toml");
    let doc = run_fixture("eig-normal", "normal.toml", &["--similarity", sim.to_str().unwrap()]);
    assert_eq!(get(&doc, "eigenvalue.1"), "3+i");
    assert_eq!(get(&doc, "eigenvalue.2"), "1+i");
    assert_eq!(get(&doc, "eigenvalue.3"), "i");
    let v: QMatrix<Rat> = parse_matrix(&doc, "v", 3);
    let d: QMatrix<Rat> = parse_matrix(&doc, "d", 3);
    let a = samples::dense_similar_3x3();
    assert_eq!(&a * &v, &v * &d, "A·V = V·D must hold exactly");

    // Each printed eigenvector is the reference transported eigenvector up
    // to an exact right phase; the reference stores the eigenvalue order
    // 1+i, i, 3+i, so canonical column t maps to reference column as below.
    let reference = samples::transported_eigvecs_3x3();
    for (ours, theirs) in [(0, 2), (1, 0), (2, 1)] {
        let ours = QMatrix::col_vector(v.col(ours));
        let theirs = QMatrix::col_vector(reference.col(theirs));
        assert!(
            phase_equivalent(&ours, &theirs, 0.0),
            "transported eigenvector column mismatch"
        );
    }
}

fn criterion_2_through_cli() {
    // The 2×2 principal-minor value printed in the worked example.
    let doc = run_fixture("det", "hermitian_2x2.toml", &["--anchor", "row:1"]);
    assert_eq!(get(&doc, "kind"), "rdet");
    assert_eq!(get(&doc, "value"), "1");

    // Index and rank of the singular Hermitian fixture, and a Drazin
    // inverse that satisfies all three defining axioms exactly.
    let doc = run_fixture("drazin", "hermitian_rank2.toml", &[]);
    assert_eq!(get(&doc, "index"), "1");
    assert_eq!(get(&doc, "rank"), "2");
    let ad: QMatrix<Rat> = parse_matrix(&doc, "ad", 3);
    assert!(
        drazin_verify(&samples::hermitian_rank2_3x3(), &ad, 1),
        "printed Drazin inverse fails the defining axioms"
    );

    // The closed-form solution of the singular right system, exactly the
    // worked example's line: x = c₀ + c₁·t.
    let doc = run_fixture("lqds-solve", "descriptor_problem.toml", &[]);
    assert_eq!(get(&doc, "side"), "right");
    assert_eq!(get(&doc, "poly.degree"), "1");
    assert_eq!(get(&doc, "poly.coeff.0"), "1/2j, -1/2i-1/2k, 1/2k");
    assert_eq!(get(&doc, "poly.coeff.1"), "-1/2+1/2j, 0, 1/2i-1/2k");
    assert_eq!(get(&doc, "hom"), "none");
}

fn criterion_3_through_cli() {
    // Float-backend coefficients of the line-driven system match the
    // published rounded line within 1e−2 componentwise.
    let doc = run_fixture("lqds-solve", "line_drive.toml", &["--backend", "float"]);
    assert_eq!(get(&doc, "poly.degree"), "1");
    let (c1_ref, c0_ref) = samples::linear_drive_reference_line();
    for (key, reference) in [("poly.coeff.0", &c0_ref), ("poly.coeff.1", &c1_ref)] {
        let printed: Vec<Quaternion<f64>> = parse_vector(get(&doc, key));
        assert_eq!(printed.len(), 3);
        for (got, want) in printed.iter().zip((0..3).map(|r| reference.at(r, 0))) {
            assert!(
                got.approx_eq(want, 1e-2),
                "{key}: {got} differs from the published {want}"
            );
        }
    }

    // The exact-path solution agrees with the RK4 oracle to 1e−6 on [0, 1].
    let doc = run_fixture("oracle", "line_drive.toml", &["--backend", "exact"]);
    assert_eq!(get(&doc, "steps"), "2000");
    let worst: f64 = get(&doc, "worst").parse().unwrap();
    assert!(worst <= 1e-6, "oracle disagreement {worst}");
}

#[test]
fn criterion_9_cli_golden_files() {
    report(
        9,
        "CLI fixtures: byte-identical literal round-trips; criteria 1–3 reproduced through the binary",
        || {
            fixture_literals_round_trip();
            criterion_1_through_cli();
            criterion_2_through_cli();
            criterion_3_through_cli();
        },
    );
}

//! Subcommand implementations.
//!
//! Every command reads one problem/matrix file, runs the corresponding
//! solver, and produces a [`Document`]: an ordered list of `key = value`
//! lines. Matrix keys are `{prefix}.row.{r}` with 1-based row numbers and
//! entries joined by ", "; polynomial coefficient keys use the power
//! itself (`poly.coeff.0` is the constant term). Exact scalars render as
//! integers or `p/q` fractions; floats render with 17 significant digits.

use std::fmt;
use std::path::Path;

use lqds_core::{
    cdet, cramer_left, cramer_right, ddet, det_hermitian, drazin_det, inv_general, mat_exp,
    normal_diagonalize, rdet, residual, solve_ivp, transported_eigs, ClosedFormSolution, Error,
    ExpMethod, LqdsProblem, PolyVec, QMatrix, Rat, Scalar, Side,
};

use crate::literal::{render_f64, render_quat, render_scalar};
use crate::problem::{Backend, InputError, ProblemData, RawDocument};

/// Sample grid used by `lqds-verify` and `oracle` when the file does not
/// request specific points.
pub const DEFAULT_GRID: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];

/// One command's result: ordered `key = value` lines.
#[derive(Debug)]
pub struct Document {
    lines: Vec<(String, String)>,
}

impl Document {
    fn new(command: &str, backend: Backend) -> Self {
        let mut doc = Document { lines: Vec::new() };
        doc.push("command", command);
        doc.push("backend", backend.name());
        doc
    }

    fn push(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.lines.push((key.into(), value.into()));
    }

    /// Value of the first line with this key, if any.
    pub fn get(&self, key: &str) -> Option<&str> {
        self.lines
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (key, value) in &self.lines {
            writeln!(f, "{key} = {value}")?;
        }
        Ok(())
    }
}

/// Command failure, split by exit code: input problems (unreadable files,
/// syntax, shape mismatches) exit 3; mathematical preconditions (singular
/// matrices, unsupported problem classes) exit 2.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Math(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 3,
            CliError::Math(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(message) => write!(f, "input error: {message}"),
            CliError::Math(error) => write!(f, "error: {error}"),
        }
    }
}

impl From<InputError> for CliError {
    fn from(e: InputError) -> Self {
        CliError::Input(e.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Math(e)
    }
}

type CmdResult = Result<Document, CliError>;

fn resolve_backend(
    flag: Option<Backend>,
    raw: &RawDocument,
    default: Backend,
) -> Result<Backend, CliError> {
    Ok(flag.or(raw.backend()?).unwrap_or(default))
}

/// Entries of a row or column vector on one line.
fn vector_line<S: Scalar>(v: &QMatrix<S>) -> String {
    let mut parts = Vec::with_capacity(v.rows() * v.cols());
    for r in 0..v.rows() {
        for c in 0..v.cols() {
            parts.push(render_quat(v.at(r, c)));
        }
    }
    parts.join(", ")
}

fn push_matrix<S: Scalar>(doc: &mut Document, prefix: &str, m: &QMatrix<S>) {
    for r in 0..m.rows() {
        let entries: Vec<String> = (0..m.cols()).map(|c| render_quat(m.at(r, c))).collect();
        doc.push(format!("{prefix}.row.{}", r + 1), entries.join(", "));
    }
}

fn float_list(values: &[f64]) -> String {
    values
        .iter()
        .map(|v| render_f64(*v))
        .collect::<Vec<_>>()
        .join(", ")
}

// ---------------------------------------------------------------- det ----

/// Determinant anchor, stored 0-based alongside its original spelling.
#[derive(Debug, Clone, Copy)]
enum Anchor {
    Row(usize),
    Col(usize),
}

fn parse_anchor(text: &str) -> Result<Anchor, CliError> {
    let err = || {
        CliError::Input(format!(
            "bad anchor {text:?}: expected \"row:N\" or \"col:N\" with N ≥ 1"
        ))
    };
    let (which, number) = text.split_once(':').ok_or_else(err)?;
    let number: usize = number.trim().parse().map_err(|_| err())?;
    if number == 0 {
        return Err(err());
    }
    match which.trim() {
        "row" => Ok(Anchor::Row(number - 1)),
        "col" => Ok(Anchor::Col(number - 1)),
        _ => Err(err()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum DetKind {
    Rdet,
    Cdet,
    Det,
    Ddet,
}

impl DetKind {
    fn name(self) -> &'static str {
        match self {
            DetKind::Rdet => "rdet",
            DetKind::Cdet => "cdet",
            DetKind::Det => "det",
            DetKind::Ddet => "ddet",
        }
    }
}

fn det_kind(kind: Option<&str>, anchor: Option<Anchor>) -> Result<DetKind, CliError> {
    let kind = match kind {
        Some("rdet") => DetKind::Rdet,
        Some("cdet") => DetKind::Cdet,
        Some("det") => DetKind::Det,
        Some("ddet") => DetKind::Ddet,
        Some(other) => {
            return Err(CliError::Input(format!(
                "unknown kind {other:?}: expected rdet, cdet, det, or ddet"
            )))
        }
        None => match anchor {
            Some(Anchor::Row(_)) => DetKind::Rdet,
            Some(Anchor::Col(_)) => DetKind::Cdet,
            None => DetKind::Det,
        },
    };
    match (kind, anchor) {
        (DetKind::Rdet, Some(Anchor::Row(_))) | (DetKind::Cdet, Some(Anchor::Col(_))) => Ok(kind),
        (DetKind::Rdet, _) => Err(CliError::Input(
            "kind rdet needs an --anchor row:N".into(),
        )),
        (DetKind::Cdet, _) => Err(CliError::Input(
            "kind cdet needs an --anchor col:N".into(),
        )),
        (DetKind::Det | DetKind::Ddet, Some(_)) => Err(CliError::Input(format!(
            "kind {} does not take an anchor",
            kind.name()
        ))),
        (DetKind::Det | DetKind::Ddet, None) => Ok(kind),
    }
}

pub fn cmd_det(
    file: &Path,
    anchor: Option<&str>,
    kind: Option<&str>,
    backend_flag: Option<Backend>,
) -> CmdResult {
    let raw = RawDocument::load(file)?;
    let backend = resolve_backend(backend_flag, &raw, Backend::Exact)?;
    let anchor_text = anchor;
    let anchor = anchor.map(parse_anchor).transpose()?;
    let kind = det_kind(kind, anchor)?;
    match backend {
        Backend::Exact => det_typed::<Rat>(&raw, backend, anchor_text, anchor, kind),
        Backend::Float => det_typed::<f64>(&raw, backend, anchor_text, anchor, kind),
    }
}

fn det_typed<S: Scalar>(
    raw: &RawDocument,
    backend: Backend,
    anchor_text: Option<&str>,
    anchor: Option<Anchor>,
    kind: DetKind,
) -> CmdResult {
    let data = ProblemData::<S>::from_raw(raw, None)?;
    let value = match (kind, anchor) {
        (DetKind::Rdet, Some(Anchor::Row(i))) => render_quat(&rdet(&data.a, i)?),
        (DetKind::Cdet, Some(Anchor::Col(j))) => render_quat(&cdet(&data.a, j)?),
        (DetKind::Det, _) => render_scalar(&det_hermitian(&data.a)?),
        (DetKind::Ddet, _) => render_scalar(&ddet(&data.a)?),
        _ => unreachable!("det_kind enforces anchor/kind agreement"),
    };
    let mut doc = Document::new("det", backend);
    doc.push("kind", kind.name());
    if let Some(text) = anchor_text {
        doc.push("anchor", text);
    }
    doc.push("value", value);
    Ok(doc)
}

// ---------------------------------------------------------------- inv ----

pub fn cmd_inv(file: &Path, backend_flag: Option<Backend>) -> CmdResult {
    let raw = RawDocument::load(file)?;
    let backend = resolve_backend(backend_flag, &raw, Backend::Exact)?;
    match backend {
        Backend::Exact => inv_typed::<Rat>(&raw, backend),
        Backend::Float => inv_typed::<f64>(&raw, backend),
    }
}

fn inv_typed<S: Scalar>(raw: &RawDocument, backend: Backend) -> CmdResult {
    let data = ProblemData::<S>::from_raw(raw, None)?;
    let inv = inv_general(&data.a)?;
    let mut doc = Document::new("inv", backend);
    doc.push("n", data.a.rows().to_string());
    push_matrix(&mut doc, "inv", &inv);
    Ok(doc)
}

// -------------------------------------------------------------- solve ----

pub fn cmd_solve(
    file: &Path,
    side_flag: Option<Side>,
    backend_flag: Option<Backend>,
) -> CmdResult {
    let raw = RawDocument::load(file)?;
    let backend = resolve_backend(backend_flag, &raw, Backend::Exact)?;
    match backend {
        Backend::Exact => solve_typed::<Rat>(&raw, backend, side_flag),
        Backend::Float => solve_typed::<f64>(&raw, backend, side_flag),
    }
}

fn solve_typed<S: Scalar>(
    raw: &RawDocument,
    backend: Backend,
    side_flag: Option<Side>,
) -> CmdResult {
    let data = ProblemData::<S>::from_raw(raw, side_flag)?;
    let b = data
        .b
        .as_ref()
        .ok_or_else(|| CliError::Input("solve needs a source vector b in the file".into()))?;
    if b.degree() > 0 {
        return Err(CliError::Math(Error::Unsupported {
            operation: "solve",
            requirement: "a constant source vector b",
        }));
    }
    let rhs = b.coeff(0);
    let x = match data.side {
        Side::Right => cramer_right(&data.a, &rhs)?,
        Side::Left => cramer_left(&data.a, &rhs)?,
    };
    let mut doc = Document::new("solve", backend);
    doc.push("side", data.side.name());
    doc.push("n", data.a.rows().to_string());
    doc.push("x", vector_line(&x));
    Ok(doc)
}

// ------------------------------------------------------------- drazin ----

pub fn cmd_drazin(file: &Path, backend_flag: Option<Backend>) -> CmdResult {
    let raw = RawDocument::load(file)?;
    let backend = resolve_backend(backend_flag, &raw, Backend::Exact)?;
    match backend {
        Backend::Exact => drazin_typed::<Rat>(&raw, backend),
        Backend::Float => drazin_typed::<f64>(&raw, backend),
    }
}

fn drazin_typed<S: Scalar>(raw: &RawDocument, backend: Backend) -> CmdResult {
    let data = ProblemData::<S>::from_raw(raw, None)?;
    let result = drazin_det(&data.a)?;
    let mut doc = Document::new("drazin", backend);
    doc.push("n", data.a.rows().to_string());
    doc.push("index", result.index.to_string());
    doc.push("rank", result.rank.to_string());
    push_matrix(&mut doc, "ad", &result.ad);
    Ok(doc)
}

// ---------------------------------------------------------- eig-normal ----

pub fn cmd_eig_normal(
    file: &Path,
    similarity: Option<&Path>,
    backend_flag: Option<Backend>,
) -> CmdResult {
    let raw = RawDocument::load(file)?;
    let backend = resolve_backend(backend_flag, &raw, Backend::Exact)?;
    let sim_raw = similarity.map(RawDocument::load).transpose()?;
    match backend {
        Backend::Exact => eig_typed::<Rat>(&raw, backend, sim_raw.as_ref()),
        Backend::Float => eig_typed::<f64>(&raw, backend, sim_raw.as_ref()),
    }
}

fn eig_typed<S: Scalar>(
    raw: &RawDocument,
    backend: Backend,
    similarity: Option<&RawDocument>,
) -> CmdResult {
    let data = ProblemData::<S>::from_raw(raw, None)?;
    let (eigenvalues, v, d, unitary) = match similarity {
        None => {
            let (v, d) = normal_diagonalize(&data.a)?;
            let eigenvalues: Vec<_> = (0..d.rows()).map(|t| d.at(t, t).clone()).collect();
            let unitary = v.is_unitary(1e-9);
            (eigenvalues, v, d, unitary)
        }
        Some(sim) => {
            let sim_data = ProblemData::<S>::from_raw(sim, None)?;
            let spectral = transported_eigs(&sim_data.a, &data.a)?;
            let d = spectral.diagonal_matrix();
            (
                spectral.eigenvalues,
                spectral.eigenvectors,
                d,
                spectral.unitary,
            )
        }
    };
    let mut doc = Document::new("eig-normal", backend);
    doc.push("n", data.a.rows().to_string());
    doc.push("unitary", if unitary { "true" } else { "false" });
    for (t, value) in eigenvalues.iter().enumerate() {
        doc.push(format!("eigenvalue.{}", t + 1), render_quat(value));
    }
    push_matrix(&mut doc, "v", &v);
    push_matrix(&mut doc, "d", &d);
    Ok(doc)
}

// ---------------------------------------------------------------- exp ----

pub fn cmd_exp(file: &Path, t: f64, backend_flag: Option<Backend>) -> CmdResult {
    let raw = RawDocument::load(file)?;
    let backend = resolve_backend(backend_flag, &raw, Backend::Float)?;
    if backend == Backend::Exact {
        return Err(CliError::Math(Error::Unsupported {
            operation: "exp",
            requirement: "the float backend (the exponential series does not terminate)",
        }));
    }
    let data = ProblemData::<f64>::from_raw(&raw, None)?;
    let result = mat_exp(&data.a, t)?;
    let mut doc = Document::new("exp", backend);
    doc.push("n", data.a.rows().to_string());
    doc.push("t", render_f64(t));
    doc.push(
        "method",
        match result.method {
            ExpMethod::Series => "series",
            ExpMethod::Diagonalized => "diagonalized",
        },
    );
    doc.push("scaling_steps", result.scaling_steps.to_string());
    push_matrix(&mut doc, "exp", &result.value);
    Ok(doc)
}

// ---------------------------------------------------------- lqds-solve ----

/// Builds the full problem a file describes, defaulting a missing source
/// term to zero (purely homogeneous system).
fn problem_of<S: Scalar>(data: &ProblemData<S>) -> Result<LqdsProblem<S>, CliError> {
    let n = data.a.rows();
    let b = match &data.b {
        Some(b) => b.clone(),
        None => match data.side {
            Side::Right => PolyVec::zero(n, 1),
            Side::Left => PolyVec::zero(1, n),
        },
    };
    Ok(LqdsProblem::new(
        data.side,
        data.a.clone(),
        b,
        data.init.clone(),
    )?)
}

fn push_solution<S: Scalar>(doc: &mut Document, sol: &ClosedFormSolution<S>) {
    doc.push("poly.degree", sol.poly_part.degree().to_string());
    for (m, coeff) in sol.poly_part.coeffs().iter().enumerate() {
        doc.push(format!("poly.coeff.{m}"), vector_line(coeff));
    }
    match &sol.hom_part {
        None => doc.push("hom", "none"),
        Some(hom) => {
            doc.push("hom", "exp");
            doc.push("hom.t0", render_scalar(&hom.t0));
            doc.push("hom.x0", vector_line(&hom.x0));
            doc.push(
                "hom.diagonalized",
                if hom.diagonalization.is_some() {
                    "true"
                } else {
                    "false"
                },
            );
        }
    }
}

pub fn cmd_lqds_solve(file: &Path, backend_flag: Option<Backend>) -> CmdResult {
    let raw = RawDocument::load(file)?;
    let backend = resolve_backend(backend_flag, &raw, Backend::Exact)?;
    match backend {
        Backend::Exact => lqds_solve_typed::<Rat>(&raw, backend),
        Backend::Float => lqds_solve_typed::<f64>(&raw, backend),
    }
}

fn lqds_solve_typed<S: Scalar>(raw: &RawDocument, backend: Backend) -> CmdResult {
    let data = ProblemData::<S>::from_raw(raw, None)?;
    let problem = problem_of(&data)?;
    let sol = solve_ivp(&problem)?;
    let mut doc = Document::new("lqds-solve", backend);
    doc.push("side", data.side.name());
    doc.push("n", data.a.rows().to_string());
    push_solution(&mut doc, &sol);
    Ok(doc)
}

// --------------------------------------------------------- lqds-verify ----

pub fn cmd_lqds_verify(file: &Path, backend_flag: Option<Backend>) -> CmdResult {
    let raw = RawDocument::load(file)?;
    let backend = resolve_backend(backend_flag, &raw, Backend::Exact)?;
    match backend {
        Backend::Exact => lqds_verify_typed::<Rat>(&raw, backend),
        Backend::Float => lqds_verify_typed::<f64>(&raw, backend),
    }
}

fn lqds_verify_typed<S: Scalar>(raw: &RawDocument, backend: Backend) -> CmdResult {
    let data = ProblemData::<S>::from_raw(raw, None)?;
    let problem = problem_of(&data)?;
    let sol = solve_ivp(&problem)?;
    let samples: Vec<f64> = data
        .t_samples
        .clone()
        .unwrap_or_else(|| DEFAULT_GRID.to_vec());
    let identity = sol.hom_part.is_none() && S::EXACT;
    let worst = residual(problem.side, &sol, &problem.a, &problem.b, &samples)?;
    let mut doc = Document::new("lqds-verify", backend);
    doc.push("side", data.side.name());
    doc.push(
        "kind",
        if identity {
            "polynomial-identity"
        } else {
            "sampled"
        },
    );
    if !identity {
        doc.push("samples", float_list(&samples));
    }
    doc.push("residual", render_f64(worst));
    Ok(doc)
}

// -------------------------------------------------------------- oracle ----

pub fn cmd_oracle(file: &Path, backend_flag: Option<Backend>) -> CmdResult {
    let raw = RawDocument::load(file)?;
    let backend = resolve_backend(backend_flag, &raw, Backend::Float)?;
    match backend {
        Backend::Exact => oracle_typed::<Rat>(&raw, backend),
        Backend::Float => oracle_typed::<f64>(&raw, backend),
    }
}

fn oracle_typed<S: Scalar>(raw: &RawDocument, backend: Backend) -> CmdResult {
    let data = ProblemData::<S>::from_raw(raw, None)?;
    let problem = problem_of(&data)?;
    let sol = solve_ivp(&problem)?;
    let grid: Vec<f64> = data
        .t_samples
        .clone()
        .unwrap_or_else(|| DEFAULT_GRID.to_vec());
    let worst = lqds_core::compare(&sol, &problem, &grid)?;
    let mut doc = Document::new("oracle", backend);
    doc.push("side", data.side.name());
    doc.push("n", data.a.rows().to_string());
    doc.push(
        "steps",
        lqds_core::oracle::COMPARE_STEPS.to_string(),
    );
    doc.push("grid", float_list(&grid));
    doc.push("worst", render_f64(worst));
    Ok(doc)
}

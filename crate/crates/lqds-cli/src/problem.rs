//! Problem and matrix files: a small TOML schema shared by every
//! subcommand.
//!
//! ```toml
//! side = "right"                      # optional; "right" | "left"
//! backend = "exact"                   # optional; "exact" | "float"
//! a = [["1", "k", "-i"],
//!      ["-k", "2", "j"],
//!      ["i", "-j", "1"]]              # rows of quaternion literals
//! b = [["j", "-k", "i"]]              # optional; one vector per power of t
//! t0 = "0"                            # optional; requires x0
//! x0 = ["1", "i", "j"]                # optional initial state
//! t_samples = [0.5, 1.0]              # optional sample points
//! ```
//!
//! Vectors (`b` coefficients and `x0`) are written as flat entry lists and
//! oriented by `side`: column vectors for right systems, row vectors for
//! left systems. Every shape is validated here, before any math runs.

use std::fmt;
use std::path::Path;

use serde::Deserialize;

use lqds_core::{PolyVec, QMatrix, Quaternion, Scalar, Side};

use crate::literal::parse_quat;

/// Input-side failure: unreadable file, malformed document, bad literal,
/// or inconsistent shapes. These map to exit code 3.
#[derive(Debug)]
pub struct InputError {
    pub message: String,
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for InputError {}

fn input_error(message: impl Into<String>) -> InputError {
    InputError {
        message: message.into(),
    }
}

/// Scalar backend selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    Exact,
    Float,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Exact => "exact",
            Backend::Float => "float",
        }
    }

    pub fn parse(text: &str) -> Result<Self, InputError> {
        match text {
            "exact" => Ok(Backend::Exact),
            "float" => Ok(Backend::Float),
            other => Err(input_error(format!(
                "unknown backend {other:?}: expected \"exact\" or \"float\""
            ))),
        }
    }
}

/// Parses a system-side name as used in files and flags.
pub fn parse_side(text: &str) -> Result<Side, InputError> {
    match text {
        "right" => Ok(Side::Right),
        "left" => Ok(Side::Left),
        other => Err(input_error(format!(
            "unknown side {other:?}: expected \"right\" or \"left\""
        ))),
    }
}

/// The raw document exactly as written on disk.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawDocument {
    pub side: Option<String>,
    pub backend: Option<String>,
    pub a: Vec<Vec<String>>,
    pub b: Option<Vec<Vec<String>>>,
    pub t0: Option<String>,
    pub x0: Option<Vec<String>>,
    pub t_samples: Option<Vec<f64>>,
}

impl RawDocument {
    pub fn load(path: &Path) -> Result<Self, InputError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| input_error(format!("cannot read {}: {e}", path.display())))?;
        toml::from_str(&text)
            .map_err(|e| input_error(format!("cannot parse {}: {e}", path.display())))
    }

    /// The backend requested by the file, if any.
    pub fn backend(&self) -> Result<Option<Backend>, InputError> {
        self.backend.as_deref().map(Backend::parse).transpose()
    }

    fn side_checked(&self) -> Result<Option<Side>, InputError> {
        self.side.as_deref().map(parse_side).transpose()
    }

    /// Every quaternion literal in the document, in reading order. Used by
    /// round-trip checks.
    pub fn literals(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for row in &self.a {
            out.extend(row.iter().map(String::as_str));
        }
        if let Some(b) = &self.b {
            for coeff in b {
                out.extend(coeff.iter().map(String::as_str));
            }
        }
        if let Some(t0) = &self.t0 {
            out.push(t0);
        }
        if let Some(x0) = &self.x0 {
            out.extend(x0.iter().map(String::as_str));
        }
        out
    }
}

/// A fully parsed and shape-checked document in one scalar backend.
#[derive(Debug)]
pub struct ProblemData<S: Scalar> {
    pub side: Side,
    pub a: QMatrix<S>,
    pub b: Option<PolyVec<S>>,
    pub init: Option<(S, QMatrix<S>)>,
    pub t_samples: Option<Vec<f64>>,
}

fn parse_entry<S: Scalar>(context: &str, text: &str) -> Result<Quaternion<S>, InputError> {
    parse_quat(text).map_err(|e| input_error(format!("{context} ({text:?}): {e}")))
}

fn parse_vector<S: Scalar>(
    context: &str,
    side: Side,
    n: usize,
    entries: &[String],
) -> Result<QMatrix<S>, InputError> {
    if entries.len() != n {
        return Err(input_error(format!(
            "{context}: expected {n} entries to match the matrix, got {}",
            entries.len()
        )));
    }
    let mut parsed = Vec::with_capacity(n);
    for (idx, text) in entries.iter().enumerate() {
        parsed.push(parse_entry(&format!("{context}[{}]", idx + 1), text)?);
    }
    Ok(match side {
        Side::Right => QMatrix::col_vector(parsed),
        Side::Left => QMatrix::row_vector(parsed),
    })
}

impl<S: Scalar> ProblemData<S> {
    /// Parses and validates a raw document. `side_override` (from a CLI
    /// flag) wins over the file's `side`; the default is a right system.
    pub fn from_raw(raw: &RawDocument, side_override: Option<Side>) -> Result<Self, InputError> {
        let side = side_override
            .or(raw.side_checked()?)
            .unwrap_or(Side::Right);

        if raw.a.is_empty() {
            return Err(input_error("matrix a must have at least one row"));
        }
        let n = raw.a.len();
        for (r, row) in raw.a.iter().enumerate() {
            if row.len() != raw.a[0].len() {
                return Err(input_error(format!(
                    "matrix a row {} has {} entries, row 1 has {}",
                    r + 1,
                    row.len(),
                    raw.a[0].len()
                )));
            }
        }
        let mut rows = Vec::with_capacity(n);
        for (r, row) in raw.a.iter().enumerate() {
            let mut parsed = Vec::with_capacity(row.len());
            for (c, text) in row.iter().enumerate() {
                parsed.push(parse_entry(&format!("a[{}][{}]", r + 1, c + 1), text)?);
            }
            rows.push(parsed);
        }
        let a = QMatrix::from_rows(rows);

        let b = match &raw.b {
            None => None,
            Some(coeffs) => {
                if coeffs.is_empty() {
                    return Err(input_error("b must list at least one coefficient vector"));
                }
                let mut vectors = Vec::with_capacity(coeffs.len());
                for (m, entries) in coeffs.iter().enumerate() {
                    vectors.push(parse_vector(&format!("b[{}]", m + 1), side, n, entries)?);
                }
                Some(PolyVec::new(vectors).map_err(|e| input_error(format!("b: {e}")))?)
            }
        };

        let init = match (&raw.t0, &raw.x0) {
            (Some(_), None) => return Err(input_error("t0 requires x0")),
            (None, None) => None,
            (t0, Some(entries)) => {
                let x0 = parse_vector("x0", side, n, entries)?;
                let t0 = match t0 {
                    None => S::from_int(0),
                    Some(text) => {
                        let value: Quaternion<S> = parse_entry("t0", text)?;
                        if !value.is_real() {
                            return Err(input_error("t0 must be a real scalar"));
                        }
                        value.real_part()
                    }
                };
                Some((t0, x0))
            }
        };

        Ok(ProblemData {
            side,
            a,
            b,
            init,
            t_samples: raw.t_samples.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use lqds_core::Rat;

    fn raw(text: &str) -> RawDocument {
        toml::from_str(text).unwrap()
    }

    #[test]
    fn minimal_matrix_document_parses() {
        let doc = raw("a = [[\"1\", \"k\"], [\"-k\", \"2\"]]");
        let data: ProblemData<Rat> = ProblemData::from_raw(&doc, None).unwrap();
        assert_eq!(data.side, Side::Right);
        assert_eq!(data.a.rows(), 2);
        assert!(data.b.is_none());
        assert!(data.init.is_none());
    }

    #[test]
    fn left_side_orients_vectors_as_rows() {
        let doc = raw(
            "side = \"left\"\na = [[\"1\", \"0\"], [\"0\", \"1\"]]\nb = [[\"i\", \"j\"]]\nx0 = [\"1\", \"k\"]",
        );
        let data: ProblemData<Rat> = ProblemData::from_raw(&doc, None).unwrap();
        assert_eq!(data.side, Side::Left);
        let b = data.b.unwrap();
        assert_eq!((b.rows(), b.cols()), (1, 2));
        let (t0, x0) = data.init.unwrap();
        assert_eq!(t0, Rat::from_int(0));
        assert_eq!((x0.rows(), x0.cols()), (1, 2));
    }

    #[test]
    fn shape_and_literal_errors_are_reported_with_context() {
        let doc = raw("a = [[\"1\", \"k\"], [\"-k\"]]");
        let err = ProblemData::<Rat>::from_raw(&doc, None).unwrap_err();
        assert!(err.message.contains("row 2"), "{err}");

        let doc = raw("a = [[\"1x\"]]");
        let err = ProblemData::<Rat>::from_raw(&doc, None).unwrap_err();
        assert!(err.message.contains("a[1][1]"), "{err}");

        let doc = raw("a = [[\"1\"]]\nb = [[\"i\", \"j\"]]");
        let err = ProblemData::<Rat>::from_raw(&doc, None).unwrap_err();
        assert!(err.message.contains("b[1]"), "{err}");

        let doc = raw("a = [[\"1\"]]\nt0 = \"0\"");
        let err = ProblemData::<Rat>::from_raw(&doc, None).unwrap_err();
        assert!(err.message.contains("t0 requires x0"), "{err}");

        let doc = raw("a = [[\"1\"]]\nx0 = [\"1\"]\nt0 = \"i\"");
        let err = ProblemData::<Rat>::from_raw(&doc, None).unwrap_err();
        assert!(err.message.contains("real scalar"), "{err}");
    }

    #[test]
    fn unknown_keys_and_enums_are_rejected() {
        assert!(toml::from_str::<RawDocument>("a = [[\"1\"]]\nbogus = 3").is_err());
        let doc = raw("a = [[\"1\"]]\nside = \"up\"");
        assert!(ProblemData::<Rat>::from_raw(&doc, None).is_err());
        let doc = raw("a = [[\"1\"]]\nbackend = \"fast\"");
        assert!(doc.backend().is_err());
    }
}

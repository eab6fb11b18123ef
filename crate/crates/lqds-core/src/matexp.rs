//! Quaternion matrix exponential.
//!
//! e^{At} is defined by the usual power series, which converges absolutely
//! for every square quaternion matrix. [`mat_exp`] evaluates it on the
//! float backend by scaling and squaring: halve At until its Frobenius norm
//! is at most ½, run an 18-term Horner evaluation of the series (the tail
//! beyond term 18 at norm ½ is below 1e−21), then square the result back
//! up. Every call re-verifies itself against a higher-precision-budget
//! recomputation and against the commutation identity A·e^{At} = e^{At}·A.
//!
//! [`mat_exp_diag`] is the diagonalization fast path: when A = P·D·P⁻¹ with
//! D diagonal, e^{At} = P·e^{Dt}·P⁻¹ and e^{Dt} is entrywise scalar
//! exponentials.

use crate::cramer::inv_general;
use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::quaternion::{qexp, Quaternion};

/// How long the truncated series is; the remainder after 18 terms at
/// Frobenius norm ½ is bounded by ½¹⁸/18! < 1e−21.
const SERIES_TERMS: u32 = 18;
/// Scale the argument down until its Frobenius norm is at most this.
const NORM_TARGET: f64 = 0.5;

/// Result of a matrix exponential evaluation.
#[derive(Clone, Debug)]
pub struct ExpResult {
    /// e^{At}.
    pub value: QMatrix<f64>,
    /// How the value was produced.
    pub method: ExpMethod,
    /// Number of halving/squaring rounds used by the series path.
    pub scaling_steps: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpMethod {
    Series,
    Diagonalized,
}

fn truncated_series(c: &QMatrix<f64>, terms: u32) -> QMatrix<f64> {
    let n = c.rows();
    let identity = QMatrix::identity(n);
    // Horner: I + C(I + C/2 (I + C/3 (…))).
    let mut acc = identity.clone();
    for m in (1..terms).rev() {
        acc = &identity + &(c * &acc).scale(&(1.0 / f64::from(m)));
    }
    acc
}

fn scaled_squared_exp(b: &QMatrix<f64>, norm_target: f64, terms: u32) -> (QMatrix<f64>, u32) {
    let mut norm = b.frobenius_norm_sqr().sqrt();
    let mut steps = 0u32;
    while norm > norm_target {
        norm *= 0.5;
        steps += 1;
    }
    let scaled = b.scale(&0.5f64.powi(steps as i32));
    let mut value = truncated_series(&scaled, terms);
    for _ in 0..steps {
        value = &value * &value;
    }
    (value, steps)
}

/// e^{At} by scaling and squaring of the defining series.
///
/// The value is recomputed at a doubled precision budget (twice the
/// halvings, four extra series terms) and both results must agree to a
/// relative 1e−10; the commutation invariant A·e^{At} = e^{At}·A is also
/// checked. Either failing reports an inconsistency instead of returning a
/// silently bad value.
pub fn mat_exp(a: &QMatrix<f64>, t: f64) -> Result<ExpResult> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let b = a.scale(&t);
    let (value, steps) = scaled_squared_exp(&b, NORM_TARGET, SERIES_TERMS);
    let (refined, _) = scaled_squared_exp(&b, NORM_TARGET / 2.0, SERIES_TERMS + 4);
    let scale = refined.scale_f64().max(1.0);
    if !value.approx_eq(&refined, 1e-10 * scale) {
        return Err(Error::InconsistentRepresentation {
            operation: "mat_exp (precision-budget recomputation disagrees)",
        });
    }
    let commute_tol = 1e-9 * a.scale_f64().max(1.0) * scale * a.rows() as f64;
    if !(a * &value).approx_eq(&(&value * a), commute_tol) {
        return Err(Error::InconsistentRepresentation {
            operation: "mat_exp (result does not commute with the argument)",
        });
    }
    Ok(ExpResult {
        value,
        method: ExpMethod::Series,
        scaling_steps: steps,
    })
}

/// e^{At} for diagonalized A = P·D·P⁻¹: P·e^{Dt}·P⁻¹ with the diagonal
/// exponential taken entrywise by the scalar series.
pub fn mat_exp_diag(p: &QMatrix<f64>, d: &QMatrix<f64>, t: f64) -> Result<QMatrix<f64>> {
    if !d.is_square() {
        return Err(Error::NotSquare {
            rows: d.rows(),
            cols: d.cols(),
        });
    }
    let n = d.rows();
    if p.rows() != n || p.cols() != n {
        return Err(Error::ShapeMismatch {
            operation: "mat_exp_diag",
            expected: format!("{n}x{n}"),
            got: format!("{}x{}", p.rows(), p.cols()),
        });
    }
    let off_tol = 1e-12 * d.scale_f64().max(1.0);
    for i in 0..n {
        for j in 0..n {
            if i != j && !d.at(i, j).approx_eq(&Quaternion::zero(), off_tol) {
                return Err(Error::ShapeMismatch {
                    operation: "mat_exp_diag",
                    expected: "diagonal D".to_string(),
                    got: format!("nonzero entry at ({i},{j})"),
                });
            }
        }
    }
    let p_inv = inv_general(p).map_err(|e| match e {
        Error::Singular { .. } => Error::Singular {
            operation: "mat_exp_diag",
        },
        other => other,
    })?;
    let exp_d = QMatrix::diagonal(
        (0..n)
            .map(|i| qexp(&d.at(i, i).scale(&t)))
            .collect::<Vec<_>>(),
    );
    Ok(&(p * &exp_d) * &p_inv)
}

//! Determinantal inverses and Cramer-rule solvers.
//!
//! Two inverse constructions are provided. [`inv_hermitian`] applies the
//! cofactor formulas for Hermitian matrices: the (p,q) entry of A⁻¹ is
//! R_qp/det A where R and L are the row- and column-determinant cofactor
//! families over deleted/replaced submatrices; the right (R) and left (L)
//! families are both evaluated and must agree. [`inv_general`] covers any
//! matrix with nonzero double determinant via the Hermitian products A*A
//! and AA*: the (p,q) entry of A⁻¹ is cdet_p((A*A)_{·p}(a*_{·q}))/ddet A,
//! cross-checked against the mirrored rdet construction on AA* and against
//! plain row reduction.
//!
//! The solvers [`cramer_right`] (A·x = b) and [`cramer_left`] (x·A = b)
//! dispatch between the Hermitian single-determinant rule and the general
//! ddet rule, and verify their residuals before returning.

use crate::det::{cdet, ddet, det_hermitian, rdet};
use crate::error::{Error, Result};
use crate::matrix::{invert, QMatrix, PREDICATE_TOL};
use crate::quaternion::Quaternion;
use crate::scalar::Scalar;

/// Float-backend singularity threshold: a determinant d of an n×n matrix
/// with entry scale s counts as zero when |d| ≤ 1e−12·max(1,s)ⁿ.
pub fn is_negligible_det<S: Scalar>(d: &S, a: &QMatrix<S>) -> bool {
    if S::EXACT {
        d.is_zero()
    } else {
        let bound = a.scale_f64().max(1.0).powi(a.rows() as i32);
        d.to_f64().abs() <= 1e-12 * bound
    }
}

fn cross_check_tol<S: Scalar>(m: &QMatrix<S>) -> f64 {
    1e-9 * m.scale_f64().max(1.0)
}

/// Inverse of an invertible Hermitian matrix through its two cofactor
/// families. Both the row-determinant family R and the column-determinant
/// family L are assembled; they must agree with each other and multiply
/// back to the identity (exactly on the exact backend).
pub fn inv_hermitian<S: Scalar>(a: &QMatrix<S>) -> Result<QMatrix<S>> {
    let det = det_hermitian(a)?; // checks square, cap, and Hermitian-ness
    if is_negligible_det(&det, a) {
        return Err(Error::Singular {
            operation: "inv_hermitian",
        });
    }
    let n = a.rows();
    let recip = S::one() / det;
    if n == 1 {
        return Ok(QMatrix::from_rows(vec![vec![Quaternion::real(recip)]]));
    }

    // R_ij: for i≠j replace column j with column i, delete row and column i,
    // and take the row determinant at column j's local position; for i=j
    // delete row and column i and anchor at the smallest remaining index
    // (always local position 0).
    let mut r_fam = QMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let val = if i == j {
                rdet(&a.delete_row_col(i, i), 0)?
            } else {
                let replaced = a.replace_col(j, &a.col(i));
                let local_j = if j > i { j - 1 } else { j };
                -rdet(&replaced.delete_row_col(i, i), local_j)?
            };
            r_fam.set(i, j, val);
        }
    }
    // L_ij: for i≠j replace row i with row j, delete row and column j, and
    // take the column determinant at row i's local position; for i=j delete
    // row and column j and anchor at the smallest remaining index.
    let mut l_fam = QMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let val = if i == j {
                cdet(&a.delete_row_col(j, j), 0)?
            } else {
                let replaced = a.replace_row(i, &a.row(j));
                let local_i = if i > j { i - 1 } else { i };
                -cdet(&replaced.delete_row_col(j, j), local_i)?
            };
            l_fam.set(i, j, val);
        }
    }

    // Entry (p,q) of the inverse is R_qp/det = L_qp/det.
    let inv_r = QMatrix::from_fn(n, n, |p, q| r_fam.at(q, p).scale(&recip));
    let inv_l = QMatrix::from_fn(n, n, |p, q| l_fam.at(q, p).scale(&recip));
    let tol = cross_check_tol(&inv_r);
    if !inv_r.approx_eq(&inv_l, tol) {
        return Err(Error::InconsistentRepresentation {
            operation: "inv_hermitian (R and L cofactor families disagree)",
        });
    }
    verify_inverse(a, &inv_r, "inv_hermitian")?;
    Ok(inv_r)
}

/// Inverse of any square matrix with ddet ≠ 0, through the Hermitian
/// products: entry (p,q) is cdet_p((A*A)_{·p}(a*_{·q}))/ddet, checked
/// against the mirrored rdet form rdet_q((AA*)_{q·}(a*_{p·}))/ddet and
/// against row reduction.
pub fn inv_general<S: Scalar>(a: &QMatrix<S>) -> Result<QMatrix<S>> {
    let dd = ddet(a)?; // checks square and cap
    if is_negligible_det(&dd, a) {
        return Err(Error::Singular {
            operation: "inv_general",
        });
    }
    let n = a.rows();
    let recip = S::one() / dd;
    let adj = a.conj_transpose();
    let ata = &adj * a;
    let aat = a * &adj;

    let mut left = QMatrix::zeros(n, n);
    let mut right = QMatrix::zeros(n, n);
    for p in 0..n {
        for q in 0..n {
            let l = cdet(&ata.replace_col(p, &adj.col(q)), p)?;
            left.set(p, q, l.scale(&recip));
            let r = rdet(&aat.replace_row(q, &adj.row(p)), q)?;
            right.set(p, q, r.scale(&recip));
        }
    }
    let tol = cross_check_tol(&left);
    if !left.approx_eq(&right, tol) {
        return Err(Error::InconsistentRepresentation {
            operation: "inv_general (cdet and rdet constructions disagree)",
        });
    }
    let eliminated = invert(a).map_err(|_| Error::InconsistentRepresentation {
        operation: "inv_general (row reduction disagrees on invertibility)",
    })?;
    if !left.approx_eq(&eliminated, tol) {
        return Err(Error::InconsistentRepresentation {
            operation: "inv_general (determinantal and row-reduction inverses disagree)",
        });
    }
    verify_inverse(a, &left, "inv_general")?;
    Ok(left)
}

fn verify_inverse<S: Scalar>(
    a: &QMatrix<S>,
    inv: &QMatrix<S>,
    operation: &'static str,
) -> Result<()> {
    let id = QMatrix::identity(a.rows());
    let tol = 1e-9 * a.scale_f64().max(1.0) * inv.scale_f64().max(1.0);
    if !(a * inv).approx_eq(&id, tol) || !(inv * a).approx_eq(&id, tol) {
        return Err(Error::InconsistentRepresentation { operation });
    }
    Ok(())
}

fn verify_residual<S: Scalar>(
    lhs: &QMatrix<S>,
    rhs: &QMatrix<S>,
    operation: &'static str,
) -> Result<()> {
    let tol = 1e-9
        * lhs.scale_f64().max(1.0)
        * rhs.scale_f64().max(1.0)
        * lhs.rows().max(lhs.cols()) as f64;
    if !lhs.approx_eq(rhs, tol) {
        return Err(Error::InconsistentRepresentation { operation });
    }
    Ok(())
}

/// Cramer solution of the right system A·x = b (b a column). Hermitian A
/// with det ≠ 0 uses x_j = cdet_j(A_{·j}(b))/det A; otherwise
/// x_j = cdet_j((A*A)_{·j}(A*b))/ddet A. The residual A·x − b is checked
/// before returning.
pub fn cramer_right<S: Scalar>(a: &QMatrix<S>, b: &QMatrix<S>) -> Result<QMatrix<S>> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    if b.rows() != n || b.cols() != 1 {
        return Err(Error::ShapeMismatch {
            operation: "cramer_right",
            expected: format!("{n}x1"),
            got: format!("{}x{}", b.rows(), b.cols()),
        });
    }
    let x = if a.is_hermitian(PREDICATE_TOL) {
        cramer_right_hermitian(a, b)?
    } else {
        cramer_right_general(a, b)?
    };
    verify_residual(&(a * &x), b, "cramer_right (residual nonzero)")?;
    Ok(x)
}

fn cramer_right_hermitian<S: Scalar>(a: &QMatrix<S>, b: &QMatrix<S>) -> Result<QMatrix<S>> {
    let det = det_hermitian(a)?;
    if is_negligible_det(&det, a) {
        return Err(Error::Singular {
            operation: "cramer_right",
        });
    }
    let recip = S::one() / det;
    let entries = (0..a.rows())
        .map(|j| Ok(cdet(&a.replace_col(j, b.vector_entries()), j)?.scale(&recip)))
        .collect::<Result<Vec<_>>>()?;
    Ok(QMatrix::col_vector(entries))
}

fn cramer_right_general<S: Scalar>(a: &QMatrix<S>, b: &QMatrix<S>) -> Result<QMatrix<S>> {
    let dd = ddet(a)?;
    if is_negligible_det(&dd, a) {
        return Err(Error::Singular {
            operation: "cramer_right",
        });
    }
    let recip = S::one() / dd;
    let adj = a.conj_transpose();
    let ata = &adj * a;
    let f = &adj * b;
    let entries = (0..a.rows())
        .map(|j| Ok(cdet(&ata.replace_col(j, f.vector_entries()), j)?.scale(&recip)))
        .collect::<Result<Vec<_>>>()?;
    Ok(QMatrix::col_vector(entries))
}

/// Cramer solution of the left system x·A = b (b a row). Hermitian A with
/// det ≠ 0 uses x_i = rdet_i(A_{i·}(b))/det A; otherwise
/// x_i = rdet_i((AA*)_{i·}(b·A*))/ddet A. The residual x·A − b is checked
/// before returning.
pub fn cramer_left<S: Scalar>(a: &QMatrix<S>, b: &QMatrix<S>) -> Result<QMatrix<S>> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    if b.rows() != 1 || b.cols() != n {
        return Err(Error::ShapeMismatch {
            operation: "cramer_left",
            expected: format!("1x{n}"),
            got: format!("{}x{}", b.rows(), b.cols()),
        });
    }
    let x = if a.is_hermitian(PREDICATE_TOL) {
        cramer_left_hermitian(a, b)?
    } else {
        cramer_left_general(a, b)?
    };
    verify_residual(&(&x * a), b, "cramer_left (residual nonzero)")?;
    Ok(x)
}

fn cramer_left_hermitian<S: Scalar>(a: &QMatrix<S>, b: &QMatrix<S>) -> Result<QMatrix<S>> {
    let det = det_hermitian(a)?;
    if is_negligible_det(&det, a) {
        return Err(Error::Singular {
            operation: "cramer_left",
        });
    }
    let recip = S::one() / det;
    let entries = (0..a.rows())
        .map(|i| Ok(rdet(&a.replace_row(i, b.vector_entries()), i)?.scale(&recip)))
        .collect::<Result<Vec<_>>>()?;
    Ok(QMatrix::row_vector(entries))
}

fn cramer_left_general<S: Scalar>(a: &QMatrix<S>, b: &QMatrix<S>) -> Result<QMatrix<S>> {
    let dd = ddet(a)?;
    if is_negligible_det(&dd, a) {
        return Err(Error::Singular {
            operation: "cramer_left",
        });
    }
    let recip = S::one() / dd;
    let adj = a.conj_transpose();
    let aat = a * &adj;
    let z = b * &adj;
    let entries = (0..a.rows())
        .map(|i| Ok(rdet(&aat.replace_row(i, z.vector_entries()), i)?.scale(&recip)))
        .collect::<Result<Vec<_>>>()?;
    Ok(QMatrix::row_vector(entries))
}

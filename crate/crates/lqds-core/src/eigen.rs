//! Right eigenvalues and eigenvectors of Hermitian and normal quaternion
//! matrices, and their transport through similarity.
//!
//! A quaternion λ is a right eigenvalue of A when A·v = v·λ for some
//! nonzero v. Right eigenvalues come in conjugacy classes {u⁻¹λu}; the
//! canonical representative is the *standard* form h + s·i with s ≥ 0.
//!
//! For a Hermitian matrix the standard eigenvalues are real and are exactly
//! the roots of its (real) characteristic polynomial; [`hermitian_eigs`]
//! extracts them and orthonormalizes each eigenspace. For a normal matrix N
//! the route goes through the Hermitian matrix N*N: each eigenspace of N*N
//! is N-invariant, and [`normal_diagonalize`] splits the restriction of N
//! there into its Hermitian part (giving the real part h of each standard
//! eigenvalue) and skew part (whose square fixes s² = λ − h²), building
//! unit columns that satisfy N·u = u·(h + s·i) literally. [`transported_eigs`]
//! carries a normal matrix's spectral data across a similarity A = T·N·T⁻¹:
//! the eigenvalues survive unchanged and the eigenvectors become the
//! columns of T·U.

use crate::cramer::inv_general;
use crate::det::char_poly_hermitian;
use crate::error::{Error, Result};
use crate::matrix::{gram_schmidt_right, null_space_right, QMatrix, PIVOT_TOL, PREDICATE_TOL};
use crate::poly::RealPolynomial;
use crate::quaternion::Quaternion;
use crate::scalar::Scalar;

/// Eigenvalues (standard complex form, descending by real then imaginary
/// part) paired with eigenvector columns.
#[derive(Clone, Debug)]
pub struct SpectralDecomposition<S: Scalar> {
    /// Standard eigenvalues h_t + s_t·i with s_t ≥ 0, one per column.
    pub eigenvalues: Vec<Quaternion<S>>,
    /// Eigenvector columns, ordered to match `eigenvalues`.
    pub eigenvectors: QMatrix<S>,
    /// Whether the eigenvector matrix passed the unitarity check.
    pub unitary: bool,
}

impl<S: Scalar> SpectralDecomposition<S> {
    /// diag(λ₁, …, λₙ) in the stored order.
    pub fn diagonal_matrix(&self) -> QMatrix<S> {
        QMatrix::diagonal(self.eigenvalues.clone())
    }
}

/// All real roots of a real-coefficient polynomial, with multiplicity,
/// sorted descending. The polynomial is normalized to monic first. Exact
/// backend: roots must be rational (rational-root test); float backend:
/// Sturm isolation followed by bisection and Newton polishing.
pub fn real_roots<S: Scalar>(p: &RealPolynomial<S>) -> Result<Vec<(S, usize)>> {
    if p.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if p.degree() == 0 {
        return Ok(Vec::new());
    }
    let monic = if p.is_monic() {
        p.clone()
    } else {
        p.scale(&(S::one() / p.leading().clone()))
    };
    S::monic_real_roots(monic.coeffs())
}

/// True iff v ≠ 0 and A·v = v·λ (exact backend: literally; float backend:
/// entrywise within `tol`).
pub fn is_right_eigenpair<S: Scalar>(
    a: &QMatrix<S>,
    v: &QMatrix<S>,
    lambda: &Quaternion<S>,
    tol: f64,
) -> bool {
    if v.cols() != 1 || a.cols() != v.rows() {
        return false;
    }
    if v.is_zero_matrix(PIVOT_TOL) {
        return false;
    }
    (a * v).approx_eq(&v.scale_quat_right(lambda), tol)
}

fn relation_tol<S: Scalar>(a: &QMatrix<S>) -> f64 {
    1e-8 * a.scale_f64().max(1.0) * a.rows() as f64
}

/// Spectral decomposition of a Hermitian matrix: eigenvalues are the roots
/// of the characteristic polynomial (all real), eigenvectors the
/// orthonormalized null spaces of A − λI, columns grouped by eigenvalue in
/// descending order.
pub fn hermitian_eigs<S: Scalar>(a: &QMatrix<S>) -> Result<SpectralDecomposition<S>> {
    if let Some((row, col)) = a.hermitian_violation(PREDICATE_TOL) {
        return Err(Error::NotHermitian { row, col });
    }
    let n = a.rows();
    let poly = char_poly_hermitian(a)?;
    let roots = real_roots(&poly)?;
    let mut eigenvalues = Vec::with_capacity(n);
    let mut columns: Vec<QMatrix<S>> = Vec::with_capacity(n);
    for (which, (lambda, mult)) in roots.iter().enumerate() {
        let shifted = a - &QMatrix::identity(n).scale(lambda);
        let basis = null_space_right(&shifted);
        if basis.len() != *mult {
            return Err(Error::EigenspaceDimension {
                which,
                got: basis.len(),
                expected: *mult,
            });
        }
        let ortho = gram_schmidt_right(&basis)?;
        for u in ortho {
            eigenvalues.push(Quaternion::real(lambda.clone()));
            columns.push(u);
        }
    }
    let eigenvectors = columns_to_matrix(n, &columns);
    let decomposition = SpectralDecomposition {
        eigenvalues,
        eigenvectors,
        unitary: true,
    };
    verify_decomposition(a, &decomposition)?;
    Ok(decomposition)
}

fn columns_to_matrix<S: Scalar>(n: usize, columns: &[QMatrix<S>]) -> QMatrix<S> {
    QMatrix::from_fn(n, columns.len(), |i, j| columns[j].at(i, 0).clone())
}

fn verify_decomposition<S: Scalar>(
    a: &QMatrix<S>,
    d: &SpectralDecomposition<S>,
) -> Result<()> {
    let tol = relation_tol(a);
    let u = &d.eigenvectors;
    if !(a * u).approx_eq(&(u * &d.diagonal_matrix()), tol) {
        return Err(Error::InconsistentRepresentation {
            operation: "spectral decomposition (eigenpair relation failed)",
        });
    }
    if d.unitary && !u.is_unitary(1e-10 * u.rows() as f64) {
        return Err(Error::InconsistentRepresentation {
            operation: "spectral decomposition (eigenvector matrix not unitary)",
        });
    }
    Ok(())
}

/// Unitary diagonalization of a normal matrix: returns (U, D) with U
/// unitary, D = U*·N·U diagonal, and the diagonal entries in standard form
/// h + s·i, s ≥ 0, sorted descending by (h, s).
pub fn normal_diagonalize<S: Scalar>(n_mat: &QMatrix<S>) -> Result<(QMatrix<S>, QMatrix<S>)> {
    if !n_mat.is_square() {
        return Err(Error::NotSquare {
            rows: n_mat.rows(),
            cols: n_mat.cols(),
        });
    }
    if !n_mat.is_normal(PREDICATE_TOL) {
        return Err(Error::NotNormal);
    }
    let n = n_mat.rows();
    let gram = &n_mat.conj_transpose() * n_mat;
    let herm = hermitian_eigs(&gram)?;

    // Group the columns of the N*N decomposition by (repeated) eigenvalue;
    // each group spans an N-invariant subspace.
    let mut pairs: Vec<(Quaternion<S>, QMatrix<S>)> = Vec::with_capacity(n);
    let mut start = 0;
    while start < n {
        let lambda = herm.eigenvalues[start].real_part();
        let mut end = start + 1;
        while end < n && herm.eigenvalues[end].real_part() == lambda {
            end += 1;
        }
        let basis = QMatrix::from_fn(n, end - start, |i, j| {
            herm.eigenvectors.at(i, start + j).clone()
        });
        refine_invariant_subspace(n_mat, &lambda, &basis, &mut pairs)?;
        start = end;
    }

    // Deterministic order: descending by real part, then imaginary part.
    pairs.sort_by(|a, b| {
        (b.0.w.partial_cmp(&a.0.w))
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(b.0.x.partial_cmp(&a.0.x).unwrap_or(std::cmp::Ordering::Equal))
    });
    let eigenvalues: Vec<Quaternion<S>> = pairs.iter().map(|p| p.0.clone()).collect();
    let columns: Vec<QMatrix<S>> = pairs.into_iter().map(|p| p.1).collect();
    let u = columns_to_matrix(n, &columns);
    let d = QMatrix::diagonal(eigenvalues.clone());
    let decomposition = SpectralDecomposition {
        eigenvalues,
        eigenvectors: u.clone(),
        unitary: true,
    };
    verify_decomposition(n_mat, &decomposition)?;
    Ok((u, d))
}

/// Diagonalizes N restricted to one eigenspace of N*N (eigenvalue λ,
/// orthonormal basis `basis`). The restriction S = E*NE satisfies
/// S*S = λI. Splitting S = H + W into Hermitian and skew parts, H and W
/// commute, so each eigenspace of H (eigenvalue h) is W-invariant and
/// there −W² = (λ − h²)·I =: s²·I. When s = 0 the restriction is the real
/// scalar h; otherwise each unit w yields v = w·s − (W·w)·i (or w·j when
/// that degenerates) with W·v = v·(s·i), hence N·(EFv) = (EFv)·(h + s·i).
fn refine_invariant_subspace<S: Scalar>(
    n_mat: &QMatrix<S>,
    lambda: &S,
    basis: &QMatrix<S>,
    pairs: &mut Vec<(Quaternion<S>, QMatrix<S>)>,
) -> Result<()> {
    let adjoint_basis = basis.conj_transpose();
    let restriction = &(&adjoint_basis * n_mat) * basis;
    let half = S::from_ratio(1, 2);
    let restriction_adj = restriction.conj_transpose();
    let hermitian_part = (&restriction + &restriction_adj).scale(&half);
    let skew_part = (&restriction - &restriction_adj).scale(&half);

    let h_eigs = hermitian_eigs(&hermitian_part)?;
    let m = restriction.rows();
    let mut start = 0;
    while start < m {
        let h = h_eigs.eigenvalues[start].real_part();
        let mut end = start + 1;
        while end < m && h_eigs.eigenvalues[end].real_part() == h {
            end += 1;
        }
        let f = QMatrix::from_fn(m, end - start, |i, j| {
            h_eigs.eigenvectors.at(i, start + j).clone()
        });
        let w_restricted = &(&f.conj_transpose() * &skew_part) * &f;
        let s_sqr = lambda.clone() - h.clone() * h.clone();
        let joint_cols = joint_eigencolumns(&w_restricted, &h, &s_sqr)?;
        for (mu, v) in joint_cols {
            let column = basis * &(&f * &v);
            pairs.push((mu, column));
        }
        start = end;
    }
    Ok(())
}

/// Builds an orthonormal basis of a space where the skew matrix W satisfies
/// −W² = s²·I, consisting of vectors with W·v = v·(s·i); pairs each with
/// the standard eigenvalue h + s·i.
fn joint_eigencolumns<S: Scalar>(
    w: &QMatrix<S>,
    h: &S,
    s_sqr: &S,
) -> Result<Vec<(Quaternion<S>, QMatrix<S>)>> {
    let m = w.rows();
    let scale_tol = 1e-9 * w.scale_f64().max(1.0);
    if s_sqr.is_negligible(scale_tol) {
        // Skew part vanishes; the restriction is the real scalar h and any
        // orthonormal basis serves.
        let identity = QMatrix::identity(m);
        return Ok((0..m)
            .map(|t| {
                (
                    Quaternion::real(h.clone()),
                    QMatrix::col_vector(identity.col(t)),
                )
            })
            .collect());
    }
    let s = s_sqr.sqrt_exact().ok_or(Error::NotRepresentable)?;
    if S::EXACT {
        let minus_w_sqr = -&(w * w);
        if minus_w_sqr != QMatrix::identity(m).scale(s_sqr) {
            return Err(Error::InconsistentRepresentation {
                operation: "normal_diagonalize (skew part square is not scalar)",
            });
        }
    }
    let mu = Quaternion::new(h.clone(), s.clone(), S::zero(), S::zero());
    let i_unit = Quaternion::<S>::i();
    let j_unit = Quaternion::<S>::j();
    let mut chosen: Vec<QMatrix<S>> = Vec::with_capacity(m);
    let mut out = Vec::with_capacity(m);
    for t in 0..m {
        if chosen.len() == m {
            break;
        }
        let mut w_vec = QMatrix::col_vector({
            let mut e = vec![Quaternion::zero(); m];
            e[t] = Quaternion::one();
            e
        });
        for c in &chosen {
            let coeff = crate::matrix::inner_right(&w_vec, c);
            w_vec = &w_vec - &c.scale_quat_right(&coeff);
        }
        if w_vec.frobenius_norm_sqr().is_negligible(scale_tol * scale_tol) {
            continue;
        }
        let mut v = &w_vec.scale(&s) - &(w * &w_vec).scale_quat_right(&i_unit);
        if v.frobenius_norm_sqr().is_negligible(scale_tol * scale_tol) {
            v = w_vec.scale_quat_right(&j_unit);
        }
        // Mathematically v is orthogonal to everything already chosen
        // (each chosen span is W-invariant and W is skew); subtract the
        // float residue anyway, then normalize with a *complex* unit so the
        // eigenvalue stays in standard form.
        for c in &chosen {
            let coeff = crate::matrix::inner_right(&v, c);
            v = &v - &c.scale_quat_right(&coeff);
        }
        let norm_sqr = v.frobenius_norm_sqr();
        if norm_sqr.is_negligible(scale_tol * scale_tol) {
            return Err(Error::DependentInput { index: t });
        }
        let [re, im] = norm_sqr.recip_norm_complex()?;
        let unit = v.scale_quat_right(&Quaternion::new(re, im, S::zero(), S::zero()));
        chosen.push(unit.clone());
        out.push((mu.clone(), unit));
    }
    if out.len() != m {
        return Err(Error::EigenspaceDimension {
            which: 0,
            got: out.len(),
            expected: m,
        });
    }
    Ok(out)
}

/// Spectral data of A = T·N·T⁻¹ for invertible T and normal N: the standard
/// eigenvalues of N, with eigenvector columns T·U. The defining relation
/// A·(TU) = (TU)·D is verified before returning.
pub fn transported_eigs<S: Scalar>(
    t: &QMatrix<S>,
    n_mat: &QMatrix<S>,
) -> Result<SpectralDecomposition<S>> {
    let t_inv = inv_general(t).map_err(|e| match e {
        Error::Singular { .. } => Error::Singular {
            operation: "transported_eigs",
        },
        other => other,
    })?;
    let (u, d) = normal_diagonalize(n_mat)?;
    let transported = t * &u;
    let a = &(t * n_mat) * &t_inv;
    let eigenvalues: Vec<Quaternion<S>> = (0..d.rows()).map(|t_| d.at(t_, t_).clone()).collect();
    let decomposition = SpectralDecomposition {
        eigenvalues,
        eigenvectors: transported.clone(),
        unitary: transported.is_unitary(1e-10 * transported.rows() as f64),
    };
    let tol = relation_tol(&a);
    if !(&a * &transported).approx_eq(&(&transported * &d), tol) {
        return Err(Error::InconsistentRepresentation {
            operation: "transported_eigs (eigenpair relation failed)",
        });
    }
    Ok(decomposition)
}

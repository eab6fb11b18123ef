//! Worked sample matrices with exactly known spectra, inverses, and
//! solutions, shared by unit, integration, and acceptance tests across the
//! crate (all entries exact rationals).
//!
//! The family hangs together: [`normal_3x3`] is a normal matrix N;
//! [`gram_of_normal_3x3`] is M = N*N with characteristic polynomial
//! t³ − 13t² + 32t − 20 and eigenvalues {10, 2, 1}; [`unitary_eigvecs_3x3`]
//! is a unitary U of M-eigenvectors; [`standard_eigenvalues_3x3`] is
//! D = U*NU = diag(1+i, i, 3+i); [`similarity_3x3`] is an invertible T with
//! the exactly known inverse [`similarity_inverse_3x3`]; and
//! [`dense_similar_3x3`] is the dense matrix T·N·T⁻¹ whose eigenvector
//! matrix is [`transported_eigvecs_3x3`] = T·U with inverse
//! [`transported_eigvecs_inverse_3x3`].
//!
//! Independently, [`hermitian_rank2_3x3`] is a singular Hermitian matrix of
//! rank 2 and index 1 (det A = det A² = 0) used by the generalized-inverse
//! and singular-system paths, with right-hand side [`rank2_rhs`].

use crate::matrix::QMatrix;
use crate::quaternion::Quaternion;
use crate::scalar::{Rat, Scalar};

type Q = Quaternion<Rat>;
type M = QMatrix<Rat>;

/// Integer-component quaternion.
fn qi(w: i64, x: i64, y: i64, z: i64) -> Q {
    Q::from_ints(w, x, y, z)
}

/// Quaternion with all components given in quarters (so `quarters(2, -6, 0, 1)`
/// is 1/2 − 3/2·i + 1/4·k).
fn quarters(w: i64, x: i64, y: i64, z: i64) -> Q {
    Q::new(
        Rat::from_ratio(w, 4),
        Rat::from_ratio(x, 4),
        Rat::from_ratio(y, 4),
        Rat::from_ratio(z, 4),
    )
}

/// Normal (but not Hermitian) 3×3 matrix N with N*N = [`gram_of_normal_3x3`].
pub fn normal_3x3() -> M {
    M::from_rows(vec![
        vec![qi(2, 0, 0, 0), qi(0, 0, 0, 0), qi(0, 1, 1, 0)],
        vec![qi(0, 0, 0, 0), qi(0, 1, 0, 0), qi(0, 0, 0, 0)],
        vec![qi(0, 1, -1, 0), qi(0, 0, 0, 0), qi(2, 0, 0, 0)],
    ])
}

/// Hermitian Gram matrix M = N*N of [`normal_3x3`]; eigenvalues 10, 2, 1.
pub fn gram_of_normal_3x3() -> M {
    M::from_rows(vec![
        vec![qi(6, 0, 0, 0), qi(0, 0, 0, 0), qi(0, 0, 4, 0)],
        vec![qi(0, 0, 0, 0), qi(1, 0, 0, 0), qi(0, 0, 0, 0)],
        vec![qi(0, 0, -4, 0), qi(0, 0, 0, 0), qi(6, 0, 0, 0)],
    ])
}

/// Unitary matrix whose columns are orthonormal eigenvectors of
/// [`gram_of_normal_3x3`] for the eigenvalues (2, 1, 10) in column order.
pub fn unitary_eigvecs_3x3() -> M {
    M::from_rows(vec![
        vec![quarters(2, 0, -2, 0), qi(0, 0, 0, 0), quarters(2, 0, 2, 0)],
        vec![qi(0, 0, 0, 0), qi(1, 0, 0, 0), qi(0, 0, 0, 0)],
        vec![quarters(2, 0, 2, 0), qi(0, 0, 0, 0), quarters(2, 0, -2, 0)],
    ])
}

/// Diagonal of standard right eigenvalues of [`normal_3x3`]: U*NU with
/// U = [`unitary_eigvecs_3x3`], in the same column order as U.
pub fn standard_eigenvalues_3x3() -> M {
    M::diagonal(vec![qi(1, 1, 0, 0), qi(0, 1, 0, 0), qi(3, 1, 0, 0)])
}

/// Invertible (non-normal) similarity factor T.
pub fn similarity_3x3() -> M {
    M::from_rows(vec![
        vec![qi(0, 0, 0, -1), qi(0, 0, 1, 0), qi(2, 0, 0, 0)],
        vec![qi(0, 1, 0, 0), qi(0, 0, 0, 1), qi(0, 1, 0, 0)],
        vec![qi(0, 0, -1, 0), qi(1, 0, 0, 0), qi(0, 1, 0, 0)],
    ])
}

/// The exact inverse of [`similarity_3x3`].
pub fn similarity_inverse_3x3() -> M {
    M::from_rows(vec![
        vec![quarters(-2, 0, 0, 2), quarters(0, -2, 4, 0), quarters(0, -2, 0, 0)],
        vec![quarters(0, 2, -2, 0), quarters(-6, 0, 0, 0), quarters(2, 0, 0, 4)],
        vec![quarters(0, 0, 0, 0), quarters(0, -2, 2, 0), quarters(0, -2, -2, 0)],
    ])
}

/// Dense, non-Hermitian 3×3 matrix similar to [`normal_3x3`]:
/// A = T·N·T⁻¹ with T = [`similarity_3x3`]. Its right eigenvalues are those
/// of N and its eigenvector matrix is [`transported_eigvecs_3x3`].
pub fn dense_similar_3x3() -> M {
    M::from_rows(vec![
        vec![
            quarters(4, -10, -2, 4),
            quarters(16, 0, 12, 10),
            quarters(8, -8, -4, -10),
        ],
        vec![
            quarters(6, -4, -4, -2),
            quarters(8, 6, -12, 12),
            quarters(8, 10, 4, -4),
        ],
        vec![
            quarters(2, -4, 4, -2),
            quarters(12, -4, -2, 0),
            quarters(4, 4, -6, -8),
        ],
    ])
}

/// Eigenvector matrix V = T·U of [`dense_similar_3x3`] (columns are right
/// eigenvectors for the eigenvalues 1+i, i, 3+i in order). Entry (3,3) is
/// 1/2 + 1/2i − 1/2j − 1/2k: the positive real part is forced by V = T·U,
/// by A·V = V·D, and by [`transported_eigvecs_inverse_3x3`] actually being
/// this matrix's inverse — all three fail with the real part negated.
pub fn transported_eigvecs_3x3() -> M {
    M::from_rows(vec![
        vec![
            quarters(4, -2, 4, -2),
            qi(0, 0, 1, 0),
            quarters(4, 2, -4, -2),
        ],
        vec![qi(0, 1, 0, 0), qi(0, 0, 0, 1), qi(0, 1, 0, 0)],
        vec![
            quarters(-2, 2, -2, 2),
            qi(1, 0, 0, 0),
            quarters(2, 2, -2, -2),
        ],
    ])
}

/// The exact inverse of [`transported_eigvecs_3x3`].
pub fn transported_eigvecs_inverse_3x3() -> M {
    M::from_rows(vec![
        vec![
            quarters(-1, 1, -1, 1),
            quarters(-1, -2, 3, 0),
            quarters(-1, -2, -1, 0),
        ],
        vec![
            quarters(0, 2, -2, 0),
            quarters(-6, 0, 0, 0),
            quarters(2, 0, 0, 4),
        ],
        vec![
            quarters(-1, -1, 1, 1),
            quarters(1, -2, 3, 0),
            quarters(1, -2, -1, 0),
        ],
    ])
}

/// Singular Hermitian 3×3 matrix of rank 2: det A = det A² = 0, index 1.
pub fn hermitian_rank2_3x3() -> M {
    M::from_rows(vec![
        vec![qi(1, 0, 0, 0), qi(0, 0, 0, 1), qi(0, -1, 0, 0)],
        vec![qi(0, 0, 0, -1), qi(2, 0, 0, 0), qi(0, 0, 1, 0)],
        vec![qi(0, 1, 0, 0), qi(0, 0, -1, 0), qi(1, 0, 0, 0)],
    ])
}

/// Right-hand side column (j, −k, i) paired with [`hermitian_rank2_3x3`].
pub fn rank2_rhs() -> M {
    M::col_vector(vec![qi(0, 0, 1, 0), qi(0, 0, 0, -1), qi(0, 1, 0, 0)])
}

/// Invertible Hermitian 2×2 with determinant 1.
pub fn hermitian_2x2_unit_det() -> M {
    M::from_rows(vec![
        vec![qi(1, 0, 0, 0), qi(0, 0, 0, 1)],
        vec![qi(0, 0, 0, -1), qi(2, 0, 0, 0)],
    ])
}

/// Linear drive column (i, −k, j): the coefficient of t in the source term
/// paired with [`dense_similar_3x3`] in the line-ansatz worked example.
pub fn linear_drive_column() -> M {
    M::col_vector(vec![qi(0, 1, 0, 0), qi(0, 0, 0, -1), qi(0, 0, 1, 0)])
}

/// Reference particular solution x(t) = c₁·t + c₀ of the system
/// x′ = A·x + b·t with A = [`dense_similar_3x3`] and b =
/// [`linear_drive_column`], as floats accurate to about 1e−2 (the published
/// coefficients are rounded to two decimals).
pub fn linear_drive_reference_line() -> (QMatrix<f64>, QMatrix<f64>) {
    let qf = |w: f64, x: f64, y: f64, z: f64| Quaternion::new(w, x, y, z);
    let c1 = QMatrix::col_vector(vec![
        qf(2.4, 0.7, 1.2, 0.1),
        qf(-1.35, 2.45, -0.55, 1.35),
        qf(0.75, -0.45, -2.25, 1.65),
    ]);
    let c0 = QMatrix::col_vector(vec![
        qf(-0.06, 1.57, -0.18, 0.71),
        qf(-2.11, 0.02, -0.83, -0.44),
        qf(-0.6, -0.57, 0.3, 2.49),
    ]);
    (c1, c0)
}

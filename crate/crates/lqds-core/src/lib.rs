//! Column-row determinant calculus for quaternion matrices and closed-form
//! solvers for first-order linear quaternion differential systems with
//! constant coefficients.
//!
//! Quaternion multiplication is not commutative, so there is no single
//! determinant; this crate implements the noncommutative row and column
//! determinants (an n!-term expansion over permutations written in a
//! canonical cycle normal form), the real determinant of Hermitian
//! matrices built from them, Cramer-style inverses and solvers, a
//! determinantal Drazin inverse for singular coefficient matrices, right
//! eigenvalue computation for normal matrices, quaternion matrix
//! exponentials, and closed-form solutions of x′ = Ax + b / x′ = xA + b
//! with residual and Runge–Kutta cross-checks.
//!
//! Everything is generic over two scalar backends: exact arbitrary-precision
//! rationals (no rounding anywhere) and IEEE doubles with fixed, reproducible
//! summation orders. With the default `parallel` feature the n!-term
//! enumerations fan out across a rayon pool and are merged back in a fixed
//! order, so float results are bit-for-bit identical to the sequential path.

pub mod cramer;
pub mod det;
pub mod drazin;
pub mod eigen;
pub mod error;
pub mod lqds;
pub mod matexp;
pub mod matrix;
pub mod oracle;
pub mod poly;
pub mod quaternion;
pub mod samples;
pub mod scalar;
mod squares;

pub use cramer::{cramer_left, cramer_right, inv_general, inv_hermitian};
pub use drazin::{drazin_det, drazin_verify, matrix_index, DrazinResult};
pub use eigen::{
    hermitian_eigs, is_right_eigenpair, normal_diagonalize, real_roots, transported_eigs,
    SpectralDecomposition,
};
pub use det::{
    cdet, char_poly_hermitian, ddet, det_hermitian, k_subsets, minor_sum, minor_sum_anchored_col,
    minor_sum_anchored_row, rdet, ENUM_CAP,
};
pub use error::{Error, Result};
pub use lqds::{
    general_solution_diagonalizable, general_solution_singular, hom_solution,
    particular_invertible, particular_singular, poly_residual, residual, solve_ivp,
    ClosedFormSolution, HomClosure, HomPart, LqdsProblem, PolyVec,
};
pub use matexp::{mat_exp, mat_exp_diag, ExpMethod, ExpResult};
pub use oracle::{compare, rk4_integrate, RealEmbedding};
pub use matrix::{
    gram_schmidt_right, inner_left, inner_right, invert, null_space_right, phase_equivalent,
    qrank, row_reduce, solve_left_unique, solve_right_unique, CMatrix, QMatrix,
};
pub use poly::RealPolynomial;
pub use quaternion::{qexp, scalar_lqde_solve, Quaternion, Side};
pub use scalar::{Rat, Scalar};

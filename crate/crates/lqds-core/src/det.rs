//! Row and column determinants of quaternion matrices.
//!
//! Quaternion multiplication does not commute, so the classical determinant
//! has no single analogue. Instead, for each row index i there is a *row
//! determinant* `rdet(A, i)` and for each column index j a *column
//! determinant* `cdet(A, j)`: sums over all n! permutations of signed entry
//! products written in a canonical cycle order.
//!
//! For a permutation σ, decompose it into disjoint cycles. Each cycle is
//! written starting from its *lead* — the anchor index for the cycle
//! containing it, the minimal element for every other cycle — and contributes
//! the left-to-right chain a[x, σ(x)] following the cycle from its lead. The
//! row determinant multiplies the anchored cycle's chain first and the
//! remaining chains in increasing order of lead; the column determinant
//! multiplies the non-anchored chains in decreasing order of lead and ends
//! with the anchored chain. The term's sign is (−1)^(n−r) where r counts the
//! cycles of σ (fixed points included) — the ordinary permutation sign.
//!
//! On Hermitian matrices all n row determinants and all n column determinants
//! coincide and are real; that common value is the determinant
//! ([`det_hermitian`]), and `det(A*A)` defines the *double determinant*
//! ([`ddet`]) which vanishes exactly when the columns are right-linearly
//! dependent.
//!
//! Everything here enumerates n! terms, so matrix size is capped at
//! [`ENUM_CAP`]. With the `parallel` feature the enumeration fans out over a
//! rayon pool; terms are collected back in lexicographic permutation order
//! and summed sequentially, so float results are bit-for-bit identical to
//! the sequential build.

use crate::error::{Error, Result};
use crate::matrix::{QMatrix, PREDICATE_TOL};
use crate::poly::RealPolynomial;
use crate::quaternion::Quaternion;
use crate::scalar::Scalar;

/// Largest matrix size accepted by the n!-term enumerations.
pub const ENUM_CAP: usize = 8;

/// Term-count threshold below which the enumeration stays sequential even
/// with the `parallel` feature (rayon overhead dwarfs 5!-term sums).
#[cfg(feature = "parallel")]
const PAR_THRESHOLD: usize = 720;

pub(crate) fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Permutation at `idx` (0 ≤ idx < n!) in lexicographic one-line order.
fn permutation_at(n: usize, mut idx: usize, out: &mut Vec<usize>) {
    out.clear();
    let mut avail: Vec<usize> = (0..n).collect();
    let mut block = factorial(n);
    for pos in (1..=n).rev() {
        block /= pos; // (pos−1)!
        out.push(avail.remove(idx / block));
        idx %= block;
    }
}

/// Which side anchors the cycle normal form.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum DetSide {
    Row,
    Col,
}

/// Cycles of σ in the canonical order for the given side and anchor, each
/// written starting at its lead. Returns the ordered cycles; their count is
/// `r` in the sign (−1)^(n−r).
fn cycle_normal_form(sigma: &[usize], anchor: usize, side: DetSide) -> Vec<Vec<usize>> {
    let n = sigma.len();
    let mut seen = vec![false; n];
    let mut anchored: Option<Vec<usize>> = None;
    // Scanning starts ascending, so each new cycle is discovered at its
    // minimal element: `others` is already ascending by lead.
    let mut others: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut x = sigma[start];
        while x != start {
            seen[x] = true;
            cycle.push(x);
            x = sigma[x];
        }
        if let Some(p) = cycle.iter().position(|&e| e == anchor) {
            cycle.rotate_left(p);
            anchored = Some(cycle);
        } else {
            others.push(cycle);
        }
    }
    let anchored = anchored.expect("anchor belongs to some cycle");
    let mut ordered = Vec::with_capacity(others.len() + 1);
    match side {
        DetSide::Row => {
            ordered.push(anchored);
            ordered.extend(others);
        }
        DetSide::Col => {
            ordered.extend(others.into_iter().rev());
            ordered.push(anchored);
        }
    }
    ordered
}

/// (−1)^(n−r) · (ordered chain product) for one permutation.
fn signed_monomial<S: Scalar>(
    a: &QMatrix<S>,
    sigma: &[usize],
    anchor: usize,
    side: DetSide,
) -> Quaternion<S> {
    let n = sigma.len();
    let cycles = cycle_normal_form(sigma, anchor, side);
    let mut prod = Quaternion::one();
    for cycle in &cycles {
        for (t, &x) in cycle.iter().enumerate() {
            let next = cycle[(t + 1) % cycle.len()]; // σ(x)
            prod = &prod * a.at(x, next);
        }
    }
    if (n - cycles.len()) % 2 == 1 {
        -prod
    } else {
        prod
    }
}

/// Sum of `f(idx)` over `0..count` in index order. With the `parallel`
/// feature and enough terms the map fans out over rayon, but terms are
/// collected back in index order and folded sequentially, so the float
/// summation order — and therefore the bits of the result — never changes.
pub(crate) fn indexed_sum<S, F>(count: usize, f: F) -> Quaternion<S>
where
    S: Scalar,
    F: Fn(usize) -> Quaternion<S> + Send + Sync,
{
    #[cfg(feature = "parallel")]
    let terms: Vec<Quaternion<S>> = if count >= PAR_THRESHOLD {
        use rayon::prelude::*;
        (0..count).into_par_iter().map(|i| f(i)).collect()
    } else {
        (0..count).map(|i| f(i)).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let terms: Vec<Quaternion<S>> = (0..count).map(|i| f(i)).collect();

    let mut acc = Quaternion::zero();
    for t in &terms {
        acc += t;
    }
    acc
}

fn require_square_capped<S: Scalar>(a: &QMatrix<S>) -> Result<usize> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    if n > ENUM_CAP {
        return Err(Error::SizeCapExceeded { n, cap: ENUM_CAP });
    }
    Ok(n)
}

fn require_index(index: usize, dim: usize) -> Result<()> {
    if index >= dim {
        return Err(Error::IndexOutOfRange { index, dim });
    }
    Ok(())
}

fn det_side<S: Scalar>(a: &QMatrix<S>, anchor: usize, side: DetSide) -> Result<Quaternion<S>> {
    let n = require_square_capped(a)?;
    require_index(anchor, n)?;
    Ok(indexed_sum(factorial(n), move |idx| {
        let mut sigma = Vec::with_capacity(n);
        permutation_at(n, idx, &mut sigma);
        signed_monomial(a, &sigma, anchor, side)
    }))
}

/// Row determinant anchored at row `i` (0-based).
pub fn rdet<S: Scalar>(a: &QMatrix<S>, i: usize) -> Result<Quaternion<S>> {
    det_side(a, i, DetSide::Row)
}

/// Column determinant anchored at column `j` (0-based).
pub fn cdet<S: Scalar>(a: &QMatrix<S>, j: usize) -> Result<Quaternion<S>> {
    det_side(a, j, DetSide::Col)
}

/// Absolute tolerance for n!-term float sums on this matrix: 1e−10 scaled
/// by the worst-case term magnitude.
fn float_sum_tol<S: Scalar>(a: &QMatrix<S>) -> f64 {
    let n = a.rows();
    1e-10 * a.scale_f64().max(1.0).powi(n as i32)
}

/// Determinant of a Hermitian matrix: the common value of all n row and n
/// column determinants, which is real. All 2n are computed and checked to
/// agree (exactly on the exact backend, within 1e−10·scaleⁿ on floats);
/// their shared imaginary part must vanish to the same tolerance.
pub fn det_hermitian<S: Scalar>(a: &QMatrix<S>) -> Result<S> {
    require_square_capped(a)?;
    if let Some((row, col)) = a.hermitian_violation(PREDICATE_TOL) {
        return Err(Error::NotHermitian { row, col });
    }
    let n = a.rows();
    let tol = float_sum_tol(a);
    let reference = rdet(a, 0)?;
    for i in 1..n {
        let d = rdet(a, i)?;
        if !d.approx_eq(&reference, tol) {
            return Err(Error::InconsistentRepresentation {
                operation: "det_hermitian (row determinants disagree)",
            });
        }
    }
    for j in 0..n {
        let d = cdet(a, j)?;
        if !d.approx_eq(&reference, tol) {
            return Err(Error::InconsistentRepresentation {
                operation: "det_hermitian (column determinant disagrees)",
            });
        }
    }
    let real_ok = if S::EXACT {
        reference.is_real()
    } else {
        reference.vector_part().abs_f64() <= tol
    };
    if !real_ok {
        return Err(Error::InconsistentRepresentation {
            operation: "det_hermitian (value not real)",
        });
    }
    Ok(reference.real_part())
}

/// Double determinant det(A*A) of a square matrix; zero exactly when the
/// columns are right-linearly dependent. Checked against det(AA*).
pub fn ddet<S: Scalar>(a: &QMatrix<S>) -> Result<S> {
    require_square_capped(a)?;
    let adj = a.conj_transpose();
    let left = det_hermitian(&(&adj * a))?;
    let right = det_hermitian(&(a * &adj))?;
    let tol = float_sum_tol(&(&adj * a));
    if !left.approx_eq(&right, tol) {
        return Err(Error::InconsistentRepresentation {
            operation: "ddet (det A*A vs det AA*)",
        });
    }
    Ok(left)
}

/// Strictly increasing k-subsets of {0, …, n−1} in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut current: Vec<usize> = (0..k).collect();
    loop {
        out.push(current.clone());
        // Advance to the next combination.
        let mut pos = k;
        while pos > 0 {
            pos -= 1;
            if current[pos] != pos + n - k {
                break;
            }
            if pos == 0 {
                return out;
            }
        }
        if current[pos] == pos + n - k {
            return out;
        }
        current[pos] += 1;
        for t in pos + 1..k {
            current[t] = current[t - 1] + 1;
        }
    }
}

/// Σ over all order-r principal submatrices H[β,β] of their Hermitian
/// determinants (a real number).
pub fn minor_sum<S: Scalar>(h: &QMatrix<S>, r: usize) -> Result<S> {
    let n = require_square_capped(h)?;
    if r == 0 || r > n {
        return Err(Error::IndexOutOfRange { index: r, dim: n });
    }
    if let Some((row, col)) = h.hermitian_violation(PREDICATE_TOL) {
        return Err(Error::NotHermitian { row, col });
    }
    let mut acc = S::zero();
    for beta in k_subsets(n, r) {
        acc += det_hermitian(&h.principal(&beta))?;
    }
    Ok(acc)
}

/// Anchored column minor sum: replace column `anchor` of A by `replacement`,
/// then sum `cdet` at the anchor's local position over all order-r principal
/// submatrices A[β,β] with anchor ∈ β.
pub fn minor_sum_anchored_col<S: Scalar>(
    a: &QMatrix<S>,
    r: usize,
    anchor: usize,
    replacement: &[Quaternion<S>],
) -> Result<Quaternion<S>> {
    let n = require_square_capped(a)?;
    require_index(anchor, n)?;
    if r == 0 || r > n {
        return Err(Error::IndexOutOfRange { index: r, dim: n });
    }
    if replacement.len() != n {
        return Err(Error::ShapeMismatch {
            operation: "minor_sum_anchored_col",
            expected: format!("{n} entries"),
            got: format!("{} entries", replacement.len()),
        });
    }
    let replaced = a.replace_col(anchor, replacement);
    let mut acc = Quaternion::zero();
    for beta in k_subsets(n, r) {
        let Some(local) = beta.iter().position(|&b| b == anchor) else {
            continue;
        };
        acc += &cdet(&replaced.principal(&beta), local)?;
    }
    Ok(acc)
}

/// Anchored row minor sum: replace row `anchor` of A by `replacement`, then
/// sum `rdet` at the anchor's local position over all order-r principal
/// submatrices A[β,β] with anchor ∈ β.
pub fn minor_sum_anchored_row<S: Scalar>(
    a: &QMatrix<S>,
    r: usize,
    anchor: usize,
    replacement: &[Quaternion<S>],
) -> Result<Quaternion<S>> {
    let n = require_square_capped(a)?;
    require_index(anchor, n)?;
    if r == 0 || r > n {
        return Err(Error::IndexOutOfRange { index: r, dim: n });
    }
    if replacement.len() != n {
        return Err(Error::ShapeMismatch {
            operation: "minor_sum_anchored_row",
            expected: format!("{n} entries"),
            got: format!("{} entries", replacement.len()),
        });
    }
    let replaced = a.replace_row(anchor, replacement);
    let mut acc = Quaternion::zero();
    for beta in k_subsets(n, r) {
        let Some(local) = beta.iter().position(|&b| b == anchor) else {
            continue;
        };
        acc += &rdet(&replaced.principal(&beta), local)?;
    }
    Ok(acc)
}

/// Characteristic polynomial of a Hermitian matrix:
/// p(t) = tⁿ − d₁tⁿ⁻¹ + … + (−1)ⁿ dₙ with dₖ the sum of its order-k
/// principal minors (so d₁ is the trace and dₙ the determinant). Its roots
/// are real and are the eigenvalues.
pub fn char_poly_hermitian<S: Scalar>(a: &QMatrix<S>) -> Result<RealPolynomial<S>> {
    let n = require_square_capped(a)?;
    if let Some((row, col)) = a.hermitian_violation(PREDICATE_TOL) {
        return Err(Error::NotHermitian { row, col });
    }
    let mut coeffs = vec![S::zero(); n + 1];
    coeffs[n] = S::one();
    for k in 1..=n {
        let d = minor_sum(a, k)?;
        coeffs[n - k] = if k % 2 == 1 { -d } else { d };
    }
    Ok(RealPolynomial::new(coeffs))
}

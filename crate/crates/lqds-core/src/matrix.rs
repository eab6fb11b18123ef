use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::quaternion::Quaternion;
use crate::scalar::Scalar;

/// Default relative tolerance for float-backend structural predicates
/// (Hermitian / normal / unitary checks). Exact backend compares literally.
pub const PREDICATE_TOL: f64 = 1e-9;

/// Default relative pivot tolerance for float-backend row reduction.
pub const PIVOT_TOL: f64 = 1e-10;

/// Dense quaternion matrix, row-major.
///
/// Column vectors are n×1 matrices and row vectors 1×n, so the same shape
/// checks cover vectors. Right-module conventions apply throughout: columns
/// combine with scalars on the right, coefficients act from the left.
#[derive(Clone, PartialEq)]
pub struct QMatrix<S: Scalar> {
    rows: usize,
    cols: usize,
    data: Vec<Quaternion<S>>,
}

impl<S: Scalar> QMatrix<S> {
    pub fn new(rows: usize, cols: usize, data: Vec<Quaternion<S>>) -> Self {
        assert_eq!(data.len(), rows * cols, "data length must match shape");
        assert!(rows > 0 && cols > 0, "shapes must be positive");
        QMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::new(rows, cols, vec![Quaternion::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Quaternion::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Quaternion<S>>>) -> Self {
        let r = rows.len();
        assert!(r > 0, "need at least one row");
        let c = rows[0].len();
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Quaternion<S>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self::new(rows, cols, data)
    }

    /// n×1 column vector.
    pub fn col_vector(entries: Vec<Quaternion<S>>) -> Self {
        let n = entries.len();
        Self::new(n, 1, entries)
    }

    /// 1×n row vector.
    pub fn row_vector(entries: Vec<Quaternion<S>>) -> Self {
        let n = entries.len();
        Self::new(1, n, entries)
    }

    pub fn diagonal(entries: Vec<Quaternion<S>>) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, q) in entries.into_iter().enumerate() {
            m.set(i, i, q);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_vector(&self) -> bool {
        self.rows == 1 || self.cols == 1
    }

    /// Entries of a row or column vector in order.
    pub fn vector_entries(&self) -> &[Quaternion<S>] {
        assert!(self.is_vector(), "not a vector");
        &self.data
    }

    pub fn at(&self, i: usize, j: usize) -> &Quaternion<S> {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Quaternion<S>) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> Vec<Quaternion<S>> {
        (0..self.cols).map(|j| self.at(i, j).clone()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<Quaternion<S>> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn map(&self, f: impl Fn(&Quaternion<S>) -> Quaternion<S>) -> Self {
        Self::new(self.rows, self.cols, self.data.iter().map(f).collect())
    }

    /// Conjugate transpose A*.
    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.at(j, i).conj())
    }

    /// Real-scalar multiple.
    pub fn scale(&self, s: &S) -> Self {
        self.map(|q| q.scale(s))
    }

    /// Left quaternion-scalar multiple q·A.
    pub fn scale_quat_left(&self, q: &Quaternion<S>) -> Self {
        self.map(|a| q * a)
    }

    /// Right quaternion-scalar multiple A·q.
    pub fn scale_quat_right(&self, q: &Quaternion<S>) -> Self {
        self.map(|a| a * q)
    }

    pub fn trace(&self) -> Quaternion<S> {
        assert!(self.is_square(), "trace of a non-square matrix");
        let mut acc = Quaternion::zero();
        for i in 0..self.rows {
            acc += self.at(i, i);
        }
        acc
    }

    pub fn frobenius_norm_sqr(&self) -> S {
        let mut acc = S::zero();
        for q in &self.data {
            acc += q.norm_sqr();
        }
        acc
    }

    /// Largest entry norm (f64 view), the scale used by relative tolerances.
    pub fn scale_f64(&self) -> f64 {
        self.data
            .iter()
            .map(|q| q.abs_f64())
            .fold(0.0, f64::max)
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = &acc * self;
        }
        Ok(acc)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self
                .data
                .iter()
                .zip(&other.data)
                .all(|(a, b)| a.approx_eq(b, tol))
    }

    pub fn is_zero_matrix(&self, tol: f64) -> bool {
        self.data
            .iter()
            .all(|q| q.norm_sqr().is_negligible(tol * tol))
    }

    /// First entry where A differs from A* (None when Hermitian). Float
    /// comparison is relative to the matrix scale.
    pub fn hermitian_violation(&self, tol: f64) -> Option<(usize, usize)> {
        if !self.is_square() {
            return Some((0, 0));
        }
        let scaled_tol = tol * self.scale_f64().max(1.0);
        for i in 0..self.rows {
            for j in i..self.cols {
                if !self.at(i, j).approx_eq(&self.at(j, i).conj(), scaled_tol) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_violation(tol).is_none()
    }

    /// A*A = AA* (within tol·scale² on floats).
    pub fn is_normal(&self, tol: f64) -> bool {
        if !self.is_square() {
            return false;
        }
        let adj = self.conj_transpose();
        let left = &adj * self;
        let right = self * &adj;
        let scale = self.scale_f64().max(1.0);
        left.approx_eq(&right, tol * scale * scale)
    }

    /// A*A = I (columns right-orthonormal).
    pub fn is_unitary(&self, tol: f64) -> bool {
        if !self.is_square() {
            return false;
        }
        let prod = &self.conj_transpose() * self;
        prod.approx_eq(&Self::identity(self.rows), tol * self.scale_f64().max(1.0))
    }

    /// Rows and columns restricted to the given index lists (strictly
    /// increasing for principal submatrices, but any order is honored).
    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> Self {
        Self::from_fn(row_idx.len(), col_idx.len(), |i, j| {
            self.at(row_idx[i], col_idx[j]).clone()
        })
    }

    /// Principal submatrix A[β, β].
    pub fn principal(&self, beta: &[usize]) -> Self {
        self.submatrix(beta, beta)
    }

    /// Copy with column j replaced by the given entries.
    pub fn replace_col(&self, j: usize, entries: &[Quaternion<S>]) -> Self {
        assert_eq!(entries.len(), self.rows, "replacement column length");
        let mut out = self.clone();
        for i in 0..self.rows {
            out.set(i, j, entries[i].clone());
        }
        out
    }

    /// Copy with row i replaced by the given entries.
    pub fn replace_row(&self, i: usize, entries: &[Quaternion<S>]) -> Self {
        assert_eq!(entries.len(), self.cols, "replacement row length");
        let mut out = self.clone();
        for j in 0..self.cols {
            out.set(i, j, entries[j].clone());
        }
        out
    }

    /// Copy with row r and column c deleted.
    pub fn delete_row_col(&self, r: usize, c: usize) -> Self {
        let rows: Vec<usize> = (0..self.rows).filter(|&i| i != r).collect();
        let cols: Vec<usize> = (0..self.cols).filter(|&j| j != c).collect();
        self.submatrix(&rows, &cols)
    }

    pub fn to_f64(&self) -> QMatrix<f64> {
        QMatrix::new(
            self.rows,
            self.cols,
            self.data.iter().map(Quaternion::to_f64).collect(),
        )
    }

    /// Complex adjoint χ(A): writing each entry q = a + b·j with complex
    /// a = w + xi and b = y + zi gives the 2n×2m complex block matrix
    /// [[A₁, A₂], [−conj(A₂), conj(A₁)]]. The map is an algebra
    /// homomorphism, which the tests rely on: ranks double and Hermitian
    /// determinants match.
    pub fn complex_adjoint(&self) -> CMatrix<S> {
        let (r, c) = (self.rows, self.cols);
        CMatrix::from_fn(2 * r, 2 * c, |i, j| {
            let q = self.at(i % r, j % c);
            match (i < r, j < c) {
                (true, true) => Complex::new(q.w.clone(), q.x.clone()),
                (true, false) => Complex::new(q.y.clone(), q.z.clone()),
                (false, true) => Complex::new(-q.y.clone(), q.z.clone()),
                (false, false) => Complex::new(q.w.clone(), -q.x.clone()),
            }
        })
    }
}

impl<S: Scalar> Index<(usize, usize)> for QMatrix<S> {
    type Output = Quaternion<S>;
    fn index(&self, (i, j): (usize, usize)) -> &Quaternion<S> {
        self.at(i, j)
    }
}

impl<S: Scalar> fmt::Debug for QMatrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| format!("{}", self.at(i, j)))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<S: Scalar> Add for &QMatrix<S> {
    type Output = QMatrix<S>;
    fn add(self, rhs: &QMatrix<S>) -> QMatrix<S> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        QMatrix::new(
            self.rows,
            self.cols,
            self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        )
    }
}

impl<S: Scalar> Sub for &QMatrix<S> {
    type Output = QMatrix<S>;
    fn sub(self, rhs: &QMatrix<S>) -> QMatrix<S> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        QMatrix::new(
            self.rows,
            self.cols,
            self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        )
    }
}

impl<S: Scalar> Mul for &QMatrix<S> {
    type Output = QMatrix<S>;
    fn mul(self, rhs: &QMatrix<S>) -> QMatrix<S> {
        assert_eq!(self.cols, rhs.rows, "inner dimension mismatch");
        QMatrix::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = Quaternion::zero();
            for l in 0..self.cols {
                acc += &(self.at(i, l) * rhs.at(l, j));
            }
            acc
        })
    }
}

impl<S: Scalar> Neg for &QMatrix<S> {
    type Output = QMatrix<S>;
    fn neg(self) -> QMatrix<S> {
        self.map(|q| -q)
    }
}

/// ⟨x, y⟩ᵣ = Σ conj(yₗ)·xₗ — the right (column-space) inner product.
pub fn inner_right<S: Scalar>(x: &QMatrix<S>, y: &QMatrix<S>) -> Quaternion<S> {
    assert!(x.is_vector() && y.is_vector(), "inner product of vectors");
    let xs = x.vector_entries();
    let ys = y.vector_entries();
    assert_eq!(xs.len(), ys.len(), "length mismatch");
    let mut acc = Quaternion::zero();
    for (xe, ye) in xs.iter().zip(ys) {
        acc += &(&ye.conj() * xe);
    }
    acc
}

/// ⟨x, y⟩ₗ = Σ xₗ·conj(yₗ) — the left (row-space) inner product.
pub fn inner_left<S: Scalar>(x: &QMatrix<S>, y: &QMatrix<S>) -> Quaternion<S> {
    assert!(x.is_vector() && y.is_vector(), "inner product of vectors");
    let xs = x.vector_entries();
    let ys = y.vector_entries();
    assert_eq!(xs.len(), ys.len(), "length mismatch");
    let mut acc = Quaternion::zero();
    for (xe, ye) in xs.iter().zip(ys) {
        acc += &(xe * &ye.conj());
    }
    acc
}

/// Outcome of Gauss–Jordan elimination by left row operations.
pub struct Reduced<S: Scalar> {
    /// Reduced row-echelon form.
    pub rref: QMatrix<S>,
    /// Pivot column of each pivot row, in order.
    pub pivot_cols: Vec<usize>,
}

impl<S: Scalar> Reduced<S> {
    pub fn rank(&self) -> usize {
        self.pivot_cols.len()
    }
}

/// Gauss–Jordan elimination with left row operations (which preserve right
/// null spaces and right-hand solution sets). Exact backend: first nonzero
/// pivot; float: largest remaining pivot, zero below `PIVOT_TOL`·scale.
pub fn row_reduce<S: Scalar>(a: &QMatrix<S>) -> Reduced<S> {
    let mut m = a.clone();
    let (rows, cols) = (m.rows(), m.cols());
    let scale = m.scale_f64().max(1.0);
    let tol_sq = (PIVOT_TOL * scale) * (PIVOT_TOL * scale);
    let mut pivot_cols = Vec::new();
    let mut pr = 0;
    for pc in 0..cols {
        if pr == rows {
            break;
        }
        // Pick the pivot row.
        let pivot_row = if S::EXACT {
            (pr..rows).find(|&r| !m.at(r, pc).is_zero())
        } else {
            (pr..rows)
                .map(|r| (r, m.at(r, pc).norm_sqr().to_f64()))
                .filter(|(_, n)| *n > tol_sq)
                .max_by(|a, b| a.1.partial_cmp(&b.1).expect("finite norms"))
                .map(|(r, _)| r)
        };
        let Some(prow) = pivot_row else { continue };
        // Swap into place.
        if prow != pr {
            for j in 0..cols {
                let tmp = m.at(pr, j).clone();
                m.set(pr, j, m.at(prow, j).clone());
                m.set(prow, j, tmp);
            }
        }
        // Normalize: row ← pivot⁻¹ · row.
        let inv = m
            .at(pr, pc)
            .inverse()
            .expect("pivot checked nonzero above");
        for j in 0..cols {
            m.set(pr, j, &inv * m.at(pr, j));
        }
        // Eliminate the column everywhere else: rowᵣ ← rowᵣ − a_{r,pc}·row_pr.
        for r in 0..rows {
            if r == pr || m.at(r, pc).is_zero() {
                continue;
            }
            let factor = m.at(r, pc).clone();
            for j in 0..cols {
                let delta = &factor * m.at(pr, j);
                let val = m.at(r, j) - &delta;
                m.set(r, j, val);
            }
        }
        pivot_cols.push(pc);
        pr += 1;
    }
    Reduced { rref: m, pivot_cols }
}

/// Rank over the quaternions (left row rank = right column rank).
pub fn qrank<S: Scalar>(a: &QMatrix<S>) -> usize {
    row_reduce(a).rank()
}

/// Right null space basis of A: vectors v with A·v = 0, one per free
/// column of the reduced form, each with a 1 in its free slot.
pub fn null_space_right<S: Scalar>(a: &QMatrix<S>) -> Vec<QMatrix<S>> {
    let reduced = row_reduce(a);
    let n = a.cols();
    let pivot_cols = &reduced.pivot_cols;
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !pivot_cols.contains(c)) {
        let mut v = vec![Quaternion::zero(); n];
        v[free] = Quaternion::one();
        for (row, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -reduced.rref.at(row, free);
        }
        basis.push(QMatrix::col_vector(v));
    }
    basis
}

/// Unique solution of A·x = b for square invertible A (column b).
pub fn solve_right_unique<S: Scalar>(a: &QMatrix<S>, b: &QMatrix<S>) -> Result<QMatrix<S>> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if b.rows() != a.rows() || b.cols() != 1 {
        return Err(Error::ShapeMismatch {
            operation: "solve_right_unique",
            expected: format!("{}x1", a.rows()),
            got: format!("{}x{}", b.rows(), b.cols()),
        });
    }
    let n = a.rows();
    let mut aug = QMatrix::zeros(n, n + 1);
    for i in 0..n {
        for j in 0..n {
            aug.set(i, j, a.at(i, j).clone());
        }
        aug.set(i, n, b.at(i, 0).clone());
    }
    let reduced = row_reduce(&aug);
    if reduced.pivot_cols.len() < n || reduced.pivot_cols.iter().any(|&c| c >= n) {
        return Err(Error::Singular {
            operation: "solve_right_unique",
        });
    }
    Ok(QMatrix::col_vector(
        (0..n).map(|i| reduced.rref.at(i, n).clone()).collect(),
    ))
}

/// Unique solution of x·A = b for square invertible A (row b), via the
/// adjoint identity (x·A)* = A*·x*.
pub fn solve_left_unique<S: Scalar>(a: &QMatrix<S>, b: &QMatrix<S>) -> Result<QMatrix<S>> {
    if b.rows() != 1 {
        return Err(Error::ShapeMismatch {
            operation: "solve_left_unique",
            expected: "1xn row".into(),
            got: format!("{}x{}", b.rows(), b.cols()),
        });
    }
    let b_star = b.conj_transpose();
    let x_star = solve_right_unique(&a.conj_transpose(), &b_star)?;
    Ok(x_star.conj_transpose())
}

/// Inverse by Gauss–Jordan on [A | I]. This is the row-reduction oracle the
/// determinantal inverses are cross-checked against.
pub fn invert<S: Scalar>(a: &QMatrix<S>) -> Result<QMatrix<S>> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let mut aug = QMatrix::zeros(n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug.set(i, j, a.at(i, j).clone());
        }
        aug.set(i, n + i, Quaternion::one());
    }
    let reduced = row_reduce(&aug);
    if reduced.pivot_cols.len() < n || reduced.pivot_cols.iter().any(|&c| c >= n) {
        return Err(Error::Singular { operation: "invert" });
    }
    Ok(QMatrix::from_fn(n, n, |i, j| {
        reduced.rref.at(i, n + j).clone()
    }))
}

/// Right Gram–Schmidt: orthonormalizes columns against ⟨·,·⟩ᵣ. Scalars
/// multiply on the right, so spans as right subspaces are preserved. The
/// exact backend normalizes with a rational quaternion of reciprocal
/// squared norm (four-square decomposition), keeping ⟨eᵢ,eⱼ⟩ᵣ = δᵢⱼ literal.
pub fn gram_schmidt_right<S: Scalar>(vectors: &[QMatrix<S>]) -> Result<Vec<QMatrix<S>>> {
    let mut out: Vec<QMatrix<S>> = Vec::with_capacity(vectors.len());
    for (idx, v) in vectors.iter().enumerate() {
        assert!(v.cols() == 1, "gram_schmidt_right expects column vectors");
        let mut u = v.clone();
        for e in &out {
            // proj_e(u) = e · ⟨u, e⟩ᵣ  (unit e, so no normalizing division)
            let coeff = inner_right(&u, e);
            u = &u - &e.scale_quat_right(&coeff);
        }
        // Growth control: rescale to primitive entries before normalizing.
        let mut flat: Vec<S> = Vec::with_capacity(4 * u.rows());
        for q in u.vector_entries() {
            flat.extend([q.w.clone(), q.x.clone(), q.y.clone(), q.z.clone()]);
        }
        let lambda = S::primitive_scale(&flat);
        u = u.scale(&lambda);

        let norm_sq = inner_right(&u, &u).real_part();
        let scale = v.scale_f64().max(1.0);
        if norm_sq.is_negligible(PIVOT_TOL * PIVOT_TOL * scale * scale) {
            return Err(Error::DependentInput { index: idx });
        }
        let [a, b, c, d] = norm_sq.recip_norm_quaternion()?;
        let unit = Quaternion::new(a, b, c, d);
        out.push(u.scale_quat_right(&unit));
    }
    Ok(out)
}

/// Whether w equals v·u for some unit quaternion u (same right ray). The
/// comparison is division-free in spirit: u is recovered from the first
/// non-negligible component and verified to be unit and consistent.
pub fn phase_equivalent<S: Scalar>(v: &QMatrix<S>, w: &QMatrix<S>, tol: f64) -> bool {
    if v.rows() != w.rows() || v.cols() != 1 || w.cols() != 1 {
        return false;
    }
    let scale = v.scale_f64().max(w.scale_f64()).max(1.0);
    let pivot = (0..v.rows()).find(|&i| !v.at(i, 0).norm_sqr().is_negligible(tol * tol * scale * scale));
    let Some(p) = pivot else {
        return w.is_zero_matrix(tol * scale);
    };
    let Ok(vp_inv) = v.at(p, 0).inverse() else {
        return false;
    };
    let u = &vp_inv * w.at(p, 0);
    if !u.norm_sqr().approx_eq(&S::one(), tol) {
        return false;
    }
    v.scale_quat_right(&u).approx_eq(w, tol * scale)
}

/// Complex matrix used for the adjoint χ(A) cross-checks.
#[derive(Clone, PartialEq)]
pub struct CMatrix<S: Scalar> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<S>>,
}

impl<S: Scalar> CMatrix<S> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex<S>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Complex<S> {
        &self.data[i * self.cols + j]
    }

    fn set(&mut self, i: usize, j: usize, v: Complex<S>) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "inner dimension mismatch");
        Self::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = Complex::new(S::zero(), S::zero());
            for l in 0..self.cols {
                acc = acc + self.at(i, l).clone() * rhs.at(l, j).clone();
            }
            acc
        })
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data.iter().zip(&other.data).all(|(a, b)| {
                a.re.approx_eq(&b.re, tol) && a.im.approx_eq(&b.im, tol)
            })
    }

    fn norm_sqr_f64(c: &Complex<S>) -> f64 {
        let re = c.re.to_f64();
        let im = c.im.to_f64();
        re * re + im * im
    }

    /// Rank by Gaussian elimination (same pivot policy as the quaternion
    /// reduction).
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let scale = m
            .data
            .iter()
            .map(Self::norm_sqr_f64)
            .fold(0.0, f64::max)
            .max(1.0);
        let tol_sq = PIVOT_TOL * PIVOT_TOL * scale;
        let mut rank = 0;
        for pc in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let pivot_row = if S::EXACT {
                (rank..m.rows).find(|&r| !m.at(r, pc).re.is_zero() || !m.at(r, pc).im.is_zero())
            } else {
                (rank..m.rows)
                    .map(|r| (r, Self::norm_sqr_f64(m.at(r, pc))))
                    .filter(|(_, n)| *n > tol_sq)
                    .max_by(|a, b| a.1.partial_cmp(&b.1).expect("finite"))
                    .map(|(r, _)| r)
            };
            let Some(prow) = pivot_row else { continue };
            if prow != rank {
                for j in 0..m.cols {
                    let tmp = m.at(rank, j).clone();
                    let other = m.at(prow, j).clone();
                    m.set(rank, j, other);
                    m.set(prow, j, tmp);
                }
            }
            let pivot = m.at(rank, pc).clone();
            for r in rank + 1..m.rows {
                let factor = m.at(r, pc).clone() / pivot.clone();
                for j in pc..m.cols {
                    let val = m.at(r, j).clone() - factor.clone() * m.at(rank, j).clone();
                    m.set(r, j, val);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Determinant by Gaussian elimination with row swaps (square input).
    pub fn det(&self) -> Complex<S> {
        assert!(self.rows == self.cols, "det of a non-square matrix");
        let mut m = self.clone();
        let n = m.rows;
        let scale = m
            .data
            .iter()
            .map(Self::norm_sqr_f64)
            .fold(0.0, f64::max)
            .max(1.0);
        let tol_sq = PIVOT_TOL * PIVOT_TOL * scale;
        let mut det = Complex::new(S::one(), S::zero());
        for pc in 0..n {
            let pivot_row = if S::EXACT {
                (pc..n).find(|&r| !m.at(r, pc).re.is_zero() || !m.at(r, pc).im.is_zero())
            } else {
                (pc..n)
                    .map(|r| (r, Self::norm_sqr_f64(m.at(r, pc))))
                    .filter(|(_, v)| *v > tol_sq)
                    .max_by(|a, b| a.1.partial_cmp(&b.1).expect("finite"))
                    .map(|(r, _)| r)
            };
            let Some(prow) = pivot_row else {
                return Complex::new(S::zero(), S::zero());
            };
            if prow != pc {
                for j in 0..n {
                    let tmp = m.at(pc, j).clone();
                    let other = m.at(prow, j).clone();
                    m.set(pc, j, other);
                    m.set(prow, j, tmp);
                }
                det = -det;
            }
            let pivot = m.at(pc, pc).clone();
            det = det * pivot.clone();
            for r in pc + 1..n {
                let factor = m.at(r, pc).clone() / pivot.clone();
                for j in pc..n {
                    let val = m.at(r, j).clone() - factor.clone() * m.at(pc, j).clone();
                    m.set(r, j, val);
                }
            }
        }
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;

    type Q = Quaternion<Rat>;
    type M = QMatrix<Rat>;

    fn q(w: i64, x: i64, y: i64, z: i64) -> Q {
        Q::from_ints(w, x, y, z)
    }

    /// Invertible, non-Hermitian.
    fn sample_a() -> M {
        M::from_rows(vec![
            vec![q(0, 0, 0, -1), q(0, 0, 1, 0), q(2, 0, 0, 0)],
            vec![q(0, 1, 0, 0), q(0, 0, 0, 1), q(0, 1, 0, 0)],
            vec![q(0, 0, -1, 0), q(1, 0, 0, 0), q(0, 1, 0, 0)],
        ])
    }

    /// Invertible Hermitian.
    fn sample_hermitian() -> M {
        M::from_rows(vec![
            vec![q(6, 0, 0, 0), q(0, 0, 0, 0), q(0, 0, 4, 0)],
            vec![q(0, 0, 0, 0), q(1, 0, 0, 0), q(0, 0, 0, 0)],
            vec![q(0, 0, -4, 0), q(0, 0, 0, 0), q(6, 0, 0, 0)],
        ])
    }

    #[test]
    fn product_adjoint_reverses() {
        let a = sample_a();
        let b = M::from_rows(vec![
            vec![q(0, 1, 0, 0), q(1, 0, 0, 0), q(0, 0, 0, 0)],
            vec![q(0, 0, 2, 0), q(0, 0, 0, 1), q(3, 0, 0, 0)],
            vec![q(1, 1, 0, 0), q(0, 0, 1, 1), q(0, 0, 0, 0)],
        ]);
        assert_eq!((&a * &b).conj_transpose(), &b.conj_transpose() * &a.conj_transpose());
    }

    #[test]
    fn hermitian_predicate_spots_violations() {
        let mut a = sample_hermitian();
        assert!(a.is_hermitian(0.0));
        assert!(!sample_a().is_hermitian(0.0));
        a.set(0, 1, q(1, 0, 1, 0));
        assert_eq!(a.hermitian_violation(0.0), Some((0, 1)));
    }

    #[test]
    fn scalar_sides_differ_for_quaternion_scalars() {
        let a = sample_a();
        let s = q(0, 1, 0, 0);
        assert_ne!(a.scale_quat_left(&s), a.scale_quat_right(&s));
        // Real scalars land in the center: both sides agree.
        let two = M::identity(3).scale(&Rat::from_int(2));
        assert_eq!(&two * &a, a.scale(&Rat::from_int(2)));
        assert_eq!(&a * &two, a.scale(&Rat::from_int(2)));
    }

    #[test]
    fn row_reduce_finds_full_rank_identity() {
        let a = sample_a();
        let reduced = row_reduce(&a);
        assert_eq!(reduced.rank(), 3);
        assert_eq!(reduced.rref, M::identity(3));
    }

    #[test]
    fn invert_round_trips() {
        let a = sample_a();
        let inv = invert(&a).unwrap();
        assert_eq!(&a * &inv, M::identity(3));
        assert_eq!(&inv * &a, M::identity(3));
    }

    #[test]
    fn singular_matrix_reports_rank_and_nullspace() {
        // Second column = first column · k (right multiple): right
        // column rank drops.
        let c0 = vec![q(1, 0, 0, 0), q(0, 1, 0, 0)];
        let c1: Vec<Q> = c0.iter().map(|e| e * &Q::k()).collect();
        let a = M::from_fn(2, 2, |i, j| if j == 0 { c0[i].clone() } else { c1[i].clone() });
        assert_eq!(qrank(&a), 1);
        let ns = null_space_right(&a);
        assert_eq!(ns.len(), 1);
        let prod = &a * &ns[0];
        assert!(prod.is_zero_matrix(0.0));
    }

    #[test]
    fn solve_right_matches_direct_substitution() {
        let a = sample_a();
        let x = M::col_vector(vec![q(1, 1, 0, 0), q(0, 0, 1, 0), q(2, 0, 0, -1)]);
        let b = &a * &x;
        let solved = solve_right_unique(&a, &b).unwrap();
        assert_eq!(solved, x);
    }

    #[test]
    fn solve_left_matches_direct_substitution() {
        let a = sample_a();
        let x = M::row_vector(vec![q(0, 1, 1, 0), q(1, 0, 0, 0), q(0, 0, -1, 2)]);
        let b = &x * &a;
        let solved = solve_left_unique(&a, &b).unwrap();
        assert_eq!(solved, x);
    }

    #[test]
    fn inner_product_axioms_right_form() {
        let x = M::col_vector(vec![q(1, 2, 0, 0), q(0, 0, 1, -1)]);
        let y = M::col_vector(vec![q(0, 1, 1, 0), q(2, 0, 0, 1)]);
        let alpha = q(1, -1, 2, 0);
        // ⟨xα, y⟩ = ⟨x,y⟩α   and   ⟨x, yα⟩ = conj(α)⟨x,y⟩
        assert_eq!(
            inner_right(&x.scale_quat_right(&alpha), &y),
            &inner_right(&x, &y) * &alpha
        );
        assert_eq!(
            inner_right(&x, &y.scale_quat_right(&alpha)),
            &alpha.conj() * &inner_right(&x, &y)
        );
        // conjugate symmetry
        assert_eq!(inner_right(&x, &y), inner_right(&y, &x).conj());
        // positivity on the diagonal
        assert!(inner_right(&x, &x).is_real());
    }

    #[test]
    fn inner_product_axioms_left_form() {
        let x = M::row_vector(vec![q(1, 2, 0, 0), q(0, 0, 1, -1)]);
        let y = M::row_vector(vec![q(0, 1, 1, 0), q(2, 0, 0, 1)]);
        let alpha = q(0, 1, -1, 1);
        // Left spaces: ⟨αx, y⟩ = α⟨x,y⟩.
        assert_eq!(
            inner_left(&x.scale_quat_left(&alpha), &y),
            &alpha * &inner_left(&x, &y)
        );
        assert_eq!(inner_left(&x, &y), inner_left(&y, &x).conj());
    }

    #[test]
    fn gram_schmidt_produces_exact_orthonormal_set() {
        let v1 = M::col_vector(vec![q(2, 0, 0, 0), q(0, 0, 0, 0), q(0, 0, 0, 0)]);
        let v2 = M::col_vector(vec![q(1, 1, 0, 0), q(0, 0, 1, 0), q(0, 0, 0, 0)]);
        let v3 = M::col_vector(vec![q(0, 0, 0, 1), q(1, 0, 0, 0), q(0, 1, 0, 0)]);
        let es = gram_schmidt_right(&[v1, v2, v3]).unwrap();
        assert_eq!(es.len(), 3);
        for (i, a) in es.iter().enumerate() {
            for (j, b) in es.iter().enumerate() {
                let ip = inner_right(a, b);
                if i == j {
                    assert_eq!(ip, Q::one(), "⟨e{i},e{j}⟩");
                } else {
                    assert!(ip.is_zero(), "⟨e{i},e{j}⟩ = {ip}");
                }
            }
        }
    }

    #[test]
    fn gram_schmidt_single_vector_normalizes() {
        let v = M::col_vector(vec![q(2, 0, 0, 0)]);
        let es = gram_schmidt_right(&[v]).unwrap();
        assert_eq!(es[0], M::col_vector(vec![q(1, 0, 0, 0)]));
    }

    #[test]
    fn gram_schmidt_flags_dependence() {
        let v1 = M::col_vector(vec![q(1, 0, 0, 0), q(0, 1, 0, 0)]);
        let v2 = v1.scale_quat_right(&q(0, 0, 2, 0));
        match gram_schmidt_right(&[v1, v2]) {
            Err(Error::DependentInput { index: 1 }) => {}
            other => panic!("expected dependence at index 1, got {other:?}"),
        }
    }

    #[test]
    fn phase_equivalence_detects_right_unit_rays() {
        let v = M::col_vector(vec![q(0, 0, -1, 0), q(0, 0, 0, 0), q(1, 0, 0, 0)]);
        // w = v · u for the unit u = (1+j)/√2 … stay rational: use u = k.
        let w = v.scale_quat_right(&Q::k());
        assert!(phase_equivalent(&v, &w, 0.0));
        // A non-unit multiple is not phase-equivalent.
        let w2 = v.scale_quat_right(&q(2, 0, 0, 0));
        assert!(!phase_equivalent(&v, &w2, 0.0));
        // Nor is an unrelated vector.
        let w3 = M::col_vector(vec![q(0, 0, -1, 0), q(1, 0, 0, 0), q(1, 0, 0, 0)]);
        assert!(!phase_equivalent(&v, &w3, 0.0));
    }

    #[test]
    fn complex_adjoint_is_homomorphism() {
        let a = sample_a();
        let b = M::from_rows(vec![
            vec![q(0, 1, 2, 0), q(1, 0, 0, 3), q(0, 0, 1, 1)],
            vec![q(2, 0, 0, 0), q(0, 1, 0, 0), q(0, 0, 2, 0)],
            vec![q(0, 0, 0, 1), q(1, 1, 1, 1), q(1, 0, 0, 0)],
        ]);
        let chi_ab = (&a * &b).complex_adjoint();
        let product = a.complex_adjoint().mul(&b.complex_adjoint());
        assert!(chi_ab.approx_eq(&product, 0.0));
    }

    #[test]
    fn complex_adjoint_rank_doubles() {
        let c0 = vec![q(1, 0, 0, 0), q(0, 1, 0, 0)];
        let c1: Vec<Q> = c0.iter().map(|e| e * &Q::j()).collect();
        let a = M::from_fn(2, 2, |i, j| if j == 0 { c0[i].clone() } else { c1[i].clone() });
        assert_eq!(qrank(&a), 1);
        assert_eq!(a.complex_adjoint().rank(), 2);
        let full = sample_a();
        assert_eq!(qrank(&full), 3);
        assert_eq!(full.complex_adjoint().rank(), 6);
    }
}

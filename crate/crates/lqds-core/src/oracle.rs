//! Independent numerical check for the closed-form solvers: every
//! quaternion linear system is embedded into ℝ^{4n} (quaternion `p`
//! occupies slots `4p..4p+4` in component order `w, x, y, z`) and
//! integrated with the classical fixed-step Runge–Kutta scheme.
//!
//! Left multiplication by a quaternion is the 4×4 real block `L(q)`,
//! right multiplication the block `R(q)`; a right system `x′ = A·x + b`
//! becomes the block-real system with `L(a_pq)` at block `(p, q)`, a left
//! system `x′ = x·A + b` the one with `R(a_pq)` at block `(q, p)`. The
//! embedding is a homomorphism (`embed(A∘v) = M·embed(v)`), so the real
//! trajectory is the embedded quaternion trajectory and RK4's classical
//! O(h⁴) analysis applies unchanged.

use crate::error::{Error, Result};
use crate::lqds::{ClosedFormSolution, LqdsProblem, PolyVec};
use crate::matrix::QMatrix;
use crate::quaternion::{Quaternion, Side};
use crate::scalar::Scalar;

/// 4×4 real matrix of `v ↦ q·v` on quaternion components (w, x, y, z).
pub fn left_mul_block(q: &Quaternion<f64>) -> [[f64; 4]; 4] {
    let (w, x, y, z) = (q.w, q.x, q.y, q.z);
    [
        [w, -x, -y, -z],
        [x, w, -z, y],
        [y, z, w, -x],
        [z, -y, x, w],
    ]
}

/// 4×4 real matrix of `v ↦ v·q` on quaternion components (w, x, y, z).
pub fn right_mul_block(q: &Quaternion<f64>) -> [[f64; 4]; 4] {
    let (w, x, y, z) = (q.w, q.x, q.y, q.z);
    [
        [w, -x, -y, -z],
        [x, w, z, -y],
        [y, -z, w, x],
        [z, y, -x, w],
    ]
}

/// Real 4n-dimensional embedding of one system orientation.
#[derive(Clone, Copy, Debug)]
pub struct RealEmbedding {
    pub side: Side,
    pub n: usize,
}

impl RealEmbedding {
    pub fn new(side: Side, n: usize) -> Self {
        Self { side, n }
    }

    pub fn dim(&self) -> usize {
        4 * self.n
    }

    fn state_entries(&self, v: &QMatrix<f64>) -> Vec<Quaternion<f64>> {
        match self.side {
            Side::Right => v.col(0),
            Side::Left => v.row(0),
        }
    }

    /// Flattens a state vector into 4n reals.
    pub fn embed(&self, v: &QMatrix<f64>) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.dim());
        for q in self.state_entries(v) {
            out.extend_from_slice(&[q.w, q.x, q.y, q.z]);
        }
        out
    }

    /// Rebuilds the quaternion state vector from 4n reals.
    pub fn extract(&self, y: &[f64]) -> QMatrix<f64> {
        let entries: Vec<Quaternion<f64>> = (0..self.n)
            .map(|p| Quaternion::new(y[4 * p], y[4 * p + 1], y[4 * p + 2], y[4 * p + 3]))
            .collect();
        match self.side {
            Side::Right => QMatrix::col_vector(entries),
            Side::Left => QMatrix::row_vector(entries),
        }
    }

    /// Row-major 4n×4n real system matrix: the embedding of `v ↦ A·v`
    /// (right) or `v ↦ v·A` (left).
    pub fn system_matrix(&self, a: &QMatrix<f64>) -> Vec<f64> {
        let dim = self.dim();
        let mut m = vec![0.0; dim * dim];
        for p in 0..self.n {
            for q in 0..self.n {
                let entry = a.at(p, q);
                let (block_row, block_col, block) = match self.side {
                    // (A·x)_p collects a_pq acting on x_q from the left.
                    Side::Right => (p, q, left_mul_block(entry)),
                    // (x·A)_q collects x_p acted on by a_pq from the right.
                    Side::Left => (q, p, right_mul_block(entry)),
                };
                for r in 0..4 {
                    for c in 0..4 {
                        m[(4 * block_row + r) * dim + (4 * block_col + c)] = block[r][c];
                    }
                }
            }
        }
        m
    }
}

fn mat_vec(dim: usize, m: &[f64], v: &[f64], out: &mut [f64]) {
    for r in 0..dim {
        let row = &m[r * dim..(r + 1) * dim];
        out[r] = row.iter().zip(v).map(|(a, b)| a * b).sum();
    }
}

/// Classical fixed-step RK4 for `x′ = A∘x + b(t)` from `(t0, x0)` to `t1`,
/// run on the real embedding. Negative spans integrate backward.
pub fn rk4_integrate(
    side: Side,
    a: &QMatrix<f64>,
    b: &PolyVec<f64>,
    x0: &QMatrix<f64>,
    t0: f64,
    t1: f64,
    steps: usize,
) -> Result<QMatrix<f64>> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if steps == 0 {
        return Err(Error::Unsupported {
            operation: "rk4_integrate",
            requirement: "at least one integration step",
        });
    }
    let n = a.rows();
    let embedding = RealEmbedding::new(side, n);
    let dim = embedding.dim();
    let m = embedding.system_matrix(a);
    let h = (t1 - t0) / steps as f64;

    let drive = |t: f64| embedding.embed(&b.eval_f64(t));
    let mut y = embedding.embed(x0);
    let mut k1 = vec![0.0; dim];
    let mut k2 = vec![0.0; dim];
    let mut k3 = vec![0.0; dim];
    let mut k4 = vec![0.0; dim];
    let mut stage = vec![0.0; dim];

    for step in 0..steps {
        let t = t0 + step as f64 * h;

        let f = |t: f64, state: &[f64], out: &mut [f64]| {
            mat_vec(dim, &m, state, out);
            for (slot, forced) in out.iter_mut().zip(drive(t)) {
                *slot += forced;
            }
        };

        f(t, &y, &mut k1);
        for idx in 0..dim {
            stage[idx] = y[idx] + 0.5 * h * k1[idx];
        }
        f(t + 0.5 * h, &stage, &mut k2);
        for idx in 0..dim {
            stage[idx] = y[idx] + 0.5 * h * k2[idx];
        }
        f(t + 0.5 * h, &stage, &mut k3);
        for idx in 0..dim {
            stage[idx] = y[idx] + h * k3[idx];
        }
        f(t + h, &stage, &mut k4);
        for idx in 0..dim {
            y[idx] += h / 6.0 * (k1[idx] + 2.0 * k2[idx] + 2.0 * k3[idx] + k4[idx]);
        }
    }
    Ok(embedding.extract(&y))
}

/// Steps used per grid point by [`compare`]: the RK4 step never exceeds
/// `(t − t0)/2000`.
pub const COMPARE_STEPS: usize = 2000;

/// Maximum deviation over `grid` between a closed-form solution and the RK4
/// oracle started from the problem's initial value (or from the closed
/// form's own value at t = 0 when the problem carries none).
pub fn compare<S: Scalar>(
    closed: &ClosedFormSolution<S>,
    problem: &LqdsProblem<S>,
    grid: &[f64],
) -> Result<f64> {
    let a = problem.a.to_f64();
    let b = problem.b.to_f64();
    let (t0, x0) = match &problem.init {
        Some((t0, x0)) => (t0.to_f64(), x0.to_f64()),
        None => (0.0, closed.eval_f64(0.0)?),
    };
    let mut worst: f64 = 0.0;
    for &t in grid {
        let target = closed.eval_f64(t)?;
        let oracle = if (t - t0).abs() < f64::EPSILON {
            x0.clone()
        } else {
            rk4_integrate(problem.side, &a, &b, &x0, t0, t, COMPARE_STEPS)?
        };
        worst = worst.max((&target - &oracle).scale_f64());
    }
    Ok(worst)
}

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};


use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Quaternion w + x·i + y·j + z·k over a real scalar ring.
///
/// Multiplication follows i² = j² = k² = ijk = −1, so ij = k, jk = i,
/// ki = j and the product is not commutative. The scalar ring is the
/// center: real coefficients commute with everything.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Quaternion<S> {
    pub w: S,
    pub x: S,
    pub y: S,
    pub z: S,
}

impl<S: Scalar> Quaternion<S> {
    pub fn new(w: S, x: S, y: S, z: S) -> Self {
        Quaternion { w, x, y, z }
    }

    pub fn zero() -> Self {
        Self::new(S::zero(), S::zero(), S::zero(), S::zero())
    }

    pub fn one() -> Self {
        Self::real(S::one())
    }

    pub fn i() -> Self {
        Self::new(S::zero(), S::one(), S::zero(), S::zero())
    }

    pub fn j() -> Self {
        Self::new(S::zero(), S::zero(), S::one(), S::zero())
    }

    pub fn k() -> Self {
        Self::new(S::zero(), S::zero(), S::zero(), S::one())
    }

    pub fn real(w: S) -> Self {
        Self::new(w, S::zero(), S::zero(), S::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(S::from_int(n))
    }

    /// Convenience constructor from four integer components.
    pub fn from_ints(w: i64, x: i64, y: i64, z: i64) -> Self {
        Self::new(S::from_int(w), S::from_int(x), S::from_int(y), S::from_int(z))
    }

    pub fn is_zero(&self) -> bool {
        self.w.is_zero() && self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    /// Conjugate w − xi − yj − zk.
    pub fn conj(&self) -> Self {
        Self::new(
            self.w.clone(),
            -self.x.clone(),
            -self.y.clone(),
            -self.z.clone(),
        )
    }

    /// Squared norm w² + x² + y² + z² (a real scalar).
    pub fn norm_sqr(&self) -> S {
        self.w.clone() * self.w.clone()
            + self.x.clone() * self.x.clone()
            + self.y.clone() * self.y.clone()
            + self.z.clone() * self.z.clone()
    }

    /// Euclidean norm as f64 (exact values are converted).
    pub fn abs_f64(&self) -> f64 {
        self.norm_sqr().to_f64().sqrt()
    }

    /// Multiplicative inverse conj(q)/norm²(q).
    pub fn inverse(&self) -> Result<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.conj().scale(&(S::one() / n)))
    }

    /// Real-scalar multiple (scalars are central, so left = right).
    pub fn scale(&self, s: &S) -> Self {
        Self::new(
            self.w.clone() * s.clone(),
            self.x.clone() * s.clone(),
            self.y.clone() * s.clone(),
            self.z.clone() * s.clone(),
        )
    }

    /// Pure vector part 0 + xi + yj + zk.
    pub fn vector_part(&self) -> Self {
        Self::new(S::zero(), self.x.clone(), self.y.clone(), self.z.clone())
    }

    pub fn real_part(&self) -> S {
        self.w.clone()
    }

    /// Componentwise comparison: literal on the exact backend, within tol on
    /// floats.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.w.approx_eq(&other.w, tol)
            && self.x.approx_eq(&other.x, tol)
            && self.y.approx_eq(&other.y, tol)
            && self.z.approx_eq(&other.z, tol)
    }

    /// Max component magnitude as f64 (for residual reporting).
    pub fn max_component_f64(&self) -> f64 {
        self.w
            .to_f64()
            .abs()
            .max(self.x.to_f64().abs())
            .max(self.y.to_f64().abs())
            .max(self.z.to_f64().abs())
    }

    pub fn to_f64(&self) -> Quaternion<f64> {
        Quaternion::new(
            self.w.to_f64(),
            self.x.to_f64(),
            self.y.to_f64(),
            self.z.to_f64(),
        )
    }

    /// Canonical literal: signed terms in w, i, j, k order, zero components
    /// omitted, unit coefficients shortened (`k`, not `1k`). The all-zero
    /// quaternion renders as `0`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (coeff, unit) in [
            (&self.w, ""),
            (&self.x, "i"),
            (&self.y, "j"),
            (&self.z, "k"),
        ] {
            if coeff.is_zero() {
                continue;
            }
            let negative = coeff.is_negative();
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let magnitude = coeff.abs();
            if !unit.is_empty() && magnitude.is_one() {
                out.push_str(unit);
            } else {
                out.push_str(&magnitude.render());
                out.push_str(unit);
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl<S: Scalar> fmt::Debug for Quaternion<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl<S: Scalar> fmt::Display for Quaternion<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl<S: Scalar> Add for &Quaternion<S> {
    type Output = Quaternion<S>;
    fn add(self, rhs: &Quaternion<S>) -> Quaternion<S> {
        Quaternion::new(
            self.w.clone() + rhs.w.clone(),
            self.x.clone() + rhs.x.clone(),
            self.y.clone() + rhs.y.clone(),
            self.z.clone() + rhs.z.clone(),
        )
    }
}

impl<S: Scalar> Sub for &Quaternion<S> {
    type Output = Quaternion<S>;
    fn sub(self, rhs: &Quaternion<S>) -> Quaternion<S> {
        Quaternion::new(
            self.w.clone() - rhs.w.clone(),
            self.x.clone() - rhs.x.clone(),
            self.y.clone() - rhs.y.clone(),
            self.z.clone() - rhs.z.clone(),
        )
    }
}

impl<S: Scalar> Mul for &Quaternion<S> {
    type Output = Quaternion<S>;
    fn mul(self, rhs: &Quaternion<S>) -> Quaternion<S> {
        let (w1, x1, y1, z1) = (&self.w, &self.x, &self.y, &self.z);
        let (w2, x2, y2, z2) = (&rhs.w, &rhs.x, &rhs.y, &rhs.z);
        Quaternion::new(
            w1.clone() * w2.clone()
                - x1.clone() * x2.clone()
                - y1.clone() * y2.clone()
                - z1.clone() * z2.clone(),
            w1.clone() * x2.clone()
                + x1.clone() * w2.clone()
                + y1.clone() * z2.clone()
                - z1.clone() * y2.clone(),
            w1.clone() * y2.clone() - x1.clone() * z2.clone()
                + y1.clone() * w2.clone()
                + z1.clone() * x2.clone(),
            w1.clone() * z2.clone() + x1.clone() * y2.clone() - y1.clone() * x2.clone()
                + z1.clone() * w2.clone(),
        )
    }
}

impl<S: Scalar> Neg for &Quaternion<S> {
    type Output = Quaternion<S>;
    fn neg(self) -> Quaternion<S> {
        Quaternion::new(
            -self.w.clone(),
            -self.x.clone(),
            -self.y.clone(),
            -self.z.clone(),
        )
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl<S: Scalar> $trait for Quaternion<S> {
            type Output = Quaternion<S>;
            fn $method(self, rhs: Quaternion<S>) -> Quaternion<S> {
                (&self).$method(&rhs)
            }
        }
        impl<S: Scalar> $trait<&Quaternion<S>> for Quaternion<S> {
            type Output = Quaternion<S>;
            fn $method(self, rhs: &Quaternion<S>) -> Quaternion<S> {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl<S: Scalar> Neg for Quaternion<S> {
    type Output = Quaternion<S>;
    fn neg(self) -> Quaternion<S> {
        -&self
    }
}

impl<S: Scalar> AddAssign<&Quaternion<S>> for Quaternion<S> {
    fn add_assign(&mut self, rhs: &Quaternion<S>) {
        self.w += rhs.w.clone();
        self.x += rhs.x.clone();
        self.y += rhs.y.clone();
        self.z += rhs.z.clone();
    }
}

impl<S: Scalar> SubAssign<&Quaternion<S>> for Quaternion<S> {
    fn sub_assign(&mut self, rhs: &Quaternion<S>) {
        self.w -= rhs.w.clone();
        self.x -= rhs.x.clone();
        self.y -= rhs.y.clone();
        self.z -= rhs.z.clone();
    }
}

/// Exponential e^q for a float quaternion.
///
/// Argument halving until the norm is at most 1/2, a 20-term Horner power
/// series, then repeated squaring. Quaternion powers of a single q commute
/// with each other, so the series and the squaring identity behave exactly
/// as in the complex case.
pub fn qexp(q: &Quaternion<f64>) -> Quaternion<f64> {
    const SERIES_TERMS: u32 = 20;
    let mut halvings = 0u32;
    let mut norm = q.abs_f64();
    while norm > 0.5 {
        norm *= 0.5;
        halvings += 1;
    }
    let scaled = q.scale(&0.5f64.powi(halvings as i32));
    // Horner: 1 + q(1 + q/2 (1 + q/3 (...)))
    let mut acc = Quaternion::one();
    for n in (1..SERIES_TERMS).rev() {
        acc = Quaternion::one() + (&scaled * &acc).scale(&(1.0 / n as f64));
    }
    let mut result = acc;
    for _ in 0..halvings {
        result = &result * &result;
    }
    result
}

/// Which side the unknown multiplies on in a linear quaternion equation or
/// system: `Right` means x′ = A·x + f with x a column (coefficients act from
/// the left, scalars combine on the right); `Left` means x′ = x·A + f with x
/// a row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Right,
    Left,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Right => "right",
            Side::Left => "left",
        }
    }
}

/// Closed-form value at time `t` of the scalar initial-value problem
/// q′ = a·q + f (side = Right) or q′ = q·a + f (side = Left), q(t0) = q0,
/// with constant coefficient a and constant source f.
///
/// For invertible a the particular solution is the constant −a⁻¹f (Right)
/// or −f·a⁻¹ (Left) and the homogeneous part carries the rest; for a = 0
/// the solution is q0 + f·(t − t0).
pub fn scalar_lqde_solve(
    a: &Quaternion<f64>,
    q0: &Quaternion<f64>,
    t0: f64,
    f: &Quaternion<f64>,
    side: Side,
    t: f64,
) -> Quaternion<f64> {
    if a.is_zero() {
        return q0 + &f.scale(&(t - t0));
    }
    let a_inv = a.inverse().expect("nonzero quaternion is invertible");
    let particular = match side {
        Side::Right => -&(&a_inv * f),
        Side::Left => -&(f * &a_inv),
    };
    let c = q0 - &particular;
    let h = qexp(&a.scale(&(t - t0)));
    let hom = match side {
        Side::Right => &h * &c,
        Side::Left => &c * &h,
    };
    &hom + &particular
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;

    type Q = Quaternion<Rat>;
    type Qf = Quaternion<f64>;

    fn q(w: i64, x: i64, y: i64, z: i64) -> Q {
        Q::from_ints(w, x, y, z)
    }

    #[test]
    fn unit_multiplication_table() {
        let (i, j, k) = (Q::i(), Q::j(), Q::k());
        let minus_one = -Q::one();
        assert_eq!(&i * &i, minus_one);
        assert_eq!(&j * &j, minus_one);
        assert_eq!(&k * &k, minus_one);
        assert_eq!(&i * &j, k);
        assert_eq!(&j * &k, i);
        assert_eq!(&k * &i, j);
        assert_eq!(&j * &i, -&k);
        assert_eq!(&k * &j, -&i);
        assert_eq!(&i * &k, -&j);
        assert_eq!(&(&i * &j) * &k, minus_one);
    }

    #[test]
    fn product_conjugate_reverses() {
        let a = q(1, -2, 3, 4);
        let b = q(0, 5, -1, 2);
        assert_eq!((&a * &b).conj(), &b.conj() * &a.conj());
    }

    #[test]
    fn norm_is_multiplicative() {
        let a = q(2, -1, 3, 0);
        let b = q(1, 1, -2, 5);
        assert_eq!((&a * &b).norm_sqr(), a.norm_sqr() * b.norm_sqr());
    }

    #[test]
    fn inverse_recovers_one() {
        let a = q(1, -2, 0, 3);
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, Q::one());
        assert_eq!(&inv * &a, Q::one());
        assert_eq!(Q::zero().inverse(), Err(Error::DivisionByZero));
    }

    #[test]
    fn render_literal_forms() {
        assert_eq!(q(0, 0, 0, 0).render(), "0");
        assert_eq!(q(1, -1, 0, 2).render(), "1 - i + 2k");
        assert_eq!(q(-2, 0, 1, 0).render(), "-2 + j");
        assert_eq!(
            Quaternion::new(
                Rat::from_int(0),
                Rat::from_ratio(-1, 2),
                Rat::from_int(0),
                Rat::from_ratio(3, 4)
            )
            .render(),
            "-1/2i + 3/4k"
        );
    }

    #[test]
    fn qexp_matches_complex_exponential_on_i_line() {
        // e^{iθ} = cos θ + i sin θ
        for theta in [0.0, 0.3, 1.0, 2.5, -4.0] {
            let e = qexp(&Qf::new(0.0, theta, 0.0, 0.0));
            assert!((e.w - theta.cos()).abs() < 1e-14);
            assert!((e.x - theta.sin()).abs() < 1e-14);
            assert!(e.y.abs() < 1e-15 && e.z.abs() < 1e-15);
        }
    }

    #[test]
    fn qexp_matches_closed_form_for_general_argument() {
        // e^{w+v} = e^w (cos |v| + v̂ sin |v|)
        let cases = [
            Qf::new(0.4, 1.0, -2.0, 0.5),
            Qf::new(-1.0, 0.0, 3.0, 4.0),
            Qf::new(2.0, -0.1, 0.2, -0.3),
        ];
        for qv in cases {
            let e = qexp(&qv);
            let vn = (qv.x * qv.x + qv.y * qv.y + qv.z * qv.z).sqrt();
            let ew = qv.w.exp();
            let expected = Qf::new(
                ew * vn.cos(),
                ew * qv.x / vn * vn.sin(),
                ew * qv.y / vn * vn.sin(),
                ew * qv.z / vn * vn.sin(),
            );
            assert!(e.approx_eq(&expected, 1e-12), "{e:?} vs {expected:?}");
        }
    }

    #[test]
    fn qexp_of_zero_is_one() {
        assert!(qexp(&Qf::zero()).approx_eq(&Qf::one(), 1e-15));
    }

    #[test]
    fn qexp_matches_truncated_series_oracle() {
        // 40-term direct partial sum at small arguments.
        let cases = [Qf::new(0.2, -0.3, 0.1, 0.4), Qf::new(0.0, 0.5, 0.5, 0.0)];
        for qv in cases {
            let mut sum = Qf::one();
            let mut term = Qf::one();
            for n in 1..40 {
                term = (&term * &qv).scale(&(1.0 / n as f64));
                sum = &sum + &term;
            }
            assert!(qexp(&qv).approx_eq(&sum, 1e-14));
        }
    }

    #[test]
    fn scalar_solve_constant_particular() {
        // a = i, f = j: the constant −a⁻¹f = i·j = k solves q′ = aq + f
        // with q′ = 0; starting exactly there keeps the solution constant.
        let a = Qf::new(0.0, 1.0, 0.0, 0.0);
        let f = Qf::new(0.0, 0.0, 1.0, 0.0);
        let k = Qf::new(0.0, 0.0, 0.0, 1.0);
        for t in [0.0, 0.7, 2.0] {
            let v = scalar_lqde_solve(&a, &k, 0.0, &f, Side::Right, t);
            assert!(v.approx_eq(&k, 1e-12), "t={t}: {v:?}");
        }
    }

    #[test]
    fn scalar_solve_sides_differ() {
        let a = Qf::new(0.0, 1.0, 0.0, 0.0);
        let f = Qf::new(0.0, 0.0, 1.0, 0.0);
        let q0 = Qf::new(1.0, 0.0, 0.0, 0.0);
        let right = scalar_lqde_solve(&a, &q0, 0.0, &f, Side::Right, 0.9);
        let left = scalar_lqde_solve(&a, &q0, 0.0, &f, Side::Left, 0.9);
        assert!(!right.approx_eq(&left, 1e-6));
    }

    #[test]
    fn scalar_solve_zero_coefficient_is_linear_drift() {
        let f = Qf::new(0.5, 0.0, -1.0, 0.0);
        let q0 = Qf::new(0.0, 2.0, 0.0, 0.0);
        let v = scalar_lqde_solve(&Qf::zero(), &q0, 1.0, &f, Side::Left, 3.0);
        assert!(v.approx_eq(&(&q0 + &f.scale(&2.0)), 1e-15));
    }

    #[test]
    fn scalar_solve_derivative_matches_difference_quotient() {
        let a = Qf::new(0.3, -0.2, 0.5, 0.1);
        let f = Qf::new(0.0, 1.0, 0.0, -1.0);
        let q0 = Qf::new(1.0, 0.5, -0.5, 0.0);
        let h = 1e-6;
        for side in [Side::Right, Side::Left] {
            let at = |t: f64| scalar_lqde_solve(&a, &q0, 0.0, &f, side, t);
            let t = 0.8;
            let qt = at(t);
            let dq = (&at(t + h) - &at(t - h)).scale(&(0.5 / h));
            let rhs = match side {
                Side::Right => &(&a * &qt) + &f,
                Side::Left => &(&qt * &a) + &f,
            };
            assert!(dq.approx_eq(&rhs, 1e-7), "side {side:?}");
        }
    }
}

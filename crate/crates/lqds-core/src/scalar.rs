use std::fmt::{Debug, Display};
use std::ops::{AddAssign, MulAssign, Neg, SubAssign};

use num::bigint::{BigInt, Sign};
use num::rational::BigRational;
use num::{One, Signed, Zero};
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::squares;

/// Exact arbitrary-precision rational scalar.
pub type Rat = BigRational;

/// Real scalar ring underneath all quaternion arithmetic.
///
/// Two backends implement it: exact arbitrary-precision rationals ([`Rat`])
/// and IEEE doubles (`f64`). Exact operations never round; float operations
/// keep fixed summation orders so results reproduce bit for bit across runs
/// and thread counts. Methods taking a `tol` ignore it on the exact backend
/// and compare literally.
pub trait Scalar:
    Clone
    + PartialEq
    + PartialOrd
    + Debug
    + Display
    + Signed
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + Send
    + Sync
    + 'static
{
    /// True for backends where arithmetic is exact and equality is literal.
    const EXACT: bool;

    fn from_int(n: i64) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self;

    fn to_f64(&self) -> f64;

    /// Square root when representable in the backend: perfect squares only
    /// for rationals, any non-negative value for floats.
    fn sqrt_exact(&self) -> Option<Self>;

    /// Literal equality on the exact backend, |a−b| ≤ tol on floats.
    fn approx_eq(&self, other: &Self, tol: f64) -> bool;

    /// Literal zero test on the exact backend, |a| ≤ tol on floats.
    fn is_negligible(&self, tol: f64) -> bool;

    /// Components (a, b, c, d) of a quaternion with squared norm 1/self,
    /// for self > 0. Used to scale a vector of squared norm `self` down to a
    /// unit vector without leaving the scalar ring.
    fn recip_norm_quaternion(&self) -> Result<[Self; 4]>;

    /// Components (x, y) with x² + y² = 1/self, for self > 0. This is the
    /// complex-phase analogue of [`Scalar::recip_norm_quaternion`]; over the
    /// rationals it can fail (sum-of-two-squares obstruction).
    fn recip_norm_complex(&self) -> Result<[Self; 2]>;

    /// Positive factor λ such that scaling a vector with these components by
    /// λ yields the preferred representative (primitive integer entries for
    /// rationals; unchanged for floats). Purely a growth-control device.
    fn primitive_scale(values: &[Self]) -> Self;

    /// All real roots (value, multiplicity) of the monic polynomial with
    /// ascending coefficients `coeffs` (leading coefficient included and
    /// equal to one), sorted descending. Errors when a root exists outside
    /// the representable set.
    fn monic_real_roots(coeffs: &[Self]) -> Result<Vec<(Self, usize)>>;

    /// Parses an unsigned numeric token: integer, decimal, or `p/q`.
    fn parse_numeric(text: &str) -> Option<Self>;

    /// Canonical text form: `p/q` (or plain integer) for rationals, 17
    /// significant digits for floats. [`Scalar::parse_numeric`] accepts it.
    fn render(&self) -> String;
}

impl Scalar for Rat {
    const EXACT: bool = true;

    fn from_int(n: i64) -> Self {
        Rat::from_integer(BigInt::from(n))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Rat::new(BigInt::from(num), BigInt::from(den))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn sqrt_exact(&self) -> Option<Self> {
        rational_sqrt(self)
    }

    fn approx_eq(&self, other: &Self, _tol: f64) -> bool {
        self == other
    }

    fn is_negligible(&self, _tol: f64) -> bool {
        self.is_zero()
    }

    fn recip_norm_quaternion(&self) -> Result<[Self; 4]> {
        if !self.is_positive() {
            return Err(Error::NotRepresentable);
        }
        if let Some(root) = rational_sqrt(self) {
            return Ok([root.recip(), Self::zero(), Self::zero(), Self::zero()]);
        }
        // norm²(q/d) = (a²+b²+c²+d²)/den² ; want 1/(p/q) = q/p, so solve
        // a²+b²+c²+d² = p·q and divide by p.
        let n = clamp_u64(&(self.numer() * self.denom()))?;
        let parts = squares::four_square(n).ok_or(Error::NotRepresentable)?;
        let p = Rat::from_integer(self.numer().clone());
        Ok(parts.map(|c| Rat::from_integer(BigInt::from(c)) / &p))
    }

    fn recip_norm_complex(&self) -> Result<[Self; 2]> {
        if !self.is_positive() {
            return Err(Error::NotRepresentable);
        }
        if let Some(root) = rational_sqrt(self) {
            return Ok([root.recip(), Self::zero()]);
        }
        let n = clamp_u64(&(self.numer() * self.denom()))?;
        let (x, y) = squares::two_square(n).ok_or(Error::NotRepresentable)?;
        let p = Rat::from_integer(self.numer().clone());
        Ok([
            Rat::from_integer(BigInt::from(x)) / &p,
            Rat::from_integer(BigInt::from(y)) / &p,
        ])
    }

    fn primitive_scale(values: &[Self]) -> Self {
        let mut den_lcm = BigInt::one();
        let mut num_gcd = BigInt::zero();
        for v in values {
            if !v.is_zero() {
                den_lcm = num::integer::lcm(den_lcm, v.denom().clone());
                num_gcd = num::integer::gcd(num_gcd, v.numer().clone());
            }
        }
        if num_gcd.is_zero() {
            return Self::one();
        }
        Rat::new(den_lcm, num_gcd)
    }

    fn monic_real_roots(coeffs: &[Self]) -> Result<Vec<(Self, usize)>> {
        crate::poly::rational_monic_roots(coeffs)
    }

    fn parse_numeric(text: &str) -> Option<Self> {
        parse_rational(text)
    }

    fn render(&self) -> String {
        if self.denom().is_one() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_int(n: i64) -> Self {
        n as f64
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn sqrt_exact(&self) -> Option<Self> {
        (*self >= 0.0).then(|| self.sqrt())
    }

    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self - other).abs() <= tol
    }

    fn is_negligible(&self, tol: f64) -> bool {
        self.abs() <= tol
    }

    fn recip_norm_quaternion(&self) -> Result<[Self; 4]> {
        if *self <= 0.0 {
            return Err(Error::NotRepresentable);
        }
        Ok([self.sqrt().recip(), 0.0, 0.0, 0.0])
    }

    fn recip_norm_complex(&self) -> Result<[Self; 2]> {
        if *self <= 0.0 {
            return Err(Error::NotRepresentable);
        }
        Ok([self.sqrt().recip(), 0.0])
    }

    fn primitive_scale(_values: &[Self]) -> Self {
        1.0
    }

    fn monic_real_roots(coeffs: &[Self]) -> Result<Vec<(Self, usize)>> {
        crate::poly::float_monic_roots(coeffs)
    }

    fn parse_numeric(text: &str) -> Option<Self> {
        if let Some((num, den)) = text.split_once('/') {
            let n: f64 = num.trim().parse().ok()?;
            let d: f64 = den.trim().parse().ok()?;
            (d != 0.0).then(|| n / d)
        } else {
            text.trim().parse().ok()
        }
    }

    fn render(&self) -> String {
        format!("{:.16e}", self)
    }
}

/// Exact square root of a non-negative rational, when it is one.
fn rational_sqrt(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    if r.is_zero() {
        return Some(Rat::zero());
    }
    let num_root = r.numer().sqrt();
    let den_root = r.denom().sqrt();
    (&num_root * &num_root == *r.numer() && &den_root * &den_root == *r.denom())
        .then(|| Rat::new(num_root, den_root))
}

fn clamp_u64(n: &BigInt) -> Result<u64> {
    if n.sign() == Sign::Minus {
        return Err(Error::NotRepresentable);
    }
    n.to_u64().ok_or(Error::NotRepresentable)
}

/// Parses an unsigned rational token: `123`, `2.5`, or `3/4`.
fn parse_rational(text: &str) -> Option<Rat> {
    let text = text.trim();
    if text.is_empty() {
        return None;
    }
    if let Some((num, den)) = text.split_once('/') {
        let n: BigInt = num.trim().parse().ok()?;
        let d: BigInt = den.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rat::new(n, d));
    }
    if let Some((int_part, frac_part)) = text.split_once('.') {
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let int_val: BigInt = if int_part.is_empty() {
            BigInt::zero()
        } else {
            int_part.parse().ok()?
        };
        let frac_val: BigInt = frac_part.parse().ok()?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        return Some(Rat::from_integer(int_val) + Rat::new(frac_val, scale));
    }
    let n: BigInt = text.parse().ok()?;
    Some(Rat::from_integer(n))
}

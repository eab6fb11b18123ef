use num::bigint::BigInt;
use num::{One, Signed, Zero};
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::scalar::{Rat, Scalar};

/// Polynomial with real scalar coefficients, ascending by degree.
///
/// Used for characteristic polynomials (whose roots are the eigenvalues of
/// Hermitian matrices) and for Sturm-sequence root isolation.
#[derive(Debug, Clone, PartialEq)]
pub struct RealPolynomial<S: Scalar> {
    coeffs: Vec<S>,
}

impl<S: Scalar> RealPolynomial<S> {
    /// Builds from ascending coefficients, trimming trailing zeros.
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(S::zero());
        }
        RealPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        Self::new(vec![])
    }

    /// Monic product Π (t − rᵢ).
    pub fn from_roots(roots: &[S]) -> Self {
        let mut acc = RealPolynomial::new(vec![S::one()]);
        for r in roots {
            acc = acc.mul(&RealPolynomial::new(vec![-r.clone(), S::one()]));
        }
        acc
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn leading(&self) -> &S {
        self.coeffs.last().expect("coeffs never empty")
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    /// Horner evaluation.
    pub fn eval(&self, t: &S) -> S {
        let mut acc = S::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t.clone() + c.clone();
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.degree() == 0 {
            return Self::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| S::from_int(k as i64) * c.clone())
            .collect();
        Self::new(coeffs)
    }

    pub fn scale(&self, factor: &S) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * factor.clone()).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut coeffs = vec![S::zero(); self.coeffs.len().max(other.coeffs.len())];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k] += c.clone();
        }
        for (k, c) in other.coeffs.iter().enumerate() {
            coeffs[k] += c.clone();
        }
        Self::new(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-S::one()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![S::zero(); self.degree() + other.degree() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a.clone() * b.clone();
            }
        }
        Self::new(coeffs)
    }

    /// Euclidean division self = q·d + r with deg r < deg d.
    pub fn divmod(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let mut rem = self.coeffs.clone();
        if rem.len() < d.coeffs.len() {
            return (Self::zero(), self.clone());
        }
        let dn = d.coeffs.len();
        let lead = d.leading().clone();
        let mut quot = vec![S::zero(); rem.len() - dn + 1];
        for k in (0..quot.len()).rev() {
            let factor = rem[k + dn - 1].clone() / lead.clone();
            if factor.is_zero() {
                continue;
            }
            quot[k] = factor.clone();
            for (j, dc) in d.coeffs.iter().enumerate() {
                let delta = dc.clone() * factor.clone();
                rem[k + j] -= delta;
            }
        }
        (Self::new(quot), Self::new(rem))
    }

    /// Divides exactly by (t − r), verifying a zero remainder (exact
    /// backend) or a negligible one (float). Returns None when r is not a
    /// root at that tolerance.
    pub fn deflate(&self, r: &S, tol: f64) -> Option<Self> {
        let n = self.coeffs.len();
        if n == 1 {
            return None;
        }
        let mut out = vec![S::zero(); n - 1];
        let mut carry = S::zero();
        for k in (0..n - 1).rev() {
            carry = self.coeffs[k + 1].clone() + carry * r.clone();
            out[k] = carry.clone();
        }
        let rem = self.coeffs[0].clone() + carry * r.clone();
        let scale: f64 = self
            .coeffs
            .iter()
            .map(|c| c.to_f64().abs())
            .fold(1.0, f64::max);
        rem.is_negligible(tol * scale).then(|| Self::new(out))
    }

    pub fn to_f64(&self) -> RealPolynomial<f64> {
        RealPolynomial::new(self.coeffs.iter().map(Scalar::to_f64).collect())
    }
}

/// Number of distinct real roots of `p` in the half-open interval (a, b],
/// by Sturm's theorem. Exact arithmetic when S is exact.
pub fn sturm_count<S: Scalar>(p: &RealPolynomial<S>, a: &S, b: &S) -> usize {
    let chain = sturm_chain(p);
    let variations = |t: &S| -> usize {
        let signs: Vec<i8> = chain
            .iter()
            .map(|q| {
                let v = q.eval(t);
                if v.is_zero() {
                    0
                } else if v.is_positive() {
                    1
                } else {
                    -1
                }
            })
            .filter(|s| *s != 0)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    };
    variations(a).saturating_sub(variations(b))
}

fn sturm_chain<S: Scalar>(p: &RealPolynomial<S>) -> Vec<RealPolynomial<S>> {
    let mut chain = vec![p.clone(), p.derivative()];
    while !chain.last().unwrap().is_zero() && chain.last().unwrap().degree() > 0 {
        let n = chain.len();
        let (_, r) = chain[n - 2].divmod(&chain[n - 1]);
        let neg_r = r.scale(&-S::one());
        if neg_r.is_zero() {
            break;
        }
        chain.push(neg_r);
    }
    chain
}

/// All real roots of a monic polynomial over the exact rationals, with
/// multiplicity, sorted descending. Every real root of such a polynomial
/// must pass the rational-root test after clearing denominators; if roots
/// remain that are not rational, this reports NonRationalRoot (when real
/// roots remain) or NonRealRoot (when only complex pairs remain).
pub(crate) fn rational_monic_roots(coeffs: &[Rat]) -> Result<Vec<(Rat, usize)>> {
    let p = RealPolynomial::new(coeffs.to_vec());
    assert!(p.is_monic(), "rational_monic_roots expects a monic input");
    let mut roots: Vec<(Rat, usize)> = Vec::new();
    let mut rest = p;

    // Zero roots come off as trailing... leading? constant-term zeros.
    let mut zero_mult = 0;
    while rest.degree() > 0 && rest.coeffs()[0].is_zero() {
        rest = rest.deflate(&Rat::zero(), 0.0).expect("exact zero root");
        zero_mult += 1;
    }
    if zero_mult > 0 {
        roots.push((Rat::zero(), zero_mult));
    }

    while rest.degree() > 0 {
        let Some(r) = first_rational_root(&rest) else {
            break;
        };
        let mut mult = 0;
        while let Some(next) = rest.deflate(&r, 0.0) {
            rest = next;
            mult += 1;
        }
        roots.push((r, mult));
    }

    if rest.degree() > 0 {
        // No rational roots remain; classify what is left.
        let bound = root_bound_exact(&rest);
        let real_left = sturm_count(&rest, &(-bound.clone()), &bound);
        return Err(if real_left > 0 {
            Error::NonRationalRoot
        } else {
            Error::NonRealRoot {
                found: roots.iter().map(|(_, m)| m).sum(),
                degree: coeffs.len() - 1,
            }
        });
    }

    roots.sort_by(|a, b| b.0.cmp(&a.0));
    Ok(roots)
}

/// Cauchy bound 1 + max |cᵢ| on root magnitude of a monic polynomial.
fn root_bound_exact(p: &RealPolynomial<Rat>) -> Rat {
    let mut bound = Rat::zero();
    for c in p.coeffs() {
        let a = c.abs();
        if a > bound {
            bound = a;
        }
    }
    bound + Rat::one()
}

/// Rational-root candidates of a monic rational polynomial. Substituting
/// t = u/L (L the lcm of denominators) gives a monic integer polynomial in
/// u whose rational roots are integers dividing its constant term.
fn first_rational_root(p: &RealPolynomial<Rat>) -> Option<Rat> {
    let lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| num::integer::lcm(acc, c.denom().clone()));
    let n = p.degree();
    // Constant term of the u-polynomial: c₀·Lⁿ.
    let c0 = p.coeffs()[0].clone() * Rat::from_integer(lcm.pow(n as u32));
    debug_assert!(c0.denom().is_one());
    let c0 = c0.numer().clone();
    if c0.is_zero() {
        return Some(Rat::zero());
    }
    for d in divisors(&c0.abs())? {
        for sign in [1i64, -1] {
            let candidate = Rat::new(BigInt::from(sign) * &d, lcm.clone());
            if p.eval(&candidate).is_zero() {
                return Some(candidate);
            }
        }
    }
    None
}

/// All positive divisors via trial-division factorization; None when the
/// value is too large to factor within the budget (callers then report the
/// root as non-rational rather than guessing).
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.to_u64()?;
    let mut primes: Vec<(u64, u32)> = Vec::new();
    let mut m = n;
    for p in std::iter::once(2u64).chain((3..).step_by(2)) {
        if p > 3_000_000 || p * p > m {
            break;
        }
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        if e > 0 {
            primes.push((p, e));
        }
    }
    if m > 1 {
        if m > 9_000_000_000_000 {
            return None;
        }
        primes.push((m, 1));
    }
    let mut out = vec![BigInt::one()];
    for (p, e) in primes {
        let base: Vec<BigInt> = out.clone();
        let mut power = BigInt::one();
        for _ in 0..e {
            power *= BigInt::from(p);
            out.extend(base.iter().map(|d| d * &power));
        }
    }
    out.sort();
    Some(out)
}

/// All real roots of a monic f64 polynomial with multiplicity, descending.
/// Sturm isolation on the square-free part, bisection to ~1e−12, two Newton
/// polish steps, then multiplicity by repeated deflation. Errors when the
/// recovered multiplicities do not account for the full degree (complex
/// roots present).
pub(crate) fn float_monic_roots(coeffs: &[f64]) -> Result<Vec<(f64, usize)>> {
    let p = RealPolynomial::new(coeffs.to_vec());
    let degree = p.degree();
    if degree == 0 {
        return Ok(vec![]);
    }
    let squarefree = float_squarefree(&p);
    let bound = 1.0
        + p.coeffs()
            .iter()
            .map(|c| c.abs())
            .fold(0.0, f64::max);
    let mut intervals = vec![(-bound, bound)];
    let mut isolated: Vec<(f64, f64)> = Vec::new();
    // Split until each interval holds exactly one root of the square-free part.
    while let Some((a, b)) = intervals.pop() {
        let count = sturm_count(&squarefree, &a, &b);
        match count {
            0 => {}
            1 => isolated.push((a, b)),
            _ => {
                if b - a < 1e-13 * bound.max(1.0) {
                    // Cluster below resolution: treat as one root.
                    isolated.push((a, b));
                } else {
                    let mid = 0.5 * (a + b);
                    intervals.push((a, mid));
                    intervals.push((mid, b));
                }
            }
        }
    }

    let mut roots: Vec<(f64, usize)> = Vec::new();
    let deriv = p.derivative();
    let mut remaining = p.clone();
    for (mut a, mut b) in isolated {
        // Bisection on the square-free part (sign change guaranteed there up
        // to numeric noise; fall back to midpoint convergence).
        for _ in 0..200 {
            if b - a <= 1e-13 * (1.0 + a.abs().max(b.abs())) {
                break;
            }
            let mid = 0.5 * (a + b);
            let fa = squarefree.eval(&a);
            let fm = squarefree.eval(&mid);
            if (fa <= 0.0) == (fm <= 0.0) {
                a = mid;
            } else {
                b = mid;
            }
        }
        let mut r = 0.5 * (a + b);
        for _ in 0..2 {
            let d = deriv.eval(&r);
            if d.abs() > 1e-12 {
                r -= p.eval(&r) / d;
            }
        }
        let mut mult = 0;
        while let Some(next) = remaining.deflate(&r, 1e-6) {
            remaining = next;
            mult += 1;
        }
        if mult == 0 {
            // The isolating interval insisted there is a root here.
            mult = 1;
            if let Some(next) = remaining.deflate(&r, 1e-3) {
                remaining = next;
            }
        }
        roots.push((r, mult));
    }

    let found: usize = roots.iter().map(|(_, m)| m).sum();
    if found != degree {
        return Err(Error::NonRealRoot { found, degree });
    }
    roots.sort_by(|x, y| y.0.partial_cmp(&x.0).expect("roots are finite"));
    Ok(roots)
}

/// Square-free part p / gcd(p, p′) with coefficient cleanup against noise.
fn float_squarefree(p: &RealPolynomial<f64>) -> RealPolynomial<f64> {
    let mut a = normalize_monic(p);
    let mut b = normalize_monic(&p.derivative());
    // Euclid for the gcd, clipping coefficients that fall below noise level
    // (a repeated root makes some exact remainder vanish; in floats it only
    // shrinks to roundoff).
    while !b.is_zero() && b.degree() > 0 {
        let (_, r) = a.divmod(&b);
        let scale = r.coeffs().iter().map(|c| c.abs()).fold(0.0, f64::max);
        let clipped = RealPolynomial::new(
            r.coeffs()
                .iter()
                .map(|c| if c.abs() < 1e-9 * scale.max(1e-300) { 0.0 } else { *c })
                .collect(),
        );
        a = std::mem::replace(&mut b, normalize_monic(&clipped));
    }
    if b.is_zero() && a.degree() > 0 {
        // gcd(p, p′) = a is non-trivial: strip the repeated part.
        let (q, _) = p.divmod(&a);
        normalize_monic(&q)
    } else {
        // gcd is a constant: p is already square-free.
        normalize_monic(p)
    }
}

fn normalize_monic(p: &RealPolynomial<f64>) -> RealPolynomial<f64> {
    let lead = *p.leading();
    if lead == 0.0 {
        return p.clone();
    }
    p.scale(&(1.0 / lead))
}

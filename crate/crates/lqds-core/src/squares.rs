//! Sums-of-squares decompositions of small integers.
//!
//! Exact-backend normalization rests on these: a positive rational s is the
//! squared norm of a rational quaternion a+bi+cj+dk whenever a²+b²+c²+d²
//! can be solved over the rationals, which Lagrange's theorem guarantees for
//! every s ≥ 0. Complex (two-square) decompositions are needed when only a
//! complex phase is free; those can genuinely fail, and callers report the
//! failure instead of approximating.
//!
//! All routines work on u64 (callers clamp big integers and fall back to a
//! not-representable error above the cap). Factorization is plain trial
//! division, which fully factors anything ≤ u64::MAX whose square root fits
//! the trial budget; the values seen here come from norms of small vectors.

pub(crate) fn isqrt(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut x = (n as f64).sqrt() as u64;
    // Float sqrt can be off by one in either direction near perfect squares.
    while x.checked_mul(x).map_or(true, |sq| sq > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).map_or(false, |sq| sq <= n) {
        x += 1;
    }
    x
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Trial-division factorization. Returns None when a cofactor above the
/// trial budget squared remains (cannot certify the factorization).
fn factorize(mut n: u64) -> Option<Vec<(u64, u32)>> {
    const TRIAL_LIMIT: u64 = 3_000_000;
    let mut out: Vec<(u64, u32)> = Vec::new();
    let push = |p: u64, out: &mut Vec<(u64, u32)>| match out.last_mut() {
        Some((q, e)) if *q == p => *e += 1,
        _ => out.push((p, 1)),
    };
    for p in std::iter::once(2).chain((3..).step_by(2)) {
        if p > TRIAL_LIMIT || p * p > n {
            break;
        }
        while n % p == 0 {
            push(p, &mut out);
            n /= p;
        }
    }
    if n > 1 {
        if isqrt(n) <= TRIAL_LIMIT {
            // Remainder has no factor below the trial limit and is below the
            // limit squared, hence prime.
            push(n, &mut out);
        } else {
            return None;
        }
    }
    Some(out)
}

/// Square root of -1 modulo an odd prime p ≡ 1 (mod 4).
fn sqrt_minus_one(p: u64) -> u64 {
    // g^((p-1)/4) works for any quadratic non-residue g.
    for g in 2.. {
        if powmod(g, (p - 1) / 2, p) == p - 1 {
            return powmod(g, (p - 1) / 4, p);
        }
    }
    unreachable!("an odd prime has quadratic non-residues");
}

/// Writes an odd prime p ≡ 1 (mod 4) as x² + y² by the classic Euclidean
/// descent on (p, sqrt(-1) mod p).
fn prime_two_square(p: u64) -> (u64, u64) {
    let mut a = p;
    let mut b = sqrt_minus_one(p);
    while b * b > p {
        let r = a % b;
        a = b;
        b = r;
    }
    let y = isqrt(p - b * b);
    debug_assert_eq!(b * b + y * y, p);
    (b, y)
}

/// n = x² + y² if and only if every prime ≡ 3 (mod 4) divides n to an even
/// power. Returns None if no representation exists or n cannot be factored.
pub(crate) fn two_square(n: u64) -> Option<(u64, u64)> {
    if n == 0 {
        return Some((0, 0));
    }
    let factors = factorize(n)?;
    let (mut x, mut y) = (1u64, 0u64);
    let mut square_part = 1u64;
    for (p, e) in factors {
        if p % 4 == 3 {
            if e % 2 != 0 {
                return None;
            }
            square_part *= p.pow(e / 2);
        } else {
            let (px, py) = if p == 2 { (1, 1) } else { prime_two_square(p) };
            for _ in 0..e {
                // Brahmagupta–Fibonacci: (x²+y²)(px²+py²) = (x·px−y·py)² + (x·py+y·px)².
                let (a, b) = (x as i128, y as i128);
                let (c, d) = (px as i128, py as i128);
                x = (a * c - b * d).unsigned_abs() as u64;
                y = (a * d + b * c) as u64;
            }
        }
    }
    Some((x * square_part, y * square_part))
}

/// n = x² + y² + z², which exists unless n has the form 4^a(8b+7).
/// Descends on the largest component and reuses the two-square routine;
/// bounded attempts keep the worst case small (hits land fast in practice).
pub(crate) fn three_square(n: u64) -> Option<(u64, u64, u64)> {
    if n == 0 {
        return Some((0, 0, 0));
    }
    let mut m = n;
    let mut scale = 1u64;
    while m % 4 == 0 {
        m /= 4;
        scale *= 2;
    }
    if m % 8 == 7 {
        return None;
    }
    let mut attempts = 0;
    let mut x = isqrt(m);
    loop {
        let rem = m - x * x;
        if let Some((y, z)) = two_square(rem) {
            return Some((x * scale, y * scale, z * scale));
        }
        if x == 0 || attempts > 4096 {
            return None;
        }
        x -= 1;
        attempts += 1;
    }
}

/// n = a² + b² + c² + d². Exists for every n ≥ 0.
pub(crate) fn four_square(n: u64) -> Option<[u64; 4]> {
    if n == 0 {
        return Some([0; 4]);
    }
    let mut m = n;
    let mut scale = 1u64;
    while m % 4 == 0 {
        m /= 4;
        scale *= 2;
    }
    if let Some((x, y, z)) = three_square(m) {
        return Some([0, x * scale, y * scale, z * scale]);
    }
    // m ≡ 7 (mod 8): peel one square off and three-square the remainder.
    let mut a = isqrt(m);
    let mut attempts = 0;
    loop {
        let rem = m - a * a;
        if let Some((x, y, z)) = three_square(rem) {
            return Some([a * scale, x * scale, y * scale, z * scale]);
        }
        if a == 0 || attempts > 4096 {
            return None;
        }
        a -= 1;
        attempts += 1;
    }
}

//! Quaternion literal grammar: parsing and canonical rendering.
//!
//! ```text
//! quat  := [sign] term { sign term }
//! term  := coeff unit? | unit
//! unit  := "i" | "j" | "k"
//! coeff := decimal | integer | integer "/" integer
//! ```
//!
//! Whitespace is permitted between tokens (sign, coefficient, unit), never
//! inside a coefficient. Each unit may appear at most once; unit-less real
//! terms may repeat and accumulate. A bare unit carries coefficient 1.
//! Decimals accept scientific notation (`2.5`, `1.25e-2`), so rendered
//! float documents parse back.

use std::fmt;

use lqds_core::{Quaternion, Scalar};

/// Parse failure with the byte offset where it was detected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiteralError {
    pub pos: usize,
    pub message: String,
}

impl fmt::Display for LiteralError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at byte {}: {}", self.pos, self.message)
    }
}

impl std::error::Error for LiteralError {}

/// Largest digit count accepted per integer part of a coefficient, chosen
/// so every part fits an i64.
const MAX_DIGITS: usize = 18;
/// Largest absolute decimal exponent accepted after accounting for the
/// fractional digits.
const MAX_EXPONENT: i64 = 400;

struct Scanner<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(src: &'a str) -> Self {
        Scanner {
            bytes: src.as_bytes(),
            pos: 0,
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ') | Some(b'\t')) {
            self.pos += 1;
        }
    }

    fn fail(&self, message: impl Into<String>) -> LiteralError {
        LiteralError {
            pos: self.pos,
            message: message.into(),
        }
    }

    /// Consumes a run of ASCII digits and parses it as i64.
    fn digits(&mut self, what: &str) -> Result<i64, LiteralError> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.fail(format!("expected {what}")));
        }
        if self.pos - start > MAX_DIGITS {
            return Err(LiteralError {
                pos: start,
                message: format!("{what} has more than {MAX_DIGITS} digits"),
            });
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        text.parse::<i64>().map_err(|_| LiteralError {
            pos: start,
            message: format!("{what} out of range"),
        })
    }

    /// Parses one coefficient: decimal, integer, or integer "/" integer.
    fn coefficient<S: Scalar>(&mut self) -> Result<S, LiteralError> {
        let int_part = self.digits("a digit")?;
        match self.peek() {
            Some(b'/') => {
                self.pos += 1;
                let den_pos = self.pos;
                let den = self.digits("a denominator digit")?;
                if den == 0 {
                    return Err(LiteralError {
                        pos: den_pos,
                        message: "denominator must be nonzero".into(),
                    });
                }
                Ok(S::from_ratio(int_part, den))
            }
            Some(b'.') | Some(b'e') | Some(b'E') => {
                let mut mantissa = int_part;
                let mut frac_len: i64 = 0;
                if self.peek() == Some(b'.') {
                    self.pos += 1;
                    let start = self.pos;
                    let frac = self.digits("a digit after the decimal point")?;
                    frac_len = (self.pos - start) as i64;
                    if frac_len + count_digits(int_part) > MAX_DIGITS as i64 {
                        return Err(LiteralError {
                            pos: start,
                            message: format!(
                                "coefficient has more than {MAX_DIGITS} significant digits"
                            ),
                        });
                    }
                    mantissa = mantissa
                        .checked_mul(10i64.pow(frac_len as u32))
                        .and_then(|m| m.checked_add(frac))
                        .ok_or_else(|| LiteralError {
                            pos: start,
                            message: "coefficient out of range".into(),
                        })?;
                }
                let mut exponent: i64 = 0;
                if matches!(self.peek(), Some(b'e') | Some(b'E')) {
                    self.pos += 1;
                    let negative = match self.peek() {
                        Some(b'+') => {
                            self.pos += 1;
                            false
                        }
                        Some(b'-') => {
                            self.pos += 1;
                            true
                        }
                        _ => false,
                    };
                    let digits = self.digits("an exponent digit")?;
                    exponent = if negative { -digits } else { digits };
                }
                let net = exponent - frac_len;
                if net.abs() > MAX_EXPONENT {
                    return Err(self.fail(format!(
                        "decimal exponent exceeds the supported range ±{MAX_EXPONENT}"
                    )));
                }
                let mut value = S::from_int(mantissa);
                let ten = S::from_int(10);
                if net >= 0 {
                    for _ in 0..net {
                        value = value * ten.clone();
                    }
                } else {
                    for _ in 0..-net {
                        value = value / ten.clone();
                    }
                }
                Ok(value)
            }
            _ => Ok(S::from_int(int_part)),
        }
    }
}

fn count_digits(mut n: i64) -> i64 {
    let mut count = 1;
    while n >= 10 {
        n /= 10;
        count += 1;
    }
    count
}

fn unit_index(b: u8) -> Option<usize> {
    match b {
        b'i' => Some(0),
        b'j' => Some(1),
        b'k' => Some(2),
        _ => None,
    }
}

/// Parses one quaternion literal.
pub fn parse_quat<S: Scalar>(text: &str) -> Result<Quaternion<S>, LiteralError> {
    let mut scanner = Scanner::new(text);
    let mut real = S::from_int(0);
    let mut imag: [Option<S>; 3] = [None, None, None];

    scanner.skip_ws();
    if scanner.peek().is_none() {
        return Err(scanner.fail("empty quaternion literal"));
    }

    let mut first = true;
    loop {
        // Sign: optional before the first term, then required between terms.
        let negative = match scanner.peek() {
            Some(b'+') => {
                scanner.pos += 1;
                false
            }
            Some(b'-') => {
                scanner.pos += 1;
                true
            }
            _ if first => false,
            _ => return Err(scanner.fail("expected '+' or '-' between terms")),
        };
        first = false;
        scanner.skip_ws();

        // Term: bare unit, or coefficient optionally followed by a unit.
        let (mut value, unit) = match scanner.peek() {
            Some(b) if unit_index(b).is_some() => {
                scanner.pos += 1;
                (S::from_int(1), unit_index(b))
            }
            Some(b'0'..=b'9') => {
                let coeff = scanner.coefficient::<S>()?;
                scanner.skip_ws();
                let unit = match scanner.peek() {
                    Some(b) if unit_index(b).is_some() => {
                        scanner.pos += 1;
                        unit_index(b)
                    }
                    _ => None,
                };
                (coeff, unit)
            }
            Some(_) => return Err(scanner.fail("expected a coefficient or unit (i, j, k)")),
            None => return Err(scanner.fail("expected a term after the sign")),
        };
        if negative {
            value = -value;
        }
        match unit {
            None => real = real + value,
            Some(idx) => {
                if imag[idx].is_some() {
                    return Err(LiteralError {
                        pos: scanner.pos - 1,
                        message: format!("unit '{}' appears more than once", [b'i', b'j', b'k'][idx] as char),
                    });
                }
                imag[idx] = Some(value);
            }
        }

        scanner.skip_ws();
        match scanner.peek() {
            None => break,
            Some(b'+') | Some(b'-') => continue,
            Some(_) => return Err(scanner.fail("expected '+', '-', or end of input")),
        }
    }

    let [x, y, z] = imag;
    Ok(Quaternion::new(
        real,
        x.unwrap_or_else(|| S::from_int(0)),
        y.unwrap_or_else(|| S::from_int(0)),
        z.unwrap_or_else(|| S::from_int(0)),
    ))
}

/// Renders one scalar: exact values through their rational form (`p/q`, or
/// `p` when the denominator is one), floats with 17 significant digits.
pub fn render_scalar<S: Scalar>(value: &S) -> String {
    if S::EXACT {
        value.to_string()
    } else {
        render_f64(value.to_f64())
    }
}

/// Canonical float rendering: scientific notation with 17 significant
/// digits, so equal values always print identically.
pub fn render_f64(value: f64) -> String {
    format!("{value:.16e}")
}

/// Renders one quaternion in the canonical literal form accepted by
/// [`parse_quat`]: terms in w, i, j, k order, zero components omitted,
/// unit coefficients of magnitude one printed as bare units.
pub fn render_quat<S: Scalar>(q: &Quaternion<S>) -> String {
    let zero = S::from_int(0);
    let one = S::from_int(1);
    let mut out = String::new();
    let components = [(&q.w, ""), (&q.x, "i"), (&q.y, "j"), (&q.z, "k")];
    for (value, unit) in components {
        if *value == zero {
            continue;
        }
        let negative = *value < zero;
        let magnitude = if negative {
            -value.clone()
        } else {
            value.clone()
        };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push(if negative { '-' } else { '+' });
        }
        if unit.is_empty() {
            out.push_str(&render_scalar(&magnitude));
        } else {
            if magnitude != one {
                out.push_str(&render_scalar(&magnitude));
            }
            out.push_str(unit);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

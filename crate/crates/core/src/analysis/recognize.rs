//! Recognition of rational and real quadratic numbers.

use std::fmt;

pub const DEFAULT_MAX_DENOMINATOR: u64 = 10_000;
pub const DEFAULT_MAX_DISCRIMINANT: u64 = 1000;
/// Bound on `|p|`, `|q|` and `r` in `(p + q sqrt(D)) / r`.
pub const QUADRATIC_COEFFICIENT_BOUND: i64 = 1000;
/// Largest residual ever accepted.
pub const RECOGNITION_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExactKind {
    Rational { p: i64, q: i64 },
    /// `(p + q sqrt(d)) / r` with `d` squarefree.
    Quadratic { p: i64, q: i64, d: i64, r: i64 },
    Unrecognized,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactValue {
    pub kind: ExactKind,
    /// `|x - value|`, or `NaN` when unrecognized.
    pub residual: f64,
}

impl ExactValue {
    pub fn value(&self) -> Option<f64> {
        match self.kind {
            ExactKind::Rational { p, q } => Some(p as f64 / q as f64),
            ExactKind::Quadratic { p, q, d, r } => Some((p as f64 + q as f64 * (d as f64).sqrt()) / r as f64),
            ExactKind::Unrecognized => None,
        }
    }

    pub fn is_recognized(&self) -> bool {
        self.kind != ExactKind::Unrecognized
    }
}

impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ExactKind::Rational { p, q: 1 } => write!(f, "{p}"),
            ExactKind::Rational { p, q } => write!(f, "{p}/{q}"),
            ExactKind::Quadratic { p, q, d, r } => {
                let root = match q {
                    1 => format!("sqrt({d})"),
                    -1 => format!("-sqrt({d})"),
                    _ => format!("{q}*sqrt({d})"),
                };
                let num = if p == 0 {
                    root
                } else if q > 0 {
                    format!("{p} + {}", root)
                } else {
                    format!("{p} - {}", root.trim_start_matches('-'))
                };
                if r == 1 { write!(f, "{num}") } else { write!(f, "({num})/{r}") }
            }
            ExactKind::Unrecognized => write!(f, "unrecognized"),
        }
    }
}

/// Accepted residual for a candidate of the given height. Larger heights need
/// closer agreement, otherwise almost every real number would be matched by
/// some quadratic number in the search space.
fn tolerance(height: f64) -> f64 {
    RECOGNITION_TOLERANCE.min(1e-4 / (height * height))
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a.abs() } else { gcd(b, a % b) }
}

fn rational(x: f64, max_den: u64) -> Option<ExactValue> {
    // continued fraction convergents h/k
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut y = x;
    for _ in 0..64 {
        let a = y.floor();
        if a.abs() > 1e15 {
            break;
        }
        let ai = a as i128;
        let (h2, k2) = (ai * h1 + h0, ai * k1 + k0);
        if k2 > max_den as i128 {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let residual = (x - h1 as f64 / k1 as f64).abs();
        if residual <= tolerance(k1 as f64) {
            return Some(ExactValue { kind: ExactKind::Rational { p: h1 as i64, q: k1 as i64 }, residual });
        }
        let frac = y - a;
        if frac == 0.0 {
            break;
        }
        y = 1.0 / frac;
    }
    None
}

/// Splits `m = q^2 d` with `d` squarefree, for `q` up to the coefficient bound.
fn square_part(m: i64) -> (i64, i64) {
    let (mut q, mut d) = (1i64, m);
    let mut f = 2i64;
    while f * f <= d && f <= QUADRATIC_COEFFICIENT_BOUND {
        while d % (f * f) == 0 {
            d /= f * f;
            q *= f;
        }
        f += 1;
    }
    (q, d)
}

fn quadratic(x: f64, max_disc: u64) -> Option<ExactValue> {
    let bound = QUADRATIC_COEFFICIENT_BOUND;
    let reach = bound as f64 * (max_disc as f64).sqrt();
    for r in 1..=bound {
        let rx = r as f64 * x;
        let p_lo = ((rx - reach).ceil() as i64).max(-bound);
        let p_hi = ((rx + reach).floor() as i64).min(bound);
        for p in p_lo..=p_hi {
            // r x - p = q sqrt(d), so its square must be the integer q^2 d
            let y = rx - p as f64;
            let v = y * y;
            let m = v.round();
            if m < 2.0 || (v - m).abs() > 2.0 * y.abs() * r as f64 * RECOGNITION_TOLERANCE + 1e-9 {
                continue;
            }
            let (q, d) = square_part(m as i64);
            if d < 2 || d as u64 > max_disc || q > bound {
                continue;
            }
            let q = if y < 0.0 { -q } else { q };
            if gcd(gcd(p, q), r) != 1 {
                continue;
            }
            let value = (p as f64 + q as f64 * (d as f64).sqrt()) / r as f64;
            let residual = (x - value).abs();
            let height = (p.abs().max(q.abs()).max(r)) as f64 * (d as f64).sqrt();
            if residual <= tolerance(height) {
                return Some(ExactValue { kind: ExactKind::Quadratic { p, q, d, r }, residual });
            }
        }
    }
    None
}

/// Looks for a rational `p/q` with `q <= max_den`, then for `(p + q sqrt(D))/r`
/// with squarefree `D <= max_disc`, preferring small denominators.
pub fn recognize_value(x: f64, max_den: u64, max_disc: u64) -> ExactValue {
    if !x.is_finite() || x.abs() > 10.0 {
        return ExactValue { kind: ExactKind::Unrecognized, residual: f64::NAN };
    }
    rational(x, max_den.max(1))
        .or_else(|| quadratic(x, max_disc))
        .unwrap_or(ExactValue { kind: ExactKind::Unrecognized, residual: f64::NAN })
}

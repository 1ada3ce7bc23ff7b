//! Potential functions of squared distance.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A potential `f(r)` evaluated on squared distance `r` in `(0, 4]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PotentialSpec {
    /// `1 / r^s`, `s > 0`.
    InversePower(f64),
    /// `1 / r^(n/2 - 1)` in ambient dimension `n`; in the plane this is `-log r`.
    Harmonic,
    /// `(4 - r)^k`, `k >= 1`.
    TruncatedPower(u32),
    /// `-log r`.
    Logarithmic,
}

impl PotentialSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            PotentialSpec::InversePower(s) if !(s > 0.0 && s.is_finite()) => {
                Err(Error::InvalidPotential(format!("inverse power exponent {s} must be positive")))
            }
            PotentialSpec::TruncatedPower(0) => {
                Err(Error::InvalidPotential("truncated power exponent must be at least 1".into()))
            }
            _ => Ok(()),
        }
    }

    /// Whether the potential blows up at `r = 0`.
    pub fn is_singular(&self) -> bool {
        !matches!(self, PotentialSpec::TruncatedPower(_))
    }

    /// Binds the potential to an ambient dimension.
    pub fn kernel(&self, dim: usize) -> Result<Kernel> {
        self.validate()?;
        Ok(match *self {
            PotentialSpec::InversePower(s) => Kernel::power(s),
            PotentialSpec::Harmonic => {
                if dim <= 2 {
                    Kernel::Log
                } else {
                    Kernel::power(dim as f64 / 2.0 - 1.0)
                }
            }
            PotentialSpec::TruncatedPower(k) => Kernel::Truncated(k),
            PotentialSpec::Logarithmic => Kernel::Log,
        })
    }
}

impl fmt::Display for PotentialSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PotentialSpec::InversePower(s) => write!(f, "power:{s}"),
            PotentialSpec::Harmonic => write!(f, "harmonic"),
            PotentialSpec::TruncatedPower(k) => write!(f, "truncated:{k}"),
            PotentialSpec::Logarithmic => write!(f, "log"),
        }
    }
}

impl FromStr for PotentialSpec {
    type Err = Error;

    /// Accepts `harmonic`, `log`, `power:<s>` and `truncated:<k>`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidPotential(format!("cannot parse potential `{s}`"));
        let spec = match s.split_once(':') {
            None => match s {
                "harmonic" => PotentialSpec::Harmonic,
                "log" | "logarithmic" => PotentialSpec::Logarithmic,
                _ => return Err(bad()),
            },
            Some(("power", v)) => PotentialSpec::InversePower(v.parse().map_err(|_| bad())?),
            Some(("truncated", v)) => PotentialSpec::TruncatedPower(v.parse().map_err(|_| bad())?),
            Some(_) => return Err(bad()),
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// A potential with its dimension-dependent exponent resolved.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Kernel {
    /// `r^-s`; `int` is set for integer `s`, `half` holds `2s` for half-integer `s`.
    Power { s: f64, int: Option<i32>, half: Option<u32> },
    Truncated(u32),
    Log,
}

impl Kernel {
    fn power(s: f64) -> Kernel {
        let int = (s.fract() == 0.0 && s <= 64.0).then_some(s as i32);
        let twice = 2.0 * s;
        let half = (int.is_none() && twice.fract() == 0.0 && twice <= 129.0).then_some(twice as u32);
        Kernel::Power { s, int, half }
    }

    pub fn is_singular(&self) -> bool {
        !matches!(self, Kernel::Truncated(_))
    }

    /// `f(r)`.
    #[inline]
    pub fn value(&self, r: f64) -> f64 {
        match *self {
            Kernel::Power { int: Some(k), .. } => 1.0 / r.powi(k),
            Kernel::Power { half: Some(m), .. } => 1.0 / r.sqrt().powi(m as i32),
            Kernel::Power { s, .. } => r.powf(-s),
            Kernel::Truncated(k) => (4.0 - r).powi(k as i32),
            Kernel::Log => -r.ln(),
        }
    }

    /// `f'(r)`.
    #[inline]
    pub fn d1(&self, r: f64) -> f64 {
        match *self {
            Kernel::Power { s, int: Some(k), .. } => -s / r.powi(k + 1),
            Kernel::Power { s, half: Some(m), .. } => -s / (r * r.sqrt().powi(m as i32)),
            Kernel::Power { s, .. } => -s * r.powf(-s - 1.0),
            Kernel::Truncated(k) => -(k as f64) * (4.0 - r).powi(k as i32 - 1),
            Kernel::Log => -1.0 / r,
        }
    }

    /// `f''(r)`.
    #[inline]
    pub fn d2(&self, r: f64) -> f64 {
        match *self {
            Kernel::Power { s, int: Some(k), .. } => s * (s + 1.0) / r.powi(k + 2),
            Kernel::Power { s, half: Some(m), .. } => s * (s + 1.0) / (r * r * r.sqrt().powi(m as i32)),
            Kernel::Power { s, .. } => s * (s + 1.0) * r.powf(-s - 2.0),
            Kernel::Truncated(1) => 0.0,
            Kernel::Truncated(k) => {
                let k = k as f64;
                k * (k - 1.0) * (4.0 - r).powi(k as i32 - 2)
            }
            Kernel::Log => 1.0 / (r * r),
        }
    }

    /// `f(r + dr) - f(r)` without cancellation when `dr` is small.
    #[inline]
    pub fn delta(&self, r: f64, dr: f64) -> f64 {
        let r2 = r + dr;
        match *self {
            Kernel::Power { int: Some(k), .. } => {
                // r^-k - r2^-k = (r2^k - r^k) / (r r2)^k
                let (a, b) = (r.powi(k), r2.powi(k));
                -dr * geometric_sum(r, r2, k as u32) / (a * b)
            }
            Kernel::Power { half: Some(m), .. } => {
                // with p = sqrt(r), q = sqrt(r2): q^-m - p^-m = (p^m - q^m) / (p q)^m
                let (p, q) = (r.sqrt(), r2.sqrt());
                -dr / (p + q) * geometric_sum(q, p, m) / (p.powi(m as i32) * q.powi(m as i32))
            }
            Kernel::Power { s, .. } => r.powf(-s) * (-s * (dr / r).ln_1p()).exp_m1(),
            Kernel::Truncated(k) => {
                let (u, u2) = (4.0 - r, 4.0 - r2);
                -dr * geometric_sum(u, u2, k)
            }
            Kernel::Log => -(dr / r).ln_1p(),
        }
    }
}

/// `sum_{j<k} a^j b^(k-1-j)`, so that `b^k - a^k = (b - a) * geometric_sum(a, b, k)`.
#[inline]
fn geometric_sum(a: f64, b: f64, k: u32) -> f64 {
    if b == 0.0 {
        // only the j = k-1 term survives
        return a.powi(k as i32 - 1);
    }
    let mut sum = 0.0;
    let mut pa = 1.0;
    let mut pb = b.powi(k as i32 - 1);
    let inv_b = 1.0 / b;
    for _ in 0..k {
        sum += pa * pb;
        pa *= a;
        pb *= inv_b;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kernels() -> Vec<Kernel> {
        vec![
            PotentialSpec::InversePower(1.0).kernel(3).unwrap(),
            PotentialSpec::InversePower(0.7).kernel(3).unwrap(),
            PotentialSpec::InversePower(2.5).kernel(3).unwrap(),
            PotentialSpec::Harmonic.kernel(3).unwrap(),
            PotentialSpec::Harmonic.kernel(8).unwrap(),
            PotentialSpec::TruncatedPower(1).kernel(5).unwrap(),
            PotentialSpec::TruncatedPower(7).kernel(5).unwrap(),
            PotentialSpec::Logarithmic.kernel(4).unwrap(),
        ]
    }

    #[test]
    fn derivatives_match_differences() {
        let h = 1e-5;
        for k in kernels() {
            for &r in &[0.3, 1.0, 2.5, 3.9] {
                let fd1 = (k.value(r + h) - k.value(r - h)) / (2.0 * h);
                let fd2 = (k.d1(r + h) - k.d1(r - h)) / (2.0 * h);
                assert!((fd1 - k.d1(r)).abs() <= 1e-7 * (1.0 + k.d1(r).abs()), "{k:?} {r}");
                assert!((fd2 - k.d2(r)).abs() <= 1e-6 * (1.0 + k.d2(r).abs()), "{k:?} {r}");
            }
        }
    }

    #[test]
    fn delta_agrees_with_plain_difference() {
        for k in kernels() {
            for &(r, dr) in &[(1.0, 0.25), (2.0, -0.5), (0.5, 1e-3), (3.0, 1.0)] {
                let plain = k.value(r + dr) - k.value(r);
                assert!((k.delta(r, dr) - plain).abs() <= 1e-12 * (1.0 + plain.abs()), "{k:?}");
            }
        }
    }

    #[test]
    fn delta_resolves_tiny_steps() {
        let k = PotentialSpec::InversePower(1.0).kernel(4).unwrap();
        let dr = 1e-14;
        let exact = -dr / (2.0 * (2.0 + dr));
        assert!((k.delta(2.0, dr) - exact).abs() < 1e-28);
    }

    #[test]
    fn harmonic_binds_dimension() {
        assert_eq!(PotentialSpec::Harmonic.kernel(4).unwrap().value(2.0), 0.5);
        assert_eq!(PotentialSpec::Harmonic.kernel(6).unwrap().value(2.0), 0.25);
        assert_eq!(PotentialSpec::Harmonic.kernel(2).unwrap(), Kernel::Log);
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        assert!(PotentialSpec::InversePower(0.0).validate().is_err());
        assert!(PotentialSpec::InversePower(-1.0).validate().is_err());
        assert!(PotentialSpec::TruncatedPower(0).validate().is_err());
        assert!("power:-2".parse::<PotentialSpec>().is_err());
        assert!("bogus".parse::<PotentialSpec>().is_err());
    }

    #[test]
    fn parse_display_round_trip() {
        for p in [
            PotentialSpec::Harmonic,
            PotentialSpec::Logarithmic,
            PotentialSpec::InversePower(2.5),
            PotentialSpec::TruncatedPower(12),
        ] {
            assert_eq!(p.to_string().parse::<PotentialSpec>().unwrap(), p);
        }
    }
}

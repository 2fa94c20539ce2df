//! Scalar field abstraction shared by the algebra layer.
//!
//! Everything below the dynamics module is generic over [`Scalar`], which is
//! implemented for `f64` and for arbitrary precision rationals ([`Rational`]).
//! Laws such as `dd = 0` or the index table are checked with rationals, where
//! equality is exact; particle integration runs on `f64`.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

/// Arbitrary precision rational number.
pub type Rational = num_rational::BigRational;

pub trait Scalar:
    Num + Neg<Output = Self> + Clone + PartialOrd + Debug + Send + Sync + 'static
{
    fn from_i64(v: i64) -> Self;

    /// Exact for rationals (every finite double is a dyadic rational).
    fn from_f64(v: f64) -> Self;

    fn to_f64(&self) -> f64;

    /// Nearest value for floats, exact copy for rationals.
    fn from_rational(r: &Rational) -> Self;

    fn abs_val(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Sign as -1, 0 or +1.
    fn signum_i(&self) -> i32 {
        if self.is_zero() {
            0
        } else if *self < Self::zero() {
            -1
        } else {
            1
        }
    }

    fn sqrt_f64(&self) -> f64 {
        self.to_f64().sqrt()
    }
}

impl Scalar for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_f64(v: f64) -> Self {
        v
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn from_rational(r: &Rational) -> Self {
        ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }

    fn abs_val(&self) -> Self {
        self.abs()
    }
}

impl Scalar for Rational {
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_f64(v: f64) -> Self {
        <Rational as FromPrimitive>::from_f64(v).unwrap_or_else(|| panic!("non-finite value {v} has no rational form"))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn abs_val(&self) -> Self {
        self.abs()
    }
}

/// Builds the rational `num/den`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"`, `"p"` or a decimal such as `"-0.25"` into an exact rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let t = text.trim();
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d == BigInt::from(0) {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    if let Some((int, frac)) = t.split_once('.') {
        let negative = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let n: BigInt = digits.parse().ok()?;
        let d = num_traits::pow(BigInt::from(10), frac.len());
        let r = Rational::new(n, d);
        return Some(if negative { -r } else { r });
    }
    t.parse::<BigInt>().ok().map(Rational::from_integer)
}

/// Canonical string form used by the field-definition file format.
pub fn format_rational(r: &Rational) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("3/4"), Some(ratio(3, 4)));
        assert_eq!(parse_rational("-7"), Some(ratio(-7, 1)));
        assert_eq!(parse_rational("-0.25"), Some(ratio(-1, 4)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
    }

    #[test]
    fn from_f64_is_exact() {
        let r = <Rational as Scalar>::from_f64(0.1);
        assert_eq!(Scalar::to_f64(&r), 0.1);
        assert_ne!(r, ratio(1, 10));
    }

    #[test]
    fn format_round_trips() {
        let r = ratio(-6, 8);
        assert_eq!(format_rational(&r), "-3/4");
        assert_eq!(parse_rational(&format_rational(&r)), Some(r));
    }
}

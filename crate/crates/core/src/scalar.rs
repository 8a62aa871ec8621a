//! Scalar fields the polynomial and matrix code is generic over.

use std::fmt::{Debug, Display};

use num::{BigInt, BigRational, Num, Signed, ToPrimitive, Zero};

use crate::double::DoubleDouble;

/// A real scalar field: binary floats (`f32`, `f64`) or exact rationals.
pub trait Scalar: Clone + Debug + Display + PartialOrd + Num + Signed + Send + Sync + 'static {
    /// `true` when arithmetic is exact (no rounding).
    const EXACT: bool;

    /// Significand precision in bits; `None` for exact fields.
    const PRECISION_BITS: Option<u32>;

    /// Short name of the field for reports.
    const NAME: &'static str;

    /// Highest polynomial degree built without an explicit override.
    const DEFAULT_DEGREE_CAP: Option<usize>;

    fn from_int(value: i64) -> Self;

    fn ratio(num: i64, den: i64) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }

    /// Converts a double. Exact for rationals, rounding for `f32`.
    fn from_f64_exact(value: f64) -> Self;

    fn to_f64_lossy(&self) -> f64;

    /// Exact rational value (every finite binary float is a dyadic rational).
    fn to_rational(&self) -> BigRational;

    /// Nearest value of the field to an exact rational.
    fn from_rational(value: &BigRational) -> Self;

    fn from_usize(value: usize) -> Self {
        Self::from_int(value as i64)
    }

    /// Whether the field resolves more than a double does, so that
    /// high-precision node data is worth using.
    fn beyond_f64() -> bool {
        Self::PRECISION_BITS.is_none_or(|bits| bits > f64::MANTISSA_DIGITS)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;
    const PRECISION_BITS: Option<u32> = Some(f64::MANTISSA_DIGITS);
    const NAME: &'static str = "f64";
    const DEFAULT_DEGREE_CAP: Option<usize> = Some(25);

    fn from_int(value: i64) -> Self {
        value as f64
    }

    fn from_f64_exact(value: f64) -> Self {
        value
    }

    fn to_f64_lossy(&self) -> f64 {
        *self
    }

    fn to_rational(&self) -> BigRational {
        BigRational::from_float(*self).unwrap_or_else(BigRational::zero)
    }

    fn from_rational(value: &BigRational) -> Self {
        ratio_to_f64(value)
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;
    const PRECISION_BITS: Option<u32> = Some(f32::MANTISSA_DIGITS);
    const NAME: &'static str = "f32";
    const DEFAULT_DEGREE_CAP: Option<usize> = Some(12);

    fn from_int(value: i64) -> Self {
        value as f32
    }

    fn from_f64_exact(value: f64) -> Self {
        value as f32
    }

    fn to_f64_lossy(&self) -> f64 {
        *self as f64
    }

    fn to_rational(&self) -> BigRational {
        BigRational::from_float(*self).unwrap_or_else(BigRational::zero)
    }

    fn from_rational(value: &BigRational) -> Self {
        ratio_to_f64(value) as f32
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;
    const PRECISION_BITS: Option<u32> = None;
    const NAME: &'static str = "rational";
    const DEFAULT_DEGREE_CAP: Option<usize> = None;

    fn from_int(value: i64) -> Self {
        BigRational::from_integer(BigInt::from(value))
    }

    fn ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn from_f64_exact(value: f64) -> Self {
        BigRational::from_float(value).unwrap_or_else(BigRational::zero)
    }

    fn to_f64_lossy(&self) -> f64 {
        ratio_to_f64(self)
    }

    fn to_rational(&self) -> BigRational {
        self.clone()
    }

    fn from_rational(value: &BigRational) -> Self {
        value.clone()
    }
}

/// Double-double arithmetic (about 106 significant bits).
impl Scalar for DoubleDouble {
    const EXACT: bool = false;
    const PRECISION_BITS: Option<u32> = Some(2 * f64::MANTISSA_DIGITS);
    const NAME: &'static str = "double-double";
    const DEFAULT_DEGREE_CAP: Option<usize> = Some(25);

    fn from_int(value: i64) -> Self {
        let hi = value as f64;
        DoubleDouble::new(hi, (value as i128 - hi as i128) as f64)
    }

    fn from_f64_exact(value: f64) -> Self {
        DoubleDouble::from(value)
    }

    fn to_f64_lossy(&self) -> f64 {
        self.hi() + self.lo()
    }

    fn to_rational(&self) -> BigRational {
        f64::to_rational(&self.hi()) + f64::to_rational(&self.lo())
    }

    fn from_rational(value: &BigRational) -> Self {
        let hi = ratio_to_f64(value);
        if !hi.is_finite() {
            return DoubleDouble::from(hi);
        }
        let lo = ratio_to_f64(&(value - f64::to_rational(&hi)));
        DoubleDouble::new(hi, lo)
    }
}

/// Conversion that survives numerators and denominators beyond the `f64` range.
fn ratio_to_f64(value: &BigRational) -> f64 {
    if let Some(x) = value.to_f64() {
        if x.is_finite() && (x != 0.0 || value.is_zero()) {
            return x;
        }
    }
    // Scale numerator and denominator down to ~64 significant bits each.
    let neg = value.is_negative();
    let num = value.numer().abs();
    let den = value.denom().clone();
    let nb = num.bits() as i64;
    let db = den.bits() as i64;
    let shift_n = (nb - 64).max(0);
    let shift_d = (db - 64).max(0);
    let n = (&num >> shift_n as usize).to_f64().unwrap_or(f64::INFINITY);
    let d = (&den >> shift_d as usize).to_f64().unwrap_or(f64::INFINITY);
    let x = n / d * 2f64.powi((shift_n - shift_d) as i32);
    if neg {
        -x
    } else {
        x
    }
}

/// Parses `"p/q"`, an integer, or a plain decimal such as `"-0.25"` into an exact rational.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    if let Some((p, q)) = text.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(i) => (&text[..i], text[i + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if frac_part.contains(['+', '-']) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    if digits.is_empty() || digits == "-" || digits == "+" {
        return None;
    }
    let n = BigInt::from_str_radix(&digits, 10).ok()?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    Some(if scale >= 0 {
        BigRational::from_integer(n * num::pow(ten, scale as usize))
    } else {
        BigRational::new(n, num::pow(ten, (-scale) as usize))
    })
}

/// Renders a rational as `"p/q"`, or `"p"` for integers.
pub fn format_rational(value: &BigRational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("1/2"), Some(BigRational::ratio(1, 2)));
        assert_eq!(parse_rational("0.5"), Some(BigRational::ratio(1, 2)));
        assert_eq!(parse_rational("-2"), Some(BigRational::from_int(-2)));
        assert_eq!(parse_rational("2.5e1"), Some(BigRational::from_int(25)));
        assert_eq!(parse_rational("1e-2"), Some(BigRational::ratio(1, 100)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
        assert_eq!(parse_rational(""), None);
    }

    #[test]
    fn formats_rationals() {
        assert_eq!(format_rational(&BigRational::ratio(-3, 6)), "-1/2");
        assert_eq!(format_rational(&BigRational::from_int(7)), "7");
    }

    #[test]
    fn huge_ratio_converts() {
        let big = num::pow(BigInt::from(10), 400);
        let r = BigRational::new(big.clone() * BigInt::from(3), big);
        assert_eq!(r.to_f64_lossy(), 3.0);
        let exact = BigRational::from_f64_exact(0.1);
        assert_eq!(exact.to_f64_lossy(), 0.1);
    }
}

//! Exact evaluation of rational polynomials at binary floating-point points.
//!
//! A polynomial is stored as integer coefficients over one common
//! denominator. Every finite double is a dyadic rational `m / 2^s`, so
//! Horner's scheme runs entirely in big integers with no gcd reductions, and
//! only the final value is rounded.

use num::bigint::BigInt;
use num::complex::Complex64;
use num::{BigRational, Integer, One, Signed, ToPrimitive, Zero};

use crate::polynomial::Polynomial;

/// Bits kept when a big integer is rounded to a double mantissa.
const MANTISSA_BITS: u64 = 64;

/// `mant * 2^exp`, wide enough for values far outside the range of `f64`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct Wide {
    pub mant: f64,
    pub exp: i64,
}

impl Wide {
    pub fn zero() -> Self {
        Self { mant: 0.0, exp: 0 }
    }

    pub fn from_big(h: &BigInt) -> Self {
        let shift = h.bits().saturating_sub(MANTISSA_BITS);
        let top = if shift == 0 { h.clone() } else { h >> shift };
        Self {
            mant: top.to_f64().unwrap_or(0.0),
            exp: shift as i64,
        }
    }

    pub fn to_f64(self) -> f64 {
        ldexp(self.mant, self.exp)
    }

    pub fn is_zero(self) -> bool {
        self.mant == 0.0
    }

    pub fn div(self, other: Self) -> f64 {
        ldexp(self.mant / other.mant, self.exp - other.exp)
    }
}

/// Complex value `z * 2^exp`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct WideComplex {
    pub z: Complex64,
    pub exp: i64,
}

impl WideComplex {
    fn from_big(re: &BigInt, im: &BigInt) -> Self {
        let shift = re.bits().max(im.bits()).saturating_sub(MANTISSA_BITS);
        let part = |h: &BigInt| {
            let top = if shift == 0 { h.clone() } else { h >> shift };
            top.to_f64().unwrap_or(0.0)
        };
        Self {
            z: Complex64::new(part(re), part(im)),
            exp: shift as i64,
        }
    }

    pub fn div(self, other: Self) -> Complex64 {
        let q = self.z / other.z;
        let k = self.exp - other.exp;
        Complex64::new(ldexp(q.re, k), ldexp(q.im, k))
    }

    pub fn norm(self) -> f64 {
        ldexp(self.z.norm(), self.exp)
    }
}

/// `x * 2^k` without intermediate overflow.
pub(crate) fn ldexp(mut x: f64, mut k: i64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    while k > 1000 {
        x *= 2f64.powi(1000);
        k -= 1000;
        if x.is_infinite() {
            return x;
        }
    }
    while k < -1000 {
        x *= 2f64.powi(-1000);
        k += 1000;
        if x == 0.0 {
            return x;
        }
    }
    x * 2f64.powi(k as i32)
}

/// The double `x` as `m / 2^s`.
pub(crate) fn dyadic(x: f64) -> (BigInt, u64) {
    if x == 0.0 {
        return (BigInt::zero(), 0);
    }
    let bits = x.to_bits();
    let negative = bits >> 63 == 1;
    let biased = ((bits >> 52) & 0x7ff) as i64;
    let fraction = bits & ((1u64 << 52) - 1);
    let (mantissa, exponent) = if biased == 0 {
        (fraction, -1074)
    } else {
        (fraction | (1u64 << 52), biased - 1075)
    };
    let mut m = BigInt::from(mantissa);
    if negative {
        m = -m;
    }
    if exponent >= 0 {
        (m << exponent as u64, 0)
    } else {
        let tz = mantissa.trailing_zeros() as i64;
        let drop = tz.min(-exponent);
        (m >> drop as u64, (-exponent - drop) as u64)
    }
}

/// `a / b` rounded to the nearest integer.
fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    let (b, a) = if b.is_negative() {
        (-b, -a)
    } else {
        (b.clone(), a.clone())
    };
    (a * 2u32 + &b).div_floor(&(b * 2u32))
}

/// Rounds to `bits` significant binary digits, keeping a dyadic denominator.
pub(crate) fn round_significant(r: &BigRational, bits: u64) -> BigRational {
    if r.is_zero() {
        return r.clone();
    }
    let scale = r.numer().bits() as i64 - r.denom().bits() as i64;
    let shift = bits as i64 - scale;
    if shift <= 0 {
        let unit = BigInt::one() << (-shift) as u64;
        let q = round_div(r.numer(), &(r.denom() * &unit));
        BigRational::from_integer(q * unit)
    } else {
        let q = round_div(&(r.numer() << shift as u64), r.denom());
        BigRational::new(q, BigInt::one() << shift as u64)
    }
}

/// A rational polynomial prepared for exact evaluation at doubles.
#[derive(Clone, Debug)]
pub(crate) struct ExactPoly {
    ints: Vec<BigInt>,
    lcm: BigInt,
    denom: Wide,
}

impl ExactPoly {
    pub fn new(p: &Polynomial<BigRational>) -> Self {
        let lcm = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints = p.coeffs().iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
        Self {
            ints,
            denom: Wide::from_big(&lcm),
            lcm,
        }
    }

    pub fn degree(&self) -> usize {
        self.ints.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.ints.is_empty()
    }

    /// Numerator `2^(s N) p(x) * denominator` as a big integer, and `s`.
    fn horner(&self, x: f64) -> (BigInt, u64) {
        let (m, s) = dyadic(x);
        (self.horner_dyadic(&m, s), s)
    }

    /// `2^(s N) p(m / 2^s) * denominator`.
    fn horner_dyadic(&self, m: &BigInt, s: u64) -> BigInt {
        let n = self.degree();
        let mut acc = self.ints[n].clone();
        for k in (0..n).rev() {
            acc = acc * m + (&self.ints[k] << (s * (n - k) as u64));
        }
        acc
    }

    /// `p(m / 2^s)` exactly.
    pub fn eval_dyadic(&self, m: &BigInt, s: u64) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        let den = &self.lcm << (s * self.degree() as u64);
        BigRational::new(self.horner_dyadic(m, s), den)
    }

    pub fn eval_wide(&self, x: f64) -> Wide {
        if self.is_zero() {
            return Wide::zero();
        }
        let (h, s) = self.horner(x);
        let w = Wide::from_big(&h);
        Wide {
            mant: w.mant / self.denom.mant,
            exp: w.exp - self.denom.exp - (s * self.degree() as u64) as i64,
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.eval_wide(x).to_f64()
    }

    pub fn eval_complex(&self, z: Complex64) -> WideComplex {
        if self.is_zero() {
            return WideComplex {
                z: Complex64::new(0.0, 0.0),
                exp: 0,
            };
        }
        let (mut mr, sr) = dyadic(z.re);
        let (mut mi, si) = dyadic(z.im);
        let s = sr.max(si);
        mr <<= s - sr;
        mi <<= s - si;
        let n = self.degree();
        let mut re = self.ints[n].clone();
        let mut im = BigInt::zero();
        for k in (0..n).rev() {
            let next_re = &re * &mr - &im * &mi;
            im = &re * &mi + &im * &mr;
            re = next_re + (&self.ints[k] << (s * (n - k) as u64));
        }
        let w = WideComplex::from_big(&re, &im);
        WideComplex {
            z: w.z / self.denom.mant,
            exp: w.exp - self.denom.exp - (s * n as u64) as i64,
        }
    }

    /// Newton iteration on the dyadic grid `2^-bits`, starting from the double
    /// `x`. Returns the numerator `m` of the refined zero `m / 2^bits`.
    pub fn refine(&self, derivative: &ExactPoly, x: f64, bits: u64) -> BigInt {
        let (m0, s0) = dyadic(x);
        let mut m = if s0 <= bits {
            m0 << (bits - s0)
        } else {
            m0 >> (s0 - bits)
        };
        if self.is_zero() || derivative.is_zero() {
            return m;
        }
        for _ in 0..16 {
            let value = self.horner_dyadic(&m, bits);
            let slope = derivative.horner_dyadic(&m, bits);
            if slope.is_zero() {
                break;
            }
            // p / p' = value lcm' / (slope lcm 2^bits); the step in grid units drops the 2^bits.
            let step = round_div(&(value * &derivative.lcm), &(slope * &self.lcm));
            if step.is_zero() {
                break;
            }
            m -= step;
        }
        m
    }

    /// `sum_k |c_k| |x|^k`, the natural scale for the rounding error of `p(x)`.
    pub fn abs_scale(&self, x: f64) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let ints: Vec<BigInt> = self.ints.iter().map(|c| c.abs()).collect();
        let abs = Self {
            ints,
            lcm: self.lcm.clone(),
            denom: self.denom,
        };
        abs.eval(x.abs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    #[test]
    fn dyadic_round_trips() {
        for x in [1.0, -0.75, 3.0e10, 1.0e-300, 5e-324, 0.1, -123.456] {
            let (m, s) = dyadic(x);
            let r = BigRational::new(m, BigInt::one() << s);
            assert_eq!(r, BigRational::from_float(x).unwrap());
        }
    }

    #[test]
    fn evaluation_is_exact() {
        let p = Polynomial::new(vec![
            BigRational::ratio(1, 3),
            BigRational::ratio(-5, 7),
            BigRational::from_int(0),
            BigRational::ratio(2, 9),
        ]);
        let e = ExactPoly::new(&p);
        for x in [0.0, 0.3, -1.7, 12.5, 1e-8] {
            let exact = p.eval(&BigRational::from_f64_exact(x)).to_f64_lossy();
            assert_eq!(e.eval(x), exact);
        }
        let z = Complex64::new(0.25, -1.5);
        let v = e.eval_complex(z);
        let direct = 1.0 / 3.0 - 5.0 / 7.0 * z + 2.0 / 9.0 * z * z * z;
        let got = Complex64::new(ldexp(v.z.re, v.exp), ldexp(v.z.im, v.exp));
        assert!((got - direct).norm() < 1e-14);
    }

    #[test]
    fn refinement_reaches_the_grid() {
        // x^2 - 2
        let p = Polynomial::new(vec![
            BigRational::from_int(-2),
            BigRational::from_int(0),
            BigRational::from_int(1),
        ]);
        let e = ExactPoly::new(&p);
        let de = ExactPoly::new(&p.derivative());
        let m = e.refine(&de, std::f64::consts::SQRT_2, 200);
        let x = BigRational::new(m, BigInt::one() << 200u64);
        let err = (x.clone() * x - BigRational::from_int(2)).abs();
        assert!(err < BigRational::new(BigInt::one(), BigInt::one() << 195u64));
        let r = round_significant(&BigRational::ratio(1, 3), 10);
        assert!((r - BigRational::ratio(1, 3)).abs() < BigRational::ratio(1, 1 << 11));
    }

    #[test]
    fn huge_values_stay_finite_in_ratios() {
        let p = Polynomial::new(vec![BigRational::from_int(0), BigRational::from_int(1)]);
        let big = Polynomial::new(vec![BigRational::from_int(0)]) + p.clone() * p.clone() * p;
        let e = ExactPoly::new(&big);
        let a = e.eval_wide(1e200);
        let b = e.eval_wide(1e199);
        assert!(a.to_f64().is_infinite());
        assert!((a.div(b) - 1000.0).abs() < 1e-9);
    }
}

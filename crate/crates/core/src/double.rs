//! Double-double scalar: an unevaluated sum `hi + lo` of two doubles.
//!
//! Addition, subtraction and multiplication come from `twofloat`. Division is
//! done here with two correction steps, since the library quotient is only
//! accurate to about one double.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Rem, RemAssign, Sub, SubAssign};

use num::{Num, One, Signed, Zero};
use twofloat::TwoFloat;

/// About 106 significant bits.
#[derive(Clone, Copy, Debug, Default, PartialEq, PartialOrd)]
pub struct DoubleDouble(TwoFloat);

impl DoubleDouble {
    pub fn new(hi: f64, lo: f64) -> Self {
        Self(TwoFloat::new_add(hi, lo))
    }

    pub fn hi(&self) -> f64 {
        self.0.hi()
    }

    pub fn lo(&self) -> f64 {
        self.0.lo()
    }

    fn trunc(self) -> Self {
        Self(self.0.trunc())
    }
}

impl From<f64> for DoubleDouble {
    fn from(value: f64) -> Self {
        Self(TwoFloat::from(value))
    }
}

impl fmt::Display for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        Self(-self.0)
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self(self.0 + rhs.0)
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self(self.0 - rhs.0)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self(self.0 * rhs.0)
    }
}

impl Div for DoubleDouble {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let b = rhs.0;
        let q0 = self.0.hi() / b.hi();
        if !q0.is_finite() || q0 == 0.0 {
            return Self::from(q0);
        }
        let r = self.0 - b * q0;
        let q1 = r.hi() / b.hi();
        let r = r - b * q1;
        let q2 = r.hi() / b.hi();
        Self(TwoFloat::new_add(q0, q1) + q2)
    }
}

impl Rem for DoubleDouble {
    type Output = Self;
    fn rem(self, rhs: Self) -> Self {
        self - (self / rhs).trunc() * rhs
    }
}

macro_rules! assign_ops {
    ($($trait:ident $method:ident $op:tt),*) => {$(
        impl $trait for DoubleDouble {
            fn $method(&mut self, rhs: Self) {
                *self = *self $op rhs;
            }
        }
    )*};
}

assign_ops!(AddAssign add_assign +, SubAssign sub_assign -, MulAssign mul_assign *, DivAssign div_assign /, RemAssign rem_assign %);

impl Zero for DoubleDouble {
    fn zero() -> Self {
        Self(TwoFloat::from(0.0))
    }

    fn is_zero(&self) -> bool {
        self.0.hi() == 0.0
    }
}

impl One for DoubleDouble {
    fn one() -> Self {
        Self(TwoFloat::from(1.0))
    }
}

impl Num for DoubleDouble {
    type FromStrRadixErr = <TwoFloat as Num>::FromStrRadixErr;

    fn from_str_radix(text: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        TwoFloat::from_str_radix(text, radix).map(Self)
    }
}

impl Signed for DoubleDouble {
    fn abs(&self) -> Self {
        if self.is_negative() {
            -*self
        } else {
            *self
        }
    }

    fn abs_sub(&self, other: &Self) -> Self {
        match self.partial_cmp(other) {
            Some(Ordering::Greater) => *self - *other,
            _ => Self::zero(),
        }
    }

    fn signum(&self) -> Self {
        Self(Signed::signum(&self.0))
    }

    fn is_positive(&self) -> bool {
        self.0.hi() > 0.0
    }

    fn is_negative(&self) -> bool {
        self.0.hi() < 0.0
    }
}

//! Gaussian rationals: complex numbers with exact rational parts.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct CScalar {
    pub re: BigRational,
    pub im: BigRational,
}

impl CScalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        Self::new(re, BigRational::zero())
    }

    pub fn int(n: i64) -> Self {
        Self::real(BigRational::from_integer(n.into()))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::real(BigRational::new(num.into(), den.into()))
    }

    pub fn gaussian(re: i64, im: i64) -> Self {
        Self::new(
            BigRational::from_integer(re.into()),
            BigRational::from_integer(im.into()),
        )
    }

    pub fn zero() -> Self {
        Self::int(0)
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn i() -> Self {
        Self::gaussian(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    /// |z|², exact.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Self::new(&self.re / &n, -&self.im / &n))
    }

    /// Exact square root when it exists in the Gaussian rationals. The root
    /// with positive real part (or positive imaginary part on the negative
    /// real axis) is returned.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        // sqrt(a + bi) = x + iy, x² = (a + |z|)/2, y² = (|z| − a)/2, 2xy = b
        let modulus = rational_sqrt(&self.norm_sqr())?;
        let two = BigRational::from_integer(2.into());
        let x = rational_sqrt(&((&self.re + &modulus) / &two))?;
        if x.is_zero() {
            let y = rational_sqrt(&((&modulus - &self.re) / &two))?;
            return Some(Self::new(x, y));
        }
        let y = &self.im / (&two * &x);
        Some(Self::new(x, y))
    }
}

/// Exact square root of a non-negative rational, if it is a perfect square.
pub fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let num = int_sqrt(q.numer())?;
    let den = int_sqrt(q.denom())?;
    Some(BigRational::new(num, den))
}

fn int_sqrt(n: &BigInt) -> Option<BigInt> {
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

impl From<BigRational> for CScalar {
    fn from(re: BigRational) -> Self {
        Self::real(re)
    }
}

impl From<i64> for CScalar {
    fn from(n: i64) -> Self {
        Self::int(n)
    }
}

impl<'a> Add<&'a CScalar> for &'a CScalar {
    type Output = CScalar;
    fn add(self, rhs: &CScalar) -> CScalar {
        CScalar::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a CScalar> for &'a CScalar {
    type Output = CScalar;
    fn sub(self, rhs: &CScalar) -> CScalar {
        CScalar::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a CScalar> for &'a CScalar {
    type Output = CScalar;
    fn mul(self, rhs: &CScalar) -> CScalar {
        CScalar::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl<'a> Div<&'a CScalar> for &'a CScalar {
    type Output = CScalar;
    /// Panics on division by zero, like the rational type underneath.
    fn div(self, rhs: &CScalar) -> CScalar {
        self * &rhs.inv().expect("division by zero")
    }
}

impl Neg for &CScalar {
    type Output = CScalar;
    fn neg(self) -> CScalar {
        CScalar::new(-&self.re, -&self.im)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<CScalar> for CScalar {
            type Output = CScalar;
            fn $m(self, rhs: CScalar) -> CScalar { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a CScalar> for CScalar {
            type Output = CScalar;
            fn $m(self, rhs: &CScalar) -> CScalar { (&self).$m(rhs) }
        }
        impl<'a> $tr<CScalar> for &'a CScalar {
            type Output = CScalar;
            fn $m(self, rhs: CScalar) -> CScalar { self.$m(&rhs) }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for CScalar {
    type Output = CScalar;
    fn neg(self) -> CScalar {
        -&self
    }
}

impl Zero for CScalar {
    fn zero() -> Self {
        CScalar::zero()
    }
    fn is_zero(&self) -> bool {
        CScalar::is_zero(self)
    }
}

impl One for CScalar {
    fn one() -> Self {
        CScalar::one()
    }
}

impl fmt::Display for CScalar {
    /// Compact form: `3`, `-4i`, `1/2+3/4i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im = |q: &BigRational| {
            if q.is_one() {
                "i".to_string()
            } else if (-q).is_one() {
                "-i".to_string()
            } else {
                format!("{q}i")
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => f.write_str(&im(&self.im)),
            (false, false) => {
                let sign = if self.im.is_positive() { "+" } else { "" };
                write!(f, "{}{}{}", self.re, sign, im(&self.im))
            }
        }
    }
}

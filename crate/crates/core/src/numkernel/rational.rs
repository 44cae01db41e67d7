use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::KernelError;

/// Exact rational number, always in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        Rational(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Self {
        Rational(self.0.recip())
    }

    pub fn pow(&self, e: u32) -> Self {
        Rational(num_traits::Pow::pow(&self.0, e))
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.numer().clone())
    }

    /// Natural log of the absolute value; `-inf` for zero.
    pub fn ln_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        ln_abs_int(self.numer()) - ln_abs_int(self.denom())
    }

    /// Nearest `f64` (to within an ulp), saturating to infinity or zero.
    pub fn to_f64(&self) -> f64 {
        self.to_f64_scaled(0)
    }

    /// `self · 2^{−e}` as an `f64`, without forming `self` in floating point.
    pub fn to_f64_scaled(&self, e: i64) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let (n, d) = (self.numer().abs(), self.denom());
        // Shift so the integer quotient carries at least 64 significant bits.
        let shift = 64 + d.bits() as i64 - n.bits() as i64;
        let q: BigInt = if shift >= 0 { (n << shift as u64) / d } else { (n >> (-shift) as u64) / d };
        let mag = ldexp(q.to_f64().unwrap_or(f64::INFINITY), -shift - e);
        if self.is_negative() {
            -mag
        } else {
            mag
        }
    }

    /// `⌊log₂ |self|⌋` up to ±1; `None` for zero.
    pub fn log2_estimate(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.numer().bits() as i64 - self.denom().bits() as i64)
    }

    /// Exact conversion of a finite `f64` (every finite double is dyadic).
    pub fn from_f64(x: f64) -> Option<Self> {
        BigRational::from_float(x).map(Rational)
    }

    pub fn into_inner(self) -> BigRational {
        self.0
    }
}

/// `ln |n|` for a nonzero big integer, accurate to double precision.
pub fn ln_abs_int(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 64 {
        return n.abs().to_f64().unwrap_or(f64::NAN).ln();
    }
    let shift = bits - 64;
    let top: BigInt = n.abs() >> shift;
    top.to_f64().unwrap_or(f64::NAN).ln() + shift as f64 * std::f64::consts::LN_2
}

/// `x · 2^e`, stepping so that intermediate powers of two stay finite.
pub fn ldexp(mut x: f64, mut e: i64) -> f64 {
    while e > 1000 && x.is_finite() && x != 0.0 {
        x *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 && x != 0.0 {
        x *= 2f64.powi(-1000);
        e += 1000;
    }
    x * 2f64.powi(e as i32)
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl FromStr for Rational {
    type Err = KernelError;

    /// Accepts `"p/q"`, a bare integer `"p"`, or an exact decimal such as `"-0.05"` or `"1.5e-3"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || KernelError::ParseRational(s.to_string());
        let t = s.trim();
        if !t.contains('/') && t.contains(['.', 'e', 'E']) {
            return parse_decimal(t).ok_or_else(bad);
        }
        match t.split_once('/') {
            Some((p, q)) => {
                let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
                let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
                if q.is_zero() {
                    return Err(bad());
                }
                Ok(Rational::new(p, q))
            }
            None => BigInt::from_str(t).map(Rational::from_integer).map_err(|_| bad()),
        }
    }
}

fn parse_decimal(t: &str) -> Option<Rational> {
    let (mantissa, exp) = match t.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().ok()?),
        None => (t, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let mut value = BigInt::from_str(&format!("{int}{frac}")).ok()?;
    if negative {
        value = -value;
    }
    let scale = exp - frac.len() as i32;
    let ten = Rational::from_integer(10);
    Some(if scale >= 0 {
        Rational::from_integer(value) * ten.pow(scale as u32)
    } else {
        Rational::from_integer(value) / ten.pow(scale.unsigned_abs())
    })
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl<'a> $tr<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $m(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$m(&rhs.0))
            }
        }
        impl $tr for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                Rational(self.0.$m(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

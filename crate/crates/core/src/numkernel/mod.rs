//! Exact arithmetic substrate: rationals, dense univariate polynomials in the
//! model parameter λ, and sparse bivariate polynomials in `x`, `y`.
//!
//! All bivariate arithmetic is generic over [`Ring`]. The two exact
//! coefficient rings used by the expansion pipeline are [`Rational`] and
//! [`ParamPoly`]; each has an integral counterpart (`BigInt`, `Poly1<BigInt>`)
//! reachable through [`Exact`], which lets hot loops run without any gcd
//! normalisation and divide out a common denominator once at the end.

mod bivar;
mod coeff;
mod poly1;
mod rational;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

pub use bivar::{BivarPoly, Exponent};
pub use coeff::Coeff;
pub use poly1::{ParamPoly, Poly1};
pub use rational::{ldexp, ln_abs_int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("coefficient variant mismatch: cannot combine a rational with a λ-polynomial")]
    VariantMismatch,
    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),
}

/// Commutative ring with exact arithmetic.
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_assign_ref(&mut self, rhs: &Self);
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn scale_int(&self, k: &BigInt) -> Self;

    /// `self += a * b`
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        let p = a.mul_ref(b);
        self.add_assign_ref(&p);
    }

    fn from_int(k: &BigInt) -> Self {
        Self::one().scale_int(k)
    }
}

/// Exact field-like coefficient ring with an integral sub-ring used for
/// denominator-free computation.
pub trait Exact: Ring {
    type Integral: Ring;

    /// Least common multiple of every denominator appearing in `self`.
    fn denominator_lcm(&self) -> BigInt;
    /// `self * scale`; `scale` must clear every denominator.
    fn to_integral(&self, scale: &BigInt) -> Self::Integral;
    /// `value / denom`, reduced to lowest terms.
    fn from_integral(value: &Self::Integral, denom: &BigInt) -> Self;
    fn div_int(&self, k: &BigInt) -> Self;
    fn into_coeff(self) -> Coeff;
    fn from_coeff(c: &Coeff) -> Option<Self>;
}

impl Ring for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        *self += rhs;
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn scale_int(&self, k: &BigInt) -> Self {
        self * k
    }
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
}

impl Ring for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        *self = &*self + rhs;
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn scale_int(&self, k: &BigInt) -> Self {
        self * &Rational::from_integer(k.clone())
    }
}

impl Exact for Rational {
    type Integral = BigInt;

    fn denominator_lcm(&self) -> BigInt {
        self.denom().clone()
    }
    fn to_integral(&self, scale: &BigInt) -> BigInt {
        let r = self.scale_int(scale);
        debug_assert!(r.is_integer(), "scale does not clear denominator");
        r.numer().clone()
    }
    fn from_integral(value: &BigInt, denom: &BigInt) -> Self {
        Rational::new(value.clone(), denom.clone())
    }
    fn div_int(&self, k: &BigInt) -> Self {
        self / &Rational::from_integer(k.clone())
    }
    fn into_coeff(self) -> Coeff {
        Coeff::Rational(self)
    }
    fn from_coeff(c: &Coeff) -> Option<Self> {
        match c {
            Coeff::Rational(r) => Some(r.clone()),
            Coeff::Param(_) => None,
        }
    }
}

/// Least common multiple of the denominators of every item.
pub fn common_denominator<'a, C: Exact>(items: impl IntoIterator<Item = &'a C>) -> BigInt {
    use num_integer::Integer;
    items
        .into_iter()
        .fold(<BigInt as One>::one(), |acc, c| acc.lcm(&c.denominator_lcm()))
}

/// `n!` as a big integer.
pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(<BigInt as One>::one(), |acc, i| acc * i)
}

/// `ln n!`, summed in double precision.
pub fn ln_factorial(n: u64) -> f64 {
    // Neumaier summation keeps the error near one ulp for n in the thousands.
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for i in 2..=n {
        let v = (i as f64).ln();
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

use std::ops::{Add, Mul};

use num_complex::Complex64;

use crate::expansion::PotentialSpec;
use crate::numkernel::{factorial, Exponent};

/// Scalars the potential can be evaluated over.
pub trait Scalar: Copy + Add<Output = Self> + Mul<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn powu(self, e: u32) -> Self;
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn powu(self, e: u32) -> Self {
        self.powi(e as i32)
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn powu(self, e: u32) -> Self {
        Complex64::powu(&self, e)
    }
}

/// Value, gradient and Hessian of `V` at one point.
#[derive(Clone, Copy, Debug)]
pub struct Jet<T> {
    pub v: T,
    pub vx: T,
    pub vy: T,
    pub vxx: T,
    pub vxy: T,
    pub vyy: T,
}

/// `V(x, y) = Σ c_{u,w} x^u y^w` with double-precision coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct FloatPoly {
    terms: Vec<(Exponent, f64)>,
}

impl FloatPoly {
    /// Raw monomial coefficients `c_{u,w}`.
    pub fn new(terms: Vec<(Exponent, f64)>) -> Self {
        FloatPoly { terms: terms.into_iter().filter(|&(_, c)| c != 0.0).collect() }
    }

    /// `V` of a potential at a fixed λ, i.e. `c_{u,w} = Λ_{u,w}(λ)/(u!·w!)`.
    pub fn from_potential(pot: &PotentialSpec, lambda: f64) -> Self {
        Self::new(
            pot.lambda_values(lambda)
                .into_iter()
                .map(|((u, w), c)| {
                    let denom = crate::numkernel::Rational::from_integer(factorial(u as u64) * factorial(w as u64));
                    ((u, w), c / denom.to_f64())
                })
                .collect(),
        )
    }

    pub fn terms(&self) -> &[(Exponent, f64)] {
        &self.terms
    }

    /// Common total degree of all terms, if there is one.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.iter().map(|&((u, w), _)| u + w);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Terms of one total degree.
    pub fn part(&self, degree: u32) -> FloatPoly {
        FloatPoly::new(self.terms.iter().copied().filter(|&((u, w), _)| u + w == degree).collect())
    }

    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.iter().map(|&((u, w), _)| u + w).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn eval<T: Scalar>(&self, x: T, y: T) -> T {
        self.terms.iter().fold(T::zero(), |acc, &((u, w), c)| acc + x.powu(u) * y.powu(w) * c)
    }

    pub fn jet<T: Scalar>(&self, x: T, y: T) -> Jet<T> {
        let mut j = Jet { v: T::zero(), vx: T::zero(), vy: T::zero(), vxx: T::zero(), vxy: T::zero(), vyy: T::zero() };
        let pw = |b: T, e: u32, drop: u32| if e >= drop { b.powu(e - drop) } else { T::zero() };
        for &((u, w), c) in &self.terms {
            let (uf, wf) = (u as f64, w as f64);
            j.v = j.v + pw(x, u, 0) * pw(y, w, 0) * c;
            j.vx = j.vx + pw(x, u, 1) * pw(y, w, 0) * (c * uf);
            j.vy = j.vy + pw(x, u, 0) * pw(y, w, 1) * (c * wf);
            j.vxx = j.vxx + pw(x, u, 2) * pw(y, w, 0) * (c * uf * (uf - 1.0));
            j.vxy = j.vxy + pw(x, u, 1) * pw(y, w, 1) * (c * uf * wf);
            j.vyy = j.vyy + pw(x, u, 0) * pw(y, w, 2) * (c * wf * (wf - 1.0));
        }
        j
    }
}

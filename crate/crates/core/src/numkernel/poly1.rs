use std::fmt;

use num_bigint::BigInt;

use super::{Coeff, Exact, Rational, Ring};

/// Dense univariate polynomial, ascending coefficients, trailing zeros trimmed.
/// The zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly1<R> {
    coeffs: Vec<R>,
}

/// Polynomial in the model parameter λ with exact rational coefficients.
pub type ParamPoly = Poly1<Rational>;

impl<R: Ring> Poly1<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(Ring::is_zero) {
            coeffs.pop();
        }
        Poly1 { coeffs }
    }

    pub fn constant(c: R) -> Self {
        Self::new(vec![c])
    }

    /// `c · λ^e`
    pub fn monomial(c: R, e: usize) -> Self {
        let mut v = vec![R::zero(); e];
        v.push(c);
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> R {
        self.coeffs.get(i).cloned().unwrap_or_else(R::zero)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Ring::is_zero) {
            self.coeffs.pop();
        }
    }
}

impl<R: Ring> Ring for Poly1<R> {
    fn zero() -> Self {
        Poly1 { coeffs: Vec::new() }
    }

    fn one() -> Self {
        Poly1 { coeffs: vec![R::one()] }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_assign_ref(&mut self, rhs: &Self) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), R::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            a.add_assign_ref(b);
        }
        self.trim();
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        out.add_mul_assign(self, rhs);
        out
    }

    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        // Iterate over the sparser factor's nonzero entries; potential
        // coefficients are usually single λ-monomials.
        let (short, long) = if a.coeffs.len() <= b.coeffs.len() { (a, b) } else { (b, a) };
        let need = a.coeffs.len() + b.coeffs.len() - 1;
        if self.coeffs.len() < need {
            self.coeffs.resize(need, R::zero());
        }
        for (i, s) in short.coeffs.iter().enumerate() {
            if s.is_zero() {
                continue;
            }
            for (j, l) in long.coeffs.iter().enumerate() {
                self.coeffs[i + j].add_mul_assign(s, l);
            }
        }
        self.trim();
    }

    fn neg_ref(&self) -> Self {
        Poly1 { coeffs: self.coeffs.iter().map(Ring::neg_ref).collect() }
    }

    fn scale_int(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.scale_int(k)).collect())
    }
}

impl Poly1<Rational> {
    /// Exact value, by integer Horner on `Σ (L·c_i)·p^i·q^{D−i}` for `x = p/q`
    /// and common denominator `L`, with a single reduction at the end.
    pub fn eval(&self, x: &Rational) -> Rational {
        let scale = self.denominator_lcm();
        let body = self.to_integral(&scale);
        let (p, q) = (x.numer(), x.denom());
        let mut acc = BigInt::from(0);
        let mut q_pow = BigInt::from(1);
        for c in body.coeffs.iter().rev() {
            acc = acc * p + c * &q_pow;
            q_pow *= q;
        }
        let denom = scale * num_traits::pow(q.clone(), self.coeffs.len().saturating_sub(1));
        Rational::new(acc, denom)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64())
    }

    pub fn from_strs<S: AsRef<str>>(items: &[S]) -> Result<Self, super::KernelError> {
        let coeffs = items
            .iter()
            .map(|s| s.as_ref().parse::<Rational>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(coeffs))
    }
}

impl Exact for Poly1<Rational> {
    type Integral = Poly1<BigInt>;

    fn denominator_lcm(&self) -> BigInt {
        super::common_denominator(self.coeffs.iter())
    }

    fn to_integral(&self, scale: &BigInt) -> Poly1<BigInt> {
        Poly1::new(self.coeffs.iter().map(|c| c.to_integral(scale)).collect())
    }

    fn from_integral(value: &Poly1<BigInt>, denom: &BigInt) -> Self {
        Self::new(value.coeffs.iter().map(|c| Rational::from_integral(c, denom)).collect())
    }

    fn div_int(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.div_int(k)).collect())
    }

    fn into_coeff(self) -> Coeff {
        Coeff::Param(self)
    }

    fn from_coeff(c: &Coeff) -> Option<Self> {
        match c {
            Coeff::Param(p) => Some(p.clone()),
            Coeff::Rational(_) => None,
        }
    }
}

impl<R: Ring + fmt::Display> fmt::Display for Poly1<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})·λ")?,
                _ => write!(f, "({c})·λ^{i}")?,
            }
        }
        Ok(())
    }
}

impl<R: fmt::Debug> fmt::Debug for Poly1<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.coeffs).finish()
    }
}

use std::fmt;

use super::{KernelError, ParamPoly, Rational, Ring};

/// A single exact coefficient: either a rational constant or a polynomial in
/// the model parameter λ.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Coeff {
    Rational(Rational),
    Param(ParamPoly),
}

impl Coeff {
    pub fn is_param(&self) -> bool {
        matches!(self, Coeff::Param(_))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Rational(r) => r.is_zero(),
            Coeff::Param(p) => p.is_zero(),
        }
    }

    /// Zero of the same variant as `self`.
    pub fn zero_like(&self) -> Coeff {
        match self {
            Coeff::Rational(_) => Coeff::Rational(Rational::zero()),
            Coeff::Param(_) => Coeff::Param(ParamPoly::zero()),
        }
    }

    pub fn checked_add(&self, rhs: &Coeff) -> Result<Coeff, KernelError> {
        match (self, rhs) {
            (Coeff::Rational(a), Coeff::Rational(b)) => Ok(Coeff::Rational(a + b)),
            (Coeff::Param(a), Coeff::Param(b)) => {
                let mut s = a.clone();
                s.add_assign_ref(b);
                Ok(Coeff::Param(s))
            }
            _ => Err(KernelError::VariantMismatch),
        }
    }

    pub fn checked_mul(&self, rhs: &Coeff) -> Result<Coeff, KernelError> {
        match (self, rhs) {
            (Coeff::Rational(a), Coeff::Rational(b)) => Ok(Coeff::Rational(a * b)),
            (Coeff::Param(a), Coeff::Param(b)) => Ok(Coeff::Param(a.mul_ref(b))),
            _ => Err(KernelError::VariantMismatch),
        }
    }

    /// Value at a fixed λ; rationals are returned unchanged.
    pub fn eval(&self, lambda: &Rational) -> Rational {
        match self {
            Coeff::Rational(r) => r.clone(),
            Coeff::Param(p) => p.eval(lambda),
        }
    }

    pub fn eval_f64(&self, lambda: f64) -> f64 {
        match self {
            Coeff::Rational(r) => r.to_f64(),
            Coeff::Param(p) => p.eval_f64(lambda),
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Coeff::Rational(r) => Some(r),
            Coeff::Param(_) => None,
        }
    }

    pub fn as_param(&self) -> Option<&ParamPoly> {
        match self {
            Coeff::Param(p) => Some(p),
            Coeff::Rational(_) => None,
        }
    }
}

impl From<Rational> for Coeff {
    fn from(r: Rational) -> Self {
        Coeff::Rational(r)
    }
}

impl From<ParamPoly> for Coeff {
    fn from(p: ParamPoly) -> Self {
        Coeff::Param(p)
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Rational(r) => write!(f, "{r}"),
            Coeff::Param(p) => write!(f, "{p}"),
        }
    }
}

impl fmt::Debug for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Rational(r) => write!(f, "{r:?}"),
            Coeff::Param(p) => write!(f, "λ{p:?}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixing_variants_is_rejected() {
        let r = Coeff::from(Rational::one());
        let p = Coeff::from(ParamPoly::one());
        assert_eq!(r.checked_add(&p), Err(KernelError::VariantMismatch));
        assert_eq!(p.checked_mul(&r), Err(KernelError::VariantMismatch));
        assert!(r.checked_add(&r).is_ok());
    }
}

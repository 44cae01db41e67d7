use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::ExpansionError;
use crate::numkernel::{factorial, BivarPoly, Coeff, Exact, Exponent, KernelError, ParamPoly, Rational};

/// Vertex weights `Λ_{u,w}` of `V(x, y) = Σ Λ_{u,w} x^u y^w / (u!·w!)`.
///
/// Every stored term has `u + w ≥ 3` and a nonzero coefficient, and all
/// coefficients share one [`Coeff`] variant.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PotentialSpec {
    terms: BTreeMap<Exponent, Coeff>,
    param: bool,
}

impl PotentialSpec {
    pub fn new(items: impl IntoIterator<Item = (Exponent, Coeff)>) -> Result<Self, ExpansionError> {
        let mut terms = BTreeMap::new();
        let mut variant: Option<bool> = None;
        for ((u, w), c) in items {
            if u + w < 3 {
                return Err(ExpansionError::LowDegreeTerm { u, w });
            }
            match variant {
                None => variant = Some(c.is_param()),
                Some(p) if p != c.is_param() => return Err(KernelError::VariantMismatch.into()),
                Some(_) => {}
            }
            if terms.contains_key(&(u, w)) {
                return Err(ExpansionError::DuplicateTerm { u, w });
            }
            if !c.is_zero() {
                terms.insert((u, w), c);
            }
        }
        Ok(PotentialSpec { terms, param: variant.unwrap_or(false) })
    }

    pub fn rational(items: impl IntoIterator<Item = (Exponent, Rational)>) -> Result<Self, ExpansionError> {
        Self::new(items.into_iter().map(|(e, c)| (e, Coeff::Rational(c))))
    }

    pub fn parametric(items: impl IntoIterator<Item = (Exponent, ParamPoly)>) -> Result<Self, ExpansionError> {
        let mut p = Self::new(items.into_iter().map(|(e, c)| (e, Coeff::Param(c))))?;
        p.param = true;
        Ok(p)
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, Coeff> {
        &self.terms
    }

    pub fn is_param(&self) -> bool {
        self.param
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(u, w)| u + w).min()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(u, w)| u + w).max()
    }

    /// `Some` iff every term has the same total degree.
    pub fn regularity(&self) -> Option<RegularityInfo> {
        match (self.min_degree(), self.max_degree()) {
            (Some(a), Some(b)) if a == b => Some(RegularityInfo::new(a)),
            _ => None,
        }
    }

    /// The rational potential obtained by fixing λ.
    pub fn at_lambda(&self, lambda: &Rational) -> PotentialSpec {
        let terms = self
            .terms
            .iter()
            .filter_map(|(e, c)| {
                let v = c.eval(lambda);
                (!v.is_zero()).then(|| (*e, Coeff::Rational(v)))
            })
            .collect();
        PotentialSpec { terms, param: false }
    }

    /// `Λ_{u,w}` in double precision at the given λ.
    pub fn lambda_values(&self, lambda: f64) -> Vec<(Exponent, f64)> {
        self.terms.iter().map(|(e, c)| (*e, c.eval_f64(lambda))).collect()
    }

    /// `V` itself, i.e. `Λ_{u,w}/(u!·w!)` on `x^u y^w`. `None` on a variant mismatch.
    pub fn v_poly<C: Exact>(&self) -> Option<BivarPoly<C>> {
        let mut out = BivarPoly::zero();
        for (&(u, w), c) in &self.terms {
            let c = C::from_coeff(c)?;
            let denom: BigInt = factorial(u as u64) * factorial(w as u64);
            out.add_term((u, w), &c.div_int(&denom));
        }
        Some(out)
    }
}

/// Degree data of a `k`-regular (homogeneous) potential.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityInfo {
    /// Vertex degree `k`.
    pub k: u32,
    /// Edges per unit of `n`: `M = k/(k−2)`.
    pub m: Rational,
    /// Vertices per unit of `n`: `K = 2/(k−2)`.
    pub kk: Rational,
}

impl RegularityInfo {
    pub fn new(k: u32) -> Self {
        assert!(k >= 3, "regular graphs here need k ≥ 3");
        let d = (k - 2) as i64;
        RegularityInfo { k, m: Rational::new(k as i64, d), kk: Rational::new(2, d) }
    }

    /// Smallest `d` such that `A_n = 0` unless `d ∣ n`: the denominator of `K`.
    pub fn vanishing_period(&self) -> u64 {
        self.kk.denom().to_u64().expect("small denominator")
    }

    /// Vertex count `nK`, or `None` if not an integer.
    pub fn vertices(&self, n: u64) -> Option<u64> {
        (&self.kk * &Rational::from(n as i64)).to_integer().and_then(|v| v.to_u64())
    }

    /// Edge count `nM`, or `None` if not an integer.
    pub fn edges(&self, n: u64) -> Option<u64> {
        (&self.m * &Rational::from(n as i64)).to_integer().and_then(|v| v.to_u64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::Ring;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn rejects_low_degree_terms() {
        for e in [(0, 0), (1, 0), (0, 2), (1, 1)] {
            let err = PotentialSpec::rational([(e, r("1"))]).unwrap_err();
            assert!(matches!(err, ExpansionError::LowDegreeTerm { .. }));
        }
    }

    #[test]
    fn rejects_mixed_variants_and_duplicates() {
        let mixed = PotentialSpec::new([((3, 0), Coeff::from(r("1"))), ((0, 3), Coeff::from(ParamPoly::one()))]);
        assert_eq!(mixed.unwrap_err(), ExpansionError::Kernel(KernelError::VariantMismatch));
        let dup = PotentialSpec::rational([((3, 0), r("1")), ((3, 0), r("2"))]);
        assert_eq!(dup.unwrap_err(), ExpansionError::DuplicateTerm { u: 3, w: 0 });
    }

    #[test]
    fn zero_terms_are_dropped() {
        let p = PotentialSpec::rational([((3, 0), r("0")), ((4, 0), r("1"))]).unwrap();
        assert_eq!(p.terms().len(), 1);
        assert_eq!(p.regularity().unwrap().k, 4);
    }

    #[test]
    fn regularity_ratios() {
        for k in 3..9 {
            let info = RegularityInfo::new(k);
            assert_eq!(&info.m - &info.kk, Rational::one());
            assert_eq!(&info.kk * &Rational::new(k as i64, 2), info.m);
        }
        assert_eq!(RegularityInfo::new(3).vanishing_period(), 1);
        assert_eq!(RegularityInfo::new(4).vanishing_period(), 1);
        assert_eq!(RegularityInfo::new(5).vanishing_period(), 3);
        assert_eq!(RegularityInfo::new(6).vanishing_period(), 2);
        assert_eq!(RegularityInfo::new(5).vertices(1), None);
        assert_eq!(RegularityInfo::new(5).vertices(3), Some(2));
        assert_eq!(RegularityInfo::new(5).edges(3), Some(5));
    }

    #[test]
    fn v_divides_by_factorials() {
        let p = PotentialSpec::rational([((2, 2), r("1"))]).unwrap();
        let v = p.v_poly::<Rational>().unwrap();
        assert_eq!(v.coeff((2, 2)), Some(&r("1/4")));
        assert!(p.v_poly::<ParamPoly>().is_none());
    }
}

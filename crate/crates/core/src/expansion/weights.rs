use std::collections::BTreeMap;
use std::fmt;

use crate::numkernel::{factorial, Exponent, Rational};

/// `Π λ_{u,w}^e` over symbolic vertex weights, factors sorted by `(u, w)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Debug)]
pub struct WeightMonomial(Vec<(Exponent, u32)>);

impl WeightMonomial {
    pub fn one() -> Self {
        WeightMonomial(Vec::new())
    }

    pub fn var(e: Exponent) -> Self {
        WeightMonomial(vec![(e, 1)])
    }

    /// Builds from `(symbol, power)` pairs; repeated symbols are merged.
    pub fn from_factors(items: impl IntoIterator<Item = (Exponent, u32)>) -> Self {
        let mut m = BTreeMap::new();
        for (e, p) in items {
            *m.entry(e).or_insert(0) += p;
        }
        WeightMonomial(m.into_iter().filter(|&(_, p)| p > 0).collect())
    }

    pub fn factors(&self) -> &[(Exponent, u32)] {
        &self.0
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self::from_factors(self.0.iter().chain(&rhs.0).copied())
    }

    /// Symbols absent from `values` count as zero.
    pub fn eval(&self, values: &BTreeMap<Exponent, Rational>) -> Rational {
        let mut acc = Rational::one();
        for (e, p) in &self.0 {
            match values.get(e) {
                Some(v) => acc = &acc * &v.pow(*p),
                None => return Rational::zero(),
            }
        }
        acc
    }
}

impl fmt::Display for WeightMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, ((u, w), p)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "·")?;
            }
            write!(f, "λ[{u},{w}]")?;
            if *p > 1 {
                write!(f, "^{p}")?;
            }
        }
        Ok(())
    }
}

/// Polynomial with rational coefficients in the symbols `λ_{u,w}`.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct WeightPoly {
    terms: BTreeMap<WeightMonomial, Rational>,
}

impl WeightPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_terms([(WeightMonomial::one(), Rational::one())])
    }

    pub fn from_terms(items: impl IntoIterator<Item = (WeightMonomial, Rational)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in items {
            p.add_term(m, &c);
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WeightMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: WeightMonomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&m) {
            Some(prev) => &prev + c,
            None => c.clone(),
        };
        if !sum.is_zero() {
            self.terms.insert(m, sum);
        }
    }

    pub fn add_assign(&mut self, rhs: &Self) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c);
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), c * k)))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a.mul(b), &(ca * cb));
            }
        }
        out
    }

    pub fn eval(&self, values: &BTreeMap<Exponent, Rational>) -> Rational {
        self.terms
            .iter()
            .fold(Rational::zero(), |acc, (m, c)| &acc + &(c * &m.eval(values)))
    }
}

impl fmt::Display for WeightPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if m.0.is_empty() {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}·{m}")?;
            }
        }
        Ok(())
    }
}

/// `a_{s,t}`: the coefficient of `x^s y^t` in `exp(Σ λ_{u,w} x^u y^w / (u!·w!))`,
/// summed over every symbol with `1 ≤ u + w`.
pub fn a_poly(s: u32, t: u32) -> WeightPoly {
    let symbols: Vec<Exponent> = (0..=s)
        .flat_map(|u| (0..=t).map(move |w| (u, w)))
        .filter(|&(u, w)| u + w >= 1)
        .collect();
    let mut out = WeightPoly::zero();
    let mut chosen = Vec::new();
    collect(&symbols, 0, s, t, &mut chosen, &mut out);
    out
}

/// Enumerates multiplicities `n_e` with `Σ n_e·e = (s, t)`; each contributes
/// `Π λ_e^{n_e} / (n_e!·(u!w!)^{n_e})`.
fn collect(symbols: &[Exponent], i: usize, s: u32, t: u32, chosen: &mut Vec<(Exponent, u32)>, out: &mut WeightPoly) {
    if s == 0 && t == 0 {
        let mut denom = num_bigint::BigInt::from(1);
        for &((u, w), n) in chosen.iter() {
            let block = factorial(u as u64) * factorial(w as u64);
            denom *= factorial(n as u64) * num_traits::pow(block, n as usize);
        }
        out.add_term(WeightMonomial(chosen.clone()), &Rational::new(1, denom));
        return;
    }
    if i == symbols.len() {
        return;
    }
    let (u, w) = symbols[i];
    let mut n = 0;
    loop {
        if n > 0 {
            chosen.push(((u, w), n));
        }
        collect(symbols, i + 1, s - n * u, t - n * w, chosen, out);
        if n > 0 {
            chosen.pop();
        }
        n += 1;
        if n * u > s || n * w > t {
            break;
        }
    }
}

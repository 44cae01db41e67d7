use std::collections::btree_map::{BTreeMap, Entry};
use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;

use super::{Exact, Ring};

/// Exponent pair `(u, w)` of the monomial `x^u y^w`.
pub type Exponent = (u32, u32);

/// Products with more term pairs than this are split across threads.
const PAR_THRESHOLD: usize = 1 << 16;

/// Sparse bivariate polynomial; no stored coefficient is zero.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BivarPoly<C> {
    terms: BTreeMap<Exponent, C>,
}

impl<C: Ring> BivarPoly<C> {
    pub fn zero() -> Self {
        BivarPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial((0, 0), C::one())
    }

    pub fn monomial(e: Exponent, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        BivarPoly { terms }
    }

    /// Repeated exponents are summed.
    pub fn from_terms(items: impl IntoIterator<Item = (Exponent, C)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in items {
            p.add_term(e, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: Exponent) -> Option<&C> {
        self.terms.get(&e)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(u, w)| u + w).max()
    }

    pub fn add_term(&mut self, e: Exponent, c: &C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                o.get_mut().add_assign_ref(c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }

    pub fn add_assign(&mut self, rhs: &Self) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c);
        }
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg_ref())
    }

    pub fn scale_int(&self, k: &BigInt) -> Self {
        self.map_coeffs(|c| c.scale_int(k))
    }

    pub fn scale(&self, k: &C) -> Self {
        self.map_coeffs(|c| c.mul_ref(k))
    }

    /// Applies `f` to every coefficient, dropping results that vanish.
    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> BivarPoly<D> {
        BivarPoly {
            terms: self
                .terms
                .iter()
                .filter_map(|(e, c)| {
                    let d = f(c);
                    (!d.is_zero()).then_some((*e, d))
                })
                .collect(),
        }
    }

    /// Keeps only the terms for which `keep` returns true.
    pub fn retain(&mut self, mut keep: impl FnMut(Exponent, &C) -> bool) {
        self.terms.retain(|e, c| keep(*e, c));
    }

    /// Exact product, discarding every term of total degree above `max_total_degree`.
    pub fn mul(&self, rhs: &Self, max_total_degree: Option<u32>) -> Self {
        let bound = max_total_degree.unwrap_or(u32::MAX);
        if self.len().saturating_mul(rhs.len()) < PAR_THRESHOLD {
            let mut acc = BTreeMap::new();
            mul_into(&mut acc, self.terms.iter(), rhs, bound);
            return Self::finish(acc);
        }
        let lhs: Vec<_> = self.terms.iter().collect();
        let chunk = (lhs.len() / rayon::current_num_threads().max(1)).max(1);
        let partials: Vec<BTreeMap<Exponent, C>> = lhs
            .par_chunks(chunk)
            .map(|block| {
                let mut acc = BTreeMap::new();
                mul_into(&mut acc, block.iter().copied(), rhs, bound);
                acc
            })
            .collect();
        // Exact addition is order independent; merging in chunk order keeps
        // the work deterministic as well.
        let mut acc: BTreeMap<Exponent, C> = BTreeMap::new();
        for part in partials {
            for (e, c) in part {
                match acc.entry(e) {
                    Entry::Vacant(v) => {
                        v.insert(c);
                    }
                    Entry::Occupied(mut o) => o.get_mut().add_assign_ref(&c),
                }
            }
        }
        Self::finish(acc)
    }

    /// `self^e` by repeated squaring, truncated at `max_total_degree` throughout.
    pub fn pow(&self, mut e: u32, max_total_degree: Option<u32>) -> Self {
        let mut result = Self::one();
        if let Some(b) = max_total_degree {
            result.retain(|(u, w), _| u + w <= b);
        }
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base, max_total_degree);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, max_total_degree);
            }
        }
        result
    }

    fn finish(mut acc: BTreeMap<Exponent, C>) -> Self {
        acc.retain(|_, c| !c.is_zero());
        BivarPoly { terms: acc }
    }
}

fn mul_into<'a, C: Ring>(
    acc: &mut BTreeMap<Exponent, C>,
    lhs: impl Iterator<Item = (&'a Exponent, &'a C)>,
    rhs: &BivarPoly<C>,
    bound: u32,
) {
    for (&(u1, w1), a) in lhs {
        for (&(u2, w2), b) in &rhs.terms {
            let e = (u1 + u2, w1 + w2);
            if e.0 + e.1 > bound {
                continue;
            }
            acc.entry(e).or_insert_with(C::zero).add_mul_assign(a, b);
        }
    }
}

impl<C: Exact> BivarPoly<C> {
    pub fn denominator_lcm(&self) -> BigInt {
        super::common_denominator(self.terms.values())
    }

    pub fn to_integral(&self, scale: &BigInt) -> BivarPoly<C::Integral> {
        self.map_coeffs(|c| c.to_integral(scale))
    }

    pub fn from_integral(p: &BivarPoly<C::Integral>, denom: &BigInt) -> Self {
        p.map_coeffs(|c| C::from_integral(c, denom))
    }
}

impl<C: fmt::Debug> fmt::Debug for BivarPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for ((u, w), c) in &self.terms {
            m.entry(&format_args!("x^{u}y^{w}"), c);
        }
        m.finish()
    }
}

//! Exact perturbative coefficients `A_n` of the integral
//! `∫ exp(z·g(x, y)) dx dy` with `g = −x²/2 − y²/2 + V(x, y)`.
//!
//! `A_n` is the coefficient of `z^{−n}`; combinatorially it is the
//! `1/|Aut|`-weighted count of edge-bicolored graphs with Euler characteristic
//! `−n` whose vertices carry the weights `Λ_{u,w}`.
//!
//! Two routes are provided. The general one runs the `F → Q → A` recursion
//! ([`build_f`], [`q_recursion`], [`extract_a`]); the homogeneous one reads
//! `A_n` straight off `V^{nK}` ([`fast_homogeneous_a`]).

mod homogeneous;
pub mod models;
mod potential;
mod recursion;
mod weights;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::numkernel::{Coeff, Exact, KernelError, ParamPoly, Rational};

pub use homogeneous::{fast_homogeneous_a, homogeneous_series};
pub use potential::{PotentialSpec, RegularityInfo};
pub use recursion::{build_f, extract_a, q_recursion, q_recursion_pruned, QSeries};
pub use weights::{a_poly, WeightMonomial, WeightPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExpansionError {
    #[error("term x^{u}·y^{w} has total degree below 3; only vertices of degree ≥ 3 may carry weights")]
    LowDegreeTerm { u: u32, w: u32 },
    #[error("term x^{u}·y^{w} is given more than once")]
    DuplicateTerm { u: u32, w: u32 },
    #[error("potential is not homogeneous")]
    NotHomogeneous,
    #[error("double factorial of {0} is undefined (argument must be odd and ≥ −1)")]
    BadDoubleFactorial(i64),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

/// `A_0 … A_N`, index `n` holding the coefficient of `z^{−n}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExpansionSeries {
    a: Vec<Coeff>,
}

impl ExpansionSeries {
    pub fn new(a: Vec<Coeff>) -> Self {
        ExpansionSeries { a }
    }

    pub fn get(&self, n: usize) -> Option<&Coeff> {
        self.a.get(n)
    }

    pub fn coeffs(&self) -> &[Coeff] {
        &self.a
    }

    /// Largest index `N` held.
    pub fn order(&self) -> usize {
        self.a.len().saturating_sub(1)
    }

    pub fn is_param(&self) -> bool {
        self.a.iter().any(Coeff::is_param)
    }

    /// Every coefficient at a fixed λ.
    pub fn at_lambda(&self, lambda: &Rational) -> Vec<Rational> {
        self.a.iter().map(|c| c.eval(lambda)).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Coeff> {
        self.a.iter()
    }
}

/// Which algorithm [`expand`] runs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Route {
    /// Homogeneous potentials take the fast path, everything else the recursion.
    #[default]
    Auto,
    Recursion,
    Homogeneous,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ExpandOptions {
    pub route: Route,
    /// Drop monomials of `Q_m` whose parity class can no longer reach an
    /// even-even monomial of an even-index `Q`. Only affects the recursion.
    pub prune_parity: bool,
}

/// `A_0 … A_N` for `pot`.
pub fn expand(pot: &PotentialSpec, n: usize, opts: ExpandOptions) -> Result<ExpansionSeries, ExpansionError> {
    let homogeneous = match opts.route {
        Route::Auto => pot.regularity().is_some(),
        Route::Recursion => false,
        Route::Homogeneous => true,
    };
    if homogeneous {
        return homogeneous_series(pot, n);
    }
    if pot.is_param() {
        Ok(run_recursion::<ParamPoly>(pot, n, opts.prune_parity))
    } else {
        Ok(run_recursion::<Rational>(pot, n, opts.prune_parity))
    }
}

fn run_recursion<C: Exact>(pot: &PotentialSpec, n: usize, prune: bool) -> ExpansionSeries {
    let v = pot.v_poly::<C>().expect("variant checked by caller");
    let f = build_f(&v, n.max(1));
    let qs = if prune { q_recursion_pruned(&f, 2 * n) } else { q_recursion(&f, 2 * n) };
    ExpansionSeries::new(extract_a(&qs, n).into_iter().map(Exact::into_coeff).collect())
}

/// `m!!` for odd `m ≥ −1`, with `(−1)!! = 1`.
pub fn double_factorial(m: i64) -> Result<BigInt, ExpansionError> {
    if m < -1 || m % 2 == 0 {
        return Err(ExpansionError::BadDoubleFactorial(m));
    }
    Ok(odd_double_factorial(m))
}

pub(crate) fn odd_double_factorial(m: i64) -> BigInt {
    let mut acc = <BigInt as One>::one();
    let mut i = m;
    while i > 1 {
        acc *= i;
        i -= 2;
    }
    acc
}

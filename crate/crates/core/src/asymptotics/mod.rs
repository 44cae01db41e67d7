//! Leading large-order behaviour `A_n ∼ c·Γ(n)·αⁿ` of expansion coefficients.
//!
//! Homogeneous potentials have two independent routes: maxima of `|V|` on
//! the unit circle, and the critical points of `g` they lift to. Potentials
//! of mixed degree only have the second, restricted to real critical points
//! of minimal norm.

mod circle;
mod field;
mod gpoints;

use std::f64::consts::PI;

use thiserror::Error;

use crate::expansion::{PotentialSpec, RegularityInfo};
use crate::numkernel::ln_factorial;

pub use circle::{circle_critical_points, law_circle, select_maxima, tied_maxima, CirclePoint, DEGENERACY_MARGIN, TIE_TOLERANCE};
pub use field::{FloatPoly, Jet, Scalar};
pub use gpoints::{g_real_critical_points, law_g, law_g_homogeneous, lift_to_g, GCritPoint};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AsymptoticsError {
    #[error("potential is not homogeneous")]
    NotHomogeneous,
    #[error("degenerate critical point at ({x}, {y})")]
    DegenerateCriticalPoint { x: f64, y: f64 },
    #[error("Newton iteration did not converge")]
    NewtonFailure,
    #[error("potential vanishes at its maxima")]
    ZeroAtMaximum,
    #[error("critical points on the circle are not isolated")]
    NotIsolated,
    #[error("no nonzero critical point found")]
    NoCriticalPoint,
    #[error("vertex count nK is not an integer at n = {n}")]
    NonIntegral { n: u64 },
    #[error("inconsistent orbit sums: {0}")]
    InconsistentOrbits(String),
    #[error("not covered by the leading-order law: {0}")]
    Uncovered(String),
}

/// Sign of `A_n` along multiples of the vanishing period `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LawSign {
    Positive,
    /// `A_{dm}` has sign `(−1)^m`.
    Alternating,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AsymptoticLaw {
    pub alpha: f64,
    pub c: f64,
    pub vanishing_period: u64,
    pub sign: LawSign,
    pub circle_points: Vec<CirclePoint>,
    pub g_points: Vec<GCritPoint>,
}

impl AsymptoticLaw {
    /// `ln(c·Γ(n)·αⁿ)`.
    pub fn ln_magnitude(&self, n: u64) -> f64 {
        self.c.ln() + ln_factorial(n.saturating_sub(1)) + n as f64 * self.alpha.ln()
    }

    /// Predicted `A_n`, zero off multiples of the period.
    pub fn predict(&self, n: u64) -> f64 {
        if n % self.vanishing_period != 0 {
            return 0.0;
        }
        let m = n / self.vanishing_period;
        let sign = match self.sign {
            LawSign::Alternating if m % 2 == 1 => -1.0,
            _ => 1.0,
        };
        sign * self.ln_magnitude(n).exp()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum LawRoute {
    /// Circle maxima for homogeneous potentials, critical points of `g` otherwise.
    #[default]
    Auto,
    Circle,
    CriticalPoints,
}

/// The law of `pot` at `λ` along the chosen route.
pub fn asymptotic_law(pot: &PotentialSpec, lambda: f64, route: LawRoute) -> Result<AsymptoticLaw, AsymptoticsError> {
    let v = FloatPoly::from_potential(pot, lambda);
    let homogeneous = v.homogeneous_degree().is_some();
    match route {
        LawRoute::Auto | LawRoute::Circle if homogeneous => law_circle(&v),
        LawRoute::Circle => Err(AsymptoticsError::NotHomogeneous),
        LawRoute::Auto | LawRoute::CriticalPoints if homogeneous => law_g_homogeneous(&v),
        LawRoute::Auto | LawRoute::CriticalPoints => law_g(&g_real_critical_points(&v)?),
    }
}

/// `A_n` from its angular integral
/// `2^{nM}·(nM)!/(2π·(nK)!) ∫ V(cos θ, sin θ)^{nK} dθ` by the trapezoid rule,
/// which is exact up to rounding once the node count exceeds `k·nK`.
pub fn integral_check(v: &FloatPoly, n: u64) -> Result<f64, AsymptoticsError> {
    let k = v.homogeneous_degree().ok_or(AsymptoticsError::NotHomogeneous)?;
    let reg = RegularityInfo::new(k);
    let (Some(j), Some(e)) = (reg.vertices(n), reg.edges(n)) else {
        return Err(AsymptoticsError::NonIntegral { n });
    };
    let nodes = 10_000usize.max(4 * e as usize + 1);
    let values: Vec<f64> = (0..nodes)
        .map(|i| {
            let (s, c) = (2.0 * PI * i as f64 / nodes as f64).sin_cos();
            v.eval(c, s)
        })
        .collect();
    let vmax = values.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if j == 0 {
        return Ok(1.0);
    }
    if vmax == 0.0 {
        return Ok(0.0);
    }
    let mean = values.iter().map(|x| (x / vmax).powi(j as i32)).sum::<f64>() / nodes as f64;
    if mean == 0.0 {
        return Ok(0.0);
    }
    let ln = e as f64 * 2f64.ln() + ln_factorial(e) - ln_factorial(j) + j as f64 * vmax.ln() + mean.abs().ln();
    Ok(mean.signum() * ln.exp())
}

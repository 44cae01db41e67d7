//! Sweeps over the model parameter λ: the analytic law along a grid,
//! fits from exact coefficients, blind transition detection and the
//! complex roots of `A_n(λ)`.

mod fit;
mod rootset;
mod transitions;

use std::fmt::Write as _;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::asymptotics::{asymptotic_law, circle_critical_points, g_real_critical_points, tied_maxima, FloatPoly, LawRoute};
use crate::expansion::{ExpansionSeries, PotentialSpec};
use crate::numkernel::Rational;

pub use fit::{fit_law, fit_law_log, FitError, LawFit, LogTerm, MIN_TERMS};
pub use rootset::{roots_of_an, RootSet};
pub use transitions::{detect_transitions, refine_transition, Cause, Thresholds, Transition, C_PROBE_OFFSETS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScanError {
    #[error("range must look like a:b:steps, got {0:?}")]
    Syntax(String),
    #[error("range needs 0 < a < b and steps ≥ 2, or a = b with one step")]
    Invalid,
}

/// Uniform grid `λ_i = a + i·(b − a)/(steps − 1)` with exact nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanRange {
    pub a: Rational,
    pub b: Rational,
    pub steps: usize,
}

impl ScanRange {
    pub fn new(a: Rational, b: Rational, steps: usize) -> Result<Self, ScanError> {
        let single = steps == 1 && a == b;
        if a.is_negative() || a.is_zero() || !(single || (steps >= 2 && a < b)) {
            return Err(ScanError::Invalid);
        }
        Ok(ScanRange { a, b, steps })
    }

    pub fn nodes(&self) -> Vec<Rational> {
        if self.steps == 1 {
            return vec![self.a.clone()];
        }
        let h = &(&self.b - &self.a) / &Rational::from(self.steps as i64 - 1);
        (0..self.steps).map(|i| &self.a + &(&h * &Rational::from(i as i64))).collect()
    }
}

impl FromStr for ScanRange {
    type Err = ScanError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ScanError::Syntax(s.to_string());
        let parts: Vec<&str> = s.split(':').collect();
        let [a, b, steps] = parts[..] else { return Err(bad()) };
        let a = a.parse().map_err(|_| bad())?;
        let b = b.parse().map_err(|_| bad())?;
        let steps = steps.trim().parse().map_err(|_| bad())?;
        Self::new(a, b, steps)
    }
}

/// Law at one grid point. Points where the law is undefined carry `error`
/// instead of analytic values.
#[derive(Clone, Debug, PartialEq)]
pub struct ScanRow {
    pub lambda: f64,
    pub alpha_analytic: Option<f64>,
    pub c_analytic: Option<f64>,
    pub alpha_fit: Option<f64>,
    pub c_fit: Option<f64>,
    /// Which family of maximizing points is active, numbered by first appearance.
    pub regime_id: Option<usize>,
    pub error: Option<String>,
}

/// Sign pattern `(sgn x, sgn y)` of the points that carry the law, sorted.
/// Unlike the law itself this is defined at degenerate points too.
pub fn regime_signature(pot: &PotentialSpec, lambda: f64) -> Option<Vec<(i8, i8)>> {
    const ZERO: f64 = 1e-7;
    let sgn = |t: f64, scale: f64| if t.abs() <= ZERO * scale { 0 } else { t.signum() as i8 };
    let v = FloatPoly::from_potential(pot, lambda);
    let points: Vec<(f64, f64)> = if v.homogeneous_degree().is_some() {
        let ties = tied_maxima(&circle_critical_points(&v).ok()?).ok()?;
        let maxima: Vec<_> = ties.iter().filter(|p| p.b > 0.0).collect();
        let chosen = if maxima.is_empty() { ties.iter().collect() } else { maxima };
        chosen.into_iter().map(|p| (p.x, p.y)).collect()
    } else {
        g_real_critical_points(&v).ok()?.into_iter().map(|p| (p.x.re, p.y.re)).collect()
    };
    let mut sig: Vec<(i8, i8)> = points
        .into_iter()
        .map(|(x, y)| {
            let r = x.hypot(y);
            (sgn(x, r), sgn(y, r))
        })
        .collect();
    sig.sort_unstable();
    sig.dedup();
    Some(sig)
}

/// Analytic law at every grid node, evaluated in parallel.
pub fn scan(pot: &PotentialSpec, range: &ScanRange) -> Vec<ScanRow> {
    let evaluated: Vec<(ScanRow, Option<Vec<(i8, i8)>>)> = range
        .nodes()
        .par_iter()
        .map(|node| {
            let lambda = node.to_f64();
            let law = asymptotic_law(pot, lambda, LawRoute::Auto);
            let row = ScanRow {
                lambda,
                alpha_analytic: law.as_ref().ok().map(|l| l.alpha),
                c_analytic: law.as_ref().ok().map(|l| l.c),
                alpha_fit: None,
                c_fit: None,
                regime_id: None,
                error: law.err().map(|e| e.to_string()),
            };
            (row, regime_signature(pot, lambda))
        })
        .collect();
    let mut seen: Vec<Vec<(i8, i8)>> = Vec::new();
    evaluated
        .into_iter()
        .map(|(mut row, sig)| {
            row.regime_id = sig.map(|s| match seen.iter().position(|t| *t == s) {
                Some(i) => i,
                None => {
                    seen.push(s);
                    seen.len() - 1
                }
            });
            row
        })
        .collect()
}

/// Fills `alpha_fit`/`c_fit` from a parametric series evaluated exactly at each node.
pub fn attach_fits(rows: &mut [ScanRow], range: &ScanRange, series: &ExpansionSeries) {
    let nodes = range.nodes();
    let fits: Vec<Option<LawFit>> = nodes.par_iter().map(|l| fit_law(&series.at_lambda(l)).ok()).collect();
    for (row, fit) in rows.iter_mut().zip(fits) {
        row.alpha_fit = fit.as_ref().map(|f| f.alpha);
        row.c_fit = fit.map(|f| f.c);
    }
}

pub const CSV_HEADER: &str = "lambda,alpha,c,regime,alpha_fit,c_fit,error";

/// Rows as CSV, floats with 17 significant digits.
pub fn rows_to_csv(rows: &[ScanRow]) -> String {
    let num = |x: Option<f64>| x.map(|v| format!("{v:.16e}")).unwrap_or_default();
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let err = r.error.as_ref().map(|e| format!("\"{}\"", e.replace('"', "\"\""))).unwrap_or_default();
        let regime = r.regime_id.map(|i| i.to_string()).unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{},{regime},{},{},{err}",
            num(Some(r.lambda)),
            num(r.alpha_analytic),
            num(r.c_analytic),
            num(r.alpha_fit),
            num(r.c_fit)
        );
    }
    out
}

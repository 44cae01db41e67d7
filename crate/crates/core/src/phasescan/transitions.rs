use super::{regime_signature, ScanRow};
use crate::asymptotics::{asymptotic_law, LawRoute};
use crate::expansion::PotentialSpec;

/// What flagged a grid point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Cause {
    /// Second difference of α far above its median.
    AlphaKink,
    /// c far above its median.
    CDivergence,
    /// The family of maximizing points changes.
    RegimeChange,
    /// The law is undefined at the point.
    Failed,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Thresholds {
    pub kink: f64,
    pub divergence: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds { kink: 10.0, divergence: 10.0 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Transition {
    pub lambda: f64,
    /// Grid span of the flagged cluster.
    pub lo: f64,
    pub hi: f64,
    pub causes: Vec<Cause>,
    /// Adjacent grid nodes whose regimes differ, if any.
    pub bracket: Option<(f64, f64)>,
    /// Largest c found next to the refined location.
    pub peak_c: Option<f64>,
}

fn median(mut xs: Vec<f64>) -> Option<f64> {
    if xs.is_empty() {
        return None;
    }
    xs.sort_by(f64::total_cmp);
    let m = xs.len() / 2;
    Some(if xs.len() % 2 == 1 { xs[m] } else { 0.5 * (xs[m - 1] + xs[m]) })
}

/// Flags grid points by α kinks, c blow-ups, regime changes and failed
/// rows, then merges flags at most two nodes apart into one transition
/// reported at the midpoint of its span.
pub fn detect_transitions(rows: &[ScanRow], thresholds: Thresholds) -> Vec<Transition> {
    let n = rows.len();
    let mut flags: Vec<Vec<Cause>> = vec![Vec::new(); n];

    let second: Vec<Option<f64>> = (0..n)
        .map(|i| {
            if i == 0 || i + 1 == n {
                return None;
            }
            let a = (rows[i - 1].alpha_analytic?, rows[i].alpha_analytic?, rows[i + 1].alpha_analytic?);
            Some((a.0 - 2.0 * a.1 + a.2).abs())
        })
        .collect();
    let alpha_scale = rows.iter().filter_map(|r| r.alpha_analytic).fold(0.0f64, |m, a| m.max(a.abs()));
    if let Some(med) = median(second.iter().flatten().copied().collect()) {
        for (i, d) in second.iter().enumerate() {
            if let Some(d) = *d {
                if d > thresholds.kink * med && d > 1e-9 * alpha_scale {
                    flags[i].push(Cause::AlphaKink);
                }
            }
        }
    }
    if let Some(med) = median(rows.iter().filter_map(|r| r.c_analytic).map(f64::abs).collect()) {
        for (i, r) in rows.iter().enumerate() {
            if r.c_analytic.is_some_and(|c| c.abs() > thresholds.divergence * med) {
                flags[i].push(Cause::CDivergence);
            }
        }
    }
    let mut bracket_at: Vec<Option<(f64, f64)>> = vec![None; n];
    for i in 0..n.saturating_sub(1) {
        if let (Some(a), Some(b)) = (rows[i].regime_id, rows[i + 1].regime_id) {
            if a != b {
                flags[i].push(Cause::RegimeChange);
                flags[i + 1].push(Cause::RegimeChange);
                bracket_at[i] = Some((rows[i].lambda, rows[i + 1].lambda));
            }
        }
    }
    for (i, r) in rows.iter().enumerate() {
        if r.error.is_some() {
            flags[i].push(Cause::Failed);
        }
    }

    let mut out: Vec<Transition> = Vec::new();
    let mut last: Option<usize> = None;
    for i in (0..n).filter(|&i| !flags[i].is_empty()) {
        let extend = last.is_some_and(|j| i - j <= 2);
        if !extend {
            out.push(Transition {
                lambda: rows[i].lambda,
                lo: rows[i].lambda,
                hi: rows[i].lambda,
                causes: Vec::new(),
                bracket: None,
                peak_c: None,
            });
        }
        let t = out.last_mut().unwrap();
        t.hi = rows[i].lambda;
        t.lambda = 0.5 * (t.lo + t.hi);
        t.causes.extend(&flags[i]);
        t.causes.sort_unstable();
        t.causes.dedup();
        if t.bracket.is_none() {
            t.bracket = bracket_at[i];
        }
        last = Some(i);
    }
    out
}

/// Offsets (relative to `max(1, λ)`) at which c is probed around a refined transition.
pub const C_PROBE_OFFSETS: [f64; 10] = [1e-6, 5e-7, 2e-7, 1e-7, 5e-8, 3e-8, 2e-8, 1.5e-8, 1.2e-8, 1e-8];

/// Bisects a regime change down to about `1e−12` and probes c on both
/// sides of the result. Transitions without a bracket keep their location.
pub fn refine_transition(pot: &PotentialSpec, t: &Transition) -> Transition {
    let mut out = t.clone();
    if let Some((mut lo, mut hi)) = t.bracket {
        let left = regime_signature(pot, lo);
        for _ in 0..100 {
            if hi - lo <= 1e-12 * lo.abs().max(1.0) {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if regime_signature(pot, mid) == left {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        out.lambda = 0.5 * (lo + hi);
    }
    let scale = out.lambda.abs().max(1.0);
    out.peak_c = C_PROBE_OFFSETS
        .iter()
        .flat_map(|d| [out.lambda - d * scale, out.lambda + d * scale])
        .filter_map(|l| asymptotic_law(pot, l, LawRoute::Auto).ok())
        .map(|law| law.c)
        .fold(None, |m: Option<f64>, c| Some(m.map_or(c, |m| m.max(c))));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansion::models;
    use crate::numkernel::Rational;
    use crate::phasescan::scan;

    #[test]
    fn ising_transitions() {
        let pot = models::ising();
        let rows = scan(&pot, &"0.05:3.95:200".parse().unwrap());
        let found = detect_transitions(&rows, Thresholds::default());
        assert_eq!(found.len(), 2, "{found:?}");
        for (t, exact) in found.iter().zip([1.0 / 3.0, 3.0]) {
            assert!((t.lambda - exact).abs() < 0.05);
            let r = refine_transition(&pot, t);
            assert!((r.lambda - exact).abs() < 1e-9, "{r:?}");
            assert!(r.peak_c.unwrap() > 1e3, "{r:?}");
        }
    }

    #[test]
    fn constant_potential_has_none() {
        let pot = crate::expansion::PotentialSpec::rational([((4, 0), Rational::from(1))]).unwrap();
        let rows = scan(&pot, &"0.05:3.95:100".parse().unwrap());
        assert!(detect_transitions(&rows, Thresholds::default()).is_empty());
    }

    #[test]
    fn inhomogeneous_split_at_one_half() {
        let pot = models::inhomogeneous();
        let rows = scan(&pot, &"0.05:1:96".parse().unwrap());
        let found = detect_transitions(&rows, Thresholds::default());
        assert_eq!(found.len(), 1, "{found:?}");
        assert!((found[0].lambda - 0.5).abs() < 0.05);
        let r = refine_transition(&pot, &found[0]);
        assert!((r.lambda - 0.5).abs() < 1e-6, "{r:?}");
    }
}

use std::f64::consts::PI;

use super::field::FloatPoly;
use super::{AsymptoticLaw, AsymptoticsError, LawSign};
use crate::expansion::RegularityInfo;
use crate::roots::{aberth, RealPoly};

/// Critical point of `V` restricted to the unit circle.
#[derive(Clone, Debug, PartialEq)]
pub struct CirclePoint {
    pub x: f64,
    pub y: f64,
    /// Polar angle in `[0, 2π)`.
    pub angle: f64,
    pub v: f64,
    /// `B = k² − (V_xx + V_yy)/V`.
    pub b: f64,
    /// `k²V` and `V_xx + V_yy` agree to relative `1e−8`.
    pub degenerate: bool,
}

pub const DEGENERACY_MARGIN: f64 = 1e-8;
pub const TIE_TOLERANCE: f64 = 1e-9;
const DEDUP_ANGLE: f64 = 1e-9;
const NEWTON_ITERATIONS: usize = 100;

/// `h(φ) = y·V_x − x·V_y` and `h'(φ)` at `(cos φ, sin φ)`.
fn h_and_slope(v: &FloatPoly, phi: f64) -> (f64, f64) {
    let (y, x) = phi.sin_cos();
    let j = v.jet(x, y);
    let h = y * j.vx - x * j.vy;
    let dh = x * j.vx + y * j.vy - y * y * j.vxx + 2.0 * x * y * j.vxy - x * x * j.vyy;
    (h, dh)
}

/// Newton on `h`, bisecting whenever a step leaves the bracket.
fn bracketed_newton(v: &FloatPoly, mut lo: f64, mut hi: f64) -> Result<f64, AsymptoticsError> {
    let h_lo = h_and_slope(v, lo).0;
    let mut phi = 0.5 * (lo + hi);
    for _ in 0..NEWTON_ITERATIONS {
        let (h, dh) = h_and_slope(v, phi);
        if h == 0.0 {
            return Ok(phi);
        }
        if (h < 0.0) == (h_lo < 0.0) {
            lo = phi;
        } else {
            hi = phi;
        }
        let newton = phi - h / dh;
        let next = if dh != 0.0 && newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
        if (next - phi).abs() <= 1e-16 * (1.0 + phi.abs()) || hi - lo <= 1e-16 {
            return Ok(next);
        }
        phi = next;
    }
    Err(AsymptoticsError::NewtonFailure)
}

/// Plain Newton from a seed; `None` if it does not settle on a root.
fn free_newton(v: &FloatPoly, mut phi: f64) -> Option<f64> {
    for _ in 0..NEWTON_ITERATIONS {
        let (h, dh) = h_and_slope(v, phi);
        if h == 0.0 {
            break;
        }
        if dh == 0.0 || !dh.is_finite() {
            return None;
        }
        let step = h / dh;
        phi -= step;
        if step.abs() <= 1e-16 * (1.0 + phi.abs()) {
            break;
        }
    }
    (h_and_slope(v, phi).0.abs() <= 1e-12).then_some(phi)
}

/// Angles solving `H(x, y) = y·V_x − x·V_y = 0`, from the real roots of the
/// binary form `H(1, t)` together with `x = 0` when it is a root.
fn algebraic_seeds(v: &FloatPoly, k: u32) -> Vec<f64> {
    let mut coeffs = vec![0.0; k as usize + 1];
    for &((u, w), c) in v.terms() {
        if u > 0 {
            coeffs[w as usize + 1] += c * u as f64;
        }
        if w > 0 {
            coeffs[w as usize - 1] -= c * w as f64;
        }
    }
    let scale = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let mut seeds = Vec::new();
    if scale == 0.0 {
        return seeds;
    }
    if coeffs[k as usize].abs() <= 1e-14 * scale {
        seeds.extend([PI / 2.0, 3.0 * PI / 2.0]);
    }
    if let Ok((roots, _)) = aberth(&RealPoly::from_f64(&coeffs)) {
        for t in roots {
            if t.im.abs() <= 1e-4 * (1.0 + t.re.abs()) {
                let phi = t.re.atan();
                seeds.extend([phi, phi + PI]);
            }
        }
    }
    seeds
}

fn normalize(phi: f64) -> f64 {
    let p = phi.rem_euclid(2.0 * PI);
    if p >= 2.0 * PI {
        0.0
    } else {
        p
    }
}

/// Every critical point of `V` on the unit circle for homogeneous `V`.
pub fn circle_critical_points(v: &FloatPoly) -> Result<Vec<CirclePoint>, AsymptoticsError> {
    let k = v.homogeneous_degree().ok_or(AsymptoticsError::NotHomogeneous)?;
    let samples = 720 * k as usize;
    let grid: Vec<f64> = (0..samples).map(|i| 2.0 * PI * i as f64 / samples as f64).collect();
    let h: Vec<f64> = grid.iter().map(|&p| h_and_slope(v, p).0).collect();
    let h_max = h.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let v_max = grid.iter().fold(0.0f64, |m, &p| m.max(v.eval(p.cos(), p.sin()).abs()));
    if v_max == 0.0 {
        return Err(AsymptoticsError::ZeroAtMaximum);
    }
    if h_max <= 1e-13 * v_max {
        return Err(AsymptoticsError::NotIsolated);
    }

    let mut found = Vec::new();
    for i in 0..samples {
        let j = (i + 1) % samples;
        let hi_angle = if j == 0 { 2.0 * PI } else { grid[j] };
        if h[i] == 0.0 {
            found.push(grid[i]);
        } else if h[i] * h[j] < 0.0 {
            found.push(bracketed_newton(v, grid[i], hi_angle)?);
        }
        // Near-zero local minima of |h| may hide a touching root.
        let prev = h[(i + samples - 1) % samples].abs();
        if h[i].abs() <= prev && h[i].abs() <= h[j].abs() && h[i].abs() <= 1e-3 * h_max {
            found.extend(free_newton(v, grid[i]));
        }
    }
    for seed in algebraic_seeds(v, k) {
        found.extend(free_newton(v, seed));
    }

    let mut angles: Vec<f64> = found.into_iter().map(normalize).collect();
    angles.sort_by(f64::total_cmp);
    let mut unique: Vec<f64> = Vec::new();
    for a in angles {
        if unique.last().map_or(true, |&u| a - u > DEDUP_ANGLE) {
            unique.push(a);
        }
    }
    if unique.len() > 1 && unique[0] + 2.0 * PI - unique[unique.len() - 1] <= DEDUP_ANGLE {
        unique.pop();
    }
    Ok(unique.into_iter().map(|a| point_at(v, k, a)).collect())
}

fn point_at(v: &FloatPoly, k: u32, angle: f64) -> CirclePoint {
    let (y, x) = angle.sin_cos();
    let j = v.jet(x, y);
    let k2v = (k * k) as f64 * j.v;
    let lap = j.vxx + j.vyy;
    CirclePoint {
        x,
        y,
        angle,
        v: j.v,
        b: (k * k) as f64 - lap / j.v,
        degenerate: (k2v - lap).abs() <= DEGENERACY_MARGIN * k2v.abs().max(lap.abs()),
    }
}

/// Global maxima of `|V|` among the candidates, ties within relative `1e−9`.
/// Candidates with `B < 0` are local minima of `|V|` along the circle and
/// are never maxima, however close their value.
pub fn select_maxima(points: &[CirclePoint]) -> Result<Vec<CirclePoint>, AsymptoticsError> {
    let phi: Vec<CirclePoint> = tied_maxima(points)?.into_iter().filter(|p| p.degenerate || p.b > 0.0).collect();
    if let Some(p) = phi.iter().find(|p| p.degenerate) {
        return Err(AsymptoticsError::DegenerateCriticalPoint { x: p.x, y: p.y });
    }
    Ok(phi)
}

/// Candidates whose `|V|` ties the maximum within relative `1e−9`.
pub fn tied_maxima(points: &[CirclePoint]) -> Result<Vec<CirclePoint>, AsymptoticsError> {
    let vmax = points.iter().fold(0.0f64, |m, p| m.max(p.v.abs()));
    if vmax == 0.0 {
        return Err(AsymptoticsError::ZeroAtMaximum);
    }
    Ok(points.iter().filter(|p| p.v.abs() >= vmax * (1.0 - TIE_TOLERANCE)).cloned().collect())
}

/// `A_n ∼ c·Γ(n)·αⁿ` from the maxima of `|V|` on the circle, with
/// `α = k^M·K·|V_max|^K` and `c = k^{1/2} K^{−1/2} Σ_Φ B^{−1/2} / (2√2·π)`.
pub fn law_circle(v: &FloatPoly) -> Result<AsymptoticLaw, AsymptoticsError> {
    let k = v.homogeneous_degree().ok_or(AsymptoticsError::NotHomogeneous)?;
    let reg = RegularityInfo::new(k);
    let phi = select_maxima(&circle_critical_points(v)?)?;
    let sign = circle_sign(&phi, k)?;
    let (kf, m, kk) = (k as f64, reg.m.to_f64(), reg.kk.to_f64());
    let vmax = phi[0].v.abs();
    let alpha = kf.powf(m) * kk * vmax.powf(kk);
    let sum: f64 = phi.iter().map(|p| p.b.powf(-0.5)).sum();
    let c = kf.sqrt() / kk.sqrt() * sum / (2.0 * 2f64.sqrt() * PI);
    Ok(AsymptoticLaw {
        alpha,
        c,
        vanishing_period: reg.vanishing_period(),
        sign,
        circle_points: phi,
        g_points: Vec::new(),
    })
}

/// `V^{nK}` is `|V|^{nK}` for odd `k`; for even `k` a common negative sign
/// alternates with `nK`. Mixed signs at even `k` interfere and are not covered.
fn circle_sign(phi: &[CirclePoint], k: u32) -> Result<LawSign, AsymptoticsError> {
    let negative = phi.iter().filter(|p| p.v < 0.0).count();
    if k % 2 == 1 || negative == 0 {
        Ok(LawSign::Positive)
    } else if negative == phi.len() {
        Ok(LawSign::Alternating)
    } else {
        Err(AsymptoticsError::Uncovered("maxima of |V| with both signs at even degree".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansion::models;

    fn ising(lambda: f64) -> FloatPoly {
        FloatPoly::from_potential(&models::ising(), lambda)
    }

    #[test]
    fn ising_eight_points_at_two() {
        let pts = circle_critical_points(&ising(2.0)).unwrap();
        assert_eq!(pts.len(), 8);
        let l: f64 = 2.0;
        let den = (l * l - 6.0 * l + 1.0).abs().sqrt();
        let (ex, ey) = ((l * (l - 3.0)).abs().sqrt() / den, (1.0 - 3.0 * l).abs().sqrt() / den);
        assert!(pts.iter().any(|p| (p.x - ex).abs() < 1e-12 && (p.y - ey).abs() < 1e-12));
        for p in &pts {
            assert!((p.x * p.x + p.y * p.y - 1.0).abs() < 1e-14);
            let j = ising(2.0).jet(p.x, p.y);
            assert!((p.y * j.vx - p.x * j.vy).abs() <= 1e-10);
        }
        let phi = select_maxima(&pts).unwrap();
        assert_eq!(phi.len(), 4);
        assert!(phi.iter().all(|p| p.x.abs() > 0.1 && p.y.abs() > 0.1));
    }

    #[test]
    fn ising_branches() {
        let phi = select_maxima(&circle_critical_points(&ising(0.25)).unwrap()).unwrap();
        assert_eq!(phi.len(), 2);
        assert!(phi.iter().all(|p| (p.x.abs() - 1.0).abs() < 1e-15));
        let phi = select_maxima(&circle_critical_points(&ising(4.0)).unwrap()).unwrap();
        assert!(phi.iter().all(|p| (p.y.abs() - 1.0).abs() < 1e-15));
    }

    #[test]
    fn pure_quartic_axis_points() {
        let v = FloatPoly::new(vec![((4, 0), 1.0 / 24.0)]);
        let pts = circle_critical_points(&v).unwrap();
        let mut angles: Vec<f64> = pts.iter().map(|p| p.angle).collect();
        angles.sort_by(f64::total_cmp);
        let expected = [0.0, PI / 2.0, PI, 3.0 * PI / 2.0];
        assert_eq!(angles.len(), 4);
        for (a, e) in angles.iter().zip(expected) {
            assert!((a - e).abs() < 1e-9);
        }
    }

    #[test]
    fn transition_points_are_degenerate() {
        for lambda in [1.0 / 3.0, 3.0] {
            let err = select_maxima(&circle_critical_points(&ising(lambda)).unwrap()).unwrap_err();
            assert!(matches!(err, AsymptoticsError::DegenerateCriticalPoint { .. }), "λ = {lambda}");
        }
    }

    #[test]
    fn closed_forms() {
        let cases: [(f64, f64, f64); 3] = [
            (0.25, 2.0 / 3.0, (1.0f64 / (2.0 - 6.0 * 0.25)).sqrt() / PI),
            (2.0, 64.0 / 21.0, (16.0f64 / 5.0).sqrt() / PI),
            (4.0, 32.0 / 3.0, 2f64.sqrt() / PI),
        ];
        for (lambda, alpha, c) in cases {
            let law = law_circle(&ising(lambda)).unwrap();
            assert!((law.alpha / alpha - 1.0).abs() < 1e-12, "α at {lambda}");
            assert!((law.c / c - 1.0).abs() < 1e-12, "c at {lambda}");
            assert_eq!(law.vanishing_period, 1);
        }
    }

    #[test]
    fn negative_quartic_alternates() {
        let v = FloatPoly::new(vec![((4, 0), -1.0), ((0, 4), -1.0)]);
        assert_eq!(law_circle(&v).unwrap().sign, LawSign::Alternating);
        let mixed = FloatPoly::new(vec![((4, 0), 1.0), ((0, 4), -1.0)]);
        assert!(matches!(law_circle(&mixed), Err(AsymptoticsError::Uncovered(_))));
    }
}

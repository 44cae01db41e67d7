use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::circle::{CirclePoint, DEGENERACY_MARGIN};
use super::field::FloatPoly;
use super::{AsymptoticLaw, AsymptoticsError, LawSign};
use crate::expansion::RegularityInfo;

/// Critical point of `g = −x²/2 − y²/2 + V` over ℂ².
#[derive(Clone, Debug, PartialEq)]
pub struct GCritPoint {
    pub x: Complex64,
    pub y: Complex64,
    pub g: Complex64,
    /// Determinant of the Hessian of `g`.
    pub det_hessian: Complex64,
}

impl GCritPoint {
    pub fn at(v: &FloatPoly, x: Complex64, y: Complex64) -> Self {
        let j = v.jet(x, y);
        let one = Complex64::new(1.0, 0.0);
        let g = -(x * x + y * y) * 0.5 + j.v;
        let det_hessian = (j.vxx - one) * (j.vyy - one) - j.vxy * j.vxy;
        GCritPoint { x, y, g, det_hessian }
    }

    pub fn is_real(&self) -> bool {
        self.x.im == 0.0 && self.y.im == 0.0
    }

}

/// Critical points of `g` over the circle maxima of a homogeneous `V`:
/// `(ℓx, ℓy)` for every `ℓ` with `ℓ^{k−2} = 1/(k·V(x, y))`.
pub fn lift_to_g(v: &FloatPoly, phi: &[CirclePoint]) -> Result<Vec<GCritPoint>, AsymptoticsError> {
    let k = v.homogeneous_degree().ok_or(AsymptoticsError::NotHomogeneous)?;
    let r = (k - 2) as usize;
    let mut out: Vec<GCritPoint> = Vec::new();
    for p in phi {
        if p.v == 0.0 {
            return Err(AsymptoticsError::ZeroAtMaximum);
        }
        let base = Complex64::new(1.0 / (k as f64 * p.v), 0.0).powf(1.0 / r as f64);
        for j in 0..r {
            let ell = base * Complex64::from_polar(1.0, 2.0 * PI * j as f64 / r as f64);
            let (x, y) = (ell * p.x, ell * p.y);
            let scale = ell.norm();
            if out.iter().all(|q| ((q.x - x).norm_sqr() + (q.y - y).norm_sqr()).sqrt() > 1e-9 * scale) {
                out.push(GCritPoint::at(v, x, y));
            }
        }
    }
    Ok(out)
}

/// Radius covering the nonzero critical points of `g`: twice the largest
/// `(d·max_{S¹}|V_d|)^{−1/(d−2)}` over the homogeneous parts `V_d`.
fn search_radius(v: &FloatPoly) -> f64 {
    let mut radius: f64 = 0.0;
    for d in v.degrees() {
        let part = v.part(d);
        let m = (0..720)
            .map(|i| {
                let (s, c) = (2.0 * PI * i as f64 / 720.0).sin_cos();
                part.eval(c, s).abs()
            })
            .fold(0.0f64, f64::max);
        if m > 0.0 && d > 2 {
            radius = radius.max((d as f64 * m).powf(-1.0 / (d as f64 - 2.0)));
        }
    }
    2.0 * radius
}

fn newton_g(v: &FloatPoly, mut x: f64, mut y: f64) -> Option<(f64, f64)> {
    for _ in 0..100 {
        let j = v.jet(x, y);
        let (gx, gy) = (j.vx - x, j.vy - y);
        let (a, b, d) = (j.vxx - 1.0, j.vxy, j.vyy - 1.0);
        let det = a * d - b * b;
        if det == 0.0 || !det.is_finite() {
            return None;
        }
        let dx = (d * gx - b * gy) / det;
        let dy = (a * gy - b * gx) / det;
        x -= dx;
        y -= dy;
        if !x.is_finite() || !y.is_finite() {
            return None;
        }
        if dx.hypot(dy) <= 1e-15 * (1.0 + x.hypot(y)) {
            break;
        }
    }
    let j = v.jet(x, y);
    ((j.vx - x).hypot(j.vy - y) <= 1e-10).then_some((x, y))
}

/// Nonzero real critical points of `g` of minimal norm, by multi-start
/// Newton over a square grid.
pub fn g_real_critical_points(v: &FloatPoly) -> Result<Vec<GCritPoint>, AsymptoticsError> {
    const GRID: usize = 41;
    let radius = search_radius(v);
    if radius == 0.0 {
        return Err(AsymptoticsError::NoCriticalPoint);
    }
    let starts: Vec<(f64, f64)> = (0..GRID * GRID)
        .map(|i| {
            let t = |j: usize| -radius + 2.0 * radius * j as f64 / (GRID - 1) as f64;
            (t(i / GRID), t(i % GRID))
        })
        .collect();
    let hits: Vec<(f64, f64)> = starts.par_iter().filter_map(|&(x, y)| newton_g(v, x, y)).collect();
    let mut found: Vec<(f64, f64)> = Vec::new();
    for (x, y) in hits {
        let r = x.hypot(y);
        if r <= 1e-6 * radius {
            continue;
        }
        if found.iter().all(|&(a, b)| (a - x).hypot(b - y) > 1e-8 * (1.0 + r)) {
            found.push((x, y));
        }
    }
    let rmin = found.iter().map(|p| p.0.hypot(p.1)).fold(f64::INFINITY, f64::min);
    let mut closest: Vec<(f64, f64)> = found.into_iter().filter(|p| p.0.hypot(p.1) <= rmin * (1.0 + 1e-7)).collect();
    if closest.is_empty() {
        return Err(AsymptoticsError::NoCriticalPoint);
    }
    closest.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    Ok(closest.into_iter().map(|(x, y)| GCritPoint::at(v, x.into(), y.into())).collect())
}

/// `A_n ∼ c·Γ(n)·αⁿ` from critical points of `g`: `α = 1/min|g|` and
/// `A_n ≈ Γ(n)/(2π) Σ (−g)^{−n}/√(−det H)` over the points achieving it.
/// The phases of `−g` fix the vanishing period and the sign pattern.
pub fn law_g(psi: &[GCritPoint]) -> Result<AsymptoticLaw, AsymptoticsError> {
    const PROBE: u64 = 24;
    const ZERO: f64 = 1e-8;
    let gmin = psi.iter().map(|p| p.g.norm()).fold(f64::INFINITY, f64::min);
    if !(gmin > 0.0 && gmin.is_finite()) {
        return Err(AsymptoticsError::NoCriticalPoint);
    }
    let active: Vec<&GCritPoint> = psi.iter().filter(|p| p.g.norm() <= gmin * (1.0 + 1e-9)).collect();
    for p in &active {
        if p.det_hessian.norm() <= DEGENERACY_MARGIN {
            return Err(AsymptoticsError::DegenerateCriticalPoint { x: p.x.re, y: p.y.re });
        }
    }
    let alpha = 1.0 / gmin;
    let weights: Vec<(Complex64, Complex64)> =
        active.iter().map(|p| (-p.g * alpha, (-p.det_hessian).sqrt().inv())).collect();
    let scale: f64 = weights.iter().map(|w| w.1.norm()).sum();
    let s = |n: u64| -> Complex64 { weights.iter().map(|&(u, w)| u.powi(-(n as i32)) * w).sum() };

    let sums: Vec<Complex64> = (1..=PROBE).map(s).collect();
    let nonzero = |z: &Complex64| z.norm() > ZERO * scale;
    let period = sums.iter().position(nonzero).ok_or_else(|| {
        AsymptoticsError::InconsistentOrbits("every probed orbit sum cancels".into())
    })? as u64
        + 1;
    let base = sums[period as usize - 1];
    let mut signs = Vec::new();
    for (i, z) in sums.iter().enumerate() {
        let n = i as u64 + 1;
        if nonzero(z) != (n % period == 0) {
            return Err(AsymptoticsError::InconsistentOrbits(format!("orbit sum at n = {n} breaks period {period}")));
        }
        if n % period == 0 {
            if z.im.abs() > ZERO * scale || (z.norm() - base.norm()).abs() > ZERO * scale {
                return Err(AsymptoticsError::Uncovered(format!("oscillating orbit sum at n = {n}")));
            }
            signs.push(z.re > 0.0);
        }
    }
    let sign = if signs.iter().all(|&p| p) {
        LawSign::Positive
    } else if signs.iter().enumerate().all(|(m, &p)| p == (m % 2 == 1)) {
        LawSign::Alternating
    } else {
        return Err(AsymptoticsError::Uncovered("orbit sums with a fixed negative sign".into()));
    };
    Ok(AsymptoticLaw {
        alpha,
        c: base.norm() / (2.0 * PI),
        vanishing_period: period,
        sign,
        circle_points: Vec::new(),
        g_points: active.into_iter().cloned().collect(),
    })
}

/// The g-route law for homogeneous `V`, lifted from the circle maxima.
pub fn law_g_homogeneous(v: &FloatPoly) -> Result<AsymptoticLaw, AsymptoticsError> {
    let k = v.homogeneous_degree().ok_or(AsymptoticsError::NotHomogeneous)?;
    let phi = super::select_maxima(&super::circle_critical_points(v)?)?;
    let mut law = law_g(&lift_to_g(v, &phi)?)?;
    debug_assert_eq!(law.vanishing_period, RegularityInfo::new(k).vanishing_period());
    law.circle_points = phi;
    Ok(law)
}

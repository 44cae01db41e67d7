//! All complex roots of a real polynomial by Aberth–Ehrlich iteration.
//!
//! Iterates are kept in `f64`, but every Newton ratio is computed from a
//! double-double Horner evaluation of exact coefficients, so clustered and
//! multiple roots still converge to full double precision.

use num_complex::Complex64;
use thiserror::Error;

use crate::numkernel::{ParamPoly, Rational};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RootError {
    #[error("the zero polynomial has no finite root set")]
    ZeroPolynomial,
    #[error("no convergence after {sweeps} sweeps (worst backward error {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },
}

pub const MAX_SWEEPS: usize = 1000;

/// Unevaluated sum `hi + lo` with `|lo| ≤ ulp(hi)/2`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
struct Dd {
    hi: f64,
    lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    Dd { hi: s, lo: b - (s - a) }
}

impl Dd {
    fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        quick_two_sum(s, e + self.lo + o.lo)
    }

    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    fn mul(self, o: Dd) -> Dd {
        let p = self.hi * o.hi;
        let e = self.hi.mul_add(o.hi, -p);
        quick_two_sum(p, e + self.hi * o.lo + self.lo * o.hi)
    }

    fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

#[derive(Clone, Copy, Debug, Default)]
struct CDd {
    re: Dd,
    im: Dd,
}

impl CDd {
    fn from_c64(z: Complex64) -> Self {
        CDd { re: Dd::from_f64(z.re), im: Dd::from_f64(z.im) }
    }

    fn add_real(self, a: Dd) -> CDd {
        CDd { re: self.re.add(a), im: self.im }
    }

    fn add(self, o: CDd) -> CDd {
        CDd { re: self.re.add(o.re), im: self.im.add(o.im) }
    }

    fn mul(self, o: CDd) -> CDd {
        CDd {
            re: self.re.mul(o.re).add(self.im.mul(o.im).neg()),
            im: self.re.mul(o.im).add(self.im.mul(o.re)),
        }
    }

    fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

/// Real polynomial prepared for root finding: coefficients (ascending)
/// scaled by a common power of two and split into double-double form.
#[derive(Clone, Debug)]
pub struct RealPoly {
    coeffs: Vec<Dd>,
}

impl RealPoly {
    /// From exact coefficients; the common scale keeps huge or tiny
    /// coefficients inside the `f64` range and does not move any root.
    pub fn from_exact(p: &ParamPoly) -> Self {
        let top = p.coeffs().iter().filter_map(Rational::log2_estimate).max().unwrap_or(0);
        let scale = Rational::from_integer(num_bigint::BigInt::from(2)).pow(top.unsigned_abs() as u32);
        let coeffs = p
            .coeffs()
            .iter()
            .map(|c| {
                let scaled = if top >= 0 { c / &scale } else { c * &scale };
                let hi = scaled.to_f64();
                let lo = (&scaled - &Rational::from_f64(hi).unwrap_or_else(Rational::zero)).to_f64();
                Dd { hi, lo }
            })
            .collect();
        RealPoly { coeffs }
    }

    pub fn from_f64(coeffs: &[f64]) -> Self {
        let mut c: Vec<Dd> = coeffs.iter().map(|&x| Dd::from_f64(x)).collect();
        while c.last().is_some_and(|d| d.hi == 0.0) {
            c.pop();
        }
        RealPoly { coeffs: c }
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// `p(z)` and `p'(z)` by double-double Horner.
    fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let zz = CDd::from_c64(z);
        let mut p = CDd::default();
        let mut dp = CDd::default();
        for c in self.coeffs.iter().rev() {
            dp = dp.mul(zz).add(p);
            p = p.mul(zz).add_real(*c);
        }
        (p.to_c64(), dp.to_c64())
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.eval_with_derivative(z).0
    }

    /// `|p(z)| / Σ|a_i||z|^i`: the smallest relative coefficient change that makes `z` an exact root.
    pub fn backward_error(&self, z: Complex64) -> f64 {
        let r = z.norm();
        let scale = self.coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.to_f64().abs());
        if scale == 0.0 {
            return 0.0;
        }
        self.eval(z).norm() / scale
    }
}

/// Roots of `p` with the worst backward error among them.
pub fn aberth(p: &RealPoly) -> Result<(Vec<Complex64>, f64), RootError> {
    let deg = p.degree().ok_or(RootError::ZeroPolynomial)?;
    // Exact zero roots first.
    let low = p.coeffs.iter().take_while(|c| c.hi == 0.0).count();
    let mut roots = vec![Complex64::new(0.0, 0.0); low];
    let q = RealPoly { coeffs: p.coeffs[low..].to_vec() };
    let n = deg - low;
    if n == 0 {
        return Ok((roots, 0.0));
    }
    let a0 = q.coeffs[0].to_f64().abs();
    let an = q.coeffs[n].to_f64().abs();
    let radius = (a0.ln() - an.ln()) / n as f64;
    let radius = radius.exp();
    let mut z: Vec<Complex64> = (0..n)
        .map(|j| {
            let theta = 2.0 * std::f64::consts::PI * (j as f64 + 0.25) / n as f64 + 0.4;
            Complex64::from_polar(radius, theta)
        })
        .collect();
    let mut done = vec![false; n];
    let mut sweeps = 0;
    while sweeps < MAX_SWEEPS && done.iter().any(|d| !d) {
        sweeps += 1;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let (v, dv) = q.eval_with_derivative(z[i]);
            if v == Complex64::new(0.0, 0.0) {
                done[i] = true;
                continue;
            }
            let ratio = v / dv;
            let repulsion: Complex64 = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !step.is_finite() {
                continue;
            }
            z[i] -= step;
            if step.norm() <= 4.0 * f64::EPSILON * z[i].norm().max(f64::MIN_POSITIVE) {
                done[i] = true;
            }
        }
    }
    let residual = z.iter().map(|&r| q.backward_error(r)).fold(0.0, f64::max);
    if done.iter().any(|d| !d) && residual > 1e-8 {
        return Err(RootError::NoConvergence { sweeps, residual });
    }
    roots.extend(z);
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok((roots, residual))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn double_double_product_is_exact_for_split_values() {
        let a = Dd::from_f64(1.0 + f64::EPSILON);
        let p = a.mul(a);
        assert_eq!(p.hi, 1.0 + 2.0 * f64::EPSILON);
        assert_eq!(p.lo, f64::EPSILON * f64::EPSILON);
    }

    #[test]
    fn quadratic_with_complex_pair() {
        let (r, res) = aberth(&RealPoly::from_f64(&[1.0, 0.0, 1.0])).unwrap();
        assert!(close(r[0], Complex64::new(0.0, -1.0), 1e-15));
        assert!(close(r[1], Complex64::new(0.0, 1.0), 1e-15));
        assert!(res < 1e-15);
    }

    #[test]
    fn double_root() {
        // (1 + λ)²/8
        let p = ParamPoly::from_strs(&["1/8", "1/4", "1/8"]).unwrap();
        let (r, res) = aberth(&RealPoly::from_exact(&p)).unwrap();
        assert_eq!(r.len(), 2);
        for z in r {
            assert!(close(z, Complex64::new(-1.0, 0.0), 1e-7), "{z}");
        }
        assert!(res <= 1e-8);
    }

    #[test]
    fn wilkinson_like_real_roots() {
        let mut p = vec![1.0];
        for k in 1..=12 {
            // multiply by (x − k)
            let mut next = vec![0.0; p.len() + 1];
            for (i, c) in p.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= k as f64 * c;
            }
            p = next;
        }
        let (r, res) = aberth(&RealPoly::from_f64(&p)).unwrap();
        for (k, z) in r.iter().enumerate() {
            assert!(close(*z, Complex64::new(k as f64 + 1.0, 0.0), 1e-6), "{z}");
        }
        assert!(res < 1e-14);
    }

    #[test]
    fn zero_roots_split_off() {
        let (r, _) = aberth(&RealPoly::from_f64(&[0.0, 0.0, -4.0, 1.0])).unwrap();
        assert_eq!(r.iter().filter(|z| z.norm() == 0.0).count(), 2);
        assert!(r.iter().any(|z| close(*z, Complex64::new(4.0, 0.0), 1e-14)));
    }
}

use num_complex::Complex64;

use crate::numkernel::ParamPoly;
use crate::roots::{aberth, RealPoly, RootError};

/// All complex roots of `A_n(λ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSet {
    pub n: usize,
    pub roots: Vec<Complex64>,
    /// Worst backward error `|A_n(z)| / Σ|a_i||z|^i` over the roots.
    pub residual: f64,
}

impl RootSet {
    /// Largest distance from a root to the conjugate of its nearest partner.
    pub fn conjugate_mismatch(&self) -> f64 {
        self.roots
            .iter()
            .map(|z| self.roots.iter().map(|w| (z.conj() - w).norm()).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    }

    pub fn distance_to(&self, point: Complex64) -> f64 {
        self.roots.iter().map(|z| (z - point).norm()).fold(f64::INFINITY, f64::min)
    }
}

pub fn roots_of_an(a_n: &ParamPoly, n: usize) -> Result<RootSet, RootError> {
    let (roots, residual) = aberth(&RealPoly::from_exact(a_n))?;
    Ok(RootSet { n, roots, residual })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn double_root_of_first_ising_coefficient() {
        let a1 = ParamPoly::from_strs(&["1/8", "1/4", "1/8"]).unwrap();
        let set = roots_of_an(&a1, 1).unwrap();
        assert_eq!(set.roots.len(), 2);
        assert!(set.distance_to(Complex64::new(-1.0, 0.0)) < 1e-7);
        assert!(set.conjugate_mismatch() < 1e-7);
    }
}

//! Reference potentials.

use super::PotentialSpec;
use crate::numkernel::{ParamPoly, Rational};

fn lambda_pow(e: usize) -> ParamPoly {
    ParamPoly::monomial(Rational::one(), e)
}

/// `V = x⁴/4! + λ·x²y²/4 + λ²·y⁴/4!`, the two-colour Ising model on 4-regular graphs.
pub fn ising() -> PotentialSpec {
    PotentialSpec::parametric([((4, 0), lambda_pow(0)), ((2, 2), lambda_pow(1)), ((0, 4), lambda_pow(2))])
        .expect("valid potential")
}

/// [`ising`] at a fixed λ.
pub fn ising_at(lambda: &Rational) -> PotentialSpec {
    ising().at_lambda(lambda)
}

/// `V = x³/3!`.
pub fn cubic() -> PotentialSpec {
    PotentialSpec::rational([((3, 0), Rational::one())]).expect("valid potential")
}

/// `V = x⁵/5!`.
pub fn quintic() -> PotentialSpec {
    PotentialSpec::rational([((5, 0), Rational::one())]).expect("valid potential")
}

/// `V = x³/3! + λ·xy²/2 + λ²·y⁴/4!`, mixing cubic and quartic vertices.
pub fn inhomogeneous() -> PotentialSpec {
    PotentialSpec::parametric([((3, 0), lambda_pow(0)), ((1, 2), lambda_pow(1)), ((0, 4), lambda_pow(2))])
        .expect("valid potential")
}

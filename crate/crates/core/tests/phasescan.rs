use std::f64::consts::PI;

use bicolored_core::expansion::{expand, models, ExpandOptions};
use bicolored_core::numkernel::{Coeff, Rational};
use bicolored_core::phasescan::{fit_law, roots_of_an};
use num_complex::Complex64;

fn ising_alpha(l: f64) -> f64 {
    if l < 1.0 / 3.0 {
        2.0 / 3.0
    } else if l < 3.0 {
        -16.0 * l * l / (3.0 * l * l - 18.0 * l + 3.0)
    } else {
        2.0 * l * l / 3.0
    }
}

#[test]
fn ising_fits_at_two_hundred_terms() {
    let series = expand(&models::ising(), 200, ExpandOptions::default()).unwrap();
    for lambda in ["1/5", "1", "2", "7/2"] {
        let l: Rational = lambda.parse().unwrap();
        let fit = fit_law(&series.at_lambda(&l)).unwrap();
        let exact = ising_alpha(l.to_f64());
        println!("λ = {lambda}: α̂ = {} (exact {exact}), ĉ = {}", fit.alpha, fit.c);
        assert!((fit.alpha / exact - 1.0).abs() < 1e-2);
    }
}

#[test]
fn inhomogeneous_fits_at_one_fifty_terms() {
    let pot = models::inhomogeneous();
    let c_high = |l: f64| {
        (l / (32.0 * l * l - 12.0 * l + 2.0 * (1.0 - 4.0 * l) * (2.0 * l * (8.0 * l - 3.0)).sqrt())).sqrt() / PI
    };
    let cases = [("1/4", 1.5, 1.0 / (2.0 * PI * 0.5f64.sqrt())), ("1", 3.41988141875647, c_high(1.0))];
    for (lambda, alpha, c) in cases {
        let l: Rational = lambda.parse().unwrap();
        let series = expand(&pot.at_lambda(&l), 150, ExpandOptions::default()).unwrap();
        let a: Vec<Rational> = series.iter().map(|x| x.as_rational().unwrap().clone()).collect();
        let fit = fit_law(&a).unwrap();
        println!("λ = {lambda}: α̂ = {} (exact {alpha}), ĉ = {} (exact {c})", fit.alpha, fit.c);
        assert!((fit.alpha / alpha - 1.0).abs() < 1e-2);
        assert!((fit.c / c - 1.0).abs() < 2e-2);
    }
}

#[test]
fn ising_roots_approach_the_transition() {
    let series = expand(&models::ising(), 50, ExpandOptions::default()).unwrap();
    let mut last = f64::INFINITY;
    for n in [10, 25, 50] {
        let Coeff::Param(p) = series.get(n).unwrap() else { panic!("parametric series") };
        let set = roots_of_an(p, n).unwrap();
        assert_eq!(set.roots.len(), 2 * n);
        assert!(set.residual <= 1e-8);
        assert!(set.conjugate_mismatch() <= 1e-8);
        let d = set.distance_to(Complex64::new(1.0 / 3.0, 0.0));
        println!("n = {n}: distance {d}");
        assert!(d < last);
        last = d;
    }
}

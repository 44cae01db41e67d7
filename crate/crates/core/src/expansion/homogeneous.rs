use num_bigint::BigInt;

use super::recursion::double_factorial_table;
use super::{ExpansionError, ExpansionSeries, PotentialSpec, RegularityInfo};
use crate::numkernel::{factorial, BivarPoly, Coeff, Exact, ParamPoly, Rational, Ring};

/// `A_n` of a homogeneous potential of degree `k`, read off
/// `A_n = Σ_{s+t=nM} (2s−1)!!·(2t−1)!!·[x^{2s} y^{2t}] V^{nK} / (nK)!`.
/// Exactly zero when `nK` is not an integer.
pub fn fast_homogeneous_a(pot: &PotentialSpec, reg: &RegularityInfo, n: usize) -> Result<Coeff, ExpansionError> {
    check(pot, reg)?;
    Ok(if pot.is_param() {
        single::<ParamPoly>(pot, reg.k, n).into_coeff()
    } else {
        single::<Rational>(pot, reg.k, n).into_coeff()
    })
}

/// `A_0 … A_N` of a homogeneous potential through successive powers of `V`.
pub fn homogeneous_series(pot: &PotentialSpec, n_max: usize) -> Result<ExpansionSeries, ExpansionError> {
    let reg = pot.regularity().ok_or(ExpansionError::NotHomogeneous)?;
    let a = if pot.is_param() {
        into_coeffs(series::<ParamPoly>(pot, reg.k, n_max))
    } else {
        into_coeffs(series::<Rational>(pot, reg.k, n_max))
    };
    Ok(ExpansionSeries::new(a))
}

fn into_coeffs<C: Exact>(v: Vec<C>) -> Vec<Coeff> {
    v.into_iter().map(Exact::into_coeff).collect()
}

fn check(pot: &PotentialSpec, reg: &RegularityInfo) -> Result<(), ExpansionError> {
    match pot.regularity() {
        Some(r) if r.k == reg.k => Ok(()),
        _ => Err(ExpansionError::NotHomogeneous),
    }
}

/// `V·D` with `D` clearing all denominators.
fn integral_v<C: Exact>(pot: &PotentialSpec) -> (BivarPoly<C::Integral>, BigInt) {
    let v = pot.v_poly::<C>().expect("variant checked by caller");
    let d = v.denominator_lcm();
    (v.to_integral(&d), d)
}

/// Vertex count `j = nK = 2n/(k−2)` when integral.
fn vertex_count(k: u32, n: usize) -> Option<usize> {
    let km2 = (k - 2) as usize;
    (2 * n % km2 == 0).then(|| 2 * n / km2)
}

fn single<C: Exact>(pot: &PotentialSpec, k: u32, n: usize) -> C {
    let Some(j) = vertex_count(k, n) else {
        return C::zero();
    };
    let (w, d) = integral_v::<C>(pot);
    let power = w.pow(j as u32, None);
    let df = double_factorial_table(k as usize * j);
    assemble::<C>(&power, &d, j, &df)
}

fn series<C: Exact>(pot: &PotentialSpec, k: u32, n_max: usize) -> Vec<C> {
    let (w, d) = integral_v::<C>(pot);
    let j_max = 2 * n_max / (k as usize - 2);
    let df = double_factorial_table(k as usize * j_max);
    let mut out = vec![C::zero(); n_max + 1];
    let mut power = BivarPoly::<C::Integral>::one();
    for j in 0..=j_max {
        if j > 0 {
            power = power.mul(&w, None);
        }
        let twice_n = j * (k as usize - 2);
        if twice_n % 2 == 0 && twice_n / 2 <= n_max {
            out[twice_n / 2] = assemble::<C>(&power, &d, j, &df);
        }
    }
    out
}

/// `Σ df·[x^{2s}y^{2t}] (D·V)^j / (D^j · j!)`.
fn assemble<C: Exact>(power: &BivarPoly<C::Integral>, d: &BigInt, j: usize, df: &[BigInt]) -> C {
    let mut sum = <C::Integral as Ring>::zero();
    for (&(u, w), c) in power.terms() {
        if u % 2 == 0 && w % 2 == 0 {
            let weight = &df[u as usize] * &df[w as usize];
            sum.add_assign_ref(&c.scale_int(&weight));
        }
    }
    let denom = num_traits::pow(d.clone(), j) * factorial(j as u64);
    C::from_integral(&sum, &denom)
}

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;

use super::odd_double_factorial;
use crate::numkernel::{common_denominator, factorial, BivarPoly, Exact, Ring};

/// `F_0 … F_{2N}` where `F_k` holds the terms of `V` of total degree `k + 2`.
/// `F_0` is always zero and is kept only so that indices line up.
pub fn build_f<C: Ring>(v: &BivarPoly<C>, n: usize) -> Vec<BivarPoly<C>> {
    let mut f = vec![BivarPoly::zero(); 2 * n + 1];
    for (&(u, w), c) in v.terms() {
        let d = (u + w) as usize;
        debug_assert!(d >= 3, "V must not contain terms of degree below 3");
        if d >= 3 && d - 2 <= 2 * n {
            f[d - 2].add_term((u, w), c);
        }
    }
    f
}

/// `Q_0 … Q_upto`, stored denominator-free as `P_m = m!·D^m·Q_m` where `D`
/// clears every denominator of the `F_k`.
#[derive(Clone, Debug)]
pub struct QSeries<C: Exact> {
    scaled: Vec<BivarPoly<C::Integral>>,
    d: BigInt,
    pruned: bool,
}

impl<C: Exact> QSeries<C> {
    pub fn upto(&self) -> usize {
        self.scaled.len() - 1
    }

    /// True if parity pruning removed monomials that cannot reach any `A_k`.
    pub fn is_pruned(&self) -> bool {
        self.pruned
    }

    pub fn q(&self, m: usize) -> BivarPoly<C> {
        BivarPoly::from_integral(&self.scaled[m], &self.scale(m))
    }

    /// `q^{(m)}_{s,t}`, the coefficient of `x^s y^t` in `Q_m`.
    pub fn coeff(&self, m: usize, s: u32, t: u32) -> C {
        match self.scaled[m].coeff((s, t)) {
            Some(c) => C::from_integral(c, &self.scale(m)),
            None => C::zero(),
        }
    }

    fn scale(&self, m: usize) -> BigInt {
        factorial(m as u64) * num_traits::pow(self.d.clone(), m)
    }
}

/// Runs `Q_m = (1/m) Σ_k k·F_k·Q_{m−k}` from `Q_0 = 1`.
pub fn q_recursion<C: Exact>(f: &[BivarPoly<C>], upto: usize) -> QSeries<C> {
    run(f, upto, false)
}

/// As [`q_recursion`], but discards monomials whose parity class cannot
/// combine with later `F` factors into an even-even monomial of an
/// even-index `Q_m`. Every `A_k` is unaffected.
pub fn q_recursion_pruned<C: Exact>(f: &[BivarPoly<C>], upto: usize) -> QSeries<C> {
    run(f, upto, true)
}

fn run<C: Exact>(f: &[BivarPoly<C>], upto: usize, prune: bool) -> QSeries<C> {
    let d = common_denominator(f.iter().flat_map(|fk| fk.terms().map(|(_, c)| c)));
    let g: Vec<BivarPoly<C::Integral>> = f.iter().map(|fk| fk.to_integral(&d)).collect();
    let kmax = g.len().saturating_sub(1);
    let mut d_pow = vec![<BigInt as One>::one()];
    for i in 1..=kmax {
        let next = &d_pow[i - 1] * &d;
        d_pow.push(next);
    }
    let needed = prune.then(|| needed_parities(f, upto));

    let mut p: Vec<BivarPoly<C::Integral>> = vec![BivarPoly::one()];
    for m in 1..=upto {
        let ks: Vec<usize> = (1..=m.min(kmax)).filter(|&k| !g[k].is_zero() && !p[m - k].is_zero()).collect();
        let bound = Some(3 * m as u32);
        let parts: Vec<BivarPoly<C::Integral>> = ks
            .par_iter()
            .map(|&k| {
                // k·(m−1)!/(m−k)!·D^{k−1}
                let mut factor = &d_pow[k - 1] * BigInt::from(k);
                for i in (m - k + 1)..m {
                    factor *= i;
                }
                g[k].scale_int(&factor).mul(&p[m - k], bound)
            })
            .collect();
        let mut acc = BivarPoly::zero();
        for part in &parts {
            acc.add_assign(part);
        }
        if let Some(mask) = &needed {
            acc.retain(|(u, w), _| mask[m] & parity_bit(u, w) != 0);
        }
        p.push(acc);
    }
    QSeries { scaled: p, d, pruned: prune }
}

/// Parity class of `x^u y^w` as a one-hot bit in a 4-bit mask.
fn parity_bit(u: u32, w: u32) -> u8 {
    1 << ((u & 1) | ((w & 1) << 1))
}

/// Sum-set of two parity masks over `Z_2²`.
fn parity_sum(a: u8, b: u8) -> u8 {
    let mut out = 0;
    for i in 0..4 {
        for j in 0..4 {
            if a & (1 << i) != 0 && b & (1 << j) != 0 {
                out |= 1 << (i ^ j);
            }
        }
    }
    out
}

/// For each `m`, the parity classes of `Q_m` that can still reach an
/// even-even monomial of some even-index `Q_{m+j}`, `m + j ≤ upto`.
fn needed_parities<C: Ring>(f: &[BivarPoly<C>], upto: usize) -> Vec<u8> {
    let fpar: Vec<u8> = f
        .iter()
        .map(|fk| fk.terms().fold(0u8, |acc, (&(u, w), _)| acc | parity_bit(u, w)))
        .collect();
    // reach[j]: parities of products of F's whose indices sum to j.
    let mut reach = vec![0u8; upto + 1];
    reach[0] = parity_bit(0, 0);
    for j in 1..=upto {
        for k in 1..=j.min(fpar.len().saturating_sub(1)) {
            if fpar[k] != 0 {
                reach[j] |= parity_sum(reach[j - k], fpar[k]);
            }
        }
    }
    (0..=upto)
        .map(|m| {
            (0..=upto - m)
                .filter(|j| (m + j) % 2 == 0)
                .fold(0u8, |acc, j| acc | reach[j])
        })
        .collect()
}

/// `A_k = Σ (2s−1)!!·(2t−1)!!·q^{(2k)}_{2s,2t}` for `k = 0 … n`.
pub fn extract_a<C: Exact>(qs: &QSeries<C>, n: usize) -> Vec<C> {
    assert!(2 * n <= qs.upto(), "Q series too short for A_{n}");
    let max_deg = (0..=n)
        .filter_map(|k| qs.scaled[2 * k].total_degree())
        .max()
        .unwrap_or(0) as usize;
    let df = double_factorial_table(max_deg);
    (0..=n)
        .into_par_iter()
        .map(|k| {
            let mut sum = <C::Integral as Ring>::zero();
            for (&(u, w), c) in qs.scaled[2 * k].terms() {
                if u % 2 == 0 && w % 2 == 0 {
                    let weight = &df[u as usize] * &df[w as usize];
                    sum.add_assign_ref(&c.scale_int(&weight));
                }
            }
            C::from_integral(&sum, &qs.scale(2 * k))
        })
        .collect()
}

/// `table[e] = (e−1)!!` for even `e ≤ max`; odd entries are unused.
pub(crate) fn double_factorial_table(max: usize) -> Vec<BigInt> {
    let mut t = vec![<BigInt as One>::one(); max + 1];
    for e in (2..=max).step_by(2) {
        t[e] = &t[e - 2] * BigInt::from(e - 1);
    }
    debug_assert!(max < 2 || t[2] == odd_double_factorial(1));
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansion::models;
    use crate::numkernel::{ParamPoly, Rational};

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn pp(xs: &[&str]) -> ParamPoly {
        ParamPoly::from_strs(xs).unwrap()
    }

    #[test]
    fn ising_f_has_single_level() {
        let v = models::ising().v_poly::<ParamPoly>().unwrap();
        let f = build_f(&v, 3);
        assert_eq!(f.len(), 7);
        let f2 = BivarPoly::from_terms([
            ((4, 0), pp(&["1/24"])),
            ((2, 2), pp(&["0", "1/4"])),
            ((0, 4), pp(&["0", "0", "1/24"])),
        ]);
        assert_eq!(f[2], f2);
        assert!(f.iter().enumerate().all(|(k, fk)| k == 2 || fk.is_zero()));
    }

    #[test]
    fn empty_and_cubic_f() {
        let f = build_f::<Rational>(&BivarPoly::zero(), 2);
        assert!(f.iter().all(BivarPoly::is_zero));
        let v = models::cubic().v_poly::<Rational>().unwrap();
        let f = build_f(&v, 2);
        assert_eq!(f[1], BivarPoly::monomial((3, 0), r("1/6")));
        assert!(f[2..].iter().all(BivarPoly::is_zero));
    }

    #[test]
    fn ising_q_is_power_series_of_f2() {
        let v = models::ising().v_poly::<ParamPoly>().unwrap();
        let f = build_f(&v, 2);
        let qs = q_recursion(&f, 4);
        assert_eq!(qs.q(0), BivarPoly::one());
        assert_eq!(qs.q(2), f[2]);
        let half = ParamPoly::constant(r("1/2"));
        assert_eq!(qs.q(4), f[2].mul(&f[2], None).scale(&half));
        assert!(qs.q(1).is_zero() && qs.q(3).is_zero());
    }

    #[test]
    fn cubic_q1_and_a1() {
        let v = models::cubic().v_poly::<Rational>().unwrap();
        let f = build_f(&v, 1);
        let qs = q_recursion(&f, 2);
        assert_eq!(qs.q(1), f[1]);
        assert_eq!(qs.coeff(2, 6, 0), r("1/72"));
        // theta graph 1/12 plus dumbbell 1/8
        assert_eq!(extract_a(&qs, 1), vec![r("1"), r("5/24")]);
    }

    #[test]
    fn ising_first_coefficients() {
        let v = models::ising().v_poly::<ParamPoly>().unwrap();
        let f = build_f(&v, 3);
        let a = extract_a(&q_recursion(&f, 6), 3);
        assert_eq!(a[0], ParamPoly::one());
        assert_eq!(a[1], pp(&["1/8", "1/4", "1/8"]));
        assert_eq!(a[2], pp(&["35/384", "5/32", "19/64", "5/32", "35/384"]));
        assert_eq!(a[3], pp(&["385/3072", "105/512", "1295/3072", "175/256", "1295/3072", "105/512", "385/3072"]));
    }

    /// `Σ_m Q_m ζ^m = exp(Σ_k F_k ζ^k)`, by summing `S^j / j!` directly.
    fn exp_series(f: &[BivarPoly<Rational>], order: usize) -> Vec<BivarPoly<Rational>> {
        let s: Vec<BivarPoly<Rational>> = (0..=order).map(|k| f.get(k).cloned().unwrap_or_default()).collect();
        let series_mul = |a: &[BivarPoly<Rational>], b: &[BivarPoly<Rational>]| {
            let mut out = vec![BivarPoly::zero(); order + 1];
            for i in 0..=order {
                for j in 0..=order - i {
                    out[i + j].add_assign(&a[i].mul(&b[j], None));
                }
            }
            out
        };
        let mut total = vec![BivarPoly::zero(); order + 1];
        let mut power = vec![BivarPoly::zero(); order + 1];
        power[0] = BivarPoly::one();
        for j in 0..=order {
            let inv = Rational::one() / Rational::from_integer(factorial(j as u64));
            for (t, p) in total.iter_mut().zip(&power) {
                t.add_assign(&p.scale(&inv));
            }
            power = series_mul(&power, &s);
        }
        total
    }

    fn generic() -> crate::expansion::PotentialSpec {
        crate::expansion::PotentialSpec::rational([
            ((3, 0), r("1")),
            ((1, 2), r("-2/3")),
            ((2, 2), r("1/5")),
            ((0, 5), r("3")),
            ((4, 3), r("-1/7")),
        ])
        .unwrap()
    }

    #[test]
    fn recursion_matches_exponential() {
        let pot = generic();
        let f = build_f(&pot.v_poly::<Rational>().unwrap(), 4);
        let qs = q_recursion(&f, 8);
        let oracle = exp_series(&f, 8);
        for (m, expected) in oracle.iter().enumerate() {
            assert_eq!(&qs.q(m), expected, "Q_{m}");
        }
    }

    #[test]
    fn pruning_preserves_coefficients() {
        let f = build_f(&generic().v_poly::<Rational>().unwrap(), 6);
        let full = q_recursion(&f, 12);
        let pruned = q_recursion_pruned(&f, 12);
        assert!(pruned.is_pruned());
        assert_eq!(extract_a(&full, 6), extract_a(&pruned, 6));
        let dropped: usize = (0..=12).map(|m| full.scaled[m].len() - pruned.scaled[m].len()).sum();
        assert!(dropped > 0);
    }

    #[test]
    fn parity_sums() {
        assert_eq!(parity_sum(0b0001, 0b0110), 0b0110);
        assert_eq!(parity_sum(0b0010, 0b0010), 0b0001);
        assert_eq!(parity_sum(0, 0b1111), 0);
    }
}

use num_integer::Integer;
use thiserror::Error;

use crate::asymptotics::LawSign;
use crate::numkernel::{ln_factorial, Rational};

pub const MIN_TERMS: usize = 20;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FitError {
    #[error("only {found} usable nonzero coefficients, need {MIN_TERMS}")]
    InsufficientTerms { found: usize },
    #[error("coefficient signs break their pattern at n = {n}")]
    SignInconsistent { n: u64 },
}

/// One nonzero coefficient stored as `ln|A_n|` and its sign.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogTerm {
    pub n: u64,
    pub ln_abs: f64,
    pub negative: bool,
}

impl LogTerm {
    pub fn from_exact(n: u64, a: &Rational) -> Option<Self> {
        (!a.is_zero()).then(|| LogTerm { n, ln_abs: a.ln_abs(), negative: a.is_negative() })
    }
}

/// Law estimated from a finite coefficient sequence.
#[derive(Clone, Debug, PartialEq)]
pub struct LawFit {
    pub alpha: f64,
    /// Signed so that `A_{dm} ≈ c·(±1)^m·Γ(dm)·α^{dm}`.
    pub c: f64,
    pub period: u64,
    pub sign: LawSign,
    /// Number of nonzero coefficients used.
    pub terms: usize,
}

/// [`fit_law_log`] on exact coefficients `A_0, A_1, …`.
pub fn fit_law(a: &[Rational]) -> Result<LawFit, FitError> {
    let terms: Vec<LogTerm> = a.iter().enumerate().skip(1).filter_map(|(n, x)| LogTerm::from_exact(n as u64, x)).collect();
    fit_law_log(&terms)
}

/// Estimates `α` and `c` in `A_n ∼ c·Γ(n)·αⁿ`.
///
/// The period `d` is the gcd of the indices of nonzero terms. `α` comes
/// from `ρ_n = (A_{n+d} / (A_n·n(n+1)⋯(n+d−1)))^{1/d}`, `c` from
/// `A_n / (Γ(n)·αⁿ)`. A `1/n` correction to `A_n` moves `ρ_n` only at order
/// `1/n²` and `c` at order `1/n`, so one Richardson step removes exactly that
/// order from each, using the top index and about half of it.
pub fn fit_law_log(terms: &[LogTerm]) -> Result<LawFit, FitError> {
    let mut terms: Vec<LogTerm> = terms.iter().copied().filter(|t| t.n >= 1 && t.ln_abs.is_finite()).collect();
    terms.sort_by_key(|t| t.n);
    if terms.len() < MIN_TERMS {
        return Err(FitError::InsufficientTerms { found: terms.len() });
    }
    let period = terms.iter().fold(0u64, |g, t| g.gcd(&t.n));
    let pairs: Vec<(LogTerm, LogTerm)> =
        terms.windows(2).filter(|w| w[1].n == w[0].n + period).map(|w| (w[0], w[1])).collect();
    let Some(&(_, last)) = pairs.last() else {
        return Err(FitError::InsufficientTerms { found: terms.len() });
    };

    // Sign of A_{n+d}/A_n must stay fixed over the upper half.
    let tail: Vec<&(LogTerm, LogTerm)> = pairs.iter().filter(|p| 2 * p.0.n >= last.n).collect();
    let flips = |p: &(LogTerm, LogTerm)| p.0.negative != p.1.negative;
    let alternating = flips(tail[tail.len() - 1]);
    if let Some(p) = tail.iter().find(|p| flips(p) != alternating) {
        return Err(FitError::SignInconsistent { n: p.1.n });
    }

    let rho = |p: &(LogTerm, LogTerm)| -> (f64, f64) {
        let rising: f64 = (0..period).map(|i| ((p.0.n + i) as f64).ln()).sum();
        (p.0.n as f64, ((p.1.ln_abs - p.0.ln_abs - rising) / period as f64).exp())
    };
    let (n1, r1) = rho(pairs.last().unwrap());
    let alpha = match pairs.iter().min_by_key(|p| p.0.n.abs_diff(pairs.last().unwrap().0.n / 2)) {
        Some(p) if p.0.n < pairs.last().unwrap().0.n => {
            let (n0, r0) = rho(p);
            (n1 * n1 * r1 - n0 * n0 * r0) / (n1 * n1 - n0 * n0)
        }
        _ => r1,
    };

    let c_at = |t: &LogTerm| (t.ln_abs - ln_factorial(t.n - 1) - t.n as f64 * alpha.ln()).exp();
    let top = terms[terms.len() - 1];
    let mid = terms.iter().min_by_key(|t| t.n.abs_diff(top.n / 2)).unwrap();
    let c_abs = if mid.n < top.n {
        let (n1, n0) = (top.n as f64, mid.n as f64);
        (n1 * c_at(&top) - n0 * c_at(mid)) / (n1 - n0)
    } else {
        c_at(&top)
    };
    let m = top.n / period;
    let law_negative = top.negative != (alternating && m % 2 == 1);
    Ok(LawFit {
        alpha,
        c: if law_negative { -c_abs } else { c_abs },
        period,
        sign: if alternating { LawSign::Alternating } else { LawSign::Positive },
        terms: terms.len(),
    })
}

//! Brute-force census of labeled edge-bicolored graphs.
//!
//! A labeled graph on `2s` red and `2t` yellow half-edges is a perfect
//! matching of each colour together with a partition of all half-edges into
//! vertices. An isomorphism class with automorphism group `Aut` has
//! `(2s)!·(2t)!/|Aut|` labelings, so dividing labeled counts by
//! `(2s)!·(2t)!` yields `Σ 1/|Aut|` without ever building a group.

mod eulerian;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use thiserror::Error;

use crate::expansion::{PotentialSpec, WeightMonomial, WeightPoly};
use crate::numkernel::{factorial, Coeff, Exponent, KernelError, ParamPoly, Rational};

pub use eulerian::{eulerian_partition, eulerian_polynomial, monochrome_classes, Multigraph, MonochromeClass};

/// Largest number of half-edges the enumerators accept.
pub const MAX_HALF_EDGES: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("instance needs {half_edges} half-edges, above the limit of {MAX_HALF_EDGES}")]
    TooLarge { half_edges: usize },
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

/// Every perfect matching of `0..n`, pairing the smallest free label first.
pub fn perfect_matchings(n: usize) -> Vec<Vec<(usize, usize)>> {
    fn go(free: &mut Vec<usize>, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if free.is_empty() {
            out.push(cur.clone());
            return;
        }
        let a = free.remove(0);
        for i in 0..free.len() {
            let b = free.remove(i);
            cur.push((a, b));
            go(free, cur, out);
            cur.pop();
            free.insert(i, b);
        }
        free.insert(0, a);
    }
    let mut out = Vec::new();
    if n % 2 == 0 {
        go(&mut (0..n).collect(), &mut Vec::new(), &mut out);
    }
    out
}

/// Bounds on the total degree of every vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeRule {
    pub min: u32,
    pub max: Option<u32>,
}

impl DegreeRule {
    pub fn at_least(min: u32) -> Self {
        DegreeRule { min, max: None }
    }

    pub fn exactly(d: u32) -> Self {
        DegreeRule { min: d, max: Some(d) }
    }
}

/// Weighted count of all labeled graphs sharing one degree profile.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusEntry {
    /// Bidegrees `(red, yellow)` of the vertices, sorted.
    pub profile: Vec<Exponent>,
    /// Number of labeled graphs with this profile.
    pub labeled: BigInt,
    /// `labeled / ((2s)!·(2t)!)`, i.e. `Σ 1/|Aut|` over isomorphism classes.
    pub weight: Rational,
}

impl CensusEntry {
    pub fn vertices(&self) -> usize {
        self.profile.len()
    }

    /// `Π_v λ_{deg v}` as a symbolic monomial.
    pub fn monomial(&self) -> WeightMonomial {
        WeightMonomial::from_factors(self.profile.iter().map(|&e| (e, 1)))
    }
}

/// Census of graphs with `s` red and `t` yellow edges, bucketed by profile.
pub fn enumerate_census(s: usize, t: usize, rule: DegreeRule) -> Result<Vec<CensusEntry>, GraphError> {
    let half_edges = 2 * s + 2 * t;
    if half_edges > MAX_HALF_EDGES {
        return Err(GraphError::TooLarge { half_edges });
    }
    let matchings = BigInt::from(perfect_matchings(2 * s).len()) * BigInt::from(perfect_matchings(2 * t).len());
    let denom = factorial(2 * s as u64) * factorial(2 * t as u64);
    let partitions = count_partitions(2 * s, 2 * t, rule);
    Ok(partitions
        .into_iter()
        .map(|(profile, count)| {
            let labeled = &matchings * BigInt::from(count);
            let weight = Rational::new(labeled.clone(), denom.clone());
            CensusEntry { profile, labeled, weight }
        })
        .collect())
}

/// Set partitions of `red + yellow` labels (red first) whose blocks obey
/// `rule`, counted per sorted bidegree profile. Restricted-growth strings
/// keep every partition unique.
fn count_partitions(red: usize, yellow: usize, rule: DegreeRule) -> BTreeMap<Vec<Exponent>, u64> {
    struct State {
        red: usize,
        total: usize,
        rule: DegreeRule,
        blocks: Vec<(u32, u32)>,
        out: BTreeMap<Vec<Exponent>, u64>,
    }
    fn deficit(st: &State) -> usize {
        st.blocks
            .iter()
            .map(|&(u, w)| st.rule.min.saturating_sub(u + w) as usize)
            .sum()
    }
    fn go(st: &mut State, label: usize) {
        let remaining = st.total - label;
        if deficit(st) > remaining {
            return;
        }
        if label == st.total {
            let mut profile = st.blocks.clone();
            profile.sort_unstable();
            *st.out.entry(profile).or_insert(0) += 1;
            return;
        }
        let is_red = label < st.red;
        for b in 0..=st.blocks.len() {
            if b == st.blocks.len() {
                st.blocks.push((0, 0));
            }
            let size = st.blocks[b].0 + st.blocks[b].1;
            if st.rule.max.map_or(true, |m| size < m) {
                if is_red {
                    st.blocks[b].0 += 1;
                } else {
                    st.blocks[b].1 += 1;
                }
                go(st, label + 1);
                if is_red {
                    st.blocks[b].0 -= 1;
                } else {
                    st.blocks[b].1 -= 1;
                }
            }
            if st.blocks[b] == (0, 0) {
                st.blocks.pop();
            }
        }
    }
    let mut st = State { red, total: red + yellow, rule, blocks: Vec::new(), out: BTreeMap::new() };
    go(&mut st, 0);
    st.out
}

/// `Σ weight · Π_v λ_{deg v}` over a census.
pub fn census_polynomial(entries: &[CensusEntry]) -> WeightPoly {
    WeightPoly::from_terms(entries.iter().map(|e| (e.monomial(), e.weight.clone())))
}

/// Census entries with `χ = −n` whose vertex degrees all carry a weight in `pot`.
pub fn census_for_order(n: usize, pot: &PotentialSpec) -> Result<Vec<CensusEntry>, GraphError> {
    let (Some(dmin), Some(dmax)) = (pot.min_degree(), pot.max_degree()) else {
        return Ok(Vec::new());
    };
    if n == 0 {
        return enumerate_census(0, 0, DegreeRule::at_least(dmin));
    }
    // 2E ≥ dmin·V and 2E ≤ dmax·V with V = E − n.
    let e_max = (dmin as usize * n) / (dmin as usize - 2);
    let e_min = (dmax as usize * n).div_ceil(dmax as usize - 2);
    if 2 * e_max > MAX_HALF_EDGES {
        return Err(GraphError::TooLarge { half_edges: 2 * e_max });
    }
    let rule = DegreeRule { min: dmin, max: Some(dmax) };
    let mut out = Vec::new();
    for edges in e_min..=e_max {
        for s in 0..=edges {
            out.extend(
                enumerate_census(s, edges - s, rule)?
                    .into_iter()
                    .filter(|e| e.vertices() + n == edges && e.profile.iter().all(|d| pot.terms().contains_key(d))),
            );
        }
    }
    Ok(out)
}

/// `A_n` as the weighted count of graphs with `χ = −n` and every vertex of
/// degree at least 3, each vertex contributing its `Λ_{deg v}`.
pub fn weighted_a(n: usize, pot: &PotentialSpec) -> Result<Coeff, GraphError> {
    let constant = |r: Rational| if pot.is_param() { Coeff::Param(ParamPoly::constant(r)) } else { Coeff::Rational(r) };
    if n == 0 {
        return Ok(constant(Rational::one()));
    }
    let mut total = constant(Rational::zero());
    for entry in census_for_order(n, pot)? {
        let mut term = constant(entry.weight.clone());
        for e in &entry.profile {
            term = term.checked_mul(&pot.terms()[e])?;
        }
        total = total.checked_add(&term)?;
    }
    Ok(total)
}

use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::{perfect_matchings, GraphError, MAX_HALF_EDGES};
use crate::numkernel::{factorial, ParamPoly, Rational};

/// Undirected multigraph on few vertices; `adj[i][i]` counts loops at `i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Multigraph {
    adj: Vec<Vec<u32>>,
}

impl Multigraph {
    pub fn new(vertices: usize) -> Self {
        Multigraph { adj: vec![vec![0; vertices]; vertices] }
    }

    pub fn from_edges(vertices: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Self::new(vertices);
        for &(a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        self.adj[a][b] += 1;
        if a != b {
            self.adj[b][a] += 1;
        }
    }

    pub fn vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn adjacency(&self) -> &[Vec<u32>] {
        &self.adj
    }

    /// Edge list with `a ≤ b`, parallel edges repeated.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.vertices() {
            for b in a..self.vertices() {
                for _ in 0..self.adj[a][b] {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// A loop adds 2 to the degree of its vertex.
    pub fn degree(&self, v: usize) -> u32 {
        self.adj[v].iter().sum::<u32>() + self.adj[v][v]
    }

    /// Lexicographically least relabeling; equal for isomorphic graphs.
    pub fn canonical(&self) -> Multigraph {
        let n = self.vertices();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best: Option<Multigraph> = None;
        loop {
            let mut g = Multigraph::new(n);
            for a in 0..n {
                for b in 0..n {
                    g.adj[perm[a]][perm[b]] = self.adj[a][b];
                }
            }
            if best.as_ref().map_or(true, |cur| g < *cur) {
                best = Some(g);
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        best.expect("at least the identity permutation")
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).expect("exists by choice of i");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// `Σ_γ λ^{|E(γ)|}` over edge subsets `γ` in which every vertex has even
/// degree, as a polynomial in λ. Scans all `2^{|E|}` subsets.
pub fn eulerian_polynomial(g: &Multigraph) -> ParamPoly {
    let edges = g.edges();
    let mut counts = vec![0u64; edges.len() + 1];
    for mask in 0u64..(1u64 << edges.len()) {
        let mut parity = vec![false; g.vertices()];
        for (i, &(a, b)) in edges.iter().enumerate() {
            if mask >> i & 1 == 1 && a != b {
                parity[a] ^= true;
                parity[b] ^= true;
            }
        }
        if parity.iter().all(|odd| !odd) {
            counts[mask.count_ones() as usize] += 1;
        }
    }
    ParamPoly::new(counts.into_iter().map(|c| Rational::from(c as i64)).collect())
}

/// `Z(G, λ)`: [`eulerian_polynomial`] evaluated at λ.
pub fn eulerian_partition(g: &Multigraph, lambda: &Rational) -> Rational {
    eulerian_polynomial(g).eval(lambda)
}

/// One isomorphism class of `k`-regular uncoloured multigraphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonochromeClass {
    pub graph: Multigraph,
    /// Number of half-edge labelings realising the class.
    pub labeled: BigInt,
    /// `1/|Aut|`, i.e. `labeled / (kV)!`.
    pub inv_aut: Rational,
}

/// All `k`-regular multigraphs (loops allowed) on `vertices` vertices.
pub fn monochrome_classes(k: usize, vertices: usize) -> Result<Vec<MonochromeClass>, GraphError> {
    let half_edges = k * vertices;
    if half_edges > MAX_HALF_EDGES {
        return Err(GraphError::TooLarge { half_edges });
    }
    let mut tally: BTreeMap<Multigraph, u64> = BTreeMap::new();
    let matchings = perfect_matchings(half_edges);
    for owner in equal_block_partitions(half_edges, k) {
        for m in &matchings {
            let pairs: Vec<(usize, usize)> = m.iter().map(|&(a, b)| (owner[a], owner[b])).collect();
            let g = Multigraph::from_edges(vertices, &pairs).canonical();
            *tally.entry(g).or_insert(0) += 1;
        }
    }
    let total = factorial(half_edges as u64);
    Ok(tally
        .into_iter()
        .map(|(graph, count)| {
            let labeled = BigInt::from(count);
            MonochromeClass { graph, inv_aut: Rational::new(labeled.clone(), total.clone()), labeled }
        })
        .collect())
}

/// Partitions of `0..n` into blocks of size `k`, as block index per label.
fn equal_block_partitions(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, k: usize, owner: &mut Vec<usize>, sizes: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if owner.len() == n {
            out.push(owner.clone());
            return;
        }
        for b in 0..=sizes.len() {
            if b == sizes.len() {
                if (sizes.len() + 1) * k > n {
                    break;
                }
                sizes.push(0);
            }
            if sizes[b] < k {
                sizes[b] += 1;
                owner.push(b);
                go(n, k, owner, sizes, out);
                owner.pop();
                sizes[b] -= 1;
            }
            if sizes[b] == 0 {
                sizes.pop();
            }
        }
    }
    let mut out = Vec::new();
    if k > 0 && n % k == 0 {
        go(n, k, &mut Vec::new(), &mut Vec::new(), &mut out);
    }
    out
}

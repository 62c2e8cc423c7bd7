//! All-terminal reliability of multigraphs with perfect nodes.
//!
//! Every edge is operational independently with probability `p`; `R(G)(p)` is
//! the probability that the operational edges connect all nodes. It is computed
//! exactly by deletion–contraction,
//! `R(G) = p·R(G / e) + (1 - p)·R(G - e)`, and cross-checked against brute-force
//! pathset counts.

mod graph;
mod polynomial;

pub use graph::{complete_graph, quotient_graph, Multigraph};
pub use polynomial::{Polynomial, PolynomialExport};

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dsu::UnionFind;
use crate::error::{check_limit, Error, Result};
use crate::limits::Limits;
use crate::partitions::Partition;
use crate::scalar::Scalar;

/// Which edge deletion–contraction factors on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PivotRule {
    /// An edge of a highest-multiplicity bundle, smallest endpoints first.
    #[default]
    MaxMultiplicity,
    /// A uniformly random edge, reproducible from the seed.
    Random { seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ReliabilityOptions {
    pub pivot: PivotRule,
    /// Cache subresults keyed by a degree-sorted relabeling of the graph.
    pub memoize: bool,
}

/// Exact `R(G)` as a polynomial in `p`.
pub fn reliability_polynomial<T: Scalar>(
    g: &Multigraph,
    options: &ReliabilityOptions,
    limits: &Limits,
) -> Result<Polynomial<T>> {
    if g.node_count() == 0 {
        return Err(Error::Domain("graph has no nodes".into()));
    }
    check_limit("edge count", g.edge_count(), limits.max_reliability_edges)?;
    let mut ctx = Factorizer {
        rng: match options.pivot {
            PivotRule::Random { seed } => Some(ChaCha8Rng::seed_from_u64(seed)),
            PivotRule::MaxMultiplicity => None,
        },
        memo: options.memoize.then(HashMap::new),
    };
    Ok(ctx.run(g))
}

type MemoKey = (usize, Vec<(usize, usize, usize)>);

struct Factorizer<T> {
    rng: Option<ChaCha8Rng>,
    memo: Option<HashMap<MemoKey, Polynomial<T>>>,
}

impl<T: Scalar> Factorizer<T> {
    fn run(&mut self, g: &Multigraph) -> Polynomial<T> {
        if g.node_count() == 1 {
            return Polynomial::one();
        }
        if !g.is_connected() {
            return Polynomial::zero();
        }
        let key = self.memo.is_some().then(|| memo_key(g));
        if let (Some(memo), Some(key)) = (&self.memo, &key) {
            if let Some(hit) = memo.get(key) {
                return hit.clone();
            }
        }
        let (u, v) = self.pivot(g);
        let contracted = self.run(&g.contract(u, v));
        let deleted = self.run(&g.delete_one(u, v));
        let result = contracted
            .shift()
            .add(&deleted.mul(&Polynomial::one_minus_p()));
        if let (Some(memo), Some(key)) = (&mut self.memo, key) {
            memo.insert(key, result.clone());
        }
        result
    }

    fn pivot(&mut self, g: &Multigraph) -> (usize, usize) {
        match &mut self.rng {
            Some(rng) => *g.edge_list().choose(rng).expect("connected graph has edges"),
            None => {
                let mut best: Option<((usize, usize), usize)> = None;
                for (e, k) in g.bundles() {
                    if best.is_none_or(|(_, bk)| k > bk) {
                        best = Some((e, k));
                    }
                }
                best.expect("connected graph has edges").0
            }
        }
    }
}

/// Relabels nodes by descending weighted degree (ties by index). Isomorphic
/// relabelings share a reliability polynomial, so any fixed relabeling is a
/// sound cache key.
fn memo_key(g: &Multigraph) -> MemoKey {
    let mut degree = vec![0usize; g.node_count()];
    for ((u, v), k) in g.bundles() {
        degree[u] += k;
        degree[v] += k;
    }
    let mut nodes: Vec<usize> = (0..g.node_count()).collect();
    nodes.sort_by(|&a, &b| degree[b].cmp(&degree[a]).then(a.cmp(&b)));
    let mut rank = vec![0; g.node_count()];
    for (r, &node) in nodes.iter().enumerate() {
        rank[node] = r;
    }
    let mut edges: Vec<(usize, usize, usize)> = g
        .bundles()
        .map(|((u, v), k)| {
            let (a, b) = (rank[u], rank[v]);
            (a.min(b), a.max(b), k)
        })
        .collect();
    edges.sort_unstable();
    (g.node_count(), edges)
}

/// A single term `coefficient · p^degree`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term<T> {
    pub coefficient: T,
    pub degree: usize,
}

/// The term of `r` whose degree is `edge_count`; zero when `r` stops short.
pub fn mgr<T: Scalar>(r: &Polynomial<T>, edge_count: usize) -> Term<T> {
    Term {
        coefficient: r.coeff(edge_count),
        degree: edge_count,
    }
}

/// `C_i` = number of `i`-edge subsets (parallel edges distinct) whose spanning
/// subgraph is connected, for `i = 0..=E`. Brute force over all `2^E` subsets.
pub fn pathset_counts(g: &Multigraph, limits: &Limits) -> Result<Vec<u64>> {
    if g.node_count() == 0 {
        return Err(Error::Domain("graph has no nodes".into()));
    }
    let edges = g.edge_list();
    let e = edges.len();
    check_limit("edge count (pathset enumeration)", e, limits.max_pathset_edges)?;
    let mut counts = vec![0u64; e + 1];
    for mask in 0u64..(1u64 << e) {
        let mut uf = UnionFind::new(g.node_count());
        for (bit, &(u, v)) in edges.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                uf.union(u, v);
            }
        }
        if uf.components() == 1 {
            counts[mask.count_ones() as usize] += 1;
        }
    }
    Ok(counts)
}

/// `Σ C_i p^i (1 - p)^(E - i)` with `E = counts.len() - 1`.
pub fn pathset_polynomial<T: Scalar>(counts: &[u64]) -> Polynomial<T> {
    let e = counts.len().saturating_sub(1);
    counts
        .iter()
        .enumerate()
        .fold(Polynomial::zero(), |acc, (i, &c)| {
            let c = T::from_u64(c).expect("scalar type cannot represent pathset count");
            let term = Polynomial::p()
                .pow(i)
                .mul(&Polynomial::one_minus_p().pow(e - i))
                .scale(&c);
            acc.add(&term)
        })
}

/// `(-1)^g` times the degree-`g` coefficient of `R(K_n^a)`, where `g` is the
/// quotient's edge count.
pub fn alpha_via_reliability<T: Scalar>(
    n: usize,
    a: &Partition,
    options: &ReliabilityOptions,
    limits: &Limits,
) -> Result<T> {
    let g = quotient_graph(n, a)?;
    let r = reliability_polynomial::<T>(&g, options, limits)?;
    let edges = g.edge_count();
    Ok(T::sign_power(edges) * mgr(&r, edges).coefficient)
}

/// `C_0 - C_1 + C_2 - …` over the pathsets of `K_n^a`.
pub fn alpha_via_pathsets<T: Scalar>(n: usize, a: &Partition, limits: &Limits) -> Result<T> {
    let counts = pathset_counts(&quotient_graph(n, a)?, limits)?;
    Ok(counts.iter().enumerate().fold(T::zero(), |acc, (i, &c)| {
        acc + T::sign_power(i) * T::from_u64(c).expect("scalar type cannot represent count")
    }))
}

/// The degree-`C(m, 2)` coefficient of `R(K_m)`.
pub fn leading_term_complete<T: Scalar>(
    m: usize,
    options: &ReliabilityOptions,
    limits: &Limits,
) -> Result<T> {
    if m == 0 {
        return Err(Error::Domain("complete graph needs at least one node".into()));
    }
    check_limit("m (complete graph)", m, limits.max_complete)?;
    let g = complete_graph(m);
    let r = reliability_polynomial::<T>(&g, options, limits)?;
    Ok(mgr(&r, g.edge_count()).coefficient)
}

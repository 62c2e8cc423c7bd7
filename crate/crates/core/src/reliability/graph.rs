use std::collections::BTreeMap;

use crate::dsu::UnionFind;
use crate::error::{Error, Result};
use crate::partitions::Partition;

/// Undirected multigraph with perfect nodes `0..node_count`.
///
/// Edges are stored as multiplicities on unordered pairs `(u, v)` with `u < v`.
/// Self-loops never reach the edge map; they are counted in `dropped_loops`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    node_count: usize,
    edges: BTreeMap<(usize, usize), usize>,
    dropped_loops: usize,
}

impl Multigraph {
    pub fn new(node_count: usize) -> Self {
        Multigraph {
            node_count,
            edges: BTreeMap::new(),
            dropped_loops: 0,
        }
    }

    /// Adds `k` parallel edges between 0-based nodes `u` and `v`.
    pub fn add_edges(&mut self, u: usize, v: usize, k: usize) -> Result<()> {
        if u >= self.node_count || v >= self.node_count {
            return Err(Error::Domain(format!(
                "edge ({u}, {v}) outside a graph with {} nodes",
                self.node_count
            )));
        }
        if k == 0 {
            return Ok(());
        }
        if u == v {
            self.dropped_loops += k;
        } else {
            *self.edges.entry((u.min(v), u.max(v))).or_insert(0) += k;
        }
        Ok(())
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn dropped_loops(&self) -> usize {
        self.dropped_loops
    }

    /// Total number of (non-loop) edges; the degree bound of the reliability polynomial.
    pub fn edge_count(&self) -> usize {
        self.edges.values().sum()
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        self.edges.get(&(u.min(v), u.max(v))).copied().unwrap_or(0)
    }

    /// `((u, v), multiplicity)` bundles with `u < v`.
    pub fn bundles(&self) -> impl Iterator<Item = ((usize, usize), usize)> + '_ {
        self.edges.iter().map(|(&e, &k)| (e, k))
    }

    /// Every parallel edge listed separately.
    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        self.bundles()
            .flat_map(|(e, k)| std::iter::repeat_n(e, k))
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        if self.node_count == 0 {
            return false;
        }
        let mut uf = UnionFind::new(self.node_count);
        for &(u, v) in self.edges.keys() {
            uf.union(u, v);
        }
        uf.components() == 1
    }

    /// Identifies `v` with `u`. Edges between them become loops and are dropped;
    /// node indices above `v` shift down by one.
    pub fn contract(&self, u: usize, v: usize) -> Multigraph {
        let (keep, gone) = (u.min(v), u.max(v));
        let relabel = |x: usize| match x.cmp(&gone) {
            std::cmp::Ordering::Less => x,
            std::cmp::Ordering::Equal => keep,
            std::cmp::Ordering::Greater => x - 1,
        };
        let mut g = Multigraph::new(self.node_count - 1);
        g.dropped_loops = self.dropped_loops;
        for (&(a, b), &k) in &self.edges {
            g.add_edges(relabel(a), relabel(b), k)
                .expect("relabeled endpoints stay in range");
        }
        g
    }

    /// Removes one edge of the `(u, v)` bundle.
    pub fn delete_one(&self, u: usize, v: usize) -> Multigraph {
        let mut g = self.clone();
        let key = (u.min(v), u.max(v));
        match g.edges.get_mut(&key) {
            Some(k) if *k > 1 => *k -= 1,
            Some(_) => {
                g.edges.remove(&key);
            }
            None => panic!("no edge between {u} and {v}"),
        }
        g
    }

    /// Parses the text format: first line is the node count, then `u v k` lines
    /// with 1-based endpoints. Blank lines and `#` comments are ignored.
    pub fn parse_text(text: &str) -> Result<Multigraph> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("missing node count".into()))?;
        let node_count: usize = header
            .parse()
            .map_err(|_| Error::Parse(format!("bad node count {header:?}")))?;
        let mut g = Multigraph::new(node_count);
        for line in lines {
            let fields: Vec<usize> = line
                .split_whitespace()
                .map(|t| t.parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::Parse(format!("bad edge line {line:?}")))?;
            let [u, v, k] = fields[..] else {
                return Err(Error::Parse(format!("expected `u v k`, got {line:?}")));
            };
            if u == 0 || v == 0 || k == 0 {
                return Err(Error::Parse(format!(
                    "endpoints are 1-based and multiplicity is at least 1: {line:?}"
                )));
            }
            g.add_edges(u - 1, v - 1, k)
                .map_err(|e| Error::Parse(e.to_string()))?;
        }
        Ok(g)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.node_count);
        for ((u, v), k) in self.bundles() {
            out.push_str(&format!("{} {} {}\n", u + 1, v + 1, k));
        }
        out
    }
}

/// `K_n`: one edge between every pair of `n` nodes.
pub fn complete_graph(n: usize) -> Multigraph {
    let mut g = Multigraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            g.add_edges(u, v, 1).expect("in range");
        }
    }
    g
}

/// `K_n` with the nodes of each block of `a` identified. Block `i` becomes
/// node `i`; blocks of sizes `s` and `t` are joined by `s·t` parallel edges, and
/// the `C(s, 2)` edges inside a block are dropped as loops.
pub fn quotient_graph(n: usize, a: &Partition) -> Result<Multigraph> {
    if a.n() != n {
        return Err(Error::Domain(format!("{a} is not a partition of 1..={n}")));
    }
    let mut g = Multigraph::new(a.num_blocks());
    for i in 0..n {
        for j in i + 1..n {
            g.add_edges(a.label(i), a.label(j), 1)?;
        }
    }
    Ok(g)
}

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Permutation;
use crate::dsu::UnionFind;
use crate::error::{Error, Result};

/// Largest ground set a [`Partition`] can describe (labels are stored as `u8`).
pub const MAX_GROUND_SET: usize = 255;

/// A set partition of `{1..n}` stored as a restricted growth string.
///
/// Element `i` (1-based) carries block label `rgs[i - 1]`. Labels are assigned in
/// order of first appearance, so every partition has exactly one representation
/// and derived equality, hashing and ordering are all structural. The derived
/// ordering is lexicographic on the growth string.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    rgs: Vec<u8>,
}

impl Partition {
    /// Validates a restricted growth string.
    pub fn from_rgs(rgs: Vec<u8>) -> Result<Self> {
        check_ground_set(rgs.len())?;
        let mut max = 0u8;
        for (i, &label) in rgs.iter().enumerate() {
            if i == 0 {
                if label != 0 {
                    return Err(Error::Domain("growth string must start with 0".into()));
                }
            } else if label > max + 1 {
                return Err(Error::Domain(format!(
                    "label {label} at position {} skips ahead of {}",
                    i + 1,
                    max + 1
                )));
            }
            max = max.max(label);
        }
        Ok(Partition { rgs })
    }

    /// Canonicalizes an arbitrary labelling: elements with equal labels share a block.
    pub fn from_labels<L: Copy + Eq>(labels: &[L]) -> Result<Self> {
        check_ground_set(labels.len())?;
        let mut seen: Vec<L> = Vec::new();
        let rgs = labels
            .iter()
            .map(|l| match seen.iter().position(|s| s == l) {
                Some(p) => p as u8,
                None => {
                    seen.push(*l);
                    (seen.len() - 1) as u8
                }
            })
            .collect();
        Ok(Partition { rgs })
    }

    /// Builds a partition of `{1..n}` from 1-based blocks in any order.
    pub fn from_blocks<B: AsRef<[usize]>>(n: usize, blocks: &[B]) -> Result<Self> {
        check_ground_set(n)?;
        let mut labels: Vec<Option<usize>> = vec![None; n];
        for (b, block) in blocks.iter().enumerate() {
            let block = block.as_ref();
            if block.is_empty() {
                return Err(Error::Domain("empty block".into()));
            }
            for &e in block {
                if e == 0 || e > n {
                    return Err(Error::Domain(format!("element {e} outside 1..={n}")));
                }
                if labels[e - 1].replace(b).is_some() {
                    return Err(Error::Domain(format!("element {e} appears twice")));
                }
            }
        }
        let labels: Vec<usize> = labels
            .into_iter()
            .enumerate()
            .map(|(i, l)| l.ok_or_else(|| Error::Domain(format!("element {} missing", i + 1))))
            .collect::<Result<_>>()?;
        Partition::from_labels(&labels)
    }

    /// The all-singletons partition, unit of the join monoid.
    pub fn singletons(n: usize) -> Self {
        assert!((1..=MAX_GROUND_SET).contains(&n));
        Partition {
            rgs: (0..n).map(|i| i as u8).collect(),
        }
    }

    /// The one-block partition `{{1..n}}`, absorbing element of the monoid.
    pub fn one_block(n: usize) -> Self {
        assert!((1..=MAX_GROUND_SET).contains(&n));
        Partition { rgs: vec![0; n] }
    }

    /// Parses the `"1 2|3 4 5|6"` text form; `n` is the number of elements listed.
    pub fn parse(text: &str) -> Result<Self> {
        let blocks = parse_blocks(text)?;
        let n = blocks.iter().map(Vec::len).sum();
        Partition::from_blocks(n, &blocks).map_err(|e| Error::Parse(format!("{text:?}: {e}")))
    }

    /// Parses the text form and checks it covers exactly `{1..n}`.
    pub fn parse_with_n(text: &str, n: usize) -> Result<Self> {
        let blocks = parse_blocks(text)?;
        Partition::from_blocks(n, &blocks).map_err(|e| Error::Parse(format!("{text:?}: {e}")))
    }

    pub fn n(&self) -> usize {
        self.rgs.len()
    }

    pub fn rgs(&self) -> &[u8] {
        &self.rgs
    }

    pub fn label(&self, element: usize) -> usize {
        self.rgs[element] as usize
    }

    pub fn num_blocks(&self) -> usize {
        self.rgs.iter().copied().max().map_or(0, |m| m as usize + 1)
    }

    /// True iff the partition has a single block.
    pub fn is_trivial(&self) -> bool {
        self.rgs.iter().all(|&l| l == 0)
    }

    pub fn is_singletons(&self) -> bool {
        self.rgs.iter().enumerate().all(|(i, &l)| l as usize == i)
    }

    /// Blocks as 1-based element lists, ordered by minimum element.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.num_blocks()];
        for (i, &l) in self.rgs.iter().enumerate() {
            blocks[l as usize].push(i + 1);
        }
        blocks
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.num_blocks()];
        for &l in &self.rgs {
            sizes[l as usize] += 1;
        }
        sizes
    }

    /// Block-size multiset, sorted descending. Identifies the conjugation class.
    pub fn signature(&self) -> Vec<usize> {
        let mut sizes = self.block_sizes();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        sizes
    }

    /// Blocks as bitmasks over 0-based elements (bit `i` = element `i + 1`),
    /// ordered by minimum element. `None` when `n > 64`.
    pub fn block_masks(&self) -> Option<Vec<u64>> {
        if self.n() > 64 {
            return None;
        }
        let mut masks = vec![0u64; self.num_blocks()];
        for (i, &l) in self.rgs.iter().enumerate() {
            masks[l as usize] |= 1 << i;
        }
        Some(masks)
    }

    /// Join in the partition lattice: the finest partition coarser than both.
    pub fn product(&self, other: &Partition) -> Result<Partition> {
        self.check_same_n(other)?;
        let uf = self.joined(other);
        Ok(canonical_from_roots(uf))
    }

    /// `product(self, other).is_trivial()` without building the result.
    pub fn joins_to_trivial(&self, other: &Partition) -> Result<bool> {
        self.check_same_n(other)?;
        Ok(self.joined(other).components() == 1)
    }

    fn joined(&self, other: &Partition) -> UnionFind {
        let n = self.n();
        let mut uf = UnionFind::new(n);
        let mut first_a = [usize::MAX; MAX_GROUND_SET];
        let mut first_b = [usize::MAX; MAX_GROUND_SET];
        for i in 0..n {
            for (first, label) in [
                (&mut first_a, self.rgs[i] as usize),
                (&mut first_b, other.rgs[i] as usize),
            ] {
                if first[label] == usize::MAX {
                    first[label] = i;
                } else {
                    uf.union(first[label], i);
                }
            }
        }
        uf
    }

    /// Product with the partition generated by the transposition `(i j)`
    /// (0-based elements): merges the blocks holding `i` and `j`.
    pub fn merge_elements(&self, i: usize, j: usize) -> Partition {
        let (li, lj) = (self.rgs[i], self.rgs[j]);
        if li == lj {
            return self.clone();
        }
        let (keep, gone) = (li.min(lj), li.max(lj));
        let rgs = self
            .rgs
            .iter()
            .map(|&l| match l.cmp(&gone) {
                std::cmp::Ordering::Less => l,
                std::cmp::Ordering::Equal => keep,
                std::cmp::Ordering::Greater => l - 1,
            })
            .collect();
        Partition { rgs }
    }

    /// Refinement order: every block of `self` lies inside a block of `other`.
    pub fn leq(&self, other: &Partition) -> Result<bool> {
        self.check_same_n(other)?;
        let mut image = [u8::MAX; MAX_GROUND_SET];
        for (&a, &b) in self.rgs.iter().zip(&other.rgs) {
            let slot = &mut image[a as usize];
            if *slot == u8::MAX {
                *slot = b;
            } else if *slot != b {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Strict refinement.
    pub fn lt(&self, other: &Partition) -> Result<bool> {
        Ok(self != other && self.leq(other)?)
    }

    /// Relabels by `sigma`: `i` and `j` share a block of `self` iff
    /// `sigma(i)` and `sigma(j)` share a block of the result.
    pub fn conjugate(&self, sigma: &Permutation) -> Result<Partition> {
        if sigma.len() != self.n() {
            return Err(Error::Domain(format!(
                "permutation of {} elements acting on a partition of {}",
                sigma.len(),
                self.n()
            )));
        }
        let mut labels = vec![0u8; self.n()];
        for (i, &l) in self.rgs.iter().enumerate() {
            labels[sigma.apply0(i)] = l;
        }
        Partition::from_labels(&labels)
    }

    /// Cross-block element pairs `(i, j)`, `i < j`, 0-based, in lexicographic order.
    /// These are the transpositions whose generated partition is not below `self`.
    pub fn cross_block_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.rgs[i] != self.rgs[j] {
                    pairs.push((i, j));
                }
            }
        }
        pairs
    }

    fn check_same_n(&self, other: &Partition) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::Domain(format!(
                "partitions of different ground sets ({} vs {})",
                self.n(),
                other.n()
            )));
        }
        Ok(())
    }
}

fn check_ground_set(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("ground set must be nonempty".into()));
    }
    if n > MAX_GROUND_SET {
        return Err(Error::SizeLimit {
            what: "ground set size",
            value: n,
            limit: MAX_GROUND_SET,
        });
    }
    Ok(())
}

fn canonical_from_roots(mut uf: UnionFind) -> Partition {
    let roots: Vec<usize> = (0..uf.len()).map(|i| uf.find(i)).collect();
    Partition::from_labels(&roots).expect("ground set already validated")
}

fn parse_blocks(text: &str) -> Result<Vec<Vec<usize>>> {
    text.split('|')
        .map(|block| {
            block
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad element {tok:?} in {text:?}")))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect()
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (b, block) in self.blocks().iter().enumerate() {
            if b > 0 {
                f.write_str("|")?;
            }
            for (k, e) in block.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition({self})")
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Partition::parse(s)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        Partition::parse(&text).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str) -> Partition {
        Partition::parse(text).unwrap()
    }

    #[test]
    fn rgs_validation() {
        assert!(Partition::from_rgs(vec![0, 1, 0, 2]).is_ok());
        assert!(Partition::from_rgs(vec![1, 0]).is_err());
        assert!(Partition::from_rgs(vec![0, 2]).is_err());
        assert!(Partition::from_rgs(vec![]).is_err());
    }

    #[test]
    fn text_round_trip_canonicalizes() {
        let a = p("6|5 3 4|2 1");
        assert_eq!(a.to_string(), "1 2|3 4 5|6");
        assert_eq!(a.rgs(), &[0, 0, 1, 1, 1, 2]);
        assert_eq!(a.num_blocks(), 3);
        assert_eq!(p(&a.to_string()), a);
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(Partition::parse("1 2|2 3").is_err());
        assert!(Partition::parse("1 3").is_err());
        assert!(Partition::parse("1 x").is_err());
        assert!(Partition::parse("1 2||3").is_err());
        assert!(Partition::parse_with_n("1 2", 3).is_err());
        assert!(Partition::parse_with_n("2|1", 2).is_ok());
    }

    #[test]
    fn product_examples() {
        let ab = p("1 2|3").product(&p("1|2 3")).unwrap();
        assert_eq!(ab, p("1 2 3"));
        assert!(ab.is_trivial());
        let a = p("1 3|2|4");
        assert_eq!(a.product(&Partition::singletons(4)).unwrap(), a);
        assert_eq!(a.product(&a).unwrap(), a);
        assert!(a.product(&p("1|2")).is_err());
    }

    #[test]
    fn trivial_and_block_counts() {
        assert!(p("1 2 3").is_trivial());
        assert!(!p("1 2|3").is_trivial());
        assert_eq!(Partition::singletons(5).num_blocks(), 5);
        assert_eq!(Partition::one_block(5).num_blocks(), 1);
        assert_eq!(p("1 2|3 4 5|6").num_blocks(), 3);
    }

    #[test]
    fn refinement_examples() {
        let unit = Partition::singletons(3);
        for q in ["1 2 3", "1 2|3", "1|2|3", "1 3|2"] {
            assert!(unit.leq(&p(q)).unwrap());
        }
        assert!(p("1 2|3").leq(&p("1 2 3")).unwrap());
        assert!(!p("1 2|3").leq(&p("1 3|2")).unwrap());
        assert!(!p("1 2 3").lt(&p("1 2 3")).unwrap());
    }

    #[test]
    fn merge_matches_product_with_transposition() {
        let a = p("1 4|2|3 5");
        for i in 0..5 {
            for j in 0..5 {
                let mut labels: Vec<usize> = (0..5).collect();
                labels[j] = labels[i];
                let tau = Partition::from_labels(&labels).unwrap();
                assert_eq!(a.merge_elements(i, j), a.product(&tau).unwrap());
            }
        }
    }

    #[test]
    fn conjugation_examples() {
        let swap12 = Permutation::from_images(vec![2, 1, 3]).unwrap();
        assert_eq!(p("1 3|2").conjugate(&swap12).unwrap(), p("2 3|1"));
        let a = p("1 2|3");
        assert_eq!(a.conjugate(&Permutation::identity(3)).unwrap(), a);
        assert_eq!(
            Partition::singletons(3).conjugate(&swap12).unwrap(),
            Partition::singletons(3)
        );
        assert!(a.conjugate(&Permutation::identity(4)).is_err());
    }

    #[test]
    fn cross_pairs_count_matches_quotient_edges() {
        let a = p("1 2|3|4");
        assert_eq!(a.cross_block_pairs().len(), 5);
        assert!(Partition::one_block(4).cross_block_pairs().is_empty());
    }
}

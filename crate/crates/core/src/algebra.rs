//! The partition algebra: formal integer combinations of partitions with the
//! join as product, the elimination operator `pi`, and connectivity numbers.

use std::collections::BTreeMap;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::partitions::{enumerate_partitions, Partition, Permutation};
use crate::scalar::Scalar;

/// A sparse linear combination of partitions of `{1..n}`. Zero coefficients are
/// never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraVector<T> {
    n: usize,
    terms: BTreeMap<Partition, T>,
}

impl<T: Scalar> AlgebraVector<T> {
    pub fn zero(n: usize) -> Self {
        AlgebraVector {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(p: Partition) -> Self {
        let n = p.n();
        let mut terms = BTreeMap::new();
        terms.insert(p, T::one());
        AlgebraVector { n, terms }
    }

    /// The unit `e`, i.e. the all-singletons partition.
    pub fn unit(n: usize) -> Self {
        Self::basis(Partition::singletons(n))
    }

    /// Collects `(partition, coefficient)` pairs, summing repeats.
    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Partition, T)>,
    {
        let mut v = AlgebraVector::zero(n);
        for (p, c) in terms {
            if p.n() != n {
                return Err(Error::Domain(format!("{p} is not a partition of 1..={n}")));
            }
            v.accumulate(p, c);
        }
        Ok(v)
    }

    fn accumulate(&mut self, p: Partition, c: T) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(p) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                let sum = slot.get().clone() + c;
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, p: &Partition) -> T {
        self.terms.get(p).cloned().unwrap_or_else(T::zero)
    }

    /// Terms in growth-string order.
    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &T)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_n(other)?;
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.accumulate(p.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-T::one())
    }

    pub fn scale(&self, k: &T) -> Self {
        let mut out = AlgebraVector::zero(self.n);
        for (p, c) in &self.terms {
            out.accumulate(p.clone(), c.clone() * k.clone());
        }
        out
    }

    /// Bilinear extension of the join.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_n(other)?;
        let mut out = AlgebraVector::zero(self.n);
        for (p, c) in &self.terms {
            for (q, d) in &other.terms {
                out.accumulate(p.product(q)?, c.clone() * d.clone());
            }
        }
        Ok(out)
    }

    /// `self - self·⟨(i j)⟩`, i.e. multiplication by `e - ⟨τ⟩` for the
    /// transposition on 0-based elements `i`, `j`.
    pub fn mul_unit_minus_transposition(&self, i: usize, j: usize) -> Self {
        let mut out = self.clone();
        for (p, c) in &self.terms {
            out.accumulate(p.merge_elements(i, j), -c.clone());
        }
        out
    }

    /// Term-wise relabeling by `sigma`.
    pub fn conjugate(&self, sigma: &Permutation) -> Result<Self> {
        let mut out = AlgebraVector::zero(self.n);
        for (p, c) in &self.terms {
            out.accumulate(p.conjugate(sigma)?, c.clone());
        }
        Ok(out)
    }

    /// `(coefficient, partition text)` pairs sorted by the partition text.
    pub fn to_pairs(&self) -> Vec<(String, String)> {
        let mut pairs: Vec<(String, String)> = self
            .terms
            .iter()
            .map(|(p, c)| (c.to_string(), p.to_string()))
            .collect();
        pairs.sort_by(|a, b| a.1.cmp(&b.1));
        pairs
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.to_pairs()).expect("pairs of strings serialize")
    }

    fn check_same_n(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Domain(format!(
                "vectors over different ground sets ({} vs {})",
                self.n, other.n
            )));
        }
        Ok(())
    }
}

impl<T: Scalar + FromStr> AlgebraVector<T> {
    pub fn from_pairs(n: usize, pairs: &[(String, String)]) -> Result<Self> {
        let terms = pairs
            .iter()
            .map(|(c, p)| {
                let c = c
                    .parse::<T>()
                    .map_err(|_| Error::Parse(format!("bad coefficient {c:?}")))?;
                Ok((Partition::parse_with_n(p, n)?, c))
            })
            .collect::<Result<Vec<_>>>()?;
        AlgebraVector::from_terms(n, terms)
    }

    pub fn from_json(n: usize, value: &serde_json::Value) -> Result<Self> {
        let pairs: Vec<(String, String)> = serde_json::from_value(value.clone())?;
        Self::from_pairs(n, &pairs)
    }
}

/// `pi(a) = a · ∏ (e - ⟨τ⟩)` over transpositions `τ` joining two different
/// blocks of `a`, multiplied in lexicographic `(i, j)` order.
pub fn pi<T: Scalar>(a: &Partition) -> AlgebraVector<T> {
    a.cross_block_pairs()
        .into_iter()
        .fold(AlgebraVector::basis(a.clone()), |v, (i, j)| {
            v.mul_unit_minus_transposition(i, j)
        })
}

/// `pi` evaluated from its defining product `∏ (a - a·b)` over every `b` not
/// finer than `a`, with `pi(one block) = one block`. Exponential in `Bell(n)`;
/// kept as a cross-check for [`pi`].
pub fn pi_full_product<T: Scalar>(a: &Partition, limits: &Limits) -> Result<AlgebraVector<T>> {
    let n = a.n();
    let base = AlgebraVector::basis(a.clone());
    if a.is_trivial() {
        return Ok(base);
    }
    let mut v = base.clone();
    for b in enumerate_partitions(n, limits)? {
        if !b.leq(a)? {
            let factor = base.sub(&AlgebraVector::basis(a.product(&b)?))?;
            v = v.mul(&factor)?;
        }
    }
    Ok(v)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConnectivityNumber<T> {
    pub partition: Partition,
    pub alpha: T,
}

/// Coefficient of the one-block partition in `pi(a)`.
pub fn connectivity_number<T: Scalar>(a: &Partition) -> ConnectivityNumber<T> {
    let alpha = pi::<T>(a).coefficient(&Partition::one_block(a.n()));
    ConnectivityNumber {
        partition: a.clone(),
        alpha,
    }
}

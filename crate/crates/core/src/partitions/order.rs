use std::collections::{BTreeMap, HashMap, HashSet};
use std::ops::Range;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::{enumerate_partitions, Partition};
use crate::error::{check_limit, Error, Result};
use crate::limits::Limits;

/// One orbit of `Part_n` under relabeling by the symmetric group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugationClass {
    /// Block sizes, sorted descending.
    pub signature: Vec<usize>,
    pub members: Vec<Partition>,
}

impl ConjugationClass {
    pub fn num_blocks(&self) -> usize {
        self.signature.len()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn representative(&self) -> &Partition {
        &self.members[0]
    }
}

/// Groups `Part_n` into conjugation classes.
///
/// Classes come finest first (more blocks earlier), then by signature, which
/// is a linear extension of the induced order on classes. Members keep
/// growth-string order.
pub fn conjugation_classes(n: usize, limits: &Limits) -> Result<Vec<ConjugationClass>> {
    let mut grouped: BTreeMap<(std::cmp::Reverse<usize>, Vec<usize>), Vec<Partition>> =
        BTreeMap::new();
    for p in enumerate_partitions(n, limits)? {
        let sig = p.signature();
        grouped
            .entry((std::cmp::Reverse(sig.len()), sig))
            .or_default()
            .push(p);
    }
    Ok(grouped
        .into_iter()
        .map(|((_, signature), members)| ConjugationClass { signature, members })
        .collect())
}

/// A linear extension of the refinement order on `Part_n` in which each
/// conjugation class occupies one contiguous run.
#[derive(Debug, Clone)]
pub struct CoherentOrder {
    n: usize,
    sequence: Vec<Partition>,
    class_ranges: Vec<Range<usize>>,
    positions: OnceLock<HashMap<Partition, usize>>,
}

impl PartialEq for CoherentOrder {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.sequence == other.sequence
    }
}

impl Eq for CoherentOrder {}

/// The default coherent order: classes as in [`conjugation_classes`], members in
/// growth-string order.
pub fn coherent_order(n: usize, limits: &Limits) -> Result<CoherentOrder> {
    let classes = conjugation_classes(n, limits)?;
    let mut sequence = Vec::new();
    let mut class_ranges = Vec::with_capacity(classes.len());
    for class in classes {
        let start = sequence.len();
        sequence.extend(class.members);
        class_ranges.push(start..sequence.len());
    }
    Ok(CoherentOrder {
        n,
        sequence,
        class_ranges,
        positions: OnceLock::new(),
    })
}

impl CoherentOrder {
    /// Validates a caller-supplied sequence: it must list every partition of
    /// `{1..n}` exactly once, respect refinement, and keep classes contiguous.
    pub fn from_sequence(n: usize, sequence: Vec<Partition>, limits: &Limits) -> Result<Self> {
        check_limit("n", n, limits.max_n)?;
        if let Some(bad) = sequence.iter().find(|p| p.n() != n) {
            return Err(Error::Domain(format!("{bad} is not a partition of 1..={n}")));
        }
        let mut positions = HashMap::with_capacity(sequence.len());
        for (i, p) in sequence.iter().enumerate() {
            if positions.insert(p.clone(), i).is_some() {
                return Err(Error::Domain(format!("{p} listed twice")));
            }
        }
        let expected = enumerate_partitions(n, limits)?.len();
        if sequence.len() != expected {
            return Err(Error::Domain(format!(
                "order lists {} partitions, Part_{n} has {expected}",
                sequence.len()
            )));
        }
        // Strict refinement is the transitive closure of merging two blocks, so
        // checking covers is enough.
        for (i, p) in sequence.iter().enumerate() {
            let blocks = p.blocks();
            for a in 0..blocks.len() {
                for b in a + 1..blocks.len() {
                    let cover = p.merge_elements(blocks[a][0] - 1, blocks[b][0] - 1);
                    if positions[&cover] < i {
                        return Err(Error::Domain(format!(
                            "not coherent: {cover} is coarser than {p} but listed before it"
                        )));
                    }
                }
            }
        }
        let class_ranges = class_runs(&sequence)?;
        let order = CoherentOrder {
            n,
            sequence,
            class_ranges,
            positions: OnceLock::new(),
        };
        let _ = order.positions.set(positions);
        Ok(order)
    }

    /// Parses one partition per line; blank lines and `#` comments are skipped.
    pub fn parse_text(n: usize, text: &str, limits: &Limits) -> Result<Self> {
        let sequence = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| Partition::parse_with_n(l, n))
            .collect::<Result<Vec<_>>>()?;
        CoherentOrder::from_sequence(n, sequence, limits)
    }

    pub fn to_text(&self) -> String {
        self.sequence.iter().map(|p| format!("{p}\n")).collect()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    pub fn sequence(&self) -> &[Partition] {
        &self.sequence
    }

    pub fn get(&self, i: usize) -> &Partition {
        &self.sequence[i]
    }

    /// Index ranges of the conjugation classes, in sequence order.
    pub fn class_ranges(&self) -> &[Range<usize>] {
        &self.class_ranges
    }

    pub fn position(&self, p: &Partition) -> Option<usize> {
        self.positions
            .get_or_init(|| {
                self.sequence
                    .iter()
                    .enumerate()
                    .map(|(i, p)| (p.clone(), i))
                    .collect()
            })
            .get(p)
            .copied()
    }
}

fn class_runs(sequence: &[Partition]) -> Result<Vec<Range<usize>>> {
    let mut ranges: Vec<Range<usize>> = Vec::new();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut current: Option<Vec<usize>> = None;
    for (i, p) in sequence.iter().enumerate() {
        let sig = p.signature();
        if current.as_ref() == Some(&sig) {
            ranges.last_mut().expect("run open").end = i + 1;
            continue;
        }
        if !seen.insert(sig.clone()) {
            return Err(Error::Domain(format!(
                "conjugation class {sig:?} is split (resumes at {p})"
            )));
        }
        ranges.push(i..i + 1);
        current = Some(sig);
    }
    Ok(ranges)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(text: &str) -> Partition {
        Partition::parse(text).unwrap()
    }

    #[test]
    fn class_sizes() {
        let limits = Limits::default();
        let sizes = |n| -> Vec<usize> {
            conjugation_classes(n, &limits)
                .unwrap()
                .iter()
                .map(ConjugationClass::len)
                .collect()
        };
        assert_eq!(sizes(2), vec![1, 1]);
        assert_eq!(sizes(3), vec![1, 3, 1]);
        assert_eq!(sizes(4), vec![1, 6, 3, 4, 1]);
    }

    #[test]
    fn n4_class_order_matches_listing() {
        let classes = conjugation_classes(4, &Limits::default()).unwrap();
        let sigs: Vec<Vec<usize>> = classes.iter().map(|c| c.signature.clone()).collect();
        assert_eq!(
            sigs,
            vec![vec![1, 1, 1, 1], vec![2, 1, 1], vec![2, 2], vec![3, 1], vec![4]]
        );
    }

    #[test]
    fn default_order_small_cases() {
        let limits = Limits::default();
        let one = coherent_order(1, &limits).unwrap();
        assert_eq!(one.sequence(), &[Partition::one_block(1)]);
        let three = coherent_order(3, &limits).unwrap();
        assert_eq!(three.get(0), &Partition::singletons(3));
        assert_eq!(three.get(4), &Partition::one_block(3));
        assert_eq!(three.class_ranges(), &[0..1, 1..4, 4..5]);
    }

    #[test]
    fn accepts_reference_n3_order_and_rejects_incoherent() {
        let limits = Limits::default();
        let ok = CoherentOrder::parse_text(3, "1|2|3\n1|2 3\n1 3|2\n1 2|3\n1 2 3\n", &limits);
        assert!(ok.is_ok());
        let bad = CoherentOrder::parse_text(3, "1|2 3\n1|2|3\n1 3|2\n1 2|3\n1 2 3\n", &limits);
        assert!(bad.is_err());
        let missing = CoherentOrder::parse_text(3, "1|2|3\n1|2 3\n1 2|3\n1 2 3\n", &limits);
        assert!(missing.is_err());
        let dup = CoherentOrder::parse_text(3, "1|2|3\n1|2 3\n1 2|3\n1 2|3\n1 2 3\n", &limits);
        assert!(dup.is_err());
    }

    #[test]
    fn rejects_split_class() {
        let limits = Limits::default();
        // 2+1+1 members interleaved with a 2+2 member: coherent but not contiguous.
        let mut seq = coherent_order(4, &limits).unwrap().sequence().to_vec();
        let pos = seq.iter().position(|p| *p == part("1 2|3 4")).unwrap();
        let moved = seq.remove(pos);
        seq.insert(3, moved);
        assert!(CoherentOrder::from_sequence(4, seq, &limits).is_err());
    }

    #[test]
    fn position_lookup() {
        let order = coherent_order(4, &Limits::default()).unwrap();
        for (i, p) in order.sequence().iter().enumerate() {
            assert_eq!(order.position(p), Some(i));
        }
        assert_eq!(order.position(&Partition::singletons(3)), None);
    }
}

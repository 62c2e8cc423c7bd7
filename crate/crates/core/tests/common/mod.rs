#![allow(dead_code)]

use connmat::{Partition, Permutation};
use itertools::Itertools;

/// Bell numbers from the Bell triangle: each row starts with the last entry of
/// the previous row, and each next entry adds the entry above-left.
pub fn bell_triangle(n: usize) -> u64 {
    let mut row = vec![1u64];
    for _ in 1..n {
        let mut next = vec![*row.last().unwrap()];
        for &x in &row {
            let v = next.last().unwrap() + x;
            next.push(v);
        }
        row = next;
    }
    *row.last().unwrap()
}

pub fn all_permutations(n: usize) -> Vec<Permutation> {
    (1..=n)
        .permutations(n)
        .map(|images| Permutation::from_images(images).unwrap())
        .collect()
}

/// Brute-force strict refinement check straight from the block definition.
pub fn strictly_finer(a: &Partition, b: &Partition) -> bool {
    let contained = a
        .blocks()
        .iter()
        .all(|blk| b.blocks().iter().any(|big| blk.iter().all(|e| big.contains(e))));
    contained && a != b
}

pub fn factorial(k: usize) -> u64 {
    (1..=k as u64).product()
}

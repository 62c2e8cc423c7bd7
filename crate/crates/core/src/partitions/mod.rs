//! Set partitions of `{1..n}`: the join monoid, refinement, relabeling by
//! permutations, conjugation classes and coherent orderings.

mod order;
mod partition;
mod permutation;

pub use order::{coherent_order, conjugation_classes, CoherentOrder, ConjugationClass};
pub use partition::{Partition, MAX_GROUND_SET};
pub use permutation::Permutation;

use crate::error::{check_limit, Error, Result};
use crate::limits::Limits;

/// All partitions of `{1..n}` in lexicographic growth-string order.
pub fn enumerate_partitions(n: usize, limits: &Limits) -> Result<Vec<Partition>> {
    if n == 0 {
        return Err(Error::Domain("n must be positive".into()));
    }
    check_limit("n", n, limits.max_n)?;
    let mut out = Vec::new();
    let mut rgs = vec![0u8; n];
    // prefix_max[i] = max(rgs[0..=i])
    let mut prefix_max = vec![0u8; n];
    loop {
        out.push(Partition::from_rgs(rgs.clone()).expect("generator emits canonical strings"));
        // Rightmost position that can still grow.
        let Some(i) = (1..n).rev().find(|&i| rgs[i] <= prefix_max[i - 1]) else {
            break;
        };
        rgs[i] += 1;
        prefix_max[i] = prefix_max[i - 1].max(rgs[i]);
        for j in i + 1..n {
            rgs[j] = 0;
            prefix_max[j] = prefix_max[i];
        }
    }
    Ok(out)
}

use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `{1..n}` stored as its 1-based image array.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut hit = vec![false; n];
        for &v in &images {
            if v == 0 || v > n || std::mem::replace(&mut hit[v - 1], true) {
                return Err(Error::Domain(format!("{images:?} is not a bijection on 1..={n}")));
            }
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// The transposition `(i j)` on `{1..n}`, 1-based.
    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self> {
        if i == 0 || j == 0 || i > n || j > n {
            return Err(Error::Domain(format!("({i} {j}) outside 1..={n}")));
        }
        let mut images: Vec<usize> = (1..=n).collect();
        images.swap(i - 1, j - 1);
        Ok(Permutation { images })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Image of a 1-based element.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub(crate) fn apply0(&self, i: usize) -> usize {
        self.images[i] - 1
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v - 1] = i + 1;
        }
        Permutation { images }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&v| self.images[v - 1]).collect(),
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.images)
    }
}

//! Dense square matrices over a [`Scalar`] ring and the fraction-free Bareiss
//! determinant.

use std::fmt;

use crate::scalar::Scalar;

#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    dim: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(dim: usize) -> Self {
        Matrix {
            dim,
            data: vec![T::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, T::one());
        }
        m
    }

    /// Panics unless every row has length `rows.len()`.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "matrix must be square");
        Matrix {
            dim,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.dim + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        (0..self.dim).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Panics on dimension mismatch.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).clone() + a.clone() * b.clone();
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// All entries strictly above the diagonal are zero.
    pub fn is_lower_triangular(&self) -> bool {
        (0..self.dim).all(|i| (i + 1..self.dim).all(|j| self.get(i, j).is_zero()))
    }

    pub fn diagonal(&self) -> Vec<T> {
        (0..self.dim).map(|i| self.get(i, i).clone()).collect()
    }

    /// Simultaneous row and column permutation: entry `(i, j)` of the result is
    /// entry `(perm[i], perm[j])` of `self`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.dim);
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.set(i, j, self.get(perm[i], perm[j]).clone());
            }
        }
        out
    }

    /// Exact determinant by Bareiss elimination. Every division is exact in an
    /// integral domain, so integer inputs never leave the integers. Row swaps
    /// flip the sign.
    pub fn bareiss_determinant(&self) -> T {
        let n = self.dim;
        if n == 0 {
            return T::one();
        }
        let mut m = self.data.clone();
        let idx = |i: usize, j: usize| i * n + j;
        let mut negate = false;
        let mut prev = T::one();
        for k in 0..n - 1 {
            if m[idx(k, k)].is_zero() {
                let Some(r) = (k + 1..n).find(|&r| !m[idx(r, k)].is_zero()) else {
                    return T::zero();
                };
                for j in 0..n {
                    m.swap(idx(k, j), idx(r, j));
                }
                negate = !negate;
            }
            let pivot = m[idx(k, k)].clone();
            for i in k + 1..n {
                let lead = m[idx(i, k)].clone();
                for j in k + 1..n {
                    let v = (m[idx(i, j)].clone() * pivot.clone()
                        - lead.clone() * m[idx(k, j)].clone())
                        / prev.clone();
                    m[idx(i, j)] = v;
                }
                m[idx(i, k)] = T::zero();
            }
            prev = pivot;
        }
        let det = m[idx(n - 1, n - 1)].clone();
        if negate {
            -det
        } else {
            det
        }
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.dim, self.dim)?;
        for i in 0..self.dim {
            let row: Vec<String> = self.data[i * self.dim..(i + 1) * self.dim]
                .iter()
                .map(|v| format!("{v:?}"))
                .collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

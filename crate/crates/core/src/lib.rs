//! Exact computations on the connectivity matrix of the set-partition lattice.
//!
//! The matrix indexed by `Part_n` with `a[i][j] = 1` iff the join of the `i`-th
//! and `j`-th partitions is the one-block partition has determinant
//! `± ∏ (m_A - 1)!`, `m_A` being the number of blocks. This crate builds the
//! matrix, triangularizes it with the elimination operator `pi` of the
//! partition algebra, computes the determinant both from connectivity numbers
//! and by Bareiss elimination, and recomputes connectivity numbers as leading
//! coefficients of all-terminal reliability polynomials.
//!
//! Coefficient-carrying types are generic over [`Scalar`]; the aliases below fix
//! the arbitrary-precision integer ring used for every exact result.

pub mod algebra;
pub mod conmatrix;
mod dsu;
pub mod error;
pub mod limits;
pub mod linalg;
pub mod partitions;
pub mod reliability;
pub mod scalar;

pub use error::{Error, Result};
pub use limits::Limits;
pub use partitions::{
    coherent_order, conjugation_classes, enumerate_partitions, CoherentOrder, ConjugationClass,
    Partition, Permutation,
};
pub use scalar::{Integer, Rational, Scalar};

pub type AlgebraVec = algebra::AlgebraVector<Integer>;
pub type ConnectivityNum = algebra::ConnectivityNumber<Integer>;
pub type EliminationMat = conmatrix::EliminationMatrix<Integer>;
pub type IntMatrix = linalg::Matrix<Integer>;
pub type IntPolynomial = reliability::Polynomial<Integer>;
pub type RatPolynomial = reliability::Polynomial<Rational>;
pub type RatMatrix = linalg::Matrix<Rational>;

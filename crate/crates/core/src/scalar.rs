//! Coefficient rings.
//!
//! Everything that carries coefficients (algebra vectors, polynomials, the
//! elimination matrix, determinants) is generic over [`Scalar`]. The exact
//! results this crate is about need an exact ring; [`Integer`] is the default
//! and [`Rational`] is available when division must stay exact. Machine
//! integers and floats also satisfy the bound but may overflow or round.

use std::fmt::{Debug, Display};

use num_traits::{FromPrimitive, Num, Signed};

pub use num_bigint::BigInt as Integer;
pub use num_rational::BigRational as Rational;

/// A commutative ring with unit, signs and conversion from machine integers.
pub trait Scalar:
    Clone + Debug + Display + PartialEq + Num + Signed + FromPrimitive + Send + Sync + 'static
{
    fn from_usize_exact(v: usize) -> Self {
        Self::from_usize(v).expect("scalar type cannot represent usize value")
    }

    /// `(-1)^k`.
    fn sign_power(k: usize) -> Self {
        if k.is_multiple_of(2) {
            Self::one()
        } else {
            -Self::one()
        }
    }
}

impl<T> Scalar for T where
    T: Clone + Debug + Display + PartialEq + Num + Signed + FromPrimitive + Send + Sync + 'static
{
}

/// `k!` in the requested ring.
pub fn factorial<T: Scalar>(k: usize) -> T {
    (1..=k).fold(T::one(), |acc, i| acc * T::from_usize_exact(i))
}

/// Integer power by repeated squaring.
pub fn pow<T: Scalar>(base: &T, mut exp: usize) -> T {
    let mut result = T::one();
    let mut b = base.clone();
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * b.clone();
        }
        exp >>= 1;
        if exp > 0 {
            b = b.clone() * b;
        }
    }
    result
}

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

/// Dense univariate polynomial in the edge probability `p`; index = degree.
/// Trailing zeros are trimmed, so the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Polynomial::new(vec![c])
    }

    /// The monomial `p`.
    pub fn p() -> Self {
        Polynomial::new(vec![T::zero(), T::one()])
    }

    /// `1 - p`.
    pub fn one_minus_p() -> Self {
        Polynomial::new(vec![T::one(), -T::one()])
    }

    pub fn coefficients(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, degree: usize) -> T {
        self.coeffs.get(degree).cloned().unwrap_or_else(T::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Polynomial::new((0..len).map(|d| self.coeff(d) + other.coeff(d)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-T::one()))
    }

    pub fn scale(&self, k: &T) -> Self {
        Polynomial::new(self.coeffs.iter().map(|c| c.clone() * k.clone()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(out)
    }

    /// Multiplication by `p`.
    pub fn shift(&self) -> Self {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(T::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    pub fn pow(&self, mut exp: usize) -> Self {
        let mut result = Polynomial::one();
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                result = result.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn export(&self) -> PolynomialExport {
        PolynomialExport {
            coefficients: self.coeffs.iter().map(ToString::to_string).collect(),
            rendered: self.to_string(),
        }
    }
}

/// JSON shape: coefficient strings from degree 0 up, plus the rendered form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialExport {
    pub coefficients: Vec<String>,
    pub rendered: String,
}

impl PolynomialExport {
    pub fn parse<T: Scalar + std::str::FromStr>(&self) -> Option<Polynomial<T>> {
        self.coefficients
            .iter()
            .map(|c| c.parse::<T>().ok())
            .collect::<Option<Vec<_>>>()
            .map(Polynomial::new)
    }
}

/// Renders as `3p^2 - 2p^3`, lowest degree first.
impl<T: Scalar> fmt::Display for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            match (first, negative) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            if d == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match d {
                0 => {}
                1 => f.write_str("p")?,
                _ => write!(f, "p^{d}")?,
            }
        }
        Ok(())
    }
}

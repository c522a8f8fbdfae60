//! Dense univariate polynomials over a commutative coefficient ring.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::Serialize;

/// Coefficients in ascending degree; trailing zeros are trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Clone + Zero> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn scale(&self, c: &T) -> Self
    where
        T: Mul<Output = T>,
    {
        Poly::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn eval(&self, x: &T) -> T
    where
        T: Mul<Output = T>,
    {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, a| acc * x.clone() + a.clone())
    }
}

impl<T: Clone + Zero> Zero for Poly<T> {
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<T: Clone + Zero + One + Mul<Output = T>> One for Poly<T> {
    fn one() -> Self {
        Poly::new(vec![T::one()])
    }
}

impl<T: Clone + Zero> Add for Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<T: Clone + Zero + Neg<Output = T>> Neg for Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Self {
        Poly::new(self.coeffs.into_iter().map(|a| -a).collect())
    }
}

impl<T: Clone + Zero + Sub<Output = T>> Sub for Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<T: Clone + Zero + Mul<Output = T>> Mul for Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: Self) -> Self {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<T: Clone + Zero + PartialOrd + Neg<Output = T> + fmt::Display + One + PartialEq> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = *c < T::zero();
            let mag = if negative { -c.clone() } else { c.clone() };
            match (first, negative) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let unit = mag == T::one();
            match k {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "x")?,
                1 => write!(f, "{mag}x")?,
                _ if unit => write!(f, "x^{k}")?,
                _ => write!(f, "{mag}x^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let a = Poly::new(vec![1i64, 1]);
        let b = Poly::new(vec![1i64, 0, 1]);
        assert_eq!((a.clone() * b.clone()).coeffs(), &[1, 1, 1, 1]);
        assert_eq!((a.clone() - a.clone()), Poly::zero());
        assert_eq!((a.clone() + b).coeffs(), &[2, 1, 1]);
        assert_eq!(a.eval(&3), 4);
        assert_eq!(Poly::new(vec![0i64, 0]).degree(), None);
    }

    #[test]
    fn display() {
        assert_eq!(Poly::new(vec![1i64, 3, 2]).to_string(), "1 + 3x + 2x^2");
        assert_eq!(Poly::new(vec![0i64, -1, 0, 1]).to_string(), "-x + x^3");
    }
}

use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use serde::Serialize;

use crate::scalar::{Rational, Scalar};

/// An element of the superalgebra as a coefficient vector over
/// `(e_0, ..., e_p, eps_1, ..., eps_q)`.
#[derive(Clone, PartialEq, Debug)]
pub struct AlgebraElement<S = f64> {
    coeffs: Vec<S>,
}

impl<S: Scalar> AlgebraElement<S> {
    pub fn new(coeffs: Vec<S>) -> Self {
        Self { coeffs }
    }

    pub fn zero(dim: usize) -> Self {
        Self { coeffs: vec![S::zero(); dim] }
    }

    /// The basis vector `e_index` (odd basis vectors use `p + l`).
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut e = Self::zero(dim);
        e.coeffs[index] = S::one();
        e
    }

    /// `c * e_0`.
    pub fn scalar(dim: usize, c: S) -> Self {
        let mut e = Self::zero(dim);
        e.coeffs[0] = c;
        e
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [S] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    /// Coefficients vanish on every odd index (`> p`).
    pub fn is_even(&self, p: usize) -> bool {
        self.coeffs[p + 1..].iter().all(Scalar::is_zero)
    }

    /// Coefficients vanish on every even index (`<= p`).
    pub fn is_odd(&self, p: usize) -> bool {
        self.coeffs[..=p].iter().all(Scalar::is_zero)
    }

    pub fn even_part(&self, p: usize) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if i <= p { c.clone() } else { S::zero() })
            .collect();
        Self { coeffs }
    }

    pub fn odd_part(&self, p: usize) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if i > p { c.clone() } else { S::zero() })
            .collect();
        Self { coeffs }
    }

    pub fn scale(&self, c: &S) -> Self {
        Self { coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect() }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: &S, other: &Self) {
        debug_assert_eq!(self.dim(), other.dim());
        for (x, y) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !y.is_zero() {
                *x = x.clone() + c.clone() * y.clone();
            }
        }
    }

    /// Euclidean norm with the basis declared orthonormal.
    pub fn norm(&self) -> f64 {
        self.norm_squared().to_f64().sqrt()
    }

    pub fn norm_squared(&self) -> S {
        self.coeffs.iter().fold(S::zero(), |acc, c| acc + c.clone() * c.clone())
    }

    pub fn to_f64(&self) -> AlgebraElement<f64> {
        AlgebraElement::new(self.coeffs.iter().map(Scalar::to_f64).collect())
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> AlgebraElement<T> {
        AlgebraElement::new(self.coeffs.iter().map(f).collect())
    }
}

impl AlgebraElement<Rational> {
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_i64(c)).collect())
    }
}

impl AlgebraElement<f64> {
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl<S: Scalar> Add for AlgebraElement<S> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += &rhs;
        self
    }
}

impl<S: Scalar> Add<&AlgebraElement<S>> for &AlgebraElement<S> {
    type Output = AlgebraElement<S>;
    fn add(self, rhs: &AlgebraElement<S>) -> AlgebraElement<S> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<S: Scalar> AddAssign<&AlgebraElement<S>> for AlgebraElement<S> {
    fn add_assign(&mut self, rhs: &AlgebraElement<S>) {
        debug_assert_eq!(self.dim(), rhs.dim());
        for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *x = x.clone() + y.clone();
        }
    }
}

impl<S: Scalar> Sub for AlgebraElement<S> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self -= &rhs;
        self
    }
}

impl<S: Scalar> Sub<&AlgebraElement<S>> for &AlgebraElement<S> {
    type Output = AlgebraElement<S>;
    fn sub(self, rhs: &AlgebraElement<S>) -> AlgebraElement<S> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<S: Scalar> SubAssign<&AlgebraElement<S>> for AlgebraElement<S> {
    fn sub_assign(&mut self, rhs: &AlgebraElement<S>) {
        debug_assert_eq!(self.dim(), rhs.dim());
        for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *x = x.clone() - y.clone();
        }
    }
}

impl<S: Scalar> Neg for AlgebraElement<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Self { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl<S: Scalar> fmt::Display for AlgebraElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl<S: Scalar> Serialize for AlgebraElement<S> {
    fn serialize<Ser: serde::Serializer>(&self, serializer: Ser) -> Result<Ser::Ok, Ser::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(&c.to_f64())?;
        }
        seq.end()
    }
}

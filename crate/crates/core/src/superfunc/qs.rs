use std::collections::BTreeMap;

use rand::Rng;

use crate::algebra::{AlgebraElement, StructureTable};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::superfunc::Superspace;

/// Polynomial in the hypervariables `y_1..y_n` and the slice variables
/// `Z_k(theta_l)`, with algebra coefficients on the left:
/// `sum A_{I,J} (y - b)^I prod_k Z_k(theta - beta)^{J_k}`.
///
/// Multi-index layout: `[I (n entries), J_1 (m), ..., J_r (m)]`, so `Z_k(theta_l)`
/// sits at position `n + k m + l`.
#[derive(Clone, Debug, PartialEq)]
pub struct QsPoly<S = f64> {
    n: usize,
    m: usize,
    r: usize,
    dim: usize,
    terms: BTreeMap<Vec<u32>, AlgebraElement<S>>,
}

impl<S: Scalar> QsPoly<S> {
    pub fn zero(space: &Superspace<S>) -> Self {
        Self::with_shape(space.n(), space.m(), space.r(), space.table().dim())
    }

    pub fn with_shape(n: usize, m: usize, r: usize, dim: usize) -> Self {
        Self { n, m, r, dim, terms: BTreeMap::new() }
    }

    pub fn constant(space: &Superspace<S>, c: AlgebraElement<S>) -> Self {
        let mut out = Self::zero(space);
        out.add_term(vec![0; space.qs_vars()], c);
        out
    }

    /// The hypervariable at multi-index position `v`, with coefficient `e_0`.
    pub fn variable(space: &Superspace<S>, v: usize) -> Self {
        let mut key = vec![0; space.qs_vars()];
        key[v] = 1;
        let mut out = Self::zero(space);
        out.add_term(key, space.table().unit());
        out
    }

    pub fn y(space: &Superspace<S>, i: usize) -> Self {
        Self::variable(space, i)
    }

    /// `Z_k(theta_l)`.
    pub fn z(space: &Superspace<S>, k: usize, l: usize) -> Self {
        Self::variable(space, space.n() + k * space.m() + l)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nvars(&self) -> usize {
        self.n + self.r * self.m
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, AlgebraElement<S>> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn check_space(&self, space: &Superspace<S>) -> Result<()> {
        let expected = (space.n(), space.m(), space.r(), space.table().dim());
        let found = (self.n, self.m, self.r, self.dim);
        if expected != found {
            return Err(Error::InvalidArgument(format!(
                "polynomial shape (n, m, r, dim) = {found:?} does not match superspace {expected:?}"
            )));
        }
        Ok(())
    }

    pub fn add_term(&mut self, key: Vec<u32>, c: AlgebraElement<S>) {
        debug_assert_eq!(key.len(), self.nvars());
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(|| AlgebraElement::zero(c.dim()));
        *entry += &c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    /// Product with `self`'s coefficients on the left.
    pub fn mul(&self, t: &StructureTable<S>, other: &Self) -> Self {
        let mut out = Self::with_shape(self.n, self.m, self.r, self.dim);
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                out.add_term(k1.iter().zip(k2).map(|(a, b)| a + b).collect(), t.mul(c1, c2));
            }
        }
        out
    }

    pub fn left_mul(&self, t: &StructureTable<S>, a: &AlgebraElement<S>) -> Self {
        let mut out = Self::with_shape(self.n, self.m, self.r, self.dim);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), t.mul(a, c));
        }
        out
    }

    /// Random polynomial with integer coefficients in `[-3, 3]` on up to
    /// `terms` monomials of total degree `<= max_degree`.
    pub fn random<R: Rng>(space: &Superspace<S>, max_degree: u32, terms: usize, rng: &mut R) -> Self {
        let nv = space.qs_vars();
        let mut out = Self::zero(space);
        for _ in 0..terms {
            let deg = rng.gen_range(0..=max_degree);
            let mut key = vec![0u32; nv];
            if nv > 0 {
                for _ in 0..deg {
                    key[rng.gen_range(0..nv)] += 1;
                }
            }
            let c = (0..space.table().dim()).map(|_| S::from_i64(rng.gen_range(-3..=3))).collect();
            out.add_term(key, AlgebraElement::new(c));
        }
        out
    }

    pub fn map_scalar<T: Scalar>(&self, f: impl Fn(&S) -> T + Copy) -> QsPoly<T> {
        let mut out = QsPoly::with_shape(self.n, self.m, self.r, self.dim);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), c.map(f));
        }
        out
    }

    pub fn to_f64(&self) -> QsPoly<f64> {
        self.map_scalar(S::to_f64)
    }
}

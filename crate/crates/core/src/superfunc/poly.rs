use std::collections::BTreeMap;

use crate::algebra::{AlgebraElement, StructureTable};
use crate::scalar::Scalar;

/// Algebra-valued polynomial in `nvars` real coordinates.
///
/// Coefficients multiply from the left: `sum_alpha c_alpha x^alpha`.
#[derive(Clone, Debug, PartialEq)]
pub struct RealPoly<S = f64> {
    nvars: usize,
    dim: usize,
    terms: BTreeMap<Vec<u32>, AlgebraElement<S>>,
}

impl<S: Scalar> RealPoly<S> {
    pub fn zero(nvars: usize, dim: usize) -> Self {
        Self { nvars, dim, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: AlgebraElement<S>) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn monomial(exps: Vec<u32>, c: AlgebraElement<S>) -> Self {
        let mut out = Self::zero(exps.len(), c.dim());
        out.add_term(exps, c);
        out
    }

    /// The coordinate function `x_a e_0`.
    pub fn coordinate(nvars: usize, dim: usize, a: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[a] = 1;
        Self::monomial(exps, AlgebraElement::basis(dim, 0))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, AlgebraElement<S>> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Largest absolute coefficient.
    pub fn max_coeff(&self) -> f64 {
        self.terms.values().flat_map(|c| c.coeffs().iter().map(Scalar::magnitude)).fold(0.0, f64::max)
    }

    /// Exactly zero in exact mode; all coefficients below `tol` otherwise.
    pub fn is_negligible(&self, tol: f64) -> bool {
        if S::EXACT {
            self.is_zero()
        } else {
            self.max_coeff() <= tol
        }
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: AlgebraElement<S>) {
        debug_assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| -c.clone())
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map_coeffs(|c| c.scale(s))
    }

    fn map_coeffs(&self, f: impl Fn(&AlgebraElement<S>) -> AlgebraElement<S>) -> Self {
        let mut out = Self::zero(self.nvars, self.dim);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    /// `a * P`.
    pub fn left_mul(&self, t: &StructureTable<S>, a: &AlgebraElement<S>) -> Self {
        self.map_coeffs(|c| t.mul(a, c))
    }

    /// `P * a`.
    pub fn right_mul(&self, t: &StructureTable<S>, a: &AlgebraElement<S>) -> Self {
        self.map_coeffs(|c| t.mul(c, a))
    }

    /// `P * Q`, coefficients multiplied with `P`'s on the left.
    pub fn mul(&self, t: &StructureTable<S>, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars, self.dim);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, t.mul(c1, c2));
            }
        }
        out
    }

    pub fn pow(&self, t: &StructureTable<S>, k: u32) -> Self {
        (0..k).fold(Self::constant(self.nvars, t.unit()), |acc, _| acc.mul(t, self))
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(self.nvars, self.dim);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut d = e.clone();
            d[var] -= 1;
            out.add_term(d, c.scale(&S::from_i64(e[var] as i64)));
        }
        out
    }

    pub fn eval(&self, x: &[S]) -> AlgebraElement<S> {
        let mut out = AlgebraElement::zero(self.dim);
        for (e, c) in &self.terms {
            let mono = e.iter().zip(x).fold(S::one(), |acc, (&k, xi)| acc * powi(xi, k));
            out.add_scaled(&mono, c);
        }
        out
    }

    /// `P(x + shift)`.
    pub fn translate(&self, shift: &[S]) -> Self {
        let mut out = Self::zero(self.nvars, self.dim);
        for (e, c) in &self.terms {
            let mut partial: Vec<(Vec<u32>, S)> = vec![(Vec::with_capacity(self.nvars), S::one())];
            for (v, &k) in e.iter().enumerate() {
                let mut next = Vec::with_capacity(partial.len() * (k as usize + 1));
                for (prefix, w) in &partial {
                    for j in 0..=k {
                        let coef = S::from_i64(binomial(k, j)) * powi(&shift[v], k - j);
                        if coef.is_zero() {
                            continue;
                        }
                        let mut ex = prefix.clone();
                        ex.push(j);
                        next.push((ex, w.clone() * coef));
                    }
                }
                partial = next;
            }
            for (ex, w) in partial {
                out.add_term(ex, c.scale(&w));
            }
        }
        out
    }

    /// Sum of the pure second partials over all coordinates.
    pub fn laplacian(&self) -> Self {
        (0..self.nvars).fold(Self::zero(self.nvars, self.dim), |acc, v| acc.add(&self.derivative(v).derivative(v)))
    }

    pub fn map_scalar<T: Scalar>(&self, f: impl Fn(&S) -> T + Copy) -> RealPoly<T> {
        let mut out = RealPoly::zero(self.nvars, self.dim);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.map(f));
        }
        out
    }

    pub fn to_f64(&self) -> RealPoly<f64> {
        self.map_scalar(S::to_f64)
    }
}

pub(crate) fn powi<S: Scalar>(x: &S, k: u32) -> S {
    (0..k).fold(S::one(), |acc, _| acc * x.clone())
}

pub(crate) fn binomial(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

use crate::algebra::element::AlgebraElement;
use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::{Rational, Scalar};

/// Structure constants of a finite-dimensional real superalgebra.
///
/// The basis is `e_0, ..., e_p` (even, `e_0` the unit) followed by
/// `eps_1, ..., eps_q` stored at indices `p + 1 ..= p + q`, with
/// `e_i e_j = sum_k gamma[i][j][k] e_k`. Construction does not enforce the
/// algebra axioms; run [`crate::algebra::validate`] for that.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureTable<S = f64> {
    p: usize,
    q: usize,
    gamma: Vec<S>,
    // nonzero (k, gamma[i][j][k]) for each pair (i, j)
    products: Vec<Vec<(usize, S)>>,
    labels: Vec<String>,
}

impl<S: Scalar> StructureTable<S> {
    /// Builds a table from its nonzero entries `(i, j, k, value)`.
    /// Repeated entries overwrite earlier ones.
    pub fn from_entries(
        p: usize,
        q: usize,
        entries: impl IntoIterator<Item = (usize, usize, usize, S)>,
    ) -> Result<Self> {
        let d = p + q + 1;
        let mut gamma = vec![S::zero(); d * d * d];
        for (i, j, k, v) in entries {
            if i >= d || j >= d || k >= d {
                return Err(Error::InvalidArgument(format!(
                    "structure constant index ({i}, {j}, {k}) out of range for dimension {d}"
                )));
            }
            gamma[(i * d + j) * d + k] = v;
        }
        Ok(Self::from_dense(p, q, gamma))
    }

    fn from_dense(p: usize, q: usize, gamma: Vec<S>) -> Self {
        let d = p + q + 1;
        let products = (0..d * d)
            .map(|ij| {
                (0..d)
                    .filter_map(|k| {
                        let v = &gamma[ij * d + k];
                        (!v.is_zero()).then(|| (k, v.clone()))
                    })
                    .collect()
            })
            .collect();
        Self { p, q, gamma, products, labels: default_labels(p, q) }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        if labels.len() == self.dim() {
            self.labels = labels;
        }
        self
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// Total dimension `p + q + 1`.
    pub fn dim(&self) -> usize {
        self.p + self.q + 1
    }

    /// Dimension of the even part, `p + 1`.
    pub fn even_dim(&self) -> usize {
        self.p + 1
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Parity of basis vector `i`: 0 for `i <= p`, 1 otherwise.
    pub fn parity(&self, i: usize) -> usize {
        usize::from(i > self.p)
    }

    pub fn gamma(&self, i: usize, j: usize, k: usize) -> &S {
        let d = self.dim();
        &self.gamma[(i * d + j) * d + k]
    }

    /// Nonzero `(k, gamma[i][j][k])` entries.
    pub fn product_terms(&self, i: usize, j: usize) -> &[(usize, S)] {
        &self.products[i * self.dim() + j]
    }

    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, usize, &S)> + '_ {
        let d = self.dim();
        (0..d * d).flat_map(move |ij| {
            self.products[ij].iter().map(move |(k, v)| (ij / d, ij % d, *k, v))
        })
    }

    pub fn unit(&self) -> AlgebraElement<S> {
        AlgebraElement::basis(self.dim(), 0)
    }

    pub fn basis(&self, i: usize) -> AlgebraElement<S> {
        AlgebraElement::basis(self.dim(), i)
    }

    pub fn zero(&self) -> AlgebraElement<S> {
        AlgebraElement::zero(self.dim())
    }

    /// Checked product.
    pub fn multiply(&self, a: &AlgebraElement<S>, b: &AlgebraElement<S>) -> Result<AlgebraElement<S>> {
        self.check_dim(a)?;
        self.check_dim(b)?;
        Ok(self.mul(a, b))
    }

    /// Product without dimension checks.
    pub fn mul(&self, a: &AlgebraElement<S>, b: &AlgebraElement<S>) -> AlgebraElement<S> {
        let d = self.dim();
        let mut out = vec![S::zero(); d];
        for (i, ai) in a.coeffs().iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coeffs().iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let w = ai.clone() * bj.clone();
                for (k, g) in &self.products[i * d + j] {
                    out[*k] = out[*k].clone() + w.clone() * g.clone();
                }
            }
        }
        AlgebraElement::new(out)
    }

    pub fn square(&self, a: &AlgebraElement<S>) -> AlgebraElement<S> {
        self.mul(a, a)
    }

    pub fn pow(&self, a: &AlgebraElement<S>, n: u32) -> AlgebraElement<S> {
        (0..n).fold(self.unit(), |acc, _| self.mul(&acc, a))
    }

    pub fn check_dim(&self, a: &AlgebraElement<S>) -> Result<()> {
        if a.dim() == self.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.dim(), found: a.dim() })
        }
    }

    /// Matrix `M` of left multiplication: `M * coeffs(x) = coeffs(a x)`.
    pub fn left_mult_matrix(&self, a: &AlgebraElement<S>) -> Result<linalg::Mat<S>> {
        self.check_dim(a)?;
        let d = self.dim();
        let mut m = vec![vec![S::zero(); d]; d];
        for (i, ai) in a.coeffs().iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, column) in (0..d).map(|j| (j, &self.products[i * d + j])) {
                for (k, g) in column {
                    m[*k][j] = m[*k][j].clone() + ai.clone() * g.clone();
                }
            }
        }
        Ok(m)
    }

    /// Matrix of right multiplication: `M * coeffs(x) = coeffs(x a)`.
    pub fn right_mult_matrix(&self, a: &AlgebraElement<S>) -> Result<linalg::Mat<S>> {
        self.check_dim(a)?;
        let d = self.dim();
        let mut m = vec![vec![S::zero(); d]; d];
        for (j, aj) in a.coeffs().iter().enumerate() {
            if aj.is_zero() {
                continue;
            }
            for i in 0..d {
                for (k, g) in &self.products[i * d + j] {
                    m[*k][i] = m[*k][i].clone() + aj.clone() * g.clone();
                }
            }
        }
        Ok(m)
    }

    /// Re-expresses the table in a new basis whose first `p + 1` vectors are
    /// even (the first being the unit) and whose last `q` vectors are odd.
    pub fn change_basis(&self, basis: &[AlgebraElement<S>]) -> Result<Self> {
        let d = self.dim();
        if basis.len() != d {
            return Err(Error::DimensionMismatch { expected: d, found: basis.len() });
        }
        for b in basis {
            self.check_dim(b)?;
        }
        if basis[0] != self.unit() {
            return Err(Error::NotABasis("first basis vector must be the unit e0".into()));
        }
        for (i, b) in basis.iter().enumerate() {
            let homogeneous = if i <= self.p { b.is_even(self.p) } else { b.is_odd(self.p) };
            if !homogeneous {
                return Err(Error::NotABasis(format!("basis vector {i} has the wrong parity")));
            }
        }
        // columns are the new basis vectors
        let change: linalg::Mat<S> =
            (0..d).map(|k| basis.iter().map(|b| b.coeffs()[k].clone()).collect()).collect();
        let mut gamma = vec![S::zero(); d * d * d];
        for i in 0..d {
            for j in 0..d {
                let prod = self.mul(&basis[i], &basis[j]);
                let c = linalg::solve(&change, prod.coeffs())
                    .ok_or_else(|| Error::NotABasis("vectors are linearly dependent".into()))?;
                for (k, v) in c.into_iter().enumerate() {
                    gamma[(i * d + j) * d + k] = v;
                }
            }
        }
        Ok(Self::from_dense(self.p, self.q, gamma))
    }

    /// The even subalgebra `Lambda_0` as a table with `q = 0`.
    pub fn even_part(&self) -> Self {
        let e = self.even_dim();
        let d = self.dim();
        let mut gamma = vec![S::zero(); e * e * e];
        for i in 0..e {
            for j in 0..e {
                for k in 0..e {
                    gamma[(i * e + j) * e + k] = self.gamma[(i * d + j) * d + k].clone();
                }
            }
        }
        let mut t = Self::from_dense(self.p, 0, gamma);
        t.labels = self.labels[..e].to_vec();
        t
    }

    pub fn map_scalar<T: Scalar>(&self, f: impl Fn(&S) -> T) -> StructureTable<T> {
        let mut t = StructureTable::from_dense(self.p, self.q, self.gamma.iter().map(f).collect());
        t.labels = self.labels.clone();
        t
    }

    pub fn to_f64(&self) -> StructureTable<f64> {
        self.map_scalar(Scalar::to_f64)
    }
}

impl StructureTable<f64> {
    /// Lifts a float table to exact arithmetic (exact binary values).
    pub fn to_rational(&self) -> StructureTable<Rational> {
        self.map_scalar(|x| <Rational as Scalar>::from_f64(*x))
    }
}

fn default_labels(p: usize, q: usize) -> Vec<String> {
    (0..=p)
        .map(|i| format!("e{i}"))
        .chain((1..=q).map(|l| format!("eps{l}")))
        .collect()
}

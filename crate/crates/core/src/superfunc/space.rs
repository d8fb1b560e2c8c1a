use serde::Serialize;

use crate::algebra::{AlgebraElement, Builtin, StructureTable};
use crate::conditions::{default_slices, SliceSpec};
use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

/// The superspace `Lambda_0^n x Lambda_1^m` over a fixed algebra and slice
/// decomposition.
///
/// Real coordinates are ordered `y_1^0..y_1^p, ..., y_n^0..y_n^p,
/// theta_1^1..theta_1^q, ..., theta_m^1..theta_m^q`.
#[derive(Clone, Debug)]
pub struct Superspace<S = f64> {
    table: StructureTable<S>,
    slices: Option<SliceSpec<S>>,
    n: usize,
    m: usize,
}

/// A real coordinate of the superspace.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Coord {
    /// `y_i^k`, `k = 0..=p`.
    Even { i: usize, k: usize },
    /// `theta_l^t`, `t = 1..=q`.
    Odd { l: usize, t: usize },
}

/// Component of `d''`: `dy_i^j` for `j >= 1`, or `dtheta_l^t` for `t` not a
/// slice leader.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Direction {
    Even { i: usize, j: usize },
    Odd { l: usize, t: usize },
}

/// Component of `d'`: the coefficient of `dY_i` or of `dZ_k(theta_l)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PrimeDirection {
    Y { i: usize },
    Z { l: usize, k: usize },
}

/// One hypervariable block of coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Block {
    Even(usize),
    Odd(usize),
}

impl<S: Scalar> Superspace<S> {
    /// `slices` is required when `m > 0`.
    pub fn new(table: StructureTable<S>, slices: Option<SliceSpec<S>>, n: usize, m: usize) -> Result<Self> {
        if let Some(s) = &slices {
            if s.q() != table.q() {
                return Err(Error::InvalidSlice(format!(
                    "slice spec covers {} odd indices, algebra has q = {}",
                    s.q(),
                    table.q()
                )));
            }
        } else if m > 0 {
            return Err(Error::InvalidSlice("odd variables require a slice spec".into()));
        }
        if m > 0 && table.q() == 0 {
            return Err(Error::InvalidArgument("odd variables require q > 0".into()));
        }
        Ok(Self { table, slices, n, m })
    }

    pub fn table(&self) -> &StructureTable<S> {
        &self.table
    }

    pub fn slices(&self) -> Option<&SliceSpec<S>> {
        self.slices.as_ref()
    }

    pub(crate) fn slice_spec(&self) -> &SliceSpec<S> {
        self.slices.as_ref().expect("superspace with odd variables carries a slice spec")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn p(&self) -> usize {
        self.table.p()
    }

    pub fn q(&self) -> usize {
        self.table.q()
    }

    /// Number of slices, 0 without a slice spec.
    pub fn r(&self) -> usize {
        self.slices.as_ref().map_or(0, SliceSpec::r)
    }

    /// Real dimension `N = n(p+1) + mq`.
    pub fn real_dim(&self) -> usize {
        self.n * (self.p() + 1) + self.m * self.q()
    }

    /// Number of hypervariables in a qS multi-index: `n + r m`.
    pub fn qs_vars(&self) -> usize {
        self.n + self.r() * self.m
    }

    pub fn even_coord(&self, i: usize, k: usize) -> usize {
        i * (self.p() + 1) + k
    }

    /// Flat index of `theta_l^t` (`t` is 1-based).
    pub fn odd_coord(&self, l: usize, t: usize) -> usize {
        self.n * (self.p() + 1) + l * self.q() + (t - 1)
    }

    pub fn coord(&self, a: usize) -> Coord {
        let even = self.n * (self.p() + 1);
        if a < even {
            Coord::Even { i: a / (self.p() + 1), k: a % (self.p() + 1) }
        } else {
            Coord::Odd { l: (a - even) / self.q(), t: (a - even) % self.q() + 1 }
        }
    }

    pub fn block_of(&self, a: usize) -> Block {
        match self.coord(a) {
            Coord::Even { i, .. } => Block::Even(i),
            Coord::Odd { l, .. } => Block::Odd(l),
        }
    }

    /// Flat coordinate range of a block.
    pub fn block_range(&self, b: Block) -> std::ops::Range<usize> {
        match b {
            Block::Even(i) => self.even_coord(i, 0)..self.even_coord(i, 0) + self.p() + 1,
            Block::Odd(l) => self.odd_coord(l, 1)..self.odd_coord(l, 1) + self.q(),
        }
    }

    pub fn blocks(&self) -> Vec<Block> {
        (0..self.n).map(Block::Even).chain((0..self.m).map(Block::Odd)).collect()
    }

    /// `d''` directions in coordinate order.
    pub fn d_second_directions(&self) -> Vec<Direction> {
        let mut out = Vec::new();
        for i in 0..self.n {
            out.extend((1..=self.p()).map(|j| Direction::Even { i, j }));
        }
        for l in 0..self.m {
            let s = self.slice_spec();
            out.extend((1..=self.q()).filter(|&t| !s.is_leader(t)).map(|t| Direction::Odd { l, t }));
        }
        out
    }

    pub fn d_prime_directions(&self) -> Vec<PrimeDirection> {
        let mut out: Vec<_> = (0..self.n).map(|i| PrimeDirection::Y { i }).collect();
        for l in 0..self.m {
            out.extend((0..self.r()).map(|k| PrimeDirection::Z { l, k }));
        }
        out
    }

    /// Flat coordinate a `d''` direction differentiates along.
    pub fn direction_coord(&self, d: Direction) -> usize {
        match d {
            Direction::Even { i, j } => self.even_coord(i, j),
            Direction::Odd { l, t } => self.odd_coord(l, t),
        }
    }

    /// Base coordinate a `d'` component differentiates along: `y_i^0` or
    /// `theta_l^{s_k}`.
    pub fn prime_coord(&self, d: PrimeDirection) -> usize {
        match d {
            PrimeDirection::Y { i } => self.even_coord(i, 0),
            PrimeDirection::Z { l, k } => self.odd_coord(l, self.slice_spec().leader(k)),
        }
    }

    pub fn map_scalar<T: Scalar>(&self, f: impl Fn(&S) -> T + Copy) -> Superspace<T> {
        Superspace {
            table: self.table.map_scalar(f),
            slices: self.slices.as_ref().map(|s| s.map_scalar(f)),
            n: self.n,
            m: self.m,
        }
    }

    pub fn to_f64(&self) -> Superspace<f64> {
        self.map_scalar(S::to_f64)
    }
}

impl Superspace<Rational> {
    /// Superspace over a built-in algebra with its default slices.
    pub fn builtin(b: Builtin, n: usize, m: usize) -> Result<Self> {
        let table = b.table();
        let slices = default_slices(b, &table);
        if m > 0 && slices.is_none() {
            return Err(Error::InvalidSlice(format!("no default slice spec for {b}")));
        }
        Self::new(table, slices, n, m)
    }
}

/// A point `(y, theta)` of the superspace.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound(serialize = "S: Scalar"))]
pub struct SuperPoint<S = f64> {
    #[serde(skip)]
    p: usize,
    y: Vec<AlgebraElement<S>>,
    theta: Vec<AlgebraElement<S>>,
}

impl<S: Scalar> SuperPoint<S> {
    pub fn new(space: &Superspace<S>, y: Vec<AlgebraElement<S>>, theta: Vec<AlgebraElement<S>>) -> Result<Self> {
        if y.len() != space.n() {
            return Err(Error::DimensionMismatch { expected: space.n(), found: y.len() });
        }
        if theta.len() != space.m() {
            return Err(Error::DimensionMismatch { expected: space.m(), found: theta.len() });
        }
        for v in y.iter().chain(&theta) {
            space.table().check_dim(v)?;
        }
        if !y.iter().all(|v| v.is_even(space.p())) {
            return Err(Error::InvalidArgument("even components must be even".into()));
        }
        if !theta.iter().all(|v| v.is_odd(space.p())) {
            return Err(Error::InvalidArgument("odd components must be odd".into()));
        }
        Ok(Self { p: space.p(), y, theta })
    }

    pub fn origin(space: &Superspace<S>) -> Self {
        Self::from_flat(space, &vec![S::zero(); space.real_dim()]).expect("matching length")
    }

    pub fn from_flat(space: &Superspace<S>, flat: &[S]) -> Result<Self> {
        if flat.len() != space.real_dim() {
            return Err(Error::DimensionMismatch { expected: space.real_dim(), found: flat.len() });
        }
        let (p, q, d) = (space.p(), space.q(), space.table().dim());
        let y = (0..space.n())
            .map(|i| {
                let mut c = vec![S::zero(); d];
                c[..=p].clone_from_slice(&flat[space.even_coord(i, 0)..=space.even_coord(i, p)]);
                AlgebraElement::new(c)
            })
            .collect();
        let theta = (0..space.m())
            .map(|l| {
                let mut c = vec![S::zero(); d];
                c[p + 1..].clone_from_slice(&flat[space.odd_coord(l, 1)..space.odd_coord(l, 1) + q]);
                AlgebraElement::new(c)
            })
            .collect();
        Ok(Self { p, y, theta })
    }

    pub fn y(&self) -> &[AlgebraElement<S>] {
        &self.y
    }

    pub fn theta(&self) -> &[AlgebraElement<S>] {
        &self.theta
    }

    pub fn flatten(&self) -> Vec<S> {
        let mut out = Vec::new();
        for v in &self.y {
            out.extend_from_slice(&v.coeffs()[..=self.p]);
        }
        for v in &self.theta {
            out.extend_from_slice(&v.coeffs()[self.p + 1..]);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a - b)
    }

    fn zip(&self, other: &Self, f: impl Fn(&AlgebraElement<S>, &AlgebraElement<S>) -> AlgebraElement<S>) -> Self {
        Self {
            p: self.p,
            y: self.y.iter().zip(&other.y).map(|(a, b)| f(a, b)).collect(),
            theta: self.theta.iter().zip(&other.theta).map(|(a, b)| f(a, b)).collect(),
        }
    }

    /// Euclidean norm of the flat coordinates.
    pub fn norm(&self) -> f64 {
        self.y.iter().chain(&self.theta).map(|v| v.norm().powi(2)).sum::<f64>().sqrt()
    }

    pub fn to_f64(&self) -> SuperPoint<f64> {
        SuperPoint {
            p: self.p,
            y: self.y.iter().map(AlgebraElement::to_f64).collect(),
            theta: self.theta.iter().map(AlgebraElement::to_f64).collect(),
        }
    }
}

use std::collections::BTreeMap;

use crate::scalar::Scalar;
use crate::superfunc::{Coord, RealPoly, Superspace};

/// Differential form with polynomial coefficients, `sum_I c_I dx^I` over
/// increasing coordinate tuples `I`. Coefficients sit to the left of the
/// differentials.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyForm<S = f64> {
    nvars: usize,
    dim: usize,
    terms: BTreeMap<Vec<usize>, RealPoly<S>>,
}

/// `dx^h` wedged in front of `dx^I`: sign and merged index set, or `None`
/// when `h` already occurs.
pub fn wedge_front(h: usize, set: &[usize]) -> Option<(i64, Vec<usize>)> {
    let pos = match set.binary_search(&h) {
        Ok(_) => return None,
        Err(pos) => pos,
    };
    let mut out = set.to_vec();
    out.insert(pos, h);
    Some((if pos % 2 == 0 { 1 } else { -1 }, out))
}

impl<S: Scalar> PolyForm<S> {
    pub fn zero(nvars: usize, dim: usize) -> Self {
        Self { nvars, dim, terms: BTreeMap::new() }
    }

    pub fn function(f: RealPoly<S>) -> Self {
        let mut out = Self::zero(f.nvars(), f.dim());
        out.add_term(Vec::new(), f);
        out
    }

    pub fn terms(&self) -> &BTreeMap<Vec<usize>, RealPoly<S>> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, set: Vec<usize>, c: RealPoly<S>) {
        let sum = match self.terms.remove(&set) {
            Some(prev) => prev.add(&c),
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(set, sum);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    fn push_wedged(&mut self, h: usize, set: &[usize], c: RealPoly<S>) {
        if let Some((sign, merged)) = wedge_front(h, set) {
            self.add_term(merged, if sign > 0 { c } else { c.neg() });
        }
    }

    /// Exterior derivative.
    pub fn d(&self) -> Self {
        let mut out = Self::zero(self.nvars, self.dim);
        for (set, c) in &self.terms {
            for h in 0..self.nvars {
                out.push_wedged(h, set, c.derivative(h));
            }
        }
        out
    }

    /// `d'' = sum dy_i^j (d/dy_i^j - e_j d/dy_i^0) + sum dtheta_l^t (d/dtheta_l^t - d/dtheta_l^{s_k} a_t)`.
    pub fn d_second(&self, space: &Superspace<S>) -> Self {
        let t = space.table();
        let mut out = Self::zero(self.nvars, self.dim);
        for (set, c) in &self.terms {
            let comps = crate::superfunc::assemble_d_second(
                space,
                &space.d_second_directions(),
                |a| c.derivative(a),
                |dj, d0, e| dj.sub(&d0.left_mul(t, e)),
                |dt, ds, a| dt.sub(&ds.right_mul(t, a)),
            );
            for (dir, g) in comps {
                out.push_wedged(space.direction_coord(dir), set, g);
            }
        }
        out
    }

    /// `d' = sum_i dY_i d/dy_i^0 + sum_{l,k} dZ_k(theta_l) d/dtheta_l^{s_k}`,
    /// with `dY_i = sum_k e_k dy_i^k` acting from the left and
    /// `dZ_k = sum a_t dtheta^t` from the right.
    pub fn d_prime(&self, space: &Superspace<S>) -> Self {
        let t = space.table();
        let mut out = Self::zero(self.nvars, self.dim);
        for (set, c) in &self.terms {
            for a in 0..self.nvars {
                let g = match space.coord(a) {
                    Coord::Even { i, k } => c.derivative(space.even_coord(i, 0)).left_mul(t, &t.basis(k)),
                    Coord::Odd { l, t: u } => {
                        let s = space.slice_spec();
                        let lead = s.leader(s.slice_of(u));
                        c.derivative(space.odd_coord(l, lead)).right_mul(t, s.multiplier(u))
                    }
                };
                out.push_wedged(a, set, g);
            }
        }
        out
    }
}

//! Hyperforms and the fundamental solutions of `d''`.

use serde::Serialize;

use crate::algebra::{AlgebraElement, StructureTable};
use crate::conditions::SliceSpec;
use crate::error::{Error, Result};
use crate::quadrature::unit_ball_volume;
use crate::scalar::Scalar;
use crate::superfunc::{fd_partials, Coord, PolyForm, RealPoly, SuperPoint, Superspace};

/// Global sign of the kernel constant `KERNEL_SIGN / (N Vol(B_N))`.
///
/// With the boundary pairing `sum_a (-1)^a c_a nu_a` this is the sign that
/// reproduces constants (and `dz / (2 pi i z)` in the complex case).
pub const KERNEL_SIGN: f64 = 1.0;

/// `(N-1)`-form `sum_a c_a hat_a`, where `hat_a` is the wedge of all `dx^b`,
/// `b != a`, in increasing order. No `(-1)^a` is folded into `c_a`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HyperForm {
    coeffs: Vec<AlgebraElement<f64>>,
}

impl HyperForm {
    pub fn zero(n: usize, algebra_dim: usize) -> Self {
        Self { coeffs: vec![AlgebraElement::zero(algebra_dim); n] }
    }

    pub fn from_coeffs(coeffs: Vec<AlgebraElement<f64>>) -> Self {
        Self { coeffs }
    }

    /// Ambient real dimension `N`.
    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, a: usize) -> &AlgebraElement<f64> {
        &self.coeffs[a]
    }

    pub fn coeffs(&self) -> &[AlgebraElement<f64>] {
        &self.coeffs
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| c.scale(&s)).collect() }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.max_abs_diff(b)).fold(0.0, f64::max)
    }

    /// Adds `coef * alpha_l dx^l ∧ hat_{a,b}` for each `(l, alpha_l)` of a
    /// one-form.
    fn add_wedge(&mut self, t: &StructureTable<f64>, coef: &AlgebraElement<f64>, one_form: &[(usize, &AlgebraElement<f64>)], pair: (usize, usize)) {
        for &(l, alpha) in one_form {
            if let Some((sign, single)) = wedge_one_into_hat(l, pair) {
                let term = t.mul(coef, alpha);
                self.coeffs[single].add_scaled(&(sign as f64), &term);
            }
        }
    }
}

/// `dx^l ∧ hat_{a,b}` as `sign * hat_c`, or `None` when `l` is not omitted.
pub fn wedge_one_into_hat(l: usize, omitted: (usize, usize)) -> Option<(i32, usize)> {
    let (lo, hi) = if omitted.0 < omitted.1 { omitted } else { (omitted.1, omitted.0) };
    assert_ne!(lo, hi, "omitted pair must be distinct");
    // retained coordinates below l
    let (below, other) = if l == lo {
        (lo, hi)
    } else if l == hi {
        (hi - 1, lo)
    } else {
        return None;
    };
    Some((if below % 2 == 0 { 1 } else { -1 }, other))
}

fn nonzero_norm(norm: f64) -> Result<f64> {
    if norm > 0.0 && norm.is_finite() {
        Ok(norm)
    } else {
        Err(Error::SingularPoint)
    }
}

/// Adds the even-block sum `sum_j (-1)^j (y^0 e_j + y^j e_0) dY ∧ hat_{o, o+j}`
/// for a block starting at flat index `o`.
fn add_even_block(form: &mut HyperForm, t: &StructureTable<f64>, y: &AlgebraElement<f64>, o: usize) {
    let p = t.p();
    let basis: Vec<_> = (0..=p).map(|k| t.basis(k)).collect();
    let dy: Vec<_> = (0..=p).map(|k| (o + k, &basis[k])).collect();
    let c = y.coeffs();
    for j in 1..=p {
        let mut coef = basis[j].scale(&c[0]);
        coef.add_scaled(&c[j], &basis[0]);
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        form.add_wedge(t, &coef.scale(&sign), &dy, (o, o + j));
    }
}

/// Adds the odd-block sum over slices,
/// `sum_k sum_{j != s_k} (-1)^{j - s_k} (theta^j e_0 + theta^{s_k} a_j) dZ_k ∧ hat_{s_k, j}`,
/// for a block whose `theta^1` sits at flat index `o`.
fn add_odd_block(form: &mut HyperForm, t: &StructureTable<f64>, s: &SliceSpec<f64>, theta: &AlgebraElement<f64>, o: usize) {
    let p = t.p();
    let unit = t.unit();
    let th = |l: usize| theta.coeffs()[p + l];
    for k in 0..s.r() {
        let lead = s.leader(k);
        let dz: Vec<_> = s.slice(k).map(|u| (o + u - 1, s.multiplier(u))).collect();
        for j in s.slice(k).filter(|&j| j != lead) {
            let mut coef = unit.scale(&th(j));
            coef.add_scaled(&th(lead), s.multiplier(j));
            let sign = if (j - lead).is_multiple_of(2) { 1.0 } else { -1.0 };
            form.add_wedge(t, &coef.scale(&sign), &dz, (o + lead - 1, o + j - 1));
        }
    }
}

/// Fundamental solution of `d''` on `Lambda_0`:
/// `Omega_0 = 1/((p+1) Vol(B_{p+1}) |y|^{p+1}) sum_j (-1)^j (y^0 e_j + y^j e_0) (sum_k e_k dy^k) ∧ hat_{0,j}`.
pub fn omega0_eval(t: &StructureTable<f64>, y: &AlgebraElement<f64>) -> Result<HyperForm> {
    t.check_dim(y)?;
    let d = t.even_dim();
    let norm = nonzero_norm(y.coeffs()[..d].iter().map(|v| v * v).sum::<f64>().sqrt())?;
    let mut form = HyperForm::zero(d, t.dim());
    add_even_block(&mut form, t, y, 0);
    Ok(form.scale(1.0 / (d as f64 * unit_ball_volume(d) * norm.powi(d as i32))))
}

/// Fundamental solution of `d''` on `Lambda_1` (coordinates `theta^1..theta^q`).
pub fn omega1_eval(t: &StructureTable<f64>, s: &SliceSpec<f64>, theta: &AlgebraElement<f64>) -> Result<HyperForm> {
    t.check_dim(theta)?;
    let q = t.q();
    let norm = nonzero_norm(theta.coeffs()[t.p() + 1..].iter().map(|v| v * v).sum::<f64>().sqrt())?;
    let mut form = HyperForm::zero(q, t.dim());
    add_odd_block(&mut form, t, s, theta, 0);
    Ok(form.scale(1.0 / (q as f64 * unit_ball_volume(q) * norm.powi(q as i32))))
}

/// Fundamental solution on `Lambda_0^n x Lambda_1^m`, hats taken over all
/// `N` global coordinates.
pub fn omega_full_eval(space: &Superspace<f64>, x: &SuperPoint<f64>) -> Result<HyperForm> {
    let t = space.table();
    let n = space.real_dim();
    let norm = nonzero_norm(x.norm())?;
    let mut form = HyperForm::zero(n, t.dim());
    for (i, y) in x.y().iter().enumerate() {
        add_even_block(&mut form, t, y, space.even_coord(i, 0));
    }
    for (l, th) in x.theta().iter().enumerate() {
        add_odd_block(&mut form, t, space.slices().expect("odd block needs slices"), th, space.odd_coord(l, 1));
    }
    Ok(form.scale(KERNEL_SIGN / (n as f64 * unit_ball_volume(n) * norm.powi(n as i32))))
}

/// Degree-0 part of the reproducing kernel, `K(x, x') = Omega(x - x')`.
pub fn kernel_k(space: &Superspace<f64>, x: &SuperPoint<f64>, x_prime: &SuperPoint<f64>) -> Result<HyperForm> {
    omega_full_eval(space, &x.sub(x_prime))
}

/// Exact numerator `A` of `Omega_0` (the sum without `1/|y|^{p+1}` or the
/// constant), as polynomial coefficients of the hat basis.
pub fn omega0_numerator<S: Scalar>(t: &StructureTable<S>) -> Vec<RealPoly<S>> {
    let p = t.p();
    let d = t.even_dim();
    let mut coeffs = vec![RealPoly::zero(d, t.dim()); d];
    for j in 1..=p {
        // (y^0 e_j + y^j e_0) as a linear polynomial
        let mut a = RealPoly::zero(d, t.dim());
        let mut e0 = vec![0; d];
        e0[0] = 1;
        a.add_term(e0, t.basis(j));
        let mut ej = vec![0; d];
        ej[j] = 1;
        a.add_term(ej, t.unit());
        if j % 2 == 1 {
            a = a.neg();
        }
        for k in 0..=p {
            if let Some((sign, single)) = wedge_one_into_hat(k, (0, j)) {
                let term = a.right_mul(t, &t.basis(k));
                coeffs[single] = coeffs[single].add(&if sign > 0 { term } else { term.neg() });
            }
        }
    }
    coeffs
}

/// `d''` of an `(N-1)`-form with polynomial coefficients, as the coefficient
/// of `dx^0 ∧ ... ∧ dx^{N-1}`: `sum_h (-1)^h D_h c_h`.
pub fn d_second_top<S: Scalar>(space: &Superspace<S>, coeffs: &[RealPoly<S>]) -> RealPoly<S> {
    let n = space.real_dim();
    let mut form = PolyForm::zero(n, space.table().dim());
    for (a, c) in coeffs.iter().enumerate() {
        form.add_term((0..n).filter(|&b| b != a).collect(), c.clone());
    }
    let out = form.d_second(space);
    out.terms().get(&(0..n).collect::<Vec<_>>()).cloned().unwrap_or_else(|| RealPoly::zero(n, space.table().dim()))
}

/// `|d''omega|` of a hyperform field at `x` with central differences of step
/// `h`, i.e. the norm of `sum_h (-1)^h D_h c_h`.
pub fn d_second_residual<F>(space: &Superspace<f64>, field: F, x: &SuperPoint<f64>, h: f64) -> Result<f64>
where
    F: Fn(&SuperPoint<f64>) -> Result<HyperForm>,
{
    let partials = form_partials(space, field, x, h)?;
    let t = space.table();
    let mut total = t.zero();
    for dir in space.d_second_directions() {
        let a = space.direction_coord(dir);
        let d = match space.coord(a) {
            Coord::Even { i, k } => &partials[a][a] - &t.mul(&t.basis(k), &partials[space.even_coord(i, 0)][a]),
            Coord::Odd { l, t: u } => {
                let s = space.slices().expect("odd block needs slices");
                let lead = s.leader(s.slice_of(u));
                &partials[a][a] - &t.mul(&partials[space.odd_coord(l, lead)][a], s.multiplier(u))
            }
        };
        total.add_scaled(&sign_of(a), &d);
    }
    Ok(total.norm())
}

/// `|d'omega|` by central differences: `sum_a (-1)^a e_k d_{(i,0)} c_a` over
/// even coordinates `a = (i, k)` plus `sum_a (-1)^a (d_{(l,s_k)} c_a) a_u` over odd ones.
pub fn d_prime_residual<F>(space: &Superspace<f64>, field: F, x: &SuperPoint<f64>, h: f64) -> Result<f64>
where
    F: Fn(&SuperPoint<f64>) -> Result<HyperForm>,
{
    let t = space.table();
    let n = space.real_dim();
    let bases: Vec<usize> = (0..n)
        .map(|a| match space.coord(a) {
            Coord::Even { i, .. } => space.even_coord(i, 0),
            Coord::Odd { l, t: u } => {
                let s = space.slices().expect("odd block needs slices");
                space.odd_coord(l, s.leader(s.slice_of(u)))
            }
        })
        .collect();
    let partials = form_partials(space, field, x, h)?;
    let mut total = t.zero();
    for a in 0..n {
        let d = &partials[bases[a]][a];
        let term = match space.coord(a) {
            Coord::Even { k, .. } => t.mul(&t.basis(k), d),
            Coord::Odd { t: u, .. } => t.mul(d, space.slices().expect("slices").multiplier(u)),
        };
        total.add_scaled(&sign_of(a), &term);
    }
    Ok(total.norm())
}

fn sign_of(a: usize) -> f64 {
    if a.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// `partials[b][a] = d c_a / d x^b`.
fn form_partials<F>(space: &Superspace<f64>, field: F, x: &SuperPoint<f64>, h: f64) -> Result<Vec<Vec<AlgebraElement<f64>>>>
where
    F: Fn(&SuperPoint<f64>) -> Result<HyperForm>,
{
    let n = space.real_dim();
    let d = space.table().dim();
    // flatten the coefficients into one algebra-sized vector per coordinate
    let packed = |p: &SuperPoint<f64>| -> AlgebraElement<f64> {
        match field(p) {
            Ok(f) => AlgebraElement::new(f.coeffs().iter().flat_map(|c| c.coeffs().iter().copied()).collect()),
            Err(_) => AlgebraElement::new(vec![f64::NAN; n * d]),
        }
    };
    let raw = fd_partials(space, packed, x, h);
    if raw.iter().any(|v| v.coeffs().iter().any(|c| !c.is_finite())) {
        return Err(Error::SingularPoint);
    }
    Ok(raw
        .into_iter()
        .map(|v| v.coeffs().chunks(d).map(|c| AlgebraElement::new(c.to_vec())).collect())
        .collect())
}

/// One row of `kernel sample` output.
#[derive(Clone, Debug, Serialize)]
pub struct KernelSample {
    pub point: Vec<f64>,
    pub coefficients: Vec<Vec<f64>>,
    pub fd_residual: f64,
}

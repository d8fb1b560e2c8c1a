use crate::algebra::{AlgebraElement, StructureTable};
use crate::conditions::SliceSpec;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::superfunc::poly::RealPoly;
use crate::superfunc::{Block, Direction, PrimeDirection, QsPoly, SuperPoint, Superspace};

/// Relative tolerance for deciding that a float polynomial vanishes.
pub const POLY_ZERO_TOL: f64 = 1e-9;

/// `Z_k(theta) = sum_{l in slice k} theta^l a_l` (`k` is 0-based).
pub fn slice_variable<S: Scalar>(
    t: &StructureTable<S>,
    s: &SliceSpec<S>,
    theta: &AlgebraElement<S>,
    k: usize,
) -> AlgebraElement<S> {
    let mut out = t.zero();
    for l in s.slice(k) {
        out.add_scaled(&theta.coeffs()[t.p() + l], s.multiplier(l));
    }
    out
}

/// Values of the hypervariables `y_i - b_i` and `Z_k(theta_l - beta_l)` in
/// multi-index order.
pub fn hypervariables<S: Scalar>(space: &Superspace<S>, x: &SuperPoint<S>, center: &SuperPoint<S>) -> Vec<AlgebraElement<S>> {
    let t = space.table();
    let mut out: Vec<_> = x.y().iter().zip(center.y()).map(|(a, b)| a - b).collect();
    for k in 0..space.r() {
        for l in 0..space.m() {
            let d = &x.theta()[l] - &center.theta()[l];
            out.push(slice_variable(t, space.slice_spec(), &d, k));
        }
    }
    out
}

pub fn eval_qs<S: Scalar>(
    space: &Superspace<S>,
    f: &QsPoly<S>,
    x: &SuperPoint<S>,
    center: &SuperPoint<S>,
) -> Result<AlgebraElement<S>> {
    f.check_space(space)?;
    let t = space.table();
    let vars = hypervariables(space, x, center);
    let mut powers: Vec<Vec<AlgebraElement<S>>> = vars.iter().map(|_| vec![t.unit()]).collect();
    let mut out = t.zero();
    for (key, a) in f.terms() {
        let mut mono = t.unit();
        for (v, &e) in key.iter().enumerate() {
            while powers[v].len() <= e as usize {
                let next = t.mul(powers[v].last().expect("non-empty"), &vars[v]);
                powers[v].push(next);
            }
            if e > 0 {
                mono = t.mul(&mono, &powers[v][e as usize]);
            }
        }
        out += &t.mul(a, &mono);
    }
    Ok(out)
}

/// The hypervariables as linear real polynomials around `center`.
pub fn hypervariable_polys<S: Scalar>(space: &Superspace<S>, center: &SuperPoint<S>) -> Vec<RealPoly<S>> {
    let t = space.table();
    let nv = space.real_dim();
    let d = t.dim();
    let linear = |coords: Vec<(usize, AlgebraElement<S>)>, shift: AlgebraElement<S>| {
        let mut poly = RealPoly::constant(nv, -shift);
        for (a, c) in coords {
            let mut e = vec![0; nv];
            e[a] = 1;
            poly.add_term(e, c);
        }
        poly
    };
    let mut out = Vec::new();
    for i in 0..space.n() {
        let coords = (0..=space.p()).map(|k| (space.even_coord(i, k), AlgebraElement::basis(d, k))).collect();
        out.push(linear(coords, center.y()[i].clone()));
    }
    for k in 0..space.r() {
        let s = space.slice_spec();
        for l in 0..space.m() {
            let coords = s.slice(k).map(|u| (space.odd_coord(l, u), s.multiplier(u).clone())).collect();
            out.push(linear(coords, slice_variable(t, s, &center.theta()[l], k)));
        }
    }
    out
}

/// Expansion of a qS polynomial into the real coordinates.
pub fn qs_to_real<S: Scalar>(space: &Superspace<S>, f: &QsPoly<S>, center: &SuperPoint<S>) -> Result<RealPoly<S>> {
    f.check_space(space)?;
    let t = space.table();
    let nv = space.real_dim();
    let vars = hypervariable_polys(space, center);
    let mut powers: Vec<Vec<RealPoly<S>>> = vars.iter().map(|_| vec![RealPoly::constant(nv, t.unit())]).collect();
    let mut out = RealPoly::zero(nv, t.dim());
    for (key, a) in f.terms() {
        let mut mono = RealPoly::constant(nv, t.unit());
        for (v, &e) in key.iter().enumerate() {
            while powers[v].len() <= e as usize {
                let next = powers[v].last().expect("non-empty").mul(t, &vars[v]);
                powers[v].push(next);
            }
            if e > 0 {
                mono = mono.mul(t, &powers[v][e as usize]);
            }
        }
        out = out.add(&mono.left_mul(t, a));
    }
    Ok(out)
}

/// Applies the `d''` combination to precomputed first partials:
/// `D_(i,j) = d_(i,j) - e_j d_(i,0)` and `D_(l,t) = d_(l,t) - d_(l,s_k) a_t`.
pub fn assemble_d_second<S: Scalar, T>(
    space: &Superspace<S>,
    directions: &[Direction],
    partial: impl Fn(usize) -> T,
    combine_even: impl Fn(T, T, &AlgebraElement<S>) -> T,
    combine_odd: impl Fn(T, T, &AlgebraElement<S>) -> T,
) -> Vec<(Direction, T)> {
    let t = space.table();
    directions
        .iter()
        .map(|&d| {
            let value = match d {
                Direction::Even { i, j } => {
                    combine_even(partial(space.even_coord(i, j)), partial(space.even_coord(i, 0)), &t.basis(j))
                }
                Direction::Odd { l, t: u } => {
                    let s = space.slice_spec();
                    let lead = s.leader(s.slice_of(u));
                    combine_odd(partial(space.odd_coord(l, u)), partial(space.odd_coord(l, lead)), s.multiplier(u))
                }
            };
            (d, value)
        })
        .collect()
}

fn d_second_along<S: Scalar>(space: &Superspace<S>, f: &RealPoly<S>, directions: &[Direction]) -> Vec<(Direction, RealPoly<S>)> {
    let t = space.table();
    assemble_d_second(
        space,
        directions,
        |a| f.derivative(a),
        |dj, d0, e| dj.sub(&d0.left_mul(t, e)),
        |dt, ds, a| dt.sub(&ds.right_mul(t, a)),
    )
}

/// All `d''` components of a real polynomial, in coordinate order.
pub fn d_second<S: Scalar>(space: &Superspace<S>, f: &RealPoly<S>) -> Vec<(Direction, RealPoly<S>)> {
    d_second_along(space, f, &space.d_second_directions())
}

/// `d''` components belonging to one hypervariable block; the other
/// hypervariables are held fixed.
pub fn d_second_block<S: Scalar>(space: &Superspace<S>, f: &RealPoly<S>, block: Block) -> Vec<(Direction, RealPoly<S>)> {
    let dirs: Vec<_> = space
        .d_second_directions()
        .into_iter()
        .filter(|&d| space.block_of(space.direction_coord(d)) == block)
        .collect();
    d_second_along(space, f, &dirs)
}

/// Coefficients of `dY_i` and `dZ_k(theta_l)` in `d'f`.
pub fn d_prime<S: Scalar>(space: &Superspace<S>, f: &RealPoly<S>) -> Vec<(PrimeDirection, RealPoly<S>)> {
    space.d_prime_directions().into_iter().map(|d| (d, f.derivative(space.prime_coord(d)))).collect()
}

fn zero_tol(f: &RealPoly<impl Scalar>) -> f64 {
    POLY_ZERO_TOL * f.max_coeff().max(1.0)
}

pub fn is_qs_differentiable<S: Scalar>(space: &Superspace<S>, f: &RealPoly<S>) -> bool {
    let tol = zero_tol(f);
    d_second(space, f).iter().all(|(_, g)| g.is_negligible(tol))
}

/// True when every block's own `d''` components vanish.
pub fn is_separately_qs<S: Scalar>(space: &Superspace<S>, f: &RealPoly<S>) -> bool {
    let tol = zero_tol(f);
    space.blocks().into_iter().all(|b| d_second_block(space, f, b).iter().all(|(_, g)| g.is_negligible(tol)))
}

fn not_qs<S: Scalar>(space: &Superspace<S>, f: &RealPoly<S>) -> Error {
    let worst = d_second(space, f)
        .into_iter()
        .map(|(d, g)| (d, g.max_coeff()))
        .fold(None, |acc: Option<(Direction, f64)>, x| match acc {
            Some(a) if a.1 >= x.1 => Some(a),
            _ => Some(x),
        });
    match worst {
        Some((d, v)) => Error::NotQs(format!("d'' component {d:?} has coefficient of size {v:e}")),
        None => Error::NotQs("d'' does not vanish".into()),
    }
}

/// Coefficients `A_{I,J}` of the expansion at `center`, up to total order
/// `max_degree`: mixed partials along `y_i^0` and `theta_l^{s_k}` divided by
/// the factorials.
pub fn taylor_coefficients<S: Scalar>(
    space: &Superspace<S>,
    f: &RealPoly<S>,
    center: &SuperPoint<S>,
    max_degree: u32,
) -> Result<QsPoly<S>> {
    if !is_qs_differentiable(space, f) {
        return Err(not_qs(space, f));
    }
    let mut base = vec![None; space.real_dim()];
    for i in 0..space.n() {
        base[space.even_coord(i, 0)] = Some(i);
    }
    for k in 0..space.r() {
        for l in 0..space.m() {
            base[space.odd_coord(l, space.slice_spec().leader(k))] = Some(space.n() + k * space.m() + l);
        }
    }
    let shifted = f.translate(&center.flatten());
    let mut out = QsPoly::zero(space);
    'terms: for (exps, c) in shifted.terms() {
        if exps.iter().sum::<u32>() > max_degree {
            continue;
        }
        let mut key = vec![0; space.qs_vars()];
        for (a, &e) in exps.iter().enumerate() {
            match (e, base[a]) {
                (0, _) => {}
                (_, Some(v)) => key[v] = e,
                (_, None) => continue 'terms,
            }
        }
        out.add_term(key, c.clone());
    }
    Ok(out)
}

/// Recovers the qS form of a real polynomial; the result re-expands to `f`.
pub fn real_to_qs<S: Scalar>(space: &Superspace<S>, f: &RealPoly<S>, center: &SuperPoint<S>) -> Result<QsPoly<S>> {
    let qs = taylor_coefficients(space, f, center, f.degree())?;
    let back = qs_to_real(space, &qs, center)?;
    if !back.sub(f).is_negligible(zero_tol(f)) {
        return Err(Error::NotQs("expansion in y and Z_k(theta) does not reproduce the polynomial".into()));
    }
    Ok(qs)
}

pub fn laplacian<S: Scalar>(f: &RealPoly<S>) -> RealPoly<S> {
    f.laplacian()
}

/// Central-difference first partials of `f` along every real coordinate.
pub fn fd_partials<F>(space: &Superspace<f64>, f: F, x: &SuperPoint<f64>, h: f64) -> Vec<AlgebraElement<f64>>
where
    F: Fn(&SuperPoint<f64>) -> AlgebraElement<f64>,
{
    let flat = x.flatten();
    (0..flat.len())
        .map(|a| {
            let mut plus = flat.clone();
            let mut minus = flat.clone();
            plus[a] += h;
            minus[a] -= h;
            let fp = f(&SuperPoint::from_flat(space, &plus).expect("same length"));
            let fm = f(&SuperPoint::from_flat(space, &minus).expect("same length"));
            (fp - fm).scale(&(0.5 / h))
        })
        .collect()
}

/// `d''` components of a black-box function by central differences.
pub fn fd_d_second<F>(space: &Superspace<f64>, f: F, x: &SuperPoint<f64>, h: f64) -> Vec<(Direction, AlgebraElement<f64>)>
where
    F: Fn(&SuperPoint<f64>) -> AlgebraElement<f64>,
{
    let partials = fd_partials(space, f, x, h);
    let t = space.table();
    assemble_d_second(
        space,
        &space.d_second_directions(),
        |a| partials[a].clone(),
        |dj, d0, e| dj - t.mul(e, &d0),
        |dt, ds, a| dt - t.mul(&ds, a),
    )
}

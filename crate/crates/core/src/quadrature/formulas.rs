use rand::Rng;
use serde::Serialize;

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::exec;
use crate::kernels::{kernel_k, omega0_eval, omega1_eval, HyperForm};
use crate::quadrature::{
    mc_mean, sample_ball, sample_direction, sphere_area, unit_ball_volume, BallDomain, Estimate, Method,
    PolydiskDomain, QuadratureSpec, MC_BLOCK,
};
use crate::superfunc::{d_second, eval_qs, qs_to_real, taylor_coefficients, Block, QsPoly, RealPoly, SuperPoint, Superspace};

/// `sum_a (-1)^a c_a nu_a`: the density of `omega` against `dS` on a
/// hypersurface with outward unit normal `nu`.
pub fn boundary_contract(w: &HyperForm, nu: &[f64]) -> AlgebraElement<f64> {
    let mut out = AlgebraElement::zero(w.coeff(0).dim());
    for (a, (c, n)) in w.coeffs().iter().zip(nu).enumerate() {
        let s = if a % 2 == 0 { *n } else { -*n };
        out.add_scaled(&s, c);
    }
    out
}

fn finite(e: Estimate) -> Result<Estimate> {
    if e.value.coeffs().iter().all(|v| v.is_finite()) && e.stderr.is_finite() {
        Ok(e)
    } else {
        Err(Error::SingularPoint)
    }
}

fn nan(dim: usize) -> AlgebraElement<f64> {
    AlgebraElement::new(vec![f64::NAN; dim])
}

/// `int_{dD} f(x) kform(x)` over a sphere, `f` multiplied on the left.
pub fn boundary_integral<F, K>(space: &Superspace<f64>, f: F, kform: K, domain: &BallDomain, q: &QuadratureSpec) -> Result<Estimate>
where
    F: Fn(&SuperPoint<f64>) -> AlgebraElement<f64> + Sync + Send,
    K: Fn(&SuperPoint<f64>) -> Result<HyperForm> + Sync + Send,
{
    q.check()?;
    let t = space.table();
    let n = space.real_dim();
    let center = domain.center.flatten();
    let r = domain.radius;
    let integrand = |nu: &[f64]| -> AlgebraElement<f64> {
        let x: Vec<f64> = center.iter().zip(nu).map(|(c, v)| c + r * v).collect();
        let x = SuperPoint::from_flat(space, &x).expect("matching length");
        match kform(&x) {
            Ok(w) => t.mul(&f(&x), &boundary_contract(&w, nu)),
            Err(_) => nan(t.dim()),
        }
    };
    match q.method {
        Method::MonteCarlo => {
            let e = mc_mean(t.dim(), q.samples, q.seed, 1, q.execution, |rngs| integrand(&sample_direction(n, &mut rngs[0])));
            finite(e.scale(sphere_area(n, r)))
        }
        Method::CircleTrapezoid => {
            if n != 2 {
                return Err(Error::InvalidArgument(format!("circle_trapezoid needs a 1-sphere, ambient dimension is {n}")));
            }
            let m = q.samples;
            let values = exec::map_indexed(q.execution, m, |k| {
                let a = 2.0 * std::f64::consts::PI * k as f64 / m as f64;
                integrand(&[a.cos(), a.sin()])
            });
            let sum = values.iter().fold(t.zero(), |acc, v| acc + v.clone());
            finite(Estimate::exact(sum.scale(&(2.0 * std::f64::consts::PI * r / m as f64))))
        }
    }
}

fn check_inside(domain: &BallDomain, x: &SuperPoint<f64>) -> Result<()> {
    if domain.contains(x) {
        Ok(())
    } else {
        Err(Error::PointOutsideDomain)
    }
}

/// Boundary term of the representation formula for a qS polynomial (its
/// volume term vanishes): `f(x') = int_{dD} f(x) K(x, x')`.
pub fn reproduce(space: &Superspace<f64>, f: &QsPoly<f64>, x_prime: &SuperPoint<f64>, domain: &BallDomain, q: &QuadratureSpec) -> Result<Estimate> {
    f.check_space(space)?;
    check_inside(domain, x_prime)?;
    let origin = SuperPoint::origin(space);
    boundary_integral(
        space,
        |x| eval_qs(space, f, x, &origin).expect("shape checked"),
        |x| kernel_k(space, x, x_prime),
        domain,
        q,
    )
}

/// Both terms of `f(x') = int_{dD} f K - int_D d''f ∧ K`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VolumeRepresentation {
    pub value: AlgebraElement<f64>,
    pub stderr: f64,
    pub boundary: Estimate,
    pub volume: Estimate,
}

/// Representation of a general polynomial. The volume integrand
/// `sum_h (-1)^h g_h(x) c_h(x, x')` is integrated in polar coordinates about
/// `x'`, which cancels the `|x - x'|^{1-N}` singularity of the kernel;
/// `volume_q.samples` integrand evaluations are spent as antithetic pairs.
pub fn represent_with_volume(
    space: &Superspace<f64>,
    f: &RealPoly<f64>,
    x_prime: &SuperPoint<f64>,
    domain: &BallDomain,
    boundary_q: &QuadratureSpec,
    volume_q: &QuadratureSpec,
) -> Result<VolumeRepresentation> {
    check_inside(domain, x_prime)?;
    volume_q.check()?;
    let t = space.table();
    let n = space.real_dim();
    let boundary = boundary_integral(space, |x| f.eval(&x.flatten()), |x| kernel_k(space, x, x_prime), domain, boundary_q)?;
    let comps: Vec<(usize, RealPoly<f64>)> = d_second(space, f)
        .into_iter()
        .filter(|(_, g)| !g.is_zero())
        .map(|(d, g)| (space.direction_coord(d), g))
        .collect();
    let volume = if comps.is_empty() {
        Estimate::exact(t.zero())
    } else {
        let xp = x_prime.flatten();
        let offset: Vec<f64> = xp.iter().zip(domain.center.flatten()).map(|(a, c)| a - c).collect();
        let off2: f64 = offset.iter().map(|v| v * v).sum();
        let area = sphere_area(n, 1.0);
        let sample = |u: &[f64], fraction: f64| -> AlgebraElement<f64> {
            let b: f64 = offset.iter().zip(u).map(|(a, v)| a * v).sum();
            let exit = -b + (b * b - (off2 - domain.radius * domain.radius)).sqrt();
            let s = fraction * exit;
            let x: Vec<f64> = xp.iter().zip(u).map(|(a, v)| a + s * v).collect();
            let point = SuperPoint::from_flat(space, &x).expect("matching length");
            let k = match kernel_k(space, &point, x_prime) {
                Ok(k) => k,
                Err(_) => return nan(t.dim()),
            };
            let mut acc = t.zero();
            for (h, g) in &comps {
                let sign = if h % 2 == 0 { 1.0 } else { -1.0 };
                acc.add_scaled(&sign, &t.mul(&g.eval(&x), k.coeff(*h)));
            }
            acc.scale(&(area * exit * s.powi(n as i32 - 1)))
        };
        // antithetic pairs (u, -u): the leading angular term cancels
        let pairs = volume_q.samples.div_ceil(2);
        let e = mc_mean(t.dim(), pairs, volume_q.seed, 1, volume_q.execution, |rngs| {
            let rng = &mut rngs[0];
            let u = sample_direction(n, rng);
            let fraction = 1.0 - rng.gen::<f64>();
            let back: Vec<f64> = u.iter().map(|v| -v).collect();
            (sample(&u, fraction) + sample(&back, fraction)).scale(&0.5)
        });
        finite(e)?
    };
    let total = boundary.sub(&volume);
    Ok(VolumeRepresentation { value: total.value, stderr: total.stderr, boundary, volume })
}

/// One factor sphere of the distinguished boundary.
struct Factor {
    block: Block,
    range: std::ops::Range<usize>,
    radius: f64,
}

fn factors(space: &Superspace<f64>, domain: &PolydiskDomain) -> Vec<Factor> {
    space
        .blocks()
        .into_iter()
        .map(|b| Factor {
            block: b,
            range: space.block_range(b),
            radius: match b {
                Block::Even(i) => domain.even_radii[i],
                Block::Odd(l) => domain.odd_radii[l],
            },
        })
        .collect()
}

/// Flat point of the distinguished boundary for per-factor unit normals.
fn boundary_point(center: &[f64], factors: &[Factor], normals: &[Vec<f64>]) -> Vec<f64> {
    let mut x = center.to_vec();
    for (fac, nu) in factors.iter().zip(normals) {
        for (slot, v) in x[fac.range.clone()].iter_mut().zip(nu) {
            *slot += fac.radius * v;
        }
    }
    x
}

/// Deterministic node sets on the distinguished boundary: per-factor normals
/// for the sample with index `k`, either trapezoid grid nodes or random
/// directions drawn from independent sub-streams.
fn grid_normals(factors: &[Factor], nodes: usize, mut k: usize) -> Vec<Vec<f64>> {
    factors
        .iter()
        .map(|_| {
            let a = 2.0 * std::f64::consts::PI * (k % nodes) as f64 / nodes as f64;
            k /= nodes;
            vec![a.cos(), a.sin()]
        })
        .collect()
}

fn check_circles(factors: &[Factor]) -> Result<()> {
    if factors.iter().any(|f| f.range.len() != 2) {
        return Err(Error::InvalidArgument("circle_trapezoid needs every factor to be a 1-sphere".into()));
    }
    Ok(())
}

/// Iterated Cauchy formula over the distinguished boundary of a polydisk:
/// `f(x) = int f(w, tau) prod_j K_0(w_j - y_j) prod_l K_1(tau_l - theta_l)`,
/// each kernel contracted with its own sphere's normal.
pub fn polydisk_reproduce(
    space: &Superspace<f64>,
    f: &QsPoly<f64>,
    domain: &PolydiskDomain,
    x: &SuperPoint<f64>,
    q: &QuadratureSpec,
) -> Result<Estimate> {
    f.check_space(space)?;
    q.check()?;
    if !domain.contains(x) {
        return Err(Error::PointOutsideDomain);
    }
    let t = space.table();
    let facs = factors(space, domain);
    let center = domain.center.flatten();
    let xf = x.flatten();
    let origin = SuperPoint::origin(space);
    let p = t.p();
    let integrand = |normals: &[Vec<f64>]| -> AlgebraElement<f64> {
        let w = boundary_point(&center, &facs, normals);
        let point = SuperPoint::from_flat(space, &w).expect("matching length");
        let mut acc = eval_qs(space, f, &point, &origin).expect("shape checked");
        for (fac, nu) in facs.iter().zip(normals) {
            let mut diff = vec![0.0; t.dim()];
            let local: Vec<f64> = fac.range.clone().map(|a| w[a] - xf[a]).collect();
            let kernel = match fac.block {
                Block::Even(_) => {
                    diff[..=p].copy_from_slice(&local);
                    omega0_eval(t, &AlgebraElement::new(diff))
                }
                Block::Odd(_) => {
                    diff[p + 1..].copy_from_slice(&local);
                    omega1_eval(t, space.slices().expect("odd block needs slices"), &AlgebraElement::new(diff))
                }
            };
            match kernel {
                Ok(k) => acc = t.mul(&acc, &boundary_contract(&k, nu)),
                Err(_) => return nan(t.dim()),
            }
        }
        acc
    };
    let area: f64 = facs.iter().map(|f| sphere_area(f.range.len(), f.radius)).product();
    match q.method {
        Method::MonteCarlo => {
            let e = mc_mean(t.dim(), q.samples, q.seed, facs.len(), q.execution, |rngs| {
                let normals: Vec<_> = facs.iter().zip(rngs.iter_mut()).map(|(f, r)| sample_direction(f.range.len(), r)).collect();
                integrand(&normals)
            });
            finite(e.scale(area))
        }
        Method::CircleTrapezoid => {
            check_circles(&facs)?;
            let total = q.samples.pow(facs.len() as u32);
            let values = exec::map_indexed(q.execution, total, |k| integrand(&grid_normals(&facs, q.samples, k)));
            let sum = values.iter().fold(t.zero(), |acc, v| acc + v.clone());
            finite(Estimate::exact(sum.scale(&(area / total as f64))))
        }
    }
}

/// Estimate of `sup ||f||` over the distinguished boundary from the nodes
/// of `q`.
pub fn polydisk_sup(space: &Superspace<f64>, f: &QsPoly<f64>, domain: &PolydiskDomain, q: &QuadratureSpec) -> Result<f64> {
    f.check_space(space)?;
    q.check()?;
    let facs = factors(space, domain);
    let center = domain.center.flatten();
    let origin = SuperPoint::origin(space);
    let norm_at = |normals: &[Vec<f64>]| {
        let w = boundary_point(&center, &facs, normals);
        eval_qs(space, f, &SuperPoint::from_flat(space, &w).expect("matching length"), &origin).expect("shape checked").norm()
    };
    let maxima = match q.method {
        Method::MonteCarlo => {
            let blocks = q.samples.div_ceil(MC_BLOCK);
            exec::map_indexed(q.execution, blocks, |b| {
                let mut rngs = super::block_rngs(q.seed, facs.len(), b);
                let count = MC_BLOCK.min(q.samples - b * MC_BLOCK);
                (0..count)
                    .map(|_| {
                        let normals: Vec<_> = facs.iter().zip(rngs.iter_mut()).map(|(f, r)| sample_direction(f.range.len(), r)).collect();
                        norm_at(&normals)
                    })
                    .fold(0.0, f64::max)
            })
        }
        Method::CircleTrapezoid => {
            check_circles(&facs)?;
            let total = q.samples.pow(facs.len() as u32);
            exec::map_indexed(q.execution, total, |k| norm_at(&grid_normals(&facs, q.samples, k)))
        }
    };
    Ok(maxima.into_iter().fold(0.0, f64::max))
}

/// Extension of boundary data by `F(x') = int_{dOmega} f(w) K^(0)(w, x')`.
pub fn hartogs_extend<F>(space: &Superspace<f64>, f: F, domain: &BallDomain, x_prime: &SuperPoint<f64>, q: &QuadratureSpec) -> Result<Estimate>
where
    F: Fn(&SuperPoint<f64>) -> AlgebraElement<f64> + Sync + Send,
{
    if space.n() + space.m() < 2 {
        return Err(Error::DimensionTooSmall(space.n() + space.m()));
    }
    check_inside(domain, x_prime)?;
    boundary_integral(space, f, |x| kernel_k(space, x, x_prime), domain, q)
}

/// `int_{|x - c| <= R} g(x) dx` by uniform ball sampling.
pub fn ball_volume_integral<G>(n: usize, center: &[f64], radius: f64, dim: usize, g: G, q: &QuadratureSpec) -> Result<Estimate>
where
    G: Fn(&[f64]) -> AlgebraElement<f64> + Sync + Send,
{
    q.check()?;
    let e = mc_mean(dim, q.samples, q.seed, 1, q.execution, |rngs| {
        let x: Vec<f64> = sample_ball(n, radius, &mut rngs[0]).iter().zip(center).map(|(v, c)| v + c).collect();
        g(&x)
    });
    finite(e.scale(unit_ball_volume(n) * radius.powi(n as i32)))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CauchyBoundRow {
    /// Multi-index `[I, J_1, ..., J_r]`.
    pub order: Vec<u32>,
    /// `||d^{I,J} f(center)|| = I! J! ||A_{I,J}||`.
    pub lhs: f64,
    /// `I! J! sup ||f|| r^{-[I,J]}`.
    pub bound: f64,
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CauchyReport {
    pub sup: f64,
    pub constant: f64,
    pub rows: Vec<CauchyBoundRow>,
    pub pass: bool,
}

/// Compares exact derivatives at the polydisk center with the Cauchy bound
/// built from a sampled `sup ||f||` on the distinguished boundary.
///
/// Radii per multi-index slot: `r_i` for `y_i`, `rho_l` for `Z_k(theta_l)`.
pub fn cauchy_bounds_check(
    space: &Superspace<f64>,
    f: &QsPoly<f64>,
    domain: &PolydiskDomain,
    orders: &[Vec<u32>],
    sup_q: &QuadratureSpec,
    constant: f64,
) -> Result<CauchyReport> {
    f.check_space(space)?;
    let nv = space.qs_vars();
    if let Some(bad) = orders.iter().find(|o| o.len() != nv) {
        return Err(Error::DimensionMismatch { expected: nv, found: bad.len() });
    }
    let max_order = orders.iter().map(|o| o.iter().sum::<u32>()).max().unwrap_or(0);
    let real = qs_to_real(space, f, &SuperPoint::origin(space))?;
    let coeffs = taylor_coefficients(space, &real, &domain.center, max_order)?;
    let sup = polydisk_sup(space, f, domain, sup_q)?;
    let radius = |v: usize| {
        if v < space.n() {
            domain.even_radii[v]
        } else {
            domain.odd_radii[(v - space.n()) % space.m()]
        }
    };
    let rows: Vec<CauchyBoundRow> = orders
        .iter()
        .map(|order| {
            let fact: f64 = order.iter().map(|&k| (1..=k).map(f64::from).product::<f64>()).product();
            let a = coeffs.terms().get(order).map_or(0.0, |c| c.norm());
            let lhs = fact * a;
            let rpow: f64 = order.iter().enumerate().map(|(v, &k)| radius(v).powi(k as i32)).product();
            let bound = fact * sup / rpow;
            let ratio = if lhs == 0.0 { 0.0 } else { lhs / bound };
            CauchyBoundRow { order: order.clone(), lhs, bound, ratio }
        })
        .collect();
    let pass = rows.iter().all(|r| r.ratio.is_finite() && r.ratio <= constant);
    Ok(CauchyReport { sup, constant, rows, pass })
}

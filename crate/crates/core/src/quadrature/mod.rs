//! Domains, sphere and ball Monte-Carlo integration, and the integral
//! representation formulas.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::superfunc::{SuperPoint, Superspace};

mod formulas;

pub use formulas::{
    ball_volume_integral, boundary_contract, boundary_integral, cauchy_bounds_check, hartogs_extend,
    polydisk_reproduce, polydisk_sup, reproduce, represent_with_volume, CauchyBoundRow, CauchyReport,
    VolumeRepresentation,
};

/// Samples per Monte-Carlo block; each block draws from its own ChaCha
/// stream, so results do not depend on how blocks are scheduled.
pub const MC_BLOCK: usize = 4096;

/// Volume of the unit ball in `R^d`, `pi^{d/2} / Gamma(d/2 + 1)`.
pub fn unit_ball_volume(d: usize) -> f64 {
    match d {
        0 => 1.0,
        1 => 2.0,
        _ => 2.0 * PI / d as f64 * unit_ball_volume(d - 2),
    }
}

/// Area of the sphere of radius `r` in `R^d`, `d Vol(B_d) r^{d-1}`.
pub fn sphere_area(d: usize, r: f64) -> f64 {
    d as f64 * unit_ball_volume(d) * r.powi(d as i32 - 1)
}

/// Euclidean ball `{x : |x - center| < radius}` in the superspace.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BallDomain {
    pub center: SuperPoint<f64>,
    pub radius: f64,
}

impl BallDomain {
    pub fn new(center: SuperPoint<f64>, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidArgument(format!("radius must be positive, got {radius}")));
        }
        Ok(Self { center, radius })
    }

    pub fn contains(&self, x: &SuperPoint<f64>) -> bool {
        x.sub(&self.center).norm() < self.radius
    }
}

/// Product of balls, one per hypervariable: radii `r_i` for the `y_i` (in
/// `Lambda_0`) and `rho_l` for the `theta_l` (in `Lambda_1`).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PolydiskDomain {
    pub center: SuperPoint<f64>,
    pub even_radii: Vec<f64>,
    pub odd_radii: Vec<f64>,
}

impl PolydiskDomain {
    pub fn new(space: &Superspace<f64>, center: SuperPoint<f64>, even_radii: Vec<f64>, odd_radii: Vec<f64>) -> Result<Self> {
        if even_radii.len() != space.n() {
            return Err(Error::DimensionMismatch { expected: space.n(), found: even_radii.len() });
        }
        if odd_radii.len() != space.m() {
            return Err(Error::DimensionMismatch { expected: space.m(), found: odd_radii.len() });
        }
        if even_radii.iter().chain(&odd_radii).any(|r| !(*r > 0.0 && r.is_finite())) {
            return Err(Error::InvalidArgument("polydisk radii must be positive".into()));
        }
        Ok(Self { center, even_radii, odd_radii })
    }

    /// True when every component lies strictly inside its ball.
    pub fn contains(&self, x: &SuperPoint<f64>) -> bool {
        let d = x.sub(&self.center);
        d.y().iter().zip(&self.even_radii).all(|(v, r)| v.norm() < *r)
            && d.theta().iter().zip(&self.odd_radii).all(|(v, r)| v.norm() < *r)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    MonteCarlo,
    /// Equispaced nodes on circles; only for one-dimensional spheres.
    CircleTrapezoid,
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "monte_carlo" | "mc" => Ok(Self::MonteCarlo),
            "circle_trapezoid" | "trapezoid" => Ok(Self::CircleTrapezoid),
            other => Err(Error::InvalidArgument(format!("unknown quadrature method `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QuadratureSpec {
    pub method: Method,
    /// Monte-Carlo samples, or trapezoid nodes per circle.
    pub samples: usize,
    pub seed: u64,
    pub execution: Execution,
}

impl QuadratureSpec {
    pub fn monte_carlo(samples: usize, seed: u64) -> Self {
        Self { method: Method::MonteCarlo, samples, seed, execution: Execution::default() }
    }

    pub fn trapezoid(nodes: usize) -> Self {
        Self { method: Method::CircleTrapezoid, samples: nodes, seed: 0, execution: Execution::default() }
    }

    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }

    fn check(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::InvalidArgument("sample count must be positive".into()));
        }
        Ok(())
    }
}

/// Quadrature result. `stderr` is the largest per-coefficient standard
/// error (zero for deterministic rules).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Estimate {
    pub value: AlgebraElement<f64>,
    pub stderr: f64,
}

impl Estimate {
    pub fn exact(value: AlgebraElement<f64>) -> Self {
        Self { value, stderr: 0.0 }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { value: self.value.scale(&s), stderr: self.stderr * s.abs() }
    }

    /// Sum of independent estimates; standard errors add in quadrature.
    pub fn add(&self, other: &Self) -> Self {
        Self { value: &self.value + &other.value, stderr: self.stderr.hypot(other.stderr) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1.0))
    }
}

/// Running moments of one block (or of a merged set of blocks).
#[derive(Clone, Debug)]
struct Moments {
    count: f64,
    mean: Vec<f64>,
    m2: Vec<f64>,
}

impl Moments {
    fn new(dim: usize) -> Self {
        Self { count: 0.0, mean: vec![0.0; dim], m2: vec![0.0; dim] }
    }

    fn push(&mut self, x: &[f64]) {
        self.count += 1.0;
        for ((m, s), v) in self.mean.iter_mut().zip(&mut self.m2).zip(x) {
            let delta = v - *m;
            *m += delta / self.count;
            *s += delta * (v - *m);
        }
    }

    fn merge(&mut self, other: &Self) {
        let total = self.count + other.count;
        if other.count == 0.0 {
            return;
        }
        for k in 0..self.mean.len() {
            let delta = other.mean[k] - self.mean[k];
            self.mean[k] += delta * other.count / total;
            self.m2[k] += other.m2[k] + delta * delta * self.count * other.count / total;
        }
        self.count = total;
    }
}

/// Per-block random streams: `streams` independent ChaCha generators, one
/// per sub-seed, all positioned on the block's stream.
fn block_rngs(seed: u64, streams: usize, block: usize) -> Vec<ChaCha8Rng> {
    (0..streams)
        .map(|j| {
            let sub = seed ^ (j as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
            let mut rng = ChaCha8Rng::seed_from_u64(sub);
            rng.set_stream(block as u64);
            rng
        })
        .collect()
}

/// Sample mean of `f` over `samples` draws, with standard error of the mean.
///
/// Bit-identical for a given seed regardless of execution mode or thread
/// count: blocks use fixed streams and are merged in block order.
pub fn mc_mean<F>(dim: usize, samples: usize, seed: u64, streams: usize, execution: Execution, f: F) -> Estimate
where
    F: Fn(&mut [ChaCha8Rng]) -> AlgebraElement<f64> + Sync + Send,
{
    let blocks = samples.div_ceil(MC_BLOCK);
    let partial = exec::map_indexed(execution, blocks, |b| {
        let mut rngs = block_rngs(seed, streams, b);
        let count = MC_BLOCK.min(samples - b * MC_BLOCK);
        let mut m = Moments::new(dim);
        for _ in 0..count {
            m.push(f(&mut rngs).coeffs());
        }
        m
    });
    let mut total = Moments::new(dim);
    for m in &partial {
        total.merge(m);
    }
    let n = total.count;
    let stderr = if n > 1.0 {
        total.m2.iter().map(|s| (s / (n - 1.0) / n).sqrt()).fold(0.0, f64::max)
    } else {
        0.0
    };
    Estimate { value: AlgebraElement::new(total.mean), stderr }
}

/// Uniform direction on the unit sphere of `R^d` (normalized Gaussian).
pub fn sample_direction<R: Rng>(d: usize, rng: &mut R) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..d).map(|_| rng.sample(StandardNormal)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-300 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

/// Uniform point of the ball of radius `r` in `R^d`: Gaussian direction and
/// radius `r U^{1/d}`.
pub fn sample_ball<R: Rng>(d: usize, r: f64, rng: &mut R) -> Vec<f64> {
    let u: f64 = rng.gen();
    let t = r * u.powf(1.0 / d as f64);
    sample_direction(d, rng).into_iter().map(|x| x * t).collect()
}

/// Uniform point of the shell `rmin <= |x| <= rmax` in `R^d`.
pub fn sample_shell<R: Rng>(d: usize, rmin: f64, rmax: f64, rng: &mut R) -> Vec<f64> {
    let u: f64 = rng.gen();
    let lo = rmin.powi(d as i32);
    let hi = rmax.powi(d as i32);
    let t = (lo + u * (hi - lo)).powf(1.0 / d as f64);
    sample_direction(d, rng).into_iter().map(|x| x * t).collect()
}

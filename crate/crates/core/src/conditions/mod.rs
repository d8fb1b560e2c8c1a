//! Conditions (A0) and (A1), square roots of `-1` in the even part and the
//! induced complex structure.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{AlgebraElement, Builtin, StructureTable};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::linalg;
use crate::scalar::Scalar;

/// Float-mode tolerance for (A0)/(A1) residuals and centrality checks.
pub const CONDITION_TOL: f64 = 1e-12;

/// Slice decomposition `1 = s_1 < s_2 < ... < s_{r+1} = q + 1` of the odd
/// basis together with the even multipliers `a_1, ..., a_q`.
///
/// Breakpoints and multiplier indices are 1-based, as `eps_1 .. eps_q`.
/// The requirement `a_{s_k} = e_0` is not enforced here; [`verify_a1`]
/// reports it.
#[derive(Clone, Debug, PartialEq)]
pub struct SliceSpec<S = f64> {
    breakpoints: Vec<usize>,
    multipliers: Vec<AlgebraElement<S>>,
}

impl<S: Scalar> SliceSpec<S> {
    pub fn new(t: &StructureTable<S>, breakpoints: Vec<usize>, multipliers: Vec<AlgebraElement<S>>) -> Result<Self> {
        let q = t.q();
        if breakpoints.first() != Some(&1) {
            return Err(Error::InvalidSlice("first breakpoint must be 1".into()));
        }
        let mut full = breakpoints;
        if full.last() != Some(&(q + 1)) {
            full.push(q + 1);
        }
        if full.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSlice("breakpoints must be strictly increasing and end at q + 1".into()));
        }
        if multipliers.len() != q {
            return Err(Error::InvalidSlice(format!("expected {q} multipliers, found {}", multipliers.len())));
        }
        for (j, a) in multipliers.iter().enumerate() {
            t.check_dim(a)?;
            if !a.is_even(t.p()) {
                return Err(Error::InvalidSlice(format!("multiplier a_{} is not even", j + 1)));
            }
        }
        Ok(Self { breakpoints: full, multipliers })
    }

    /// The empty decomposition of a purely even algebra.
    pub fn trivial(t: &StructureTable<S>) -> Self {
        assert_eq!(t.q(), 0, "trivial slice spec requires q = 0");
        Self { breakpoints: vec![1], multipliers: Vec::new() }
    }

    /// Number of slices `r`.
    pub fn r(&self) -> usize {
        self.breakpoints.len() - 1
    }

    pub fn q(&self) -> usize {
        self.multipliers.len()
    }

    /// Breakpoints `s_1, ..., s_{r+1}`.
    pub fn breakpoints(&self) -> &[usize] {
        &self.breakpoints
    }

    /// Leading index `s_k` of slice `k` (0-based slice, 1-based index).
    pub fn leader(&self, k: usize) -> usize {
        self.breakpoints[k]
    }

    /// 1-based odd indices of slice `k` (0-based).
    pub fn slice(&self, k: usize) -> std::ops::Range<usize> {
        self.breakpoints[k]..self.breakpoints[k + 1]
    }

    /// 0-based slice containing the 1-based odd index `t`.
    pub fn slice_of(&self, t: usize) -> usize {
        self.breakpoints.iter().rposition(|&s| s <= t).expect("index >= 1")
    }

    pub fn is_leader(&self, t: usize) -> bool {
        self.breakpoints[..self.r()].contains(&t)
    }

    /// Multiplier `a_t` for the 1-based odd index `t`.
    pub fn multiplier(&self, t: usize) -> &AlgebraElement<S> {
        &self.multipliers[t - 1]
    }

    pub fn multipliers(&self) -> &[AlgebraElement<S>] {
        &self.multipliers
    }

    pub fn map_scalar<T: Scalar>(&self, f: impl Fn(&S) -> T + Copy) -> SliceSpec<T> {
        SliceSpec {
            breakpoints: self.breakpoints.clone(),
            multipliers: self.multipliers.iter().map(|a| a.map(f)).collect(),
        }
    }

    pub fn to_f64(&self) -> SliceSpec<f64> {
        self.map_scalar(Scalar::to_f64)
    }
}

/// Default (A0) basis: the table's own even basis.
pub fn standard_even_basis<S: Scalar>(t: &StructureTable<S>) -> Vec<AlgebraElement<S>> {
    (0..=t.p()).map(|i| t.basis(i)).collect()
}

/// Default odd basis: the table's own `eps_1, ..., eps_q`.
pub fn standard_odd_basis<S: Scalar>(t: &StructureTable<S>) -> Vec<AlgebraElement<S>> {
    (1..=t.q()).map(|l| t.basis(t.p() + l)).collect()
}

/// Slice decomposition shipped with a built-in algebra, when one is known.
///
/// The Grassmann family pairs the odd basis as `(eta_S, i eta_S)` with
/// multipliers `(1, i)`; the even-only algebras use the empty decomposition.
pub fn default_slices<S: Scalar>(builtin: Builtin, t: &StructureTable<S>) -> Option<SliceSpec<S>> {
    match builtin {
        Builtin::Complex | Builtin::Hyperbolic => Some(SliceSpec::trivial(t)),
        Builtin::ComplexGrassmann(0) => Some(SliceSpec::trivial(t)),
        Builtin::ComplexGrassmann(_) => {
            let q = t.q();
            let breakpoints = (0..q / 2).map(|k| 2 * k + 1).collect();
            let multipliers = (0..q).map(|j| if j % 2 == 0 { t.unit() } else { t.basis(1) }).collect();
            SliceSpec::new(t, breakpoints, multipliers).ok()
        }
        Builtin::PaperTable => None,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Diagnostic {
    /// Which sub-condition failed: `span`, `leader_multiplier` or `slice_sum`.
    pub kind: String,
    pub indices: Vec<usize>,
    pub residual: f64,
}

/// JSON-shaped outcome of an (A0) or (A1) check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConditionReport {
    pub condition: String,
    pub pass: bool,
    pub residuals: Vec<f64>,
    pub diagnostics: Vec<Diagnostic>,
}

fn vanishes<S: Scalar>(a: &AlgebraElement<S>) -> bool {
    if S::EXACT {
        a.is_zero()
    } else {
        a.norm() < CONDITION_TOL
    }
}

fn check_independent<S: Scalar>(vectors: &[AlgebraElement<S>], what: &str) -> Result<()> {
    let m: linalg::Mat<S> = vectors.iter().map(|v| v.coeffs().to_vec()).collect();
    if !m.is_empty() && linalg::rank(&m) < vectors.len() {
        return Err(Error::NotABasis(format!("{what} vectors are linearly dependent")));
    }
    Ok(())
}

/// Checks `sum_k basis[k]^2 = 0` for a user-supplied even basis.
pub fn verify_a0<S: Scalar>(t: &StructureTable<S>, basis: &[AlgebraElement<S>]) -> Result<ConditionReport> {
    if basis.len() != t.even_dim() {
        return Err(Error::NotABasis(format!("expected {} even vectors, found {}", t.even_dim(), basis.len())));
    }
    for b in basis {
        t.check_dim(b)?;
        if !b.is_even(t.p()) {
            return Err(Error::NotABasis("(A0) basis vectors must be even".into()));
        }
    }
    if basis[0] != t.unit() {
        return Err(Error::NotABasis("first (A0) basis vector must be e0".into()));
    }
    check_independent(basis, "(A0) basis")?;
    let sum = basis.iter().fold(t.zero(), |acc, b| acc + t.square(b));
    let pass = vanishes(&sum);
    let residual = sum.norm();
    let diagnostics = if pass {
        Vec::new()
    } else {
        vec![Diagnostic { kind: "square_sum".into(), indices: (0..basis.len()).collect(), residual }]
    };
    Ok(ConditionReport { condition: "A0".into(), pass, residuals: vec![residual], diagnostics })
}

/// Checks the slice conditions: `eps_j = a_j eps_{s_k}` inside each slice,
/// `a_{s_k} = e0`, and `sum_{j in slice} a_j^2 = 0`.
///
/// `residuals` holds the per-slice square-sum norms.
pub fn verify_a1<S: Scalar>(
    t: &StructureTable<S>,
    eps_basis: &[AlgebraElement<S>],
    s: &SliceSpec<S>,
) -> Result<ConditionReport> {
    if eps_basis.len() != t.q() {
        return Err(Error::NotABasis(format!("expected {} odd vectors, found {}", t.q(), eps_basis.len())));
    }
    for e in eps_basis {
        t.check_dim(e)?;
        if !e.is_odd(t.p()) {
            return Err(Error::NotABasis("(A1) basis vectors must be odd".into()));
        }
    }
    check_independent(eps_basis, "(A1) basis")?;
    if s.q() != t.q() {
        return Err(Error::InvalidSlice(format!("slice spec has {} multipliers, algebra has q = {}", s.q(), t.q())));
    }
    let mut diagnostics = Vec::new();
    let mut residuals = Vec::new();
    for k in 0..s.r() {
        let lead = s.leader(k);
        let a_lead = s.multiplier(lead);
        let unit_defect = a_lead - &t.unit();
        if !vanishes(&unit_defect) {
            diagnostics.push(Diagnostic {
                kind: "leader_multiplier".into(),
                indices: vec![k + 1, lead],
                residual: unit_defect.norm(),
            });
        }
        let mut sum = t.zero();
        for j in s.slice(k) {
            let a = s.multiplier(j);
            let defect = &eps_basis[j - 1] - &t.mul(a, &eps_basis[lead - 1]);
            if !vanishes(&defect) {
                diagnostics.push(Diagnostic { kind: "span".into(), indices: vec![k + 1, j], residual: defect.norm() });
            }
            sum += &t.square(a);
        }
        let residual = sum.norm();
        if !vanishes(&sum) {
            diagnostics.push(Diagnostic { kind: "slice_sum".into(), indices: vec![k + 1], residual });
        }
        residuals.push(residual);
    }
    Ok(ConditionReport { condition: "A1".into(), pass: diagnostics.is_empty(), residuals, diagnostics })
}

/// Newton search budget for [`find_sqrt_minus_one`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NewtonConfig {
    pub starts: usize,
    pub iterations: usize,
    pub damping: f64,
    pub seed: u64,
    pub execution: Execution,
}

impl Default for NewtonConfig {
    fn default() -> Self {
        Self { starts: 64, iterations: 100, damping: 0.5, seed: 0x5eed_1234, execution: Execution::default() }
    }
}

/// Result of a successful square-root search.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SqrtMinusOne {
    pub root: AlgebraElement<f64>,
    pub residual: f64,
    /// Index of the first successful start under the seeded ordering.
    pub start: usize,
    pub iterations: usize,
}

/// Newton iteration on `F(a) = a^2 + e0` over the even part, from seeded
/// random starts. The first start (in seed order) to converge wins.
pub fn find_sqrt_minus_one<S: Scalar>(t: &StructureTable<S>, config: &NewtonConfig) -> Result<SqrtMinusOne> {
    let t = t.to_f64();
    let even = t.even_dim();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let starts: Vec<Vec<f64>> =
        (0..config.starts).map(|_| (0..even).map(|_| rng.gen_range(-2.0..2.0)).collect()).collect();
    let outcomes = exec::map_indexed(config.execution, starts.len(), |i| newton_from(&t, &starts[i], config));
    let (start, (root, iterations)) = outcomes
        .into_iter()
        .enumerate()
        .find_map(|(i, o)| o.map(|o| (i, o)))
        .ok_or(Error::NotFound)?;
    let residual = (t.square(&root) + t.unit()).norm();
    for b in 0..t.dim() {
        let e = t.basis(b);
        if (t.mul(&root, &e) - t.mul(&e, &root)).norm() > CONDITION_TOL {
            return Err(Error::NotCentral(b));
        }
    }
    Ok(SqrtMinusOne { root, residual, start, iterations })
}

fn newton_from(t: &StructureTable<f64>, start: &[f64], config: &NewtonConfig) -> Option<(AlgebraElement<f64>, usize)> {
    let d = t.dim();
    let even = t.even_dim();
    let embed = |v: &[f64]| {
        let mut c = vec![0.0; d];
        c[..even].copy_from_slice(v);
        AlgebraElement::new(c)
    };
    let residual_of = |a: &AlgebraElement<f64>| t.square(a) + t.unit();
    let mut a = embed(start);
    let mut f = residual_of(&a);
    for iter in 0..config.iterations {
        let norm = f.norm();
        if norm < 1e-15 {
            return Some((a, iter));
        }
        let lm = t.left_mult_matrix(&a).ok()?;
        let jac = nalgebra::DMatrix::from_fn(even, even, |i, j| 2.0 * lm[i][j]);
        let rhs: Vec<f64> = f.coeffs()[..even].iter().map(|x| -x).collect();
        let delta = embed(&linalg::least_squares(&jac, &rhs));
        let mut step = 1.0;
        let mut accepted = false;
        for _ in 0..40 {
            let trial = &a + &delta.scale(&step);
            let ft = residual_of(&trial);
            if ft.norm() <= norm {
                a = trial;
                f = ft;
                accepted = true;
                break;
            }
            step *= config.damping;
        }
        if !accepted {
            break;
        }
    }
    (f.norm() < CONDITION_TOL).then_some((a, config.iterations))
}

/// Real basis of the algebra arranged in pairs `(b, iota b)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexStructure<S = f64> {
    pub iota: AlgebraElement<S>,
    pub pairs: Vec<(AlgebraElement<S>, AlgebraElement<S>)>,
}

impl<S: Scalar> ComplexStructure<S> {
    pub fn complex_dim(&self) -> usize {
        self.pairs.len()
    }
}

/// Builds the complex structure induced by a central square root of `-1`:
/// start from `(e0, iota)` and greedily adjoin `(b, iota b)` for each basis
/// vector `b` outside the current span.
pub fn complexify<S: Scalar>(t: &StructureTable<S>, iota: &AlgebraElement<S>) -> Result<ComplexStructure<S>> {
    t.check_dim(iota)?;
    let square_defect = t.square(iota) + t.unit();
    if !vanishes(&square_defect) {
        return Err(Error::NotASquareRoot(square_defect.norm()));
    }
    for b in 0..t.dim() {
        let e = t.basis(b);
        if !vanishes(&(t.mul(iota, &e) - t.mul(&e, iota))) {
            return Err(Error::NotCentral(b));
        }
    }
    let mut span: linalg::Mat<S> = Vec::new();
    let mut pairs = Vec::new();
    for b in 0..t.dim() {
        let e = t.basis(b);
        let mut trial = span.clone();
        trial.push(e.coeffs().to_vec());
        let before = span.len();
        if linalg::rank(&trial) == before {
            continue;
        }
        let ie = t.mul(iota, &e);
        trial.push(ie.coeffs().to_vec());
        if linalg::rank(&trial) != before + 2 {
            return Err(Error::OddDimension(before + 1));
        }
        span = trial;
        pairs.push((e, ie));
    }
    Ok(ComplexStructure { iota: iota.clone(), pairs })
}

#[cfg(test)]
mod tests;

//! Small dense linear algebra over [`Scalar`], with exact elimination for
//! rationals and SVD-based checks for floats.

use nalgebra::{DMatrix, DVector};

use crate::scalar::Scalar;

/// Relative pivot threshold for floating-point elimination.
pub const FLOAT_PIVOT_TOL: f64 = 1e-10;

/// Dense row-major matrix.
pub type Mat<S> = Vec<Vec<S>>;

fn pivot_threshold<S: Scalar>(m: &Mat<S>) -> f64 {
    if S::EXACT {
        0.0
    } else {
        let scale = m
            .iter()
            .flat_map(|r| r.iter())
            .map(|x| x.magnitude())
            .fold(0.0, f64::max);
        FLOAT_PIVOT_TOL * scale.max(f64::MIN_POSITIVE)
    }
}

fn is_negligible<S: Scalar>(x: &S, threshold: f64) -> bool {
    if S::EXACT {
        x.is_zero()
    } else {
        x.magnitude() <= threshold
    }
}

/// Reduced row echelon form; returns the reduced matrix and pivot columns.
pub fn rref<S: Scalar>(mut m: Mat<S>) -> (Mat<S>, Vec<usize>) {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let threshold = pivot_threshold(&m);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let best = (r..rows)
            .filter(|&i| !is_negligible(&m[i][c], threshold))
            .max_by(|&a, &b| m[a][c].magnitude().total_cmp(&m[b][c].magnitude()));
        let Some(best) = best else { continue };
        m.swap(r, best);
        let inv = S::one() / m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let factor = m[i][c].clone();
            for j in 0..cols {
                let delta = factor.clone() * m[r][j].clone();
                m[i][j] = m[i][j].clone() - delta;
            }
            if !S::EXACT {
                m[i][c] = S::zero();
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

pub fn rank<S: Scalar>(m: &Mat<S>) -> usize {
    rref(m.clone()).1.len()
}

/// Basis of the null space `{x : m x = 0}`.
pub fn kernel<S: Scalar>(m: &Mat<S>, cols: usize) -> Vec<Vec<S>> {
    if m.is_empty() {
        return (0..cols)
            .map(|c| (0..cols).map(|j| if j == c { S::one() } else { S::zero() }).collect())
            .collect();
    }
    let (reduced, pivots) = rref(m.clone());
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![S::zero(); cols];
            v[f] = S::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -reduced[row][f].clone();
            }
            v
        })
        .collect()
}

/// Solves the square system `a x = b`; `None` when `a` is singular.
pub fn solve<S: Scalar>(a: &Mat<S>, b: &[S]) -> Option<Vec<S>> {
    let n = a.len();
    let augmented: Mat<S> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (reduced, pivots) = rref(augmented);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(reduced.into_iter().map(|r| r[n].clone()).collect())
}

pub fn to_dmatrix<S: Scalar>(m: &Mat<S>) -> DMatrix<f64> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    DMatrix::from_fn(rows, cols, |i, j| m[i][j].to_f64())
}

/// Ratio of smallest to largest singular value (0 for the zero matrix).
pub fn singular_value_ratio(m: &DMatrix<f64>) -> f64 {
    let sv = m.clone().svd(false, false).singular_values;
    let max = sv.iter().copied().fold(0.0, f64::max);
    let min = sv.iter().copied().fold(f64::INFINITY, f64::min);
    if max == 0.0 {
        0.0
    } else {
        min / max
    }
}

/// Minimum-norm least-squares solution of `a x = b`.
pub fn least_squares(a: &DMatrix<f64>, b: &[f64]) -> Vec<f64> {
    let svd = a.clone().svd(true, true);
    let rhs = DVector::from_column_slice(b);
    let max_sv = svd.singular_values.iter().copied().fold(0.0, f64::max);
    svd.solve(&rhs, FLOAT_PIVOT_TOL * max_sv.max(f64::MIN_POSITIVE))
        .map(|x| x.iter().copied().collect())
        .unwrap_or_else(|_| vec![0.0; a.ncols()])
}

/// Modified Gram-Schmidt; drops vectors that become negligible.
pub fn orthonormalize(vectors: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for b in &basis {
            let dot: f64 = w.iter().zip(b).map(|(x, y)| x * y).sum();
            for (wi, bi) in w.iter_mut().zip(b) {
                *wi -= dot * bi;
            }
        }
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        let scale = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > FLOAT_PIVOT_TOL * scale.max(1.0) {
            basis.push(w.into_iter().map(|x| x / norm).collect());
        }
    }
    basis
}

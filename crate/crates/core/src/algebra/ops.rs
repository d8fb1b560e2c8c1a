use crate::algebra::element::AlgebraElement;
use crate::algebra::table::StructureTable;
use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::Scalar;

/// Float-mode invertibility threshold on `sigma_min / sigma_max`.
pub const INVERT_SV_RATIO: f64 = 1e-10;

/// Two-sided inverse via the left-multiplication matrix.
///
/// Exact tables are solved by rational elimination; float tables are first
/// screened by their singular values.
pub fn invert<S: Scalar>(a: &AlgebraElement<S>, t: &StructureTable<S>) -> Result<AlgebraElement<S>> {
    let m = t.left_mult_matrix(a)?;
    if !S::EXACT && linalg::singular_value_ratio(&linalg::to_dmatrix(&m)) < INVERT_SV_RATIO {
        return Err(Error::NotInvertible);
    }
    let b = linalg::solve(&m, t.unit().coeffs()).ok_or(Error::NotInvertible)?;
    Ok(AlgebraElement::new(b))
}

/// Orthonormal basis of `{lambda : lambda * eps_l = 0 for all l}`.
///
/// With `q = 0` the condition is vacuous and the whole algebra is returned.
pub fn annihilator_of_odd<S: Scalar>(t: &StructureTable<S>) -> Vec<AlgebraElement<f64>> {
    let d = t.dim();
    let mut stacked: linalg::Mat<S> = Vec::with_capacity(t.q() * d);
    for l in 1..=t.q() {
        let r = t.right_mult_matrix(&t.basis(t.p() + l)).expect("basis has table dimension");
        stacked.extend(r);
    }
    let kernel = linalg::kernel(&stacked, d);
    let float: Vec<Vec<f64>> =
        kernel.iter().map(|v| v.iter().map(Scalar::to_f64).collect()).collect();
    linalg::orthonormalize(&float).into_iter().map(AlgebraElement::new).collect()
}

/// Exact (non-normalized) basis of the odd annihilator.
pub fn annihilator_of_odd_exact<S: Scalar>(t: &StructureTable<S>) -> Vec<AlgebraElement<S>> {
    let d = t.dim();
    let mut stacked: linalg::Mat<S> = Vec::new();
    for l in 1..=t.q() {
        stacked.extend(t.right_mult_matrix(&t.basis(t.p() + l)).expect("basis has table dimension"));
    }
    linalg::kernel(&stacked, d).into_iter().map(AlgebraElement::new).collect()
}

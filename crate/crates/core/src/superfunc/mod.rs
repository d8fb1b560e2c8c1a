//! Superspace points, algebra-valued polynomials, `d''`, `d'` and Taylor
//! expansions in the hypervariables.

mod forms;
mod ops;
mod poly;
mod qs;
mod space;

pub use ops::{
    assemble_d_second, d_prime, d_second, d_second_block, eval_qs, fd_d_second, fd_partials, hypervariable_polys,
    hypervariables, is_qs_differentiable, is_separately_qs, laplacian, qs_to_real, real_to_qs, slice_variable,
    taylor_coefficients, POLY_ZERO_TOL,
};
pub use forms::{wedge_front, PolyForm};
pub use poly::RealPoly;
pub use qs::QsPoly;
pub use space::{Block, Coord, Direction, PrimeDirection, SuperPoint, Superspace};

#[cfg(test)]
mod tests;

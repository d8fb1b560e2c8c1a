//! Finite-dimensional real commutative superalgebras: structure tables,
//! element arithmetic, axiom validation and built-in examples.

mod builtin;
mod element;
mod ops;
mod table;
mod validate;

pub use builtin::{complex, complex_grassmann, hyperbolic, paper_table_example, Builtin};
pub use element::AlgebraElement;
pub use ops::{annihilator_of_odd, annihilator_of_odd_exact, invert, INVERT_SV_RATIO};
pub use table::StructureTable;
pub use validate::{validate, Axiom, AxiomCheck, ValidationReport, FLOAT_AXIOM_TOL};

#[cfg(test)]
mod tests;

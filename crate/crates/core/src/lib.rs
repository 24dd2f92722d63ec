//! A kernel for co-intuitionistic linear logic and its dual linear calculus.
//!
//! Terms and computational contexts live in [`syntax`] and [`context`]; [`typing`]
//! elaborates natural deduction scripts into decorated sequents, [`reduce`] runs
//! β-reduction, [`equations`] decides equality modulo the equations in context
//! (soundly, not completely) and [`prob`] checks the finite-event reading of the
//! multiplicative fragment.

pub mod context;
pub mod equations;
pub mod prob;
pub mod reduce;
pub mod syntax;
pub mod typing;

pub use context::{ComputationalContext, ValidationReport};
pub use syntax::{CoName, Term, VarName};

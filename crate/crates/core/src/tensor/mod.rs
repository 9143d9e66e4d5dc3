//! Coordinate tensor calculus on a single chart.

mod calculus;
mod field;
mod form;
mod vector;

pub use calculus::{
    lie_bracket, lie_derivative, lie_derivative_form, n2_via_d, n2_via_lie, nijenhuis_torsion,
    normality_tensor,
};
pub use field::{IndexIter, TensorField};
pub use form::PForm;
pub use vector::VectorField;

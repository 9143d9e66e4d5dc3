//! Indefinite metric g.f.f-structures: assembly, axioms, h_α and the
//! K / C / almost-S / S hierarchy.

mod checks;
mod classify;
mod structure;

pub use checks::{
    check_almost_s_identities, check_compatibility, check_f_axioms, check_h_operators, check_killing,
    check_lie_identities, phi_rank, sample_summary, SampleSummary,
};
pub use classify::{classify, ClassificationReport};
pub use structure::{GffStructure, HOperator};

use crate::scalar::ScalarField;
use crate::tensor::VectorField;

/// "(i,j,..)" with 1-based indices.
pub(crate) fn fmt_index(idx: &[usize]) -> String {
    let parts: Vec<String> = idx.iter().map(|i| (i + 1).to_string()).collect();
    format!("({})", parts.join(","))
}

/// First nonzero residual of a family of scalar identities, as a witness.
pub(crate) fn scalar_witness<I>(label: &str, it: I) -> Option<String>
where
    I: IntoIterator<Item = (Vec<usize>, ScalarField)>,
{
    it.into_iter()
        .find(|(_, v)| !v.is_zero())
        .map(|(idx, v)| format!("{label}{} = {v}", fmt_index(&idx)))
}

/// First nonzero component of a family of vector residuals.
pub(crate) fn vector_witness<I>(label: &str, it: I) -> Option<String>
where
    I: IntoIterator<Item = (Vec<usize>, VectorField)>,
{
    it.into_iter().find_map(|(idx, v)| {
        v.first_nonzero()
            .map(|(k, c)| format!("{label}{} component {} = {c}", fmt_index(&idx), k + 1))
    })
}

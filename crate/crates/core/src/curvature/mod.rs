//! Levi-Civita connection, curvature, sectional curvatures and the
//! curvature identities of S-manifolds.

mod aux;
mod connection;
mod identities;
mod riemann;
mod sectional;
mod space_form;

pub use aux::{aux_tensors, b_form, d_form, AuxTensors};
pub use connection::{levi_civita, Connection};
pub use riemann::{riemann_tensor, transform_slot, CurvatureTensor};
pub use sectional::{
    phi_sectional_curvature, phi_sectional_field, rational_sqrt, sectional_curvature, sectional_from_phi, PlaneSpec,
    PointCurvature,
};
pub use space_form::{detect_space_form, space_form_residual, space_form_tensor};
pub use identities::{
    check_almost_s_connection_identities, check_connection_identities, check_q_kernel_pairs, check_s_identities,
    curvature_identity_suite,
};

//! Closed-string generating functions: Bessel series, the J-function of
//! the line, the restricted I-function of the surface and its `z⁻ᵐ`
//! coefficients.

pub mod bessel;
pub mod ifunction;
pub mod jfunction;
pub mod phi;

pub use bessel::{bessel_coefficient, bessel_i};
pub use ifunction::{
    closed_form_term, closed_form_z_coeff, exceptional_terms, i_term_general, log_q0_prefactor,
    restricted_i_components, z_coeff, IComponent, IFunctionTerm, LinearForm, RestrictedI,
};
pub use jfunction::{j_component, j_evaluated, j_specialized_bessel, j_specialized_gamma, j_specialized_product};
pub use phi::phi_k_coeff;

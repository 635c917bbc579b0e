//! The free binomial cup-one algebra T_R(X), its cup, cup-one and ∘
//! operations in degrees at most 3, and differentials d_tau.

mod differential;
mod ops;
mod tensor;

pub use differential::{build_differential, d0_closed_form, single_variable_homotopy, DSquaredReport, Differential};
pub use ops::{circ, cup, cup1, cup1_deg1, cup1_high, cup1_hirsch, zeta_apply};
pub use tensor::{GeneratorSet, TensorElem, Word};

/// (min, max) total zeta-degree over the words of `u`.
pub fn weight_of(u: &TensorElem) -> Option<(u32, u32)> {
    u.weight_of()
}

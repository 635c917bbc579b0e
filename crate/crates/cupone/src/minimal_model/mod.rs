//! Stage-wise 1-minimal models of Δ-sets: H² of stage models (exterior and
//! exact-sequence routes over Z, truncations over Z_p), the maps H²(ρ_n) and
//! κ_n, group realizations G_T and homotopies through the interval.

mod em;
mod exterior;
mod graded;
mod group;
mod h2;
mod homotopy;
mod model;

pub use em::{cohomology_dims_zp, em_comparison, EmComparison};
pub use exterior::{exterior_cohomology, exterior_pairs, exterior_profile, exterior_triples, h2_free_d0, ExteriorH2};
pub use graded::{d_images, d_matrix, weighted, word_weight, WordBasis};
pub use group::{realize_group, GroupAudit, GroupRealization};
pub use h2::{
    audit_stage2, h1_dim_zp, h2_filtered, h2_stage1_z, h2_stage2_z, h2_stage_zp, zp_truncation_sizes, FilteredH2,
    H2Class, SplittingAudit, StageH2, ZP_T3_LIMIT,
};
pub use homotopy::{construct_homotopy, HomotopyWitness};
pub use model::{
    audit_rho, build_model, compare_kappa, extend_stage, kappa, minimality_audit, n_step_compare, stage1,
    stage1_with_basis, KappaInvariant, KernelClass, ModelStage, Verdict,
};

#[cfg(test)]
mod tests;

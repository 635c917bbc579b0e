//! Finite Δ-sets of dimension at most 3 and their cochain algebras with
//! cup, cup-one, ∘ and ζ operations; bar constructions, the magmas μ_τ and
//! their extensions, the embedding ψ, presentation complexes and the
//! interval cylinder used for homotopies.

mod cochain;
mod deltaset;
mod interval;
mod magma;
mod presentation;
mod realize;
mod tau;

pub use cochain::{coboundary, coboundary_matrix, coboundary_rows, cohomology, cup, cup1, cup2, zeta, Cochain};
pub use deltaset::{DeltaSet, MAX_DIM};
pub use interval::{cyl_cup, cyl_cup1, cyl_d, cyl_zeta, interval_algebra, restrict, CylElem, Interval};
pub use magma::{bar_construction, delta_from_magma, extension_magma, index_of, tuple_of, FiniteMagma};
pub use presentation::{
    borromean_presentation, heisenberg_presentation, presentation_complex, PresentationComplex, PresentedGroup,
};
pub use realize::{evaluate_free, evaluate_free_cyl, zeta_index};
pub use tau::{
    check_admissible, eval_index, magma_from_tau, psi_embed, psi_eval, Admissibility, AuditMode, TauMagma,
};

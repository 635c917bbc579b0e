//! Exact computations with binomial cup-one differential graded algebras:
//! free models T_R(X) with differentials d_tau, simplicial cochain algebras
//! of small Δ-sets, stage-wise 1-minimal models, the torsion invariants
//! kappa_n, triple Massey products and nilpotent group realizations.

pub mod binomial_ring;
pub mod delta_cochains;
pub mod free_dga;
pub mod minimal_model;
pub mod massey_magnus;
pub mod cli_io;
pub mod error;
pub mod exact_linear;
pub mod par;

pub use error::{Error, Result};

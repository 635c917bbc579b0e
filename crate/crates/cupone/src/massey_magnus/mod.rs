//! Triple Massey products in cochain algebras and in stage models, and the Magnus
//! expansion used to check them on presentation complexes.

mod magnus;
mod massey;
mod validate;

pub use magnus::{magnus_expand, magnus_pairings, MagnusSeries, RelatorPairings};
pub use massey::{in_span, massey_from_corrections, triple_massey, triple_massey_named, FreeAlgebra, MasseyAlgebra, MasseyResult, SimplicialAlgebra};
pub use validate::{
    borromean_gate, cross_validate, dual_route, massey_basis, BorromeanGate, Calibration, Comparison, CrossValidation,
    DualRoute, BORROMEAN_TRIPLES,
};

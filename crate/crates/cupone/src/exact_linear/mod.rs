//! Exact linear algebra: Smith normal form over Z (and its field
//! specialization over Z_p), kernels, images, cokernels, cohomology of
//! three-term complexes and a word-size echelon form for large Z_p blocks.

mod groups;
mod matrix;
mod snf;
mod zp;

pub use groups::{
    cohomology_at, cokernel, kernel_basis, map_analysis, rank, solve_in_image, unimodular_inverse, AbelianInvariants,
    Cohomology,
    FgGroup, GroupGenerator, MapAnalysis, Solution,
};
pub use matrix::IntMatrix;
pub use snf::{hermite_rows, smith, Smith};
pub use zp::{zp_rank, ZpEchelon};

#[cfg(test)]
mod tests;

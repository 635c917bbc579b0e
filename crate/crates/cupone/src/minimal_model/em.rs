use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::h2::{h1_dim_zp, h2_stage_zp};
use crate::binomial_ring::RingSpec;
use crate::delta_cochains::{coboundary_rows, delta_from_magma, magma_from_tau, psi_embed, Cochain, DeltaSet};
use crate::error::{Error, Result};
use crate::exact_linear::{zp_rank, ZpEchelon};
use crate::free_dga::{Differential, GeneratorSet, TensorElem};
use crate::par::Execution;

/// H^0..H^2 of (T_{Z_p}(X), d_0) against the bar construction of Z_p^X, through ψ.
#[derive(Clone, Debug)]
pub struct EmComparison {
    pub p: u64,
    pub gens: usize,
    pub free_dims: [usize; 3],
    pub bar_dims: [usize; 3],
    /// ψ is injective on H¹ and H².
    pub injective: [bool; 2],
}

impl EmComparison {
    pub fn is_iso(&self) -> bool {
        self.free_dims[1..] == self.bar_dims[1..] && self.injective.iter().all(|&b| b)
    }
}

fn sparse(c: &Cochain, p: u64) -> Vec<(usize, u64)> {
    let m = BigInt::from(p);
    c.values().iter().map(|(&i, v)| (i, v.mod_floor(&m).to_u64().expect("residue"))).collect()
}

fn residues(rows: Vec<Vec<(usize, i64)>>, p: u64) -> Vec<Vec<(usize, u64)>> {
    rows.into_iter()
        .map(|r| r.into_iter().map(|(c, v)| (c, v.rem_euclid(p as i64) as u64)).collect())
        .collect()
}

/// dim H^k(X; Z_p) for k ≤ 2.
pub fn cohomology_dims_zp(x: &DeltaSet, p: u64) -> [usize; 3] {
    let rank = |k: usize| zp_rank(p, x.count(k), residues(coboundary_rows(x, k), p));
    let r = [rank(0), rank(1), rank(2)];
    [x.count(0) - r[0], x.count(1) - r[1] - r[0], x.count(2) - r[2] - r[1]]
}

// how many of `classes` stay independent modulo the image of δ^{k−1}
fn independent_mod_image(x: &DeltaSet, k: usize, classes: &[Cochain], p: u64) -> usize {
    let n = x.count(k);
    let mut cols: Vec<Vec<(usize, u64)>> = vec![Vec::new(); x.count(k - 1)];
    for (r, row) in residues(coboundary_rows(x, k - 1), p).into_iter().enumerate() {
        for (c, v) in row {
            cols[c].push((r, v));
        }
    }
    let mut e = ZpEchelon::new(p, n);
    for c in &cols {
        e.push(c);
    }
    classes.iter().filter(|c| e.push(&sparse(c, p))).count()
}

pub fn em_comparison(p: u64, gens: usize, exec: Execution) -> Result<EmComparison> {
    let ring = RingSpec::zp(p)?;
    let diff = Differential::zero(ring, GeneratorSet::flat((1..=gens).map(|i| format!("x{i}"))));
    let h1 = h1_dim_zp(&diff, exec)?;
    let h2 = h2_stage_zp(&diff, exec)?;
    let magma = magma_from_tau(&diff);
    let bar = delta_from_magma(&magma.finite()?, 3, ring)?;
    let bar_dims = cohomology_dims_zp(&bar, p);
    let one: Vec<Cochain> =
        (0..gens).map(|g| psi_embed(&TensorElem::gen(ring, g as u32), &magma, &bar)).collect::<Result<_>>()?;
    let two: Vec<Cochain> = h2.classes.iter().map(|c| psi_embed(&c.rep, &magma, &bar)).collect::<Result<_>>()?;
    for c in one.iter().chain(&two) {
        let d = crate::delta_cochains::coboundary(&bar, c)?;
        if !d.is_zero() {
            return Err(Error::Internal("ψ of a cocycle is not a cocycle".into()));
        }
    }
    let injective = [
        independent_mod_image(&bar, 1, &one, p) == one.len(),
        independent_mod_image(&bar, 2, &two, p) == two.len(),
    ];
    Ok(EmComparison { p, gens, free_dims: [1, h1, h2.invariants.rank], bar_dims, injective })
}

use num_bigint::BigInt;
use num_traits::Zero;

use crate::binomial_ring::MultiIndex;
use crate::delta_cochains::{
    coboundary, coboundary_matrix, cyl_d, evaluate_free_cyl, restrict, Cochain, CylElem, DeltaSet,
};
use crate::error::{Error, Result};
use crate::exact_linear::{solve_in_image, Solution};
use crate::free_dga::{Differential, GeneratorSet, TensorElem};

/// Φ: (T(X₁), d_0) → C*(X) ⊗ C*(I) with Φ(x) = φ₀(x)t₀ + φ₁(x)t₁ − c(x)u.
#[derive(Clone, Debug)]
pub struct HomotopyWitness {
    pub phi: Vec<CylElem>,
    pub c: Vec<Cochain>,
    /// Number of ζ-basis elements on which d∘Φ = Φ∘d was checked.
    pub checked: usize,
}

fn same(x: &DeltaSet, u: &Cochain, v: &Cochain) -> bool {
    let n = x.count(u.dim().max(v.dim()));
    let d = |c: &Cochain| if c.is_zero() { vec![BigInt::zero(); n] } else { c.to_dense(n) };
    (u.is_zero() && v.is_zero()) || (u.dim() == v.dim() && d(u) == d(v))
}

fn same_cyl(x: &DeltaSet, e: &CylElem, f: &CylElem) -> bool {
    let b = match (&e.b, &f.b) {
        (Some(a), Some(b)) => same(x, a, b),
        (None, None) => true,
        (Some(a), None) | (None, Some(a)) => a.is_zero(),
    };
    same(x, &e.a0, &f.a0) && same(x, &e.a1, &f.a1) && b
}

/// A homotopy between two binomial maps of (T(X₁), d_0) agreeing on H¹. The dga-map
/// property is verified on every ζ_I of weight at most `weight`.
pub fn construct_homotopy(x: &DeltaSet, phi0: &[Cochain], phi1: &[Cochain], weight: u32) -> Result<HomotopyWitness> {
    let ring = x.ring();
    if phi0.len() != phi1.len() {
        return Err(Error::Precondition("the two maps have different sources".into()));
    }
    let m = phi0.len();
    let delta0 = coboundary_matrix(x, 0);
    let mut c = Vec::with_capacity(m);
    let mut phi = Vec::with_capacity(m);
    for g in 0..m {
        for f in [&phi0[g], &phi1[g]] {
            if f.dim() != 1 || !coboundary(x, f)?.is_zero() {
                return Err(Error::Precondition(format!("image of x{} is not a 1-cocycle", g + 1)));
            }
        }
        let diff = phi0[g].sub(&phi1[g]).to_dense(x.count(1));
        let cg = match solve_in_image(&delta0, &diff)? {
            Solution::Solved(v) => Cochain::from_dense(ring, 0, &v),
            Solution::Unsolvable { .. } => {
                return Err(Error::Precondition(format!("[φ₀(x{0})] ≠ [φ₁(x{0})]", g + 1)))
            }
        };
        phi.push(CylElem::new(phi0[g].clone(), phi1[g].clone(), Some(cg.neg()))?);
        c.push(cg);
    }
    let d0 = Differential::zero(ring, GeneratorSet::flat((1..=m).map(|i| format!("x{i}"))));
    let mut checked = 0;
    for idx in MultiIndex::enumerate(m as u32, weight, ring.max_exponent()) {
        if idx.is_unit() {
            continue;
        }
        let u = TensorElem::word(ring, vec![idx.clone()]);
        let lhs = cyl_d(x, &evaluate_free_cyl(x, &u, &phi)?)?;
        let rhs = evaluate_free_cyl(x, &d0.apply_d(&u)?, &phi)?;
        if !same_cyl(x, &lhs, &rhs) {
            return Err(Error::Internal(format!("Φ does not commute with d on {}", idx.render(d0.names()))));
        }
        for (end, f) in [(0, phi0), (1, phi1)] {
            let want = crate::delta_cochains::evaluate_free(x, &u, f)?;
            if !same(x, restrict(&evaluate_free_cyl(x, &u, &phi)?, end), &want) {
                return Err(Error::Internal(format!("Φ does not restrict to φ_{end}")));
            }
        }
        checked += 1;
    }
    Ok(HomotopyWitness { phi, c, checked })
}

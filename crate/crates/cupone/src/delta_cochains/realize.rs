use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::cochain::Cochain;
use super::deltaset::DeltaSet;
use super::interval::{cyl_cup, CylElem};
use crate::binomial_ring::{binom_of, MultiIndex, RingSpec};
use crate::error::{Error, Result};
use crate::free_dga::TensorElem;

/// Pointwise ζ_I of a family of cochains of one dimension (indexed by generator).
pub fn zeta_index(ring: RingSpec, dim: usize, cells: usize, images: &[&Cochain], idx: &MultiIndex) -> Result<Cochain> {
    let mut c = Cochain::zero(ring, dim);
    for s in 0..cells {
        let mut v = BigInt::one();
        for &(g, k) in idx.entries() {
            let img = images
                .get(g as usize)
                .ok_or_else(|| Error::Precondition(format!("no image for generator {g}")))?;
            v *= binom_of(ring, &img.get(s), k)?;
            if v.is_zero() {
                break;
            }
        }
        c.set(s, v);
    }
    Ok(c)
}

/// The binomial cup-one map T(X) → C*(X) determined by 1-cocycles ρ(x):
/// ρ(ζ_I) is pointwise and words go to Alexander–Whitney products.
pub fn evaluate_free(x: &DeltaSet, u: &TensorElem, rho: &[Cochain]) -> Result<Cochain> {
    let ring = x.ring();
    ring.check_same(&u.ring())?;
    let deg = u.degree_or(1).ok_or_else(|| Error::Degree("inhomogeneous element".into()))?;
    if deg > 3 {
        return Err(Error::Degree(format!("evaluation in degree {deg}")));
    }
    let imgs: Vec<&Cochain> = rho.iter().collect();
    let mut cache: HashMap<MultiIndex, Cochain> = HashMap::new();
    for w in u.terms().keys() {
        for m in &w.0 {
            if !cache.contains_key(m) {
                cache.insert(m.clone(), zeta_index(ring, 1, x.count(1), &imgs, m)?);
            }
        }
    }
    let mut out = Cochain::zero(ring, deg);
    for s in 0..x.count(deg) {
        let edges: Vec<usize> = (0..deg).map(|i| x.back(i + 1, x.front(deg, s, i + 1), 1)).collect();
        let mut v = BigInt::zero();
        for (w, c) in u.terms() {
            let mut t = c.clone();
            for (m, &e) in w.0.iter().zip(&edges) {
                t *= cache[m].get(e);
                if t.is_zero() {
                    break;
                }
            }
            v += t;
        }
        out.set(s, v);
    }
    Ok(out)
}

/// The same evaluation into the cylinder A ⊗ C*(I) from degree-1 images Φ(x).
pub fn evaluate_free_cyl(x: &DeltaSet, u: &TensorElem, phi: &[CylElem]) -> Result<CylElem> {
    let ring = x.ring();
    let deg = u.degree_or(1).ok_or_else(|| Error::Degree("inhomogeneous element".into()))?;
    let a0: Vec<&Cochain> = phi.iter().map(|p| &p.a0).collect();
    let a1: Vec<&Cochain> = phi.iter().map(|p| &p.a1).collect();
    let bs: Vec<&Cochain> = phi.iter().map(|p| p.b.as_ref().expect("degree-1 image")).collect();
    let mut cache: HashMap<MultiIndex, CylElem> = HashMap::new();
    let mut out = CylElem::zero(ring, deg);
    for (w, c) in u.terms() {
        let mut acc: Option<CylElem> = None;
        for m in &w.0 {
            if !cache.contains_key(m) {
                let e = CylElem {
                    deg: 1,
                    a0: zeta_index(ring, 1, x.count(1), &a0, m)?,
                    a1: zeta_index(ring, 1, x.count(1), &a1, m)?,
                    b: Some(zeta_index(ring, 0, x.count(0), &bs, m)?),
                };
                cache.insert(m.clone(), e);
            }
            let f = &cache[m];
            acc = Some(match acc {
                None => f.clone(),
                Some(a) => cyl_cup(x, &a, f)?,
            });
        }
        let term = match acc {
            Some(a) => a,
            None => CylElem::constant(&Cochain::unit(x)),
        };
        out.add_scaled(&term, c);
    }
    Ok(out)
}

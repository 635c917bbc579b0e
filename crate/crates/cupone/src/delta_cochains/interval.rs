use num_bigint::BigInt;
use num_traits::One;

use super::cochain::{coboundary, cup, cup1, zeta, Cochain};
use super::deltaset::DeltaSet;
use crate::binomial_ring::RingSpec;
use crate::error::{Error, Result};

/// The interval: vertices v0, v1 and the edge u with d_1 u = v0, d_0 u = v1,
/// so that δt₀ = −u, δt₁ = u and t₀∪u = u∪t₁ = u.
#[derive(Clone, Debug)]
pub struct Interval {
    pub delta: DeltaSet,
    pub t0: Cochain,
    pub t1: Cochain,
    pub u: Cochain,
}

pub fn interval_algebra(ring: RingSpec) -> Interval {
    let mut x = DeltaSet::new(ring);
    x.add_cell(0, "v0", vec![]).expect("vertex");
    x.add_cell(0, "v1", vec![]).expect("vertex");
    x.add_cell(1, "u", vec![1, 0]).expect("edge");
    Interval {
        t0: Cochain::indicator(ring, 0, 0),
        t1: Cochain::indicator(ring, 0, 1),
        u: Cochain::indicator(ring, 1, 0),
        delta: x,
    }
}

/// An element a₀⊗t₀ + a₁⊗t₁ + b⊗u of A ⊗ C*(I) with A = C*(X); b has degree one less.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CylElem {
    pub deg: usize,
    pub a0: Cochain,
    pub a1: Cochain,
    pub b: Option<Cochain>,
}

fn sign(k: usize) -> BigInt {
    if k.is_multiple_of(2) {
        BigInt::one()
    } else {
        BigInt::from(-1)
    }
}

impl CylElem {
    pub fn new(a0: Cochain, a1: Cochain, b: Option<Cochain>) -> Result<Self> {
        let deg = a0.dim();
        let ok = a1.dim() == deg
            && match &b {
                None => deg == 0,
                Some(b) => b.dim() + 1 == deg,
            };
        if !ok {
            return Err(Error::Degree("cylinder components of inconsistent degrees".into()));
        }
        Ok(CylElem { deg, a0, a1, b })
    }

    pub fn zero(ring: RingSpec, deg: usize) -> Self {
        CylElem {
            deg,
            a0: Cochain::zero(ring, deg),
            a1: Cochain::zero(ring, deg),
            b: (deg > 0).then(|| Cochain::zero(ring, deg - 1)),
        }
    }

    /// a ⊗ (t₀ + t₁): the inclusion of A.
    pub fn constant(a: &Cochain) -> Self {
        let ring = a.ring();
        CylElem { deg: a.dim(), a0: a.clone(), a1: a.clone(), b: (a.dim() > 0).then(|| Cochain::zero(ring, a.dim() - 1)) }
    }

    pub fn is_zero(&self) -> bool {
        self.a0.is_zero() && self.a1.is_zero() && self.b.as_ref().is_none_or(|b| b.is_zero())
    }

    pub fn add_scaled(&mut self, other: &CylElem, c: &BigInt) {
        self.a0.add_scaled(&other.a0, c);
        self.a1.add_scaled(&other.a1, c);
        if let (Some(b), Some(ob)) = (self.b.as_mut(), other.b.as_ref()) {
            b.add_scaled(ob, c);
        }
    }
}

/// d(a₀,a₁,b) = (da₀, da₁, db + (−1)^k (a₁ − a₀)).
pub fn cyl_d(x: &DeltaSet, e: &CylElem) -> Result<CylElem> {
    let k = e.deg;
    let mut nb = e.a1.sub(&e.a0).scale(&sign(k));
    if let Some(b) = &e.b {
        nb = nb.add(&coboundary(x, b)?);
    }
    Ok(CylElem { deg: k + 1, a0: coboundary(x, &e.a0)?, a1: coboundary(x, &e.a1)?, b: Some(nb) })
}

/// (a₀a₀', a₁a₁', a₀b' + (−1)^{|a₁'|} b a₁').
pub fn cyl_cup(x: &DeltaSet, e: &CylElem, f: &CylElem) -> Result<CylElem> {
    let deg = e.deg + f.deg;
    let ring = x.ring();
    let mut b = Cochain::zero(ring, deg.saturating_sub(1));
    if let Some(fb) = &f.b {
        b = b.add(&cup(x, &e.a0, fb)?);
    }
    if let Some(eb) = &e.b {
        b = b.add(&cup(x, eb, &f.a1)?.scale(&sign(f.deg)));
    }
    Ok(CylElem { deg, a0: cup(x, &e.a0, &f.a0)?, a1: cup(x, &e.a1, &f.a1)?, b: (deg > 0).then_some(b) })
}

/// Cup-one on degree-1 elements: componentwise, with b·b' pointwise on vertices.
pub fn cyl_cup1(x: &DeltaSet, e: &CylElem, f: &CylElem) -> Result<CylElem> {
    if e.deg != 1 || f.deg != 1 {
        return Err(Error::Degree("cylinder cup-one is implemented in degree 1".into()));
    }
    let (eb, fb) = (e.b.as_ref().expect("deg 1"), f.b.as_ref().expect("deg 1"));
    let mut bb = Cochain::zero(x.ring(), 0);
    for (&v, a) in eb.values() {
        bb.set(v, a * fb.get(v));
    }
    Ok(CylElem { deg: 1, a0: cup1(x, &e.a0, &f.a0)?, a1: cup1(x, &e.a1, &f.a1)?, b: Some(bb) })
}

/// ζ_k applied pointwise to each component of a degree-1 element.
pub fn cyl_zeta(x: &DeltaSet, e: &CylElem, k: u32) -> Result<CylElem> {
    if e.deg != 1 {
        return Err(Error::Degree("zeta on the cylinder needs degree 1".into()));
    }
    Ok(CylElem {
        deg: 1,
        a0: zeta(x, &e.a0, k)?,
        a1: zeta(x, &e.a1, k)?,
        b: Some(zeta(x, e.b.as_ref().expect("deg 1"), k)?),
    })
}

/// Restriction along the endpoint inclusions: t₀ ↦ 1 gives a₀, t₁ ↦ 1 gives a₁.
pub fn restrict(e: &CylElem, end: usize) -> &Cochain {
    if end == 0 {
        &e.a0
    } else {
        &e.a1
    }
}


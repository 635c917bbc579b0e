use num_bigint::BigInt;
use num_traits::One;

use super::differential::Differential;
use super::tensor::{TensorElem, Word};
use crate::binomial_ring::{BinomialPoly, RingSpec};
use crate::error::{Error, Result};

fn basis(ring: RingSpec, w: &Word, i: usize) -> BinomialPoly {
    BinomialPoly::basis(ring, w.0[i].clone())
}

/// Concatenation product.
pub fn cup(u: &TensorElem, v: &TensorElem) -> Result<TensorElem> {
    u.ring().check_same(&v.ring())?;
    let mut r = TensorElem::zero(u.ring());
    for (a, c) in u.terms() {
        for (b, d) in v.terms() {
            let mut w = a.0.clone();
            w.extend(b.0.iter().cloned());
            r.add_term(Word(w), c * d);
        }
    }
    Ok(r)
}

/// Degree-1 cup-one product: the product in the binomial algebra.
pub fn cup1_deg1(u: &TensorElem, v: &TensorElem) -> Result<TensorElem> {
    u.ring().check_same(&v.ring())?;
    u.require_degree(1, "left factor")?;
    v.require_degree(1, "right factor")?;
    TensorElem::from_poly(&u.to_poly()?.mul(&v.to_poly()?))
}

/// zeta_k(u) in the binomial ring R ⊕ T^1: falling factorial divided by k!.
pub fn zeta_apply(u: &TensorElem, k: u32) -> Result<TensorElem> {
    let ring = u.ring();
    if let Some(e) = ring.max_exponent() {
        if k > e {
            return Err(Error::OutOfRange(format!("zeta_{k} over {ring}")));
        }
    }
    let p = u.to_poly()?;
    if k == 0 {
        return Err(Error::OutOfRange("zeta_0 is the unit, not a degree-1 element".into()));
    }
    let mut acc = BinomialPoly::one(ring);
    let mut fact = BigInt::one();
    for i in 0..k {
        let shifted = p.sub(&BinomialPoly::one(ring).scale(&BigInt::from(i)));
        acc = acc.mul(&shifted);
        fact *= BigInt::from(i + 1);
    }
    TensorElem::from_poly(&acc.div_exact(&fact)?)
}

/// (a ⊗ b) ∪₁ c = ac ⊗ b + a ⊗ bc, extended bilinearly.
pub fn cup1_hirsch(u: &TensorElem, v: &TensorElem) -> Result<TensorElem> {
    u.ring().check_same(&v.ring())?;
    u.require_degree(2, "left factor")?;
    let c = v.to_poly()?;
    let ring = u.ring();
    let mut r = TensorElem::zero(ring);
    for (w, k) in u.terms() {
        let a = basis(ring, w, 0);
        let b = basis(ring, w, 1);
        let ac = a.mul(&c);
        let bc = b.mul(&c);
        r.add_scaled(&TensorElem::tensor_of(ring, &[&ac, &b]), k);
        r.add_scaled(&TensorElem::tensor_of(ring, &[&a, &bc]), k);
    }
    Ok(r)
}

/// Cup-one product in degrees (1,1), (2,1), (3,1) and (2,2); degree 0
/// arguments give 0. The (2,2) case needs the decompositions supplied by `ctx`.
pub fn cup1(u: &TensorElem, v: &TensorElem, ctx: Option<&Differential>) -> Result<TensorElem> {
    u.ring().check_same(&v.ring())?;
    let ring = u.ring();
    if u.is_zero() || v.is_zero() {
        return Ok(TensorElem::zero(ring));
    }
    let du = u.degree().ok_or_else(|| Error::Degree("inhomogeneous left factor".into()))?;
    let dv = v.degree().ok_or_else(|| Error::Degree("inhomogeneous right factor".into()))?;
    match (du, dv) {
        (0, _) | (_, 0) => Ok(TensorElem::zero(ring)),
        (1, 1) => cup1_deg1(u, v),
        (2, 1) => cup1_hirsch(u, v),
        (3, 1) | (2, 2) => cup1_high(u, v, ctx),
        _ => Err(Error::Degree(format!("cup-one in degrees ({du},{dv}) is not defined"))),
    }
}

/// Cup-one in degrees (3,1) and (2,2).
pub fn cup1_high(u: &TensorElem, v: &TensorElem, ctx: Option<&Differential>) -> Result<TensorElem> {
    u.ring().check_same(&v.ring())?;
    let ring = u.ring();
    let mut r = TensorElem::zero(ring);
    if u.is_zero() || v.is_zero() {
        return Ok(r);
    }
    match (u.degree(), v.degree()) {
        (Some(3), Some(1)) => {
            let c = v.to_poly()?;
            for (w, k) in u.terms() {
                let f: Vec<BinomialPoly> = (0..3).map(|i| basis(ring, w, i)).collect();
                let g: Vec<BinomialPoly> = f.iter().map(|x| x.mul(&c)).collect();
                r.add_scaled(&TensorElem::tensor_of(ring, &[&g[0], &f[1], &f[2]]), k);
                r.add_scaled(&TensorElem::tensor_of(ring, &[&f[0], &g[1], &f[2]]), k);
                r.add_scaled(&TensorElem::tensor_of(ring, &[&f[0], &f[1], &g[2]]), k);
            }
            Ok(r)
        }
        (Some(2), Some(2)) => {
            let d = ctx.ok_or_else(|| {
                Error::Precondition("cup-one in degrees (2,2) needs a differential".into())
            })?;
            let minus = BigInt::from(-1);
            for (wu, ku) in u.terms() {
                let a1 = basis(ring, wu, 0);
                let a2 = basis(ring, wu, 1);
                let da1 = d.d_basis(&wu.0[0]);
                let da2 = d.d_basis(&wu.0[1]);
                for (wv, kv) in v.terms() {
                    let k = ku * kv;
                    let mk = &k * &minus;
                    let b1 = basis(ring, wv, 0);
                    let b2 = basis(ring, wv, 1);
                    r.add_scaled(&TensorElem::tensor_of(ring, &[&a1, &b1.mul(&a2), &b2]), &mk);
                    r.add_scaled(&TensorElem::tensor_of(ring, &[&a1, &b1, &b2.mul(&a2)]), &mk);
                    for (wd, c) in da2.terms() {
                        let p = basis(ring, wd, 0).mul(&b1);
                        let q = basis(ring, wd, 1).mul(&b2);
                        r.add_scaled(&TensorElem::tensor_of(ring, &[&a1, &p, &q]), &(&k * c));
                    }
                    r.add_scaled(&TensorElem::tensor_of(ring, &[&b1.mul(&a1), &b2, &a2]), &k);
                    r.add_scaled(&TensorElem::tensor_of(ring, &[&b1, &b2.mul(&a1), &a2]), &k);
                    for (wd, c) in da1.terms() {
                        let p = basis(ring, wd, 0).mul(&b1);
                        let q = basis(ring, wd, 1).mul(&b2);
                        r.add_scaled(&TensorElem::tensor_of(ring, &[&p, &q, &a2]), &(&mk * c));
                    }
                }
            }
            Ok(r)
        }
        (a, b) => Err(Error::Degree(format!("cup1_high expects (3,1) or (2,2), got {a:?},{b:?}"))),
    }
}

/// The ∘ map in degrees (2,2), (2,3) and (3,2).
pub fn circ(u: &TensorElem, v: &TensorElem, ctx: Option<&Differential>) -> Result<TensorElem> {
    u.ring().check_same(&v.ring())?;
    let ring = u.ring();
    let mut r = TensorElem::zero(ring);
    if u.is_zero() || v.is_zero() {
        return Ok(r);
    }
    let minus = BigInt::from(-1);
    match (u.degree(), v.degree()) {
        (Some(2), Some(2)) => {
            for (wu, ku) in u.terms() {
                let a1 = basis(ring, wu, 0);
                let a2 = basis(ring, wu, 1);
                for (wv, kv) in v.terms() {
                    let p = a1.mul(&basis(ring, wv, 0));
                    let q = a2.mul(&basis(ring, wv, 1));
                    r.add_scaled(&TensorElem::tensor_of(ring, &[&p, &q]), &(ku * kv));
                }
            }
            Ok(r)
        }
        (Some(2), Some(3)) => {
            let d = ctx.ok_or_else(|| Error::Precondition("∘ in degrees (2,3) needs a differential".into()))?;
            for (wu, ku) in u.terms() {
                let a1 = basis(ring, wu, 0);
                let a2 = basis(ring, wu, 1);
                let da1 = d.d_basis(&wu.0[0]);
                for (wv, kv) in v.terms() {
                    let k = ku * kv;
                    let v1 = basis(ring, wv, 0);
                    let v2 = basis(ring, wv, 1);
                    let v3 = basis(ring, wv, 2);
                    let a1v1 = a1.mul(&v1);
                    let a2v3 = a2.mul(&v3);
                    r.add_scaled(&TensorElem::tensor_of(ring, &[&a1v1, &a2.mul(&v2), &v3]), &k);
                    r.add_scaled(&TensorElem::tensor_of(ring, &[&a1v1, &v2, &a2v3]), &k);
                    r.add_scaled(&TensorElem::tensor_of(ring, &[&v1, &a1.mul(&v2), &a2v3]), &k);
                    for (wd, c) in da1.terms() {
                        let p = basis(ring, wd, 0).mul(&v1);
                        let q = basis(ring, wd, 1).mul(&v2);
                        r.add_scaled(&TensorElem::tensor_of(ring, &[&p, &q, &a2v3]), &(&k * c * &minus));
                    }
                }
            }
            Ok(r)
        }
        (Some(3), Some(2)) => {
            let d = ctx.ok_or_else(|| Error::Precondition("∘ in degrees (3,2) needs a differential".into()))?;
            for (wv, kv) in v.terms() {
                let b1 = basis(ring, wv, 0);
                let b2 = basis(ring, wv, 1);
                let db2 = d.d_basis(&wv.0[1]);
                for (wu, ku) in u.terms() {
                    let k = ku * kv;
                    let u1 = basis(ring, wu, 0);
                    let u2 = basis(ring, wu, 1);
                    let u3 = basis(ring, wu, 2);
                    let u1b1 = u1.mul(&b1);
                    r.add_scaled(&TensorElem::tensor_of(ring, &[&u1, &u2.mul(&b1), &u3.mul(&b2)]), &k);
                    r.add_scaled(&TensorElem::tensor_of(ring, &[&u1b1, &u2.mul(&b2), &u3]), &k);
                    r.add_scaled(&TensorElem::tensor_of(ring, &[&u1b1, &u2, &u3.mul(&b2)]), &k);
                    for (wd, c) in db2.terms() {
                        let p = u2.mul(&basis(ring, wd, 0));
                        let q = u3.mul(&basis(ring, wd, 1));
                        r.add_scaled(&TensorElem::tensor_of(ring, &[&u1b1, &p, &q]), &(&k * c * &minus));
                    }
                }
            }
            Ok(r)
        }
        (a, b) => Err(Error::Degree(format!("∘ expects (2,2), (2,3) or (3,2), got {a:?},{b:?}"))),
    }
}


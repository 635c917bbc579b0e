use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::deltaset::{DeltaSet, MAX_DIM};
use crate::binomial_ring::{binom_of, RingSpec};
use crate::error::{Error, Result};
use crate::exact_linear::{cohomology_at, Cohomology, IntMatrix};

/// A sparse k-cochain: cell index → nonzero value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    dim: usize,
    ring: RingSpec,
    values: BTreeMap<usize, BigInt>,
}

impl Cochain {
    pub fn zero(ring: RingSpec, dim: usize) -> Self {
        Cochain { dim, ring, values: BTreeMap::new() }
    }

    pub fn indicator(ring: RingSpec, dim: usize, cell: usize) -> Self {
        let mut c = Self::zero(ring, dim);
        c.set(cell, BigInt::one());
        c
    }

    pub fn from_dense(ring: RingSpec, dim: usize, values: &[BigInt]) -> Self {
        let mut c = Self::zero(ring, dim);
        for (i, v) in values.iter().enumerate() {
            c.set(i, v.clone());
        }
        c
    }

    /// The constant 0-cochain 1.
    pub fn unit(x: &DeltaSet) -> Self {
        Self::from_dense(x.ring(), 0, &vec![BigInt::one(); x.count(0)])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn get(&self, cell: usize) -> BigInt {
        self.values.get(&cell).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, cell: usize, v: BigInt) {
        let v = self.ring.reduce(v);
        if v.is_zero() {
            self.values.remove(&cell);
        } else {
            self.values.insert(cell, v);
        }
    }

    pub fn values(&self) -> &BTreeMap<usize, BigInt> {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn to_dense(&self, n: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); n];
        for (&i, a) in &self.values {
            v[i] = a.clone();
        }
        v
    }

    pub fn add_scaled(&mut self, other: &Cochain, c: &BigInt) {
        assert_eq!(self.dim, other.dim, "cochain dimension mismatch");
        for (&i, a) in &other.values {
            let v = self.get(i) + c * a;
            self.set(i, v);
        }
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        let mut r = self.clone();
        r.add_scaled(other, &BigInt::one());
        r
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        let mut r = self.clone();
        r.add_scaled(other, &BigInt::from(-1));
        r
    }

    pub fn scale(&self, c: &BigInt) -> Cochain {
        let mut r = Cochain::zero(self.ring, self.dim);
        r.add_scaled(self, c);
        r
    }

    pub fn neg(&self) -> Cochain {
        self.scale(&BigInt::from(-1))
    }

    /// Pairing with a chain given densely on the cells of this dimension.
    pub fn evaluate(&self, chain: &[BigInt]) -> BigInt {
        let s: BigInt = self.values.iter().filter(|(i, _)| **i < chain.len()).map(|(i, a)| a * &chain[*i]).sum();
        self.ring.reduce(s)
    }
}

fn check(x: &DeltaSet, c: &Cochain) -> Result<()> {
    x.ring().check_same(&c.ring())?;
    if c.dim > MAX_DIM {
        return Err(Error::Degree(format!("{}-cochain", c.dim)));
    }
    Ok(())
}

/// (δc)(s) = Σ_i (−1)^i c(d_i s).
pub fn coboundary(x: &DeltaSet, c: &Cochain) -> Result<Cochain> {
    check(x, c)?;
    if c.dim >= MAX_DIM {
        return Err(Error::Degree(format!("coboundary of a {}-cochain", c.dim)));
    }
    let k = c.dim + 1;
    let mut r = Cochain::zero(c.ring, k);
    for s in 0..x.count(k) {
        let mut v = BigInt::zero();
        for (i, &f) in x.faces(k, s).iter().enumerate() {
            if let Some(a) = c.values.get(&f) {
                if i % 2 == 0 {
                    v += a;
                } else {
                    v -= a;
                }
            }
        }
        r.set(s, v);
    }
    Ok(r)
}

/// Sparse rows of δ^k, one per (k+1)-cell.
pub fn coboundary_rows(x: &DeltaSet, k: usize) -> Vec<Vec<(usize, i64)>> {
    (0..x.count(k + 1))
        .map(|s| {
            let mut row: BTreeMap<usize, i64> = BTreeMap::new();
            for (i, &f) in x.faces(k + 1, s).iter().enumerate() {
                *row.entry(f).or_default() += if i % 2 == 0 { 1 } else { -1 };
            }
            row.into_iter().filter(|(_, v)| *v != 0).collect()
        })
        .collect()
}

pub fn coboundary_matrix(x: &DeltaSet, k: usize) -> IntMatrix {
    let rows = coboundary_rows(x, k);
    let triples: Vec<(usize, usize, BigInt)> = rows
        .iter()
        .enumerate()
        .flat_map(|(r, row)| row.iter().map(move |&(c, v)| (r, c, BigInt::from(v))))
        .collect();
    IntMatrix::from_triples(x.ring(), x.count(k + 1), x.count(k), &triples)
}

/// H^k(X; R) with representatives and coordinates.
pub fn cohomology(x: &DeltaSet, k: usize) -> Result<Cohomology> {
    let a = if k == 0 { IntMatrix::zero(x.ring(), x.count(0), 0) } else { coboundary_matrix(x, k - 1) };
    let b = if k >= MAX_DIM { IntMatrix::zero(x.ring(), 0, x.count(k)) } else { coboundary_matrix(x, k) };
    cohomology_at(&a, &b)
}

/// Alexander–Whitney cup product: (u∪v)(s) = u(front_p s)·v(back_q s).
pub fn cup(x: &DeltaSet, u: &Cochain, v: &Cochain) -> Result<Cochain> {
    check(x, u)?;
    check(x, v)?;
    let (p, q) = (u.dim, v.dim);
    let n = p + q;
    if n > MAX_DIM {
        return Err(Error::Degree(format!("cup of degrees {p} and {q}")));
    }
    let mut r = Cochain::zero(u.ring, n);
    for s in 0..x.count(n) {
        let a = u.get(x.front(n, s, p));
        if a.is_zero() {
            continue;
        }
        let b = v.get(x.back(n, s, q));
        r.set(s, a * b);
    }
    Ok(r)
}

/// Cup-one: pointwise on 1-cochains, zero against 0-cochains, and Steenrod's
/// formula in degrees (2,1) and (1,2).
pub fn cup1(x: &DeltaSet, u: &Cochain, v: &Cochain) -> Result<Cochain> {
    check(x, u)?;
    check(x, v)?;
    let ring = u.ring;
    match (u.dim, v.dim) {
        (0, d) | (d, 0) => Ok(Cochain::zero(ring, d.saturating_sub(1))),
        (1, 1) => {
            let mut r = Cochain::zero(ring, 1);
            for (&e, a) in &u.values {
                r.set(e, a * v.get(e));
            }
            Ok(r)
        }
        (2, 1) => {
            let mut r = Cochain::zero(ring, 2);
            for (&s, w) in &u.values {
                let f = x.faces(2, s);
                r.set(s, w * (v.get(f[2]) + v.get(f[0])));
            }
            Ok(r)
        }
        (1, 2) => {
            let mut r = Cochain::zero(ring, 2);
            for (&s, w) in &v.values {
                r.set(s, -(u.get(x.face(2, s, 1)) * w));
            }
            Ok(r)
        }
        (a, b) => Err(Error::Degree(format!("cochain cup-one in degrees ({a},{b})"))),
    }
}

/// The ∘ = ∪₂ map: pointwise on 2-cells.
pub fn cup2(x: &DeltaSet, u: &Cochain, v: &Cochain) -> Result<Cochain> {
    check(x, u)?;
    check(x, v)?;
    if u.dim != 2 || v.dim != 2 {
        return Err(Error::Degree(format!("∘ on cochains of degrees ({},{})", u.dim, v.dim)));
    }
    let mut r = Cochain::zero(u.ring, 2);
    for (&s, a) in &u.values {
        r.set(s, a * v.get(s));
    }
    Ok(r)
}

/// Pointwise binomial coefficient of a 1-cochain (or 0-cochain).
pub fn zeta(x: &DeltaSet, f: &Cochain, k: u32) -> Result<Cochain> {
    check(x, f)?;
    if f.dim > 1 {
        return Err(Error::Degree(format!("zeta of a {}-cochain", f.dim)));
    }
    if k == 0 {
        return Err(Error::OutOfRange("zeta_0".into()));
    }
    let mut r = Cochain::zero(f.ring, f.dim);
    for (&e, a) in &f.values {
        r.set(e, binom_of(f.ring, a, k)?);
    }
    Ok(r)
}

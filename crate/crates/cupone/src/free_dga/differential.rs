use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;
use parking_lot::RwLock;

use super::ops::{circ, cup1_hirsch};
use super::tensor::{GeneratorSet, TensorElem, Word};
use crate::binomial_ring::{BinomialPoly, MultiIndex, RingSpec};
use crate::error::{Error, Result};
use crate::par::{self, Execution};

/// A differential d_tau on T_R(X): values tau(x) = d x on generators and a
/// memo of d(zeta_k(x)).
pub struct Differential {
    ring: RingSpec,
    gens: GeneratorSet,
    tau: Vec<TensorElem>,
    memo: RwLock<HashMap<(u32, u32), Arc<TensorElem>>>,
}

impl Clone for Differential {
    fn clone(&self) -> Self {
        Differential {
            ring: self.ring,
            gens: self.gens.clone(),
            tau: self.tau.clone(),
            memo: RwLock::new(self.memo.read().clone()),
        }
    }
}

impl std::fmt::Debug for Differential {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Differential")
            .field("ring", &self.ring)
            .field("gens", &self.gens)
            .field("tau", &self.tau)
            .finish()
    }
}

/// Outcome of a d² audit.
#[derive(Clone, Debug)]
pub struct DSquaredReport {
    pub checked: usize,
    pub failure: Option<(MultiIndex, TensorElem)>,
}

impl DSquaredReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Builds d_tau; every tau(x) must be of degree 2 in generators of strictly
/// lower level than x.
pub fn build_differential(gens: GeneratorSet, tau: Vec<TensorElem>) -> Result<Differential> {
    if tau.len() != gens.len() {
        return Err(Error::Precondition(format!(
            "{} generators but {} tau values",
            gens.len(),
            tau.len()
        )));
    }
    let ring = match tau.first() {
        Some(t) => t.ring(),
        None => RingSpec::Z,
    };
    for (i, t) in tau.iter().enumerate() {
        ring.check_same(&t.ring())?;
        t.require_degree(2, &format!("tau({})", gens.names[i]))?;
        for w in t.terms().keys() {
            for m in &w.0 {
                for g in m.support() {
                    if g as usize >= gens.len() || gens.levels[g as usize] >= gens.levels[i] {
                        return Err(Error::Precondition(format!(
                            "level violation: tau({}) involves {}",
                            gens.names[i],
                            crate::binomial_ring::gen_name(&gens.names, g)
                        )));
                    }
                }
            }
        }
    }
    Ok(Differential { ring, gens, tau, memo: RwLock::new(HashMap::new()) })
}

impl Differential {
    /// d_0 on the given generators.
    pub fn zero(ring: RingSpec, gens: GeneratorSet) -> Differential {
        let tau = vec![TensorElem::zero(ring); gens.len()];
        Differential { ring, gens, tau, memo: RwLock::new(HashMap::new()) }
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn gens(&self) -> &GeneratorSet {
        &self.gens
    }

    pub fn names(&self) -> &[String] {
        &self.gens.names
    }

    pub fn tau(&self) -> &[TensorElem] {
        &self.tau
    }

    /// Differential on the Hirsch extension by new generators.
    pub fn extend(&self, names: Vec<String>, level: u32, taus: Vec<TensorElem>) -> Result<Differential> {
        let mut gens = self.gens.clone();
        let mut tau = self.tau.clone();
        for (n, t) in names.into_iter().zip(taus) {
            gens.push(n, level);
            tau.push(t);
        }
        let mut d = build_differential(gens, tau)?;
        d.ring = self.ring;
        Ok(d)
    }

    /// d(zeta_I) for a nonzero basis index.
    pub fn d_basis(&self, idx: &MultiIndex) -> TensorElem {
        let ((g, k), rest) = match idx.split_first() {
            Some(s) => s,
            None => return TensorElem::zero(self.ring),
        };
        if rest.is_unit() {
            return (*self.d_zeta(g, k)).clone();
        }
        let a = BinomialPoly::basis(self.ring, MultiIndex::single(g, k));
        let b = BinomialPoly::basis(self.ring, rest);
        self.c1d(&a, &b)
    }

    /// d(zeta_k(x_g)), memoized.
    pub fn d_zeta(&self, g: u32, k: u32) -> Arc<TensorElem> {
        if let Some(v) = self.memo.read().get(&(g, k)) {
            return v.clone();
        }
        let value = if k == 1 {
            self.tau[g as usize].clone()
        } else {
            // zeta_{n+1} = (zeta_n ∪₁ x - n zeta_n) / (n + 1)
            let n = k - 1;
            let a = BinomialPoly::basis(self.ring, MultiIndex::single(g, n));
            let x = BinomialPoly::gen(self.ring, g);
            let mut num = self.c1d(&a, &x);
            num.add_scaled(&self.d_zeta(g, n), &BigInt::from(-(n as i64)));
            div_exact(&num, &BigInt::from(k)).expect("exact division in the zeta recursion")
        };
        let v = Arc::new(value);
        self.memo.write().entry((g, k)).or_insert_with(|| v.clone()).clone()
    }

    /// d on a degree-1 element given as a polynomial.
    pub fn d_poly(&self, p: &BinomialPoly) -> TensorElem {
        let mut r = TensorElem::zero(self.ring);
        for (i, c) in p.terms() {
            if !i.is_unit() {
                r.add_scaled(&self.d_basis(i), c);
            }
        }
        r
    }

    /// The cup-one/d formula:
    /// d(a ∪₁ b) = -a∪b - b∪a + da∪₁b + db∪₁a - da∘db.
    pub fn c1d(&self, a: &BinomialPoly, b: &BinomialPoly) -> TensorElem {
        let ring = self.ring;
        let da = self.d_poly(a);
        let db = self.d_poly(b);
        let ta = TensorElem::from_poly(a).expect("constant-free");
        let tb = TensorElem::from_poly(b).expect("constant-free");
        let mut r = TensorElem::tensor_of(ring, &[a, b]).neg();
        r.add_scaled(&TensorElem::tensor_of(ring, &[b, a]), &BigInt::from(-1));
        r.add_scaled(&cup1_hirsch(&da, &tb).expect("degrees"), &BigInt::one());
        r.add_scaled(&cup1_hirsch(&db, &ta).expect("degrees"), &BigInt::one());
        r.add_scaled(&circ(&da, &db, None).expect("degrees"), &BigInt::from(-1));
        r
    }

    /// Graded Leibniz extension to words of degree at most 3.
    pub fn apply_d(&self, u: &TensorElem) -> Result<TensorElem> {
        self.ring.check_same(&u.ring())?;
        let mut r = TensorElem::zero(self.ring);
        for (w, c) in u.terms() {
            if w.len() > 3 {
                return Err(Error::Degree(format!("apply_d is capped at degree 3, got {}", w.len())));
            }
            for i in 0..w.len() {
                let dfi = self.d_basis(&w.0[i]);
                let sign = if i % 2 == 0 { c.clone() } else { -c };
                for (dw, dc) in dfi.terms() {
                    let mut nw = Vec::with_capacity(w.len() + 1);
                    nw.extend_from_slice(&w.0[..i]);
                    nw.extend(dw.0.iter().cloned());
                    nw.extend_from_slice(&w.0[i + 1..]);
                    r.add_term(Word(nw), &sign * dc);
                }
            }
        }
        Ok(r)
    }

    /// All nonzero basis indices up to the weight cap (exponent cap p-1 over Z_p).
    pub fn basis_up_to(&self, max_weight: u32) -> Vec<MultiIndex> {
        MultiIndex::enumerate(self.gens.len() as u32, max_weight, self.ring.max_exponent())
    }

    /// Verifies d²(x) = 0 on generators and d²(zeta_I) = 0 up to the weight cap.
    pub fn check_d_squared(&self, max_weight: u32, exec: Execution) -> DSquaredReport {
        let mut idx: Vec<MultiIndex> =
            (0..self.gens.len() as u32).map(|g| MultiIndex::single(g, 1)).collect();
        idx.extend(self.basis_up_to(max_weight).into_iter().filter(|m| m.weight() > 1));
        let found = par::find_first(exec, idx.len(), |i| {
            let dd = self.apply_d(&self.d_basis(&idx[i])).expect("degree 2");
            (!dd.is_zero()).then_some(dd)
        });
        DSquaredReport { checked: idx.len(), failure: found.map(|(i, dd)| (idx[i].clone(), dd)) }
    }
}

pub(crate) fn div_exact(t: &TensorElem, d: &BigInt) -> Result<TensorElem> {
    let ring = t.ring();
    let mut r = TensorElem::zero(ring);
    for (w, c) in t.terms() {
        r.add_term(w.clone(), ring.div_exact(c, d)?);
    }
    Ok(r)
}

/// d_0(zeta_I) = -Σ_{I1+I2=I, I1,I2≠0} zeta_{I1} ⊗ zeta_{I2}.
pub fn d0_closed_form(ring: RingSpec, idx: &MultiIndex) -> TensorElem {
    let mut r = TensorElem::zero(ring);
    for (a, b) in idx.splittings() {
        r.add_term(Word(vec![a, b]), BigInt::from(-1));
    }
    r
}

/// The contracting homotopy on the complement T_1 of {1, x} in T({x}):
/// h(zeta_{i1} ⊗ zeta_{i2} ⊗ …) = -zeta_{i2+1} ⊗ … when i1 = 1, else 0.
/// Words of length at most one map to 0.
pub fn single_variable_homotopy(u: &TensorElem) -> Result<TensorElem> {
    let ring = u.ring();
    let mut r = TensorElem::zero(ring);
    for (w, c) in u.terms() {
        if w.len() < 2 {
            continue;
        }
        let mut gens = w.0.iter().flat_map(|m| m.support());
        let g = gens.next().unwrap_or(0);
        if gens.any(|h| h != g) || w.0.iter().any(|m| m.entries().len() != 1) {
            return Err(Error::Precondition("homotopy is defined on a single variable".into()));
        }
        if w.0[0].exponent(g) != 1 {
            continue;
        }
        let mut nw = Vec::with_capacity(w.len() - 1);
        nw.push(MultiIndex::single(g, w.0[1].exponent(g) + 1));
        nw.extend_from_slice(&w.0[2..]);
        r.add_term(Word(nw), -c);
    }
    Ok(r)
}

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::cochain::Cochain;
use super::deltaset::DeltaSet;
use super::magma::{tuple_of, FiniteMagma};
use crate::binomial_ring::{BinomialPoly, MultiIndex, RingSpec};
use crate::error::{Error, Result};
use crate::free_dga::{Differential, TensorElem};
use crate::par::{self, Execution};

/// μ_τ on M(X, R) = R^X: coordinate x of μ(a, a') is a_x + a'_x − Σ c·p(a)·q(a'),
/// where τ(x) = Σ c·p⊗q.
#[derive(Clone, Debug)]
pub struct TauMagma {
    ring: RingSpec,
    names: Vec<String>,
    tau: Vec<Vec<(BigInt, MultiIndex, MultiIndex)>>,
}

pub fn magma_from_tau(d: &Differential) -> TauMagma {
    let tau = d
        .tau()
        .iter()
        .map(|t| t.terms().iter().map(|(w, c)| (c.clone(), w.0[0].clone(), w.0[1].clone())).collect())
        .collect();
    TauMagma { ring: d.ring(), names: d.names().to_vec(), tau }
}

/// ζ_I evaluated at a point of R^X.
pub fn eval_index(ring: RingSpec, idx: &MultiIndex, a: &[BigInt]) -> BigInt {
    let p = BinomialPoly::basis(RingSpec::Z, idx.clone());
    ring.reduce(p.evaluate(a))
}

impl TauMagma {
    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn op(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        (0..self.rank())
            .map(|x| {
                let mut v = &a[x] + &b[x];
                for (c, p, q) in &self.tau[x] {
                    v -= c * eval_index(self.ring, p, a) * eval_index(self.ring, q, b);
                }
                self.ring.reduce(v)
            })
            .collect()
    }

    /// Coordinate x of μ(a, b) as a polynomial in a_1..a_n (ids 0..n) and b_1..b_n (ids n..2n).
    pub fn law(&self, x: usize) -> BinomialPoly {
        let n = self.rank() as u32;
        let mut p = BinomialPoly::gen(self.ring, x as u32).add(&BinomialPoly::gen(self.ring, n + x as u32));
        for (c, i, j) in &self.tau[x] {
            let idx = MultiIndex::from_pairs(i.entries().iter().copied().chain(j.entries().iter().map(|&(g, k)| (g + n, k))));
            p.add_term(idx, -c);
        }
        p
    }

    /// Points of Z_p^X in mixed-radix order (first generator most significant).
    pub fn points(&self) -> Result<Vec<Vec<BigInt>>> {
        let p = self
            .ring
            .characteristic()
            .ok_or_else(|| Error::Precondition("finite carrier needs Z_p".into()))? as usize;
        let n = self.rank();
        let total = p.checked_pow(n as u32).filter(|&t| t <= 1 << 16).ok_or_else(|| {
            Error::Precondition(format!("carrier of size {p}^{n} is too large to tabulate"))
        })?;
        Ok((0..total).map(|i| tuple_of(i, n, p).into_iter().map(BigInt::from).collect()).collect())
    }

    pub fn point_index(&self, a: &[BigInt]) -> usize {
        let p = self.ring.characteristic().unwrap_or(0) as usize;
        a.iter().fold(0, |acc, x| acc * p + x.to_usize().expect("residue"))
    }

    /// The multiplication table over Z_p.
    pub fn finite(&self) -> Result<FiniteMagma> {
        let pts = self.points()?;
        let labels =
            pts.iter().map(|a| format!("({})", a.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))).collect();
        FiniteMagma::from_fn(labels, |i, j| self.point_index(&self.op(&pts[i], &pts[j])))
    }
}

/// Outcome of an associativity audit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Admissibility {
    /// Exhaustively verified on a finite carrier.
    Admissible,
    /// Sampled box search found nothing; this is not a proof.
    NoCounterexample { checked: usize },
    Counterexample(Vec<BigInt>, Vec<BigInt>, Vec<BigInt>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AuditMode {
    Exhaustive,
    /// All triples with coordinates in [−r, r].
    Box(i64),
}

pub fn check_admissible(m: &TauMagma, mode: AuditMode, exec: Execution) -> Result<Admissibility> {
    match mode {
        AuditMode::Exhaustive => {
            let pts = m.points()?;
            let f = m.finite()?;
            Ok(match f.associativity_counterexample(exec) {
                None => Admissibility::Admissible,
                Some((a, b, c)) => Admissibility::Counterexample(pts[a].clone(), pts[b].clone(), pts[c].clone()),
            })
        }
        AuditMode::Box(r) => {
            let side = (2 * r + 1) as usize;
            let n = m.rank();
            let total = side.pow(n as u32);
            let pts: Vec<Vec<BigInt>> = (0..total)
                .map(|i| tuple_of(i, n, side).into_iter().map(|d| BigInt::from(d as i64 - r)).collect())
                .collect();
            let hit = par::find_first(exec, total, |i| {
                let a = &pts[i];
                for b in &pts {
                    let ab = m.op(a, b);
                    for c in &pts {
                        if m.op(&ab, c) != m.op(a, &m.op(b, c)) {
                            return Some((b.clone(), c.clone()));
                        }
                    }
                }
                None
            });
            Ok(match hit {
                Some((i, (b, c))) => Admissibility::Counterexample(pts[i].clone(), b, c),
                None => Admissibility::NoCounterexample { checked: total * total * total },
            })
        }
    }
}

/// ψ(u) at a cell (a₁,…,a_k) of Δ(M_τ): Σ c·p₁(a₁)⋯p_k(a_k).
pub fn psi_eval(ring: RingSpec, u: &TensorElem, cell: &[&[BigInt]]) -> Result<BigInt> {
    let mut s = BigInt::zero();
    for (w, c) in u.terms() {
        if w.len() != cell.len() {
            return Err(Error::Degree(format!("word of length {} on a {}-cell", w.len(), cell.len())));
        }
        let mut v = c.clone();
        for (m, a) in w.0.iter().zip(cell) {
            v *= eval_index(ring, m, a);
        }
        s += v;
    }
    Ok(ring.reduce(s))
}

/// ψ(u) as a cochain on Δ(M_τ) over Z_p (cells indexed as in `delta_from_magma`).
pub fn psi_embed(u: &TensorElem, m: &TauMagma, x: &DeltaSet) -> Result<Cochain> {
    let deg = u.degree_or(1).ok_or_else(|| Error::Degree("inhomogeneous element".into()))?;
    if deg > 3 {
        return Err(Error::Degree(format!("psi in degree {deg}")));
    }
    let pts = m.points()?;
    let n = pts.len();
    let mut c = Cochain::zero(m.ring(), deg);
    for s in 0..x.count(deg) {
        let t = tuple_of(s, deg, n);
        let cell: Vec<&[BigInt]> = t.iter().map(|&i| pts[i].as_slice()).collect();
        c.set(s, psi_eval(m.ring(), u, &cell)?);
    }
    Ok(c)
}

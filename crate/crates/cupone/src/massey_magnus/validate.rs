use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::magnus::{magnus_pairings, RelatorPairings};
use super::massey::{in_span, triple_massey, FreeAlgebra, MasseyAlgebra, SimplicialAlgebra};
use crate::binomial_ring::RingSpec;
use crate::delta_cochains::{cup, presentation_complex, Cochain, DeltaSet, PresentedGroup};
use crate::error::{Error, Result};
use crate::exact_linear::{unimodular_inverse, IntMatrix};
use crate::minimal_model::ModelStage;
use crate::par::{self, Execution};

/// The eight triples whose Massey products span H² of the Borromean stage-2 model (1-based).
pub const BORROMEAN_TRIPLES: [[usize; 3]; 8] =
    [[1, 1, 2], [1, 2, 2], [1, 1, 3], [1, 3, 3], [2, 2, 3], [2, 3, 3], [1, 2, 3], [1, 3, 2]];

/// value(simplicial) = sign · ε over the index string, reversed or not.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Calibration {
    pub sign: i32,
    pub reversed: bool,
}

impl Calibration {
    const ALL: [Calibration; 4] = [
        Calibration { sign: 1, reversed: false },
        Calibration { sign: -1, reversed: false },
        Calibration { sign: 1, reversed: true },
        Calibration { sign: -1, reversed: true },
    ];

    fn apply(&self, idx: &[usize], eps: impl Fn(&[usize]) -> BigInt) -> BigInt {
        let mut i = idx.to_vec();
        if self.reversed {
            i.reverse();
        }
        eps(&i) * self.sign
    }
}

impl std::fmt::Display for Calibration {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = if self.sign < 0 { "-" } else { "+" };
        write!(f, "{s}eps{}", if self.reversed { " (reversed indices)" } else { "" })
    }
}

/// One compared value: generator indices (0-based), relator, both sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub index: Vec<usize>,
    pub relator: usize,
    pub simplicial: BigInt,
    pub magnus: BigInt,
}

#[derive(Clone, Debug)]
pub struct CrossValidation {
    /// None when every compared value is zero on both sides.
    pub cup: Option<Calibration>,
    pub massey: Option<Calibration>,
    pub cups: Vec<Comparison>,
    pub masseys: Vec<Comparison>,
    pub pairings: Vec<RelatorPairings>,
}

fn eps_of(p: &[RelatorPairings], r: usize, i: &[usize]) -> BigInt {
    match i {
        [a, b] => p[r].eps2[*a][*b].clone(),
        [a, b, c] => p[r].eps3[*a][*b][*c].clone(),
        _ => unreachable!("pairings have degree 2 or 3"),
    }
}

// picks the first calibration matching every entry; the raw Magnus values are stored
fn calibrate(what: &str, entries: &mut [Comparison], p: &[RelatorPairings]) -> Result<Option<Calibration>> {
    let raw = |e: &Comparison, c: &Calibration| c.apply(&e.index, |i| eps_of(p, e.relator, i));
    if entries.iter().all(|e| e.simplicial.is_zero() && Calibration::ALL.iter().all(|c| raw(e, c).is_zero())) {
        return Ok(None);
    }
    let c = Calibration::ALL.iter().find(|c| entries.iter().all(|e| raw(e, c) == e.simplicial)).copied();
    match c {
        Some(c) => {
            for e in entries.iter_mut() {
                e.magnus = raw(e, &c);
            }
            Ok(Some(c))
        }
        None => {
            let bad = entries
                .iter()
                .find(|e| Calibration::ALL.iter().all(|c| raw(e, c).abs() != e.simplicial.abs()))
                .or_else(|| entries.iter().find(|e| !e.simplicial.is_zero()))
                .expect("a nonzero entry");
            Err(Error::Internal(format!(
                "{what} discrepancy at {:?} on relator {}: simplicial {}, Magnus {}",
                bad.index.iter().map(|i| i + 1).collect::<Vec<_>>(),
                bad.relator + 1,
                bad.simplicial,
                eps_of(p, bad.relator, &bad.index)
            )))
        }
    }
}

/// Cup products and triple Massey products on the presentation complex, evaluated on
/// relator cycles, against the Magnus coefficients of the relators. Only values that
/// are well defined on the cycles are compared.
pub fn cross_validate(p: &PresentedGroup, exec: Execution) -> Result<CrossValidation> {
    let pc = presentation_complex(p, RingSpec::Z)?;
    let x = &pc.delta;
    let pairings = magnus_pairings(p)?;
    let m = p.gens.len();
    let duals: Vec<(usize, Cochain)> = (0..m).filter_map(|g| pc.generator_dual(g).map(|c| (g, c))).collect();
    let cycles: Vec<(usize, Vec<BigInt>)> =
        (0..p.relators.len()).filter_map(|r| pc.relator_cycle(r).ok().map(|c| (r, c))).collect();
    let alg = SimplicialAlgebra::new(x, duals.iter().map(|(_, c)| c.clone()).collect())?;

    let mut cups = Vec::new();
    let mut products = vec![vec![None; m]; m];
    for (i, u) in &duals {
        for (j, v) in &duals {
            let c = cup(x, u, v)?;
            for (r, z) in &cycles {
                cups.push(Comparison { index: vec![*i, *j], relator: *r, simplicial: c.evaluate(z), magnus: BigInt::zero() });
            }
            products[*i][*j] = Some(c);
        }
    }
    let cup_cal = calibrate("cup product", &mut cups, &pairings)?;

    // ⟨u_i,u_j,u_k⟩ is well defined on the cycles when u_i∪H¹ and H¹∪u_k vanish there
    let vanishes = |c: &Option<Cochain>| cycles.iter().all(|(_, z)| c.as_ref().is_none_or(|c| c.evaluate(z).is_zero()));
    let mut triples = Vec::new();
    for (i, _) in &duals {
        for (j, _) in &duals {
            for (k, _) in &duals {
                let defined = duals.iter().all(|(l, _)| vanishes(&products[*i][*l]) && vanishes(&products[*l][*k]));
                if defined {
                    triples.push([*i, *j, *k]);
                }
            }
        }
    }
    let pos = |g: usize| duals.iter().position(|(h, _)| *h == g).expect("dual");
    let values = par::map(exec, &triples, |t| -> Result<Option<Vec<BigInt>>> {
        let u = [&duals[pos(t[0])].1, &duals[pos(t[1])].1, &duals[pos(t[2])].1];
        match triple_massey(&alg, u) {
            Ok(res) => Ok(Some(cycles.iter().map(|(_, z)| res.rep.evaluate(z)).collect())),
            Err(Error::Precondition(_)) => Ok(None),
            Err(e) => Err(e),
        }
    });
    let mut masseys = Vec::new();
    for (t, v) in triples.iter().zip(values) {
        if let Some(v) = v? {
            for ((r, _), s) in cycles.iter().zip(v) {
                masseys.push(Comparison { index: t.to_vec(), relator: *r, simplicial: s, magnus: BigInt::zero() });
            }
        }
    }
    let massey_cal = calibrate("Massey product", &mut masseys, &pairings)?;
    Ok(CrossValidation { cup: cup_cal, massey: massey_cal, cups, masseys, pairings })
}

/// The Magnus gate for a candidate relator family of L(n): all degree-2 pairings vanish,
/// the calibrated repeated-index Massey data vanish, and ⟨u₁,u₂,u₃⟩/(−n), ⟨u₁,u₃,u₂⟩/n
/// form a basis of Z^{relators}.
#[derive(Clone, Debug)]
pub struct BorromeanGate {
    pub n: u64,
    pub calibration: Calibration,
    pub degree2_zero: bool,
    pub repeated_zero: bool,
    pub m123: Vec<BigInt>,
    pub m132: Vec<BigInt>,
    pub unimodular: bool,
}

impl BorromeanGate {
    pub fn passed(&self) -> bool {
        self.degree2_zero && self.repeated_zero && self.unimodular
    }
}

pub fn borromean_gate(p: &PresentedGroup, n: u64, calibration: Calibration) -> Result<BorromeanGate> {
    if p.gens.len() != 3 || p.relators.len() != 2 || n == 0 {
        return Err(Error::Precondition("a Borromean candidate has 3 generators, 2 relators and n ≥ 1".into()));
    }
    let pairings = magnus_pairings(p)?;
    let val = |t: [usize; 3], r: usize| calibration.apply(&t, |i| eps_of(&pairings, r, i));
    let degree2_zero = pairings.iter().all(|q| q.degree2_vanishes());
    let repeated_zero = BORROMEAN_TRIPLES[..6]
        .iter()
        .all(|t| (0..2).all(|r| val([t[0] - 1, t[1] - 1, t[2] - 1], r).is_zero()));
    let m123: Vec<BigInt> = (0..2).map(|r| val([0, 1, 2], r)).collect();
    let m132: Vec<BigInt> = (0..2).map(|r| val([0, 2, 1], r)).collect();
    let nb = BigInt::from(n);
    let divisible = m123.iter().chain(&m132).all(|c| (c % &nb).is_zero());
    let unimodular = divisible && {
        let a: Vec<BigInt> = m123.iter().map(|c| -(c / &nb)).collect();
        let b: Vec<BigInt> = m132.iter().map(|c| c / &nb).collect();
        (&a[0] * &b[1] - &a[1] * &b[0]).abs().is_one()
    };
    Ok(BorromeanGate { n, calibration, degree2_zero, repeated_zero, m123, m132, unimodular })
}

/// A triple computed in the stage model, pushed to H²(X), and computed in C*(X).
#[derive(Clone, Debug)]
pub struct DualRoute {
    pub triple: [usize; 3],
    pub free: Vec<BigInt>,
    pub pushed: Vec<BigInt>,
    pub simplicial: Vec<BigInt>,
    pub agree: bool,
}

/// ⟨[x_i],[x_j],[x_k]⟩ in M_n versus ⟨u_i,u_j,u_k⟩ in C*(X) with u = ρ(x): H²(ρ) of the
/// first must lie in the second modulo its indeterminacy. Triples are 0-based.
pub fn dual_route(stage: &ModelStage, x: &DeltaSet, triples: &[[usize; 3]], exec: Execution) -> Result<Vec<DualRoute>> {
    let free = FreeAlgebra::new(stage, exec)?;
    let rho1: Vec<Cochain> = stage.h1_basis.iter().map(|&g| stage.rho[g as usize].clone()).collect();
    let simp = SimplicialAlgebra::new(x, rho1.clone())?;
    let orders = simp.h2_orders();
    par::map(exec, triples, |t| {
        let f = triple_massey(&free, [&free.h1()[t[0]], &free.h1()[t[1]], &free.h1()[t[2]]])?;
        let s = triple_massey(&simp, [&rho1[t[0]], &rho1[t[1]], &rho1[t[2]]])?;
        let pushed = stage.h2_map.mul_vec(&f.coords);
        let diff: Vec<BigInt> = pushed.iter().zip(&s.coords).map(|(a, b)| a - b).collect();
        let agree = in_span(&diff, &s.indeterminacy, &orders)?;
        Ok(DualRoute { triple: *t, free: f.coords, pushed, simplicial: s.coords, agree })
    })
    .into_iter()
    .collect()
}

/// Whether the Massey products of `triples` (0-based) form a basis of H²(M_n).
pub fn massey_basis(stage: &ModelStage, triples: &[[usize; 3]], exec: Execution) -> Result<bool> {
    let free = FreeAlgebra::new(stage, exec)?;
    let h2 = &stage.h2;
    if !h2.invariants.torsion.is_empty() || triples.len() != h2.invariants.rank {
        return Ok(false);
    }
    let cols = triples
        .iter()
        .map(|t| Ok(triple_massey(&free, [&free.h1()[t[0]], &free.h1()[t[1]], &free.h1()[t[2]]])?.coords))
        .collect::<Result<Vec<_>>>()?;
    Ok(unimodular_inverse(&IntMatrix::from_columns(stage.ring(), h2.invariants.rank, &cols)).is_ok())
}

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::exterior::{h2_free_d0, ExteriorH2};
use super::graded::{d_images, d_matrix, WordBasis};
use crate::binomial_ring::{MultiIndex, RingSpec};
use crate::error::{Error, Result};
use crate::exact_linear::{
    cohomology_at, kernel_basis, map_analysis, smith, solve_in_image, AbelianInvariants, Cohomology, FgGroup,
    IntMatrix, Solution, ZpEchelon,
};
use crate::free_dga::{cup1_hirsch, Differential, TensorElem};
use crate::par::Execution;

/// Largest T³ truncation the Z_p route will tabulate.
pub const ZP_T3_LIMIT: usize = 400_000;

/// One generator of H²(M_n): its order (None = infinite) and a cocycle.
#[derive(Clone, Debug)]
pub struct H2Class {
    pub order: Option<BigInt>,
    pub rep: TensorElem,
    pub label: String,
    /// (a, b) when the class is [x_a⊗x_b].
    pub pair: Option<(usize, usize)>,
}

/// H² of a stage model: invariants, generators (torsion first) and a coordinate functional.
#[derive(Clone, Debug)]
pub struct StageH2 {
    pub invariants: AbelianInvariants,
    pub classes: Vec<H2Class>,
    pub route: &'static str,
    functional: Functional,
}

#[derive(Clone, Debug)]
enum Functional {
    Exterior(ExteriorH2),
    Stage2(Box<Stage2>),
    Zp(Box<ZpTruncation>),
}

impl StageH2 {
    pub fn group(&self) -> FgGroup {
        FgGroup { orders: self.classes.iter().map(|c| c.order.clone()).collect() }
    }

    /// Coordinates of a 2-cocycle of the stage, torsion entries reduced.
    pub fn coordinates(&self, z: &TensorElem) -> Result<Vec<BigInt>> {
        match &self.functional {
            Functional::Exterior(e) => e.coordinates(z),
            Functional::Stage2(s) => s.coordinates(z),
            Functional::Zp(t) => t.coordinates(z),
        }
    }
}

/// H²(M₁) over Z: the exterior classes [x_a⊗x_b].
pub fn h2_stage1_z(m: usize) -> Result<StageH2> {
    let e = h2_free_d0(m)?;
    let names: Vec<String> = (1..=m).map(|i| format!("x{i}")).collect();
    let classes = (0..e.rank())
        .map(|i| H2Class { order: None, rep: e.rep(i), label: e.rep(i).render(&names), pair: Some(e.pairs[i]) })
        .collect();
    Ok(StageH2 { invariants: AbelianInvariants::free(e.rank()), classes, route: "exterior", functional: Functional::Exterior(e) })
}

#[derive(Clone, Debug)]
struct Stage2 {
    ext: ExteriorH2,
    diff: Differential,
    m: usize,
    dy: Vec<TensorElem>,
    // Λ² coordinates ↦ Λ²/K coordinates
    k_u: IntMatrix,
    k_slots: Vec<(usize, Option<BigInt>)>,
    // E basis as columns over the (y_j, x_a) slots, index j·m + a
    e_basis: IntMatrix,
    completions: Vec<TensorElem>,
}

fn single(idx: &MultiIndex) -> Option<u32> {
    match idx.entries() {
        [(g, 1)] => Some(*g),
        _ => None,
    }
}

/// H²(M₂) over Z as (Λ²(X₁)/K) ⊕ E, with K spanned by the [dy] and
/// E = ker(H¹ ⊗ span(Y) → Λ³(X₁), [a]⊗y ↦ [a⊗dy]). Generators of level 1 must
/// come first, with d_0 on them, and each dy must lie in T²(X₁).
pub fn h2_stage2_z(diff: &Differential) -> Result<StageH2> {
    let ring = diff.ring();
    if ring != RingSpec::Z {
        return Err(Error::Precondition("the structured stage-2 route is over Z".into()));
    }
    let levels = &diff.gens().levels;
    let m = levels.iter().take_while(|&&l| l == 1).count();
    if levels[m..].iter().any(|&l| l != 2) || levels.iter().any(|&l| l > 2) {
        return Err(Error::Precondition("expected level-1 generators followed by level-2 generators".into()));
    }
    let s = levels.len() - m;
    let mut ext = h2_free_d0(m)?;
    let dy: Vec<TensorElem> = diff.tau()[m..].to_vec();
    // K in Λ² coordinates
    let kcols: Vec<Vec<BigInt>> = dy.iter().map(|t| ext.coordinates(t)).collect::<Result<_>>()?;
    let np = ext.rank();
    let kmat = IntMatrix::from_columns(ring, np, &kcols);
    let sk = smith(&kmat, true, false);
    let kr = sk.rank();
    let k_u = sk.u.clone().expect("requested");
    let k_uinv = sk.u_inv.clone().expect("requested");
    let mut k_slots = Vec::new();
    for (i, d) in sk.diag.iter().enumerate() {
        if d != &BigInt::from(1) {
            k_slots.push((i, Some(d.clone())));
        }
    }
    for i in kr..np {
        k_slots.push((i, None));
    }
    let names = diff.names().to_vec();
    let mut classes = Vec::new();
    for (i, ord) in &k_slots {
        let mut rep = TensorElem::zero(ring);
        for (p, c) in k_uinv.column(*i).iter().enumerate() {
            rep.add_scaled(&ext.rep(p), c);
        }
        classes.push(H2Class { order: ord.clone(), label: rep.render(&names), rep, pair: None });
    }
    // the pairing e
    let mut ecols = Vec::with_capacity(m * s);
    for t in &dy {
        for a in 0..m {
            let x = TensorElem::gen(ring, a as u32);
            ecols.push(ext.coordinates3(&crate::free_dga::cup(&x, t)?)?);
        }
    }
    let nt = super::exterior::exterior_triples(m).len();
    let emat = IntMatrix::from_columns(ring, nt, &ecols);
    let ebasis = kernel_basis(&emat);
    let mut completions = Vec::new();
    for v in &ebasis {
        let mut target = TensorElem::zero(ring);
        let mut lead = TensorElem::zero(ring);
        for (j, t) in dy.iter().enumerate() {
            for a in 0..m {
                let c = &v[j * m + a];
                if c.is_zero() {
                    continue;
                }
                let x = TensorElem::gen(ring, a as u32);
                target.add_scaled(&crate::free_dga::cup(&x, t)?, c);
                lead.add_scaled(&crate::free_dga::cup(&x, &TensorElem::gen(ring, (m + j) as u32))?, c);
            }
        }
        let c = ext
            .primitive3(&target)?
            .ok_or_else(|| Error::Internal("E element without a completion".into()))?;
        let rep = lead.add(&c);
        if !diff.apply_d(&rep)?.is_zero() {
            return Err(Error::Internal("completed E representative is not a cocycle".into()));
        }
        classes.push(H2Class { order: None, label: lead.render(&names), rep, pair: None });
        completions.push(c);
    }
    let e_basis = IntMatrix::from_columns(ring, m * s, &ebasis);
    let free = k_slots.iter().filter(|(_, o)| o.is_none()).count() + ebasis.len();
    let torsion: Vec<BigInt> = k_slots.iter().filter_map(|(_, o)| o.clone()).collect();
    let invariants = AbelianInvariants { rank: free, torsion };
    let st = Stage2 { ext, diff: diff.clone(), m, dy, k_u, k_slots, e_basis, completions };
    Ok(StageH2 { invariants, classes, route: "exact sequence", functional: Functional::Stage2(Box::new(st)) })
}

impl Stage2 {
    fn coordinates(&self, z: &TensorElem) -> Result<Vec<BigInt>> {
        let ring = RingSpec::Z;
        if !self.diff.apply_d(z)?.is_zero() {
            return Err(Error::Precondition("not a cocycle".into()));
        }
        z.require_degree(2, "class")?;
        let (m, s) = (self.m, self.dy.len());
        let mut n = vec![BigInt::zero(); m * s];
        let mut w = TensorElem::zero(ring);
        for (word, c) in z.terms() {
            let low = |i: &MultiIndex| i.max_gen().is_none_or(|g| (g as usize) < m);
            let (f, g) = (&word.0[0], &word.0[1]);
            if low(f) && low(g) {
                w.add_term(word.clone(), c.clone());
                continue;
            }
            match (single(f), single(g)) {
                (Some(a), Some(y)) if (a as usize) < m && (y as usize) >= m => {
                    n[(y as usize - m) * m + a as usize] += c;
                }
                // y⊗a = −a⊗y + dy∪₁a − d(y∪₁a)
                (Some(y), Some(a)) if (a as usize) < m && (y as usize) >= m => {
                    let j = y as usize - m;
                    n[j * m + a as usize] -= c;
                    w.add_scaled(&cup1_hirsch(&self.dy[j], &TensorElem::gen(ring, a))?, c);
                }
                _ => {
                    return Err(Error::Precondition(format!(
                        "term {} is outside the range of the stage-2 functional",
                        word.render(self.diff.names())
                    )))
                }
            }
        }
        let t = match solve_in_image(&self.e_basis, &n)? {
            Solution::Solved(t) => t,
            Solution::Unsolvable { .. } => return Err(Error::Internal("filtration-one part outside E".into())),
        };
        for (tl, c) in t.iter().zip(&self.completions) {
            w.add_scaled(c, &-tl);
        }
        let lam = self.ext.coordinates(&w)?;
        let q = self.k_u.mul_vec(&lam);
        let mut out: Vec<BigInt> = self
            .k_slots
            .iter()
            .map(|(row, ord)| match ord {
                Some(d) => q[*row].mod_floor(d),
                None => q[*row].clone(),
            })
            .collect();
        out.extend(t);
        Ok(out)
    }
}

/// H² of the filtered truncation F_w T (generator weight = level), computed
/// directly; for w ≥ 3 it agrees with H²(M₂).
#[derive(Clone, Debug)]
pub struct FilteredH2 {
    pub weight: u32,
    pub basis: WordBasis,
    pub cohomology: Cohomology,
    diff: Differential,
}

pub fn h2_filtered(diff: &Differential, w: u32, exec: Execution) -> Result<FilteredH2> {
    let weights = diff.gens().levels.clone();
    let cap = diff.ring().max_exponent();
    let t1 = WordBasis::weighted(&weights, 1, 1, w, cap);
    let t2 = WordBasis::weighted(&weights, 2, 1, w, cap);
    let t3 = WordBasis::weighted(&weights, 3, 1, w, cap);
    let a = d_matrix(diff, &t1, &t2, exec)?;
    let b = d_matrix(diff, &t2, &t3, exec)?;
    Ok(FilteredH2 { weight: w, cohomology: cohomology_at(&a, &b)?, basis: t2, diff: diff.clone() })
}

impl FilteredH2 {
    pub fn coordinates(&self, z: &TensorElem) -> Result<Vec<BigInt>> {
        if !self.diff.apply_d(z)?.is_zero() {
            return Err(Error::Precondition("not a cocycle".into()));
        }
        self.cohomology.coordinates(&self.basis.coords(z)?)
    }
}

/// Comparison of the structured H² with the filtered truncations.
#[derive(Clone, Debug)]
pub struct SplittingAudit {
    pub weights: Vec<u32>,
    pub invariants_agree: bool,
    pub classes_iso: bool,
}

impl SplittingAudit {
    pub fn passed(&self) -> bool {
        self.invariants_agree && self.classes_iso
    }
}

pub fn audit_stage2(diff: &Differential, h2: &StageH2, cap: u32, exec: Execution) -> Result<SplittingAudit> {
    let mut agree = true;
    let mut iso = true;
    let weights: Vec<u32> = (3..=cap.max(3)).collect();
    for &w in &weights {
        let f = h2_filtered(diff, w, exec)?;
        agree &= f.cohomology.invariants == h2.invariants;
        let cols: Vec<Vec<BigInt>> = h2.classes.iter().map(|c| f.coordinates(&c.rep)).collect::<Result<_>>()?;
        let p = IntMatrix::from_columns(RingSpec::Z, f.cohomology.generators.len(), &cols);
        let target = FgGroup::of(&f.cohomology);
        iso &= map_analysis(&p, &h2.group(), &target).map(|a| a.is_iso()).unwrap_or(false);
    }
    Ok(SplittingAudit { weights, invariants_agree: agree, classes_iso: iso })
}

/// T¹ → T² → T³ over Z_p with all exponents below p: finite, handled by echelon forms.
#[derive(Clone, Debug)]
struct ZpTruncation {
    p: u64,
    diff: Differential,
    t2: WordBasis,
    free_cols: Vec<usize>,
    coh: Cohomology,
}

fn residue(c: &BigInt, p: u64) -> u64 {
    c.mod_floor(&BigInt::from(p)).to_u64().expect("residue")
}

/// Truncation sizes (|T¹|, |T²|, |T³|) over Z_p with n generators.
pub fn zp_truncation_sizes(n: usize, p: u64) -> Option<(usize, usize, usize)> {
    let t1 = (p as usize).checked_pow(n as u32)? - 1;
    Some((t1, t1.checked_mul(t1)?, t1.checked_mul(t1)?.checked_mul(t1)?))
}

/// ker(d: T² → T³) over Z_p: the echelon form of d² and its free columns.
pub(crate) fn zp_cocycles(diff: &Differential, exec: Execution) -> Result<(WordBasis, WordBasis, ZpEchelon)> {
    let ring = diff.ring();
    let p = ring.characteristic().ok_or_else(|| Error::Precondition("the truncated route is over Z_p".into()))?;
    let n = diff.gens().len();
    let (_, _, s3) = zp_truncation_sizes(n, p).unwrap_or((0, 0, usize::MAX));
    if s3 > ZP_T3_LIMIT {
        return Err(Error::StageCap(format!("T³ over Z_{p} with {n} generators has {s3} words")));
    }
    let t1 = WordBasis::truncated(n, 1, p);
    let t2 = WordBasis::truncated(n, 2, p);
    let t3 = WordBasis::truncated(n, 3, p);
    let imgs = d_images(diff, &t2, exec)?;
    let mut rows: Vec<Vec<(usize, u64)>> = vec![Vec::new(); t3.len()];
    for (j, img) in imgs.iter().enumerate() {
        for (w, c) in img.terms() {
            let i = t3.index(w).ok_or_else(|| Error::Internal("d leaves the Z_p truncation".into()))?;
            rows[i].push((j, residue(c, p)));
        }
    }
    let mut e = ZpEchelon::new(p, t2.len());
    for r in rows.iter().filter(|r| !r.is_empty()) {
        e.push(r);
        if e.rank() == t2.len() {
            break;
        }
    }
    Ok((t1, t2, e))
}

/// H² of a stage over Z_p by direct linear algebra on the truncation.
pub fn h2_stage_zp(diff: &Differential, exec: Execution) -> Result<StageH2> {
    let ring = diff.ring();
    let (t1, t2, e) = zp_cocycles(diff, exec)?;
    let p = ring.characteristic().expect("checked");
    let free_cols = e.free_columns();
    let null = e.null_space();
    let imgs = d_images(diff, &t1, exec)?;
    let cols: Vec<Vec<BigInt>> = imgs
        .iter()
        .map(|img| {
            let v = t2.coords(img)?;
            Ok(free_cols.iter().map(|&f| v[f].clone()).collect())
        })
        .collect::<Result<_>>()?;
    let a = IntMatrix::from_columns(ring, free_cols.len(), &cols);
    let coh = cohomology_at(&a, &IntMatrix::zero(ring, 0, free_cols.len()))?;
    let names = diff.names().to_vec();
    let classes = coh
        .generators
        .iter()
        .map(|g| {
            let mut full = vec![0u64; t2.len()];
            for (k, c) in g.rep.iter().enumerate() {
                let c = residue(c, p);
                if c == 0 {
                    continue;
                }
                for (x, y) in full.iter_mut().zip(&null[k]) {
                    *x = (*x + c * y) % p;
                }
            }
            let v: Vec<BigInt> = full.into_iter().map(BigInt::from).collect();
            let rep = t2.elem(ring, &v);
            H2Class { order: None, label: rep.render(&names), rep, pair: None }
        })
        .collect();
    let invariants = coh.invariants.clone();
    let t = ZpTruncation { p, diff: diff.clone(), t2, free_cols, coh };
    Ok(StageH2 { invariants, classes, route: "Z_p truncation", functional: Functional::Zp(Box::new(t)) })
}

impl ZpTruncation {
    fn coordinates(&self, z: &TensorElem) -> Result<Vec<BigInt>> {
        if !self.diff.apply_d(z)?.is_zero() {
            return Err(Error::Precondition("not a cocycle".into()));
        }
        let v = self.t2.coords(z)?;
        let _ = self.p;
        self.coh.coordinates(&self.free_cols.iter().map(|&f| v[f].clone()).collect::<Vec<_>>())
    }
}

/// dim H¹ of a stage over Z_p: the kernel of d on T¹.
pub fn h1_dim_zp(diff: &Differential, exec: Execution) -> Result<usize> {
    let ring = diff.ring();
    let p = ring.characteristic().ok_or_else(|| Error::Precondition("Z_p only".into()))?;
    let n = diff.gens().len();
    let t1 = WordBasis::truncated(n, 1, p);
    let t2 = WordBasis::truncated(n, 2, p);
    let imgs = d_images(diff, &t1, exec)?;
    let mut e = ZpEchelon::new(p, t2.len());
    for img in &imgs {
        let row: Vec<(usize, u64)> = img
            .terms()
            .iter()
            .map(|(w, c)| Ok((t2.index(w).ok_or_else(|| Error::Internal("d leaves T²".into()))?, residue(c, p))))
            .collect::<Result<_>>()?;
        e.push(&row);
    }
    Ok(t1.len() - e.rank())
}

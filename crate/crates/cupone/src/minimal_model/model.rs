use num_bigint::BigInt;
use num_traits::Zero;

use super::exterior::flat_names;
use super::h2::{h2_stage1_z, h2_stage2_z, h2_stage_zp, StageH2};
use crate::binomial_ring::RingSpec;
use crate::delta_cochains::{coboundary, coboundary_matrix, cohomology, evaluate_free, Cochain, DeltaSet};
use crate::error::{Error, Result};
use crate::exact_linear::{
    map_analysis, solve_in_image, unimodular_inverse, AbelianInvariants, Cohomology, FgGroup, IntMatrix, MapAnalysis,
    Solution,
};
use crate::free_dga::{Differential, GeneratorSet, TensorElem};
use crate::par::Execution;

/// A free kernel class of H²(ρ_n): coordinates in the stage H² basis and a cocycle.
#[derive(Clone, Debug)]
pub struct KernelClass {
    pub coords: Vec<BigInt>,
    pub rep: TensorElem,
}

/// Stage n of a 1-minimal model of a Δ-set.
#[derive(Clone, Debug)]
pub struct ModelStage {
    pub n: u32,
    /// Set once an extension step found ker H²(ρ_n) = 0.
    pub complete: bool,
    pub diff: Differential,
    pub rho: Vec<Cochain>,
    /// Level-1 generator ids.
    pub h1_basis: Vec<u32>,
    pub h2: StageH2,
    pub target_h2: Cohomology,
    /// Matrix of H²(ρ_n) in the stage basis and the target basis.
    pub h2_map: IntMatrix,
    pub analysis: MapAnalysis,
    /// None when the kernel is not free (only possible with torsion in H²(M_n)).
    pub ker_basis: Option<Vec<KernelClass>>,
}

impl ModelStage {
    pub fn ring(&self) -> RingSpec {
        self.diff.ring()
    }

    pub fn names(&self) -> &[String] {
        self.diff.names()
    }

    pub fn kernel_rank(&self) -> usize {
        self.ker_basis.as_ref().map_or(0, |k| k.len())
    }
}

fn dense(x: &DeltaSet, c: &Cochain, dim: usize) -> Vec<BigInt> {
    if c.is_zero() {
        vec![BigInt::zero(); x.count(dim)]
    } else {
        c.to_dense(x.count(dim))
    }
}

fn check_connected(x: &DeltaSet) -> Result<()> {
    let h0 = cohomology(x, 0)?;
    if h0.invariants != AbelianInvariants::free(1) {
        return Err(Error::Precondition(format!("H^0 = {} (the complex is not connected)", h0.invariants)));
    }
    Ok(())
}

/// M₁ = (T(X₁), d_0) with ρ₁ given by an SNF basis of H¹(X; R).
pub fn stage1(x: &DeltaSet, exec: Execution) -> Result<ModelStage> {
    check_connected(x)?;
    let h1 = cohomology(x, 1)?;
    if !h1.invariants.torsion.is_empty() {
        return Err(Error::Precondition(format!("H^1 = {} is not free", h1.invariants)));
    }
    let reps = h1.generators.iter().map(|g| Cochain::from_dense(x.ring(), 1, &g.rep)).collect();
    assemble_stage1(x, reps, exec)
}

/// Stage 1 with ρ₁ on prescribed cocycles, which must form a basis of H¹.
pub fn stage1_with_basis(x: &DeltaSet, reps: Vec<Cochain>, exec: Execution) -> Result<ModelStage> {
    check_connected(x)?;
    let h1 = cohomology(x, 1)?;
    if !h1.invariants.torsion.is_empty() {
        return Err(Error::Precondition(format!("H^1 = {} is not free", h1.invariants)));
    }
    if reps.len() != h1.generators.len() {
        return Err(Error::Precondition(format!("{} cocycles for H^1 of rank {}", reps.len(), h1.generators.len())));
    }
    let mut cols = Vec::new();
    for (i, r) in reps.iter().enumerate() {
        if !coboundary(x, r)?.is_zero() {
            return Err(Error::Precondition(format!("cochain {} is not a cocycle", i + 1)));
        }
        cols.push(h1.coordinates(&dense(x, r, 1))?);
    }
    unimodular_inverse(&IntMatrix::from_columns(x.ring(), reps.len(), &cols))
        .map_err(|_| Error::Precondition("the cocycles do not form a basis of H^1".into()))?;
    assemble_stage1(x, reps, exec)
}

fn assemble_stage1(x: &DeltaSet, rho: Vec<Cochain>, exec: Execution) -> Result<ModelStage> {
    let ring = x.ring();
    let m = rho.len();
    let diff = Differential::zero(ring, GeneratorSet::flat(flat_names(m)));
    let h2 = match ring {
        RingSpec::Z => h2_stage1_z(m)?,
        _ => h2_stage_zp(&diff, exec)?,
    };
    finish(x, 1, diff, rho, h2)
}

fn finish(x: &DeltaSet, n: u32, diff: Differential, rho: Vec<Cochain>, h2: StageH2) -> Result<ModelStage> {
    let ring = x.ring();
    audit_rho(x, &diff, &rho)?;
    let target_h2 = cohomology(x, 2)?;
    let cols: Vec<Vec<BigInt>> = h2
        .classes
        .iter()
        .map(|c| target_h2.coordinates(&dense(x, &evaluate_free(x, &c.rep, &rho)?, 2)))
        .collect::<Result<_>>()?;
    let h2_map = IntMatrix::from_columns(ring, target_h2.generators.len(), &cols);
    let analysis = map_analysis(&h2_map, &h2.group(), &FgGroup::of(&target_h2))?;
    let ker_basis = analysis.kernel_basis.as_ref().map(|kb| {
        kb.iter()
            .map(|v| {
                let mut rep = TensorElem::zero(ring);
                for (c, cls) in v.iter().zip(&h2.classes) {
                    rep.add_scaled(&cls.rep, c);
                }
                KernelClass { coords: v.clone(), rep }
            })
            .collect()
    });
    let h1_basis = (0..diff.gens().len() as u32).filter(|&g| diff.gens().levels[g as usize] == 1).collect();
    Ok(ModelStage { n, complete: false, diff, rho, h1_basis, h2, target_h2, h2_map, analysis, ker_basis })
}

/// δ(ρ(g)) = ρ(dg) for every generator.
pub fn audit_rho(x: &DeltaSet, diff: &Differential, rho: &[Cochain]) -> Result<()> {
    for (g, t) in diff.tau().iter().enumerate() {
        let lhs = dense(x, &coboundary(x, &rho[g])?, 2);
        let rhs = dense(x, &evaluate_free(x, t, rho)?, 2);
        if lhs != rhs {
            return Err(Error::Internal(format!("δρ({0}) ≠ ρ(d{0})", diff.names()[g])));
        }
    }
    Ok(())
}

fn new_name(s: &ModelStage, k: &KernelClass, j: usize) -> String {
    let nz: Vec<usize> = (0..k.coords.len()).filter(|&i| !k.coords[i].is_zero()).collect();
    if s.n == 1 {
        if let [i] = nz[..] {
            if let Some((a, b)) = s.h2.classes[i].pair {
                return format!("x{}_{}", a + 1, b + 1);
            }
        }
    }
    format!("y{}_{}", s.n + 1, j + 1)
}

/// The Hirsch extension killing ker H²(ρ_n), with ρ extended by solving δρ(y) = ρ(dy).
pub fn extend_stage(s: &ModelStage, x: &DeltaSet, exec: Execution) -> Result<ModelStage> {
    let ring = s.ring();
    let ker = s
        .ker_basis
        .as_ref()
        .ok_or_else(|| Error::Precondition("ker H²(ρ) is not free".into()))?;
    if ker.is_empty() {
        let mut out = s.clone();
        out.complete = true;
        return Ok(out);
    }
    if ring == RingSpec::Z && s.n >= 2 {
        return Err(Error::StageCap(format!("H² of stage {} over Z is not supported", s.n + 1)));
    }
    let names: Vec<String> = ker.iter().enumerate().map(|(j, k)| new_name(s, k, j)).collect();
    let taus: Vec<TensorElem> = ker.iter().map(|k| k.rep.clone()).collect();
    let diff = s.diff.extend(names, s.n + 1, taus)?;
    let delta1 = coboundary_matrix(x, 1);
    let mut rho = s.rho.clone();
    for k in ker {
        let target = dense(x, &evaluate_free(x, &k.rep, &s.rho)?, 2);
        match solve_in_image(&delta1, &target)? {
            Solution::Solved(c) => rho.push(Cochain::from_dense(ring, 1, &c)),
            Solution::Unsolvable { .. } => {
                return Err(Error::Internal("ρ(dy) is not a coboundary for a kernel class".into()))
            }
        }
    }
    minimality_audit(s)?;
    let h2 = match ring {
        RingSpec::Z => h2_stage2_z(&diff)?,
        _ => h2_stage_zp(&diff, exec)?,
    };
    finish(x, s.n + 1, diff, rho, h2)
}

/// The stored kernel classes are cocycles with the stored coordinates, are killed by
/// H²(ρ_n) and span the kernel.
pub fn minimality_audit(s: &ModelStage) -> Result<()> {
    let Some(ker) = &s.ker_basis else { return Ok(()) };
    for k in ker {
        if !s.diff.apply_d(&k.rep)?.is_zero() {
            return Err(Error::Internal("kernel representative is not a cocycle".into()));
        }
        let c = s.h2.coordinates(&k.rep)?;
        if c != k.coords {
            return Err(Error::Internal("kernel representative has the wrong coordinates".into()));
        }
        let img = s.h2_map.mul_vec(&c);
        let dead = img.iter().zip(&s.target_h2.generators).all(|(v, g)| match &g.order {
            Some(d) => (v % d).is_zero(),
            None => v.is_zero(),
        });
        if !dead {
            return Err(Error::Internal("kernel class survives H²(ρ)".into()));
        }
    }
    if ker.len() != s.analysis.kernel.rank || !s.analysis.kernel.torsion.is_empty() {
        return Err(Error::Internal("kernel basis does not match the kernel".into()));
    }
    Ok(())
}

/// Stages 1..=n (stopping early once complete).
pub fn build_model(x: &DeltaSet, n: u32, exec: Execution) -> Result<Vec<ModelStage>> {
    if n == 0 {
        return Err(Error::OutOfRange("at least one stage".into()));
    }
    let mut out = vec![stage1(x, exec)?];
    while (out.len() as u32) < n {
        let next = extend_stage(out.last().expect("nonempty"), x, exec)?;
        if next.complete {
            out.last_mut().expect("nonempty").complete = true;
            break;
        }
        out.push(next);
    }
    Ok(out)
}

/// κ_n: the torsion of coker H²(ρ_n), with the full cokernel alongside.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KappaInvariant {
    pub n: u32,
    pub cokernel: AbelianInvariants,
    pub torsion: AbelianInvariants,
}

pub fn kappa(s: &ModelStage) -> KappaInvariant {
    KappaInvariant { n: s.n, cokernel: s.analysis.cokernel.clone(), torsion: s.analysis.cokernel.torsion_part() }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Distinguished,
    NotDistinguishedByKappa,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Distinguished => "distinguished",
            Verdict::NotDistinguishedByKappa => "not-distinguished-by-kappa",
        })
    }
}

/// Compares coker H²(ρ_n); with `forget_torsion` only the ranks count.
pub fn compare_kappa(a: &KappaInvariant, b: &KappaInvariant, forget_torsion: bool) -> Verdict {
    let same = if forget_torsion { a.cokernel.rank == b.cokernel.rank } else { a.cokernel == b.cokernel };
    if same {
        Verdict::NotDistinguishedByKappa
    } else {
        Verdict::Distinguished
    }
}

/// Builds both models to stage n and compares κ_n.
pub fn n_step_compare(x: &DeltaSet, y: &DeltaSet, n: u32, forget_torsion: bool, exec: Execution) -> Result<Verdict> {
    let k = |z: &DeltaSet| -> Result<KappaInvariant> {
        let stages = build_model(z, n, exec)?;
        Ok(kappa(stages.last().expect("nonempty")))
    };
    Ok(compare_kappa(&k(x)?, &k(y)?, forget_torsion))
}

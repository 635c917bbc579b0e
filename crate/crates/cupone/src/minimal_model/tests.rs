use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::*;
use crate::binomial_ring::{MultiIndex, RingSpec};
use crate::delta_cochains::{
    borromean_presentation, coboundary, evaluate_free, heisenberg_presentation, presentation_complex, Cochain,
    DeltaSet, PresentationComplex, PresentedGroup,
};
use crate::error::Error;
use crate::exact_linear::AbelianInvariants;
use crate::free_dga::{build_differential, GeneratorSet, TensorElem};
use crate::par::Execution;

const Z: RingSpec = RingSpec::Z;
const SEQ: Execution = Execution::Sequential;

fn b(a: i64) -> BigInt {
    BigInt::from(a)
}

fn inv(rank: usize, torsion: &[i64]) -> AbelianInvariants {
    AbelianInvariants { rank, torsion: torsion.iter().map(|&t| b(t)).collect() }
}

fn complex(text: &str, ring: RingSpec) -> PresentationComplex {
    presentation_complex(&PresentedGroup::parse(text).unwrap(), ring).unwrap()
}

fn word(ring: RingSpec, gs: &[(u32, u32)]) -> TensorElem {
    TensorElem::word(ring, gs.iter().map(|&(g, k)| MultiIndex::single(g, k)).collect())
}

// two vertices, edges v0→v1, v1→v0 and a loop at v0: a wedge of two circles
fn wedge_two_vertices() -> DeltaSet {
    let mut x = DeltaSet::new(Z);
    x.add_cell(0, "v0", vec![]).unwrap();
    x.add_cell(0, "v1", vec![]).unwrap();
    x.add_cell(1, "a", vec![1, 0]).unwrap();
    x.add_cell(1, "b", vec![0, 1]).unwrap();
    x.add_cell(1, "c", vec![0, 0]).unwrap();
    x
}

#[test]
fn exterior_ranks() {
    for m in 1..=3usize {
        assert_eq!(h2_free_d0(m).unwrap().rank(), m * (m - 1) / 2);
        let prof = exterior_profile(Z, m, 4, SEQ).unwrap();
        for (w, h1, h2) in prof {
            assert_eq!(h1, if w == 1 { inv(m, &[]) } else { inv(0, &[]) }, "m={m} w={w}");
            assert_eq!(h2, if w == 2 { inv(m * (m - 1) / 2, &[]) } else { inv(0, &[]) }, "m={m} w={w}");
        }
    }
}

#[test]
fn exterior_coordinates_of_symmetric_cocycles() {
    let e = h2_free_d0(2).unwrap();
    // d(x1∪₁x2) = −x1⊗x2 − x2⊗x1, so x2⊗x1 ~ −x1⊗x2
    assert_eq!(e.coordinates(&word(Z, &[(1, 1), (0, 1)])).unwrap(), vec![b(-1)]);
    // dζ₂(x1) = −x1⊗x1
    assert_eq!(e.coordinates(&word(Z, &[(0, 1), (0, 1)])).unwrap(), vec![b(0)]);
    assert!(e.coordinates(&word(Z, &[(0, 2), (1, 1)])).is_err());
}

#[test]
fn stage1_examples() {
    let wedge = complex("gens: a b\n", Z);
    let s = stage1(&wedge.delta, SEQ).unwrap();
    assert_eq!(s.diff.gens().len(), 2);
    let ker = s.ker_basis.as_ref().unwrap();
    assert_eq!(ker.len(), 1);
    assert_eq!(ker[0].coords, vec![BigInt::one()]);

    let torus = complex("gens: a b\nrel: a b a^-1 b^-1\n", Z);
    let s = stage1(&torus.delta, SEQ).unwrap();
    assert!(s.analysis.is_iso());
    assert_eq!(s.kernel_rank(), 0);
    let s2 = extend_stage(&s, &torus.delta, SEQ).unwrap();
    assert!(s2.complete);
    assert_eq!(s2.n, 1);
    assert_eq!(kappa(&s), KappaInvariant { n: 1, cokernel: inv(0, &[]), torsion: inv(0, &[]) });

    let disconnected = {
        let mut x = DeltaSet::new(Z);
        x.add_cell(0, "p", vec![]).unwrap();
        x.add_cell(0, "q", vec![]).unwrap();
        x
    };
    assert!(matches!(stage1(&disconnected, SEQ), Err(Error::Precondition(_))));
}

#[test]
fn stage1_with_prescribed_basis() {
    let torus = complex("gens: a b\nrel: a b a^-1 b^-1\n", Z);
    let duals: Vec<Cochain> = (0..2).map(|g| torus.generator_dual(g).unwrap()).collect();
    let s = stage1_with_basis(&torus.delta, duals.clone(), SEQ).unwrap();
    assert_eq!(s.rho, duals);
    let doubled = vec![duals[0].scale(&b(2)), duals[1].clone()];
    assert!(stage1_with_basis(&torus.delta, doubled, SEQ).is_err());
}

fn heisenberg_stages(k: usize) -> (PresentationComplex, Vec<ModelStage>) {
    let p = presentation_complex(&heisenberg_presentation(k), Z).unwrap();
    let duals: Vec<Cochain> = (0..2).map(|g| p.generator_dual(g).unwrap()).collect();
    let s1 = stage1_with_basis(&p.delta, duals, SEQ).unwrap();
    let s2 = extend_stage(&s1, &p.delta, SEQ).unwrap();
    (p, vec![s1, s2])
}

#[test]
fn heisenberg_pipeline() {
    for k in [1usize, 2, 3, 6] {
        let (p, st) = heisenberg_stages(k);
        let (s1, s2) = (&st[0], &st[1]);
        let want_h2x = if k == 1 { inv(2, &[]) } else { inv(2, &[k as i64]) };
        assert_eq!(s1.target_h2.invariants, want_h2x, "k={k}");
        let ker = s1.ker_basis.as_ref().unwrap();
        assert_eq!(ker.len(), 1);
        assert_eq!(ker[0].rep, word(Z, &[(0, 1), (1, 1)]).scale(&b(k as i64)), "k={k}");
        assert_eq!(s2.names(), ["x1", "x2", "x1_2"]);
        assert_eq!(s2.h2.invariants, want_h2x, "k={k}");
        assert!(s2.analysis.is_iso(), "k={k}");
        assert!(kappa(s2).torsion.is_trivial());
        for c in &s2.h2.classes {
            assert!(s2.diff.apply_d(&c.rep).unwrap().is_zero());
        }
        // the two free classes on the relator cycles of [g1,g12] and [g2,g12]
        let free: Vec<&H2Class> = s2.h2.classes.iter().filter(|c| c.order.is_none()).collect();
        assert_eq!(free.len(), 2);
        let mut m = [[b(0), b(0)], [b(0), b(0)]];
        for (i, c) in free.iter().enumerate() {
            let v = evaluate_free(&p.delta, &c.rep, &s2.rho).unwrap();
            for r in 0..2 {
                m[i][r] = v.evaluate(&p.relator_cycle(r + 1).unwrap());
            }
        }
        let det = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0];
        assert!(det == b(1) || det == b(-1), "k={k} det={det}");
        assert!(audit_stage2(&s2.diff, &s2.h2, 4, SEQ).unwrap().passed(), "k={k}");
        assert!(s2.diff.check_d_squared(6, SEQ).passed());
    }
}

#[test]
fn stage2_functional_reads_back_classes() {
    let (_, st) = heisenberg_stages(3);
    let s2 = &st[1];
    for (i, c) in s2.h2.classes.iter().enumerate() {
        let mut want = vec![BigInt::zero(); s2.h2.classes.len()];
        want[i] = BigInt::one();
        assert_eq!(s2.h2.coordinates(&c.rep).unwrap(), want);
        // adding a coboundary does not move the class
        let shifted = c.rep.add(&s2.diff.apply_d(&word(Z, &[(2, 1)]).add(&word(Z, &[(0, 2)]))).unwrap());
        assert_eq!(s2.h2.coordinates(&shifted).unwrap(), want);
    }
    // x12⊗x1 rewritten through the Hirsch formula
    let y_a = word(Z, &[(2, 1), (0, 1)]);
    if s2.diff.apply_d(&y_a).unwrap().is_zero() {
        assert!(s2.h2.coordinates(&y_a).is_ok());
    }
}

#[test]
fn zp_stage_examples() {
    for p in [2u64, 3] {
        let r = RingSpec::Zp(p);
        let d = crate::free_dga::Differential::zero(r, GeneratorSet::flat(["x"]));
        let h = h2_stage_zp(&d, SEQ).unwrap();
        assert_eq!(h.invariants, inv(1, &[]), "p={p}");
        // Σ ζ_i⊗ζ_{p−i}, which is ζ_1⊗ζ_{p−1} modulo the acyclic part
        let mut c = TensorElem::zero(r);
        for i in 1..p as u32 {
            c = c.add(&word(r, &[(0, i), (0, p as u32 - i)]));
        }
        assert!(h.coordinates(&c).unwrap()[0] != b(0), "p={p}");
    }
    let r = RingSpec::Zp(3);
    let d = crate::free_dga::Differential::zero(r, GeneratorSet::flat(["x", "y"]));
    assert_eq!(h2_stage_zp(&d, SEQ).unwrap().invariants.rank, 3);
}

#[test]
fn em_comparisons() {
    for p in [2u64, 3, 5] {
        let c = em_comparison(p, 1, SEQ).unwrap();
        assert_eq!(c.free_dims, [1, 1, 1], "p={p}");
        assert_eq!(c.bar_dims, [1, 1, 1], "p={p}");
        assert!(c.is_iso(), "p={p}");
    }
    let c = em_comparison(3, 2, SEQ).unwrap();
    assert_eq!(c.bar_dims, [1, 2, 3]);
    assert!(c.is_iso());
}

#[test]
fn heisenberg_over_z2() {
    let p = presentation_complex(&heisenberg_presentation(2), RingSpec::Zp(2)).unwrap();
    let stages = build_model(&p.delta, 2, SEQ).unwrap();
    // H*(T_{Z_2}(X)) is the polynomial algebra, 6-dimensional in degree 2 on 3 generators
    assert_eq!(stages[0].h2.invariants, inv(6, &[]));
    assert_eq!(stages[0].diff.gens().len(), 3);
    for s in &stages {
        audit_rho(&p.delta, &s.diff, &s.rho).unwrap();
        minimality_audit(s).unwrap();
    }
    assert!(stages[1].analysis.cokernel.is_trivial());
}

#[test]
fn borromean_stage2() {
    for n in [1usize, 2] {
        let p = presentation_complex(&borromean_presentation(n), Z).unwrap();
        let st = build_model(&p.delta, 2, SEQ).unwrap();
        assert_eq!(st.len(), 2);
        let s2 = &st[1];
        assert_eq!(s2.names(), ["x1", "x2", "x3", "x1_2", "x1_3", "x2_3"]);
        assert_eq!(s2.h2.invariants, inv(8, &[]));
        let k = kappa(s2);
        let want = if n == 1 { inv(0, &[]) } else { inv(0, &[n as i64, n as i64]) };
        assert_eq!(k.torsion, want, "n={n}");
    }
}

#[test]
fn stage_cap_over_z() {
    let (p, st) = heisenberg_stages(2);
    let s2 = &st[1];
    if s2.kernel_rank() > 0 {
        assert!(matches!(extend_stage(s2, &p.delta, SEQ), Err(Error::StageCap(_))));
    }
}

#[test]
fn group_realizations() {
    let gens = GeneratorSet::new(vec!["x1".into(), "x2".into(), "x12".into()], vec![1, 1, 2]);
    let k = 2;
    let d = build_differential(gens.clone(), vec![TensorElem::zero(Z), TensorElem::zero(Z), word(Z, &[(0, 1), (1, 1)]).scale(&b(-k))])
        .unwrap();
    let g = realize_group(&d, 2, SEQ).unwrap();
    let law = g.render_law();
    assert_eq!(law[0], "x1: 1 * z(a_x1,1) + 1 * z(b_x1,1)");
    assert_eq!(law[2], "x12: 1 * z(a_x12,1) + 1 * z(b_x12,1) + 2 * z(a_x1,1)*z(b_x2,1)");
    assert_eq!(g.tower.len(), 2);

    let r = RingSpec::Zp(3);
    let d3 = build_differential(gens, vec![TensorElem::zero(r), TensorElem::zero(r), word(r, &[(0, 1), (1, 1)])]).unwrap();
    let g3 = realize_group(&d3, 0, SEQ).unwrap();
    assert_eq!(g3.audit, GroupAudit::Exhaustive { elements: 27 });
    assert_eq!(g3.order(), Some(b(27)));

    let flat = crate::free_dga::Differential::zero(Z, GeneratorSet::flat(["a", "b"]));
    let ab = realize_group(&flat, 2, SEQ).unwrap();
    assert_eq!(ab.op(&[b(3), b(-1)], &[b(2), b(5)]), vec![b(5), b(4)]);
}

#[test]
fn homotopy_on_a_wedge() {
    let x = wedge_two_vertices();
    let s = stage1(&x, SEQ).unwrap();
    let phi0 = s.rho.clone();
    let w = homotopy::construct_homotopy(&x, &phi0, &phi0, 3).unwrap();
    assert!(w.c.iter().all(|c| c.is_zero()));
    let f = Cochain::from_dense(Z, 0, &[b(2), b(-3)]);
    let df = coboundary(&x, &f).unwrap();
    let phi1 = vec![phi0[0].add(&df), phi0[1].clone()];
    let w = construct_homotopy(&x, &phi0, &phi1, 4).unwrap();
    assert!(coboundary(&x, &w.c[0]).unwrap() == phi0[0].sub(&phi1[0]));
    assert!(w.checked > 0);
    let bad = vec![phi0[0].add(&phi0[1]), phi0[1].clone()];
    match construct_homotopy(&x, &phi0, &bad, 3) {
        Err(Error::Precondition(msg)) => assert!(msg.contains("x1")),
        other => panic!("{other:?}"),
    }
}

#[test]
fn comparisons() {
    let a = KappaInvariant { n: 2, cokernel: inv(0, &[2, 2]), torsion: inv(0, &[2, 2]) };
    let c = KappaInvariant { n: 2, cokernel: inv(0, &[3, 3]), torsion: inv(0, &[3, 3]) };
    assert_eq!(compare_kappa(&a, &c, false), Verdict::Distinguished);
    assert_eq!(compare_kappa(&a, &c, true), Verdict::NotDistinguishedByKappa);
    assert_eq!(compare_kappa(&a, &a, false), Verdict::NotDistinguishedByKappa);
}

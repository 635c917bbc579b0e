use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use proptest::prelude::*;

use super::*;
use crate::binomial_ring::RingSpec;

const Z: RingSpec = RingSpec::Z;

fn bi(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&a| BigInt::from(a)).collect()
}

/// Rank over Q by fraction-free elimination.
fn rank_q(m: &IntMatrix) -> usize {
    let mut a: Vec<Vec<BigInt>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
    let (rows, cols) = (m.rows(), m.cols());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in r + 1..rows {
            if a[i][c].is_zero() {
                continue;
            }
            let (f, g) = (a[r][c].clone(), a[i][c].clone());
            for j in 0..cols {
                let v = &a[i][j] * &f - &a[r][j] * &g;
                a[i][j] = v;
            }
        }
        r += 1;
    }
    r
}

fn rank_mod(m: &IntMatrix, p: u64) -> usize {
    let rows = (0..m.rows()).map(|i| {
        m.row(i)
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(j, a)| (j, a.mod_floor(&BigInt::from(p)).to_u64().unwrap()))
            .collect()
    });
    zp_rank(p, m.cols(), rows)
}

fn check_smith(m: &IntMatrix) {
    let s = smith(m, true, true);
    let (u, v) = (s.u.clone().unwrap(), s.v.clone().unwrap());
    let d = u.mul(m).unwrap().mul(&v).unwrap();
    for i in 0..d.rows() {
        for j in 0..d.cols() {
            let want = if i == j && i < s.rank() { s.diag[i].clone() } else { BigInt::zero() };
            assert_eq!(d.get(i, j), &want, "D[{i},{j}]");
        }
    }
    for w in s.diag.windows(2) {
        assert!(w[1].is_multiple_of(&w[0]));
    }
    assert!(s.diag.iter().all(|d| d.is_positive()));
    let ring = m.ring();
    assert_eq!(u.mul(s.u_inv.as_ref().unwrap()).unwrap(), IntMatrix::identity(ring, m.rows()));
    assert_eq!(v.mul(s.v_inv.as_ref().unwrap()).unwrap(), IntMatrix::identity(ring, m.cols()));
    // unimodular: Smith form of U and V is the identity
    for t in [&u, &v] {
        let st = smith(t, false, false);
        assert_eq!(st.rank(), t.rows());
        assert!(st.diag.iter().all(|d| d == &BigInt::from(1)));
    }
}

#[test]
fn smith_examples() {
    assert_eq!(smith(&IntMatrix::from_i64(Z, &[&[2, 0], &[0, 3]]), false, false).diag, bi(&[1, 6]));
    assert_eq!(smith(&IntMatrix::from_i64(Z, &[&[5, 0], &[0, 5]]), false, false).diag, bi(&[5, 5]));
    assert!(smith(&IntMatrix::zero(Z, 3, 2), false, false).diag.is_empty());
    check_smith(&IntMatrix::from_i64(Z, &[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]));
    assert_eq!(
        smith(&IntMatrix::from_i64(Z, &[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]), false, false).diag,
        bi(&[2, 6, 12])
    );
    check_smith(&IntMatrix::zero(Z, 0, 3));
}

#[test]
fn smith_over_field() {
    let f = RingSpec::zp(5).unwrap();
    let m = IntMatrix::from_i64(f, &[&[2, 4], &[1, 2]]);
    let s = smith(&m, true, true);
    assert_eq!(s.diag, bi(&[1]));
    check_smith(&m);
}

#[test]
fn solve_examples() {
    let m = IntMatrix::from_i64(Z, &[&[2]]);
    assert_eq!(solve_in_image(&m, &bi(&[4])).unwrap(), Solution::Solved(bi(&[2])));
    assert!(matches!(solve_in_image(&m, &bi(&[3])).unwrap(), Solution::Unsolvable { .. }));
    let f = RingSpec::zp(5).unwrap();
    let m = IntMatrix::from_i64(f, &[&[2]]);
    assert_eq!(solve_in_image(&m, &bi(&[3])).unwrap(), Solution::Solved(bi(&[4])));
}

#[test]
fn cohomology_examples() {
    // circle: one vertex, one edge, δ⁰ = 0
    let a = IntMatrix::zero(Z, 1, 1);
    let b = IntMatrix::zero(Z, 0, 1);
    let h = cohomology_at(&a, &b).unwrap();
    assert_eq!(h.invariants, AbelianInvariants::free(1));
    // ⟨g | g^k⟩: δ¹ = [k] into the single 2-cell
    for k in [2i64, 3, 6] {
        let a = IntMatrix::from_i64(Z, &[&[k]]);
        let b = IntMatrix::zero(Z, 0, 1);
        let h = cohomology_at(&a, &b).unwrap();
        assert_eq!(h.invariants.to_string(), format!("Z/{k}"));
        assert_eq!(h.coordinates(&bi(&[k + 1])).unwrap(), bi(&[1]));
    }
    // B·A ≠ 0 rejected
    let a = IntMatrix::from_i64(Z, &[&[1]]);
    let b = IntMatrix::from_i64(Z, &[&[1]]);
    assert!(cohomology_at(&a, &b).is_err());
}

#[test]
fn map_analysis_examples() {
    let f = IntMatrix::from_i64(Z, &[&[4]]);
    let r = map_analysis(&f, &FgGroup::free(1), &FgGroup::free(1)).unwrap();
    assert!(r.kernel.is_trivial());
    assert_eq!(r.cokernel.to_string(), "Z/4");
    let f = IntMatrix::from_i64(Z, &[&[3, 0], &[0, 3]]);
    let r = map_analysis(&f, &FgGroup::free(2), &FgGroup::free(2)).unwrap();
    assert_eq!(r.cokernel.to_string(), "Z/3 + Z/3");
    // Λ² of rank one mapped by [k] into a group where the image is killed
    let f = IntMatrix::from_i64(Z, &[&[3]]);
    let tgt = FgGroup { orders: vec![Some(BigInt::from(3))] };
    let r = map_analysis(&f, &FgGroup::free(1), &tgt).unwrap();
    assert_eq!(r.free_kernel_basis().unwrap(), &[bi(&[1])]);
    // torsion source: no free basis, kernel computed as a group
    let src = FgGroup { orders: vec![Some(BigInt::from(4))] };
    let tgt = FgGroup { orders: vec![Some(BigInt::from(2))] };
    let r = map_analysis(&IntMatrix::from_i64(Z, &[&[1]]), &src, &tgt).unwrap();
    assert!(r.free_kernel_basis().is_err());
    assert_eq!(r.kernel.to_string(), "Z/2");
    assert!(r.cokernel.is_trivial());
}

#[test]
fn kernel_of_heisenberg_stage_one() {
    // H²(ρ₁): Λ² = Z → H²(X) = Z/k ⊕ … sends x1x2 to a generator of order k
    for k in [1i64, 2, 3, 6] {
        let tgt = FgGroup { orders: vec![Some(BigInt::from(k)), None, None] };
        let f = IntMatrix::from_i64(Z, &[&[1], &[0], &[0]]);
        let r = map_analysis(&f, &FgGroup::free(1), &tgt).unwrap();
        assert_eq!(r.free_kernel_basis().unwrap(), &[bi(&[k])]);
    }
}

#[test]
fn invariants_text() {
    assert_eq!(AbelianInvariants::default().to_string(), "0");
    assert_eq!(AbelianInvariants::from_cyclic(2, &bi(&[2, 3])).to_string(), "Z^2 + Z/6");
    assert_eq!(AbelianInvariants::from_cyclic(0, &bi(&[4, 2, 1])).to_string(), "Z/2 + Z/4");
}

#[test]
fn dump_round_trip() {
    let m = IntMatrix::from_i64(Z, &[&[0, -3, 0], &[7, 0, 1]]);
    let text = m.dump();
    assert_eq!(text, "2 3\n0 1 -3\n1 0 7\n1 2 1\n");
    assert_eq!(IntMatrix::parse_dump(Z, &text).unwrap(), m);
    assert!(IntMatrix::parse_dump(Z, "1 1\n3 0 1\n").is_err());
}

#[test]
fn hermite_is_canonical() {
    let a = hermite_rows(Z, 3, &[bi(&[2, 4, 6]), bi(&[0, 3, 3]), bi(&[4, 5, 9])]);
    let b = hermite_rows(Z, 3, &[bi(&[4, 5, 9]), bi(&[2, 7, 9]), bi(&[0, -3, -3])]);
    assert_eq!(a, b);
    assert_eq!(a, vec![bi(&[2, 1, 3]), bi(&[0, 3, 3])]);
}

#[test]
fn zp_echelon_null_space() {
    let mut e = ZpEchelon::new(3, 3);
    e.push(&[(0, 1), (1, 2)]);
    e.push(&[(1, 1), (2, 1)]);
    assert_eq!(e.rank(), 2);
    assert!(e.contains(&[(0, 1), (2, 1)]));
    assert!(!e.contains(&[(0, 1), (2, 2)]));
    let ns = e.null_space();
    assert_eq!(ns.len(), 1);
    let v = &ns[0];
    assert_eq!((v[0] + 2 * v[1]) % 3, 0);
    assert_eq!((v[1] + v[2]) % 3, 0);
}

fn arb_matrix(max_r: usize, max_c: usize) -> impl Strategy<Value = IntMatrix> {
    (1..=max_r, 1..=max_c).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-6i64..=6, c), r)
            .prop_map(move |rows| IntMatrix::from_rows(Z, c, rows.into_iter().map(|r| bi(&r)).collect()))
    })
}

/// A random complex with B·A = 0: B's rows are combinations of the left kernel of A.
fn arb_complex() -> impl Strategy<Value = (IntMatrix, IntMatrix)> {
    (arb_matrix(6, 4), prop::collection::vec(prop::collection::vec(-3i64..=3, 6), 1..4)).prop_map(|(a, mix)| {
        let lk = kernel_basis(&a.transpose());
        let n = a.rows();
        let rows: Vec<Vec<BigInt>> = mix
            .iter()
            .map(|coef| {
                let mut row = vec![BigInt::zero(); n];
                for (c, w) in coef.iter().zip(&lk) {
                    for (x, y) in row.iter_mut().zip(w) {
                        *x += BigInt::from(*c) * y;
                    }
                }
                row
            })
            .collect();
        (a, IntMatrix::from_rows(Z, n, rows))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn prop_smith_reconstructs(m in arb_matrix(5, 5)) {
        check_smith(&m);
    }

    #[test]
    fn prop_kernel_is_exact(m in arb_matrix(5, 6)) {
        let k = kernel_basis(&m);
        for v in &k {
            prop_assert!(m.mul_vec(v).iter().all(|a| a.is_zero()));
        }
        prop_assert_eq!(k.len(), m.cols() - rank_q(&m));
    }

    #[test]
    fn prop_cohomology_ranks((a, b) in arb_complex()) {
        let h = cohomology_at(&a, &b).unwrap();
        prop_assert_eq!(h.invariants.rank, a.rows() - rank_q(&b) - rank_q(&a));
        for p in [2u64, 3, 5] {
            // universal coefficients: torsion of H and of coker B both contribute mod p
            let tors_h = h.invariants.torsion.iter().filter(|d| d.is_multiple_of(&BigInt::from(p))).count();
            let sb = smith(&b, false, false);
            let tors_next = sb.diag.iter().filter(|d| d.is_multiple_of(&BigInt::from(p))).count();
            let dim_p = a.rows() - rank_mod(&b, p) - rank_mod(&a, p);
            prop_assert_eq!(dim_p, h.invariants.rank + tors_h + tors_next);
            let f = RingSpec::zp(p).unwrap();
            let af = IntMatrix::from_rows(f, a.cols(), (0..a.rows()).map(|i| a.row(i).to_vec()).collect());
            let bf = IntMatrix::from_rows(f, b.cols(), (0..b.rows()).map(|i| b.row(i).to_vec()).collect());
            prop_assert_eq!(cohomology_at(&af, &bf).unwrap().invariants.rank, dim_p);
        }
        for g in &h.generators {
            prop_assert!(b.mul_vec(&g.rep).iter().all(|x| x.is_zero()));
        }
        // generators have unit coordinate vectors
        for (i, g) in h.generators.iter().enumerate() {
            let c = h.coordinates(&g.rep).unwrap();
            for (j, cj) in c.iter().enumerate() {
                prop_assert_eq!(cj, &BigInt::from((i == j) as i64));
            }
        }
        // coboundaries have zero coordinates
        for j in 0..a.cols() {
            prop_assert!(h.is_trivial_class(&a.column(j)).unwrap());
        }
    }

    #[test]
    fn prop_cokernel_permutation_stable(m in arb_matrix(4, 4), s in 0usize..24) {
        let rows = m.rows();
        let mut perm: Vec<usize> = (0..rows).collect();
        perm.rotate_left(s % rows.max(1));
        let pm = IntMatrix::from_rows(Z, m.cols(), perm.iter().map(|&i| m.row(i).to_vec()).collect());
        prop_assert_eq!(cokernel(&m), cokernel(&pm));
        prop_assert_eq!(cokernel(&m), cokernel(&m.transpose().transpose()));
    }

    #[test]
    fn prop_solve(m in arb_matrix(4, 4), x in prop::collection::vec(-5i64..=5, 4)) {
        let x = bi(&x[..m.cols()]);
        let b = m.mul_vec(&x);
        match solve_in_image(&m, &b).unwrap() {
            Solution::Solved(y) => prop_assert_eq!(m.mul_vec(&y), b),
            other => prop_assert!(false, "unsolvable: {:?}", other),
        }
    }
}

#[test]
fn rank_oracle_agrees_on_fixed_case() {
    let m = IntMatrix::from_i64(Z, &[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
    assert_eq!(rank_q(&m), 2);
    assert_eq!(rank(&m), 2);
    assert_eq!(rank_mod(&m, 2), 1);
    assert_eq!(rank_mod(&m, 3), 2);
}

//! Coefficient rings Z and Z_p, and the free binomial algebra Int(R^X)
//! in its zeta basis.

mod poly;
mod ring;

pub use poly::{mul_indices, structure_constants, BinomialPoly, MultiIndex};
pub(crate) use poly::{gen_name, parse_index, render_terms, split_terms};
pub use ring::{binom_of, binom_z, is_prime, RingSpec};

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};

/// Product in Int(R^X), re-expanded in the zeta basis.
pub fn zeta_product(u: &BinomialPoly, v: &BinomialPoly) -> Result<BinomialPoly> {
    u.ring().check_same(&v.ring())?;
    Ok(u.mul(v))
}

/// Evaluates `u` at a point given by generator id.
pub fn evaluate(u: &BinomialPoly, point: &[BigInt]) -> BigInt {
    u.evaluate(point)
}

/// zeta_k(a + b) = sum_{i+j=k} zeta_i(a) zeta_j(b), written in two formal
/// generators with ids 0 (for a) and 1 (for b).
pub fn zeta_add_expand(ring: RingSpec, k: u32) -> Result<BinomialPoly> {
    if let Some(e) = ring.max_exponent() {
        if k > e {
            return Err(Error::OutOfRange(format!("zeta_{k} over {ring}")));
        }
    }
    Ok(BinomialPoly::from_terms(
        ring,
        (0..=k).map(|i| (MultiIndex::from_pairs([(0, i), (1, k - i)]), BigInt::one())),
    ))
}

/// Quotient map Int(Z^X) -> Int(Z_p^X): drops every index with an exponent
/// of at least p and reduces coefficients mod p.
pub fn reduce_mod_p(u: &BinomialPoly, p: u64) -> Result<BinomialPoly> {
    let ring = RingSpec::zp(p)?;
    if u.ring() != RingSpec::Z {
        return Err(Error::RingMismatch(u.ring().to_string(), "Z".into()));
    }
    Ok(BinomialPoly::from_terms(ring, u.terms().iter().map(|(i, c)| (i.clone(), c.clone()))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn names() -> Vec<String> {
        vec!["x".into(), "y".into(), "w".into()]
    }

    fn z(g: u32, k: u32) -> BinomialPoly {
        BinomialPoly::basis(RingSpec::Z, MultiIndex::single(g, k))
    }

    fn int(a: i64) -> BigInt {
        BigInt::from(a)
    }

    // independent closed form: zeta_m zeta_n = sum_k binom(k,m) binom(m,k-n) zeta_k
    fn closed_form(m: u32, n: u32) -> Vec<(u32, BigInt)> {
        (m.max(n)..=m + n)
            .map(|k| {
                (k, binom_z(&int(k as i64), m) * binom_z(&int(m as i64), k - n))
            })
            .collect()
    }

    #[test]
    fn structure_constants_match_closed_form() {
        for m in 0..8 {
            for n in 0..8 {
                let p = z(0, m).mul(&z(0, n));
                let want = BinomialPoly::from_terms(
                    RingSpec::Z,
                    closed_form(m, n).into_iter().map(|(k, c)| (MultiIndex::single(0, k), c)),
                );
                assert_eq!(p, want, "m={m} n={n}");
            }
        }
    }

    #[test]
    fn product_examples() {
        let n = names();
        assert_eq!(z(0, 1).mul(&z(0, 1)).render(&n), "1 * z(x,1) + 2 * z(x,2)");
        assert_eq!(z(0, 1).mul(&z(0, 2)).render(&n), "2 * z(x,2) + 3 * z(x,3)");
        assert_eq!(z(0, 1).mul(&z(1, 1)).render(&n), "1 * z(x,1)*z(y,1)");
        let x2 = z(0, 1).mul(&z(0, 1));
        assert_eq!(x2.evaluate(&[int(3)]), int(9));
        assert_eq!(z(0, 2).evaluate(&[int(4)]), int(6));
        assert_eq!(BinomialPoly::one(RingSpec::Z).evaluate(&[int(17)]), int(1));
    }

    #[test]
    fn ordering_is_weight_then_declaration() {
        let n = names();
        let p = z(1, 2).add(&z(0, 1)).add(&z(0, 1).mul(&z(1, 1))).add(&z(0, 2)).add(&z(1, 1));
        assert_eq!(
            p.render(&n),
            "1 * z(x,1) + 1 * z(y,1) + 1 * z(x,2) + 1 * z(x,1)*z(y,1) + 1 * z(y,2)"
        );
    }

    #[test]
    fn addition_law_examples() {
        let e = zeta_add_expand(RingSpec::Z, 2).unwrap();
        let ab = vec!["a".to_string(), "b".to_string()];
        assert_eq!(e.render(&ab), "1 * z(a,2) + 1 * z(a,1)*z(b,1) + 1 * z(b,2)");
        assert_eq!(e.evaluate(&[int(2), int(3)]), int(10));
        assert_eq!(zeta_add_expand(RingSpec::Z, 1).unwrap().render(&ab), "1 * z(a,1) + 1 * z(b,1)");
        assert!(zeta_add_expand(RingSpec::Zp(3), 3).is_err());
    }

    #[test]
    fn reduction_mod_p() {
        let n = names();
        assert!(reduce_mod_p(&z(0, 2), 2).unwrap().is_zero());
        let xx = z(0, 1).mul(&z(0, 1));
        assert_eq!(reduce_mod_p(&xx, 2).unwrap().render(&n), "1 * z(x,1)");
        let p12 = z(0, 1).mul(&z(0, 2));
        assert_eq!(reduce_mod_p(&p12, 3).unwrap().render(&n), "2 * z(x,2)");
        assert!(reduce_mod_p(&p12, 4).is_err());
        // x^p = x over Z_p
        for p in [2u64, 3, 5, 7] {
            let r = RingSpec::Zp(p);
            let x = BinomialPoly::gen(r, 0);
            let mut pow = x.clone();
            for _ in 1..p {
                pow = pow.mul(&x);
            }
            assert_eq!(pow, x, "p={p}");
        }
    }

    #[test]
    fn ring_mismatch_rejected() {
        let a = BinomialPoly::gen(RingSpec::Z, 0);
        let b = BinomialPoly::gen(RingSpec::Zp(3), 0);
        assert!(matches!(zeta_product(&a, &b), Err(Error::RingMismatch(..))));
    }

    #[test]
    fn round_trip_text() {
        let n = names();
        let p = z(0, 2).scale(&int(-3)).add(&z(1, 1).mul(&z(2, 4))).add(&BinomialPoly::one(RingSpec::Z));
        let s = p.render(&n);
        assert_eq!(BinomialPoly::parse(RingSpec::Z, &s, &n).unwrap(), p);
        assert_eq!(BinomialPoly::parse(RingSpec::Z, "0", &n).unwrap(), BinomialPoly::zero(RingSpec::Z));
    }

    fn arb_poly() -> impl Strategy<Value = BinomialPoly> {
        prop::collection::vec(((0u32..5, 0u32..5, 0u32..5), -6i64..7), 0..5).prop_map(|ts| {
            BinomialPoly::from_terms(
                RingSpec::Z,
                ts.into_iter()
                    .map(|((a, b, c), k)| (MultiIndex::from_pairs([(0, a), (1, b), (2, c)]), int(k))),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn product_agrees_with_pointwise(u in arb_poly(), v in arb_poly(),
                                         pts in prop::collection::vec((-6i64..7, -6i64..7, -6i64..7), 20)) {
            let uv = zeta_product(&u, &v).unwrap();
            for (a, b, c) in pts {
                let pt = [int(a), int(b), int(c)];
                prop_assert_eq!(uv.evaluate(&pt), u.evaluate(&pt) * v.evaluate(&pt));
            }
        }

        #[test]
        fn addition_law_numeric(k in 0u32..7, pairs in prop::collection::vec((-20i64..21, -20i64..21), 20)) {
            let e = zeta_add_expand(RingSpec::Z, k).unwrap();
            for (a, b) in pairs {
                prop_assert_eq!(e.evaluate(&[int(a), int(b)]), binom_z(&int(a + b), k));
            }
        }

        #[test]
        fn reduction_is_ring_map(u in arb_poly(), v in arb_poly(), pi in 0usize..3) {
            let p = [2u64, 3, 5][pi];
            let lhs = reduce_mod_p(&u.mul(&v), p).unwrap();
            let rhs = reduce_mod_p(&u, p).unwrap().mul(&reduce_mod_p(&v, p).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn text_round_trip(u in arb_poly()) {
            let n = names();
            prop_assert_eq!(BinomialPoly::parse(RingSpec::Z, &u.render(&n), &n).unwrap(), u);
        }
    }
}

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::delta_cochains::PresentedGroup;
use crate::error::{Error, Result};

/// A truncated noncommutative power series in X_0, X_1, ...; monomials are index strings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MagnusSeries {
    pub depth: usize,
    pub coeffs: BTreeMap<Vec<usize>, BigInt>,
}

impl MagnusSeries {
    pub fn one(depth: usize) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(Vec::new(), BigInt::one());
        MagnusSeries { depth, coeffs }
    }

    /// (1 + X_g)^e, with the binomial series for negative e.
    pub fn letter(g: usize, e: i64, depth: usize) -> Self {
        let mut coeffs = BTreeMap::new();
        let mut c = BigInt::one();
        for k in 0..=depth {
            if !c.is_zero() {
                coeffs.insert(vec![g; k], c.clone());
            }
            // binom(e, k+1) = binom(e, k)·(e − k)/(k + 1)
            c = c * BigInt::from(e - k as i64) / BigInt::from(k as i64 + 1);
        }
        MagnusSeries { depth, coeffs }
    }

    pub fn coeff(&self, mono: &[usize]) -> BigInt {
        self.coeffs.get(mono).cloned().unwrap_or_default()
    }

    pub fn mul(&self, other: &MagnusSeries) -> MagnusSeries {
        let depth = self.depth.min(other.depth);
        let mut coeffs: BTreeMap<Vec<usize>, BigInt> = BTreeMap::new();
        for (u, a) in &self.coeffs {
            for (v, b) in &other.coeffs {
                if u.len() + v.len() > depth {
                    continue;
                }
                let mut w = u.clone();
                w.extend_from_slice(v);
                *coeffs.entry(w).or_default() += a * b;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        MagnusSeries { depth, coeffs }
    }
}

/// The Magnus image of a word of letters (generator, exponent).
pub fn magnus_expand(word: &[(usize, i32)], depth: usize) -> Result<MagnusSeries> {
    if depth > 3 {
        return Err(Error::Precondition(format!("Magnus depth {depth} > 3")));
    }
    Ok(word.iter().fold(MagnusSeries::one(depth), |acc, &(g, e)| acc.mul(&MagnusSeries::letter(g, e as i64, depth))))
}

/// ε_{ij} and ε_{ijk} of one relator, indexed [i][j] and [i][j][k].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelatorPairings {
    pub eps2: Vec<Vec<BigInt>>,
    pub eps3: Vec<Vec<Vec<BigInt>>>,
}

impl RelatorPairings {
    pub fn degree2_vanishes(&self) -> bool {
        self.eps2.iter().flatten().all(|c| c.is_zero())
    }
}

pub fn magnus_pairings(p: &PresentedGroup) -> Result<Vec<RelatorPairings>> {
    let m = p.gens.len();
    p.relators
        .iter()
        .map(|r| {
            let s = magnus_expand(r, 3)?;
            let eps2 = (0..m).map(|i| (0..m).map(|j| s.coeff(&[i, j])).collect()).collect();
            let eps3 = (0..m)
                .map(|i| (0..m).map(|j| (0..m).map(|k| s.coeff(&[i, j, k])).collect()).collect())
                .collect();
            Ok(RelatorPairings { eps2, eps3 })
        })
        .collect()
}

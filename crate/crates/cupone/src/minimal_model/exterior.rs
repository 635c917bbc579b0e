use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::graded::{d_matrix, WordBasis};
use crate::binomial_ring::{MultiIndex, RingSpec};
use crate::error::{Error, Result};
use crate::exact_linear::{cohomology_at, unimodular_inverse, AbelianInvariants, Cohomology, IntMatrix};
use crate::free_dga::{Differential, GeneratorSet, TensorElem, Word};
use crate::par::Execution;

pub(crate) fn flat_names(m: usize) -> Vec<String> {
    (1..=m).map(|i| format!("x{i}")).collect()
}

/// H^k of the weight-w summand of (T_R(X₁), d_0), |X₁| = m.
pub fn exterior_cohomology(ring: RingSpec, m: usize, k: usize, w: u32, exec: Execution) -> Result<Cohomology> {
    if !(1..=3).contains(&k) {
        return Err(Error::Degree(format!("weight-graded H^{k} is computed for k = 1, 2, 3")));
    }
    let d = Differential::zero(ring, GeneratorSet::flat(flat_names(m)));
    let ones = vec![1u32; m];
    let cap = ring.max_exponent();
    let tk = WordBasis::weighted(&ones, k, w, w, cap);
    let a = if k == 1 {
        IntMatrix::zero(ring, tk.len(), 0)
    } else {
        d_matrix(&d, &WordBasis::weighted(&ones, k - 1, w, w, cap), &tk, exec)?
    };
    // T^4 is not needed: in weight w < 4 it is zero, and H^3 is only asked for there
    let b = if k == 3 {
        if w >= 4 {
            return Err(Error::Degree("weight-graded H^3 needs w ≤ 3".into()));
        }
        IntMatrix::zero(ring, 0, tk.len())
    } else {
        d_matrix(&d, &tk, &WordBasis::weighted(&ones, k + 1, w, w, cap), exec)?
    };
    cohomology_at(&a, &b)
}

/// Pairs (a, b), a < b, in lexicographic order.
pub fn exterior_pairs(m: usize) -> Vec<(usize, usize)> {
    (0..m).flat_map(|a| (a + 1..m).map(move |b| (a, b))).collect()
}

pub fn exterior_triples(m: usize) -> Vec<(usize, usize, usize)> {
    (0..m).flat_map(|a| (a + 1..m).flat_map(move |b| (b + 1..m).map(move |c| (a, b, c)))).collect()
}

fn gen_word(gs: &[usize]) -> Word {
    Word(gs.iter().map(|&g| MultiIndex::single(g as u32, 1)).collect())
}

/// H² (and H³) of (T_R(X₁), d_0) over Z in the exterior basis [x_a⊗x_b], a < b,
/// with coordinates read off the weight-2 (weight-3) summand.
#[derive(Clone, Debug)]
pub struct ExteriorH2 {
    pub m: usize,
    pub pairs: Vec<(usize, usize)>,
    w2: Cohomology,
    basis2: WordBasis,
    to_pairs: IntMatrix,
    w3: Option<(Cohomology, WordBasis, IntMatrix, WordBasis, IntMatrix)>,
}

pub fn h2_free_d0(m: usize) -> Result<ExteriorH2> {
    let ring = RingSpec::Z;
    let ones = vec![1u32; m];
    let exec = Execution::Sequential;
    let w2 = exterior_cohomology(ring, m, 2, 2, exec)?;
    let basis2 = WordBasis::weighted(&ones, 2, 2, 2, None);
    let pairs = exterior_pairs(m);
    let to_pairs = change_of_basis(&w2, &basis2, pairs.iter().map(|&(a, b)| gen_word(&[a, b])))?;
    Ok(ExteriorH2 { m, pairs, w2, basis2, to_pairs, w3: None })
}

// the matrix taking cohomology coordinates to coordinates in the given classes
fn change_of_basis(c: &Cohomology, basis: &WordBasis, classes: impl Iterator<Item = Word>) -> Result<IntMatrix> {
    let cols: Vec<Vec<BigInt>> = classes
        .map(|w| {
            let mut v = vec![BigInt::zero(); basis.len()];
            v[basis.index(&w).expect("basis word")] = BigInt::one();
            c.coordinates(&v)
        })
        .collect::<Result<_>>()?;
    let n = c.generators.len();
    if cols.len() != n || !c.invariants.torsion.is_empty() {
        return Err(Error::Internal("exterior classes do not match the computed cohomology".into()));
    }
    unimodular_inverse(&IntMatrix::from_columns(RingSpec::Z, n, &cols))
}

impl ExteriorH2 {
    pub fn rank(&self) -> usize {
        self.pairs.len()
    }

    /// Representative x_a⊗x_b of pair i.
    pub fn rep(&self, i: usize) -> TensorElem {
        let (a, b) = self.pairs[i];
        TensorElem::word(RingSpec::Z, gen_word(&[a, b]).0)
    }

    /// Coordinates of a d_0-cocycle of T²(X₁) in the basis [x_a⊗x_b].
    pub fn coordinates(&self, z: &TensorElem) -> Result<Vec<BigInt>> {
        let d = Differential::zero(RingSpec::Z, GeneratorSet::flat(flat_names(self.m)));
        if !d.apply_d(z)?.is_zero() {
            return Err(Error::Precondition("not a d_0-cocycle".into()));
        }
        z.require_degree(2, "class")?;
        let mut w2 = TensorElem::zero(RingSpec::Z);
        for (w, c) in z.terms() {
            if w.0.iter().any(|i| i.max_gen().is_some_and(|g| g as usize >= self.m)) {
                return Err(Error::Precondition("generator outside X₁".into()));
            }
            if w.weight() == 2 {
                w2.add_term(w.clone(), c.clone());
            }
        }
        let c = self.w2.coordinates(&self.basis2.coords(&w2)?)?;
        Ok(self.to_pairs.mul_vec(&c))
    }

    fn ensure_w3(&mut self) -> Result<()> {
        if self.w3.is_some() {
            return Ok(());
        }
        let ring = RingSpec::Z;
        let ones = vec![1u32; self.m];
        let d = Differential::zero(ring, GeneratorSet::flat(flat_names(self.m)));
        let t2 = WordBasis::weighted(&ones, 2, 3, 3, None);
        let t3 = WordBasis::weighted(&ones, 3, 3, 3, None);
        let a = d_matrix(&d, &t2, &t3, Execution::Sequential)?;
        let h3 = cohomology_at(&a, &IntMatrix::zero(ring, 0, t3.len()))?;
        let to = change_of_basis(&h3, &t3, exterior_triples(self.m).into_iter().map(|(a, b, c)| gen_word(&[a, b, c])))?;
        self.w3 = Some((h3, t3, to, t2, a));
        Ok(())
    }

    /// Coordinates in the basis [x_a⊗x_b⊗x_c], a < b < c, of a weight-3 element of T³(X₁).
    pub fn coordinates3(&mut self, z: &TensorElem) -> Result<Vec<BigInt>> {
        self.ensure_w3()?;
        let (h3, t3, to, _, _) = self.w3.as_ref().expect("built");
        if z.terms().keys().any(|w| w.len() != 3 || w.weight() != 3) {
            return Err(Error::Precondition("expected a weight-3 element of T³(X₁)".into()));
        }
        Ok(to.mul_vec(&h3.coordinates(&t3.coords(z)?)?))
    }

    /// c ∈ T²(X₁) of weight 3 with d_0 c = z, when z is exact.
    pub fn primitive3(&mut self, z: &TensorElem) -> Result<Option<TensorElem>> {
        self.ensure_w3()?;
        let (_, t3, _, t2, a) = self.w3.as_ref().expect("built");
        match crate::exact_linear::solve_in_image(a, &t3.coords(z)?)? {
            crate::exact_linear::Solution::Solved(x) => Ok(Some(t2.elem(RingSpec::Z, &x))),
            _ => Ok(None),
        }
    }
}

/// Weight-graded summary of (T_R(X₁), d_0): (weight, H¹_w, H²_w) for w ≤ cap.
pub fn exterior_profile(ring: RingSpec, m: usize, cap: u32, exec: Execution) -> Result<Vec<(u32, AbelianInvariants, AbelianInvariants)>> {
    (1..=cap)
        .map(|w| {
            let h1 = exterior_cohomology(ring, m, 1, w, exec)?.invariants;
            let h2 = if w >= 2 { exterior_cohomology(ring, m, 2, w, exec)?.invariants } else { AbelianInvariants::default() };
            Ok((w, h1, h2))
        })
        .collect()
}

use num_bigint::BigInt;
use num_traits::Zero;

use crate::delta_cochains::{coboundary, coboundary_matrix, cohomology, cup, Cochain, DeltaSet};
use crate::error::{Error, Result};
use crate::exact_linear::{solve_in_image, Cohomology, IntMatrix, Solution};
use crate::free_dga::{cup as tcup, TensorElem};
use crate::minimal_model::{d_matrix, ModelStage, WordBasis};
use crate::par::Execution;

/// What a triple Massey product needs from a dga: degree-1 cocycles, products,
/// primitives of exact 2-cocycles and H² coordinates.
pub trait MasseyAlgebra {
    type Elem: Clone + std::fmt::Debug;

    /// Cocycles representing the chosen basis of H¹.
    fn h1(&self) -> &[Self::Elem];
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn d(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Some c with dc = z, if z is exact.
    fn primitive(&self, z: &Self::Elem) -> Result<Option<Self::Elem>>;
    fn h2_coordinates(&self, z: &Self::Elem) -> Result<Vec<BigInt>>;
    /// Orders of the H² basis elements (None for infinite cyclic).
    fn h2_orders(&self) -> Vec<Option<BigInt>>;
}

/// ⟨u₁,u₂,u₃⟩: the class of c₁c₂,₃ + c₁,₂c₃ with d c_{i,j} = c_i c_j, and the
/// indeterminacy u₁∪H¹ + H¹∪u₃.
#[derive(Clone, Debug)]
pub struct MasseyResult<E> {
    pub rep: E,
    pub coords: Vec<BigInt>,
    pub indeterminacy: Vec<Vec<BigInt>>,
}

pub fn triple_massey<A: MasseyAlgebra>(a: &A, u: [&A::Elem; 3]) -> Result<MasseyResult<A::Elem>> {
    triple_massey_named(a, u, ["u1", "u2", "u3"])
}

/// As `triple_massey`, with `names` used in the error for an undefined product.
pub fn triple_massey_named<A: MasseyAlgebra>(
    a: &A,
    u: [&A::Elem; 3],
    names: [&str; 3],
) -> Result<MasseyResult<A::Elem>> {
    let mut cs = Vec::new();
    for (l, r) in [(0, 1), (1, 2)] {
        let p = a.mul(u[l], u[r])?;
        match a.primitive(&p)? {
            Some(c) => cs.push(c),
            None => {
                return Err(Error::Precondition(format!(
                    "{}{} = {:?} is nonzero in H²",
                    names[l],
                    names[r],
                    a.h2_coordinates(&p)?
                )))
            }
        }
    }
    massey_from_corrections(a, u, &cs[0], &cs[1])
}

/// The Massey representative for given corrections c₁,₂ and c₂,₃.
pub fn massey_from_corrections<A: MasseyAlgebra>(
    a: &A,
    u: [&A::Elem; 3],
    c12: &A::Elem,
    c23: &A::Elem,
) -> Result<MasseyResult<A::Elem>> {
    for (c, l, r) in [(c12, 0, 1), (c23, 1, 2)] {
        let diff = a.sub(&a.d(c)?, &a.mul(u[l], u[r])?);
        if !a.is_zero(&diff) {
            return Err(Error::Precondition(format!("correction for u{}u{} has the wrong boundary", l + 1, r + 1)));
        }
    }
    let rep = a.add(&a.mul(u[0], c23)?, &a.mul(c12, u[2])?);
    if !a.is_zero(&a.d(&rep)?) {
        return Err(Error::Internal("Massey representative is not a cocycle".into()));
    }
    let coords = a.h2_coordinates(&rep)?;
    let mut indeterminacy = Vec::new();
    for v in a.h1() {
        indeterminacy.push(a.h2_coordinates(&a.mul(u[0], v)?)?);
        indeterminacy.push(a.h2_coordinates(&a.mul(v, u[2])?)?);
    }
    indeterminacy.retain(|v| v.iter().any(|c| !c.is_zero()));
    Ok(MasseyResult { rep, coords, indeterminacy })
}

/// Whether `v` lies in the span of `gens` modulo the orders.
pub fn in_span(v: &[BigInt], gens: &[Vec<BigInt>], orders: &[Option<BigInt>]) -> Result<bool> {
    let n = v.len();
    let mut cols: Vec<Vec<BigInt>> = gens.to_vec();
    for (i, o) in orders.iter().enumerate() {
        if let Some(d) = o {
            let mut c = vec![BigInt::zero(); n];
            c[i] = d.clone();
            cols.push(c);
        }
    }
    let ring = crate::binomial_ring::RingSpec::Z;
    Ok(matches!(solve_in_image(&IntMatrix::from_columns(ring, n, &cols), v)?, Solution::Solved(_)))
}

/// C*(X; R) with a chosen H¹ basis.
pub struct SimplicialAlgebra<'a> {
    pub x: &'a DeltaSet,
    h1: Vec<Cochain>,
    h2: Cohomology,
    delta1: IntMatrix,
}

impl<'a> SimplicialAlgebra<'a> {
    pub fn new(x: &'a DeltaSet, h1: Vec<Cochain>) -> Result<Self> {
        Ok(SimplicialAlgebra { x, h1, h2: cohomology(x, 2)?, delta1: coboundary_matrix(x, 1) })
    }

    pub fn h2(&self) -> &Cohomology {
        &self.h2
    }

    fn dense(&self, c: &Cochain) -> Vec<BigInt> {
        let n = self.x.count(c.dim());
        if c.is_zero() {
            vec![BigInt::zero(); n]
        } else {
            c.to_dense(n)
        }
    }
}

impl MasseyAlgebra for SimplicialAlgebra<'_> {
    type Elem = Cochain;

    fn h1(&self) -> &[Cochain] {
        &self.h1
    }

    fn mul(&self, a: &Cochain, b: &Cochain) -> Result<Cochain> {
        cup(self.x, a, b)
    }

    fn add(&self, a: &Cochain, b: &Cochain) -> Cochain {
        a.add(b)
    }

    fn sub(&self, a: &Cochain, b: &Cochain) -> Cochain {
        a.sub(b)
    }

    fn d(&self, a: &Cochain) -> Result<Cochain> {
        coboundary(self.x, a)
    }

    fn is_zero(&self, a: &Cochain) -> bool {
        a.is_zero()
    }

    fn primitive(&self, z: &Cochain) -> Result<Option<Cochain>> {
        if z.dim() != 2 {
            return Err(Error::Degree("primitives are taken of 2-cochains".into()));
        }
        Ok(match solve_in_image(&self.delta1, &self.dense(z))? {
            Solution::Solved(c) => Some(Cochain::from_dense(self.x.ring(), 1, &c)),
            Solution::Unsolvable { .. } => None,
        })
    }

    fn h2_coordinates(&self, z: &Cochain) -> Result<Vec<BigInt>> {
        self.h2.coordinates(&self.dense(z))
    }

    fn h2_orders(&self) -> Vec<Option<BigInt>> {
        self.h2.generators.iter().map(|g| g.order.clone()).collect()
    }
}

/// A stage model M_n with its H² functional; primitives are found among elements of
/// T¹ of generator weight at most 2.
pub struct FreeAlgebra<'a> {
    pub stage: &'a ModelStage,
    h1: Vec<TensorElem>,
    t1: WordBasis,
    t2: WordBasis,
    dmat: IntMatrix,
}

impl<'a> FreeAlgebra<'a> {
    pub fn new(stage: &'a ModelStage, exec: Execution) -> Result<Self> {
        let d = &stage.diff;
        let ring = d.ring();
        let levels = &d.gens().levels;
        let h1 = stage.h1_basis.iter().map(|&g| TensorElem::gen(ring, g)).collect();
        let t1 = WordBasis::weighted(levels, 1, 1, 2, ring.max_exponent());
        let t2 = WordBasis::weighted(levels, 2, 2, 2, ring.max_exponent());
        let dmat = d_matrix(d, &t1, &t2, exec)?;
        Ok(FreeAlgebra { stage, h1, t1, t2, dmat })
    }
}

impl MasseyAlgebra for FreeAlgebra<'_> {
    type Elem = TensorElem;

    fn h1(&self) -> &[TensorElem] {
        &self.h1
    }

    fn mul(&self, a: &TensorElem, b: &TensorElem) -> Result<TensorElem> {
        tcup(a, b)
    }

    fn add(&self, a: &TensorElem, b: &TensorElem) -> TensorElem {
        a.add(b)
    }

    fn sub(&self, a: &TensorElem, b: &TensorElem) -> TensorElem {
        a.sub(b)
    }

    fn d(&self, a: &TensorElem) -> Result<TensorElem> {
        self.stage.diff.apply_d(a)
    }

    fn is_zero(&self, a: &TensorElem) -> bool {
        a.is_zero()
    }

    fn primitive(&self, z: &TensorElem) -> Result<Option<TensorElem>> {
        let v = self.t2.coords(z)?;
        Ok(match solve_in_image(&self.dmat, &v)? {
            Solution::Solved(c) => Some(self.t1.elem(z.ring(), &c)),
            Solution::Unsolvable { .. } => None,
        })
    }

    fn h2_coordinates(&self, z: &TensorElem) -> Result<Vec<BigInt>> {
        self.stage.h2.coordinates(z)
    }

    fn h2_orders(&self) -> Vec<Option<BigInt>> {
        self.stage.h2.classes.iter().map(|c| c.order.clone()).collect()
    }
}

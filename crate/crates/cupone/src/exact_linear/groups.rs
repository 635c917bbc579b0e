use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::matrix::IntMatrix;
use super::snf::{hermite_rows, smith};
use crate::binomial_ring::RingSpec;
use crate::error::{Error, Result};

/// Z^rank ⊕ Z/d_1 ⊕ … with d_1 | d_2 | …, every d_i > 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AbelianInvariants {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianInvariants {
    pub fn free(rank: usize) -> Self {
        AbelianInvariants { rank, torsion: Vec::new() }
    }

    /// Normal form of Z^rank ⊕ ⊕ Z/c_i for arbitrary c_i (0 meaning Z).
    pub fn from_cyclic(rank: usize, orders: &[BigInt]) -> Self {
        let m = IntMatrix::from_rows(
            RingSpec::Z,
            orders.len(),
            (0..orders.len())
                .map(|i| (0..orders.len()).map(|j| if i == j { orders[i].clone() } else { BigInt::zero() }).collect())
                .collect(),
        );
        let s = smith(&m, false, false);
        let zeros = orders.len() - s.rank();
        AbelianInvariants { rank: rank + zeros, torsion: s.diag.into_iter().filter(|d| !d.is_one()).collect() }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn torsion_part(&self) -> AbelianInvariants {
        AbelianInvariants { rank: 0, torsion: self.torsion.clone() }
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Cokernel of M: R^cols → R^rows.
pub fn cokernel(m: &IntMatrix) -> AbelianInvariants {
    let s = smith(m, false, false);
    AbelianInvariants {
        rank: m.rows() - s.rank(),
        torsion: if m.ring() == RingSpec::Z { s.diag.into_iter().filter(|d| !d.is_one()).collect() } else { Vec::new() },
    }
}

/// A basis of ker M in Hermite normal form (lattice basis over Z).
pub fn kernel_basis(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let s = smith(m, false, true);
    let r = s.rank();
    let v = s.v.expect("requested");
    let raw: Vec<Vec<BigInt>> = (r..m.cols()).map(|j| v.column(j)).collect();
    hermite_rows(m.ring(), m.cols(), &raw)
}

pub fn rank(m: &IntMatrix) -> usize {
    smith(m, false, false).rank()
}

/// Result of `solve_in_image`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Solved(Vec<BigInt>),
    /// In Smith coordinates c = U b: `index` is where divisibility or
    /// vanishing fails, `residue` the offending value and `divisor` the diagonal entry (0 past the rank).
    Unsolvable { index: usize, residue: BigInt, divisor: BigInt },
}

/// Exact x with M x = b, or a certificate of failure.
pub fn solve_in_image(m: &IntMatrix, b: &[BigInt]) -> Result<Solution> {
    if b.len() != m.rows() {
        return Err(Error::Precondition("right-hand side length".into()));
    }
    let ring = m.ring();
    let s = smith(m, true, true);
    let c = s.u.as_ref().expect("requested").mul_vec(b);
    let mut y = vec![BigInt::zero(); m.cols()];
    for (i, ci) in c.iter().enumerate() {
        if i < s.rank() {
            let (q, r) = ci.div_mod_floor(&s.diag[i]);
            if ring == RingSpec::Z && !r.is_zero() {
                return Ok(Solution::Unsolvable { index: i, residue: ci.clone(), divisor: s.diag[i].clone() });
            }
            y[i] = if ring == RingSpec::Z { q } else { ring.div_exact(ci, &s.diag[i])? };
        } else if !ci.is_zero() {
            return Ok(Solution::Unsolvable { index: i, residue: ci.clone(), divisor: BigInt::zero() });
        }
    }
    Ok(Solution::Solved(s.v.as_ref().expect("requested").mul_vec(&y)))
}

/// One generator of a computed group: its order (None = infinite) and a representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupGenerator {
    pub order: Option<BigInt>,
    pub rep: Vec<BigInt>,
}

/// Cohomology ker B / im A of R^a → R^n → R^m, with representatives and
/// the coordinate functional. Torsion generators come first.
#[derive(Clone, Debug)]
pub struct Cohomology {
    pub invariants: AbelianInvariants,
    pub generators: Vec<GroupGenerator>,
    ring: RingSpec,
    dim: usize,
    // z ↦ coordinates in the kernel basis: rows `kernel_from..` of V⁻¹
    v_inv: IntMatrix,
    kernel_from: usize,
    // kernel coordinates ↦ quotient coordinates
    u2: IntMatrix,
    // (row of u2, order) for each generator
    slots: Vec<(usize, Option<BigInt>)>,
    b: IntMatrix,
}

impl Cohomology {
    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    /// Class coordinates of a cocycle: torsion entries reduced mod their order.
    pub fn coordinates(&self, z: &[BigInt]) -> Result<Vec<BigInt>> {
        if z.len() != self.dim {
            return Err(Error::Precondition("cochain length".into()));
        }
        if self.b.mul_vec(z).iter().any(|a| !a.is_zero()) {
            return Err(Error::Precondition("not a cocycle".into()));
        }
        let full = self.v_inv.mul_vec(z);
        let y = &full[self.kernel_from..];
        let q = self.u2.mul_vec(y);
        Ok(self
            .slots
            .iter()
            .map(|(row, ord)| match ord {
                Some(d) => q[*row].mod_floor(d),
                None => q[*row].clone(),
            })
            .collect())
    }

    /// Whether a cocycle is a coboundary.
    pub fn is_trivial_class(&self, z: &[BigInt]) -> Result<bool> {
        Ok(self.coordinates(z)?.iter().all(|a| a.is_zero()))
    }
}

/// H at the middle of C^{k−1} →A C^k →B C^{k+1}.
pub fn cohomology_at(a: &IntMatrix, b: &IntMatrix) -> Result<Cohomology> {
    let ring = a.ring();
    ring.check_same(&b.ring())?;
    let n = b.cols();
    if a.rows() != n {
        return Err(Error::Precondition(format!("A has {} rows but B has {} columns", a.rows(), n)));
    }
    if !b.mul(a)?.is_zero() {
        return Err(Error::Precondition("B·A ≠ 0".into()));
    }
    let sb = smith(b, false, true);
    let r = sb.rank();
    let v = sb.v.expect("requested");
    let v_inv = sb.v_inv.expect("requested");
    let m = n - r;
    let va = v_inv.mul(a)?;
    let c = IntMatrix::from_rows(ring, a.cols(), (r..n).map(|i| va.row(i).to_vec()).collect());
    let sc = smith(&c, true, false);
    let crank = sc.rank();
    let u2 = sc.u.expect("requested");
    let u2_inv = sc.u_inv.expect("requested");
    let mut slots = Vec::new();
    for (i, d) in sc.diag.iter().enumerate() {
        if !d.is_one() {
            slots.push((i, Some(d.clone())));
        }
    }
    for i in crank..m {
        slots.push((i, None));
    }
    let generators = slots
        .iter()
        .map(|(i, ord)| {
            let mut y = vec![BigInt::zero(); n];
            for (k, yk) in u2_inv.column(*i).into_iter().enumerate() {
                y[r + k] = yk;
            }
            GroupGenerator { order: ord.clone(), rep: v.mul_vec(&y) }
        })
        .collect();
    let invariants = AbelianInvariants {
        rank: m - crank,
        torsion: slots.iter().filter_map(|(_, o)| o.clone()).collect(),
    };
    Ok(Cohomology { invariants, generators, ring, dim: n, v_inv, kernel_from: r, u2, slots, b: b.clone() })
}

/// A finitely generated group presented by generator orders (None = Z).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FgGroup {
    pub orders: Vec<Option<BigInt>>,
}

impl FgGroup {
    pub fn free(rank: usize) -> Self {
        FgGroup { orders: vec![None; rank] }
    }

    pub fn of(c: &Cohomology) -> Self {
        FgGroup { orders: c.generators.iter().map(|g| g.order.clone()).collect() }
    }

    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.orders.iter().all(|o| o.is_none())
    }

    pub fn relation_matrix(&self) -> IntMatrix {
        let n = self.len();
        let rels: Vec<Vec<BigInt>> = self
            .orders
            .iter()
            .enumerate()
            .filter_map(|(i, o)| {
                o.as_ref().map(|d| (0..n).map(|j| if i == j { d.clone() } else { BigInt::zero() }).collect())
            })
            .collect();
        IntMatrix::from_columns(RingSpec::Z, n, &rels)
    }

    pub fn invariants(&self) -> AbelianInvariants {
        let free = self.orders.iter().filter(|o| o.is_none()).count();
        let t: Vec<BigInt> = self.orders.iter().flatten().cloned().collect();
        AbelianInvariants::from_cyclic(free, &t)
    }
}

/// Kernel, image and cokernel of a homomorphism between f.g. groups given
/// by a matrix on generators (columns = images of source generators).
#[derive(Clone, Debug)]
pub struct MapAnalysis {
    pub kernel: AbelianInvariants,
    /// Lattice basis of the preimage of the target relations, when the source is free.
    pub kernel_basis: Option<Vec<Vec<BigInt>>>,
    pub image_rank: usize,
    pub cokernel: AbelianInvariants,
}

impl MapAnalysis {
    pub fn is_iso(&self) -> bool {
        self.kernel.is_trivial() && self.cokernel.is_trivial()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel.is_trivial()
    }

    pub fn free_kernel_basis(&self) -> Result<&[Vec<BigInt>]> {
        self.kernel_basis
            .as_deref()
            .ok_or_else(|| Error::Precondition("kernel basis requested on a source with torsion".into()))
    }
}

pub fn map_analysis(f: &IntMatrix, source: &FgGroup, target: &FgGroup) -> Result<MapAnalysis> {
    if f.ring() != RingSpec::Z {
        let s = smith(f, false, false);
        let kb = kernel_basis(f);
        return Ok(MapAnalysis {
            kernel: AbelianInvariants::free(f.cols() - s.rank()),
            kernel_basis: Some(kb),
            image_rank: s.rank(),
            cokernel: AbelianInvariants::free(f.rows() - s.rank()),
        });
    }
    if f.cols() != source.len() || f.rows() != target.len() {
        return Err(Error::Precondition("map shape does not match the groups".into()));
    }
    let rt = target.relation_matrix();
    let full = f.hstack(&rt);
    let cok = cokernel(&full);
    // preimage lattice K ⊂ Z^a of the target relations
    let kfull = kernel_basis(&full);
    let a = f.cols();
    let proj: Vec<Vec<BigInt>> = kfull.iter().map(|v| v[..a].to_vec()).collect();
    let k = hermite_rows(RingSpec::Z, a, &proj);
    // kernel = K / (source relations)
    let rs: Vec<Vec<BigInt>> = source
        .orders
        .iter()
        .enumerate()
        .filter_map(|(i, o)| o.as_ref().map(|d| (0..a).map(|j| if i == j { d.clone() } else { BigInt::zero() }).collect()))
        .collect();
    let kernel = if k.is_empty() {
        AbelianInvariants::default()
    } else {
        let km = IntMatrix::from_columns(RingSpec::Z, a, &k);
        let mut coords = Vec::new();
        for rel in &rs {
            match solve_in_image(&km, rel)? {
                Solution::Solved(x) => coords.push(x),
                Solution::Unsolvable { .. } => {
                    return Err(Error::Internal("source relation outside the kernel: map not well defined".into()))
                }
            }
        }
        cokernel(&IntMatrix::from_columns(RingSpec::Z, k.len(), &coords))
    };
    let image_rank = rank(f);
    Ok(MapAnalysis {
        kernel,
        kernel_basis: source.is_torsion_free().then_some(k),
        image_rank,
        cokernel: cok,
    })
}

/// Inverse of a square matrix invertible over its ring.
pub fn unimodular_inverse(m: &IntMatrix) -> Result<IntMatrix> {
    if m.rows() != m.cols() {
        return Err(Error::Precondition("inverse of a non-square matrix".into()));
    }
    let s = smith(m, true, true);
    if s.rank() < m.rows() || s.diag.iter().any(|d| !d.is_one()) {
        return Err(Error::Precondition("matrix is not invertible over the ring".into()));
    }
    s.v.expect("requested").mul(&s.u.expect("requested"))
}

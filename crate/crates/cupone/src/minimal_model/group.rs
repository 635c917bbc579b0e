use num_bigint::BigInt;
use num_traits::Zero;

use crate::binomial_ring::{BinomialPoly, RingSpec};
use crate::delta_cochains::{magma_from_tau, tuple_of, TauMagma};
use crate::error::{Error, Result};
use crate::free_dga::Differential;
use crate::par::{self, Execution};

/// How the group axioms were checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupAudit {
    /// Every triple of the finite carrier.
    Exhaustive { elements: usize },
    /// All points with coordinates in [−r, r]; not a proof.
    NoCounterexample { radius: i64, elements: usize },
}

/// G_T on M(X, R) with μ_τ, as a tower of central extensions by the levels.
#[derive(Clone, Debug)]
pub struct GroupRealization {
    pub ring: RingSpec,
    pub names: Vec<String>,
    /// Per generator, coordinate of μ(a, b).
    pub law: Vec<BinomialPoly>,
    /// (level, generators of that level): the kernel M(X_m, R) of each step.
    pub tower: Vec<(u32, Vec<String>)>,
    pub audit: GroupAudit,
    magma: TauMagma,
    levels: Vec<u32>,
}

impl GroupRealization {
    /// Variable names a_x (first argument) then b_x (second).
    pub fn law_names(&self) -> Vec<String> {
        let a = self.names.iter().map(|n| format!("a_{n}"));
        a.chain(self.names.iter().map(|n| format!("b_{n}"))).collect()
    }

    pub fn render_law(&self) -> Vec<String> {
        let names = self.law_names();
        self.names.iter().zip(&self.law).map(|(n, p)| format!("{n}: {}", p.render(&names))).collect()
    }

    pub fn op(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        self.magma.op(a, b)
    }

    /// The inverse, solved level by level.
    pub fn inverse(&self, a: &[BigInt]) -> Vec<BigInt> {
        inverse(&self.magma, &self.levels, a)
    }

    /// |G| over Z_p.
    pub fn order(&self) -> Option<BigInt> {
        self.ring.characteristic().map(|p| BigInt::from(p).pow(self.names.len() as u32))
    }
}

fn inverse(m: &TauMagma, levels: &[u32], a: &[BigInt]) -> Vec<BigInt> {
    let n = a.len();
    let ring = m.ring();
    let mut b = vec![BigInt::zero(); n];
    let top = levels.iter().copied().max().unwrap_or(0);
    // μ(a,b)_x = a_x + b_x − Σ c ζ_I(a) ζ_J(b), where J only sees lower levels
    for lvl in 1..=top {
        let r = m.op(a, &b);
        for x in 0..n {
            if levels[x] == lvl {
                b[x] = ring.reduce(&b[x] - &r[x]);
            }
        }
    }
    b
}

/// Realizes the stage differential as a group and audits the axioms: exhaustively over
/// Z_p, on the box [−radius, radius]^X over Z.
pub fn realize_group(diff: &Differential, radius: i64, exec: Execution) -> Result<GroupRealization> {
    let magma = magma_from_tau(diff);
    let ring = diff.ring();
    let n = magma.rank();
    let levels = diff.gens().levels.clone();
    let top = levels.iter().copied().max().unwrap_or(0);
    let tower = (1..=top)
        .map(|l| (l, (0..n).filter(|&i| levels[i] == l).map(|i| diff.names()[i].clone()).collect()))
        .collect();
    let law = (0..n).map(|x| magma.law(x)).collect();
    let (pts, audit) = match ring.characteristic() {
        Some(_) => {
            let pts = magma.points()?;
            let e = pts.len();
            (pts, GroupAudit::Exhaustive { elements: e })
        }
        None => {
            let side = (2 * radius + 1) as usize;
            let total = side.checked_pow(n as u32).filter(|&t| t <= 1 << 12).ok_or_else(|| {
                Error::Precondition(format!("audit box of side {side} in {n} coordinates is too large"))
            })?;
            let pts: Vec<Vec<BigInt>> = (0..total)
                .map(|i| tuple_of(i, n, side).into_iter().map(|d| BigInt::from(d as i64 - radius)).collect())
                .collect();
            (pts, GroupAudit::NoCounterexample { radius, elements: total })
        }
    };
    let g = GroupRealization { ring, names: diff.names().to_vec(), law, tower, audit, magma, levels };
    audit_axioms(&g, &pts, exec)?;
    Ok(g)
}

fn audit_axioms(g: &GroupRealization, pts: &[Vec<BigInt>], exec: Execution) -> Result<()> {
    let n = g.names.len();
    let zero = vec![BigInt::zero(); n];
    let fail = |what: &str, a: &[BigInt]| {
        Error::Internal(format!("group audit: {what} fails at ({})", a.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")))
    };
    for a in pts {
        if g.op(a, &zero) != *a || g.op(&zero, a) != *a {
            return Err(fail("identity", a));
        }
        let b = g.inverse(a);
        if g.op(a, &b) != zero || g.op(&b, a) != zero {
            return Err(fail("inverse", a));
        }
    }
    let assoc = par::find_first(exec, pts.len(), |i| {
        let a = &pts[i];
        for b in pts {
            let ab = g.op(a, b);
            for c in pts {
                if g.op(&ab, c) != g.op(a, &g.op(b, c)) {
                    return Some(());
                }
            }
        }
        None
    });
    if let Some((i, ())) = assoc {
        return Err(fail("associativity", &pts[i]));
    }
    // each level is central among the levels up to it
    for (lvl, _) in &g.tower {
        let upto: Vec<&Vec<BigInt>> =
            pts.iter().filter(|a| (0..n).all(|x| g.levels[x] <= *lvl || a[x].is_zero())).collect();
        let kernel: Vec<&&Vec<BigInt>> =
            upto.iter().filter(|a| (0..n).all(|x| g.levels[x] == *lvl || a[x].is_zero())).collect();
        let low = |v: Vec<BigInt>| -> Vec<BigInt> {
            v.into_iter().enumerate().filter(|(x, _)| g.levels[*x] <= *lvl).map(|(_, c)| c).collect()
        };
        for z in &kernel {
            for a in &upto {
                if low(g.op(z, a)) != low(g.op(a, z)) {
                    return Err(fail("centrality", z));
                }
            }
        }
    }
    Ok(())
}

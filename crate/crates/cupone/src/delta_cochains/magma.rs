use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::cochain::Cochain;
use super::deltaset::DeltaSet;
use crate::binomial_ring::RingSpec;
use crate::error::{Error, Result};
use crate::par::{self, Execution};

/// A finite set with a total binary operation given by its table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMagma {
    labels: Vec<String>,
    table: Vec<u32>,
    unit: Option<usize>,
}

impl FiniteMagma {
    pub fn new(labels: Vec<String>, table: Vec<u32>) -> Result<Self> {
        let n = labels.len();
        if table.len() != n * n || table.iter().any(|&c| c as usize >= n) {
            return Err(Error::Precondition("multiplication table does not fit the carrier".into()));
        }
        let unit = (0..n).find(|&e| (0..n).all(|a| table[e * n + a] as usize == a && table[a * n + e] as usize == a));
        Ok(FiniteMagma { labels, table, unit })
    }

    pub fn from_fn(labels: Vec<String>, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let n = labels.len();
        let table = (0..n * n).map(|i| f(i / n, i % n) as u32).collect();
        Self::new(labels, table)
    }

    /// Z/m under addition.
    pub fn cyclic(m: usize) -> Self {
        Self::from_fn((0..m).map(|i| i.to_string()).collect(), |a, b| (a + b) % m).expect("cyclic table")
    }

    /// Direct product; element (a, b) has index a·|other| + b.
    pub fn product(&self, other: &FiniteMagma) -> Self {
        let m = other.size();
        let labels = self
            .labels
            .iter()
            .flat_map(|a| other.labels.iter().map(move |b| format!("({a},{b})")))
            .collect();
        Self::from_fn(labels, |x, y| self.op(x / m, y / m) * m + other.op(x % m, y % m)).expect("product table")
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size() + b] as usize
    }

    pub fn unit(&self) -> Option<usize> {
        self.unit
    }

    /// Smallest (a, b, c) in lexicographic order with (ab)c ≠ a(bc).
    pub fn associativity_counterexample(&self, exec: Execution) -> Option<(usize, usize, usize)> {
        let n = self.size();
        par::find_first(exec, n, |a| {
            for b in 0..n {
                let ab = self.op(a, b);
                for c in 0..n {
                    if self.op(ab, c) != self.op(a, self.op(b, c)) {
                        return Some((b, c));
                    }
                }
            }
            None
        })
        .map(|(a, (b, c))| (a, b, c))
    }

    pub fn is_associative(&self) -> bool {
        self.associativity_counterexample(Execution::default()).is_none()
    }

    pub fn inverse(&self, a: usize) -> Option<usize> {
        let e = self.unit?;
        (0..self.size()).find(|&b| self.op(a, b) == e && self.op(b, a) == e)
    }

    pub fn is_group(&self) -> bool {
        self.unit.is_some() && self.is_associative() && (0..self.size()).all(|a| self.inverse(a).is_some())
    }

    /// Order of `a` in a monoid (None if no unit or not periodic back to the unit).
    pub fn order(&self, a: usize) -> Option<usize> {
        let e = self.unit?;
        let mut x = a;
        for k in 1..=self.size() {
            if x == e {
                return Some(k);
            }
            x = self.op(x, a);
        }
        None
    }
}

/// Digits of a cell index of Δ(M) in base |M|, most significant first.
pub fn tuple_of(mut index: usize, dim: usize, n: usize) -> Vec<usize> {
    let mut t = vec![0; dim];
    for k in (0..dim).rev() {
        t[k] = index % n;
        index /= n;
    }
    t
}

pub fn index_of(tuple: &[usize], n: usize) -> usize {
    tuple.iter().fold(0, |acc, &a| acc * n + a)
}

/// Δ(M): one vertex, cells = tuples, faces (a₂,…), (…, a_i a_{i+1}, …), (…, a_{n−1}).
/// Dimension 3 requires associativity.
pub fn delta_from_magma(m: &FiniteMagma, max_dim: usize, ring: RingSpec) -> Result<DeltaSet> {
    if max_dim > 3 {
        return Err(Error::Degree(format!("max_dim {max_dim}")));
    }
    if max_dim == 3 {
        if let Some((a, b, c)) = m.associativity_counterexample(Execution::default()) {
            return Err(Error::Precondition(format!(
                "not associative at ({}, {}, {})",
                m.label(a),
                m.label(b),
                m.label(c)
            )));
        }
    }
    let n = m.size();
    let mut x = DeltaSet::new(ring);
    x.add_cell(0, "*", vec![])?;
    for dim in 1..=max_dim {
        let total = n.pow(dim as u32);
        for idx in 0..total {
            let t = tuple_of(idx, dim, n);
            let id = format!("[{}]", t.iter().map(|&a| m.label(a)).collect::<Vec<_>>().join("|"));
            let faces = if dim == 1 {
                vec![0, 0]
            } else {
                (0..=dim)
                    .map(|i| {
                        let f: Vec<usize> = if i == 0 {
                            t[1..].to_vec()
                        } else if i == dim {
                            t[..dim - 1].to_vec()
                        } else {
                            let mut f = t[..i - 1].to_vec();
                            f.push(m.op(t[i - 1], t[i]));
                            f.extend_from_slice(&t[i + 1..]);
                            f
                        };
                        index_of(&f, n)
                    })
                    .collect()
            };
            x.add_cell(dim, id, faces)?;
        }
    }
    Ok(x)
}

/// Bar construction of a finite monoid.
pub fn bar_construction(m: &FiniteMagma, max_dim: usize, ring: RingSpec) -> Result<DeltaSet> {
    if m.unit().is_none() || !m.is_associative() {
        return Err(Error::Precondition("bar construction needs a monoid".into()));
    }
    delta_from_magma(m, max_dim, ring)
}

/// The magma M × Z/m with (a₁,b₁)(a₂,b₂) = (a₁a₂, b₁ + b₂ + ν(a₁,a₂)).
/// Element (a, b) has index a·m + b.
pub fn extension_magma(m: &FiniteMagma, modulus: usize, nu: &Cochain) -> Result<FiniteMagma> {
    if nu.dim() != 2 {
        return Err(Error::Degree("extension cocycle must be a 2-cochain".into()));
    }
    let n = m.size();
    let val = |a: usize, b: usize| -> usize {
        let v: BigInt = nu.get(a * n + b) % BigInt::from(modulus);
        let v = v.to_i64().expect("small");
        v.rem_euclid(modulus as i64) as usize
    };
    let labels = m
        .labels()
        .iter()
        .flat_map(|a| (0..modulus).map(move |b| format!("({a},{b})")))
        .collect();
    FiniteMagma::from_fn(labels, |x, y| {
        let (a1, b1) = (x / modulus, x % modulus);
        let (a2, b2) = (y / modulus, y % modulus);
        m.op(a1, a2) * modulus + (b1 + b2 + val(a1, a2)) % modulus
    })
}

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::binomial_ring::RingSpec;
use crate::error::{Error, Result};

/// Dense matrix with exact entries in R (canonical residues over Z_p).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    ring: RingSpec,
    rows: usize,
    cols: usize,
    data: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn zero(ring: RingSpec, rows: usize, cols: usize) -> Self {
        IntMatrix { ring, rows, cols, data: vec![vec![BigInt::zero(); cols]; rows] }
    }

    pub fn identity(ring: RingSpec, n: usize) -> Self {
        let mut m = Self::zero(ring, n, n);
        for i in 0..n {
            m.data[i][i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(ring: RingSpec, cols: usize, rows: Vec<Vec<BigInt>>) -> Self {
        let data: Vec<Vec<BigInt>> = rows
            .into_iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged matrix");
                r.into_iter().map(|a| ring.reduce(a)).collect()
            })
            .collect();
        IntMatrix { ring, rows: data.len(), cols, data }
    }

    pub fn from_i64(ring: RingSpec, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(ring, cols, rows.iter().map(|r| r.iter().map(|&a| BigInt::from(a)).collect()).collect())
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(ring: RingSpec, rows: usize, cols: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zero(ring, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, a) in c.iter().enumerate() {
                m.data[i][j] = ring.reduce(a.clone());
            }
        }
        m
    }

    pub fn from_triples(ring: RingSpec, rows: usize, cols: usize, triples: &[(usize, usize, BigInt)]) -> Self {
        let mut m = Self::zero(ring, rows, cols);
        for (r, c, v) in triples {
            let s = ring.add(&m.data[*r][*c], v);
            m.data[*r][*c] = s;
        }
        m
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r][c] = self.ring.reduce(v);
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r]
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        self.data.iter().map(|r| r[c].clone()).collect()
    }

    pub(crate) fn into_data(self) -> Vec<Vec<BigInt>> {
        self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.iter().all(|a| a.is_zero()))
    }

    /// Nonzero entries in (row, col) order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().enumerate().filter(|(_, a)| !a.is_zero()).map(move |(j, a)| (i, j, a)))
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = Self::zero(self.ring, self.cols, self.rows);
        for (i, j, a) in self.entries() {
            t.data[j][i] = a.clone();
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        self.ring.check_same(&other.ring)?;
        if self.cols != other.rows {
            return Err(Error::Precondition(format!(
                "shape mismatch {}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zero(self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for (k, a) in self.data[i].iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in other.data[k].iter().enumerate() {
                    if !b.is_zero() {
                        out.data[i][j] += a * b;
                    }
                }
            }
            for x in out.data[i].iter_mut() {
                *x = self.ring.reduce(std::mem::take(x));
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "vector length");
        self.data
            .iter()
            .map(|r| {
                let mut s = BigInt::zero();
                for (a, b) in r.iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        s += a * b;
                    }
                }
                self.ring.reduce(s)
            })
            .collect()
    }

    /// [self | other].
    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.iter().chain(b).cloned().collect())
            .collect();
        IntMatrix { ring: self.ring, rows: self.rows, cols: self.cols + other.cols, data }
    }

    /// Debug dump: `rows cols` then one `r c value` line per nonzero entry.
    pub fn dump(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for (i, j, a) in self.entries() {
            let _ = writeln!(s, "{i} {j} {a}");
        }
        s
    }

    pub fn parse_dump(ring: RingSpec, text: &str) -> Result<IntMatrix> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let bad = |line: usize, msg: &str| Error::Parse { line: line + 1, msg: msg.to_string() };
        let (n0, head) = lines.next().ok_or_else(|| bad(0, "empty dump"))?;
        let dims: Vec<usize> = head
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| bad(n0, "bad dimension")))
            .collect::<Result<_>>()?;
        if dims.len() != 2 {
            return Err(bad(n0, "expected `rows cols`"));
        }
        let mut m = Self::zero(ring, dims[0], dims[1]);
        for (n, l) in lines {
            let t: Vec<&str> = l.split_whitespace().collect();
            if t.len() != 3 {
                return Err(bad(n, "expected `r c value`"));
            }
            let r: usize = t[0].parse().map_err(|_| bad(n, "bad row"))?;
            let c: usize = t[1].parse().map_err(|_| bad(n, "bad column"))?;
            let v: BigInt = t[2].parse().map_err(|_| bad(n, "bad value"))?;
            if r >= m.rows || c >= m.cols {
                return Err(bad(n, "entry out of bounds"));
            }
            m.set(r, c, v);
        }
        Ok(m)
    }
}

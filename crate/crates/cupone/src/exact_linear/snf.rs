use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use crate::binomial_ring::RingSpec;

/// U·M·V = D with D diagonal, d_1 | d_2 | …, nonzero entries positive
/// (equal to 1 over Z_p). The inverses are kept alongside.
#[derive(Clone, Debug)]
pub struct Smith {
    pub diag: Vec<BigInt>,
    pub u: Option<IntMatrix>,
    pub u_inv: Option<IntMatrix>,
    pub v: Option<IntMatrix>,
    pub v_inv: Option<IntMatrix>,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }
}

struct Track {
    on: bool,
    fwd: Vec<Vec<BigInt>>,
    inv: Vec<Vec<BigInt>>,
}

impl Track {
    fn new(ring: RingSpec, n: usize, on: bool) -> Self {
        let id = if on { IntMatrix::identity(ring, n).into_data() } else { Vec::new() };
        Track { on, fwd: id.clone(), inv: id }
    }
}

struct Work {
    ring: RingSpec,
    a: Vec<Vec<BigInt>>,
    // left transforms act on rows of fwd and columns of inv, right ones the reverse
    left: Track,
    right: Track,
}

impl Work {
    fn red(&self, x: BigInt) -> BigInt {
        self.ring.reduce(x)
    }

    /// row_i += q row_t
    fn row_add(&mut self, i: usize, t: usize, q: &BigInt) {
        let (ri, rt) = pair_mut(&mut self.a, i, t);
        for (x, y) in ri.iter_mut().zip(rt.iter()) {
            if !y.is_zero() {
                *x = self.ring.reduce(&*x + q * y);
            }
        }
        if self.left.on {
            let ring = self.ring;
            let (fi, ft) = pair_mut(&mut self.left.fwd, i, t);
            for (x, y) in fi.iter_mut().zip(ft.iter()) {
                if !y.is_zero() {
                    *x = ring.reduce(&*x + q * y);
                }
            }
            // inverse: col_t -= q col_i
            for r in self.left.inv.iter_mut() {
                if !r[i].is_zero() {
                    r[t] = ring.reduce(&r[t] - q * &r[i]);
                }
            }
        }
    }

    /// col_j += q col_t
    fn col_add(&mut self, j: usize, t: usize, q: &BigInt) {
        let ring = self.ring;
        for r in self.a.iter_mut() {
            if !r[t].is_zero() {
                r[j] = ring.reduce(&r[j] + q * &r[t]);
            }
        }
        if self.right.on {
            for r in self.right.fwd.iter_mut() {
                if !r[t].is_zero() {
                    r[j] = ring.reduce(&r[j] + q * &r[t]);
                }
            }
            // inverse: row_t -= q row_j
            let (rt, rj) = pair_mut(&mut self.right.inv, t, j);
            for (x, y) in rt.iter_mut().zip(rj.iter()) {
                if !y.is_zero() {
                    *x = ring.reduce(&*x - q * y);
                }
            }
        }
    }

    fn row_swap(&mut self, i: usize, t: usize) {
        if i == t {
            return;
        }
        self.a.swap(i, t);
        if self.left.on {
            self.left.fwd.swap(i, t);
            for r in self.left.inv.iter_mut() {
                r.swap(i, t);
            }
        }
    }

    fn col_swap(&mut self, j: usize, t: usize) {
        if j == t {
            return;
        }
        for r in self.a.iter_mut() {
            r.swap(j, t);
        }
        if self.right.on {
            for r in self.right.fwd.iter_mut() {
                r.swap(j, t);
            }
            self.right.inv.swap(j, t);
        }
    }

    /// row_t *= s for a unit s
    fn row_scale(&mut self, t: usize, s: &BigInt) {
        let ring = self.ring;
        let sinv = ring.inverse(s).expect("unit");
        for x in self.a[t].iter_mut() {
            *x = ring.reduce(&*x * s);
        }
        if self.left.on {
            for x in self.left.fwd[t].iter_mut() {
                *x = ring.reduce(&*x * s);
            }
            for r in self.left.inv.iter_mut() {
                r[t] = ring.reduce(&r[t] * &sinv);
            }
        }
    }
}

fn pair_mut<T>(v: &mut [T], i: usize, j: usize) -> (&mut T, &mut T) {
    assert_ne!(i, j);
    if i < j {
        let (a, b) = v.split_at_mut(j);
        (&mut a[i], &mut b[0])
    } else {
        let (a, b) = v.split_at_mut(i);
        (&mut b[0], &mut a[j])
    }
}

/// Smith normal form. Pivot: smallest magnitude, ties by (row, col).
/// `left`/`right` request U, U⁻¹ and V, V⁻¹ respectively.
pub fn smith(m: &IntMatrix, left: bool, right: bool) -> Smith {
    let ring = m.ring();
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work {
        ring,
        a: m.clone().into_data(),
        left: Track::new(ring, rows, left),
        right: Track::new(ring, cols, right),
    };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let mut best: Option<(BigInt, usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let a = &w.a[i][j];
                if a.is_zero() {
                    continue;
                }
                let mag = ring.magnitude(a);
                if best.as_ref().is_none_or(|b| mag < b.0) {
                    let one = mag.is_one();
                    best = Some((mag, i, j));
                    if one {
                        break;
                    }
                }
            }
            if best.as_ref().is_some_and(|b| b.0.is_one()) {
                break;
            }
        }
        let Some((_, pi, pj)) = best else { break };
        w.row_swap(pi, t);
        w.col_swap(pj, t);
        let piv = w.a[t][t].clone();
        let mut clean = true;
        for i in t + 1..rows {
            if w.a[i][t].is_zero() {
                continue;
            }
            let (q, r) = ring.div_rem_euclid(&w.a[i][t], &piv);
            if !q.is_zero() {
                w.row_add(i, t, &w.red(-q));
            }
            if !r.is_zero() {
                clean = false;
            }
        }
        for j in t + 1..cols {
            if w.a[t][j].is_zero() {
                continue;
            }
            let (q, r) = ring.div_rem_euclid(&w.a[t][j], &piv);
            if !q.is_zero() {
                w.col_add(j, t, &w.red(-q));
            }
            if !r.is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        if ring == RingSpec::Z {
            let bad = (t + 1..rows).find(|&i| w.a[i][t + 1..].iter().any(|a| !a.is_multiple_of(&piv)));
            if let Some(i) = bad {
                w.row_add(t, i, &BigInt::one());
                continue;
            }
            if piv.is_negative() {
                w.row_scale(t, &BigInt::from(-1));
            }
        } else if !piv.is_one() {
            let s = ring.inverse(&piv).expect("field");
            w.row_scale(t, &s);
        }
        diag.push(w.a[t][t].clone());
        t += 1;
    }
    let wrap = |tr: Track, n: usize| -> (Option<IntMatrix>, Option<IntMatrix>) {
        if !tr.on {
            return (None, None);
        }
        (Some(IntMatrix::from_rows(ring, n, tr.fwd)), Some(IntMatrix::from_rows(ring, n, tr.inv)))
    };
    let (u, u_inv) = wrap(w.left, rows);
    let (v, v_inv) = wrap(w.right, cols);
    Smith { diag, u, u_inv, v, v_inv }
}

/// Hermite normal form of the lattice spanned by `vectors` (rows): echelon,
/// positive pivots, entries above each pivot reduced into [0, pivot).
/// Over Z_p this is the reduced row echelon form. Zero rows are dropped.
pub fn hermite_rows(ring: RingSpec, n: usize, vectors: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = vectors.iter().map(|v| v.iter().map(|a| ring.reduce(a.clone())).collect()).collect();
    let mut out: Vec<Vec<BigInt>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for col in 0..n {
        loop {
            // combine the active rows with nonzero entries in `col` down to one
            let mut idx: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i][col].is_zero()).collect();
            if idx.is_empty() {
                break;
            }
            idx.sort_by(|&a, &b| ring.magnitude(&rows[a][col]).cmp(&ring.magnitude(&rows[b][col])).then(a.cmp(&b)));
            let p = idx[0];
            if idx.len() == 1 {
                let mut r = rows.swap_remove(p);
                let lead = r[col].clone();
                let scale = if ring == RingSpec::Z {
                    if lead.is_negative() { BigInt::from(-1) } else { BigInt::one() }
                } else {
                    ring.inverse(&lead).expect("field")
                };
                for x in r.iter_mut() {
                    *x = ring.reduce(&*x * &scale);
                }
                out.push(r);
                pivots.push(col);
                break;
            }
            let pr = rows[p].clone();
            for &i in &idx[1..] {
                let (q, _) = ring.div_rem_euclid(&rows[i][col], &pr[col]);
                for (x, y) in rows[i].iter_mut().zip(&pr) {
                    *x = ring.reduce(&*x - &q * y);
                }
            }
        }
    }
    // reduce above pivots
    for k in 0..out.len() {
        let (col, piv) = (pivots[k], out[k][pivots[k]].clone());
        for j in 0..k {
            let a = out[j][col].clone();
            if a.is_zero() {
                continue;
            }
            let q = if ring == RingSpec::Z { a.div_floor(&piv) } else { a };
            let pk = out[k].clone();
            for (x, y) in out[j].iter_mut().zip(&pk) {
                *x = ring.reduce(&*x - &q * y);
            }
        }
    }
    out
}

/// Incremental reduced row echelon form over Z_p with machine-word entries.
/// Rows are fed one at a time; pivot rows stay fully reduced, so reducing a
/// sparse row only touches the pivots its own support meets.
#[derive(Clone, Debug)]
pub struct ZpEchelon {
    p: u64,
    cols: usize,
    pivot_of_col: Vec<Option<usize>>,
    pivot_rows: Vec<(usize, Vec<u64>)>,
}

impl ZpEchelon {
    pub fn new(p: u64, cols: usize) -> Self {
        ZpEchelon { p, cols, pivot_of_col: vec![None; cols], pivot_rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivot_rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    fn inv(&self, a: u64) -> u64 {
        // Fermat
        let (mut base, mut e, mut r) = (a % self.p, self.p - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                r = r * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        r
    }

    /// Reduces `row` against the current pivots; returns the remainder.
    pub fn reduce(&self, entries: &[(usize, u64)]) -> Vec<u64> {
        let p = self.p;
        let mut row = vec![0u64; self.cols];
        for &(c, v) in entries {
            row[c] = (row[c] + v % p) % p;
        }
        for &(c, _) in entries {
            if let Some(k) = self.pivot_of_col[c] {
                let f = row[c];
                if f == 0 {
                    continue;
                }
                let pr = &self.pivot_rows[k].1;
                for (x, y) in row.iter_mut().zip(pr) {
                    if *y != 0 {
                        *x = (*x + (p - f) * y) % p;
                    }
                }
            }
        }
        row
    }

    /// Adds a row; returns true when it increased the rank.
    pub fn push(&mut self, entries: &[(usize, u64)]) -> bool {
        let p = self.p;
        let mut row = self.reduce(entries);
        let Some(c) = row.iter().position(|&x| x != 0) else { return false };
        let s = self.inv(row[c]);
        for x in row.iter_mut() {
            *x = *x * s % p;
        }
        for (_, pr) in self.pivot_rows.iter_mut() {
            let f = pr[c];
            if f != 0 {
                for (x, y) in pr.iter_mut().zip(&row) {
                    if *y != 0 {
                        *x = (*x + (p - f) * y) % p;
                    }
                }
            }
        }
        self.pivot_of_col[c] = Some(self.pivot_rows.len());
        self.pivot_rows.push((c, row));
        true
    }

    /// Whether `entries` lies in the row span.
    pub fn contains(&self, entries: &[(usize, u64)]) -> bool {
        self.reduce(entries).iter().all(|&x| x == 0)
    }

    /// Columns without a pivot, ascending.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.cols).filter(|&c| self.pivot_of_col[c].is_none()).collect()
    }

    /// Basis of the null space {x : r·x = 0 for all pushed rows r}.
    pub fn null_space(&self) -> Vec<Vec<u64>> {
        let p = self.p;
        let mut out = Vec::new();
        for free in 0..self.cols {
            if self.pivot_of_col[free].is_some() {
                continue;
            }
            let mut v = vec![0u64; self.cols];
            v[free] = 1;
            for (c, r) in &self.pivot_rows {
                v[*c] = (p - r[free]) % p;
            }
            out.push(v);
        }
        out
    }
}

/// Rank of a sparse matrix over Z_p given row by row.
pub fn zp_rank<I: IntoIterator<Item = Vec<(usize, u64)>>>(p: u64, cols: usize, rows: I) -> usize {
    let mut e = ZpEchelon::new(p, cols);
    for r in rows {
        e.push(&r);
        if e.rank() == cols {
            break;
        }
    }
    e.rank()
}

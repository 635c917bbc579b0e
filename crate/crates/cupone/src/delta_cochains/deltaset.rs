use std::collections::HashMap;
use std::fmt::Write as _;

use crate::binomial_ring::RingSpec;
use crate::error::{Error, Result};

pub const MAX_DIM: usize = 3;

/// A finite Δ-set of dimension at most 3 together with its coefficient ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaSet {
    ring: RingSpec,
    ids: [Vec<String>; 4],
    faces: [Vec<Vec<usize>>; 4],
}

impl DeltaSet {
    pub fn new(ring: RingSpec) -> Self {
        DeltaSet { ring, ids: Default::default(), faces: Default::default() }
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn with_ring(&self, ring: RingSpec) -> DeltaSet {
        DeltaSet { ring, ..self.clone() }
    }

    /// Appends a cell; `faces` lists d_0..d_dim by index into dimension dim-1.
    pub fn add_cell(&mut self, dim: usize, id: impl Into<String>, faces: Vec<usize>) -> Result<usize> {
        let id = id.into();
        if dim > MAX_DIM {
            return Err(Error::Degree(format!("cell {id} of dimension {dim}")));
        }
        let expected = if dim == 0 { 0 } else { dim + 1 };
        if faces.len() != expected {
            return Err(Error::Face(id));
        }
        if dim > 0 && faces.iter().any(|&f| f >= self.ids[dim - 1].len()) {
            return Err(Error::Face(id));
        }
        self.ids[dim].push(id);
        self.faces[dim].push(faces);
        Ok(self.ids[dim].len() - 1)
    }

    pub fn count(&self, dim: usize) -> usize {
        if dim > MAX_DIM {
            0
        } else {
            self.ids[dim].len()
        }
    }

    /// Top dimension with cells (0 for an empty set).
    pub fn dim(&self) -> usize {
        (0..=MAX_DIM).rev().find(|&k| !self.ids[k].is_empty()).unwrap_or(0)
    }

    pub fn id(&self, dim: usize, cell: usize) -> &str {
        &self.ids[dim][cell]
    }

    pub fn find(&self, dim: usize, id: &str) -> Option<usize> {
        self.ids[dim].iter().position(|s| s == id)
    }

    pub fn faces(&self, dim: usize, cell: usize) -> &[usize] {
        &self.faces[dim][cell]
    }

    pub fn face(&self, dim: usize, cell: usize, i: usize) -> usize {
        self.faces[dim][cell][i]
    }

    /// Front p-face d_{p+1}⋯d_n s.
    pub fn front(&self, dim: usize, cell: usize, p: usize) -> usize {
        let mut c = cell;
        for k in (p + 1..=dim).rev() {
            c = self.faces[k][c][k];
        }
        c
    }

    /// Back q-face d_0^{n-q} s.
    pub fn back(&self, dim: usize, cell: usize, q: usize) -> usize {
        let mut c = cell;
        for k in (q + 1..=dim).rev() {
            c = self.faces[k][c][0];
        }
        c
    }

    pub fn euler_characteristic(&self) -> i64 {
        (0..=MAX_DIM).map(|k| if k % 2 == 0 { 1 } else { -1 } * self.count(k) as i64).sum()
    }

    /// d_i d_j = d_{j-1} d_i for i < j on every cell of dimension ≥ 2.
    pub fn check_faces(&self) -> Result<()> {
        for dim in 2..=MAX_DIM {
            for (c, f) in self.faces[dim].iter().enumerate() {
                for j in 0..=dim {
                    for i in 0..j {
                        let lhs = self.faces[dim - 1][f[j]][i];
                        let rhs = self.faces[dim - 1][f[i]][j - 1];
                        if lhs != rhs {
                            return Err(Error::Face(self.ids[dim][c].clone()));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Text form: `ring …` then `cells k` blocks of `id : f0 … fk`.
    pub fn render(&self) -> String {
        let mut s = String::new();
        match self.ring {
            RingSpec::Z => s.push_str("ring Z\n"),
            RingSpec::Zp(p) => {
                let _ = writeln!(s, "ring Zp {p}");
            }
        }
        for dim in 0..=self.dim() {
            let _ = writeln!(s, "cells {dim}");
            for (c, id) in self.ids[dim].iter().enumerate() {
                if dim == 0 {
                    let _ = writeln!(s, "{id}");
                } else {
                    let f: Vec<&str> = self.faces[dim][c].iter().map(|&i| self.ids[dim - 1][i].as_str()).collect();
                    let _ = writeln!(s, "{id} : {}", f.join(" "));
                }
            }
        }
        s
    }

    /// Parses the text form and audits the face identities.
    pub fn parse(text: &str) -> Result<DeltaSet> {
        let mut ring = None;
        let mut current: Option<usize> = None;
        let mut x = DeltaSet::new(RingSpec::Z);
        let mut lookup: [HashMap<String, usize>; 4] = Default::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |msg: String| Error::Parse { line: n + 1, msg };
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks[0] {
                "ring" => {
                    let r: RingSpec = toks[1..].join(" ").parse().map_err(|_| bad(format!("bad ring `{line}`")))?;
                    ring = Some(r);
                }
                "cells" => {
                    let d: usize = toks
                        .get(1)
                        .and_then(|t| t.parse().ok())
                        .filter(|&d| d <= MAX_DIM)
                        .ok_or_else(|| bad(format!("bad block header `{line}`")))?;
                    current = Some(d);
                }
                _ => {
                    let dim = current.ok_or_else(|| bad("cell before any `cells` block".into()))?;
                    let (id, rest) = match line.split_once(':') {
                        Some((a, b)) => (a.trim(), b.trim()),
                        None => (line, ""),
                    };
                    if id.is_empty() || id.contains(char::is_whitespace) {
                        return Err(bad(format!("bad cell id in `{line}`")));
                    }
                    if lookup[dim].contains_key(id) {
                        return Err(bad(format!("duplicate cell `{id}`")));
                    }
                    let mut faces = Vec::new();
                    for f in rest.split_whitespace() {
                        if dim == 0 {
                            return Err(Error::Face(id.to_string()));
                        }
                        let i = lookup[dim - 1].get(f).copied().ok_or_else(|| Error::Face(id.to_string()))?;
                        faces.push(i);
                    }
                    let c = x.add_cell(dim, id, faces)?;
                    lookup[dim].insert(id.to_string(), c);
                }
            }
        }
        x.ring = ring.ok_or_else(|| Error::Parse { line: 1, msg: "missing `ring` line".into() })?;
        x.check_faces()?;
        Ok(x)
    }
}

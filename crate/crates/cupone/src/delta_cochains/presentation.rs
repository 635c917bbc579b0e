use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::cochain::Cochain;
use super::deltaset::DeltaSet;
use crate::binomial_ring::RingSpec;
use crate::error::{Error, Result};

/// Generators and relators; a letter is (generator, ±1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedGroup {
    pub gens: Vec<String>,
    pub relators: Vec<Vec<(usize, i32)>>,
}

impl PresentedGroup {
    pub fn new(gens: Vec<String>, relators: Vec<Vec<(usize, i32)>>) -> Result<Self> {
        for r in &relators {
            if r.is_empty() {
                return Err(Error::Precondition("empty relator".into()));
            }
            if r.iter().any(|&(g, e)| g >= gens.len() || (e != 1 && e != -1)) {
                return Err(Error::Precondition("bad letter in relator".into()));
            }
        }
        Ok(PresentedGroup { gens, relators })
    }

    /// Parses `gens: a b` and `rel: a b a^-1 b^-1` lines.
    pub fn parse(text: &str) -> Result<Self> {
        let mut gens: Option<Vec<String>> = None;
        let mut relators = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |msg: String| Error::Parse { line: n + 1, msg };
            if let Some(rest) = line.strip_prefix("gens:") {
                gens = Some(rest.split_whitespace().map(str::to_string).collect());
            } else if let Some(rest) = line.strip_prefix("rel:") {
                let g = gens.as_ref().ok_or_else(|| bad("relator before `gens:`".into()))?;
                let mut word = Vec::new();
                for tok in rest.split_whitespace() {
                    let (name, e) = match tok.strip_suffix("^-1") {
                        Some(nm) => (nm, -1),
                        None => (tok, 1),
                    };
                    let i = g.iter().position(|s| s == name).ok_or_else(|| bad(format!("unknown generator `{name}`")))?;
                    word.push((i, e));
                }
                if word.is_empty() {
                    return Err(bad("empty relator".into()));
                }
                relators.push(word);
            } else {
                return Err(bad(format!("unrecognized line `{line}`")));
            }
        }
        let gens = gens.ok_or_else(|| Error::Parse { line: 1, msg: "missing `gens:` line".into() })?;
        PresentedGroup::new(gens, relators)
    }

    pub fn render(&self) -> String {
        let mut s = format!("gens: {}\n", self.gens.join(" "));
        for r in &self.relators {
            let w: Vec<String> =
                r.iter().map(|&(g, e)| if e < 0 { format!("{}^-1", self.gens[g]) } else { self.gens[g].clone() }).collect();
            let _ = writeln!(s, "rel: {}", w.join(" "));
        }
        s
    }

    /// Exponent sum of generator g in relator r.
    pub fn exponent_sum(&self, r: usize, g: usize) -> i64 {
        self.relators[r].iter().filter(|l| l.0 == g).map(|l| l.1 as i64).sum()
    }
}

fn commutator(a: &[(usize, i32)], b: &[(usize, i32)]) -> Vec<(usize, i32)> {
    let inv = |w: &[(usize, i32)]| w.iter().rev().map(|&(g, e)| (g, -e)).collect::<Vec<_>>();
    [a.to_vec(), b.to_vec(), inv(a), inv(b)].concat()
}

/// ⟨g1, g2, g12 | [g1,g2]·g12^{−k}, [g1,g12], [g2,g12]⟩, with [a,b] = aba⁻¹b⁻¹.
pub fn heisenberg_presentation(k: usize) -> PresentedGroup {
    let mut r1 = commutator(&[(0, 1)], &[(1, 1)]);
    r1.extend(std::iter::repeat_n((2, -1), k));
    let r2 = commutator(&[(0, 1)], &[(2, 1)]);
    let r3 = commutator(&[(1, 1)], &[(2, 1)]);
    PresentedGroup::new(vec!["g1".into(), "g2".into(), "g12".into()], vec![r1, r2, r3]).expect("well formed")
}

/// ⟨x1, x2, x3 | [x1, [x3⁻¹,x2]^n], [x2, [x1⁻¹,x3]^n]⟩.
pub fn borromean_presentation(n: usize) -> PresentedGroup {
    let w1 = commutator(&[(2, -1)], &[(1, 1)]).repeat(n);
    let w2 = commutator(&[(0, -1)], &[(2, 1)]).repeat(n);
    let ra = commutator(&[(0, 1)], &w1);
    let rb = commutator(&[(1, 1)], &w2);
    PresentedGroup::new(vec!["x1".into(), "x2".into(), "x3".into()], vec![ra, rb]).expect("well formed")
}

/// The one-vertex Δ-complex of a presentation. Edge order: generators,
/// inverse edges ḡ (only for generators occurring inverted), z, diagonals.
#[derive(Clone, Debug)]
pub struct PresentationComplex {
    pub group: PresentedGroup,
    pub delta: DeltaSet,
    pub gen_edge: Vec<usize>,
    pub inv_edge: Vec<Option<usize>>,
    pub z_edge: usize,
    /// (z, z | z)
    pub z_cell: usize,
    /// (g, ḡ | z)
    pub gadget: Vec<Option<usize>>,
    /// Fan cells s_1, …, s_{ℓ−1} of each relator (one cell for ℓ = 1).
    pub relator_cells: Vec<Vec<usize>>,
}

pub fn presentation_complex(group: &PresentedGroup, ring: RingSpec) -> Result<PresentationComplex> {
    let mut x = DeltaSet::new(ring);
    x.add_cell(0, "v", vec![])?;
    let gen_edge: Vec<usize> =
        group.gens.iter().map(|g| x.add_cell(1, g.clone(), vec![0, 0])).collect::<Result<_>>()?;
    let mut inv_edge = vec![None; group.gens.len()];
    for (g, name) in group.gens.iter().enumerate() {
        if group.relators.iter().flatten().any(|&(h, e)| h == g && e < 0) {
            inv_edge[g] = Some(x.add_cell(1, format!("{name}_bar"), vec![0, 0])?);
        }
    }
    let z_edge = x.add_cell(1, "z", vec![0, 0])?;
    let letter = |(g, e): (usize, i32)| if e > 0 { gen_edge[g] } else { inv_edge[g].expect("inverse edge") };
    // diagonals first so that all edges precede the 2-cells
    let mut diag: Vec<Vec<usize>> = Vec::new();
    for (r, word) in group.relators.iter().enumerate() {
        let l = word.len();
        let mut p = Vec::with_capacity(l);
        p.push(letter(word[0]));
        for i in 2..l {
            p.push(x.add_cell(1, format!("r{}_p{}", r + 1, i), vec![0, 0])?);
        }
        if l > 1 {
            p.push(z_edge);
        }
        diag.push(p);
    }
    let z_cell = x.add_cell(2, "Z", vec![z_edge, z_edge, z_edge])?;
    let mut gadget = vec![None; group.gens.len()];
    for (g, name) in group.gens.iter().enumerate() {
        if let Some(b) = inv_edge[g] {
            gadget[g] = Some(x.add_cell(2, format!("G_{name}"), vec![b, z_edge, gen_edge[g]])?);
        }
    }
    let mut relator_cells = Vec::new();
    for (r, word) in group.relators.iter().enumerate() {
        let p = &diag[r];
        let mut cells = Vec::new();
        if word.len() == 1 {
            cells.push(x.add_cell(2, format!("r{}_s1", r + 1), vec![z_edge, z_edge, letter(word[0])])?);
        } else {
            for i in 0..word.len() - 1 {
                // s_i = (p_i, a_{i+1} | p_{i+1})
                let f = vec![letter(word[i + 1]), p[i + 1], p[i]];
                cells.push(x.add_cell(2, format!("r{}_s{}", r + 1, i + 1), f)?);
            }
        }
        relator_cells.push(cells);
    }
    x.check_faces()?;
    Ok(PresentationComplex { group: group.clone(), delta: x, gen_edge, inv_edge, z_edge, z_cell, gadget, relator_cells })
}

impl PresentationComplex {
    pub fn ring(&self) -> RingSpec {
        self.delta.ring()
    }

    /// The 2-cycle carried by relator r: Σ s_i − Σ_{inverse letters} G_g − (#inv − 1)·Z.
    /// Needs zero exponent sums.
    pub fn relator_cycle(&self, r: usize) -> Result<Vec<BigInt>> {
        let g = &self.group;
        if (0..g.gens.len()).any(|i| g.exponent_sum(r, i) != 0) {
            return Err(Error::Precondition(format!("relator {} has a nonzero exponent sum", r + 1)));
        }
        let mut c = vec![BigInt::zero(); self.delta.count(2)];
        for &s in &self.relator_cells[r] {
            c[s] += BigInt::one();
        }
        let mut inv = 0i64;
        for &(h, e) in &g.relators[r] {
            if e < 0 {
                c[self.gadget[h].expect("gadget")] -= BigInt::one();
                inv += 1;
            }
        }
        c[self.z_cell] -= BigInt::from(inv - 1);
        Ok(c)
    }

    /// The 1-cocycle dual to generator g (value 1 on g, −1 on ḡ, 0 on other generators), if it exists.
    pub fn generator_dual(&self, g: usize) -> Option<Cochain> {
        let ring = self.ring();
        let gp = &self.group;
        if (0..gp.relators.len()).any(|r| !ring.reduce(BigInt::from(gp.exponent_sum(r, g))).is_zero()) {
            return None;
        }
        let mut c = Cochain::zero(ring, 1);
        c.set(self.gen_edge[g], BigInt::one());
        if let Some(b) = self.inv_edge[g] {
            c.set(b, BigInt::from(-1));
        }
        for (r, word) in gp.relators.iter().enumerate() {
            let mut acc = BigInt::zero();
            let cells = &self.relator_cells[r];
            for (i, &(h, e)) in word.iter().enumerate() {
                if h == g {
                    acc += e;
                }
                // p_{i+1} is the long face of s_i
                if i >= 1 && i + 1 < word.len() {
                    let p = self.delta.face(2, cells[i - 1], 1);
                    c.set(p, acc.clone());
                }
            }
        }
        Some(c)
    }
}

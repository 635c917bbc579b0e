use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;
use parking_lot::RwLock;

use super::ring::{binom_z, RingSpec};
use crate::error::{Error, Result};

/// Finitely supported exponent function I: X -> N, stored as sorted
/// (generator id, exponent) pairs with no zero exponents.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct MultiIndex {
    entries: Vec<(u32, u32)>,
}

impl MultiIndex {
    pub fn unit() -> Self {
        MultiIndex { entries: Vec::new() }
    }

    pub fn single(gen: u32, k: u32) -> Self {
        if k == 0 {
            Self::unit()
        } else {
            MultiIndex { entries: vec![(gen, k)] }
        }
    }

    pub fn from_pairs<I: IntoIterator<Item = (u32, u32)>>(pairs: I) -> Self {
        let mut m: BTreeMap<u32, u32> = BTreeMap::new();
        for (g, k) in pairs {
            *m.entry(g).or_insert(0) += k;
        }
        MultiIndex { entries: m.into_iter().filter(|&(_, k)| k > 0).collect() }
    }

    pub fn is_unit(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.entries.iter().map(|e| e.1).sum()
    }

    pub fn exponent(&self, gen: u32) -> u32 {
        self.entries
            .binary_search_by_key(&gen, |e| e.0)
            .map(|i| self.entries[i].1)
            .unwrap_or(0)
    }

    pub fn entries(&self) -> &[(u32, u32)] {
        &self.entries
    }

    pub fn support(&self) -> impl Iterator<Item = u32> + '_ {
        self.entries.iter().map(|e| e.0)
    }

    pub fn max_exponent(&self) -> u32 {
        self.entries.iter().map(|e| e.1).max().unwrap_or(0)
    }

    pub fn max_gen(&self) -> Option<u32> {
        self.entries.last().map(|e| e.0)
    }

    pub fn plus(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex::from_pairs(self.entries.iter().chain(other.entries.iter()).copied())
    }

    /// Splits off the factor of the first generator in the support.
    pub fn split_first(&self) -> Option<((u32, u32), MultiIndex)> {
        let (&first, rest) = self.entries.split_first()?;
        Some((first, MultiIndex { entries: rest.to_vec() }))
    }

    /// All ordered pairs (I1, I2) of nonzero indices with I1 + I2 = self.
    pub fn splittings(&self) -> Vec<(MultiIndex, MultiIndex)> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.entries.len()];
        loop {
            let left = MultiIndex::from_pairs(self.entries.iter().zip(&cur).map(|(e, &c)| (e.0, c)));
            let right =
                MultiIndex::from_pairs(self.entries.iter().zip(&cur).map(|(e, &c)| (e.0, e.1 - c)));
            if !left.is_unit() && !right.is_unit() {
                out.push((left, right));
            }
            let mut i = 0;
            loop {
                if i == cur.len() {
                    out.sort();
                    return out;
                }
                if cur[i] < self.entries[i].1 {
                    cur[i] += 1;
                    break;
                }
                cur[i] = 0;
                i += 1;
            }
        }
    }

    /// Partial order I <= J pointwise.
    pub fn le(&self, other: &MultiIndex) -> bool {
        self.entries.iter().all(|&(g, k)| other.exponent(g) >= k)
    }

    /// Text form `z(x,2)*z(y,1)`; the unit index renders as `1`.
    pub fn render(&self, names: &[String]) -> String {
        if self.is_unit() {
            return "1".to_string();
        }
        self.entries
            .iter()
            .map(|&(g, k)| format!("z({},{})", gen_name(names, g), k))
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Every index on generators `0..ngens` with weight in `1..=max_weight`
    /// (and exponents at most `max_exp` if given), in canonical order.
    pub fn enumerate(ngens: u32, max_weight: u32, max_exp: Option<u32>) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; ngens as usize];
        fn rec(
            pos: usize,
            left: u32,
            cur: &mut Vec<u32>,
            max_exp: Option<u32>,
            out: &mut Vec<MultiIndex>,
        ) {
            if pos == cur.len() {
                let m = MultiIndex::from_pairs(cur.iter().enumerate().map(|(g, &k)| (g as u32, k)));
                if !m.is_unit() {
                    out.push(m);
                }
                return;
            }
            let top = max_exp.map_or(left, |e| e.min(left));
            for k in 0..=top {
                cur[pos] = k;
                rec(pos + 1, left - k, cur, max_exp, out);
            }
            cur[pos] = 0;
        }
        rec(0, max_weight, &mut cur, max_exp, &mut out);
        out.sort();
        out
    }
}

pub(crate) fn gen_name(names: &[String], g: u32) -> String {
    names.get(g as usize).cloned().unwrap_or_else(|| format!("g{g}"))
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.weight().cmp(&other.weight()) {
            Ordering::Equal => {}
            o => return o,
        }
        // exponent vectors in declaration order; larger exponent on the
        // earlier generator sorts first
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.entries, &other.entries);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Less,
                (None, Some(_)) => return Ordering::Greater,
                (Some(&(ga, ka)), Some(&(gb, kb))) => {
                    if ga < gb {
                        return Ordering::Less;
                    }
                    if gb < ga {
                        return Ordering::Greater;
                    }
                    if ka != kb {
                        return kb.cmp(&ka);
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

type ConstTable = HashMap<(u32, u32), Arc<Vec<BigInt>>>;

static STRUCTURE_CONSTANTS: Lazy<RwLock<ConstTable>> = Lazy::new(|| RwLock::new(HashMap::new()));

/// Coefficients c_k (k = max(m,n)..=m+n) with zeta_m * zeta_n = sum c_k zeta_k,
/// computed by evaluation on 0..=m+n and Newton interpolation, then cached.
pub fn structure_constants(m: u32, n: u32) -> Arc<Vec<BigInt>> {
    let key = (m.min(n), m.max(n));
    if let Some(v) = STRUCTURE_CONSTANTS.read().get(&key) {
        return v.clone();
    }
    let (m, n) = key;
    let top = m + n;
    let values: Vec<BigInt> = (0..=top)
        .map(|j| {
            let j = BigInt::from(j);
            binom_z(&j, m) * binom_z(&j, n)
        })
        .collect();
    let mut coeffs = Vec::new();
    for k in n..=top {
        let mut c = BigInt::zero();
        for (j, v) in values.iter().enumerate().take(k as usize + 1) {
            let b = binom_z(&BigInt::from(k), j as u32);
            if (k as usize - j).is_multiple_of(2) {
                c += b * v;
            } else {
                c -= b * v;
            }
        }
        coeffs.push(c);
    }
    // below max(m,n) the interpolated coefficients vanish
    let v = Arc::new(coeffs);
    STRUCTURE_CONSTANTS.write().entry(key).or_insert_with(|| v.clone()).clone()
}

/// Product of two basis elements, expanded in the zeta basis over `ring`.
pub fn mul_indices(ring: RingSpec, a: &MultiIndex, b: &MultiIndex) -> Vec<(MultiIndex, BigInt)> {
    let maxe = ring.max_exponent();
    let mut factors: Vec<Vec<(u32, u32, BigInt)>> = Vec::new();
    let (mut i, mut j) = (0, 0);
    let (ea, eb) = (a.entries(), b.entries());
    while i < ea.len() || j < eb.len() {
        let pick = match (ea.get(i), eb.get(j)) {
            (Some(&(ga, ka)), Some(&(gb, kb))) if ga == gb => {
                i += 1;
                j += 1;
                let lo = ka.max(kb);
                let cs = structure_constants(ka, kb);
                cs.iter()
                    .enumerate()
                    .map(|(t, c)| (ga, lo + t as u32, c.clone()))
                    .filter(|(_, k, c)| !c.is_zero() && maxe.is_none_or(|e| *k <= e))
                    .collect()
            }
            (Some(&(ga, ka)), Some(&(gb, _))) if ga < gb => {
                i += 1;
                vec![(ga, ka, BigInt::one())]
            }
            (Some(&(ga, ka)), None) => {
                i += 1;
                vec![(ga, ka, BigInt::one())]
            }
            (_, Some(&(gb, kb))) => {
                j += 1;
                vec![(gb, kb, BigInt::one())]
            }
            (None, None) => unreachable!(),
        };
        if pick.is_empty() {
            return Vec::new();
        }
        factors.push(pick);
    }
    let mut out: Vec<(Vec<(u32, u32)>, BigInt)> = vec![(Vec::new(), BigInt::one())];
    for f in factors {
        let mut next = Vec::with_capacity(out.len() * f.len());
        for (idx, c) in &out {
            for (g, k, c2) in &f {
                let mut e = idx.clone();
                e.push((*g, *k));
                next.push((e, c * c2));
            }
        }
        out = next;
    }
    out.into_iter()
        .map(|(e, c)| (MultiIndex { entries: e }, ring.reduce(c)))
        .filter(|(_, c)| !c.is_zero())
        .collect()
}

/// Element of Int(R^X): a finite combination of zeta_I basis elements.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BinomialPoly {
    ring: RingSpec,
    terms: BTreeMap<MultiIndex, BigInt>,
}

impl BinomialPoly {
    pub fn zero(ring: RingSpec) -> Self {
        BinomialPoly { ring, terms: BTreeMap::new() }
    }

    pub fn one(ring: RingSpec) -> Self {
        Self::basis(ring, MultiIndex::unit())
    }

    pub fn basis(ring: RingSpec, idx: MultiIndex) -> Self {
        let mut p = Self::zero(ring);
        p.add_term(idx, BigInt::one());
        p
    }

    /// The generator x = zeta_1(x).
    pub fn gen(ring: RingSpec, g: u32) -> Self {
        Self::basis(ring, MultiIndex::single(g, 1))
    }

    pub fn from_terms<I: IntoIterator<Item = (MultiIndex, BigInt)>>(ring: RingSpec, terms: I) -> Self {
        let mut p = Self::zero(ring);
        for (i, c) in terms {
            p.add_term(i, c);
        }
        p
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, BigInt> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<MultiIndex, BigInt> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, idx: &MultiIndex) -> BigInt {
        self.terms.get(idx).cloned().unwrap_or_default()
    }

    /// Constant-free, i.e. an element of the augmentation ideal m_X.
    pub fn is_constant_free(&self) -> bool {
        !self.terms.contains_key(&MultiIndex::unit())
    }

    pub fn add_term(&mut self, idx: MultiIndex, c: BigInt) {
        if let Some(e) = self.ring.max_exponent() {
            if idx.max_exponent() > e {
                return;
            }
        }
        let c = self.ring.reduce(c);
        if c.is_zero() {
            return;
        }
        let ring = self.ring;
        let mut remove = false;
        match self.terms.get_mut(&idx) {
            Some(v) => {
                *v = ring.reduce(&*v + c);
                remove = v.is_zero();
            }
            None => {
                self.terms.insert(idx.clone(), c);
            }
        }
        if remove {
            self.terms.remove(&idx);
        }
    }

    pub fn add_scaled(&mut self, other: &BinomialPoly, c: &BigInt) {
        assert_eq!(self.ring, other.ring, "ring mismatch");
        for (i, v) in &other.terms {
            self.add_term(i.clone(), v * c);
        }
    }

    pub fn add(&self, other: &BinomialPoly) -> BinomialPoly {
        let mut r = self.clone();
        r.add_scaled(other, &BigInt::one());
        r
    }

    pub fn sub(&self, other: &BinomialPoly) -> BinomialPoly {
        let mut r = self.clone();
        r.add_scaled(other, &BigInt::from(-1));
        r
    }

    pub fn scale(&self, c: &BigInt) -> BinomialPoly {
        let mut r = Self::zero(self.ring);
        r.add_scaled(self, c);
        r
    }

    pub fn neg(&self) -> BinomialPoly {
        self.scale(&BigInt::from(-1))
    }

    /// Product in Int(R^X); panics on ring mismatch (see `zeta_product`).
    pub fn mul(&self, other: &BinomialPoly) -> BinomialPoly {
        assert_eq!(self.ring, other.ring, "ring mismatch");
        let mut r = Self::zero(self.ring);
        for (i, a) in &self.terms {
            for (j, b) in &other.terms {
                let ab = a * b;
                for (k, c) in mul_indices(self.ring, i, j) {
                    r.add_term(k, &ab * c);
                }
            }
        }
        r
    }

    /// Exact division of every coefficient.
    pub fn div_exact(&self, d: &BigInt) -> Result<BinomialPoly> {
        let mut r = Self::zero(self.ring);
        for (i, c) in &self.terms {
            r.add_term(i.clone(), self.ring.div_exact(c, d)?);
        }
        Ok(r)
    }

    /// Sum of c * prod binom(point[x], I(x)); generators beyond the slice are 0.
    pub fn evaluate(&self, point: &[BigInt]) -> BigInt {
        let mut total = BigInt::zero();
        for (i, c) in &self.terms {
            let mut v = c.clone();
            for &(g, k) in i.entries() {
                let a = point.get(g as usize).cloned().unwrap_or_default();
                v *= binom_z(&a, k);
                if v.is_zero() {
                    break;
                }
            }
            total += v;
        }
        self.ring.reduce(total)
    }

    /// (min, max) weight over the terms; None for the zero polynomial.
    pub fn weight_range(&self) -> Option<(u32, u32)> {
        let ws = self.terms.keys().map(|i| i.weight());
        let v: Vec<u32> = ws.collect();
        Some((*v.iter().min()?, *v.iter().max()?))
    }

    /// Largest generator id occurring, if any.
    pub fn max_gen(&self) -> Option<u32> {
        self.terms.keys().filter_map(|i| i.max_gen()).max()
    }

    pub fn render(&self, names: &[String]) -> String {
        render_terms(self.terms.iter().map(|(i, c)| (i.render(names), c)))
    }

    /// Parses the canonical text form against a generator name list.
    pub fn parse(ring: RingSpec, text: &str, names: &[String]) -> Result<BinomialPoly> {
        let mut p = BinomialPoly::zero(ring);
        for (coef, body) in split_terms(text)? {
            let idx = parse_index(&body, names)?;
            p.add_term(idx, coef);
        }
        Ok(p)
    }
}

/// Renders `(basis text, coefficient)` pairs as `c * basis + ...`.
pub(crate) fn render_terms<'a, I: Iterator<Item = (String, &'a BigInt)>>(terms: I) -> String {
    let mut out = String::new();
    for (basis, c) in terms {
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else if c.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        out.push_str(&format!("{} * {}", c.abs(), basis));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Splits `c * body + c * body - ...` into signed coefficients and bodies.
pub(crate) fn split_terms(text: &str) -> Result<Vec<(BigInt, String)>> {
    let t = text.trim();
    if t == "0" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut sign = 1i32;
    let mut rest = t;
    if let Some(r) = rest.strip_prefix('-') {
        sign = -1;
        rest = r;
    }
    loop {
        let next_plus = rest.find(" + ");
        let next_minus = rest.find(" - ");
        let (cut, nsign) = match (next_plus, next_minus) {
            (Some(a), Some(b)) if a < b => (Some(a), 1),
            (Some(_), Some(b)) => (Some(b), -1),
            (Some(a), None) => (Some(a), 1),
            (None, Some(b)) => (Some(b), -1),
            (None, None) => (None, 0),
        };
        let term = match cut {
            Some(c) => &rest[..c],
            None => rest,
        };
        let term = term.trim();
        let (c, body): (BigInt, &str) = match term.split_once(" * ") {
            Some((cs, body)) => {
                let c = cs
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse { line: 0, msg: format!("bad coefficient `{cs}`") })?;
                (c, body)
            }
            None => match term.parse::<BigInt>() {
                Ok(c) => (c, "1"),
                Err(_) if !term.is_empty() => (BigInt::from(1), term),
                Err(_) => return Err(Error::Parse { line: 0, msg: "empty term".into() }),
            },
        };
        out.push((c * sign, body.trim().to_string()));
        match cut {
            Some(c) => {
                rest = &rest[c + 3..];
                sign = nsign;
            }
            None => break,
        }
    }
    Ok(out)
}

pub(crate) fn parse_index(body: &str, names: &[String]) -> Result<MultiIndex> {
    if body == "1" {
        return Ok(MultiIndex::unit());
    }
    let mut pairs = Vec::new();
    for f in body.split('*') {
        let f = f.trim();
        let (name, k) = match f.strip_prefix("z(").and_then(|s| s.strip_suffix(')')) {
            Some(inner) => inner
                .rsplit_once(',')
                .ok_or_else(|| Error::Parse { line: 0, msg: format!("bad factor `{f}`") })?,
            None => (f, "1"),
        };
        let g = names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::Parse { line: 0, msg: format!("unknown generator `{name}`") })?;
        let k: u32 = k
            .trim()
            .parse()
            .map_err(|_| Error::Parse { line: 0, msg: format!("bad exponent in `{f}`") })?;
        pairs.push((g as u32, k));
    }
    Ok(MultiIndex::from_pairs(pairs))
}

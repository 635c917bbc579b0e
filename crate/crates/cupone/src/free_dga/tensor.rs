use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::binomial_ring::{render_terms, BinomialPoly, MultiIndex, RingSpec};
use crate::error::{Error, Result};

/// Tensor word: a list of nonzero multi-indices, ordered by (length, lex).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word(pub Vec<MultiIndex>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().map(|m| m.weight()).sum()
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        self.0.iter().map(|m| m.render(names)).collect::<Vec<_>>().join(" T ")
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Element of T_R(X): finite combination of tensor words.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TensorElem {
    ring: RingSpec,
    terms: BTreeMap<Word, BigInt>,
}

impl TensorElem {
    pub fn zero(ring: RingSpec) -> Self {
        TensorElem { ring, terms: BTreeMap::new() }
    }

    pub fn scalar(ring: RingSpec, c: BigInt) -> Self {
        let mut t = Self::zero(ring);
        t.add_term(Word::default(), c);
        t
    }

    pub fn word(ring: RingSpec, factors: Vec<MultiIndex>) -> Self {
        let mut t = Self::zero(ring);
        t.add_term(Word(factors), BigInt::one());
        t
    }

    /// Degree-1 generator x.
    pub fn gen(ring: RingSpec, g: u32) -> Self {
        Self::word(ring, vec![MultiIndex::single(g, 1)])
    }

    /// Degree-1 element from a constant-free polynomial.
    pub fn from_poly(p: &BinomialPoly) -> Result<Self> {
        if !p.is_constant_free() {
            return Err(Error::Degree("degree-1 elements must be constant-free".into()));
        }
        let mut t = Self::zero(p.ring());
        for (i, c) in p.terms() {
            t.add_term(Word(vec![i.clone()]), c.clone());
        }
        Ok(t)
    }

    /// Multilinear expansion of p_1 ⊗ ... ⊗ p_m for constant-free p_i.
    pub fn tensor_of(ring: RingSpec, factors: &[&BinomialPoly]) -> Self {
        let mut acc: Vec<(Vec<MultiIndex>, BigInt)> = vec![(Vec::new(), BigInt::one())];
        for f in factors {
            debug_assert!(f.is_constant_free());
            let mut next = Vec::with_capacity(acc.len() * f.len());
            for (w, c) in &acc {
                for (i, d) in f.terms() {
                    let mut w2 = w.clone();
                    w2.push(i.clone());
                    next.push((w2, c * d));
                }
            }
            acc = next;
        }
        let mut t = Self::zero(ring);
        for (w, c) in acc {
            t.add_term(Word(w), c);
        }
        t
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn terms(&self) -> &BTreeMap<Word, BigInt> {
        &self.terms
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

    pub fn coeff(&self, w: &Word) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// Common degree of all words; None if mixed. The zero element reports `Some(d)`
    /// for the requested `default`.
    pub fn degree_or(&self, default: usize) -> Option<usize> {
        let mut it = self.terms.keys().map(|w| w.len());
        match it.next() {
            None => Some(default),
            Some(d) => it.all(|e| e == d).then_some(d),
        }
    }

    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|w| w.len());
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn require_degree(&self, d: usize, what: &str) -> Result<()> {
        match self.degree_or(d) {
            Some(e) if e == d => Ok(()),
            _ => Err(Error::Degree(format!("{what} must have degree {d}"))),
        }
    }

    pub fn add_term(&mut self, w: Word, c: BigInt) {
        if let Some(e) = self.ring.max_exponent() {
            if w.0.iter().any(|m| m.max_exponent() > e) {
                return;
            }
        }
        let c = self.ring.reduce(c);
        if c.is_zero() {
            return;
        }
        let ring = self.ring;
        if let Some(v) = self.terms.get_mut(&w) {
            *v = ring.reduce(&*v + c);
            if v.is_zero() {
                self.terms.remove(&w);
            }
        } else {
            self.terms.insert(w, c);
        }
    }

    pub fn add_scaled(&mut self, other: &TensorElem, c: &BigInt) {
        assert_eq!(self.ring, other.ring, "ring mismatch");
        if c.is_zero() {
            return;
        }
        for (w, v) in &other.terms {
            self.add_term(w.clone(), v * c);
        }
    }

    pub fn add(&self, other: &TensorElem) -> TensorElem {
        let mut r = self.clone();
        r.add_scaled(other, &BigInt::one());
        r
    }

    pub fn sub(&self, other: &TensorElem) -> TensorElem {
        let mut r = self.clone();
        r.add_scaled(other, &BigInt::from(-1));
        r
    }

    pub fn scale(&self, c: &BigInt) -> TensorElem {
        let mut r = Self::zero(self.ring);
        r.add_scaled(self, c);
        r
    }

    pub fn neg(&self) -> TensorElem {
        self.scale(&BigInt::from(-1))
    }

    /// Degree-1 element as a polynomial.
    pub fn to_poly(&self) -> Result<BinomialPoly> {
        self.require_degree(1, "argument")?;
        Ok(BinomialPoly::from_terms(
            self.ring,
            self.terms.iter().map(|(w, c)| (w.0[0].clone(), c.clone())),
        ))
    }

    /// (min, max) of total word weight.
    pub fn weight_of(&self) -> Option<(u32, u32)> {
        let ws: Vec<u32> = self.terms.keys().map(|w| w.weight()).collect();
        Some((*ws.iter().min()?, *ws.iter().max()?))
    }

    pub fn max_gen(&self) -> Option<u32> {
        self.terms.keys().flat_map(|w| w.0.iter().filter_map(|m| m.max_gen())).max()
    }

    pub fn render(&self, names: &[String]) -> String {
        render_terms(self.terms.iter().map(|(w, c)| (w.render(names), c)))
    }

    /// Parses the text produced by `render`.
    pub fn parse(ring: RingSpec, text: &str, names: &[String]) -> Result<TensorElem> {
        let mut t = TensorElem::zero(ring);
        for (c, body) in crate::binomial_ring::split_terms(text)? {
            let w = if body == "1" {
                Word::default()
            } else {
                Word(
                    body.split(" T ")
                        .map(|f| crate::binomial_ring::parse_index(f.trim(), names))
                        .collect::<Result<Vec<_>>>()?,
                )
            };
            t.add_term(w, c);
        }
        Ok(t)
    }
}

/// Ordered generator names with their levels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    pub names: Vec<String>,
    pub levels: Vec<u32>,
}

impl GeneratorSet {
    pub fn new(names: Vec<String>, levels: Vec<u32>) -> Self {
        assert_eq!(names.len(), levels.len());
        GeneratorSet { names, levels }
    }

    pub fn flat<S: Into<String>, I: IntoIterator<Item = S>>(names: I) -> Self {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let levels = vec![1; names.len()];
        GeneratorSet { names, levels }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn push(&mut self, name: String, level: u32) -> u32 {
        self.names.push(name);
        self.levels.push(level);
        (self.names.len() - 1) as u32
    }

    pub fn index_of(&self, name: &str) -> Option<u32> {
        self.names.iter().position(|n| n == name).map(|i| i as u32)
    }

    pub fn max_level(&self) -> u32 {
        self.levels.iter().copied().max().unwrap_or(0)
    }
}

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::binomial_ring::{MultiIndex, RingSpec};
use crate::error::{Error, Result};
use crate::exact_linear::IntMatrix;
use crate::free_dga::{Differential, TensorElem, Word};
use crate::par::{self, Execution};

/// Σ I(g)·wt(g).
pub fn weighted(idx: &MultiIndex, weights: &[u32]) -> u32 {
    idx.entries().iter().map(|&(g, k)| k * weights[g as usize]).sum()
}

pub fn word_weight(w: &Word, weights: &[u32]) -> u32 {
    w.0.iter().map(|m| weighted(m, weights)).sum()
}

/// Nonzero indices of weighted weight in `1..=hi`, grouped by weight.
fn indices_by_weight(weights: &[u32], hi: u32, max_exp: Option<u32>) -> Vec<Vec<MultiIndex>> {
    let mut by = vec![Vec::new(); hi as usize + 1];
    for m in MultiIndex::enumerate(weights.len() as u32, hi, max_exp) {
        let w = weighted(&m, weights);
        if w <= hi {
            by[w as usize].push(m);
        }
    }
    by
}

/// An ordered basis of tensor words with its position index.
#[derive(Clone, Debug, Default)]
pub struct WordBasis {
    pub words: Vec<Word>,
    pos: HashMap<Word, usize>,
}

impl WordBasis {
    pub fn new(words: Vec<Word>) -> Self {
        let pos = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        WordBasis { words, pos }
    }

    /// Words of length `k` with weighted weight in `lo..=hi`.
    pub fn weighted(weights: &[u32], k: usize, lo: u32, hi: u32, max_exp: Option<u32>) -> Self {
        let by = indices_by_weight(weights, hi, max_exp);
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(by: &[Vec<MultiIndex>], k: usize, lo: u32, left: u32, used: u32, cur: &mut Vec<MultiIndex>, out: &mut Vec<Word>) {
            if cur.len() == k {
                if used >= lo {
                    out.push(Word(cur.clone()));
                }
                return;
            }
            let slots = (k - cur.len() - 1) as u32;
            for w in 1..=left.saturating_sub(slots) {
                for m in &by[w as usize] {
                    cur.push(m.clone());
                    rec(by, k, lo, left - w, used + w, cur, out);
                    cur.pop();
                }
            }
        }
        if k == 0 {
            if lo == 0 {
                out.push(Word::default());
            }
        } else {
            rec(&by, k, lo, hi, 0, &mut cur, &mut out);
        }
        out.sort();
        WordBasis::new(out)
    }

    /// All words of length `k` in the ζ-basis of T_{Z_p}: exponents at most p−1.
    pub fn truncated(ngens: usize, k: usize, p: u64) -> Self {
        let e = (p - 1) as u32;
        let ones = vec![1u32; ngens];
        WordBasis::weighted(&ones, k, 0, e * ngens as u32 * k as u32, Some(e))
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn index(&self, w: &Word) -> Option<usize> {
        self.pos.get(w).copied()
    }

    /// Coordinates of `u`; every word must belong to the basis.
    pub fn coords(&self, u: &TensorElem) -> Result<Vec<BigInt>> {
        let mut v = vec![BigInt::zero(); self.len()];
        for (w, c) in u.terms() {
            let i = self.index(w).ok_or_else(|| Error::Precondition("word outside the basis".into()))?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    pub fn elem(&self, ring: RingSpec, v: &[BigInt]) -> TensorElem {
        let mut t = TensorElem::zero(ring);
        for (w, c) in self.words.iter().zip(v) {
            t.add_term(w.clone(), c.clone());
        }
        t
    }
}

/// Images d(w) of the source words, computed in parallel.
pub fn d_images(d: &Differential, src: &WordBasis, exec: Execution) -> Result<Vec<TensorElem>> {
    par::map(exec, &src.words, |w| d.apply_d(&TensorElem::word(d.ring(), w.0.clone())))
        .into_iter()
        .collect()
}

/// The matrix of d from `src` to `dst`; fails if an image leaves `dst`.
pub fn d_matrix(d: &Differential, src: &WordBasis, dst: &WordBasis, exec: Execution) -> Result<IntMatrix> {
    let imgs = d_images(d, src, exec)?;
    let mut triples = Vec::new();
    for (j, img) in imgs.iter().enumerate() {
        for (w, c) in img.terms() {
            let i = dst.index(w).ok_or_else(|| {
                Error::Internal(format!("d({}) leaves the chosen truncation", src.words[j].render(d.names())))
            })?;
            triples.push((i, j, c.clone()));
        }
    }
    Ok(IntMatrix::from_triples(d.ring(), dst.len(), src.len(), &triples))
}

//! Weyl group elements as words in the simple reflections.
//!
//! A word `[i1, i2, ..., il]` (1-based letters) denotes the product
//! `s_{i1} s_{i2} ... s_{il}`; acting on a weight applies `s_{il}` first.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::rootsys::{RootSystem, Weight};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct WeylWord {
    pub letters: Vec<usize>,
}

impl WeylWord {
    pub fn identity() -> Self {
        WeylWord { letters: Vec::new() }
    }

    pub fn new(letters: Vec<usize>) -> Self {
        WeylWord { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> WeylWord {
        WeylWord { letters: self.letters.iter().rev().copied().collect() }
    }
}

impl fmt::Display for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("e");
        }
        for l in &self.letters {
            write!(f, "s{l}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DominanceResult {
    /// λ + ρ lies on a reflection wall.
    Singular,
    /// `dot(word, λ) = dominant` with `length = ℓ(word)`.
    Regular { length: usize, word: WeylWord, dominant: Weight },
}

/// `s_i(λ)` for a 0-based index.
pub fn reflect(rs: &RootSystem, i: usize, lambda: &mut Weight) {
    let k = lambda.0[i];
    if k != 0 {
        for (r, row) in rs.cartan.iter().enumerate() {
            lambda.0[r] -= k * row[i];
        }
    }
}

/// Linear action of the word on λ.
pub fn act(rs: &RootSystem, word: &WeylWord, lambda: &Weight) -> Weight {
    let mut out = lambda.clone();
    for &l in word.letters.iter().rev() {
        reflect(rs, l - 1, &mut out);
    }
    out
}

/// `w·λ = w(λ + ρ) - ρ`.
pub fn dot(rs: &RootSystem, word: &WeylWord, lambda: &Weight) -> Weight {
    let shifted = lambda + &rs.rho;
    &act(rs, word, &shifted) - &rs.rho
}

/// `w·λ = w(λ) - Σ_{γ ∈ Φ_w} γ`; an independent route to [`dot`].
pub fn dot_via_inversions(rs: &RootSystem, word: &WeylWord, lambda: &Weight) -> Weight {
    let mut out = act(rs, word, lambda);
    for idx in inversion_set(rs, word) {
        out.add_assign_scaled(&rs.positive_roots[idx].weight, -1);
    }
    out
}

/// Chamber walk on λ + ρ, always flipping the smallest-index negative coordinate.
pub fn to_dominant(rs: &RootSystem, lambda: &Weight) -> DominanceResult {
    let mut v = lambda + &rs.rho;
    let mut applied = Vec::new();
    while let Some(i) = v.0.iter().position(|&c| c < 0) {
        reflect(rs, i, &mut v);
        applied.push(i + 1);
    }
    if v.0.iter().any(|&c| c == 0) {
        return DominanceResult::Singular;
    }
    // applied[0] acted first, so it is the rightmost letter.
    applied.reverse();
    let dominant = &v - &rs.rho;
    DominanceResult::Regular { length: applied.len(), word: WeylWord::new(applied), dominant }
}

/// Only the (length, dominant) part of [`to_dominant`], without building the word.
pub(crate) fn chamber_walk(rs: &RootSystem, lambda: &Weight) -> Option<(usize, Weight)> {
    let mut v = lambda + &rs.rho;
    let mut steps = 0;
    while let Some(i) = v.0.iter().position(|&c| c < 0) {
        reflect(rs, i, &mut v);
        steps += 1;
    }
    if v.0.iter().any(|&c| c == 0) {
        None
    } else {
        Some((steps, &v - &rs.rho))
    }
}

/// A reduced word for the same group element.
pub fn reduce(rs: &RootSystem, word: &WeylWord) -> WeylWord {
    // The walk from w(ρ) back to ρ spells a reduced word for w^{-1}.
    let mut v = act(rs, word, &rs.rho);
    let mut walk = Vec::new();
    while let Some(i) = v.0.iter().position(|&c| c < 0) {
        reflect(rs, i, &mut v);
        walk.push(i + 1);
    }
    // w^{-1} = s_{walk[last]} ... s_{walk[0]}, so w = s_{walk[0]} ... s_{walk[last]}.
    WeylWord::new(walk)
}

/// `ℓ(w)`.
pub fn length(rs: &RootSystem, word: &WeylWord) -> usize {
    let v = act(rs, word, &rs.rho);
    rs.positive_roots.iter().filter(|r| r.pair(&v) < 0).count()
}

/// `Φ_w = {γ > 0 : w^{-1}γ < 0}` as sorted positive-root indices, computed by
/// telescoping `α_{i1}, s_{i1}(α_{i2}), ...` over a reduced word.
pub fn inversion_set(rs: &RootSystem, word: &WeylWord) -> Vec<usize> {
    let reduced = reduce(rs, word);
    let mut out = Vec::with_capacity(reduced.len());
    for k in 0..reduced.len() {
        let prefix = WeylWord::new(reduced.letters[..k].to_vec());
        let gamma = act(rs, &prefix, &rs.simple_root(reduced.letters[k] - 1));
        let idx = rs
            .positive_root_index(&gamma)
            .expect("telescoping over a reduced word yields positive roots");
        out.push(idx);
    }
    out.sort_unstable();
    out
}

#[derive(Debug, Clone)]
pub struct WeylElement {
    pub word: WeylWord,
    /// `w(ρ)`; identifies the element.
    pub rho_image: Weight,
}

#[derive(Debug, Clone)]
pub struct WeylGroup {
    /// Elements grouped by length; `by_length[k]` lists the elements of length `k`.
    pub by_length: Vec<Vec<WeylElement>>,
}

impl WeylGroup {
    pub fn order(&self) -> usize {
        self.by_length.iter().map(Vec::len).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &WeylElement)> {
        self.by_length
            .iter()
            .enumerate()
            .flat_map(|(l, els)| els.iter().map(move |e| (l, e)))
    }
}

/// All elements of W by breadth-first search, deduplicated by the image of ρ.
///
/// The canonical word of an element is the first one found when left-multiplying
/// elements of the previous layer by `s_1, ..., s_rank` in order.
pub fn enumerate(rs: &RootSystem) -> WeylGroup {
    let mut seen: HashMap<Weight, ()> = HashMap::new();
    seen.insert(rs.rho.clone(), ());
    let mut by_length = vec![vec![WeylElement { word: WeylWord::identity(), rho_image: rs.rho.clone() }]];
    loop {
        let mut next = Vec::new();
        for el in by_length.last().expect("non-empty") {
            for i in 0..rs.rank {
                // ℓ(s_i w) > ℓ(w) iff <w ρ, α_i^∨> > 0
                if el.rho_image.0[i] <= 0 {
                    continue;
                }
                let mut image = el.rho_image.clone();
                reflect(rs, i, &mut image);
                if seen.insert(image.clone(), ()).is_none() {
                    let mut letters = Vec::with_capacity(el.word.len() + 1);
                    letters.push(i + 1);
                    letters.extend_from_slice(&el.word.letters);
                    next.push(WeylElement { word: WeylWord::new(letters), rho_image: image });
                }
            }
        }
        if next.is_empty() {
            break;
        }
        by_length.push(next);
    }
    WeylGroup { by_length }
}

/// Number of Weyl group elements of each length.
pub fn poincare_counts(rs: &RootSystem) -> Vec<u64> {
    enumerate(rs).by_length.iter().map(|l| l.len() as u64).collect()
}

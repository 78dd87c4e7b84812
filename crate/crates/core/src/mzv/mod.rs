//! Formal multiple zeta values: the quotient of FMES by 𝔑, and the classical
//! extended double shuffle relations on z-words.

pub mod character;

use num_traits::{One, Zero};

use crate::arith::{binomial_q, Rational};
use crate::derivations::apply_d;
use crate::error::{Error, Result};
use crate::linalg::{from_pairs, Echelon, SparseVec};
use crate::lincomb::LinComb;
use crate::qshuffle::{shuffle_z, stuffle_lc, stuffle_z, stuffle_z_lc};
use crate::quotient::{IdealKind, Quotient};
use crate::report::Check;
use crate::ring::CoeffRing;
use crate::word::{words_of_weight, AWord, Letter, ZLetter, ZWord};

pub use character::{eds_check, Character, EdsReport};

/// 𝒵ᶠ truncated above `cutoff`; elements are normal forms modulo 𝕀 + 𝔑.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZfRing {
    pub cutoff: u32,
}

impl ZfRing {
    pub fn new(cutoff: u32) -> Self {
        ZfRing { cutoff }
    }

    /// Normal form, dropping components above the cutoff.
    pub fn reduce(&self, x: &LinComb<AWord>) -> LinComb<AWord> {
        let kept = x.filter(|w| w.weight() <= self.cutoff);
        Quotient::global().normal_form(&kept, IdealKind::Combined, self.cutoff).expect("components within the cutoff")
    }
}

impl CoeffRing for ZfRing {
    type Elem = LinComb<AWord>;

    fn zero(&self) -> Self::Elem {
        LinComb::zero()
    }
    fn one(&self) -> Self::Elem {
        LinComb::one()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.clone() + b.clone()
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.scale(&-Rational::one())
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let a = a.filter(|w| w.weight() <= self.cutoff);
        let b = b.filter(|w| w.weight() <= self.cutoff);
        self.reduce(&stuffle_lc(&a, &b))
    }
    fn from_rational(&self, q: &Rational) -> Self::Elem {
        LinComb::constant(q.clone())
    }
    fn scale(&self, q: &Rational, a: &Self::Elem) -> Self::Elem {
        a.scale(q)
    }
    fn inverse(&self, a: &Self::Elem) -> Option<Self::Elem> {
        let c = a.coeff(&AWord::empty());
        if c.is_zero() {
            return None;
        }
        // a = c(1 + n) with n nilpotent in the truncation
        let n = a.scale(&c.recip()) - LinComb::one();
        let mut term = LinComb::one();
        let mut acc = LinComb::one();
        for _ in 0..self.cutoff {
            term = self.mul(&term, &n).scale(&-Rational::one());
            acc = acc + term.clone();
        }
        Some(acc.scale(&c.recip()))
    }
}

fn failures_check(name: String, weight: u32, failures: Vec<String>) -> Check {
    Check::new(name, weight, failures.is_empty(), failures.join("; "))
}

fn zf_nf(x: &LinComb<AWord>, cutoff: u32) -> Result<LinComb<AWord>> {
    if let Some(w) = x.max_weight().filter(|w| *w > cutoff) {
        return Err(Error::CutoffExceeded { weight: w, cutoff });
    }
    Quotient::global().normal_form(x, IdealKind::Combined, cutoff)
}

/// ζᶠ of a bi-indexed word: its normal form modulo 𝕀 + 𝔑.
pub fn zeta_f(w: &AWord, cutoff: u32) -> Result<LinComb<AWord>> {
    zf_nf(&LinComb::single(w.clone()), cutoff)
}

/// ζᶠ(k₁,…,k_r) of a z-word.
pub fn zeta_f_z(w: &ZWord, cutoff: u32) -> Result<LinComb<AWord>> {
    zeta_f(&w.to_aword(), cutoff)
}

/// ξᶠ(d₁,…,d_r) = π(G[1,…,1; d₁,…,d_r]).
pub fn xi_f(ds: &[u32], cutoff: u32) -> Result<LinComb<AWord>> {
    zeta_f(&AWord::from_kd(&vec![1; ds.len()], ds), cutoff)
}

/// The ζᶠ-valued character on z-words up to the cutoff.
pub fn zeta_character(cutoff: u32) -> Result<Character<ZfRing>> {
    let ring = ZfRing::new(cutoff);
    Quotient::global().basis(IdealKind::Combined, cutoff)?;
    Ok(Character::from_fn(ring, cutoff, |w| ring.reduce(&LinComb::single(w.to_aword()))))
}

fn z_index(weight: u32) -> (Vec<ZWord>, std::collections::HashMap<ZWord, usize>) {
    let words = words_of_weight::<ZLetter>(weight);
    let index = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    (words, index)
}

/// Generators (w∗v − w⧢v)∗u of the EDS ideal in weight k: w ∈ ℌ¹, v ∈ ℌ⁰ nonempty, u ∈ ℌ¹.
pub fn eds_generators(weight: u32) -> Vec<LinComb<ZWord>> {
    let mut out = Vec::new();
    for kw in 1..weight {
        for kv in 2..=weight - kw {
            let ku = weight - kw - kv;
            for w in words_of_weight::<ZLetter>(kw) {
                for v in words_of_weight::<ZLetter>(kv).into_iter().filter(|v| v.is_in_h0()) {
                    let rel = stuffle_z(&w, &v) - shuffle_z(&w, &v);
                    if rel.is_zero() {
                        continue;
                    }
                    for u in words_of_weight::<ZLetter>(ku) {
                        out.push(stuffle_z_lc(&rel, &LinComb::single(u)));
                    }
                }
            }
        }
    }
    out
}

/// Rank of the EDS ideal inside the weight-k slice of ℌ¹.
pub fn eds_ideal_rank(weight: u32) -> usize {
    let (words, index) = z_index(weight);
    let rows: Vec<SparseVec> = eds_generators(weight)
        .iter()
        .map(|x| from_pairs(x.iter().map(|(w, c)| (index[w], c.clone())).collect()))
        .filter(|r: &SparseVec| !r.is_empty())
        .collect();
    Echelon::from_spanning_rows(&rows, words.len()).rank()
}

/// dim ℌ¹_k / EDS_k.
pub fn eds_dim(weight: u32) -> usize {
    words_of_weight::<ZLetter>(weight).len() - eds_ideal_rank(weight)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimComparison {
    pub weight: u32,
    pub h1_words: usize,
    pub eds_rank: usize,
    pub eds_dim: usize,
    pub zf_dim: usize,
}

impl DimComparison {
    pub fn agrees(&self) -> bool {
        self.eds_dim == self.zf_dim
    }
}

/// dim ℌ¹_k/EDS_k against dim 𝒵ᶠ_k, computed by independent pipelines.
pub fn compare_dims(max_weight: u32) -> Result<Vec<DimComparison>> {
    (0..=max_weight)
        .map(|k| {
            let h1_words = words_of_weight::<ZLetter>(k).len();
            let eds_rank = eds_ideal_rank(k);
            let zf_dim = Quotient::global().dim(IdealKind::Combined, k)?;
            Ok(DimComparison { weight: k, h1_words, eds_rank, eds_dim: h1_words - eds_rank, zf_dim })
        })
        .collect()
}

/// Rank of the normal forms of `xs` in the weight-k slice of 𝒵ᶠ.
pub fn span_dim(xs: &[LinComb<AWord>], weight: u32) -> Result<usize> {
    let basis = Quotient::global().basis(IdealKind::Combined, weight)?;
    let rows: Vec<SparseVec> = xs
        .iter()
        .map(|x| from_pairs(basis.coordinates(x).into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()))
        .filter(|r: &SparseVec| !r.is_empty())
        .collect();
    Ok(Echelon::from_spanning_rows(&rows, basis.dim()).rank())
}

/// Images of lwt-0 words span 𝒵ᶠ_k.
pub fn verify_lwt0_surjective(weight: u32) -> Result<Check> {
    let xs: Vec<_> =
        words_of_weight::<Letter>(weight).into_iter().filter(|w| w.lwt() == 0).map(LinComb::single).collect();
    let got = span_dim(&xs, weight)?;
    let want = Quotient::global().dim(IdealKind::Combined, weight)?;
    Ok(Check::equal(format!("lwt-0 words span Z^f_{weight}"), weight, &got, &want))
}

/// The ξᶠ of weight k span 𝒵ᶠ_k.
pub fn verify_xi_span(weight: u32) -> Result<Check> {
    let xs: Vec<_> = words_of_weight::<Letter>(weight)
        .into_iter()
        .filter(|w| w.letters().iter().all(|l| l.k() == 1))
        .map(LinComb::single)
        .collect();
    let got = span_dim(&xs, weight)?;
    let want = Quotient::global().dim(IdealKind::Combined, weight)?;
    Ok(Check::equal(format!("xi^f span Z^f_{weight}"), weight, &got, &want))
}

/// π(Dw) = 0 for every word w of weight ≤ max_weight − 2.
pub fn verify_pi_d(max_weight: u32) -> Result<Check> {
    let mut failures = Vec::new();
    for k in 0..=max_weight.saturating_sub(2) {
        for w in words_of_weight::<Letter>(k) {
            let r = zf_nf(&apply_d(&LinComb::single(w.clone())), max_weight)?;
            if !r.is_zero() {
                failures.push(format!("{w}: {r}"));
            }
        }
    }
    Ok(failures_check(format!("pi o D = 0 to weight {max_weight}"), max_weight, failures))
}

/// ζᶠ(k₁)ζᶠ(k₂) = Σ (C(l₁−1,k₁−1) + C(l₁−1,k₂−1)) ζᶠ(l₁,l₂) + 1_{k₁+k₂=2} ζᶠ(2).
pub fn verify_depth2_zeta(k1: u32, k2: u32, cutoff: u32) -> Result<Check> {
    let k = k1 + k2;
    let z = |ks: &[u32]| LinComb::single(AWord::from_ks(ks));
    let mut x = stuffle_lc(&z(&[k1]), &z(&[k2]));
    for l1 in 1..k {
        let c = binomial_q(l1 as i64 - 1, k1 as i64 - 1) + binomial_q(l1 as i64 - 1, k2 as i64 - 1);
        x.add_scaled(&z(&[l1, k - l1]), &-c);
    }
    if k == 2 {
        x.add_scaled(&z(&[2]), &-Rational::one());
    }
    Ok(Check::of(format!("zeta^f depth-2 double shuffle ({k1},{k2})"), k, &zf_nf(&x, cutoff)?))
}

/// ζᶠ(u∗v) = ζᶠ(u)ζᶠ(v) on pairs of z-words of combined weight ≤ cutoff.
pub fn verify_zeta_homomorphism(cutoff: u32) -> Result<Check> {
    let ring = ZfRing::new(cutoff);
    let words: Vec<ZWord> = (1..=cutoff).flat_map(words_of_weight::<ZLetter>).collect();
    let mut failures = Vec::new();
    for (i, u) in words.iter().enumerate() {
        for v in &words[i..] {
            if u.weight() + v.weight() > cutoff {
                continue;
            }
            let lhs = zf_nf(&crate::qshuffle::z_to_a(&stuffle_z(u, v)), cutoff)?;
            let rhs = ring.mul(&zeta_f_z(u, cutoff)?, &zeta_f_z(v, cutoff)?);
            let r = lhs - rhs;
            if !r.is_zero() {
                failures.push(format!("{u} * {v}: {r}"));
            }
        }
    }
    Ok(failures_check(format!("zeta^f is a stuffle homomorphism to weight {cutoff}"), cutoff, failures))
}

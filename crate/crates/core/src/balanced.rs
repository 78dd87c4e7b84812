//! The balanced alphabet b₀, b₁, …: its quasi-shuffle product, the involution τ,
//! the isomorphism φ onto (ℚ⟨𝒜⟩, ∗), and D in balanced coordinates.
//!
//! A word in ℚ⟨𝓑⟩⁰ splits uniquely into blocks b_k b₀^m with k ≥ 1. Under φ the
//! exponent m of Y is not divided by m!; only [`phi`] and [`phi_inverse`] see this.

use std::collections::HashMap;

use crate::arith::{factorial_q, int, Rational};
use crate::error::{Error, Result};
use crate::linalg::{from_pairs, Echelon, SparseVec};
use crate::lincomb::LinComb;
use crate::poly::{Exps, LinearForm, PowerCache};
use crate::qshuffle::stuffle_b;
use crate::word::{words_of_weight, AWord, BLetter, BWord, Letter};

/// The blocks (k_i, m_i) of b_{k₁}b₀^{m₁}⋯b_{k_r}b₀^{m_r}.
pub fn blocks(w: &BWord) -> Result<Vec<(u32, u32)>> {
    if !w.is_in_b0() {
        return Err(Error::StartsWithB0(w.to_string()));
    }
    let mut out: Vec<(u32, u32)> = Vec::new();
    for b in w.letters() {
        match (b.0, out.last_mut()) {
            (0, Some(last)) => last.1 += 1,
            (k, _) => out.push((k, 0)),
        }
    }
    Ok(out)
}

pub fn from_blocks(bs: &[(u32, u32)]) -> BWord {
    bs.iter().flat_map(|&(k, m)| std::iter::once(BLetter(k)).chain((0..m).map(|_| BLetter(0)))).collect()
}

/// Words of the given weight not starting with b₀.
pub fn b0_words(weight: u32) -> Vec<BWord> {
    words_of_weight::<BLetter>(weight).into_iter().filter(|w| w.is_in_b0()).collect()
}

/// τ(b_{k₁}b₀^{m₁}⋯b_{k_s}b₀^{m_s}) = b_{m_s+1}b₀^{k_s−1}⋯b_{m₁+1}b₀^{k₁−1}.
pub fn tau(w: &BWord) -> Result<BWord> {
    let bs = blocks(w)?;
    Ok(from_blocks(&bs.iter().rev().map(|&(k, m)| (m + 1, k - 1)).collect::<Vec<_>>()))
}

pub fn tau_lc(x: &LinComb<BWord>) -> Result<LinComb<BWord>> {
    let mut out = LinComb::zero();
    for (w, c) in x.iter() {
        out.add_term(tau(w)?, c.clone());
    }
    Ok(out)
}

// Coefficient of Y^target in Π_i L_i^{e_i}, with L_i the linear forms `images`.
fn power_coeff(images: &[LinearForm], e: &[u32], target: &[u32]) -> Rational {
    let n = images.len();
    let mut cache = PowerCache::new(images, n);
    let exps: Exps = e.iter().map(|&x| x as u16).collect();
    let t: Exps = target.iter().map(|&x| x as u16).collect();
    cache.monomial(&exps).coeff(&crate::ring::RationalField, &t)
}

// Weak compositions of `total` into `parts` parts.
fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// φ(b_{k₁}b₀^{m₁}⋯) = Σ_d c_d [k₁,…;d₁,…], c_d = [Y^m] Π (Y_i − Y_{i−1})^{d_i}/d_i!.
pub fn phi(w: &BWord) -> Result<LinComb<AWord>> {
    let bs = blocks(w)?;
    let r = bs.len();
    let ks: Vec<u32> = bs.iter().map(|b| b.0).collect();
    let ms: Vec<u32> = bs.iter().map(|b| b.1).collect();
    let images: Vec<LinearForm> =
        (0..r).map(|i| if i == 0 { vec![(0, 1)] } else { vec![(i, 1), (i - 1, -1)] }).collect();
    let mut out = LinComb::zero();
    for ds in compositions(ms.iter().sum(), r) {
        let c = power_coeff(&images, &ds, &ms) / ds.iter().map(|&d| factorial_q(d)).product::<Rational>();
        out.add_term(AWord::from_kd(&ks, &ds), c);
    }
    Ok(out)
}

pub fn phi_lc(x: &LinComb<BWord>) -> Result<LinComb<AWord>> {
    let mut out = LinComb::zero();
    for (w, c) in x.iter() {
        out.add_scaled(&phi(w)?, c);
    }
    Ok(out)
}

/// φ⁻¹[k;d] = Π d_i! · Σ_m [Y^d] Π (Y₁+…+Y_i)^{m_i} · b_{k₁}b₀^{m₁}⋯.
pub fn phi_inverse(w: &AWord) -> LinComb<BWord> {
    let r = w.depth();
    let (ks, ds): (Vec<u32>, Vec<u32>) = w.letters().iter().map(|l| (l.k(), l.d())).unzip();
    let images: Vec<LinearForm> = (0..r).map(|i| (0..=i).map(|j| (j, 1)).collect()).collect();
    let scale: Rational = ds.iter().map(|&d| factorial_q(d)).product();
    let mut out = LinComb::zero();
    for ms in compositions(ds.iter().sum(), r) {
        let c = power_coeff(&images, &ms, &ds) * &scale;
        let bs: Vec<(u32, u32)> = ks.iter().copied().zip(ms).collect();
        out.add_term(from_blocks(&bs), c);
    }
    out
}

pub fn phi_inverse_lc(x: &LinComb<AWord>) -> LinComb<BWord> {
    x.map_linear(phi_inverse)
}

/// D(w) = Σ_{i≤j} k_i(m_j+1) · w with k_i ↦ k_i + 1 and m_j ↦ m_j + 1.
pub fn d_balanced(w: &BWord) -> Result<LinComb<BWord>> {
    let bs = blocks(w)?;
    let mut out = LinComb::zero();
    for i in 0..bs.len() {
        for j in i..bs.len() {
            let mut v = bs.clone();
            v[i].0 += 1;
            v[j].1 += 1;
            out.add_term(from_blocks(&v), int((bs[i].0 * (bs[j].1 + 1)) as i64));
        }
    }
    Ok(out)
}

pub fn d_balanced_lc(x: &LinComb<BWord>) -> Result<LinComb<BWord>> {
    let mut out = LinComb::zero();
    for (w, c) in x.iter() {
        out.add_scaled(&d_balanced(w)?, c);
    }
    Ok(out)
}

/// Rank of φ on the weight-k slice, and the two slice dimensions.
pub fn phi_slice_rank(weight: u32) -> Result<(usize, usize, usize)> {
    let bwords = b0_words(weight);
    let awords = words_of_weight::<Letter>(weight);
    let index: HashMap<&AWord, usize> = awords.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut rows = Vec::new();
    for w in &bwords {
        let img = phi(w)?;
        rows.push(from_pairs(img.iter().map(|(a, c)| (index[a], c.clone())).collect()));
    }
    Ok((Echelon::from_spanning_rows(&rows, awords.len()).rank(), bwords.len(), awords.len()))
}

/// dim of the weight-k slice of (ℚ⟨𝓑⟩⁰, ∗_b) modulo the ideal generated by τ(w) − w.
pub fn balanced_quotient_dim(weight: u32) -> Result<usize> {
    let words = b0_words(weight);
    let index: HashMap<&BWord, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut rows: Vec<SparseVec> = Vec::new();
    for kw in 1..=weight {
        for w in b0_words(kw) {
            let g = LinComb::single(tau(&w)?) - LinComb::single(w);
            if g.is_zero() {
                continue;
            }
            for u in b0_words(weight - kw) {
                let mut prod = LinComb::zero();
                for (v, c) in g.iter() {
                    prod.add_scaled(&stuffle_b(v, &u), c);
                }
                let row = from_pairs(prod.iter().map(|(v, c)| (index[v], c.clone())).collect());
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
    }
    Ok(words.len() - Echelon::from_spanning_rows(&rows, words.len()).rank())
}

/// σφ = φτ per weight ≤ `max_weight`, φ(u ∗_b v) = φ(u) ∗ φ(v) on `pairs` seeded
/// random pairs of weight ≤ 3 each, and quotient dimensions against FMES for weights ≤ `dim_weight`.
pub fn structure_checks(
    max_weight: u32,
    pairs: usize,
    seed: u64,
    dim_weight: u32,
) -> Result<Vec<crate::report::Check>> {
    use rand::{Rng, SeedableRng};

    use crate::qshuffle::stuffle_lc;
    use crate::report::{over_words, Check};
    use crate::swap::swap;
    let mut out = Vec::new();
    for k in 0..=max_weight {
        let words = b0_words(k);
        // words of ℚ⟨𝓑⟩⁰, so φ and τ are defined
        out.push(over_words("swap o phi = phi o tau", k, &words, |w| {
            swap(&phi(w).expect("b0 word")) - phi(&tau(w).expect("b0 word")).expect("b0 word")
        }));
    }

    let pool: Vec<BWord> = (1..=3).flat_map(b0_words).collect();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for _ in 0..pairs {
        let u = &pool[rng.gen_range(0..pool.len())];
        let v = &pool[rng.gen_range(0..pool.len())];
        let lhs = phi_lc(&stuffle_b(u, v))?;
        let rhs = stuffle_lc(&phi(u)?, &phi(v)?);
        if lhs != rhs {
            failures.push(format!("({u}, {v}): {}", lhs - rhs));
        }
    }
    let residual =
        failures.first().map(|f| format!("{} of {pairs} pairs fail, first {f}", failures.len())).unwrap_or_default();
    out.push(Check::new("phi(u *b v) = phi(u) * phi(v)", 6, failures.is_empty(), residual));

    for k in 0..=dim_weight {
        let got = balanced_quotient_dim(k)?;
        let want = crate::quotient::Quotient::global().dim(crate::quotient::IdealKind::SwapIdeal, k)?;
        out.push(Check::equal("balanced quotient dim = FMES dim", k, &got, &want));
    }
    Ok(out)
}

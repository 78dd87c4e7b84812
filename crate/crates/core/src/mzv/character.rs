//! Linear maps on z-words truncated by weight, and the extended double shuffle test.

use std::collections::BTreeMap;

use crate::arith::{int, rat, sign};
use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::poly::{LinearForm, PowerCache};
use crate::qshuffle::{index_shuffle_z, stuffle_z};
use crate::ring::CoeffRing;
use crate::word::{words_up_to, ZLetter, ZWord};

/// A linear map from z-words of weight ≤ `cutoff` to a coefficient ring.
#[derive(Clone, Debug)]
pub struct Character<R: CoeffRing> {
    ring: R,
    cutoff: u32,
    values: BTreeMap<ZWord, R::Elem>,
}

impl<R: CoeffRing> Character<R> {
    pub fn from_fn(ring: R, cutoff: u32, mut f: impl FnMut(&ZWord) -> R::Elem) -> Self {
        let values = words_up_to::<ZLetter>(cutoff)
            .into_iter()
            .map(|w| {
                let v = f(&w);
                (w, v)
            })
            .filter(|(_, v)| !ring.is_zero(v))
            .collect();
        Character { ring, cutoff, values }
    }

    /// The unit for ⋆: 1 on the empty word, 0 elsewhere.
    pub fn unit(ring: R, cutoff: u32) -> Self {
        let (one, zero) = (ring.one(), ring.zero());
        Character::from_fn(ring, cutoff, |w| if w.is_empty() { one.clone() } else { zero.clone() })
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn value(&self, w: &ZWord) -> R::Elem {
        self.values.get(w).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn eval(&self, x: &LinComb<ZWord>) -> R::Elem {
        let mut acc = self.ring.zero();
        for (w, c) in x.iter() {
            if let Some(v) = self.values.get(w) {
                acc = self.ring.add(&acc, &self.ring.scale(c, v));
            }
        }
        acc
    }

    fn same_cutoff(&self, other: &Self) -> Result<()> {
        if self.cutoff != other.cutoff {
            return Err(Error::CutoffMismatch(self.cutoff, other.cutoff));
        }
        Ok(())
    }

    /// φ ⋆ ψ through the deconcatenation coproduct.
    pub fn convolution(&self, other: &Self) -> Result<Self> {
        self.same_cutoff(other)?;
        let ring = self.ring.clone();
        Ok(Character::from_fn(ring.clone(), self.cutoff, |w| {
            let ls = w.letters();
            let mut acc = ring.zero();
            for i in 0..=ls.len() {
                let a = self.value(&ZWord::from_slice(&ls[..i]));
                let b = other.value(&ZWord::from_slice(&ls[i..]));
                acc = ring.add(&acc, &ring.mul(&a, &b));
            }
            acc
        }))
    }

    /// σ*: Φ_n(X_1,…,X_n) ↦ Φ_n(X_1+…+X_n, X_1+…+X_{n−1}, …, X_1) on coefficients.
    pub fn sigma_star(&self) -> Self {
        let mut out: BTreeMap<ZWord, R::Elem> = BTreeMap::new();
        let mut caches: BTreeMap<usize, Vec<LinearForm>> = BTreeMap::new();
        for (w, v) in &self.values {
            let n = w.depth();
            if n == 0 {
                out.insert(w.clone(), v.clone());
                continue;
            }
            let images =
                caches.entry(n).or_insert_with(|| (0..n).map(|i| (0..n - i).map(|j| (j, 1)).collect()).collect());
            let mut cache = PowerCache::new(images, n);
            let exps = w.letters().iter().map(|z| (z.0 - 1) as u16).collect();
            for (e, q) in cache.monomial(&exps).iter() {
                let target: ZWord = e.iter().map(|&x| ZLetter(x as u32 + 1)).collect();
                let slot = out.entry(target).or_insert_with(|| self.ring.zero());
                *slot = self.ring.add(slot, &self.ring.scale(q, v));
            }
        }
        let ring = self.ring.clone();
        out.retain(|_, v| !ring.is_zero(v));
        Character { ring, cutoff: self.cutoff, values: out }
    }

    /// φ_corr: z₁ⁿ ↦ coefficient of tⁿ in exp(Σ_{n≥2} (−1)ⁿ/n·φ(z_n)·tⁿ), other words ↦ 0.
    pub fn phi_corr(&self) -> Self {
        let ring = &self.ring;
        let n = self.cutoff as usize;
        let a: Vec<R::Elem> = (0..=n)
            .map(|j| {
                if j < 2 {
                    ring.zero()
                } else {
                    ring.scale(&(sign(j as i64) * rat(1, j as i64)), &self.value(&ZWord::from_ks(&[j as u32])))
                }
            })
            .collect();
        // n·E_n = Σ_{j=1}^{n} j·a_j·E_{n−j}
        let mut e = vec![ring.one()];
        for m in 1..=n {
            let mut acc = ring.zero();
            for j in 1..=m {
                acc = ring.add(&acc, &ring.scale(&int(j as i64), &ring.mul(&a[j], &e[m - j])));
            }
            e.push(ring.scale(&rat(1, m as i64), &acc));
        }
        let ring = self.ring.clone();
        Character::from_fn(ring.clone(), self.cutoff, |w| {
            if w.letters().iter().all(|z| z.0 == 1) {
                e[w.depth()].clone()
            } else {
                ring.zero()
            }
        })
    }
}

/// Outcome of the two extended double shuffle conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdsReport {
    pub cutoff: u32,
    pub pairs: usize,
    pub stuffle_failures: Vec<(ZWord, ZWord)>,
    pub shuffle_failures: Vec<(ZWord, ZWord)>,
}

impl EdsReport {
    pub fn stuffle_ok(&self) -> bool {
        self.stuffle_failures.is_empty()
    }

    pub fn shuffle_ok(&self) -> bool {
        self.shuffle_failures.is_empty()
    }

    pub fn passed(&self) -> bool {
        self.stuffle_ok() && self.shuffle_ok()
    }
}

/// Checks (i) φ(w₁∗w₂) = φ(w₁)φ(w₂) and (ii) the same for σ*(φ_corr ⋆ φ) and the
/// index shuffle, on all pairs of nonempty words within the cutoff.
pub fn eds_check<R: CoeffRing>(phi: &Character<R>) -> Result<EdsReport> {
    let ring = phi.ring();
    let psi = phi.phi_corr().convolution(phi)?.sigma_star();
    let words: Vec<ZWord> = words_up_to::<ZLetter>(phi.cutoff()).into_iter().filter(|w| !w.is_empty()).collect();
    let mut report = EdsReport { cutoff: phi.cutoff(), pairs: 0, stuffle_failures: vec![], shuffle_failures: vec![] };
    for (i, u) in words.iter().enumerate() {
        for v in &words[i..] {
            if u.weight() + v.weight() > phi.cutoff() {
                continue;
            }
            report.pairs += 1;
            if phi.eval(&stuffle_z(u, v)) != ring.mul(&phi.value(u), &phi.value(v)) {
                report.stuffle_failures.push((u.clone(), v.clone()));
            }
            if psi.eval(&index_shuffle_z().word(u, v)) != ring.mul(&psi.value(u), &psi.value(v)) {
                report.shuffle_failures.push((u.clone(), v.clone()));
            }
        }
    }
    Ok(report)
}

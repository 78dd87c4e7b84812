//! The swap involution σ, computed by substitution in generating series and,
//! independently, by the closed coefficient formula.
//!
//! The basis monomial of a word `[k_1..k_r; d_1..d_r]` is
//! `m_w = X_1^{k_1-1}...X_r^{k_r-1} Y_1^{d_1}/d_1! ... Y_r^{d_r}/d_r!`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock};

use dashmap::DashMap;
use num_traits::{One, Zero};

use crate::arith::{binomial_q, factorial_q, sign, Rational};
use crate::lincomb::LinComb;
use crate::poly::{xvar, yvar, Exps, LinearForm, PowerCache, QPoly};
use crate::ring::RationalField;
use crate::word::{awords_of, AWord, Letter};

/// Exponent vector of `m_w` in the interleaved variables.
pub fn exps_of(w: &AWord) -> Exps {
    let mut e = Exps::from_elem(0, 2 * w.depth());
    for (i, l) in w.letters().iter().enumerate() {
        e[xvar(i + 1)] = (l.k() - 1) as u16;
        e[yvar(i + 1)] = l.d() as u16;
    }
    e
}

/// The word whose basis monomial has exponents `e`, and the factor `prod d_i!`
/// converting a plain monomial coefficient into an `m_w` coefficient.
pub fn word_of_exps(e: &Exps) -> (AWord, Rational) {
    let r = e.len() / 2;
    let mut scale = Rational::one();
    let w = (1..=r)
        .map(|i| {
            let d = e[yvar(i)] as u32;
            scale *= factorial_q(d);
            Letter::new(e[xvar(i)] as u32 + 1, d)
        })
        .collect();
    (w, scale)
}

/// The basis monomial `m_w` as a polynomial.
pub fn basis_monomial(w: &AWord) -> QPoly {
    let c = w.letters().iter().fold(Rational::one(), |acc, l| acc / factorial_q(l.d()));
    QPoly::monomial(&RationalField, 2 * w.depth(), exps_of(w), c)
}

/// Images of `X_i`, `Y_i` under `X_i ↦ Y_1+...+Y_{r-i+1}`, `Y_i ↦ X_{r-i+1} - X_{r-i+2}`.
pub fn swap_substitution(r: usize) -> Vec<LinearForm> {
    let mut images = vec![Vec::new(); 2 * r];
    for i in 1..=r {
        images[xvar(i)] = (1..=r - i + 1).map(|j| (yvar(j), 1)).collect();
        let mut y = vec![(xvar(r - i + 1), 1)];
        if r - i + 2 <= r {
            y.push((xvar(r - i + 2), -1));
        }
        images[yvar(i)] = y;
    }
    images
}

/// The depth-`r` generating series `sum_w w m_w`, truncated to total degree
/// at most `max_deg`, with word-valued coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedGenSeries {
    depth: usize,
    max_deg: u32,
    terms: BTreeMap<Exps, LinComb<AWord>>,
}

impl TruncatedGenSeries {
    /// The universal series restricted to degree `min_deg..=max_deg`.
    pub fn universal(depth: usize, min_deg: u32, max_deg: u32) -> Self {
        let mut terms = BTreeMap::new();
        for deg in min_deg..=max_deg {
            for w in awords_of(deg + depth as u32, depth) {
                let c = w.letters().iter().fold(Rational::one(), |acc, l| acc / factorial_q(l.d()));
                terms.insert(exps_of(&w), LinComb::from_term(w, c));
            }
        }
        TruncatedGenSeries { depth, max_deg, terms }
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn max_deg(&self) -> u32 {
        self.max_deg
    }

    /// The coefficient of the basis monomial `m_w`.
    pub fn basis_coefficient(&self, w: &AWord) -> LinComb<AWord> {
        assert_eq!(w.depth(), self.depth);
        let (_, scale) = word_of_exps(&exps_of(w));
        self.terms.get(&exps_of(w)).map(|x| x.scale(&scale)).unwrap_or_default()
    }

    /// Applies a linear change of variables to the series.
    pub fn substitute(&self, images: &[LinearForm]) -> Self {
        let n = 2 * self.depth;
        let mut cache = PowerCache::new(images, n);
        let mut terms: BTreeMap<Exps, LinComb<AWord>> = BTreeMap::new();
        for (e, coeff) in &self.terms {
            for (f, q) in cache.monomial(e).iter() {
                terms.entry(f.clone()).or_default().add_scaled(coeff, q);
            }
        }
        terms.retain(|_, v| !v.is_zero());
        TruncatedGenSeries { depth: self.depth, max_deg: self.max_deg, terms }
    }

    pub fn swap(&self) -> Self {
        self.substitute(&swap_substitution(self.depth))
    }
}

type SwapTable = HashMap<AWord, LinComb<AWord>>;

fn tables() -> &'static DashMap<(usize, u32), Arc<SwapTable>> {
    static CELL: OnceLock<DashMap<(usize, u32), Arc<SwapTable>>> = OnceLock::new();
    CELL.get_or_init(DashMap::new)
}

fn swap_table(depth: usize, weight: u32) -> Arc<SwapTable> {
    if let Some(t) = tables().get(&(depth, weight)) {
        return t.clone();
    }
    let deg = weight - depth as u32;
    let series = TruncatedGenSeries::universal(depth, deg, deg).swap();
    let table: SwapTable = awords_of(weight, depth)
        .into_iter()
        .map(|w| {
            let c = series.basis_coefficient(&w);
            (w, c)
        })
        .collect();
    let table = Arc::new(table);
    tables().insert((depth, weight), table.clone());
    table
}

/// σ on a single word.
pub fn swap_word(w: &AWord) -> LinComb<AWord> {
    if w.is_empty() {
        return LinComb::single(w.clone());
    }
    swap_table(w.depth(), w.weight())[w].clone()
}

/// σ extended linearly.
pub fn swap(x: &LinComb<AWord>) -> LinComb<AWord> {
    x.map_linear(swap_word)
}

/// σ extended linearly; alias used where the restriction property
/// `σ(ℚ⟨𝒜¹⟩) = ℚ⟨𝒜₀⟩` is the point of the call.
pub fn swap_restricts(x: &LinComb<AWord>) -> LinComb<AWord> {
    swap(x)
}

fn prefix_sum(l: &[i64], j: usize) -> i64 {
    l[..j].iter().sum()
}

/// `sum_{i=r-j+2}^{r} l_i`.
fn suffix_sum(l: &[i64], j: usize) -> i64 {
    let r = l.len();
    l[r + 1 - j..].iter().sum()
}

fn compositions(total: i64, parts: usize, min: i64) -> Vec<Vec<i64>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in min..=total - min * (parts as i64 - 1) {
        for mut rest in compositions(total - first, parts - 1, min) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// The closed coefficient formula `C^{a,k}_{b,d}` for the swap.
pub fn swap_coefficient(a: &[i64], k: &[i64], b: &[i64], d: &[i64]) -> Rational {
    let r = a.len();
    let mut c = sign(b.iter().sum());
    for j in 1..=r {
        let top1 = prefix_sum(d, j) - suffix_sum(a, j) + j as i64 - 1;
        let b1 = binomial_q(top1, a[r - j] - 1);
        let bot2 = prefix_sum(b, j) - suffix_sum(k, j) + j as i64 - 1;
        let b2 = binomial_q(k[r - j] - 1, bot2);
        if b1.is_zero() || b2.is_zero() {
            return Rational::zero();
        }
        c *= b1 * b2 * factorial_q((a[j - 1] - 1) as u32) / factorial_q((k[j - 1] - 1) as u32);
        c *= sign(prefix_sum(k, j) + suffix_sum(b, j) + j as i64);
    }
    c
}

/// σ on a word via the closed coefficient formula.
pub fn swap_coeff_formula(w: &AWord) -> LinComb<AWord> {
    let r = w.depth();
    if r == 0 {
        return LinComb::single(w.clone());
    }
    let k: Vec<i64> = w.ks().iter().map(|&x| x as i64).collect();
    let d: Vec<i64> = w.ds().iter().map(|&x| x as i64).collect();
    let sa = d.iter().sum::<i64>() + r as i64;
    let sb = k.iter().sum::<i64>() - r as i64;
    let mut out = LinComb::zero();
    for a in compositions(sa, r, 1) {
        for b in compositions(sb, r, 0) {
            let c = swap_coefficient(&a, &k, &b, &d);
            if !c.is_zero() {
                let ka: Vec<u32> = a.iter().map(|&x| x as u32).collect();
                let kb: Vec<u32> = b.iter().map(|&x| x as u32).collect();
                out.add_term(AWord::from_kd(&ka, &kb), c);
            }
        }
    }
    out
}

/// σ² = id and agreement of the two implementations on every word of each weight ≤ `max_weight`.
pub fn swap_checks(max_weight: u32) -> Vec<crate::report::Check> {
    use crate::report::over_words;
    use crate::word::words_of_weight;
    let mut out = Vec::new();
    for k in 0..=max_weight {
        let words = words_of_weight::<Letter>(k);
        out.push(over_words("swap o swap = id", k, &words, |w| swap(&swap_word(w)) - LinComb::single(w.clone())));
        out.push(over_words("series swap = coefficient formula", k, &words, |w| swap_word(w) - swap_coeff_formula(w)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn a(ks: &[u32], ds: &[u32]) -> AWord {
        AWord::from_kd(ks, ds)
    }

    #[test]
    fn depth_one() {
        assert_eq!(swap_word(&a(&[3], &[0])), LinComb::from_term(a(&[1], &[2]), rat(1, 2)));
        assert_eq!(swap_word(&a(&[1], &[2])), LinComb::from_term(a(&[3], &[0]), int(2)));
        assert_eq!(swap_word(&a(&[1], &[1])), LinComb::single(a(&[2], &[0])));
        assert_eq!(swap_word(&a(&[2], &[1])), LinComb::single(a(&[2], &[1])));
    }

    #[test]
    fn depth_two_examples() {
        assert_eq!(swap_word(&a(&[1, 1], &[0, 0])), LinComb::single(a(&[1, 1], &[0, 0])));
        assert_eq!(swap_word(&a(&[2, 1], &[0, 0])), LinComb::single(a(&[1, 1], &[0, 1])));
        assert_eq!(swap_word(&a(&[1, 1], &[0, 1])), LinComb::single(a(&[2, 1], &[0, 0])));
    }

    #[test]
    fn closed_formula_small() {
        assert_eq!(swap_coeff_formula(&a(&[1], &[1])), LinComb::single(a(&[2], &[0])));
        assert_eq!(swap_coeff_formula(&a(&[2], &[1])), LinComb::single(a(&[2], &[1])));
        assert_eq!(swap_coeff_formula(&a(&[2, 1], &[0, 0])), swap_word(&a(&[2, 1], &[0, 0])));
    }

    #[test]
    fn generating_series_coefficients_reproduce_words() {
        let s = TruncatedGenSeries::universal(2, 0, 3);
        for w in awords_of(5, 2) {
            assert_eq!(s.basis_coefficient(&w), LinComb::single(w.clone()));
        }
    }
}

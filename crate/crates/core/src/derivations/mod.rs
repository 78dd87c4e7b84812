//! The derivations `D`, `W`, `ω`, `δ` on bi-indexed words, the weight −3 map
//! `𝔱`, restrictions to lower weight 0, and the polynomial representation.

pub mod mould;
mod polyrep;
mod space;

pub use polyrep::{polynomial_representation, reconstruct};
pub use space::{equivariant_derivation_dims, EquivariantDims};

use std::sync::Arc;

use num_traits::One;

use crate::arith::{binomial_q, int, rat, sign, Rational};
use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::qshuffle::{
    boundary_derivation, conjugate_by_exp_log, derivation_with_gamma, neighbor_derivation, shuffle_z, stuffle_product,
    stuffle_z, z_to_a, BoundaryMode, Derivation, IndexSum, LetterComb, LetterMap, Side,
};
use crate::word::{AWord, Letter, ZLetter, ZWord};

pub type Op = Derivation<Letter>;

fn l(k: u32, d: u32) -> Letter {
    Letter::new(k, d)
}

/// `D[..] = sum_j k_j [.., k_j+1, ..; .., d_j+1, ..]`.
pub fn d_word(w: &AWord) -> LinComb<AWord> {
    let mut out = LinComb::zero();
    for (j, a) in w.letters().iter().enumerate() {
        out.add_term(w.splice(j..j + 1, &[l(a.k() + 1, a.d() + 1)]), int(a.k() as i64));
    }
    out
}

pub fn w_word(w: &AWord) -> LinComb<AWord> {
    LinComb::from_term(w.clone(), int(w.weight() as i64))
}

pub fn omega_word(w: &AWord) -> LinComb<AWord> {
    let ls = w.letters();
    let r = ls.len();
    let mut out = LinComb::zero();
    if r >= 1 && ls[r - 1] == l(1, 0) {
        out.add_term(w.splice(r - 1..r, &[]), int(1));
    }
    for j in 0..r.saturating_sub(1) {
        if ls[j].k() == 1 {
            let n = ls[j + 1];
            out.add_term(w.splice(j..j + 2, &[l(n.k(), ls[j].d() + n.d())]), int(1));
        }
    }
    for j in 1..r {
        if ls[j].k() == 1 {
            let p = ls[j - 1];
            out.add_term(w.splice(j - 1..j + 1, &[l(p.k(), p.d() + ls[j].d())]), int(-1));
        }
    }
    out
}

pub fn delta1_word(w: &AWord) -> LinComb<AWord> {
    let ls = w.letters();
    let r = ls.len();
    let half = rat(-1, 2);
    let mut out = LinComb::zero();
    for (j, &a) in ls.iter().enumerate() {
        if a.k() > 1 && a.d() > 0 {
            out.add_term(w.splice(j..j + 1, &[l(a.k() - 1, a.d() - 1)]), int(a.d() as i64));
        }
    }
    for j in 0..r.saturating_sub(1) {
        let (a, b) = (ls[j], ls[j + 1]);
        if b.k() == 1 && b.d() > 0 {
            out.add_term(w.splice(j..j + 2, &[l(a.k(), a.d() + b.d() - 1)]), &half * int(b.d() as i64));
        }
        if a.k() == 1 && a.d() > 0 {
            out.add_term(w.splice(j..j + 2, &[l(b.k(), a.d() + b.d() - 1)]), &half * int(a.d() as i64));
        }
    }
    out
}

pub fn delta2_word(w: &AWord) -> LinComb<AWord> {
    let ls = w.letters();
    let r = ls.len();
    let mut out = LinComb::zero();
    if r >= 1 && ls[r - 1] == l(2, 0) {
        out.add_term(w.splice(r - 1..r, &[]), int(1));
    }
    if r >= 2 && ls[r - 1] == l(1, 0) && ls[r - 2] == l(1, 0) {
        out.add_term(w.splice(r - 2..r, &[]), rat(-1, 2));
    }
    out
}

pub fn delta3_word(w: &AWord) -> LinComb<AWord> {
    let r = w.depth();
    let mut out = LinComb::zero();
    if r >= 1 && w.letters()[r - 1] == l(1, 1) {
        out.add_term(w.splice(r - 1..r, &[]), int(1));
    }
    out
}

pub fn delta4_word(w: &AWord) -> LinComb<AWord> {
    let ls = w.letters();
    let r = ls.len();
    let mut out = LinComb::zero();
    for j in 1..r {
        let (p, a) = (ls[j - 1], ls[j]);
        if a.k() == 1 && p.k() > 1 {
            out.add_term(w.splice(j - 1..j + 1, &[l(p.k() - 1, p.d() + a.d())]), int(1));
        }
    }
    for j in 0..r.saturating_sub(1) {
        let (a, n) = (ls[j], ls[j + 1]);
        if a.k() == 1 && n.k() > 1 {
            out.add_term(w.splice(j..j + 2, &[l(n.k() - 1, a.d() + n.d())]), int(-1));
        }
    }
    out
}

pub fn delta5_word(w: &AWord) -> LinComb<AWord> {
    let ls = w.letters();
    let r = ls.len();
    let mut out = LinComb::zero();
    for j in 0..r.saturating_sub(1) {
        let (a, b) = (ls[j], ls[j + 1]);
        if a.k() == 2 {
            out.add_term(w.splice(j..j + 2, &[l(b.k(), a.d() + b.d())]), int(1));
        }
        if b.k() == 2 {
            out.add_term(w.splice(j..j + 2, &[l(a.k(), a.d() + b.d())]), int(-1));
        }
    }
    for j in 0..r.saturating_sub(2) {
        let (a, b, c) = (ls[j], ls[j + 1], ls[j + 2]);
        let dsum = a.d() + b.d() + c.d();
        if b.k() == 1 && c.k() == 1 {
            out.add_term(w.splice(j..j + 3, &[l(a.k(), dsum)]), rat(1, 2));
        }
        if a.k() == 1 && b.k() == 1 {
            out.add_term(w.splice(j..j + 3, &[l(c.k(), dsum)]), rat(-1, 2));
        }
    }
    out
}

/// `δ = δ¹ - ½(δ² + δ³ + δ⁴ + δ⁵)`.
pub fn delta_word(w: &AWord) -> LinComb<AWord> {
    let mut rest = delta2_word(w);
    rest += &delta3_word(w);
    rest += &delta4_word(w);
    rest += &delta5_word(w);
    let mut out = delta1_word(w);
    out.add_scaled(&rest, &rat(-1, 2));
    out
}

pub fn d_op() -> Op {
    Derivation::new("D", 2, d_word)
}

pub fn w_op() -> Op {
    Derivation::new("W", 0, w_word)
}

pub fn omega_op() -> Op {
    Derivation::new("omega", -1, omega_word)
}

pub fn delta_op() -> Op {
    Derivation::new("delta", -2, delta_word)
}

/// The component `δ^i`, `1 <= i <= 5`.
pub fn delta_component(i: usize) -> Op {
    let f: fn(&AWord) -> LinComb<AWord> = match i {
        1 => delta1_word,
        2 => delta2_word,
        3 => delta3_word,
        4 => delta4_word,
        5 => delta5_word,
        _ => panic!("delta component index {i} out of range 1..=5"),
    };
    Derivation::new(format!("delta{i}"), -2, f)
}

/// The mould-level weight −3 map `𝔱`.
pub fn t_op() -> Op {
    Derivation::new("t", -3, mould::t_word)
}

pub fn apply_d(x: &LinComb<AWord>) -> LinComb<AWord> {
    x.map_linear(d_word)
}

pub fn apply_w(x: &LinComb<AWord>) -> LinComb<AWord> {
    x.map_linear(w_word)
}

pub fn apply_omega(x: &LinComb<AWord>) -> LinComb<AWord> {
    x.map_linear(omega_word)
}

pub fn apply_delta(x: &LinComb<AWord>) -> LinComb<AWord> {
    x.map_linear(delta_word)
}

pub fn apply_t(x: &LinComb<AWord>) -> LinComb<AWord> {
    x.map_linear(mould::t_word)
}

fn require_lwt0(w: &AWord) -> Result<()> {
    if w.lwt() != 0 {
        return Err(Error::NotLwtZero(w.to_string()));
    }
    Ok(())
}

/// `δ` on `Gᶠ(k_1,...,k_r)` by the closed lower-weight-0 formula.
pub fn apply_delta_lwt0(w: &AWord) -> Result<LinComb<AWord>> {
    require_lwt0(w)?;
    let k = w.ks();
    let r = k.len();
    let g = |ks: Vec<u32>| AWord::from_ks(&ks);
    let mut out = LinComb::zero();
    if r >= 1 && k[0] == 2 {
        out.add_term(g(k[1..].to_vec()), rat(-1, 2));
    }
    if r >= 2 && k[0] == 1 && k[1] == 1 {
        out.add_term(g(k[2..].to_vec()), rat(1, 4));
    }
    for j in 0..r.saturating_sub(1) {
        if k[j] == 1 && k[j + 1] > 1 {
            let mut v = k.clone();
            v.remove(j);
            v[j] -= 1;
            out.add_term(g(v), rat(1, 2));
        }
    }
    for j in 1..r {
        if k[j] == 1 && k[j - 1] > 1 {
            let mut v = k.clone();
            v.remove(j);
            v[j - 1] -= 1;
            out.add_term(g(v), rat(-1, 2));
        }
    }
    Ok(out)
}

/// `D Gᶠ(k_1,...,k_r) = Gᶠ(z_2 ∗ z_{k_1}...z_{k_r} - z_2 ⧢ z_{k_1}...z_{k_r})`.
///
/// Agrees with [`apply_d`] only modulo the swap ideal.
pub fn apply_d_lwt0(w: &AWord, weight_cutoff: u32) -> Result<LinComb<AWord>> {
    require_lwt0(w)?;
    if w.weight() + 2 > weight_cutoff {
        return Err(Error::CutoffExceeded { weight: w.weight() + 2, cutoff: weight_cutoff });
    }
    let z: ZWord = w.ks().iter().map(|&k| ZLetter(k)).collect();
    let z2 = ZWord::from_ks(&[2]);
    Ok(z_to_a(&(stuffle_z(&z2, &z) - shuffle_z(&z2, &z))))
}

/// `D Gᶠ(k) = (2k-1)Gᶠ(k+2) - Gᶠ(2,k) - sum_{j=2}^{k} (k+j-1) Gᶠ(k+2-j, j)` for `k >= 2`.
pub fn d_single_admissible(k: u32) -> LinComb<AWord> {
    assert!(k >= 2);
    let mut out = LinComb::from_term(AWord::from_ks(&[k + 2]), int(2 * k as i64 - 1));
    out.add_term(AWord::from_ks(&[2, k]), int(-1));
    for j in 2..=k {
        out.add_term(AWord::from_ks(&[k + 2 - j, j]), int(-((k + j - 1) as i64)));
    }
    out
}

/// How the closed lower-weight-0 formula for `𝔱` treats a merged index that
/// reaches past the last position.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TBoundary {
    /// Missing indices count as 0 and any non-positive entry kills the term.
    Literal,
    /// A merged entry past the end that comes out as exactly 0 is dropped,
    /// matching the `Y_{r+1} = 0` convention of the mould-level definition.
    DropTrailingZero,
}

/// `𝔱` on `Gᶠ(k_1,...,k_r)` by the closed lower-weight-0 formula.
pub fn apply_t_lwt0(w: &AWord, boundary: TBoundary) -> Result<LinComb<AWord>> {
    require_lwt0(w)?;
    let k: Vec<i64> = w.ks().iter().map(|&x| x as i64).collect();
    let r = k.len();
    let at = |i: usize| -> i64 { k.get(i).copied().unwrap_or(0) };
    // replaces positions start..start+len (clipped to r) by `merged`
    let term = |start: usize, len: usize, merged: i64| -> Option<AWord> {
        let end = (start + len).min(r);
        let past_end = start + len > r;
        let mut v: Vec<i64> = k[..start].to_vec();
        if !(past_end && merged == 0 && boundary == TBoundary::DropTrailingZero) {
            v.push(merged);
        }
        v.extend_from_slice(&k[end..]);
        if v.iter().any(|&x| x <= 0) {
            return None;
        }
        Some(AWord::from_ks(&v.iter().map(|&x| x as u32).collect::<Vec<_>>()))
    };
    let mut out = LinComb::zero();
    let mut add = |t: Option<AWord>, c: Rational| {
        if let Some(t) = t {
            out.add_term(t, c);
        }
    };
    for (j, &kj) in k.iter().enumerate() {
        let c = sign(kj + 1) * binomial_q(2, kj - 1);
        add(term(j, 2, kj + at(j + 1) - 3), c);
    }
    for j in 1..r {
        let c = sign(k[j] + 1) * binomial_q(2, k[j] - 1);
        add(term(j - 1, 2, k[j - 1] + k[j] - 3), -c);
    }
    for j in 0..r.saturating_sub(1) {
        let c = match (k[j], k[j + 1]) {
            (1, 1) => int(1),
            (2, 1) => int(-1),
            _ => continue,
        };
        add(term(j, 3, k[j] + k[j + 1] + at(j + 2) - 3), c);
    }
    for j in 1..r.saturating_sub(1) {
        let c = match (k[j], k[j + 1]) {
            (1, 1) => int(1),
            (2, 1) => int(-4),
            (1, 2) => int(3),
            _ => continue,
        };
        add(term(j - 1, 3, k[j - 1] + k[j] + k[j + 1] - 3), -c);
    }
    if r >= 3 && k[..3] == [1, 1, 1] {
        add(
            term(0, 3, 0).or_else(|| Some(AWord::from_ks(&k[3..].iter().map(|&x| x as u32).collect::<Vec<_>>()))),
            rat(1, 3),
        );
    }
    Ok(out)
}

/// `[ω, δ]`.
pub fn omega_delta_commutator() -> Op {
    crate::qshuffle::commutator(&omega_op(), &delta_op())
}

/// `φ[k;d] = 1_{k>1} d [k-1; d-1]`, whose γ-corrected derivation is `δ¹`.
pub fn delta1_letter_map() -> LetterMap<Letter> {
    Arc::new(|a: &Letter| -> LetterComb<Letter> {
        if a.k() > 1 && a.d() > 0 {
            vec![(l(a.k() - 1, a.d() - 1), int(a.d() as i64))]
        } else {
            vec![]
        }
    })
}

/// The generic constructions reproducing `δ¹..δ⁵` and `ω`.
pub struct Constructions {
    pub delta1: Op,
    pub delta2: Op,
    pub delta3: Op,
    pub delta4: Op,
    pub delta5: Op,
    pub omega: Op,
}

fn s_one(a: &Letter) -> bool {
    a.k() == 1
}

/// Builds `δ¹..δ⁵` and `ω` from the generic quasi-shuffle derivation constructors.
pub fn constructions() -> Result<Constructions> {
    let diamond: Arc<dyn crate::qshuffle::Diamond<Letter>> = Arc::new(IndexSum);
    let delta1 = derivation_with_gamma("delta1", -2, delta1_letter_map(), diamond.clone())?;
    let delta2 = boundary_derivation(l(2, 0), Side::Right, BoundaryMode::Diamond, diamond.clone());
    let delta3 = boundary_derivation(l(1, 1), Side::Right, BoundaryMode::Diamond, diamond.clone());
    // the displayed δ⁴ is the negative of Θ_S for these φ_a
    let theta_s = neighbor_derivation(
        "theta_S",
        -2,
        Arc::new(s_one),
        Arc::new(|a: &Letter| -> LetterMap<Letter> {
            let dp = a.d();
            Arc::new(
                move |b: &Letter| if b.k() > 1 { vec![(l(b.k() - 1, b.d() + dp), Rational::one())] } else { vec![] },
            )
        }),
        diamond.clone(),
    )?;
    let delta4 = theta_s.scale(int(-1)).renamed("delta4");
    let delta5 = delta5_construction();
    let omega_s = neighbor_derivation(
        "omega_S",
        -1,
        Arc::new(s_one),
        Arc::new(|a: &Letter| -> LetterMap<Letter> {
            let dp = a.d();
            Arc::new(move |b: &Letter| vec![(l(b.k(), b.d() + dp), Rational::one())])
        }),
        diamond.clone(),
    )?;
    let omega =
        boundary_derivation(l(1, 0), Side::Right, BoundaryMode::Diamond, diamond).plus(&omega_s).renamed("omega");
    Ok(Constructions { delta1, delta2, delta3, delta4, delta5, omega })
}

/// `δ⁵ = sum_{a=[2;d]} exp⋄ ∘ Θ^{φ_a,a} ∘ log⋄` with `φ_a[k';d'] = [k'; d+d']`,
/// where `Θ^{φ,a}` is the shuffle derivation.
fn delta5_construction() -> Op {
    let theta = Derivation::new("theta_5", -2, |w: &AWord| {
        let ls = w.letters();
        let r = ls.len();
        let mut out = LinComb::zero();
        for j in 0..r {
            if ls[j].k() != 2 {
                continue;
            }
            let dp = ls[j].d();
            let without = w.splice(j..j + 1, &[]);
            if j + 1 < r {
                let b = ls[j + 1];
                out.add_term(without.splice(j..j + 1, &[l(b.k(), b.d() + dp)]), int(1));
            }
            if j >= 1 {
                let b = ls[j - 1];
                out.add_term(without.splice(j - 1..j, &[l(b.k(), b.d() + dp)]), int(-1));
            }
        }
        out
    });
    conjugate_by_exp_log(&theta, stuffle_product()).renamed("delta5")
}

/// Findings of the checks on `𝔱`; none of them is asserted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TReport {
    pub max_weight: u32,
    pub leibniz_checked: usize,
    pub leibniz_failures: usize,
    pub equivariance_checked: usize,
    /// words `w` with `(𝔱σ - σ𝔱)(w)` outside `𝕀`
    pub equivariance_failures: usize,
    /// whether `𝔱` and `[ω,δ]` are linearly independent as maps on weight `<= max_weight`
    pub independent_of_omega_delta: bool,
}

/// Checks Leibniz, equivariance modulo `𝕀`, and independence from `[ω,δ]`.
pub fn t_report(max_weight: u32) -> Result<TReport> {
    use crate::quotient::{IdealKind, Quotient};
    use crate::swap::swap;
    use crate::word::words_up_to;
    let t = t_op();
    let prod = stuffle_product();
    let words = words_up_to::<Letter>(max_weight);
    let (mut lc, mut lf) = (0, 0);
    for (i, u) in words.iter().enumerate() {
        for v in &words[i..] {
            if u.weight() + v.weight() <= max_weight {
                lc += 1;
                if !t.leibniz_defect(prod, u, v).is_zero() {
                    lf += 1;
                }
            }
        }
    }
    let q = Quotient::global();
    let mut ef = 0;
    for w in &words {
        let x = LinComb::single(w.clone());
        let defect = swap(&t.apply(&x)) - t.apply(&swap(&x));
        if !q.in_ideal(&defect, IdealKind::SwapIdeal, max_weight)? {
            ef += 1;
        }
    }
    let od = omega_delta_commutator();
    let mut ratio: Option<Rational> = None;
    let mut independent = false;
    for w in &words {
        let (a, b) = (t.apply_word(w), od.apply_word(w));
        if a.is_zero() && b.is_zero() {
            continue;
        }
        if b.is_zero() {
            independent = true;
            break;
        }
        let (lead, c) = b.iter().next().map(|(x, c)| (x.clone(), c.clone())).unwrap();
        let r = a.coeff(&lead) / c;
        if a != b.scale(&r) || ratio.as_ref().is_some_and(|x| *x != r) {
            independent = true;
            break;
        }
        ratio = Some(r);
    }
    Ok(TReport {
        max_weight,
        leibniz_checked: lc,
        leibniz_failures: lf,
        equivariance_checked: words.len(),
        equivariance_failures: ef,
        independent_of_omega_delta: independent,
    })
}

/// The sl2 relations on every word of each weight ≤ `max_weight`, and the
/// component identities for δ¹,…,δ⁵ on weights ≤ `component_weight`.
pub fn sl2_checks(max_weight: u32, component_weight: u32) -> Vec<crate::report::Check> {
    use crate::qshuffle::commutator;
    use crate::report::over_words;
    use crate::word::words_of_weight;
    let (w, d, delta) = (w_op(), d_op(), delta_op());
    let (wd, wdelta, deltad) = (commutator(&w, &d), commutator(&w, &delta), commutator(&delta, &d));
    let mut out = Vec::new();
    for k in 0..=max_weight {
        let words = words_of_weight::<Letter>(k);
        out.push(over_words("[W,D] = 2D", k, &words, |x| wd.apply_word(x) - d.apply_word(x).scale(&int(2))));
        out.push(over_words("[W,delta] = -2delta", k, &words, |x| {
            wdelta.apply_word(x) + delta.apply_word(x).scale(&int(2))
        }));
        out.push(over_words("[delta,D] = W", k, &words, |x| deltad.apply_word(x) - w.apply_word(x)));
    }
    for i in 1..=5 {
        let c = delta_component(i);
        let (cw, cd) = (commutator(&c, &w), commutator(&c, &d));
        for k in 0..=component_weight {
            let words = words_of_weight::<Letter>(k);
            out.push(over_words(format!("[delta{i},W] = 2delta{i}"), k, &words, |x| {
                cw.apply_word(x) - c.apply_word(x).scale(&int(2))
            }));
            if i == 1 {
                out.push(over_words("[delta1,D] = W", k, &words, |x| cd.apply_word(x) - w.apply_word(x)));
            } else {
                out.push(over_words(format!("[delta{i},D] = 0"), k, &words, |x| cd.apply_word(x)));
            }
        }
    }
    // δ⁴ and δ⁵ fail individually; their sum commutes with D
    let c45 = commutator(&delta_component(4).plus(&delta_component(5)), &d);
    for k in 0..=component_weight {
        let words = words_of_weight::<Letter>(k);
        out.push(over_words("[delta4+delta5,D] = 0", k, &words, |x| c45.apply_word(x)));
    }
    out
}

/// σΘ = Θσ for Θ ∈ {D, W, ω, δ} on every word of each weight ≤ `max_weight`.
pub fn equivariance_checks(max_weight: u32) -> Vec<crate::report::Check> {
    use crate::report::over_words;
    use crate::swap::swap;
    use crate::word::words_of_weight;
    let mut out = Vec::new();
    for op in [d_op(), w_op(), omega_op(), delta_op()] {
        for k in 0..=max_weight {
            let words = words_of_weight::<Letter>(k);
            out.push(over_words(format!("swap o {} = {} o swap", op.name(), op.name()), k, &words, |x| {
                let x = LinComb::single(x.clone());
                swap(&op.apply(&x)) - op.apply(&swap(&x))
            }));
        }
    }
    out
}

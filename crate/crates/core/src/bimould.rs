//! Truncated bimoulds: tuples (F_n) of polynomials in X₁,Y₁,…,X_n,Y_n over a
//! coefficient ring, cut off above depth `depth` and total degree `degree`.
//!
//! Component n uses the interleaved variables of [`crate::poly`]. Words
//! correspond to monomials through [k₁,…;d₁,…] ↔ Π X_i^{k_i−1} Y_i^{d_i}/d_i!.

use std::collections::BTreeMap;
use std::fmt;

use crate::arith::{binomial_q, factorial_q, int, rat, sign, Rational};
use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::mzv::ZfRing;
use crate::poly::{xvar, yvar, Exps, LinearForm, Poly};
use crate::quotient::{IdealKind, Quotient};
use crate::ring::CoeffRing;
use crate::word::{words_of_weight, AWord, Letter};

#[derive(Clone)]
pub struct Bimould<R: CoeffRing> {
    ring: R,
    depth: usize,
    degree: u32,
    comps: Vec<Poly<R::Elem>>,
}

impl<R: CoeffRing> PartialEq for Bimould<R> {
    fn eq(&self, other: &Self) -> bool {
        self.depth == other.depth && self.degree == other.degree && self.comps == other.comps
    }
}

impl<R: CoeffRing> fmt::Debug for Bimould<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Bimould")
            .field("depth", &self.depth)
            .field("degree", &self.degree)
            .field("comps", &self.comps)
            .finish()
    }
}

fn exps_degree(e: &Exps) -> u32 {
    e.iter().map(|&x| x as u32).sum()
}

fn word_exps(w: &AWord) -> Exps {
    w.letters().iter().flat_map(|l| [(l.k() - 1) as u16, l.d() as u16]).collect()
}

fn exps_word(e: &Exps) -> AWord {
    e.chunks(2).map(|c| Letter::new(c[0] as u32 + 1, c[1] as u32)).collect()
}

fn d_factorials(w: &AWord) -> Rational {
    w.letters().iter().map(|l| factorial_q(l.d())).product()
}

/// Words of depth ≤ `depth` whose monomials have degree ≤ `degree`.
pub fn words_in_truncation(depth: usize, degree: u32) -> Vec<AWord> {
    (0..=degree + depth as u32)
        .flat_map(words_of_weight::<Letter>)
        .filter(|w| w.depth() <= depth && w.weight() - w.depth() as u32 <= degree)
        .collect()
}

impl<R: CoeffRing> Bimould<R> {
    pub fn zero(ring: R, depth: usize, degree: u32) -> Self {
        let comps = (0..=depth).map(|n| Poly::zero(2 * n)).collect();
        Bimould { ring, depth, degree, comps }
    }

    /// 𝟙 = (1, 0, 0, …).
    pub fn unit(ring: R, depth: usize, degree: u32) -> Self {
        let mut out = Self::zero(ring, depth, degree);
        out.comps[0] = Poly::constant(&out.ring, 0, out.ring.one());
        out
    }

    /// Components beyond the truncation are dropped.
    pub fn from_components(ring: R, depth: usize, degree: u32, comps: Vec<Poly<R::Elem>>) -> Self {
        let mut out = Self::zero(ring, depth, degree);
        for (n, p) in comps.into_iter().enumerate().take(depth + 1) {
            assert_eq!(p.nvars(), 2 * n, "component {n} needs {} variables", 2 * n);
            out.comps[n] = p.truncate(degree);
        }
        out
    }

    /// F_n = Σ f(w) Π X_i^{k_i−1} Y_i^{d_i}/d_i! over the words in the truncation.
    pub fn from_word_fn(ring: R, depth: usize, degree: u32, mut f: impl FnMut(&AWord) -> R::Elem) -> Self {
        let mut out = Self::zero(ring, depth, degree);
        for w in words_in_truncation(depth, degree) {
            let c = out.ring.scale(&d_factorials(&w).recip(), &f(&w));
            out.comps[w.depth()].add_term(&out.ring, word_exps(&w), c);
        }
        out
    }

    /// λ(P) = (a₀, a₁, …) as constant components.
    pub fn lambda(ring: R, depth: usize, degree: u32, series: &[R::Elem]) -> Self {
        let mut out = Self::zero(ring, depth, degree);
        for (n, a) in series.iter().enumerate().take(depth + 1) {
            out.comps[n] = Poly::constant(&out.ring, 2 * n, a.clone());
        }
        out
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn component(&self, n: usize) -> &Poly<R::Elem> {
        &self.comps[n]
    }

    pub fn constant_term(&self, n: usize) -> R::Elem {
        self.comps[n].coeff(&self.ring, &Exps::from_elem(0, 2 * n))
    }

    /// Coefficient of w in the Y^d/d! normalization.
    pub fn word_coefficient(&self, w: &AWord) -> R::Elem {
        if w.depth() > self.depth {
            return self.ring.zero();
        }
        let c = self.comps[w.depth()].coeff(&self.ring, &word_exps(w));
        self.ring.scale(&d_factorials(w), &c)
    }

    /// The nonzero word coefficients.
    pub fn word_coefficients(&self) -> BTreeMap<AWord, R::Elem> {
        let mut out = BTreeMap::new();
        for p in &self.comps {
            for (e, _) in p.iter() {
                let w = exps_word(e);
                out.insert(w.clone(), self.word_coefficient(&w));
            }
        }
        out
    }

    fn same_truncation(&self, other: &Self) -> Result<()> {
        if (self.depth, self.degree) != (other.depth, other.degree) {
            return Err(Error::TruncationMismatch(self.depth, self.degree, other.depth, other.degree));
        }
        Ok(())
    }

    fn map_comps(&self, f: impl Fn(usize, &Poly<R::Elem>) -> Poly<R::Elem>) -> Self {
        let comps = self.comps.iter().enumerate().map(|(n, p)| f(n, p).truncate(self.degree)).collect();
        Bimould { ring: self.ring.clone(), depth: self.depth, degree: self.degree, comps }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_truncation(other)?;
        Ok(self.map_comps(|n, p| p.add(&self.ring, &other.comps[n])))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_truncation(other)?;
        Ok(self.map_comps(|n, p| p.sub(&self.ring, &other.comps[n])))
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        self.map_comps(|_, p| p.scale(&self.ring, c))
    }

    /// H_n = Σ_i F_i(X₁…X_i) G_{n−i}(X_{i+1}…X_n).
    pub fn concat(&self, other: &Self) -> Result<Self> {
        self.same_truncation(other)?;
        let mut out = Self::zero(self.ring.clone(), self.depth, self.degree);
        for n in 0..=self.depth {
            let mut h = Poly::zero(2 * n);
            for i in 0..=n {
                let (f, g) = (&self.comps[i], &other.comps[n - i]);
                if f.is_zero() || g.is_zero() {
                    continue;
                }
                let term = f.shift(0, 2 * n).mul(&self.ring, &g.shift(2 * i, 2 * n), Some(self.degree));
                h = h.add(&self.ring, &term);
            }
            out.comps[n] = h;
        }
        Ok(out)
    }

    /// F^{⊙−1}, from F₀G_n = −Σ_{i≥1} F_i G_{n−i}.
    pub fn concat_inverse(&self) -> Result<Self> {
        let f0 = self.constant_term(0);
        let inv0 = self.ring.inverse(&f0).ok_or_else(|| Error::NotAUnit(format!("F_0 = {f0:?}")))?;
        let mut out = Self::zero(self.ring.clone(), self.depth, self.degree);
        out.comps[0] = Poly::constant(&self.ring, 0, inv0.clone());
        let minus_inv0 = self.ring.neg(&inv0);
        for n in 1..=self.depth {
            let mut g = Poly::zero(2 * n);
            for i in 1..=n {
                if self.comps[i].is_zero() {
                    continue;
                }
                let term = self.comps[i].shift(0, 2 * n).mul(
                    &self.ring,
                    &out.comps[n - i].shift(2 * i, 2 * n),
                    Some(self.degree),
                );
                g = g.add(&self.ring, &term);
            }
            out.comps[n] = g.scale(&self.ring, &minus_inv0);
        }
        Ok(out)
    }

    /// σ: X_i ↦ Y₁+…+Y_{n−i+1}, Y₁ ↦ X_n, Y_i ↦ X_{n−i+1} − X_{n−i+2}.
    pub fn swap(&self) -> Self {
        self.map_comps(|n, p| {
            if n == 0 || p.is_zero() {
                return p.clone();
            }
            let mut images: Vec<LinearForm> = vec![vec![]; 2 * n];
            for i in 1..=n {
                images[xvar(i)] = (1..=n - i + 1).map(|j| (yvar(j), 1)).collect();
                images[yvar(i)] =
                    if i == 1 { vec![(xvar(n), 1)] } else { vec![(xvar(n - i + 1), 1), (xvar(n - i + 2), -1)] };
            }
            p.substitute(&self.ring, &images, 2 * n)
        })
    }

    /// c(F): each component replaced by its constant term.
    pub fn c(&self) -> Self {
        self.map_comps(|n, _| Poly::constant(&self.ring, 2 * n, self.constant_term(n)))
    }

    /// c_X(F): Y₁ = … = Y_n = 0.
    pub fn c_x(&self) -> Self {
        self.map_comps(|n, p| {
            let mut out = Poly::zero(2 * n);
            for (e, c) in p.iter().filter(|(e, _)| (1..=n).all(|i| e[yvar(i)] == 0)) {
                out.add_term(&self.ring, e.clone(), c.clone());
            }
            out
        })
    }

    fn only_vars(&self, keep: impl Fn(usize) -> bool) -> bool {
        self.comps.iter().all(|p| p.iter().all(|(e, _)| e.iter().enumerate().all(|(v, &x)| x == 0 || keep(v))))
    }

    /// Lies in 𝓜_X: no Y variables occur.
    pub fn is_in_mx(&self) -> bool {
        self.only_vars(|v| v % 2 == 0)
    }

    /// Lies in 𝓜_Y: no X variables occur.
    pub fn is_in_my(&self) -> bool {
        self.only_vars(|v| v % 2 == 1)
    }

    /// exp_⊙(P) = Σ P^{⊙n}/n! for P with P₀ = 0.
    pub fn exp_concat(&self) -> Result<Self> {
        if !self.ring.is_zero(&self.constant_term(0)) {
            return Err(Error::Infeasible("exp needs a vanishing depth-0 component".into()));
        }
        let mut acc = Self::unit(self.ring.clone(), self.depth, self.degree);
        let mut power = acc.clone();
        for n in 1..=self.depth {
            power = power.concat(self)?;
            let c = self.ring.from_rational(&factorial_q(n as u32).recip());
            acc = acc.add(&power.scale(&c))?;
        }
        Ok(acc)
    }

    /// Coefficients of F_corr = exp(Σ_{n≥2} (−1)ⁿ/n f_{n,0} tⁿ) up to t^depth,
    /// with f_{n,0} the coefficient of X^{n−1} in F₁.
    pub fn correction_series(&self) -> Vec<R::Elem> {
        let ring = &self.ring;
        let n = self.depth;
        let f = |j: usize| -> R::Elem {
            if j < 1 || j > self.degree as usize + 1 || n == 0 {
                return ring.zero();
            }
            self.comps[1].coeff(ring, &Exps::from_slice(&[(j - 1) as u16, 0]))
        };
        let a: Vec<R::Elem> = (0..=n)
            .map(|j| if j < 2 { ring.zero() } else { ring.scale(&(sign(j as i64) * rat(1, j as i64)), &f(j)) })
            .collect();
        // m·E_m = Σ_{j=1}^{m} j·a_j·E_{m−j}
        let mut e = vec![ring.one()];
        for m in 1..=n {
            let mut acc = ring.zero();
            for j in 1..=m {
                acc = ring.add(&acc, &ring.scale(&int(j as i64), &ring.mul(&a[j], &e[m - j])));
            }
            e.push(ring.scale(&rat(1, m as i64), &acc));
        }
        e
    }

    /// Δ̂*(F), restricted to the components it determines within the truncation.
    pub fn delta_star(&self) -> Tensor<R::Elem> {
        let mut out = Tensor::default();
        for p in &self.comps {
            for (e, c) in p.iter() {
                for (l, r, q) in delta_star_monomial(e) {
                    let key = (l.len() / 2, r.len() / 2);
                    if !self.determines(key, exps_degree(&l) + exps_degree(&r)) {
                        continue;
                    }
                    let mut f = l.clone();
                    f.extend_from_slice(&r);
                    out.add_term(&self.ring, key, f, self.ring.scale(&q, c));
                }
            }
        }
        out
    }

    /// F ⊗ F on the same components as [`Bimould::delta_star`].
    pub fn tensor_square(&self) -> Tensor<R::Elem> {
        let mut out = Tensor::default();
        for p in 0..=self.depth {
            for q in 0..=self.depth - p {
                for (e1, c1) in self.comps[p].iter() {
                    for (e2, c2) in self.comps[q].iter() {
                        if !self.determines((p, q), exps_degree(e1) + exps_degree(e2)) {
                            continue;
                        }
                        let mut f = e1.clone();
                        f.extend_from_slice(e2);
                        out.add_term(&self.ring, (p, q), f, self.ring.mul(c1, c2));
                    }
                }
            }
        }
        out
    }

    // A tensor coefficient of degree e in component (p, q) involves F up to
    // degree e + min(p, q), one extra degree per split letter.
    fn determines(&self, (p, q): (usize, usize), deg: u32) -> bool {
        p + q <= self.depth && deg + p.min(q) as u32 <= self.degree
    }

    /// F₀ = 1 and Δ̂*(F) = F ⊗ F within the truncation.
    pub fn is_grouplike(&self) -> bool {
        self.constant_term(0) == self.ring.one() && self.delta_star() == self.tensor_square()
    }
}

/// Δ* on a monomial Π X_i^{a_i} Y_i^{b_i}, extended letter by letter as a
/// ⊙-homomorphism. Each term is (left exponents, right exponents, coefficient).
pub fn delta_star_monomial(e: &Exps) -> Vec<(Exps, Exps, Rational)> {
    let mut acc: Vec<(Exps, Exps, Rational)> = vec![(Exps::new(), Exps::new(), int(1))];
    for pair in e.chunks(2) {
        let (a, b) = (pair[0], pair[1]);
        let mut next = Vec::with_capacity(acc.len() * 3);
        for (l, r, c) in &acc {
            let mut l2 = l.clone();
            l2.extend_from_slice(&[a, b]);
            next.push((l2, r.clone(), c.clone()));
            let mut r2 = r.clone();
            r2.extend_from_slice(&[a, b]);
            next.push((l.clone(), r2, c.clone()));
            // k₁ + k₂ = k with k_i ≥ 1, so the X exponents sum to a − 1
            for a1 in 0..a {
                for b1 in 0..=b {
                    let (mut l3, mut r3) = (l.clone(), r.clone());
                    l3.extend_from_slice(&[a1, b1]);
                    r3.extend_from_slice(&[a - 1 - a1, b - b1]);
                    next.push((l3, r3, c * binomial_q(b as i64, b1 as i64)));
                }
            }
        }
        acc = next;
    }
    acc
}

/// An element of the truncated completed tensor square, by (left depth, right depth).
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor<E> {
    comps: BTreeMap<(usize, usize), Poly<E>>,
}

impl<E> Default for Tensor<E> {
    fn default() -> Self {
        Tensor { comps: BTreeMap::new() }
    }
}

impl<E: Clone + PartialEq + fmt::Debug> Tensor<E> {
    fn add_term<R: CoeffRing<Elem = E>>(&mut self, ring: &R, key: (usize, usize), e: Exps, c: E) {
        let slot = self.comps.entry(key).or_insert_with(|| Poly::zero(2 * (key.0 + key.1)));
        slot.add_term(ring, e, c);
        if slot.is_zero() {
            self.comps.remove(&key);
        }
    }

    pub fn component(&self, p: usize, q: usize) -> Option<&Poly<E>> {
        self.comps.get(&(p, q))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &Poly<E>)> {
        self.comps.iter()
    }
}

/// Φ(H) = σ(H) ⊙ c(H)^{⊙−1} ⊙ H for H ∈ 𝓜_X with H₀ a unit.
pub fn phi<R: CoeffRing>(h: &Bimould<R>) -> Result<Bimould<R>> {
    if !h.is_in_mx() {
        return Err(Error::Infeasible("Phi needs an element of M_X".into()));
    }
    h.swap().concat(&h.c().concat_inverse()?)?.concat(h)
}

/// Ψ(F) = c_X(F).
pub fn psi<R: CoeffRing>(f: &Bimould<R>) -> Result<Bimould<R>> {
    let f0 = f.constant_term(0);
    if f.ring().inverse(&f0).is_none() {
        return Err(Error::NotAUnit(format!("F_0 = {f0:?}")));
    }
    Ok(f.c_x())
}

/// Both sides of the group-like equivalence for F with σ(F) = F and F = G ⊙ H.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrouplikeEquivalence {
    /// F ∈ 𝒢.
    pub f_grouplike: bool,
    /// H = c_X(F) ∈ 𝒢_X.
    pub h_grouplike: bool,
    /// σ(λ(F_corr) ⊙ c_X(F)) ∈ 𝒢_Y.
    pub corrected_grouplike: bool,
}

impl GrouplikeEquivalence {
    pub fn right_side(&self) -> bool {
        self.h_grouplike && self.corrected_grouplike
    }

    pub fn agree(&self) -> bool {
        self.f_grouplike == self.right_side()
    }
}

/// The factor G = F ⊙ c_X(F)^{⊙−1}, which must lie in 𝓜_Y with c(G) = 𝟙.
pub fn y_factor<R: CoeffRing>(f: &Bimould<R>) -> Result<Bimould<R>> {
    f.concat(&f.c_x().concat_inverse()?)
}

/// Evaluates both sides of the equivalence. The hypotheses σ(F) = F and
/// F = G ⊙ H with G ∈ 𝓜_Y, c(G) = 𝟙 are checked first and reported as errors.
pub fn check_grouplike_equivalence<R: CoeffRing>(f: &Bimould<R>) -> Result<GrouplikeEquivalence> {
    if f.swap() != *f {
        return Err(Error::Hypothesis("sigma(F) = F".into(), "swap differs".into()));
    }
    let h = f.c_x();
    let g = y_factor(f)?;
    let unit = Bimould::unit(f.ring().clone(), f.depth(), f.degree());
    if !g.is_in_my() || g.c() != unit {
        return Err(Error::Hypothesis("F = G H with G in M_Y, c(G) = 1".into(), "factor G fails".into()));
    }
    let corr = Bimould::lambda(f.ring().clone(), f.depth(), f.degree(), &f.correction_series());
    let corrected = corr.concat(&h)?.swap();
    Ok(GrouplikeEquivalence {
        f_grouplike: f.is_grouplike(),
        h_grouplike: h.is_grouplike(),
        corrected_grouplike: corrected.is_in_my() && corrected.is_grouplike(),
    })
}

/// Group-like bimould from points (a_j, b_j): w ↦ Σ_{n₁>…>n_r} Π a_{n_i}^{k_i} b_{n_i}^{d_i}.
pub fn grouplike_from_points<R: CoeffRing>(
    ring: R,
    depth: usize,
    degree: u32,
    points: &[(R::Elem, R::Elem)],
) -> Bimould<R> {
    fn value<R: CoeffRing>(ring: &R, ls: &[Letter], points: &[(R::Elem, R::Elem)], below: usize) -> R::Elem {
        let Some((l, rest)) = ls.split_first() else {
            return ring.one();
        };
        let mut acc = ring.zero();
        for (n, (a, b)) in points.iter().enumerate().take(below) {
            let x = ring.mul(&ring.pow(a, l.k()), &ring.pow(b, l.d()));
            acc = ring.add(&acc, &ring.mul(&x, &value(ring, rest, points, n)));
        }
        acc
    }
    let r = ring.clone();
    Bimould::from_word_fn(ring, depth, degree, |w| value(&r, w.letters(), points, points.len()))
}

/// The 𝒵ᶠ-valued bimould with coefficients π(G[k₁,…;d₁,…]), 𝒵ᶠ truncated above `cutoff`.
pub fn zeta_bimould(cutoff: u32) -> Result<Bimould<ZfRing>> {
    Quotient::global().basis(IdealKind::Combined, cutoff)?;
    let ring = ZfRing::new(cutoff);
    let depth = cutoff as usize;
    Ok(Bimould::from_word_fn(ring, depth, cutoff.saturating_sub(1), |w| ring.reduce(&LinComb::single(w.clone()))))
}

/// A random bimould over ℚ using only the variables `v` with `vars(v)`; its constant term is a unit.
pub fn random_bimould(
    rng: &mut impl rand::Rng,
    depth: usize,
    degree: u32,
    vars: impl Fn(usize) -> bool,
) -> Bimould<crate::ring::RationalField> {
    let r = crate::ring::RationalField;
    let mut comps = vec![Poly::constant(&r, 0, int(rng.gen_range(1..=3)))];
    for n in 1..=depth {
        let mut p = Poly::zero(2 * n);
        for _ in 0..6 {
            let mut e = Exps::from_elem(0, 2 * n);
            let mut left = rng.gen_range(0..=degree);
            for v in (0..2 * n).filter(|&v| vars(v)) {
                let x = rng.gen_range(0..=left);
                e[v] = x as u16;
                left -= x;
            }
            p.add_term(&r, e, int(rng.gen_range(-3..=3)));
        }
        comps.push(p);
    }
    Bimould::from_components(r, depth, degree, comps)
}

fn monomials(nvars: usize, degree: u32) -> Vec<Exps> {
    if nvars == 0 {
        return vec![Exps::new()];
    }
    let mut out = Vec::new();
    for first in 0..=degree {
        for rest in monomials(nvars - 1, degree - first) {
            let mut e = Exps::from_elem(first as u16, 1);
            e.extend_from_slice(&rest);
            out.push(e);
        }
    }
    out
}

/// (Δ*⊗id)Δ* − (id⊗Δ*)Δ* on a monomial, as a map of triples.
pub fn coassociativity_defect(m: &Exps) -> BTreeMap<(Exps, Exps, Exps), Rational> {
    let mut out: BTreeMap<(Exps, Exps, Exps), Rational> = BTreeMap::new();
    for (l, r, c) in delta_star_monomial(m) {
        for (ll, lr, c2) in delta_star_monomial(&l) {
            *out.entry((ll, lr, r.clone())).or_insert_with(|| int(0)) += &c * &c2;
        }
        for (rl, rr, c2) in delta_star_monomial(&r) {
            *out.entry((l.clone(), rl, rr)).or_insert_with(|| int(0)) -= &c * &c2;
        }
    }
    out.retain(|_, c| *c != int(0));
    out
}

fn count_check(name: &str, weight: u32, checked: usize, failures: Vec<String>) -> crate::report::Check {
    let residual = match failures.first() {
        None => String::new(),
        Some(f) => format!("{} of {checked} fail, first: {f}", failures.len()),
    };
    crate::report::Check::new(name, weight, failures.is_empty(), residual)
}

/// Anticommutation of swap, the Φ/Ψ round trips and coassociativity of Δ* on
/// `samples` seeded random elements of depth 3 and degree 4, and the group-like
/// equivalence on the 𝒵ᶠ-valued bimould at weight cutoff `zeta_cutoff`.
pub fn structure_checks(samples: usize, seed: u64, zeta_cutoff: u32) -> Result<Vec<crate::report::Check>> {
    use rand::SeedableRng;
    const DEPTH: usize = 3;
    const DEGREE: u32 = 4;
    let x_only = |v: usize| v.is_multiple_of(2);
    let y_only = |v: usize| v % 2 == 1;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();

    let mut failures = Vec::new();
    for i in 0..samples {
        let f = random_bimould(&mut rng, DEPTH, DEGREE, y_only);
        let g = random_bimould(&mut rng, DEPTH, DEGREE, x_only);
        if f.concat(&g)?.swap() != g.swap().concat(&f.swap())? {
            failures.push(format!("sample {i}"));
        }
    }
    out.push(count_check("swap(F G) = swap(G) swap(F) for F in M_Y, G in M_X", DEGREE, samples, failures));

    let mut failures = Vec::new();
    for i in 0..samples {
        let h = random_bimould(&mut rng, DEPTH, DEGREE, x_only);
        let f = phi(&h)?;
        if f.swap() != f || psi(&f)? != h || phi(&psi(&f)?)? != f {
            failures.push(format!("sample {i}"));
        }
    }
    out.push(count_check("Psi o Phi = id and Phi o Psi = id", DEGREE, samples, failures));

    let mut failures = Vec::new();
    let mut checked = 0;
    for n in 1..=2 {
        for m in monomials(2 * n, DEGREE) {
            checked += 1;
            if !coassociativity_defect(&m).is_empty() {
                failures.push(format!("{m:?}"));
            }
        }
    }
    out.push(count_check("Delta* coassociative", DEGREE, checked, failures));

    let f = zeta_bimould(zeta_cutoff)?;
    let rep = check_grouplike_equivalence(&f)?;
    let passed = rep.f_grouplike && rep.right_side() && rep.agree();
    let residual = if passed { String::new() } else { format!("{rep:?}") };
    out.push(crate::report::Check::new(
        "group-like equivalence for the formal zeta bimould",
        zeta_cutoff,
        passed,
        residual,
    ));
    Ok(out)
}

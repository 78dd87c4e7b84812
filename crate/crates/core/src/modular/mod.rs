//! Modular identities among formal multiple Eisenstein series.
//!
//! Word-level statements are checked modulo the swap ideal 𝕀 through the
//! graded quotient. Weight-12 statements are certified in the free algebra
//! ℚ[G2, DG2, D²G2], see [`symbolic`].

pub mod qmf;
pub mod symbolic;

use num_traits::{One, Zero};

use crate::arith::{binomial_q, factorial_q, int, rat, sign, Rational};
use crate::derivations::apply_d;
use crate::error::{Error, Result};
use crate::linalg::{from_pairs, solve, SparseVec};
use crate::lincomb::LinComb;
use crate::qshuffle::stuffle_lc;
use crate::quotient::{IdealKind, Quotient};
use crate::report::Check;
use crate::word::AWord;

pub use qmf::QmfPolynomial;
pub use symbolic::{
    delta_cusp_form, eisenstein_symbolic, mk_decomposition, rankin_cohen_symbolic, verify_cusp_direct,
    verify_cusp_properties, verify_euler_symbolic, verify_rc_delta_closure, Decomposition,
};

/// Largest weight of the symbolic Euler coefficient check.
pub const EULER_WEIGHTS_CHECKED: u32 = 16;

/// G(k).
pub fn g(k: u32) -> LinComb<AWord> {
    LinComb::single(AWord::from_ks(&[k]))
}

/// G[k;d].
pub fn gd(k: u32, d: u32) -> LinComb<AWord> {
    LinComb::single(AWord::from_kd(&[k], &[d]))
}

fn g2(ks: [u32; 2], ds: [u32; 2]) -> LinComb<AWord> {
    LinComb::single(AWord::from_kd(&ks, &ds))
}

fn prod(x: &LinComb<AWord>, y: &LinComb<AWord>) -> LinComb<AWord> {
    stuffle_lc(x, y)
}

fn check_mod_i(name: String, weight: u32, x: &LinComb<AWord>, cutoff: u32) -> Result<Check> {
    let nf = Quotient::global().normal_form(x, IdealKind::SwapIdeal, cutoff)?;
    Ok(Check::of(name, weight, &nf))
}

fn quotient_cutoff() -> u32 {
    Quotient::global().max_weight()
}

/// The stuffle and shuffle expansions of G[k₁;d₁]·G[k₂;d₂].
pub fn depth2_dsh_sides(k1: u32, k2: u32, d1: u32, d2: u32) -> (LinComb<AWord>, LinComb<AWord>) {
    let stuffle_side = g2([k1, k2], [d1, d2]) + g2([k2, k1], [d2, d1]) + gd(k1 + k2, d1 + d2);
    let (k, d) = (k1 + k2, d1 + d2);
    let (ik1, ik2, id1, id2) = (k1 as i64, k2 as i64, d1 as i64, d2 as i64);
    let mut shuffle_side = LinComb::zero();
    for l1 in 1..k {
        for e1 in 0..=d {
            let (l1i, e1i) = (l1 as i64, e1 as i64);
            let c = binomial_q(l1i - 1, ik1 - 1) * binomial_q(id1, e1i) * sign(id1 - e1i)
                + binomial_q(l1i - 1, ik2 - 1) * binomial_q(id2, e1i) * sign(id2 - e1i);
            shuffle_side.add_term(AWord::from_kd(&[l1, k - l1], &[e1, d - e1]), c);
        }
    }
    let c = factorial_q(d1) * factorial_q(d2) / factorial_q(d + 1) * binomial_q(k as i64 - 2, ik1 - 1);
    shuffle_side.add_scaled(&gd(k - 1, d + 1), &c);
    (stuffle_side, shuffle_side)
}

/// Both expansions of G[k₁;d₁]·G[k₂;d₂] agree modulo 𝕀.
pub fn verify_depth2_dsh(k1: u32, k2: u32, d1: u32, d2: u32, cutoff: u32) -> Result<Check> {
    if k1 == 0 || k2 == 0 {
        return Err(Error::InvalidLetter { k: 0, d: 0 });
    }
    let weight = k1 + k2 + d1 + d2;
    if weight > cutoff {
        return Err(Error::CutoffExceeded { weight, cutoff });
    }
    let (s, t) = depth2_dsh_sides(k1, k2, d1, d2);
    check_mod_i(format!("depth-2 double shuffle ({k1},{k2};{d1},{d2})"), weight, &(s - t), cutoff)
}

/// Left minus right side of the even-weight relation for (k₁, k₂).
pub fn relpevevk_residual(k1: u32, k2: u32) -> Result<LinComb<AWord>> {
    let k = k1 + k2;
    if k1 == 0 || k2 == 0 || !k.is_multiple_of(2) || k < 4 {
        return Err(Error::Parity(k1, k2));
    }
    let (ik, ik1, ik2) = (k as i64, k1 as i64, k2 as i64);
    let half = rat(1, 2);
    let mut x = g(k).scale(&((binomial_q(ik, ik2) - sign(ik1)) * &half));
    for j in (2..=k - 2).step_by(2) {
        let ij = j as i64;
        let mut c = binomial_q(ik - ij - 1, ik1 - 1) + binomial_q(ik - ij - 1, ik2 - 1);
        if j == k1 {
            c -= Rational::one();
        }
        x.add_scaled(&prod(&g(j), &g(k - j)), &-c);
    }
    let ind = |b: bool| if b { Rational::one() } else { Rational::zero() };
    let c = (binomial_q(ik - 3, ik1 - 1) + binomial_q(ik - 3, ik2 - 1) + ind(k1 == 1) + ind(k2 == 1)) * half;
    x.add_scaled(&gd(k - 1, 1), &-c);
    Ok(x)
}

/// The even-weight relation for (k₁, k₂) holds modulo 𝕀.
pub fn verify_relpevevk(k1: u32, k2: u32) -> Result<Check> {
    let x = relpevevk_residual(k1, k2)?;
    check_mod_i(format!("even-weight relation ({k1},{k2})"), k1 + k2, &x, quotient_cutoff())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MfProd {
    /// (k+1)/2·G(k) = G[k−1;1] + Σ G(k₁)G(k₂) over even k₁, k₂ ≥ 2.
    First,
    /// (k+1)(k−1)(k−6)/12·G(k) = Σ (k₁−1)(k₂−1)G(k₁)G(k₂) over even k₁, k₂ ≥ 4.
    Second,
}

pub fn mfprod_residual(k: u32, part: MfProd) -> Result<LinComb<AWord>> {
    let min = if part == MfProd::First { 4 } else { 6 };
    if !k.is_multiple_of(2) || k < min {
        return Err(Error::Parity(k, 0));
    }
    let ik = k as i64;
    let mut x = match part {
        MfProd::First => g(k).scale(&rat(ik + 1, 2)) - gd(k - 1, 1),
        MfProd::Second => g(k).scale(&rat((ik + 1) * (ik - 1) * (ik - 6), 12)),
    };
    let lo = if part == MfProd::First { 2 } else { 4 };
    let mut k1 = lo;
    while k1 + lo <= k {
        let c = match part {
            MfProd::First => int(1),
            MfProd::Second => int((k1 as i64 - 1) * (ik - k1 as i64 - 1)),
        };
        x.add_scaled(&prod(&g(k1), &g(k - k1)), &-c);
        k1 += 2;
    }
    Ok(x)
}

pub fn verify_mfprod(k: u32, part: MfProd) -> Result<Check> {
    let x = mfprod_residual(k, part)?;
    let tag = if part == MfProd::First { "i" } else { "ii" };
    check_mod_i(format!("modular product ({tag}) at k={k}"), k, &x, quotient_cutoff())
}

/// −B_{2m}/(2(2m)!)·(−24)^m.
pub fn euler_coefficient(m: u32) -> Rational {
    let b = crate::arith::bernoulli(2 * m as usize);
    -b / (int(2) * factorial_q(2 * m)) * int(-24).pow(m as i32)
}

/// G(2m) ≡ c·G(2)^m + D(primitive) modulo 𝕀.
#[derive(Clone, Debug, PartialEq)]
pub struct EulerDecomposition {
    pub m: u32,
    pub coefficient: Rational,
    /// A polynomial in g₂, g₄, g₆ whose derivative is the remainder.
    pub primitive: QmfPolynomial,
    pub check: Check,
}

/// Solves for the remainder of the Euler relation in D M̃ by linear algebra modulo 𝕀.
pub fn euler_decomposition(m: u32) -> Result<EulerDecomposition> {
    if m == 0 {
        return Err(Error::Parity(0, 0));
    }
    let k = 2 * m;
    let basis = Quotient::global().basis(IdealKind::SwapIdeal, k)?;
    let coefficient = euler_coefficient(m);
    let images = [g(2), g(4), g(6)];
    let target = g(k) - QmfPolynomial::var(0).pow(m).expand(&images).scale(&coefficient);
    let coords = |x: &LinComb<AWord>| -> SparseVec {
        from_pairs(basis.coordinates(x).into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect())
    };
    let monos = qmf::monomials_of_weight(k - 2);
    let cols: Vec<SparseVec> =
        monos.iter().map(|e| coords(&apply_d(&QmfPolynomial::monomial(*e, Rational::one()).expand(&images)))).collect();
    let name = format!("Euler relation m={m}");
    let Some(x) = solve(&cols, &coords(&target)) else {
        let check = Check::of(name, k, &basis.reduce(&target));
        return Ok(EulerDecomposition { m, coefficient, primitive: QmfPolynomial::zero(), check });
    };
    let primitive = QmfPolynomial::from_terms(monos.into_iter().zip(x));
    let residual = target - apply_d(&primitive.expand(&images));
    let check = Check::of(name, k, &basis.reduce(&residual));
    Ok(EulerDecomposition { m, coefficient, primitive, check })
}

/// DG(k) = k(k+3)/2·G(k+2) − k·Σ G(k₁)G(k₂) over even k₁ + k₂ = k + 2.
pub fn ramanujan_residual(k: u32) -> LinComb<AWord> {
    let ik = k as i64;
    let mut x = apply_d(&g(k)) - g(k + 2).scale(&rat(ik * (ik + 3), 2));
    for k1 in (2..=k).step_by(2) {
        x.add_scaled(&prod(&g(k1), &g(k + 2 - k1)), &int(ik));
    }
    x
}

/// The Ramanujan equations at weights 4, 6, 8 and G(8) = 6/7·G(4)².
pub fn verify_ramanujan() -> Result<Vec<Check>> {
    let c = quotient_cutoff();
    let mut out = Vec::new();
    for k in [2, 4, 6] {
        out.push(check_mod_i(format!("Ramanujan DG({k})"), k + 2, &ramanujan_residual(k), c)?);
    }
    let displayed = [
        ("DG2 = 5G4 - 2G2^2", apply_d(&g(2)) - g(4).scale(&int(5)) + prod(&g(2), &g(2)).scale(&int(2)), 4),
        ("DG4 = 14G6 - 8G2G4", apply_d(&g(4)) - g(6).scale(&int(14)) + prod(&g(2), &g(4)).scale(&int(8)), 6),
        (
            "DG6 = 120/7 G4^2 - 12G2G6",
            apply_d(&g(6)) - prod(&g(4), &g(4)).scale(&rat(120, 7)) + prod(&g(2), &g(6)).scale(&int(12)),
            8,
        ),
        ("G8 = 6/7 G4^2", g(8) - prod(&g(4), &g(4)).scale(&rat(6, 7)), 8),
    ];
    for (name, x, w) in displayed {
        out.push(check_mod_i(name.to_string(), w, &x, c)?);
    }
    Ok(out)
}

/// D³G2 + 24·G2·D²G2 − 36·(DG2)² vanishes modulo 𝕀.
pub fn verify_chazy() -> Result<Check> {
    let dg = apply_d(&g(2));
    let ddg = apply_d(&dg);
    let x = apply_d(&ddg) + prod(&g(2), &ddg).scale(&int(24)) - prod(&dg, &dg).scale(&int(36));
    check_mod_i("Chazy equation".into(), 8, &x, quotient_cutoff())
}

/// [f,g]_n = Σ_{r+s=n} (−1)^r C(k+n−1,s) C(l+n−1,r) D^r f · D^s g.
pub fn rankin_cohen(f: &LinComb<AWord>, gg: &LinComb<AWord>, n: u32, k: u32, l: u32) -> Result<LinComb<AWord>> {
    for (x, w) in [(f, k), (gg, l)] {
        if !x.is_zero() && (!x.is_homogeneous() || x.max_weight() != Some(w)) {
            return Err(Error::Infeasible(format!("{x} is not homogeneous of weight {w}")));
        }
    }
    let powers = |x: &LinComb<AWord>| {
        let mut out = vec![x.clone()];
        for _ in 0..n {
            let next = apply_d(out.last().expect("nonempty"));
            out.push(next);
        }
        out
    };
    let (df, dg) = (powers(f), powers(gg));
    let (n, k, l) = (n as i64, k as i64, l as i64);
    let mut out = LinComb::zero();
    for r in 0..=n {
        let s = n - r;
        let c = sign(r) * binomial_q(k + n - 1, s) * binomial_q(l + n - 1, r);
        out.add_scaled(&prod(&df[r as usize], &dg[s as usize]), &c);
    }
    Ok(out)
}

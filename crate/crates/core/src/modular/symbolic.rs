//! Certificates in the free algebra ℚ[P, Q, R], P = G2, Q = DG2, R = D²G2.
//!
//! D acts by P ↦ Q, Q ↦ R, R ↦ 36Q² − 24PR (Chazy) and δ by P ↦ −1/2,
//! Q ↦ 2P, R ↦ 6Q, which follows from δG2 = −1/2 and [δ,D] = W.

use num_traits::{One, Zero};

use super::qmf::{monomials_of_weight, term, QmfPolynomial, DERIVATIVE_NAMES};
use super::{g, EULER_WEIGHTS_CHECKED};
use crate::arith::{bernoulli, binomial_q, factorial_q, int, rat, sign, Rational};
use crate::derivations::{apply_d, apply_delta};
use crate::error::{Error, Result};
use crate::linalg::{from_pairs, solve, SparseVec};
use crate::lincomb::LinComb;
use crate::quotient::{IdealKind, Quotient};
use crate::report::Check;
use crate::word::AWord;

fn p() -> QmfPolynomial {
    QmfPolynomial::var(0)
}

fn q() -> QmfPolynomial {
    QmfPolynomial::var(1)
}

fn r() -> QmfPolynomial {
    QmfPolynomial::var(2)
}

/// D on ℚ[P, Q, R], with D³G2 rewritten by Chazy.
pub fn d_symbolic(x: &QmfPolynomial) -> QmfPolynomial {
    let chazy = &term((36, 1), [0, 2, 0]) - &term((24, 1), [1, 0, 1]);
    x.derive(&[q(), r(), chazy])
}

/// δ on ℚ[P, Q, R].
pub fn delta_symbolic(x: &QmfPolynomial) -> QmfPolynomial {
    x.derive(&[QmfPolynomial::constant(rat(-1, 2)), p().scale(&int(2)), q().scale(&int(6))])
}

/// G(k) for even k ≥ 2 through DG(k) = k(k+3)/2·G(k+2) − k·Σ G(k₁)G(k₂).
pub fn eisenstein_symbolic(k: u32) -> Result<QmfPolynomial> {
    if k < 2 || !k.is_multiple_of(2) {
        return Err(Error::Parity(k, 0));
    }
    let mut gs: Vec<QmfPolynomial> = vec![QmfPolynomial::zero(), p()];
    for j in (2..k).step_by(2) {
        let mut rhs = d_symbolic(&gs[(j / 2) as usize]);
        for k1 in (2..=j).step_by(2) {
            let part = &gs[(k1 / 2) as usize] * &gs[((j + 2 - k1) / 2) as usize];
            rhs = &rhs + &part.scale(&int(j as i64));
        }
        let ij = j as i64;
        gs.push(rhs.scale(&rat(2, ij * (ij + 3))));
    }
    Ok(gs.swap_remove((k / 2) as usize))
}

/// G4 and G6 in terms of G2, DG2, D²G2 as displayed.
pub fn g4_displayed() -> QmfPolynomial {
    &term((1, 5), [0, 1, 0]) + &term((2, 5), [2, 0, 0])
}

pub fn g6_displayed() -> QmfPolynomial {
    &(&term((1, 70), [0, 0, 1]) + &term((6, 35), [1, 1, 0])) + &term((8, 35), [3, 0, 0])
}

/// Rewrites a polynomial in g₂, g₄, g₆ in terms of G2, DG2, D²G2.
pub fn to_derivatives(x: &QmfPolynomial) -> QmfPolynomial {
    x.substitute(&[p(), g4_displayed(), g6_displayed()])
}

/// The normalization E(k) = −2·k!/B_k·G(k).
pub fn e_normalization(k: u32) -> Rational {
    -int(2) * factorial_q(k) / bernoulli(k as usize)
}

/// Δ = 2400·6!·g₄³ − 420·7!·g₆².
pub fn delta_cusp_form() -> QmfPolynomial {
    let a = int(2400) * factorial_q(6);
    let b = int(420) * factorial_q(7);
    &QmfPolynomial::monomial([0, 3, 0], a) - &QmfPolynomial::monomial([0, 0, 2], b)
}

/// The displayed expansion of Δ/432.
pub fn delta_over_432_displayed() -> QmfPolynomial {
    QmfPolynomial::from_terms([
        ([2, 2, 0], int(48)),
        ([0, 3, 0], int(32)),
        ([3, 0, 1], int(-32)),
        ([1, 1, 1], int(-24)),
        ([0, 0, 2], int(-1)),
    ])
}

fn poly_check(name: &str, weight: u32, residual: &QmfPolynomial) -> Check {
    let passed = residual.is_zero();
    Check::new(name, weight, passed, if passed { String::new() } else { residual.display_with(DERIVATIVE_NAMES) })
}

fn words_of(x: &QmfPolynomial) -> LinComb<AWord> {
    let dg = apply_d(&g(2));
    x.expand(&[g(2), dg.clone(), apply_d(&dg)])
}

/// Certificates for Δ: coefficients, the G2⁶-free expansion, DΔ = E(2)Δ and δΔ = 0.
pub fn verify_cusp_properties() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let delta = delta_cusp_form();
    out.push(Check::equal("2400*6! coefficient", 12, &delta.coeff(&[0, 3, 0]), &int(1_728_000)));
    out.push(Check::equal("420*7! coefficient", 12, &delta.coeff(&[0, 0, 2]), &int(-2_116_800)));
    let e4 = QmfPolynomial::monomial([0, 1, 0], e_normalization(4));
    let e6 = QmfPolynomial::monomial([0, 0, 1], e_normalization(6));
    let via_e = (&e4.pow(3) - &e6.pow(2)).scale(&rat(1, 1728));
    out.push(poly_check("Δ = (E4³ - E6²)/1728", 12, &(&delta - &via_e)));

    let g4 = eisenstein_symbolic(4)?;
    let g6 = eisenstein_symbolic(6)?;
    out.push(poly_check("G4 from Ramanujan", 4, &(&g4 - &g4_displayed())));
    out.push(poly_check("G6 from Ramanujan", 6, &(&g6 - &g6_displayed())));
    let q = Quotient::global();
    for (k, x) in [(4, &g4), (6, &g6)] {
        let nf = q.normal_form(&(g(k) - words_of(x)), IdealKind::SwapIdeal, q.max_weight())?;
        out.push(Check::of(format!("G{k} expansion modulo the swap ideal"), k, &nf));
    }

    let d = to_derivatives(&delta);
    out.push(poly_check("Δ/432 expansion", 12, &(&d.scale(&rat(1, 432)) - &delta_over_432_displayed())));
    out.push(Check::equal("no G2^6 term", 12, &d.coeff(&[6, 0, 0]), &Rational::zero()));
    let e2 = p().scale(&e_normalization(2));
    out.push(poly_check("DΔ = E(2)Δ modulo Chazy", 14, &(&d_symbolic(&d) - &(&e2 * &d))));

    for k in [4, 6] {
        out.push(Check::of(format!("δG{k} = 0"), k - 2, &apply_delta(&g(k))));
        let x = eisenstein_symbolic(k)?;
        out.push(poly_check(&format!("symbolic δG{k} = 0"), k - 2, &delta_symbolic(&x)));
    }
    out.push(poly_check("δΔ = 0", 10, &delta_symbolic(&d)));
    Ok(out)
}

/// The direct check Δ ∈ 𝕀 + 𝔑 at weight 12; refused unless the quotient allows weight 12.
pub fn verify_cusp_direct(quotient: &Quotient) -> Result<Check> {
    let basis = quotient.basis(IdealKind::Combined, 12)?;
    let x = delta_cusp_form().expand(&[g(2), g(4), g(6)]);
    Ok(Check::of("Δ in the combined ideal", 12, &basis.reduce(&x)))
}

/// Rankin–Cohen bracket in ℚ[P, Q, R].
pub fn rankin_cohen_symbolic(f: &QmfPolynomial, gg: &QmfPolynomial, n: u32) -> Result<QmfPolynomial> {
    let (Some(k), Some(l)) = (f.weight(), gg.weight()) else {
        return Err(Error::Infeasible("Rankin-Cohen bracket of an inhomogeneous polynomial".into()));
    };
    let powers = |x: &QmfPolynomial| {
        let mut out = vec![x.clone()];
        for _ in 0..n {
            let next = d_symbolic(out.last().expect("nonempty"));
            out.push(next);
        }
        out
    };
    let (df, dg) = (powers(f), powers(gg));
    let (n, k, l) = (n as i64, k as i64, l as i64);
    let mut out = QmfPolynomial::zero();
    for r in 0..=n {
        let s = n - r;
        let c = sign(r) * binomial_q(k + n - 1, s) * binomial_q(l + n - 1, r);
        out = &out + &(&df[r as usize] * &dg[s as usize]).scale(&c);
    }
    Ok(out)
}

/// δ[f,g]_n = 0 for f, g among G4, G6, Δ.
pub fn verify_rc_delta_closure(n: u32) -> Result<Vec<Check>> {
    let forms =
        [("G4", eisenstein_symbolic(4)?), ("G6", eisenstein_symbolic(6)?), ("Δ", to_derivatives(&delta_cusp_form()))];
    let mut out = Vec::new();
    for (i, (a, f)) in forms.iter().enumerate() {
        for (b, gg) in &forms[i..] {
            let x = rankin_cohen_symbolic(f, gg, n)?;
            let w = x.weight().unwrap_or(0);
            out.push(poly_check(&format!("δ[{a},{b}]_{n} = 0"), w.saturating_sub(2), &delta_symbolic(&x)));
        }
    }
    Ok(out)
}

/// M_k = ℚG(k) ⊕ S_k, with π read off as the coefficient of G2^{k/2}.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition {
    pub k: u32,
    pub dim_modular: usize,
    pub dim_cusp: usize,
    /// G(k) in the monomial basis g₄^a g₆^b of M_k.
    pub eisenstein_coordinates: Vec<([u32; 3], Rational)>,
    pub pi_of_eisenstein: Rational,
    pub check: Check,
}

pub fn mk_decomposition(k: u32) -> Result<Decomposition> {
    let gk = eisenstein_symbolic(k)?;
    let monos: Vec<[u32; 3]> = monomials_of_weight(k).into_iter().filter(|e| e[0] == 0).collect();
    let images: Vec<QmfPolynomial> =
        monos.iter().map(|e| to_derivatives(&QmfPolynomial::monomial(*e, Rational::one()))).collect();
    let top = [k / 2, 0, 0];
    let all = monomials_of_weight(k);
    let vec_of = |x: &QmfPolynomial| -> SparseVec {
        from_pairs(all.iter().enumerate().map(|(i, e)| (i, x.coeff(e))).filter(|(_, c)| !c.is_zero()).collect())
    };
    let cols: Vec<SparseVec> = images.iter().map(vec_of).collect();
    let pis: Vec<Rational> = images.iter().map(|x| x.coeff(&top)).collect();
    let dim_cusp = if pis.iter().all(|c| c.is_zero()) { monos.len() } else { monos.len() - 1 };
    let pi = gk.coeff(&top);
    let name = format!("M_{k} = QG({k}) + S_{k}");
    let (coords, check) = match solve(&cols, &vec_of(&gk)) {
        Some(x) => {
            let coords: Vec<_> = monos.iter().copied().zip(x).filter(|(_, c)| !c.is_zero()).collect();
            let ok = !pi.is_zero() && dim_cusp + 1 == monos.len();
            let residual = if ok { String::new() } else { format!("π(G({k})) = {pi}, dim S = {dim_cusp}") };
            (coords, Check::new(name, k, ok, residual))
        }
        None => (Vec::new(), Check::new(name, k, false, format!("G({k}) is not in M_{k}"))),
    };
    Ok(Decomposition {
        k,
        dim_modular: monos.len(),
        dim_cusp,
        eisenstein_coordinates: coords,
        pi_of_eisenstein: pi,
        check,
    })
}

/// π(G(k)) equals the Euler coefficient for even k up to the checked weight.
pub fn verify_euler_symbolic() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for k in (2..=EULER_WEIGHTS_CHECKED).step_by(2) {
        let x = eisenstein_symbolic(k)?;
        out.push(Check::equal(
            format!("π(G({k})) = Euler coefficient"),
            k,
            &x.coeff(&[k / 2, 0, 0]),
            &super::euler_coefficient(k / 2),
        ));
    }
    Ok(out)
}

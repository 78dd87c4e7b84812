//! Truncated q-series with exact coefficients, and the realization w ↦ g(w).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::arith::{bernoulli, factorial_q, int, rat, Rational};
use crate::derivations::apply_d;
use crate::error::{Error, Result};
use crate::linalg::Echelon;
use crate::lincomb::LinComb;
use crate::qshuffle::stuffle_lc;
use crate::report::Check;
use crate::swap::swap;
use crate::word::{words_of_weight, AWord, Letter};

/// Σ_{n ≤ N} c_n qⁿ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QSeries {
    coeffs: Vec<Rational>,
}

impl QSeries {
    pub fn zero(order: usize) -> Self {
        QSeries { coeffs: vec![Rational::zero(); order + 1] }
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a q-series keeps at least the constant term");
        QSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Rational {
        self.coeffs.get(n).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        QSeries { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::constant(Rational::one(), self.order()), |acc, _| &acc * self)
    }

    /// q·d/dq.
    pub fn q_derivative(&self) -> Self {
        QSeries { coeffs: self.coeffs.iter().enumerate().map(|(n, c)| c * int(n as i64)).collect() }
    }

    /// The truncation to a lower order.
    pub fn truncate(&self, order: usize) -> Self {
        QSeries { coeffs: (0..=order).map(|n| self.coeff(n)).collect() }
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, c) in self.coeffs.iter().enumerate() {
            writeln!(f, "{n}: {}", crate::arith::fmt_rational(c))?;
        }
        Ok(())
    }
}

fn common(a: &QSeries, b: &QSeries) -> usize {
    a.order().min(b.order())
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, o: &QSeries) -> QSeries {
        QSeries { coeffs: (0..=common(self, o)).map(|n| &self.coeffs[n] + &o.coeffs[n]).collect() }
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, o: &QSeries) -> QSeries {
        QSeries { coeffs: (0..=common(self, o)).map(|n| &self.coeffs[n] - &o.coeffs[n]).collect() }
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        self.scale(&int(-1))
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, o: &QSeries) -> QSeries {
        let n = common(self, o);
        let mut out = QSeries::zero(n);
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(n + 1 - i) {
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for QSeries {
            type Output = QSeries;
            fn $m(self, o: QSeries) -> QSeries {
                (&self).$m(&o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

/// Σ_{n>0} n^{k−1} m^d/(k−1)! q^{mn} for fixed m.
fn letter_series(l: &Letter, m: usize, order: usize) -> QSeries {
    let mut s = QSeries::zero(order);
    let base = int(m as i64).pow(l.d() as i32) / factorial_q(l.k() - 1);
    let mut n = 1;
    while m * n <= order {
        s.coeffs[m * n] += &base * int(n as i64).pow(l.k() as i32 - 1);
        n += 1;
    }
    s
}

/// g[k₁,…,k_r; d₁,…,d_r] to order N: the sum over m₁ > … > m_r > 0 and n_i > 0.
pub fn g_series(w: &AWord, order: usize) -> QSeries {
    // tail[m] = the series of the remaining letters with all m's below m
    let mut tail: Vec<QSeries> = vec![QSeries::constant(Rational::one(), order); order + 2];
    for l in w.letters().iter().rev() {
        let mut next = vec![QSeries::zero(order); order + 2];
        for m in 1..=order {
            let here = &letter_series(l, m, order) * &tail[m];
            next[m + 1] = &next[m] + &here;
        }
        tail = next;
    }
    tail.swap_remove(order + 1)
}

/// The linear extension of [`g_series`].
pub fn g_series_lc(x: &LinComb<AWord>, order: usize) -> QSeries {
    let mut out = QSeries::zero(order);
    for (w, c) in x.iter() {
        out = &out + &g_series(w, order).scale(c);
    }
    out
}

/// G(k) = −B_k/(2k!) + 1/(k−1)!·Σ_{m,n≥1} m^{k−1} q^{mn}.
pub fn eisenstein_g(k: u32, order: usize) -> Result<QSeries> {
    if k < 2 {
        return Err(Error::InvalidLetter { k: k as i64, d: 0 });
    }
    let mut s = QSeries::constant(-bernoulli(k as usize) / (int(2) * factorial_q(k)), order);
    for m in 1..=order {
        let c = int(m as i64).pow(k as i32 - 1) / factorial_q(k - 1);
        let mut n = 1;
        while m * n <= order {
            s.coeffs[m * n] += &c;
            n += 1;
        }
    }
    Ok(s)
}

/// E(k) = −2k!/B_k·G(k), with constant term 1.
pub fn eisenstein_e(k: u32, order: usize) -> Result<QSeries> {
    Ok(eisenstein_g(k, order)?.scale(&(-int(2) * factorial_q(k) / bernoulli(k as usize))))
}

/// q∏_{n≥1}(1−qⁿ)²⁴.
pub fn eta_product_delta(order: usize) -> QSeries {
    let mut s = QSeries::constant(Rational::one(), order);
    for n in 1..=order {
        let mut f = QSeries::constant(Rational::one(), order);
        f.coeffs[n] = int(-1);
        s = &s * &f.pow(24);
    }
    let mut shifted = QSeries::zero(order);
    for n in 1..=order {
        shifted.coeffs[n] = s.coeff(n - 1);
    }
    shifted
}

fn series_check(name: &str, weight: u32, x: &QSeries) -> Check {
    let passed = x.is_zero();
    let residual = if passed {
        String::new()
    } else {
        x.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(n, c)| format!("q^{n}: {c}"))
            .take(5)
            .collect::<Vec<_>>()
            .join(", ")
    };
    Check::new(name, weight, passed, residual)
}

/// g(σw) = g(w) to order N for every word of weight ≤ max_weight.
pub fn check_swap_invariance(max_weight: u32, order: usize) -> Check {
    let mut failures = Vec::new();
    for k in 0..=max_weight {
        for w in words_of_weight::<Letter>(k) {
            let x = LinComb::single(w.clone());
            if g_series_lc(&swap(&x), order) != g_series(&w, order) {
                failures.push(w.to_string());
            }
        }
    }
    Check::new(
        format!("swap invariance of g to weight {max_weight}"),
        max_weight,
        failures.is_empty(),
        failures.join(", "),
    )
}

/// q·d/dq g(w) = g(Dw) to order N for every word of weight ≤ max_weight.
pub fn check_d_intertwining(max_weight: u32, order: usize) -> Check {
    let mut failures = Vec::new();
    for k in 0..=max_weight {
        for w in words_of_weight::<Letter>(k) {
            let x = LinComb::single(w.clone());
            if g_series_lc(&apply_d(&x), order) != g_series(&w, order).q_derivative() {
                failures.push(w.to_string());
            }
        }
    }
    Check::new(
        format!("g o D = q d/dq o g to weight {max_weight}"),
        max_weight + 2,
        failures.is_empty(),
        failures.join(", "),
    )
}

/// g[k;d] = d!/(k−1)!·g[d+1;k−1] for k + d ≤ max_weight.
pub fn check_depth_one_symmetry(max_weight: u32, order: usize) -> Check {
    let mut failures = Vec::new();
    for k in 1..=max_weight {
        for d in 0..=max_weight - k {
            let lhs = g_series(&AWord::from_kd(&[k], &[d]), order);
            let rhs =
                g_series(&AWord::from_kd(&[d + 1], &[k - 1]), order).scale(&(factorial_q(d) / factorial_q(k - 1)));
            if lhs != rhs {
                failures.push(format!("[{k};{d}]"));
            }
        }
    }
    Check::new("depth-one symmetry of g", max_weight, failures.is_empty(), failures.join(", "))
}

/// g[2;1]g[3;2] = g[2,3;1,2] + g[3,2;2,1] + g[5;3] − 1/12·g[3;3], and the
/// formal stuffle misses exactly the lower-weight term.
pub fn check_lower_weight_stuffle(order: usize) -> Vec<Check> {
    let a = AWord::from_kd(&[2], &[1]);
    let b = AWord::from_kd(&[3], &[2]);
    let product = &g_series(&a, order) * &g_series(&b, order);
    let rhs = LinComb::from_terms([
        (AWord::from_kd(&[2, 3], &[1, 2]), int(1)),
        (AWord::from_kd(&[3, 2], &[2, 1]), int(1)),
        (AWord::from_kd(&[5], &[3]), int(1)),
        (AWord::from_kd(&[3], &[3]), rat(-1, 12)),
    ]);
    let formal = stuffle_lc(&LinComb::single(a), &LinComb::single(b));
    let defect = &g_series_lc(&formal, order) - &product;
    let lower = g_series(&AWord::from_kd(&[3], &[3]), order).scale(&rat(1, 12));
    vec![
        series_check("g[2;1]g[3;2] product formula", 8, &(&product - &g_series_lc(&rhs, order))),
        series_check("stuffle defect is 1/12 g[3;3]", 8, &(&defect - &lower)),
    ]
}

/// Ramanujan, Chazy, G(8) = 6/7·G(4)² and (E₄³ − E₆²)/1728 = q∏(1−qⁿ)²⁴ to order N.
pub fn check_quasimodular(order: usize) -> Result<Vec<Check>> {
    let g = |k| eisenstein_g(k, order);
    let (g2, g4, g6, g8) = (g(2)?, g(4)?, g(6)?, g(8)?);
    let d = |x: &QSeries| x.q_derivative();
    let c = |n: i64, d: i64| rat(n, d);
    let mut out = vec![
        series_check("DG2 = 5G4 - 2G2^2", 4, &(&(&d(&g2) - &g4.scale(&c(5, 1))) + &(&g2 * &g2).scale(&c(2, 1)))),
        series_check("DG4 = 14G6 - 8G2G4", 6, &(&(&d(&g4) - &g6.scale(&c(14, 1))) + &(&g2 * &g4).scale(&c(8, 1)))),
        series_check(
            "DG6 = 120/7 G4^2 - 12G2G6",
            8,
            &(&(&d(&g6) - &(&g4 * &g4).scale(&c(120, 7))) + &(&g2 * &g6).scale(&c(12, 1))),
        ),
        series_check("G8 = 6/7 G4^2", 8, &(&g8 - &(&g4 * &g4).scale(&c(6, 7)))),
    ];
    let (dg, ddg) = (d(&g2), d(&d(&g2)));
    let chazy = &(&d(&ddg) + &(&g2 * &ddg).scale(&c(24, 1))) - &(&dg * &dg).scale(&c(36, 1));
    out.push(series_check("Chazy equation", 8, &chazy));
    let (e4, e6) = (eisenstein_e(4, order)?, eisenstein_e(6, order)?);
    let delta = (&e4.pow(3) - &e6.pow(2)).scale(&c(1, 1728));
    out.push(series_check("(E4^3 - E6^2)/1728 = eta product", 12, &(&delta - &eta_product_delta(order))));
    Ok(out)
}

/// Rank of the coefficient matrix of G(2), G(4), G(6) at q¹, q², q³.
pub fn independence_witness_rank() -> Result<usize> {
    let rows: Vec<_> = [2, 4, 6]
        .iter()
        .map(|&k| {
            let s = eisenstein_g(k, 3)?;
            Ok(crate::linalg::from_pairs((1..=3).map(|n| (n - 1, s.coeff(n))).filter(|(_, c)| !c.is_zero()).collect()))
        })
        .collect::<Result<_>>()?;
    Ok(Echelon::from_spanning_rows(&rows, 3).rank())
}

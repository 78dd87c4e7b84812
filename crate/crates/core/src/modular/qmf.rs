//! Polynomials in three commuting generators of weights 2, 4, 6.
//!
//! Read either as ℚ[g₂, g₄, g₆] (images G(2), G(4), G(6)) or as the free
//! algebra ℚ[P, Q, R] with P = G(2), Q = DG(2), R = D²G(2).

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::arith::{fmt_rational, int, rat, Rational};
use crate::lincomb::LinComb;
use crate::qshuffle::stuffle_lc;
use crate::word::AWord;

pub type Exps = [u32; 3];

pub const WEIGHTS: [u32; 3] = [2, 4, 6];
pub const EISENSTEIN_NAMES: [&str; 3] = ["g2", "g4", "g6"];
pub const DERIVATIVE_NAMES: [&str; 3] = ["G2", "DG2", "D²G2"];

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct QmfPolynomial {
    terms: BTreeMap<Exps, Rational>,
}

pub fn weight_of(e: &Exps) -> u32 {
    e.iter().zip(WEIGHTS).map(|(a, w)| a * w).sum()
}

/// Exponent vectors of total weight `k`, in increasing lexicographic order.
pub fn monomials_of_weight(k: u32) -> Vec<Exps> {
    let mut out = Vec::new();
    if !k.is_multiple_of(2) {
        return out;
    }
    for c in 0..=k / 6 {
        for b in 0..=(k - 6 * c) / 4 {
            let rest = k - 6 * c - 4 * b;
            out.push([rest / 2, b, c]);
        }
    }
    out.sort();
    out
}

impl QmfPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial([0, 0, 0], c)
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        Self::monomial(e, Rational::one())
    }

    pub fn monomial(e: Exps, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Exps, Rational)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: Exps, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn coeff(&self, e: &Exps) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Exps, &Rational)> {
        self.terms.iter()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, x)| (*e, x * c)))
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// The weight if homogeneous; 0 for the zero polynomial.
    pub fn weight(&self) -> Option<u32> {
        let mut ws = self.terms.keys().map(weight_of);
        let first = ws.next().unwrap_or(0);
        ws.all(|w| w == first).then_some(first)
    }

    /// The derivation sending the i-th generator to `images[i]`.
    pub fn derive(&self, images: &[QmfPolynomial; 3]) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            for i in 0..3 {
                if e[i] == 0 {
                    continue;
                }
                let mut f = *e;
                f[i] -= 1;
                let part = &Self::monomial(f, c * int(e[i] as i64)) * &images[i];
                out = &out + &part;
            }
        }
        out
    }

    /// The ring homomorphism sending the i-th generator to `images[i]`.
    pub fn substitute(&self, images: &[QmfPolynomial; 3]) -> Self {
        let mut cache: HashMap<(usize, u32), QmfPolynomial> = HashMap::new();
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let mut m = Self::constant(c.clone());
            for i in 0..3 {
                let p = cache.entry((i, e[i])).or_insert_with(|| images[i].pow(e[i]));
                m = &m * p;
            }
            out = &out + &m;
        }
        out
    }

    /// Expansion into words, the generators mapped to `images`, products by stuffle.
    pub fn expand(&self, images: &[LinComb<AWord>; 3]) -> LinComb<AWord> {
        let mut powers: HashMap<(usize, u32), LinComb<AWord>> = HashMap::new();
        let mut out = LinComb::zero();
        for (e, c) in &self.terms {
            let mut m = LinComb::one();
            for i in 0..3 {
                let p = powers
                    .entry((i, e[i]))
                    .or_insert_with(|| (0..e[i]).fold(LinComb::one(), |acc, _| stuffle_lc(&acc, &images[i])));
                m = stuffle_lc(&m, p);
            }
            out.add_scaled(&m, c);
        }
        out
    }

    pub fn display_with(&self, names: [&str; 3]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = (0..3)
                .filter(|&i| e[i] > 0)
                .map(|i| if e[i] == 1 { names[i].to_string() } else { format!("{}^{}", names[i], e[i]) })
                .collect();
            let coeff = fmt_rational(c);
            parts.push(match (mono.is_empty(), coeff.as_str()) {
                (true, _) => coeff,
                (false, "1") => mono.join("*"),
                (false, "-1") => format!("-{}", mono.join("*")),
                _ => format!("{coeff}*{}", mono.join("*")),
            });
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

impl fmt::Display for QmfPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(EISENSTEIN_NAMES))
    }
}

impl Add for &QmfPolynomial {
    type Output = QmfPolynomial;
    fn add(self, o: &QmfPolynomial) -> QmfPolynomial {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &QmfPolynomial {
    type Output = QmfPolynomial;
    fn sub(self, o: &QmfPolynomial) -> QmfPolynomial {
        self + &(-o)
    }
}

impl Neg for &QmfPolynomial {
    type Output = QmfPolynomial;
    fn neg(self) -> QmfPolynomial {
        self.scale(&int(-1))
    }
}

impl Mul for &QmfPolynomial {
    type Output = QmfPolynomial;
    fn mul(self, o: &QmfPolynomial) -> QmfPolynomial {
        let mut out = QmfPolynomial::zero();
        for (e, c) in &self.terms {
            for (f, d) in &o.terms {
                out.add_term([e[0] + f[0], e[1] + f[1], e[2] + f[2]], c * d);
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for QmfPolynomial {
            type Output = QmfPolynomial;
            fn $m(self, o: QmfPolynomial) -> QmfPolynomial {
                (&self).$m(&o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

/// `c·x^e` as a shorthand for building displays.
pub fn term(c: (i64, i64), e: Exps) -> QmfPolynomial {
    QmfPolynomial::monomial(e, rat(c.0, c.1))
}

//! Sparse multivariate polynomials over a coefficient ring.
//!
//! Depth-`r` generating series use `2r` variables interleaved as
//! `X_1, Y_1, X_2, Y_2, ...`; see [`xvar`] and [`yvar`].

use std::collections::BTreeMap;

use smallvec::SmallVec;

use crate::arith::{int, Rational};
use crate::ring::{CoeffRing, RationalField};

pub type Exps = SmallVec<[u16; 16]>;

/// Index of `X_i` (1-based) among the interleaved variables.
pub fn xvar(i: usize) -> usize {
    2 * (i - 1)
}

/// Index of `Y_i` (1-based) among the interleaved variables.
pub fn yvar(i: usize) -> usize {
    2 * (i - 1) + 1
}

/// A linear form `sum c_v v` with integer coefficients.
pub type LinearForm = Vec<(usize, i64)>;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly<E> {
    nvars: usize,
    terms: BTreeMap<Exps, E>,
}

pub type QPoly = Poly<Rational>;

fn degree(e: &Exps) -> u32 {
    e.iter().map(|&x| x as u32).sum()
}

impl<E: Clone + PartialEq + std::fmt::Debug> Poly<E> {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn constant<R: CoeffRing<Elem = E>>(ring: &R, nvars: usize, c: E) -> Self {
        Self::monomial(ring, nvars, Exps::from_elem(0, nvars), c)
    }

    pub fn monomial<R: CoeffRing<Elem = E>>(ring: &R, nvars: usize, exps: Exps, c: E) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = Self::zero(nvars);
        if !ring.is_zero(&c) {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn var<R: CoeffRing<Elem = E>>(ring: &R, nvars: usize, v: usize) -> Self {
        let mut e = Exps::from_elem(0, nvars);
        e[v] = 1;
        Self::monomial(ring, nvars, e, ring.one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Exps, &E)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff<R: CoeffRing<Elem = E>>(&self, ring: &R, e: &Exps) -> E {
        self.terms.get(e).cloned().unwrap_or_else(|| ring.zero())
    }

    pub fn add_term<R: CoeffRing<Elem = E>>(&mut self, ring: &R, e: Exps, c: E) {
        debug_assert_eq!(e.len(), self.nvars);
        if ring.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(x) => {
                *x = ring.add(x, &c);
                if ring.is_zero(x) {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn add<R: CoeffRing<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(ring, e.clone(), c.clone());
        }
        out
    }

    pub fn neg<R: CoeffRing<Elem = E>>(&self, ring: &R) -> Self {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), ring.neg(c))).collect() }
    }

    pub fn sub<R: CoeffRing<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        self.add(ring, &other.neg(ring))
    }

    pub fn scale<R: CoeffRing<Elem = E>>(&self, ring: &R, c: &E) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, a) in &self.terms {
            out.add_term(ring, e.clone(), ring.mul(a, c));
        }
        out
    }

    /// Product, dropping monomials of total degree above `max_deg`.
    pub fn mul<R: CoeffRing<Elem = E>>(&self, ring: &R, other: &Self, max_deg: Option<u32>) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            let d1 = degree(e1);
            for (e2, c2) in &other.terms {
                if let Some(m) = max_deg {
                    if d1 + degree(e2) > m {
                        continue;
                    }
                }
                let e: Exps = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(ring, e, ring.mul(c1, c2));
            }
        }
        out
    }

    pub fn truncate(&self, max_deg: u32) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| degree(e) <= max_deg)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(degree).max()
    }

    /// Homogeneous part of the given total degree.
    pub fn degree_part(&self, deg: u32) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(e, _)| degree(e) == deg).map(|(e, c)| (e.clone(), c.clone())).collect(),
        }
    }

    /// Re-embeds into `nvars` variables, placing variable `i` at `i + offset`.
    pub fn shift(&self, offset: usize, nvars: usize) -> Self {
        assert!(self.nvars + offset <= nvars);
        let mut out = Self::zero(nvars);
        for (e, c) in &self.terms {
            let mut f = Exps::from_elem(0, nvars);
            f[offset..offset + self.nvars].copy_from_slice(e);
            out.terms.insert(f, c.clone());
        }
        out
    }

    /// Substitutes variable `i` by the linear form `images[i]` in `nvars` new variables.
    pub fn substitute<R: CoeffRing<Elem = E>>(&self, ring: &R, images: &[LinearForm], nvars: usize) -> Self {
        assert_eq!(images.len(), self.nvars);
        let mut cache = PowerCache::new(images, nvars);
        let mut out = Self::zero(nvars);
        for (e, c) in &self.terms {
            let expanded = cache.monomial(e);
            for (f, q) in expanded.iter() {
                out.add_term(ring, f.clone(), ring.scale(q, c));
            }
        }
        out
    }

    pub fn map_coeffs<F: Clone + PartialEq + std::fmt::Debug, S: CoeffRing<Elem = F>>(
        &self,
        target: &S,
        mut f: impl FnMut(&E) -> F,
    ) -> Poly<F> {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(target, e.clone(), f(c));
        }
        out
    }
}

/// Memoized powers of linear forms, for repeated substitutions.
pub struct PowerCache<'a> {
    images: &'a [LinearForm],
    nvars: usize,
    powers: Vec<Vec<QPoly>>,
}

impl<'a> PowerCache<'a> {
    pub fn new(images: &'a [LinearForm], nvars: usize) -> Self {
        let powers = images.iter().map(|_| vec![QPoly::constant(&RationalField, nvars, int(1))]).collect();
        PowerCache { images, nvars, powers }
    }

    fn power(&mut self, i: usize, n: usize) -> &QPoly {
        while self.powers[i].len() <= n {
            let mut lin = QPoly::zero(self.nvars);
            for &(v, c) in &self.images[i] {
                lin =
                    lin.add(&RationalField, &QPoly::var(&RationalField, self.nvars, v).scale(&RationalField, &int(c)));
            }
            let next = self.powers[i].last().unwrap().mul(&RationalField, &lin, None);
            self.powers[i].push(next);
        }
        &self.powers[i][n]
    }

    /// The image of the monomial with exponents `e`.
    pub fn monomial(&mut self, e: &Exps) -> QPoly {
        let mut acc = QPoly::constant(&RationalField, self.nvars, int(1));
        for (i, &n) in e.iter().enumerate() {
            if n > 0 {
                let p = self.power(i, n as usize).clone();
                acc = acc.mul(&RationalField, &p, None);
            }
        }
        acc
    }
}

//! Sparse finite linear combinations of words with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

use crate::arith::{fmt_rational, Rational};
use crate::word::{Symbol, Word};

/// A formal sum `sum c_w w`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinComb<T: Ord> {
    terms: BTreeMap<T, Rational>,
}

impl<T: Ord> Default for LinComb<T> {
    fn default() -> Self {
        LinComb { terms: BTreeMap::new() }
    }
}

impl<T: Ord + Clone> LinComb<T> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_term(t: T, c: Rational) -> Self {
        let mut x = Self::zero();
        x.add_term(t, c);
        x
    }

    pub fn single(t: T) -> Self {
        Self::from_term(t, Rational::one())
    }

    pub fn from_terms(it: impl IntoIterator<Item = (T, Rational)>) -> Self {
        let mut x = Self::zero();
        for (t, c) in it {
            x.add_term(t, c);
        }
        x
    }

    pub fn add_term(&mut self, t: T, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(t) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (t, a) in &other.terms {
            self.add_term(t.clone(), a * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LinComb { terms: self.terms.iter().map(|(t, a)| (t.clone(), a * c)).collect() }
    }

    pub fn coeff(&self, t: &T) -> Rational {
        self.terms.get(t).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&T, &Rational)> {
        self.terms.iter()
    }

    pub fn terms(&self) -> impl Iterator<Item = &T> {
        self.terms.keys()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (T, Rational)> {
        self.terms.into_iter()
    }

    /// Applies a linear map given on basis elements.
    pub fn map_linear<U: Ord + Clone>(&self, mut f: impl FnMut(&T) -> LinComb<U>) -> LinComb<U> {
        let mut out = LinComb::zero();
        for (t, c) in &self.terms {
            out.add_scaled(&f(t), c);
        }
        out
    }

    /// Bilinear extension of a map on pairs of basis elements.
    pub fn map_bilinear<U: Ord + Clone, V: Ord + Clone>(
        &self,
        other: &LinComb<U>,
        mut f: impl FnMut(&T, &U) -> LinComb<V>,
    ) -> LinComb<V> {
        let mut out = LinComb::zero();
        for (t, a) in &self.terms {
            for (u, b) in other.iter() {
                out.add_scaled(&f(t, u), &(a * b));
            }
        }
        out
    }

    pub fn filter(&self, mut keep: impl FnMut(&T) -> bool) -> Self {
        LinComb { terms: self.terms.iter().filter(|(t, _)| keep(t)).map(|(t, c)| (t.clone(), c.clone())).collect() }
    }

    pub fn max_abs_coeff(&self) -> Rational {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_else(Rational::zero)
    }
}

impl<L: Symbol> LinComb<Word<L>> {
    /// The unit, i.e. the empty word with coefficient 1.
    pub fn one() -> Self {
        Self::single(Word::empty())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_term(Word::empty(), c)
    }

    pub fn homogeneous_component(&self, weight: u32) -> Self {
        self.filter(|w| w.weight() == weight)
    }

    /// Weights occurring in the support, ascending.
    pub fn weights(&self) -> Vec<u32> {
        let mut ws: Vec<u32> = self.terms.keys().map(|w| w.weight()).collect();
        ws.sort_unstable();
        ws.dedup();
        ws
    }

    pub fn max_weight(&self) -> Option<u32> {
        self.terms.keys().map(|w| w.weight()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.weights().len() <= 1
    }

    /// Concatenates `prefix` in front of every word.
    pub fn prepend(&self, prefix: &L) -> Self {
        LinComb { terms: self.terms.iter().map(|(w, c)| (w.prepend(prefix), c.clone())).collect() }
    }

    /// Concatenation product extended bilinearly.
    pub fn concat(&self, other: &Self) -> Self {
        self.map_bilinear(other, |u, v| LinComb::single(u.concat(v)))
    }
}

impl<T: Ord + Clone> AddAssign<&LinComb<T>> for LinComb<T> {
    fn add_assign(&mut self, rhs: &LinComb<T>) {
        for (t, c) in &rhs.terms {
            self.add_term(t.clone(), c.clone());
        }
    }
}

impl<T: Ord + Clone> SubAssign<&LinComb<T>> for LinComb<T> {
    fn sub_assign(&mut self, rhs: &LinComb<T>) {
        for (t, c) in &rhs.terms {
            self.add_term(t.clone(), -c);
        }
    }
}

impl<T: Ord + Clone> Add for &LinComb<T> {
    type Output = LinComb<T>;
    fn add(self, rhs: &LinComb<T>) -> LinComb<T> {
        let mut x = self.clone();
        x += rhs;
        x
    }
}

impl<T: Ord + Clone> Sub for &LinComb<T> {
    type Output = LinComb<T>;
    fn sub(self, rhs: &LinComb<T>) -> LinComb<T> {
        let mut x = self.clone();
        x -= rhs;
        x
    }
}

impl<T: Ord + Clone> Add for LinComb<T> {
    type Output = LinComb<T>;
    fn add(mut self, rhs: LinComb<T>) -> LinComb<T> {
        self += &rhs;
        self
    }
}

impl<T: Ord + Clone> Sub for LinComb<T> {
    type Output = LinComb<T>;
    fn sub(mut self, rhs: LinComb<T>) -> LinComb<T> {
        self -= &rhs;
        self
    }
}

impl<T: Ord + Clone> Neg for LinComb<T> {
    type Output = LinComb<T>;
    fn neg(self) -> LinComb<T> {
        LinComb { terms: self.terms.into_iter().map(|(t, c)| (t, -c)).collect() }
    }
}

impl<T: Ord + Clone> Mul<&Rational> for &LinComb<T> {
    type Output = LinComb<T>;
    fn mul(self, c: &Rational) -> LinComb<T> {
        self.scale(c)
    }
}

impl<T: Ord + Clone> FromIterator<(T, Rational)> for LinComb<T> {
    fn from_iter<I: IntoIterator<Item = (T, Rational)>>(iter: I) -> Self {
        Self::from_terms(iter)
    }
}

/// Renders `c1*w1 + c2*w2 - ...` in canonical order; `0` when empty.
impl<T: Ord + Clone + fmt::Display> fmt::Display for LinComb<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (t, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let ts = t.to_string();
            if ts == "1" {
                write!(f, "{}", fmt_rational(&a))?;
            } else if a.is_one() {
                write!(f, "{ts}")?;
            } else {
                write!(f, "{}*{ts}", fmt_rational(&a))?;
            }
        }
        Ok(())
    }
}

impl<T: Ord + Clone + fmt::Display> fmt::Debug for LinComb<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

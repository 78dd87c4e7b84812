//! Commutative unital coefficient rings, passed around as ring objects.

use std::fmt::Debug;

use num_traits::{One, Zero};

use crate::arith::Rational;

/// A commutative unital ℚ-algebra whose elements compare exactly.
///
/// Ring structure lives on the ring object so that rings with runtime data
/// (for example a truncated quotient of formal multiple zeta values) fit the
/// same interface as ℚ.
pub trait CoeffRing: Clone + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_rational(&self, q: &Rational) -> Self::Elem;
    /// Multiplicative inverse, if `a` is a unit.
    fn inverse(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn scale(&self, q: &Rational, a: &Self::Elem) -> Self::Elem {
        self.mul(&self.from_rational(q), a)
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn pow(&self, a: &Self::Elem, n: u32) -> Self::Elem {
        (0..n).fold(self.one(), |acc, _| self.mul(&acc, a))
    }
}

/// The field ℚ.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RationalField;

impl CoeffRing for RationalField {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn from_rational(&self, q: &Rational) -> Rational {
        q.clone()
    }
    fn inverse(&self, a: &Rational) -> Option<Rational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
}

/// Checks the commutative ring axioms on the given sample elements.
pub fn check_ring_axioms<R: CoeffRing>(ring: &R, samples: &[R::Elem]) -> bool {
    let one = ring.one();
    let zero = ring.zero();
    for a in samples {
        if ring.mul(a, &one) != *a || ring.add(a, &zero) != *a {
            return false;
        }
        if !ring.is_zero(&ring.add(a, &ring.neg(a))) {
            return false;
        }
        for b in samples {
            if ring.mul(a, b) != ring.mul(b, a) || ring.add(a, b) != ring.add(b, a) {
                return false;
            }
            for c in samples {
                if ring.mul(&ring.mul(a, b), c) != ring.mul(a, &ring.mul(b, c)) {
                    return false;
                }
                let lhs = ring.mul(a, &ring.add(b, c));
                let rhs = ring.add(&ring.mul(a, b), &ring.mul(a, c));
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn rationals_form_a_ring() {
        let s = vec![rat(1, 2), rat(-3, 7), rat(0, 1), rat(5, 1)];
        assert!(check_ring_axioms(&RationalField, &s));
        assert_eq!(RationalField.inverse(&rat(2, 3)), Some(rat(3, 2)));
        assert_eq!(RationalField.inverse(&rat(0, 1)), None);
    }
}

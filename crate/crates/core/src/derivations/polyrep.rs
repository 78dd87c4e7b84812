//! `x = sum_i f_i ∗ a^{∗i}` with `d(f_i) = 0`, for a locally nilpotent
//! derivation `d` with `d(a) = 1`.

use crate::arith::{factorial_q, int};
use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::qshuffle::stuffle_product;
use crate::word::AWord;

use super::Op;

/// The pairs `(f_i, i)` with `f_i != 0`, by decreasing `i`.
pub fn polynomial_representation(x: &LinComb<AWord>, d: &Op, a: &LinComb<AWord>) -> Result<Vec<(LinComb<AWord>, u32)>> {
    if d.apply(a) != LinComb::one() {
        return Err(Error::Hypothesis("d(a) = 1".into(), a.to_string()));
    }
    if d.weight_shift() >= 0 {
        return Err(Error::Hypothesis("d lowers the weight".into(), d.name().to_string()));
    }
    let prod = stuffle_product();
    let mut rest = x.clone();
    let mut out = Vec::new();
    while !rest.is_zero() {
        let mut powers = vec![rest.clone()];
        loop {
            let next = d.apply(powers.last().unwrap());
            if next.is_zero() {
                break;
            }
            powers.push(next);
        }
        let p = powers.len() - 1;
        let f = powers[p].scale(&(int(1) / factorial_q(p as u32)));
        rest -= &prod.product(&f, &prod.power(a, p as u32));
        out.push((f, p as u32));
    }
    Ok(out)
}

/// `sum_i f_i ∗ a^{∗i}`.
pub fn reconstruct(parts: &[(LinComb<AWord>, u32)], a: &LinComb<AWord>) -> LinComb<AWord> {
    let prod = stuffle_product();
    let mut out = LinComb::zero();
    for (f, p) in parts {
        out += &prod.product(f, &prod.power(a, *p));
    }
    out
}

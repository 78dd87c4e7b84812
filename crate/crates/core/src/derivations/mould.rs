//! Mould-level operators `P(X,Y)·φ_{j_1}^±...φ_{j_c}^±` and the linear maps
//! they induce on words.
//!
//! `(φ_j^+ f)_r = f_{r-1}(p_j X, c_{j,j+1} Y)` and
//! `(φ_j^- f)_r = f_{r-1}(p_j X, c_{j-1,j} Y)`, where `p_j` drops `X_j`,
//! `c_{i,i+1}` merges `Y_i + Y_{i+1}` into position `i`, and `Y_{r+1} = 0`.
//! The word map sends `w` to `sum_v [m_w](ρ m_v) v`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use dashmap::DashMap;

use crate::arith::{factorial_q, int, rat, Rational};
use crate::lincomb::LinComb;
use crate::poly::{xvar, yvar, LinearForm, PowerCache, QPoly};
use crate::ring::RationalField;
use crate::swap::{exps_of, word_of_exps};
use crate::word::{awords_of, AWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Phi {
    Plus(usize),
    Minus(usize),
}

/// One summand `poly · chain` of a mould operator at a fixed depth.
#[derive(Clone, Debug)]
pub struct MouldTerm {
    pub poly: QPoly,
    pub chain: Vec<Phi>,
}

/// A mould operator given by its summands at each depth `r`.
#[derive(Clone, Copy)]
pub struct MouldOperator {
    pub name: &'static str,
    pub weight_shift: i32,
    pub terms: fn(usize) -> Vec<MouldTerm>,
}

/// Images, in the variables of the `r`-tuple, of the variables of the tuple
/// obtained after applying `chain`; `None` if some `φ` is undefined.
pub fn chain_forms(r: usize, chain: &[Phi]) -> Option<Vec<LinearForm>> {
    let mut xs: Vec<LinearForm> = (1..=r).map(|i| vec![(xvar(i), 1)]).collect();
    let mut ys: Vec<LinearForm> = (1..=r).map(|i| vec![(yvar(i), 1)]).collect();
    for phi in chain {
        let m = xs.len();
        match *phi {
            Phi::Plus(j) => {
                if j < 1 || j > m {
                    return None;
                }
                xs.remove(j - 1);
                if j < m {
                    let merged = [ys[j - 1].clone(), ys[j].clone()].concat();
                    ys.splice(j - 1..j + 1, [merged]);
                } else {
                    ys.pop();
                }
            }
            Phi::Minus(j) => {
                if j < 2 || j > m {
                    return None;
                }
                xs.remove(j - 1);
                let merged = [ys[j - 2].clone(), ys[j - 1].clone()].concat();
                ys.splice(j - 2..j, [merged]);
            }
        }
    }
    let m = xs.len();
    let mut images = vec![Vec::new(); 2 * m];
    for i in 1..=m {
        images[xvar(i)] = xs[i - 1].clone();
        images[yvar(i)] = ys[i - 1].clone();
    }
    Some(images)
}

/// The linear form `sum c·v` in depth `r`, with `X_i`, `Y_i` for `i > r` set to 0.
/// Variables are given as `(is_y, index, coefficient)`.
pub fn linear(r: usize, parts: &[(bool, usize, i64)]) -> QPoly {
    let f = RationalField;
    let mut p = QPoly::zero(2 * r);
    for &(is_y, i, c) in parts {
        if i >= 1 && i <= r {
            let v = if is_y { yvar(i) } else { xvar(i) };
            p = p.add(&f, &QPoly::var(&f, 2 * r, v).scale(&f, &int(c)));
        }
    }
    p
}

fn constant(r: usize, c: Rational) -> QPoly {
    QPoly::constant(&RationalField, 2 * r, c)
}

fn square(p: &QPoly) -> QPoly {
    p.mul(&RationalField, p, None)
}

fn scaled(p: QPoly, c: Rational) -> QPoly {
    p.scale(&RationalField, &c)
}

type Table = HashMap<AWord, LinComb<AWord>>;
type TableKey = (&'static str, usize, u32);

fn tables() -> &'static DashMap<TableKey, Arc<Table>> {
    static CELL: OnceLock<DashMap<TableKey, Arc<Table>>> = OnceLock::new();
    CELL.get_or_init(DashMap::new)
}

fn build_table(op: &MouldOperator, r: usize, weight: u32) -> Table {
    let mut table: Table = HashMap::new();
    for term in (op.terms)(r) {
        if term.poly.is_zero() {
            continue;
        }
        let Some(images) = chain_forms(r, &term.chain) else { continue };
        let m = r - term.chain.len();
        let e = term.poly.max_degree().unwrap_or(0) as i64;
        let wt_v = weight as i64 - r as i64 - e + m as i64;
        if wt_v < m as i64 {
            continue;
        }
        let sources: Vec<AWord> = if m == 0 {
            if wt_v == 0 {
                vec![AWord::empty()]
            } else {
                vec![]
            }
        } else {
            awords_of(wt_v as u32, m)
        };
        let mut cache = PowerCache::new(&images, 2 * r);
        for v in sources {
            let inv = v.letters().iter().fold(int(1), |acc, l| acc / factorial_q(l.d()));
            let image = term.poly.mul(&RationalField, &cache.monomial(&exps_of(&v)), None);
            for (ex, q) in image.iter() {
                let (w, scale) = word_of_exps(ex);
                table.entry(w).or_default().add_term(v.clone(), q * &scale * &inv);
            }
        }
    }
    table.retain(|_, x| !x.is_zero());
    table
}

/// The word map induced by a mould operator.
pub fn apply_word(op: &MouldOperator, w: &AWord) -> LinComb<AWord> {
    let key = (op.name, w.depth(), w.weight());
    let table = match tables().get(&key) {
        Some(t) => t.clone(),
        None => {
            let t = Arc::new(build_table(op, w.depth(), w.weight()));
            tables().insert(key, t.clone());
            t
        }
    };
    table.get(w).cloned().unwrap_or_default()
}

pub fn apply(op: &MouldOperator, x: &LinComb<AWord>) -> LinComb<AWord> {
    x.map_linear(|w| apply_word(op, w))
}

fn omega_terms(r: usize) -> Vec<MouldTerm> {
    let mut out = Vec::new();
    for j in 1..=r {
        out.push(MouldTerm { poly: constant(r, int(1)), chain: vec![Phi::Plus(j)] });
        if j >= 2 {
            out.push(MouldTerm { poly: constant(r, int(-1)), chain: vec![Phi::Minus(j)] });
        }
    }
    out
}

fn delta_terms(r: usize) -> Vec<MouldTerm> {
    let f = RationalField;
    let mut xy = QPoly::zero(2 * r);
    for i in 1..=r {
        xy = xy.add(&f, &linear(r, &[(false, i, 1)]).mul(&f, &linear(r, &[(true, i, 1)]), None));
    }
    let mut out = vec![MouldTerm { poly: xy, chain: vec![] }];
    for j in 1..=r {
        let p = linear(r, &[(false, j, 1), (false, j + 1, -1), (true, j, 1)]);
        out.push(MouldTerm { poly: scaled(p, rat(-1, 2)), chain: vec![Phi::Plus(j)] });
        out.push(MouldTerm { poly: constant(r, rat(1, 4)), chain: vec![Phi::Plus(j), Phi::Plus(j)] });
        if j >= 2 {
            let p = linear(r, &[(false, j - 1, 1), (false, j, -1), (true, j, 1)]);
            out.push(MouldTerm { poly: scaled(p, rat(-1, 2)), chain: vec![Phi::Minus(j)] });
            out.push(MouldTerm { poly: constant(r, rat(-1, 4)), chain: vec![Phi::Minus(j), Phi::Minus(j)] });
        }
    }
    out
}

fn t_terms(r: usize) -> Vec<MouldTerm> {
    let mut out = Vec::new();
    for j in 1..=r {
        let p = square(&linear(r, &[(false, j, 1), (false, j + 1, -1), (true, j, 1)]));
        out.push(MouldTerm { poly: p, chain: vec![Phi::Plus(j)] });
        let p = linear(r, &[(false, j, -1), (false, j + 2, 1), (true, j, -1), (true, j + 1, -1)]);
        out.push(MouldTerm { poly: p, chain: vec![Phi::Plus(j); 2] });
        out.push(MouldTerm { poly: constant(r, rat(1, 3)), chain: vec![Phi::Plus(j); 3] });
        if j >= 2 {
            let p = square(&linear(r, &[(false, j - 1, 1), (false, j, -1), (true, j, -1)]));
            out.push(MouldTerm { poly: scaled(p, int(-1)), chain: vec![Phi::Minus(j)] });
            let p = linear(r, &[(false, j - 1, 1), (false, j, -4), (false, j + 1, 3), (true, j, -3), (true, j + 1, 1)]);
            out.push(MouldTerm { poly: scaled(p, int(-1)), chain: vec![Phi::Minus(j); 2] });
            out.push(MouldTerm { poly: constant(r, rat(-1, 3)), chain: vec![Phi::Minus(j); 3] });
        }
    }
    out
}

pub const OMEGA: MouldOperator = MouldOperator { name: "omega", weight_shift: -1, terms: omega_terms };
pub const DELTA: MouldOperator = MouldOperator { name: "delta", weight_shift: -2, terms: delta_terms };
pub const T: MouldOperator = MouldOperator { name: "t", weight_shift: -3, terms: t_terms };

pub fn omega_word(w: &AWord) -> LinComb<AWord> {
    apply_word(&OMEGA, w)
}

pub fn delta_word(w: &AWord) -> LinComb<AWord> {
    apply_word(&DELTA, w)
}

pub fn t_word(w: &AWord) -> LinComb<AWord> {
    apply_word(&T, w)
}

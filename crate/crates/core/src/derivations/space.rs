//! Rank report for the linear system cutting out `σ`-equivariant derivations
//! of a fixed weight shift, truncated at a maximal weight.
//!
//! Unknowns are the coefficients `θ(w)_v` for nonempty `w` of weight `<= N`
//! and `v` of weight `wt(w) + s`. Constraints are the Leibniz rule on all
//! pairs of combined weight `<= N` and `σθ(w) = θσ(w)` for all `w`.

use std::collections::{BTreeMap, HashMap};

use crate::arith::Rational;
use crate::linalg::{from_pairs, Echelon};
use crate::lincomb::LinComb;
use crate::qshuffle::stuffle;
use crate::swap::swap_word;
use crate::word::{words_of_weight, AWord, Letter};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivariantDims {
    pub shift: i32,
    pub max_weight: u32,
    pub unknowns: usize,
    /// dimension of the truncated derivations
    pub derivations: usize,
    /// dimension of the truncated σ-equivariant derivations
    pub equivariant: usize,
    /// dimension of their restrictions to words of weight `< max_weight`
    pub equivariant_below_top: usize,
}

struct System {
    vars: HashMap<(AWord, AWord), usize>,
    targets: BTreeMap<AWord, Vec<AWord>>,
}

impl System {
    fn new(max_weight: u32, shift: i32) -> Self {
        let mut vars = HashMap::new();
        let mut targets = BTreeMap::new();
        for n in 1..=max_weight {
            let tw = n as i32 + shift;
            let ts: Vec<AWord> = if tw < 0 { vec![] } else { words_of_weight::<Letter>(tw as u32) };
            for w in words_of_weight::<Letter>(n) {
                for t in &ts {
                    let id = vars.len();
                    vars.insert((w.clone(), t.clone()), id);
                }
                targets.insert(w, ts.clone());
            }
        }
        System { vars, targets }
    }

    /// `θ(x)` as a map from output words to linear forms in the unknowns.
    fn theta(&self, x: &LinComb<AWord>) -> BTreeMap<AWord, Vec<(usize, Rational)>> {
        let mut out: BTreeMap<AWord, Vec<(usize, Rational)>> = BTreeMap::new();
        for (w, c) in x.iter() {
            if w.is_empty() {
                continue;
            }
            for t in &self.targets[w] {
                out.entry(t.clone()).or_default().push((self.vars[&(w.clone(), t.clone())], c.clone()));
            }
        }
        out
    }

    /// `θ(w) ∗ v` as a map from output words to linear forms.
    fn theta_times(&self, w: &AWord, v: &AWord) -> BTreeMap<AWord, Vec<(usize, Rational)>> {
        let mut out: BTreeMap<AWord, Vec<(usize, Rational)>> = BTreeMap::new();
        for t in &self.targets[w] {
            let id = self.vars[&(w.clone(), t.clone())];
            for (y, c) in stuffle(t, v).iter() {
                out.entry(y.clone()).or_default().push((id, c.clone()));
            }
        }
        out
    }
}

fn push(eqs: &mut BTreeMap<AWord, Vec<(usize, Rational)>>, part: BTreeMap<AWord, Vec<(usize, Rational)>>, neg: bool) {
    for (y, terms) in part {
        let e = eqs.entry(y).or_default();
        for (id, c) in terms {
            e.push((id, if neg { -c } else { c }));
        }
    }
}

fn insert_all(ech: &mut Echelon, eqs: BTreeMap<AWord, Vec<(usize, Rational)>>) {
    for (_, terms) in eqs {
        let v = from_pairs(terms);
        if !v.is_empty() {
            ech.insert(&v);
        }
    }
}

/// Dimensions of the truncated derivation and equivariant-derivation spaces.
pub fn equivariant_derivation_dims(max_weight: u32, shift: i32) -> EquivariantDims {
    let sys = System::new(max_weight, shift);
    let words: Vec<AWord> = (1..=max_weight).flat_map(words_of_weight::<Letter>).collect();
    let mut ech = Echelon::new();
    for (i, u) in words.iter().enumerate() {
        for v in &words[i..] {
            if u.weight() + v.weight() > max_weight {
                continue;
            }
            let mut eqs = sys.theta(&stuffle(u, v));
            push(&mut eqs, sys.theta_times(u, v), true);
            push(&mut eqs, sys.theta_times(v, u), true);
            insert_all(&mut ech, eqs);
        }
    }
    let derivations = sys.vars.len() - ech.rank();
    for w in &words {
        let mut eqs: BTreeMap<AWord, Vec<(usize, Rational)>> = BTreeMap::new();
        for t in &sys.targets[w] {
            let id = sys.vars[&(w.clone(), t.clone())];
            for (y, c) in swap_word(t).iter() {
                eqs.entry(y.clone()).or_default().push((id, c.clone()));
            }
        }
        push(&mut eqs, sys.theta(&swap_word(w)), true);
        insert_all(&mut ech, eqs);
    }
    let equivariant = sys.vars.len() - ech.rank();
    for ((w, _), id) in &sys.vars {
        if w.weight() < max_weight {
            ech.insert(&vec![(*id, Rational::from_integer(1.into()))]);
        }
    }
    let vanishing_below_top = sys.vars.len() - ech.rank();
    EquivariantDims {
        shift,
        max_weight,
        unknowns: sys.vars.len(),
        derivations,
        equivariant,
        equivariant_below_top: equivariant - vanishing_below_top,
    }
}

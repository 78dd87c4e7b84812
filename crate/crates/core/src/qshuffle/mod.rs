//! Quasi-shuffle products over arbitrary letter products, and the exp/log
//! isomorphisms onto the shuffle algebra.

mod derivation;

pub use derivation::*;

use std::sync::{Arc, OnceLock};

use dashmap::DashMap;
use num_traits::One;

use crate::arith::{factorial_q, int, sign, Rational};
use crate::lincomb::LinComb;
use crate::word::{AWord, BLetter, BWord, Letter, Symbol, Word, XyLetter, XyWord, ZLetter, ZWord};

/// A letter combination `sum c_a a` in ℚ𝓛.
pub type LetterComb<L> = Vec<(L, Rational)>;

/// A commutative, associative product on the letter space.
pub trait Diamond<L: Symbol>: Send + Sync {
    fn diamond(&self, a: &L, b: &L) -> LetterComb<L>;
}

/// `[k1;d1] ⋄ [k2;d2] = [k1+k2; d1+d2]`.
#[derive(Clone, Copy, Debug, Default)]
pub struct IndexSum;

impl Diamond<Letter> for IndexSum {
    fn diamond(&self, a: &Letter, b: &Letter) -> LetterComb<Letter> {
        vec![(Letter::new(a.k() + b.k(), a.d() + b.d()), Rational::one())]
    }
}

impl Diamond<ZLetter> for IndexSum {
    fn diamond(&self, a: &ZLetter, b: &ZLetter) -> LetterComb<ZLetter> {
        vec![(ZLetter(a.0 + b.0), Rational::one())]
    }
}

/// `b_i ⋄ b_j = b_{i+j}` if `ij > 0`, else 0.
impl Diamond<BLetter> for IndexSum {
    fn diamond(&self, a: &BLetter, b: &BLetter) -> LetterComb<BLetter> {
        if a.0 > 0 && b.0 > 0 {
            vec![(BLetter(a.0 + b.0), Rational::one())]
        } else {
            vec![]
        }
    }
}

/// The zero product; its quasi-shuffle is the shuffle product.
#[derive(Clone, Copy, Debug, Default)]
pub struct ZeroDiamond;

impl<L: Symbol> Diamond<L> for ZeroDiamond {
    fn diamond(&self, _: &L, _: &L) -> LetterComb<L> {
        vec![]
    }
}

/// Product of the letter combinations of a block `a_1 ⋄ ... ⋄ a_l`.
pub fn block_product<L: Symbol, D: Diamond<L> + ?Sized>(d: &D, letters: &[L]) -> LetterComb<L> {
    let mut acc: LetterComb<L> = vec![(letters[0], Rational::one())];
    for b in &letters[1..] {
        let mut next: LinComb<L> = LinComb::zero();
        for (a, c) in &acc {
            for (e, c2) in d.diamond(a, b) {
                next.add_term(e, c * &c2);
            }
        }
        acc = next.into_terms().collect();
    }
    acc
}

/// `x ⋄ y` for letter combinations.
pub fn comb_product<L: Symbol, D: Diamond<L> + ?Sized>(d: &D, x: &LetterComb<L>, y: &LetterComb<L>) -> LetterComb<L> {
    let mut out: LinComb<L> = LinComb::zero();
    for (a, ca) in x {
        for (b, cb) in y {
            for (e, c) in d.diamond(a, b) {
                out.add_term(e, ca * cb * c);
            }
        }
    }
    out.into_terms().collect()
}

type Memo<L> = DashMap<(Word<L>, Word<L>), LinComb<Word<L>>>;

/// The quasi-shuffle product `∗⋄` with a memo table keyed on word pairs.
pub struct QuasiShuffle<L: Symbol> {
    diamond: Arc<dyn Diamond<L>>,
    memo: Memo<L>,
}

impl<L: Symbol> QuasiShuffle<L> {
    pub fn new(diamond: Arc<dyn Diamond<L>>) -> Self {
        QuasiShuffle { diamond, memo: DashMap::new() }
    }

    pub fn diamond(&self) -> &dyn Diamond<L> {
        self.diamond.as_ref()
    }

    /// `aw ∗ bv = a(w ∗ bv) + b(aw ∗ v) + (a⋄b)(w ∗ v)`.
    pub fn word(&self, u: &Word<L>, v: &Word<L>) -> LinComb<Word<L>> {
        if u.is_empty() {
            return LinComb::single(v.clone());
        }
        if v.is_empty() {
            return LinComb::single(u.clone());
        }
        let key = if u <= v { (u.clone(), v.clone()) } else { (v.clone(), u.clone()) };
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let (a, w) = (&u.letters()[0], u.tail());
        let (b, vv) = (&v.letters()[0], v.tail());
        let mut out = self.word(&w, v).prepend(a);
        out += &self.word(u, &vv).prepend(b);
        let ab = self.diamond.diamond(a, b);
        if !ab.is_empty() {
            let rest = self.word(&w, &vv);
            for (c, coef) in ab {
                out.add_scaled(&rest.prepend(&c), &coef);
            }
        }
        self.memo.insert(key, out.clone());
        out
    }

    pub fn product(&self, x: &LinComb<Word<L>>, y: &LinComb<Word<L>>) -> LinComb<Word<L>> {
        x.map_bilinear(y, |u, v| self.word(u, v))
    }

    pub fn power(&self, x: &LinComb<Word<L>>, n: u32) -> LinComb<Word<L>> {
        (0..n).fold(LinComb::one(), |acc, _| self.product(&acc, x))
    }

    pub fn clear(&self) {
        self.memo.clear();
    }

    /// `log⋄(a_1...a_r) = sum (-1)^{r-l}/(i_1...i_l) [a_1⋄...⋄a_{i_1}]...` over compositions.
    pub fn log(&self, w: &Word<L>) -> LinComb<Word<L>> {
        self.comp_sum(w, &|parts: &[usize]| {
            let r: usize = parts.iter().sum();
            let denom = parts.iter().fold(Rational::one(), |acc, &i| acc * int(i as i64));
            sign((r - parts.len()) as i64) / denom
        })
    }

    /// `exp⋄(a_1...a_r) = sum 1/(i_1!...i_l!) [a_1⋄...⋄a_{i_1}]...` over compositions.
    pub fn exp(&self, w: &Word<L>) -> LinComb<Word<L>> {
        self.comp_sum(w, &|parts: &[usize]| {
            let denom = parts.iter().fold(Rational::one(), |acc, &i| acc * factorial_q(i as u32));
            Rational::one() / denom
        })
    }

    pub fn log_lc(&self, x: &LinComb<Word<L>>) -> LinComb<Word<L>> {
        x.map_linear(|w| self.log(w))
    }

    pub fn exp_lc(&self, x: &LinComb<Word<L>>) -> LinComb<Word<L>> {
        x.map_linear(|w| self.exp(w))
    }

    fn comp_sum(&self, w: &Word<L>, coef: &dyn Fn(&[usize]) -> Rational) -> LinComb<Word<L>> {
        let letters = w.letters();
        let mut out = LinComb::zero();
        let mut parts = Vec::new();
        self.comp_rec(letters, 0, &mut parts, coef, &mut out);
        out
    }

    fn comp_rec(
        &self,
        letters: &[L],
        start: usize,
        parts: &mut Vec<usize>,
        coef: &dyn Fn(&[usize]) -> Rational,
        out: &mut LinComb<Word<L>>,
    ) {
        if start == letters.len() {
            let c = coef(parts);
            let mut acc: LinComb<Word<L>> = LinComb::one();
            let mut pos = 0;
            for &i in parts.iter() {
                let block = block_product(self.diamond.as_ref(), &letters[pos..pos + i]);
                let mut next = LinComb::zero();
                for (u, cu) in acc.iter() {
                    for (b, cb) in &block {
                        let mut uw = u.clone();
                        uw.push(*b);
                        next.add_term(uw, cu * cb);
                    }
                }
                acc = next;
                pos += i;
                if acc.is_zero() {
                    return;
                }
            }
            out.add_scaled(&acc, &c);
            return;
        }
        for i in 1..=letters.len() - start {
            parts.push(i);
            self.comp_rec(letters, start + i, parts, coef, out);
            parts.pop();
        }
    }
}

fn global<L: Symbol>(
    cell: &'static OnceLock<QuasiShuffle<L>>,
    d: impl Diamond<L> + 'static,
) -> &'static QuasiShuffle<L> {
    cell.get_or_init(|| QuasiShuffle::new(Arc::new(d)))
}

/// The stuffle product on bi-indexed words.
pub fn stuffle_product() -> &'static QuasiShuffle<Letter> {
    static CELL: OnceLock<QuasiShuffle<Letter>> = OnceLock::new();
    global(&CELL, IndexSum)
}

/// The plain (index) shuffle on bi-indexed words.
pub fn index_shuffle_a() -> &'static QuasiShuffle<Letter> {
    static CELL: OnceLock<QuasiShuffle<Letter>> = OnceLock::new();
    global(&CELL, ZeroDiamond)
}

pub fn stuffle_z_product() -> &'static QuasiShuffle<ZLetter> {
    static CELL: OnceLock<QuasiShuffle<ZLetter>> = OnceLock::new();
    global(&CELL, IndexSum)
}

/// The index shuffle `⧢̄` on z-words (no letter merging).
pub fn index_shuffle_z() -> &'static QuasiShuffle<ZLetter> {
    static CELL: OnceLock<QuasiShuffle<ZLetter>> = OnceLock::new();
    global(&CELL, ZeroDiamond)
}

pub fn shuffle_xy_product() -> &'static QuasiShuffle<XyLetter> {
    static CELL: OnceLock<QuasiShuffle<XyLetter>> = OnceLock::new();
    global(&CELL, ZeroDiamond)
}

pub fn stuffle_b_product() -> &'static QuasiShuffle<BLetter> {
    static CELL: OnceLock<QuasiShuffle<BLetter>> = OnceLock::new();
    global(&CELL, IndexSum)
}

pub fn stuffle(u: &AWord, v: &AWord) -> LinComb<AWord> {
    stuffle_product().word(u, v)
}

pub fn stuffle_lc(x: &LinComb<AWord>, y: &LinComb<AWord>) -> LinComb<AWord> {
    stuffle_product().product(x, y)
}

pub fn stuffle_z(u: &ZWord, v: &ZWord) -> LinComb<ZWord> {
    stuffle_z_product().word(u, v)
}

/// Shuffle on z-words through `z_k = x^{k-1} y`.
pub fn shuffle_z(u: &ZWord, v: &ZWord) -> LinComb<ZWord> {
    let xy: LinComb<XyWord> = shuffle_xy_product().word(&u.to_xy(), &v.to_xy());
    xy.map_linear(|w| match w.to_z() {
        Some(z) => LinComb::single(z),
        None => LinComb::zero(),
    })
}

pub fn shuffle_z_lc(x: &LinComb<ZWord>, y: &LinComb<ZWord>) -> LinComb<ZWord> {
    x.map_bilinear(y, shuffle_z)
}

pub fn stuffle_z_lc(x: &LinComb<ZWord>, y: &LinComb<ZWord>) -> LinComb<ZWord> {
    stuffle_z_product().product(x, y)
}

pub fn stuffle_b(u: &BWord, v: &BWord) -> LinComb<BWord> {
    stuffle_b_product().word(u, v)
}

/// `Gᶠ` of a z-word combination: `z_{k_1}...z_{k_r} ↦ [k_1,...,k_r; 0,...,0]`.
pub fn z_to_a(x: &LinComb<ZWord>) -> LinComb<AWord> {
    x.map_linear(|w| LinComb::single(w.to_aword()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn a(ks: &[u32], ds: &[u32]) -> AWord {
        AWord::from_kd(ks, ds)
    }

    fn z(ks: &[u32]) -> ZWord {
        ZWord::from_ks(ks)
    }

    #[test]
    fn stuffle_examples() {
        let p = stuffle(&a(&[1], &[0]), &a(&[2], &[0]));
        let want = LinComb::from_terms([
            (a(&[1, 2], &[0, 0]), int(1)),
            (a(&[2, 1], &[0, 0]), int(1)),
            (a(&[3], &[0]), int(1)),
        ]);
        assert_eq!(p, want);
        let p = stuffle(&a(&[1], &[0]), &a(&[1], &[0]));
        assert_eq!(p, LinComb::from_terms([(a(&[1, 1], &[0, 0]), int(2)), (a(&[2], &[0]), int(1))]));
        let p = stuffle(&a(&[2], &[1]), &a(&[3], &[2]));
        let want = LinComb::from_terms([
            (a(&[2, 3], &[1, 2]), int(1)),
            (a(&[3, 2], &[2, 1]), int(1)),
            (a(&[5], &[3]), int(1)),
        ]);
        assert_eq!(p, want);
        assert_eq!(stuffle(&AWord::empty(), &a(&[2], &[1])), LinComb::single(a(&[2], &[1])));
    }

    #[test]
    fn depth_one_times_two() {
        // [k1;d1] ∗ [k2,k3;d2,d3]: five terms
        let p = stuffle(&a(&[1], &[1]), &a(&[2, 3], &[0, 2]));
        let want = LinComb::from_terms([
            (a(&[1, 2, 3], &[1, 0, 2]), int(1)),
            (a(&[2, 1, 3], &[0, 1, 2]), int(1)),
            (a(&[2, 3, 1], &[0, 2, 1]), int(1)),
            (a(&[3, 3], &[1, 2]), int(1)),
            (a(&[2, 4], &[0, 3]), int(1)),
        ]);
        assert_eq!(p, want);
    }

    #[test]
    fn z_products() {
        assert_eq!(
            stuffle_z(&z(&[1]), &z(&[2])),
            LinComb::from_terms([(z(&[1, 2]), int(1)), (z(&[2, 1]), int(1)), (z(&[3]), int(1))])
        );
        assert_eq!(shuffle_z(&z(&[1]), &z(&[2])), LinComb::from_terms([(z(&[1, 2]), int(1)), (z(&[2, 1]), int(2))]));
        assert_eq!(
            shuffle_z(&z(&[2]), &z(&[3])),
            LinComb::from_terms([(z(&[2, 3]), int(1)), (z(&[3, 2]), int(3)), (z(&[4, 1]), int(6))])
        );
        assert_eq!(
            index_shuffle_z().word(&z(&[1]), &z(&[2])),
            LinComb::from_terms([(z(&[1, 2]), int(1)), (z(&[2, 1]), int(1))])
        );
    }

    #[test]
    fn exp_log_small() {
        let q = stuffle_product();
        let w = a(&[1, 1], &[0, 0]);
        assert_eq!(q.log(&a(&[3], &[1])), LinComb::single(a(&[3], &[1])));
        assert_eq!(q.log(&w), LinComb::from_terms([(w.clone(), int(1)), (a(&[2], &[0]), rat(-1, 2))]));
        assert_eq!(q.exp(&w), LinComb::from_terms([(w.clone(), int(1)), (a(&[2], &[0]), rat(1, 2))]));
    }

    #[test]
    fn balanced_products() {
        let b = |is: &[u32]| BWord::from_indices(is);
        assert_eq!(stuffle_b(&b(&[1]), &b(&[1])), LinComb::from_terms([(b(&[1, 1]), int(2)), (b(&[2]), int(1))]));
        assert_eq!(stuffle_b(&b(&[1]), &b(&[0])), LinComb::from_terms([(b(&[1, 0]), int(1)), (b(&[0, 1]), int(1))]));
    }
}

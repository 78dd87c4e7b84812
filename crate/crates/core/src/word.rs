//! Letters, words and the canonical word order.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;

use smallvec::SmallVec;

use crate::error::Error;

/// A letter of some alphabet carrying a positive integer weight.
pub trait Symbol: Copy + Ord + Hash + fmt::Debug + Send + Sync + 'static {
    fn weight(&self) -> u32;
    /// All letters of the given weight, in increasing order.
    fn of_weight(weight: u32) -> Vec<Self>;
}

/// The bi-index `[k;d]` with `k >= 1`, `d >= 0`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Letter {
    k: u32,
    d: u32,
}

impl Letter {
    pub fn new(k: u32, d: u32) -> Letter {
        assert!(k >= 1, "letter [k;d] needs k >= 1, got k = {k}");
        Letter { k, d }
    }

    pub fn try_new(k: i64, d: i64) -> Result<Letter, Error> {
        if k < 1 || d < 0 || k > u32::MAX as i64 || d > u32::MAX as i64 {
            return Err(Error::InvalidLetter { k, d });
        }
        Ok(Letter { k: k as u32, d: d as u32 })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn d(&self) -> u32 {
        self.d
    }
}

impl Symbol for Letter {
    fn weight(&self) -> u32 {
        self.k + self.d
    }

    fn of_weight(weight: u32) -> Vec<Letter> {
        (1..=weight).map(|k| Letter::new(k, weight - k)).collect()
    }
}

/// The letter `z_k` of the classical alphabet.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ZLetter(pub u32);

impl Symbol for ZLetter {
    fn weight(&self) -> u32 {
        self.0
    }

    fn of_weight(weight: u32) -> Vec<ZLetter> {
        if weight == 0 {
            vec![]
        } else {
            vec![ZLetter(weight)]
        }
    }
}

/// The two letters `x`, `y` of the shuffle alphabet.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum XyLetter {
    X,
    Y,
}

impl Symbol for XyLetter {
    fn weight(&self) -> u32 {
        1
    }

    fn of_weight(weight: u32) -> Vec<XyLetter> {
        if weight == 1 {
            vec![XyLetter::X, XyLetter::Y]
        } else {
            vec![]
        }
    }
}

/// The letter `b_i` of the balanced alphabet. `b_0` has weight 1 and `b_i` weight `i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct BLetter(pub u32);

impl Symbol for BLetter {
    fn weight(&self) -> u32 {
        self.0.max(1)
    }

    fn of_weight(weight: u32) -> Vec<BLetter> {
        match weight {
            0 => vec![],
            1 => vec![BLetter(0), BLetter(1)],
            w => vec![BLetter(w)],
        }
    }
}

/// A finite word over an alphabet of `Symbol`s.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word<L: Symbol>(SmallVec<[L; 8]>);

/// Words over the bi-indexed alphabet.
pub type AWord = Word<Letter>;
pub type ZWord = Word<ZLetter>;
pub type XyWord = Word<XyLetter>;
pub type BWord = Word<BLetter>;

impl<L: Symbol> Word<L> {
    pub fn empty() -> Self {
        Word(SmallVec::new())
    }

    pub fn new(letters: impl IntoIterator<Item = L>) -> Self {
        Word(letters.into_iter().collect())
    }

    pub fn from_slice(letters: &[L]) -> Self {
        Word(SmallVec::from_slice(letters))
    }

    pub fn letters(&self) -> &[L] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().map(Symbol::weight).sum()
    }

    pub fn first(&self) -> Option<&L> {
        self.0.first()
    }

    pub fn last(&self) -> Option<&L> {
        self.0.last()
    }

    pub fn tail(&self) -> Self {
        Word::from_slice(&self.0[1.min(self.0.len())..])
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn prepend(&self, a: &L) -> Self {
        let mut v = SmallVec::with_capacity(self.0.len() + 1);
        v.push(*a);
        v.extend_from_slice(&self.0);
        Word(v)
    }

    pub fn push(&mut self, a: L) {
        self.0.push(a);
    }

    /// The word with the letters at `range` replaced by `replacement`.
    pub fn splice(&self, range: std::ops::Range<usize>, replacement: &[L]) -> Self {
        let mut v: SmallVec<[L; 8]> = SmallVec::with_capacity(self.0.len() + replacement.len());
        v.extend_from_slice(&self.0[..range.start]);
        v.extend_from_slice(replacement);
        v.extend_from_slice(&self.0[range.end..]);
        Word(v)
    }

    pub fn reversed(&self) -> Self {
        Word(self.0.iter().rev().cloned().collect())
    }
}

impl<L: Symbol> PartialOrd for Word<L> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: weight, then depth, then lexicographic on the letters.
impl<L: Symbol> Ord for Word<L> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then(self.depth().cmp(&other.depth()))
            .then_with(|| self.0.as_slice().cmp(other.0.as_slice()))
    }
}

impl<L: Symbol> FromIterator<L> for Word<L> {
    fn from_iter<I: IntoIterator<Item = L>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl AWord {
    /// Word from parallel index lists.
    pub fn from_kd(ks: &[u32], ds: &[u32]) -> AWord {
        assert_eq!(ks.len(), ds.len(), "index lists differ in length");
        ks.iter().zip(ds).map(|(&k, &d)| Letter::new(k, d)).collect()
    }

    /// The lwt-0 word `G(k_1,...,k_r)`.
    pub fn from_ks(ks: &[u32]) -> AWord {
        ks.iter().map(|&k| Letter::new(k, 0)).collect()
    }

    pub fn lwt(&self) -> u32 {
        self.0.iter().map(|l| l.d).sum()
    }

    /// `(weight, lower weight, depth)`.
    pub fn grade(&self) -> (u32, u32, usize) {
        (self.weight(), self.lwt(), self.depth())
    }

    pub fn ks(&self) -> Vec<u32> {
        self.0.iter().map(|l| l.k).collect()
    }

    pub fn ds(&self) -> Vec<u32> {
        self.0.iter().map(|l| l.d).collect()
    }
}

impl ZWord {
    pub fn from_ks(ks: &[u32]) -> ZWord {
        ks.iter().map(|&k| ZLetter(k)).collect()
    }

    /// Encodes `z_k` as `x^{k-1} y`.
    pub fn to_xy(&self) -> XyWord {
        let mut w = XyWord::empty();
        for z in self.letters() {
            for _ in 1..z.0 {
                w.push(XyLetter::X);
            }
            w.push(XyLetter::Y);
        }
        w
    }

    /// `true` if the word does not start with `z_1`.
    pub fn is_in_h0(&self) -> bool {
        self.first().is_none_or(|z| z.0 != 1)
    }

    /// The lwt-0 bi-indexed word with the same indices.
    pub fn to_aword(&self) -> AWord {
        self.letters().iter().map(|z| Letter::new(z.0, 0)).collect()
    }
}

impl XyWord {
    /// Decodes a word ending in `y`; `None` otherwise.
    pub fn to_z(&self) -> Option<ZWord> {
        let mut out = ZWord::empty();
        let mut run = 0;
        for l in self.letters() {
            match l {
                XyLetter::X => run += 1,
                XyLetter::Y => {
                    out.push(ZLetter(run + 1));
                    run = 0;
                }
            }
        }
        if run == 0 {
            Some(out)
        } else {
            None
        }
    }
}

impl BWord {
    pub fn from_indices(is: &[u32]) -> BWord {
        is.iter().map(|&i| BLetter(i)).collect()
    }

    /// Membership in the subspace of words not starting with `b_0`.
    pub fn is_in_b0(&self) -> bool {
        self.first().is_none_or(|b| b.0 != 0)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{};{}]", self.k, self.d)
    }
}

fn join(xs: impl Iterator<Item = u32>) -> String {
    xs.map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for AWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        if self.lwt() == 0 {
            write!(f, "G[{}]", join(self.0.iter().map(|l| l.k)))
        } else {
            write!(f, "G[{{{}}},{{{}}}]", join(self.0.iter().map(|l| l.k)), join(self.0.iter().map(|l| l.d)))
        }
    }
}

impl fmt::Display for ZWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        for z in self.letters() {
            write!(f, "z{}", z.0)?;
        }
        Ok(())
    }
}

impl fmt::Display for XyWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        for l in self.letters() {
            write!(f, "{}", if *l == XyLetter::X { 'x' } else { 'y' })?;
        }
        Ok(())
    }
}

impl fmt::Display for BWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        let s: Vec<String> = self.letters().iter().map(|b| format!("b{}", b.0)).collect();
        write!(f, "{}", s.join(" "))
    }
}

impl<L: Symbol> fmt::Debug for Word<L>
where
    Word<L>: fmt::Display,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All words of the given weight over `L`, in canonical order.
pub fn words_of_weight<L: Symbol>(weight: u32) -> Vec<Word<L>> {
    fn rec<L: Symbol>(rest: u32, prefix: &mut Vec<L>, out: &mut Vec<Word<L>>) {
        if rest == 0 {
            out.push(Word::from_slice(prefix));
            return;
        }
        for w in 1..=rest {
            for l in L::of_weight(w) {
                prefix.push(l);
                rec(rest - w, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(weight, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// All words of weight at most `max_weight`, in canonical order.
pub fn words_up_to<L: Symbol>(max_weight: u32) -> Vec<Word<L>> {
    (0..=max_weight).flat_map(words_of_weight::<L>).collect()
}

/// Words over the bi-indexed alphabet of given weight and depth.
pub fn awords_of(weight: u32, depth: usize) -> Vec<AWord> {
    words_of_weight::<Letter>(weight).into_iter().filter(|w| w.depth() == depth).collect()
}

/// Number of bi-indexed words of the given weight: `a(k) = sum_w w a(k-w)`.
pub fn count_words(weight: u32) -> u64 {
    let mut a = vec![1u64];
    for k in 1..=weight as usize {
        let s = (1..=k).map(|w| w as u64 * a[k - w]).sum();
        a.push(s);
    }
    a[weight as usize]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grades() {
        assert_eq!(AWord::from_kd(&[2], &[1]).grade(), (3, 1, 1));
        assert_eq!(AWord::from_kd(&[1, 2], &[0, 0]).grade(), (3, 0, 2));
        assert_eq!(AWord::empty().grade(), (0, 0, 0));
    }

    #[test]
    fn counts_match_enumeration() {
        for k in 0..=8 {
            assert_eq!(words_of_weight::<Letter>(k).len() as u64, count_words(k));
        }
        assert_eq!(count_words(3), 8);
        assert_eq!(count_words(6), 144);
        assert_eq!(count_words(8), 987);
        assert_eq!(count_words(12), 46368);
    }

    #[test]
    fn rendering() {
        assert_eq!(AWord::from_ks(&[2, 3]).to_string(), "G[2,3]");
        assert_eq!(AWord::from_kd(&[3], &[1]).to_string(), "G[{3},{1}]");
        assert_eq!(AWord::empty().to_string(), "1");
        assert_eq!(BWord::from_indices(&[2, 0, 3]).to_string(), "b2 b0 b3");
    }

    #[test]
    fn canonical_order() {
        let a = AWord::from_ks(&[2]);
        let b = AWord::from_kd(&[1], &[1]);
        let c = AWord::from_ks(&[1, 1]);
        assert!(b < a && a < c);
        assert!(AWord::from_ks(&[1]) < b);
    }

    #[test]
    fn xy_encoding() {
        let w = ZWord::from_ks(&[3, 1, 2]);
        assert_eq!(w.to_xy().to_string(), "xxyyxy");
        assert_eq!(w.to_xy().to_z(), Some(w));
    }

    #[test]
    fn invalid_letter_rejected() {
        assert!(Letter::try_new(0, 1).is_err());
        assert!(Letter::try_new(1, -1).is_err());
    }
}

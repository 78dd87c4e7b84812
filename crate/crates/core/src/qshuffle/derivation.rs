//! Graded linear endomorphisms of word algebras and the generic derivation
//! constructors for quasi-shuffle algebras.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{block_product, comb_product, Diamond, LetterComb, QuasiShuffle};
use crate::arith::{int, rat, sign, Rational};
use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::word::{Symbol, Word};

pub type WordMap<L> = Arc<dyn Fn(&Word<L>) -> LinComb<Word<L>> + Send + Sync>;
pub type LetterMap<L> = Arc<dyn Fn(&L) -> LetterComb<L> + Send + Sync>;

/// A named linear map on words, homogeneous of a declared weight shift.
///
/// Constructors below return genuine derivations; commutators and sums of
/// derivations are again of this type.
#[derive(Clone)]
pub struct Derivation<L: Symbol> {
    name: String,
    weight_shift: i32,
    map: WordMap<L>,
}

impl<L: Symbol> fmt::Debug for Derivation<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Derivation({}, weight {})", self.name, self.weight_shift)
    }
}

impl<L: Symbol> Derivation<L> {
    pub fn new(
        name: impl Into<String>,
        weight_shift: i32,
        map: impl Fn(&Word<L>) -> LinComb<Word<L>> + Send + Sync + 'static,
    ) -> Self {
        Derivation { name: name.into(), weight_shift, map: Arc::new(map) }
    }

    pub fn zero(weight_shift: i32) -> Self {
        Derivation::new("0", weight_shift, |_| LinComb::zero())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn weight_shift(&self) -> i32 {
        self.weight_shift
    }

    pub fn apply_word(&self, w: &Word<L>) -> LinComb<Word<L>> {
        (self.map)(w)
    }

    pub fn apply(&self, x: &LinComb<Word<L>>) -> LinComb<Word<L>> {
        x.map_linear(|w| (self.map)(w))
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Derivation<L>) -> Derivation<L> {
        let (a, b) = (self.clone(), other.clone());
        Derivation::new(format!("{}∘{}", self.name, other.name), self.weight_shift + other.weight_shift, move |w| {
            a.apply(&b.apply_word(w))
        })
    }

    pub fn scale(&self, c: Rational) -> Derivation<L> {
        let a = self.clone();
        Derivation::new(format!("{}*{}", crate::arith::fmt_rational(&c), self.name), self.weight_shift, move |w| {
            a.apply_word(w).scale(&c)
        })
    }

    pub fn plus(&self, other: &Derivation<L>) -> Derivation<L> {
        let (a, b) = (self.clone(), other.clone());
        Derivation::new(format!("{}+{}", self.name, other.name), self.weight_shift, move |w| {
            a.apply_word(w) + b.apply_word(w)
        })
    }

    pub fn minus(&self, other: &Derivation<L>) -> Derivation<L> {
        self.plus(&other.scale(-Rational::one()))
    }

    /// `Θ(u ∗ v) - Θ(u) ∗ v - u ∗ Θ(v)`.
    pub fn leibniz_defect(&self, prod: &QuasiShuffle<L>, u: &Word<L>, v: &Word<L>) -> LinComb<Word<L>> {
        let lhs = self.apply(&prod.word(u, v));
        let su = LinComb::single(u.clone());
        let sv = LinComb::single(v.clone());
        let rhs = prod.product(&self.apply_word(u), &sv) + prod.product(&su, &self.apply_word(v));
        lhs - rhs
    }
}

/// `[A, B] = A∘B - B∘A`.
pub fn commutator<L: Symbol>(a: &Derivation<L>, b: &Derivation<L>) -> Derivation<L> {
    let (x, y) = (a.clone(), b.clone());
    Derivation::new(format!("[{},{}]", a.name, b.name), a.weight_shift + b.weight_shift, move |w| {
        x.apply(&y.apply_word(w)) - y.apply(&x.apply_word(w))
    })
}

fn comb_is_zero<L: Symbol>(x: &LetterComb<L>) -> bool {
    x.iter().all(|(_, c)| c.is_zero())
}

fn comb_sub<L: Symbol>(x: &LetterComb<L>, y: &LetterComb<L>) -> LetterComb<L> {
    let mut out: LinComb<L> = x.iter().cloned().collect();
    for (a, c) in y {
        out.add_term(*a, -c.clone());
    }
    out.into_terms().collect()
}

fn comb_add<L: Symbol>(x: &LetterComb<L>, y: &LetterComb<L>) -> LetterComb<L> {
    let mut out: LinComb<L> = x.iter().cloned().collect();
    for (a, c) in y {
        out.add_term(*a, c.clone());
    }
    out.into_terms().collect()
}

fn comb_map<L: Symbol>(f: &LetterMap<L>, x: &LetterComb<L>) -> LetterComb<L> {
    let mut out: LinComb<L> = LinComb::zero();
    for (a, c) in x {
        for (b, cb) in f(a) {
            out.add_term(b, c * cb);
        }
    }
    out.into_terms().collect()
}

fn single<L: Symbol>(a: &L) -> LetterComb<L> {
    vec![(*a, Rational::one())]
}

fn describe<L: Symbol>(ls: &[&L]) -> String {
    ls.iter().map(|l| format!("{l:?}")).collect::<Vec<_>>().join(", ")
}

/// Random letters of weight at most `max_weight`, drawn reproducibly.
pub struct LetterSampler<L: Symbol> {
    pool: Vec<L>,
    rng: ChaCha8Rng,
}

/// Sampling parameters for hypothesis checks: letters up to weight 6, 100 draws.
pub const SAMPLE_MAX_WEIGHT: u32 = 6;
pub const SAMPLE_COUNT: usize = 100;

impl<L: Symbol> LetterSampler<L> {
    pub fn new(max_weight: u32, seed: u64) -> Self {
        let pool = (1..=max_weight).flat_map(L::of_weight).collect();
        LetterSampler { pool, rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn draw(&mut self) -> L {
        *self.pool.choose(&mut self.rng).expect("empty letter pool")
    }

    pub fn draw_where(&mut self, keep: &dyn Fn(&L) -> bool) -> Option<L> {
        let pool: Vec<&L> = self.pool.iter().filter(|l| keep(l)).collect();
        pool.choose(&mut self.rng).map(|l| *(*l))
    }
}

/// Replaces letter `j` by each letter of `comb`.
fn replace_at<L: Symbol>(
    w: &Word<L>,
    j: usize,
    len: usize,
    comb: &LetterComb<L>,
    scale: &Rational,
    out: &mut LinComb<Word<L>>,
) {
    for (b, c) in comb {
        out.add_term(w.splice(j..j + len, std::slice::from_ref(b)), c * scale);
    }
}

/// `Θ^φ(a_1...a_r) = sum_j a_1...φ(a_j)...a_r` for a derivation `φ` of `(ℚ𝓛, ⋄)`.
pub fn derivation_from_letter_map<L: Symbol>(
    name: &str,
    weight_shift: i32,
    phi: LetterMap<L>,
    diamond: Arc<dyn Diamond<L>>,
) -> Result<Derivation<L>> {
    let mut s = LetterSampler::<L>::new(SAMPLE_MAX_WEIGHT, 0x5eed_0001);
    for _ in 0..SAMPLE_COUNT {
        let (a, b) = (s.draw(), s.draw());
        let lhs = comb_map(&phi, &diamond.diamond(&a, &b));
        let rhs = comb_add(
            &comb_product(diamond.as_ref(), &phi(&a), &single(&b)),
            &comb_product(diamond.as_ref(), &single(&a), &phi(&b)),
        );
        if !comb_is_zero(&comb_sub(&lhs, &rhs)) {
            return Err(Error::Hypothesis("phi(a⋄b) = phi(a)⋄b + a⋄phi(b)".into(), describe(&[&a, &b])));
        }
    }
    Ok(Derivation::new(name, weight_shift, move |w| {
        let mut out = LinComb::zero();
        for j in 0..w.depth() {
            replace_at(w, j, 1, &phi(&w.letters()[j]), &Rational::one(), &mut out);
        }
        out
    }))
}

/// `γ(a,b) = φ(a⋄b) - φ(a)⋄b - a⋄φ(b)`, extended bilinearly.
pub fn gamma<L: Symbol>(
    phi: &LetterMap<L>,
    diamond: &dyn Diamond<L>,
    a: &LetterComb<L>,
    b: &LetterComb<L>,
) -> LetterComb<L> {
    let ab = comb_product(diamond, a, b);
    let lhs = comb_map(phi, &ab);
    let r1 = comb_product(diamond, &comb_map(phi, a), b);
    let r2 = comb_product(diamond, a, &comb_map(phi, b));
    comb_sub(&lhs, &comb_add(&r1, &r2))
}

/// `Θ^φ` corrected by `-½ sum_j a_1...γ(a_j,a_{j+1})...a_r`, for `φ` whose
/// failure `γ` to be a derivation vanishes on `im ⋄` and satisfies
/// `γ(a⋄c,b) + γ(a,b⋄c) = γ(a,b)⋄c`.
pub fn derivation_with_gamma<L: Symbol>(
    name: &str,
    weight_shift: i32,
    phi: LetterMap<L>,
    diamond: Arc<dyn Diamond<L>>,
) -> Result<Derivation<L>> {
    let d = diamond.as_ref();
    let mut s = LetterSampler::<L>::new(SAMPLE_MAX_WEIGHT, 0x5eed_0002);
    for _ in 0..SAMPLE_COUNT {
        let (a, b, c, e) = (s.draw(), s.draw(), s.draw(), s.draw());
        let ab = d.diamond(&a, &b);
        let ce = d.diamond(&c, &e);
        if !comb_is_zero(&gamma(&phi, d, &ab, &ce)) {
            return Err(Error::Hypothesis("gamma vanishes on im(⋄) x im(⋄)".into(), describe(&[&a, &b, &c, &e])));
        }
        let lhs = comb_add(
            &gamma(&phi, d, &d.diamond(&a, &c), &single(&b)),
            &gamma(&phi, d, &single(&a), &d.diamond(&b, &c)),
        );
        let rhs = comb_product(d, &gamma(&phi, d, &single(&a), &single(&b)), &single(&c));
        if !comb_is_zero(&comb_sub(&lhs, &rhs)) {
            return Err(Error::Hypothesis(
                "gamma(a⋄c,b) + gamma(a,b⋄c) = gamma(a,b)⋄c".into(),
                describe(&[&a, &b, &c]),
            ));
        }
    }
    let half = rat(-1, 2);
    Ok(Derivation::new(name, weight_shift, move |w| {
        let ls = w.letters();
        let mut out = LinComb::zero();
        for (j, a) in ls.iter().enumerate() {
            replace_at(w, j, 1, &phi(a), &Rational::one(), &mut out);
        }
        for j in 0..ls.len().saturating_sub(1) {
            let g = gamma(&phi, diamond.as_ref(), &single(&ls[j]), &single(&ls[j + 1]));
            replace_at(w, j, 2, &g, &half, &mut out);
        }
        out
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundaryMode {
    /// Removes one boundary letter equal to `a`; a derivation of the shuffle product.
    Shuffle,
    /// Sums over boundary blocks with `⋄`-product `a`, weighted `(-1)^{l+1}/l`.
    Diamond,
}

/// The boundary derivations `Θ^{[a}`, `Θ^{a]}` and their `⋄`-versions.
pub fn boundary_derivation<L: Symbol>(
    a: L,
    side: Side,
    mode: BoundaryMode,
    diamond: Arc<dyn Diamond<L>>,
) -> Derivation<L> {
    let name = match (side, mode) {
        (Side::Left, BoundaryMode::Shuffle) => format!("Θ^[{a:?}"),
        (Side::Right, BoundaryMode::Shuffle) => format!("Θ^{a:?}]"),
        (Side::Left, BoundaryMode::Diamond) => format!("Θ⋄^[{a:?}"),
        (Side::Right, BoundaryMode::Diamond) => format!("Θ⋄^{a:?}]"),
    };
    let shift = -(a.weight() as i32);
    Derivation::new(name, shift, move |w| {
        let ls = w.letters();
        let r = ls.len();
        let maxl = if mode == BoundaryMode::Shuffle { r.min(1) } else { r };
        let mut out = LinComb::zero();
        for l in 1..=maxl {
            let (block, rest) = match side {
                Side::Left => (&ls[..l], Word::from_slice(&ls[l..])),
                Side::Right => (&ls[r - l..], Word::from_slice(&ls[..r - l])),
            };
            let c: Rational =
                block_product(diamond.as_ref(), block).into_iter().filter(|(b, _)| *b == a).map(|(_, c)| c).sum();
            if !c.is_zero() {
                out.add_term(rest, c * sign(l as i64 + 1) / int(l as i64));
            }
        }
        out
    })
}

/// `Θ_S = sum_{a∈S} Θ^{φ_a,a}` with
/// `Θ^{φ,a}(a_1...a_r) = sum_{j<r} 1_{a_j=a} a_1...a_{j-1} φ(a_{j+1}) a_{j+2}...
///                     - sum_{j>1} 1_{a_j=a} a_1...a_{j-2} φ(a_{j-1}) a_{j+1}...`.
/// Shared letter predicate.
pub type LetterPred<L> = Arc<dyn Fn(&L) -> bool + Send + Sync>;
/// Shared map from a letter to its image family.
pub type LetterFamily<L> = Arc<dyn Fn(&L) -> LetterMap<L> + Send + Sync>;

pub fn neighbor_derivation<L: Symbol>(
    name: &str,
    weight_shift: i32,
    in_s: LetterPred<L>,
    phis: LetterFamily<L>,
    diamond: Arc<dyn Diamond<L>>,
) -> Result<Derivation<L>> {
    let d = diamond.as_ref();
    let mut s = LetterSampler::<L>::new(SAMPLE_MAX_WEIGHT, 0x5eed_0003);
    for _ in 0..SAMPLE_COUNT {
        let (b, c) = (s.draw(), s.draw());
        if d.diamond(&b, &c).iter().any(|(e, x)| !x.is_zero() && in_s(e)) {
            return Err(Error::Hypothesis("im(⋄) avoids S".into(), describe(&[&b, &c])));
        }
        let Some(a) = s.draw_where(&|l| in_s(l)) else { break };
        let Some(a2) = s.draw_where(&|l| in_s(l)) else { break };
        let phi_a = phis(&a);
        if let Some(b) = s.draw_where(&|l| !in_s(l)) {
            let lhs = comb_map(&phi_a, &d.diamond(&b, &c));
            let rhs = comb_product(d, &phi_a(&b), &single(&c));
            if !comb_is_zero(&comb_sub(&lhs, &rhs)) {
                return Err(Error::Hypothesis(
                    "phi_a(b⋄c) = phi_a(b)⋄c for b outside S".into(),
                    describe(&[&a, &b, &c]),
                ));
            }
        }
        let lhs = comb_map(&phi_a, &d.diamond(&a2, &c));
        let rhs = comb_map(&phis(&a2), &d.diamond(&a, &c));
        if !comb_is_zero(&comb_sub(&lhs, &rhs)) {
            return Err(Error::Hypothesis("phi_a(a'⋄c) = phi_a'(a⋄c)".into(), describe(&[&a, &a2, &c])));
        }
    }
    Ok(Derivation::new(name, weight_shift, move |w| {
        let ls = w.letters();
        let r = ls.len();
        let mut out = LinComb::zero();
        for j in 0..r {
            if !in_s(&ls[j]) {
                continue;
            }
            let phi = phis(&ls[j]);
            if j + 1 < r {
                let without = w.splice(j..j + 1, &[]);
                replace_at(&without, j, 1, &phi(&ls[j + 1]), &Rational::one(), &mut out);
            }
            if j >= 1 {
                let without = w.splice(j..j + 1, &[]);
                replace_at(&without, j - 1, 1, &phi(&ls[j - 1]), &-Rational::one(), &mut out);
            }
        }
        out
    }))
}

/// `exp⋄ ∘ Θ ∘ log⋄`.
pub fn conjugate_by_exp_log<L: Symbol>(theta: &Derivation<L>, prod: &'static QuasiShuffle<L>) -> Derivation<L> {
    let t = theta.clone();
    Derivation::new(format!("exp∘{}∘log", theta.name()), theta.weight_shift(), move |w| {
        prod.exp_lc(&t.apply(&prod.log(w)))
    })
}

/// Letterwise commutator `[φ, ψ] = φ∘ψ - ψ∘φ`.
pub fn letter_commutator<L: Symbol>(phi: LetterMap<L>, psi: LetterMap<L>) -> LetterMap<L> {
    Arc::new(move |a: &L| comb_sub(&comb_map(&phi, &psi(a)), &comb_map(&psi, &phi(a))))
}

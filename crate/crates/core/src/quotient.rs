//! Weight-graded quotients of `(ℚ⟨𝒜⟩, ∗)` by the swap ideal `𝕀`, the
//! constant-term ideal `𝔑`, and their sum: generators, reduced echelon bases,
//! normal forms and dimensions, with an optional on-disk cache.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use dashmap::DashMap;
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::arith::{fmt_rational, parse_rational, Rational};
use crate::error::{Error, Result};
use crate::linalg::{from_pairs, Echelon, SparseVec};
use crate::lincomb::LinComb;
use crate::qshuffle::stuffle;
use crate::swap::swap_word;
use crate::word::{words_of_weight, AWord, Letter};

pub const FORMAT_VERSION: u32 = 1;

/// Default bound on the weights the library will build bases for.
pub const DEFAULT_MAX_WEIGHT: u32 = 9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdealKind {
    SwapIdeal,
    ConstantTermIdeal,
    Combined,
}

impl IdealKind {
    pub fn tag(self) -> &'static str {
        match self {
            IdealKind::SwapIdeal => "swap",
            IdealKind::ConstantTermIdeal => "constant",
            IdealKind::Combined => "combined",
        }
    }
}

impl fmt::Display for IdealKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for IdealKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "swap" | "I" => Ok(IdealKind::SwapIdeal),
            "constant" | "N" => Ok(IdealKind::ConstantTermIdeal),
            "combined" | "I+N" => Ok(IdealKind::Combined),
            _ => Err(Error::Cache(format!("unknown ideal kind {s}"))),
        }
    }
}

/// Whether `w` lies in `(𝒜¹)*(𝒜₀)*`: letters `[1;d]` followed by letters `[k;0]`.
pub fn is_constant_term_shape(w: &AWord) -> bool {
    let ls = w.letters();
    let split = ls.iter().position(|l| l.k() != 1).unwrap_or(ls.len());
    ls[split..].iter().all(|l| l.d() == 0)
}

fn swap_generators(weight: u32) -> Vec<LinComb<AWord>> {
    let mut out: Vec<LinComb<AWord>> = Vec::new();
    for wu in 1..=weight {
        let us: Vec<(AWord, LinComb<AWord>)> = words_of_weight::<Letter>(wu)
            .into_iter()
            .filter_map(|u| {
                let g = swap_word(&u) - LinComb::single(u.clone());
                (!g.is_zero()).then_some((u, g))
            })
            .collect();
        let vs = words_of_weight::<Letter>(weight - wu);
        let part: Vec<LinComb<AWord>> =
            us.par_iter().flat_map_iter(|(_, g)| vs.iter().map(move |v| g.map_linear(|t| stuffle(t, v)))).collect();
        out.extend(part);
    }
    out
}

fn constant_generators(weight: u32) -> Vec<LinComb<AWord>> {
    let mut out = Vec::new();
    for ww in 1..=weight {
        let gs: Vec<AWord> = words_of_weight::<Letter>(ww).into_iter().filter(|w| !is_constant_term_shape(w)).collect();
        let vs = words_of_weight::<Letter>(weight - ww);
        let part: Vec<LinComb<AWord>> =
            gs.par_iter().flat_map_iter(|g| vs.iter().map(move |v| stuffle(g, v))).collect();
        out.extend(part);
    }
    out
}

/// A homogeneous spanning set of the weight-`weight` slice of the ideal.
pub fn ideal_generators(kind: IdealKind, weight: u32) -> Vec<LinComb<AWord>> {
    let mut gens = match kind {
        IdealKind::SwapIdeal => swap_generators(weight),
        IdealKind::ConstantTermIdeal => constant_generators(weight),
        IdealKind::Combined => {
            let mut g = constant_generators(weight);
            g.extend(swap_generators(weight));
            g
        }
    };
    gens.retain(|g| !g.is_zero());
    gens
}

/// The fingerprint of a generator specification: kind, weight, format
/// version and the enumerated word basis.
pub fn fingerprint(kind: IdealKind, weight: u32, words: &[AWord]) -> String {
    let mut h = Sha256::new();
    h.update(format!("fmes-basis v{FORMAT_VERSION}\n{}\n{weight}\n", kind.tag()));
    for w in words {
        h.update(format!("{w:?}\n"));
    }
    hex::encode(h.finalize())
}

/// Reduced row echelon form of an ideal slice against the canonical word basis.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    kind: IdealKind,
    weight: u32,
    words: Vec<AWord>,
    index: HashMap<AWord, usize>,
    echelon: Echelon,
    fingerprint: String,
}

impl PartialEq for EchelonBasis {
    fn eq(&self, other: &Self) -> bool {
        self.to_text() == other.to_text()
    }
}

impl EchelonBasis {
    fn empty(kind: IdealKind, weight: u32) -> Self {
        let words = words_of_weight::<Letter>(weight);
        let index = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let fingerprint = fingerprint(kind, weight, &words);
        EchelonBasis { kind, weight, words, index, echelon: Echelon::new(), fingerprint }
    }

    /// Builds the basis by exact elimination of the generators.
    pub fn build(kind: IdealKind, weight: u32) -> Self {
        let mut b = EchelonBasis::empty(kind, weight);
        let mut seen: HashSet<SparseVec> = HashSet::new();
        let mut rows: Vec<SparseVec> = Vec::new();
        for g in ideal_generators(kind, weight) {
            let v = b.to_vec(&g);
            let v = normalize(v);
            if seen.insert(v.clone()) {
                rows.push(v);
            }
        }
        // short rows first keeps intermediate fill small
        rows.sort_by_key(|r| (r.len(), r.last().map(|x| x.0)));
        b.echelon = Echelon::from_spanning_rows(&rows, b.words.len());
        b
    }

    pub fn kind(&self) -> IdealKind {
        self.kind
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn words(&self) -> &[AWord] {
        &self.words
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    pub fn dim(&self) -> usize {
        self.words.len() - self.rank()
    }

    pub fn fingerprint(&self) -> &str {
        &self.fingerprint
    }

    pub fn echelon(&self) -> &Echelon {
        &self.echelon
    }

    /// Words not among the pivots: a basis of the quotient slice.
    pub fn quotient_basis(&self) -> Vec<AWord> {
        self.words.iter().enumerate().filter(|(i, _)| !self.echelon.is_pivot(*i)).map(|(_, w)| w.clone()).collect()
    }

    fn to_vec(&self, x: &LinComb<AWord>) -> SparseVec {
        from_pairs(x.iter().map(|(w, c)| (self.index[w], c.clone())).collect())
    }

    #[allow(clippy::wrong_self_convention)]
    fn from_vec(&self, v: &SparseVec) -> LinComb<AWord> {
        LinComb::from_terms(v.iter().map(|(i, c)| (self.words[*i].clone(), c.clone())))
    }

    /// Normal form of a homogeneous element of this weight.
    pub fn reduce(&self, x: &LinComb<AWord>) -> LinComb<AWord> {
        self.from_vec(&self.echelon.reduce(&self.to_vec(x)))
    }

    /// Coordinates of a homogeneous element in the quotient basis.
    pub fn coordinates(&self, x: &LinComb<AWord>) -> Vec<Rational> {
        let nf = self.reduce(x);
        self.quotient_basis().iter().map(|w| nf.coeff(w)).collect()
    }

    /// Portable text serialization.
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "fmes-basis {FORMAT_VERSION}\nkind {}\nweight {}\nfingerprint {}\nwords {}\nrank {}\n",
            self.kind.tag(),
            self.weight,
            self.fingerprint,
            self.words.len(),
            self.rank()
        );
        for (p, row) in self.echelon.rows_sorted() {
            s.push_str(&format!("row {p} {}", row.len()));
            for (c, x) in row {
                s.push_str(&format!(" {c}:{}", fmt_rational(x)));
            }
            s.push('\n');
        }
        s
    }

    /// Parses [`EchelonBasis::to_text`] output, checking it against the
    /// expected kind and weight.
    pub fn from_text(text: &str, kind: IdealKind, weight: u32) -> Result<Self> {
        let bad = |m: &str| Error::Cache(m.to_string());
        let mut b = EchelonBasis::empty(kind, weight);
        let mut lines = text.lines();
        let mut header = |key: &str| -> Result<String> {
            let line = lines.next().ok_or_else(|| bad("truncated header"))?;
            let rest = line
                .strip_prefix(key)
                .and_then(|r| r.strip_prefix(' '))
                .ok_or_else(|| bad(&format!("expected {key}")))?;
            Ok(rest.to_string())
        };
        if header("fmes-basis")? != FORMAT_VERSION.to_string() {
            return Err(bad("format version"));
        }
        if header("kind")? != kind.tag() || header("weight")? != weight.to_string() {
            return Err(bad("kind or weight"));
        }
        if header("fingerprint")? != b.fingerprint {
            return Err(bad("stale fingerprint"));
        }
        if header("words")? != b.words.len().to_string() {
            return Err(bad("word count"));
        }
        let rank: usize = header("rank")?.parse().map_err(|_| bad("rank"))?;
        let mut rows = Vec::with_capacity(rank);
        for line in lines {
            let mut parts = line.split(' ');
            if parts.next() != Some("row") {
                return Err(bad("row tag"));
            }
            let pivot: usize = parts.next().and_then(|x| x.parse().ok()).ok_or_else(|| bad("pivot"))?;
            let len: usize = parts.next().and_then(|x| x.parse().ok()).ok_or_else(|| bad("row length"))?;
            let mut row = Vec::with_capacity(len);
            for e in parts {
                let (c, x) = e.split_once(':').ok_or_else(|| bad("entry"))?;
                let c: usize = c.parse().map_err(|_| bad("column"))?;
                if c >= b.words.len() {
                    return Err(bad("column out of range"));
                }
                row.push((c, parse_rational(x).ok_or_else(|| bad("coefficient"))?));
            }
            if row.len() != len || row.last().map(|x| x.0) != Some(pivot) {
                return Err(bad("row shape"));
            }
            rows.push(row);
        }
        if rows.len() != rank {
            return Err(bad("row count"));
        }
        b.echelon = Echelon::from_rows(rows);
        if !b.echelon.is_reduced() {
            return Err(bad("rows not reduced"));
        }
        Ok(b)
    }
}

fn normalize(v: SparseVec) -> SparseVec {
    match v.last() {
        Some((_, lead)) => {
            let inv = Rational::from_integer(1.into()) / lead.clone();
            v.into_iter().map(|(c, x)| (c, x * &inv)).collect()
        }
        None => v,
    }
}

type Slot = Arc<OnceLock<Arc<EchelonBasis>>>;

static GLOBAL: OnceLock<Quotient> = OnceLock::new();

/// Lazily built quotient slices, shared across threads, with an optional
/// cache directory. Builds of one `(kind, weight)` are serialized; distinct
/// keys build in parallel.
pub struct Quotient {
    cache_dir: Option<PathBuf>,
    max_weight: u32,
    slots: DashMap<(IdealKind, u32), Slot>,
}

impl Default for Quotient {
    fn default() -> Self {
        Quotient::new(None)
    }
}

impl Quotient {
    pub fn new(cache_dir: Option<PathBuf>) -> Self {
        Quotient { cache_dir, max_weight: DEFAULT_MAX_WEIGHT, slots: DashMap::new() }
    }

    pub fn with_max_weight(mut self, max_weight: u32) -> Self {
        self.max_weight = max_weight;
        self
    }

    pub fn cache_dir(&self) -> Option<&Path> {
        self.cache_dir.as_deref()
    }

    pub fn max_weight(&self) -> u32 {
        self.max_weight
    }

    /// The process-wide instance; without [`Quotient::configure_global`] it has no disk cache.
    pub fn global() -> &'static Quotient {
        GLOBAL.get_or_init(Quotient::default)
    }

    /// Sets up the process-wide instance. Returns false if it was already in use.
    pub fn configure_global(cache_dir: Option<PathBuf>, max_weight: u32) -> bool {
        GLOBAL.set(Quotient::new(cache_dir).with_max_weight(max_weight)).is_ok()
    }

    pub fn cache_path(&self, kind: IdealKind, weight: u32) -> Option<PathBuf> {
        self.cache_dir.as_ref().map(|d| d.join(format!("{}_w{weight}.basis", kind.tag())))
    }

    /// The echelon basis of the weight slice, built or loaded on first use.
    pub fn basis(&self, kind: IdealKind, weight: u32) -> Result<Arc<EchelonBasis>> {
        if weight > self.max_weight {
            return Err(Error::Resource { weight, limit: self.max_weight });
        }
        let slot = self.slots.entry((kind, weight)).or_default().clone();
        Ok(slot.get_or_init(|| Arc::new(self.load_or_build(kind, weight))).clone())
    }

    fn load_or_build(&self, kind: IdealKind, weight: u32) -> EchelonBasis {
        let path = self.cache_path(kind, weight);
        if let Some(p) = &path {
            if let Ok(text) = fs::read_to_string(p) {
                match EchelonBasis::from_text(&text, kind, weight) {
                    Ok(b) => return b,
                    Err(e) => log::warn!("discarding cache file {}: {e}", p.display()),
                }
            }
        }
        log::info!("building {kind} basis at weight {weight}");
        let b = EchelonBasis::build(kind, weight);
        if let Some(p) = &path {
            if let Err(e) = write_atomic(p, &b.to_text()) {
                log::warn!("cannot write cache file {}: {e}", p.display());
            }
        }
        b
    }

    /// Drops in-memory bases (cache files are untouched).
    pub fn clear(&self) {
        self.slots.clear();
    }

    fn check_cutoff(x: &LinComb<AWord>, cutoff: u32) -> Result<()> {
        if let Some(w) = x.max_weight() {
            if w > cutoff {
                return Err(Error::CutoffExceeded { weight: w, cutoff });
            }
        }
        Ok(())
    }

    /// The normal form, computed weight by weight.
    pub fn normal_form(&self, x: &LinComb<AWord>, kind: IdealKind, cutoff: u32) -> Result<LinComb<AWord>> {
        Self::check_cutoff(x, cutoff)?;
        let mut out = LinComb::zero();
        for w in x.weights() {
            let b = self.basis(kind, w)?;
            out += &b.reduce(&x.homogeneous_component(w));
        }
        Ok(out)
    }

    pub fn in_ideal(&self, x: &LinComb<AWord>, kind: IdealKind, cutoff: u32) -> Result<bool> {
        Ok(self.normal_form(x, kind, cutoff)?.is_zero())
    }

    pub fn dim(&self, kind: IdealKind, weight: u32) -> Result<usize> {
        Ok(self.basis(kind, weight)?.dim())
    }

    pub fn rank(&self, kind: IdealKind, weight: u32) -> Result<usize> {
        Ok(self.basis(kind, weight)?.rank())
    }
}

fn write_atomic(path: &Path, text: &str) -> std::io::Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    fs::write(&tmp, text)?;
    fs::rename(&tmp, path)
}

/// `nf` in the swap quotient via the process-wide instance.
pub fn normal_form(x: &LinComb<AWord>, kind: IdealKind, cutoff: u32) -> Result<LinComb<AWord>> {
    Quotient::global().normal_form(x, kind, cutoff)
}

pub fn in_ideal(x: &LinComb<AWord>, kind: IdealKind, cutoff: u32) -> Result<bool> {
    Quotient::global().in_ideal(x, kind, cutoff)
}

pub fn dim(kind: IdealKind, weight: u32) -> Result<usize> {
    Quotient::global().dim(kind, weight)
}

//! Findings on open conjectures. Nothing here is asserted to hold.

use num_traits::Zero;

use crate::derivations::{apply_d, apply_delta, t_report, TReport};
use crate::error::Result;
use crate::linalg::{from_pairs, Echelon, SparseVec};
use crate::lincomb::LinComb;
use crate::quotient::{IdealKind, Quotient};
use crate::word::{words_of_weight, AWord, Letter};

fn coordinate_rows(xs: &[LinComb<AWord>], weight: u32) -> Result<(Vec<SparseVec>, usize)> {
    let basis = Quotient::global().basis(IdealKind::SwapIdeal, weight)?;
    let rows = xs
        .iter()
        .map(|x| from_pairs(basis.coordinates(x).into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()))
        .filter(|r: &SparseVec| !r.is_empty())
        .collect();
    Ok((rows, basis.dim()))
}

/// Rank of the classes of `xs` in FMES_k.
pub fn fmes_span_dim(xs: &[LinComb<AWord>], weight: u32) -> Result<usize> {
    let (rows, n) = coordinate_rows(xs, weight)?;
    Ok(Echelon::from_spanning_rows(&rows, n).rank())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationRow {
    pub weight: u32,
    pub fil0_dim: usize,
    pub fmes_dim: usize,
}

/// dim Fil^lwt_0 FMES_k against dim FMES_k.
pub fn lwt_filtration_dims(max_weight: u32) -> Result<Vec<FiltrationRow>> {
    (0..=max_weight)
        .map(|k| {
            let xs: Vec<_> =
                words_of_weight::<Letter>(k).into_iter().filter(|w| w.lwt() == 0).map(LinComb::single).collect();
            Ok(FiltrationRow {
                weight: k,
                fil0_dim: fmes_span_dim(&xs, k)?,
                fmes_dim: Quotient::global().dim(IdealKind::SwapIdeal, k)?,
            })
        })
        .collect()
}

/// Spanning words of 𝓔ᶠ_k: G(k₁,…,k_r) with every k_i ≥ 2.
pub fn eisenstein_words(weight: u32) -> Vec<AWord> {
    words_of_weight::<Letter>(weight)
        .into_iter()
        .filter(|w| w.lwt() == 0 && w.letters().iter().all(|l| l.k() >= 2))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureFinding {
    pub operator: &'static str,
    pub checked: usize,
    /// source words whose image leaves 𝓔ᶠ
    pub outside: Vec<AWord>,
}

fn closure(
    name: &'static str,
    max_weight: u32,
    shift: i32,
    op: fn(&LinComb<AWord>) -> LinComb<AWord>,
) -> Result<ClosureFinding> {
    let mut finding = ClosureFinding { operator: name, checked: 0, outside: Vec::new() };
    for k in 0..=max_weight {
        let target = k as i32 + shift;
        if target < 0 || target as u32 > max_weight {
            continue;
        }
        let t = target as u32;
        let span: Vec<_> = eisenstein_words(t).into_iter().map(LinComb::single).collect();
        let base = fmes_span_dim(&span, t)?;
        for w in eisenstein_words(k) {
            finding.checked += 1;
            let mut with = span.clone();
            with.push(op(&LinComb::single(w.clone())));
            if fmes_span_dim(&with, t)? > base {
                finding.outside.push(w);
            }
        }
    }
    Ok(finding)
}

/// Whether D and δ map 𝓔ᶠ into itself, images of weight ≤ `max_weight`.
pub fn eisenstein_closure(max_weight: u32) -> Result<Vec<ClosureFinding>> {
    Ok(vec![closure("D", max_weight, 2, apply_d)?, closure("delta", max_weight, -2, apply_delta)?])
}

/// All conjecture findings up to the given weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureReport {
    pub t: TReport,
    pub filtration: Vec<FiltrationRow>,
    pub closure: Vec<ClosureFinding>,
}

pub fn conjecture_report(t_weight: u32, filtration_weight: u32, closure_weight: u32) -> Result<ConjectureReport> {
    Ok(ConjectureReport {
        t: t_report(t_weight)?,
        filtration: lwt_filtration_dims(filtration_weight)?,
        closure: eisenstein_closure(closure_weight)?,
    })
}

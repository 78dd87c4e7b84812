use fmes_core::arith::int;
use fmes_core::derivations::{apply_d, apply_d_lwt0, d_single_admissible};
use fmes_core::lincomb::LinComb;
use fmes_core::qshuffle::stuffle_lc;
use fmes_core::quotient::{ideal_generators, EchelonBasis, IdealKind, Quotient};
use fmes_core::swap::swap_word;
use fmes_core::word::{count_words, words_of_weight, words_up_to, AWord, Letter};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SWAP: IdealKind = IdealKind::SwapIdeal;

fn g(ks: &[u32]) -> LinComb<AWord> {
    LinComb::single(AWord::from_ks(ks))
}

fn q() -> &'static Quotient {
    Quotient::global()
}

#[test]
fn fmes_dimensions_to_weight_7() {
    let want = [1, 1, 2, 4, 7, 13, 23, 41];
    for (k, d) in want.iter().enumerate() {
        let b = q().basis(SWAP, k as u32).unwrap();
        assert_eq!(b.dim(), *d, "weight {k}");
        assert_eq!(b.dim() + b.rank(), count_words(k as u32) as usize);
    }
}

#[test]
fn small_examples() {
    assert!(ideal_generators(SWAP, 1).is_empty());
    let gens = ideal_generators(SWAP, 2);
    let rel = LinComb::single(AWord::from_kd(&[1], &[1])) - g(&[2]);
    assert!(gens.iter().any(|x| *x == rel || *x == -rel.clone()));
    let cgens = ideal_generators(IdealKind::ConstantTermIdeal, 3);
    assert!(cgens.contains(&LinComb::single(AWord::from_kd(&[2], &[1]))));
    assert_eq!(q().rank(SWAP, 2).unwrap(), 1);
    assert_eq!(q().rank(SWAP, 0).unwrap(), 0);
    assert_eq!(q().rank(IdealKind::Combined, 3).unwrap(), 5);
    assert_eq!(q().dim(IdealKind::Combined, 3).unwrap(), 3);
    assert!(!q().in_ideal(&g(&[2]), SWAP, 2).unwrap());
}

#[test]
fn displayed_relation_in_weight_4() {
    let x = g(&[4]) - g(&[2, 2]).scale(&int(2)) + g(&[3, 1]).scale(&int(2));
    assert!(q().normal_form(&x, SWAP, 4).unwrap().is_zero());
    assert!(q().normal_form(&x, SWAP, 3).is_err());
}

#[test]
fn swap_generators_and_words_agree_with_their_swaps() {
    for w in words_up_to::<Letter>(6) {
        let x = LinComb::single(w.clone());
        let s = swap_word(&w);
        assert!(q().in_ideal(&(s.clone() - x.clone()), SWAP, 6).unwrap());
        assert_eq!(q().normal_form(&x, SWAP, 6).unwrap(), q().normal_form(&s, SWAP, 6).unwrap());
    }
}

#[test]
fn normal_form_is_a_multiplicative_projection() {
    let pool = words_up_to::<Letter>(3);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..60 {
        let mut x = LinComb::zero();
        let mut y = LinComb::zero();
        for _ in 0..3 {
            x.add_term(pool[rng.gen_range(0..pool.len())].clone(), int(rng.gen_range(-2..=2)));
            y.add_term(pool[rng.gen_range(0..pool.len())].clone(), int(rng.gen_range(-2..=2)));
        }
        let nx = q().normal_form(&x, SWAP, 6).unwrap();
        let ny = q().normal_form(&y, SWAP, 6).unwrap();
        assert_eq!(q().normal_form(&nx, SWAP, 6).unwrap(), nx);
        let lhs = q().normal_form(&stuffle_lc(&x, &y), SWAP, 6).unwrap();
        let rhs = q().normal_form(&stuffle_lc(&nx, &ny), SWAP, 6).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn d_vanishes_modulo_the_combined_ideal() {
    for w in words_up_to::<Letter>(4) {
        let dx = apply_d(&LinComb::single(w.clone()));
        assert!(q().in_ideal(&dx, IdealKind::Combined, 6).unwrap(), "D{w}");
    }
}

#[test]
fn d_on_lwt0_words_agrees_modulo_swap_ideal() {
    for w in words_up_to::<Letter>(6).into_iter().filter(|w| w.lwt() == 0) {
        let diff = apply_d(&LinComb::single(w.clone())) - apply_d_lwt0(&w, 8).unwrap();
        assert!(q().in_ideal(&diff, SWAP, 8).unwrap(), "D{w}");
    }
    for k in 2..=6 {
        let diff = apply_d(&g(&[k])) - d_single_admissible(k);
        assert!(q().in_ideal(&diff, SWAP, 8).unwrap(), "D G({k})");
    }
}

#[test]
fn builds_are_deterministic_and_cache_round_trips() {
    for kind in [SWAP, IdealKind::ConstantTermIdeal, IdealKind::Combined] {
        for k in 0..=5 {
            let a = EchelonBasis::build(kind, k);
            let b = EchelonBasis::build(kind, k);
            assert_eq!(a.to_text(), b.to_text());
            let c = EchelonBasis::from_text(&a.to_text(), kind, k).unwrap();
            assert_eq!(c.to_text(), a.to_text());
            assert!(c.echelon().is_reduced());
        }
    }
}

#[test]
fn disk_cache_is_used_and_repaired() {
    let dir = tempfile::tempdir().unwrap();
    let qa = Quotient::new(Some(dir.path().to_path_buf()));
    let b = qa.basis(SWAP, 5).unwrap();
    let path = qa.cache_path(SWAP, 5).unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text, b.to_text());
    std::fs::write(&path, text.replace("rank 42", "rank 41")).unwrap();
    let qb = Quotient::new(Some(dir.path().to_path_buf()));
    assert_eq!(qb.basis(SWAP, 5).unwrap().to_text(), b.to_text());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), b.to_text());
    let qc = Quotient::new(None).with_max_weight(3);
    assert!(qc.basis(SWAP, 4).is_err());
}

#[test]
fn normal_forms_live_on_the_quotient_basis() {
    let b = q().basis(SWAP, 4).unwrap();
    let basis = b.quotient_basis();
    assert_eq!(basis.len(), 7);
    for w in words_of_weight::<Letter>(4) {
        let nf = b.reduce(&LinComb::single(w));
        assert!(nf.terms().all(|v| basis.contains(v)));
    }
}

use fmes_core::lincomb::LinComb;
use fmes_core::swap::{swap, swap_coeff_formula, swap_word};
use fmes_core::word::{words_of_weight, AWord, Letter};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn involution_and_gradings_up_to_weight_7() {
    for k in 0..=7 {
        for w in words_of_weight::<Letter>(k) {
            let s = swap_word(&w);
            assert_eq!(swap(&s), LinComb::single(w.clone()), "σ² at {w}");
            for v in s.terms() {
                assert_eq!(v.weight(), w.weight());
                assert_eq!(v.depth(), w.depth());
                assert_eq!(v.lwt(), w.weight() - w.depth() as u32 - w.lwt(), "lwt of σ({w}) term {v}");
            }
        }
    }
}

#[test]
fn closed_formula_agrees_exhaustively_at_weight_6() {
    let words = words_of_weight::<Letter>(6);
    assert_eq!(words.len(), 144);
    for w in words_of_weight::<Letter>(1).into_iter().chain((2..=6).flat_map(words_of_weight::<Letter>)) {
        assert_eq!(swap_coeff_formula(&w), swap_word(&w), "closed formula at {w}");
    }
}

#[test]
fn closed_formula_agrees_on_random_words_to_weight_8() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let pool: Vec<AWord> = (1..=8).flat_map(words_of_weight::<Letter>).collect();
    for _ in 0..500 {
        let w = &pool[rng.gen_range(0..pool.len())];
        assert_eq!(swap_coeff_formula(w), swap_word(w), "closed formula at {w}");
    }
}

#[test]
fn swap_exchanges_one_letters_and_lwt_zero() {
    // σ(ℚ⟨𝒜¹⟩) = ℚ⟨𝒜₀⟩ and conversely
    for k in 1..=6 {
        for w in words_of_weight::<Letter>(k) {
            let all_one = w.letters().iter().all(|l| l.k() == 1);
            let all_lwt0 = w.lwt() == 0;
            let s = swap_word(&w);
            if all_one {
                assert!(s.terms().all(|v| v.lwt() == 0), "σ({w}) = {s}");
            }
            if all_lwt0 {
                assert!(s.terms().all(|v| v.letters().iter().all(|l| l.k() == 1)), "σ({w}) = {s}");
            }
        }
    }
}

#[test]
fn depth_one_conjugates_the_young_diagram() {
    // (k-1, d) ↦ (d, k-1) with factor d!/(k-1)!
    use fmes_core::arith::factorial_q;
    for k in 1..=5u32 {
        for d in 0..=5u32 {
            let w = AWord::from_kd(&[k], &[d]);
            let want = LinComb::from_term(AWord::from_kd(&[d + 1], &[k - 1]), factorial_q(d) / factorial_q(k - 1));
            assert_eq!(swap_word(&w), want);
        }
    }
}

#[test]
fn restriction_examples() {
    let x = LinComb::single(AWord::from_kd(&[1], &[2]));
    assert_eq!(swap(&x), LinComb::from_term(AWord::from_ks(&[3]), fmes_core::arith::int(2)));
    let y = LinComb::single(AWord::from_kd(&[1, 1], &[0, 1]));
    assert_eq!(swap(&y), LinComb::single(AWord::from_ks(&[2, 1])));
    assert!(swap(&LinComb::zero()).is_zero());
}

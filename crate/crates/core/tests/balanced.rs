use fmes_core::arith::{int, rat};
use fmes_core::balanced::{
    b0_words, balanced_quotient_dim, d_balanced, phi, phi_inverse, phi_inverse_lc, phi_lc, phi_slice_rank, tau,
};
use fmes_core::derivations::apply_d;
use fmes_core::qshuffle::{stuffle_b, stuffle_lc};
use fmes_core::swap::swap;
use fmes_core::word::words_of_weight;
use fmes_core::{AWord, BWord, Error, LinComb};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn b(is: &[u32]) -> BWord {
    BWord::from_indices(is)
}

fn pool(max: u32) -> Vec<BWord> {
    (1..=max).flat_map(b0_words).collect()
}

#[test]
fn balanced_stuffle() {
    assert_eq!(stuffle_b(&b(&[1]), &b(&[1])), LinComb::from_term(b(&[1, 1]), int(2)) + LinComb::single(b(&[2])));
    assert_eq!(stuffle_b(&b(&[1]), &b(&[0])), LinComb::single(b(&[1, 0])) + LinComb::single(b(&[0, 1])));
    assert_eq!(stuffle_b(&b(&[]), &b(&[3, 0])), LinComb::single(b(&[3, 0])));
    // ℚ⟨𝓑⟩⁰ is closed under the product
    for u in pool(3) {
        for v in pool(3) {
            assert!(stuffle_b(&u, &v).terms().all(|w| w.is_in_b0()), "{u} * {v}");
        }
    }
}

#[test]
fn tau_examples() {
    assert_eq!(tau(&b(&[2])).unwrap(), b(&[1, 0]));
    assert_eq!(tau(&b(&[2, 0])).unwrap(), b(&[2, 0]));
    assert!(matches!(tau(&b(&[0, 1])), Err(Error::StartsWithB0(_))));
    let words = pool(7);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let w = &words[rng.gen_range(0..words.len())];
        let t = tau(w).unwrap();
        assert_eq!(tau(&t).unwrap(), *w);
        assert_eq!(t.weight(), w.weight());
    }
}

#[test]
fn phi_examples() {
    for k in 1..=5 {
        assert_eq!(phi(&b(&[k])).unwrap(), LinComb::single(AWord::from_kd(&[k], &[0])));
    }
    assert_eq!(phi(&b(&[2, 0, 0])).unwrap(), LinComb::from_term(AWord::from_kd(&[2], &[2]), rat(1, 2)));
    // b₁b₀b₁: the coefficient of Y₁ in Y₁ and in Y₂ − Y₁
    let x = phi(&b(&[1, 0, 1])).unwrap();
    assert_eq!(
        x,
        LinComb::single(AWord::from_kd(&[1, 1], &[1, 0])) - LinComb::single(AWord::from_kd(&[1, 1], &[0, 1]))
    );
}

#[test]
fn phi_is_a_graded_bijection() {
    for k in 0..=6 {
        let (rank, nb, na) = phi_slice_rank(k).unwrap();
        assert_eq!((rank, nb), (na, na), "weight {k}");
        for a in words_of_weight::<fmes_core::Letter>(k) {
            assert_eq!(phi_lc(&phi_inverse(&a)).unwrap(), LinComb::single(a.clone()), "{a}");
        }
    }
}

#[test]
fn phi_is_an_algebra_map() {
    let words = pool(5);
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut n = 0;
    while n < 100 {
        let u = &words[rng.gen_range(0..words.len())];
        let v = &words[rng.gen_range(0..words.len())];
        if u.weight() + v.weight() > 6 {
            continue;
        }
        n += 1;
        let lhs = phi_lc(&stuffle_b(u, v)).unwrap();
        let rhs = stuffle_lc(&phi(u).unwrap(), &phi(v).unwrap());
        assert_eq!(lhs, rhs, "{u} * {v}");
    }
}

#[test]
fn phi_intertwines_tau_and_swap() {
    for k in 1..=6 {
        for w in b0_words(k) {
            let lhs = swap(&phi(&w).unwrap());
            let rhs = phi(&tau(&w).unwrap()).unwrap();
            assert_eq!(lhs, rhs, "{w}");
        }
    }
}

#[test]
fn balanced_derivative() {
    assert_eq!(d_balanced(&b(&[1])).unwrap(), LinComb::single(b(&[2, 0])));
    assert_eq!(d_balanced(&b(&[2])).unwrap(), LinComb::from_term(b(&[3, 0]), int(2)));
    let words = pool(6);
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..100 {
        let w = &words[rng.gen_range(0..words.len())];
        let lhs = phi_lc(&d_balanced(w).unwrap()).unwrap();
        assert_eq!(lhs, apply_d(&phi(w).unwrap()), "{w}");
    }
    // and back through φ⁻¹
    let x = LinComb::single(AWord::from_kd(&[2, 1], &[0, 1]));
    let back = phi_inverse_lc(&apply_d(&x));
    let via = fmes_core::balanced::d_balanced_lc(&phi_inverse_lc(&x)).unwrap();
    assert_eq!(back, via);
}

#[test]
fn balanced_quotient_matches_fmes_dimensions() {
    let dims: Vec<usize> = (0..=5).map(|k| balanced_quotient_dim(k).unwrap()).collect();
    assert_eq!(dims, vec![1, 1, 2, 4, 7, 13]);
}

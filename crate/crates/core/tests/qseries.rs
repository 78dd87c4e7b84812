use fmes_core::arith::{int, rat};
use fmes_core::derivations::apply_d;
use fmes_core::lincomb::LinComb;
use fmes_core::qseries::{
    check_d_intertwining, check_depth_one_symmetry, check_lower_weight_stuffle, check_quasimodular,
    check_swap_invariance, eisenstein_e, eisenstein_g, eta_product_delta, g_series, g_series_lc,
    independence_witness_rank, QSeries,
};
use fmes_core::swap::swap;
use fmes_core::{AWord, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn a(ks: &[u32], ds: &[u32]) -> AWord {
    AWord::from_kd(ks, ds)
}

fn ints(xs: &[i64]) -> Vec<Rational> {
    xs.iter().map(|&x| int(x)).collect()
}

// Σ over m₁ > … > m_r > 0, n_i > 0 by brute force
fn brute(w: &AWord, order: usize) -> Vec<Rational> {
    fn rec(ls: &[(u32, u32)], below: usize, budget: usize, acc: Rational, out: &mut Vec<Rational>, spent: usize) {
        let Some(((k, d), rest)) = ls.split_first() else {
            out[spent] += acc;
            return;
        };
        for m in 1..below {
            let mut n = 1;
            while m * n <= budget {
                let f = int(n as i64).pow(*k as i32 - 1) * int(m as i64).pow(*d as i32)
                    / fmes_core::arith::factorial_q(k - 1);
                rec(rest, m, budget - m * n, &acc * f, out, spent + m * n);
                n += 1;
            }
        }
    }
    let ls: Vec<(u32, u32)> = w.letters().iter().map(|l| (l.k(), l.d())).collect();
    let mut out = vec![int(0); order + 1];
    rec(&ls, order + 1, order, int(1), &mut out, 0);
    out
}

#[test]
fn g_series_examples() {
    let s = g_series(&a(&[1], &[0]), 4);
    assert_eq!(s.coeffs()[1..], ints(&[1, 2, 2, 3])[..]);
    let s = g_series(&a(&[2], &[0]), 4);
    assert_eq!(s.coeffs()[1..], ints(&[1, 3, 4, 7])[..]);
    assert_eq!(g_series(&a(&[1], &[1]), 12), g_series(&a(&[2], &[0]), 12));
    assert_eq!(g_series(&AWord::empty(), 3), QSeries::constant(int(1), 3));
}

#[test]
fn g_series_matches_brute_force() {
    for w in [a(&[2, 1], &[0, 1]), a(&[1, 2, 1], &[1, 0, 0]), a(&[3, 1], &[0, 0]), a(&[1, 1, 1], &[0, 0, 0])] {
        assert_eq!(g_series(&w, 18).coeffs(), &brute(&w, 18)[..], "{w}");
    }
}

#[test]
fn eisenstein_series() {
    let g2 = eisenstein_g(2, 4).unwrap();
    assert_eq!(g2.coeffs(), &[rat(-1, 24), int(1), int(3), int(4), int(7)][..]);
    assert_eq!(eisenstein_g(4, 2).unwrap().coeff(0), rat(1, 1440));
    assert!(eisenstein_g(1, 4).is_err());
    assert_eq!(eisenstein_e(4, 2).unwrap().coeffs(), &ints(&[1, 240, 2160])[..]);
    // the non-constant part of G(k) is g[k;0]
    for k in 2..=8 {
        let g = eisenstein_g(k, 20).unwrap();
        let tail = &g - &QSeries::constant(g.coeff(0), 20);
        assert_eq!(tail, g_series(&a(&[k], &[0]), 20));
    }
}

#[test]
fn delta_coefficients() {
    let d = eta_product_delta(4);
    assert_eq!(d.coeffs(), &ints(&[0, 1, -24, 252, -1472])[..]);
}

#[test]
fn swap_invariance_to_weight_6() {
    let c = check_swap_invariance(6, 25);
    assert!(c.passed, "{c}");
    // [3;0] against ½·g[1;2]
    let x = swap(&LinComb::single(a(&[3], &[0])));
    assert_eq!(x, LinComb::from_term(a(&[1], &[2]), rat(1, 2)));
    assert_eq!(g_series_lc(&x, 30), g_series(&a(&[3], &[0]), 30));
    assert_eq!(g_series(&a(&[2, 1], &[0, 0]), 30), g_series_lc(&swap(&LinComb::single(a(&[2, 1], &[0, 0]))), 30));
}

#[test]
fn q_derivative_intertwining() {
    let c = check_d_intertwining(6, 25);
    assert!(c.passed, "{c}");
    let pool: Vec<AWord> = (1..=7).flat_map(fmes_core::word::words_of_weight::<fmes_core::Letter>).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let w = &pool[rng.gen_range(0..pool.len())];
        let x = LinComb::single(w.clone());
        assert_eq!(g_series_lc(&apply_d(&x), 20), g_series(w, 20).q_derivative(), "{w}");
    }
}

#[test]
fn depth_one_symmetry() {
    let c = check_depth_one_symmetry(7, 25);
    assert!(c.passed, "{c}");
}

#[test]
fn product_with_lower_weight_term() {
    for c in check_lower_weight_stuffle(25) {
        assert!(c.passed, "{c}");
    }
}

#[test]
fn quasimodular_identities_to_order_25() {
    for c in check_quasimodular(25).unwrap() {
        assert!(c.passed, "{c}");
    }
}

#[test]
fn eisenstein_series_are_independent() {
    assert_eq!(independence_witness_rank().unwrap(), 3);
}

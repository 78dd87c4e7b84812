use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use fmes_core::balanced::{b0_words, phi};
use fmes_core::derivations::{apply_d, apply_delta};
use fmes_core::qseries::{eisenstein_g, g_series};
use fmes_core::qshuffle::stuffle;
use fmes_core::quotient::{EchelonBasis, IdealKind};
use fmes_core::swap::{swap_coeff_formula, swap_word};
use fmes_core::word::{words_of_weight, AWord, Letter};
use fmes_core::LinComb;

fn products(c: &mut Criterion) {
    let mut g = c.benchmark_group("stuffle");
    for depth in [2u32, 3, 4] {
        let u = AWord::from_kd(&vec![2; depth as usize], &vec![1; depth as usize]);
        let v = AWord::from_kd(&vec![3; depth as usize], &vec![0; depth as usize]);
        g.bench_with_input(BenchmarkId::from_parameter(depth), &(u, v), |b, (u, v)| {
            b.iter(|| stuffle(black_box(u), black_box(v)))
        });
    }
    g.finish();
}

fn swaps(c: &mut Criterion) {
    let words = words_of_weight::<Letter>(5);
    c.bench_function("swap/series weight 5", |b| {
        b.iter(|| words.iter().map(|w| swap_word(black_box(w)).len()).sum::<usize>())
    });
    c.bench_function("swap/formula weight 5", |b| {
        b.iter(|| words.iter().map(|w| swap_coeff_formula(black_box(w)).len()).sum::<usize>())
    });
}

fn derivations(c: &mut Criterion) {
    let words: Vec<_> = words_of_weight::<Letter>(6).into_iter().map(LinComb::single).collect();
    c.bench_function("derivation/D weight 6", |b| {
        b.iter(|| words.iter().map(|x| apply_d(black_box(x)).len()).sum::<usize>())
    });
    c.bench_function("derivation/delta weight 6", |b| {
        b.iter(|| words.iter().map(|x| apply_delta(black_box(x)).len()).sum::<usize>())
    });
}

fn echelon(c: &mut Criterion) {
    let mut g = c.benchmark_group("echelon");
    g.sample_size(10);
    for k in [4u32, 5, 6] {
        g.bench_with_input(BenchmarkId::new("swap ideal", k), &k, |b, &k| {
            b.iter(|| EchelonBasis::build(IdealKind::SwapIdeal, k).rank())
        });
    }
    g.finish();
}

fn qseries(c: &mut Criterion) {
    let w = AWord::from_kd(&[2, 3], &[1, 0]);
    c.bench_function("qseries/g[2,3;1,0] order 25", |b| b.iter(|| g_series(black_box(&w), 25)));
    c.bench_function("qseries/G(12) order 25", |b| b.iter(|| eisenstein_g(12, 25).unwrap()));
}

fn balanced(c: &mut Criterion) {
    let words = b0_words(6);
    c.bench_function("balanced/phi weight 6", |b| {
        b.iter(|| words.iter().map(|w| phi(black_box(w)).unwrap().len()).sum::<usize>())
    });
}

criterion_group!(benches, products, swaps, derivations, echelon, qseries, balanced);
criterion_main!(benches);

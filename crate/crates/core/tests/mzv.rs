use fmes_core::arith::{bernoulli, factorial_q, int, rat};
use fmes_core::mzv::{
    compare_dims, eds_check, eds_dim, eds_ideal_rank, verify_depth2_zeta, verify_lwt0_surjective, verify_pi_d,
    verify_xi_span, verify_zeta_homomorphism, xi_f, zeta_character, zeta_f, zeta_f_z, Character, ZfRing,
};
use fmes_core::ring::{CoeffRing, RationalField};
use fmes_core::{AWord, Error, Rational, ZWord};

fn z(ks: &[u32]) -> ZWord {
    ZWord::from_ks(ks)
}

// M_{k_1…k_r}(t_1,…,t_N) = Σ_{n_1>…>n_r} Π t_{n_i}^{k_i}, a stuffle character
fn quasi_symmetric(w: &ZWord, t: &[Rational]) -> Rational {
    fn rec(ks: &[u32], t: &[Rational], below: usize) -> Rational {
        match ks.split_first() {
            None => int(1),
            Some((k, rest)) => (0..below).map(|n| t[n].pow(*k as i32) * rec(rest, t, n)).sum(),
        }
    }
    let ks: Vec<u32> = w.letters().iter().map(|l| l.0).collect();
    rec(&ks, t, t.len())
}

#[test]
fn formal_zeta_values() {
    assert_eq!(zeta_f_z(&z(&[3]), 6).unwrap(), zeta_f_z(&z(&[2, 1]), 6).unwrap());
    assert!(!zeta_f_z(&z(&[1]), 6).unwrap().is_zero());
    let ring = ZfRing::new(6);
    let z2 = zeta_f_z(&z(&[2]), 6).unwrap();
    for m in 1..=3u32 {
        let c = bernoulli(2 * m as usize) / (int(2) * factorial_q(2 * m)) * int(-24).pow(m as i32);
        let x = zeta_f_z(&z(&[2 * m]), 6).unwrap() + ring.pow(&z2, m).scale(&c);
        assert!(x.is_zero(), "Euler m={m}: {x}");
    }
    assert!(matches!(zeta_f_z(&z(&[7]), 6), Err(Error::CutoffExceeded { .. })));
}

#[test]
fn conjugated_zeta_values() {
    assert_eq!(xi_f(&[1], 6).unwrap(), zeta_f_z(&z(&[2]), 6).unwrap());
    assert_eq!(xi_f(&[0], 6).unwrap(), zeta_f_z(&z(&[1]), 6).unwrap());
    // a derivative lies in 𝔑
    assert!(zeta_f(&AWord::from_kd(&[2], &[1]), 6).unwrap().is_zero());
    for k in 1..=6 {
        let c = verify_xi_span(k).unwrap();
        assert!(c.passed, "{c}");
    }
}

#[test]
fn eds_ranks() {
    assert_eq!(eds_ideal_rank(1), 0);
    assert_eq!(eds_ideal_rank(2), 0);
    assert_eq!(eds_ideal_rank(3), 1);
    assert_eq!(eds_dim(3), 3);
    assert_eq!(eds_dim(0), 1);
}

#[test]
fn eds_and_formal_zeta_dimensions_agree() {
    let table = compare_dims(6).unwrap();
    for row in &table {
        assert!(row.agrees(), "{row:?}");
    }
    let dims: Vec<usize> = table.iter().map(|r| r.zf_dim).collect();
    assert_eq!(dims, vec![1, 1, 2, 3, 4, 6, 8]);
}

#[test]
fn projection_properties_to_weight_6() {
    for c in [verify_pi_d(6).unwrap(), verify_zeta_homomorphism(6).unwrap()] {
        assert!(c.passed, "{c}");
    }
    for k in 0..=6 {
        let c = verify_lwt0_surjective(k).unwrap();
        assert!(c.passed, "{c}");
    }
}

#[test]
fn depth2_double_shuffle_of_zeta_values() {
    for k in 2..=7 {
        for k1 in 1..k {
            let c = verify_depth2_zeta(k1, k - k1, 7).unwrap();
            assert!(c.passed, "{c}");
        }
    }
}

#[test]
fn character_operations() {
    let r = RationalField;
    let t = [rat(1, 2), rat(1, 3), rat(1, 5)];
    let phi = Character::from_fn(r, 5, |w| quasi_symmetric(w, &t));
    let unit = Character::unit(r, 5);
    let left = unit.convolution(&phi).unwrap();
    let right = phi.convolution(&unit).unwrap();
    for w in [z(&[]), z(&[2]), z(&[1, 3]), z(&[2, 1, 1])] {
        assert_eq!(left.value(&w), phi.value(&w));
        assert_eq!(right.value(&w), phi.value(&w));
    }
    let psi = Character::from_fn(r, 5, |w| int(w.depth() as i64 + 1));
    let a = phi.convolution(&psi).unwrap().convolution(&phi).unwrap();
    let b = phi.convolution(&psi.convolution(&phi).unwrap()).unwrap();
    assert_eq!(a.value(&z(&[1, 2, 1])), b.value(&z(&[1, 2, 1])));
    assert!(matches!(phi.convolution(&Character::unit(r, 4)), Err(Error::CutoffMismatch(5, 4))));

    // Φ₂ = X₁ ↦ X₁ + X₂
    let e = Character::from_fn(r, 5, |w| if *w == z(&[2, 1]) { int(1) } else { int(0) });
    let s = e.sigma_star();
    assert_eq!(s.value(&z(&[2, 1])), int(1));
    assert_eq!(s.value(&z(&[1, 2])), int(1));
    // Φ₂ = X₂² ↦ X₁²
    let e = Character::from_fn(r, 5, |w| if *w == z(&[1, 3]) { int(1) } else { int(0) });
    assert_eq!(e.sigma_star().value(&z(&[3, 1])), int(1));

    let corr = phi.phi_corr();
    assert_eq!(corr.value(&z(&[1])), int(0));
    assert_eq!(corr.value(&z(&[1, 1])), phi.value(&z(&[2])) / int(2));
    assert_eq!(corr.value(&z(&[1, 1, 1])), -phi.value(&z(&[3])) / int(3));
    assert_eq!(corr.value(&z(&[2])), int(0));
}

#[test]
fn stuffle_characters_need_not_satisfy_eds() {
    let t = [rat(1, 2), rat(1, 3), rat(1, 5)];
    let phi = Character::from_fn(RationalField, 5, |w| quasi_symmetric(w, &t));
    let report = eds_check(&phi).unwrap();
    assert!(report.stuffle_ok());
    assert!(!report.shuffle_ok());
}

#[test]
fn formal_zeta_values_satisfy_eds() {
    let phi = zeta_character(5).unwrap();
    let report = eds_check(&phi).unwrap();
    assert!(report.passed(), "{report:?}");
    assert!(report.pairs > 20);
}

#[test]
fn zf_ring_inverse() {
    let ring = ZfRing::new(4);
    let x = fmes_core::LinComb::one() + zeta_f_z(&z(&[2]), 4).unwrap();
    let y = ring.inverse(&x).unwrap();
    assert_eq!(ring.mul(&x, &y), ring.one());
}

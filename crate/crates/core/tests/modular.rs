use fmes_core::arith::{int, rat};
use fmes_core::modular::qmf::{term, QmfPolynomial};
use fmes_core::modular::symbolic::{d_symbolic, delta_symbolic, g4_displayed, to_derivatives};
use fmes_core::modular::{
    delta_cusp_form, depth2_dsh_sides, eisenstein_symbolic, euler_coefficient, euler_decomposition, g, gd,
    mk_decomposition, rankin_cohen, rankin_cohen_symbolic, verify_chazy, verify_cusp_direct, verify_cusp_properties,
    verify_depth2_dsh, verify_euler_symbolic, verify_mfprod, verify_ramanujan, verify_rc_delta_closure,
    verify_relpevevk, MfProd,
};
use fmes_core::qshuffle::stuffle_lc;
use fmes_core::quotient::Quotient;
use fmes_core::report::Check;
use fmes_core::Error;

fn assert_all(checks: &[Check]) {
    for c in checks {
        assert!(c.passed, "{c}");
    }
}

#[test]
fn depth2_stuffle_side_is_the_product() {
    for (k1, k2, d1, d2) in [(1, 1, 0, 0), (2, 3, 1, 2), (1, 4, 2, 0)] {
        let (s, _) = depth2_dsh_sides(k1, k2, d1, d2);
        assert_eq!(s, stuffle_lc(&gd(k1, d1), &gd(k2, d2)));
    }
}

#[test]
fn depth2_double_shuffle_to_weight_7() {
    let mut n = 0;
    for w in 2..=7u32 {
        for k1 in 1..w {
            for k2 in 1..=w - k1 {
                for d1 in 0..=w - k1 - k2 {
                    let d2 = w - k1 - k2 - d1;
                    assert_all(&[verify_depth2_dsh(k1, k2, d1, d2, 7).unwrap()]);
                    n += 1;
                }
            }
        }
    }
    assert!(n > 100);
    assert_all(&[verify_depth2_dsh(2, 3, 1, 2, 8).unwrap()]);
    assert!(matches!(verify_depth2_dsh(2, 3, 1, 2, 7), Err(Error::CutoffExceeded { .. })));
}

#[test]
fn even_weight_relations() {
    for k in [4, 6, 8] {
        for k1 in 1..k {
            assert_all(&[verify_relpevevk(k1, k - k1).unwrap()]);
        }
    }
    assert!(matches!(verify_relpevevk(1, 2), Err(Error::Parity(1, 2))));
}

#[test]
fn modular_products() {
    for k in [4, 6, 8] {
        assert_all(&[verify_mfprod(k, MfProd::First).unwrap()]);
    }
    for k in [6, 8] {
        assert_all(&[verify_mfprod(k, MfProd::Second).unwrap()]);
    }
    assert!(verify_mfprod(4, MfProd::Second).is_err());
}

#[test]
fn euler_relation() {
    assert_eq!(euler_coefficient(1), int(1));
    assert_eq!(euler_coefficient(2), rat(2, 5));
    assert_eq!(euler_coefficient(3), rat(8, 35));
    let e = euler_decomposition(2).unwrap();
    assert!(e.check.passed, "{}", e.check);
    assert_eq!(e.coefficient, rat(2, 5));
    // G4 = 1/5 DG2 + 2/5 G2²
    assert_eq!(e.primitive, term((1, 5), [1, 0, 0]));
    let e = euler_decomposition(3).unwrap();
    assert!(e.check.passed, "{}", e.check);
    assert_eq!(e.coefficient, rat(8, 35));
    assert_all(&verify_euler_symbolic().unwrap());
}

#[test]
fn ramanujan_and_chazy() {
    let checks = verify_ramanujan().unwrap();
    assert_eq!(checks.len(), 7);
    assert_all(&checks);
    assert_all(&[verify_chazy().unwrap()]);
}

#[test]
fn cusp_form_certificates() {
    let delta = delta_cusp_form();
    assert_eq!(delta.coeff(&[0, 3, 0]), int(1_728_000));
    assert_eq!(delta.coeff(&[0, 0, 2]), int(-2_116_800));
    assert_all(&verify_cusp_properties().unwrap());
    let d = to_derivatives(&delta);
    assert_eq!(d.coeff(&[6, 0, 0]), int(0));
    assert!(delta_symbolic(&d).is_zero());
}

#[test]
fn direct_weight_12_check_is_refused_by_default() {
    let err = verify_cusp_direct(&Quotient::new(None)).unwrap_err();
    assert!(matches!(err, Error::Resource { weight: 12, .. }), "{err}");
}

#[test]
fn symbolic_eisenstein_series() {
    assert_eq!(eisenstein_symbolic(4).unwrap(), g4_displayed());
    let g4 = eisenstein_symbolic(4).unwrap();
    assert_eq!(eisenstein_symbolic(8).unwrap(), g4.pow(2).scale(&rat(6, 7)));
    let g6 = eisenstein_symbolic(6).unwrap();
    assert_eq!(eisenstein_symbolic(10).unwrap(), (&g4 * &g6).scale(&ten_coeff()));
    assert!(eisenstein_symbolic(3).is_err());
    // D commutes with the weight grading
    let x = d_symbolic(&g6);
    assert_eq!(x.weight(), Some(8));
}

// G10 = c·G4·G6 with c fixed by the Euler coefficient: π(G10) = c·π(G4)·π(G6)
fn ten_coeff() -> fmes_core::Rational {
    euler_coefficient(5) / (euler_coefficient(2) * euler_coefficient(3))
}

#[test]
fn rankin_cohen_brackets() {
    let (g4, g6) = (g(4), g(6));
    assert_eq!(rankin_cohen(&g4, &g6, 0, 4, 6).unwrap(), stuffle_lc(&g4, &g6));
    assert!(rankin_cohen(&g4, &g4, 1, 4, 4).unwrap().is_zero());
    assert!(rankin_cohen(&g4, &g6, 1, 6, 6).is_err());
    let (s4, s6) = (eisenstein_symbolic(4).unwrap(), eisenstein_symbolic(6).unwrap());
    assert!(rankin_cohen_symbolic(&s4, &s4, 1).unwrap().is_zero());
    assert_eq!(rankin_cohen_symbolic(&s4, &s6, 0).unwrap(), &s4 * &s6);
    for n in 0..=4 {
        assert_all(&verify_rc_delta_closure(n).unwrap());
    }
}

#[test]
fn modular_forms_split_off_the_eisenstein_series() {
    for (k, dim, cusp) in [(4, 1, 0), (6, 1, 0), (8, 1, 0), (10, 1, 0), (12, 2, 1)] {
        let d = mk_decomposition(k).unwrap();
        assert!(d.check.passed, "{}", d.check);
        assert_eq!((d.dim_modular, d.dim_cusp), (dim, cusp), "k={k}");
        assert_eq!(d.pi_of_eisenstein, euler_coefficient(k / 2));
    }
}

#[test]
fn polynomial_ring_basics() {
    let p = QmfPolynomial::var(0);
    assert_eq!(d_symbolic(&p), QmfPolynomial::var(1));
    assert_eq!(delta_symbolic(&p), QmfPolynomial::constant(rat(-1, 2)));
}

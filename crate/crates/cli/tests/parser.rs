use fmes_cli::expr::{eval_str, normalize, parse, Expr, ExprError, Operator};
use fmes_core::arith::{int, rat};
use fmes_core::balanced::phi;
use fmes_core::qshuffle::stuffle_lc;
use fmes_core::{AWord, BWord, Error, LinComb};

fn a(ks: &[u32], ds: &[u32]) -> LinComb<AWord> {
    LinComb::single(AWord::from_kd(ks, ds))
}

fn g(ks: &[u32]) -> LinComb<AWord> {
    LinComb::single(AWord::from_ks(ks))
}

const CORPUS: [&str; 50] = [
    "G[2]",
    "G[ 2 , 3 ]",
    "G[{3},{0}]",
    "G[{1,2},{0,1}]",
    "G[{2,1},{1,0}]",
    "G[]",
    "G[{},{}]",
    "0",
    "1/2",
    "3/6",
    "2*G[3]",
    "G[2]*G[3]",
    "G[2]+G[3]",
    "G[2] - G[3]",
    "G[2] - (G[3] - G[4])",
    "(G[2] - G[3]) - G[4]",
    "G[2] + (G[3] + G[4])",
    "(G[2]+G[3])*G[4]",
    "G[2]*(G[3]+G[4])",
    "G[2]*(G[3]*G[4])",
    "(G[2]*G[3])*G[4]",
    "-G[2]",
    "-(G[2]+G[3])",
    "--G[2]",
    "-G[2]^2",
    "(-G[2])^2",
    "G[1]^3",
    "(G[1]^2)^2",
    "(G[1]+G[2])^2",
    "G[2]*-G[3]",
    "G[2] - -G[3]",
    "D(G[1])",
    "W(G[2,3])",
    "delta(G[{3},{1}])",
    "omega(G[2,1])",
    "t(G[1,1,1])",
    "swap(G[{3},{0}])",
    "swap(swap(G[{2,1},{0,1}]))",
    "D(G[2])*G[2] + G[2]*D(G[2])",
    "D(G[2]*G[2])",
    "1/2*G[{1},{2}] - swap(G[3])",
    "b2",
    "b2 b0 b3",
    "b1 b0 b1",
    "b1 b0 * b2",
    "swap(b1 b0 b0)",
    "(b1 + b2)^2",
    "3*(G[1] - 1/3*G[2])",
    "  G[4]  -  2/5 * G[2] ^ 2 ",
    "delta(D(G[4])) - D(delta(G[4]))",
];

#[test]
fn canonical_forms_round_trip() {
    for s in CORPUS {
        let e = parse(s).unwrap_or_else(|err| panic!("{s}: {err}"));
        let c = e.to_string();
        assert_eq!(normalize(s).unwrap(), c);
        let again = parse(&c).unwrap_or_else(|err| panic!("{c}: {err}"));
        assert_eq!(again, e, "{s} printed as {c}");
        assert_eq!(again.to_string(), c);
        assert_eq!(again.evaluate(14).unwrap(), e.evaluate(14).unwrap(), "{s}");
    }
}

#[test]
fn canonical_spellings() {
    let cases = [
        ("G[ 2 , 3 ]", "G[2,3]"),
        ("G[{3},{0}]", "G[3]"),
        ("G[{},{}]", "G[]"),
        ("3/6", "1/2"),
        ("(G[2]*G[3])*G[4]", "G[2]*G[3]*G[4]"),
        ("G[2]*(G[3]*G[4])", "G[2]*(G[3]*G[4])"),
        ("(G[2] - G[3]) - G[4]", "G[2] - G[3] - G[4]"),
        ("-(G[2]+G[3])", "-(G[2] + G[3])"),
        ("(-G[2])^2", "(-G[2])^2"),
        ("-G[2]^2", "-G[2]^2"),
        ("b1 b0 * b2", "b1 b0*b2"),
        ("  G[4]  -  2/5 * G[2] ^ 2 ", "G[4] - 2/5*G[2]^2"),
    ];
    for (s, want) in cases {
        assert_eq!(normalize(s).unwrap(), want, "{s}");
    }
}

#[test]
fn examples() {
    assert_eq!(eval_str("G[2]*G[3]", 6).unwrap(), g(&[2, 3]) + g(&[3, 2]) + g(&[5]));
    assert_eq!(eval_str("swap(G[{3},{0}])", 6).unwrap(), a(&[1], &[2]).scale(&rat(1, 2)));
    assert_eq!(eval_str("D(G[1])", 6).unwrap(), a(&[2], &[1]));
    assert!(eval_str("G[3] - 2*swap(1/2*G[3])", 6).unwrap() != LinComb::zero());
    assert!(eval_str("swap(swap(G[{2,1},{1,1}])) - G[{2,1},{1,1}]", 6).unwrap().is_zero());
}

#[test]
fn arithmetic() {
    assert_eq!(eval_str("G[1]^2", 6).unwrap(), stuffle_lc(&g(&[1]), &g(&[1])));
    assert_eq!(eval_str("G[1]^0", 6).unwrap(), LinComb::one());
    assert_eq!(eval_str("2 - 1/2", 6).unwrap(), LinComb::constant(rat(3, 2)));
    assert_eq!(eval_str("-(G[2] - G[2])", 6).unwrap(), LinComb::zero());
    assert_eq!(eval_str("3*(G[1] - 1/3*G[2])", 6).unwrap(), g(&[1]).scale(&int(3)) - g(&[2]));
    // [delta,D] = W on G[4]
    assert_eq!(eval_str("delta(D(G[4])) - D(delta(G[4]))", 8).unwrap(), eval_str("W(G[4])", 8).unwrap());
}

#[test]
fn balanced_words_map_through_phi() {
    let w = BWord::from_indices(&[1, 0, 1]);
    assert_eq!(eval_str("b1 b0 b1", 6).unwrap(), phi(&w).unwrap());
    assert_eq!(parse("b2 b0 b3").unwrap(), Expr::Balanced(BWord::from_indices(&[2, 0, 3])));
    assert!(matches!(parse("b0 b1"), Err(ExprError::Syntax { col: 1, .. })));
}

#[test]
fn syntax_errors_carry_positions() {
    let col = |s: &str| match parse(s) {
        Err(ExprError::Syntax { col, .. }) => col,
        other => panic!("{s}: {other:?}"),
    };
    assert_eq!(col("G[2"), 4);
    assert_eq!(col("G[2]+"), 6);
    assert_eq!(col("G[2] G[3]"), 6);
    assert_eq!(col("G[{1,2},{0}]"), 2);
    assert_eq!(col("G[0]"), 2);
    assert_eq!(col("(G[2]"), 6);
    assert_eq!(col("G[2] # G[3]"), 6);
    assert_eq!(col("G[1]^x"), 6);
    assert_eq!(col("G[1]^1/2"), 6);
}

#[test]
fn unknown_operators_and_cutoffs() {
    assert_eq!(parse("foo(G[2])"), Err(ExprError::UnknownOperator { name: "foo".into(), col: 1 }));
    assert_eq!(parse("G[1] + Dx(G[1])"), Err(ExprError::UnknownOperator { name: "Dx".into(), col: 8 }));
    assert_eq!(eval_str("G[4]*G[3]", 6), Err(ExprError::Core(Error::CutoffExceeded { weight: 7, cutoff: 6 })));
    assert_eq!(eval_str("D(G[5])", 6), Err(ExprError::Core(Error::CutoffExceeded { weight: 7, cutoff: 6 })));
    assert!(eval_str("G[2]^40", 12).is_err());
    assert_eq!(Operator::parse("delta"), Some(Operator::Delta));
}

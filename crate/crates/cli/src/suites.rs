//! Verification suites: named groups of exact checks run on a worker pool.

use std::time::Instant;

use fmes_core::arith::rat;
use fmes_core::conjectures::{eisenstein_closure, lwt_filtration_dims};
use fmes_core::derivations::{equivariance_checks, sl2_checks, t_report};
use fmes_core::modular::{
    euler_coefficient, euler_decomposition, verify_chazy, verify_cusp_properties, verify_depth2_dsh,
    verify_euler_symbolic, verify_mfprod, verify_ramanujan, verify_relpevevk, MfProd,
};
use fmes_core::mzv::{
    compare_dims, eds_check, verify_lwt0_surjective, verify_pi_d, verify_zeta_homomorphism, zeta_character, zeta_f_z,
};
use fmes_core::qseries::{
    check_d_intertwining, check_depth_one_symmetry, check_lower_weight_stuffle, check_quasimodular,
    check_swap_invariance, independence_witness_rank,
};
use fmes_core::quotient::{IdealKind, Quotient};
use fmes_core::report::Check;
use fmes_core::swap::swap_checks;
use fmes_core::{balanced, bimould, ZWord};
use rayon::prelude::*;
use serde::Serialize;

pub const SUITES: &[&str] = &[
    "sl2",
    "equivariance",
    "relations",
    "euler",
    "ramanujan",
    "chazy",
    "cusp",
    "eds",
    "dims",
    "bimould",
    "balanced",
    "qseries",
    "conjectures",
];

/// dim FMES_k for k = 0..8.
pub const FMES_DIMS: [usize; 9] = [1, 1, 2, 4, 7, 13, 23, 41, 73];
/// dim 𝒵ᶠ_k for k = 0..8.
pub const ZF_DIMS: [usize; 9] = [1, 1, 2, 3, 4, 6, 8, 11, 15];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Reported on an open question; never a failure.
    Finding,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    pub weight: u32,
    pub residual: String,
    pub elapsed_ms: u64,
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    pub max_weight: u32,
    pub q_order: usize,
}

type Run = Box<dyn Fn(&SuiteOptions) -> fmes_core::Result<Vec<Item>> + Send + Sync>;

enum Item {
    Check(Check),
    Finding { name: String, weight: u32, text: String },
}

struct Job {
    suite: &'static str,
    anchor: &'static str,
    run: Run,
}

fn job(
    suite: &'static str,
    anchor: &'static str,
    f: impl Fn(&SuiteOptions) -> fmes_core::Result<Vec<Check>> + Send + Sync + 'static,
) -> Job {
    Job { suite, anchor, run: Box::new(move |o| Ok(f(o)?.into_iter().map(Item::Check).collect())) }
}

fn finding_job(
    suite: &'static str,
    anchor: &'static str,
    f: impl Fn(&SuiteOptions) -> fmes_core::Result<Vec<(String, u32, String)>> + Send + Sync + 'static,
) -> Job {
    Job {
        suite,
        anchor,
        run: Box::new(move |o| {
            Ok(f(o)?.into_iter().map(|(name, weight, text)| Item::Finding { name, weight, text }).collect())
        }),
    }
}

/// Largest weight whose echelon basis the suite builds.
pub fn echelon_weight(suite: &str, o: &SuiteOptions) -> u32 {
    let q = Quotient::global().max_weight();
    match suite {
        "sl2" | "equivariance" | "qseries" => 0,
        "relations" | "euler" | "ramanujan" | "chazy" | "cusp" => q.min(8),
        "eds" | "dims" => o.max_weight,
        "bimould" => 5,
        "balanced" => o.max_weight.min(5),
        "conjectures" => o.max_weight + 1,
        _ => 0,
    }
}

fn jobs(suite: &str) -> Vec<Job> {
    match suite {
        "sl2" => vec![job("sl2", "sl2 triple and component identities of delta", |o| {
            Ok(sl2_checks(o.max_weight, o.max_weight.min(5)))
        })],
        "equivariance" => vec![
            job("equivariance", "derivations commute with swap", |o| Ok(equivariance_checks(o.max_weight))),
            job("equivariance", "swap involution and coefficient formula", |o| Ok(swap_checks(o.max_weight))),
        ],
        "relations" => vec![
            job("relations", "depth-two double shuffle", |_| {
                let mut out = Vec::new();
                for w in 2..=7u32 {
                    for k1 in 1..w {
                        for k2 in 1..=w - k1 {
                            for d1 in 0..=w - k1 - k2 {
                                out.push(verify_depth2_dsh(k1, k2, d1, w - k1 - k2 - d1, 7)?);
                            }
                        }
                    }
                }
                Ok(out)
            }),
            job("relations", "even-weight depth-two relations", |_| {
                let mut out = Vec::new();
                for k in [4, 6, 8] {
                    for k1 in 1..k {
                        out.push(verify_relpevevk(k1, k - k1)?);
                    }
                }
                Ok(out)
            }),
            job("relations", "products of formal modular forms", |_| {
                let mut out = Vec::new();
                for k in [4, 6, 8] {
                    out.push(verify_mfprod(k, MfProd::First)?);
                }
                for k in [6, 8] {
                    out.push(verify_mfprod(k, MfProd::Second)?);
                }
                Ok(out)
            }),
        ],
        "euler" => vec![
            job("euler", "Euler relation with explicit quasimodular remainder", |_| {
                let mut out = Vec::new();
                for (m, want) in [(2, rat(2, 5)), (3, rat(8, 35))] {
                    let e = euler_decomposition(m)?;
                    out.push(e.check);
                    out.push(Check::equal(format!("Euler coefficient m={m}"), 2 * m, &e.coefficient, &want));
                    out.push(Check::equal(
                        format!("Bernoulli form of coefficient m={m}"),
                        2 * m,
                        &euler_coefficient(m),
                        &want,
                    ));
                }
                Ok(out)
            }),
            job("euler", "Euler relation in the symbolic ring", |_| verify_euler_symbolic()),
        ],
        "ramanujan" => vec![job("ramanujan", "Ramanujan differential equations", |_| verify_ramanujan())],
        "chazy" => vec![job("chazy", "Chazy equation", |_| Ok(vec![verify_chazy()?]))],
        "cusp" => vec![job("cusp", "formal cusp form certificates", |_| verify_cusp_properties())],
        "eds" => vec![
            job("eds", "extended double shuffle dimensions against formal zeta values", |o| {
                Ok(compare_dims(o.max_weight)?
                    .iter()
                    .map(|r| Check::equal("dim H1/EDS = dim Zf", r.weight, &r.eds_dim, &r.zf_dim))
                    .collect())
            }),
            job("eds", "formal zeta values", |o| {
                let z3 = zeta_f_z(&ZWord::from_ks(&[3]), 3)?;
                let z21 = zeta_f_z(&ZWord::from_ks(&[2, 1]), 3)?;
                let mut out = vec![Check::of("zeta(3) = zeta(2,1)", 3, &(z3 - z21))];
                out.push(verify_pi_d(o.max_weight)?);
                out.push(verify_zeta_homomorphism(o.max_weight)?);
                for k in 0..=o.max_weight {
                    out.push(verify_lwt0_surjective(k)?);
                }
                Ok(out)
            }),
            job("eds", "formal zeta character satisfies extended double shuffle", |_| {
                let report = eds_check(&zeta_character(5)?)?;
                let residual = if report.passed() { String::new() } else { format!("{report:?}") };
                Ok(vec![Check::new("zeta character EDS", 5, report.passed(), residual)])
            }),
        ],
        "dims" => vec![job("dims", "graded dimensions of the quotients", |o| {
            let mut out = Vec::new();
            for k in 0..=o.max_weight {
                let q = Quotient::global();
                if let Some(want) = FMES_DIMS.get(k as usize) {
                    out.push(Check::equal("dim FMES", k, &q.dim(IdealKind::SwapIdeal, k)?, want));
                }
                if let Some(want) = ZF_DIMS.get(k as usize) {
                    out.push(Check::equal("dim Zf", k, &q.dim(IdealKind::Combined, k)?, want));
                }
            }
            Ok(out)
        })],
        "bimould" => vec![job("bimould", "bimould swap, Phi and Psi, coproduct, group-like equivalence", |_| {
            bimould::structure_checks(50, 3, 5)
        })],
        "balanced" => vec![job("balanced", "balanced alphabet against the bi-indexed one", |o| {
            balanced::structure_checks(o.max_weight, 100, 12, o.max_weight.min(5))
        })],
        "qseries" => vec![job("qseries", "q-series realization", |o| {
            let n = o.q_order;
            let mut out = vec![
                check_swap_invariance(o.max_weight, n),
                check_d_intertwining(o.max_weight, n),
                check_depth_one_symmetry(o.max_weight, n),
            ];
            out.extend(check_lower_weight_stuffle(n));
            out.extend(check_quasimodular(n)?);
            out.push(Check::equal("G2, G4, G6 independent", 6, &independence_witness_rank()?, &3));
            Ok(out)
        })],
        "conjectures" => vec![
            finding_job("conjectures", "weight -3 operator t", |o| {
                let t = t_report(o.max_weight)?;
                Ok(vec![(
                    "t".into(),
                    o.max_weight,
                    format!(
                        "Leibniz failures {}/{}, equivariance mod I failures {}/{}, independent of [omega,delta]: {}",
                        t.leibniz_failures,
                        t.leibniz_checked,
                        t.equivariance_failures,
                        t.equivariance_checked,
                        t.independent_of_omega_delta
                    ),
                )])
            }),
            finding_job("conjectures", "lower weight filtration", |o| {
                Ok(lwt_filtration_dims(o.max_weight)?
                    .into_iter()
                    .map(|r| ("dim Fil0 vs dim FMES".into(), r.weight, format!("{} vs {}", r.fil0_dim, r.fmes_dim)))
                    .collect())
            }),
            finding_job("conjectures", "closure of formal Eisenstein series", |o| {
                Ok(eisenstein_closure(o.max_weight + 1)?
                    .into_iter()
                    .map(|c| {
                        let outside: Vec<String> = c.outside.iter().map(|w| w.to_string()).collect();
                        (
                            format!("{} preserves E", c.operator),
                            o.max_weight + 1,
                            format!("{} checked, {} outside [{}]", c.checked, outside.len(), outside.join(", ")),
                        )
                    })
                    .collect())
            }),
        ],
        _ => Vec::new(),
    }
}

pub fn is_suite(name: &str) -> bool {
    name == "all" || SUITES.contains(&name)
}

/// Suites making up `name`.
pub fn expand(name: &str) -> Vec<&'static str> {
    if name == "all" {
        SUITES.to_vec()
    } else {
        SUITES.iter().copied().filter(|s| *s == name).collect()
    }
}

/// Runs every job of the named suites in parallel; records are sorted by id.
pub fn run(names: &[&str], options: &SuiteOptions) -> fmes_core::Result<Vec<CheckRecord>> {
    let all: Vec<Job> = names.iter().flat_map(|s| jobs(s)).collect();
    let results: Vec<fmes_core::Result<Vec<CheckRecord>>> = all
        .par_iter()
        .map(|j| {
            let start = Instant::now();
            let items = (j.run)(options)?;
            let ms = start.elapsed().as_millis() as u64;
            Ok(items.into_iter().map(|item| record(j, item, ms)).collect())
        })
        .collect();
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    out.sort_by(|a, b| (&a.id, &a.residual).cmp(&(&b.id, &b.residual)));
    Ok(out)
}

fn record(j: &Job, item: Item, elapsed_ms: u64) -> CheckRecord {
    let (name, weight, status, residual) = match item {
        Item::Check(c) => (c.name, c.weight, if c.passed { Status::Pass } else { Status::Fail }, c.residual),
        Item::Finding { name, weight, text } => (name, weight, Status::Finding, text),
    };
    CheckRecord {
        id: format!("{}/{name}/w{weight:02}", j.suite),
        anchor: j.anchor.to_string(),
        status,
        weight,
        residual,
        elapsed_ms,
    }
}

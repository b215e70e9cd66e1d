//! One-shot verification suites behind `verify --suite`.

use std::cell::OnceCell;
use std::f64::consts::E;

use num_bigint::BigUint;
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::asymptotics::{
    asymptotic_report, g_closed_form, g_truncated_series, growth_rate_diagnostic,
    ode_residual_series, puiseux_functional_residual, puiseux_mu, singular_radius,
};
use crate::conjecture::{fit_qk, known_q0, known_q1};
use crate::exp_poly::ExpPolynomial;
use crate::fj::{compute_fj, verify_degree_bound, verify_integral_identity, FjTable};
use crate::formulas::{
    abel_identity_check, alpha_asymptotic_ratio, binomial_derivative_check, delta_formula,
    gamma_formula,
};
use crate::lambert::{lambert_w, residual_grid, Branch};
use crate::poly::Polynomial;
use crate::rational::{factorial, from_biguint, int, rat, Rational};
use crate::triangle::{compute_alpha, compute_sigma_recursive, AlphaTriangle};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Tables,
    Identities,
    Formulas,
    Asymptotics,
    All,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn new(name: &'static str, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name,
            passed,
            detail: detail.into(),
        }
    }
}

/// Deepest `f_j` any suite reads (the degree-2 conjecture scan).
pub const FJ_DEPTH: u32 = 11;
pub const TABLE1_ROWS: [&[u64]; 7] = [
    &[1],
    &[1, 1],
    &[1, 5, 1],
    &[1, 16, 16, 1],
    &[1, 42, 127, 42, 1],
    &[1, 99, 715, 715, 99, 1],
    &[1, 219, 3292, 7723, 3292, 219, 1],
];
pub const TABLE1_SIGMA: [u64; 7] = [1, 2, 7, 34, 213, 1630, 14747];

/// Seed of the randomized `(s, c, d)` grid for the binomial-derivative
/// identities.
pub const BINOMIAL_GRID_SEED: u64 = 0x5eed_0b1a;

fn poly(cs: &[Rational]) -> Polynomial {
    Polynomial::from_coeffs(cs.to_vec())
}

/// Closed forms of `f_0 ..= f_3`.
pub fn table2() -> Vec<ExpPolynomial> {
    vec![
        ExpPolynomial::from_terms([(1, poly(&[int(1)])), (0, poly(&[int(-1), int(-1)]))]),
        ExpPolynomial::from_terms([
            (2, poly(&[int(2)])),
            (1, poly(&[int(-2), int(-2), rat(-1, 2)])),
        ]),
        ExpPolynomial::from_terms([
            (3, poly(&[rat(27, 2)])),
            (2, poly(&[int(-22), int(-20), int(-4)])),
            (
                1,
                poly(&[rat(17, 2), int(15), rat(17, 2), rat(11, 6), rat(1, 8)]),
            ),
        ]),
        ExpPolynomial::from_terms([
            (4, poly(&[rat(512, 3)])),
            (3, poly(&[int(-378), int(-324), rat(-243, 4)])),
            (
                2,
                poly(&[int(262), int(432), int(240), rat(160, 3), int(4)]),
            ),
            (
                1,
                poly(&[
                    rat(-164, 3),
                    int(-126),
                    rat(-423, 4),
                    int(-41),
                    rat(-185, 24),
                    rat(-2, 3),
                    rat(-1, 48),
                ]),
            ),
        ]),
    ]
}

/// `(s, c, d)` triples for the binomial-derivative identities.
pub fn binomial_grid(points: usize) -> Vec<(u32, u32, u32)> {
    let mut rng = StdRng::seed_from_u64(BINOMIAL_GRID_SEED);
    (0..points)
        .map(|_| {
            (
                rng.gen_range(0..=30),
                rng.gen_range(1..=50),
                rng.gen_range(1..=50),
            )
        })
        .collect()
}

/// Shared, lazily computed inputs so `--suite all` builds each table once.
#[derive(Default)]
pub struct Context {
    fj: OnceCell<FjTable>,
    triangle: OnceCell<AlphaTriangle>,
}

impl Context {
    pub fn fj(&self) -> &FjTable {
        self.fj.get_or_init(|| {
            eprintln!("computing f_0 ..= f_{FJ_DEPTH}");
            compute_fj(FJ_DEPTH).expect("f_j invariants hold")
        })
    }

    /// Triangle through row 63, enough for `alpha_{60,3}`.
    pub fn triangle(&self) -> &AlphaTriangle {
        self.triangle.get_or_init(|| compute_alpha(63))
    }
}

pub fn run_suite(suite: Suite, ctx: &Context) -> Vec<CheckOutcome> {
    match suite {
        Suite::Tables => tables(ctx),
        Suite::Identities => identities(ctx),
        Suite::Formulas => formulas(ctx),
        Suite::Asymptotics => asymptotics(),
        Suite::All => [
            Suite::Tables,
            Suite::Identities,
            Suite::Formulas,
            Suite::Asymptotics,
        ]
        .into_iter()
        .flat_map(|s| run_suite(s, ctx))
        .collect(),
    }
}

fn tables(ctx: &Context) -> Vec<CheckOutcome> {
    let tri = compute_alpha(6);
    let rows_ok = TABLE1_ROWS.iter().enumerate().all(|(n, expected)| {
        tri.row(n).iter().eq(expected
            .iter()
            .map(|&v| BigUint::from(v))
            .collect::<Vec<_>>()
            .iter())
    });
    let sums = tri.row_sums();
    let sigma_ok = sums.values().iter().eq(TABLE1_SIGMA
        .iter()
        .map(|&v| BigUint::from(v))
        .collect::<Vec<_>>()
        .iter());
    let table = ctx.fj();
    let mismatched: Vec<usize> = table2()
        .iter()
        .enumerate()
        .filter(|(j, f)| table.get(*j as u32) != Some(f))
        .map(|(j, _)| j)
        .collect();
    vec![
        CheckOutcome::new(
            "table1",
            rows_ok && sigma_ok,
            format!("28 entries, sigma column {:?}", TABLE1_SIGMA),
        ),
        CheckOutcome::new(
            "table2",
            mismatched.is_empty(),
            format!("f_0..f_3 closed forms, mismatched: {mismatched:?}"),
        ),
    ]
}

fn identities(ctx: &Context) -> Vec<CheckOutcome> {
    let table = ctx.fj();
    let tri = compute_alpha(30);
    let mut cross_failures = Vec::new();
    for j in 0..=10u32 {
        let f = table.get(j).expect("depth");
        for i in 0..=20u32 {
            let n = i + 2;
            let alpha = tri
                .get(i as usize, j as usize)
                .expect("triangle covers i + j <= 30");
            if f.taylor_coeff(n) * from_biguint(&factorial(n)) != from_biguint(alpha) {
                cross_failures.push((i, j));
            }
        }
    }
    let identity_failures: Vec<u32> = (0..=8)
        .filter(|&j| !verify_integral_identity(j, table))
        .collect();
    let degree_failures: Vec<u32> = (1..=10)
        .filter(|&j| !verify_degree_bound(j, table))
        .collect();
    let abel_failures: Vec<u32> = (1..=30).filter(|&t| !abel_identity_check(t)).collect();
    let grid = binomial_grid(20);
    let binom_failures: Vec<_> = grid
        .iter()
        .filter(|&&(s, c, d)| !binomial_derivative_check(s, c, d))
        .collect();
    let sigmas = compute_sigma_recursive(60);
    let ode_ok = ode_residual_series(60, &sigmas).unwrap_or(false);
    let mu = puiseux_mu(12);
    let puiseux_ok = mu.mu[2] == rat(-1, 3)
        && mu.mu[3] == rat(11, 72)
        && puiseux_functional_residual(&mu.mu, 12)
            .iter()
            .all(Zero::is_zero);
    vec![
        CheckOutcome::new(
            "taylor-cross-check",
            cross_failures.is_empty(),
            format!("j <= 10, i <= 20, failures: {cross_failures:?}"),
        ),
        CheckOutcome::new(
            "integral-identity",
            identity_failures.is_empty(),
            format!("j = 0..=8, failures: {identity_failures:?}"),
        ),
        CheckOutcome::new(
            "degree-sequence",
            degree_failures.is_empty(),
            format!("j = 1..=10, failures: {degree_failures:?}"),
        ),
        CheckOutcome::new(
            "abel-identities",
            abel_failures.is_empty(),
            format!("t = 1..=30, failures: {abel_failures:?}"),
        ),
        CheckOutcome::new(
            "binomial-derivative",
            binom_failures.is_empty(),
            format!(
                "{} random (s, c, d), failures: {binom_failures:?}",
                grid.len()
            ),
        ),
        CheckOutcome::new("ode-residual", ode_ok, "g'(1-g) - x - 2g through x^60"),
        CheckOutcome::new(
            "puiseux",
            puiseux_ok,
            "mu_2 = -1/3, mu_3 = 11/72, functional equation through p^12",
        ),
    ]
}

fn formulas(ctx: &Context) -> Vec<CheckOutcome> {
    let table = ctx.fj();
    let mut failures = Vec::new();
    let mut checked = 0;
    for s in 0..=10u32 {
        for t in 1..=10 - s {
            let f = table.get(s + t - 1).expect("depth");
            checked += 1;
            if gamma_formula(s, t).ok() != Some(f.coeff_of(t, 2 * s as usize)) {
                failures.push(("gamma", s, t));
            }
            if s >= 1 {
                checked += 1;
                if delta_formula(s, t).ok() != Some(f.coeff_of(t, 2 * s as usize - 1)) {
                    failures.push(("delta", s, t));
                }
            }
        }
    }
    let mut out = vec![CheckOutcome::new(
        "gamma-delta",
        failures.is_empty(),
        format!("{checked} coefficients with s + t <= 10, failures: {failures:?}"),
    )];

    for (k, known) in [(0, Some(known_q0())), (1, Some(known_q1())), (2, None)] {
        let name = match k {
            0 => "conjecture-q0",
            1 => "conjecture-q1",
            _ => "conjecture-q2",
        };
        out.push(match fit_qk(k, table) {
            Ok(fit) => {
                let matches = known.as_ref().is_none_or(|q| q == &fit.candidate);
                CheckOutcome::new(
                    name,
                    fit.consistent && matches,
                    format!("Q_{k} = {} (consistent: {})", fit.candidate, fit.consistent),
                )
            }
            Err(e) => CheckOutcome::new(name, false, e.to_string()),
        });
    }

    let tri = ctx.triangle();
    let ratio = |i: u32, j: u32| {
        alpha_asymptotic_ratio(tri.get(i as usize, j as usize).expect("row 63"), i, j)
    };
    let close = (ratio(30, 1) - 1.0).abs() <= 0.1 && (ratio(60, 2) - 1.0).abs() <= 0.1;
    let improving = (1..=3).all(|j| (ratio(60, j) - 1.0).abs() < (ratio(30, j) - 1.0).abs());
    out.push(CheckOutcome::new(
        "alpha-asymptotic",
        close && improving,
        format!(
            "ratio(30,1) = {:.6}, ratio(60,2) = {:.6}, ratio(60,3) = {:.6}",
            ratio(30, 1),
            ratio(60, 2),
            ratio(60, 3)
        ),
    ));
    out
}

fn show<E: std::fmt::Display>(value: &Result<f64, E>) -> String {
    match value {
        Ok(v) => v.to_string(),
        Err(e) => format!("error: {e}"),
    }
}

fn asymptotics() -> Vec<CheckOutcome> {
    let mut out = Vec::new();

    let w = lambert_w(Branch::MinusOne, -2.0 * (-2.0f64).exp());
    let special_ok = w.as_ref().is_ok_and(|w| (w + 2.0).abs() <= 1e-12);
    let mut worst: f64 = 0.0;
    let mut grid_ok = true;
    for branch in [Branch::Principal, Branch::MinusOne] {
        for z in residual_grid(branch) {
            match lambert_w(branch, z) {
                Ok(w) => {
                    let r = (w * w.exp() - z).abs() / z.abs().max(1.0);
                    worst = worst.max(r);
                    let in_range = match branch {
                        Branch::Principal => w >= -1.0,
                        Branch::MinusOne => w <= -1.0,
                    };
                    grid_ok &= r <= 1e-14 && in_range;
                }
                Err(_) => grid_ok = false,
            }
        }
    }
    out.push(CheckOutcome::new(
        "lambert-w",
        special_ok && grid_ok,
        format!(
            "W_-1(-2e^-2) = {}, worst scaled residual {worst:e}",
            show(&w)
        ),
    ));

    let sigmas = compute_sigma_recursive(400);
    let head = crate::triangle::SigmaSequence::from_values(sigmas.values()[..40].to_vec());
    let series = g_truncated_series(&head, 0.1, 40);
    let closed = g_closed_form(0.1);
    let closed_ok = closed.as_ref().is_ok_and(|g| (g - series).abs() <= 1e-10);
    out.push(CheckOutcome::new(
        "closed-form-vs-series",
        closed_ok,
        format!("g(0.1) = {}, 40-term series = {series}", show(&closed)),
    ));

    let r200 = asymptotic_report(200, sigmas.get(200).expect("computed"));
    let r400 = asymptotic_report(400, sigmas.get(400).expect("computed"));
    let within = (r200.ratio - 1.0).abs() <= 0.02;
    let improving = (r400.ratio - 1.0).abs() < (r200.ratio - 1.0).abs();
    out.push(CheckOutcome::new(
        "sigma-asymptotic",
        within && improving,
        format!(
            "ratio(200) = {:.6}, ratio(400) = {:.6}; with the (e-2)^(1/2) factor: {:.6}, {:.6}",
            r200.ratio, r400.ratio, r200.transfer_ratio, r400.transfer_ratio
        ),
    ));

    let head = crate::triangle::SigmaSequence::from_values(sigmas.values()[..300].to_vec());
    let rate = growth_rate_diagnostic(&head);
    let rate_ok = rate
        .as_ref()
        .is_ok_and(|r| (r / singular_radius() - 1.0).abs() <= 0.01);
    out.push(CheckOutcome::new(
        "growth-rate",
        rate_ok,
        format!("300 terms: {} vs e-2 = {}", show(&rate), E - 2.0),
    ));
    out
}

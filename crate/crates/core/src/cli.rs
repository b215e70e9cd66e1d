//! Command-line front end.
//!
//! Exit codes: 0 success, 1 failed verification, 2 usage error. Data goes to
//! stdout; progress notes go to stderr.

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::asymptotics::{asymptotic_report, growth_rate_diagnostic, singular_radius};
use crate::conjecture::{conjecture_prefactor, fit_qk, required_depth};
use crate::fj::compute_fj;
use crate::formulas::{delta_formula, gamma_formula};
use crate::output::{Format, OutputRecord, Value};
use crate::rational::Rational;
use crate::triangle::{compute_alpha, compute_sigma_recursive};
use crate::verify::{run_suite, Context, Suite};

/// Largest `f_j` the `coeff` command computes to compare against a formula.
pub const DESK_FJ_MAX: u32 = 12;
/// Largest `k` the conjecture scanner is run for from the CLI.
pub const MAX_SCAN_K: u32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "moduli-hilbert",
    version,
    about = "Hilbert-series coefficients, generating functions and asymptotics of H*(M_0,n)"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Plain, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Graded dimensions alpha_{i,j} for i + j <= n, with row sums.
    Triangle {
        #[arg(long)]
        n: usize,
    },
    /// Total dimensions sigma_0..sigma_n from their own recursion.
    Sigma {
        #[arg(long)]
        n: usize,
    },
    /// Exp-polynomial closed form of f_j.
    Fj {
        #[arg(long)]
        j: u32,
    },
    /// [x^{2s-k} e^{tx}] f_{s+t-1}: closed form next to the extracted value.
    Coeff {
        #[arg(long)]
        s: u32,
        #[arg(long)]
        t: u32,
        #[arg(long, default_value_t = 0)]
        k: u32,
    },
    /// sigma_n against its asymptotic estimate, plus the growth-rate diagnostic.
    Asymptotics {
        #[arg(long)]
        n: u32,
    },
    /// Fit Q_k(s, t) from computed coefficients and check it on held-out points.
    Conjecture {
        #[arg(long)]
        k: u32,
    },
    /// Run verification suites; exit 1 if any check fails.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
}

#[derive(Debug)]
pub enum Outcome {
    Ok(String),
    Failed(String),
    Usage(String),
}

impl Outcome {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            Outcome::Ok(_) => ExitCode::SUCCESS,
            Outcome::Failed(_) => ExitCode::from(1),
            Outcome::Usage(_) => ExitCode::from(2),
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let format = cli.format;
    match &cli.command {
        Command::Triangle { n } => Outcome::Ok(triangle(*n).render(format)),
        Command::Sigma { n } => Outcome::Ok(sigma(*n).render(format)),
        Command::Fj { j } => fj(*j, format),
        Command::Coeff { s, t, k } => coeff(*s, *t, *k, format),
        Command::Asymptotics { n } => asymptotics(*n, format),
        Command::Conjecture { k } => conjecture(*k, format),
        Command::Verify { suite } => verify(*suite, format),
    }
}

pub fn triangle(n: usize) -> OutputRecord {
    let tri = compute_alpha(n);
    let sums = tri.row_sums();
    let mut rec = OutputRecord::new("triangle").param("n", n);
    for (row_index, row) in tri.rows().iter().enumerate() {
        rec.push(vec![
            ("n", Value::from(row_index as u32)),
            ("alpha", Value::List(row.iter().map(Value::from).collect())),
            ("sigma", Value::from(&sums.values()[row_index])),
        ]);
    }
    rec
}

pub fn sigma(n: usize) -> OutputRecord {
    let sigmas = compute_sigma_recursive(n);
    let mut rec = OutputRecord::new("sigma").param("n", n);
    for (i, s) in sigmas.values().iter().enumerate() {
        rec.push(vec![
            ("n", Value::from(i as u32)),
            ("sigma", Value::from(s)),
        ]);
    }
    rec
}

fn fj(j: u32, format: Format) -> Outcome {
    if j > 8 {
        eprintln!("computing f_0 ..= f_{j}");
    }
    let table = match compute_fj(j) {
        Ok(t) => t,
        Err(e) => return Outcome::Failed(e.to_string()),
    };
    let f = table.get(j).expect("computed through j");
    let mut rec = OutputRecord::new("fj")
        .param("j", j)
        .param("degree_sequence", f.degree_sequence());
    for (freq, p) in f.terms() {
        rec.push(vec![
            ("freq", Value::from(freq)),
            (
                "poly",
                Value::List(p.coeffs().iter().cloned().map(Value::Rat).collect()),
            ),
        ]);
    }
    Outcome::Ok(rec.render(format))
}

/// Closed-form value of `[x^{2s-k} e^{tx}] f_{s+t-1}` and its source label.
fn coeff_formula(s: u32, t: u32, k: u32) -> Result<(Rational, &'static str), String> {
    match k {
        0 => gamma_formula(s, t)
            .map(|v| (v, "gamma"))
            .map_err(|e| e.to_string()),
        1 => delta_formula(s, t)
            .map(|v| (v, "delta"))
            .map_err(|e| e.to_string()),
        _ if k > MAX_SCAN_K => Err(format!("--k {k}: only k <= {MAX_SCAN_K} is supported")),
        _ if s < k || t < k => Err(format!("--k {k} needs s, t >= k (got s={s}, t={t})")),
        _ => {
            eprintln!("fitting Q_{k} from f_0 ..= f_{}", required_depth(k));
            let table = compute_fj(required_depth(k)).map_err(|e| e.to_string())?;
            let fit = fit_qk(k, &table).map_err(|e| e.to_string())?;
            Ok((
                conjecture_prefactor(s, t, k) * fit.candidate.eval(s, t),
                "fitted",
            ))
        }
    }
}

fn coeff(s: u32, t: u32, k: u32, format: Format) -> Outcome {
    let (formula, source) = match coeff_formula(s, t, k) {
        Ok(v) => v,
        Err(msg) => return Outcome::Usage(msg),
    };
    let extracted = match (s + t).checked_sub(1) {
        Some(j) if j <= DESK_FJ_MAX => match compute_fj(j) {
            Ok(table) => {
                let f = table.get(j).expect("computed through j");
                Some(f.coeff_of(t, (2 * s - k) as usize))
            }
            Err(e) => return Outcome::Failed(e.to_string()),
        },
        _ => None,
    };
    let verdict = match &extracted {
        Some(v) if *v == formula => "MATCH",
        Some(_) => "MISMATCH",
        None => "SKIPPED",
    };
    let mut rec = OutputRecord::new("coeff")
        .param("s", s)
        .param("t", t)
        .param("k", k)
        .param("source", source);
    rec.push(vec![
        ("formula", Value::Rat(formula)),
        ("extracted", extracted.map_or(Value::from("-"), Value::Rat)),
        ("verdict", Value::from(verdict)),
    ]);
    let text = rec.render(format);
    if verdict == "MISMATCH" {
        Outcome::Failed(text)
    } else {
        Outcome::Ok(text)
    }
}

fn asymptotics(n: u32, format: Format) -> Outcome {
    if n < 10 {
        return Outcome::Usage(format!("--n {n}: asymptotics needs n >= 10"));
    }
    eprintln!("computing sigma_0 ..= sigma_{n}");
    let sigmas = compute_sigma_recursive(n as usize);
    let rate = growth_rate_diagnostic(&sigmas).expect("n >= 10 gives enough terms");
    let mut rec = OutputRecord::new("asymptotics")
        .param("n", n)
        .param("growth_rate", format!("{rate:.9}"))
        .param("radius", format!("{:.9}", singular_radius()));
    for (i, s) in sigmas.values().iter().enumerate().skip(1) {
        let report = asymptotic_report(i as u32, s);
        rec.push(vec![
            ("n", Value::from(report.n)),
            ("sigma", Value::from(&report.sigma_exact)),
            ("ln_estimate", Value::from(report.ln_estimate)),
            ("ratio", Value::from(report.ratio)),
            ("transfer_ratio", Value::from(report.transfer_ratio)),
        ]);
    }
    Outcome::Ok(rec.render(format))
}

fn conjecture(k: u32, format: Format) -> Outcome {
    if k > MAX_SCAN_K {
        return Outcome::Usage(format!("--k {k}: only k <= {MAX_SCAN_K} is supported"));
    }
    eprintln!("computing f_0 ..= f_{}", required_depth(k));
    let table = match compute_fj(required_depth(k)) {
        Ok(t) => t,
        Err(e) => return Outcome::Failed(e.to_string()),
    };
    let fit = match fit_qk(k, &table) {
        Ok(f) => f,
        Err(e) => return Outcome::Failed(e.to_string()),
    };
    let points = |pts: &[(u32, u32)]| {
        Value::List(
            pts.iter()
                .map(|(s, t)| Value::from(format!("({s},{t})")))
                .collect(),
        )
    };
    let mut rec = OutputRecord::new("conjecture").param("k", k);
    rec.push(vec![
        ("k", Value::from(k)),
        ("candidate", Value::from(fit.candidate.to_string())),
        ("consistent", Value::from(fit.consistent)),
        ("training", points(&fit.grid_used)),
        ("held_out", points(&fit.held_out)),
    ]);
    let text = rec.render(format);
    if fit.consistent {
        Outcome::Ok(text)
    } else {
        Outcome::Failed(text)
    }
}

fn verify(suite: Suite, format: Format) -> Outcome {
    let ctx = Context::default();
    let outcomes = run_suite(suite, &ctx);
    let mut rec = OutputRecord::new("verify").param("suite", format!("{suite:?}").to_lowercase());
    for o in &outcomes {
        rec.push(vec![
            ("check", Value::from(o.name)),
            (
                "status",
                Value::from(if o.passed { "PASS" } else { "FAIL" }),
            ),
            ("detail", Value::from(o.detail.clone())),
        ]);
    }
    let text = rec.render(format);
    if outcomes.iter().all(|o| o.passed) {
        Outcome::Ok(text)
    } else {
        Outcome::Failed(text)
    }
}

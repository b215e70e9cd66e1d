//! The exponential generating functions
//! `f_j(x) = sum_i alpha_{i,j} x^{i+2} / (i+2)!` in closed exp-polynomial form.
//!
//! `f_{j+1}` solves `y' = y + R_j` with `y(0) = 0`, where
//! `R_j = D^{j+2} [ I^{j+1}(f_j) + 1/2 sum_{q=0}^{j} I^q(f_q) I^{j-q}(f_{j-q}) ]`.
//! That equation is the integral operator identity differentiated `j + 2`
//! times; the identity itself is re-checked afterwards by
//! [`verify_integral_identity`].

use num_traits::Zero;
use thiserror::Error;

use crate::exp_poly::{solve_linear_ode, DegreeSequence, ExpPolynomial};
use crate::poly::Polynomial;
use crate::rational::{factorial, from_biguint, int, rat, Rational};
use crate::triangle::compute_alpha;

/// Number of Taylor coefficients of each new `f_j` cross-checked against the
/// triangle while building the table.
const CROSS_CHECK_TERMS: usize = 4;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FjError {
    #[error("f_{j} violates invariant: {what}")]
    InvariantViolation { j: u32, what: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FjTable {
    entries: Vec<ExpPolynomial>,
    /// `I^j(f_j)`, reused by every later step.
    integrated: Vec<ExpPolynomial>,
}

impl FjTable {
    pub fn entries(&self) -> &[ExpPolynomial] {
        &self.entries
    }

    pub fn get(&self, j: u32) -> Option<&ExpPolynomial> {
        self.entries.get(j as usize)
    }

    /// Largest index present.
    pub fn j_max(&self) -> u32 {
        self.entries.len() as u32 - 1
    }

    /// `I^j(f_j)`.
    pub fn integrated(&self, j: u32) -> Option<&ExpPolynomial> {
        self.integrated.get(j as usize)
    }
}

/// `e^x - x - 1`.
pub fn f0() -> ExpPolynomial {
    ExpPolynomial::from_terms([
        (1, Polynomial::one()),
        (0, Polynomial::from_coeffs(vec![int(-1), int(-1)])),
    ])
}

/// `1/2 sum_{q=0}^{j} J_q J_{j-q}` using the `q <-> j-q` symmetry.
fn half_convolution(integrated: &[ExpPolynomial], j: usize) -> ExpPolynomial {
    let mut acc = ExpPolynomial::zero();
    for q in 0..=j / 2 {
        let prod = &integrated[q] * &integrated[j - q];
        if 2 * q == j {
            acc = acc + prod.scale(&rat(1, 2));
        } else {
            acc = acc + prod;
        }
    }
    acc
}

/// Builds `f_0 ..= f_{j_max}` and checks each new entry: value and first
/// derivative vanish at zero, `[x^2] = 1/2`, the degree sequence has the
/// expected shape, and the first few Taylor coefficients reproduce the
/// triangle.
pub fn compute_fj(j_max: u32) -> Result<FjTable, FjError> {
    let triangle = compute_alpha(j_max as usize + CROSS_CHECK_TERMS);
    let first = f0();
    let mut table = FjTable {
        integrated: vec![first.clone()],
        entries: vec![first],
    };
    check_entry(&table, 0, &triangle)?;
    for j in 0..j_max {
        let ju = j as usize;
        let bracket = table.integrated[ju].integrate() + half_convolution(&table.integrated, ju);
        let forcing = bracket.derivative_n(j + 2);
        let next = solve_linear_ode(&forcing);
        table.integrated.push(next.integrate_n(j + 1));
        table.entries.push(next);
        check_entry(&table, j + 1, &triangle)?;
    }
    Ok(table)
}

fn check_entry(
    table: &FjTable,
    j: u32,
    triangle: &crate::triangle::AlphaTriangle,
) -> Result<(), FjError> {
    let f = &table.entries[j as usize];
    let fail = |what: String| Err(FjError::InvariantViolation { j, what });
    if !f.eval_at_zero().is_zero() {
        return fail("f(0) != 0".into());
    }
    if !f.taylor_coeff(1).is_zero() {
        return fail("[x^1] != 0".into());
    }
    if f.taylor_coeff(2) != rat(1, 2) {
        return fail("[x^2] != 1/2".into());
    }
    if j >= 1 && f.degree_sequence() != DegreeSequence::fj_shape(j) {
        return fail(format!("degree sequence {}", f.degree_sequence()));
    }
    for i in 0..CROSS_CHECK_TERMS {
        let Some(alpha) = triangle.get(i, j as usize) else {
            break;
        };
        let n = i as u32 + 2;
        if f.taylor_coeff(n) * from_biguint(&factorial(n)) != from_biguint(alpha) {
            return fail(format!(
                "Taylor coefficient x^{n} disagrees with alpha_({i},{j})"
            ));
        }
    }
    Ok(())
}

/// Both sides of
/// `I^{j+1} f_{j+1} = I^{j+2} f_{j+1} + I^{j+1} f_j + 1/2 sum_q I^q f_q * I^{j-q} f_{j-q}`,
/// evaluated independently of the integrated cache.
pub fn integral_identity_sides(j: u32, table: &FjTable) -> Option<(ExpPolynomial, ExpPolynomial)> {
    let next = table.get(j + 1)?;
    let lhs = next.integrate_n(j + 1);
    let mut rhs = next.integrate_n(j + 2) + table.get(j)?.integrate_n(j + 1);
    let half = rat(1, 2);
    for q in 0..=j {
        let a = table.get(q)?.integrate_n(q);
        let b = table.get(j - q)?.integrate_n(j - q);
        rhs = rhs + (&a * &b).scale(&half);
    }
    Some((lhs, rhs))
}

/// The integral operator identity holds exactly at `j`. `false` when the
/// table is too shallow.
pub fn verify_integral_identity(j: u32, table: &FjTable) -> bool {
    integral_identity_sides(j, table).is_some_and(|(lhs, rhs)| lhs == rhs)
}

/// `deg(f_j) = (-inf, 2j, 2(j-1), ..., 2, 0)` exactly.
pub fn verify_degree_bound(j: u32, table: &FjTable) -> bool {
    j >= 1
        && table
            .get(j)
            .is_some_and(|f| f.degree_sequence() == DegreeSequence::fj_shape(j))
}

/// `(j+1)^{2j} / (j+1)!`, the constant in front of `e^{(j+1)x}` in `f_j`.
pub fn leading_constant(j: u32) -> Rational {
    let k = j + 1;
    let num = num_traits::pow(Rational::from_integer(k.into()), 2 * j as usize);
    num / from_biguint(&factorial(k))
}

//! Closed forms for the leading coefficients of `f_j` and the combinatorial
//! identities behind them.
//!
//! `gamma(s, t) = [x^{2s} e^{tx}] f_{s+t-1}` and
//! `delta(s, t) = [x^{2s-1} e^{tx}] f_{s+t-1}`.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use thiserror::Error;

use crate::rational::{binomial, factorial, from_biguint, int, ln_biguint, upow, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormulaError {
    #[error("{formula} is undefined at s = {s}, t = {t}")]
    OutOfDomain {
        formula: &'static str,
        s: u32,
        t: u32,
    },
}

fn sign(s: u32) -> Rational {
    if s.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

fn pow2(e: u32) -> Rational {
    from_biguint(&(BigUint::one() << e))
}

/// `(-1)^s / (2^s s!) * t^{2(s+t-1)} / t!` for `s >= 0`, `t >= 1`.
pub fn gamma_formula(s: u32, t: u32) -> Result<Rational, FormulaError> {
    if t == 0 {
        return Err(FormulaError::OutOfDomain {
            formula: "gamma",
            s,
            t,
        });
    }
    let num = from_biguint(&upow(t.into(), 2 * (s + t - 1)));
    let den = pow2(s) * from_biguint(&factorial(s)) * from_biguint(&factorial(t));
    Ok(sign(s) * num / den)
}

/// `(-1)^s (5s + 9t - 8) t^{2s+2t-4} / (3 * 2^{s-1} (s-1)! (t-1)!)` for
/// `s, t >= 1`.
pub fn delta_formula(s: u32, t: u32) -> Result<Rational, FormulaError> {
    if s == 0 || t == 0 {
        return Err(FormulaError::OutOfDomain {
            formula: "delta",
            s,
            t,
        });
    }
    let linear = int(5 * i64::from(s) + 9 * i64::from(t) - 8);
    let num = linear * from_biguint(&upow(t.into(), 2 * s + 2 * t - 4));
    let den =
        int(3) * pow2(s - 1) * from_biguint(&factorial(s - 1)) * from_biguint(&factorial(t - 1));
    Ok(sign(s) * num / den)
}

/// Both sides of the two Abel-type convolutions over `c + d = t`, `c, d >= 1`:
/// `sum C(t; c, d) c^{c-1} d^{d-1} = 2 (t-1) t^{t-2}` and
/// `sum C(t; c, d) c^c d^{d-1} = (t-1) t^{t-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelSides {
    pub rooted_pairs: (BigUint, BigUint),
    pub weighted: (BigUint, BigUint),
}

pub fn abel_sides(t: u32) -> AbelSides {
    let mut lhs_a = BigUint::zero();
    let mut lhs_b = BigUint::zero();
    for c in 1..t {
        let d = t - c;
        let base = binomial(t, c) * upow(c.into(), c - 1) * upow(d.into(), d - 1);
        lhs_b += &base * c;
        lhs_a += base;
    }
    // t >= 1 here; for t = 1 both closed forms are 0 because of the (t-1) factor
    let rhs_a = if t >= 2 {
        BigUint::from(2u32) * (t - 1) * upow(t.into(), t - 2)
    } else {
        BigUint::zero()
    };
    let rhs_b = BigUint::from(t.saturating_sub(1)) * upow(t.into(), t.saturating_sub(1));
    AbelSides {
        rooted_pairs: (lhs_a, rhs_a),
        weighted: (lhs_b, rhs_b),
    }
}

pub fn abel_identity_check(t: u32) -> bool {
    if t == 0 {
        return false;
    }
    let sides = abel_sides(t);
    sides.rooted_pairs.0 == sides.rooted_pairs.1 && sides.weighted.0 == sides.weighted.1
}

/// Checks, by direct summation over `a + b = s`,
/// `sum a C(s; a, b) c^a d^b = s c (c+d)^{s-1}` and
/// `sum a^2 C(s; a, b) c^a d^b = s c (c+d)^{s-1} + s (s-1) c^2 (c+d)^{s-2}`.
pub fn binomial_derivative_check(s: u32, c: u32, d: u32) -> bool {
    let (c_big, d_big) = (BigInt::from(c), BigInt::from(d));
    let mut first = BigInt::zero();
    let mut second = BigInt::zero();
    for a in 0..=s {
        let b = s - a;
        let term = BigInt::from(binomial(s, a))
            * num_traits::pow(c_big.clone(), a as usize)
            * num_traits::pow(d_big.clone(), b as usize);
        first += &term * a;
        second += term * (a * a);
    }
    let sum = &c_big + &d_big;
    let pow_or_zero = |e: i64| {
        if e < 0 {
            BigInt::zero()
        } else {
            num_traits::pow(sum.clone(), e as usize)
        }
    };
    let s_i = i64::from(s);
    let first_rhs = BigInt::from(s) * &c_big * pow_or_zero(s_i - 1);
    let second_rhs =
        &first_rhs + BigInt::from(s_i * (s_i - 1)) * &c_big * &c_big * pow_or_zero(s_i - 2);
    first == first_rhs && second == second_rhs
}

/// `(j+1)^{2j+1} / j! * (j+1)^i`, the large-`i` estimate of `alpha_{i,j}`.
pub fn alpha_asymptotic_estimate(i: u32, j: u32) -> f64 {
    alpha_asymptotic_ln_estimate(i, j).exp()
}

pub fn alpha_asymptotic_ln_estimate(i: u32, j: u32) -> f64 {
    let base = f64::from(j + 1).ln();
    f64::from(2 * j + 1 + i) * base - ln_biguint(&factorial(j))
}

/// `alpha_{i,j} / estimate(i, j)`, formed in the log domain.
pub fn alpha_asymptotic_ratio(alpha: &BigUint, i: u32, j: u32) -> f64 {
    (ln_biguint(alpha) - alpha_asymptotic_ln_estimate(i, j)).exp()
}

//! The generating function `g(x) = sum_n sigma_n x^{n+2} / (n+2)!` of the
//! total dimensions, its Lambert-W closed form, and the growth of `sigma_n`.
//!
//! `g` satisfies `g' = (x + 2g) / (1 - g)` with `g(0) = 0` and equals
//! `1 - (z+2) (1 + 1 / W_{-1}(-e^{-2} (z+2)))` on the real interval
//! `(-2, e-2)`. Its dominant singularity is the square-root branch point at
//! `z = e-2`.

use std::f64::consts::{E, PI};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::lambert::{lambert_w, Branch, LambertError};
use crate::poly::Polynomial;
use crate::rational::{factorial, from_biguint, int, ln_biguint, rat, to_f64, Rational};
use crate::triangle::SigmaSequence;

/// Fewest terms [`growth_rate_diagnostic`] accepts.
pub const MIN_DIAGNOSTIC_TERMS: usize = 10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AsymptoticsError {
    #[error("z = {0} is outside (-2, e-2)")]
    Domain(f64),
    #[error(transparent)]
    Lambert(#[from] LambertError),
    #[error("need {needed} sigma terms, got {available}")]
    InsufficientTerms { needed: usize, available: usize },
}

/// Radius of convergence of `g`.
pub fn singular_radius() -> f64 {
    E - 2.0
}

pub fn g_closed_form(z: f64) -> Result<f64, AsymptoticsError> {
    if !(z > -2.0 && z < singular_radius()) {
        return Err(AsymptoticsError::Domain(z));
    }
    let w = lambert_w(Branch::MinusOne, -(-2.0f64).exp() * (z + 2.0))?;
    Ok(1.0 - (z + 2.0) * (1.0 + 1.0 / w))
}

/// `sum_{n < terms} sigma_n z^{n+2} / (n+2)!`, with each coefficient rounded
/// from its exact value.
pub fn g_truncated_series(sigmas: &SigmaSequence, z: f64, terms: usize) -> f64 {
    sigmas
        .values()
        .iter()
        .take(terms)
        .enumerate()
        .map(|(n, s)| {
            let n2 = n as u32 + 2;
            to_f64(&(from_biguint(s) / from_biguint(&factorial(n2)))) * z.powi(n2 as i32)
        })
        .sum()
}

/// Truncated power series of `g` through `x^max_power`.
pub fn g_series(sigmas: &SigmaSequence, max_power: usize) -> Polynomial {
    let mut coeffs = vec![Rational::zero(); max_power + 1];
    for (n, s) in sigmas.values().iter().enumerate() {
        let power = n + 2;
        if power > max_power {
            break;
        }
        coeffs[power] = from_biguint(s) / from_biguint(&factorial(power as u32));
    }
    Polynomial::from_coeffs(coeffs)
}

/// Coefficients of `g' (1 - g) - x - 2g` through `x^order`.
pub fn ode_residual_coefficients(
    order: usize,
    sigmas: &SigmaSequence,
) -> Result<Vec<Rational>, AsymptoticsError> {
    // [x^order] g' needs [x^{order+1}] g, i.e. sigma_{order-1}
    let needed = order.max(1);
    if sigmas.len() < needed {
        return Err(AsymptoticsError::InsufficientTerms {
            needed,
            available: sigmas.len(),
        });
    }
    let g = g_series(sigmas, order + 1);
    let one_minus_g = &Polynomial::one() - &g.truncate(order);
    let lhs = g.derivative().mul_truncated(&one_minus_g, order);
    let rhs = &Polynomial::x() + &g.truncate(order).scale(&int(2));
    let residual = &lhs - &rhs;
    Ok((0..=order).map(|i| residual.coeff(i)).collect())
}

/// `g' (1 - g) = x + 2g` holds as formal power series through `x^order`.
pub fn ode_residual_series(order: usize, sigmas: &SigmaSequence) -> Result<bool, AsymptoticsError> {
    Ok(ode_residual_coefficients(order, sigmas)?
        .iter()
        .all(Zero::is_zero))
}

/// Coefficients of the expansion `sum_k mu_k p^k` of the `W_{-1}`/`W_1`
/// pair around `-1/e`, with `p = -sqrt(2(ez + 1))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PuiseuxCoefficients {
    pub mu: Vec<Rational>,
    /// Auxiliary convolution sequence `a_k = sum_{j=2}^{k-1} mu_j mu_{k+1-j}`.
    pub helper: Vec<Rational>,
}

/// `mu_0 ..= mu_{k_max}` from
///
/// `mu_k = (k-1)/(k+1) (mu_{k-2}/2 + a_{k-2}/4) - a_k/2 - mu_{k-1}/(k+1)`
///
/// starting at `mu_0 = -1, mu_1 = 1, a_0 = 2, a_1 = -1`.
pub fn puiseux_mu(k_max: usize) -> PuiseuxCoefficients {
    let mut mu = vec![int(-1), int(1)];
    let mut helper = vec![int(2), int(-1)];
    for k in 2..=k_max {
        let a_k = (2..k)
            .map(|j| &mu[j] * &mu[k + 1 - j])
            .fold(Rational::zero(), |acc, v| acc + v);
        let ki = k as i64;
        let next = rat(ki - 1, ki + 1) * (&mu[k - 2] * rat(1, 2) + &helper[k - 2] * rat(1, 4))
            - &a_k * rat(1, 2)
            - &mu[k - 1] * rat(1, ki + 1);
        helper.push(a_k);
        mu.push(next);
    }
    mu.truncate(k_max + 1);
    helper.truncate(k_max + 1);
    PuiseuxCoefficients { mu, helper }
}

/// `exp(h)` through `x^order` for a series with `h(0) = 0`, via
/// `E_n = (1/n) sum_{k=1}^{n} k h_k E_{n-k}`.
pub(crate) fn exp_series(h: &Polynomial, order: usize) -> Polynomial {
    debug_assert!(h.coeff(0).is_zero());
    let mut e = vec![Rational::one()];
    for n in 1..=order {
        let mut acc = Rational::zero();
        for k in 1..=n {
            let hk = h.coeff(k);
            if !hk.is_zero() {
                acc += int(k as i64) * hk * &e[n - k];
            }
        }
        e.push(acc / int(n as i64));
    }
    Polynomial::from_coeffs(e)
}

/// Coefficients through `p^order` of `w e^{w+1} - (p^2/2 - 1)` for
/// `w = sum_k mu_k p^k`. `W(z) e^{W(z)} = z` with `z = (p^2/2 - 1)/e` makes
/// every coefficient vanish.
pub fn puiseux_functional_residual(mu: &[Rational], order: usize) -> Vec<Rational> {
    let w = Polynomial::from_coeffs(mu.iter().take(order + 1).cloned().collect());
    let shifted = &w + &Polynomial::one();
    let lhs = w.mul_truncated(&exp_series(&shifted, order), order);
    let target = Polynomial::from_coeffs(vec![int(-1), int(0), rat(1, 2)]).truncate(order);
    let residual = &lhs - &target;
    (0..=order).map(|i| residual.coeff(i)).collect()
}

/// `ln( sqrt(e / 2pi) (e-2)^{-n-2} n^{-3/2} (n+2)! )`.
pub fn sigma_asymptotic_ln_estimate(n: u32) -> f64 {
    0.5 * (E / (2.0 * PI)).ln()
        - f64::from(n + 2) * singular_radius().ln()
        - 1.5 * f64::from(n).ln()
        + ln_biguint(&factorial(n + 2))
}

/// `sqrt(e / 2pi) (e-2)^{-n-2} n^{-3/2} (n+2)!`; infinite once it leaves the
/// f64 range (n around 170), use the log form there.
pub fn sigma_asymptotic_estimate(n: u32) -> f64 {
    sigma_asymptotic_ln_estimate(n).exp()
}

/// Singularity-analysis estimate keeping the `(e-2)^{1/2}` factor that comes
/// from writing `sqrt(e-2-z) = sqrt(e-2) sqrt(1 - z/(e-2))`.
pub fn sigma_transfer_ln_estimate(n: u32) -> f64 {
    sigma_asymptotic_ln_estimate(n) + 0.5 * singular_radius().ln()
}

#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticReport {
    pub n: u32,
    pub sigma_exact: num_bigint::BigUint,
    pub ln_estimate: f64,
    /// `sigma_n / estimate`.
    pub ratio: f64,
    /// `sigma_n / transfer estimate`.
    pub transfer_ratio: f64,
}

pub fn asymptotic_report(n: u32, sigma: &num_bigint::BigUint) -> AsymptoticReport {
    let ln_sigma = ln_biguint(sigma);
    let ln_estimate = sigma_asymptotic_ln_estimate(n);
    AsymptoticReport {
        n,
        sigma_exact: sigma.clone(),
        ln_estimate,
        ratio: (ln_sigma - ln_estimate).exp(),
        transfer_ratio: (ln_sigma - sigma_transfer_ln_estimate(n)).exp(),
    }
}

/// Ratio-test estimate `sigma_{n-1} (n+2) / sigma_n` at the last index, which
/// tends to the radius of convergence of `g`.
pub fn growth_rate_diagnostic(sigmas: &SigmaSequence) -> Result<f64, AsymptoticsError> {
    if sigmas.len() < MIN_DIAGNOSTIC_TERMS {
        return Err(AsymptoticsError::InsufficientTerms {
            needed: MIN_DIAGNOSTIC_TERMS,
            available: sigmas.len(),
        });
    }
    let n = sigmas.len() - 1;
    let values = sigmas.values();
    let ln_ratio = ln_biguint(&values[n - 1]) + ((n + 2) as f64).ln() - ln_biguint(&values[n]);
    Ok(ln_ratio.exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangle::compute_sigma_recursive;
    use num_bigint::BigUint;

    #[test]
    fn closed_form_vanishes_at_origin() {
        assert!(g_closed_form(0.0).unwrap().abs() < 1e-15);
        assert!(g_closed_form(-2.0).is_err());
        assert!(g_closed_form(0.8).is_err());
    }

    #[test]
    fn closed_form_matches_series_near_origin() {
        let sigmas = compute_sigma_recursive(40);
        let series = g_truncated_series(&sigmas, 0.1, 41);
        assert!((g_closed_form(0.1).unwrap() - series).abs() < 1e-10);
        let sigmas = compute_sigma_recursive(150);
        let series = g_truncated_series(&sigmas, 0.5, 151);
        assert!((g_closed_form(0.5).unwrap() - series).abs() < 1e-8);
    }

    #[test]
    fn ode_residual() {
        let sigmas = compute_sigma_recursive(60);
        assert!(ode_residual_series(5, &sigmas).unwrap());
        assert!(ode_residual_series(60, &sigmas).unwrap());
        let mut bad: Vec<BigUint> = sigmas.values().to_vec();
        bad[0] = BigUint::from(2u32);
        assert!(!ode_residual_series(2, &SigmaSequence::from_values(bad)).unwrap());
        assert!(ode_residual_series(80, &sigmas).is_err());
    }

    #[test]
    fn puiseux_initial_terms() {
        let c = puiseux_mu(12);
        assert_eq!(c.mu[0], int(-1));
        assert_eq!(c.mu[1], int(1));
        assert_eq!(c.mu[2], rat(-1, 3));
        assert_eq!(c.mu[3], rat(11, 72));
        assert_eq!(c.helper[0], int(2));
        assert_eq!(c.helper[1], int(-1));
        assert_eq!(c.mu.len(), 13);
    }

    #[test]
    fn puiseux_solves_functional_equation() {
        let c = puiseux_mu(12);
        assert!(puiseux_functional_residual(&c.mu, 12)
            .iter()
            .all(Zero::is_zero));
        let mut wrong = c.mu.clone();
        wrong[5] += rat(1, 1000);
        assert!(!puiseux_functional_residual(&wrong, 12)
            .iter()
            .all(Zero::is_zero));
    }

    #[test]
    fn exp_series_of_x() {
        let e = exp_series(&Polynomial::x(), 4);
        assert_eq!(
            e,
            Polynomial::from_coeffs(vec![int(1), int(1), rat(1, 2), rat(1, 6), rat(1, 24)])
        );
    }

    #[test]
    fn growth_rate() {
        let sigmas = compute_sigma_recursive(299);
        let r = growth_rate_diagnostic(&sigmas).unwrap();
        assert!((r / singular_radius() - 1.0).abs() < 0.01, "{r}");
        let ones = SigmaSequence::from_values(vec![BigUint::one(); 12]);
        assert!(growth_rate_diagnostic(&ones).unwrap().is_finite());
        assert!(growth_rate_diagnostic(&compute_sigma_recursive(5)).is_err());
    }

    #[test]
    fn estimate_at_table_entry() {
        // sigma_6 = 14747; ratio is far from 1 at this size and only reported.
        let report = asymptotic_report(6, &BigUint::from(14747u32));
        assert!(report.ratio > 0.0 && report.ratio.is_finite());
        assert!((report.ln_estimate - sigma_asymptotic_estimate(6).ln()).abs() < 1e-12);
    }
}

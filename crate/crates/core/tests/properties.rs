use moduli_hilbert::exp_poly::{solve_linear_ode, DegreeSequence, ExpPolynomial};
use moduli_hilbert::formulas::binomial_derivative_check;
use moduli_hilbert::poly::{Degree, Polynomial};
use moduli_hilbert::rational::{int, rat, Rational};
use num_traits::Zero;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn polynomial() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(rational(), 0..=4).prop_map(Polynomial::from_coeffs)
}

fn exp_poly() -> impl Strategy<Value = ExpPolynomial> {
    prop::collection::vec((0u32..=3, polynomial()), 0..=4).prop_map(ExpPolynomial::from_terms)
}

fn same_up_to(a: &DegreeSequence, b: &DegreeSequence) -> usize {
    a.entries().len().max(b.entries().len())
}

/// Maclaurin coefficients of `f` through `x^order`, built from the exponential
/// series directly.
fn maclaurin(f: &ExpPolynomial, order: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); order + 1];
    for (freq, p) in f.terms() {
        let mut exp_series = Vec::with_capacity(order + 1);
        let mut term = int(1);
        for m in 0..=order {
            if m > 0 {
                term = term * int(freq.into()) / int(m as i64);
            }
            exp_series.push(term.clone());
        }
        for (d, c) in p.coeffs().iter().enumerate() {
            for m in 0..=order.saturating_sub(d) {
                if d + m <= order {
                    out[d + m] += c * &exp_series[m];
                }
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_axioms(f in exp_poly(), g in exp_poly(), h in exp_poly()) {
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert!((&f - &f).is_zero());
        prop_assert_eq!(&f * &ExpPolynomial::constant(int(1)), f.clone());
    }

    #[test]
    fn fundamental_theorem(f in exp_poly()) {
        prop_assert_eq!(f.integrate().derivative(), f.clone());
        let back = f.derivative().integrate();
        prop_assert_eq!(back, &f - &ExpPolynomial::constant(f.eval_at_zero()));
    }

    #[test]
    fn integral_vanishes_at_zero(f in exp_poly()) {
        prop_assert!(f.integrate().eval_at_zero().is_zero());
        prop_assert!(f.integrate_n(3).eval_at_zero().is_zero());
    }

    #[test]
    fn sum_and_product_degree_bounds(f in exp_poly(), g in exp_poly()) {
        let (a, b) = (f.degree_sequence(), g.degree_sequence());
        prop_assert!((&f + &g).degree_sequence().le(&a.sum_bound(&b)));
        prop_assert!((&f * &g).degree_sequence().le(&a.product_bound(&b)));
    }

    #[test]
    fn derivative_degree_sequence(f in exp_poly()) {
        let expected = f.degree_sequence().after_derivative();
        prop_assert_eq!(f.derivative().degree_sequence(), expected);
    }

    #[test]
    fn integral_degree_sequence(f in exp_poly()) {
        prop_assume!(!f.is_zero());
        let a = f.degree_sequence();
        let expected = a.after_integral();
        let actual = f.integrate().degree_sequence();
        for k in 0..same_up_to(&expected, &actual) {
            if k == 0 && a.get(0) == Degree::NegInfinity {
                // a vanishing constant of integration drops out of the
                // canonical form
                prop_assert!(actual.get(0) <= expected.get(0));
            } else {
                prop_assert_eq!(actual.get(k), expected.get(k), "frequency {}", k);
            }
        }
    }

    #[test]
    fn ode_solution_degree_sequence(r in exp_poly()) {
        let a = r.degree_sequence();
        let expected = a.after_ode_solve();
        let actual = solve_linear_ode(&r).degree_sequence();
        for k in 0..same_up_to(&expected, &actual) {
            if k == 1 && a.get(1) == Degree::NegInfinity {
                prop_assert!(actual.get(1) <= expected.get(1));
            } else {
                prop_assert_eq!(actual.get(k), expected.get(k), "frequency {}", k);
            }
        }
    }

    #[test]
    fn ode_residual_vanishes(r in exp_poly()) {
        let y = solve_linear_ode(&r);
        prop_assert!((&(&y.derivative() - &y) - &r).is_zero());
        prop_assert!(y.eval_at_zero().is_zero());
    }

    #[test]
    fn taylor_matches_exponential_series(f in exp_poly()) {
        let order = 12;
        let expected = maclaurin(&f, order);
        for (n, c) in expected.iter().enumerate() {
            prop_assert_eq!(&f.taylor_coeff(n as u32), c, "x^{}", n);
        }
        let x = rat(1, 3);
        let series_value = expected.iter().rev().fold(Rational::zero(), |acc, c| acc * &x + c);
        let taylor_value = (0..=order as u32)
            .rev()
            .fold(Rational::zero(), |acc, n| acc * &x + f.taylor_coeff(n));
        prop_assert_eq!(series_value, taylor_value);
    }

    #[test]
    fn binomial_derivative_identities(s in 0u32..=30, c in 1u32..=50, d in 1u32..=50) {
        prop_assert!(binomial_derivative_check(s, c, d));
    }
}

//! Exp-polynomials `sum_k p_k(x) e^{kx}` with rational polynomial
//! coefficients and nonnegative integer frequencies.
//!
//! The representation is canonical: a frequency is present only when its
//! polynomial is nonzero, so structural equality is mathematical equality.
//! The algebra is closed under `+`, `*`, `d/dx` and the integral operator
//! `I(f) = int_0^x f(t) dt`, and first-order equations `y' = y + r` are solved
//! inside it.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::poly::{Degree, Polynomial};
use crate::rational::{factorial, from_biguint, upow, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ExpPolynomial {
    terms: BTreeMap<u32, Polynomial>,
}

impl ExpPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `p(x) e^{freq x}`.
    pub fn term(freq: u32, poly: Polynomial) -> Self {
        let mut out = Self::zero();
        out.accumulate(freq, poly);
        out
    }

    /// `e^{freq x}`.
    pub fn exp(freq: u32) -> Self {
        Self::term(freq, Polynomial::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(0, Polynomial::constant(c))
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, Polynomial)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (k, p) in terms {
            out.accumulate(k, p);
        }
        out
    }

    fn accumulate(&mut self, freq: u32, poly: Polynomial) {
        if poly.is_zero() {
            return;
        }
        let merged = match self.terms.remove(&freq) {
            Some(existing) => &existing + &poly,
            None => poly,
        };
        if !merged.is_zero() {
            self.terms.insert(freq, merged);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Polynomial multiplying `e^{freq x}`, if nonzero.
    pub fn poly(&self, freq: u32) -> Option<&Polynomial> {
        self.terms.get(&freq)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Polynomial)> {
        self.terms.iter().map(|(&k, p)| (k, p))
    }

    pub fn max_frequency(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(self.terms().map(|(k, p)| (k, p.scale(c))))
    }

    /// `f(0) = sum_k p_k(0)`.
    pub fn eval_at_zero(&self) -> Rational {
        self.terms
            .values()
            .map(|p| p.coeff(0))
            .fold(Rational::zero(), |a, b| a + b)
    }

    /// `(p e^{kx})' = (p' + k p) e^{kx}` termwise.
    pub fn derivative(&self) -> Self {
        Self::from_terms(self.terms().map(|(k, p)| {
            let shifted = p.scale(&Rational::from_integer(k.into()));
            (k, &p.derivative() + &shifted)
        }))
    }

    pub fn derivative_n(&self, n: u32) -> Self {
        (0..n).fold(self.clone(), |f, _| f.derivative())
    }

    /// The integral operator `I(f)(x) = int_0^x f(t) dt`.
    ///
    /// For `k >= 1` the antiderivative of `p e^{kx}` is `q e^{kx}` with
    /// `q' + k q = p`; the value at zero is cancelled through the constant
    /// term of frequency 0.
    pub fn integrate(&self) -> Self {
        let mut out = Self::zero();
        let mut correction = Rational::zero();
        for (k, p) in self.terms() {
            if k == 0 {
                out.accumulate(0, p.antiderivative());
            } else {
                let q = p.solve_shifted(&Rational::from_integer(k.into()));
                correction -= q.coeff(0);
                out.accumulate(k, q);
            }
        }
        out.accumulate(0, Polynomial::constant(correction));
        out
    }

    /// `I^n(f)`; `I^0` is the identity.
    pub fn integrate_n(&self, n: u32) -> Self {
        (0..n).fold(self.clone(), |f, _| f.integrate())
    }

    /// Per-frequency polynomial degrees, indexed by frequency `0..=max`.
    pub fn degree_sequence(&self) -> DegreeSequence {
        let Some(max) = self.max_frequency() else {
            return DegreeSequence::default();
        };
        DegreeSequence(
            (0..=max)
                .map(|k| self.poly(k).map_or(Degree::NegInfinity, Polynomial::degree))
                .collect(),
        )
    }

    /// `[x^power e^{freq x}] f`.
    pub fn coeff_of(&self, freq: u32, power: usize) -> Rational {
        self.poly(freq)
            .map_or_else(Rational::zero, |p| p.coeff(power))
    }

    /// `[x^n]` of the Maclaurin expansion:
    /// `sum_k sum_{d <= n} p_{k,d} k^{n-d} / (n-d)!`.
    pub fn taylor_coeff(&self, n: u32) -> Rational {
        let mut acc = Rational::zero();
        for (k, p) in self.terms() {
            for (d, c) in p.coeffs().iter().enumerate() {
                let d = d as u32;
                if d > n || c.is_zero() {
                    continue;
                }
                let m = n - d;
                if k == 0 && m > 0 {
                    continue;
                }
                let num = from_biguint(&upow(k as u64, m));
                let den = from_biguint(&factorial(m));
                acc += c * num / den;
            }
        }
        acc
    }
}

/// The unique `y` with `y' = y + r` and `y(0) = 0`.
///
/// Each non-resonant frequency `k != 1` gets the particular part `q e^{kx}`
/// with `q' + (k-1) q = r_k`. At `k = 1` the particular part is
/// `(int_0^x r_1) e^x`. The homogeneous `C e^x` is fixed by `y(0) = 0`.
pub fn solve_linear_ode(r: &ExpPolynomial) -> ExpPolynomial {
    let mut y = ExpPolynomial::zero();
    for (k, p) in r.terms() {
        let part = if k == 1 {
            p.antiderivative()
        } else {
            p.solve_shifted(&Rational::from_integer((i64::from(k) - 1).into()))
        };
        y.accumulate(k, part);
    }
    let at_zero = y.eval_at_zero();
    y.accumulate(1, Polynomial::constant(-at_zero));
    y
}

/// Degrees `(deg p_0, deg p_1, ...)` of an exp-polynomial. Frequencies beyond
/// the stored length are `-inf`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct DegreeSequence(pub Vec<Degree>);

impl DegreeSequence {
    pub fn entries(&self) -> &[Degree] {
        &self.0
    }

    pub fn get(&self, freq: usize) -> Degree {
        self.0.get(freq).copied().unwrap_or(Degree::NegInfinity)
    }

    pub fn from_finite(entries: &[Option<u32>]) -> Self {
        DegreeSequence(
            entries
                .iter()
                .map(|e| e.map_or(Degree::NegInfinity, Degree::Finite))
                .collect(),
        )
    }

    /// `(-inf, 2j, 2(j-1), ..., 2, 0)`, the shape of `f_j` for `j >= 1`.
    pub fn fj_shape(j: u32) -> Self {
        let mut entries = vec![Degree::NegInfinity];
        entries.extend((1..=j + 1).map(|k| Degree::Finite(2 * (j + 1 - k))));
        DegreeSequence(entries)
    }

    /// Componentwise `<=`, padding the shorter sequence with `-inf`.
    pub fn le(&self, other: &DegreeSequence) -> bool {
        let n = self.0.len().max(other.0.len());
        (0..n).all(|k| self.get(k) <= other.get(k))
    }

    /// Bound for `f + g`: componentwise maximum.
    pub fn sum_bound(&self, other: &DegreeSequence) -> Self {
        let n = self.0.len().max(other.0.len());
        DegreeSequence((0..n).map(|k| self.get(k).max(other.get(k))).collect())
    }

    /// Bound for `f * g`: `d_i = max_{p+q=i} (a_p + b_q)`.
    pub fn product_bound(&self, other: &DegreeSequence) -> Self {
        if self.0.is_empty() || other.0.is_empty() {
            return Self::default();
        }
        let n = self.0.len() + other.0.len() - 1;
        DegreeSequence(
            (0..n)
                .map(|i| {
                    (0..=i)
                        .map(|p| self.get(p).plus(other.get(i - p)))
                        .max()
                        .unwrap_or(Degree::NegInfinity)
                })
                .collect(),
        )
    }

    /// Sequence of `f'`: `(a_0 - 1, a_1, ..., a_k)`.
    pub fn after_derivative(&self) -> Self {
        let mut out = self.0.clone();
        if let Some(first) = out.first_mut() {
            *first = first.pred();
        }
        Self(out).trimmed()
    }

    /// Sequence of `I(f)`: `(max(a_0 + 1, 0), a_1, ..., a_k)`.
    pub fn after_integral(&self) -> Self {
        let mut out = self.0.clone();
        match out.first_mut() {
            Some(first) => *first = first.succ_or_zero(),
            None => out.push(Degree::Finite(0)),
        }
        Self(out)
    }

    /// Sequence of the solution of `y' = y + f`:
    /// `(a_0, max(a_1 + 1, 0), a_2, ..., a_k)`.
    pub fn after_ode_solve(&self) -> Self {
        let mut out = self.0.clone();
        if out.len() < 2 {
            out.resize(2, Degree::NegInfinity);
        }
        out[1] = out[1].succ_or_zero();
        Self(out)
    }

    fn trimmed(mut self) -> Self {
        while self.0.last() == Some(&Degree::NegInfinity) {
            self.0.pop();
        }
        self
    }
}

impl fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for ExpPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (k, p)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "({p})")?,
                1 => write!(f, "({p})*e^x")?,
                _ => write!(f, "({p})*e^({k}x)")?,
            }
        }
        Ok(())
    }
}

impl Add for &ExpPolynomial {
    type Output = ExpPolynomial;

    fn add(self, rhs: &ExpPolynomial) -> ExpPolynomial {
        let mut out = self.clone();
        for (k, p) in rhs.terms() {
            out.accumulate(k, p.clone());
        }
        out
    }
}

impl Add for ExpPolynomial {
    type Output = ExpPolynomial;

    fn add(mut self, rhs: ExpPolynomial) -> ExpPolynomial {
        for (k, p) in rhs.terms {
            self.accumulate(k, p);
        }
        self
    }
}

impl Neg for &ExpPolynomial {
    type Output = ExpPolynomial;

    fn neg(self) -> ExpPolynomial {
        ExpPolynomial {
            terms: self.terms.iter().map(|(&k, p)| (k, -p)).collect(),
        }
    }
}

impl Neg for ExpPolynomial {
    type Output = ExpPolynomial;

    fn neg(self) -> ExpPolynomial {
        -&self
    }
}

impl Sub for &ExpPolynomial {
    type Output = ExpPolynomial;

    fn sub(self, rhs: &ExpPolynomial) -> ExpPolynomial {
        self + &(-rhs)
    }
}

impl Sub for ExpPolynomial {
    type Output = ExpPolynomial;

    fn sub(self, rhs: ExpPolynomial) -> ExpPolynomial {
        &self - &rhs
    }
}

impl Mul for &ExpPolynomial {
    type Output = ExpPolynomial;

    fn mul(self, rhs: &ExpPolynomial) -> ExpPolynomial {
        let mut out = ExpPolynomial::zero();
        for (a, p) in self.terms() {
            for (b, q) in rhs.terms() {
                out.accumulate(a + b, p * q);
            }
        }
        out
    }
}

impl Mul for ExpPolynomial {
    type Output = ExpPolynomial;

    fn mul(self, rhs: ExpPolynomial) -> ExpPolynomial {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn poly(cs: &[Rational]) -> Polynomial {
        Polynomial::from_coeffs(cs.to_vec())
    }

    fn f0() -> ExpPolynomial {
        ExpPolynomial::from_terms([(1, poly(&[int(1)])), (0, poly(&[int(-1), int(-1)]))])
    }

    fn f1() -> ExpPolynomial {
        ExpPolynomial::from_terms([
            (2, poly(&[int(2)])),
            (1, poly(&[int(-2), int(-2), rat(-1, 2)])),
        ])
    }

    fn f2() -> ExpPolynomial {
        ExpPolynomial::from_terms([
            (3, poly(&[rat(27, 2)])),
            (2, poly(&[int(-22), int(-20), int(-4)])),
            (
                1,
                poly(&[rat(17, 2), int(15), rat(17, 2), rat(11, 6), rat(1, 8)]),
            ),
        ])
    }

    #[test]
    fn addition() {
        assert_eq!(&f0() + &ExpPolynomial::zero(), f0());
        assert!((&ExpPolynomial::exp(1) + &(-&ExpPolynomial::exp(1))).is_zero());
        let doubled =
            ExpPolynomial::from_terms([(1, poly(&[int(2)])), (0, poly(&[int(-2), int(-2)]))]);
        assert_eq!(&f0() + &f0(), doubled);
    }

    #[test]
    fn multiplication() {
        assert_eq!(
            &ExpPolynomial::exp(1) * &ExpPolynomial::exp(1),
            ExpPolynomial::exp(2)
        );
        let a = ExpPolynomial::term(1, Polynomial::x());
        let b = ExpPolynomial::term(2, Polynomial::x());
        assert_eq!(
            &a * &b,
            ExpPolynomial::term(3, Polynomial::monomial(int(1), 2))
        );
        // (e^x - x - 1)^2 expanded by hand.
        let expected = ExpPolynomial::from_terms([
            (2, poly(&[int(1)])),
            (1, poly(&[int(-2), int(-2)])),
            (0, poly(&[int(1), int(2), int(1)])),
        ]);
        assert_eq!(&f0() * &f0(), expected);
    }

    #[test]
    fn differentiation() {
        let expected = ExpPolynomial::from_terms([(1, poly(&[int(1)])), (0, poly(&[int(-1)]))]);
        assert_eq!(f0().derivative(), expected);
        let sq = ExpPolynomial::term(2, Polynomial::monomial(int(1), 2));
        assert_eq!(
            sq.derivative(),
            ExpPolynomial::term(2, poly(&[int(0), int(2), int(2)]))
        );
        let expected = ExpPolynomial::from_terms([
            (2, poly(&[int(4)])),
            (1, poly(&[int(-4), int(-3), rat(-1, 2)])),
        ]);
        assert_eq!(f1().derivative(), expected);
    }

    #[test]
    fn integration() {
        assert!(ExpPolynomial::zero().integrate().is_zero());
        let expected = ExpPolynomial::from_terms([(1, poly(&[int(1)])), (0, poly(&[int(-1)]))]);
        assert_eq!(ExpPolynomial::exp(1).integrate(), expected);
        let expected = ExpPolynomial::from_terms([
            (1, poly(&[int(1)])),
            (0, poly(&[int(-1), int(-1), rat(-1, 2)])),
        ]);
        let i_f0 = f0().integrate();
        assert_eq!(i_f0, expected);
        assert!(i_f0.eval_at_zero().is_zero());
    }

    #[test]
    fn iterated_integration() {
        assert_eq!(f0().integrate_n(0), f0());
        assert_eq!(ExpPolynomial::exp(1).integrate_n(2), f0());
        assert_eq!(f1().integrate_n(1).coeff_of(2, 0), int(1));
    }

    #[test]
    fn degree_sequences() {
        use Degree::*;
        assert_eq!(f0().degree_sequence().entries(), &[Finite(1), Finite(0)]);
        assert_eq!(
            f1().degree_sequence().entries(),
            &[NegInfinity, Finite(2), Finite(0)]
        );
        assert!(ExpPolynomial::zero().degree_sequence().entries().is_empty());
        assert_eq!(f1().degree_sequence(), DegreeSequence::fj_shape(1));
        assert_eq!(f2().degree_sequence(), DegreeSequence::fj_shape(2));
        assert_eq!(f1().degree_sequence().to_string(), "(-inf, 2, 0)");
    }

    #[test]
    fn coefficient_extraction() {
        assert_eq!(f1().coeff_of(2, 0), int(2));
        assert_eq!(f2().coeff_of(3, 0), rat(27, 2));
        assert_eq!(f0().coeff_of(0, 5), int(0));
    }

    #[test]
    fn taylor_coefficients() {
        assert_eq!(f0().taylor_coeff(2), rat(1, 2));
        assert_eq!(f0().taylor_coeff(0), int(0));
        assert_eq!(f1().taylor_coeff(3), rat(5, 6));
        // alpha_{2,2} = 127 and alpha_{4,2} = 3292 via f_2
        assert_eq!(f2().taylor_coeff(4), rat(127, 24));
        assert_eq!(f2().taylor_coeff(6), rat(3292, 720));
    }

    #[test]
    fn ode_solutions() {
        assert!(solve_linear_ode(&ExpPolynomial::zero()).is_zero());
        assert_eq!(
            solve_linear_ode(&ExpPolynomial::exp(2)),
            &ExpPolynomial::exp(2) - &ExpPolynomial::exp(1)
        );
        assert_eq!(
            solve_linear_ode(&ExpPolynomial::exp(1)),
            ExpPolynomial::term(1, Polynomial::x())
        );
    }

    #[test]
    fn ode_with_constant_forcing() {
        // y' = y + 1, y(0) = 0  =>  y = e^x - 1
        let y = solve_linear_ode(&ExpPolynomial::constant(int(1)));
        assert_eq!(y, &ExpPolynomial::exp(1) - &ExpPolynomial::constant(int(1)));
    }
}

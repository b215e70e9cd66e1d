//! Exact scalar helpers.
//!
//! [`Rational`] is an arbitrary-precision fraction kept in lowest terms with a
//! positive denominator; every symbolic computation in the crate uses it.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use num_rational::BigRational as Rational;

/// `num / den` as an exact rational. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn from_biguint(n: &BigUint) -> Rational {
    Rational::from_integer(BigInt::from(n.clone()))
}

pub fn factorial(n: u32) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// `base^exp` with the convention `0^0 = 1`.
pub fn upow(base: u64, exp: u32) -> BigUint {
    num_traits::pow(BigUint::from(base), exp as usize)
}

pub fn binomial(n: u32, k: u32) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Natural logarithm of a positive big integer, accurate to f64 precision for
/// any magnitude.
pub fn ln_biguint(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 64 {
        return n.to_u64().map_or(f64::NAN, |v| (v as f64).ln());
    }
    let shift = bits - 64;
    let top: BigUint = n >> shift;
    top.to_u64().map_or(f64::NAN, |v| (v as f64).ln()) + shift as f64 * std::f64::consts::LN_2
}

/// Natural logarithm of `|q|` for a nonzero rational.
pub fn ln_abs_rational(q: &Rational) -> f64 {
    let num = q.numer().abs().to_biguint().unwrap_or_default();
    let den = q.denom().to_biguint().unwrap_or_default();
    ln_biguint(&num) - ln_biguint(&den)
}

/// Nearest f64, computed in the log domain so huge numerators and
/// denominators do not overflow.
pub fn to_f64(q: &Rational) -> f64 {
    if q.is_zero() {
        return 0.0;
    }
    if let (Some(n), Some(d)) = (q.numer().to_f64(), q.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    let magnitude = ln_abs_rational(q).exp();
    if q.is_negative() {
        -magnitude
    } else {
        magnitude
    }
}

/// Lossless `num/den` text; integers print without a denominator.
pub fn render(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms() {
        let q = rat(6, -4);
        assert_eq!(q.numer(), &BigInt::from(-3));
        assert_eq!(q.denom(), &BigInt::from(2));
        assert_eq!(render(&q), "-3/2");
        assert_eq!(render(&int(7)), "7");
    }

    #[test]
    fn binomials_and_factorials() {
        assert_eq!(binomial(10, 3), BigUint::from(120u32));
        assert_eq!(binomial(3, 5), BigUint::zero());
        assert_eq!(factorial(0), BigUint::one());
        assert_eq!(factorial(6), BigUint::from(720u32));
        assert_eq!(upow(0, 0), BigUint::one());
    }

    #[test]
    fn logs_of_huge_integers() {
        let big = factorial(300);
        let expected: f64 = (1..=300).map(|k| (k as f64).ln()).sum();
        assert!((ln_biguint(&big) - expected).abs() < 1e-9);
        let q = Rational::new(BigInt::from(factorial(400)), BigInt::from(factorial(399)));
        assert!((to_f64(&q) - 400.0).abs() < 1e-9);
    }
}

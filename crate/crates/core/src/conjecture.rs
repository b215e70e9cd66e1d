//! Data-driven scanner for the polynomials `Q_k(s, t)` in
//!
//! `[x^{2s-k} e^{tx}] f_{s+t-1} = (-1)^s t^{2s+2t-2k-2} / (2^{s-k} (s-k)! (t-k)!) * Q_k(s, t)`.
//!
//! Each sampled coefficient is divided by the prefactor, a polynomial of total
//! degree `<= k` is interpolated exactly from a training subset of the grid,
//! and the remaining points are used as a held-out check.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::fj::FjTable;
use crate::rational::{factorial, from_biguint, int, render, upow, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FitError {
    #[error("interpolation system for k = {k} is singular (rank {rank} < {unknowns})")]
    Singular {
        k: u32,
        rank: usize,
        unknowns: usize,
    },
    #[error("fitting k = {k} needs f_j up to j = {needed}, table stops at {available}")]
    TableTooShallow { k: u32, needed: u32, available: u32 },
}

/// Polynomial in `s` and `t` with rational coefficients, keyed by the
/// exponent pair `(a, b)` of `s^a t^b`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BivariatePolynomial {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl BivariatePolynomial {
    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), Rational)>>(terms: I) -> Self {
        let mut out = Self::default();
        for (m, c) in terms {
            let entry = out.terms.entry(m).or_insert_with(Rational::zero);
            *entry += c;
            if entry.is_zero() {
                out.terms.remove(&m);
            }
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, a: u32, b: u32) -> Rational {
        self.terms
            .get(&(a, b))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(a, b)| a + b).max()
    }

    pub fn eval(&self, s: u32, t: u32) -> Rational {
        self.terms
            .iter()
            .map(|(&(a, b), c)| c * from_biguint(&(upow(s.into(), a) * upow(t.into(), b))))
            .fold(Rational::zero(), |acc, v| acc + v)
    }
}

impl fmt::Display for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest total degree first, then by power of s
        let mut monomials: Vec<_> = self.terms.iter().collect();
        monomials.sort_by_key(|(&(a, b), _)| (std::cmp::Reverse(a + b), std::cmp::Reverse(a)));
        for (i, (&(a, b), c)) in monomials.into_iter().enumerate() {
            match (i, c.is_negative()) {
                (0, _) => write!(f, "{}", render(c))?,
                (_, true) => write!(f, " - {}", render(&-c))?,
                (_, false) => write!(f, " + {}", render(c))?,
            }
            for (name, e) in [("s", a), ("t", b)] {
                match e {
                    0 => {}
                    1 => write!(f, "*{name}")?,
                    _ => write!(f, "*{name}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QkFit {
    pub k: u32,
    pub candidate: BivariatePolynomial,
    /// Training points the candidate was interpolated from.
    pub grid_used: Vec<(u32, u32)>,
    pub held_out: Vec<(u32, u32)>,
    /// The candidate reproduces every training and held-out point exactly.
    pub consistent: bool,
}

/// `(-1)^s t^{2s+2t-2k-2} / (2^{s-k} (s-k)! (t-k)!)`, for `s, t >= k` and
/// `t >= 1`.
pub fn conjecture_prefactor(s: u32, t: u32, k: u32) -> Rational {
    debug_assert!(s >= k && t >= k && t >= 1);
    let num = from_biguint(&upow(t.into(), 2 * s + 2 * t - 2 * k - 2));
    let den = from_biguint(&((BigUint::one() << (s - k)) * factorial(s - k) * factorial(t - k)));
    let value = num / den;
    if s.is_multiple_of(2) {
        value
    } else {
        -value
    }
}

/// `[x^{2s-k} e^{tx}] f_{s+t-1}` divided by the prefactor, or `None` when the
/// table does not reach `f_{s+t-1}`.
pub fn normalized_coefficient(table: &FjTable, s: u32, t: u32, k: u32) -> Option<Rational> {
    let f = table.get((s + t).checked_sub(1)?)?;
    let raw = f.coeff_of(t, (2 * s - k) as usize);
    Some(raw / conjecture_prefactor(s, t, k))
}

/// Sample grid `k <= s <= 2k+2`, `max(k,1) <= t <= 2k+2` in raster order.
pub fn sample_grid(k: u32) -> Vec<(u32, u32)> {
    let hi = 2 * k + 2;
    (k..=hi)
        .flat_map(|s| (k.max(1)..=hi).map(move |t| (s, t)))
        .collect()
}

/// Deepest `f_j` the scanner reads for a given `k`.
pub fn required_depth(k: u32) -> u32 {
    4 * k + 3
}

fn monomials(k: u32) -> Vec<(u32, u32)> {
    (0..=k)
        .flat_map(|deg| (0..=deg).rev().map(move |a| (a, deg - a)))
        .collect()
}

pub fn fit_qk(k: u32, table: &FjTable) -> Result<QkFit, FitError> {
    let needed = required_depth(k);
    if table.j_max() < needed {
        return Err(FitError::TableTooShallow {
            k,
            needed,
            available: table.j_max(),
        });
    }
    let grid = sample_grid(k);
    let holdout = grid.len().div_ceil(4);
    let (train, held) = grid.split_at(grid.len() - holdout);
    let basis = monomials(k);

    let values: Vec<Rational> = train
        .iter()
        .map(|&(s, t)| normalized_coefficient(table, s, t, k).expect("depth checked"))
        .collect();
    let rows: Vec<Vec<Rational>> = train
        .iter()
        .map(|&(s, t)| {
            basis
                .iter()
                .map(|&(a, b)| from_biguint(&(upow(s.into(), a) * upow(t.into(), b))))
                .collect()
        })
        .collect();

    let (solution, train_consistent) = solve_exact(rows, values, k)?;
    let candidate = BivariatePolynomial::from_terms(basis.into_iter().zip(solution));
    let held_consistent = held.iter().all(|&(s, t)| {
        normalized_coefficient(table, s, t, k).expect("depth checked") == candidate.eval(s, t)
    });
    Ok(QkFit {
        k,
        candidate,
        grid_used: train.to_vec(),
        held_out: held.to_vec(),
        consistent: train_consistent && held_consistent,
    })
}

/// Exact Gauss-Jordan elimination on an overdetermined system. Returns the
/// solution determined by the pivot rows and whether every remaining row is
/// satisfied by it.
fn solve_exact(
    mut rows: Vec<Vec<Rational>>,
    mut rhs: Vec<Rational>,
    k: u32,
) -> Result<(Vec<Rational>, bool), FitError> {
    let unknowns = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..unknowns {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        rhs.swap(rank, pivot);
        let inv = rows[rank][col].recip();
        for v in rows[rank].iter_mut() {
            *v *= &inv;
        }
        rhs[rank] *= &inv;
        for r in 0..rows.len() {
            if r == rank || rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].clone();
            let pivot_row = rows[rank].clone();
            for (v, p) in rows[r].iter_mut().zip(&pivot_row) {
                *v -= &factor * p;
            }
            let delta = &factor * &rhs[rank];
            rhs[r] -= delta;
        }
        rank += 1;
    }
    if rank < unknowns {
        return Err(FitError::Singular { k, rank, unknowns });
    }
    let consistent = rhs[rank..].iter().all(Zero::is_zero);
    // after full reduction the pivot block is the identity in column order
    Ok((rhs[..unknowns].to_vec(), consistent))
}

/// `Q_1(s, t) = (5s + 9t - 8) / 3`.
pub fn known_q1() -> BivariatePolynomial {
    BivariatePolynomial::from_terms([
        ((1, 0), Rational::new(5.into(), 3.into())),
        ((0, 1), int(3)),
        ((0, 0), Rational::new((-8).into(), 3.into())),
    ])
}

/// `Q_0(s, t) = 1`.
pub fn known_q0() -> BivariatePolynomial {
    BivariatePolynomial::from_terms([((0, 0), Rational::one())])
}

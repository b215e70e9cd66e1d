//! Graded dimensions `alpha_{i,j}` of the cohomology ring and their row sums
//! `sigma_n`.
//!
//! Row `n` of the triangle holds `alpha_{i,j}` with `i + j = n`, ordered by
//! `i`. Row `n` corresponds to the moduli space with `n + 3` marked points.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Pascal triangle of exact binomial coefficients `C(n, k)` for `n <= max`.
#[derive(Debug, Clone)]
pub struct BinomialTable {
    rows: Vec<Vec<BigUint>>,
}

impl BinomialTable {
    pub fn new(max: usize) -> Self {
        let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(max + 1);
        rows.push(vec![BigUint::one()]);
        for n in 1..=max {
            let prev = &rows[n - 1];
            let mut row = Vec::with_capacity(n + 1);
            row.push(BigUint::one());
            for k in 1..n {
                row.push(&prev[k - 1] + &prev[k]);
            }
            row.push(BigUint::one());
            rows.push(row);
        }
        Self { rows }
    }

    pub fn get(&self, n: usize, k: usize) -> &BigUint {
        &self.rows[n][k]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaTriangle {
    rows: Vec<Vec<BigUint>>,
}

impl AlphaTriangle {
    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn rows(&self) -> &[Vec<BigUint>] {
        &self.rows
    }

    pub fn row(&self, n: usize) -> &[BigUint] {
        &self.rows[n]
    }

    /// `alpha_{i,j}`, or `None` when `i + j` exceeds the computed range.
    pub fn get(&self, i: usize, j: usize) -> Option<&BigUint> {
        self.rows.get(i + j).map(|row| &row[i])
    }

    fn at(&self, i: usize, j: usize) -> &BigUint {
        &self.rows[i + j][i]
    }

    pub fn row_sums(&self) -> SigmaSequence {
        SigmaSequence {
            values: self.rows.iter().map(|r| r.iter().sum()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaSequence {
    values: Vec<BigUint>,
}

impl SigmaSequence {
    pub fn from_values(values: Vec<BigUint>) -> Self {
        Self { values }
    }

    pub fn values(&self) -> &[BigUint] {
        &self.values
    }

    pub fn get(&self, n: usize) -> Option<&BigUint> {
        self.values.get(n)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// All `alpha_{i,j}` with `i + j <= n_max`, from
///
/// `alpha_{i+1,j+1} = alpha_{i+1,j} + alpha_{i,j+1}
///     + 1/2 sum_{p<=i, q<=j} C(i+j+4, p+q+2) alpha_{p,q} alpha_{i-p,j-q}`
///
/// with `alpha_{i,0} = alpha_{0,i} = 1`.
pub fn compute_alpha(n_max: usize) -> AlphaTriangle {
    let binom = BinomialTable::new(n_max + 4);
    let mut tri = AlphaTriangle {
        rows: Vec::with_capacity(n_max + 1),
    };
    for n in 0..=n_max {
        let mut row = vec![BigUint::one(); n + 1];
        for (a, slot) in row.iter_mut().enumerate().take(n).skip(1) {
            // alpha_{a,b} with a = i+1, b = j+1
            let (i, j) = (a - 1, n - a - 1);
            let mut conv = BigUint::zero();
            for p in 0..=i {
                for q in 0..=j {
                    let prod = tri.at(p, q) * tri.at(i - p, j - q);
                    conv += binom.get(i + j + 4, p + q + 2) * prod;
                }
            }
            let (half, rem) = conv.div_rem(&BigUint::from(2u32));
            debug_assert!(rem.is_zero(), "odd convolution at alpha_({a},{})", n - a);
            *slot = tri.at(a, j) + tri.at(i, j + 1) + half;
        }
        tri.rows.push(row);
    }
    tri
}

/// `sigma_0..=sigma_{n_max}` directly from
///
/// `sigma_{n+2} = 2 sigma_{n+1} + 1/2 sum_{i+j=n} (n+4)!/((i+2)!(j+2)!) sigma_i sigma_j`
///
/// seeded with `sigma_0 = 1` and `sigma_1 = 2`.
pub fn compute_sigma_recursive(n_max: usize) -> SigmaSequence {
    let binom = BinomialTable::new(n_max + 2);
    let mut values: Vec<BigUint> = vec![BigUint::one(), BigUint::from(2u32)];
    values.truncate(n_max + 1);
    for m in 2..=n_max {
        let n = m - 2;
        let mut conv = BigUint::zero();
        // symmetric in i <-> j: double the lower half and add the centre once
        for i in 0..=n / 2 {
            let j = n - i;
            let term = binom.get(n + 4, i + 2) * (&values[i] * &values[j]);
            if i == j {
                conv += term;
            } else {
                conv += term << 1;
            }
        }
        let (half, rem) = conv.div_rem(&BigUint::from(2u32));
        debug_assert!(rem.is_zero(), "odd convolution at sigma_{m}");
        values.push((&values[m - 1] << 1) + half);
    }
    SigmaSequence { values }
}

/// Poincare duality: `alpha_{i,j} = alpha_{j,i}` for every computed entry.
pub fn check_symmetry(t: &AlphaTriangle) -> bool {
    t.rows.iter().all(|row| row.iter().eq(row.iter().rev()))
}

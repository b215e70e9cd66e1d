//! Real branches of the Lambert W function, the inverse of `w -> w e^w`.
//!
//! Halley iteration from branch-specific starting points: a series in
//! `p = sqrt(2(ez + 1))` near the branch point `-1/e`, and the asymptotic
//! `ln - ln ln` expansion away from it.

use std::f64::consts::E;

use thiserror::Error;

const INV_E: f64 = 1.0 / E;
const MAX_ITERATIONS: usize = 64;
/// Arguments this far below `-1/e` (relative) are rounding noise and are
/// mapped onto the branch point.
const BRANCH_POINT_SLACK: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// `W_0`, real on `[-1/e, inf)` with values `>= -1`.
    Principal,
    /// `W_{-1}`, real on `[-1/e, 0)` with values `<= -1`.
    MinusOne,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LambertError {
    #[error("z = {z} is outside the real domain of the {branch:?} branch")]
    Domain { branch: Branch, z: f64 },
    #[error("Halley iteration did not converge for z = {z} on the {branch:?} branch")]
    NoConvergence { branch: Branch, z: f64 },
}

pub fn lambert_w(branch: Branch, z: f64) -> Result<f64, LambertError> {
    let domain = || LambertError::Domain { branch, z };
    if !z.is_finite() {
        return Err(domain());
    }
    let offset = E * z + 1.0;
    if offset < 0.0 {
        if offset >= -BRANCH_POINT_SLACK {
            return Ok(-1.0);
        }
        return Err(domain());
    }
    if offset == 0.0 {
        return Ok(-1.0);
    }
    match branch {
        Branch::Principal if z == 0.0 => return Ok(0.0),
        Branch::MinusOne if z >= 0.0 => return Err(domain()),
        _ => {}
    }

    let mut w = initial_guess(branch, z, offset);
    let scale = z.abs().max(f64::MIN_POSITIVE);
    for _ in 0..MAX_ITERATIONS {
        let ew = w.exp();
        let f = w * ew - z;
        let wp1 = w + 1.0;
        // near -1/e the derivative vanishes and the step stalls at rounding
        // level before the increment test triggers
        if wp1 == 0.0 || f.abs() <= 2.0 * f64::EPSILON * scale {
            return Ok(clamp_to_branch(branch, w));
        }
        let step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        let next = w - step;
        if !next.is_finite() {
            break;
        }
        if (next - w).abs() <= 4.0 * f64::EPSILON * (1.0 + next.abs()) {
            return Ok(clamp_to_branch(branch, next));
        }
        w = next;
    }
    Err(LambertError::NoConvergence { branch, z })
}

fn clamp_to_branch(branch: Branch, w: f64) -> f64 {
    match branch {
        Branch::Principal => w.max(-1.0),
        Branch::MinusOne => w.min(-1.0),
    }
}

fn initial_guess(branch: Branch, z: f64, offset: f64) -> f64 {
    if offset < 0.3 {
        let p = (2.0 * offset).sqrt();
        let p = match branch {
            Branch::Principal => p,
            Branch::MinusOne => -p,
        };
        return -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
    }
    match branch {
        Branch::Principal if z < 3.0 => {
            let l = z.ln_1p();
            l * (1.0 - l.ln_1p() / (2.0 + l))
        }
        Branch::Principal => {
            let l1 = z.ln();
            let l2 = l1.ln();
            l1 - l2 + l2 / l1
        }
        Branch::MinusOne => {
            let l1 = (-z).ln();
            let l2 = (-l1).ln();
            l1 - l2 + l2 / l1
        }
    }
}

/// `-1/e`, the common endpoint of both real branches.
pub fn branch_point() -> f64 {
    -INV_E
}

/// Log-spaced sample points covering a branch's real domain, dense near the
/// branch point and near the ends: `(-1/e, 0) U (0, 1e10]` for the principal
/// branch and `(-1/e, 0)` for `W_{-1}`.
pub fn residual_grid(branch: Branch) -> Vec<f64> {
    let near_branch = (1..=15).map(|k| -INV_E + 10f64.powi(-k));
    let negative = (2..=1200).map(|k| -(10f64.powf(-f64::from(k) / 4.0)));
    let mut grid: Vec<f64> = near_branch.chain(negative).collect();
    if branch == Branch::Principal {
        grid.extend((-1200..=40).map(|k| 10f64.powf(f64::from(k) / 4.0)));
    }
    grid
}

//! Case split of the rank-two bound: sum, equal-norm difference, border.

use alloc::vec;
use alloc::vec::Vec;

use super::RankTwoParams;
use crate::error::{Error, Result};
use crate::linalg::powi;
use crate::spectral::{spectral_norm_binary, ARGMAX_REL_TOL};
use crate::symtensor::{binomial, SymTensor};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseTag {
    /// `α > 0 ≥ β`
    Sum,
    /// `α = β > 0`
    Equal,
    /// `α > β > 0`
    Generic,
    /// `a u^d + b d u^{d−1} v`
    Border,
}

/// Tags canonical parameters. `Equal` uses a relative tolerance of `1e-12`.
pub fn classify_case(p: &RankTwoParams) -> CaseTag {
    if p.beta <= 0.0 {
        CaseTag::Sum
    } else if (p.alpha - p.beta).abs() <= 1e-12 * p.alpha.abs().max(p.beta.abs()) {
        CaseTag::Equal
    } else {
        CaseTag::Generic
    }
}

fn check_t(t: f64) -> Result<()> {
    if t == 0.0 {
        return Err(Error::LimitPoint);
    }
    if !(t > 0.0 && t <= 1.0) {
        return Err(Error::InvalidParameter("t must lie in (0, 1]"));
    }
    Ok(())
}

/// `g(t) = 2(1+t²)^d − 2(1−t²)^d = ‖u^d − v^d‖_F²` for `u = (1,t)`, `v = (1,−t)`,
/// summed over odd powers so that small `t` does not cancel.
pub fn g_of_t(d: usize, t: f64) -> Result<f64> {
    check_t(t)?;
    let t2 = t * t;
    Ok(4.0
        * (1..=d)
            .step_by(2)
            .map(|k| binomial(d as u32, k as u32) * powi(t2, k as u32))
            .sum::<f64>())
}

/// `h(t) = ((√(d−1) + t)^d − (√(d−1) − t)^d) / √d^d`, the value of
/// `p_{u^d − v^d}` at `(√((d−1)/d), 1/√d)`.
pub fn h_of_t(d: usize, t: f64) -> Result<f64> {
    check_t(t)?;
    let r = libm::sqrt(d as f64 - 1.0);
    let s: f64 = (1..=d)
        .step_by(2)
        .map(|k| binomial(d as u32, k as u32) * powi(r, (d - k) as u32) * powi(t, k as u32))
        .sum();
    Ok(2.0 * s / libm::pow(d as f64, d as f64 / 2.0))
}

/// `h(t)² / g(t)`, a lower bound for `F` on the equal-norm family.
pub fn diff_bound(d: usize, t: f64) -> Result<f64> {
    let h = h_of_t(d, t)?;
    Ok(h * h / g_of_t(d, t)?)
}

/// `(1 − 1/d)^{d−1}`, the squared ratio of `W_d` and the `t → 0` limit of
/// [`diff_bound`].
pub fn diff_bound_limit(d: usize) -> f64 {
    powi(1.0 - 1.0 / d as f64, d as u32 - 1)
}

/// `u^d − v^d` for `u = (1, t)`, `v = (1, −t)`, with exact entries `2t^k` at odd `k`.
pub fn equal_family(d: usize, t: f64) -> Result<SymTensor> {
    let entries = (0..=d).map(|k| {
        let e = if k % 2 == 1 {
            2.0 * powi(t, k as u32)
        } else {
            0.0
        };
        (vec![(d - k) as u32, k as u32], e)
    });
    SymTensor::from_entries(d, 2, entries)
}

/// One row of the border scan at unit Frobenius norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BorderRow {
    pub a: f64,
    pub b: f64,
    pub ratio: f64,
    /// `(a√(d−1)^d + b d √(d−1)^{d−1}) / √d^d`
    pub lb_interior: f64,
    /// `a`
    pub lb_axis: f64,
}

/// Sweeps `a` over `steps` equispaced points of `[0, 1]` with
/// `b = √((1 − a²)/d)` and evaluates `a e1^d + b d e1^{d−1} e2` exactly.
pub fn border_ratio_scan(d: usize, steps: usize) -> Result<Vec<BorderRow>> {
    if d < 2 {
        return Err(Error::InvalidOrder { order: d, min: 2 });
    }
    if steps < 2 {
        return Err(Error::InvalidParameter("steps must be at least 2"));
    }
    let df = d as f64;
    let r = libm::sqrt(df - 1.0);
    let scale = libm::pow(df, df / 2.0);
    (0..steps)
        .map(|i| {
            let a = i as f64 / (steps - 1) as f64;
            let b = libm::sqrt(((1.0 - a * a) / df).max(0.0));
            let t = SymTensor::from_entries(
                d,
                2,
                [(vec![d as u32, 0], a), (vec![d as u32 - 1, 1], b)],
            )?;
            let set = spectral_norm_binary(&t, ARGMAX_REL_TOL)?;
            Ok(BorderRow {
                a,
                b,
                ratio: set.value / t.frob_norm(),
                lb_interior: (a * powi(r, d as u32) + b * df * powi(r, d as u32 - 1)) / scale,
                lb_axis: a,
            })
        })
        .collect()
}

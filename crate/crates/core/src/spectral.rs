//! Spectral norm and best symmetric rank-one approximation.
//!
//! For a symmetric tensor the spectral norm is `max_{‖w‖=1} |p_A(w)|`, and
//! `λ w^d` with `λ = p_A(w)` at a maximizer is a best rank-one approximation,
//! with `‖A − λ w^d‖_F² = ‖A‖_F² − λ²`.
//!
//! Binary tensors (`dim = 2`) are solved exactly: critical points on the circle
//! are the zeros of the tangential derivative `q = x ∂_y p − y ∂_x p`, a binary
//! form of degree `d`, so all of them are found as the real roots of `q(x, 1)`
//! plus the direction `(1, 0)`. Higher dimensions use a shifted symmetric power
//! iteration with multistart.

use alloc::vec;
use alloc::vec::Vec;

use crate::linalg::{antipodal_distance, canonical_sign, norm, powi};
use crate::rng;
use crate::roots::real_roots;
use crate::symtensor::{binomial, SymTensor};
use crate::{Error, Result};

/// A critical point is a global maximizer when `|p_A(w)| ≥ value · (1 − ARGMAX_REL_TOL)`.
pub const ARGMAX_REL_TOL: f64 = 1e-9;

/// Unit maximizers closer than this (up to sign) are the same antipodal class.
pub const DEDUP_TOL: f64 = 1e-6;

/// Settings for the multistart iterative solvers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterConfig {
    /// Random starts (coordinate directions are always added).
    pub starts: usize,
    pub max_iters: usize,
    /// Stop when successive unit iterates differ by less than this.
    pub tol: f64,
    pub seed: u64,
}

impl Default for IterConfig {
    fn default() -> Self {
        IterConfig {
            starts: 16,
            max_iters: 10_000,
            tol: 1e-12,
            seed: 0,
        }
    }
}

/// Spectral norm together with one representative per antipodal class of
/// global maximizers.
#[derive(Debug, Clone, PartialEq)]
pub struct MaximizerSet {
    pub value: f64,
    /// Unit vectors, first nonzero coordinate positive.
    pub points: Vec<Vec<f64>>,
    /// `true` for the root-isolation solver, `false` for iterative results.
    pub is_exact: bool,
    /// `false` if an iterative run contributing to the result hit its
    /// iteration cap.
    pub converged: bool,
}

impl MaximizerSet {
    pub fn count(&self) -> usize {
        self.points.len()
    }
}

/// `λ w^d` with `λ = p_A(w)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RankOneApprox {
    pub lambda: f64,
    pub w: Vec<f64>,
}

impl RankOneApprox {
    /// The approximant `λ w^d`.
    pub fn tensor(&self, d: usize) -> Result<SymTensor> {
        Ok(crate::symtensor::sym_rank_one(&self.w, d)?.scaled(self.lambda))
    }
}

/// Which solver to use for the spectral norm.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum Method {
    /// Exact for `dim ≤ 2`, power iteration with default settings otherwise.
    #[default]
    Auto,
    /// Root isolation; requires `dim = 2`.
    Exact,
    Power(IterConfig),
}

/// Coefficients `c_k` of `p(x, y) = Σ_k c_k x^{d-k} y^k` for a binary tensor.
pub fn binary_coefficients(a: &SymTensor) -> Result<Vec<f64>> {
    if a.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: a.dim(),
        });
    }
    let d = a.order();
    Ok((0..=d)
        .map(|k| binomial(d as u32, k as u32) * a.get(&[(d - k) as u32, k as u32]))
        .collect())
}

/// Ascending coefficients of `q(x, 1)` where `q = x ∂_y p − y ∂_x p`.
fn tangential_derivative(c: &[f64]) -> Vec<f64> {
    let d = c.len() - 1;
    (0..=d)
        .map(|j| {
            let mut q = 0.0;
            if j >= 1 {
                q += (d + 1 - j) as f64 * c[d + 1 - j];
            }
            if j + 1 <= d {
                q -= (j + 1) as f64 * c[d - 1 - j];
            }
            q
        })
        .collect()
}

fn eval_binary(c: &[f64], w: &[f64]) -> f64 {
    let d = c.len() - 1;
    c.iter()
        .enumerate()
        .map(|(k, ck)| ck * powi(w[0], (d - k) as u32) * powi(w[1], k as u32))
        .sum()
}

/// Keeps the candidates attaining `max |value|` within `tol` (relative),
/// one per antipodal class, with canonical sign.
fn collect_maximizers(cands: &[(f64, Vec<f64>)], tol: f64) -> (f64, Vec<Vec<f64>>) {
    let value = cands.iter().fold(0.0f64, |m, (v, _)| m.max(v.abs()));
    let mut points: Vec<Vec<f64>> = Vec::new();
    for (v, w) in cands {
        if v.abs() >= value * (1.0 - tol)
            && !points.iter().any(|p| antipodal_distance(p, w) < DEDUP_TOL)
        {
            let mut w = w.clone();
            canonical_sign(&mut w);
            points.push(w);
        }
    }
    (value, points)
}

/// Exact spectral norm of a binary (`dim = 2`) symmetric tensor.
///
/// `tol` is the relative tolerance for counting a critical point as a global
/// maximizer (use [`ARGMAX_REL_TOL`] unless there is a reason not to).
pub fn spectral_norm_binary(a: &SymTensor, tol: f64) -> Result<MaximizerSet> {
    let c = binary_coefficients(a)?;
    if c.iter().all(|&x| x == 0.0) {
        return Err(Error::ZeroTensor);
    }
    let q = tangential_derivative(&c);
    let d = c.len() - 1;
    let scale = c.iter().map(|x| x.abs()).sum::<f64>() * d as f64;
    if q.iter().all(|x| x.abs() <= 1e-13 * scale) {
        return Err(Error::DegenerateCriticalPolynomial);
    }
    let roots = real_roots(&q)?;
    let mut cands: Vec<(f64, Vec<f64>)> = Vec::with_capacity(roots.roots.len() + 1);
    // e1 is the point at infinity of the chart; it is critical exactly when
    // the leading coefficient of q vanishes (same cutoff as the root finder)
    let qscale = q.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if q[d].abs() <= 1e-15 * qscale {
        let axis = vec![1.0, 0.0];
        cands.push((eval_binary(&c, &axis), axis));
    }
    for x in roots.roots {
        let r = libm::sqrt(x * x + 1.0);
        let w = vec![x / r, 1.0 / r];
        cands.push((eval_binary(&c, &w), w));
    }
    let (value, points) = collect_maximizers(&cands, tol);
    Ok(MaximizerSet {
        value,
        points,
        is_exact: true,
        converged: true,
    })
}

/// Number of antipodal classes of global maximizers of `|p_A|` on the circle.
pub fn count_global_maximizers(a: &SymTensor, tol: f64) -> Result<usize> {
    Ok(spectral_norm_binary(a, tol)?.count())
}

/// One run of the shifted power iteration `w ← normalize(σ ∇p_A(w) + s w)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerRun {
    pub w: Vec<f64>,
    /// `p_A(w)` at the final iterate (signed).
    pub value: f64,
    /// Direction of the run: `+1` maximizes `p_A`, `−1` minimizes it.
    pub sign: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Smallest observed increase of `σ p_A(w_k)`; nonnegative (up to
    /// roundoff) for a monotone run.
    pub min_increment: f64,
}

/// Shift making `σ p_A(x) + (s/d) ‖x‖^d` convex: `s = d (d−1) ‖A‖_F`.
pub fn power_shift(a: &SymTensor) -> f64 {
    let d = a.order() as f64;
    d * (d - 1.0) * a.frob_norm()
}

/// Runs the shifted power iteration from `w0`. The direction `σ` is the sign of
/// `p_A(w0)`, so `|p_A(w_k)|` is nondecreasing along the run.
pub fn power_run(
    a: &SymTensor,
    w0: &[f64],
    shift: f64,
    max_iters: usize,
    tol: f64,
) -> Result<PowerRun> {
    if w0.len() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: w0.len(),
        });
    }
    let n0 = norm(w0);
    if n0 == 0.0 || !n0.is_finite() {
        return Err(Error::InvalidParameter(
            "start vector must be nonzero and finite",
        ));
    }
    let mut w: Vec<f64> = w0.iter().map(|x| x / n0).collect();
    let mut value = a.eval_unchecked(&w);
    let sign = if value < 0.0 { -1.0 } else { 1.0 };
    let mut min_increment = f64::INFINITY;
    let mut converged = false;
    let mut iterations = 0;
    while iterations < max_iters {
        iterations += 1;
        let g = a.grad_unchecked(&w);
        let mut next: Vec<f64> = g
            .iter()
            .zip(&w)
            .map(|(gi, wi)| sign * gi + shift * wi)
            .collect();
        let nn = norm(&next);
        if nn == 0.0 {
            break;
        }
        next.iter_mut().for_each(|x| *x /= nn);
        let step = next
            .iter()
            .zip(&w)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>();
        let next_value = a.eval_unchecked(&next);
        min_increment = min_increment.min(sign * (next_value - value));
        w = next;
        value = next_value;
        if libm::sqrt(step) < tol {
            converged = true;
            break;
        }
    }
    Ok(PowerRun {
        w,
        value,
        sign,
        iterations,
        converged,
        min_increment,
    })
}

/// Spectral norm by multistart shifted power iteration (heuristic; not a
/// certificate of global optimality).
pub fn spectral_norm_power(a: &SymTensor, cfg: &IterConfig) -> Result<MaximizerSet> {
    if a.is_zero() {
        return Err(Error::ZeroTensor);
    }
    let n = a.dim();
    let shift = power_shift(a);
    let mut starts: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut e = vec![0.0; n];
            e[i] = 1.0;
            e
        })
        .collect();
    for s in 0..cfg.starts {
        starts.push(rng::stream(cfg.seed, s as u64).unit_vec(n));
    }
    let mut runs = Vec::with_capacity(starts.len());
    for w0 in &starts {
        runs.push(power_run(a, w0, shift, cfg.max_iters, cfg.tol)?);
    }
    let cands: Vec<(f64, Vec<f64>)> = runs.iter().map(|r| (r.value, r.w.clone())).collect();
    let (value, points) = collect_maximizers(&cands, ARGMAX_REL_TOL);
    let converged = runs
        .iter()
        .filter(|r| r.value.abs() >= value * (1.0 - ARGMAX_REL_TOL))
        .all(|r| r.converged);
    Ok(MaximizerSet {
        value,
        points,
        is_exact: false,
        converged,
    })
}

/// Spectral norm with the chosen method.
pub fn spectral_norm(a: &SymTensor, method: Method) -> Result<MaximizerSet> {
    match method {
        Method::Exact => spectral_norm_binary(a, ARGMAX_REL_TOL),
        Method::Power(cfg) => spectral_norm_power(a, &cfg),
        Method::Auto => match a.dim() {
            1 => {
                let v = a.get(&[a.order() as u32]);
                if v == 0.0 {
                    return Err(Error::ZeroTensor);
                }
                Ok(MaximizerSet {
                    value: v.abs(),
                    points: vec![vec![1.0]],
                    is_exact: true,
                    converged: true,
                })
            }
            2 => spectral_norm_binary(a, ARGMAX_REL_TOL),
            _ => spectral_norm_power(a, &IterConfig::default()),
        },
    }
}

/// Best symmetric rank-one approximation `λ w^d`.
pub fn best_rank_one(a: &SymTensor, method: Method) -> Result<RankOneApprox> {
    let set = spectral_norm(a, method)?;
    let w = set
        .points
        .iter()
        .max_by(|x, y| {
            a.eval_unchecked(x)
                .abs()
                .total_cmp(&a.eval_unchecked(y).abs())
        })
        .cloned()
        .ok_or(Error::ZeroTensor)?;
    let lambda = a.eval_unchecked(&w);
    Ok(RankOneApprox { lambda, w })
}

/// `‖A‖_σ / ‖A‖_F`
pub fn ratio(a: &SymTensor) -> Result<f64> {
    ratio_with(a, Method::Auto)
}

pub fn ratio_with(a: &SymTensor, method: Method) -> Result<f64> {
    let f = a.frob_norm();
    if f == 0.0 {
        return Err(Error::ZeroTensor);
    }
    Ok(spectral_norm(a, method)?.value / f)
}

/// `min_{rank B ≤ 1} ‖A − B‖_F / ‖A‖_F = sqrt(1 − ratio²)`
pub fn relative_distance(a: &SymTensor) -> Result<f64> {
    let r = ratio(a)?;
    Ok(libm::sqrt((1.0 - r * r).max(0.0)))
}

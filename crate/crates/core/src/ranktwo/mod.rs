//! Rank-two tensors `α u^d − β v^d` and border tensors `a u^d + b d u^{d−1} v`.
//!
//! The ratio objective `F = ‖A‖_σ² / ‖A‖_F²` is always evaluated on the plane
//! `span{u, v}` with the exact binary solver.

mod bounds;
pub mod sample;
mod search;

pub use bounds::{
    border_ratio_scan, classify_case, diff_bound, diff_bound_limit, equal_family, g_of_t, h_of_t,
    BorderRow, CaseTag,
};
pub use search::{min_ratio_search, Drift, SearchConfig, SearchResult, TraceEntry, TracePhase};

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{dot, norm, powi};
use crate::roots::real_roots;
use crate::spectral::{spectral_norm_binary, MaximizerSet, ARGMAX_REL_TOL};
use crate::symtensor::{
    binomial, monomials, multinomial, plane_frame, sym_outer, sym_rank_one, SymTensor,
};

const UNIT_TOL: f64 = 1e-12;

/// Parameters of `α u^d − β v^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct RankTwoParams {
    pub alpha: f64,
    pub beta: f64,
    pub u: Vec<f64>,
    pub v: Vec<f64>,
}

impl RankTwoParams {
    pub fn new(alpha: f64, beta: f64, u: Vec<f64>, v: Vec<f64>) -> Self {
        RankTwoParams { alpha, beta, u, v }
    }

    /// Planar parameters with `u = e1` and `v = (cos θ, sin θ)`.
    pub fn planar(alpha: f64, beta: f64, theta: f64) -> Self {
        RankTwoParams::new(
            alpha,
            beta,
            vec![1.0, 0.0],
            vec![libm::cos(theta), libm::sin(theta)],
        )
    }

    /// Rewrites the tensor with unit `u, v`, `⟨u, v⟩ ≥ 0`, `α > 0` and, when
    /// `β > 0`, `α ≥ β`. Returns the new parameters and the sign `s` with
    /// `A = s · make_rank_two(new)`.
    pub fn canonical(&self, d: usize) -> Result<(RankTwoParams, f64)> {
        check_order(d)?;
        if self.u.len() != self.v.len() {
            return Err(Error::DimensionMismatch {
                expected: self.u.len(),
                found: self.v.len(),
            });
        }
        let (nu, nv) = (norm(&self.u), norm(&self.v));
        if nu == 0.0 || nv == 0.0 || self.alpha == 0.0 || self.beta == 0.0 {
            return Err(Error::InvalidParameter(
                "alpha, beta, u and v must be nonzero",
            ));
        }
        let mut alpha = self.alpha * powi(nu, d as u32);
        let mut beta = self.beta * powi(nv, d as u32);
        let mut u: Vec<f64> = self.u.iter().map(|x| x / nu).collect();
        let mut v: Vec<f64> = self.v.iter().map(|x| x / nv).collect();
        if dot(&u, &v) < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
            if d % 2 == 1 {
                beta = -beta;
            }
        }
        let mut sign = 1.0;
        if alpha < 0.0 {
            alpha = -alpha;
            beta = -beta;
            sign = -sign;
        }
        if beta > alpha {
            // α u^d − β v^d = −(β v^d − α u^d)
            core::mem::swap(&mut alpha, &mut beta);
            core::mem::swap(&mut u, &mut v);
            sign = -sign;
        }
        Ok((RankTwoParams { alpha, beta, u, v }, sign))
    }

    fn check_unit(&self) -> Result<()> {
        if self.u.len() != self.v.len() {
            return Err(Error::DimensionMismatch {
                expected: self.u.len(),
                found: self.v.len(),
            });
        }
        if (norm(&self.u) - 1.0).abs() > UNIT_TOL || (norm(&self.v) - 1.0).abs() > UNIT_TOL {
            return Err(Error::InvalidParameter("u and v must be unit vectors"));
        }
        Ok(())
    }
}

/// Parameters of the border tensor `a u^d + b d u^{d−1} v` with `u ⊥ v`.
#[derive(Debug, Clone, PartialEq)]
pub struct BorderParams {
    pub a: f64,
    pub b: f64,
    pub u: Vec<f64>,
    pub v: Vec<f64>,
}

fn check_order(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::InvalidOrder { order: d, min: 2 });
    }
    Ok(())
}

/// `α u^d − β v^d`. Both scalars must be nonzero and `u, v` independent unit
/// vectors.
pub fn make_rank_two(p: &RankTwoParams, d: usize) -> Result<SymTensor> {
    check_order(d)?;
    if p.alpha == 0.0 || p.beta == 0.0 {
        return Err(Error::InvalidParameter("alpha and beta must be nonzero"));
    }
    p.check_unit()?;
    plane_frame(&p.u, &p.v).map_err(|_| Error::RankDeficient)?;
    sym_rank_one(&p.u, d)?
        .scaled(p.alpha)
        .add_scaled(-p.beta, &sym_rank_one(&p.v, d)?)
}

/// `W_d = d e1^{d−1} e2` together with its closed-form norms.
#[derive(Debug, Clone)]
pub struct WTensor {
    pub tensor: SymTensor,
    /// `√d`
    pub frob_norm: f64,
    /// `√d (1 − 1/d)^{(d−1)/2}`
    pub spectral_norm: f64,
}

impl WTensor {
    pub fn ratio(&self) -> f64 {
        self.spectral_norm / self.frob_norm
    }
}

pub fn make_w(d: usize) -> Result<WTensor> {
    check_order(d)?;
    let tensor = sym_outer(&[1.0, 0.0], d - 1, &[0.0, 1.0], 1)?.scaled(d as f64);
    let frob_norm = libm::sqrt(d as f64);
    Ok(WTensor {
        tensor,
        frob_norm,
        spectral_norm: frob_norm * w_ratio(d),
    })
}

/// `(1 − 1/d)^{(d−1)/2}`
pub fn w_ratio(d: usize) -> f64 {
    let d = d as f64;
    libm::pow(1.0 - 1.0 / d, (d - 1.0) / 2.0)
}

/// `a u^d + b d u^{d−1} v`; `‖A‖_F² = a² + b² d`.
pub fn make_border(p: &BorderParams, d: usize) -> Result<SymTensor> {
    check_order(d)?;
    if p.u.len() != p.v.len() {
        return Err(Error::DimensionMismatch {
            expected: p.u.len(),
            found: p.v.len(),
        });
    }
    if !(p.a >= 0.0 && p.b >= 0.0) || (p.a == 0.0 && p.b == 0.0) {
        return Err(Error::InvalidParameter(
            "border coefficients must be nonnegative and not both zero",
        ));
    }
    if (norm(&p.u) - 1.0).abs() > UNIT_TOL
        || (norm(&p.v) - 1.0).abs() > UNIT_TOL
        || dot(&p.u, &p.v).abs() > UNIT_TOL
    {
        return Err(Error::NotOrthonormal);
    }
    sym_rank_one(&p.u, d)?
        .scaled(p.a)
        .add_scaled(p.b * d as f64, &sym_outer(&p.u, d - 1, &p.v, 1)?)
}

/// `A = α u^d − β v^d` written in the frame `(q1, q2)` of `span{u, v}`.
struct PlaneForm {
    tensor: SymTensor,
    q1: Vec<f64>,
    q2: Vec<f64>,
}

impl PlaneForm {
    fn lift(&self, xy: &[f64]) -> Vec<f64> {
        self.q1
            .iter()
            .zip(&self.q2)
            .map(|(a, b)| xy[0] * a + xy[1] * b)
            .collect()
    }
}

/// Builds the plane coordinates directly from `(⟨u,q_i⟩, ⟨v,q_i⟩)`, which avoids
/// forming the ambient tensor.
fn plane_form(alpha: f64, beta: f64, u: &[f64], v: &[f64], d: usize) -> Result<PlaneForm> {
    let (q1, q2) = plane_frame(u, v)?;
    let uc = [dot(u, &q1), dot(u, &q2)];
    let vc = [dot(v, &q1), dot(v, &q2)];
    let entries = (0..=d).map(|k| {
        let (i, j) = ((d - k) as u32, k as u32);
        let e = alpha * powi(uc[0], i) * powi(uc[1], j) - beta * powi(vc[0], i) * powi(vc[1], j);
        (vec![i, j], e)
    });
    let tensor = SymTensor::from_entries(d, 2, entries)?;
    Ok(PlaneForm { tensor, q1, q2 })
}

struct Evaluated {
    plane: PlaneForm,
    set: MaximizerSet,
    frob2: f64,
}

fn evaluate(alpha: f64, beta: f64, u: &[f64], v: &[f64], d: usize) -> Result<Evaluated> {
    let plane = plane_form(alpha, beta, u, v, d)?;
    let frob2 = {
        let f = plane.tensor.frob_norm();
        f * f
    };
    if frob2 == 0.0 {
        return Err(Error::ZeroTensor);
    }
    let set = spectral_norm_binary(&plane.tensor, ARGMAX_REL_TOL)?;
    Ok(Evaluated { plane, set, frob2 })
}

/// Squared ratio `F = ‖α u^d − β v^d‖_σ² / ‖α u^d − β v^d‖_F²`.
///
/// `v = ±u` reduces to a multiple of `u^d` (so `F = 1`) unless it cancels, in
/// which case the zero-tensor error is returned.
pub fn ratio_f(p: &RankTwoParams, d: usize) -> Result<f64> {
    check_order(d)?;
    if p.u.len() != p.v.len() {
        return Err(Error::DimensionMismatch {
            expected: p.u.len(),
            found: p.v.len(),
        });
    }
    let parallel = if p.u == p.v {
        Some(1.0)
    } else if p.u.iter().zip(&p.v).all(|(a, b)| *a == -*b) {
        Some(if d % 2 == 0 { 1.0 } else { -1.0 })
    } else {
        None
    };
    if let Some(s) = parallel {
        let coeff = p.alpha - p.beta * s * powi(norm(&p.v) / norm(&p.u), d as u32);
        return if coeff == 0.0 || norm(&p.u) == 0.0 {
            Err(Error::ZeroTensor)
        } else {
            Ok(1.0)
        };
    }
    let e = evaluate(p.alpha, p.beta, &p.u, &p.v, d)?;
    Ok(e.set.value * e.set.value / e.frob2)
}

/// Gradient of `F` with respect to `(α, β, u, v)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RatioGradient {
    pub alpha: f64,
    pub beta: f64,
    pub u: Vec<f64>,
    pub v: Vec<f64>,
}

impl RatioGradient {
    /// Removes the components along `u` and `v`, i.e. projects onto the
    /// tangent space of the unit-sphere constraints.
    pub fn tangential(&self, p: &RankTwoParams) -> RatioGradient {
        let strip = |g: &[f64], x: &[f64]| -> Vec<f64> {
            let c = dot(g, x) / dot(x, x);
            g.iter().zip(x).map(|(gi, xi)| gi - c * xi).collect()
        };
        RatioGradient {
            alpha: self.alpha,
            beta: self.beta,
            u: strip(&self.u, &p.u),
            v: strip(&self.v, &p.v),
        }
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(
            self.alpha * self.alpha
                + self.beta * self.beta
                + dot(&self.u, &self.u)
                + dot(&self.v, &self.v),
        )
    }
}

/// Exact gradient of `F` at a point where `|p_A|` has a unique maximizer class.
///
/// `u` and `v` need not be unit vectors; the gradient is the ambient one and
/// [`RatioGradient::tangential`] gives the constrained version.
pub fn grad_f(p: &RankTwoParams, d: usize) -> Result<RatioGradient> {
    check_order(d)?;
    if p.u.len() != p.v.len() {
        return Err(Error::DimensionMismatch {
            expected: p.u.len(),
            found: p.v.len(),
        });
    }
    let (alpha, beta, u, v) = (p.alpha, p.beta, &p.u[..], &p.v[..]);
    let e = evaluate(alpha, beta, u, v, d)?;
    if e.set.count() != 1 {
        return Err(Error::NonDifferentiable {
            maximizers: e.set.count(),
        });
    }
    let w = e.plane.lift(&e.set.points[0]);
    let di = d as u32;
    let df = d as f64;
    let (uw, vw, uv) = (dot(u, &w), dot(v, &w), dot(u, v));
    let lambda = alpha * powi(uw, di) - beta * powi(vw, di);
    let s = if lambda < 0.0 { -1.0 } else { 1.0 };
    let sigma = e.set.value;
    let f2 = e.frob2;
    let (uu, vv) = (dot(u, u), dot(v, v));

    // ∇σ by Danskin's theorem at the unique maximizer
    let ds_a = s * powi(uw, di);
    let ds_b = -s * powi(vw, di);
    let ds_u = s * alpha * df * powi(uw, di - 1);
    let ds_v = -s * beta * df * powi(vw, di - 1);

    // ∇‖A‖_F² from α²‖u‖^{2d} + β²‖v‖^{2d} − 2αβ⟨u,v⟩^d
    let df_a = 2.0 * alpha * powi(uu, di) - 2.0 * beta * powi(uv, di);
    let df_b = 2.0 * beta * powi(vv, di) - 2.0 * alpha * powi(uv, di);
    let (cu_u, cu_v) = (
        2.0 * alpha * alpha * df * powi(uu, di - 1),
        -2.0 * alpha * beta * df * powi(uv, di - 1),
    );
    let (cv_v, cv_u) = (2.0 * beta * beta * df * powi(vv, di - 1), cu_v);

    let k1 = 2.0 * sigma / f2;
    let k2 = sigma * sigma / (f2 * f2);
    let gu = (0..u.len())
        .map(|i| k1 * ds_u * w[i] - k2 * (cu_u * u[i] + cu_v * v[i]))
        .collect();
    let gv = (0..v.len())
        .map(|i| k1 * ds_v * w[i] - k2 * (cv_v * v[i] + cv_u * u[i]))
        .collect();
    Ok(RatioGradient {
        alpha: k1 * ds_a - k2 * df_a,
        beta: k1 * ds_b - k2 * df_b,
        u: gu,
        v: gv,
    })
}

/// Orthogonal projection of `w^d` onto `{u^{d−1}δu + v^{d−1}δv}`.
#[derive(Debug, Clone)]
pub struct PairProjection {
    pub du: Vec<f64>,
    pub dv: Vec<f64>,
    /// `u^{d−1} δu + v^{d−1} δv`
    pub tensor: SymTensor,
}

fn orthonormal_basis(vs: &[&[f64]]) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for x in vs {
        let scale = norm(x);
        let mut r = x.to_vec();
        for _ in 0..2 {
            for b in &basis {
                let c = dot(&r, b);
                r.iter_mut().zip(b).for_each(|(ri, bi)| *ri -= c * bi);
            }
        }
        let nr = norm(&r);
        if nr > 1e-12 * scale {
            basis.push(r.iter().map(|x| x / nr).collect());
        }
    }
    basis
}

/// True least-squares projection of `w^d` onto `{u^{d−1}δu + v^{d−1}δv}`.
///
/// The problem is solved by QR in symmetric coordinates over an orthonormal
/// basis of `span{u, v, w}`; directions orthogonal to it do not contribute.
pub fn project_pair(u: &[f64], v: &[f64], w: &[f64], d: usize) -> Result<PairProjection> {
    if d == 0 {
        return Err(Error::InvalidOrder { order: 0, min: 1 });
    }
    for x in [v, w] {
        if x.len() != u.len() {
            return Err(Error::DimensionMismatch {
                expected: u.len(),
                found: x.len(),
            });
        }
    }
    plane_frame(u, v)?;
    let basis = orthonormal_basis(&[u, v, w]);
    let m = basis.len();
    let coords = |x: &[f64]| -> Vec<f64> { basis.iter().map(|b| dot(b, x)).collect() };
    let (uc, vc, wc) = (coords(u), coords(v), coords(w));
    // rows are monomials scaled by √weight, so the Euclidean norm is Frobenius
    let rows_idx = monomials(m, d);
    let scale: Vec<f64> = rows_idx
        .iter()
        .map(|e| libm::sqrt(multinomial(e)))
        .collect();
    let column = |t: &SymTensor| -> Vec<f64> {
        rows_idx
            .iter()
            .zip(&scale)
            .map(|(e, s)| s * t.get(e))
            .collect()
    };
    let mut cols: Vec<Vec<f64>> = Vec::with_capacity(2 * m);
    for f in [&uc, &vc] {
        for k in 0..m {
            let mut e = vec![0.0; m];
            e[k] = 1.0;
            cols.push(column(&sym_outer(f, d - 1, &e, 1)?));
        }
    }
    let target = column(&sym_rank_one(&wc, d)?);
    let (nr, nc) = (rows_idx.len(), cols.len());
    let mut a = vec![0.0; nr * nc];
    for (c, col) in cols.iter().enumerate() {
        for (r, x) in col.iter().enumerate() {
            a[r * nc + c] = *x;
        }
    }
    let (sol, fit) = crate::linalg::lstsq_fit(&a, &target, nr, nc, 1e-13);
    let combine = |coef: &[f64]| -> Vec<f64> {
        let mut out = vec![0.0; u.len()];
        for (c, b) in coef.iter().zip(&basis) {
            out.iter_mut().zip(b).for_each(|(o, bi)| *o += c * bi);
        }
        out
    };
    let du = combine(&sol[..m]);
    let dv = combine(&sol[m..]);
    // the tensor is read off the fitted values: du and dv blow up as u → ±v
    let local = SymTensor::from_entries(
        d,
        m,
        rows_idx
            .iter()
            .zip(&scale)
            .zip(&fit)
            .map(|((e, s), f)| (e.clone(), f / s)),
    )?;
    let columns: Vec<Vec<f64>> = (0..u.len())
        .map(|j| basis.iter().map(|b| b[j]).collect())
        .collect();
    let tensor = local.pullback(&columns)?;
    Ok(PairProjection { du, dv, tensor })
}

/// The candidate closed form `a u^{d−1}w + b v^{d−1}w` with
/// `a = (⟨u,w⟩^{d−1} − ⟨u,v⟩^{d−1}⟨v,w⟩^{d−1}) / (1 − ⟨u,v⟩^{2d−2})` and `b`
/// symmetric. It agrees with [`project_pair`] only in special configurations
/// (for example `w ∈ {u, v}` or `w ⊥ u, v`).
#[derive(Debug, Clone)]
pub struct ClosedFormProjection {
    pub a: f64,
    pub b: f64,
    pub tensor: SymTensor,
}

pub fn projection_closed_form(
    u: &[f64],
    v: &[f64],
    w: &[f64],
    d: usize,
) -> Result<ClosedFormProjection> {
    check_order(d)?;
    for x in [v, w] {
        if x.len() != u.len() {
            return Err(Error::DimensionMismatch {
                expected: u.len(),
                found: x.len(),
            });
        }
    }
    if (norm(u) - 1.0).abs() > UNIT_TOL || (norm(v) - 1.0).abs() > UNIT_TOL {
        return Err(Error::InvalidParameter("u and v must be unit vectors"));
    }
    let k = d as u32 - 1;
    let (uv, uw, vw) = (powi(dot(u, v), k), powi(dot(u, w), k), powi(dot(v, w), k));
    let den = 1.0 - uv * uv;
    if den <= 1e-14 {
        return Err(Error::DegenerateSpan);
    }
    let a = (uw - uv * vw) / den;
    let b = (vw - uv * uw) / den;
    let tensor = sym_outer(u, d - 1, w, 1)?
        .scaled(a)
        .add_scaled(b, &sym_outer(v, d - 1, w, 1)?)?;
    Ok(ClosedFormProjection { a, b, tensor })
}

/// Real roots of `γ (x − a)(x + b)^{d−1} − x`.
#[derive(Debug, Clone, PartialEq)]
pub struct CriticalRoots {
    pub roots: Vec<f64>,
    /// Set when two roots were closer than the merge threshold.
    pub degenerate: bool,
}

pub fn critical_eq_roots(a: f64, b: f64, gamma: f64, d: usize) -> Result<CriticalRoots> {
    check_order(d)?;
    if !(a > 0.0 && b >= 0.0 && gamma > 0.0)
        || !(a.is_finite() && b.is_finite() && gamma.is_finite())
    {
        return Err(Error::InvalidParameter("need a > 0, b >= 0, gamma > 0"));
    }
    // (x + b)^{d−1}, ascending
    let p: Vec<f64> = (0..d)
        .map(|k| binomial(d as u32 - 1, k as u32) * powi(b, (d - 1 - k) as u32))
        .collect();
    let mut q = vec![0.0; d + 1];
    for (k, pk) in p.iter().enumerate() {
        q[k + 1] += gamma * pk;
        q[k] -= gamma * a * pk;
    }
    q[1] -= 1.0;
    let r = real_roots(&q)?;
    Ok(CriticalRoots {
        roots: r.roots,
        degenerate: r.merged,
    })
}

/// Whether every global maximizer `w` of `|p_A|` satisfies
/// `|⟨u,w⟩| ≥ |⟨v,w⟩| − 1e-10`. Requires `α > β > 0` (not equal) and
/// `⟨u, v⟩ ≥ 0`.
pub fn maximizer_side_check(p: &RankTwoParams, d: usize) -> Result<bool> {
    check_order(d)?;
    p.check_unit()?;
    if !(p.beta > 0.0 && p.alpha > p.beta)
        || classify_case(p) != CaseTag::Generic
        || dot(&p.u, &p.v) < 0.0
    {
        return Err(Error::InvalidParameter(
            "need alpha > beta > 0 and <u,v> >= 0",
        ));
    }
    let e = evaluate(p.alpha, p.beta, &p.u, &p.v, d)?;
    Ok(e.set.points.iter().all(|xy| {
        let w = e.plane.lift(xy);
        dot(&p.u, &w).abs() >= dot(&p.v, &w).abs() - 1e-10
    }))
}

/// Number of antipodal classes of global maximizers of `|p_A|` for
/// `A = α u^d − β v^d`.
pub fn maximizer_count(p: &RankTwoParams, d: usize) -> Result<usize> {
    check_order(d)?;
    Ok(evaluate(p.alpha, p.beta, &p.u, &p.v, d)?.set.count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::ratio;
    use crate::symtensor::frob_inner;

    #[test]
    fn make_rank_two_rejects_degenerate_input() {
        let p = RankTwoParams::new(1.0, 0.0, vec![1.0, 0.0], vec![0.0, 1.0]);
        assert!(matches!(
            make_rank_two(&p, 3),
            Err(Error::InvalidParameter(_))
        ));
        let p = RankTwoParams::new(1.0, 1.0, vec![1.0, 0.0], vec![-1.0, 0.0]);
        assert_eq!(make_rank_two(&p, 3), Err(Error::RankDeficient));
    }

    #[test]
    fn difference_of_axes() {
        let p = RankTwoParams::new(1.0, 1.0, vec![1.0, 0.0], vec![0.0, 1.0]);
        let a = make_rank_two(&p, 3).unwrap();
        assert_eq!(a.get(&[3, 0]), 1.0);
        assert_eq!(a.get(&[0, 3]), -1.0);
        assert_eq!(a.iter().filter(|(_, x)| *x != 0.0).count(), 2);
    }

    #[test]
    fn w_tensor_entries_and_norms() {
        let w = make_w(3).unwrap();
        assert!((w.tensor.get(&[2, 1]) - 1.0).abs() < 1e-15);
        assert!((w.ratio() - 2.0 / 3.0).abs() < 1e-15);
        assert!((make_w(4).unwrap().ratio() - 0.649519052838329).abs() < 1e-12);
        for d in 3..=10 {
            assert!((make_w(d).unwrap().tensor.frob_norm() - libm::sqrt(d as f64)).abs() < 1e-12);
        }
        assert!(make_w(1).is_err());
    }

    #[test]
    fn border_examples() {
        let w = make_border(
            &BorderParams {
                a: 0.0,
                b: 1.0,
                u: vec![1.0, 0.0],
                v: vec![0.0, 1.0],
            },
            5,
        )
        .unwrap();
        let diff = w.add_scaled(-1.0, &make_w(5).unwrap().tensor).unwrap();
        assert!(diff.frob_norm() < 1e-14);
        let a = make_border(
            &BorderParams {
                a: 0.3,
                b: 0.7,
                u: vec![1.0, 0.0],
                v: vec![0.0, 1.0],
            },
            5,
        )
        .unwrap();
        assert!((a.frob_norm().powi(2) - 2.54).abs() < 1e-12);
        let r1 = make_border(
            &BorderParams {
                a: 1.0,
                b: 0.0,
                u: vec![0.6, 0.8],
                v: vec![-0.8, 0.6],
            },
            4,
        )
        .unwrap();
        assert!((ratio(&r1).unwrap() - 1.0).abs() < 1e-12);
        let bad = BorderParams {
            a: 1.0,
            b: 1.0,
            u: vec![1.0, 0.0],
            v: vec![0.6, 0.8],
        };
        assert_eq!(make_border(&bad, 3), Err(Error::NotOrthonormal));
    }

    #[test]
    fn canonical_form_preserves_tensor() {
        let p = RankTwoParams::new(-0.7, 1.9, vec![0.3, -1.2, 0.4], vec![-0.5, 0.9, 0.1]);
        for d in 3..=6 {
            let (c, s) = p.canonical(d).unwrap();
            assert!(c.alpha > 0.0 && dot(&c.u, &c.v) >= 0.0);
            assert!(c.beta <= 0.0 || c.alpha >= c.beta);
            let raw = sym_rank_one(&p.u, d)
                .unwrap()
                .scaled(p.alpha)
                .add_scaled(-p.beta, &sym_rank_one(&p.v, d).unwrap())
                .unwrap();
            let back = make_rank_two(&c, d).unwrap().scaled(s);
            assert!(raw.add_scaled(-1.0, &back).unwrap().frob_norm() < 1e-12 * raw.frob_norm());
        }
    }

    #[test]
    fn ratio_f_matches_ambient_ratio() {
        let p = RankTwoParams::new(1.3, 0.4, vec![0.6, 0.8, 0.0], vec![0.0, 0.6, 0.8]);
        let a = make_rank_two(&p, 4).unwrap();
        let expect = frob_inner(&a, &a).unwrap();
        let uv = dot(&p.u, &p.v);
        let closed = p.alpha * p.alpha + p.beta * p.beta - 2.0 * p.alpha * p.beta * uv.powi(4);
        assert!((expect - closed).abs() < 1e-12);
        let f = ratio_f(&p, 4).unwrap();
        let r = crate::spectral::ratio_with(&a, crate::spectral::Method::Power(Default::default()))
            .unwrap();
        assert!((f - r * r).abs() < 1e-8);
    }

    #[test]
    fn ratio_f_parallel_limits() {
        let p = RankTwoParams::new(1.0, 1.0, vec![1.0, 0.0], vec![1.0, 0.0]);
        assert_eq!(ratio_f(&p, 3), Err(Error::ZeroTensor));
        let p = RankTwoParams::new(2.0, 1.0, vec![1.0, 0.0], vec![1.0, 0.0]);
        assert_eq!(ratio_f(&p, 3), Ok(1.0));
    }

    #[test]
    fn gradient_is_scale_invariant() {
        let p = RankTwoParams::planar(1.7, 0.6, 0.9);
        let g = grad_f(&p, 4).unwrap();
        assert!((g.alpha * p.alpha + g.beta * p.beta).abs() < 1e-12);
    }

    #[test]
    fn gradient_refuses_kinks() {
        let p = RankTwoParams::new(1.0, 1.0, vec![1.0, 0.0], vec![0.0, 1.0]);
        assert_eq!(
            grad_f(&p, 3),
            Err(Error::NonDifferentiable { maximizers: 2 })
        );
    }

    #[test]
    fn projection_special_cases() {
        let (e1, e2, e3) = ([1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]);
        for d in 3..=5 {
            let p = project_pair(&e1, &e2, &e1, d).unwrap();
            let diff = p
                .tensor
                .add_scaled(-1.0, &sym_rank_one(&e1, d).unwrap())
                .unwrap();
            assert!(diff.frob_norm() < 1e-12);
            let c = projection_closed_form(&e1, &e2, &e1, d).unwrap();
            assert!((c.a - 1.0).abs() < 1e-15 && c.b.abs() < 1e-15);
            assert!(project_pair(&e1, &e2, &e3, d).unwrap().tensor.frob_norm() < 1e-14);
            assert!(
                projection_closed_form(&e1, &e2, &e3, d)
                    .unwrap()
                    .tensor
                    .frob_norm()
                    < 1e-14
            );
        }
    }

    #[test]
    fn closed_form_misses_planar_power() {
        // in the plane of u and v the subspace is all of Sym_3(R^2), so w^3 projects to itself
        let h = libm::sqrt(0.5);
        let w = [h, h];
        let w3 = sym_rank_one(&w, 3).unwrap();
        let p = project_pair(&[1.0, 0.0], &[0.0, 1.0], &w, 3).unwrap();
        assert!(p.tensor.add_scaled(-1.0, &w3).unwrap().frob_norm() < 1e-12);
        let c = projection_closed_form(&[1.0, 0.0], &[0.0, 1.0], &w, 3).unwrap();
        assert!(c.tensor.add_scaled(-1.0, &w3).unwrap().frob_norm() > 0.1);
    }

    #[test]
    fn critical_roots_examples() {
        let r = critical_eq_roots(1.0, 0.0, 1.0, 2).unwrap();
        assert_eq!(r.roots.len(), 2);
        assert!(r.roots[0].abs() < 1e-14 && (r.roots[1] - 2.0).abs() < 1e-14);
        let r = critical_eq_roots(1.0, 0.0, 1.0, 3).unwrap();
        let s5 = libm::sqrt(5.0);
        let expect = [(1.0 - s5) / 2.0, 0.0, (1.0 + s5) / 2.0];
        assert_eq!(r.roots.len(), 3);
        for (x, y) in r.roots.iter().zip(expect) {
            assert!((x - y).abs() < 1e-13);
        }
        assert!(critical_eq_roots(-1.0, 0.0, 1.0, 3).is_err());
    }

    #[test]
    fn side_check() {
        let p = RankTwoParams::new(2.0, 1.0, vec![1.0, 0.0], vec![0.0, 1.0]);
        assert_eq!(maximizer_side_check(&p, 3), Ok(true));
        let q = RankTwoParams::new(1.0, 1.0, vec![1.0, 0.0], vec![0.6, 0.8]);
        assert!(maximizer_side_check(&q, 3).is_err());
    }
}

//! Cayley's hyperdeterminant and the normal form of 2×2×2 tensors of unit
//! spectral norm.

use alloc::vec;
use alloc::vec::Vec;

use super::Tensor3;
use crate::error::{Error, Result};
use crate::nelder_mead::{maximize, NelderMeadConfig};
use crate::rng;

/// Cayley's hyperdeterminant of a 2×2×2 tensor, the discriminant of
/// `x ↦ det(T[0] + x T[1])` for the mode-1 slices:
///
/// `Δ = (t000 t111 + t100 t011 − t001 t110 − t010 t101)²
///      − 4 (t000 t011 − t001 t010)(t100 t111 − t101 t110)`.
pub fn hyperdet(t: &Tensor3) -> Result<f64> {
    if t.dims() != [2, 2, 2] {
        return Err(Error::InvalidParameter(
            "hyperdeterminant needs a 2x2x2 tensor",
        ));
    }
    let e = |i, j, k| t.get(&[i, j, k]);
    let s = e(0, 0, 0) * e(1, 1, 1) + e(1, 0, 0) * e(0, 1, 1)
        - e(0, 0, 1) * e(1, 1, 0)
        - e(0, 1, 0) * e(1, 0, 1);
    let p = e(0, 0, 0) * e(0, 1, 1) - e(0, 0, 1) * e(0, 1, 0);
    let q = e(1, 0, 0) * e(1, 1, 1) - e(1, 0, 1) * e(1, 1, 0);
    Ok(s * s - 4.0 * p * q)
}

/// Parameters of the normal form with mode-3 slices `[[1, 0], [0, b]]` and
/// `[[0, a], [c, d]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalForm222 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl NormalForm222 {
    /// `a² + b² + c² + d² + 2abc`, which must not exceed 1.
    pub fn constraint(&self) -> f64 {
        let NormalForm222 { a, b, c, d } = *self;
        a * a + b * b + c * c + d * d + 2.0 * a * b * c
    }

    pub fn is_feasible(&self) -> bool {
        self.a.abs() <= 1.0
            && self.b.abs() <= 1.0
            && self.c.abs() <= 1.0
            && self.constraint() <= 1.0
    }

    /// `d² + 4abc`; positive exactly for real rank two.
    pub fn rank_criterion(&self) -> f64 {
        self.d * self.d + 4.0 * self.a * self.b * self.c
    }

    /// `‖A‖_F² = 1 + a² + b² + c² + d²`
    pub fn frob_norm_sq(&self) -> f64 {
        1.0 + self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d
    }
}

pub fn embed_normal_form(nf: &NormalForm222) -> Result<Tensor3> {
    if !nf.is_feasible() {
        return Err(Error::Infeasible);
    }
    let mut t = Tensor3::zeros(vec![2, 2, 2])?;
    t.set(&[0, 0, 0], 1.0);
    t.set(&[1, 1, 0], nf.b);
    t.set(&[0, 1, 1], nf.a);
    t.set(&[1, 0, 1], nf.c);
    t.set(&[1, 1, 1], nf.d);
    Ok(t)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanConfig {
    pub samples: usize,
    /// Number of best samples handed to the local polish.
    pub polish: usize,
    pub seed: u64,
    /// Required value of `d² + 4abc`; `0` is the closure of the rank-two set.
    pub margin: f64,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            samples: 1_000_000,
            polish: 100,
            seed: 0,
            margin: 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeasibleScan {
    /// Largest `1 + a² + b² + c² + d²` found.
    pub max: f64,
    pub argmax: NormalForm222,
    /// The maximizer sits on `d² + 4abc = margin` (within `1e-6`).
    pub boundary: bool,
    pub accepted: usize,
}

/// Slack below which the maximizer is reported as lying on the rank boundary.
const BOUNDARY_TOL: f64 = 1e-6;

/// Maximizes `‖A‖_F²` over normal forms with `d² + 4abc ≥ margin` by rejection
/// sampling `[−1, 1]^4` followed by Nelder–Mead on the best samples. Draw `i`
/// uses its own stream, so the result does not depend on evaluation order.
pub fn feasible_max_scan(cfg: &ScanConfig) -> Result<FeasibleScan> {
    let margin = cfg.margin;
    let ok = |nf: &NormalForm222| nf.is_feasible() && nf.rank_criterion() >= margin;
    let objective = |x: &[f64]| {
        let nf = NormalForm222 {
            a: x[0],
            b: x[1],
            c: x[2],
            d: x[3],
        };
        if ok(&nf) {
            nf.frob_norm_sq()
        } else {
            f64::NEG_INFINITY
        }
    };
    let mut pool: Vec<(f64, [f64; 4])> = Vec::new();
    for i in 0..cfg.samples {
        let mut s = rng::stream(cfg.seed, i as u64);
        let x = [
            s.range(-1.0, 1.0),
            s.range(-1.0, 1.0),
            s.range(-1.0, 1.0),
            s.range(-1.0, 1.0),
        ];
        let f = objective(&x);
        if f.is_finite() {
            pool.push((f, x));
        }
    }
    let accepted = pool.len();
    if accepted == 0 {
        return Err(Error::Infeasible);
    }
    pool.sort_by(|a, b| {
        b.0.total_cmp(&a.0)
            .then_with(|| a.1.partial_cmp(&b.1).unwrap_or(core::cmp::Ordering::Equal))
    });
    pool.truncate(cfg.polish.max(1));
    // For fixed (a, b, c) both the objective and d² + 4abc grow with d², so the
    // polish runs over (a, b, c) with d² = 1 − a² − b² − c² − 2abc.
    let lift = |x: &[f64], sign: f64| -> Option<NormalForm222> {
        let d2 = 1.0 - x[0] * x[0] - x[1] * x[1] - x[2] * x[2] - 2.0 * x[0] * x[1] * x[2];
        (d2 >= 0.0).then(|| NormalForm222 {
            a: x[0],
            b: x[1],
            c: x[2],
            d: sign * libm::sqrt(d2),
        })
    };
    let mut best = pool[0];
    for (f0, x0) in &pool {
        let sign = if x0[3] < 0.0 { -1.0 } else { 1.0 };
        let reduced = |x: &[f64]| match lift(x, sign) {
            Some(nf) if ok(&nf) => nf.frob_norm_sq(),
            _ => f64::NEG_INFINITY,
        };
        let mut x = x0[..3].to_vec();
        let mut f = reduced(&x);
        if !f.is_finite() {
            continue;
        }
        // restarts with shrinking simplices; the maximizer sits on the rank
        // boundary where a single run tends to stall
        for step in [0.05, 0.01, 2e-3, 4e-4, 1e-4, 2e-5] {
            let nm = NelderMeadConfig {
                initial_step: step,
                max_evals: 2000,
                f_tol: 1e-15,
            };
            let (y, fy) = maximize(reduced, &x, &nm);
            if fy >= f {
                x = y;
                f = fy;
            }
        }
        if f.max(*f0) > best.0 {
            best = match lift(&x, sign) {
                Some(nf) if f >= *f0 => (f, [nf.a, nf.b, nf.c, nf.d]),
                _ => (*f0, *x0),
            };
        }
    }
    let argmax = NormalForm222 {
        a: best.1[0],
        b: best.1[1],
        c: best.1[2],
        d: best.1[3],
    };
    Ok(FeasibleScan {
        max: best.0,
        argmax,
        boundary: argmax.rank_criterion() - margin < BOUNDARY_TOL,
        accepted,
    })
}

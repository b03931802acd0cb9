//! Multistart minimization of `F` over planar rank-two tensors.
//!
//! Points are `(α, β, θ)` with `u = e1`, `v = (cos θ, sin θ)`. Each start runs
//! projected gradient descent with Armijo backtracking until it hits a point
//! with several maximizer classes (where `F` has a kink) or a line search
//! fails, then continues with a Hooke–Jeeves pattern search.

use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_2;

use super::{evaluate, grad_f, RankTwoParams};
use crate::error::{Error, Result};
use crate::rng;

/// Lower limit for the angle between `u` and `v`. Below it the difference
/// `α u^d − β v^d` cancels too much to resolve `F` near its infimum.
pub const THETA_MIN: f64 = 1e-3;
const ALPHA_MIN: f64 = 1e-6;
const ARMIJO_C: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchConfig {
    pub starts: usize,
    /// Total number of objective/gradient evaluations over all starts.
    pub budget: usize,
    pub seed: u64,
    /// Stationarity and step tolerance.
    pub tol: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            starts: 64,
            budget: 10_000,
            seed: 0,
            tol: 1e-12,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TracePhase {
    Start,
    Gradient,
    Pattern,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceEntry {
    pub start: usize,
    /// Evaluations used by this start so far.
    pub evals: usize,
    pub alpha: f64,
    pub beta: f64,
    pub theta: f64,
    pub f: f64,
    pub phase: TracePhase,
}

/// How the best point moved relative to its start.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Drift {
    /// `‖(α, β)‖ / ‖A‖_F` at the end divided by the same quantity at the start;
    /// large values mean the coefficients blow up at fixed tensor norm.
    pub scale_growth: f64,
    pub theta_start: f64,
    pub theta_end: f64,
    pub alpha_over_beta: f64,
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    /// Smallest `F` found (squared ratio).
    pub best_f: f64,
    pub best_ratio: f64,
    pub params: RankTwoParams,
    pub theta: f64,
    pub drift: Drift,
    pub trace: Vec<TraceEntry>,
    pub evaluations: usize,
    /// The budget ran out before every start had converged.
    pub exhausted: bool,
    /// No start decreased `F` below its initial value.
    pub stalled: bool,
    pub note: &'static str,
}

const NOTE: &str =
    "open upper estimate of the infimum; rank-two tensors only approach it as theta -> 0";

#[derive(Clone, Copy)]
struct Point {
    x: [f64; 3],
    f: f64,
    kinked: bool,
}

struct Objective {
    d: usize,
    evals: usize,
    limit: usize,
}

impl Objective {
    fn left(&self) -> bool {
        self.evals < self.limit
    }

    fn eval(&mut self, x: [f64; 3]) -> Point {
        self.evals += 1;
        let p = RankTwoParams::planar(x[0], x[1], x[2]);
        match evaluate(p.alpha, p.beta, &p.u, &p.v, self.d) {
            Ok(e) => Point {
                x,
                f: e.set.value * e.set.value / e.frob2,
                kinked: e.set.count() > 1,
            },
            Err(_) => Point {
                x,
                f: f64::INFINITY,
                kinked: false,
            },
        }
    }

    /// Gradient in `(α, β, θ)`; `None` at kinks.
    fn grad(&mut self, x: [f64; 3]) -> Option<[f64; 3]> {
        self.evals += 1;
        let p = RankTwoParams::planar(x[0], x[1], x[2]);
        let g = grad_f(&p, self.d).ok()?;
        let gt = -libm::sin(x[2]) * g.v[0] + libm::cos(x[2]) * g.v[1];
        Some([g.alpha, g.beta, gt])
    }
}

fn project(x: [f64; 3]) -> [f64; 3] {
    [x[0].max(ALPHA_MIN), x[1], x[2].clamp(THETA_MIN, FRAC_PI_2)]
}

fn coef_scale(x: [f64; 3], d: usize) -> f64 {
    let p = RankTwoParams::planar(x[0], x[1], x[2]);
    match super::plane_form(p.alpha, p.beta, &p.u, &p.v, d) {
        Ok(pf) => libm::hypot(x[0], x[1]) / pf.tensor.frob_norm(),
        Err(_) => f64::NAN,
    }
}

fn gradient_phase(
    obj: &mut Objective,
    mut cur: Point,
    tol: f64,
    start: usize,
    trace: &mut Vec<TraceEntry>,
) -> Point {
    let mut step = 1.0;
    while obj.left() && !cur.kinked {
        let Some(g) = obj.grad(cur.x) else { break };
        if libm::sqrt(g.iter().map(|v| v * v).sum::<f64>()) < tol {
            break;
        }
        let mut t = step;
        let mut accepted = None;
        while obj.left() && t > 1e-14 {
            let y = project([
                cur.x[0] - t * g[0],
                cur.x[1] - t * g[1],
                cur.x[2] - t * g[2],
            ]);
            let decrease: f64 = (0..3).map(|i| g[i] * (cur.x[i] - y[i])).sum();
            let p = obj.eval(y);
            if p.f <= cur.f - ARMIJO_C * decrease && p.f < cur.f {
                accepted = Some(p);
                break;
            }
            t *= 0.5;
        }
        let Some(p) = accepted else { break };
        step = (2.0 * t).min(1e3);
        cur = p;
        trace.push(entry(start, obj.evals, &cur, TracePhase::Gradient));
    }
    cur
}

fn pattern_phase(
    obj: &mut Objective,
    mut base: Point,
    tol: f64,
    start: usize,
    trace: &mut Vec<TraceEntry>,
) -> Point {
    let mut eta = 0.25;
    let explore = |obj: &mut Objective, from: Point, eta: f64| -> Point {
        let mut best = from;
        for i in 0..3 {
            let h = if i == 2 {
                eta * best.x[2]
            } else {
                eta * libm::hypot(best.x[0], best.x[1])
            };
            for s in [-1.0, 1.0] {
                if !obj.left() {
                    return best;
                }
                let mut y = best.x;
                y[i] += s * h;
                let p = obj.eval(project(y));
                if p.f < best.f {
                    best = p;
                    break;
                }
            }
        }
        best
    };
    while obj.left() && eta > tol.max(1e-12) {
        let next = explore(obj, base, eta);
        if next.f < base.f {
            // pattern moves along the last successful displacement
            let mut prev = base;
            let mut cur = next;
            trace.push(entry(start, obj.evals, &cur, TracePhase::Pattern));
            while obj.left() {
                let jump = project([
                    2.0 * cur.x[0] - prev.x[0],
                    2.0 * cur.x[1] - prev.x[1],
                    2.0 * cur.x[2] - prev.x[2],
                ]);
                let probe = obj.eval(jump);
                let probe = explore(obj, probe, eta);
                if probe.f < cur.f {
                    prev = cur;
                    cur = probe;
                    trace.push(entry(start, obj.evals, &cur, TracePhase::Pattern));
                } else {
                    break;
                }
            }
            base = cur;
        } else {
            eta *= 0.5;
        }
    }
    base
}

fn entry(start: usize, evals: usize, p: &Point, phase: TracePhase) -> TraceEntry {
    TraceEntry {
        start,
        evals,
        alpha: p.x[0],
        beta: p.x[1],
        theta: p.x[2],
        f: p.f,
        phase,
    }
}

/// Searches for the infimum of `F` over rank-two tensors of order `d`.
///
/// The budget is split evenly over the starts. Start `i` draws its initial
/// point from stream `i` of `cfg.seed`, so results do not depend on how the
/// starts are scheduled.
pub fn min_ratio_search(d: usize, cfg: &SearchConfig) -> Result<SearchResult> {
    if d < 3 {
        return Err(Error::InvalidOrder { order: d, min: 3 });
    }
    if cfg.starts == 0 || cfg.budget < 4 * cfg.starts {
        return Err(Error::InvalidParameter(
            "budget must allow at least 4 evaluations per start",
        ));
    }
    let per_start = cfg.budget / cfg.starts;
    let mut trace = Vec::new();
    let mut best: Option<(Point, [f64; 3])> = None;
    let (mut evaluations, mut exhausted, mut stalled) = (0, false, true);
    for start in 0..cfg.starts {
        let mut s = rng::stream(cfg.seed, start as u64);
        let x0 = [
            s.range(0.5, 1.5),
            s.range(-1.0, 1.5),
            s.range(0.05, FRAC_PI_2),
        ];
        let mut obj = Objective {
            d,
            evals: 0,
            limit: per_start,
        };
        let p0 = obj.eval(x0);
        trace.push(entry(start, obj.evals, &p0, TracePhase::Start));
        let mut cur = gradient_phase(&mut obj, p0, cfg.tol, start, &mut trace);
        cur = pattern_phase(&mut obj, cur, cfg.tol, start, &mut trace);
        evaluations += obj.evals;
        exhausted |= !obj.left();
        if cur.f < p0.f {
            stalled = false;
        }
        if best.map_or(true, |(b, _)| cur.f < b.f) {
            best = Some((cur, x0));
        }
    }
    let (b, x0) = best.ok_or(Error::NoConvergence)?;
    if !b.f.is_finite() {
        return Err(Error::NoConvergence);
    }
    let drift = Drift {
        scale_growth: coef_scale(b.x, d) / coef_scale(x0, d),
        theta_start: x0[2],
        theta_end: b.x[2],
        alpha_over_beta: b.x[0] / b.x[1],
    };
    Ok(SearchResult {
        best_f: b.f,
        best_ratio: libm::sqrt(b.f),
        params: RankTwoParams::planar(b.x[0], b.x[1], b.x[2]),
        theta: b.x[2],
        drift,
        trace,
        evaluations,
        exhausted,
        stalled,
        note: NOTE,
    })
}

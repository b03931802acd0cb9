use rankone_core::cube222::{ratio_dense, sample_rank_two};
use rankone_core::ranktwo::{min_ratio_search, w_ratio, SearchConfig, TracePhase};
use rankone_core::rng::stream;
use rankone_core::IterConfig;
use rayon::prelude::*;
use serde::Serialize;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Target {
    MinRatioSym,
    CounterexampleNonsym,
}

#[derive(Debug, Clone, Serialize)]
pub struct TraceLine {
    pub start: usize,
    pub evals: usize,
    pub alpha: f64,
    pub beta: f64,
    pub theta: f64,
    pub f: f64,
    pub phase: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct SymSearchReport {
    pub target: &'static str,
    pub d: usize,
    pub seed: u64,
    pub bound: f64,
    pub best_ratio: f64,
    pub gap: f64,
    pub alpha: f64,
    pub beta: f64,
    pub theta: f64,
    pub scale_growth: f64,
    pub theta_start: f64,
    pub alpha_over_beta: f64,
    pub evaluations: usize,
    pub exhausted: bool,
    pub stalled: bool,
    pub attained: bool,
    pub note: &'static str,
    #[serde(skip)]
    pub trace: Vec<TraceLine>,
}

pub fn search_sym(d: usize, cfg: &SearchConfig) -> Result<SymSearchReport, CliError> {
    let r = min_ratio_search(d, cfg)?;
    let bound = w_ratio(d);
    let trace = r
        .trace
        .iter()
        .map(|t| TraceLine {
            start: t.start,
            evals: t.evals,
            alpha: t.alpha,
            beta: t.beta,
            theta: t.theta,
            f: t.f,
            phase: match t.phase {
                TracePhase::Start => "start",
                TracePhase::Gradient => "gradient",
                TracePhase::Pattern => "pattern",
            },
        })
        .collect();
    Ok(SymSearchReport {
        target: "min-ratio-sym",
        d,
        seed: cfg.seed,
        bound,
        best_ratio: r.best_ratio,
        gap: r.best_ratio - bound,
        alpha: r.params.alpha,
        beta: r.params.beta,
        theta: r.theta,
        scale_growth: r.drift.scale_growth,
        theta_start: r.drift.theta_start,
        alpha_over_beta: r.drift.alpha_over_beta,
        evaluations: r.evaluations,
        exhausted: r.exhausted,
        stalled: r.stalled,
        attained: false,
        note: r.note,
        trace,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct Candidate {
    pub sample: u64,
    pub ratio: f64,
    pub recheck: f64,
    pub entries: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct NonsymSearchReport {
    pub target: &'static str,
    pub d: usize,
    pub n: usize,
    pub seed: u64,
    pub samples: usize,
    pub bound: f64,
    pub min_ratio: f64,
    pub argmin_sample: u64,
    /// Samples below `bound + slack` after the first pass, re-solved with
    /// more starts.
    pub rechecked: usize,
    pub counterexamples: Vec<Candidate>,
    pub note: &'static str,
}

const RECHECK_SLACK: f64 = 1e-3;

fn als(seed: u64, starts: usize) -> IterConfig {
    IterConfig {
        starts,
        max_iters: 10_000,
        tol: 1e-14,
        seed,
    }
}

/// Samples `u1⊗…⊗ud + v1⊗…⊗vd` with Gaussian factors of length `n` and
/// compares the ALS ratio with the symmetric bound. Anything close to the
/// bound is re-solved with 8× the starts under a different seed; only values
/// still below `bound − tol` are reported.
pub fn search_nonsym(
    d: usize,
    n: usize,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<NonsymSearchReport, CliError> {
    if d < 3 {
        return Err(CliError::Usage("order must be at least 3".into()));
    }
    if n < 2 || samples == 0 {
        return Err(CliError::Usage("need n >= 2 and a positive budget".into()));
    }
    let bound = w_ratio(d);
    let first: Vec<(u64, f64, Vec<f64>)> = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let t = sample_rank_two(&mut stream(seed, i), d, n)?;
            let r = ratio_dense(&t, &als(seed, 32))?;
            Ok((i, r, t.entries().to_vec()))
        })
        .collect::<Result<_, CliError>>()?;
    let (argmin, min_ratio) =
        first.iter().fold(
            (0, f64::INFINITY),
            |m, (i, r, _)| if *r < m.1 { (*i, *r) } else { m },
        );
    let close: Vec<&(u64, f64, Vec<f64>)> = first
        .iter()
        .filter(|(_, r, _)| *r < bound + RECHECK_SLACK)
        .collect();
    let rechecked = close.len();
    let counterexamples = close
        .into_par_iter()
        .map(|(i, r, e)| {
            let t = rankone_core::cube222::DenseTensor::new(vec![n; d], e.clone())?;
            let again = ratio_dense(&t, &als(seed.wrapping_add(1), 256))?;
            Ok(Candidate {
                sample: *i,
                ratio: *r,
                recheck: again,
                entries: e.clone(),
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?
        .into_iter()
        .filter(|c| c.recheck < bound - tol)
        .collect();
    Ok(NonsymSearchReport {
        target: "counterexample-nonsym",
        d,
        n,
        seed,
        samples,
        bound,
        min_ratio,
        argmin_sample: argmin,
        rechecked,
        counterexamples,
        note: if d == 3 {
            "order 3: the bound 2/3 is proven, so any counterexample indicates a numerical failure"
        } else {
            "order >= 4: open question; sampling gives no proof either way"
        },
    })
}

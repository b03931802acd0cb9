//! Verification suites. Case `i` draws from stream `i` of the master seed, so
//! results do not depend on the number of worker threads.

use std::fmt;

use rankone_core::cube222::{feasible_max_scan, hyperdet, make_rank_two_3, ratio_3, ScanConfig};
use rankone_core::ranktwo::{
    border_ratio_scan, classify_case, critical_eq_roots, diff_bound, diff_bound_limit,
    equal_family, maximizer_count, ratio_f, sample, w_ratio, CaseTag,
};
use rankone_core::rng::stream;
use rankone_core::spectral::ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Thm1Bound,
    PropSum,
    PropEqual,
    LemmaRoots,
    PropUnique,
    BorderScan,
    Thm3Bound,
    KktRegion,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Thm1Bound,
        Suite::PropSum,
        Suite::PropEqual,
        Suite::LemmaRoots,
        Suite::PropUnique,
        Suite::BorderScan,
        Suite::Thm3Bound,
        Suite::KktRegion,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Thm1Bound => "thm1-bound",
            Suite::PropSum => "prop-sum",
            Suite::PropEqual => "prop-equal",
            Suite::LemmaRoots => "lemma-roots",
            Suite::PropUnique => "prop-unique",
            Suite::BorderScan => "border-scan",
            Suite::Thm3Bound => "thm3-bound",
            Suite::KktRegion => "kkt-region",
        }
    }

    /// Number of cases when `--budget` is not given. For `kkt-region` this is
    /// the number of sampled points of the single scan.
    pub fn default_budget(self) -> usize {
        match self {
            Suite::Thm1Bound => 4000,
            Suite::PropSum | Suite::LemmaRoots => 6000,
            Suite::PropUnique => 5000,
            Suite::PropEqual => 6000,
            Suite::BorderScan => 6,
            Suite::Thm3Bound => 10_000,
            Suite::KktRegion => 1_000_000,
        }
    }

    /// Slack used in the comparison when `--tol` is not given.
    pub fn default_tol(self) -> f64 {
        match self {
            Suite::Thm1Bound | Suite::Thm3Bound => 1e-9,
            Suite::PropSum | Suite::BorderScan => 1e-12,
            Suite::KktRegion => 1e-4,
            Suite::PropEqual | Suite::LemmaRoots | Suite::PropUnique => 0.0,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Failure {
    pub case: u64,
    pub input: String,
    pub observed: String,
}

/// Best point of the `kkt-region` scan, written as
/// `a,b,c,d,objective,hyperdet` in CSV mode.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub objective: f64,
    pub hyperdet: f64,
    pub boundary: bool,
    pub accepted: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteResult {
    pub suite: String,
    pub seed: u64,
    pub cases: usize,
    pub tol: f64,
    pub pass: bool,
    pub failures: Vec<Failure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scan: Option<ScanRow>,
}

impl SuiteResult {
    pub const CSV_HEADER: &'static str = "suite,seed,cases,tol,pass,case,input,observed";

    /// Summary row followed by one row per failure.
    pub fn csv_rows(&self) -> Vec<String> {
        let head = format!(
            "{},{},{},{},{}",
            self.suite, self.seed, self.cases, self.tol, self.pass
        );
        let mut rows = vec![format!("{head},,,")];
        for f in &self.failures {
            rows.push(format!(
                "{head},{},{},{}",
                f.case,
                crate::csv_field(&f.input),
                crate::csv_field(&f.observed)
            ));
        }
        rows
    }
}

type CaseResult = Option<Failure>;

fn fail(case: u64, input: impl Into<String>, observed: impl Into<String>) -> CaseResult {
    Some(Failure {
        case,
        input: input.into(),
        observed: observed.into(),
    })
}

fn thm1_case(seed: u64, i: u64, tol: f64) -> CaseResult {
    let d = 3 + (i % 4) as usize;
    let mut s = stream(seed, i);
    let p = sample::canonical(&mut s, d, 2 + (i / 4 % 2) as usize);
    let input = format!("d={d} {p:?}");
    match ratio_f(&p, d) {
        Ok(f) if f.sqrt() > w_ratio(d) - tol => None,
        Ok(f) => fail(
            i,
            input,
            format!("ratio {} <= bound {}", f.sqrt(), w_ratio(d)),
        ),
        Err(e) => fail(i, input, e.to_string()),
    }
}

fn sum_case(seed: u64, i: u64, tol: f64) -> CaseResult {
    let d = 3 + (i % 6) as usize;
    let mut s = stream(seed, i);
    let p = sample::sum_case(&mut s, 2 + (i / 6 % 2) as usize);
    let input = format!("d={d} {p:?}");
    if classify_case(&p) != CaseTag::Sum {
        return fail(i, input, "sampler left the sum case");
    }
    match ratio_f(&p, d) {
        Ok(f) if f >= 0.5 - tol => None,
        Ok(f) => fail(i, input, format!("ratio^2 {f} < 1/2")),
        Err(e) => fail(i, input, e.to_string()),
    }
}

/// Cases run over `d = 3..8` times a log grid of `t` in `[1e-4, 1]`.
fn equal_case(i: u64, per_d: u64) -> CaseResult {
    let d = 3 + (i / per_d) as usize;
    let k = i % per_d;
    let grid = |k: u64| 10f64.powf(-4.0 + 4.0 * k as f64 / (per_d.max(2) - 1) as f64);
    let t = grid(k);
    let input = format!("d={d} t={t}");
    let limit = diff_bound_limit(d);
    let r = match equal_family(d, t).and_then(|a| ratio(&a)) {
        Ok(r) => r,
        Err(e) => return fail(i, input, e.to_string()),
    };
    if r * r <= limit {
        return fail(i, input, format!("ratio^2 {} <= {limit}", r * r));
    }
    if k + 1 < per_d && grid(k + 1) < 1.0 / ((d - 1) as f64).sqrt() {
        let (a, b) = (diff_bound(d, t), diff_bound(d, grid(k + 1)));
        match (a, b) {
            (Ok(a), Ok(b)) if b > a => {}
            (Ok(a), Ok(b)) => {
                return fail(i, input, format!("diff_bound not increasing: {a} then {b}"))
            }
            (Err(e), _) | (_, Err(e)) => return fail(i, input, e.to_string()),
        }
    }
    None
}

fn roots_case(seed: u64, i: u64) -> CaseResult {
    let d = 3 + (i % 6) as usize;
    let mut s = stream(seed, i);
    let (a, b, g) = (s.range(0.05, 3.0), s.range(0.0, 3.0), s.range(0.05, 3.0));
    let input = format!("d={d} a={a} b={b} gamma={g}");
    match critical_eq_roots(a, b, g, d) {
        Ok(r) if r.roots.len() == 2 + d % 2 => None,
        Ok(r) => fail(i, input, format!("{} roots: {:?}", r.roots.len(), r.roots)),
        Err(e) => fail(i, input, e.to_string()),
    }
}

fn unique_case(seed: u64, i: u64) -> CaseResult {
    let d = 3 + (i % 5) as usize;
    let mut s = stream(seed, i);
    let p = sample::generic(&mut s, 2 + (i / 5 % 2) as usize);
    let input = format!("d={d} {p:?}");
    match maximizer_count(&p, d) {
        Ok(1) => None,
        Ok(n) => fail(i, input, format!("{n} maximizer classes")),
        Err(e) => fail(i, input, e.to_string()),
    }
}

fn border_case(i: u64, tol: f64) -> CaseResult {
    let d = 3 + i as usize;
    let input = format!("d={d}");
    let rows = match border_ratio_scan(d, 1001) {
        Ok(r) => r,
        Err(e) => return fail(i, input, e.to_string()),
    };
    let bound = w_ratio(d);
    if (rows[0].ratio - bound).abs() > 1e-10 {
        return fail(
            i,
            input,
            format!("ratio at a=0 is {}, bound {bound}", rows[0].ratio),
        );
    }
    for r in &rows[1..] {
        if r.ratio <= rows[0].ratio {
            return fail(
                i,
                input,
                format!("a={} has ratio {} <= value at a=0", r.a, r.ratio),
            );
        }
    }
    for r in &rows {
        if r.lb_interior > r.ratio + tol || r.lb_axis > r.ratio + tol {
            return fail(
                i,
                input,
                format!("a={}: lower bound above ratio {}", r.a, r.ratio),
            );
        }
    }
    None
}

fn thm3_case(seed: u64, i: u64, tol: f64) -> CaseResult {
    let mut s = stream(seed, i);
    // redraw until the sample has real rank two
    for _ in 0..1000 {
        let f: Vec<Vec<f64>> = (0..6).map(|_| s.normal_vec(2)).collect();
        let t = match make_rank_two_3([&f[0], &f[1], &f[2]], [&f[3], &f[4], &f[5]]) {
            Ok(t) => t,
            Err(e) => return fail(i, format!("{f:?}"), e.to_string()),
        };
        if !matches!(hyperdet(&t), Ok(h) if h > 0.0) {
            continue;
        }
        return match ratio_3(&t) {
            Ok(r) if r > 2.0 / 3.0 - tol => None,
            Ok(r) => fail(i, format!("{:?}", t.entries()), format!("ratio {r} <= 2/3")),
            Err(e) => fail(i, format!("{:?}", t.entries()), e.to_string()),
        };
    }
    fail(i, "", "no sample with positive hyperdeterminant")
}

pub fn run_suite(
    suite: Suite,
    seed: u64,
    budget: Option<usize>,
    tol: Option<f64>,
) -> Result<SuiteResult, CliError> {
    let n = budget.unwrap_or(suite.default_budget());
    let tol = tol.unwrap_or(suite.default_tol());
    if n == 0 {
        return Err(CliError::Usage("budget must be positive".into()));
    }
    let mut scan = None;
    let failures: Vec<Failure> = match suite {
        Suite::KktRegion => {
            let r = feasible_max_scan(&ScanConfig {
                samples: n,
                seed,
                ..ScanConfig::default()
            })?;
            let nf = r.argmax;
            let h = hyperdet(&rankone_core::cube222::embed_normal_form(&nf)?)?;
            scan = Some(ScanRow {
                a: nf.a,
                b: nf.b,
                c: nf.c,
                d: nf.d,
                objective: r.max,
                hyperdet: h,
                boundary: r.boundary,
                accepted: r.accepted,
            });
            let mut out = Vec::new();
            if (r.max - 2.25).abs() > tol {
                out.push(Failure {
                    case: 0,
                    input: format!("samples={n}"),
                    observed: format!("max {} != 9/4", r.max),
                });
            }
            if !r.boundary {
                out.push(Failure {
                    case: 0,
                    input: format!("samples={n}"),
                    observed: format!("argmax {nf:?} is interior"),
                });
            }
            out
        }
        Suite::BorderScan => {
            let n = n.min(6);
            (0..n as u64)
                .into_par_iter()
                .filter_map(|i| border_case(i, tol))
                .collect()
        }
        Suite::PropEqual => {
            let per_d = (n / 6).max(2) as u64;
            (0..6 * per_d)
                .into_par_iter()
                .filter_map(|i| equal_case(i, per_d))
                .collect()
        }
        _ => (0..n as u64)
            .into_par_iter()
            .filter_map(|i| match suite {
                Suite::Thm1Bound => thm1_case(seed, i, tol),
                Suite::PropSum => sum_case(seed, i, tol),
                Suite::LemmaRoots => roots_case(seed, i),
                Suite::PropUnique => unique_case(seed, i),
                Suite::Thm3Bound => thm3_case(seed, i, tol),
                _ => unreachable!(),
            })
            .collect(),
    };
    let cases = match suite {
        Suite::KktRegion => 1,
        Suite::BorderScan => n.min(6),
        Suite::PropEqual => 6 * (n / 6).max(2),
        _ => n,
    };
    Ok(SuiteResult {
        suite: suite.name().to_string(),
        seed,
        cases,
        tol,
        pass: failures.is_empty(),
        failures,
        scan,
    })
}

//! Parameter sweeps emitted as tables for external plotting.

use rankone_core::ranktwo::{
    border_ratio_scan, diff_bound, diff_bound_limit, equal_family, make_w, w_ratio,
};
use rankone_core::spectral::ratio;
use rayon::prelude::*;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SweepKind {
    /// `u^d − v^d` with `u = (1, t)`, `v = (1, −t)`
    #[value(name = "diff_t")]
    DiffT,
    /// `a e1^d + b d e1^{d−1} e2` at unit Frobenius norm
    #[value(name = "border_ab")]
    BorderAb,
    /// `W_d` over a range of orders
    #[value(name = "limit_d")]
    LimitD,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepParams {
    pub d: usize,
    pub d_max: usize,
    pub steps: usize,
    pub t_min: f64,
    pub t_max: f64,
}

impl Default for SweepParams {
    fn default() -> Self {
        SweepParams {
            d: 4,
            d_max: 40,
            steps: 1000,
            t_min: 1e-4,
            t_max: 1.0,
        }
    }
}

/// Column names and rows of numbers.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for r in &self.rows {
            out.push_str(
                &r.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
            );
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let obj = self
                    .columns
                    .iter()
                    .zip(r)
                    .map(|(k, v)| (k.to_string(), serde_json::json!(v)))
                    .collect();
                serde_json::Value::Object(obj)
            })
            .collect();
        serde_json::Value::Array(rows)
    }
}

fn diff_t(p: &SweepParams) -> Result<Table, CliError> {
    if !(p.t_min > 0.0 && p.t_min < p.t_max && p.t_max <= 1.0) || p.steps < 2 {
        return Err(CliError::Usage(
            "diff_t needs 0 < t-min < t-max <= 1 and at least 2 steps".into(),
        ));
    }
    let d = p.d;
    let bound = diff_bound_limit(d);
    let (lo, hi) = (p.t_min.log10(), p.t_max.log10());
    let rows: Result<Vec<Vec<f64>>, CliError> = (0..p.steps)
        .into_par_iter()
        .map(|i| {
            let t = 10f64.powf(lo + (hi - lo) * i as f64 / (p.steps - 1) as f64);
            let r = ratio(&equal_family(d, t)?)?;
            Ok(vec![t, r * r, diff_bound(d, t)?, bound])
        })
        .collect();
    Ok(Table {
        columns: vec!["t", "ratio_sq", "diff_bound", "bound_sq"],
        rows: rows?,
    })
}

fn border_ab(p: &SweepParams) -> Result<Table, CliError> {
    if p.steps < 2 {
        return Err(CliError::Usage("border_ab needs at least 2 steps".into()));
    }
    let rows = border_ratio_scan(p.d, p.steps)?
        .into_iter()
        .map(|r| vec![r.a, r.b, r.ratio, r.lb_interior, r.lb_axis])
        .collect();
    Ok(Table {
        columns: vec!["a", "b", "ratio", "lb_interior", "lb_axis"],
        rows,
    })
}

fn limit_d(p: &SweepParams) -> Result<Table, CliError> {
    if p.d < 2 || p.d_max < p.d {
        return Err(CliError::Usage("limit_d needs 2 <= d <= d-max".into()));
    }
    let ratio_limit = (-0.5f64).exp();
    let dist_limit = (1.0 - (-1.0f64).exp()).sqrt();
    let rows: Result<Vec<Vec<f64>>, CliError> = (p.d..=p.d_max)
        .into_par_iter()
        .map(|d| {
            let r = ratio(&make_w(d)?.tensor)?;
            Ok(vec![
                d as f64,
                r,
                (1.0 - r * r).max(0.0).sqrt(),
                w_ratio(d),
                ratio_limit,
                dist_limit,
            ])
        })
        .collect();
    Ok(Table {
        columns: vec![
            "d",
            "ratio",
            "relative_distance",
            "closed_form",
            "limit_ratio",
            "limit_distance",
        ],
        rows: rows?,
    })
}

pub fn run_sweep(kind: SweepKind, p: &SweepParams) -> Result<Table, CliError> {
    if p.d < 2 {
        return Err(CliError::Usage("order must be at least 2".into()));
    }
    match kind {
        SweepKind::DiffT => diff_t(p),
        SweepKind::BorderAb => border_ab(p),
        SweepKind::LimitD => limit_d(p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn limit_d_decreasing() {
        let t = run_sweep(
            SweepKind::LimitD,
            &SweepParams {
                d: 3,
                ..SweepParams::default()
            },
        )
        .unwrap();
        assert_eq!(t.rows.len(), 38);
        assert!(t.rows.windows(2).all(|w| w[1][1] < w[0][1]));
        assert!((t.rows.last().unwrap()[1] - 0.6065).abs() < 0.01);
    }

    #[test]
    fn diff_t_above_bound() {
        let t = run_sweep(
            SweepKind::DiffT,
            &SweepParams {
                steps: 200,
                ..SweepParams::default()
            },
        )
        .unwrap();
        assert!(t.rows.iter().all(|r| r[1] > 0.75f64.powi(3)));
    }

    #[test]
    fn border_header_and_minimum() {
        let t = run_sweep(
            SweepKind::BorderAb,
            &SweepParams {
                steps: 101,
                ..SweepParams::default()
            },
        )
        .unwrap();
        assert!(t.to_csv().starts_with("a,b,ratio,lb_interior,lb_axis\n"));
        let min = t.rows.iter().map(|r| r[2]).fold(f64::INFINITY, f64::min);
        assert_eq!(min, t.rows[0][2]);
        assert!(run_sweep(
            SweepKind::DiffT,
            &SweepParams {
                t_min: 0.0,
                ..SweepParams::default()
            }
        )
        .is_err());
    }
}

use rankone_core::cube222::{spectral_norm_dense, DenseTensor};
use rankone_core::spectral::{spectral_norm, Method};
use rankone_core::{IterConfig, SymTensor};
use serde::Serialize;

use crate::formats::TensorInput;
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverKind {
    ExactBinary,
    Power,
    Als,
}

#[derive(Debug, Clone, Serialize)]
pub struct RatioReport {
    pub input: String,
    pub method: SolverKind,
    pub spectral_norm: f64,
    pub frob_norm: f64,
    pub ratio: f64,
    pub relative_distance: f64,
    /// Maximizing unit vectors: one per antipodal class for symmetric input,
    /// the factor vectors for dense input.
    pub maximizer: Vec<Vec<f64>>,
    pub converged: bool,
}

impl RatioReport {
    pub const CSV_HEADER: &'static str =
        "input,method,spectral_norm,frob_norm,ratio,relative_distance,converged,maximizer";

    pub fn csv_row(&self) -> String {
        let method = match self.method {
            SolverKind::ExactBinary => "exact_binary",
            SolverKind::Power => "power",
            SolverKind::Als => "als",
        };
        let maximizer: Vec<String> = self
            .maximizer
            .iter()
            .map(|v| {
                v.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        format!(
            "{},{method},{},{},{},{},{},{}",
            crate::csv_field(&self.input),
            self.spectral_norm,
            self.frob_norm,
            self.ratio,
            self.relative_distance,
            self.converged,
            crate::csv_field(&maximizer.join(";")),
        )
    }
}

fn finish(
    input: &str,
    method: SolverKind,
    sigma: f64,
    frob: f64,
    maximizer: Vec<Vec<f64>>,
    converged: bool,
) -> RatioReport {
    let ratio = (sigma / frob).min(1.0);
    RatioReport {
        input: input.to_string(),
        method,
        spectral_norm: sigma,
        frob_norm: frob,
        ratio,
        relative_distance: (1.0 - ratio * ratio).max(0.0).sqrt(),
        maximizer,
        converged,
    }
}

/// Exact solver for `dim ≤ 2`, multistart power iteration otherwise.
pub fn report_sym(input: &str, a: &SymTensor, cfg: &IterConfig) -> Result<RatioReport, CliError> {
    let frob = a.frob_norm();
    if frob == 0.0 {
        return Err(rankone_core::Error::ZeroTensor.into());
    }
    let (method, kind) = if a.dim() <= 2 {
        (Method::Auto, SolverKind::ExactBinary)
    } else {
        (Method::Power(*cfg), SolverKind::Power)
    };
    let set = spectral_norm(a, method)?;
    Ok(finish(
        input,
        kind,
        set.value,
        frob,
        set.points.clone(),
        set.converged,
    ))
}

pub fn report_dense(
    input: &str,
    t: &DenseTensor,
    cfg: &IterConfig,
) -> Result<RatioReport, CliError> {
    let frob = t.frob_norm();
    if frob == 0.0 {
        return Err(rankone_core::Error::ZeroTensor.into());
    }
    let r = spectral_norm_dense(t, cfg)?;
    Ok(finish(
        input,
        SolverKind::Als,
        r.value,
        frob,
        r.factors,
        r.converged,
    ))
}

pub fn report(
    input: &str,
    t: &TensorInput,
    power: &IterConfig,
    als: &IterConfig,
) -> Result<RatioReport, CliError> {
    match t {
        TensorInput::Sym(a) => report_sym(input, a, power),
        TensorInput::Dense(d) => report_dense(input, d, als),
    }
}

//! JSON file formats for tensors and maximizer sets.

use rankone_core::cube222::DenseTensor;
use rankone_core::{MaximizerSet, SymTensor};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoeffEntry {
    pub exp: Vec<u32>,
    pub value: f64,
}

/// `{"order": d, "dim": n, "coeffs": [{"exp": [e1, …, en], "value": x}]}`.
/// Missing trailing exponents are zero; missing monomials have value zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymTensorFile {
    pub order: usize,
    pub dim: usize,
    pub coeffs: Vec<CoeffEntry>,
}

/// `{"dims": [n1, n2, n3], "entries": […]}` in row-major order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tensor3File {
    pub dims: Vec<usize>,
    pub entries: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaximizerSetFile {
    pub value: f64,
    pub points: Vec<Vec<f64>>,
    pub is_exact: bool,
}

impl From<&MaximizerSet> for MaximizerSetFile {
    fn from(m: &MaximizerSet) -> Self {
        MaximizerSetFile {
            value: m.value,
            points: m.points.clone(),
            is_exact: m.is_exact,
        }
    }
}

impl SymTensorFile {
    pub fn from_tensor(a: &SymTensor) -> Self {
        let coeffs = a
            .iter()
            .filter(|(_, v)| *v != 0.0)
            .map(|(idx, v)| CoeffEntry {
                exp: idx.exponents().to_vec(),
                value: v,
            })
            .collect();
        SymTensorFile {
            order: a.order(),
            dim: a.dim(),
            coeffs,
        }
    }

    pub fn to_tensor(&self) -> Result<SymTensor, CliError> {
        let mut entries = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            if c.exp.len() > self.dim {
                return Err(CliError::Input(format!(
                    "exponent {:?} has more than {} entries",
                    c.exp, self.dim
                )));
            }
            let mut e = c.exp.clone();
            e.resize(self.dim, 0);
            entries.push((e, c.value));
        }
        Ok(SymTensor::from_entries(self.order, self.dim, entries)?)
    }
}

impl Tensor3File {
    pub fn from_tensor(t: &DenseTensor) -> Self {
        Tensor3File {
            dims: t.dims().to_vec(),
            entries: t.entries().to_vec(),
        }
    }

    pub fn to_tensor(&self) -> Result<DenseTensor, CliError> {
        Ok(DenseTensor::new(self.dims.clone(), self.entries.clone())?)
    }
}

/// A tensor read from a file: symmetric storage or a dense array.
#[derive(Debug, Clone)]
pub enum TensorInput {
    Sym(SymTensor),
    Dense(DenseTensor),
}

/// Parses either JSON format, chosen by its keys. Errors carry line and column.
pub fn parse_tensor(text: &str) -> Result<TensorInput, CliError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(json_error)?;
    let has = |k: &str| value.get(k).is_some();
    if has("order") || has("coeffs") {
        let f: SymTensorFile = serde_json::from_str(text).map_err(json_error)?;
        Ok(TensorInput::Sym(f.to_tensor()?))
    } else if has("dims") || has("entries") {
        let f: Tensor3File = serde_json::from_str(text).map_err(json_error)?;
        Ok(TensorInput::Dense(f.to_tensor()?))
    } else {
        Err(CliError::Parse {
            position: 1,
            message:
                "expected a symmetric tensor {order, dim, coeffs} or a dense tensor {dims, entries}"
                    .into(),
        })
    }
}

fn json_error(e: serde_json::Error) -> CliError {
    CliError::Parse {
        position: e.column(),
        message: format!("line {}: {e}", e.line()),
    }
}

//! Dense nonsymmetric tensors and the 2×2×2 machinery.

mod normal_form;

pub use normal_form::{
    embed_normal_form, feasible_max_scan, hyperdet, FeasibleScan, NormalForm222, ScanConfig,
};

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{dot, norm};
use crate::rng::{self, Stream};
use crate::spectral::IterConfig;
use crate::symtensor::SymTensor;

/// Dense real tensor of any order, entries in row-major order (last index
/// fastest).
#[derive(Debug, Clone, PartialEq)]
pub struct DenseTensor {
    dims: Vec<usize>,
    entries: Vec<f64>,
}

/// Third-order dense tensor.
pub type Tensor3 = DenseTensor;

impl DenseTensor {
    pub fn new(dims: Vec<usize>, entries: Vec<f64>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidOrder { order: 0, min: 1 });
        }
        if dims.iter().any(|&n| n == 0) {
            return Err(Error::InvalidParameter(
                "every dimension must be at least 1",
            ));
        }
        let len: usize = dims.iter().product();
        if entries.len() != len {
            return Err(Error::DimensionMismatch {
                expected: len,
                found: entries.len(),
            });
        }
        if entries.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(DenseTensor { dims, entries })
    }

    pub fn zeros(dims: Vec<usize>) -> Result<Self> {
        let len = dims.iter().product();
        DenseTensor::new(dims, vec![0.0; len])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn order(&self) -> usize {
        self.dims.len()
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    fn offset(&self, idx: &[usize]) -> usize {
        idx.iter()
            .zip(&self.dims)
            .fold(0, |acc, (i, n)| acc * n + i)
    }

    pub fn get(&self, idx: &[usize]) -> f64 {
        self.entries[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], value: f64) {
        let o = self.offset(idx);
        self.entries[o] = value;
    }

    pub fn frob_norm(&self) -> f64 {
        norm(&self.entries)
    }

    /// `f1 ⊗ f2 ⊗ … ⊗ fk`
    pub fn rank_one(factors: &[Vec<f64>]) -> Result<Self> {
        let dims: Vec<usize> = factors.iter().map(Vec::len).collect();
        let mut entries = vec![1.0];
        for f in factors {
            entries = entries
                .iter()
                .flat_map(|e| f.iter().map(move |x| e * x))
                .collect();
        }
        DenseTensor::new(dims, entries)
    }

    pub fn add_scaled(&self, c: f64, other: &DenseTensor) -> Result<Self> {
        if self.dims != other.dims {
            return Err(Error::DimensionMismatch {
                expected: self.entries.len(),
                found: other.entries.len(),
            });
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + c * b)
            .collect();
        Ok(DenseTensor {
            dims: self.dims.clone(),
            entries,
        })
    }

    /// Full array of a symmetric tensor.
    pub fn from_sym(a: &SymTensor) -> Result<Self> {
        let (d, n) = (a.order(), a.dim());
        let mut t = DenseTensor::zeros(vec![n; d])?;
        let mut exps = vec![0u32; n];
        for (pos, value) in t.entries.iter_mut().enumerate() {
            exps.iter_mut().for_each(|e| *e = 0);
            let mut p = pos;
            for _ in 0..d {
                exps[p % n] += 1;
                p /= n;
            }
            *value = a.get(&exps);
        }
        Ok(t)
    }

    /// `⟨T, f1 ⊗ … ⊗ fk⟩`
    pub fn multilinear(&self, factors: &[Vec<f64>]) -> f64 {
        let last = self.order() - 1;
        dot(&self.contract_except(factors, last), &factors[last])
    }

    /// Contraction with every factor except the one at `skip`.
    pub fn contract_except(&self, factors: &[Vec<f64>], skip: usize) -> Vec<f64> {
        let k = self.order();
        let mut out = vec![0.0; self.dims[skip]];
        let mut idx = vec![0usize; k];
        for &value in &self.entries {
            let w: f64 = (0..k)
                .filter(|&m| m != skip)
                .map(|m| factors[m][idx[m]])
                .product();
            out[idx[skip]] += w * value;
            for m in (0..k).rev() {
                idx[m] += 1;
                if idx[m] < self.dims[m] {
                    break;
                }
                idx[m] = 0;
            }
        }
        out
    }
}

/// Defaults for alternating maximization: 32 starts, at most `10^4` sweeps,
/// stop when the objective changes by less than `1e-14`.
pub fn als_config() -> IterConfig {
    IterConfig {
        starts: 32,
        max_iters: 10_000,
        tol: 1e-14,
        seed: 0,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlsResult {
    pub value: f64,
    pub factors: Vec<Vec<f64>>,
    /// The best start stopped on the tolerance rather than the sweep limit.
    pub converged: bool,
    /// Smallest per-sweep change of the objective over all starts.
    pub min_increment: f64,
}

struct AlsRun {
    value: f64,
    factors: Vec<Vec<f64>>,
    converged: bool,
    min_increment: f64,
}

fn als_run(t: &DenseTensor, mut factors: Vec<Vec<f64>>, cfg: &IterConfig) -> AlsRun {
    let k = t.order();
    let mut value = t.multilinear(&factors);
    let mut min_increment = f64::INFINITY;
    for _ in 0..cfg.max_iters {
        let before = value;
        for m in 0..k {
            let c = t.contract_except(&factors, m);
            let nc = norm(&c);
            if nc == 0.0 {
                continue;
            }
            factors[m] = c.iter().map(|x| x / nc).collect();
            value = nc;
        }
        let change = value - before;
        min_increment = min_increment.min(change);
        if change.abs() < cfg.tol * value.abs().max(1.0) {
            return AlsRun {
                value,
                factors,
                converged: true,
                min_increment,
            };
        }
    }
    AlsRun {
        value,
        factors,
        converged: false,
        min_increment,
    }
}

/// Spectral norm of a dense tensor of any order by multistart alternating
/// maximization. Each sweep replaces one factor at a time by the normalized
/// contraction of `T` with the others, so the objective never decreases.
pub fn spectral_norm_dense(t: &DenseTensor, cfg: &IterConfig) -> Result<AlsResult> {
    if t.entries.iter().all(|&x| x == 0.0) {
        return Err(Error::ZeroTensor);
    }
    if cfg.starts == 0 {
        return Err(Error::InvalidParameter("at least one start is required"));
    }
    let mut best: Option<AlsRun> = None;
    let mut min_increment = f64::INFINITY;
    for s in 0..cfg.starts {
        let mut stream = rng::stream(cfg.seed, s as u64);
        let factors = t.dims.iter().map(|&n| stream.unit_vec(n)).collect();
        let run = als_run(t, factors, cfg);
        min_increment = min_increment.min(run.min_increment);
        if best.as_ref().map_or(true, |b| run.value > b.value) {
            best = Some(run);
        }
    }
    let b = best.ok_or(Error::NoConvergence)?;
    Ok(AlsResult {
        value: b.value,
        factors: b.factors,
        converged: b.converged,
        min_increment,
    })
}

pub fn spectral_norm_3(t: &Tensor3, cfg: &IterConfig) -> Result<AlsResult> {
    if t.order() != 3 {
        return Err(Error::InvalidOrder {
            order: t.order(),
            min: 3,
        });
    }
    spectral_norm_dense(t, cfg)
}

/// `‖T‖_σ / ‖T‖_F` with [`als_config`].
pub fn ratio_3(t: &Tensor3) -> Result<f64> {
    ratio_dense(t, &als_config())
}

pub fn ratio_dense(t: &DenseTensor, cfg: &IterConfig) -> Result<f64> {
    let f = t.frob_norm();
    if f == 0.0 {
        return Err(Error::ZeroTensor);
    }
    Ok(spectral_norm_dense(t, cfg)?.value / f)
}

pub fn relative_distance_3(t: &Tensor3) -> Result<f64> {
    let r = ratio_3(t)?;
    Ok(libm::sqrt((1.0 - r * r).max(0.0)))
}

/// `u1⊗u2⊗u3 + v1⊗v2⊗v3`
pub fn make_rank_two_3(u: [&[f64]; 3], v: [&[f64]; 3]) -> Result<Tensor3> {
    for m in 0..3 {
        if u[m].len() != v[m].len() {
            return Err(Error::DimensionMismatch {
                expected: u[m].len(),
                found: v[m].len(),
            });
        }
    }
    let a = DenseTensor::rank_one(&u.map(<[f64]>::to_vec))?;
    a.add_scaled(1.0, &DenseTensor::rank_one(&v.map(<[f64]>::to_vec))?)
}

/// Random `u1⊗…⊗ud + v1⊗…⊗vd` with Gaussian factors of length `n`.
pub fn sample_rank_two(s: &mut Stream, order: usize, n: usize) -> Result<DenseTensor> {
    let u: Vec<Vec<f64>> = (0..order).map(|_| s.normal_vec(n)).collect();
    let v: Vec<Vec<f64>> = (0..order).map(|_| s.normal_vec(n)).collect();
    DenseTensor::rank_one(&u)?.add_scaled(1.0, &DenseTensor::rank_one(&v)?)
}

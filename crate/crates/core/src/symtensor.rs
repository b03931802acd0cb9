//! Symmetric tensors stored by monomial exponent.
//!
//! A symmetric tensor `A ∈ Sym_d(R^n)` is determined by one representative entry
//! per multiset of indices, i.e. per exponent vector `e` with `|e| = d`. The
//! stored value is the plain entry `a_{i1…id}`; the multinomial weight
//! `d!/(e1!…en!)` (the number of index tuples sharing that exponent) enters only
//! inside inner products and polynomial evaluation:
//!
//! ```text
//! ⟨A, B⟩_F = Σ_e w(e) A(e) B(e)        p_A(x) = Σ_e w(e) A(e) x^e
//! ```

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::linalg::{dot, norm, powi};
use crate::{Error, Result};

/// Exponent vector of a monomial together with its multinomial weight.
#[derive(Debug, Clone)]
pub struct MultiIndex {
    exps: Vec<u32>,
    weight: f64,
}

impl MultiIndex {
    pub fn new(exps: Vec<u32>) -> Self {
        let weight = multinomial(&exps);
        MultiIndex { exps, weight }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> usize {
        self.exps.iter().map(|&e| e as usize).sum()
    }

    /// Number of index tuples `(i1, …, id)` with these exponents.
    pub fn weight(&self) -> f64 {
        self.weight
    }

    /// `x^e = Π x_i^{e_i}`
    pub fn monomial(&self, x: &[f64]) -> f64 {
        self.exps
            .iter()
            .zip(x)
            .filter(|(&e, _)| e > 0)
            .map(|(&e, &xi)| powi(xi, e))
            .product()
    }
}

impl PartialEq for MultiIndex {
    fn eq(&self, other: &Self) -> bool {
        self.exps == other.exps
    }
}

impl Eq for MultiIndex {}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Reverse lexicographic on exponents, so `(d,0,…)` comes first.
impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        other.exps.cmp(&self.exps)
    }
}

/// `n choose k`, exact while the result fits in 2^53.
pub fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k as u128 {
        // acc * (n - k + i) / i stays integral at every step
        acc = acc * (n as u128 - k as u128 + i) / i;
    }
    acc as f64
}

/// `d! / (e1! … en!)`
pub fn multinomial(exps: &[u32]) -> f64 {
    let mut remaining: u32 = exps.iter().sum();
    let mut w = 1.0;
    for &e in exps {
        w *= binomial(remaining, e);
        remaining -= e;
    }
    w
}

/// All exponent vectors of length `dim` summing to `order`, largest first.
pub fn monomials(dim: usize, order: usize) -> Vec<Vec<u32>> {
    fn rec(dim: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == dim {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=left).rev() {
            prefix.push(e);
            rec(dim, left - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if dim > 0 {
        rec(dim, order as u32, &mut Vec::with_capacity(dim), &mut out);
    }
    out
}

/// Homogeneous polynomial coefficients keyed by exponent (weights included).
type PolyMap = BTreeMap<Vec<u32>, f64>;

/// Multiplies `poly` by the linear form `Σ_i l_i x_i`.
fn mul_linear(poly: &PolyMap, form: &[f64]) -> PolyMap {
    let mut out = PolyMap::new();
    for (e, &c) in poly {
        for (i, &li) in form.iter().enumerate() {
            if li == 0.0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] += 1;
            *out.entry(e2).or_insert(0.0) += c * li;
        }
    }
    out
}

fn constant_poly(dim: usize) -> PolyMap {
    let mut p = PolyMap::new();
    p.insert(vec![0; dim], 1.0);
    p
}

/// Symmetric tensor of order `d` over `R^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTensor {
    order: usize,
    dim: usize,
    coeffs: BTreeMap<MultiIndex, f64>,
}

impl SymTensor {
    pub fn zeros(order: usize, dim: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidOrder { order, min: 1 });
        }
        if dim == 0 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        Ok(SymTensor {
            order,
            dim,
            coeffs: BTreeMap::new(),
        })
    }

    /// Builds a tensor from `(exponents, entry value)` pairs. Exponents that are
    /// not listed are zero; repeated exponents are summed.
    pub fn from_entries<I>(order: usize, dim: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, f64)>,
    {
        let mut t = SymTensor::zeros(order, dim)?;
        for (exps, value) in entries {
            if exps.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: exps.len(),
                });
            }
            if !value.is_finite() {
                return Err(Error::NonFinite);
            }
            let idx = MultiIndex::new(exps);
            if idx.degree() != order {
                return Err(Error::BadMultiIndex {
                    degree: idx.degree(),
                    order,
                });
            }
            *t.coeffs.entry(idx).or_insert(0.0) += value;
        }
        Ok(t)
    }

    /// Converts polynomial coefficients `c_e = w(e) A(e)` back to entries.
    fn from_poly(order: usize, dim: usize, poly: PolyMap) -> Self {
        let coeffs = poly
            .into_iter()
            .map(|(e, c)| {
                let idx = MultiIndex::new(e);
                let v = c / idx.weight();
                (idx, v)
            })
            .collect();
        SymTensor { order, dim, coeffs }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Entry at the given exponent vector (zero if not stored).
    pub fn get(&self, exps: &[u32]) -> f64 {
        self.coeffs
            .get(&MultiIndex::new(exps.to_vec()))
            .copied()
            .unwrap_or(0.0)
    }

    /// Stored `(multi-index, entry)` pairs, largest exponent first.
    pub fn iter(&self) -> impl Iterator<Item = (&MultiIndex, f64)> + '_ {
        self.coeffs.iter().map(|(k, &v)| (k, v))
    }

    pub fn scaled(&self, c: f64) -> Self {
        let mut t = self.clone();
        t.coeffs.values_mut().for_each(|v| *v *= c);
        t
    }

    /// `self + c · other`
    pub fn add_scaled(&self, c: f64, other: &SymTensor) -> Result<Self> {
        self.check_shape(other)?;
        let mut t = self.clone();
        for (k, &v) in &other.coeffs {
            *t.coeffs.entry(k.clone()).or_insert(0.0) += c * v;
        }
        Ok(t)
    }

    fn check_shape(&self, other: &SymTensor) -> Result<()> {
        if self.order != other.order {
            return Err(Error::InvalidOrder {
                order: other.order,
                min: self.order,
            });
        }
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    fn check_vec(&self, u: &[f64]) -> Result<()> {
        if u.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: u.len(),
            });
        }
        Ok(())
    }

    pub fn frob_norm(&self) -> f64 {
        libm::sqrt(
            self.coeffs
                .iter()
                .map(|(k, v)| k.weight() * v * v)
                .sum::<f64>(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(|&v| v == 0.0)
    }

    /// `p_A(u) = ⟨A, u^d⟩_F`
    pub fn eval(&self, u: &[f64]) -> Result<f64> {
        self.check_vec(u)?;
        Ok(self.eval_unchecked(u))
    }

    pub(crate) fn eval_unchecked(&self, u: &[f64]) -> f64 {
        self.coeffs
            .iter()
            .map(|(k, v)| k.weight() * v * k.monomial(u))
            .sum()
    }

    /// Gradient of `u ↦ p_A(u)`.
    pub fn grad(&self, u: &[f64]) -> Result<Vec<f64>> {
        self.check_vec(u)?;
        Ok(self.grad_unchecked(u))
    }

    pub(crate) fn grad_unchecked(&self, u: &[f64]) -> Vec<f64> {
        let mut g = vec![0.0; self.dim];
        for (k, &v) in &self.coeffs {
            if v == 0.0 {
                continue;
            }
            let c = k.weight() * v;
            for (j, gj) in g.iter_mut().enumerate() {
                let ej = k.exps[j];
                if ej == 0 {
                    continue;
                }
                let mut m = c * ej as f64;
                for (i, (&ei, &ui)) in k.exps.iter().zip(u).enumerate() {
                    let p = if i == j { ei - 1 } else { ei };
                    if p > 0 {
                        m *= powi(ui, p);
                    }
                }
                *gj += m;
            }
        }
        g
    }

    /// The tensor `B` of dimension `m` with `p_B(y) = p_A(M y)`, where `M` is the
    /// `n × m` matrix given by its columns.
    pub fn pullback(&self, columns: &[Vec<f64>]) -> Result<SymTensor> {
        let m = columns.len();
        if m == 0 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        for c in columns {
            self.check_vec(c)?;
        }
        // Row i of M is the linear form x_i(y) = Σ_j M_ij y_j.
        let rows: Vec<Vec<f64>> = (0..self.dim)
            .map(|i| columns.iter().map(|c| c[i]).collect())
            .collect();
        let mut powers: Vec<Vec<PolyMap>> = Vec::with_capacity(self.dim);
        for row in &rows {
            let mut ps = vec![constant_poly(m)];
            for k in 1..=self.order {
                let next = mul_linear(&ps[k - 1], row);
                ps.push(next);
            }
            powers.push(ps);
        }
        let mut acc = PolyMap::new();
        for (k, &v) in &self.coeffs {
            if v == 0.0 {
                continue;
            }
            let mut term = constant_poly(m);
            for (i, &e) in k.exps.iter().enumerate() {
                if e > 0 {
                    term = mul_poly(&term, &powers[i][e as usize]);
                }
            }
            let c = k.weight() * v;
            for (e, t) in term {
                *acc.entry(e).or_insert(0.0) += c * t;
            }
        }
        Ok(SymTensor::from_poly(self.order, m, acc))
    }
}

fn mul_poly(a: &PolyMap, b: &PolyMap) -> PolyMap {
    let mut out = PolyMap::new();
    for (ea, &ca) in a {
        for (eb, &cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert(0.0) += ca * cb;
        }
    }
    out
}

/// `u^d = u ⊗ … ⊗ u`; the entry at exponent `e` is `Π u_i^{e_i}`.
pub fn sym_rank_one(u: &[f64], d: usize) -> Result<SymTensor> {
    if d == 0 {
        return Err(Error::InvalidOrder { order: 0, min: 1 });
    }
    if u.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite);
    }
    let mut t = SymTensor::zeros(d, u.len())?;
    for e in monomials(u.len(), d) {
        let idx = MultiIndex::new(e);
        let v = idx.monomial(u);
        t.coeffs.insert(idx, v);
    }
    Ok(t)
}

/// Symmetrization `u^k v^l` of `u^{⊗k} ⊗ v^{⊗l}` (orthogonal projection onto
/// the symmetric subspace).
pub fn sym_outer(u: &[f64], k: usize, v: &[f64], l: usize) -> Result<SymTensor> {
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch {
            expected: u.len(),
            found: v.len(),
        });
    }
    let d = k + l;
    if d == 0 {
        return Err(Error::InvalidOrder { order: 0, min: 1 });
    }
    if u.is_empty() {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: 0,
        });
    }
    // p(x) = ⟨u,x⟩^k ⟨v,x⟩^l, whose coefficients are w(e)·entry(e).
    let mut poly = constant_poly(u.len());
    for _ in 0..k {
        poly = mul_linear(&poly, u);
    }
    for _ in 0..l {
        poly = mul_linear(&poly, v);
    }
    Ok(SymTensor::from_poly(d, u.len(), poly))
}

/// Frobenius inner product `Σ_e w(e) A(e) B(e)`.
pub fn frob_inner(a: &SymTensor, b: &SymTensor) -> Result<f64> {
    a.check_shape(b)?;
    Ok(a.coeffs
        .iter()
        .filter_map(|(k, va)| b.coeffs.get(k).map(|vb| k.weight() * va * vb))
        .sum())
}

pub fn frob_norm(a: &SymTensor) -> f64 {
    a.frob_norm()
}

pub fn poly_eval(a: &SymTensor, u: &[f64]) -> Result<f64> {
    a.eval(u)
}

pub fn poly_grad(a: &SymTensor, u: &[f64]) -> Result<Vec<f64>> {
    a.grad(u)
}

/// Orthonormal frame `(q1, q2)` of a plane together with the coordinates of a
/// tensor in that frame.
#[derive(Debug, Clone)]
pub struct PlaneRestriction {
    pub tensor: SymTensor,
    pub q1: Vec<f64>,
    pub q2: Vec<f64>,
}

impl PlaneRestriction {
    /// Maps plane coordinates `(x, y)` to `x q1 + y q2`.
    pub fn lift(&self, xy: &[f64]) -> Vec<f64> {
        self.q1
            .iter()
            .zip(&self.q2)
            .map(|(a, b)| xy[0] * a + xy[1] * b)
            .collect()
    }
}

/// Orthonormal basis of `span{u, v}`: `q1 = u/‖u‖`, `q2` from Gram–Schmidt on
/// `v` (so `⟨v, q2⟩ > 0`). Fails when the Gram determinant is at most
/// `1e-14 ‖u‖²‖v‖²`.
pub fn plane_frame(u: &[f64], v: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch {
            expected: u.len(),
            found: v.len(),
        });
    }
    let uu = dot(u, u);
    let vv = dot(v, v);
    let uv = dot(u, v);
    if uu * vv - uv * uv <= 1e-14 * uu * vv || uu == 0.0 {
        return Err(Error::DegenerateSpan);
    }
    let nu = libm::sqrt(uu);
    let q1: Vec<f64> = u.iter().map(|x| x / nu).collect();
    let c = dot(v, &q1);
    let mut r: Vec<f64> = v.iter().zip(&q1).map(|(x, q)| x - c * q).collect();
    // one reorthogonalization pass
    let c2 = dot(&r, &q1);
    r.iter_mut().zip(&q1).for_each(|(x, q)| *x -= c2 * q);
    let nr = norm(&r);
    let q2 = r.iter().map(|x| x / nr).collect();
    Ok((q1, q2))
}

/// Coordinates of `A` on `span{u, v}`: the binary tensor with
/// `p(x, y) = p_A(x q1 + y q2)`. This is exactly `A` in the new basis when
/// `A ∈ Sym_d(span{u, v})`.
pub fn restrict_to_plane(a: &SymTensor, u: &[f64], v: &[f64]) -> Result<PlaneRestriction> {
    a.check_vec(u)?;
    a.check_vec(v)?;
    let (q1, q2) = plane_frame(u, v)?;
    let tensor = a.pullback(&[q1.clone(), q2.clone()])?;
    Ok(PlaneRestriction { tensor, q1, q2 })
}

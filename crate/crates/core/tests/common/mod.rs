//! Brute-force oracles shared by the integration tests. Nothing here goes
//! through the symmetric storage beyond `SymTensor::get`.
#![allow(dead_code)]

use rankone_core::SymTensor;

pub fn binom(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// All index tuples of `{0..n}^d` in row-major order.
pub fn tuples(n: usize, d: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|t| (0..n).map(move |i| [t.clone(), vec![i]].concat()))
            .collect();
    }
    out
}

fn permutations(d: usize) -> Vec<Vec<usize>> {
    if d == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(d - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, d - 1);
            out.push(q);
        }
    }
    out
}

/// Full array of `Sym(f_1 ⊗ … ⊗ f_d)` by averaging over all `d!` slot orders.
pub fn dense_symmetrized(factors: &[&[f64]]) -> Vec<f64> {
    let d = factors.len();
    let n = factors[0].len();
    let perms = permutations(d);
    tuples(n, d)
        .iter()
        .map(|idx| {
            perms
                .iter()
                .map(|p| (0..d).map(|s| factors[p[s]][idx[s]]).product::<f64>())
                .sum::<f64>()
                / perms.len() as f64
        })
        .collect()
}

/// Full array of a symmetric tensor, read entry by entry.
pub fn dense_of(a: &SymTensor) -> Vec<f64> {
    let (n, d) = (a.dim(), a.order());
    tuples(n, d)
        .iter()
        .map(|idx| {
            let mut e = vec![0u32; n];
            idx.iter().for_each(|&i| e[i] += 1);
            a.get(&e)
        })
        .collect()
}

/// `max |p_A|` over `m` equispaced angles of the half circle.
pub fn grid_max(a: &SymTensor, m: usize) -> f64 {
    let d = a.order();
    let c: Vec<f64> = (0..=d)
        .map(|k| binom(d, k) * a.get(&[(d - k) as u32, k as u32]))
        .collect();
    let mut best = 0.0f64;
    for j in 0..m {
        let phi = std::f64::consts::PI * j as f64 / m as f64;
        let (y, x) = phi.sin_cos();
        let (mut r, mut yp) = (c[0], 1.0);
        for ck in &c[1..] {
            yp *= y;
            r = r * x + ck * yp;
        }
        best = best.max(r.abs());
    }
    best
}

/// `P w^d` onto `span{Sym(u^{d−1} e_i), Sym(v^{d−1} e_j)}` on full arrays, by
/// Gram–Schmidt with reorthogonalization; dependent generators are dropped.
pub fn lstsq_projection(u: &[f64], v: &[f64], w: &[f64], d: usize) -> Vec<f64> {
    let n = u.len();
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let mut q: Vec<Vec<f64>> = Vec::new();
    for f in [u, v] {
        for i in 0..n {
            let mut e = vec![0.0; n];
            e[i] = 1.0;
            let mut factors: Vec<&[f64]> = vec![f; d - 1];
            factors.push(&e);
            let mut g = dense_symmetrized(&factors);
            let g0 = dot(&g, &g).sqrt();
            for _ in 0..2 {
                for b in &q {
                    let c = dot(&g, b);
                    g.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
                }
            }
            let r = dot(&g, &g).sqrt();
            if r > 1e-10 * g0 {
                q.push(g.iter().map(|x| x / r).collect());
            }
        }
    }
    let target = dense_symmetrized(&vec![w; d]);
    let mut out = vec![0.0; target.len()];
    for b in &q {
        let c = dot(&target, b);
        out.iter_mut().zip(b).for_each(|(x, y)| *x += c * y);
    }
    out
}

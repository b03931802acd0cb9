//! Small dense vector and matrix helpers.

use alloc::vec;
use alloc::vec::Vec;

/// `x^n` by repeated squaring.
pub fn powi(x: f64, n: u32) -> f64 {
    let (mut base, mut e, mut acc) = (x, n, 1.0);
    while e > 0 {
        if e & 1 == 1 {
            acc *= base;
        }
        base *= base;
        e >>= 1;
    }
    acc
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    libm::sqrt(dot(a, a))
}

pub fn normalized(a: &[f64]) -> Vec<f64> {
    let n = norm(a);
    a.iter().map(|x| x / n).collect()
}

/// `a + c * b`
pub fn axpy(a: &[f64], c: f64, b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + c * y).collect()
}

/// Distance between the antipodal classes `{a, -a}` and `{b, -b}`.
pub fn antipodal_distance(a: &[f64], b: &[f64]) -> f64 {
    let (mut minus, mut plus) = (0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        minus += (x - y) * (x - y);
        plus += (x + y) * (x + y);
    }
    libm::sqrt(minus.min(plus))
}

/// Flips `w` so that its first entry with magnitude above `1e-14` is positive.
/// Returns the sign that was applied.
pub fn canonical_sign(w: &mut [f64]) -> f64 {
    let sign = match w.iter().find(|x| x.abs() > 1e-14) {
        Some(&x) if x < 0.0 => -1.0,
        _ => 1.0,
    };
    if sign < 0.0 {
        w.iter_mut().for_each(|x| *x = -*x);
    }
    sign
}

/// Solves the square system `a x = b` (row-major `a`, size `n × n`) by Gaussian
/// elimination with complete pivoting. Pivots below `rel_tol · max|a|` are
/// treated as zero and the corresponding unknowns set to zero, which yields a
/// particular solution of a consistent rank-deficient system.
pub fn solve_pivoted(a: &[f64], b: &[f64], n: usize, rel_tol: f64) -> Vec<f64> {
    let mut m = a.to_vec();
    let mut rhs = b.to_vec();
    let mut col_perm: Vec<usize> = (0..n).collect();
    let scale = m.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
    let mut rank = n;
    for k in 0..n {
        let (mut pr, mut pc, mut best) = (k, k, 0.0);
        for r in k..n {
            for c in k..n {
                let v = m[r * n + c].abs();
                if v > best {
                    best = v;
                    pr = r;
                    pc = c;
                }
            }
        }
        if best <= rel_tol * scale || best == 0.0 {
            rank = k;
            break;
        }
        if pr != k {
            for c in 0..n {
                m.swap(k * n + c, pr * n + c);
            }
            rhs.swap(k, pr);
        }
        if pc != k {
            for r in 0..n {
                m.swap(r * n + k, r * n + pc);
            }
            col_perm.swap(k, pc);
        }
        let piv = m[k * n + k];
        for r in (k + 1)..n {
            let f = m[r * n + k] / piv;
            if f != 0.0 {
                for c in k..n {
                    m[r * n + c] -= f * m[k * n + c];
                }
                rhs[r] -= f * rhs[k];
            }
        }
    }
    let mut y = vec![0.0; n];
    for k in (0..rank).rev() {
        let mut s = rhs[k];
        for c in (k + 1)..rank {
            s -= m[k * n + c] * y[c];
        }
        y[k] = s / m[k * n + k];
    }
    let mut x = vec![0.0; n];
    for (k, &c) in col_perm.iter().enumerate() {
        x[c] = y[k];
    }
    x
}

/// Minimum-residual solution of the `rows × cols` system `a x ≈ b` (row-major)
/// by Householder QR with column pivoting. Columns whose pivot falls below
/// `rel_tol` times the largest one are dropped (their unknowns are zero).
pub fn lstsq(a: &[f64], b: &[f64], rows: usize, cols: usize, rel_tol: f64) -> Vec<f64> {
    lstsq_fit(a, b, rows, cols, rel_tol).0
}

/// [`lstsq`] together with the fitted vector `a x`, formed as `Q Qᵀ b` so it
/// stays accurate when `x` itself is large and cancels.
pub fn lstsq_fit(
    a: &[f64],
    b: &[f64],
    rows: usize,
    cols: usize,
    rel_tol: f64,
) -> (Vec<f64>, Vec<f64>) {
    let mut m = a.to_vec();
    let mut rhs = b.to_vec();
    let mut perm: Vec<usize> = (0..cols).collect();
    let col_norm2 = |m: &[f64], c: usize, from: usize| {
        (from..rows)
            .map(|r| m[r * cols + c] * m[r * cols + c])
            .sum::<f64>()
    };
    let steps = rows.min(cols);
    let mut rank = steps;
    let mut heads = vec![0.0; steps];
    let mut vnorms = vec![0.0; steps];
    let mut first = 0.0;
    for k in 0..steps {
        let (mut pc, mut best) = (k, -1.0);
        for c in k..cols {
            let n2 = col_norm2(&m, c, k);
            if n2 > best {
                best = n2;
                pc = c;
            }
        }
        if pc != k {
            for r in 0..rows {
                m.swap(r * cols + k, r * cols + pc);
            }
            perm.swap(k, pc);
        }
        let alpha = libm::sqrt(best.max(0.0));
        if k == 0 {
            first = alpha;
        }
        if alpha == 0.0 || alpha <= rel_tol * first {
            rank = k;
            break;
        }
        let x0 = m[k * cols + k];
        let beta = if x0 >= 0.0 { -alpha } else { alpha };
        // reflector v = x − beta e_k, stored in place below the diagonal
        m[k * cols + k] = x0 - beta;
        let vnorm2 = (x0 - beta) * (x0 - beta) + (best - x0 * x0);
        for c in (k + 1)..cols {
            let s: f64 = (k..rows).map(|r| m[r * cols + k] * m[r * cols + c]).sum();
            let f = 2.0 * s / vnorm2;
            for r in k..rows {
                m[r * cols + c] -= f * m[r * cols + k];
            }
        }
        let s: f64 = (k..rows).map(|r| m[r * cols + k] * rhs[r]).sum();
        let f = 2.0 * s / vnorm2;
        for r in k..rows {
            rhs[r] -= f * m[r * cols + k];
        }
        heads[k] = x0 - beta;
        vnorms[k] = vnorm2;
        m[k * cols + k] = beta;
    }
    let mut y = vec![0.0; cols];
    for k in (0..rank).rev() {
        let mut s = rhs[k];
        for c in (k + 1)..rank {
            s -= m[k * cols + c] * y[c];
        }
        y[k] = s / m[k * cols + k];
    }
    let mut x = vec![0.0; cols];
    for (k, &c) in perm.iter().enumerate() {
        x[c] = y[k];
    }
    let mut fit = vec![0.0; rows];
    fit[..rank].copy_from_slice(&rhs[..rank]);
    for k in (0..rank).rev() {
        let v = |r: usize| if r == k { heads[k] } else { m[r * cols + k] };
        let s: f64 = (k..rows).map(|r| v(r) * fit[r]).sum();
        let f = 2.0 * s / vnorms[k];
        for r in k..rows {
            fit[r] -= f * v(r);
        }
    }
    (x, fit)
}

//! Real roots of univariate polynomials.
//!
//! Roots are taken as eigenvalues of the (balanced) companion matrix, computed
//! with the Francis double-shift QR iteration on the Hessenberg form. Eigenvalues
//! whose imaginary part is below `1e-8 · (1 + |re|)` are accepted as real.
//! Eigenvalues with a slightly larger imaginary part (up to `1e-4 · (1 + |re|)`)
//! are used as Newton starting points and accepted only if Newton converges to a
//! real root. Every accepted root is polished by Newton's method on the original
//! coefficients; roots closer than `1e-8 · (1 + |r|)` are merged and the result
//! flagged.

use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

const REAL_IMAG_TOL: f64 = 1e-8;
const NEAR_REAL_IMAG_TOL: f64 = 1e-4;
const MERGE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct RealRoots {
    /// Distinct real roots in increasing order.
    pub roots: Vec<f64>,
    /// Set when two candidate roots were merged by the proximity rule
    /// (a numerically multiple root).
    pub merged: bool,
}

/// Evaluates `Σ c_j x^j` (ascending coefficients).
pub fn eval(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// Value, derivative, and `Σ |c_j| |x|^j` (a scale for residual tests).
fn eval_full(coeffs: &[f64], x: f64) -> (f64, f64, f64) {
    let (mut p, mut dp, mut abs) = (0.0, 0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * x + p;
        p = p * x + c;
        abs = abs * x.abs() + c.abs();
    }
    (p, dp, abs)
}

/// All distinct real roots of `Σ c_j x^j`.
pub fn real_roots(coeffs: &[f64]) -> Result<RealRoots> {
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(Error::NonFinite);
    }
    let scale = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    if scale == 0.0 {
        return Err(Error::ZeroPolynomial);
    }
    let mut top = coeffs.len();
    while top > 0 && coeffs[top - 1].abs() <= 1e-15 * scale {
        top -= 1;
    }
    let trimmed = &coeffs[..top];
    let zeros = trimmed.iter().take_while(|&&c| c == 0.0).count();
    let reduced = &trimmed[zeros..];
    let mut candidates = Vec::new();
    if zeros > 0 {
        candidates.push(0.0);
    }
    let degree = reduced.len() - 1;
    match degree {
        0 => {}
        1 => candidates.push(-reduced[0] / reduced[1]),
        _ => {
            let eig = companion_eigenvalues(reduced)?;
            for (re, im) in eig {
                let tol = 1.0 + re.abs();
                if im.abs() <= REAL_IMAG_TOL * tol {
                    candidates.push(polish(trimmed, re).0);
                } else if im.abs() <= NEAR_REAL_IMAG_TOL * tol {
                    let (x, ok) = polish(trimmed, re);
                    if ok {
                        candidates.push(x);
                    }
                }
            }
        }
    }
    candidates.sort_by(|a, b| a.total_cmp(b));
    let mut roots: Vec<f64> = Vec::with_capacity(candidates.len());
    let mut merged = false;
    for x in candidates {
        match roots.last() {
            Some(&last) if (x - last).abs() <= MERGE_TOL * (1.0 + x.abs()) => merged = true,
            _ => roots.push(x),
        }
    }
    Ok(RealRoots { roots, merged })
}

/// Newton polish. Returns the improved point and whether the relative residual
/// reached `1e-12`.
fn polish(coeffs: &[f64], x0: f64) -> (f64, bool) {
    let mut x = x0;
    let (mut p, _, mut abs) = eval_full(coeffs, x);
    for _ in 0..100 {
        if p == 0.0 {
            break;
        }
        let (_, dp, _) = eval_full(coeffs, x);
        if dp == 0.0 {
            break;
        }
        let next = x - p / dp;
        let (pn, _, absn) = eval_full(coeffs, next);
        if !(pn.abs() < p.abs()) {
            break;
        }
        let step = (next - x).abs();
        x = next;
        p = pn;
        abs = absn;
        if step <= 4.0 * f64::EPSILON * (1.0 + x.abs()) {
            break;
        }
    }
    let ok = p.abs() <= 1e-12 * abs.max(f64::MIN_POSITIVE);
    (x, ok)
}

/// Eigenvalues `(re, im)` of the companion matrix of a polynomial of degree ≥ 2
/// with nonzero leading coefficient.
fn companion_eigenvalues(coeffs: &[f64]) -> Result<Vec<(f64, f64)>> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    // 1-based (n+1)×(n+1) storage keeps the QR sweep close to its textbook form.
    let mut a = vec![vec![0.0; n + 1]; n + 1];
    for j in 1..=n {
        a[1][j] = -coeffs[n - j] / lead;
    }
    for i in 2..=n {
        a[i][i - 1] = 1.0;
    }
    balance(&mut a, n);
    hessenberg_qr(&mut a, n)
}

fn balance(a: &mut [Vec<f64>], n: usize) {
    const RADIX: f64 = 2.0;
    let sqrdx = RADIX * RADIX;
    let mut done = false;
    while !done {
        done = true;
        for i in 1..=n {
            let (mut r, mut c) = (0.0, 0.0);
            for j in 1..=n {
                if j != i {
                    c += a[j][i].abs();
                    r += a[i][j].abs();
                }
            }
            if c != 0.0 && r != 0.0 {
                let mut g = r / RADIX;
                let mut f = 1.0;
                let s = c + r;
                while c < g {
                    f *= RADIX;
                    c *= sqrdx;
                }
                g = r * RADIX;
                while c > g {
                    f /= RADIX;
                    c /= sqrdx;
                }
                if (c + r) / f < 0.95 * s {
                    done = false;
                    let g = 1.0 / f;
                    for j in 1..=n {
                        a[i][j] *= g;
                    }
                    for j in 1..=n {
                        a[j][i] *= f;
                    }
                }
            }
        }
    }
}

fn sign(a: f64, b: f64) -> f64 {
    if b >= 0.0 {
        a.abs()
    } else {
        -a.abs()
    }
}

/// Francis double-shift QR on an upper Hessenberg matrix (1-based).
fn hessenberg_qr(a: &mut [Vec<f64>], n: usize) -> Result<Vec<(f64, f64)>> {
    let mut wr = vec![0.0; n + 1];
    let mut wi = vec![0.0; n + 1];
    let mut anorm = 0.0;
    for i in 1..=n {
        for j in i.saturating_sub(1).max(1)..=n {
            anorm += a[i][j].abs();
        }
    }
    let mut nn = n;
    let mut t = 0.0;
    while nn >= 1 {
        let mut its = 0;
        loop {
            let mut l = nn;
            while l >= 2 {
                let mut s = a[l - 1][l - 1].abs() + a[l][l].abs();
                if s == 0.0 {
                    s = anorm;
                }
                if a[l][l - 1].abs() + s == s {
                    a[l][l - 1] = 0.0;
                    break;
                }
                l -= 1;
            }
            let mut x = a[nn][nn];
            if l == nn {
                wr[nn] = x + t;
                wi[nn] = 0.0;
                nn -= 1;
                break;
            }
            let mut y = a[nn - 1][nn - 1];
            let mut w = a[nn][nn - 1] * a[nn - 1][nn];
            if l == nn - 1 {
                let p = 0.5 * (y - x);
                let q = p * p + w;
                let mut z = libm::sqrt(q.abs());
                x += t;
                if q >= 0.0 {
                    z = p + sign(z, p);
                    wr[nn - 1] = x + z;
                    wr[nn] = x + z;
                    if z != 0.0 {
                        wr[nn] = x - w / z;
                    }
                    wi[nn - 1] = 0.0;
                    wi[nn] = 0.0;
                } else {
                    wr[nn - 1] = x + p;
                    wr[nn] = x + p;
                    wi[nn - 1] = -z;
                    wi[nn] = z;
                }
                nn = nn.saturating_sub(2);
                break;
            }
            if its == 60 {
                return Err(Error::NoConvergence);
            }
            if its % 10 == 0 && its > 0 {
                t += x;
                for i in 1..=nn {
                    a[i][i] -= x;
                }
                let s = a[nn][nn - 1].abs() + a[nn - 1][nn - 2].abs();
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }
            its += 1;
            let (mut p, mut q, mut r);
            let mut m = nn - 2;
            loop {
                let z = a[m][m];
                let rr = x - z;
                let ss = y - z;
                p = (rr * ss - w) / a[m + 1][m] + a[m][m + 1];
                q = a[m + 1][m + 1] - z - rr - ss;
                r = a[m + 2][m + 1];
                let s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                let u = a[m][m - 1].abs() * (q.abs() + r.abs());
                let v = p.abs() * (a[m - 1][m - 1].abs() + z.abs() + a[m + 1][m + 1].abs());
                if u + v == v {
                    break;
                }
                m -= 1;
            }
            for i in (m + 2)..=nn {
                a[i][i - 2] = 0.0;
                if i != m + 2 {
                    a[i][i - 3] = 0.0;
                }
            }
            let mut k = m;
            while k + 1 <= nn {
                if k != m {
                    p = a[k][k - 1];
                    q = a[k + 1][k - 1];
                    r = 0.0;
                    if k != nn - 1 {
                        r = a[k + 2][k - 1];
                    }
                    x = p.abs() + q.abs() + r.abs();
                    if x != 0.0 {
                        p /= x;
                        q /= x;
                        r /= x;
                    }
                }
                let s = sign(libm::sqrt(p * p + q * q + r * r), p);
                if s != 0.0 {
                    if k == m {
                        if l != m {
                            a[k][k - 1] = -a[k][k - 1];
                        }
                    } else {
                        a[k][k - 1] = -s * x;
                    }
                    p += s;
                    x = p / s;
                    y = q / s;
                    let z = r / s;
                    q /= p;
                    r /= p;
                    for j in k..=nn {
                        let mut pp = a[k][j] + q * a[k + 1][j];
                        if k != nn - 1 {
                            pp += r * a[k + 2][j];
                            a[k + 2][j] -= pp * z;
                        }
                        a[k + 1][j] -= pp * y;
                        a[k][j] -= pp * x;
                    }
                    let mmin = if nn < k + 3 { nn } else { k + 3 };
                    for i in l..=mmin {
                        let mut pp = x * a[i][k] + y * a[i][k + 1];
                        if k != nn - 1 {
                            pp += z * a[i][k + 2];
                            a[i][k + 2] -= pp * r;
                        }
                        a[i][k + 1] -= pp * q;
                        a[i][k] -= pp;
                    }
                }
                k += 1;
            }
        }
    }
    Ok((1..=n).map(|i| (wr[i], wi[i])).collect())
}

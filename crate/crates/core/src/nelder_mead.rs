//! Nelder–Mead simplex maximization (used for polishing feasible-region scans).

use alloc::vec::Vec;

#[derive(Debug, Clone, Copy)]
pub struct NelderMeadConfig {
    pub initial_step: f64,
    pub max_evals: usize,
    /// Stop when the spread of simplex values falls below this.
    pub f_tol: f64,
}

impl Default for NelderMeadConfig {
    fn default() -> Self {
        NelderMeadConfig {
            initial_step: 0.05,
            max_evals: 2000,
            f_tol: 1e-14,
        }
    }
}

/// Maximizes `f` from `x0`. Points where `f` returns `-inf` are treated as
/// infeasible. Returns the best point and value.
pub fn maximize<F>(f: F, x0: &[f64], cfg: &NelderMeadConfig) -> (Vec<f64>, f64)
where
    F: Fn(&[f64]) -> f64,
{
    let n = x0.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    simplex.push((x0.to_vec(), f(x0)));
    for i in 0..n {
        let mut x = x0.to_vec();
        x[i] += cfg.initial_step;
        let mut fx = f(&x);
        if fx == f64::NEG_INFINITY {
            x[i] = x0[i] - cfg.initial_step;
            fx = f(&x);
        }
        simplex.push((x, fx));
    }
    let mut evals = n + 1;
    while evals < cfg.max_evals {
        simplex.sort_by(|a, b| b.1.total_cmp(&a.1));
        let best = simplex[0].1;
        let worst = simplex[n].1;
        if best.is_finite() && worst.is_finite() && (best - worst).abs() <= cfg.f_tol {
            break;
        }
        let centroid: Vec<f64> = (0..n)
            .map(|j| simplex[..n].iter().map(|(x, _)| x[j]).sum::<f64>() / n as f64)
            .collect();
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[n].0)
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };
        let xr = along(1.0);
        let fr = f(&xr);
        evals += 1;
        if fr > simplex[0].1 {
            let xe = along(2.0);
            let fe = f(&xe);
            evals += 1;
            simplex[n] = if fe > fr { (xe, fe) } else { (xr, fr) };
        } else if fr > simplex[n - 1].1 {
            simplex[n] = (xr, fr);
        } else {
            let (xc, fc) = if fr > simplex[n].1 {
                let x = along(0.5);
                let fx = f(&x);
                (x, fx)
            } else {
                let x = along(-0.5);
                let fx = f(&x);
                (x, fx)
            };
            evals += 1;
            if fc > simplex[n].1.max(fr) || (fc > simplex[n].1 && fr == f64::NEG_INFINITY) {
                simplex[n] = (xc, fc);
            } else {
                let x_best = simplex[0].0.clone();
                for item in simplex.iter_mut().skip(1) {
                    let x: Vec<f64> = x_best
                        .iter()
                        .zip(&item.0)
                        .map(|(b, x)| b + 0.5 * (x - b))
                        .collect();
                    let fx = f(&x);
                    *item = (x, fx);
                }
                evals += n;
            }
        }
    }
    simplex.sort_by(|a, b| b.1.total_cmp(&a.1));
    let (x, fx) = simplex.swap_remove(0);
    (x, fx)
}

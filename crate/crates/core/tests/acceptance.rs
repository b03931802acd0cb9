//! Acceptance suite: thirteen end-to-end criteria, one PASS/FAIL line each.
//!
//! Run with `cargo test -p rankone-core --test acceptance`. The process exits
//! with status 1 if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rankone_core::cube222::{
    embed_normal_form, feasible_max_scan, hyperdet, make_rank_two_3, ratio_3, relative_distance_3,
    DenseTensor, NormalForm222, ScanConfig,
};
use rankone_core::ranktwo::{
    border_ratio_scan, critical_eq_roots, diff_bound, diff_bound_limit, equal_family, grad_f,
    make_w, maximizer_count, min_ratio_search, project_pair, ratio_f, sample, w_ratio,
    SearchConfig,
};
use rankone_core::rng::stream;
use rankone_core::spectral::{ratio, relative_distance, spectral_norm_binary, ARGMAX_REL_TOL};
use rankone_core::symtensor::{restrict_to_plane, sym_rank_one};
use rankone_core::SymTensor;

const SEED: u64 = 20240917;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("runtime {t:.2?} exceeds {limit:?}"))
}

fn c01_wd_exactness() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for d in 3..=12 {
        let w = make_w(d).map_err(|e| e.to_string())?;
        let r = ratio(&w.tensor).map_err(|e| e.to_string())?;
        let expect = (1.0 - 1.0 / d as f64).powf((d as f64 - 1.0) / 2.0);
        worst = worst.max((r - expect).abs());
        ensure((r - expect).abs() < 1e-10, || {
            format!("d={d}: ratio {r} vs {expect}")
        })?;
        let f = w.tensor.frob_norm();
        ensure((f - (d as f64).sqrt()).abs() < 1e-12, || {
            format!("d={d}: frob {f}")
        })?;
    }
    within(start, Duration::from_secs(1))?;
    Ok(format!("max |ratio - closed form| = {worst:.1e}"))
}

fn c02_binary_vs_grid() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for i in 0..100 {
        let mut s = stream(SEED, 200 + i);
        let d = 1 + (i as usize % 8);
        let entries: Vec<(Vec<u32>, f64)> = (0..=d)
            .map(|k| (vec![(d - k) as u32, k as u32], s.normal()))
            .collect();
        let a = SymTensor::from_entries(d, 2, entries).map_err(|e| e.to_string())?;
        let exact = spectral_norm_binary(&a, ARGMAX_REL_TOL)
            .map_err(|e| e.to_string())?
            .value;
        let grid = common::grid_max(&a, 1_000_000);
        worst = worst.max((exact - grid).abs());
        ensure(exact >= grid - 1e-9, || {
            format!("sample {i}: exact {exact} below grid {grid}")
        })?;
        ensure(exact - grid <= 1e-6, || {
            format!("sample {i}: exact {exact} vs grid {grid}")
        })?;
    }
    within(start, Duration::from_secs(30))?;
    Ok(format!("100 tensors, max |exact - grid| = {worst:.1e}"))
}

fn c03_rank_two_bound() -> Outcome {
    let start = Instant::now();
    let mut summary = Vec::new();
    for d in 3..=6 {
        let bound = w_ratio(d);
        let mut lowest = f64::INFINITY;
        for i in 0..10_000u64 {
            let mut s = stream(SEED, 1000 * d as u64 + i);
            let p = sample::canonical(&mut s, d, 2 + (i as usize % 2));
            let r = ratio_f(&p, d)
                .map_err(|e| format!("d={d} sample {i}: {e}"))?
                .sqrt();
            lowest = lowest.min(r);
            ensure(r > bound - 1e-9, || {
                format!("d={d} sample {i}: ratio {r} below bound {bound}")
            })?;
        }
        let cfg = SearchConfig {
            seed: SEED + d as u64,
            ..SearchConfig::default()
        };
        let res = min_ratio_search(d, &cfg).map_err(|e| e.to_string())?;
        ensure(res.best_ratio >= bound, || {
            format!("d={d}: search {} below bound {bound}", res.best_ratio)
        })?;
        ensure(res.best_ratio - bound <= 5e-3, || {
            format!("d={d}: search {} too far above {bound}", res.best_ratio)
        })?;
        summary.push(format!(
            "d={d} sampled min {lowest:.4}, search {:+.1e}",
            res.best_ratio - bound
        ));
    }
    within(start, Duration::from_secs(300))?;
    Ok(summary.join("; "))
}

fn c04_uniqueness() -> Outcome {
    for d in 3..=7 {
        for i in 0..1000u64 {
            let mut s = stream(SEED, 40_000 + 1000 * d as u64 + i);
            let p = sample::generic(&mut s, 2 + (i as usize % 2));
            let n = maximizer_count(&p, d).map_err(|e| e.to_string())?;
            ensure(n == 1, || {
                format!("d={d} sample {i}: {n} maximizer classes for {p:?}")
            })?;
        }
    }
    Ok("5000 generic samples, one maximizer class each".into())
}

fn c05_root_count() -> Outcome {
    for d in 3..=8 {
        for i in 0..1000u64 {
            let mut s = stream(SEED, 50_000 + 1000 * d as u64 + i);
            let (a, b, g) = (s.range(0.05, 3.0), s.range(0.0, 3.0), s.range(0.05, 3.0));
            let r = critical_eq_roots(a, b, g, d).map_err(|e| e.to_string())?;
            let expect = 2 + d % 2;
            ensure(r.roots.len() == expect, || {
                format!("d={d} (a,b,g)=({a},{b},{g}): {:?}", r.roots)
            })?;
        }
    }
    Ok("6000 draws, 2 roots for even d and 3 for odd d".into())
}

fn c06_sum_case() -> Outcome {
    let mut lowest = f64::INFINITY;
    for d in 3..=8 {
        for i in 0..1000u64 {
            let mut s = stream(SEED, 60_000 + 1000 * d as u64 + i);
            let p = sample::sum_case(&mut s, 2 + (i as usize % 2));
            let f = ratio_f(&p, d).map_err(|e| e.to_string())?;
            lowest = lowest.min(f);
            ensure(f >= 0.5 - 1e-12, || format!("d={d} sample {i}: F = {f}"))?;
        }
    }
    Ok(format!("6000 samples, min ratio^2 = {lowest:.6}"))
}

fn c07_equal_case() -> Outcome {
    let ts: Vec<f64> = (0..1000)
        .map(|i| 10f64.powf(-4.0 + 4.0 * i as f64 / 999.0))
        .collect();
    for d in 3..=8 {
        let limit = diff_bound_limit(d);
        for &t in &ts {
            let a = equal_family(d, t).map_err(|e| e.to_string())?;
            let r = ratio(&a).map_err(|e| e.to_string())?;
            ensure(r * r > limit, || {
                format!("d={d} t={t}: ratio^2 {} <= {limit}", r * r)
            })?;
        }
        let edge = 1.0 / ((d - 1) as f64).sqrt();
        let inside: Vec<f64> = ts.iter().copied().filter(|&t| t < edge).collect();
        let vals: Vec<f64> = inside.iter().map(|&t| diff_bound(d, t).unwrap()).collect();
        for k in 1..vals.len() {
            ensure(vals[k] > vals[k - 1], || {
                format!("d={d}: diff_bound not increasing at t={}", inside[k])
            })?;
        }
        let at = diff_bound(d, 1e-4).map_err(|e| e.to_string())?;
        ensure((at - limit).abs() < 1e-6, || {
            format!("d={d}: diff_bound(1e-4) = {at} vs {limit}")
        })?;
    }
    Ok("1000 log-spaced t in [1e-4, 1], d = 3..8".into())
}

fn c08_border_scan() -> Outcome {
    for d in 3..=8 {
        let rows = border_ratio_scan(d, 1001).map_err(|e| e.to_string())?;
        let bound = w_ratio(d);
        ensure((rows[0].ratio - bound).abs() < 1e-10, || {
            format!("d={d}: ratio at a=0 is {}", rows[0].ratio)
        })?;
        for r in &rows {
            ensure(r.a == 0.0 || r.ratio > rows[0].ratio, || {
                format!("d={d}: a={} ratio {}", r.a, r.ratio)
            })?;
            ensure(r.lb_interior <= r.ratio + 1e-12, || {
                format!("d={d}: interior bound above ratio at a={}", r.a)
            })?;
            ensure(r.lb_axis <= r.ratio + 1e-12, || {
                format!("d={d}: axis bound above ratio at a={}", r.a)
            })?;
        }
    }
    Ok("1001-point sweeps, d = 3..8".into())
}

/// `F` from the full tensor, restricted to the plane and solved exactly.
fn f_oracle(alpha: f64, beta: f64, u: &[f64], v: &[f64], d: usize) -> f64 {
    let a = sym_rank_one(u, d)
        .unwrap()
        .scaled(alpha)
        .add_scaled(-beta, &sym_rank_one(v, d).unwrap())
        .unwrap();
    let plane = restrict_to_plane(&a, u, v).unwrap();
    let s = spectral_norm_binary(&plane.tensor, ARGMAX_REL_TOL)
        .unwrap()
        .value;
    s * s / a.frob_norm().powi(2)
}

fn c09_gradient() -> Outcome {
    let h = 1e-6;
    let mut worst = 0.0f64;
    for i in 0..50u64 {
        let mut s = stream(SEED, 90_000 + i);
        let d = 3 + (i as usize % 4);
        let p = sample::generic(&mut s, 3);
        let g = grad_f(&p, d).map_err(|e| format!("sample {i}: {e}"))?;
        let mut x: Vec<f64> = [vec![p.alpha, p.beta], p.u.clone(), p.v.clone()].concat();
        let eval = |x: &[f64]| f_oracle(x[0], x[1], &x[2..5], &x[5..8], d);
        let mut fd = vec![0.0; x.len()];
        for k in 0..x.len() {
            let x0 = x[k];
            x[k] = x0 + h;
            let fp = eval(&x);
            x[k] = x0 - h;
            let fm = eval(&x);
            x[k] = x0;
            fd[k] = (fp - fm) / (2.0 * h);
        }
        let exact: Vec<f64> = [vec![g.alpha, g.beta], g.u.clone(), g.v.clone()].concat();
        let err = exact
            .iter()
            .zip(&fd)
            .map(|(a, b)| (a - b).powi(2))
            .sum::<f64>()
            .sqrt();
        let scale = fd.iter().map(|a| a * a).sum::<f64>().sqrt();
        worst = worst.max(err / scale);
        ensure(err / scale < 1e-5, || {
            format!("sample {i}: relative error {:.2e}", err / scale)
        })?;
        let tn = g.tangential(&p).norm();
        ensure(tn > 0.0, || format!("sample {i}: zero tangential gradient"))?;
    }
    Ok(format!("50 generic points, max relative error {worst:.1e}"))
}

fn c10_projection() -> Outcome {
    let mut worst = 0.0f64;
    for i in 0..100u64 {
        let mut s = stream(SEED, 100_000 + i);
        let d = 2 + (i as usize % 5);
        let n = 2 + (i as usize % 3);
        let (u, v, w) = (s.unit_vec(n), s.unit_vec(n), s.normal_vec(n));
        let p = project_pair(&u, &v, &w, d).map_err(|e| e.to_string())?;
        let mine = common::dense_of(&p.tensor);
        let oracle = common::lstsq_projection(&u, &v, &w, d);
        let err = mine
            .iter()
            .zip(&oracle)
            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
        worst = worst.max(err);
        ensure(err < 1e-10, || {
            format!("triple {i} (d={d}, n={n}): error {err:.2e}")
        })?;
    }
    Ok(format!("100 triples, max entry error {worst:.1e}"))
}

fn w3_dense() -> DenseTensor {
    let mut t = DenseTensor::zeros(vec![2, 2, 2]).unwrap();
    for idx in [[0, 0, 1], [0, 1, 0], [1, 0, 0]] {
        t.set(&idx, 1.0);
    }
    t
}

fn c11_cube_bound() -> Outcome {
    let mut lowest = f64::INFINITY;
    let mut accepted = 0;
    let mut i = 0u64;
    while accepted < 10_000 {
        let mut s = stream(SEED, 110_000 + i);
        i += 1;
        let f: Vec<Vec<f64>> = (0..6).map(|_| s.normal_vec(2)).collect();
        let t = make_rank_two_3([&f[0], &f[1], &f[2]], [&f[3], &f[4], &f[5]])
            .map_err(|e| e.to_string())?;
        if hyperdet(&t).map_err(|e| e.to_string())? <= 0.0 {
            continue;
        }
        accepted += 1;
        let r = ratio_3(&t).map_err(|e| e.to_string())?;
        lowest = lowest.min(r);
        ensure(r > 2.0 / 3.0 - 1e-9, || format!("sample {i}: ratio {r}"))?;
    }
    let w = w3_dense();
    let r = ratio_3(&w).map_err(|e| e.to_string())?;
    ensure((r - 2.0 / 3.0).abs() < 1e-8, || format!("ratio(W_3) = {r}"))?;
    let dist = relative_distance_3(&w).map_err(|e| e.to_string())?;
    ensure((dist - 5f64.sqrt() / 3.0).abs() < 1e-8, || {
        format!("distance(W_3) = {dist}")
    })?;
    let scan = feasible_max_scan(&ScanConfig {
        seed: SEED,
        ..ScanConfig::default()
    })
    .map_err(|e| e.to_string())?;
    ensure((scan.max - 2.25).abs() < 1e-4, || {
        format!("feasible max {}", scan.max)
    })?;
    ensure(scan.boundary, || {
        format!("argmax {:?} not on the rank boundary", scan.argmax)
    })?;
    Ok(format!(
        "10^4 rank-two samples (min ratio {lowest:.4}), feasible max {:.6}",
        scan.max
    ))
}

fn c12_hyperdet() -> Outcome {
    let mut checked = 0;
    let mut i = 0u64;
    while checked < 10_000 {
        let mut s = stream(SEED, 120_000 + i);
        i += 1;
        let nf = NormalForm222 {
            a: s.range(-1.0, 1.0),
            b: s.range(-1.0, 1.0),
            c: s.range(-1.0, 1.0),
            d: s.range(-1.0, 1.0),
        };
        if !nf.is_feasible() {
            continue;
        }
        checked += 1;
        let h = hyperdet(&embed_normal_form(&nf).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let crit = nf.d * nf.d + 4.0 * nf.a * nf.b * nf.c;
        ensure(h.signum() == crit.signum(), || {
            format!("{nf:?}: hyperdet {h} vs {crit}")
        })?;
    }
    let mut worst = 0.0f64;
    for i in 0..1000u64 {
        let mut s = stream(SEED, 130_000 + i);
        let f: Vec<Vec<f64>> = (0..3).map(|_| s.unit_vec(2)).collect();
        let t = DenseTensor::rank_one(&f).map_err(|e| e.to_string())?;
        let lam = s.range(0.5, 2.0);
        let t = DenseTensor::zeros(vec![2, 2, 2])
            .unwrap()
            .add_scaled(lam, &t)
            .unwrap();
        let h = hyperdet(&t).map_err(|e| e.to_string())?;
        worst = worst.max(h.abs());
        ensure(h.abs() < 1e-12, || {
            format!("rank-one sample {i}: hyperdet {h}")
        })?;
    }
    Ok(format!(
        "10^4 normal forms, max |hyperdet| on rank one {worst:.1e}"
    ))
}

fn c13_limit() -> Outcome {
    let mut prev: Option<(f64, f64)> = None;
    let target_ratio = (-0.5f64).exp();
    let target_dist = (1.0 - (-1.0f64).exp()).sqrt();
    let mut last = 0.0;
    for d in 3..=40 {
        let w = make_w(d).map_err(|e| e.to_string())?;
        let r = ratio(&w.tensor).map_err(|e| e.to_string())?;
        let dist = relative_distance(&w.tensor).map_err(|e| e.to_string())?;
        if let Some((pr, pd)) = prev {
            ensure(r < pr, || format!("ratio not decreasing at d={d}"))?;
            ensure(dist > pd, || format!("distance not increasing at d={d}"))?;
        }
        ensure(dist < target_dist, || {
            format!("distance {dist} overshoots at d={d}")
        })?;
        prev = Some((r, dist));
        last = r;
    }
    ensure((last - target_ratio).abs() < 0.01, || {
        format!("ratio(W_40) = {last}")
    })?;
    Ok(format!(
        "ratio(W_40) = {last:.5}, 1/sqrt(e) = {target_ratio:.5}"
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 13] = [
        ("W_d exactness", c01_wd_exactness),
        ("binary solver vs grid oracle", c02_binary_vs_grid),
        ("rank-two bound falsification", c03_rank_two_bound),
        ("uniqueness of the maximizer", c04_uniqueness),
        ("critical equation root count", c05_root_count),
        ("sum case", c06_sum_case),
        ("equal-norm case", c07_equal_case),
        ("border scan", c08_border_scan),
        ("gradient vs finite differences", c09_gradient),
        ("projection vs least-squares oracle", c10_projection),
        ("2x2x2 bound", c11_cube_bound),
        ("hyperdeterminant consistency", c12_hyperdet),
        ("large-order limit", c13_limit),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({detail}) [{t:.2?}]", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{t:.2?}]", k + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

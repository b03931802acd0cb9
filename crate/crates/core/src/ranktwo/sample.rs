//! Random parameter draws for the rank-two case analysis.

use alloc::vec::Vec;

use super::RankTwoParams;
use crate::linalg::dot;
use crate::rng::Stream;

fn unit_pair(s: &mut Stream, dim: usize) -> (Vec<f64>, Vec<f64>) {
    let u = s.unit_vec(dim);
    let mut v = s.unit_vec(dim);
    if dot(&u, &v) < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
    (u, v)
}

/// Any rank-two tensor, brought to canonical orientation.
pub fn canonical(s: &mut Stream, d: usize, dim: usize) -> RankTwoParams {
    loop {
        let alpha = s.range(-2.0, 2.0);
        let beta = s.range(-2.0, 2.0);
        let p = RankTwoParams::new(alpha, beta, s.unit_vec(dim), s.unit_vec(dim));
        if let Ok((c, _)) = p.canonical(d) {
            return c;
        }
    }
}

/// `α > β > 0`, `⟨u, v⟩ ≥ 0`.
pub fn generic(s: &mut Stream, dim: usize) -> RankTwoParams {
    let (u, v) = unit_pair(s, dim);
    let alpha = s.range(0.5, 2.0);
    let beta = alpha * s.range(0.01, 0.99);
    RankTwoParams::new(alpha, beta, u, v)
}

/// `α > 0 ≥ β`, `⟨u, v⟩ ≥ 0`.
pub fn sum_case(s: &mut Stream, dim: usize) -> RankTwoParams {
    let (u, v) = unit_pair(s, dim);
    RankTwoParams::new(s.range(0.1, 2.0), -s.range(0.01, 2.0), u, v)
}

//! Named tensors: `wd:<d>`, `ranktwo:<α>,<β>,<cosθ>,<d>`, `border:<a>,<b>,<d>`.

use rankone_core::ranktwo::{make_border, make_rank_two, make_w, BorderParams, RankTwoParams};
use rankone_core::SymTensor;

use crate::CliError;

pub fn is_builtin(s: &str) -> bool {
    ["wd:", "ranktwo:", "border:"]
        .iter()
        .any(|p| s.starts_with(p))
}

/// Comma-separated fields after the prefix, each with its 1-based column.
fn fields<'a>(s: &'a str, prefix: &str, n: usize) -> Result<Vec<(&'a str, usize)>, CliError> {
    let body = &s[prefix.len()..];
    let mut out = Vec::new();
    let mut col = prefix.len() + 1;
    for f in body.split(',') {
        out.push((f, col));
        col += f.len() + 1;
    }
    if out.len() != n {
        let at = if out.len() > n { out[n].1 } else { s.len() + 1 };
        return Err(CliError::Parse {
            position: at,
            message: format!("`{prefix}` takes {n} fields, got {}", out.len()),
        });
    }
    Ok(out)
}

fn real((f, col): (&str, usize)) -> Result<f64, CliError> {
    match f.trim().parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        _ => Err(CliError::Parse {
            position: col,
            message: format!("expected a finite number, found `{f}`"),
        }),
    }
}

fn order((f, col): (&str, usize)) -> Result<usize, CliError> {
    f.trim().parse::<usize>().map_err(|_| CliError::Parse {
        position: col,
        message: format!("expected an order, found `{f}`"),
    })
}

pub fn parse_builtin(s: &str) -> Result<SymTensor, CliError> {
    if s.starts_with("wd:") {
        let f = fields(s, "wd:", 1)?;
        let d = order(f[0])?;
        return Ok(make_w(d)?.tensor);
    }
    if s.starts_with("ranktwo:") {
        let f = fields(s, "ranktwo:", 4)?;
        let (alpha, beta, c, d) = (real(f[0])?, real(f[1])?, real(f[2])?, order(f[3])?);
        if !(-1.0..=1.0).contains(&c) {
            return Err(CliError::Parse {
                position: f[2].1,
                message: "cos(theta) must lie in [-1, 1]".into(),
            });
        }
        let v = vec![c, (1.0 - c * c).sqrt()];
        return Ok(make_rank_two(
            &RankTwoParams::new(alpha, beta, vec![1.0, 0.0], v),
            d,
        )?);
    }
    if s.starts_with("border:") {
        let f = fields(s, "border:", 3)?;
        let (a, b, d) = (real(f[0])?, real(f[1])?, order(f[2])?);
        let p = BorderParams {
            a,
            b,
            u: vec![1.0, 0.0],
            v: vec![0.0, 1.0],
        };
        return Ok(make_border(&p, d)?);
    }
    Err(CliError::Parse {
        position: 1,
        message: format!("unknown builtin `{s}`"),
    })
}

//! Frequency, amplitude and drift of a single-axis trajectory.

use crate::{DynamicsError, Result};
use serde::Serialize;
use std::f64::consts::TAU;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TremorFit {
    /// MHz (cycles per µs).
    pub frequency: f64,
    pub amplitude: f64,
    /// Slope of the linear part, units of c.
    pub drift: f64,
    pub offset: f64,
    pub periods: f64,
    pub rms_residual: f64,
}

/// Least squares over the given basis columns; returns (coefficients, SSR).
fn lsq(cols: &[Vec<f64>], y: &[f64]) -> (Vec<f64>, f64) {
    let k = cols.len();
    let mut a = vec![vec![0.0; k]; k];
    let mut b = vec![0.0; k];
    for i in 0..k {
        for j in 0..k {
            a[i][j] = cols[i].iter().zip(&cols[j]).map(|(p, q)| p * q).sum();
        }
        b[i] = cols[i].iter().zip(y).map(|(p, q)| p * q).sum();
    }
    // Gaussian elimination with partial pivoting; k ≤ 4
    for col in 0..k {
        let piv = (col..k).max_by(|&r, &s| a[r][col].abs().total_cmp(&a[s][col].abs())).unwrap();
        a.swap(col, piv);
        b.swap(col, piv);
        let d = a[col][col];
        if d == 0.0 {
            continue;
        }
        for r in col + 1..k {
            let f = a[r][col] / d;
            for cc in col..k {
                a[r][cc] -= f * a[col][cc];
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = vec![0.0; k];
    for r in (0..k).rev() {
        let s: f64 = (r + 1..k).map(|cc| a[r][cc] * x[cc]).sum();
        x[r] = if a[r][r] == 0.0 { 0.0 } else { (b[r] - s) / a[r][r] };
    }
    let ssr = y
        .iter()
        .enumerate()
        .map(|(n, yv)| {
            let f: f64 = (0..k).map(|i| x[i] * cols[i][n]).sum();
            (yv - f).powi(2)
        })
        .sum();
    (x, ssr)
}

fn sinusoid_fit(t: &[f64], y: &[f64], f: f64) -> (Vec<f64>, f64) {
    let cols = vec![
        vec![1.0; t.len()],
        t.to_vec(),
        t.iter().map(|s| (TAU * f * s).cos()).collect(),
        t.iter().map(|s| (TAU * f * s).sin()).collect(),
    ];
    lsq(&cols, y)
}

pub fn analyze_tremor(times: &[f64], x: &[f64]) -> Result<TremorFit> {
    let n = times.len();
    if n < 8 || x.len() != n {
        return Err(DynamicsError::Times("need at least 8 samples".into()));
    }
    let span = times[n - 1] - times[0];
    let (lin, ssr_lin) = lsq(&[vec![1.0; n], times.to_vec()], x);
    let resid: Vec<f64> = times.iter().zip(x).map(|(t, v)| v - lin[0] - lin[1] * t).collect();
    let scale = x.iter().fold(0.0, |m: f64, v| m.max(v.abs())).max(f64::MIN_POSITIVE);
    let r_max = resid.iter().fold(0.0, |m: f64, v| m.max(v.abs()));
    if r_max <= 1e-10 * scale.max(1.0) {
        return Ok(TremorFit {
            frequency: 0.0,
            amplitude: r_max,
            drift: lin[1],
            offset: lin[0],
            periods: 0.0,
            rms_residual: (ssr_lin / n as f64).sqrt(),
        });
    }
    let crossings = resid.windows(2).filter(|w| w[0] * w[1] < 0.0).count();
    let periods = crossings as f64 / 2.0;
    if periods < 5.0 {
        return Err(DynamicsError::InsufficientPeriods { periods });
    }
    let f0 = periods / span;
    // scan ±2/T, then golden-section on the best cell
    let grid = 81;
    let step = 4.0 / span / (grid - 1) as f64;
    let ssr = |f: f64| sinusoid_fit(times, x, f).1;
    let (mut best, mut best_v) = (f0, f64::INFINITY);
    for k in 0..grid {
        let f = f0 - 2.0 / span + step * k as f64;
        if f <= 0.0 {
            continue;
        }
        let v = ssr(f);
        if v < best_v {
            best = f;
            best_v = v;
        }
    }
    let (mut lo, mut hi) = ((best - step).max(f64::MIN_POSITIVE), best + step);
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut a = hi - g * (hi - lo);
    let mut b = lo + g * (hi - lo);
    let (mut fa, mut fb) = (ssr(a), ssr(b));
    for _ in 0..200 {
        if hi - lo < 1e-14 * best {
            break;
        }
        if fa < fb {
            hi = b;
            b = a;
            fb = fa;
            a = hi - g * (hi - lo);
            fa = ssr(a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + g * (hi - lo);
            fb = ssr(b);
        }
    }
    let f = 0.5 * (lo + hi);
    let (coef, s) = sinusoid_fit(times, x, f);
    Ok(TremorFit {
        frequency: f,
        amplitude: coef[2].hypot(coef[3]),
        drift: coef[1],
        offset: coef[0],
        periods: f * span,
        rms_residual: (s / n as f64).sqrt(),
    })
}

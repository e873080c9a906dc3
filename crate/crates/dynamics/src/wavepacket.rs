//! Deterministic momentum sampling and weighted trajectory averages.

use crate::{Result, Trajectory};
use jjdirac_core::params::MomentumKind;
use jjdirac_core::MomentumSpec;
use rayon::prelude::*;
use serde::Serialize;
use statrs::distribution::{ContinuousCDF, Normal};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentumSample {
    pub weight: f64,
    pub cp: [f64; 3],
}

/// n equal-weight samples at the quantiles (k + ½)/n of N(mean, σ²); σ is a
/// vector so the spread follows one direction in momentum space.
pub fn quantile_samples(mean: [f64; 3], sigma: [f64; 3], n: usize) -> Vec<MomentumSample> {
    if n <= 1 || sigma.iter().all(|s| *s == 0.0) {
        return vec![MomentumSample { weight: 1.0, cp: mean }];
    }
    let unit = Normal::new(0.0, 1.0).expect("standard normal");
    (0..n)
        .map(|k| {
            let xi = unit.inverse_cdf((k as f64 + 0.5) / n as f64);
            let mut cp = mean;
            for i in 0..3 {
                cp[i] += sigma[i] * xi;
            }
            MomentumSample {
                weight: 1.0 / n as f64,
                cp,
            }
        })
        .collect()
}

/// Samples for a config wavepacket: σ = width_fraction·mean per axis.
pub fn momentum_samples(spec: &MomentumSpec, mean: [f64; 3]) -> Vec<MomentumSample> {
    match spec.kind {
        MomentumKind::Point => quantile_samples(mean, [0.0; 3], 1),
        MomentumKind::Gaussian => {
            let sigma = mean.map(|m| spec.width_fraction * m);
            quantile_samples(mean, sigma, spec.samples)
        }
    }
}

/// Σ w_k x(t; p_k). Trajectories run in parallel and are summed in sample order.
pub fn wavepacket_average<F>(samples: &[MomentumSample], per_p: F) -> Result<Trajectory>
where
    F: Fn([f64; 3]) -> Result<Trajectory> + Sync,
{
    let runs: Vec<Trajectory> = samples.par_iter().map(|s| per_p(s.cp)).collect::<Result<_>>()?;
    let mut out = Trajectory {
        times: runs[0].times.clone(),
        position: vec![[0.0; 3]; runs[0].times.len()],
        max_imag: 0.0,
    };
    let wsum: f64 = samples.iter().map(|s| s.weight).sum();
    for (s, r) in samples.iter().zip(&runs) {
        out.max_imag = out.max_imag.max(r.max_imag);
        for (acc, p) in out.position.iter_mut().zip(&r.position) {
            for i in 0..3 {
                acc[i] += s.weight / wsum * p[i];
            }
        }
    }
    Ok(out)
}

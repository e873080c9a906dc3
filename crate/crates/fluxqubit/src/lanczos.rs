//! Lowest eigenpairs of a Hermitian band matrix by shift-invert Lanczos
//! with full reorthogonalization and a Rayleigh-Ritz step on the
//! unshifted matrix.

use crate::banded::BandedHermitian;
use jjdirac_core::linalg::{eigh, CMat, CVec, C64};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EigenError {
    #[error("shifted matrix not positive definite at sigma={sigma} (gershgorin [{lo}, {hi}])")]
    NotDefinite { sigma: f64, lo: f64, hi: f64 },
    #[error("eigensolver did not converge: residual {residual:e} (tolerance {tol:e}, dim {dim})")]
    NoConvergence { residual: f64, tol: f64, dim: usize },
    #[error("requested {k} eigenpairs of a {dim}-dimensional matrix")]
    TooMany { k: usize, dim: usize },
}

#[derive(Debug, Clone)]
pub struct Eigenpairs {
    pub values: Vec<f64>,
    pub vectors: Vec<CVec>,
    /// max_i ‖H v_i − λ_i v_i‖.
    pub residual: f64,
}

// Deterministic start vector with no symmetry under index reversal or
// permutation (splitmix-style hash of the index).
fn start_vector(n: usize) -> CVec {
    let mut v = CVec::from_fn(n, |i, _| {
        let mut z = (i as u64).wrapping_add(0x9e37_79b9_7f4a_7c15);
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^= z >> 31;
        let a = (z >> 11) as f64 / (1u64 << 53) as f64 - 0.5;
        let b = ((z << 7) >> 11) as f64 / (1u64 << 53) as f64 - 0.5;
        C64::new(a, b)
    });
    let nrm = v.norm();
    v /= C64::new(nrm, 0.0);
    v
}

fn orthogonalize(w: &mut CVec, basis: &[CVec]) {
    for _ in 0..2 {
        for q in basis {
            let c = q.dotc(w);
            w.axpy(-c, q, C64::new(1.0, 0.0));
        }
    }
}

fn krylov_pass(
    h: &BandedHermitian,
    sigma: f64,
    k: usize,
    m: usize,
    v0: CVec,
) -> Result<Eigenpairs, EigenError> {
    let n = h.dim();
    let chol = h.cholesky_shifted(sigma).ok_or_else(|| {
        let (lo, hi) = h.gershgorin();
        EigenError::NotDefinite { sigma, lo, hi }
    })?;
    let mut basis: Vec<CVec> = Vec::with_capacity(m);
    let mut w = v0;
    for _ in 0..m {
        orthogonalize(&mut w, &basis);
        let nrm = w.norm();
        if nrm < 1e-300 {
            break;
        }
        w /= C64::new(nrm, 0.0);
        let next = chol.solve(&w);
        basis.push(w);
        w = next;
        // invariant subspace found
        if basis.len() == n {
            break;
        }
    }
    let mcols = basis.len();
    let q = CMat::from_columns(&basis);
    let hq = CMat::from_columns(&basis.iter().map(|b| h.matvec(b)).collect::<Vec<_>>());
    let t = q.adjoint() * &hq;
    let (theta, s) = eigh(&t);
    let kk = k.min(mcols);
    let mut values = Vec::with_capacity(kk);
    let mut vectors = Vec::with_capacity(kk);
    let mut residual: f64 = 0.0;
    for i in 0..kk {
        let si = s.column(i);
        let v = &q * si;
        let hv = &hq * si;
        let r = (&hv - &v * C64::new(theta[i], 0.0)).norm();
        residual = residual.max(r);
        values.push(theta[i]);
        vectors.push(v);
    }
    Ok(Eigenpairs {
        values,
        vectors,
        residual,
    })
}

/// The `k` lowest eigenpairs of `h`, ascending. `lower_bound` must lie below
/// the spectrum (a rigorous bound from the operator norm of the potential).
pub fn lowest_eigenpairs(
    h: &BandedHermitian,
    k: usize,
    lower_bound: f64,
) -> Result<Eigenpairs, EigenError> {
    let n = h.dim();
    if k > n {
        return Err(EigenError::TooMany { k, dim: n });
    }
    let scale = h.max_abs().max(1.0);
    let tol = 1e-9 * scale;
    let m = n.min((6 * k + 40).max(60));
    let first = krylov_pass(h, lower_bound, k, m, start_vector(n))?;
    if first.residual <= tol {
        return Ok(first);
    }
    // Refine with a shift just below the current ground-state estimate.
    let gap = if first.values.len() > 1 {
        (first.values[1] - first.values[0]).max(1e-6)
    } else {
        1.0
    };
    let sigma = first.values[0] - gap.min(1.0);
    let mut v0 = first
        .vectors
        .iter()
        .fold(CVec::zeros(n), |acc, v| acc + v);
    v0 += start_vector(n) * C64::new(1e-3, 0.0);
    let second = krylov_pass(h, sigma, k, m, v0)?;
    if second.residual <= tol {
        Ok(second)
    } else {
        Err(EigenError::NoConvergence {
            residual: second.residual,
            tol,
            dim: n,
        })
    }
}

//! Anharmonic check of the harmonic approximation.
//!
//! H = 4E_C N² − E_J(cos φ + s φ) + ½E_r(φ − φ0)², diagonalized in the
//! oscillator basis of the closed-form mode centered at φ0 = arcsin s.
//! The washboard is unbounded below for E_r = 0; the finite basis keeps the
//! calculation inside the local well.

use crate::{harmonic_mode, ModeRole, PhaseError};
use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleResult {
    /// E1 − E0, GHz.
    pub omega_numeric: f64,
    /// (E2 − E1) − (E1 − E0), GHz.
    pub anharmonicity: f64,
    pub omega_closed: f64,
    pub relative_deviation: f64,
}

fn levels(ej: f64, ec: f64, bias: f64, er: f64, n: usize) -> Result<[f64; 3], PhaseError> {
    let mode = harmonic_mode(ModeRole::Phase, ej, ec, bias, er)?;
    let lam = mode.lambda;
    let phi0 = bias.asin();
    // position operator x = a + a† on an enlarged basis; functions of x are
    // evaluated there and then truncated to n to suppress edge effects
    let big = 2 * n + 20;
    let x = DMatrix::from_fn(big, big, |i, j| {
        if i + 1 == j {
            (j as f64).sqrt()
        } else if j + 1 == i {
            (i as f64).sqrt()
        } else {
            0.0
        }
    });
    let eig = SymmetricEigen::new(x.clone());
    let v = &eig.eigenvectors;
    let f = |g: &dyn Fn(f64) -> f64| -> DMatrix<f64> {
        let d = DMatrix::from_diagonal(&eig.eigenvalues.map(|t| g(t)));
        v * d * v.transpose()
    };
    // −E_J cos(φ0 + λx) − E_J s λx (constant −E_J s φ0 dropped)
    let pot = f(&|t| -ej * (phi0 + lam * t).cos() - ej * bias * lam * t);
    let p2 = DMatrix::from_fn(big, big, |i, j| {
        // (a† − a)² matrix
        let (i, j) = (i as f64, j as f64);
        if i == j {
            -(2.0 * i + 1.0)
        } else if i == j + 2.0 {
            (i * (i - 1.0)).sqrt()
        } else if j == i + 2.0 {
            (j * (j - 1.0)).sqrt()
        } else {
            0.0
        }
    });
    let x2 = &x * &x;
    // N = i(a† − a)/(2λ) ⇒ N² = −(a† − a)²/(4λ²)
    let h_big = p2 * (-4.0 * ec / (4.0 * lam * lam)) + pot + x2 * (0.5 * er * lam * lam);
    let h = h_big.view((0, 0), (n, n)).into_owned();
    let mut e: Vec<f64> = SymmetricEigen::new(h).eigenvalues.iter().cloned().collect();
    e.sort_by(f64::total_cmp);
    Ok([e[0], e[1], e[2]])
}

pub fn oracle_diagonalize(
    ej: f64,
    ec: f64,
    bias: f64,
    er: f64,
    basis_size: usize,
) -> Result<OracleResult, PhaseError> {
    if basis_size < 30 {
        return Err(PhaseError::BasisTooSmall(basis_size));
    }
    let closed = harmonic_mode(ModeRole::Phase, ej, ec, bias, er)?.omega_ghz;
    let e = levels(ej, ec, bias, er, basis_size)?;
    let e_more = levels(ej, ec, bias, er, basis_size + 10)?;
    let w = e[1] - e[0];
    let w_more = e_more[1] - e_more[0];
    let drift = ((w - w_more) / w_more).abs();
    if drift > 1e-9 {
        return Err(PhaseError::NotConverged(drift));
    }
    Ok(OracleResult {
        omega_numeric: w_more,
        anharmonicity: (e_more[2] - e_more[1]) - w_more,
        omega_closed: closed,
        relative_deviation: (w_more - closed) / closed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_limit_exact() {
        let r = oracle_diagonalize(0.0, 0.01, 0.0, 1000.0, 40).unwrap();
        assert!(r.relative_deviation.abs() < 1e-10, "{}", r.relative_deviation);
    }

    #[test]
    fn small_basis_rejected() {
        assert_eq!(oracle_diagonalize(1.0, 1.0, 0.0, 0.0, 10), Err(PhaseError::BasisTooSmall(10)));
    }
}

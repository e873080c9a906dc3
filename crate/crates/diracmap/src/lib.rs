//! Effective couplings → Dirac parameters, the D(ϑ) rotation, the boost S
//! and the standard Dirac matrix.
//!
//! Basis order is {|10⟩,|11⟩} ⊗ {|20⟩,|21⟩}: β = σz ⊗ 1, α_i = σx ⊗ σ_i.
//! Energies are MHz (E/h).

use jjdirac_core::linalg::{c, eigh, hermiticity_defect, identity, kron, max_abs, sigma_x, sigma_y, sigma_z, CMat, C64};
use serde::Serialize;
use thiserror::Error;

pub mod mapping;

pub use mapping::{map_parameters, standard_defect, DiracParameters, MappedDirac, PrintedForms, Tagged};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DiracError {
    #[error("boost undefined: mc2 = {mc2} MHz with cp0 = {cp0} MHz")]
    SingularBoost { mc2: f64, cp0: f64 },
    #[error("boost needs a 4x4 Hamiltonian, got {0}x{0}")]
    NotFourByFour(usize),
    #[error("no momentum coupling for axis {0}")]
    MissingAxis(String),
    #[error("no mass term in the effective couplings")]
    MissingMass,
}

/// A dense Hermitian Dirac-type matrix in MHz.
#[derive(Debug, Clone, PartialEq)]
pub struct DiracMatrix {
    pub matrix: CMat,
}

impl DiracMatrix {
    pub fn dimension(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        eigh(&self.matrix).0
    }

    pub fn norm(&self) -> f64 {
        max_abs(&self.matrix)
    }

    pub fn hermiticity_defect(&self) -> f64 {
        hermiticity_defect(&self.matrix)
    }
}

pub fn pauli(k: usize) -> CMat {
    match k {
        0 => identity(2),
        1 => sigma_x(),
        2 => sigma_y(),
        _ => sigma_z(),
    }
}

/// β = σz ⊗ 1 (4×4) or σz (2×2).
pub fn beta(dim: usize) -> CMat {
    if dim == 2 {
        sigma_z()
    } else {
        kron(&sigma_z(), &identity(2))
    }
}

/// α_i = σx ⊗ σ_i (4×4); in 2×2 only α_x = σx exists.
pub fn alpha(dim: usize, axis: usize) -> CMat {
    if dim == 2 {
        assert_eq!(axis, 0, "1+1D has only the x axis");
        sigma_x()
    } else {
        kron(&sigma_x(), &pauli(axis + 1))
    }
}

/// The auxiliary generator σx ⊗ σz carried by the cp0 term.
pub fn cp0_generator() -> CMat {
    kron(&sigma_x(), &sigma_z())
}

/// Coefficients h_ab of H = Σ h_ab σ_a ⊗ σ_b (4×4) or h_a σ_a (2×2).
pub fn decompose(h: &CMat) -> Vec<((usize, usize), C64)> {
    let mut out = Vec::new();
    if h.nrows() == 2 {
        for a in 0..4 {
            out.push(((a, 0), (pauli(a) * h).trace() / 2.0));
        }
    } else {
        for a in 0..4 {
            for b in 0..4 {
                let p = kron(&pauli(a), &pauli(b));
                out.push(((a, b), (p * h).trace() / 4.0));
            }
        }
    }
    out
}

/// Projection coefficient Tr(G H)/Tr(G²).
pub fn project(h: &CMat, g: &CMat) -> C64 {
    (g * h).trace() / (g * g).trace()
}

/// Eq.-6 form: β mc² + Σ α_i cp_i (2×2 when `dimension` = 1, with cp_x only).
pub fn assemble_standard(mc2: f64, cp: [f64; 3], dimension: u8) -> DiracMatrix {
    if dimension == 1 {
        return DiracMatrix {
            matrix: sigma_z() * c(mc2, 0.0) + sigma_x() * c(cp[0], 0.0),
        };
    }
    let mut m = beta(4) * c(mc2, 0.0);
    let n = if dimension == 2 { 2 } else { 3 };
    for (i, &p) in cp.iter().enumerate().take(n) {
        m += alpha(4, i) * c(p, 0.0);
    }
    DiracMatrix { matrix: m }
}

/// D(ϑ) = cos(ϑ/2) σz + sin(ϑ/2) σy; Hermitian, unitary and involutive.
pub fn d_matrix(theta: f64) -> CMat {
    let (s, co) = (0.5 * theta).sin_cos();
    let mut d = CMat::zeros(2, 2);
    d[(0, 0)] = c(co, 0.0);
    d[(0, 1)] = c(0.0, -s);
    d[(1, 0)] = c(0.0, s);
    d[(1, 1)] = c(-co, 0.0);
    d
}

/// ϑ from the first-order mass terms a σz + b σy. The arccos form is
/// blind to the sign of b; the lower branch is taken when b < 0 so that
/// the rotation always removes the σy part.
pub fn mass_angle(a: f64, b: f64) -> f64 {
    let r = (a * a + b * b).sqrt();
    if r == 0.0 {
        return 0.0;
    }
    let t = (a / r).clamp(-1.0, 1.0).acos();
    if b < 0.0 {
        -t
    } else {
        t
    }
}

/// H_I = D⁻¹(ϑ) H D(ϑ) with D acting on qubit 1.
pub fn diagonal_transform(h: &DiracMatrix, theta: f64) -> DiracMatrix {
    let d2 = d_matrix(theta);
    let d = if h.dimension() == 2 { d2 } else { kron(&d2, &identity(2)) };
    // D is involutive, D⁻¹ = D
    DiracMatrix {
        matrix: &d * &h.matrix * &d,
    }
}

/// Boost rapidity az = ½ atanh(−r/√(1+r²)), r = cp0/mc².
pub fn rapidity(mc2: f64, cp0: f64) -> Result<f64, DiracError> {
    if cp0 == 0.0 {
        return Ok(0.0);
    }
    if mc2 == 0.0 || !(cp0 / mc2).is_finite() {
        return Err(DiracError::SingularBoost { mc2, cp0 });
    }
    let r = cp0 / mc2;
    let az = 0.5 * (-r / (1.0 + r * r).sqrt()).atanh();
    if !az.is_finite() {
        return Err(DiracError::SingularBoost { mc2, cp0 });
    }
    Ok(az)
}

/// S(az) = cosh(az)·1 + sinh(az)·(iσy ⊗ σz).
pub fn s_matrix(az: f64) -> CMat {
    let (ch, sh) = (az.cosh(), az.sinh());
    let mut s = CMat::zeros(4, 4);
    for i in 0..4 {
        s[(i, i)] = c(ch, 0.0);
    }
    s[(0, 2)] = c(sh, 0.0);
    s[(1, 3)] = c(-sh, 0.0);
    s[(2, 0)] = c(-sh, 0.0);
    s[(3, 1)] = c(sh, 0.0);
    s
}

/// S⁻¹ = S(−az)/cosh(2az).
pub fn s_inverse(az: f64) -> CMat {
    s_matrix(-az) * c(1.0 / (2.0 * az).cosh(), 0.0)
}

/// Result of the boost with the coefficients read back by projection.
#[derive(Debug, Clone, PartialEq)]
pub struct Boosted {
    pub az: f64,
    pub h: DiracMatrix,
    /// Projection onto σx ⊗ σz after the boost.
    pub residual_cp0: f64,
    pub mc2: f64,
    pub cp: [f64; 3],
}

/// S⁻¹ H S with az from (mc², cp0). This is the ordering under which the
/// rapidity above cancels the σx ⊗ σz generator; S·H·S⁻¹ would double it.
pub fn lorentz_boost(h: &DiracMatrix, mc2: f64, cp0: f64) -> Result<Boosted, DiracError> {
    if h.dimension() != 4 {
        return Err(DiracError::NotFourByFour(h.dimension()));
    }
    let az = rapidity(mc2, cp0)?;
    let m = s_inverse(az) * &h.matrix * s_matrix(az);
    let out = DiracMatrix { matrix: m };
    Ok(Boosted {
        az,
        residual_cp0: project(&out.matrix, &cp0_generator()).norm(),
        mc2: project(&out.matrix, &beta(4)).re,
        cp: [0, 1, 2].map(|i| project(&out.matrix, &alpha(4, i)).re),
        h: out,
    })
}

/// Hamiltonian before the boost: standard form plus cp0·σx⊗σz.
pub fn with_cp0(standard: &DiracMatrix, cp0: f64) -> DiracMatrix {
    DiracMatrix {
        matrix: &standard.matrix + cp0_generator() * c(cp0, 0.0),
    }
}

/// Clifford relations of the extracted generators, max deviation.
pub fn clifford_defect(dim: usize) -> f64 {
    let n = if dim == 2 { 1 } else { 3 };
    let one = identity(dim);
    let b = beta(dim);
    let mut worst = max_abs(&(&b * &b - &one));
    for i in 0..n {
        let ai = alpha(dim, i);
        worst = worst.max(max_abs(&(&ai * &b + &b * &ai)));
        for j in 0..n {
            let aj = alpha(dim, j);
            let want = if i == j { &one * c(2.0, 0.0) } else { CMat::zeros(dim, dim) };
            worst = worst.max(max_abs(&(&ai * &aj + &aj * &ai - want)));
        }
    }
    worst
}

/// Plain rows of a matrix for serialization: [[re, im], ...].
pub fn matrix_rows(m: &CMat) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}

/// Generator table entries above `tol` as ("sa⊗sb", [re, im]).
pub fn generator_table(h: &CMat, tol: f64) -> Vec<(String, [f64; 2])> {
    let names = ["1", "sx", "sy", "sz"];
    decompose(h)
        .into_iter()
        .filter(|(_, v)| v.norm() > tol)
        .map(|((a, b), v)| {
            let name = if h.nrows() == 2 {
                names[a].to_string()
            } else {
                format!("{}(1) {}(2)", names[a], names[b])
            };
            (name, [v.re, v.im])
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumCheck {
    pub eigenvalues: Vec<f64>,
    pub expected_e: f64,
    pub max_deviation: f64,
}

/// Compare the spectrum with ±√((mc²)² + Σcp²).
pub fn spectrum_check(mc2: f64, cp: [f64; 3], dimension: u8) -> SpectrumCheck {
    let h = assemble_standard(mc2, cp, dimension);
    let n = match dimension {
        1 => 1,
        2 => 2,
        _ => 3,
    };
    let e = (mc2 * mc2 + cp.iter().take(n).map(|p| p * p).sum::<f64>()).sqrt();
    let vals = h.eigenvalues();
    let half = vals.len() / 2;
    let dev = vals
        .iter()
        .enumerate()
        .map(|(k, v)| (v - if k < half { -e } else { e }).abs())
        .fold(0.0, f64::max);
    SpectrumCheck {
        eigenvalues: vals,
        expected_e: e,
        max_deviation: dev,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use jjdirac_core::linalg::ZERO;

    #[test]
    fn printed_matrix_pattern() {
        let (m, px, py, pz) = (1.3, 0.2, -0.7, 0.4);
        let h = assemble_standard(m, [px, py, pz], 3).matrix;
        let z = ZERO;
        let r = |v: f64| c(v, 0.0);
        let want = [
            [r(m), z, r(pz), c(px, -py)],
            [z, r(m), c(px, py), r(-pz)],
            [r(pz), c(px, -py), r(-m), z],
            [c(px, py), r(-pz), z, r(-m)],
        ];
        for i in 0..4 {
            for j in 0..4 {
                assert!((h[(i, j)] - want[i][j]).norm() < 1e-15, "({i},{j})");
            }
        }
        // the swapped tensor order does not reproduce it
        let swapped = kron(&identity(2), &sigma_z()) * r(m) + kron(&sigma_x(), &sigma_x()) * r(px);
        assert!((swapped[(1, 1)] - want[1][1]).norm() > 1e-3);
    }

    #[test]
    fn clifford() {
        assert!(clifford_defect(4) < 1e-14);
        assert!(clifford_defect(2) < 1e-14);
    }

    #[test]
    fn s_inverse_identity() {
        for az in [-0.7, 0.0, 0.2, 1.1] {
            let p = s_matrix(az) * s_inverse(az);
            assert!(max_abs(&(p - identity(4))) < 1e-14);
            // S is real
            assert!(s_matrix(az).iter().all(|z| z.im == 0.0));
        }
    }

    #[test]
    fn d_is_unitary_involution() {
        for t in [-2.0, 0.0, 0.4, 3.0] {
            let d = d_matrix(t);
            assert!(max_abs(&(&d * &d - identity(2))) < 1e-15);
            assert!(max_abs(&(&d * d.adjoint() - identity(2))) < 1e-15);
        }
    }

    #[test]
    fn spectra() {
        let c1 = spectrum_check(5.0, [0.0; 3], 3);
        assert!(c1.max_deviation < 1e-13);
        let c2 = spectrum_check(3.0, [4.0, 0.0, 0.0], 1);
        assert!((c2.expected_e - 5.0).abs() < 1e-15 && c2.max_deviation < 1e-13);
        let c3 = spectrum_check(1.0, [1.0, 1.0, 1.0], 3);
        assert!((c3.expected_e - 2.0).abs() < 1e-15 && c3.max_deviation < 1e-13);
    }

    #[test]
    fn boost_identity_when_cp0_zero() {
        let h = assemble_standard(2.0, [0.3, 0.1, 0.2], 3);
        let b = lorentz_boost(&h, 2.0, 0.0).unwrap();
        assert_eq!(b.az, 0.0);
        assert!(max_abs(&(&b.h.matrix - &h.matrix)) < 1e-15);
    }

    #[test]
    fn boost_refused_without_mass() {
        let h = with_cp0(&assemble_standard(0.0, [0.0; 3], 3), 1.0);
        assert!(matches!(lorentz_boost(&h, 0.0, 1.0), Err(DiracError::SingularBoost { .. })));
    }
}

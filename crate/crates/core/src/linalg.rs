//! Small dense complex linear algebra on top of nalgebra.

use nalgebra::{DMatrix, DVector};

pub type C64 = nalgebra::Complex<f64>;
pub type CMat = DMatrix<C64>;
pub type CVec = DVector<C64>;

pub const I: C64 = C64::new(0.0, 1.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const ZERO: C64 = C64::new(0.0, 0.0);

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn from_rows(rows: &[&[C64]]) -> CMat {
    let n = rows.len();
    let m = rows.first().map_or(0, |r| r.len());
    CMat::from_fn(n, m, |i, j| rows[i][j])
}

pub fn real(m: &DMatrix<f64>) -> CMat {
    m.map(|x| C64::new(x, 0.0))
}

pub fn identity(n: usize) -> CMat {
    CMat::identity(n, n)
}

pub fn sigma_x() -> CMat {
    from_rows(&[&[ZERO, ONE], &[ONE, ZERO]])
}

pub fn sigma_y() -> CMat {
    from_rows(&[&[ZERO, -I], &[I, ZERO]])
}

pub fn sigma_z() -> CMat {
    from_rows(&[&[ONE, ZERO], &[ZERO, -ONE]])
}

/// Kronecker product a ⊗ b.
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

pub fn dagger(a: &CMat) -> CMat {
    a.adjoint()
}

pub fn commutator(a: &CMat, b: &CMat) -> CMat {
    a * b - b * a
}

pub fn anticommutator(a: &CMat, b: &CMat) -> CMat {
    a * b + b * a
}

/// Largest absolute entry.
pub fn max_abs(a: &CMat) -> f64 {
    a.iter().fold(0.0, |m, z| m.max(z.norm()))
}

pub fn hermiticity_defect(a: &CMat) -> f64 {
    max_abs(&(a - a.adjoint()))
}

/// Hilbert-Schmidt inner product Tr(a† b).
pub fn hs_inner(a: &CMat, b: &CMat) -> C64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

/// Rotate `v` so that its largest-magnitude component is real positive.
pub fn fix_gauge(v: &mut CVec) {
    let mut best = 0;
    let mut mag = -1.0;
    for (i, z) in v.iter().enumerate() {
        // strict comparison with a small margin keeps the choice stable
        // against rounding when two components tie
        if z.norm() > mag * (1.0 + 1e-12) {
            mag = z.norm();
            best = i;
        }
    }
    if mag > 0.0 {
        let phase = v[best].conj() / mag;
        v.iter_mut().for_each(|z| *z *= phase);
    }
}

/// Eigen-decomposition of a Hermitian matrix, ascending, gauge-fixed columns.
pub fn eigh(a: &CMat) -> (Vec<f64>, CMat) {
    let n = a.nrows();
    let sym = (a + a.adjoint()) * C64::new(0.5, 0.0);
    let eig = nalgebra::SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let vals = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vecs = CMat::zeros(n, n);
    for (k, &i) in order.iter().enumerate() {
        let mut v: CVec = eig.eigenvectors.column(i).into_owned();
        fix_gauge(&mut v);
        vecs.set_column(k, &v);
    }
    (vals, vecs)
}

/// f(A) = V f(λ) V† for Hermitian A.
pub fn hermitian_fn(a: &CMat, f: impl Fn(f64) -> C64) -> CMat {
    let (vals, v) = eigh(a);
    let d = CMat::from_diagonal(&CVec::from_iterator(vals.len(), vals.iter().map(|&x| f(x))));
    &v * d * v.adjoint()
}

/// exp(−i H t) for Hermitian H, H and t in consistent angular units.
pub fn unitary(h: &CMat, t: f64) -> CMat {
    hermitian_fn(h, |e| C64::from_polar(1.0, -e * t))
}

/// General matrix exponential (Padé, from nalgebra).
pub fn expm(a: &CMat) -> CMat {
    a.clone().exp()
}

//! Hermitian band matrices and their Cholesky factor.

use jjdirac_core::linalg::{CMat, CVec, C64};

/// Hermitian matrix stored by its lower band: entry (i, j), i ≥ j ≥ i − kd,
/// lives at `band[i * (kd + 1) + (i - j)]`.
#[derive(Debug, Clone)]
pub struct BandedHermitian {
    n: usize,
    kd: usize,
    band: Vec<C64>,
}

impl BandedHermitian {
    pub fn zeros(n: usize, kd: usize) -> Self {
        Self {
            n,
            kd,
            band: vec![C64::new(0.0, 0.0); n * (kd + 1)],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn bandwidth(&self) -> usize {
        self.kd
    }

    fn slot(&self, i: usize, j: usize) -> usize {
        debug_assert!(i >= j && i - j <= self.kd);
        i * (self.kd + 1) + (i - j)
    }

    /// Entry (i, j) for any i, j.
    pub fn get(&self, i: usize, j: usize) -> C64 {
        if i >= j {
            if i - j > self.kd {
                C64::new(0.0, 0.0)
            } else {
                self.band[self.slot(i, j)]
            }
        } else {
            self.get(j, i).conj()
        }
    }

    /// Add `v` at (i, j) and, for i ≠ j, its conjugate at (j, i).
    /// Diagonal additions keep only the real part.
    pub fn add(&mut self, i: usize, j: usize, v: C64) {
        if i == j {
            let s = self.slot(i, i);
            self.band[s] += C64::new(v.re, 0.0);
        } else if i > j {
            let s = self.slot(i, j);
            self.band[s] += v;
        } else {
            let s = self.slot(j, i);
            self.band[s] += v.conj();
        }
    }

    pub fn matvec(&self, x: &CVec) -> CVec {
        let mut y = CVec::zeros(self.n);
        for i in 0..self.n {
            let lo = i.saturating_sub(self.kd);
            let row = &self.band[i * (self.kd + 1)..(i + 1) * (self.kd + 1)];
            let mut acc = row[0] * x[i];
            for j in lo..i {
                let a = row[i - j];
                acc += a * x[j];
                y[j] += a.conj() * x[i];
            }
            y[i] += acc;
        }
        y
    }

    pub fn to_dense(&self) -> CMat {
        CMat::from_fn(self.n, self.n, |i, j| self.get(i, j))
    }

    /// Max |A_ij| over the band.
    pub fn max_abs(&self) -> f64 {
        self.band.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    /// Gershgorin interval enclosing the spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let mut radius = vec![0.0; self.n];
        for i in 0..self.n {
            for j in i.saturating_sub(self.kd)..i {
                let a = self.band[self.slot(i, j)].norm();
                radius[i] += a;
                radius[j] += a;
            }
        }
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for (i, r) in radius.iter().enumerate() {
            let d = self.band[self.slot(i, i)].re;
            lo = lo.min(d - r);
            hi = hi.max(d + r);
        }
        (lo, hi)
    }

    /// Cholesky factor of A − σI; fails when the shifted matrix is not
    /// positive definite (σ at or above the lowest eigenvalue).
    pub fn cholesky_shifted(&self, sigma: f64) -> Option<BandedCholesky> {
        let (n, kd) = (self.n, self.kd);
        let mut l = self.band.clone();
        for i in 0..n {
            l[i * (kd + 1)] -= C64::new(sigma, 0.0);
        }
        let at = |i: usize, j: usize| i * (kd + 1) + (i - j);
        for j in 0..n {
            let lo = j.saturating_sub(kd);
            let mut d = l[at(j, j)].re;
            for p in lo..j {
                d -= l[at(j, p)].norm_sqr();
            }
            if !(d > 0.0) {
                return None;
            }
            let d = d.sqrt();
            l[at(j, j)] = C64::new(d, 0.0);
            for i in j + 1..(j + kd + 1).min(n) {
                let mut s = l[at(i, j)];
                for p in i.saturating_sub(kd)..j {
                    s -= l[at(i, p)] * l[at(j, p)].conj();
                }
                l[at(i, j)] = s / d;
            }
        }
        Some(BandedCholesky { n, kd, l })
    }
}

/// Lower band factor L with A − σI = L L†.
#[derive(Debug, Clone)]
pub struct BandedCholesky {
    n: usize,
    kd: usize,
    l: Vec<C64>,
}

impl BandedCholesky {
    fn at(&self, i: usize, j: usize) -> C64 {
        self.l[i * (self.kd + 1) + (i - j)]
    }

    /// x = (A − σI)⁻¹ b.
    pub fn solve(&self, b: &CVec) -> CVec {
        let (n, kd) = (self.n, self.kd);
        let mut y = b.clone();
        for i in 0..n {
            let mut s = y[i];
            for p in i.saturating_sub(kd)..i {
                s -= self.at(i, p) * y[p];
            }
            y[i] = s / self.at(i, i).re;
        }
        for i in (0..n).rev() {
            let mut s = y[i];
            for q in i + 1..(i + kd + 1).min(n) {
                s -= self.at(q, i).conj() * y[q];
            }
            y[i] = s / self.at(i, i).re;
        }
        y
    }
}

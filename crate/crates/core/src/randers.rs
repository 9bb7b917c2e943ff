//! Left-invariant Randers metrics `F(y) = sqrt(g(y,y)) + g(Q,y)`.
//!
//! The one-form `b` is represented through its dual vector `Q`; validity
//! (`g(Q,Q) < 1`) is decided exactly.

use alloc::vec::Vec;

use nalgebra::{DMatrix, SymmetricEigen};
use num_traits::{One, Zero};

use crate::algebra::{AlgebraVector, LieAlgebra};
use crate::error::{Error, Result};
use crate::riemann::{MetricTensor, RiemannianGeometry};
use crate::scalar::{sqrt_lower, to_f64, Scalar};

/// Relative finite-difference step for second derivatives of `F²`.
pub const FD_STEP: f64 = 1e-4;

/// Bits of precision used for the rational approximation of `sqrt(g(y,y))`.
pub(crate) const SQRT_BITS: u32 = 160;

#[derive(Debug, Clone)]
pub struct RandersStructure {
    geometry: RiemannianGeometry,
    q: AlgebraVector,
    norm_q_squared: Scalar,
    gram_f: Vec<f64>,
    q_f: Vec<f64>,
}

/// Builds `F` from `(g, Q)`; fails with [`Error::NormTooLarge`] unless
/// `g(Q,Q) < 1`.
pub fn make_randers(algebra: LieAlgebra, metric: MetricTensor, q: AlgebraVector) -> Result<RandersStructure> {
    RandersStructure::new(RiemannianGeometry::new(algebra, metric)?, q)
}

impl RandersStructure {
    pub fn new(geometry: RiemannianGeometry, q: AlgebraVector) -> Result<Self> {
        q.check_dim(geometry.dim())?;
        let norm_q_squared = geometry.metric().norm_squared(&q)?;
        if norm_q_squared >= Scalar::one() {
            return Err(Error::NormTooLarge { norm_squared: norm_q_squared });
        }
        let gram_f = geometry.metric().gram_f64();
        let q_f = q.to_f64();
        Ok(Self { geometry, q, norm_q_squared, gram_f, q_f })
    }

    pub fn geometry(&self) -> &RiemannianGeometry {
        &self.geometry
    }

    pub fn algebra(&self) -> &LieAlgebra {
        self.geometry.algebra()
    }

    pub fn metric(&self) -> &MetricTensor {
        self.geometry.metric()
    }

    pub fn q(&self) -> &AlgebraVector {
        &self.q
    }

    pub fn dim(&self) -> usize {
        self.q.dim()
    }

    /// `g(Q, Q)`, always `< 1`.
    pub fn norm_q_squared(&self) -> &Scalar {
        &self.norm_q_squared
    }

    /// `b(y) = g(Q, y)`.
    pub fn one_form(&self, y: &AlgebraVector) -> Result<Scalar> {
        self.metric().inner(&self.q, y)
    }

    /// `F(y)` for an exact direction; the radicand and `b(y)` are exact.
    pub fn eval_f(&self, y: &AlgebraVector) -> Result<f64> {
        let alpha2 = self.metric().norm_squared(y)?;
        let beta = self.one_form(y)?;
        Ok(libm::sqrt(to_f64(&alpha2)) + to_f64(&beta))
    }

    /// Rational approximation of `F(y)` accurate to about `2^-160`.
    pub(crate) fn eval_f_rational(&self, y: &AlgebraVector) -> Result<Scalar> {
        let alpha2 = self.metric().norm_squared(y)?;
        let beta = self.one_form(y)?;
        Ok(sqrt_lower(&alpha2, SQRT_BITS) + beta)
    }

    /// `F(y)` for a floating-point direction.
    pub fn eval_f_f64(&self, y: &[f64]) -> Result<f64> {
        let n = self.dim();
        if y.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: y.len() });
        }
        Ok(self.f_unchecked(y))
    }

    fn f_unchecked(&self, y: &[f64]) -> f64 {
        let n = self.dim();
        let mut alpha2 = 0.0;
        let mut beta = 0.0;
        for i in 0..n {
            let row = &self.gram_f[i * n..(i + 1) * n];
            let gy: f64 = row.iter().zip(y).map(|(g, x)| g * x).sum();
            alpha2 += y[i] * gy;
            beta += self.q_f[i] * gy;
        }
        libm::sqrt(alpha2.max(0.0)) + beta
    }

    fn f2(&self, y: &[f64]) -> f64 {
        let f = self.f_unchecked(y);
        f * f
    }

    fn step(&self, y: &[f64]) -> f64 {
        let norm = libm::sqrt(y.iter().map(|x| x * x).sum::<f64>());
        FD_STEP * norm.max(1.0)
    }

    /// `½ ∂²/∂s∂t F²(y + s u + t w)` at `s = t = 0`, by a symmetric mixed
    /// central difference. Bitwise symmetric in `(u, w)`.
    fn mixed_second(&self, y: &[f64], u: &[f64], w: &[f64], h: f64) -> f64 {
        let n = self.dim();
        let mut plus = Vec::with_capacity(n);
        let mut minus = Vec::with_capacity(n);
        let at = |dir: &dyn Fn(usize) -> f64, sign: f64, buf: &mut Vec<f64>| {
            buf.clear();
            buf.extend((0..n).map(|i| y[i] + sign * h * dir(i)));
        };
        let sum = |i: usize| u[i] + w[i];
        let diff = |i: usize| u[i] - w[i];
        at(&sum, 1.0, &mut plus);
        at(&sum, -1.0, &mut minus);
        let s = self.f2(&plus) + self.f2(&minus);
        at(&diff, 1.0, &mut plus);
        at(&diff, -1.0, &mut minus);
        let d = self.f2(&plus) + self.f2(&minus);
        (s - d) / (8.0 * h * h)
    }

    /// The fundamental tensor `g_ij(y) = ½ ∂²F²/∂yⁱ∂yʲ` by central differences.
    pub fn fundamental_tensor(&self, y: &[f64]) -> Result<DMatrix<f64>> {
        let n = self.dim();
        if y.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: y.len() });
        }
        if y.iter().all(|&x| x == 0.0) {
            return Err(Error::ZeroDirection);
        }
        let h = self.step(y);
        let e = |i: usize| -> Vec<f64> { (0..n).map(|k| if k == i { 1.0 } else { 0.0 }).collect() };
        let basis: Vec<Vec<f64>> = (0..n).map(e).collect();
        let mut m = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = self.mixed_second(y, &basis[i], &basis[j], h);
                m[(i, j)] = v;
                m[(j, i)] = v;
            }
        }
        Ok(m)
    }

    /// `g_V(u, w) = ½ ∂²/∂s∂t F²(V + s u + t w)` at `s = t = 0`.
    pub fn g_v(&self, v: &[f64], u: &[f64], w: &[f64]) -> Result<f64> {
        let n = self.dim();
        for x in [v, u, w] {
            if x.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: x.len() });
            }
        }
        if v.iter().all(|&x| x == 0.0) {
            return Err(Error::ZeroDirection);
        }
        Ok(self.mixed_second(v, u, w, self.step(v)))
    }

    /// Smallest eigenvalue of the fundamental tensor at `y`.
    pub fn min_fundamental_eigenvalue(&self, y: &[f64]) -> Result<f64> {
        Ok(min_eigenvalue(self.fundamental_tensor(y)?))
    }

    /// `Q = 0`: `F` is the Riemannian norm.
    pub fn is_riemannian(&self) -> bool {
        self.q.iter().all(Zero::is_zero)
    }
}

/// Smallest eigenvalue of a symmetric matrix.
pub fn min_eigenvalue(m: DMatrix<f64>) -> f64 {
    SymmetricEigen::new(m).eigenvalues.iter().copied().fold(f64::INFINITY, f64::min)
}

/// Deterministic unit directions in `R^dim` (Euclidean in coordinates):
/// Halton points of the cube `[-1, 1]^dim`, kept inside the unit ball and
/// normalised.
pub fn sphere_directions(dim: usize, count: usize) -> Vec<Vec<f64>> {
    const PRIMES: [u32; 8] = [2, 3, 5, 7, 11, 13, 17, 19];
    assert!(dim <= PRIMES.len(), "sphere sampling supports dim <= 8");
    let radical_inverse = |mut i: u32, base: u32| -> f64 {
        let mut f = 1.0;
        let mut r = 0.0;
        while i > 0 {
            f /= base as f64;
            r += f * (i % base) as f64;
            i /= base;
        }
        r
    };
    let mut out = Vec::with_capacity(count);
    let mut i = 1u32;
    while out.len() < count {
        let p: Vec<f64> = (0..dim).map(|k| 2.0 * radical_inverse(i, PRIMES[k]) - 1.0).collect();
        i += 1;
        let r2: f64 = p.iter().map(|x| x * x).sum();
        // rejection from the cube to the ball keeps the directions uniform
        if !(1e-6..=1.0).contains(&r2) {
            continue;
        }
        let r = libm::sqrt(r2);
        out.push(p.into_iter().map(|x| x / r).collect());
    }
    out
}

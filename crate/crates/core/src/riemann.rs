//! Left-invariant Riemannian geometry at the identity.
//!
//! Curvature convention: `R(u,v)w = ∇_u ∇_v w - ∇_v ∇_u w - ∇_[u,v] w`, and the
//! sectional curvature of `span{u, v}` is `g(R(u,v)v, u) / |u ∧ v|²`, so that
//! real hyperbolic space has curvature `-1`.

use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::algebra::{AlgebraVector, LieAlgebra};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Inner product on the algebra given by its Gram matrix in the fixed basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricTensor {
    gram: Matrix,
    inverse: Matrix,
}

impl MetricTensor {
    /// Checks symmetry and positive definiteness by exact leading principal
    /// minors.
    pub fn new(gram: Matrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::DimensionMismatch { expected: gram.rows(), found: gram.cols() });
        }
        if let Some((row, col)) = gram.first_asymmetry() {
            return Err(Error::MetricNotSymmetric { row, col });
        }
        for (k, minor) in gram.leading_principal_minors().into_iter().enumerate() {
            if !minor.is_positive() {
                return Err(Error::MetricNotPositiveDefinite { order: k + 1, minor });
            }
        }
        let inverse = gram.inverse().expect("positive definite matrices are invertible");
        Ok(Self { gram, inverse })
    }

    /// The metric making the basis orthonormal.
    pub fn identity(dim: usize) -> Self {
        Self { gram: Matrix::identity(dim), inverse: Matrix::identity(dim) }
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn inverse_gram(&self) -> &Matrix {
        &self.inverse
    }

    /// `uᵀ G v`.
    pub fn inner(&self, u: &AlgebraVector, v: &AlgebraVector) -> Result<Scalar> {
        let gv = self.gram.apply(v)?;
        u.check_dim(self.dim())?;
        Ok(dot(u, &gv))
    }

    pub fn norm_squared(&self, u: &AlgebraVector) -> Result<Scalar> {
        self.inner(u, u)
    }

    /// The vector `x` with `g(x, r) = f(r)` for the covector with components
    /// `f(e_r) = covector[r]`.
    pub fn raise(&self, covector: &AlgebraVector) -> Result<AlgebraVector> {
        self.inverse.apply(covector)
    }

    /// `g(u,u) g(v,v) - g(u,v)²`, zero exactly when `u, v` are dependent.
    pub fn area_squared(&self, u: &AlgebraVector, v: &AlgebraVector) -> Result<Scalar> {
        let uu = self.inner(u, u)?;
        let vv = self.inner(v, v)?;
        let uv = self.inner(u, v)?;
        Ok(uu * vv - &uv * &uv)
    }

    pub fn gram_f64(&self) -> Vec<f64> {
        (0..self.dim())
            .flat_map(|i| self.gram.row(i).iter().map(crate::scalar::to_f64).collect::<Vec<_>>())
            .collect()
    }
}

pub(crate) fn dot(u: &[Scalar], v: &[Scalar]) -> Scalar {
    u.iter()
        .zip(v)
        .filter(|(a, b)| !a.is_zero() && !b.is_zero())
        .fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
}

fn check_same_dim(algebra: &LieAlgebra, metric: &MetricTensor) -> Result<()> {
    if algebra.dim() == metric.dim() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected: algebra.dim(), found: metric.dim() })
    }
}

/// `g(u, v)`.
pub fn inner(metric: &MetricTensor, u: &AlgebraVector, v: &AlgebraVector) -> Result<Scalar> {
    metric.inner(u, v)
}

/// Matrix of the metric transpose of `ad_v`: `g(ad*_v w, s) = g(w, [v, s])`.
pub fn ad_star(algebra: &LieAlgebra, metric: &MetricTensor, v: &AlgebraVector) -> Result<Matrix> {
    check_same_dim(algebra, metric)?;
    // A = G⁻¹ adᵀ G
    let ad = algebra.ad(v)?;
    let t = metric.inverse_gram().try_mul(&ad.transpose())?;
    t.try_mul(metric.gram())
}

/// Levi-Civita connection on left-invariant fields, `∇_{e_i} e_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectionTable {
    dim: usize,
    gamma: Vec<AlgebraVector>,
}

impl ConnectionTable {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `∇_{e_i} e_j`.
    pub fn get(&self, i: usize, j: usize) -> &AlgebraVector {
        &self.gamma[i * self.dim + j]
    }

    /// `∇_u v` for left-invariant `u`, `v`.
    pub fn covariant(&self, u: &AlgebraVector, v: &AlgebraVector) -> Result<AlgebraVector> {
        u.check_dim(self.dim)?;
        v.check_dim(self.dim)?;
        let mut out = AlgebraVector::zero(self.dim);
        for (i, ui) in u.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, vj) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                out.add_scaled(&(ui * vj), self.get(i, j));
            }
        }
        Ok(out)
    }

    /// Pairs `(i, j)` where `∇_i e_j - ∇_j e_i != [e_i, e_j]`.
    pub fn torsion_violations(&self, algebra: &LieAlgebra) -> Vec<(usize, usize)> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if &(self.get(i, j) - self.get(j, i)) != algebra.basis_bracket(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Triples `(i, j, k)` where `g(∇_i e_j, e_k) + g(e_j, ∇_i e_k) != 0`.
    pub fn metric_violations(&self, metric: &MetricTensor) -> Vec<(usize, usize, usize)> {
        let n = self.dim;
        let e = |i| AlgebraVector::basis(n, i);
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in j..n {
                    let a = metric.inner(self.get(i, j), &e(k)).expect("dims");
                    let b = metric.inner(&e(j), self.get(i, k)).expect("dims");
                    if !(a + b).is_zero() {
                        out.push((i, j, k));
                    }
                }
            }
        }
        out
    }
}

/// `∇_u v = ½([u,v] - ad*_u v - ad*_v u)` on the basis.
pub fn levi_civita(algebra: &LieAlgebra, metric: &MetricTensor) -> Result<ConnectionTable> {
    check_same_dim(algebra, metric)?;
    let n = algebra.dim();
    let ad_stars = (0..n)
        .map(|i| ad_star(algebra, metric, &AlgebraVector::basis(n, i)))
        .collect::<Result<Vec<_>>>()?;
    let half = crate::scalar::rat(1, 2);
    let mut gamma = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            // ad*_{e_i} e_j is column j of ad_stars[i]
            let mut v = algebra.basis_bracket(i, j).clone();
            v = &v - &ad_stars[i].column(j);
            v = &v - &ad_stars[j].column(i);
            gamma.push(v.scale(&half));
        }
    }
    Ok(ConnectionTable { dim: n, gamma })
}

/// `R(e_i, e_j) e_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurvatureTable {
    dim: usize,
    r: Vec<AlgebraVector>,
}

impl CurvatureTable {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &AlgebraVector {
        &self.r[(i * self.dim + j) * self.dim + k]
    }

    pub fn is_zero(&self) -> bool {
        self.r.iter().all(AlgebraVector::is_zero)
    }

    /// `R(u, v) w`, extended trilinearly.
    pub fn apply(&self, u: &AlgebraVector, v: &AlgebraVector, w: &AlgebraVector) -> Result<AlgebraVector> {
        let n = self.dim;
        u.check_dim(n)?;
        v.check_dim(n)?;
        w.check_dim(n)?;
        let nz = |x: &AlgebraVector| -> Vec<(usize, Scalar)> {
            x.iter().cloned().enumerate().filter(|(_, c)| !c.is_zero()).collect()
        };
        let (us, vs, ws) = (nz(u), nz(v), nz(w));
        let mut out = AlgebraVector::zero(n);
        for (i, ui) in &us {
            for (j, vj) in &vs {
                if i == j {
                    continue;
                }
                let uv = ui * vj;
                for (k, wk) in &ws {
                    out.add_scaled(&(&uv * wk), self.get(*i, *j, *k));
                }
            }
        }
        Ok(out)
    }

    /// `R(u,v) = -R(v,u)` on all basis triples.
    pub fn is_antisymmetric(&self) -> bool {
        let n = self.dim;
        (0..n).all(|i| {
            (0..n).all(|j| (0..n).all(|k| self.get(i, j, k) == &-self.get(j, i, k)))
        })
    }

    /// First Bianchi identity on all basis triples.
    pub fn satisfies_bianchi(&self) -> bool {
        let n = self.dim;
        (0..n).all(|i| {
            (0..n).all(|j| {
                (0..n).all(|k| {
                    let s = &(self.get(i, j, k) + self.get(j, k, i)) + self.get(k, i, j);
                    s.is_zero()
                })
            })
        })
    }
}

pub fn curvature_tensor(algebra: &LieAlgebra, conn: &ConnectionTable) -> Result<CurvatureTable> {
    let n = algebra.dim();
    if conn.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: conn.dim() });
    }
    let mut r = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            let ij = algebra.basis_bracket(i, j);
            for k in 0..n {
                let a = conn.covariant(&AlgebraVector::basis(n, i), conn.get(j, k))?;
                let b = conn.covariant(&AlgebraVector::basis(n, j), conn.get(i, k))?;
                let c = conn.covariant(ij, &AlgebraVector::basis(n, k))?;
                r.push(&(&a - &b) - &c);
            }
        }
    }
    Ok(CurvatureTable { dim: n, r })
}

/// An algebra with a metric, its Levi-Civita connection and curvature,
/// computed once.
#[derive(Debug, Clone)]
pub struct RiemannianGeometry {
    algebra: LieAlgebra,
    metric: MetricTensor,
    connection: ConnectionTable,
    curvature: CurvatureTable,
}

impl RiemannianGeometry {
    pub fn new(algebra: LieAlgebra, metric: MetricTensor) -> Result<Self> {
        let connection = levi_civita(&algebra, &metric)?;
        let curvature = curvature_tensor(&algebra, &connection)?;
        Ok(Self { algebra, metric, connection, curvature })
    }

    /// Orthonormal basis.
    pub fn orthonormal(algebra: LieAlgebra) -> Self {
        let metric = MetricTensor::identity(algebra.dim());
        Self::new(algebra, metric).expect("dimensions agree")
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn metric(&self) -> &MetricTensor {
        &self.metric
    }

    pub fn connection(&self) -> &ConnectionTable {
        &self.connection
    }

    pub fn curvature(&self) -> &CurvatureTable {
        &self.curvature
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn inner(&self, u: &AlgebraVector, v: &AlgebraVector) -> Result<Scalar> {
        self.metric.inner(u, v)
    }

    pub fn bracket(&self, u: &AlgebraVector, v: &AlgebraVector) -> Result<AlgebraVector> {
        self.algebra.bracket(u, v)
    }

    pub fn ad_star(&self, v: &AlgebraVector) -> Result<Matrix> {
        ad_star(&self.algebra, &self.metric, v)
    }

    pub fn sectional_curvature(&self, u: &AlgebraVector, v: &AlgebraVector) -> Result<Scalar> {
        let area = self.metric.area_squared(u, v)?;
        if area.is_zero() {
            return Err(Error::DegeneratePlane);
        }
        let rvv = self.curvature.apply(u, v, v)?;
        Ok(self.metric.inner(&rvv, u)? / area)
    }
}

/// Sectional curvature of `span{u, v}`. Builds the curvature table; use
/// [`RiemannianGeometry`] when evaluating many planes.
pub fn sectional_curvature(
    algebra: &LieAlgebra,
    metric: &MetricTensor,
    u: &AlgebraVector,
    v: &AlgebraVector,
) -> Result<Scalar> {
    RiemannianGeometry::new(algebra.clone(), metric.clone())?.sectional_curvature(u, v)
}

//! Douglas and Berwald classification of left-invariant Randers metrics.
//!
//! A left-invariant Randers metric built from `(g, Q)` is of Douglas type iff
//! `Q` is `g`-orthogonal to the derived algebra `[g, g]`, and of Berwald type
//! iff `Q` is parallel for the Levi-Civita connection of `g`. Both conditions
//! are linear in `Q` and are decided exactly.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::algebra::{AlgebraVector, CatalogCase, LieAlgebra, Subspace, W, X};
use crate::error::Result;
use crate::linalg::Matrix;
use crate::randers::RandersStructure;
use crate::riemann::{ConnectionTable, MetricTensor, RiemannianGeometry};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RandersClass {
    NotDouglas,
    BerwaldDouglas,
    NonBerwaldDouglas,
}

impl RandersClass {
    pub fn is_douglas(self) -> bool {
        !matches!(self, Self::NotDouglas)
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::NotDouglas => "NotDouglas",
            Self::BerwaldDouglas => "BerwaldDouglas",
            Self::NonBerwaldDouglas => "NonBerwaldDouglas",
        }
    }
}

/// Why a test failed (or that it passed).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Evidence {
    /// `Q` is orthogonal to `[g,g]` and `∇Q = 0`.
    Parallel,
    /// Basis vectors `b` of `[g,g]` with `g(Q, b) != 0`, and the products.
    NotOrthogonal(Vec<(AlgebraVector, Scalar)>),
    /// Basis indices `i` with `∇_{e_i} Q != 0`, and the derivatives.
    NotParallel(Vec<(usize, AlgebraVector)>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub class: RandersClass,
    pub evidence: Evidence,
}

/// Outcome of a single criterion; `evidence` is empty when it passes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict<T> {
    pub holds: bool,
    pub evidence: Vec<T>,
}

impl<T> Verdict<T> {
    fn from_evidence(evidence: Vec<T>) -> Self {
        Self { holds: evidence.is_empty(), evidence }
    }
}

/// Douglas test: `g(Q, b) = 0` for every basis vector `b` of `[g, g]`.
pub fn is_douglas(
    algebra: &LieAlgebra,
    metric: &MetricTensor,
    q: &AlgebraVector,
) -> Result<Verdict<(AlgebraVector, Scalar)>> {
    let derived = algebra.derived_algebra();
    let mut bad = Vec::new();
    for b in derived.basis() {
        let ip = metric.inner(q, b)?;
        if !ip.is_zero() {
            bad.push((b.clone(), ip));
        }
    }
    Ok(Verdict::from_evidence(bad))
}

/// Orthogonal complement of `[g, g]`: the directions `Q` giving Douglas metrics.
pub fn douglas_subspace(algebra: &LieAlgebra, metric: &MetricTensor) -> Result<Subspace> {
    let n = algebra.dim();
    let derived = algebra.derived_algebra();
    if derived.is_zero() {
        return Ok(Subspace::full(n));
    }
    // rows (G b)ᵀ, so that row · x = g(b, x)
    let rows = derived
        .basis()
        .iter()
        .map(|b| metric.gram().apply(b).map(AlgebraVector::into_inner))
        .collect::<Result<Vec<_>>>()?;
    let constraints = Matrix::from_rows(rows)?;
    Ok(Subspace::span(n, constraints.nullspace()))
}

fn covariant_derivatives(conn: &ConnectionTable, q: &AlgebraVector) -> Result<Vec<(usize, AlgebraVector)>> {
    let n = conn.dim();
    let mut bad = Vec::new();
    for i in 0..n {
        let d = conn.covariant(&AlgebraVector::basis(n, i), q)?;
        if !d.is_zero() {
            bad.push((i, d));
        }
    }
    Ok(bad)
}

/// Berwald test: `∇_{e_i} Q = 0` for every `i`.
pub fn is_berwald(
    algebra: &LieAlgebra,
    metric: &MetricTensor,
    q: &AlgebraVector,
) -> Result<Verdict<(usize, AlgebraVector)>> {
    let conn = crate::riemann::levi_civita(algebra, metric)?;
    Ok(Verdict::from_evidence(covariant_derivatives(&conn, q)?))
}

pub fn classify_geometry(geometry: &RiemannianGeometry, q: &AlgebraVector) -> Result<Classification> {
    let douglas = is_douglas(geometry.algebra(), geometry.metric(), q)?;
    if !douglas.holds {
        return Ok(Classification { class: RandersClass::NotDouglas, evidence: Evidence::NotOrthogonal(douglas.evidence) });
    }
    let bad = covariant_derivatives(geometry.connection(), q)?;
    Ok(if bad.is_empty() {
        Classification { class: RandersClass::BerwaldDouglas, evidence: Evidence::Parallel }
    } else {
        Classification { class: RandersClass::NonBerwaldDouglas, evidence: Evidence::NotParallel(bad) }
    })
}

pub fn classify_randers(r: &RandersStructure) -> Result<Classification> {
    classify_geometry(r.geometry(), r.q())
}

/// Douglas directions, and the Berwald directions among them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseReport {
    pub case_id: u32,
    pub douglas_subspace: Subspace,
    /// Solutions of `∇Q = 0` inside the Douglas subspace.
    pub berwald_subspace: Subspace,
}

impl CaseReport {
    /// Every Douglas direction is Berwald.
    pub fn only_berwald(&self) -> bool {
        self.berwald_subspace == self.douglas_subspace
    }

    /// Some nonzero Douglas direction is not Berwald.
    pub fn admits_non_berwald(&self) -> bool {
        self.berwald_subspace.rank() < self.douglas_subspace.rank()
    }
}

/// Solves `∇Q = 0` over the Douglas subspace of `geometry`.
pub fn case_report(case_id: u32, geometry: &RiemannianGeometry) -> Result<CaseReport> {
    let n = geometry.dim();
    let douglas = douglas_subspace(geometry.algebra(), geometry.metric())?;
    let conn = geometry.connection();
    let basis = douglas.basis();
    if basis.is_empty() {
        return Ok(CaseReport { case_id, douglas_subspace: douglas, berwald_subspace: Subspace::zero(n) });
    }
    // ∇_{e_i}(Σ α_k d_k) = Σ α_k ∇_{e_i} d_k; one row per (i, component).
    let mut derivs: Vec<Vec<AlgebraVector>> = Vec::with_capacity(basis.len());
    for d in basis {
        derivs.push(
            (0..n)
                .map(|i| conn.covariant(&AlgebraVector::basis(n, i), d))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    let mut rows = Vec::with_capacity(n * n);
    for i in 0..n {
        for l in 0..n {
            rows.push(derivs.iter().map(|dk| dk[i][l].clone()).collect::<Vec<_>>());
        }
    }
    let system = Matrix::from_rows(rows)?;
    let solutions = system.nullspace().into_iter().map(|alpha| {
        let mut v = AlgebraVector::zero(n);
        for (a, d) in alpha.iter().zip(basis) {
            v.add_scaled(a, d);
        }
        v
    });
    let berwald = Subspace::span(n, solutions);
    Ok(CaseReport { case_id, douglas_subspace: douglas, berwald_subspace: berwald })
}

/// Douglas and Berwald subspaces for the four non-abelian catalog algebras
/// with their orthonormal hyper-Hermitian metric.
pub fn reproduce_theorem() -> Vec<CaseReport> {
    CatalogCase::NON_ABELIAN
        .iter()
        .map(|&case| {
            let geometry = RiemannianGeometry::orthonormal(case.algebra());
            case_report(case.id(), &geometry).expect("catalog dimensions agree")
        })
        .collect()
}

/// The classification as stated: Douglas directions `X` (cases 1, 3, 4) or
/// `span{Z, W}` (case 2); Berwald directions `X`, `W`, none, none.
pub fn expected_case_report(case: CatalogCase) -> Option<CaseReport> {
    let e = |i| AlgebraVector::basis(4, i);
    let span = |ids: &[usize]| Subspace::span(4, ids.iter().map(|&i| e(i)));
    let (douglas, berwald) = match case {
        CatalogCase::Abelian => return None,
        CatalogCase::One => (span(&[X]), span(&[X])),
        CatalogCase::Two => (span(&[crate::algebra::Z, W]), span(&[W])),
        CatalogCase::Three | CatalogCase::Four => (span(&[X]), Subspace::zero(4)),
    };
    Some(CaseReport { case_id: case.id(), douglas_subspace: douglas, berwald_subspace: berwald })
}

//! Checks for left-invariant complex, hypercomplex and hyper-Hermitian
//! structures given as constant matrices on the Lie algebra.

use alloc::vec::Vec;

use crate::algebra::{AlgebraVector, LieAlgebra};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::riemann::MetricTensor;

/// `(J₁, J₂, J₃)` acting on the algebra in the fixed basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexStructureTriple {
    pub j1: Matrix,
    pub j2: Matrix,
    pub j3: Matrix,
}

impl ComplexStructureTriple {
    pub fn new(j1: Matrix, j2: Matrix, j3: Matrix) -> Result<Self> {
        let n = j1.rows();
        for j in [&j1, &j2, &j3] {
            if !j.is_square() || j.rows() != n {
                return Err(Error::DimensionMismatch { expected: n, found: j.rows().max(j.cols()) });
            }
        }
        Ok(Self { j1, j2, j3 })
    }

    pub fn dim(&self) -> usize {
        self.j1.rows()
    }

    pub fn as_array(&self) -> [&Matrix; 3] {
        [&self.j1, &self.j2, &self.j3]
    }
}

/// `N(u,v) = [u,v] + J[Ju,v] + J[u,Jv] - [Ju,Jv]`.
pub fn nijenhuis(algebra: &LieAlgebra, j: &Matrix, u: &AlgebraVector, v: &AlgebraVector) -> Result<AlgebraVector> {
    let n = algebra.dim();
    if !j.is_square() || j.rows() != n {
        return Err(Error::DimensionMismatch { expected: n, found: j.rows() });
    }
    let ju = j.apply(u)?;
    let jv = j.apply(v)?;
    let uv = algebra.bracket(u, v)?;
    let a = j.apply(&algebra.bracket(&ju, v)?)?;
    let b = j.apply(&algebra.bracket(u, &jv)?)?;
    let c = algebra.bracket(&ju, &jv)?;
    Ok(&(&(&uv + &a) + &b) - &c)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NijenhuisViolation {
    pub i: usize,
    pub j: usize,
    pub value: AlgebraVector,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexStructureReport {
    /// `J² = -I` exactly.
    pub square_ok: bool,
    /// `N(e_i, e_j) = 0` for all basis pairs.
    pub integrable: bool,
    /// Basis pairs `i < j` with nonzero Nijenhuis tensor.
    pub violations: Vec<NijenhuisViolation>,
}

impl ComplexStructureReport {
    pub fn passed(&self) -> bool {
        self.square_ok && self.integrable
    }
}

pub fn verify_complex_structure(algebra: &LieAlgebra, j: &Matrix) -> Result<ComplexStructureReport> {
    let n = algebra.dim();
    if !j.is_square() || j.rows() != n {
        return Err(Error::DimensionMismatch { expected: n, found: j.rows() });
    }
    let square_ok = (j * j) == -&Matrix::identity(n);
    let mut violations = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let value = nijenhuis(algebra, j, &AlgebraVector::basis(n, a), &AlgebraVector::basis(n, b))?;
            if !value.is_zero() {
                violations.push(NijenhuisViolation { i: a, j: b, value });
            }
        }
    }
    Ok(ComplexStructureReport { square_ok, integrable: violations.is_empty(), violations })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypercomplexReport {
    /// Dimension divisible by four.
    pub dim_ok: bool,
    /// `J₁J₂ = J₃`.
    pub product_ok: bool,
    /// `J₂J₁ = -J₃`.
    pub anticommute_ok: bool,
    pub structures: [ComplexStructureReport; 3],
}

impl HypercomplexReport {
    pub fn passed(&self) -> bool {
        self.dim_ok
            && self.product_ok
            && self.anticommute_ok
            && self.structures.iter().all(ComplexStructureReport::passed)
    }
}

pub fn verify_hypercomplex(algebra: &LieAlgebra, t: &ComplexStructureTriple) -> Result<HypercomplexReport> {
    let n = algebra.dim();
    if t.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: t.dim() });
    }
    let product_ok = (&t.j1 * &t.j2) == t.j3;
    let anticommute_ok = (&t.j2 * &t.j1) == -&t.j3;
    let structures = [
        verify_complex_structure(algebra, &t.j1)?,
        verify_complex_structure(algebra, &t.j2)?,
        verify_complex_structure(algebra, &t.j3)?,
    ];
    Ok(HypercomplexReport { dim_ok: n.is_multiple_of(4), product_ok, anticommute_ok, structures })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperHermitianReport {
    /// For each `Jᵢ`, the basis pairs `(a, b)` with `g(Jᵢe_a, Jᵢe_b) != g(e_a, e_b)`.
    pub violations: [Vec<(usize, usize)>; 3],
}

impl HyperHermitianReport {
    pub fn passed(&self) -> bool {
        self.violations.iter().all(Vec::is_empty)
    }
}

pub fn verify_hyper_hermitian(metric: &MetricTensor, t: &ComplexStructureTriple) -> Result<HyperHermitianReport> {
    let n = metric.dim();
    if t.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: t.dim() });
    }
    let check = |j: &Matrix| -> Result<Vec<(usize, usize)>> {
        let mut bad = Vec::new();
        for a in 0..n {
            let ea = AlgebraVector::basis(n, a);
            let ja = j.apply(&ea)?;
            for b in a..n {
                let eb = AlgebraVector::basis(n, b);
                if metric.inner(&ja, &j.apply(&eb)?)? != metric.inner(&ea, &eb)? {
                    bad.push((a, b));
                }
            }
        }
        Ok(bad)
    };
    Ok(HyperHermitianReport { violations: [check(&t.j1)?, check(&t.j2)?, check(&t.j3)?] })
}

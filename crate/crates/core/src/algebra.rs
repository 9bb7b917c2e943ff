//! Lie algebras given by exact structure constants.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Deref, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{format_scalar, rat, to_f64, Scalar};

/// Coefficients of an algebra element in the fixed basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AlgebraVector(Vec<Scalar>);

impl AlgebraVector {
    pub fn new(coeffs: Vec<Scalar>) -> Self {
        Self(coeffs)
    }

    pub fn zero(dim: usize) -> Self {
        Self(vec![Scalar::zero(); dim])
    }

    /// The `i`-th basis vector.
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[i] = Scalar::one();
        v
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self(coeffs.iter().map(|&c| rat(c, 1)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        Self(self.0.iter().map(|x| x * k).collect())
    }

    /// `self += k * other`.
    pub fn add_scaled(&mut self, k: &Scalar, other: &AlgebraVector) {
        if k.is_zero() {
            return;
        }
        for (a, b) in self.0.iter_mut().zip(other.iter()) {
            if !b.is_zero() {
                *a += k * b;
            }
        }
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(to_f64).collect()
    }

    pub fn into_inner(self) -> Vec<Scalar> {
        self.0
    }

    pub(crate) fn check_dim(&self, dim: usize) -> Result<()> {
        if self.dim() == dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: dim, found: self.dim() })
        }
    }
}

impl Deref for AlgebraVector {
    type Target = [Scalar];
    fn deref(&self) -> &[Scalar] {
        &self.0
    }
}

impl Add for &AlgebraVector {
    type Output = AlgebraVector;
    fn add(self, rhs: &AlgebraVector) -> AlgebraVector {
        AlgebraVector(self.0.iter().zip(rhs.iter()).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &AlgebraVector {
    type Output = AlgebraVector;
    fn sub(self, rhs: &AlgebraVector) -> AlgebraVector {
        AlgebraVector(self.0.iter().zip(rhs.iter()).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &AlgebraVector {
    type Output = AlgebraVector;
    fn neg(self) -> AlgebraVector {
        AlgebraVector(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Debug for AlgebraVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<_> = self.0.iter().map(format_scalar).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl fmt::Display for AlgebraVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A linear subspace in canonical form: reduced row echelon basis, rows
/// ordered by pivot column. Two subspaces are equal iff their canonical
/// bases are.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    dim: usize,
    basis: Vec<AlgebraVector>,
}

impl Subspace {
    pub fn zero(dim: usize) -> Self {
        Self { dim, basis: Vec::new() }
    }

    pub fn full(dim: usize) -> Self {
        Self::span(dim, (0..dim).map(|i| AlgebraVector::basis(dim, i)))
    }

    pub fn span<I>(dim: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = AlgebraVector>,
    {
        let rows: Vec<Vec<Scalar>> = vectors
            .into_iter()
            .inspect(|v| assert_eq!(v.dim(), dim, "spanning vector has wrong dimension"))
            .map(AlgebraVector::into_inner)
            .collect();
        if rows.is_empty() {
            return Self::zero(dim);
        }
        let m = Matrix::from_rows(rows).expect("rows of equal length");
        let (r, pivots) = m.rref();
        let basis = (0..pivots.len()).map(|i| AlgebraVector::new(r.row(i).to_vec())).collect();
        Self { dim, basis }
    }

    /// Ambient dimension.
    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Dimension of the subspace itself.
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[AlgebraVector] {
        &self.basis
    }

    pub fn contains(&self, v: &AlgebraVector) -> bool {
        let mut vs = self.basis.clone();
        vs.push(v.clone());
        Subspace::span(self.dim, vs).rank() == self.rank()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    /// Smallest subspace containing both.
    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::span(self.dim, self.basis.iter().chain(other.basis.iter()).cloned())
    }

    /// Renders the span using basis labels, e.g. `span{X, Y}` or `{0}`.
    pub fn describe(&self, labels: &[String]) -> String {
        if self.basis.is_empty() {
            return "{0}".to_string();
        }
        let parts: Vec<String> = self.basis.iter().map(|v| describe_vector(v, labels)).collect();
        let mut s = String::from("span{");
        s.push_str(&parts.join(", "));
        s.push('}');
        s
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subspace").field("dim", &self.dim).field("basis", &self.basis).finish()
    }
}

/// Linear combination in label form, e.g. `X - 1/2 Z`.
pub fn describe_vector(v: &AlgebraVector, labels: &[String]) -> String {
    let mut out = String::new();
    for (c, label) in v.iter().zip(labels) {
        if c.is_zero() {
            continue;
        }
        let neg = c < &Scalar::zero();
        let mag = if neg { -c } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !mag.is_one() {
            out.push_str(&format_scalar(&mag));
            out.push(' ');
        }
        out.push_str(label);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Finite-dimensional Lie algebra: `[e_i, e_j] = sum_k c[i][j][k] e_k`.
#[derive(Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    labels: Vec<String>,
    // brackets[i * dim + j] = [e_i, e_j]
    brackets: Vec<AlgebraVector>,
}

impl LieAlgebra {
    /// Abelian algebra with the given basis labels.
    pub fn abelian(labels: Vec<String>) -> Self {
        let dim = labels.len();
        Self { labels, brackets: vec![AlgebraVector::zero(dim); dim * dim] }
    }

    /// Builds an algebra from the full table `c[i][j][k]`. The table must be
    /// antisymmetric in `(i, j)`; the Jacobi identity is not checked here.
    pub fn from_structure_constants(labels: Vec<String>, c: Vec<Vec<Vec<Scalar>>>) -> Result<Self> {
        let dim = labels.len();
        if c.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: c.len() });
        }
        let mut brackets = Vec::with_capacity(dim * dim);
        for row in &c {
            if row.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: row.len() });
            }
            for v in row {
                if v.len() != dim {
                    return Err(Error::DimensionMismatch { expected: dim, found: v.len() });
                }
                brackets.push(AlgebraVector::new(v.clone()));
            }
        }
        let alg = Self { labels, brackets };
        alg.check_antisymmetry()?;
        Ok(alg)
    }

    /// Builds an algebra from a sparse list of brackets `[e_i, e_j] = v`.
    /// The transposed entries are filled in; unspecified pairs are zero.
    /// Listing both `(i, j)` and `(j, i)` is allowed only if consistent.
    pub fn from_brackets<I>(labels: Vec<String>, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, AlgebraVector)>,
    {
        let dim = labels.len();
        let mut brackets = vec![AlgebraVector::zero(dim); dim * dim];
        let mut set = vec![false; dim * dim];
        for (i, j, v) in entries {
            if i >= dim || j >= dim {
                return Err(Error::DimensionMismatch { expected: dim, found: i.max(j) + 1 });
            }
            v.check_dim(dim)?;
            let neg = -&v;
            for (idx, val) in [(i * dim + j, v), (j * dim + i, neg)] {
                if set[idx] && brackets[idx] != val {
                    let k = brackets[idx]
                        .iter()
                        .zip(val.iter())
                        .position(|(a, b)| a != b)
                        .unwrap_or(0);
                    return Err(Error::NotAntisymmetric { i, j, k });
                }
                brackets[idx] = val;
                set[idx] = true;
            }
        }
        let alg = Self { labels, brackets };
        alg.check_antisymmetry()?;
        Ok(alg)
    }

    fn check_antisymmetry(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in i..n {
                let a = &self.brackets[i * n + j];
                let b = &self.brackets[j * n + i];
                for k in 0..n {
                    if a[k] != -&b[k] {
                        return Err(Error::NotAntisymmetric { i, j, k });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `[e_i, e_j]`.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &AlgebraVector {
        &self.brackets[i * self.dim() + j]
    }

    /// Structure constant `c[i][j][k]`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.basis_bracket(i, j)[k]
    }

    /// Sets `[e_i, e_j] = v` and `[e_j, e_i] = -v`.
    pub fn set_bracket(&mut self, i: usize, j: usize, v: AlgebraVector) -> Result<()> {
        let n = self.dim();
        v.check_dim(n)?;
        if i == j && !v.is_zero() {
            return Err(Error::NotAntisymmetric { i, j, k: 0 });
        }
        self.brackets[j * n + i] = -&v;
        self.brackets[i * n + j] = v;
        Ok(())
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.iter().all(AlgebraVector::is_zero)
    }

    /// Bilinear extension of the structure constants.
    pub fn bracket(&self, u: &AlgebraVector, v: &AlgebraVector) -> Result<AlgebraVector> {
        let n = self.dim();
        u.check_dim(n)?;
        v.check_dim(n)?;
        let mut out = AlgebraVector::zero(n);
        for (i, ui) in u.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, vj) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                if i != j {
                    out.add_scaled(&(ui * vj), self.basis_bracket(i, j));
                }
            }
        }
        Ok(out)
    }

    /// Matrix of `ad_v = [v, .]`.
    pub fn ad(&self, v: &AlgebraVector) -> Result<Matrix> {
        let n = self.dim();
        let cols = (0..n)
            .map(|j| self.bracket(v, &AlgebraVector::basis(n, j)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_columns(n, &cols))
    }

    /// Basis triples `i < j < k` whose cyclic Jacobi sum is nonzero. Since the
    /// cyclic sum is alternating, these triples cover every case.
    pub fn jacobi_check(&self) -> Vec<JacobiViolation> {
        let n = self.dim();
        let e = |i| AlgebraVector::basis(n, i);
        let br = |a: &AlgebraVector, b: &AlgebraVector| self.bracket(a, b).expect("same dim");
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (a, b, c) = (e(i), e(j), e(k));
                    let s1 = br(&br(&a, &b), &c);
                    let s2 = br(&br(&b, &c), &a);
                    let s3 = br(&br(&c, &a), &b);
                    let residual = &(&s1 + &s2) + &s3;
                    if !residual.is_zero() {
                        out.push(JacobiViolation { i, j, k, residual });
                    }
                }
            }
        }
        out
    }

    /// `[g, g]`: span of all basis brackets.
    pub fn derived_algebra(&self) -> Subspace {
        let n = self.dim();
        let vs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
        Subspace::span(n, vs.map(|(i, j)| self.basis_bracket(i, j).clone()))
    }

    /// Index of a basis label.
    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.dim();
        let mut m = f.debug_map();
        for i in 0..n {
            for j in i + 1..n {
                let b = self.basis_bracket(i, j);
                if !b.is_zero() {
                    m.entry(
                        &alloc::format!("[{}, {}]", self.labels[i], self.labels[j]),
                        &describe_vector(b, &self.labels),
                    );
                }
            }
        }
        m.finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiViolation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    /// `[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]`
    pub residual: AlgebraVector,
}

/// The non-commutative four-dimensional algebras admitting a left-invariant
/// hyper-Hermitian metric, plus the abelian algebra. Basis `(X, Y, Z, W)` is
/// orthonormal for the hyper-Hermitian metric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CatalogCase {
    Abelian = 0,
    /// `R + su(2)`: `[Y,Z]=W, [Z,W]=Y, [W,Y]=Z`, `X` central.
    One = 1,
    /// `[X,Z]=X, [Y,Z]=Y, [X,W]=Y, [Y,W]=-X`.
    Two = 2,
    /// Real hyperbolic space: `[X,Y]=Y, [X,Z]=Z, [X,W]=W`.
    Three = 3,
    /// Complex hyperbolic space: `[X,Y]=Y, [X,Z]=Z/2, [X,W]=W/2, [Z,W]=Y/2`.
    Four = 4,
}

pub const X: usize = 0;
pub const Y: usize = 1;
pub const Z: usize = 2;
pub const W: usize = 3;

impl CatalogCase {
    pub const ALL: [CatalogCase; 5] = [Self::Abelian, Self::One, Self::Two, Self::Three, Self::Four];
    pub const NON_ABELIAN: [CatalogCase; 4] = [Self::One, Self::Two, Self::Three, Self::Four];

    pub fn from_id(id: u32) -> Result<Self> {
        match id {
            0 => Ok(Self::Abelian),
            1 => Ok(Self::One),
            2 => Ok(Self::Two),
            3 => Ok(Self::Three),
            4 => Ok(Self::Four),
            other => Err(Error::UnknownCase(other)),
        }
    }

    pub fn id(self) -> u32 {
        self as u32
    }

    pub fn algebra(self) -> LieAlgebra {
        let labels: Vec<String> = ["X", "Y", "Z", "W"].iter().map(|s| s.to_string()).collect();
        let e = |i: usize, k: Scalar| AlgebraVector::basis(4, i).scale(&k);
        let one = || Scalar::one();
        let half = || rat(1, 2);
        let entries: Vec<(usize, usize, AlgebraVector)> = match self {
            Self::Abelian => vec![],
            Self::One => vec![(Y, Z, e(W, one())), (Z, W, e(Y, one())), (W, Y, e(Z, one()))],
            Self::Two => vec![
                (X, Z, e(X, one())),
                (Y, Z, e(Y, one())),
                (X, W, e(Y, one())),
                (Y, W, e(X, -one())),
            ],
            Self::Three => vec![(X, Y, e(Y, one())), (X, Z, e(Z, one())), (X, W, e(W, one()))],
            Self::Four => vec![
                (X, Y, e(Y, one())),
                (X, Z, e(Z, half())),
                (X, W, e(W, half())),
                (Z, W, e(Y, half())),
            ],
        };
        LieAlgebra::from_brackets(labels, entries).expect("catalog tables are antisymmetric")
    }
}

/// Catalog algebra by numeric id (0 = abelian, 1..=4).
pub fn catalog(case_id: u32) -> Result<LieAlgebra> {
    CatalogCase::from_id(case_id).map(CatalogCase::algebra)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn e(i: usize) -> AlgebraVector {
        AlgebraVector::basis(4, i)
    }

    #[test]
    fn case_two_orientation() {
        let g = catalog(2).unwrap();
        assert_eq!(g.bracket(&e(X), &e(Z)).unwrap(), e(X));
        assert_eq!(g.bracket(&e(Z), &e(X)).unwrap(), -&e(X));
    }

    #[test]
    fn case_two_bracket_with_douglas_vector() {
        // [pZ + qW, aX + bY + cZ + dW] = (qb - pa) X - (pb + qa) Y
        let g = catalog(2).unwrap();
        let (p, q) = (rat(1, 2), rat(-2, 3));
        let (a, b, c, d) = (rat(3, 5), int(-1), rat(7, 4), rat(1, 9));
        let qv = AlgebraVector::new(vec![int(0), int(0), p.clone(), q.clone()]);
        let v = AlgebraVector::new(vec![a.clone(), b.clone(), c, d]);
        let expected =
            AlgebraVector::new(vec![&q * &b - &p * &a, -(&p * &b + &q * &a), int(0), int(0)]);
        assert_eq!(g.bracket(&qv, &v).unwrap(), expected);
    }

    #[test]
    fn self_bracket_vanishes() {
        let u = AlgebraVector::new(vec![rat(1, 3), int(2), rat(-5, 7), int(1)]);
        for case in CatalogCase::ALL {
            assert!(case.algebra().bracket(&u, &u).unwrap().is_zero());
        }
    }

    #[test]
    fn catalog_literals() {
        assert_eq!(catalog(1).unwrap().bracket(&e(W), &e(Y)).unwrap(), e(Z));
        assert_eq!(catalog(4).unwrap().bracket(&e(Z), &e(W)).unwrap(), e(Y).scale(&rat(1, 2)));
        assert!(catalog(0).unwrap().derived_algebra().is_zero());
        assert_eq!(catalog(5), Err(Error::UnknownCase(5)));
    }

    #[test]
    fn dimension_mismatch() {
        let g = catalog(2).unwrap();
        let short = AlgebraVector::from_ints(&[1, 0, 0]);
        assert!(matches!(g.bracket(&short, &e(X)), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn catalog_satisfies_jacobi() {
        for case in CatalogCase::ALL {
            assert!(case.algebra().jacobi_check().is_empty(), "{case:?}");
        }
    }

    #[test]
    fn corrupted_case_four_fails_jacobi() {
        // [X,Z] = Z instead of Z/2: ad_X is no longer a derivation of [Z,W].
        let mut g = catalog(4).unwrap();
        g.set_bracket(X, Z, e(Z)).unwrap();
        let v = g.jacobi_check();
        assert_eq!(v.len(), 1);
        assert_eq!((v[0].i, v[0].j, v[0].k), (X, Z, W));
        assert_eq!(v[0].residual, e(Y).scale(&rat(1, 4)));
    }

    #[test]
    fn rescaling_case_four_zw_bracket_keeps_jacobi() {
        // [Z,W] = cY satisfies Jacobi for every c: the (X,Z,W) sum is c/2 - c + c/2.
        let mut g = catalog(4).unwrap();
        g.set_bracket(Z, W, e(Y)).unwrap();
        assert!(g.jacobi_check().is_empty());
    }

    #[test]
    fn derived_algebras() {
        let span = |ids: &[usize]| Subspace::span(4, ids.iter().map(|&i| e(i)));
        assert_eq!(catalog(2).unwrap().derived_algebra(), span(&[X, Y]));
        assert_eq!(catalog(1).unwrap().derived_algebra(), span(&[Y, Z, W]));
        assert_eq!(catalog(3).unwrap().derived_algebra(), span(&[Y, Z, W]));
        assert_eq!(catalog(4).unwrap().derived_algebra(), span(&[Y, Z, W]));
    }

    #[test]
    fn inconsistent_sparse_entries_rejected() {
        let labels: Vec<String> = ["a", "b"].iter().map(|s| s.to_string()).collect();
        let r = LieAlgebra::from_brackets(
            labels,
            [
                (0, 1, AlgebraVector::from_ints(&[1, 0])),
                (1, 0, AlgebraVector::from_ints(&[1, 0])),
            ],
        );
        assert!(matches!(r, Err(Error::NotAntisymmetric { .. })));
    }

    #[test]
    fn subspace_canonical_form() {
        let a = Subspace::span(4, [AlgebraVector::from_ints(&[0, 2, 2, 0]), e(Y)]);
        let b = Subspace::span(4, [e(Z), AlgebraVector::from_ints(&[0, 3, -1, 0])]);
        assert_eq!(a, b);
        assert_eq!(a.rank(), 2);
        assert!(a.contains(&AlgebraVector::from_ints(&[0, 5, 7, 0])));
        assert!(!a.contains(&e(X)));
        let labels: Vec<String> = ["X", "Y", "Z", "W"].iter().map(|s| s.to_string()).collect();
        assert_eq!(a.describe(&labels), "span{Y, Z}");
        assert_eq!(Subspace::zero(4).describe(&labels), "{0}");
    }
}

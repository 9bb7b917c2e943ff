//! Flag curvature of left-invariant Randers metrics of Douglas type.
//!
//! For `F = α + β` with `β(y) = g(Q, y)` and `Q ⊥ [g, g]`,
//!
//! ```text
//! K^F(P, V) = g(V,V)/F(V)² · K^g(P)
//!           + (3 g(U(V,V),Q)² - 4 F(V) g(U(V,U(V,V)),Q)) / (4 F(V)⁴)
//! ```
//!
//! where `U` is the symmetric bilinear map `2g(U(V,S),R) = g([R,V],S) + g([R,S],V)`.
//! Rewriting `U` through brackets and `ad*` gives the equivalent form
//!
//! ```text
//! (3 g([Q,V],V)² - 2 F(V) (g([[Q,V],V],V) - g(V,[Q,ad*_V V]))) / (4 F(V)⁴)
//! ```
//!
//! for the second term. Both depend on the plane `P = span{U, V}` only
//! through `K^g(P)`.
//!
//! All bracket and inner-product terms are exact. `F(V)` is replaced by a
//! rational approximation of its square root to 160 bits, so every formula is
//! evaluated as an exact rational function and rounded once.

use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::algebra::{AlgebraVector, CatalogCase, LieAlgebra, Subspace, W, Z};
use crate::classify::is_douglas;
use crate::error::{Error, Result};
use crate::randers::RandersStructure;
use crate::riemann::{MetricTensor, RiemannianGeometry};
use crate::scalar::{int, to_f64, Scalar};

/// A flag with pole `v` in the plane `span{u, v}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flag {
    v: AlgebraVector,
    u: AlgebraVector,
}

impl Flag {
    pub fn new(v: AlgebraVector, u: AlgebraVector) -> Result<Self> {
        if v.dim() != u.dim() {
            return Err(Error::DimensionMismatch { expected: v.dim(), found: u.dim() });
        }
        if Subspace::span(v.dim(), [v.clone(), u.clone()]).rank() != 2 {
            return Err(Error::DegeneratePlane);
        }
        Ok(Self { v, u })
    }

    pub fn pole(&self) -> &AlgebraVector {
        &self.v
    }

    pub fn transverse(&self) -> &AlgebraVector {
        &self.u
    }

    /// The same plane and pole with another transverse vector `a u + b v`.
    pub fn recomplete(&self, a: &Scalar, b: &Scalar) -> Result<Self> {
        let mut u = self.u.scale(a);
        u.add_scaled(b, &self.v);
        Flag::new(self.v.clone(), u)
    }

    /// Pole scaled by `lambda`, same plane.
    pub fn scale_pole(&self, lambda: &Scalar) -> Result<Self> {
        Flag::new(self.v.scale(lambda), self.u.clone())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FlagCurvatureResult {
    pub k_f: f64,
    /// Sectional curvature of the plane for the underlying Riemannian metric.
    pub k_g: f64,
    /// The `1/(4F⁴)(...)` term.
    pub correction: f64,
    pub f_value: f64,
    /// `g(V, V)`.
    pub g_vv: f64,
}

/// Exact counterpart of [`FlagCurvatureResult`], with `F` approximated by a
/// rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactFlagCurvature {
    pub k_f: Scalar,
    pub k_g: Scalar,
    pub correction: Scalar,
    pub f_value: Scalar,
    pub g_vv: Scalar,
}

impl ExactFlagCurvature {
    pub fn to_f64(&self) -> FlagCurvatureResult {
        FlagCurvatureResult {
            k_f: to_f64(&self.k_f),
            k_g: to_f64(&self.k_g),
            correction: to_f64(&self.correction),
            f_value: to_f64(&self.f_value),
            g_vv: to_f64(&self.g_vv),
        }
    }
}

/// `U(v, s)`: the vector with `2 g(U(v,s), r) = g([r,v],s) + g([r,s],v)` for
/// all `r`, solved through the inverse Gram matrix.
pub fn u_map(algebra: &LieAlgebra, metric: &MetricTensor, v: &AlgebraVector, s: &AlgebraVector) -> Result<AlgebraVector> {
    let n = algebra.dim();
    let half = crate::scalar::rat(1, 2);
    let mut covector = Vec::with_capacity(n);
    for r in 0..n {
        let e = AlgebraVector::basis(n, r);
        let a = metric.inner(&algebra.bracket(&e, v)?, s)?;
        let b = metric.inner(&algebra.bracket(&e, s)?, v)?;
        covector.push((a + b) * &half);
    }
    metric.raise(&AlgebraVector::new(covector))
}

/// The three inner products entering the bracket form of the formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketTerms {
    /// `g([Q,V], V)`
    pub qv_v: Scalar,
    /// `g([[Q,V],V], V)`
    pub qvv_v: Scalar,
    /// `g(V, [Q, ad*_V V])`
    pub v_q_adv: Scalar,
}

pub fn bracket_terms(geometry: &RiemannianGeometry, q: &AlgebraVector, v: &AlgebraVector) -> Result<BracketTerms> {
    let qv = geometry.bracket(q, v)?;
    let qv_v = geometry.inner(&qv, v)?;
    let qvv_v = geometry.inner(&geometry.bracket(&qv, v)?, v)?;
    let adv_v = geometry.ad_star(v)?.apply(v)?;
    let v_q_adv = geometry.inner(v, &geometry.bracket(q, &adv_v)?)?;
    Ok(BracketTerms { qv_v, qvv_v, v_q_adv })
}

/// `g(U(V,V), Q)` and `g(U(V, U(V,V)), Q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UMapTerms {
    pub u_vv_q: Scalar,
    pub u_v_uvv_q: Scalar,
}

pub fn u_map_terms(geometry: &RiemannianGeometry, q: &AlgebraVector, v: &AlgebraVector) -> Result<UMapTerms> {
    let (alg, metric) = (geometry.algebra(), geometry.metric());
    let uvv = u_map(alg, metric, v, v)?;
    let u_v_uvv = u_map(alg, metric, v, &uvv)?;
    Ok(UMapTerms { u_vv_q: metric.inner(&uvv, q)?, u_v_uvv_q: metric.inner(&u_v_uvv, q)? })
}

/// A Randers structure known to be of Douglas type.
#[derive(Debug, Clone, Copy)]
pub struct DouglasRanders<'a> {
    r: &'a RandersStructure,
}

impl<'a> DouglasRanders<'a> {
    pub fn new(r: &'a RandersStructure) -> Result<Self> {
        if is_douglas(r.algebra(), r.metric(), r.q())?.holds {
            Ok(Self { r })
        } else {
            Err(Error::NotDouglas)
        }
    }

    pub fn structure(&self) -> &RandersStructure {
        self.r
    }

    fn check(&self, flag: &Flag) -> Result<()> {
        flag.v.check_dim(self.r.dim())
    }

    /// `g(V,V)/F² · K^g + (3 a² - c F) / (4 F⁴)`.
    fn assemble(&self, flag: &Flag, a: Scalar, c: Scalar) -> Result<ExactFlagCurvature> {
        let geometry = self.r.geometry();
        let k_g = geometry.sectional_curvature(&flag.u, &flag.v)?;
        let g_vv = geometry.inner(&flag.v, &flag.v)?;
        let f = self.r.eval_f_rational(&flag.v)?;
        let f2 = &f * &f;
        let f4 = &f2 * &f2;
        let correction = (int(3) * &a * &a - c * &f) / (int(4) * f4);
        let k_f = &g_vv / &f2 * &k_g + &correction;
        Ok(ExactFlagCurvature { k_f, k_g, correction, f_value: f, g_vv })
    }

    pub fn deng_hou_exact(&self, flag: &Flag) -> Result<ExactFlagCurvature> {
        self.check(flag)?;
        let t = u_map_terms(self.r.geometry(), self.r.q(), &flag.v)?;
        self.assemble(flag, t.u_vv_q, int(4) * t.u_v_uvv_q)
    }

    pub fn simplified_exact(&self, flag: &Flag) -> Result<ExactFlagCurvature> {
        self.check(flag)?;
        let t = bracket_terms(self.r.geometry(), self.r.q(), &flag.v)?;
        self.assemble(flag, t.qv_v, int(2) * (t.qvv_v - t.v_q_adv))
    }
}

/// Flag curvature through the `U`-map form.
pub fn flag_curvature_deng_hou(r: &RandersStructure, flag: &Flag) -> Result<FlagCurvatureResult> {
    Ok(DouglasRanders::new(r)?.deng_hou_exact(flag)?.to_f64())
}

/// Flag curvature through brackets and `ad*`.
pub fn flag_curvature_simplified(r: &RandersStructure, flag: &Flag) -> Result<FlagCurvatureResult> {
    Ok(DouglasRanders::new(r)?.simplified_exact(flag)?.to_f64())
}

/// Closed-form flag curvature on the catalog algebras with orthonormal
/// basis, for `Q = pZ + qW` (case 2) or `Q = qX` (cases 3 and 4; `p` must be
/// zero), pole `V = aX + bY + cZ + dW` and a given `K^g`.
pub fn flag_curvature_case(case: CatalogCase, p: f64, q: f64, v: [f64; 4], k_g: f64) -> Result<FlagCurvatureResult> {
    let [a, b, c, d] = v;
    let g_vv = a * a + b * b + c * c + d * d;
    if g_vv == 0.0 {
        return Err(Error::ZeroDirection);
    }
    let alpha = libm::sqrt(g_vv);
    let (f, numerator) = match case {
        CatalogCase::Two => {
            if p * p + q * q >= 1.0 {
                return Err(Error::InvalidParameters("case 2 requires p² + q² < 1"));
            }
            let f = alpha + p * c + q * d;
            let s = a * a + b * b;
            (f, 3.0 * p * p * s * s + 4.0 * c * p * f * s)
        }
        CatalogCase::Three | CatalogCase::Four => {
            if q.abs() >= 1.0 {
                return Err(Error::InvalidParameters("cases 3 and 4 require |q| < 1"));
            }
            if p != 0.0 {
                return Err(Error::InvalidParameters("cases 3 and 4 take Q = qX, p must be 0"));
            }
            let f = alpha + q * a;
            let num = if case == CatalogCase::Three {
                let s = b * b + c * c + d * d;
                3.0 * q * q * s * s + 4.0 * a * q * f * s
            } else {
                let s = 2.0 * b * b + c * c + d * d;
                0.75 * q * q * s * s + a * q * f * (4.0 * b * b + c * c + d * d)
            };
            (f, num)
        }
        CatalogCase::Abelian | CatalogCase::One => {
            return Err(Error::InvalidParameters("closed forms exist for cases 2, 3 and 4 only"));
        }
    };
    let correction = numerator / (4.0 * f * f * f * f);
    Ok(FlagCurvatureResult { k_f: g_vv / (f * f) * k_g + correction, k_g, correction, f_value: f, g_vv })
}

/// Directions in which the flag curvature and the sectional curvature share
/// their sign: `span{Z, W}` for case 2, `span{Q}` for cases 3 and 4.
pub fn corollary_span(case: CatalogCase, q: &AlgebraVector) -> Option<Subspace> {
    match case {
        CatalogCase::Two => Some(Subspace::span(4, [AlgebraVector::basis(4, Z), AlgebraVector::basis(4, W)])),
        CatalogCase::Three | CatalogCase::Four => Some(Subspace::span(4, [q.clone()])),
        CatalogCase::Abelian | CatalogCase::One => None,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SignCounterexample {
    pub index: usize,
    pub k_f: f64,
    pub k_g: f64,
    pub correction: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SignReport {
    pub case_id: u32,
    /// Flags whose pole lies in the corollary span.
    pub checked: usize,
    /// Flags outside the span; no sign guarantee applies to them.
    pub excluded: usize,
    pub max_abs_correction: f64,
    pub counterexamples: Vec<SignCounterexample>,
}

impl SignReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty() && self.max_abs_correction <= 1e-12
    }
}

/// Checks, for every flag whose pole lies in the corollary span, that the
/// correction term vanishes and `sign K^F = sign K^g`.
pub fn sign_analysis(r: &RandersStructure, case: CatalogCase, flags: &[Flag]) -> Result<SignReport> {
    let span = corollary_span(case, r.q())
        .ok_or(Error::InvalidParameters("sign analysis applies to cases 2, 3 and 4"))?;
    let douglas = DouglasRanders::new(r)?;
    let mut report = SignReport {
        case_id: case.id(),
        checked: 0,
        excluded: 0,
        max_abs_correction: 0.0,
        counterexamples: Vec::new(),
    };
    for (index, flag) in flags.iter().enumerate() {
        if !span.contains(flag.pole()) {
            report.excluded += 1;
            continue;
        }
        report.checked += 1;
        let exact = douglas.simplified_exact(flag)?;
        let approx = exact.to_f64();
        report.max_abs_correction = report.max_abs_correction.max(approx.correction.abs());
        if exact.k_f.signum() != exact.k_g.signum() || !exact.correction.is_zero() {
            report.counterexamples.push(SignCounterexample {
                index,
                k_f: approx.k_f,
                k_g: approx.k_g,
                correction: approx.correction,
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{catalog, X, Y};
    use crate::randers::make_randers;
    use crate::scalar::rat;

    fn e(i: usize) -> AlgebraVector {
        AlgebraVector::basis(4, i)
    }

    fn randers(case: u32, q: AlgebraVector) -> RandersStructure {
        make_randers(catalog(case).unwrap(), MetricTensor::identity(4), q).unwrap()
    }

    #[test]
    fn u_map_examples() {
        let id = MetricTensor::identity(4);
        let flat = catalog(0).unwrap();
        assert!(u_map(&flat, &id, &e(X), &e(Y)).unwrap().is_zero());

        let g2 = catalog(2).unwrap();
        assert_eq!(u_map(&g2, &id, &e(X), &e(X)).unwrap(), -&e(Z));

        let v = AlgebraVector::new(vec![rat(1, 2), int(-1), rat(2, 3), int(3)]);
        let s = AlgebraVector::new(vec![int(2), rat(1, 7), int(0), rat(-5, 4)]);
        for case in CatalogCase::ALL {
            let alg = case.algebra();
            assert_eq!(u_map(&alg, &id, &v, &s).unwrap(), u_map(&alg, &id, &s, &v).unwrap());
        }
    }

    #[test]
    fn flag_rejects_dependent_vectors() {
        assert_eq!(Flag::new(e(X), e(X).scale(&int(3))), Err(Error::DegeneratePlane));
        assert_eq!(Flag::new(AlgebraVector::zero(4), e(X)), Err(Error::DegeneratePlane));
    }

    #[test]
    fn not_douglas_is_rejected() {
        let r = randers(2, e(X).scale(&rat(1, 2)));
        let flag = Flag::new(e(Z), e(W)).unwrap();
        assert_eq!(flag_curvature_deng_hou(&r, &flag), Err(Error::NotDouglas));
        assert_eq!(flag_curvature_simplified(&r, &flag), Err(Error::NotDouglas));
    }

    #[test]
    fn riemannian_reduction() {
        let r = randers(4, AlgebraVector::zero(4));
        let flag = Flag::new(AlgebraVector::from_ints(&[1, 2, -1, 3]), AlgebraVector::from_ints(&[0, 1, 1, 0])).unwrap();
        let exact = DouglasRanders::new(&r).unwrap().deng_hou_exact(&flag).unwrap();
        assert!(exact.correction.is_zero());
        let k = exact.to_f64();
        assert!((k.k_f - k.k_g).abs() <= 1e-12 * k.k_g.abs());
    }

    #[test]
    fn hyperbolic_pole_along_q() {
        let r = randers(3, e(X).scale(&rat(1, 2)));
        for u in [e(Y), e(Z), AlgebraVector::from_ints(&[1, 1, 2, -3])] {
            let flag = Flag::new(e(X), u).unwrap();
            let exact = DouglasRanders::new(&r).unwrap().deng_hou_exact(&flag).unwrap();
            assert!(exact.correction.is_zero());
            assert!((to_f64(&exact.k_f) + 4.0 / 9.0).abs() < 1e-15);
        }
    }

    #[test]
    fn case_closed_forms() {
        let k = flag_curvature_case(CatalogCase::Two, 0.5, 0.0, [1.0, 0.0, 0.0, 0.0], 0.3).unwrap();
        assert!((k.correction - 3.0 / 16.0).abs() < 1e-15);
        assert!((k.k_f - (0.3 + 3.0 / 16.0)).abs() < 1e-15);

        let k = flag_curvature_case(CatalogCase::Three, 0.0, 0.5, [1.0, 0.0, 0.0, 0.0], -1.0).unwrap();
        assert_eq!(k.f_value, 1.5);
        assert!((k.k_f + 4.0 / 9.0).abs() < 1e-15);

        let k = flag_curvature_case(CatalogCase::Four, 0.0, 0.5, [0.0, 1.0, 0.0, 0.0], 0.0).unwrap();
        assert_eq!(k.f_value, 1.0);
        assert!((k.correction - 3.0 / 16.0).abs() < 1e-15);

        assert!(flag_curvature_case(CatalogCase::Two, 0.8, 0.6, [1.0, 0.0, 0.0, 0.0], 0.0).is_err());
        assert!(flag_curvature_case(CatalogCase::Three, 0.0, -1.0, [1.0, 0.0, 0.0, 0.0], 0.0).is_err());
        assert!(flag_curvature_case(CatalogCase::One, 0.0, 0.5, [1.0, 0.0, 0.0, 0.0], 0.0).is_err());
    }

    #[test]
    fn sign_examples() {
        let r = randers(2, e(Z).scale(&rat(1, 2)));
        let flags = [Flag::new(e(Z), e(W)).unwrap(), Flag::new(e(X), e(Y)).unwrap()];
        let rep = sign_analysis(&r, CatalogCase::Two, &flags).unwrap();
        assert_eq!((rep.checked, rep.excluded), (1, 1));
        assert!(rep.passed());

        let outside = DouglasRanders::new(&r).unwrap().simplified_exact(&flags[1]).unwrap();
        assert!(!outside.correction.is_zero());

        let r3 = randers(3, e(X).scale(&rat(1, 2)));
        let rep = sign_analysis(&r3, CatalogCase::Three, &[Flag::new(e(X), e(W)).unwrap()]).unwrap();
        assert!(rep.passed() && rep.checked == 1);
        let k = flag_curvature_simplified(&r3, &Flag::new(e(X), e(W)).unwrap()).unwrap();
        assert!(k.k_f < 0.0 && k.k_g < 0.0);
    }

    #[test]
    fn result_is_internally_consistent() {
        let r = randers(2, AlgebraVector::new(vec![int(0), int(0), rat(1, 3), rat(-1, 4)]));
        let flag = Flag::new(AlgebraVector::from_ints(&[2, -1, 1, 1]), AlgebraVector::from_ints(&[0, 1, 3, 0])).unwrap();
        let k = flag_curvature_deng_hou(&r, &flag).unwrap();
        let rebuilt = k.g_vv / (k.f_value * k.f_value) * k.k_g + k.correction;
        assert!((rebuilt - k.k_f).abs() <= 1e-12 * k.k_f.abs());
    }
}

use proptest::prelude::*;

use randers_core::algebra::{catalog, AlgebraVector, CatalogCase, Subspace};
use randers_core::classify::{classify_geometry, douglas_subspace, is_berwald, is_douglas};
use randers_core::flag::{u_map, DouglasRanders, Flag};
use randers_core::hypercomplex::nijenhuis;
use randers_core::linalg::Matrix;
use randers_core::randers::{make_randers, RandersStructure};
use randers_core::riemann::{MetricTensor, RiemannianGeometry};
use randers_core::scalar::{rat, Scalar};

fn scalar() -> impl Strategy<Value = Scalar> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

fn vector() -> impl Strategy<Value = AlgebraVector> {
    prop::collection::vec(scalar(), 4).prop_map(AlgebraVector::new)
}

fn case() -> impl Strategy<Value = CatalogCase> {
    prop::sample::select(CatalogCase::ALL.to_vec())
}

/// A non-orthonormal metric: `Aᵀ A + I` for a small integer `A`.
fn metric() -> impl Strategy<Value = MetricTensor> {
    prop::collection::vec(-2i64..=2, 16).prop_map(|a| {
        let a = Matrix::from_rows(
            (0..4).map(|i| (0..4).map(|j| rat(a[i * 4 + j], 1)).collect()).collect(),
        )
        .unwrap();
        let gram = &(&a.transpose() * &a) + &Matrix::identity(4);
        MetricTensor::new(gram).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bracket_is_antisymmetric(c in case(), u in vector(), v in vector()) {
        let g = c.algebra();
        let uv = g.bracket(&u, &v).unwrap();
        let vu = g.bracket(&v, &u).unwrap();
        prop_assert!((&uv + &vu).is_zero());
    }

    #[test]
    fn bracket_is_bilinear(c in case(), u in vector(), w in vector(), v in vector(), a in scalar(), b in scalar()) {
        let g = c.algebra();
        let mut lhs_arg = u.scale(&a);
        lhs_arg.add_scaled(&b, &w);
        let lhs = g.bracket(&lhs_arg, &v).unwrap();
        let mut rhs = g.bracket(&u, &v).unwrap().scale(&a);
        rhs.add_scaled(&b, &g.bracket(&w, &v).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn derived_algebra_is_canonical(c in case()) {
        let g = c.algebra();
        let d = g.derived_algebra();
        prop_assert_eq!(Subspace::span(4, d.basis().to_vec()), d.clone());
        for i in 0..4 {
            for j in 0..4 {
                prop_assert!(d.contains(g.basis_bracket(i, j)));
            }
        }
    }

    #[test]
    fn connection_and_curvature_identities(c in case(), m in metric()) {
        let geo = RiemannianGeometry::new(c.algebra(), m).unwrap();
        prop_assert!(geo.connection().torsion_violations(geo.algebra()).is_empty());
        prop_assert!(geo.connection().metric_violations(geo.metric()).is_empty());
        prop_assert!(geo.curvature().is_antisymmetric());
        prop_assert!(geo.curvature().satisfies_bianchi());
    }

    #[test]
    fn curvature_pair_symmetry(c in case(), u in vector(), v in vector(), w in vector(), s in vector()) {
        let geo = RiemannianGeometry::orthonormal(c.algebra());
        let r = geo.curvature();
        let lhs = geo.inner(&r.apply(&u, &v, &w).unwrap(), &s).unwrap();
        let rhs = geo.inner(&r.apply(&w, &s, &u).unwrap(), &v).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn sectional_curvature_depends_on_plane_only(
        c in case(), m in metric(), u in vector(), v in vector(),
        a in scalar(), b in scalar(), cc in scalar(), d in scalar(),
    ) {
        let det = &a * &d - &b * &cc;
        prop_assume!(det != rat(0, 1));
        let geo = RiemannianGeometry::new(c.algebra(), m).unwrap();
        let Ok(k) = geo.sectional_curvature(&u, &v) else { return Ok(()); };
        let mut u2 = u.scale(&a);
        u2.add_scaled(&b, &v);
        let mut v2 = u.scale(&cc);
        v2.add_scaled(&d, &v);
        prop_assert_eq!(geo.sectional_curvature(&u2, &v2).unwrap(), k);
    }

    #[test]
    fn hyperbolic_case_has_constant_curvature(u in vector(), v in vector()) {
        let geo = RiemannianGeometry::orthonormal(catalog(3).unwrap());
        if let Ok(k) = geo.sectional_curvature(&u, &v) {
            prop_assert_eq!(k, rat(-1, 1));
        }
    }

    #[test]
    fn nijenhuis_is_antisymmetric(c in case(), entries in prop::collection::vec(-2i64..=2, 16), u in vector(), v in vector()) {
        let j = Matrix::from_rows((0..4).map(|r| (0..4).map(|k| rat(entries[r * 4 + k], 1)).collect()).collect()).unwrap();
        let g = c.algebra();
        let a = nijenhuis(&g, &j, &u, &v).unwrap();
        let b = nijenhuis(&g, &j, &v, &u).unwrap();
        prop_assert!((&a + &b).is_zero());
    }

    #[test]
    fn berwald_implies_douglas(c in case(), m in metric(), q in vector()) {
        let g = c.algebra();
        if is_berwald(&g, &m, &q).unwrap().holds {
            prop_assert!(is_douglas(&g, &m, &q).unwrap().holds);
        }
    }

    #[test]
    fn douglas_directions_classify_as_douglas(c in case(), coeffs in prop::collection::vec(scalar(), 4)) {
        let g = c.algebra();
        let m = MetricTensor::identity(4);
        let d = douglas_subspace(&g, &m).unwrap();
        let mut q = AlgebraVector::zero(4);
        for (k, b) in coeffs.iter().zip(d.basis()) {
            q.add_scaled(k, b);
        }
        prop_assert!(is_douglas(&g, &m, &q).unwrap().holds);
    }

    #[test]
    fn class_is_scale_invariant(c in case(), q in vector(), lambda in scalar()) {
        prop_assume!(lambda != rat(0, 1));
        let geo = RiemannianGeometry::orthonormal(c.algebra());
        let a = classify_geometry(&geo, &q).unwrap().class;
        let b = classify_geometry(&geo, &q.scale(&lambda)).unwrap().class;
        prop_assert_eq!(a, b);
    }

    #[test]
    fn douglas_and_derived_span_everything(c in case(), m in metric()) {
        let g = c.algebra();
        let d = douglas_subspace(&g, &m).unwrap();
        let derived = g.derived_algebra();
        prop_assert_eq!(d.rank() + derived.rank(), 4);
        prop_assert_eq!(d.sum(&derived), Subspace::full(4));
    }

    #[test]
    fn u_map_is_symmetric_and_bilinear(c in case(), m in metric(), v in vector(), s in vector(), t in vector(), a in scalar()) {
        let g = c.algebra();
        prop_assert_eq!(u_map(&g, &m, &v, &s).unwrap(), u_map(&g, &m, &s, &v).unwrap());
        let mut st = s.scale(&a);
        st.add_scaled(&rat(1, 1), &t);
        let mut rhs = u_map(&g, &m, &v, &s).unwrap().scale(&a);
        rhs.add_scaled(&rat(1, 1), &u_map(&g, &m, &v, &t).unwrap());
        prop_assert_eq!(u_map(&g, &m, &v, &st).unwrap(), rhs);
    }

    #[test]
    fn randers_homogeneity(c in case(), y in vector(), lambda in (1i64..=20, 1i64..=7)) {
        let r = make_randers(c.algebra(), MetricTensor::identity(4), AlgebraVector::new(vec![rat(1, 3), rat(0, 1), rat(-1, 4), rat(1, 5)])).unwrap();
        let l = rat(lambda.0, lambda.1);
        let f = r.eval_f(&y).unwrap();
        let fl = r.eval_f(&y.scale(&l)).unwrap();
        let lf = lambda.0 as f64 / lambda.1 as f64;
        prop_assert!((fl * fl - lf * lf * f * f).abs() <= 1e-12 * (lf * lf * f * f).max(f64::MIN_POSITIVE));
        if !y.is_zero() {
            prop_assert!(f > 0.0);
        }
    }

    #[test]
    fn g_v_symmetry_and_euler_identity(
        v in prop::collection::vec(-3.0f64..3.0, 4),
        u in prop::collection::vec(-3.0f64..3.0, 4),
        w in prop::collection::vec(-3.0f64..3.0, 4),
    ) {
        prop_assume!(v.iter().map(|x| x * x).sum::<f64>() > 1e-2);
        let r = make_randers(catalog(4).unwrap(), MetricTensor::identity(4), AlgebraVector::new(vec![rat(2, 5), rat(1, 5), rat(0, 1), rat(-1, 2)])).unwrap();
        let a = r.g_v(&v, &u, &w).unwrap();
        let b = r.g_v(&v, &w, &u).unwrap();
        prop_assert!((a - b).abs() <= 1e-9);
        let f = r.eval_f_f64(&v).unwrap();
        let gvv = r.g_v(&v, &v, &v).unwrap();
        prop_assert!((gvv - f * f).abs() <= 1e-6 * f * f);
    }

    #[test]
    fn fundamental_tensor_matches_closed_form(y in prop::collection::vec(-2.0f64..2.0, 4), k in 0usize..4) {
        prop_assume!(y.iter().map(|x| x * x).sum::<f64>() > 1e-2);
        let q = [rat(1, 10), rat(1, 2), rat(9, 10), rat(99, 100)][k].clone();
        let mut qv = AlgebraVector::zero(4);
        qv.add_scaled(&q, &AlgebraVector::from_ints(&[0, 0, 1, 0]));
        let r = make_randers(catalog(2).unwrap(), MetricTensor::identity(4), qv).unwrap();
        let fd = r.fundamental_tensor(&y).unwrap();
        let oracle = closed_form_fundamental_tensor(&r, &y);
        for i in 0..4 {
            for j in 0..4 {
                prop_assert!((fd[(i, j)] - oracle[i][j]).abs() < 1e-6, "({i},{j}) {} vs {}", fd[(i, j)], oracle[i][j]);
            }
        }
    }
}

/// `g_ij = (F/α)(a_ij - ℓ_i ℓ_j) + (ℓ_i + b_i)(ℓ_j + b_j)` with `ℓ_i = a_ij yʲ/α`,
/// for an orthonormal basis.
fn closed_form_fundamental_tensor(r: &RandersStructure, y: &[f64]) -> [[f64; 4]; 4] {
    let b = r.q().to_f64();
    let alpha = y.iter().map(|x| x * x).sum::<f64>().sqrt();
    let f = alpha + b.iter().zip(y).map(|(p, q)| p * q).sum::<f64>();
    let l: Vec<f64> = y.iter().map(|x| x / alpha).collect();
    let mut out = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            let a = if i == j { 1.0 } else { 0.0 };
            out[i][j] = f / alpha * (a - l[i] * l[j]) + (l[i] + b[i]) * (l[j] + b[j]);
        }
    }
    out
}

#[test]
fn pole_transverse_vector_enters_only_through_the_plane() {
    let r = make_randers(catalog(2).unwrap(), MetricTensor::identity(4), AlgebraVector::new(vec![rat(0, 1), rat(0, 1), rat(1, 2), rat(1, 3)])).unwrap();
    let d = DouglasRanders::new(&r).unwrap();
    let flag = Flag::new(AlgebraVector::from_ints(&[1, -2, 1, 3]), AlgebraVector::from_ints(&[0, 1, 2, -1])).unwrap();
    let other = flag.recomplete(&rat(-3, 2), &rat(7, 1)).unwrap();
    assert_eq!(d.deng_hou_exact(&flag).unwrap(), d.deng_hou_exact(&other).unwrap());
}

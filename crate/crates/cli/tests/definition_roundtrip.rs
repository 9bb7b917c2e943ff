use proptest::prelude::*;

use randers_cli::Definition;
use randers_core::scalar::rat;
use randers_core::{AlgebraVector, CatalogCase, ComplexStructureTriple, LieAlgebra, Matrix, MetricTensor, Scalar};

fn scalar() -> impl Strategy<Value = Scalar> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| rat(n, d))
}

fn matrix(n: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(scalar(), n * n)
        .prop_map(move |v| Matrix::from_rows(v.chunks(n).map(<[Scalar]>::to_vec).collect()).unwrap())
}

fn definition() -> impl Strategy<Value = Definition> {
    (2usize..=5).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (
            prop::collection::vec(prop::option::of(prop::collection::vec(scalar(), n)), pairs),
            matrix(n),
            prop::option::of(prop::collection::vec(scalar(), n)),
            prop::option::of((matrix(n), matrix(n), matrix(n))),
        )
            .prop_map(move |(brackets, a, q, t)| {
                let labels: Vec<String> = (0..n).map(|k| format!("e{k}")).collect();
                let ij = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
                let entries = ij.zip(brackets).filter_map(|((i, j), b)| b.map(|b| (i, j, AlgebraVector::new(b))));
                let algebra = LieAlgebra::from_brackets(labels, entries).unwrap();
                let gram = &(&a.transpose() * &a) + &Matrix::identity(n);
                Definition {
                    algebra,
                    metric: MetricTensor::new(gram).unwrap(),
                    q: q.map(AlgebraVector::new),
                    hypercomplex: t.map(|(a, b, c)| ComplexStructureTriple::new(a, b, c).unwrap()),
                }
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn serialize_then_parse_is_identity(d in definition()) {
        let text = d.to_toml();
        let back = Definition::parse_unchecked(&text).unwrap();
        prop_assert_eq!(&back, &d);
        prop_assert_eq!(back.to_toml(), text);
    }
}

#[test]
fn catalog_cases_round_trip_and_validate() {
    for case in CatalogCase::ALL {
        let d = Definition { algebra: case.algebra(), metric: MetricTensor::identity(4), q: None, hypercomplex: None };
        assert_eq!(Definition::parse(&d.to_toml()).unwrap(), d);
    }
}

use lpreserve::mapfile::{parse_map, write_map};
use lpreserve_core::preserver::VectorMap;
use lpreserve_core::{FieldSpec, Matrix, MultiPoly};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn linear_and_table_round_trip(entries in prop::collection::vec(0u64..9, 4)) {
        let f = FieldSpec::galois(9).unwrap();
        let m = Matrix::new(&f, 2, 2, entries.iter().map(|&i| f.element(i).unwrap()).collect()).unwrap();
        let lin = VectorMap::linear(m).unwrap();
        prop_assert_eq!(&parse_map(&write_map(&lin), &f, 2).unwrap(), &lin);
        let table = lin.to_table().unwrap();
        prop_assert_eq!(parse_map(&write_map(&table), &f, 2).unwrap(), table);
    }

    #[test]
    fn polymap_round_trip(coeffs in prop::collection::vec(-3i64..4, 6), exps in prop::collection::vec(0u32..4, 12)) {
        let f = FieldSpec::rationals();
        let coord = |k: usize| {
            let terms = (0..3).map(|t| (vec![exps[k * 6 + 2 * t], exps[k * 6 + 2 * t + 1]], f.from_ratio(&coeffs[k * 3 + t].into(), &2.into()).unwrap()));
            MultiPoly::from_terms(&f, 2, terms).unwrap()
        };
        let map = VectorMap::poly(vec![coord(0), coord(1)]).unwrap();
        prop_assert_eq!(parse_map(&write_map(&map), &f, 2).unwrap(), map);
    }
}

use mapspace::chains::{Field, FieldSpec, PrimeField, Rationals};
use mapspace::grepr::mat_identity;
use mapspace::mapmodel::{
    check_model, linear_normalized_dim, mapping_cohomology, CoefficientModel, FreeGCAlgebra, MappingModel,
    MappingOptions,
};
use mapspace::sset::{build_standard, polygon_rotation, wedge_cycle, zigzag_reflection, BuildKind};
use num_rational::BigRational;

fn s3(field: FieldSpec) -> CoefficientModel {
    CoefficientModel::tensor("S3", field, 2, FreeGCAlgebra::exterior("x", 3).unwrap()).unwrap()
}

fn s2() -> CoefficientModel {
    let one = BigRational::from_integer(1.into());
    let a = FreeGCAlgebra::new(vec![("y".into(), 2), ("x".into(), 3)], vec![vec![], vec![(one, vec![2, 0])]]).unwrap();
    CoefficientModel::tensor("S2", FieldSpec::Rationals, 1, a).unwrap()
}

#[test]
fn leibniz_and_associativity_on_random_elements() {
    let cases = [
        (BuildKind::MinimalSphere(1), s3(FieldSpec::Rationals), 6, false),
        (BuildKind::Polygon(3), s3(FieldSpec::Rationals), 5, false),
        (BuildKind::MinimalSphere(1), s2(), 4, true),
        (BuildKind::MinimalSphere(1), s2(), 4, false),
        (BuildKind::Zigzag(4), s3(FieldSpec::Rationals), 4, false),
    ];
    for (kind, coeff, n, pointed) in cases {
        let k = build_standard(&kind).unwrap();
        let opts = MappingOptions { pointed, ..Default::default() };
        let m = MappingModel::build(&Rationals, &k, &coeff, n, opts).unwrap();
        let c = check_model(&m, 11, 120).unwrap();
        assert!(c.leibniz_pairs >= 100, "{kind:?}: only {} pairs", c.leibniz_pairs);
        assert!(c.associativity_triples > 0);
    }
}

#[test]
fn simplicial_backend_satisfies_the_same_laws() {
    let l = build_standard(&BuildKind::MinimalSphere(3)).unwrap();
    let coeff = CoefficientModel::simplicial("S3", FieldSpec::Rationals, 2, l).unwrap();
    for kind in [BuildKind::MinimalSphere(0), BuildKind::Simplex(0)] {
        let k = build_standard(&kind).unwrap();
        let m = MappingModel::build(&Rationals, &k, &coeff, 6, MappingOptions::default()).unwrap();
        let c = check_model(&m, 5, 100).unwrap();
        assert!(c.leibniz_pairs >= 100);
    }
}

#[test]
fn small_circle_simplicial_backend() {
    let l = build_standard(&BuildKind::MinimalSphere(3)).unwrap();
    let coeff = CoefficientModel::simplicial("S3", FieldSpec::Rationals, 2, l).unwrap();
    let k = build_standard(&BuildKind::MinimalSphere(1)).unwrap();
    // columns past p = 2 vanish through total degree 3; the default bound
    // would enumerate (S^3)^8
    let opts = MappingOptions { pointed: true, p_max: Some(3), ..Default::default() };
    let r = mapping_cohomology(&k, &coeff, 2, opts, false).unwrap();
    assert_eq!(r.betti, vec![1, 0, 1]);
}

#[test]
fn reversed_level_order_gives_the_same_answer() {
    let k = build_standard(&BuildKind::MinimalSphere(1)).unwrap();
    for reversed in [false, true] {
        let opts = MappingOptions { reversed, ..Default::default() };
        let r = mapping_cohomology(&k, &s3(FieldSpec::Rationals), 6, opts, false).unwrap();
        assert_eq!(r.betti, vec![1, 0, 1, 1, 1, 1, 1]);
        let m = MappingModel::build(&Rationals, &k, &s2(), 4, opts).unwrap();
        assert!(check_model(&m, 3, 100).unwrap().leibniz_pairs >= 100);
    }
}

#[test]
fn structural_and_linear_normalization_agree() {
    let a = FreeGCAlgebra::exterior("x", 3).unwrap();
    let coeff = s3(FieldSpec::Rationals);
    for kind in [BuildKind::MinimalSphere(0), BuildKind::MinimalSphere(1), BuildKind::Polygon(3)] {
        let k = build_standard(&kind).unwrap();
        let m = MappingModel::build(&Rationals, &k, &coeff, 4, MappingOptions { p_max: Some(3), ..Default::default() })
            .unwrap();
        for p in 0..=3 {
            for q in 0..=m.columns.q_max(p) {
                let lin = linear_normalized_dim(&Rationals, &k, &a, p, q).unwrap();
                assert_eq!(m.columns.dim(p, q), lin, "{kind:?} ({p},{q})");
            }
        }
    }
}

#[test]
fn two_points_ring_structure() {
    let k = build_standard(&BuildKind::MinimalSphere(0)).unwrap();
    let r = mapping_cohomology(&k, &s3(FieldSpec::Rationals), 6, MappingOptions::default(), true).unwrap();
    assert_eq!(r.betti, vec![1, 0, 0, 2, 0, 0, 1]);
    let cube: Vec<_> = r.ring.iter().filter(|e| e.left.0 == 3 && e.right.0 == 3).collect();
    assert_eq!(cube.len(), 3);
    for e in cube {
        let zero = e.product.iter().all(|c| c == "0");
        assert_eq!(zero, e.left.1 == e.right.1, "{e:?}");
    }
    assert!(r.stabilization.unwrap().stable);
}

#[test]
fn rotation_acts_trivially_on_free_loops() {
    let f = PrimeField::new(7).unwrap();
    let act = polygon_rotation(3).unwrap();
    let m = MappingModel::build(&f, act.space(), &s3(FieldSpec::PrimeField(7)), 4, MappingOptions::default()).unwrap();
    for g in &act.maps {
        for (n, mat) in m.transport(g).unwrap().iter().enumerate() {
            assert_eq!(*mat, mat_identity(&f, m.groups[n].dim));
        }
    }
}

#[test]
fn reflection_and_wedge_actions_are_representations() {
    let f = Rationals;
    let act = zigzag_reflection(4).unwrap();
    let m = MappingModel::build(&f, act.space(), &s3(FieldSpec::Rationals), 4, MappingOptions::default()).unwrap();
    let mats = m.transport(&act.maps[1]).unwrap();
    // the reflection squares to the identity on every H^n
    for (n, a) in mats.iter().enumerate() {
        assert_eq!(mapspace::grepr::mat_mul(&f, a, a), mat_identity(&f, m.groups[n].dim));
    }
    let f7 = PrimeField::new(7).unwrap();
    let w = wedge_cycle(3, 1).unwrap();
    let opts = MappingOptions { pointed: true, ..Default::default() };
    let m = MappingModel::build(&f7, w.space(), &s3(FieldSpec::PrimeField(7)), 4, opts).unwrap();
    // (ΩS^3)^3
    assert_eq!(m.betti(), vec![1, 0, 3, 0, 6]);
    let g = m.transport(&w.maps[1]).unwrap();
    let g3 = mapspace::grepr::mat_mul(&f7, &g[2], &mapspace::grepr::mat_mul(&f7, &g[2], &g[2]));
    assert_eq!(g3, mat_identity(&f7, 3));
    assert_ne!(g[2], mat_identity(&f7, 3));
    assert!(f7.is_zero(&f7.zero()));
}

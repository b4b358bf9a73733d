use mapspace::kanop::{
    adjunction_check, enumerate_hom, find_isomorphism, mapping_cosimplicial_set, tensor_under_delta, CosimplicialSSet,
};
use mapspace::sset::{build_standard, BuildKind};

#[test]
fn yoneda_tensor_is_isomorphic_to_the_source() {
    let z = CosimplicialSSet::yoneda(3).unwrap();
    for kind in [
        BuildKind::Simplex(0),
        BuildKind::Simplex(1),
        BuildKind::MinimalSphere(0),
        BuildKind::MinimalSphere(1),
        BuildKind::Polygon(3),
        BuildKind::Zigzag(4),
        BuildKind::Simplex(2),
    ] {
        let k = build_standard(&kind).unwrap();
        let t = tensor_under_delta(&k, &z, k.dim()).unwrap();
        assert!(find_isomorphism(&k, &t.set).unwrap().is_some(), "{kind:?}");
    }
}

#[test]
fn mapping_sets_satisfy_the_identities() {
    for (kind, size) in [(BuildKind::Simplex(0), 3), (BuildKind::MinimalSphere(1), 2), (BuildKind::Polygon(3), 2)] {
        let k = build_standard(&kind).unwrap();
        let m = mapping_cosimplicial_set(&k, size, 3).unwrap();
        m.check_identities().unwrap();
    }
}

#[test]
fn hom_into_the_circle_matches_adjunction_count() {
    let s1 = build_standard(&BuildKind::MinimalSphere(1)).unwrap();
    let homs = enumerate_hom(&s1, &s1).unwrap();
    let r = adjunction_check(&s1, &CosimplicialSSet::yoneda(2).unwrap(), &s1, 2).unwrap();
    assert_eq!(r.left_count, homs.len());
    assert!(r.bijection_ok);
}

#[test]
fn yoneda_against_a_triangle_target() {
    // maps Δ[1] → polygon(3): one per simplex of degree 1
    let tri = build_standard(&BuildKind::Polygon(3)).unwrap();
    let d1 = build_standard(&BuildKind::Simplex(1)).unwrap();
    let r = adjunction_check(&d1, &CosimplicialSSet::yoneda(2).unwrap(), &tri, 2).unwrap();
    assert_eq!(r.left_count, tri.level_count(1));
    assert_eq!(r.right_count, r.left_count);
    assert!(r.bijection_ok);
}

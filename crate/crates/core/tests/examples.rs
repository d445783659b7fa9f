//! Worked examples through the public API.

use epdescent_core::descent::{rank_sha_ledger, DescentReport};
use epdescent_core::lfunction::verify_base_change;
use epdescent_core::quadfield::make_context;
use epdescent_core::reduction::{conductor, reduction_table};
use epdescent_core::torsion::torsion_subgroup;
use epdescent_core::{Error, FieldContext, FieldFamily, FieldKind, Kodaira};

fn ctx(kind: FieldKind) -> FieldContext {
    FieldContext::new(kind).unwrap()
}

#[test]
fn gauss_p7() {
    let r = rank_sha_ledger(7, &ctx(FieldKind::GaussianI)).unwrap();
    assert_eq!(r.selmer_phi.dim, 1);
    assert_eq!(r.ledger, 0);
    assert!(r.matches);
    assert!(r.selmer_phi.closed && r.selmer_phihat.closed);
}

#[test]
fn root2_p3_has_an_extra_class() {
    let r = rank_sha_ledger(3, &ctx(FieldKind::Root2)).unwrap();
    assert_eq!(r.torsion, "Z/2Z");
    assert_eq!((r.selmer_phi.dim, r.selmer_phihat.dim), (1, 2));
    assert_eq!(r.ledger, 1);
    assert!(!r.matches);
}

#[test]
fn every_selmer_element_is_certified() {
    let r = rank_sha_ledger(13, &ctx(FieldKind::Root7)).unwrap();
    for g in [&r.selmer_phi, &r.selmer_phihat] {
        assert_eq!(g.elements.len(), 1 << g.dim);
        for c in g.certificates.iter().filter(|c| c.in_selmer) {
            assert!(!c.verdicts.is_empty());
        }
    }
}

#[test]
fn unsupported_fields() {
    assert!(matches!(make_context(FieldFamily::RootQ, Some(15), false), Err(Error::UnsupportedField(_))));
    assert!(matches!(
        make_context(FieldFamily::RootQ, Some(59), false),
        Err(Error::ClassNumberUnsupported { .. })
    ));
    assert!(matches!(rank_sha_ledger(7, &ctx(FieldKind::Root7)), Err(Error::PRamified { .. })));
    assert!(matches!(rank_sha_ledger(9, &ctx(FieldKind::GaussianI)), Err(Error::NotOddPrime(9))));
}

#[test]
fn report_round_trips_through_json() {
    for (kind, p) in [(FieldKind::GaussianI, 17), (FieldKind::RootQ(11), 5), (FieldKind::Root7, 11)] {
        let r = rank_sha_ledger(p, &ctx(kind)).unwrap();
        let back: DescentReport = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(serde_json::to_value(&back).unwrap(), serde_json::to_value(&r).unwrap());
    }
}

#[test]
fn reduction_gauss_p5() {
    let g = ctx(FieldKind::GaussianI);
    let rows = reduction_table(5, &g).unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0].computed.kodaira, Kodaira::IStar(0));
    assert!(rows[1..].iter().all(|r| r.computed.kodaira == Kodaira::III));
    assert!(rows.iter().all(|r| r.matches && r.computed.satisfies_ogg()));
    let f = conductor(5, &g).unwrap();
    assert_eq!(f.factors.iter().map(|x| x.exponent).collect::<Vec<_>>(), vec![8, 2, 2]);
}

#[test]
fn reduction_root7_p3() {
    let rows = reduction_table(3, &ctx(FieldKind::Root7)).unwrap();
    assert!(rows.iter().all(|r| r.matches && r.computed.kodaira == Kodaira::III));
}

#[test]
fn base_change() {
    assert!(verify_base_change(3, 5000).holds);
    assert!(verify_base_change(5, 100).holds);
}

#[test]
fn torsion_is_two() {
    for kind in [FieldKind::GaussianI, FieldKind::Root2, FieldKind::Root7, FieldKind::RootQ(163)] {
        let t = torsion_subgroup(29, &ctx(kind)).unwrap();
        assert_eq!(t.group, "Z/2Z");
        assert_eq!(t.gcd % 2, 0);
    }
}

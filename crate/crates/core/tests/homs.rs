use tl_core::homs::{
    hom_basis, hom_dim_oracle, is_symmetric_pair, normalized_oracle, phi_base, phi_general,
    symmetric_partner_above, symmetric_partner_below,
};
use tl_core::linalg::same_span;
use tl_core::linkstates::{radical_basis, LSVector, LinkState, StandardModule};
use tl_core::{QMode, Scalar, TlError};

fn radical_coords(n: usize, p: usize, m: &QMode) -> Vec<Vec<Scalar>> {
    let module = StandardModule::get(n, p).unwrap();
    radical_basis(n, p, m).unwrap().iter().map(|v| module.coords(v)).collect()
}

#[test]
fn symmetric_pair_examples() {
    let l3 = QMode::for_l(3);
    assert!(is_symmetric_pair(3, 0, 1, &l3).unwrap());
    assert!(is_symmetric_pair(8, 2, 4, &l3).unwrap());
    assert!(!is_symmetric_pair(8, 2, 3, &l3).unwrap());
    assert!(matches!(is_symmetric_pair(5, 0, 2, &QMode::Generic), Err(TlError::RequiresRootOfUnity)));
    assert_eq!(symmetric_partner_above(3, 0, &l3), Some(1));
    assert_eq!(symmetric_partner_below(3, 1, &l3), Some(0));
    // (8,2) reflects to (8,1) in one line and to (8,4) in the other.
    assert_eq!(symmetric_partner_above(8, 1, &l3), Some(2));
    assert_eq!(symmetric_partner_above(8, 2, &l3), Some(4));
}

#[test]
fn hom_dimension_examples() {
    assert_eq!(hom_dim_oracle(5, 0, 2, &QMode::Generic).unwrap(), 0);
    assert_eq!(hom_dim_oracle(3, 0, 1, &QMode::for_l(3)).unwrap(), 1);
    assert_eq!(hom_dim_oracle(2, 1, 0, &QMode::RootOfUnity { m: 4 }).unwrap(), 1);
    assert_eq!(hom_dim_oracle(2, 1, 0, &QMode::for_l(3)).unwrap(), 0);
    for n in 0..=6 {
        for p in 0..=n / 2 {
            assert_eq!(hom_dim_oracle(n, p, p, &QMode::for_l(3)).unwrap(), 1);
        }
    }
    for b in hom_basis(3, 0, 1, &QMode::for_l(3)).unwrap() {
        assert!(b.intertwines(&QMode::for_l(3)).unwrap());
    }
}

#[test]
fn single_cup_image() {
    // φ(|^n) = Σ (-1)^{i+1} [i] c_i for p2 = 1.
    for (m, n) in [(QMode::for_l(3), 3), (QMode::for_l(4), 4), (QMode::for_l(5), 5)] {
        let phi = phi_base(n, 1, &m).unwrap();
        let image = phi.apply(&LSVector::basis(LinkState::all_strings(n))).unwrap();
        let mut expected = LSVector::zero(n, 1);
        for i in 1..n {
            let c = m.qint(i as i64);
            expected.add_term(LinkState::from_one_based(n, &[(i, i + 1)]).unwrap(), if i % 2 == 1 { c } else { -c });
        }
        assert_eq!(image, expected);
        assert!(phi.intertwines(&m).unwrap());
    }
}

#[test]
fn phi_spans_radicals() {
    let l3 = QMode::for_l(3);
    let phi = phi_base(3, 1, &l3).unwrap();
    assert!(same_span(&phi.image(), &radical_coords(3, 1, &l3)));
    let phi = phi_general(5, 1, 2, &l3).unwrap();
    assert!(phi.intertwines(&l3).unwrap());
    assert!(same_span(&phi.image(), &radical_coords(5, 2, &l3)));
    for n in 0..=8 {
        for p in 0..=n / 2 {
            if let Some(p2) = symmetric_partner_above(n, p, &l3) {
                let phi = phi_general(n, p, p2, &l3).unwrap();
                assert!(same_span(&phi.kernel(), &radical_coords(n, p, &l3)), "({n},{p})");
            }
        }
    }
}

#[test]
fn phi_matches_normalized_solver() {
    let l4 = QMode::for_l(4);
    let base = phi_base(5, 2, &l4).unwrap().matrix.column(0);
    assert_eq!(normalized_oracle(5, 2, &l4).unwrap(), Some(base));
    assert_eq!(phi_general(5, 0, 2, &l4).unwrap(), phi_base(5, 2, &l4).unwrap());
}

#[test]
fn phi_requires_symmetric_pair() {
    assert!(matches!(phi_general(4, 0, 1, &QMode::for_l(3)), Err(TlError::NotSymmetricPair { .. })));
}

use proptest::prelude::*;
use tl_core::diagrams::{enumerate_diagrams, Diagram};
use tl_core::linkstates::{
    d_np, gram_nullity, l_dim, pair, predicted_radical, radical_basis, radical_shape, LSVector, LinkState,
    RadicalShape, StandardModule, TheoremReading,
};
use tl_core::{QMode, Scalar};

fn cup(n: usize, cups: &[(usize, usize)]) -> LinkState {
    LinkState::from_one_based(n, cups).unwrap()
}

fn v(s: LinkState) -> LSVector {
    LSVector::basis(s)
}

#[test]
fn standard_dimensions() {
    assert_eq!(d_np(2, 1), 1);
    assert_eq!(d_np(4, 1), 3);
    assert_eq!(d_np(5, 2), 5);
    for n in 0..=10 {
        for p in 0..=n / 2 {
            assert_eq!(StandardModule::get(n, p).unwrap().dim(), d_np(n, p));
        }
    }
    assert!(LinkState::from_one_based(4, &[(1, 3)]).is_err());
    assert!(LinkState::from_one_based(4, &[(1, 3), (2, 4)]).is_err());
}

#[test]
fn generator_action_examples() {
    let g = QMode::Generic;
    let strings = v(LinkState::all_strings(3));
    assert!(strings.act_generator(1, &g).unwrap().is_zero());
    let c1 = v(cup(2, &[(1, 2)]));
    assert_eq!(c1.act_generator(1, &g).unwrap(), c1.scale(&g.delta()));
    let c1_3 = v(cup(3, &[(1, 2)]));
    assert_eq!(c1_3.act_generator(2, &g).unwrap(), v(cup(3, &[(2, 3)])));
}

#[test]
fn braid_relation_on_v41() {
    let m = QMode::RootOfUnity { m: 7 };
    let e1 = Diagram::generator(4, 1).unwrap();
    for x in &StandardModule::get(4, 1).unwrap().basis {
        let x = v(x.clone());
        assert_eq!(x.act_word(&[1, 2, 1], &m).unwrap(), x.act_generator(1, &m).unwrap());
        assert_eq!(x.act_diagram(&e1, &m).unwrap(), x.act_generator(1, &m).unwrap());
        assert_eq!(x.act_diagram(&Diagram::identity(4), &m).unwrap(), x);
    }
}

#[test]
fn pairing_examples() {
    let g = QMode::Generic;
    let d = g.delta();
    for n in 0..=6 {
        let s = v(LinkState::all_strings(n));
        assert_eq!(pair(&s, &s, &g).unwrap(), Scalar::one());
    }
    let c1 = v(cup(2, &[(1, 2)]));
    assert_eq!(pair(&c1, &c1, &g).unwrap(), d);
    assert_eq!(pair(&v(cup(3, &[(1, 2)])), &v(cup(3, &[(2, 3)])), &g).unwrap(), Scalar::one());
}

#[test]
fn gram_determinants() {
    let g = QMode::Generic;
    let d = g.delta();
    let one = Scalar::one();
    assert_eq!(StandardModule::get(3, 1).unwrap().gram(&g).det(), &(&d * &d) - &one);
    let d3 = &(&d * &d) * &d;
    assert_eq!(StandardModule::get(4, 1).unwrap().gram(&g).det(), &d3 - &(&Scalar::int(2) * &d));
    let i = QMode::RootOfUnity { m: 4 };
    for p in 1..=3 {
        assert!(StandardModule::get(2 * p, p).unwrap().gram(&i).is_zero());
    }
}

#[test]
fn radical_examples() {
    for n in 0..=8 {
        for p in 0..=n / 2 {
            assert!(radical_basis(n, p, &QMode::Generic).unwrap().is_empty());
        }
    }
    let l3 = QMode::for_l(3);
    let r = radical_basis(3, 1, &l3).unwrap();
    assert_eq!(r.len(), 1);
    let diff = v(cup(3, &[(1, 2)])).add(&v(cup(3, &[(2, 3)])).scale(&Scalar::int(-1)));
    assert_eq!(tl_core::linalg::rank_of(&[
        StandardModule::get(3, 1).unwrap().coords(&r[0]),
        StandardModule::get(3, 1).unwrap().coords(&diff),
    ]), 1);
    let r = radical_basis(2, 1, &QMode::RootOfUnity { m: 4 }).unwrap();
    assert_eq!(r.len(), 1);
}

#[test]
fn irreducible_dimensions() {
    let l3 = QMode::for_l(3);
    for n in 0..=10 {
        assert_eq!(l_dim(n, 0, &l3), 1);
        assert_eq!(l_dim(n, 0, &QMode::Generic), 1);
    }
    for p in 1..=5 {
        assert_eq!(l_dim(2 * p, p, &l3), 1);
    }
    assert_eq!(l_dim(3, 1, &l3), 1);
    assert_eq!(gram_nullity(3, 1, &l3).unwrap(), 1);
    let l2 = QMode::for_l(2);
    for n in (1..=11).step_by(2) {
        for p in 0..=n / 2 {
            assert_eq!(l_dim(n, p, &l2), d_np(n, p));
        }
    }
}

#[test]
fn corrected_radical_rule_on_a_sweep() {
    for l in 2..=6 {
        let m = QMode::for_l(l);
        for n in 0..=9 {
            for p in 0..=n / 2 {
                assert_eq!(
                    radical_shape(n, p, &m).unwrap(),
                    predicted_radical(n, p, &m, TheoremReading::Corrected),
                    "l={l} ({n},{p})"
                );
            }
        }
    }
}

#[test]
fn literal_radical_rule_misses_nondegenerate_labels() {
    // V_{n,0} has a one-dimensional, nondegenerate Gram matrix, yet for n ≥ l
    // the literal bound `n - 2p + 1 < l` does not cover it.
    let m = QMode::for_l(3);
    assert_eq!(radical_shape(4, 0, &m).unwrap(), RadicalShape::Zero);
    assert_eq!(predicted_radical(4, 0, &m, TheoremReading::AsStated), RadicalShape::Proper);
    // It also predicts zero for (3,1), whose radical is spanned by c_1 - c_2.
    assert_eq!(predicted_radical(3, 1, &m, TheoremReading::AsStated), RadicalShape::Zero);
    assert_eq!(radical_shape(3, 1, &m).unwrap(), RadicalShape::Proper);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn nullity_plus_irreducible_is_dimension(l in 2u32..=6, (n, p) in (0usize..=9).prop_flat_map(|n| (Just(n), 0..=n / 2))) {
        let m = QMode::for_l(l);
        prop_assert_eq!(gram_nullity(n, p, &m).unwrap() + l_dim(n, p, &m), d_np(n, p));
    }

    #[test]
    fn form_is_invariant_under_transpose(
        (n, p, d, x, y) in (1usize..=5).prop_flat_map(|n| (Just(n), 0..=n / 2, 0usize..500, 0usize..50, 0usize..50)),
        m in prop_oneof![Just(QMode::Generic), Just(QMode::RootOfUnity { m: 6 })],
    ) {
        let module = StandardModule::get(n, p).unwrap();
        let all = enumerate_diagrams(n, 8).unwrap();
        let a = &all[d % all.len()];
        let x = v(module.basis[x % module.dim()].clone());
        let y = v(module.basis[y % module.dim()].clone());
        prop_assert_eq!(
            pair(&x.act_diagram(a, &m).unwrap(), &y, &m).unwrap(),
            pair(&x, &y.act_diagram(&a.transpose(), &m).unwrap(), &m).unwrap()
        );
    }
}

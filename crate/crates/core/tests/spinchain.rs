use proptest::prelude::*;
use tl_core::linkstates::{LSVector, LinkState, StandardModule};
use tl_core::spinchain::{
    actions_commute, calibrate_coproduct, counterexample_qi, cup_embed, embed_equivariant, form_restriction_check,
    schur_weyl_audit, schur_weyl_dimension, spin_form, tl_act, uq_act, xi_action, xi_form, xi_relations_hold,
    SModule, SpinVector, UqGen, PINNED_COPRODUCT,
};
use tl_core::{QMode, Scalar, TlError};

fn sv(idx: &[i8]) -> SpinVector {
    SpinVector::from_indices(idx)
}

#[test]
fn tl_generator_on_two_sites() {
    let g = QMode::Generic;
    assert!(tl_act(1, &sv(&[1, 1]), &g).unwrap().is_zero());
    let expected = sv(&[-1, 1]).scale(&g.q()).sub(&sv(&[1, -1]));
    assert_eq!(tl_act(1, &sv(&[-1, 1]), &g).unwrap(), expected);
    for idx in [[1, 1], [1, -1], [-1, 1], [-1, -1]] {
        let v = sv(&idx);
        let e = tl_act(1, &v, &g).unwrap();
        assert_eq!(tl_act(1, &e, &g).unwrap(), e.scale(&g.delta()));
    }
    assert!(matches!(tl_act(2, &sv(&[1, 1]), &g), Err(TlError::GeneratorOutOfRange { .. })));
}

#[test]
fn quantum_group_examples() {
    let g = QMode::Generic;
    assert_eq!(uq_act(UqGen::K, &sv(&[1, 1]), &g), sv(&[1, 1]).scale(&g.q_pow(-2)));
    assert_eq!(uq_act(UqGen::E, &sv(&[1]), &g), sv(&[-1]));
    assert!(uq_act(UqGen::F, &sv(&[1]), &g).is_zero());
}

#[test]
fn form_examples() {
    let g = QMode::Generic;
    assert_eq!(spin_form(&sv(&[1, 1]), &sv(&[1, 1]), &g).unwrap(), Scalar::one());
    assert_eq!(spin_form(&sv(&[-1, 1]), &sv(&[-1, 1]), &g).unwrap(), g.q());
    assert!(spin_form(&sv(&[-1, 1]), &sv(&[1, -1]), &g).unwrap().is_zero());
}

#[test]
fn embedding_examples() {
    let g = QMode::Generic;
    assert_eq!(cup_embed(&LinkState::all_strings(3), &g), sv(&[1, 1, 1]));
    let c1 = LinkState::from_one_based(2, &[(1, 2)]).unwrap();
    assert_eq!(cup_embed(&c1, &g), sv(&[1, -1]).scale(&g.q_inv()).sub(&sv(&[-1, 1])));
    let spin = cup_embed(&c1, &g);
    assert_eq!(spin_form(&spin, &spin, &g).unwrap(), g.delta());
    for (n, p) in [(4, 1), (4, 2), (5, 2)] {
        assert!(embed_equivariant(n, p, &g).unwrap());
        assert!(embed_equivariant(n, p, &QMode::RootOfUnity { m: 4 }).unwrap());
    }
}

#[test]
fn form_restriction_scaling() {
    let g = QMode::Generic;
    for n in 0..=5 {
        assert!(form_restriction_check(n, 0, &g).unwrap().literal);
    }
    let r = form_restriction_check(2, 1, &g).unwrap();
    assert!(r.literal && r.up_to_weight_scalar);
    // ⟨embed x, embed x⟩ = q·δ at (3,1): the forms differ by q^{p(n-p-1)}.
    let r = form_restriction_check(3, 1, &g).unwrap();
    assert!(!r.literal && r.up_to_weight_scalar);
    let x = LinkState::from_one_based(3, &[(1, 2)]).unwrap();
    let e = cup_embed(&x, &g);
    assert_eq!(spin_form(&e, &e, &g).unwrap(), &g.q() * &g.delta());
}

#[test]
fn calibrated_coproduct_is_pinned() {
    let (_, c) = calibrate_coproduct().expect("a convention passes");
    assert_eq!(c, PINNED_COPRODUCT);
    for n in 1..=5 {
        assert!(actions_commute(n, &QMode::Generic));
    }
}

#[test]
fn weight_modules() {
    let g = QMode::Generic;
    let e = xi_action(1, UqGen::E, 1, &g).unwrap();
    assert_eq!((e[0].j, e[0].coefficient.clone()), (-1, Scalar::one()));
    let f = xi_action(2, UqGen::F, 0, &g).unwrap();
    assert_eq!((f[0].j, f[0].coefficient.clone()), (2, g.qint(2)));
    assert!(xi_action(2, UqGen::F, 1, &g).is_err());
    for i in 0..=4 {
        assert!(xi_relations_hold(i, &g).unwrap());
    }
    assert_eq!(xi_form(1, 1, &g).unwrap(), Scalar::one());
    assert_eq!(xi_form(1, -1, &g).unwrap(), Scalar::one());
    assert_eq!(xi_form(2, 0, &g).unwrap(), &g.qint(3) / &g.qint(2));
}

#[test]
fn schur_weyl() {
    assert_eq!(schur_weyl_dimension(2), (4, 4));
    assert_eq!(schur_weyl_dimension(4), (16, 5 + 9 + 2));
    assert_eq!(schur_weyl_dimension(6), (64, 7 + 25 + 27 + 5));
    for n in 1..=4 {
        assert!(schur_weyl_audit(n).unwrap().ok());
    }
}

#[test]
fn counterexample_at_q_i() {
    let i = QMode::RootOfUnity { m: 4 };
    let r = counterexample_qi(&i).unwrap();
    assert!(r.det_is_q_squared);
    assert_eq!(r.det, Scalar::int(-1).pipe_mode(&i));
    assert_eq!(r.pairing, Scalar::one().pipe_mode(&i));
    assert!(!r.x_in_orbit);
    assert!(matches!(counterexample_qi(&QMode::Generic), Err(TlError::WrongMode(_))));
}

trait PipeMode {
    fn pipe_mode(self, m: &QMode) -> Scalar;
}

impl PipeMode for Scalar {
    // Integers embed into the cyclotomic field through q^0.
    fn pipe_mode(self, m: &QMode) -> Scalar {
        &self * &m.q_pow(0)
    }
}

#[test]
fn string_modules() {
    let g = QMode::Generic;
    for (k, n) in [(0, 2), (0, 4), (1, 3)] {
        let s = SModule::build(k, n, 6, &g).unwrap();
        assert!(s.actions_commute().unwrap());
        assert!(s.boundary_rules_hold());
        assert_eq!(s.spin_chain_isomorphism().unwrap(), Some(true));
    }
    assert!(matches!(SModule::build(0, 2, 6, &QMode::for_l(3)), Err(TlError::RequiresGeneric)));
    assert!(SModule::build(1, 2, 6, &g).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tl_and_uq_commute_on_basis_vectors(
        (n, word, i) in (2usize..=5).prop_flat_map(|n| (Just(n), 0u32..(1 << n), 1..n)),
        g in prop_oneof![Just(UqGen::E), Just(UqGen::F), Just(UqGen::K)],
        m in prop_oneof![Just(QMode::Generic), Just(QMode::RootOfUnity { m: 4 }), Just(QMode::RootOfUnity { m: 6 })],
    ) {
        let v = SpinVector::basis(n, word);
        let a = tl_act(i, &uq_act(g, &v, &m), &m).unwrap();
        let b = uq_act(g, &tl_act(i, &v, &m).unwrap(), &m);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn embedding_intertwines_generators(
        (n, p, x, i) in (2usize..=6).prop_flat_map(|n| (Just(n), 0..=n / 2, 0usize..100, 1..n)),
    ) {
        let m = QMode::Generic;
        let module = StandardModule::get(n, p).unwrap();
        let x = LSVector::basis(module.basis[x % module.dim()].clone());
        let lhs = tl_core::spinchain::embed_vector(&x.act_generator(i, &m).unwrap(), &m);
        let rhs = tl_act(i, &tl_core::spinchain::embed_vector(&x, &m), &m).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

use proptest::prelude::*;
use tl_core::linkstates::{LSVector, LinkState};
use tl_core::tlinfinity::{
    classify, classify_with_evidence, equivalent, hom_dim_inf, is_symmetric_pair_inf, radical_member,
    sequence_check, sequence_indices, Classification, InfiniteLinkState, RadicalVerdict, Tail,
};
use tl_core::{QMode, Scalar, TlError};

fn strings_with(cups: &[(usize, usize)]) -> InfiniteLinkState {
    InfiniteLinkState::from_cups(cups, None, Tail::Strings).unwrap()
}

#[test]
fn restriction_examples() {
    let all = strings_with(&[]);
    assert_eq!(all.restrict(4), (LinkState::all_strings(4), 4));
    let train = InfiniteLinkState::strings_then_cups(0);
    let (x, n) = train.restrict(5);
    assert_eq!((n, x.p()), (6, 3));
    let w = strings_with(&[(2, 5), (3, 4)]);
    assert_eq!(w.restrict(3).1, 5);
    assert_eq!((w.s(), w.c()), (None, Some(2)));
    assert_eq!((train.s(), train.c()), (Some(0), None));
}

#[test]
fn parse_normalises_tails() {
    let a = InfiniteLinkState::parse("(1,2),(3,4)", None, Tail::Cups).unwrap();
    assert_eq!(a, InfiniteLinkState::strings_then_cups(0));
    let b = InfiniteLinkState::parse("", Some(3), Tail::Strings).unwrap();
    assert_eq!(b, strings_with(&[]));
    assert!(InfiniteLinkState::parse("(1,3)", None, Tail::Cups).is_err());
    assert!(InfiniteLinkState::parse("(1,2", None, Tail::Cups).is_err());
}

#[test]
fn equivalence_examples() {
    assert!(equivalent(&strings_with(&[(1, 2), (3, 4)]), &strings_with(&[(2, 3), (5, 6)])));
    assert!(!equivalent(&strings_with(&[(1, 2)]), &strings_with(&[(1, 2), (3, 4)])));
    assert!(!equivalent(&strings_with(&[]), &InfiniteLinkState::strings_then_cups(0)));
}

#[test]
fn classification_rule() {
    let l3 = QMode::for_l(3);
    let s = InfiniteLinkState::strings_then_cups;
    for k in 0..6 {
        assert_eq!(classify(&s(k), &QMode::Generic), Classification::Irreducible);
    }
    assert_eq!(classify(&s(2), &l3), Classification::Irreducible);
    assert_eq!(classify(&s(5), &l3), Classification::Irreducible);
    assert_eq!(classify(&s(1), &l3), Classification::IndecomposableNotIrreducible);
    assert_eq!(classify(&s(0), &QMode::for_l(2)), Classification::Irreducible);
    assert_eq!(classify(&strings_with(&[(1, 2)]), &l3), Classification::Irreducible);
}

#[test]
fn infinite_homs() {
    let l3 = QMode::for_l(3);
    let s = InfiniteLinkState::strings_then_cups;
    assert!(is_symmetric_pair_inf(&s(1), &s(3), &l3).unwrap());
    assert!(!is_symmetric_pair_inf(&s(3), &s(3), &l3).unwrap());
    assert!(!is_symmetric_pair_inf(&s(1), &s(3), &QMode::Generic).unwrap());
    assert_eq!(is_symmetric_pair_inf(&strings_with(&[]), &s(1), &l3), Err(TlError::InfiniteStrings));
    assert_eq!(hom_dim_inf(&s(2), &s(2), &l3), 1);
    assert_eq!(hom_dim_inf(&s(3), &s(1), &l3), 1);
    assert_eq!(hom_dim_inf(&strings_with(&[]), &s(0), &l3), 0);
    assert_eq!(hom_dim_inf(&s(1), &s(3), &l3), 0);
}

#[test]
fn radical_membership() {
    let l3 = QMode::for_l(3);
    let c = |a: usize| LSVector::basis(LinkState::from_one_based(3, &[(a, a + 1)]).unwrap());
    let diff = c(1).add(&c(2).scale(&Scalar::int(-1)));
    let w = InfiniteLinkState::strings_then_cups(1);
    assert_eq!(radical_member(&diff, &w, &l3, 9).unwrap().verdict, RadicalVerdict::Verified);
    assert_eq!(radical_member(&c(2), &w, &l3, 9).unwrap().verdict, RadicalVerdict::Refuted);
    let z = strings_with(&[(1, 2)]);
    assert_eq!(radical_member(&diff, &z, &l3, 9).unwrap().verdict, RadicalVerdict::Refuted);
}

#[test]
fn classification_evidence_agrees() {
    for l in [2, 3] {
        let m = QMode::for_l(l);
        for s in 0..=3 {
            let r = classify_with_evidence(&InfiniteLinkState::strings_then_cups(s), &m, 10).unwrap();
            assert!(r.consistent, "l={l} s={s}: {}", r.reason);
        }
    }
}

#[test]
fn sequence_recurrence() {
    assert_eq!(sequence_indices(0, 3, 2), vec![4, 6]);
    assert_eq!(sequence_indices(0, 2, 1), vec![2]);
    let l3 = QMode::for_l(3);
    assert!(sequence_check(&InfiniteLinkState::strings_then_cups(1), 2, 9, &l3).unwrap().ok());
}

fn state() -> impl Strategy<Value = InfiniteLinkState> {
    (0usize..=3, 0usize..=3, prop::bool::ANY).prop_map(|(strings, cups, cup_tail)| {
        let mut x = LinkState::all_strings(strings);
        x = x.append_cups(cups);
        InfiniteLinkState::new(x, if cup_tail { Tail::Cups } else { Tail::Strings })
    })
}

proptest! {
    #[test]
    fn restrict_is_monotone_and_idempotent(w in state(), n in 0usize..16) {
        let (_, n1) = w.restrict(n);
        prop_assert!(n1 >= n);
        prop_assert_eq!(w.restrict(n1).1, n1);
    }

    #[test]
    fn equivalence_is_symmetric_and_reflexive(a in state(), b in state()) {
        prop_assert!(equivalent(&a, &a));
        prop_assert_eq!(equivalent(&a, &b), equivalent(&b, &a));
    }
}

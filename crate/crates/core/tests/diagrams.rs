use proptest::prelude::*;
use tl_core::diagrams::{compose, enumerate_diagrams, eval_word, Diagram, DiagramVector};
use tl_core::{QMode, Scalar};

#[test]
fn generator_shapes() {
    let e1 = Diagram::generator(2, 1).unwrap();
    // Labels 0..n-1 are the top points left to right, n..2n-1 the bottom points
    // right to left.
    assert_eq!(e1.partner(0), 1);
    assert_eq!(e1.partner(2), 3);
    let e2 = Diagram::generator(3, 2).unwrap();
    assert_eq!(e2.partner(1), 2);
    assert_eq!(e2.partner(0), e2.bottom(0));
    assert!(Diagram::generator(3, 0).is_err());
    assert!(Diagram::generator(3, 3).is_err());
}

#[test]
fn composition_examples() {
    let e1 = Diagram::generator(2, 1).unwrap();
    assert_eq!(compose(&e1, &e1).unwrap(), (e1.clone(), 1));
    let a = Diagram::generator(3, 1).unwrap();
    let b = Diagram::generator(3, 2).unwrap();
    let (ab, l1) = compose(&a, &b).unwrap();
    let (aba, l2) = compose(&ab, &a).unwrap();
    assert_eq!((aba, l1 + l2), (a, 0));
    for n in 1..=5 {
        for d in enumerate_diagrams(n, 8).unwrap() {
            assert_eq!(compose(&Diagram::identity(n), &d).unwrap(), (d.clone(), 0));
            assert_eq!(d.transpose().transpose(), d);
        }
    }
}

#[test]
fn word_evaluation() {
    let g = QMode::Generic;
    let d = g.delta();
    let e1_3 = Diagram::generator(3, 1).unwrap();
    assert_eq!(eval_word(3, &[1, 2, 1], &g).unwrap(), DiagramVector::single(e1_3, Scalar::one()));
    assert_eq!(eval_word(4, &[1, 3], &g).unwrap(), eval_word(4, &[3, 1], &g).unwrap());
    let e1 = Diagram::generator(2, 1).unwrap();
    assert_eq!(eval_word(2, &[1, 1, 1], &g).unwrap(), DiagramVector::single(e1, &d * &d));
    // δ = 0 kills loops.
    assert!(eval_word(2, &[1, 1], &QMode::RootOfUnity { m: 4 }).unwrap().is_zero());
}

#[test]
fn catalan_counts() {
    let counts: Vec<usize> = (1..=6).map(|n| enumerate_diagrams(n, 8).unwrap().len()).collect();
    assert_eq!(counts, [1, 2, 5, 14, 42, 132]);
    for d in enumerate_diagrams(2, 8).unwrap().iter().chain(&[Diagram::generator(4, 2).unwrap()]) {
        assert!(d.is_valid());
    }
}

#[test]
fn transpose_preserves_loops() {
    for n in 1..=4 {
        for d in enumerate_diagrams(n, 8).unwrap() {
            let t = d.transpose();
            assert_eq!(compose(&d, &t).unwrap().1, compose(&t, &d).unwrap().1);
        }
        for i in 1..n {
            let e = Diagram::generator(n, i).unwrap();
            assert_eq!(e.transpose(), e);
        }
    }
}

#[test]
fn crossing_pairing_rejected() {
    // top 0 to bottom of point 1 and top 1 to bottom of point 0 cross.
    assert!(Diagram::from_pairing(2, vec![2, 3, 0, 1]).is_err());
    assert!(Diagram::from_pairing(2, vec![1, 0, 3, 2]).is_ok());
}

fn word(n: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(1..n, 0..6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplication_associates((n, a, b, c) in (2usize..=5).prop_flat_map(|n| (Just(n), word(n), word(n), word(n))),
                                  m in prop_oneof![Just(QMode::Generic), Just(QMode::RootOfUnity { m: 6 })]) {
        let [x, y, z] = [&a, &b, &c].map(|w| eval_word(n, w, &m).unwrap());
        prop_assert_eq!(x.mul(&y, &m).unwrap().mul(&z, &m).unwrap(), x.mul(&y.mul(&z, &m).unwrap(), &m).unwrap());
    }

    #[test]
    fn compositions_stay_planar((n, a, b) in (1usize..=6).prop_flat_map(|n| (Just(n), 0usize..1000, 0usize..1000))) {
        let all = enumerate_diagrams(n, 8).unwrap();
        let (c, _) = compose(&all[a % all.len()], &all[b % all.len()]).unwrap();
        prop_assert!(c.is_valid());
    }
}

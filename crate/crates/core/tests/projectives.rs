use tl_core::projectives::{
    b_closed_form, b_coefficients, build_p, build_p_from_map, build_q, naive_map, splitting_solutions,
    symmetric_chains, truncation_ratio, verify_relations, BSolution,
};
use tl_core::{QMode, Scalar};

#[test]
fn smallest_extension_at_l3() {
    let l3 = QMode::for_l(3);
    let p = build_p(3, 0, 1, &l3).unwrap();
    assert!(verify_relations(&p).unwrap());
    assert_eq!(splitting_solutions(&p).unwrap(), 0);
    // ẽ_1 and ẽ_2 on ||| pick out the cup-position parts of φ(|||) = c_1 - [2]c_2.
    assert_eq!(p.corrections[0].column(0), vec![Scalar::one(), Scalar::zero()]);
    assert_eq!(p.corrections[1].column(0), vec![Scalar::zero(), -l3.qint(2)]);
}

#[test]
fn extension_at_l4() {
    let l4 = QMode::for_l(4);
    let p = build_p(5, 0, 2, &l4).unwrap();
    assert!(verify_relations(&p).unwrap());
    assert_eq!(splitting_solutions(&p).unwrap(), 0);
}

#[test]
fn mutated_correction_breaks_relations() {
    let l4 = QMode::for_l(4);
    let mut p = build_p(5, 0, 2, &l4).unwrap();
    let c = &mut p.corrections[1];
    let row = (0..c.rows()).find(|&r| !c[(r, 0)].is_zero()).expect("nonzero correction");
    c[(row, 0)] = -c[(row, 0)].clone();
    assert!(!verify_relations(&p).unwrap());
}

#[test]
fn zero_correction_splits() {
    let l3 = QMode::for_l(3);
    let mut p = build_p(3, 0, 1, &l3).unwrap();
    for c in &mut p.corrections {
        *c = c.scale(&Scalar::zero());
    }
    assert!(verify_relations(&p).unwrap());
    assert!(splitting_solutions(&p).unwrap() >= 1);
}

#[test]
fn naive_and_paper_corrections() {
    let l5 = QMode::for_l(5);
    assert!(!verify_relations(&build_p_from_map(&naive_map(6, 0, 2).unwrap(), &l5).unwrap()).unwrap());
    assert!(verify_relations(&build_p(6, 0, 2, &l5).unwrap()).unwrap());
    let l3 = QMode::for_l(3);
    assert!(verify_relations(&build_p_from_map(&naive_map(3, 0, 1).unwrap(), &l3).unwrap()).unwrap());
}

#[test]
fn b_coefficients_small() {
    let g = QMode::Generic;
    let BSolution::Unique(b) = b_coefficients(2, &g) else { panic!("expected unique solution") };
    let b1 = &(&Scalar::int(-2) * &g.qint(2)) / &g.qint(3);
    assert_eq!(b[0], b1);
    assert_eq!(b[1], &(-Scalar::one()) - &(&g.delta() * &b1));
    assert_eq!(b_coefficients(2, &QMode::for_l(3)), BSolution::Inconsistent);
    assert_eq!(b_closed_form(2, &QMode::for_l(3)), None);
    for n in 1..=8 {
        assert_eq!(b_coefficients(n, &g), BSolution::Unique(b_closed_form(n, &g).unwrap()));
    }
}

#[test]
fn double_extension() {
    let l3 = QMode::for_l(3);
    let chains = symmetric_chains(&l3, 9);
    assert!(chains.contains(&(7, 0, 2, 3)));
    assert!(!chains.contains(&(7, 0, 1, 3)));
    let q = build_q(7, 0, 2, 3, &l3).unwrap();
    assert!(verify_relations(&q).unwrap());
    assert_eq!(splitting_solutions(&q).unwrap(), 0);
}

#[test]
fn truncation_lemma_examples() {
    for (m, n, p2) in [(QMode::for_l(3), 3, 1), (QMode::for_l(4), 4, 1)] {
        let (_, ok) = truncation_ratio(n, p2, &m).unwrap();
        assert!(ok, "{m} ({n},{p2})");
    }
}

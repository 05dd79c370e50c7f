use proptest::prelude::*;
use tl_core::{QMode, Scalar, TlError};

fn root(m: u32) -> QMode {
    QMode::RootOfUnity { m }
}

#[test]
fn mode_parsing_round_trips() {
    for s in ["generic", "root:3", "root:4", "root:12"] {
        let m: QMode = s.parse().unwrap();
        assert_eq!(m.to_string(), s);
    }
    for bad in ["root:1", "root:2", "root:x", "cyclic", ""] {
        assert!(matches!(bad.parse::<QMode>(), Err(TlError::InvalidMode(_))), "{bad}");
    }
}

#[test]
fn minimal_l_per_mode() {
    assert_eq!(QMode::Generic.minimal_l(), None);
    assert_eq!(root(4).minimal_l(), Some(2));
    assert_eq!(root(6).minimal_l(), Some(3));
    assert_eq!(root(5).minimal_l(), Some(5));
    assert_eq!(QMode::for_l(4), root(8));
}

#[test]
fn small_quantum_integers() {
    for m in [QMode::Generic, root(5), root(8)] {
        let d = m.delta();
        assert_eq!(m.qint(1), Scalar::one());
        assert_eq!(m.qint(2), d);
        assert_eq!(m.qint(3), &(&d * &d) - &Scalar::one());
        assert_eq!(m.qfact(0), Scalar::one());
        assert_eq!(m.qfact(2), d);
    }
    assert!(root(6).qfact(3).is_zero());
    assert_eq!(root(6).delta(), Scalar::one());
    assert!(root(4).delta().is_zero());
}

#[test]
fn critical_data_examples() {
    let l3 = QMode::for_l(3);
    let c = l3.critical_data(3, 0).unwrap();
    assert_eq!((c.k, c.r, c.critical), (1, 1, false));
    let c = l3.critical_data(3, 1).unwrap();
    assert_eq!((c.k, c.r, c.critical), (0, 2, false));
    let c = l3.critical_data(5, 0).unwrap();
    assert_eq!((c.k, c.r, c.critical), (1, 3, true));
    assert!(matches!(QMode::Generic.critical_data(3, 0), Err(TlError::RequiresRootOfUnity)));
    assert!(matches!(l3.critical_data(3, 2), Err(TlError::LabelOutOfRange { .. })));
}

#[test]
fn zero_has_no_inverse() {
    for m in [QMode::Generic, root(6)] {
        assert!(Scalar::zero().inv().is_none());
        assert!(m.qint(3).inv().is_some() || m.qint(3).is_zero());
    }
}

fn mode_strategy() -> impl Strategy<Value = QMode> {
    prop_oneof![Just(QMode::Generic), (3u32..=12).prop_map(root)]
}

fn laurent(mode: QMode) -> impl Strategy<Value = Scalar> {
    prop::collection::vec(-5i64..=5, 5).prop_map(move |cs| {
        cs.iter()
            .enumerate()
            .map(|(e, &c)| &Scalar::int(c) * &mode.q_pow(e as i64 - 2))
            .sum()
    })
}

fn pair_in_mode() -> impl Strategy<Value = (QMode, Scalar, Scalar)> {
    mode_strategy().prop_flat_map(|m| (Just(m), laurent(m), laurent(m)))
}

proptest! {
    #[test]
    fn qint_is_odd_in_n((m, n) in (mode_strategy(), 0i64..20)) {
        prop_assert_eq!(m.qint(-n), -m.qint(n));
    }

    #[test]
    fn qint_zero_iff_l_divides((m, n) in ((3u32..=12).prop_map(root), 1i64..40)) {
        let l = m.minimal_l().unwrap() as i64;
        prop_assert_eq!(m.qint(n).is_zero(), n % l == 0);
    }

    #[test]
    fn field_operations_round_trip((_m, a, b) in pair_in_mode()) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        if let Some(bi) = b.inv() {
            prop_assert_eq!(&(&a * &b) * &bi, a.clone());
            prop_assert!((&b * &bi).is_one());
        } else {
            prop_assert!(b.is_zero());
        }
    }

    #[test]
    fn multiplication_distributes((m, a, b) in pair_in_mode()) {
        let c = m.delta();
        prop_assert_eq!(&c * &(&a + &b), &(&c * &a) + &(&c * &b));
    }
}

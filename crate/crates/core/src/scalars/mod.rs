//! Exact coefficient arithmetic in `q`.
//!
//! Two modes: generic `q` (the rational-function field `Q(q)`) and `q` a fixed
//! primitive `m`-th root of unity (the cyclotomic field `Q(ζ_m)`, `q = ζ_m`,
//! the root with the smallest positive argument).

pub mod cyclotomic;
pub mod poly;
pub mod ratfunc;
mod scalar;

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde_json::{json, Value};

pub use scalar::Scalar;

use crate::error::{Result, TlError};
use cyclotomic::{Cyclo, CycloField};
use poly::Poly;
use ratfunc::RatFunc;

pub type Q = num_rational::BigRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QMode {
    Generic,
    RootOfUnity { m: u32 },
}

impl FromStr for QMode {
    type Err = TlError;

    fn from_str(s: &str) -> Result<QMode> {
        let s = s.trim();
        if s == "generic" {
            return Ok(QMode::Generic);
        }
        s.strip_prefix("root:")
            .and_then(|m| m.parse::<u32>().ok())
            .filter(|&m| m >= 3)
            .map(|m| QMode::RootOfUnity { m })
            .ok_or_else(|| TlError::InvalidMode(s.to_string()))
    }
}

impl fmt::Display for QMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QMode::Generic => write!(f, "generic"),
            QMode::RootOfUnity { m } => write!(f, "root:{m}"),
        }
    }
}

/// `n − 2p + 1 = k·l + r` with `1 ≤ r ≤ l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CriticalData {
    pub n: usize,
    pub p: usize,
    pub k: usize,
    pub r: usize,
    pub critical: bool,
}

impl QMode {
    /// Root-of-unity mode for a given `l`, realised at `m = 2l`.
    pub fn for_l(l: u32) -> QMode {
        QMode::RootOfUnity { m: 2 * l }
    }

    pub fn is_generic(&self) -> bool {
        matches!(self, QMode::Generic)
    }

    fn field(&self) -> Option<std::sync::Arc<CycloField>> {
        match self {
            QMode::Generic => None,
            QMode::RootOfUnity { m } => Some(CycloField::get(*m)),
        }
    }

    pub fn q(&self) -> Scalar {
        match self.field() {
            None => Scalar::from_ratfunc(RatFunc::q()),
            Some(f) => Scalar::from_cyclo(Cyclo::generator(f)),
        }
    }

    pub fn q_inv(&self) -> Scalar {
        self.q().inv().expect("q is nonzero")
    }

    /// `q^e` for any integer `e`.
    pub fn q_pow(&self, e: i64) -> Scalar {
        if e >= 0 {
            self.q().pow(e as u32)
        } else {
            self.q_inv().pow((-e) as u32)
        }
    }

    /// Loop value `δ = q + q^{-1}`.
    pub fn delta(&self) -> Scalar {
        &self.q() + &self.q_inv()
    }

    /// Embed a polynomial in `q`.
    pub fn poly(&self, p: &Poly) -> Scalar {
        match self.field() {
            None => Scalar::from_ratfunc(RatFunc::from_poly(p.clone())),
            Some(f) => Scalar::from_cyclo(Cyclo::from_poly(f, p)),
        }
    }

    /// Specialise a generic rational function; `None` if its denominator
    /// vanishes at this root of unity.
    pub fn specialize(&self, r: &RatFunc) -> Option<Scalar> {
        match self {
            QMode::Generic => Some(Scalar::from_ratfunc(r.clone())),
            QMode::RootOfUnity { .. } => {
                let num = self.poly(r.num());
                let den = self.poly(r.den());
                den.inv().map(|d| &num * &d)
            }
        }
    }

    /// Quantum integer `[n] = (q^n − q^{−n})/(q − q^{−1})`, with `[−n] = −[n]`.
    pub fn qint(&self, n: i64) -> Scalar {
        if n < 0 {
            return -self.qint(-n);
        }
        if n == 0 {
            return Scalar::zero();
        }
        let r = qint_ratfunc(n as usize);
        self.specialize(&r).expect("q^{n-1} is invertible")
    }

    /// `[n]! = [1][2]…[n]`.
    pub fn qfact(&self, n: usize) -> Scalar {
        (1..=n as i64).map(|k| self.qint(k)).product()
    }

    /// Minimal `l` with `q^{2l} = 1`.
    pub fn minimal_l(&self) -> Option<usize> {
        match self {
            QMode::Generic => None,
            QMode::RootOfUnity { m } => Some(if m % 2 == 1 { *m } else { m / 2 } as usize),
        }
    }

    pub fn critical_data(&self, n: usize, p: usize) -> Result<CriticalData> {
        let l = self.minimal_l().ok_or(TlError::RequiresRootOfUnity)?;
        if 2 * p > n {
            return Err(TlError::LabelOutOfRange { n, p });
        }
        let v = n - 2 * p + 1;
        let k = (v - 1) / l;
        let r = v - k * l;
        Ok(CriticalData {
            n,
            p,
            k,
            r,
            critical: r == l,
        })
    }

    /// `true` iff `(n,p)` is critical; always `false` in generic mode.
    pub fn is_critical(&self, n: usize, p: usize) -> bool {
        self.critical_data(n, p).is_ok_and(|c| c.critical)
    }

    /// JSON form of a scalar in this mode.
    pub fn scalar_json(&self, s: &Scalar) -> Value {
        match self {
            QMode::Generic => {
                let r = s.as_ratfunc().expect("generic scalar");
                let lcm_scale = {
                    // Scale numerator and denominator by the same factor so both
                    // become integer with content 1.
                    let mut all: Vec<Q> = r.num().coeffs().to_vec();
                    all.extend(r.den().coeffs().iter().cloned());
                    let joined = Poly::from_coeffs(all);
                    let ints = joined.primitive_integer_coeffs();
                    let k = r.num().coeffs().len();
                    (ints[..k].to_vec(), ints[k..].to_vec())
                };
                json!({
                    "num": lcm_scale.0.iter().map(int_json).collect::<Vec<_>>(),
                    "den": lcm_scale.1.iter().map(int_json).collect::<Vec<_>>(),
                })
            }
            QMode::RootOfUnity { m } => {
                let phi = CycloField::get(*m).phi;
                let coeffs = s.cyclo_coeffs(phi).expect("cyclotomic scalar");
                json!({
                    "coeffs": coeffs.iter().map(|c| Value::String(c.to_string())).collect::<Vec<_>>(),
                    "m": m,
                })
            }
        }
    }

    /// Parse the JSON form produced by [`QMode::scalar_json`].
    pub fn scalar_from_json(&self, v: &Value) -> Result<Scalar> {
        let bad = || TlError::Invalid(format!("scalar json {v}"));
        let parse_q = |x: &Value| -> Result<Q> {
            match x {
                Value::Number(n) => n
                    .as_i64()
                    .map(|i| Q::from_integer(i.into()))
                    .ok_or_else(bad),
                Value::String(s) => s.parse::<Q>().map_err(|_| bad()),
                _ => Err(bad()),
            }
        };
        let list = |key: &str| -> Result<Vec<Q>> {
            v.get(key)
                .and_then(Value::as_array)
                .ok_or_else(bad)?
                .iter()
                .map(parse_q)
                .collect()
        };
        match self {
            QMode::Generic => {
                let num = Poly::from_coeffs(list("num")?);
                let den = Poly::from_coeffs(list("den")?);
                if den.is_zero() {
                    return Err(bad());
                }
                Ok(Scalar::from_ratfunc(RatFunc::new(num, den)))
            }
            QMode::RootOfUnity { .. } => Ok(self.poly(&Poly::from_coeffs(list("coeffs")?))),
        }
    }
}

fn int_json(i: &num_bigint::BigInt) -> Value {
    use num_traits::ToPrimitive;
    match i.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(i.to_string()),
    }
}

/// `[n]` as the Laurent polynomial `q^{-(n-1)} (1 + q^2 + … + q^{2n-2})`.
pub fn qint_ratfunc(n: usize) -> RatFunc {
    if n == 0 {
        return RatFunc::from_poly(Poly::zero());
    }
    let mut c = vec![0i64; 2 * n - 1];
    for k in 0..n {
        c[2 * k] = 1;
    }
    RatFunc::new(Poly::from_i64(&c), Poly::monomial(num_traits::One::one(), n - 1))
}

/// Is `s` zero (convenience for iterator filters).
pub fn nonzero(s: &Scalar) -> bool {
    !s.is_zero()
}

#[allow(dead_code)]
fn _assert_send_sync() {
    fn f<T: Send + Sync>() {}
    f::<Scalar>();
    let _ = Q::zero();
}

#[cfg(test)]
mod tests {
    use super::*;

    fn modes() -> Vec<QMode> {
        let mut v = vec![QMode::Generic];
        v.extend([3u32, 4, 5, 6, 8, 10, 12].map(|m| QMode::RootOfUnity { m }));
        v
    }

    #[test]
    fn parse_modes() {
        assert_eq!("generic".parse::<QMode>().unwrap(), QMode::Generic);
        assert_eq!("root:6".parse::<QMode>().unwrap(), QMode::RootOfUnity { m: 6 });
        assert!("root:2".parse::<QMode>().is_err());
        assert!("root:x".parse::<QMode>().is_err());
        assert!("real".parse::<QMode>().is_err());
    }

    #[test]
    fn small_quantum_integers() {
        for mode in modes() {
            let d = mode.delta();
            assert_eq!(mode.qint(1), Scalar::one());
            assert_eq!(mode.qint(2), d);
            assert_eq!(mode.qint(3), &(&d * &d) - &Scalar::one());
            assert_eq!(mode.qfact(0), Scalar::one());
            assert_eq!(mode.qfact(2), d);
        }
        assert!(QMode::RootOfUnity { m: 6 }.qfact(3).is_zero());
    }

    #[test]
    fn recursion_up_to_30() {
        for mode in modes() {
            let d = mode.delta();
            for n in 2..=30 {
                assert_eq!(mode.qint(n), &(&d * &mode.qint(n - 1)) - &mode.qint(n - 2));
            }
        }
    }

    #[test]
    fn qint_vanishes_iff_l_divides() {
        for mode in modes().into_iter().skip(1) {
            let l = mode.minimal_l().unwrap() as i64;
            for n in 1..=4 * l {
                assert_eq!(mode.qint(n).is_zero(), n % l == 0, "{mode} n={n}");
            }
        }
    }

    #[test]
    fn minimal_l_values() {
        assert_eq!(QMode::Generic.minimal_l(), None);
        assert_eq!(QMode::RootOfUnity { m: 4 }.minimal_l(), Some(2));
        assert_eq!(QMode::RootOfUnity { m: 6 }.minimal_l(), Some(3));
        assert_eq!(QMode::RootOfUnity { m: 5 }.minimal_l(), Some(5));
    }

    #[test]
    fn critical_data_examples() {
        let mode = QMode::RootOfUnity { m: 6 };
        let c = mode.critical_data(3, 0).unwrap();
        assert_eq!((c.k, c.r, c.critical), (1, 1, false));
        let c = mode.critical_data(3, 1).unwrap();
        assert_eq!((c.k, c.r, c.critical), (0, 2, false));
        let c = mode.critical_data(5, 0).unwrap();
        assert_eq!((c.k, c.r, c.critical), (1, 3, true));
        assert_eq!(
            QMode::Generic.critical_data(3, 0),
            Err(TlError::RequiresRootOfUnity)
        );
    }

    #[test]
    fn delta_values() {
        assert!(QMode::RootOfUnity { m: 4 }.delta().is_zero());
        assert_eq!(QMode::RootOfUnity { m: 6 }.delta(), Scalar::one());
        let d8 = QMode::RootOfUnity { m: 8 }.delta();
        assert_eq!(&d8 * &d8, Scalar::int(2));
        let d16 = QMode::RootOfUnity { m: 16 }.delta();
        assert!(d16.as_rational().is_none());
    }

    #[test]
    fn generic_evaluates_at_plus_minus_one() {
        let m = QMode::Generic;
        let one = Q::from_integer(1.into());
        assert_eq!(m.qint(5).eval_at(&one), Some(Q::from_integer(5.into())));
        assert_eq!(m.qint(4).eval_at(&-one), Some(Q::from_integer((-4).into())));
    }

    #[test]
    fn json_round_trip() {
        for mode in modes() {
            let s = &(&mode.qint(5) * &mode.q_pow(-3)) + &Scalar::rational(1, 7);
            let v = mode.scalar_json(&s);
            assert_eq!(mode.scalar_from_json(&v).unwrap(), s, "{mode}: {v}");
        }
    }

    #[test]
    fn non_splitness_identities() {
        let m = QMode::Generic;
        for n in 0..=12i64 {
            for i in 0..=n / 2 {
                let lhs = &(&m.qint(n - 2 * i) * &m.qint(n)) - &(&m.qint(n - 2 * i - 1) * &m.qint(n + 1));
                assert_eq!(lhs, m.qint(2 * i + 1), "n={n} i={i}");
            }
        }
        for j in 0..=12i64 {
            let lhs: Scalar = (0..=j).map(|i| m.qint(2 * i + 1)).sum();
            let r = m.qint(j + 1);
            assert_eq!(lhs, &r * &r);
        }
    }

    #[test]
    fn zero_only_non_invertible() {
        assert!(Scalar::zero().inv().is_none());
        assert!(QMode::RootOfUnity { m: 4 }.delta().inv().is_none());
        assert!(QMode::RootOfUnity { m: 8 }.qint(3).inv().is_some());
    }
}

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use super::cyclotomic::Cyclo;
use super::poly::Poly;
use super::ratfunc::RatFunc;
use super::Q;

/// An exact coefficient.
///
/// Rational constants are always stored as [`Scalar::Rat`], so they mix freely
/// with either mode. Non-constant values are rational functions of `q`
/// (generic mode) or cyclotomic numbers (root-of-unity mode); mixing the two
/// is a programming error and panics.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(Q),
    Gen(RatFunc),
    Cyc(Cyclo),
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar::Rat(Q::zero())
    }

    pub fn one() -> Scalar {
        Scalar::Rat(Q::one())
    }

    pub fn int(k: i64) -> Scalar {
        Scalar::Rat(Q::from_integer(k.into()))
    }

    pub fn rational(n: i64, d: i64) -> Scalar {
        Scalar::Rat(Q::new(n.into(), d.into()))
    }

    pub(crate) fn from_ratfunc(r: RatFunc) -> Scalar {
        match r.as_constant() {
            Some(c) => Scalar::Rat(c),
            None => Scalar::Gen(r),
        }
    }

    pub(crate) fn from_cyclo(c: Cyclo) -> Scalar {
        match c.as_constant() {
            Some(k) => Scalar::Rat(k),
            None => Scalar::Cyc(c),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rat(c) if c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rat(c) if c.is_one())
    }

    pub fn as_rational(&self) -> Option<&Q> {
        match self {
            Scalar::Rat(c) => Some(c),
            _ => None,
        }
    }

    /// Multiplicative inverse; `None` exactly for zero.
    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Rat(c) => (!c.is_zero()).then(|| Scalar::Rat(c.recip())),
            Scalar::Gen(r) => r.inv().map(Scalar::from_ratfunc),
            Scalar::Cyc(c) => c.inv().map(Scalar::from_cyclo),
        }
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut out = Scalar::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = &out * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        out
    }

    /// Evaluate a generic-mode value at a rational `q` (e.g. `q = ±1`).
    /// `None` for cyclotomic values or a pole.
    pub fn eval_at(&self, q: &Q) -> Option<Q> {
        match self {
            Scalar::Rat(c) => Some(c.clone()),
            Scalar::Gen(r) => r.eval(q),
            Scalar::Cyc(_) => None,
        }
    }

    /// Numerator/denominator polynomials of a generic value (constants have
    /// denominator 1).
    pub fn as_ratfunc(&self) -> Option<RatFunc> {
        match self {
            Scalar::Rat(c) => Some(RatFunc::from_poly(Poly::constant(c.clone()))),
            Scalar::Gen(r) => Some(r.clone()),
            Scalar::Cyc(_) => None,
        }
    }

    /// Power-basis coefficients in `Q(ζ_m)`, padded to `phi`.
    pub fn cyclo_coeffs(&self, phi: usize) -> Option<Vec<Q>> {
        match self {
            Scalar::Rat(c) => {
                let mut v = vec![Q::zero(); phi.max(1)];
                v[0] = c.clone();
                Some(v)
            }
            Scalar::Cyc(c) => Some(c.coeffs().to_vec()),
            Scalar::Gen(_) => None,
        }
    }
}

fn add(a: &Scalar, b: &Scalar) -> Scalar {
    match (a, b) {
        (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
        (Scalar::Rat(x), Scalar::Gen(r)) | (Scalar::Gen(r), Scalar::Rat(x)) => {
            if x.is_zero() {
                return Scalar::Gen(r.clone());
            }
            Scalar::from_ratfunc(r.add(&RatFunc::from_poly(Poly::constant(x.clone()))))
        }
        (Scalar::Rat(x), Scalar::Cyc(c)) | (Scalar::Cyc(c), Scalar::Rat(x)) => {
            Scalar::from_cyclo(c.add_rational(x))
        }
        (Scalar::Gen(r), Scalar::Gen(s)) => Scalar::from_ratfunc(r.add(s)),
        (Scalar::Cyc(c), Scalar::Cyc(d)) => Scalar::from_cyclo(c.add(d)),
        _ => panic!("mixed generic and root-of-unity scalars"),
    }
}

fn mul(a: &Scalar, b: &Scalar) -> Scalar {
    match (a, b) {
        (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
        (Scalar::Rat(x), other) | (other, Scalar::Rat(x)) => {
            if x.is_zero() {
                return Scalar::zero();
            }
            if x.is_one() {
                return other.clone();
            }
            match other {
                Scalar::Gen(r) => Scalar::Gen(r.scale(x)),
                Scalar::Cyc(c) => Scalar::Cyc(c.scale(x)),
                Scalar::Rat(_) => unreachable!(),
            }
        }
        (Scalar::Gen(r), Scalar::Gen(s)) => Scalar::from_ratfunc(r.mul(s)),
        (Scalar::Cyc(c), Scalar::Cyc(d)) => Scalar::from_cyclo(c.mul(d)),
        _ => panic!("mixed generic and root-of-unity scalars"),
    }
}

fn neg(a: &Scalar) -> Scalar {
    match a {
        Scalar::Rat(x) => Scalar::Rat(-x),
        Scalar::Gen(r) => Scalar::Gen(r.neg()),
        Scalar::Cyc(c) => Scalar::Cyc(c.neg()),
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        add(self, rhs)
    }
}
impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        add(&self, &rhs)
    }
}
impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        add(self, &neg(rhs))
    }
}
impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        add(&self, &neg(&rhs))
    }
}
impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        mul(self, rhs)
    }
}
impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        mul(&self, &rhs)
    }
}
impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        mul(self, &rhs.inv().expect("division by zero scalar"))
    }
}
impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        &self / &rhs
    }
}
impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        neg(self)
    }
}
impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        neg(&self)
    }
}
impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = add(self, rhs);
    }
}
impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = add(self, &neg(rhs));
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |a, b| a * b)
    }
}

fn fmt_poly(p: &Poly, var: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    let mut first = true;
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c < &Q::zero();
        let abs = if neg { -c } else { c.clone() };
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { "-" } else { "+" })?;
        }
        first = false;
        match (k, abs.is_one()) {
            (0, _) => write!(f, "{abs}")?,
            (_, true) => {}
            _ => write!(f, "{abs}*")?,
        }
        match k {
            0 => {}
            1 => write!(f, "{var}")?,
            _ => write!(f, "{var}^{k}")?,
        }
    }
    Ok(())
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(c) => write!(f, "{c}"),
            Scalar::Gen(r) => {
                write!(f, "(")?;
                fmt_poly(r.num(), "q", f)?;
                write!(f, ")")?;
                if r.den().degree() != Some(0) {
                    write!(f, "/(")?;
                    fmt_poly(r.den(), "q", f)?;
                    write!(f, ")")?;
                }
                Ok(())
            }
            Scalar::Cyc(c) => {
                write!(f, "(")?;
                fmt_poly(&Poly::from_coeffs(c.coeffs().to_vec()), "z", f)?;
                write!(f, ")")
            }
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

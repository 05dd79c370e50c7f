//! Rational functions in one indeterminate `q` over the rationals.

use num_traits::{One, Zero};

use super::poly::Poly;
use super::Q;

/// `num / den` with `den` monic and `gcd(num, den) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFunc {
                num,
                den: Poly::one(),
            };
        }
        // Fast path: denominator a monomial (Laurent polynomials dominate).
        let g = if den.coeffs().len() - den.x_valuation() == 1 {
            let v = den.x_valuation().min(num.x_valuation());
            Poly::monomial(Q::one(), v)
        } else {
            num.gcd(&den)
        };
        let (num, den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        let lead = den.leading().cloned().expect("nonzero");
        if lead.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lead.recip();
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn q() -> Self {
        RatFunc::from_poly(Poly::x())
    }

    pub fn q_inv() -> Self {
        RatFunc {
            num: Poly::one(),
            den: Poly::x(),
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Rational value if the function is constant.
    pub fn as_constant(&self) -> Option<Q> {
        if self.den.degree() == Some(0) {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn add(&self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den.clone());
        }
        RatFunc::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }

    pub fn scale(&self, c: &Q) -> RatFunc {
        if c.is_zero() {
            return RatFunc::from_poly(Poly::zero());
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Option<RatFunc> {
        if self.is_zero() {
            None
        } else {
            Some(RatFunc::new(self.den.clone(), self.num.clone()))
        }
    }

    /// Evaluate at a rational point; `None` if the denominator vanishes there.
    pub fn eval(&self, x: &Q) -> Option<Q> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_to_lowest_terms() {
        // (q^2 - 1) / (q - 1) = q + 1
        let r = RatFunc::new(Poly::from_i64(&[-1, 0, 1]), Poly::from_i64(&[-1, 1]));
        assert_eq!(r.num(), &Poly::from_i64(&[1, 1]));
        assert_eq!(r.den(), &Poly::one());
    }

    #[test]
    fn monic_denominator() {
        let r = RatFunc::new(Poly::from_i64(&[1]), Poly::from_i64(&[0, 2]));
        assert_eq!(r.den(), &Poly::x());
        assert_eq!(r.num().coeff(0), Q::new(1.into(), 2.into()));
    }

    #[test]
    fn q_times_q_inverse() {
        let one = RatFunc::q().mul(&RatFunc::q_inv());
        assert_eq!(one.as_constant(), Some(Q::one()));
    }
}

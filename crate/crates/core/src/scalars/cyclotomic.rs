//! The cyclotomic field `Q(ζ_m)` in the power basis `1, ζ, …, ζ^{φ(m)-1}`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Zero};

use super::poly::Poly;
use super::Q;

/// Per-order data: the cyclotomic polynomial and `ζ^k` reduced for
/// `φ ≤ k < 2φ - 1`.
#[derive(Debug)]
pub struct CycloField {
    pub m: u32,
    pub phi: usize,
    pub modulus: Poly,
    reductions: Vec<Vec<Q>>,
}

fn divisors(m: u32) -> Vec<u32> {
    (1..=m).filter(|d| m.is_multiple_of(*d)).collect()
}

/// The `m`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(m: u32) -> Poly {
    let mut p = {
        let mut c = vec![0i64; m as usize + 1];
        c[0] = -1;
        c[m as usize] = 1;
        Poly::from_i64(&c)
    };
    for d in divisors(m) {
        if d < m {
            p = p.div_exact(&cyclotomic_polynomial(d));
        }
    }
    p
}

impl CycloField {
    fn build(m: u32) -> CycloField {
        let modulus = cyclotomic_polynomial(m);
        let phi = modulus.degree().expect("nonzero");
        let mut reductions = Vec::new();
        for k in phi..(2 * phi).max(phi + 1) {
            let r = Poly::monomial(Q::one(), k).div_rem(&modulus).1;
            let mut v = r.into_coeffs();
            v.resize(phi, Q::zero());
            reductions.push(v);
        }
        CycloField {
            m,
            phi,
            modulus,
            reductions,
        }
    }

    /// Shared field data for order `m`.
    pub fn get(m: u32) -> Arc<CycloField> {
        static CACHE: OnceLock<RwLock<HashMap<u32, Arc<CycloField>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
        if let Some(f) = cache.read().expect("cache poisoned").get(&m) {
            return f.clone();
        }
        let f = Arc::new(CycloField::build(m));
        cache
            .write()
            .expect("cache poisoned")
            .entry(m)
            .or_insert(f)
            .clone()
    }
}

/// An element of `Q(ζ_m)`; `coeffs.len() == φ(m)`.
#[derive(Clone, Debug)]
pub struct Cyclo {
    pub(crate) field: Arc<CycloField>,
    pub(crate) coeffs: Vec<Q>,
}

impl PartialEq for Cyclo {
    fn eq(&self, other: &Self) -> bool {
        self.field.m == other.field.m && self.coeffs == other.coeffs
    }
}
impl Eq for Cyclo {}

impl std::hash::Hash for Cyclo {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.m.hash(state);
        self.coeffs.hash(state);
    }
}

impl Cyclo {
    pub fn from_poly(field: Arc<CycloField>, p: &Poly) -> Cyclo {
        let r = if p.degree().is_none_or(|d| d < field.phi) {
            p.clone()
        } else {
            p.div_rem(&field.modulus).1
        };
        let mut coeffs = r.into_coeffs();
        coeffs.resize(field.phi, Q::zero());
        Cyclo { field, coeffs }
    }

    pub fn generator(field: Arc<CycloField>) -> Cyclo {
        Cyclo::from_poly(field, &Poly::x())
    }

    pub fn m(&self) -> u32 {
        self.field.m
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn as_constant(&self) -> Option<Q> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn check(&self, rhs: &Cyclo) {
        assert_eq!(self.field.m, rhs.field.m, "mixed cyclotomic orders");
    }

    pub fn add(&self, rhs: &Cyclo) -> Cyclo {
        self.check(rhs);
        Cyclo {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn add_rational(&self, c: &Q) -> Cyclo {
        let mut out = self.clone();
        out.coeffs[0] += c;
        out
    }

    pub fn neg(&self) -> Cyclo {
        Cyclo {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> Cyclo {
        Cyclo {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, rhs: &Cyclo) -> Cyclo {
        self.check(rhs);
        let phi = self.field.phi;
        let mut full = vec![Q::zero(); 2 * phi - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    full[i + j] += a * b;
                }
            }
        }
        let mut coeffs: Vec<Q> = full[..phi].to_vec();
        for (k, c) in full[phi..].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (t, r) in self.field.reductions[k].iter().enumerate() {
                if !r.is_zero() {
                    coeffs[t] += c * r;
                }
            }
        }
        Cyclo {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn inv(&self) -> Option<Cyclo> {
        if self.is_zero() {
            return None;
        }
        let a = Poly::from_coeffs(self.coeffs.clone());
        let (g, s, _) = a.ext_gcd(&self.field.modulus);
        debug_assert_eq!(g, Poly::one());
        Some(Cyclo::from_poly(self.field.clone(), &s))
    }
}

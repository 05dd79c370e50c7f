//! Rank over a prime field `F_P` with `q` sent to an element of `F_P`.
//!
//! For a root of unity `ζ_m` the prime satisfies `P ≡ 1 (mod m)` and `q` maps
//! to an element of exact order `m`; the map `Z[ζ_m] → F_P` is a ring
//! homomorphism, so full rank mod `P` certifies full rank exactly. For generic
//! `q` the image is the probe point `7/3`, and rank at a point never exceeds
//! the generic rank.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::linkstates::StandardModule;
use crate::scalars::{QMode, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    pub p: u64,
    /// Image of `q`.
    pub q: u64,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl PrimeField {
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: u64) -> u64 {
        self.pow(a, self.p - 2)
    }

    /// The `skip`-th suitable prime below `2^31` for this mode, largest first.
    pub fn for_mode(mode: &QMode, skip: usize) -> PrimeField {
        let m = match mode {
            QMode::Generic => 2,
            QMode::RootOfUnity { m } => *m as u64,
        };
        let mut k = ((1u64 << 31) - 1) / m;
        let mut seen = 0;
        loop {
            let p = k * m + 1;
            k -= 1;
            if !is_prime(p) {
                continue;
            }
            if seen < skip {
                seen += 1;
                continue;
            }
            let f = PrimeField { p, q: 0 };
            let q = match mode {
                QMode::Generic => f.mul(7, f.inv(3)),
                QMode::RootOfUnity { .. } => {
                    let factors = prime_factors(m);
                    (2..p)
                        .map(|g| f.pow(g, (p - 1) / m))
                        .find(|&w| factors.iter().all(|&r| f.pow(w, m / r) != 1))
                        .expect("cyclic group has an element of every order dividing P-1")
                }
            };
            return PrimeField { p, q };
        }
    }

    pub fn delta(&self) -> u64 {
        self.add(self.q, self.inv(self.q))
    }

    /// Image of a rational whose denominator is prime to `P`.
    pub fn reduce(&self, x: &Q) -> Option<u64> {
        let p = BigInt::from(self.p);
        let residue = |v: &BigInt| v.mod_floor(&p).to_u64().expect("below P");
        let den = residue(x.denom());
        if den.is_zero() {
            return None;
        }
        let num = residue(&x.numer().abs());
        let num = if x.numer().is_negative() { self.sub(0, num) } else { num };
        Some(self.mul(num, self.inv(den)))
    }

    /// Rank by forward Gaussian elimination; consumes the matrix.
    pub fn rank(&self, mut rows: Vec<Vec<u64>>) -> usize {
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut rank = 0;
        for c in 0..ncols {
            let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
                continue;
            };
            rows.swap(rank, piv);
            let inv = self.inv(rows[rank][c]);
            for x in rows[rank].iter_mut() {
                *x = self.mul(*x, inv);
            }
            let pivot_row = rows[rank].clone();
            for row in rows.iter_mut().skip(rank + 1) {
                if row[c] == 0 {
                    continue;
                }
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot_row).skip(c) {
                    *x = self.sub(*x, self.mul(f, y));
                }
            }
            rank += 1;
        }
        rank
    }

    /// Gram matrix of `V_{n,p}` reduced into this field.
    pub fn gram(&self, module: &StandardModule) -> Vec<Vec<u64>> {
        let d = module.dim();
        let delta = self.delta();
        let powers: Vec<u64> = (0..=module.n as u64).map(|k| self.pow(delta, k)).collect();
        let loops = module.gram_loops();
        (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| loops[i * d + j].map_or(0, |l| powers[l as usize]))
                    .collect()
            })
            .collect()
    }
}

/// True when the Gram matrix of `V_{n,p}` is certified nondegenerate by one
/// of a few primes. `false` means no certificate was found, not degeneracy.
pub fn gram_full_rank(module: &StandardModule, mode: &QMode) -> bool {
    (0..3).any(|skip| {
        let f = PrimeField::for_mode(mode, skip);
        f.rank(f.gram(module)) == module.dim()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_has_exact_order() {
        for m in [3u32, 4, 6, 8, 12] {
            let f = PrimeField::for_mode(&QMode::RootOfUnity { m }, 0);
            assert_eq!(f.p % m as u64, 1);
            assert_eq!(f.pow(f.q, m as u64), 1);
            assert!((1..m as u64).all(|k| f.pow(f.q, k) != 1));
        }
    }

    #[test]
    fn critical_gram_certified() {
        // (4,1) is critical at l = 3, (3,1) is not.
        let mode = QMode::for_l(3);
        assert!(gram_full_rank(&StandardModule::get(4, 1).unwrap(), &mode));
        assert!(!gram_full_rank(&StandardModule::get(3, 1).unwrap(), &mode));
    }
}

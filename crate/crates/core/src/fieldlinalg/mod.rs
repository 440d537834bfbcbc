//! Exact arithmetic over `F_p` and `F_{p^m}`, polynomials over them, and
//! linear algebra with subspaces kept in reduced row-echelon form.
//!
//! One context type [`Fq`] covers both the prime field (`m = 1`) and its
//! extensions; elements are coefficient vectors in the power basis of a
//! fixed irreducible modulus and carry no reference to their field.

mod matrix;
mod poly;

use std::fmt;

use num_bigint::BigUint;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use matrix::{random_subspace, Matrix, Subspace};
pub use poly::{factor_degrees, roots, FactorDegrees, Poly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not an odd prime below 2^61")]
    BadPrime(u64),
    #[error("modulus of degree {degree} is not irreducible over F_{p}")]
    Reducible { p: u64, degree: usize },
    #[error("modulus must be monic of degree at least 1")]
    BadModulus,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
}

/// An element of `F_{p^m}`: `m` coefficients, lowest power first, each in
/// `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Fe(Vec<u64>);

impl Fe {
    pub fn coeffs(&self) -> &[u64] {
        &self.0
    }
}

/// The field `F_{p^m} = F_p[t] / (f(t))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fq {
    p: u64,
    m: usize,
    /// Monic, `m + 1` coefficients, lowest first.
    modulus: Vec<u64>,
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for b in BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for b in BASES {
        let mut x = pow_mod(b, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The primes `>= from`, in order, `count` of them.
pub fn primes_from(from: u64, count: usize) -> Vec<u64> {
    (from.max(2)..).filter(|&q| is_prime(q)).take(count).collect()
}

impl Fq {
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if !(3..1 << 61).contains(&p) || !is_prime(p) {
            return Err(FieldError::BadPrime(p));
        }
        Ok(Fq {
            p,
            m: 1,
            modulus: vec![0, 1],
        })
    }

    /// `F_p[t]/(f)` after checking that `f` is monic and irreducible.
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Self, FieldError> {
        let base = Fq::prime(p)?;
        let m = modulus.len().saturating_sub(1);
        if m == 0 || modulus[m] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(FieldError::BadModulus);
        }
        if m > 1 {
            let f = Poly::new(modulus.iter().map(|&c| base.from_u64(c)).collect());
            let fd = factor_degrees(&base, &f)?;
            if !fd.squarefree || fd.degrees != vec![m] {
                return Err(FieldError::Reducible { p, degree: m });
            }
        }
        Ok(Fq { p, m, modulus })
    }

    /// `F_{p^m}` with a modulus found by random trial.
    pub fn extension<R: Rng + ?Sized>(p: u64, m: usize, rng: &mut R) -> Result<Self, FieldError> {
        if m <= 1 {
            return Fq::prime(p);
        }
        Fq::prime(p)?;
        loop {
            let mut f: Vec<u64> = (0..m).map(|_| rng.gen_range(0..p)).collect();
            f.push(1);
            match Fq::with_modulus(p, f) {
                Ok(field) => return Ok(field),
                Err(FieldError::Reducible { .. }) => continue,
                Err(e) => return Err(e),
            }
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// `q = p^m`.
    pub fn order(&self) -> BigUint {
        BigUint::from(self.p).pow(self.m as u32)
    }

    pub fn zero(&self) -> Fe {
        Fe(vec![0; self.m])
    }

    pub fn one(&self) -> Fe {
        self.from_u64(1)
    }

    pub fn from_u64(&self, a: u64) -> Fe {
        let mut v = vec![0; self.m];
        v[0] = a % self.p;
        Fe(v)
    }

    pub fn from_i64(&self, a: i64) -> Fe {
        let r = a.rem_euclid(self.p as i64) as u64;
        self.from_u64(r)
    }

    /// The element `t`, a generator of the extension over `F_p`.
    pub fn generator(&self) -> Fe {
        if self.m == 1 {
            // the modulus is `x`, so t reduces to 0; no useful generator
            return self.zero();
        }
        let mut v = vec![0; self.m];
        v[1] = 1;
        Fe(v)
    }

    /// Element with the given power-basis coefficients (reduced mod `p`).
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Fe {
        let mut v = vec![0; self.m];
        for (i, &c) in coeffs.iter().enumerate().take(self.m) {
            v[i] = c % self.p;
        }
        Fe(v)
    }

    /// An `F_p` element of another context viewed in this one.
    pub fn lift_prime(&self, a: &Fe) -> Fe {
        self.from_u64(a.0[0])
    }

    pub fn in_prime_field(&self, a: &Fe) -> bool {
        a.0[1..].iter().all(|&c| c == 0)
    }

    pub fn is_zero(&self, a: &Fe) -> bool {
        a.0.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self, a: &Fe) -> bool {
        a.0[0] == 1 && self.in_prime_field(a)
    }

    pub fn add(&self, a: &Fe, b: &Fe) -> Fe {
        Fe(a.0
            .iter()
            .zip(&b.0)
            .map(|(&x, &y)| {
                let s = x + y;
                if s >= self.p {
                    s - self.p
                } else {
                    s
                }
            })
            .collect())
    }

    pub fn neg(&self, a: &Fe) -> Fe {
        Fe(a.0.iter().map(|&x| if x == 0 { 0 } else { self.p - x }).collect())
    }

    pub fn sub(&self, a: &Fe, b: &Fe) -> Fe {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Fe, b: &Fe) -> Fe {
        let (p, m) = (self.p, self.m);
        if m == 1 {
            return Fe(vec![mul_mod(a.0[0], b.0[0], p)]);
        }
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                prod[i + j] = (prod[i + j] + mul_mod(x, y, p)) % p;
            }
        }
        // t^m = -Σ f_i t^i
        for d in (m..2 * m - 1).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for i in 0..m {
                let sub = mul_mod(c, self.modulus[i], p);
                prod[d - m + i] = (prod[d - m + i] + p - sub) % p;
            }
        }
        prod.truncate(m);
        Fe(prod)
    }

    pub fn scale(&self, a: &Fe, c: u64) -> Fe {
        Fe(a.0.iter().map(|&x| mul_mod(x, c % self.p, self.p)).collect())
    }

    pub fn pow(&self, a: &Fe, e: &BigUint) -> Fe {
        let mut r = self.one();
        for i in (0..e.bits()).rev() {
            r = self.mul(&r, &r);
            if e.bit(i) {
                r = self.mul(&r, a);
            }
        }
        r
    }

    pub fn pow_u64(&self, a: &Fe, e: u64) -> Fe {
        self.pow(a, &BigUint::from(e))
    }

    /// `a^{-1}`, or `None` for zero.
    pub fn inv(&self, a: &Fe) -> Option<Fe> {
        if self.is_zero(a) {
            return None;
        }
        if self.m == 1 {
            return Some(Fe(vec![pow_mod(a.0[0], self.p - 2, self.p)]));
        }
        Some(self.pow(a, &(self.order() - 2u32)))
    }

    pub fn div(&self, a: &Fe, b: &Fe) -> Option<Fe> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    /// The Frobenius automorphism `a ↦ a^p`.
    pub fn frobenius(&self, a: &Fe) -> Fe {
        if self.m == 1 {
            return a.clone();
        }
        self.pow_u64(a, self.p)
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        Fe((0..self.m).map(|_| rng.gen_range(0..self.p)).collect())
    }

    /// Square root when one exists in this field.
    pub fn sqrt(&self, a: &Fe) -> Option<Fe> {
        let f = Poly::new(vec![self.neg(a), self.zero(), self.one()]);
        poly::roots(self, &f).into_iter().next()
    }

    pub fn display(&self, a: &Fe) -> String {
        if self.m == 1 {
            return a.0[0].to_string();
        }
        let terms: Vec<String> =
            a.0.iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, &c)| match i {
                    0 => c.to_string(),
                    1 => format!("{c}t"),
                    _ => format!("{c}t^{i}"),
                })
                .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m == 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(f, "F_{}^{} (modulus {:?})", self.p, self.m, self.modulus)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..40).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert!(is_prime((1 << 61) - 1));
        assert!(!is_prime(3_215_031_751));
        assert!(Fq::prime(4).is_err());
        assert!(Fq::prime(2).is_err());
        assert_eq!(primes_from(100, 3), vec![101, 103, 107]);
    }

    #[test]
    fn extension_arithmetic() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = Fq::extension(7, 3, &mut rng).unwrap();
        for _ in 0..50 {
            let a = f.random(&mut rng);
            let b = f.random(&mut rng);
            if let Some(ai) = f.inv(&a) {
                assert!(f.is_one(&f.mul(&a, &ai)));
            }
            // Frobenius is additive and multiplicative, of order m
            assert_eq!(f.frobenius(&f.add(&a, &b)), f.add(&f.frobenius(&a), &f.frobenius(&b)));
            assert_eq!(f.frobenius(&f.mul(&a, &b)), f.mul(&f.frobenius(&a), &f.frobenius(&b)));
            let mut c = a.clone();
            for _ in 0..3 {
                c = f.frobenius(&c);
            }
            assert_eq!(c, a);
        }
    }

    #[test]
    fn reducible_modulus_rejected() {
        // x^2 - 1 = (x-1)(x+1)
        assert!(matches!(
            Fq::with_modulus(5, vec![4, 0, 1]),
            Err(FieldError::Reducible { .. })
        ));
        // x^2 + 1 over F_3
        assert!(Fq::with_modulus(3, vec![1, 0, 1]).is_ok());
    }

    #[test]
    fn square_roots() {
        let f = Fq::prime(13).unwrap();
        let r = f.sqrt(&f.from_u64(10)).unwrap();
        assert_eq!(f.mul(&r, &r), f.from_u64(10));
        assert!(f.sqrt(&f.from_u64(2)).is_none());
    }
}

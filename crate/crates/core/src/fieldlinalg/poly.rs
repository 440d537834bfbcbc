//! Univariate polynomials over an [`Fq`].

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Fe, FieldError, Fq};

/// Coefficients lowest first; no trailing zeros, so the zero polynomial is
/// empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Poly {
    c: Vec<Fe>,
}

impl Poly {
    /// Trims trailing zeros.
    pub fn new(mut c: Vec<Fe>) -> Self {
        while c.last().is_some_and(|x| x.0.iter().all(|&v| v == 0)) {
            c.pop();
        }
        Poly { c }
    }

    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn constant(_f: &Fq, a: Fe) -> Self {
        Poly::new(vec![a])
    }

    /// The monomial `x`.
    pub fn x(f: &Fq) -> Self {
        Poly::new(vec![f.zero(), f.one()])
    }

    /// `Π (x - r)`.
    pub fn from_roots(f: &Fq, roots: &[Fe]) -> Self {
        let mut p = Poly::constant(f, f.one());
        for r in roots {
            p = p.mul(f, &Poly::new(vec![f.neg(r), f.one()]));
        }
        p
    }

    /// Integer coefficients, lowest first.
    pub fn from_i64(f: &Fq, coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&a| f.from_i64(a)).collect())
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Fe> {
        self.c.last()
    }

    pub fn add(&self, f: &Fq, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let z = f.zero();
        Poly::new(
            (0..n)
                .map(|i| f.add(self.c.get(i).unwrap_or(&z), o.c.get(i).unwrap_or(&z)))
                .collect(),
        )
    }

    pub fn neg(&self, f: &Fq) -> Poly {
        Poly::new(self.c.iter().map(|a| f.neg(a)).collect())
    }

    pub fn sub(&self, f: &Fq, o: &Poly) -> Poly {
        self.add(f, &o.neg(f))
    }

    pub fn mul(&self, f: &Fq, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![f.zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, f: &Fq, a: &Fe) -> Poly {
        Poly::new(self.c.iter().map(|x| f.mul(x, a)).collect())
    }

    pub fn monic(&self, f: &Fq) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(l) => self.scale(f, &f.inv(l).expect("leading coefficient is nonzero")),
        }
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, f: &Fq, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let inv = f.inv(d.leading().unwrap()).unwrap();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![f.zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = f.mul(&r[i + dd], &inv);
            if f.is_zero(&c) {
                continue;
            }
            for (j, dj) in d.c.iter().enumerate() {
                r[i + j] = f.sub(&r[i + j], &f.mul(&c, dj));
            }
            q[i] = c;
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    pub fn rem(&self, f: &Fq, d: &Poly) -> Poly {
        self.divrem(f, d).1
    }

    /// Monic gcd; zero only when both inputs are zero.
    pub fn gcd(&self, f: &Fq, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(f, &b);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn derivative(&self, f: &Fq) -> Poly {
        Poly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| f.scale(a, i as u64))
                .collect(),
        )
    }

    pub fn eval(&self, f: &Fq, x: &Fe) -> Fe {
        let mut acc = f.zero();
        for a in self.c.iter().rev() {
            acc = f.add(&f.mul(&acc, x), a);
        }
        acc
    }

    /// `self^e mod m`.
    pub fn powmod(&self, f: &Fq, e: &BigUint, m: &Poly) -> Poly {
        let base = self.rem(f, m);
        let mut r = Poly::constant(f, f.one()).rem(f, m);
        for i in (0..e.bits()).rev() {
            r = r.mul(f, &r).rem(f, m);
            if e.bit(i) {
                r = r.mul(f, &base).rem(f, m);
            }
        }
        r
    }

    /// Coefficientwise Frobenius.
    pub fn frobenius(&self, f: &Fq) -> Poly {
        Poly::new(self.c.iter().map(|a| f.frobenius(a)).collect())
    }

    pub fn display(&self, f: &Fq) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let terms: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, a)| !f.is_zero(a))
            .map(|(i, a)| {
                let c = f.display(a);
                let c = if c.contains('+') { format!("({c})") } else { c };
                match i {
                    0 => c,
                    1 => format!("{c}x"),
                    _ => format!("{c}x^{i}"),
                }
            })
            .collect();
        terms.join(" + ")
    }
}

/// Degrees of the irreducible factors of the squarefree part, largest first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorDegrees {
    pub degrees: Vec<usize>,
    pub squarefree: bool,
}

/// Squarefree test plus distinct-degree factorization over `F_q`.
///
/// When `f` has a repeated factor the degrees describe its radical and the
/// flag is false.
pub fn factor_degrees(field: &Fq, f: &Poly) -> Result<FactorDegrees, FieldError> {
    let deg = f.degree().ok_or(FieldError::ZeroPolynomial)?;
    let mut g = f.monic(field);
    if deg == 0 {
        return Ok(FactorDegrees {
            degrees: Vec::new(),
            squarefree: true,
        });
    }
    let d = g.gcd(field, &g.derivative(field));
    let squarefree = d.degree() == Some(0);
    if !squarefree {
        g = radical(field, &g);
    }
    let q = field.order();
    let x = Poly::x(field);
    let mut h = x.clone();
    let mut degrees = Vec::new();
    let mut i = 1;
    while let Some(dg) = g.degree() {
        if dg < 2 * i {
            if dg > 0 {
                degrees.push(dg);
            }
            break;
        }
        h = h.powmod(field, &q, &g);
        let common = g.gcd(field, &h.sub(field, &x));
        let cd = common.degree().unwrap();
        if cd > 0 {
            degrees.extend(std::iter::repeat_n(i, cd / i));
            g = g.divrem(field, &common).0;
            h = h.rem(field, &g);
        }
        i += 1;
    }
    degrees.sort_unstable_by(|a, b| b.cmp(a));
    Ok(FactorDegrees { degrees, squarefree })
}

/// Product of the distinct monic irreducible factors of `g`, valid while
/// every multiplicity is below `p`.
fn radical(field: &Fq, g: &Poly) -> Poly {
    let d = g.gcd(field, &g.derivative(field));
    g.divrem(field, &d).0.monic(field)
}

/// The distinct roots of `f` in the field, sorted.
pub fn roots(field: &Fq, f: &Poly) -> Vec<Fe> {
    let Some(deg) = f.degree() else {
        return Vec::new();
    };
    if deg == 0 {
        return Vec::new();
    }
    let g = f.monic(field);
    let x = Poly::x(field);
    let xq = x.powmod(field, &field.order(), &g);
    let mut lin = g.gcd(field, &xq.sub(field, &x));
    if lin.degree() == Some(0) {
        return Vec::new();
    }
    lin = radical(field, &lin);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut out = Vec::new();
    split_linear(field, &lin, &mut rng, &mut out);
    out.sort();
    out
}

/// Cantor–Zassenhaus on a product of distinct linear factors (`q` odd).
fn split_linear(field: &Fq, g: &Poly, rng: &mut ChaCha8Rng, out: &mut Vec<Fe>) {
    match g.degree() {
        Some(0) | None => return,
        Some(1) => {
            let m = g.monic(field);
            out.push(field.neg(&m.c[0]));
            return;
        }
        _ => {}
    }
    let e = (field.order() - 1u32) / 2u32;
    loop {
        let a = field.random(rng);
        let shift = Poly::new(vec![a, field.one()]);
        let t = shift
            .powmod(field, &e, g)
            .sub(field, &Poly::constant(field, field.one()));
        let d = g.gcd(field, &t);
        let dd = d.degree().unwrap_or(0);
        if dd > 0 && dd < g.degree().unwrap() {
            split_linear(field, &d, rng, out);
            split_linear(field, &g.divrem(field, &d).0, rng, out);
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_factorizations() {
        let f3 = Fq::prime(3).unwrap();
        let fd = factor_degrees(&f3, &Poly::from_i64(&f3, &[1, 0, 1])).unwrap();
        assert_eq!(fd.degrees, vec![2]);
        assert!(fd.squarefree);
        let f5 = Fq::prime(5).unwrap();
        let fd = factor_degrees(&f5, &Poly::from_i64(&f5, &[-1, 0, 1])).unwrap();
        assert_eq!(fd.degrees, vec![1, 1]);
        let fd = factor_degrees(&f5, &Poly::from_i64(&f5, &[1, -2, 1])).unwrap();
        assert!(!fd.squarefree);
        assert_eq!(fd.degrees, vec![1]);
        assert!(factor_degrees(&f5, &Poly::zero()).is_err());
    }

    #[test]
    fn degrees_sum_to_degree() {
        let f = Fq::prime(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..200 {
            let mut c: Vec<Fe> = (0..6).map(|_| f.random(&mut rng)).collect();
            c.push(f.one());
            let p = Poly::new(c);
            let fd = factor_degrees(&f, &p).unwrap();
            if fd.squarefree {
                assert_eq!(fd.degrees.iter().sum::<usize>(), 6);
            }
        }
    }

    #[test]
    fn roots_of_split_polynomial() {
        let f = Fq::prime(31).unwrap();
        let rs: Vec<Fe> = [3u64, 7, 20].iter().map(|&a| f.from_u64(a)).collect();
        let mut p = Poly::from_roots(&f, &rs);
        // times an irreducible quadratic: x^2 - 3 (3 is a non-residue mod 31)
        p = p.mul(&f, &Poly::from_i64(&f, &[-3, 0, 1]));
        assert_eq!(roots(&f, &p), rs);
    }

    #[test]
    fn roots_in_extension() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = Fq::extension(11, 2, &mut rng).unwrap();
        // x^2 + 1 is irreducible over F_11 and splits over F_121
        let rs = roots(&f, &Poly::from_i64(&f, &[1, 0, 1]));
        assert_eq!(rs.len(), 2);
        for r in &rs {
            assert!(f.is_zero(&f.add(&f.mul(r, r), &f.one())));
            assert!(!f.in_prime_field(r));
        }
        // Frobenius swaps them
        assert_eq!(f.frobenius(&rs[0]), rs[1]);
    }
}

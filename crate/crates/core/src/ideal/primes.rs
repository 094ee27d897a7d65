//! Splitting of rational primes through the finite algebra `O_K / p O_K`.
//!
//! The radical is the kernel of a power of Frobenius, the `F_p`-rational
//! points of the semisimple quotient are the Frobenius-fixed elements, and
//! primitive idempotents come from the distinct values those elements take.

use num::{BigInt, One, ToPrimitive, Zero};
use serde::Serialize;

use super::modp::{kernel, mulmod, powmod, rank, span};
use super::Ideal;
use crate::error::{Error, Result};
use crate::exact::matrix::IntMatrix;
use crate::field::NumberField;

/// Above this, scanning `F_p` for the values of a separating element is too slow.
const MAX_SCAN_PRIME: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeIdeal {
    pub p: u64,
    /// Ramification index.
    pub e: u32,
    /// Inertia degree.
    pub f: u32,
    pub ideal: Ideal,
}

impl PrimeIdeal {
    pub fn norm(&self) -> BigInt {
        num::pow(BigInt::from(self.p), self.f as usize)
    }

    pub fn norm_f64(&self) -> f64 {
        (self.p as f64).powi(self.f as i32)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeSplitting {
    pub p: u64,
    pub primes: Vec<PrimeIdeal>,
}

impl PrimeSplitting {
    /// `sum e f`, which must equal the degree.
    pub fn ef_sum(&self) -> u32 {
        self.primes.iter().map(|q| q.e * q.f).sum()
    }

    /// `(e, f)` pairs in prime order.
    pub fn types(&self) -> Vec<(u32, u32)> {
        self.primes.iter().map(|q| (q.e, q.f)).collect()
    }
}

#[derive(Clone, Debug, Serialize)]
struct Algebra {
    n: usize,
    p: u64,
    mult: Vec<Vec<Vec<u64>>>,
}

impl Algebra {
    fn new(k: &NumberField, p: u64) -> Algebra {
        let n = k.degree();
        let pb = BigInt::from(p);
        let mult = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        k.basis_product(i, j)
                            .iter()
                            .map(|c| {
                                let r = ((c % &pb) + &pb) % &pb;
                                r.to_u64().unwrap()
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Algebra { n, p, mult }
    }

    fn one(&self) -> Vec<u64> {
        let mut v = vec![0; self.n];
        v[0] = 1;
        v
    }

    fn basis(&self, j: usize) -> Vec<u64> {
        let mut v = vec![0; self.n];
        v[j] = 1;
        v
    }

    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let (n, p) = (self.n, self.p);
        let mut out = vec![0u64; n];
        for i in 0..n {
            if a[i] == 0 {
                continue;
            }
            for j in 0..n {
                if b[j] == 0 {
                    continue;
                }
                let ab = mulmod(a[i], b[j], p);
                for (o, &c) in out.iter_mut().zip(&self.mult[i][j]) {
                    if c != 0 {
                        *o = (*o + mulmod(ab, c, p)) % p;
                    }
                }
            }
        }
        out
    }

    fn pow(&self, a: &[u64], mut e: u64) -> Vec<u64> {
        let mut base = a.to_vec();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn sub(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| (x + self.p - y) % self.p).collect()
    }

    fn scale(&self, a: &[u64], c: u64) -> Vec<u64> {
        a.iter().map(|x| mulmod(*x, c, self.p)).collect()
    }

    /// Matrix (as rows) of the linear map `x -> x^p`.
    fn frobenius_rows(&self) -> Vec<Vec<u64>> {
        let cols: Vec<Vec<u64>> = (0..self.n).map(|j| self.pow(&self.basis(j), self.p)).collect();
        (0..self.n).map(|i| cols.iter().map(|c| c[i]).collect()).collect()
    }

    /// Distinct values taken by `x` on the local factors of `eA`, for `x`
    /// with `x^p = x`.
    fn values(&self, x: &[u64], e: &[u64]) -> Result<Vec<u64>> {
        let p = self.p;
        let mut powers = vec![e.to_vec()];
        loop {
            let next = self.mul(powers.last().unwrap(), x);
            powers.push(next);
            let rows: Vec<Vec<u64>> = (0..self.n).map(|i| powers.iter().map(|v| v[i]).collect()).collect();
            let ker = kernel(&rows, powers.len(), p);
            if let Some(c) = ker.first() {
                // c[0] + c[1] t + ... vanishes at every value
                let d = c.iter().rposition(|&v| v != 0).unwrap_or(0);
                if d == 1 {
                    let root = mulmod(p - c[0] % p, super::modp::invmod(c[1], p), p);
                    return Ok(vec![root]);
                }
                if p > MAX_SCAN_PRIME {
                    return Err(Error::Unsupported(format!("splitting {p} needs polynomial root finding")));
                }
                let mut roots = Vec::new();
                for t in 0..p {
                    let mut acc = 0u64;
                    for &ci in c[..=d].iter().rev() {
                        acc = (mulmod(acc, t, p) + ci) % p;
                    }
                    if acc == 0 {
                        roots.push(t);
                        if roots.len() == d {
                            break;
                        }
                    }
                }
                return Ok(roots);
            }
        }
    }
}

/// Factor `p O_K` into prime ideals.
pub fn factor_prime(k: &NumberField, p: u64) -> Result<PrimeSplitting> {
    if p < 2 || !is_prime_u64(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    let n = k.degree();
    let alg = Algebra::new(k, p);
    let frob = alg.frobenius_rows();

    // radical: kernel of Frobenius^t with p^t >= n
    let mut t = 1u32;
    while (p as u128).pow(t) < n as u128 {
        t += 1;
    }
    let mut ft = frob.clone();
    for _ in 1..t {
        ft = mat_mul(&ft, &frob, p);
    }
    let radical = kernel(&ft, n, p);

    // Frobenius-fixed elements: one copy of F_p per prime
    let mut fm = frob.clone();
    for (i, row) in fm.iter_mut().enumerate() {
        row[i] = (row[i] + p - 1) % p;
    }
    let fixed = kernel(&fm, n, p);
    let g = fixed.len();

    let mut idems = vec![alg.one()];
    for u in &fixed {
        if idems.len() == g {
            break;
        }
        let mut next = Vec::new();
        for e in &idems {
            let x = alg.mul(e, u);
            let vals = alg.values(&x, e)?;
            if vals.len() <= 1 {
                next.push(e.clone());
                continue;
            }
            for c in vals {
                let shifted = alg.sub(&x, &alg.scale(e, c));
                let ind = alg.mul(e, &alg.pow(&shifted, p - 1));
                next.push(alg.sub(e, &ind));
            }
        }
        idems = next;
    }
    if idems.len() != g {
        return Err(Error::Numerical(format!("found {} local factors above {p}, expected {g}", idems.len())));
    }

    let mut primes = Vec::with_capacity(g);
    for e in &idems {
        let ea: Vec<Vec<u64>> = (0..n).map(|j| alg.mul(e, &alg.basis(j))).collect();
        let ej: Vec<Vec<u64>> = radical.iter().map(|r| alg.mul(e, r)).collect();
        let dim_a = rank(&ea, p);
        let dim_j = rank(&ej, p);
        let f = dim_a - dim_j;
        if f == 0 || dim_a % f != 0 {
            return Err(Error::Numerical(format!("inconsistent local factor above {p}")));
        }
        // maximal ideal: (1 - e) A + J
        let ce = alg.sub(&alg.one(), e);
        let mut gens: Vec<Vec<u64>> = (0..n).map(|j| alg.mul(&ce, &alg.basis(j))).collect();
        gens.extend(radical.iter().cloned());
        let gens = span(&gens, p);
        let mut cols: Vec<Vec<BigInt>> = gens.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect();
        for i in 0..n {
            let mut c = vec![BigInt::zero(); n];
            c[i] = BigInt::from(p);
            cols.push(c);
        }
        let ideal = Ideal::from_module_basis(&IntMatrix::from_cols(n, &cols), BigInt::one())?;
        let q = PrimeIdeal { p, e: (dim_a / f) as u32, f: f as u32, ideal };
        if q.ideal.numerator_norm() != q.norm() {
            return Err(Error::Numerical(format!("prime above {p} has the wrong norm")));
        }
        primes.push(q);
    }
    primes.sort_by(|a, b| (a.f, a.e, a.ideal.basis_columns()).cmp(&(b.f, b.e, b.ideal.basis_columns())));
    let split = PrimeSplitting { p, primes };
    if split.ef_sum() as usize != n {
        return Err(Error::Numerical(format!("sum of e f above {p} is not the degree")));
    }
    Ok(split)
}

fn mat_mul(a: &[Vec<u64>], b: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = a.len();
    let m = b[0].len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..b.len()).fold(0u64, |acc, t| (acc + mulmod(a[i][t], b[t][j], p)) % p))
                .collect()
        })
        .collect()
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % q == 0 {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Factor a nonzero integer into primes (trial division, then a primality
/// test on a word-sized cofactor).
pub fn factor_integer(m: &BigInt) -> Result<Vec<(u64, u32)>> {
    if m.is_zero() {
        return Err(Error::InvalidInput("cannot factor zero".into()));
    }
    let mut rest = num::Signed::abs(m);
    let mut out = Vec::new();
    let mut q = 2u64;
    while BigInt::from(q) * BigInt::from(q) <= rest {
        if let Some(r) = rest.to_u64() {
            if is_prime_u64(r) {
                break;
            }
        }
        if q > 1_000_000 {
            return Err(Error::Unsupported(format!("cannot factor {m}: large cofactor")));
        }
        let qb = BigInt::from(q);
        let mut e = 0;
        while (&rest % &qb).is_zero() {
            rest /= &qb;
            e += 1;
        }
        if e > 0 {
            out.push((q, e));
        }
        q += if q == 2 { 1 } else { 2 };
    }
    if !rest.is_one() {
        let r = rest
            .to_u64()
            .ok_or_else(|| Error::Unsupported(format!("cannot factor {m}: cofactor exceeds 64 bits")))?;
        match out.iter_mut().find(|(p, _)| *p == r) {
            Some(entry) => entry.1 += 1,
            None => out.push((r, 1)),
        }
        out.sort();
    }
    Ok(out)
}

/// `v_P(A)` for an integral ideal `A`.
pub fn valuation(k: &NumberField, q: &PrimeIdeal, a: &Ideal) -> Result<u32> {
    let na = a.integral_norm()?;
    let mut bound = 0u32;
    let pb = BigInt::from(q.p);
    let mut r = na;
    while (&r % &pb).is_zero() {
        r /= &pb;
        bound += 1;
    }
    let bound = bound / q.f;
    let mut v = 0;
    let mut pk = q.ideal.clone();
    while v < bound && pk.contains_ideal(a) {
        v += 1;
        if v < bound {
            pk = pk.mul(k, &q.ideal);
        }
    }
    Ok(v)
}

/// Prime factorisation of a fractional ideal, primes in increasing order of
/// the rational prime below.
pub fn factor_ideal(k: &NumberField, a: &Ideal) -> Result<Vec<(PrimeIdeal, i64)>> {
    let num = a.numerator();
    let mut ps: Vec<u64> = factor_integer(&num.numerator_norm())?.into_iter().map(|(p, _)| p).collect();
    let dfac = factor_integer(a.denominator())?;
    for (p, _) in &dfac {
        if !ps.contains(p) {
            ps.push(*p);
        }
    }
    ps.sort();
    let mut out = Vec::new();
    for p in ps {
        let split = factor_prime(k, p)?;
        let dv = dfac.iter().find(|(q, _)| *q == p).map_or(0, |(_, e)| *e as i64);
        for q in split.primes {
            let v = valuation(k, &q, &num)? as i64 - dv * q.e as i64;
            if v != 0 {
                out.push((q, v));
            }
        }
    }
    Ok(out)
}

/// Rebuild an ideal from its factorisation.
pub fn product_of_primes(k: &NumberField, fac: &[(PrimeIdeal, i64)]) -> Result<Ideal> {
    let mut acc = Ideal::unit(k);
    for (q, e) in fac {
        let part = if *e >= 0 {
            q.ideal.pow(k, *e as u32)
        } else {
            q.ideal.inverse(k)?.pow(k, (-e) as u32)
        };
        acc = acc.mul(k, &part);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::Poly;
    use crate::field::{make_field, rationals};

    fn field(c: &[i64]) -> NumberField {
        make_field("K", &Poly::from_i64(c), None, 128).unwrap()
    }

    #[test]
    fn gaussian_splitting() {
        let k = field(&[1, 0, 1]);
        assert_eq!(factor_prime(&k, 5).unwrap().types(), vec![(1, 1), (1, 1)]);
        assert_eq!(factor_prime(&k, 2).unwrap().types(), vec![(2, 1)]);
        assert_eq!(factor_prime(&k, 3).unwrap().types(), vec![(1, 2)]);
        let q = rationals();
        assert_eq!(factor_prime(&q, 7).unwrap().types(), vec![(1, 1)]);
    }

    #[test]
    fn conductor_primes_use_the_true_basis() {
        // x^2 - 5: 2 is inert in Z[(1+√5)/2] though x^2 - 5 ≡ (x+1)^2 mod 2
        let k = field(&[-5, 0, 1]);
        assert_eq!(factor_prime(&k, 2).unwrap().types(), vec![(1, 2)]);
        // Q(ζ8): 2 totally ramified, 17 split completely, 3 splits into f=2
        let z8 = field(&[1, 0, 0, 0, 1]);
        assert_eq!(factor_prime(&z8, 2).unwrap().types(), vec![(4, 1)]);
        assert_eq!(factor_prime(&z8, 17).unwrap().primes.len(), 4);
        assert_eq!(factor_prime(&z8, 3).unwrap().types(), vec![(1, 2), (1, 2)]);
    }

    #[test]
    fn factorisation_round_trips() {
        let k = field(&[5, 0, 1]);
        let x = k.from_basis_coords_i64(&[3, 7]);
        let a = Ideal::principal(&k, &x).unwrap();
        let fac = factor_ideal(&k, &a).unwrap();
        assert_eq!(product_of_primes(&k, &fac).unwrap(), a);
        let norm: BigInt = fac.iter().map(|(q, e)| num::pow(q.norm(), *e as usize)).product();
        assert_eq!(norm, BigInt::from(9 + 5 * 49));
    }

    #[test]
    fn integer_factoring() {
        assert_eq!(factor_integer(&BigInt::from(360)).unwrap(), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factor_integer(&BigInt::from(-97)).unwrap(), vec![(97, 1)]);
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(561));
    }
}

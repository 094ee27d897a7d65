//! Integral bases for the supported field families.
//!
//! No general maximal-order algorithm is used: the basis comes from a
//! closed-form family description and is verified by the caller (ring closure
//! and exact discriminant).

use num::{BigInt, BigRational, Integer, One, Zero};

use super::{charpoly, is_square, is_squarefree_int, power_sums, squarefree_decomposition, BasisSource};
use crate::exact::matrix::{hnf, IntMatrix, RatMatrix};
use crate::exact::poly::{rat, rat_frac, Poly};
use crate::error::{Error, Result};

type Basis = Vec<Vec<BigRational>>;

/// Integral basis rows (power-basis coordinates) for a supported family.
pub fn integral_basis(f: &Poly) -> Result<(Basis, BasisSource)> {
    let n = f.degree().unwrap_or(0);
    if n == 1 {
        return Ok((vec![vec![rat(1)]], BasisSource::Rational));
    }
    if n == 2 {
        return Ok((quadratic_basis(f), BasisSource::Quadratic));
    }
    if let Some(m) = cyclotomic_index(f) {
        return Ok((power_basis(n), BasisSource::Cyclotomic(m)));
    }
    let d = f.discriminant().to_integer();
    if is_squarefree_int(&d) {
        return Ok((power_basis(n), BasisSource::SquarefreeDiscriminant));
    }
    if n == 4 {
        if let Some(b) = biquadratic_basis(f)? {
            return Ok((b, BasisSource::Biquadratic));
        }
    }
    Err(Error::Unsupported(format!(
        "no integral basis known for {f}: supply one or use a quadratic, cyclotomic, biquadratic or squarefree-discriminant polynomial"
    )))
}

fn power_basis(n: usize) -> Basis {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { rat(1) } else { rat(0) }).collect())
        .collect()
}

/// Fundamental discriminant of `Q(sqrt d)` for squarefree `d`.
pub fn quadratic_discriminant(d: &BigInt) -> BigInt {
    if d.mod_floor(&BigInt::from(4)) == BigInt::one() {
        d.clone()
    } else {
        d * 4
    }
}

/// For `x^2 + bx + c` with `b^2 - 4c = k^2 d`: basis `{1, ω}` where
/// `sqrt d = (2θ + b)/k` and `ω = sqrt d` or `(1 + sqrt d)/2`.
fn quadratic_basis(f: &Poly) -> Basis {
    let b = f.coeff(1).to_integer();
    let c = f.coeff(0).to_integer();
    let disc = &b * &b - &c * 4;
    let (k, d) = squarefree_decomposition(&disc);
    let kq = BigRational::from_integer(k);
    // sqrt d = (b + 2θ)/k
    let sqrt_d = vec![BigRational::from_integer(b) / &kq, rat(2) / &kq];
    let omega = if d.mod_floor(&BigInt::from(4)) == BigInt::one() {
        vec![(rat(1) + &sqrt_d[0]) / rat(2), &sqrt_d[1] / rat(2)]
    } else {
        sqrt_d
    };
    vec![vec![rat(1), rat(0)], omega]
}

/// `Φ_m = prod over d | m of (x^d - 1)^{μ(m/d)}`.
pub fn cyclotomic(m: u64) -> Poly {
    let mut num = Poly::one();
    let mut den = Poly::one();
    for d in (1..=m).filter(|d| m % d == 0) {
        let t = monomial(d as usize).sub(&Poly::one());
        match mobius(m / d) {
            1 => num = num.mul(&t),
            -1 => den = den.mul(&t),
            _ => {}
        }
    }
    num.div_rem(&den).0
}

fn mobius(mut k: u64) -> i32 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= k {
        if k % p == 0 {
            k /= p;
            if k % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if k > 1 {
        sign = -sign;
    }
    sign
}

fn monomial(k: usize) -> Poly {
    let mut c = vec![rat(0); k + 1];
    c[k] = rat(1);
    Poly::new(c)
}

fn euler_phi(mut m: u64) -> u64 {
    let mut out = m;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if m > 1 {
        out -= out / m;
    }
    out
}

/// `m` with `f = Φ_m`, preferring the smallest (Φ_m = Φ_{2m}(−x) is not equal
/// as a polynomial, so the match is unique).
pub fn cyclotomic_index(f: &Poly) -> Option<u64> {
    let n = f.degree()? as u64;
    (1..=2 * n * n + 2)
        .filter(|&m| euler_phi(m) == n)
        .find(|&m| cyclotomic(m) == *f)
}

fn mulmod(a: &[BigRational], b: &[BigRational], f: &Poly) -> Vec<BigRational> {
    let n = f.degree().unwrap();
    let r = Poly::new(a.to_vec()).mul(&Poly::new(b.to_vec())).rem(f);
    let mut c = r.coeffs().to_vec();
    c.resize(n, rat(0));
    c
}

fn trace(a: &[BigRational], sums: &[BigRational]) -> BigRational {
    a.iter().zip(sums).map(|(x, y)| x * y).sum()
}

fn lattice_disc(gens: &Basis, f: &Poly) -> BigRational {
    let n = gens.len();
    let sums = power_sums(f, 2 * n);
    let mut m = RatMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, trace(&mulmod(&gens[i], &gens[j], f), &sums));
        }
    }
    m.det()
}

fn is_integral(x: &[BigRational], f: &Poly) -> bool {
    let n = f.degree().unwrap();
    let mut m = RatMatrix::zeros(n, n);
    let mut col = x.to_vec();
    let mut th = vec![rat(0); n];
    th[1] = rat(1);
    for k in 0..n {
        for i in 0..n {
            m.set(i, k, col[i].clone());
        }
        col = mulmod(&col, &th, f);
    }
    charpoly(&m).integer_coeffs().is_some()
}

/// Z-basis of the module generated by rational vectors.
fn module_basis(gens: &[Vec<BigRational>]) -> Basis {
    let n = gens[0].len();
    let den = gens
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let cols: Vec<Vec<BigInt>> = gens
        .iter()
        .map(|g| g.iter().map(|q| (q * BigRational::from_integer(den.clone())).to_integer()).collect())
        .collect();
    let h = hnf(&IntMatrix::from_cols(n, &cols));
    (0..h.ncols())
        .map(|j| h.col(j).into_iter().map(|v| BigRational::new(v, den.clone())).collect())
        .collect()
}

/// Enlarge an order of known index-square prime support until its
/// discriminant reaches `target`, adjoining integral elements `x/p`.
fn saturate(mut basis: Basis, f: &Poly, target: &BigInt) -> Result<Basis> {
    let n = basis.len();
    loop {
        let d = lattice_disc(&basis, f);
        let ratio = &d / BigRational::from_integer(target.clone());
        if ratio.is_one() {
            return Ok(basis);
        }
        if !ratio.is_integer() || !is_square(&ratio.to_integer()) {
            return Err(Error::Unsupported("family basis construction failed to reach the expected discriminant".into()));
        }
        let idx = ratio.to_integer().sqrt();
        let p = smallest_prime_factor(&idx);
        let pu = u32::try_from(&p).map_err(|_| Error::Unsupported("index prime too large".into()))?;
        let mut found = None;
        let total = (pu as u64).pow(n as u32);
        for code in 1..total {
            let mut rest = code;
            let mut x = vec![rat(0); n];
            for b in &basis {
                let a = rest % pu as u64;
                rest /= pu as u64;
                for i in 0..n {
                    x[i] += &b[i] * rat(a as i64);
                }
            }
            let x: Vec<BigRational> = x.into_iter().map(|v| v / rat(pu as i64)).collect();
            if is_integral(&x, f) {
                found = Some(x);
                break;
            }
        }
        let x = found.ok_or_else(|| Error::Unsupported("could not saturate the order".into()))?;
        let mut gens = basis.clone();
        gens.push(x);
        basis = module_basis(&gens);
    }
}

fn smallest_prime_factor(v: &BigInt) -> BigInt {
    let mut p = BigInt::from(2);
    while &p * &p <= *v {
        if (v % &p).is_zero() {
            return p;
        }
        p += 1;
    }
    v.clone()
}

/// `x^4 + a x^2 + c^2` with Galois group `C2 x C2`. The elements
/// `θ ± (θ^3 + aθ)/c` square to `-a ∓ 2c`, giving two quadratic subfields;
/// the order they generate is saturated at its index primes until the
/// discriminant equals the product of the three quadratic discriminants.
fn biquadratic_basis(f: &Poly) -> Result<Option<Basis>> {
    if !f.coeff(1).is_zero() || !f.coeff(3).is_zero() {
        return Ok(None);
    }
    let a = f.coeff(2).to_integer();
    let b = f.coeff(0).to_integer();
    if !is_square(&b) {
        return Ok(None);
    }
    let c = b.sqrt();
    let two = BigInt::from(2);
    let d1_full: BigInt = &c * &two - &a;
    let d2_full: BigInt = -(&c * &two) - &a;
    if d1_full.is_zero() || d2_full.is_zero() || is_square(&d1_full) || is_square(&d2_full) {
        return Ok(None);
    }
    let (k1, d1) = squarefree_decomposition(&d1_full);
    let (k2, d2) = squarefree_decomposition(&d2_full);
    if d1 == d2 {
        return Ok(None);
    }
    let aq = BigRational::from_integer(a.clone());
    let cq = BigRational::from_integer(c.clone());
    // (θ^3 + aθ)/c
    let t = vec![rat(0), &aq / &cq, rat(0), rat(1) / &cq];
    let s1: Vec<BigRational> = (0..4)
        .map(|i| if i == 1 { rat(1) - &t[i] } else { -t[i].clone() })
        .collect();
    let s2: Vec<BigRational> = (0..4)
        .map(|i| if i == 1 { rat(1) + &t[i] } else { t[i].clone() })
        .collect();
    let omega = |s: &[BigRational], k: &BigInt, d: &BigInt| -> Vec<BigRational> {
        let kq = BigRational::from_integer(k.clone());
        let root: Vec<BigRational> = s.iter().map(|v| v / &kq).collect();
        if d.mod_floor(&BigInt::from(4)) == BigInt::one() {
            root.iter()
                .enumerate()
                .map(|(i, v)| (if i == 0 { rat(1) } else { rat(0) } + v) * rat_frac(1, 2))
                .collect()
        } else {
            root
        }
    };
    let w1 = omega(&s1, &k1, &d1);
    let w2 = omega(&s2, &k2, &d2);
    let w12 = mulmod(&w1, &w2, f);
    let one = vec![rat(1), rat(0), rat(0), rat(0)];
    let d3 = squarefree_decomposition(&(&d1 * &d2)).1;
    let target = quadratic_discriminant(&d1) * quadratic_discriminant(&d2) * quadratic_discriminant(&d3);
    let start = module_basis(&[one, w1, w2, w12]);
    saturate(start, f, &target).map(Some)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(cyclotomic(8), Poly::from_i64(&[1, 0, 0, 0, 1]));
        assert_eq!(cyclotomic(12), Poly::from_i64(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic(3), Poly::from_i64(&[1, 1, 1]));
        assert_eq!(cyclotomic_index(&Poly::from_i64(&[1, 0, 0, 0, 1])), Some(8));
        assert_eq!(cyclotomic_index(&Poly::from_i64(&[1, 0, -10, 0, 1])), None);
    }

    #[test]
    fn biquadratic_discriminants() {
        let f = Poly::from_i64(&[1, 0, -10, 0, 1]);
        let (b, src) = integral_basis(&f).unwrap();
        assert_eq!(src, BasisSource::Biquadratic);
        assert_eq!(lattice_disc(&b, &f), rat(2304));
        let f = Poly::from_i64(&[484, 0, 48, 0, 1]);
        let (b, _) = integral_basis(&f).unwrap();
        assert_eq!(lattice_disc(&b, &f), rat(8464));
    }

    #[test]
    fn quadratic_family() {
        let f = Poly::from_i64(&[-23, 0, 1]);
        assert_eq!(lattice_disc(&quadratic_basis(&f), &f), rat(92));
        let f = Poly::from_i64(&[23, 0, 1]);
        assert_eq!(lattice_disc(&quadratic_basis(&f), &f), rat(-23));
        // x^2 - 4x + 1 = (x - 2)^2 - 3
        let f = Poly::from_i64(&[1, -4, 1]);
        assert_eq!(lattice_disc(&quadratic_basis(&f), &f), rat(12));
    }

    #[test]
    fn unsupported_family() {
        // x^3 - 2 has disc -108, not squarefree, not in any family
        assert!(matches!(integral_basis(&Poly::from_i64(&[-2, 0, 0, 1])), Err(Error::Unsupported(_))));
    }
}

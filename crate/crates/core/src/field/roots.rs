//! Certified complex roots of squarefree integer polynomials.
//!
//! Approximations come from Aberth iteration in double precision, are polished
//! by Newton steps in exact dyadic arithmetic, and are then certified: a disc
//! of radius `n |f(z)/f'(z)|` around `z` always contains a root, so pairwise
//! disjoint discs isolate all `n` roots.

use num::complex::Complex64;
use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use crate::exact::ball::{rational_to_f64, Ball, CBall};
use crate::exact::poly::Poly;
use crate::error::{Error, Result};

pub const DEFAULT_PRECISION: u32 = 128;
pub const MAX_PRECISION: u32 = 1024;

/// Exact complex rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl CRat {
    pub fn zero() -> CRat {
        CRat { re: BigRational::zero(), im: BigRational::zero() }
    }

    pub fn real(re: BigRational) -> CRat {
        CRat { re, im: BigRational::zero() }
    }

    pub fn add(&self, o: &CRat) -> CRat {
        CRat { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    pub fn sub(&self, o: &CRat) -> CRat {
        CRat { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    pub fn mul(&self, o: &CRat) -> CRat {
        CRat {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    pub fn norm_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn div(&self, o: &CRat) -> Option<CRat> {
        let d = o.norm_sq();
        if d.is_zero() {
            return None;
        }
        let num = self.mul(&o.conj());
        Some(CRat { re: num.re / &d, im: num.im / d })
    }

    pub fn conj(&self) -> CRat {
        CRat { re: self.re.clone(), im: -self.im.clone() }
    }

    /// Round both parts to multiples of `2^-bits`.
    pub fn truncate(&self, bits: u32) -> CRat {
        CRat { re: dyadic(&self.re, bits), im: dyadic(&self.im, bits) }
    }

    /// `|re| + |im|`, an upper bound on the modulus.
    pub fn l1(&self) -> BigRational {
        self.re.abs() + self.im.abs()
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }
}

fn dyadic(x: &BigRational, bits: u32) -> BigRational {
    let scale = BigInt::one() << bits as usize;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let n = (x * BigRational::from_integer(scale.clone()) + half).floor().to_integer();
    BigRational::new(n, scale)
}

pub fn eval_crat(f: &Poly, z: &CRat) -> CRat {
    let mut acc = CRat::zero();
    for c in f.coeffs().iter().rev() {
        acc = acc.mul(z).add(&CRat::real(c.clone()));
    }
    acc
}

/// A root with an exact center and a certified radius.
#[derive(Clone, Debug)]
pub struct CertifiedRoot {
    pub center: CRat,
    pub radius: BigRational,
    pub is_real: bool,
}

impl CertifiedRoot {
    /// The root as a complex ball (real roots have an exact zero imaginary part).
    pub fn ball(&self) -> CBall {
        let r = rational_to_f64(&self.radius) * (1.0 + 1e-12) + f64::MIN_POSITIVE;
        let re = Ball::from_rational(&self.center.re);
        let re = Ball::new(re.mid, re.rad + r);
        if self.is_real {
            CBall::real(re)
        } else {
            let im = Ball::from_rational(&self.center.im);
            CBall { re, im: Ball::new(im.mid, im.rad + r) }
        }
    }
}

/// All roots: real ones ascending, then one representative per conjugate
/// pair (positive imaginary part) ordered by real then imaginary part.
#[derive(Clone, Debug)]
pub struct RootSet {
    pub real: Vec<CertifiedRoot>,
    pub complex: Vec<CertifiedRoot>,
    pub precision: u32,
}

impl RootSet {
    /// The `n` embeddings in order: real roots, then each complex root
    /// followed by its conjugate.
    pub fn embeddings(&self) -> Vec<CertifiedRoot> {
        let mut out = self.real.clone();
        for c in &self.complex {
            out.push(c.clone());
            out.push(CertifiedRoot {
                center: c.center.conj(),
                radius: c.radius.clone(),
                is_real: false,
            });
        }
        out
    }
}

fn aberth(f: &Poly) -> Vec<Complex64> {
    let n = f.degree().unwrap_or(0);
    let c: Vec<f64> = f.coeffs().iter().map(rational_to_f64).collect();
    let lead = c[n];
    let bound = 1.0 + c[..n].iter().map(|x| (x / lead).abs()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(bound * 0.7, 2.0 * std::f64::consts::PI * (k as f64 + 0.4) / n as f64))
        .collect();
    let eval = |x: Complex64| {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &ci in c.iter().rev() {
            dp = dp * x + p;
            p = p * x + ci;
        }
        (p, dp)
    };
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (p, dp) = eval(z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    s += 1.0 / (z[i] - z[j]);
                }
            }
            let w = ratio / (1.0 - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm() / (1.0 + z[i].norm()));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// Complex dyadic `(re + i im) / 2^bits` with integer parts.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Dyadic {
    re: BigInt,
    im: BigInt,
}

fn cmul(a: &(BigInt, BigInt), b: &(BigInt, BigInt)) -> (BigInt, BigInt) {
    (&a.0 * &b.0 - &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0)
}

/// `S^deg f(z)` with `z = a / S`, `S = 2^bits`, computed in integers.
fn eval_scaled(f: &[BigInt], z: &Dyadic, bits: u32) -> (BigInt, BigInt) {
    let n = f.len() - 1;
    let a = (z.re.clone(), z.im.clone());
    let mut acc = (f[n].clone(), BigInt::zero());
    for i in (0..n).rev() {
        acc = cmul(&acc, &a);
        acc.0 += &f[i] << ((n - i) * bits as usize);
    }
    acc
}

fn round_div(num: &BigInt, den: &BigInt) -> BigInt {
    // den > 0
    let two = BigInt::from(2);
    (num * &two + den).div_floor(&(den * &two))
}

/// `f(z) / f'(z)` as the pair `(P conj Q, |Q|^2 S)`: numerator complex
/// integer and positive integer denominator.
fn newton_ratio(f: &[BigInt], df: &[BigInt], z: &Dyadic, bits: u32) -> Option<((BigInt, BigInt), BigInt)> {
    let p = eval_scaled(f, z, bits);
    let q = eval_scaled(df, z, bits);
    let qn = &q.0 * &q.0 + &q.1 * &q.1;
    if qn.is_zero() {
        return None;
    }
    let num = cmul(&p, &(q.0.clone(), -q.1.clone()));
    Some((num, qn << bits as usize))
}

fn newton(f: &[BigInt], df: &[BigInt], z0: Complex64, bits: u32) -> Result<Dyadic> {
    let to_int = |x: f64| {
        let q = BigRational::from_float(x).unwrap_or_else(BigRational::zero);
        (q * BigRational::from_integer(BigInt::one() << bits as usize)).round().to_integer()
    };
    let mut z = Dyadic { re: to_int(z0.re), im: to_int(z0.im) };
    for _ in 0..64 {
        let (num, den) = newton_ratio(f, df, &z, bits)
            .ok_or_else(|| Error::Precision("derivative vanishes at a root approximation".into()))?;
        // step in units of 2^-bits
        let scale = BigInt::one() << bits as usize;
        let wr = round_div(&(&num.0 * &scale), &den);
        let wi = round_div(&(&num.1 * &scale), &den);
        if wr.is_zero() && wi.is_zero() {
            break;
        }
        z = Dyadic { re: &z.re - wr, im: &z.im - wi };
    }
    Ok(z)
}

fn to_crat(z: &Dyadic, bits: u32) -> CRat {
    let s = BigInt::one() << bits as usize;
    CRat { re: BigRational::new(z.re.clone(), s.clone()), im: BigRational::new(z.im.clone(), s) }
}

/// Isolate and classify all roots of the squarefree polynomial `f` at
/// `bits` bits of working precision.
pub fn certified_roots(f: &Poly, bits: u32) -> Result<RootSet> {
    let n = f.degree().ok_or_else(|| Error::InvalidInput("zero polynomial".into()))?;
    if n == 0 {
        return Err(Error::InvalidInput("constant polynomial has no roots".into()));
    }
    if !f.is_squarefree() {
        return Err(Error::InvalidInput("polynomial is not squarefree".into()));
    }
    let r = f.real_root_count()?;
    let fi = f.integer_coeffs().ok_or_else(|| Error::InvalidInput("polynomial must have integer coefficients".into()))?;
    let dfi = f.derivative().integer_coeffs().expect("derivative of an integer polynomial");
    let approx = aberth(f);
    let mut centers = Vec::with_capacity(n);
    for z in approx {
        centers.push(newton(&fi, &dfi, z, bits)?);
    }
    // real candidates: the r centers closest to the axis, snapped onto it
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        centers[a].im.abs().cmp(&centers[b].im.abs()).then(a.cmp(&b))
    });
    // radii are rounded up to multiples of 2^-(bits + GUARD) and compared in integers
    const GUARD: usize = 32;
    let fine = bits as usize + GUARD;
    let mut roots: Vec<CertifiedRoot> = Vec::with_capacity(n);
    let mut scaled: Vec<(BigInt, BigInt, BigInt)> = Vec::with_capacity(n);
    for (rank, &i) in order.iter().enumerate() {
        let is_real = rank < r;
        let mut c = centers[i].clone();
        let mut extra = BigInt::zero();
        if is_real {
            extra = c.im.abs() << GUARD;
            c.im = BigInt::zero();
        }
        let (num, den) = newton_ratio(&fi, &dfi, &c, bits)
            .ok_or_else(|| Error::Precision("derivative vanishes at a root approximation".into()))?;
        let l1: BigInt = ((num.0.abs() + num.1.abs()) * BigInt::from(n)) << fine;
        let rad = l1.div_ceil(&den) + extra;
        if !is_real && (c.im.abs() << GUARD) <= rad {
            return Err(Error::Precision(format!("cannot separate a complex root from the real axis at {bits} bits")));
        }
        scaled.push((&c.re << GUARD, &c.im << GUARD, rad.clone()));
        roots.push(CertifiedRoot {
            center: to_crat(&c, bits),
            radius: BigRational::new(rad, BigInt::one() << fine),
            is_real,
        });
    }
    for i in 0..n {
        for j in i + 1..n {
            let dr = &scaled[i].0 - &scaled[j].0;
            let di = &scaled[i].1 - &scaled[j].1;
            let s = &scaled[i].2 + &scaled[j].2;
            if &dr * &dr + &di * &di <= &s * &s {
                return Err(Error::Precision(format!("root discs overlap at {bits} bits")));
            }
        }
    }
    let mut real: Vec<CertifiedRoot> = roots.iter().filter(|x| x.is_real).cloned().collect();
    real.sort_by(|a, b| a.center.re.cmp(&b.center.re));
    let mut complex: Vec<CertifiedRoot> = roots
        .iter()
        .filter(|x| !x.is_real && x.center.im.is_positive())
        .cloned()
        .collect();
    complex.sort_by(|a, b| a.center.re.cmp(&b.center.re).then(a.center.im.cmp(&b.center.im)));
    if real.len() + 2 * complex.len() != n {
        return Err(Error::Precision("complex roots do not pair up with their conjugates".into()));
    }
    Ok(RootSet { real, complex, precision: bits })
}

/// `certified_roots` with precision doubling from `bits` up to the maximum.
pub fn roots_with_retry(f: &Poly, bits: u32) -> Result<RootSet> {
    let mut b = bits.max(53);
    loop {
        match certified_roots(f, b) {
            Ok(rs) => return Ok(rs),
            Err(Error::Precision(_)) if b < MAX_PRECISION => {
                b = (b * 2).min(MAX_PRECISION);
            }
            Err(e) => return Err(e),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt2() {
        let rs = certified_roots(&Poly::from_i64(&[-2, 0, 1]), 128).unwrap();
        assert_eq!(rs.real.len(), 2);
        assert!(rs.real[1].ball().re.contains(std::f64::consts::SQRT_2));
        assert!(rs.real[0].ball().re.contains(-std::f64::consts::SQRT_2));
    }

    #[test]
    fn gaussian() {
        let rs = certified_roots(&Poly::from_i64(&[1, 0, 1]), 128).unwrap();
        assert!(rs.real.is_empty());
        assert_eq!(rs.complex.len(), 1);
        let b = rs.complex[0].ball();
        assert!(b.im.contains(1.0) && b.re.contains(0.0));
    }

    #[test]
    fn biquadratic_real_roots() {
        let rs = certified_roots(&Poly::from_i64(&[1, 0, -10, 0, 1]), 128).unwrap();
        let v: Vec<f64> = rs.real.iter().map(|r| r.ball().re.mid).collect();
        let s = 2f64.sqrt() + 3f64.sqrt();
        assert!((v[3] - s).abs() < 1e-14 && (v[2] - 1.0 / s).abs() < 1e-14);
        assert!(rs.real[0].radius < BigRational::new(BigInt::one(), BigInt::one() << 100usize));
    }

    #[test]
    fn sextic_is_totally_complex() {
        let rs = certified_roots(&Poly::from_i64(&[9, 9, 0, 3, 6, 3, 1]), 128).unwrap();
        assert_eq!((rs.real.len(), rs.complex.len()), (0, 3));
    }

    #[test]
    fn linear() {
        let rs = certified_roots(&Poly::from_i64(&[-1, 1]), 128).unwrap();
        assert_eq!(rs.real.len(), 1);
        assert!(rs.real[0].ball().re.contains(1.0));
    }
}

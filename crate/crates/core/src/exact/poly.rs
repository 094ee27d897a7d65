//! Dense univariate polynomials over the rationals.

use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

/// Polynomial with rational coefficients in ascending degree order.
///
/// The coefficient vector never ends in a zero; the zero polynomial is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Poly {
        Poly { coeffs: vec![] }
    }

    pub fn one() -> Poly {
        Poly::constant(BigRational::one())
    }

    pub fn x() -> Poly {
        Poly::new(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn constant(c: BigRational) -> Poly {
        Poly::new(vec![c])
    }

    pub fn from_i64(c: &[i64]) -> Poly {
        Poly::new(c.iter().map(|&v| rat(v)).collect())
    }

    pub fn from_ints(c: &[BigInt]) -> Poly {
        Poly::new(c.iter().map(|v| BigRational::from_integer(v.clone())).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_one()
    }

    /// Integer coefficients, if all of them are integers.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn neg(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, k: &BigRational) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Euclidean division `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead_inv = d.lead().recip();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![BigRational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(&self.lead().recip())
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }

    /// `self(g(x))`.
    pub fn compose(&self, g: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&Poly::constant(c.clone()));
        }
        acc
    }

    /// Sturm chain `f, f', -rem(f, f'), ...`.
    pub fn sturm_chain(&self) -> Vec<Poly> {
        let mut chain = vec![self.clone(), self.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let r = chain[n - 2].rem(&chain[n - 1]).neg();
            if r.is_zero() {
                break;
            }
            chain.push(r);
        }
        chain
    }

    /// Number of distinct real roots, by Sturm's theorem evaluated at ±∞.
    pub fn real_root_count(&self) -> Result<usize> {
        if self.degree().unwrap_or(0) == 0 {
            return Ok(0);
        }
        if !self.is_squarefree() {
            return Err(Error::InvalidInput(
                "Sturm count needs a squarefree polynomial".into(),
            ));
        }
        let chain = self.sturm_chain();
        let at_pos: Vec<i8> = chain.iter().map(|p| sign(&p.lead())).collect();
        let at_neg: Vec<i8> = chain
            .iter()
            .map(|p| {
                let s = sign(&p.lead());
                if p.degree().unwrap_or(0) % 2 == 1 {
                    -s
                } else {
                    s
                }
            })
            .collect();
        Ok(sign_changes(&at_neg) - sign_changes(&at_pos))
    }

    /// Sign changes of the Sturm chain evaluated at `x`.
    pub fn sturm_sign_changes_at(chain: &[Poly], x: &BigRational) -> usize {
        let s: Vec<i8> = chain.iter().map(|p| sign(&p.eval(x))).collect();
        sign_changes(&s)
    }

    /// Discriminant up to sign convention `(-1)^{n(n-1)/2} Res(f, f') / lc(f)`.
    pub fn discriminant(&self) -> BigRational {
        let n = self.degree().unwrap_or(0);
        if n == 0 {
            return BigRational::one();
        }
        let res = resultant(self, &self.derivative());
        let s = if (n * (n - 1) / 2) % 2 == 0 { rat(1) } else { rat(-1) };
        s * res / self.lead()
    }
}

fn sign(x: &BigRational) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

fn sign_changes(s: &[i8]) -> usize {
    let nz: Vec<i8> = s.iter().copied().filter(|&v| v != 0).collect();
    nz.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Resultant via the Euclidean algorithm over the rationals.
pub fn resultant(a: &Poly, b: &Poly) -> BigRational {
    let (Some(da), Some(db)) = (a.degree(), b.degree()) else {
        return BigRational::zero();
    };
    if db == 0 {
        return b.lead().pow(da as i32);
    }
    if da < db {
        let s = if (da * db) % 2 == 0 { rat(1) } else { rat(-1) };
        return s * resultant(b, a);
    }
    let r = a.rem(b);
    match r.degree() {
        None => BigRational::zero(),
        Some(dr) => {
            let s = if (da * db) % 2 == 0 { rat(1) } else { rat(-1) };
            s * b.lead().pow((da - dr) as i32) * resultant(b, &r)
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_c = !a.is_one() || i == 0;
            if show_c {
                write!(f, "{a}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sturm_counts() {
        assert_eq!(Poly::from_i64(&[1, 0, 1]).real_root_count().unwrap(), 0);
        assert_eq!(Poly::from_i64(&[-2, 0, 1]).real_root_count().unwrap(), 2);
        assert_eq!(
            Poly::from_i64(&[1, 0, -10, 0, 1]).real_root_count().unwrap(),
            4
        );
    }

    #[test]
    fn sturm_rejects_repeated_roots() {
        let f = Poly::from_i64(&[1, 2, 1]);
        assert!(f.real_root_count().is_err());
    }

    #[test]
    fn discriminants() {
        assert_eq!(Poly::from_i64(&[1, 0, 1]).discriminant(), rat(-4));
        assert_eq!(Poly::from_i64(&[-5, 0, 1]).discriminant(), rat(20));
        // x^3 - 2
        assert_eq!(Poly::from_i64(&[-2, 0, 0, 1]).discriminant(), rat(-108));
    }

    #[test]
    fn division_identity() {
        let a = Poly::from_i64(&[3, -1, 4, 1, 5]);
        let b = Poly::from_i64(&[2, 0, 7]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap() < 2);
    }

    #[test]
    fn display_reads_naturally() {
        assert_eq!(Poly::from_i64(&[1, 0, -10, 0, 1]).to_string(), "x^4 - 10x^2 + 1");
    }
}

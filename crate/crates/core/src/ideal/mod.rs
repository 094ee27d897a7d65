//! Fractional ideals in Hermite normal form over the integral basis, prime
//! splitting, class groups and their Galois action, and truncated zeta sums.

pub mod classgroup;
pub mod galois;
pub mod modp;
pub mod primes;
pub mod principal;
pub mod zeta;

use std::fmt;

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::matrix::{hnf, solve_upper_integral, IntMatrix};
use crate::field::auts::Automorphism;
use crate::field::{Elt, NumberField};

pub use classgroup::{class_group, class_group_with_units, lambda_table, minkowski_bound, ClassGroup, LambdaTable};
pub use primes::{factor_ideal, factor_integer, factor_prime, PrimeIdeal, PrimeSplitting};
pub use principal::{is_principal, UnitData};
pub use zeta::{zeta_partial, ZetaPartial};

/// `H / d` where the columns of the upper-triangular HNF `H` are a Z-basis
/// in integral-basis coordinates.
///
/// Canonical: `gcd(content(H), d) = 1` and `d > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ideal {
    hnf: IntMatrix,
    denom: BigInt,
}

fn content(m: &IntMatrix) -> BigInt {
    let mut g = BigInt::zero();
    for i in 0..m.nrows() {
        for v in m.row(i) {
            g = g.gcd(v);
        }
    }
    g
}

/// HNF of the lattice spanned by `cols` plus `modulus * Z^n`.
fn hnf_with_modulus(n: usize, cols: &[Vec<BigInt>], modulus: &BigInt) -> IntMatrix {
    let mut all: Vec<Vec<BigInt>> = cols
        .iter()
        .map(|c| c.iter().map(|v| v.mod_floor(modulus)).collect())
        .filter(|c: &Vec<BigInt>| c.iter().any(|v| !v.is_zero()))
        .collect();
    for i in 0..n {
        let mut e = vec![BigInt::zero(); n];
        e[i] = modulus.clone();
        all.push(e);
    }
    hnf(&IntMatrix::from_cols(n, &all))
}

impl Ideal {
    fn normalized(hnf: IntMatrix, denom: BigInt) -> Ideal {
        let g = content(&hnf).gcd(&denom);
        if g.is_one() {
            return Ideal { hnf, denom };
        }
        let n = hnf.nrows();
        let mut h = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                h.set(i, j, hnf.get(i, j) / &g);
            }
        }
        Ideal { hnf: h, denom: denom / g }
    }

    /// The ring of integers itself.
    pub fn unit(k: &NumberField) -> Ideal {
        Ideal { hnf: IntMatrix::identity(k.degree()), denom: BigInt::one() }
    }

    /// `m O_K` for a nonzero integer `m`.
    pub fn from_integer(k: &NumberField, m: &BigInt) -> Result<Ideal> {
        if m.is_zero() {
            return Err(Error::InvalidInput("the zero ideal is not supported".into()));
        }
        let n = k.degree();
        let mut h = IntMatrix::zeros(n, n);
        for i in 0..n {
            h.set(i, i, m.abs());
        }
        Ok(Ideal { hnf: h, denom: BigInt::one() })
    }

    /// Integral ideal generated by elements given in integral coordinates.
    pub fn from_generators(k: &NumberField, gens: &[Vec<BigInt>]) -> Result<Ideal> {
        let n = k.degree();
        let nonzero: Vec<&Vec<BigInt>> = gens.iter().filter(|g| g.iter().any(|v| !v.is_zero())).collect();
        if nonzero.is_empty() {
            return Err(Error::InvalidInput("the zero ideal is not supported".into()));
        }
        // |N(g)| lies in (g), so it bounds the lattice from below
        let modulus = nonzero
            .iter()
            .map(|g| k.norm(&k.from_basis_coords(g)).to_integer().abs())
            .min()
            .unwrap();
        let mut cols = Vec::with_capacity(nonzero.len() * n);
        for g in &nonzero {
            for j in 0..n {
                let mut e = vec![BigInt::zero(); n];
                e[j] = BigInt::one();
                cols.push(k.mul_basis_coords(g, &e));
            }
        }
        Ok(Ideal { hnf: hnf_with_modulus(n, &cols, &modulus), denom: BigInt::one() })
    }

    /// `x O_K` for a nonzero field element.
    pub fn principal(k: &NumberField, x: &Elt) -> Result<Ideal> {
        if x.is_zero() {
            return Err(Error::InvalidInput("the zero ideal is not supported".into()));
        }
        let q = k.basis_coords(x);
        let mut den = BigInt::one();
        for c in &q {
            den = den.lcm(c.denom());
        }
        let dq = BigRational::from_integer(den.clone());
        let v: Vec<BigInt> = q.iter().map(|c| (c * &dq).to_integer()).collect();
        let num = Ideal::from_generators(k, &[v])?;
        Ok(Ideal::normalized(num.hnf, den))
    }

    /// Build from a Z-basis that is already known to be an `O_K`-module.
    pub fn from_module_basis(cols: &IntMatrix, denom: BigInt) -> Result<Ideal> {
        let h = hnf(cols);
        if h.ncols() != h.nrows() {
            return Err(Error::InvalidInput("module does not have full rank".into()));
        }
        Ok(Ideal::normalized(h, denom))
    }

    pub fn hnf(&self) -> &IntMatrix {
        &self.hnf
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denom
    }

    pub fn degree(&self) -> usize {
        self.hnf.nrows()
    }

    pub fn is_integral(&self) -> bool {
        self.denom.is_one()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.is_integral() && (0..self.degree()).all(|i| self.hnf.get(i, i).is_one())
    }

    /// `det(H) / d^n`.
    pub fn norm(&self) -> BigRational {
        let n = self.degree();
        BigRational::new(self.numerator_norm(), num::pow(self.denom.clone(), n))
    }

    /// `det(H)`: the norm of the integral numerator.
    pub fn numerator_norm(&self) -> BigInt {
        (0..self.degree()).fold(BigInt::one(), |acc, i| acc * self.hnf.get(i, i))
    }

    /// Norm of an integral ideal.
    pub fn integral_norm(&self) -> Result<BigInt> {
        if !self.is_integral() {
            return Err(Error::InvalidInput("ideal is not integral".into()));
        }
        Ok(self.numerator_norm())
    }

    /// Smallest positive integer in an integral ideal (`b_0 = 1` by construction).
    pub fn min_integer(&self) -> BigInt {
        self.hnf.get(0, 0).clone()
    }

    /// Z-basis columns of the integral numerator.
    pub fn basis_columns(&self) -> Vec<Vec<BigInt>> {
        self.hnf.cols_vec()
    }

    /// Numerator as an integral ideal.
    pub fn numerator(&self) -> Ideal {
        Ideal { hnf: self.hnf.clone(), denom: BigInt::one() }
    }

    /// Does the ideal contain the element with integral coordinates `v`?
    pub fn contains_coords(&self, v: &[BigInt]) -> bool {
        let scaled: Vec<BigInt> = v.iter().map(|x| x * &self.denom).collect();
        solve_upper_integral(&self.hnf, &scaled).is_some()
    }

    pub fn contains(&self, k: &NumberField, x: &Elt) -> bool {
        let q = k.basis_coords(x);
        let mut scaled = Vec::with_capacity(q.len());
        let d = BigRational::from_integer(self.denom.clone());
        for c in q {
            let s = c * &d;
            if !s.is_integer() {
                return false;
            }
            scaled.push(s.to_integer());
        }
        solve_upper_integral(&self.hnf, &scaled).is_some()
    }

    /// `o ⊆ self`.
    pub fn contains_ideal(&self, o: &Ideal) -> bool {
        o.hnf.cols_vec().iter().all(|c| {
            let num: Vec<BigInt> = c.iter().map(|v| v * &self.denom).collect();
            if num.iter().any(|v| !(v % &o.denom).is_zero()) {
                return false;
            }
            let w: Vec<BigInt> = num.iter().map(|v| v / &o.denom).collect();
            solve_upper_integral(&self.hnf, &w).is_some()
        })
    }

    pub fn mul(&self, k: &NumberField, o: &Ideal) -> Ideal {
        let n = self.degree();
        let a = self.hnf.cols_vec();
        let b = o.hnf.cols_vec();
        let mut cols = Vec::with_capacity(n * n);
        for x in &a {
            for y in &b {
                cols.push(k.mul_basis_coords(x, y));
            }
        }
        let modulus = self.numerator_norm() * o.numerator_norm();
        Ideal::normalized(hnf_with_modulus(n, &cols, &modulus), &self.denom * &o.denom)
    }

    pub fn pow(&self, k: &NumberField, mut e: u32) -> Ideal {
        let mut base = self.clone();
        let mut acc = Ideal::unit(k);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(k, &base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(k, &base);
            }
        }
        acc
    }

    /// `self + o`.
    pub fn add(&self, o: &Ideal) -> Ideal {
        let n = self.degree();
        let d = self.denom.lcm(&o.denom);
        let sa = &d / &self.denom;
        let sb = &d / &o.denom;
        let mut cols: Vec<Vec<BigInt>> = Vec::with_capacity(2 * n);
        for c in self.hnf.cols_vec() {
            cols.push(c.iter().map(|v| v * &sa).collect());
        }
        for c in o.hnf.cols_vec() {
            cols.push(c.iter().map(|v| v * &sb).collect());
        }
        let modulus = self.numerator_norm() * num::pow(sa, n);
        Ideal::normalized(hnf_with_modulus(n, &cols, &modulus), d)
    }

    /// `N(B) B^{-1}` for integral `B`: the integral ideal with `B B~ = (N(B))`.
    pub fn adjoint(&self, k: &NumberField) -> Result<Ideal> {
        let nb = self.integral_norm()?;
        let n = self.degree();
        // x B ⊆ N O_K  ⇔  every row of every multiplication matrix M_β kills x mod N
        let mut rows_as_cols: Vec<Vec<BigInt>> = Vec::with_capacity(n * n);
        for beta in self.hnf.cols_vec() {
            let mut e = vec![BigInt::zero(); n];
            let mut m = vec![vec![BigInt::zero(); n]; n];
            for j in 0..n {
                e.iter_mut().for_each(|v| *v = BigInt::zero());
                e[j] = BigInt::one();
                let col = k.mul_basis_coords(&beta, &e);
                for i in 0..n {
                    m[i][j] = col[i].clone();
                }
            }
            rows_as_cols.extend(m);
        }
        let r = hnf_with_modulus(n, &rows_as_cols, &nb);
        // solutions: v = N R^{-T} w
        let rinv = r
            .to_rational()
            .inverse()
            .ok_or_else(|| Error::Numerical("degenerate row lattice".into()))?;
        let nq = BigRational::from_integer(nb.clone());
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            // column j of (R^{-1})^T is row j of R^{-1}
            let c: Option<Vec<BigInt>> = (0..n)
                .map(|i| {
                    let v = rinv.get(j, i) * &nq;
                    v.is_integer().then(|| v.to_integer())
                })
                .collect();
            cols.push(c.ok_or_else(|| Error::Numerical("adjoint lattice is not integral".into()))?);
        }
        Ok(Ideal { hnf: hnf_with_modulus(n, &cols, &nb), denom: BigInt::one() })
    }

    pub fn inverse(&self, k: &NumberField) -> Result<Ideal> {
        let num = self.numerator();
        let adj = num.adjoint(k)?;
        // (H/d)^{-1} = d * adj(H) / N(H)
        let scaled: Vec<Vec<BigInt>> = adj.hnf.cols_vec().iter().map(|c| c.iter().map(|v| v * &self.denom).collect()).collect();
        Ideal::from_module_basis(&IntMatrix::from_cols(self.degree(), &scaled), num.numerator_norm())
    }

    pub fn div(&self, k: &NumberField, o: &Ideal) -> Result<Ideal> {
        Ok(self.mul(k, &o.inverse(k)?))
    }

    /// `σ(A)`.
    pub fn apply(&self, sigma: &Automorphism) -> Ideal {
        let cols: Vec<Vec<BigInt>> = self.hnf.cols_vec().iter().map(|c| sigma.apply_basis_coords(c)).collect();
        Ideal::from_module_basis(&IntMatrix::from_cols(self.degree(), &cols), self.denom.clone())
            .expect("automorphisms preserve rank")
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        let cols: Vec<String> = (0..n)
            .map(|j| {
                let c: Vec<String> = (0..n).map(|i| self.hnf.get(i, j).to_string()).collect();
                format!("({})", c.join(","))
            })
            .collect();
        if self.denom.is_one() {
            write!(f, "<{}>", cols.join(" "))
        } else {
            write!(f, "<{}>/{}", cols.join(" "), self.denom)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::Poly;
    use crate::field::make_field;

    fn field(c: &[i64]) -> NumberField {
        make_field("K", &Poly::from_i64(c), None, 128).unwrap()
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn gaussian_ideals() {
        let k = field(&[1, 0, 1]);
        let p = Ideal::from_generators(&k, &[big(&[1, 1])]).unwrap();
        assert_eq!(p.norm(), BigRational::from_integer(2.into()));
        let two = Ideal::from_integer(&k, &BigInt::from(2)).unwrap();
        assert_eq!(p.mul(&k, &p), two);
        assert!(two.contains_coords(&big(&[2, 0])));
        assert!(!two.contains_coords(&big(&[1, 1])));
        assert!(p.contains_ideal(&two));
        assert_eq!(p.adjoint(&k).unwrap(), p);
        let inv = p.inverse(&k).unwrap();
        assert_eq!(inv.mul(&k, &p), Ideal::unit(&k));
    }

    #[test]
    fn adjoint_multiplies_to_norm() {
        let k = field(&[5, 0, 1]); // Q(sqrt(-5))
        let a = Ideal::from_generators(&k, &[big(&[3, 0]), big(&[1, 1])]).unwrap();
        assert_eq!(a.integral_norm().unwrap(), BigInt::from(3));
        let prod = a.mul(&k, &a.adjoint(&k).unwrap());
        assert_eq!(prod, Ideal::from_integer(&k, &BigInt::from(3)).unwrap());
        let sum = a.add(&a.adjoint(&k).unwrap());
        assert!(sum.is_unit_ideal());
    }

    #[test]
    fn principal_with_denominator() {
        let k = field(&[1, 0, 1]);
        let half = k.from_rational(BigRational::new(1.into(), 2.into()));
        let h = Ideal::principal(&k, &half).unwrap();
        assert_eq!(h.norm(), BigRational::new(1.into(), 4.into()));
        assert_eq!(h.inverse(&k).unwrap(), Ideal::from_integer(&k, &BigInt::from(2)).unwrap());
    }
}

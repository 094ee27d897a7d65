//! Number fields `Q[x]/(f)` with a verified integral basis and certified
//! complex embeddings.

pub mod auts;
pub mod family;
pub mod roots;
pub mod subfield;
pub mod torsion;

use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::Serialize;

use crate::exact::ball::{Ball, CBall};
use crate::exact::lattice::GramMatrix;
use crate::exact::matrix::{hnf, IntMatrix, RatMatrix};
use crate::exact::poly::Poly;
use crate::error::{Error, Result};
use roots::{roots_with_retry, CRat, RootSet};

pub const MAX_DEGREE: usize = 12;

/// Element in power-basis coordinates `c_0 + c_1 θ + ... + c_{n-1} θ^{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Elt {
    pub c: Vec<BigRational>,
}

impl Elt {
    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn as_poly(&self) -> Poly {
        Poly::new(self.c.clone())
    }

    /// Is this a rational number (no θ terms)?
    pub fn rational_part(&self) -> Option<BigRational> {
        self.c[1..].iter().all(Zero::is_zero).then(|| self.c[0].clone())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PlaceKind {
    Real,
    Complex,
}

/// An infinite place: a real embedding or a conjugate pair of complex ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Place {
    pub index: usize,
    pub kind: PlaceKind,
    /// Index of the representative embedding (imaginary part positive for
    /// complex places).
    pub embedding: usize,
}

/// Where the integral basis came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BasisSource {
    Rational,
    SquarefreeDiscriminant,
    Quadratic,
    Cyclotomic(u64),
    Biquadratic,
    Supplied,
}

#[derive(Clone, Debug)]
pub struct NumberField {
    name: String,
    poly: Poly,
    n: usize,
    basis: Vec<Elt>,
    to_basis: RatMatrix,
    disc: BigInt,
    r: usize,
    s: usize,
    roots: RootSet,
    reductions: Vec<Vec<BigRational>>,
    mult: Vec<Vec<Vec<BigInt>>>,
    power_traces: Vec<BigRational>,
    basis_embeddings: Vec<Vec<CBall>>,
    source: BasisSource,
}

impl NumberField {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: &str) {
        self.name = name.to_string();
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn discriminant(&self) -> &BigInt {
        &self.disc
    }

    pub fn basis_source(&self) -> &BasisSource {
        &self.source
    }

    /// `(r, s)`.
    pub fn signature(&self) -> (usize, usize) {
        (self.r, self.s)
    }

    /// Unit rank `r + s - 1`.
    pub fn unit_rank(&self) -> usize {
        self.r + self.s - 1
    }

    pub fn precision(&self) -> u32 {
        self.roots.precision
    }

    pub fn roots(&self) -> &RootSet {
        &self.roots
    }

    pub fn integral_basis(&self) -> &[Elt] {
        &self.basis
    }

    pub fn places(&self) -> Vec<Place> {
        let mut out = Vec::with_capacity(self.r + self.s);
        for i in 0..self.r {
            out.push(Place { index: i, kind: PlaceKind::Real, embedding: i });
        }
        for j in 0..self.s {
            out.push(Place { index: self.r + j, kind: PlaceKind::Complex, embedding: self.r + 2 * j });
        }
        out
    }

    /// Place owning embedding `k` (conjugate embeddings share a place).
    pub fn place_of_embedding(&self, k: usize) -> usize {
        if k < self.r {
            k
        } else {
            self.r + (k - self.r) / 2
        }
    }

    /// Recompute the embeddings at a different working precision.
    pub fn with_precision(&self, bits: u32) -> Result<NumberField> {
        let mut k = self.clone();
        k.roots = roots_with_retry(&self.poly, bits)?;
        k.basis_embeddings = compute_basis_embeddings(&k);
        Ok(k)
    }

    // ----- elements -----

    pub fn zero(&self) -> Elt {
        Elt { c: vec![BigRational::zero(); self.n] }
    }

    pub fn one(&self) -> Elt {
        self.from_rational(BigRational::one())
    }

    pub fn from_int(&self, v: i64) -> Elt {
        self.from_rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_rational(&self, q: BigRational) -> Elt {
        let mut e = self.zero();
        e.c[0] = q;
        e
    }

    pub fn theta(&self) -> Elt {
        let mut e = self.zero();
        if self.n > 1 {
            e.c[1] = BigRational::one();
        } else {
            e.c[0] = -self.poly.coeff(0);
        }
        e
    }

    /// Reduce an arbitrary polynomial in θ.
    pub fn from_poly(&self, p: &Poly) -> Elt {
        let r = p.rem(&self.poly);
        let mut c = r.coeffs().to_vec();
        c.resize(self.n, BigRational::zero());
        Elt { c }
    }

    pub fn from_power_coords(&self, c: Vec<BigRational>) -> Result<Elt> {
        if c.len() != self.n {
            return Err(Error::InvalidInput(format!("expected {} coordinates", self.n)));
        }
        Ok(Elt { c })
    }

    pub fn from_basis_coords(&self, v: &[BigInt]) -> Elt {
        let mut e = self.zero();
        for (k, b) in v.iter().zip(&self.basis) {
            if k.is_zero() {
                continue;
            }
            let kq = BigRational::from_integer(k.clone());
            for i in 0..self.n {
                e.c[i] += &kq * &b.c[i];
            }
        }
        e
    }

    pub fn from_basis_coords_i64(&self, v: &[i64]) -> Elt {
        let b: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        self.from_basis_coords(&b)
    }

    /// Coordinates with respect to the integral basis.
    pub fn basis_coords(&self, x: &Elt) -> Vec<BigRational> {
        self.to_basis.mul_vec(&x.c)
    }

    /// Integral-basis coordinates, if `x` lies in the ring of integers.
    pub fn integral_coords(&self, x: &Elt) -> Option<Vec<BigInt>> {
        self.basis_coords(x)
            .into_iter()
            .map(|q| q.is_integer().then(|| q.to_integer()))
            .collect()
    }

    pub fn is_integral(&self, x: &Elt) -> bool {
        self.integral_coords(x).is_some()
    }

    pub fn add(&self, a: &Elt, b: &Elt) -> Elt {
        Elt { c: a.c.iter().zip(&b.c).map(|(x, y)| x + y).collect() }
    }

    pub fn sub(&self, a: &Elt, b: &Elt) -> Elt {
        Elt { c: a.c.iter().zip(&b.c).map(|(x, y)| x - y).collect() }
    }

    pub fn neg(&self, a: &Elt) -> Elt {
        Elt { c: a.c.iter().map(|x| -x).collect() }
    }

    pub fn scale(&self, a: &Elt, k: &BigRational) -> Elt {
        Elt { c: a.c.iter().map(|x| x * k).collect() }
    }

    pub fn mul(&self, a: &Elt, b: &Elt) -> Elt {
        let n = self.n;
        let mut prod = vec![BigRational::zero(); 2 * n - 1];
        for (i, x) in a.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.c.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let mut out = vec![BigRational::zero(); n];
        for (k, c) in prod.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for i in 0..n {
                let r = &self.reductions[k][i];
                if !r.is_zero() {
                    out[i] += c * r;
                }
            }
        }
        Elt { c: out }
    }

    pub fn pow(&self, a: &Elt, mut e: u64) -> Elt {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &Elt) -> Result<Elt> {
        let m = self.mul_matrix(a);
        let mut one = vec![BigRational::zero(); self.n];
        one[0] = BigRational::one();
        m.solve(&one)
            .map(|c| Elt { c })
            .ok_or_else(|| Error::InvalidInput("zero has no inverse".into()))
    }

    pub fn div(&self, a: &Elt, b: &Elt) -> Result<Elt> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Multiplication-by-`a` matrix on the power basis (column k is `a θ^k`).
    pub fn mul_matrix(&self, a: &Elt) -> RatMatrix {
        let n = self.n;
        let mut m = RatMatrix::zeros(n, n);
        let mut col = a.clone();
        let th = self.theta();
        for k in 0..n {
            for i in 0..n {
                m.set(i, k, col.c[i].clone());
            }
            if k + 1 < n {
                col = self.mul(&col, &th);
            }
        }
        m
    }

    /// Multiplication-by-`a` on the integral basis (column j is `a b_j`).
    pub fn mul_matrix_basis(&self, a: &Elt) -> RatMatrix {
        let n = self.n;
        let mut m = RatMatrix::zeros(n, n);
        for j in 0..n {
            let v = self.basis_coords(&self.mul(a, &self.basis[j]));
            for i in 0..n {
                m.set(i, j, v[i].clone());
            }
        }
        m
    }

    pub fn charpoly(&self, a: &Elt) -> Poly {
        charpoly(&self.mul_matrix(a))
    }

    pub fn norm(&self, a: &Elt) -> BigRational {
        self.mul_matrix(a).det()
    }

    pub fn trace(&self, a: &Elt) -> BigRational {
        a.c.iter().zip(&self.power_traces).map(|(x, t)| x * t).sum()
    }

    /// Minimal polynomial via the first linear dependence among powers.
    pub fn min_poly(&self, a: &Elt) -> Poly {
        let n = self.n;
        let mut powers = vec![self.one()];
        loop {
            let d = powers.len();
            let next = self.mul(&powers[d - 1], a);
            powers.push(next);
            // columns are powers 0..=d
            let rows: Vec<Vec<BigRational>> = (0..n)
                .map(|i| powers.iter().map(|p| p.c[i].clone()).collect())
                .collect();
            let m = RatMatrix::from_rows(rows);
            let ker = crate::exact::matrix::rational_kernel(&m);
            if let Some(v) = ker.first() {
                let p = Poly::from_ints(v);
                return p.monic();
            }
            if d > n {
                unreachable!("degree bound exceeded");
            }
        }
    }

    /// Structure constants: integral-basis coordinates of `b_i b_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[BigInt] {
        &self.mult[i][j]
    }

    /// Multiply two elements given in integral-basis coordinates.
    pub fn mul_basis_coords(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let n = self.n;
        let mut out = vec![BigInt::zero(); n];
        for i in 0..n {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if b[j].is_zero() {
                    continue;
                }
                let ab = &a[i] * &b[j];
                for k in 0..n {
                    let c = &self.mult[i][j][k];
                    if !c.is_zero() {
                        out[k] += &ab * c;
                    }
                }
            }
        }
        out
    }

    // ----- embeddings -----

    /// `σ_k(x)` for embedding index `k` as a certified complex ball.
    pub fn embed(&self, x: &Elt, k: usize) -> CBall {
        // combine cached basis embeddings when x has small integral coordinates
        let coords = self.basis_coords(x);
        let mut acc = CBall::ZERO;
        for (i, q) in coords.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let qb = Ball::from_rational(q);
            let e = self.basis_embeddings[i][k];
            acc = acc.add(&CBall { re: e.re * qb, im: e.im * qb });
        }
        acc
    }

    /// `σ_k(b_i)` for every basis element.
    pub fn basis_embedding(&self, i: usize, k: usize) -> CBall {
        self.basis_embeddings[i][k]
    }

    /// High-precision value `σ_k(x)` at the exact root center (no radius).
    pub fn embed_exact(&self, x: &Elt, k: usize) -> CRat {
        let z = &self.roots.embeddings()[k].center;
        roots::eval_crat(&x.as_poly(), z)
    }

    /// `T2(x) = sum over all embeddings of |σ(x)|^2`.
    pub fn t2(&self, x: &Elt) -> Ball {
        (0..self.n).map(|k| self.embed(x, k).abs_sq()).sum()
    }

    /// `|N(x)|` from the embeddings, as a cross-check of the exact norm.
    pub fn numeric_norm(&self, x: &Elt) -> Ball {
        let mut acc = Ball::ONE;
        for k in 0..self.n {
            acc = acc * self.embed(x, k).abs_sq().sqrt();
        }
        acc
    }

    /// Gram matrix of the integral basis under `T2(x) = sum |σ(x)|^2`.
    pub fn t2_gram(&self) -> GramMatrix {
        let n = self.n;
        let mut e = vec![Ball::ZERO; n * n];
        for i in 0..n {
            for j in i..n {
                let v: Ball = (0..n)
                    .map(|k| self.basis_embeddings[i][k].re_inner(&self.basis_embeddings[j][k]))
                    .sum();
                e[i * n + j] = v;
                e[j * n + i] = v;
            }
        }
        GramMatrix::from_balls(n, e).expect("square")
    }

    fn finish(
        name: &str,
        poly: Poly,
        basis: Vec<Elt>,
        source: BasisSource,
        bits: u32,
    ) -> Result<NumberField> {
        let n = poly.degree().unwrap();
        let basis = canonical_basis(&basis, n)?;
        let mut reductions = Vec::with_capacity(2 * n);
        let mut cur = Poly::one();
        for _ in 0..2 * n {
            let mut c = cur.rem(&poly).coeffs().to_vec();
            c.resize(n, BigRational::zero());
            reductions.push(c);
            cur = cur.mul(&Poly::x()).rem(&poly);
        }
        let power_traces = power_sums(&poly, 2 * n);
        let bm = RatMatrix::from_rows(
            (0..n).map(|i| basis.iter().map(|b| b.c[i].clone()).collect()).collect(),
        );
        let to_basis = bm
            .inverse()
            .ok_or_else(|| Error::InvalidInput("integral basis is not linearly independent".into()))?;
        let rootset = roots_with_retry(&poly, bits)?;
        let r = poly.real_root_count()?;
        if rootset.real.len() != r {
            return Err(Error::Precision("root classification disagrees with Sturm count".into()));
        }
        let mut k = NumberField {
            name: name.to_string(),
            poly,
            n,
            basis,
            to_basis,
            disc: BigInt::zero(),
            r,
            s: (n - r) / 2,
            roots: rootset,
            reductions,
            mult: vec![],
            power_traces,
            basis_embeddings: vec![],
            source,
        };
        // structure constants double as the ring-closure check
        let mut mult = vec![vec![vec![]; n]; n];
        for i in 0..n {
            for j in 0..n {
                let p = k.mul(&k.basis[i], &k.basis[j]);
                mult[i][j] = k.integral_coords(&p).ok_or_else(|| {
                    Error::InvalidInput(format!("basis is not closed under multiplication (b{i}*b{j})"))
                })?;
            }
        }
        k.mult = mult;
        if k.integral_coords(&k.one()).is_none() || k.integral_coords(&k.theta()).is_none() {
            return Err(Error::InvalidInput("basis must span an order containing 1 and the generator".into()));
        }
        let mut tr = RatMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                tr.set(i, j, k.trace(&k.mul(&k.basis[i], &k.basis[j])));
            }
        }
        let d = tr.det();
        if !d.is_integer() {
            return Err(Error::InvalidInput("trace form determinant is not an integer".into()));
        }
        k.disc = d.to_integer();
        let pd = k.poly.discriminant();
        let index_sq = &pd / BigRational::from_integer(k.disc.clone());
        if !index_sq.is_integer() || !is_square(&index_sq.to_integer()) {
            return Err(Error::InvalidInput("basis discriminant is incompatible with the polynomial".into()));
        }
        k.basis_embeddings = compute_basis_embeddings(&k);
        Ok(k)
    }
}

/// Hermite-reduce the basis in power coordinates, so that `b_0 = 1` whenever
/// the module is an order and `b_j` involves only `θ^0..θ^j`.
fn canonical_basis(basis: &[Elt], n: usize) -> Result<Vec<Elt>> {
    let mut den = BigInt::one();
    for b in basis {
        for c in &b.c {
            den = num::Integer::lcm(&den, c.denom());
        }
    }
    let cols: Vec<Vec<BigInt>> = basis
        .iter()
        .map(|b| b.c.iter().map(|c| (c * BigRational::from_integer(den.clone())).to_integer()).collect())
        .collect();
    let h = hnf(&IntMatrix::from_cols(n, &cols));
    if h.ncols() != n {
        return Err(Error::InvalidInput("integral basis is not linearly independent".into()));
    }
    let dq = BigRational::from_integer(den);
    Ok((0..n)
        .map(|j| Elt { c: h.col(j).into_iter().map(|v| BigRational::from_integer(v) / &dq).collect() })
        .collect())
}

fn compute_basis_embeddings(k: &NumberField) -> Vec<Vec<CBall>> {
    let emb = k.roots.embeddings();
    k.basis
        .iter()
        .map(|b| {
            emb.iter()
                .map(|root| {
                    let z = root.ball();
                    let mut acc = CBall::ZERO;
                    for c in b.c.iter().rev() {
                        acc = acc.mul(&z).add(&CBall::real(Ball::from_rational(c)));
                    }
                    if root.is_real {
                        acc.im = Ball::ZERO;
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Newton power sums `p_k = sum of roots^k` for `k < count`.
pub(crate) fn power_sums(f: &Poly, count: usize) -> Vec<BigRational> {
    let n = f.degree().unwrap();
    // monic f = x^n + a_{n-1} x^{n-1} + ... ; e-coeffs a_i
    let a = |i: usize| f.coeff(i);
    let mut p: Vec<BigRational> = Vec::with_capacity(count);
    for k in 0..count {
        if k == 0 {
            p.push(BigRational::from_integer(BigInt::from(n)));
            continue;
        }
        let mut s = BigRational::zero();
        for i in 1..k.min(n + 1) {
            // coefficient of x^{n-i}
            s -= a(n - i) * &p[k - i];
        }
        if k <= n {
            s -= BigRational::from_integer(BigInt::from(k)) * a(n - k);
        }
        p.push(s);
    }
    p
}

/// Characteristic polynomial by Faddeev–LeVerrier.
pub fn charpoly(m: &RatMatrix) -> Poly {
    let n = m.nrows();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    let mut mk = RatMatrix::zeros(n, n);
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let prev = mk.clone();
        let mut next = m.mul(&prev);
        for i in 0..n {
            let v = next.get(i, i) + &coeffs[n - k + 1];
            next.set(i, i, v);
        }
        mk = next;
        let am = m.mul(&mk);
        let tr: BigRational = (0..n).map(|i| am.get(i, i).clone()).sum();
        coeffs[n - k] = -tr / BigRational::from_integer(BigInt::from(k));
    }
    Poly::new(coeffs)
}

pub fn is_square(v: &BigInt) -> bool {
    if v.is_negative() {
        return false;
    }
    let r = v.sqrt();
    &r * &r == *v
}

/// Largest `k` with `k^2 | v`, and the squarefree part `v / k^2`.
pub fn squarefree_decomposition(v: &BigInt) -> (BigInt, BigInt) {
    let mut k = BigInt::one();
    let mut rest = v.clone();
    let mut p = BigInt::from(2);
    while &p * &p <= rest.abs() {
        let p2 = &p * &p;
        while (&rest % &p2).is_zero() {
            rest /= &p2;
            k *= &p;
        }
        p += 1;
    }
    (k, rest)
}

pub fn is_squarefree_int(v: &BigInt) -> bool {
    squarefree_decomposition(v).0.is_one()
}

/// Build a field from a monic integral polynomial, with either a supplied
/// integral basis (rows of power-basis coordinates) or one from a supported
/// family.
pub fn make_field(
    name: &str,
    poly: &Poly,
    basis: Option<Vec<Vec<BigRational>>>,
    bits: u32,
) -> Result<NumberField> {
    let n = poly
        .degree()
        .filter(|&d| d >= 1)
        .ok_or_else(|| Error::InvalidInput("minimal polynomial must have degree at least 1".into()))?;
    if n > MAX_DEGREE {
        return Err(Error::Unsupported(format!("degree {n} exceeds {MAX_DEGREE}")));
    }
    if !poly.is_monic() || poly.integer_coeffs().is_none() {
        return Err(Error::InvalidInput("minimal polynomial must be monic with integer coefficients".into()));
    }
    if !poly.is_squarefree() {
        return Err(Error::InvalidInput("minimal polynomial is not squarefree".into()));
    }
    let elt = |c: Vec<BigRational>| Elt { c };
    match basis {
        Some(rows) => {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(Error::InvalidInput(format!("integral basis must be {n} rows of length {n}")));
            }
            NumberField::finish(name, poly.clone(), rows.into_iter().map(elt).collect(), BasisSource::Supplied, bits)
        }
        None => {
            let (b, src) = family::integral_basis(poly)?;
            NumberField::finish(name, poly.clone(), b.into_iter().map(elt).collect(), src, bits)
        }
    }
}

impl fmt::Display for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = Q[x]/({})", self.name, self.poly)
    }
}

/// `λ = r + s - 1` together with the signature.
pub fn signature(k: &NumberField) -> (usize, usize, usize) {
    let (r, s) = k.signature();
    (r, s, r + s - 1)
}

/// The rational numbers as the field `Q[x]/(x - 1)`.
pub fn rationals() -> NumberField {
    make_field("Q", &Poly::from_i64(&[-1, 1]), None, roots::DEFAULT_PRECISION).expect("Q is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::rat;

    fn field(c: &[i64]) -> NumberField {
        make_field("K", &Poly::from_i64(c), None, 128).unwrap()
    }

    #[test]
    fn discriminants_and_bases() {
        let k = field(&[1, 0, 1]);
        assert_eq!(k.discriminant(), &BigInt::from(-4));
        let k = field(&[-5, 0, 1]);
        assert_eq!(k.discriminant(), &BigInt::from(5));
        assert_eq!(k.integral_basis()[1].c, vec![rat_half(), rat_half()]);
        let q = rationals();
        assert_eq!(q.discriminant(), &BigInt::one());
        assert_eq!(signature(&q), (1, 0, 0));
    }

    fn rat_half() -> BigRational {
        BigRational::new(BigInt::one(), BigInt::from(2))
    }

    #[test]
    fn signatures() {
        assert_eq!(signature(&field(&[1, 0, 1])), (0, 1, 0));
        assert_eq!(signature(&field(&[1, 0, -10, 0, 1])), (4, 0, 3));
    }

    #[test]
    fn arithmetic_and_norms() {
        let k = field(&[1, 0, 1]);
        let a = k.add(&k.one(), &k.theta());
        assert_eq!(k.norm(&a), rat(2));
        assert_eq!(k.trace(&a), rat(2));
        let inv = k.inv(&a).unwrap();
        assert_eq!(k.mul(&a, &inv), k.one());
        assert_eq!(k.charpoly(&a), Poly::from_i64(&[2, -2, 1]));
        assert_eq!(k.min_poly(&k.from_int(3)), Poly::from_i64(&[-3, 1]));
        assert!(k.numeric_norm(&a).contains(2.0));
    }

    #[test]
    fn unclosed_basis_is_rejected() {
        // {1, θ/2} for x^2 + 1 is not a ring
        let basis = vec![vec![rat(1), rat(0)], vec![rat(0), rat_half()]];
        assert!(make_field("bad", &Poly::from_i64(&[1, 0, 1]), Some(basis), 128).is_err());
    }

    #[test]
    fn power_sums_match_traces() {
        let k = field(&[1, 0, -10, 0, 1]);
        // θ^2 = 5 ± 2√6, so Tr(θ^2) = 20
        assert_eq!(k.trace(&k.mul(&k.theta(), &k.theta())), rat(20));
        assert_eq!(k.trace(&k.one()), rat(4));
    }
}

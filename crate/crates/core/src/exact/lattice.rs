//! Quadratic forms on Z^n: LLL reduction and Fincke–Pohst enumeration.

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use super::ball::Ball;
use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// Lovász constant.
pub const LLL_DELTA: f64 = 0.99;

/// Symmetric positive definite form with certified entries.
///
/// When the form is known exactly (for instance a trace form) the rational
/// entries are kept alongside and used to filter enumeration output.
#[derive(Clone, Debug)]
pub struct GramMatrix {
    n: usize,
    entries: Vec<Ball>,
    exact: Option<Vec<BigRational>>,
}

impl GramMatrix {
    pub fn from_balls(n: usize, entries: Vec<Ball>) -> Result<GramMatrix> {
        if entries.len() != n * n {
            return Err(Error::InvalidInput("gram entries do not match dimension".into()));
        }
        let mut entries = entries;
        for i in 0..n {
            for j in 0..i {
                // symmetrise: both halves describe the same real
                let a = entries[i * n + j];
                let b = entries[j * n + i];
                let mid = (a.mid + b.mid) / 2.0;
                let rad = a.rad.max(b.rad) + (a.mid - b.mid).abs() / 2.0;
                entries[i * n + j] = Ball::new(mid, rad);
                entries[j * n + i] = Ball::new(mid, rad);
            }
        }
        Ok(GramMatrix { n, entries, exact: None })
    }

    pub fn from_rational(n: usize, exact: Vec<BigRational>) -> Result<GramMatrix> {
        if exact.len() != n * n {
            return Err(Error::InvalidInput("gram entries do not match dimension".into()));
        }
        for i in 0..n {
            for j in 0..i {
                if exact[i * n + j] != exact[j * n + i] {
                    return Err(Error::InvalidInput("gram matrix is not symmetric".into()));
                }
            }
        }
        let entries = exact.iter().map(Ball::from_rational).collect();
        Ok(GramMatrix { n, entries, exact: Some(exact) })
    }

    pub fn from_f64(n: usize, v: &[f64]) -> Result<GramMatrix> {
        GramMatrix::from_balls(n, v.iter().map(|&x| Ball::exact(x)).collect())
    }

    pub fn identity(n: usize) -> GramMatrix {
        let mut e = vec![BigRational::zero(); n * n];
        for i in 0..n {
            e[i * n + i] = BigRational::one();
        }
        GramMatrix::from_rational(n, e).expect("identity is symmetric")
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> Ball {
        self.entries[i * self.n + j]
    }

    pub fn exact_entries(&self) -> Option<&[BigRational]> {
        self.exact.as_deref()
    }

    pub fn mids(&self) -> Vec<f64> {
        self.entries.iter().map(|b| b.mid).collect()
    }

    pub fn max_radius(&self) -> f64 {
        self.entries.iter().map(|b| b.rad).fold(0.0, f64::max)
    }

    /// `v^T G v` as a certified real.
    pub fn eval(&self, v: &[i64]) -> Ball {
        let n = self.n;
        let mut acc = Ball::ZERO;
        for i in 0..n {
            if v[i] == 0 {
                continue;
            }
            let mut row = Ball::ZERO;
            for j in 0..n {
                if v[j] != 0 {
                    row = row + self.entries[i * n + j].scale(v[j] as f64);
                }
            }
            acc = acc + row.scale(v[i] as f64);
        }
        acc
    }

    pub fn eval_exact(&self, v: &[i64]) -> Option<BigRational> {
        let e = self.exact.as_ref()?;
        let n = self.n;
        let mut acc = BigRational::zero();
        for i in 0..n {
            for j in 0..n {
                if v[i] != 0 && v[j] != 0 {
                    acc += &e[i * n + j] * BigRational::from_integer(BigInt::from(v[i] * v[j]));
                }
            }
        }
        Some(acc)
    }

    /// Gram matrix of the sublattice spanned by the columns of `basis`.
    pub fn restrict(&self, basis: &IntMatrix) -> Result<GramMatrix> {
        let n = self.n;
        if basis.nrows() != n {
            return Err(Error::InvalidInput("basis rows must match gram dimension".into()));
        }
        let k = basis.ncols();
        if let Some(e) = &self.exact {
            let b = basis.to_rational();
            let mut out = vec![BigRational::zero(); k * k];
            for a in 0..k {
                for c in 0..k {
                    let mut s = BigRational::zero();
                    for i in 0..n {
                        if b.get(i, a).is_zero() {
                            continue;
                        }
                        for j in 0..n {
                            s += b.get(i, a) * &e[i * n + j] * b.get(j, c);
                        }
                    }
                    out[a * k + c] = s;
                }
            }
            return GramMatrix::from_rational(k, out);
        }
        let bf: Vec<Vec<f64>> = (0..k)
            .map(|a| basis.col(a).iter().map(|v| v.to_f64().unwrap()).collect())
            .collect();
        let mut out = vec![Ball::ZERO; k * k];
        for a in 0..k {
            for c in 0..k {
                let mut s = Ball::ZERO;
                for i in 0..n {
                    if bf[a][i] == 0.0 {
                        continue;
                    }
                    for j in 0..n {
                        if bf[c][j] != 0.0 {
                            s = s + self.entries[i * n + j].scale(bf[a][i] * bf[c][j]);
                        }
                    }
                }
                out[a * k + c] = s;
            }
        }
        GramMatrix::from_balls(k, out)
    }

    /// Floating Cholesky `G = R^T R` of the midpoints; `None` if not positive definite.
    fn cholesky(&self) -> Option<Vec<f64>> {
        cholesky(self.n, &self.mids())
    }

    /// Rigorous-enough lower bound on the smallest eigenvalue:
    /// `1 / trace(G^{-1})`, shrunk by the entry radii (Weyl).
    pub fn min_eigenvalue_lower(&self) -> Result<f64> {
        let n = self.n;
        let r = self.cholesky().ok_or(Error::NotPositiveDefinite)?;
        // trace(G^{-1}) = ||R^{-1}||_F^2
        let mut rinv = vec![0.0; n * n];
        for j in 0..n {
            rinv[j * n + j] = 1.0 / r[j * n + j];
            for i in (0..j).rev() {
                let mut s = 0.0;
                for k in i + 1..=j {
                    s += r[i * n + k] * rinv[k * n + j];
                }
                rinv[i * n + j] = -s / r[i * n + i];
            }
        }
        let tr: f64 = rinv.iter().map(|x| x * x).sum();
        let lam = 1.0 / tr * (1.0 - 1e-12) - self.max_radius() * n as f64;
        if lam <= 0.0 {
            return Err(Error::NotPositiveDefinite);
        }
        Ok(lam)
    }
}

fn cholesky(n: usize, g: &[f64]) -> Option<Vec<f64>> {
    let mut r = vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            let mut s = g[i * n + j];
            for k in 0..i {
                s -= r[k * n + i] * r[k * n + j];
            }
            if i == j {
                if s <= 0.0 || !s.is_finite() {
                    return None;
                }
                r[i * n + i] = s.sqrt();
            } else {
                r[i * n + j] = s / r[i * n + i];
            }
        }
    }
    Some(r)
}

/// Arithmetic needed by the LLL loop.
pub trait LllScalar: Clone + PartialOrd {
    fn zero_value() -> Self;
    fn from_f64(v: f64) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn round(&self) -> BigInt;
    fn from_bigint(v: &BigInt) -> Self;
    fn magnitude(&self) -> Self;
}

impl LllScalar for f64 {
    fn zero_value() -> f64 {
        0.0
    }
    fn from_f64(v: f64) -> f64 {
        v
    }
    fn add(&self, o: &f64) -> f64 {
        self + o
    }
    fn sub(&self, o: &f64) -> f64 {
        self - o
    }
    fn mul(&self, o: &f64) -> f64 {
        self * o
    }
    fn div(&self, o: &f64) -> f64 {
        self / o
    }
    fn round(&self) -> BigInt {
        BigInt::from(f64::round(*self) as i64)
    }
    fn from_bigint(v: &BigInt) -> f64 {
        v.to_f64().unwrap_or(f64::NAN)
    }
    fn magnitude(&self) -> f64 {
        f64::abs(*self)
    }
}

/// LLL on a Gram matrix (row-major, `n*n`). Returns the unimodular transform
/// whose columns are the reduced basis in the input coordinates.
pub fn lll_gram<S: LllScalar>(n: usize, gram: &[S], delta: f64) -> Result<IntMatrix> {
    let mut t = IntMatrix::identity(n);
    if n <= 1 {
        return Ok(t);
    }
    let g = |i: usize, j: usize| gram[i * n + j].clone();
    // current gram of the transformed basis, maintained for recomputation
    let mut cur: Vec<S> = (0..n * n).map(|k| g(k / n, k % n)).collect();
    let mut mu = vec![S::zero_value(); n * n];
    let mut bstar = vec![S::zero_value(); n];
    let zero = S::zero_value();
    for i in 0..n {
        for j in 0..i {
            let mut s = cur[i * n + j].clone();
            for k in 0..j {
                s = s.sub(&mu[j * n + k].mul(&mu[i * n + k]).mul(&bstar[k]));
            }
            mu[i * n + j] = s.div(&bstar[j]);
        }
        let mut s = cur[i * n + i].clone();
        for k in 0..i {
            s = s.sub(&mu[i * n + k].mul(&mu[i * n + k]).mul(&bstar[k]));
        }
        if s <= zero {
            return Err(Error::NotPositiveDefinite);
        }
        bstar[i] = s;
    }
    let half = S::from_f64(0.5);
    let delta = S::from_f64(delta);
    let mut k = 1usize;
    let mut iterations = 0usize;
    while k < n {
        iterations += 1;
        if iterations > 1_000_000 {
            return Err(Error::Numerical("LLL failed to terminate".into()));
        }
        size_reduce(k, k - 1, n, &mut mu, &mut t, &mut cur, &half);
        let m = mu[k * n + k - 1].clone();
        let lhs = bstar[k].clone();
        let rhs = delta.sub(&m.mul(&m)).mul(&bstar[k - 1]);
        if lhs < rhs {
            // swap b_k and b_{k-1}
            let bb = bstar[k].add(&m.mul(&m).mul(&bstar[k - 1]));
            if bb <= zero {
                return Err(Error::NotPositiveDefinite);
            }
            for j in 0..k - 1 {
                mu.swap(k * n + j, (k - 1) * n + j);
            }
            let new_mu = m.mul(&bstar[k - 1]).div(&bb);
            let new_bk = bstar[k - 1].mul(&bstar[k]).div(&bb);
            bstar[k - 1] = bb;
            bstar[k] = new_bk;
            mu[k * n + k - 1] = new_mu.clone();
            for i in k + 1..n {
                let tt = mu[i * n + k].clone();
                mu[i * n + k] = mu[i * n + k - 1].sub(&m.mul(&tt));
                mu[i * n + k - 1] = tt.add(&new_mu.mul(&mu[i * n + k]));
            }
            swap_cols(&mut t, k, k - 1);
            swap_gram(&mut cur, n, k, k - 1);
            if bstar[k] <= zero {
                return Err(Error::NotPositiveDefinite);
            }
            k = k.max(2) - 1;
        } else {
            for l in (0..k - 1).rev() {
                size_reduce(k, l, n, &mut mu, &mut t, &mut cur, &half);
            }
            k += 1;
        }
    }
    Ok(t)
}

/// Integral LLL on an exact rational Gram matrix, all in integer arithmetic
/// (subdeterminants `d_i` and scaled coefficients `λ_ij`). The Lovász
/// condition uses `δ = 99/100`.
pub fn lll_gram_exact(n: usize, gram: &[BigRational]) -> Result<IntMatrix> {
    let den = gram.iter().fold(BigInt::one(), |acc, q| num::Integer::lcm(&acc, q.denom()));
    let mut g: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| (&gram[i * n + j] * BigRational::from_integer(den.clone())).to_integer()).collect())
        .collect();
    let mut h = IntMatrix::identity(n);
    if n <= 1 {
        if n == 1 && !g[0][0].is_positive() {
            return Err(Error::NotPositiveDefinite);
        }
        return Ok(h);
    }
    // 1-based bookkeeping: d[0] = 1, d[i] for vector i; lam[k][j] for j < k
    let mut d = vec![BigInt::zero(); n + 1];
    let mut lam = vec![vec![BigInt::zero(); n + 1]; n + 1];
    d[0] = BigInt::one();
    d[1] = g[0][0].clone();
    if !d[1].is_positive() {
        return Err(Error::NotPositiveDefinite);
    }
    let (dn, dd) = (BigInt::from(99), BigInt::from(100));
    let mut k = 2usize;
    let mut kmax = 1usize;
    let mut guard = 0usize;
    while k <= n {
        guard += 1;
        if guard > 1_000_000 {
            return Err(Error::Numerical("LLL failed to terminate".into()));
        }
        if k > kmax {
            kmax = k;
            for j in 1..=k {
                let mut u = g[k - 1][j - 1].clone();
                for i in 1..j {
                    u = (&d[i] * &u - &lam[k][i] * &lam[j][i]) / &d[i - 1];
                }
                if j < k {
                    lam[k][j] = u;
                } else {
                    if !u.is_positive() {
                        return Err(Error::NotPositiveDefinite);
                    }
                    d[k] = u;
                }
            }
        }
        red(k, k - 1, &mut g, &mut h, &mut lam, &d);
        let l = &lam[k][k - 1];
        let lhs = &dd * &d[k] * &d[k - 2];
        let rhs = &dn * &d[k - 1] * &d[k - 1] - &dd * l * l;
        if lhs < rhs {
            swap_step(k, kmax, &mut g, &mut h, &mut lam, &mut d);
            k = (k - 1).max(2);
        } else {
            for l in (1..k - 1).rev() {
                red(k, l, &mut g, &mut h, &mut lam, &d);
            }
            k += 1;
        }
    }
    Ok(h)
}

fn red(k: usize, l: usize, g: &mut [Vec<BigInt>], h: &mut IntMatrix, lam: &mut [Vec<BigInt>], d: &[BigInt]) {
    let two = BigInt::from(2);
    if &lam[k][l].abs() * &two <= d[l] {
        return;
    }
    // nearest integer to lam / d
    let q = num::Integer::div_floor(&(&lam[k][l] * &two + &d[l]), &(&d[l] * &two));
    let n = g.len();
    for i in 0..h.nrows() {
        let v = h.get(i, k - 1) - &q * h.get(i, l - 1);
        h.set(i, k - 1, v);
    }
    let gkk = g[k - 1][k - 1].clone() - &two * &q * &g[k - 1][l - 1] + &q * &q * &g[l - 1][l - 1];
    for j in 0..n {
        if j == k - 1 {
            continue;
        }
        let v = &g[k - 1][j] - &q * &g[l - 1][j];
        g[k - 1][j] = v.clone();
        g[j][k - 1] = v;
    }
    g[k - 1][k - 1] = gkk;
    lam[k][l] = &lam[k][l] - &q * &d[l];
    for i in 1..l {
        let v = &lam[k][i] - &q * &lam[l][i];
        lam[k][i] = v;
    }
}

fn swap_step(
    k: usize,
    kmax: usize,
    g: &mut [Vec<BigInt>],
    h: &mut IntMatrix,
    lam: &mut [Vec<BigInt>],
    d: &mut [BigInt],
) {
    swap_cols(h, k - 1, k - 2);
    g.swap(k - 1, k - 2);
    for row in g.iter_mut() {
        row.swap(k - 1, k - 2);
    }
    for j in 1..k - 1 {
        let t = lam[k][j].clone();
        lam[k][j] = lam[k - 1][j].clone();
        lam[k - 1][j] = t;
    }
    let l = lam[k][k - 1].clone();
    let b = (&d[k - 2] * &d[k] + &l * &l) / &d[k - 1];
    for i in k + 1..=kmax {
        let t = lam[i][k].clone();
        lam[i][k] = (&d[k] * &lam[i][k - 1] - &l * &t) / &d[k - 1];
        lam[i][k - 1] = (&b * &t + &l * &lam[i][k]) / &d[k];
    }
    d[k - 1] = b;
}

fn size_reduce<S: LllScalar>(
    k: usize,
    l: usize,
    n: usize,
    mu: &mut [S],
    t: &mut IntMatrix,
    cur: &mut [S],
    half: &S,
) {
    let m = mu[k * n + l].clone();
    if m.magnitude() <= *half {
        return;
    }
    let q = m.round();
    if q.is_zero() {
        return;
    }
    let qs = S::from_bigint(&q);
    mu[k * n + l] = mu[k * n + l].sub(&qs);
    for i in 0..l {
        mu[k * n + i] = mu[k * n + i].sub(&qs.mul(&mu[l * n + i]));
    }
    for i in 0..t.nrows() {
        let v = t.get(i, k) - &q * t.get(i, l);
        t.set(i, k, v);
    }
    // cur gram: b_k <- b_k - q b_l
    let gkl = cur[k * n + l].clone();
    let gll = cur[l * n + l].clone();
    let gkk = cur[k * n + k].clone();
    for j in 0..n {
        if j == k {
            continue;
        }
        let v = cur[k * n + j].sub(&qs.mul(&cur[l * n + j]));
        cur[k * n + j] = v.clone();
        cur[j * n + k] = v;
    }
    let two = S::from_f64(2.0);
    cur[k * n + k] = gkk.sub(&two.mul(&qs).mul(&gkl)).add(&qs.mul(&qs).mul(&gll));
}

fn swap_cols(t: &mut IntMatrix, a: usize, b: usize) {
    for i in 0..t.nrows() {
        let x = t.get(i, a).clone();
        let y = t.get(i, b).clone();
        t.set(i, a, y);
        t.set(i, b, x);
    }
}

fn swap_gram<S: Clone>(g: &mut [S], n: usize, a: usize, b: usize) {
    for j in 0..n {
        g.swap(a * n + j, b * n + j);
    }
    for i in 0..n {
        g.swap(i * n + a, i * n + b);
    }
}

/// LLL-reduce the lattice spanned by the columns of `basis` under `gram`.
pub fn lll_reduce(basis: &IntMatrix, gram: &GramMatrix) -> Result<IntMatrix> {
    let sub = gram.restrict(basis)?;
    let k = sub.dim();
    let t = match sub.exact_entries() {
        Some(e) => lll_gram_exact(k, e)?,
        None => {
            sub.cholesky().ok_or(Error::NotPositiveDefinite)?;
            lll_gram(k, &sub.mids(), LLL_DELTA)?
        }
    };
    Ok(basis.mul(&t))
}

/// Check the Lovász and size conditions on a basis, using exact arithmetic
/// when the form is exact.
pub fn is_lll_reduced(basis: &IntMatrix, gram: &GramMatrix, delta: f64) -> Result<bool> {
    let sub = gram.restrict(basis)?;
    let n = sub.dim();
    let vals: Vec<BigRational> = match sub.exact_entries() {
        Some(e) => e.to_vec(),
        None => sub
            .mids()
            .iter()
            .map(|&x| BigRational::from_float(x).unwrap())
            .collect(),
    };
    let mut mu = vec![BigRational::zero(); n * n];
    let mut bs = vec![BigRational::zero(); n];
    for i in 0..n {
        for j in 0..i {
            let mut s = vals[i * n + j].clone();
            for k in 0..j {
                s -= &mu[j * n + k] * &mu[i * n + k] * &bs[k];
            }
            mu[i * n + j] = s / &bs[j];
        }
        let mut s = vals[i * n + i].clone();
        for k in 0..i {
            s -= &mu[i * n + k] * &mu[i * n + k] * &bs[k];
        }
        bs[i] = s;
    }
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let slack = BigRational::new(BigInt::one(), BigInt::from(1_000_000_000i64));
    let d = BigRational::from_float(delta).unwrap();
    for i in 0..n {
        for j in 0..i {
            if mu[i * n + j].abs() > &half + &slack {
                return Ok(false);
            }
        }
        if i > 0 {
            let m = &mu[i * n + i - 1];
            if bs[i].clone() * (BigRational::one() + &slack) < (&d - m * m) * &bs[i - 1] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Lattice vectors `v != 0` with `v^T G v <= radius_sq`.
#[derive(Clone, Debug)]
pub struct ShortVectors {
    /// One representative per `±v` pair, first nonzero coordinate positive.
    pub half: Vec<Vec<i64>>,
    /// Representatives whose form value straddles the radius within the
    /// certification error (kept, flagged here).
    pub boundary: usize,
}

impl ShortVectors {
    /// Both signs of every vector.
    pub fn all(&self) -> Vec<Vec<i64>> {
        let mut out = Vec::with_capacity(2 * self.half.len());
        for v in &self.half {
            out.push(v.clone());
            out.push(v.iter().map(|x| -x).collect());
        }
        out
    }
}

/// Fincke–Pohst enumeration of all nonzero `v` with `v^T G v <= radius_sq`,
/// preconditioned with LLL.
///
/// The search runs on floating midpoints with a radius enlarged to cover the
/// certification error of `gram`; each candidate is then filtered exactly
/// (exact form) or by its certified value (ball form).
pub fn enumerate_short_vectors(gram: &GramMatrix, radius_sq: f64) -> Result<ShortVectors> {
    let n = gram.dim();
    if radius_sq <= 0.0 || !radius_sq.is_finite() {
        return Err(Error::InvalidInput("radius must be positive and finite".into()));
    }
    if n == 0 {
        return Ok(ShortVectors { half: vec![], boundary: 0 });
    }
    let lam = gram.min_eigenvalue_lower()?;
    let t = match gram.exact_entries() {
        Some(e) => lll_gram_exact(n, e)?,
        None => lll_gram(n, &gram.mids(), LLL_DELTA)?,
    };
    let reduced = gram.restrict(&t)?;
    let r = reduced.cholesky().ok_or(Error::NotPositiveDefinite)?;
    // |q_true - q_mid| <= rad_max * (sum |v_i|)^2 <= rad_max * n * q / lam
    let slack = gram.max_radius() * n as f64 * radius_sq / lam;
    let bound = radius_sq * (1.0 + 1e-9) + slack + 1e-12;

    let tf: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| t.get(i, j).to_i64().expect("small transform")).collect())
        .collect();
    let mut half = Vec::new();
    let mut boundary = 0usize;
    let mut x = vec![0i64; n];
    fincke_pohst(n, &r, bound, &mut x, n, 0.0, &mut |y: &[i64]| {
        let v: Vec<i64> = (0..n)
            .map(|i| (0..n).map(|j| tf[i][j] * y[j]).sum())
            .collect();
        let first = v.iter().find(|&&c| c != 0).copied().unwrap_or(0);
        if first <= 0 {
            return;
        }
        if let Some(q) = gram.eval_exact(&v) {
            let rq = BigRational::from_float(radius_sq).unwrap();
            if q <= rq {
                half.push(v);
            }
            return;
        }
        let q = gram.eval(&v);
        if q.lower() <= radius_sq {
            if q.upper() > radius_sq {
                boundary += 1;
            }
            half.push(v);
        }
    });
    half.sort_by(|a, b| {
        let qa = gram.eval(a).mid;
        let qb = gram.eval(b).mid;
        qa.partial_cmp(&qb).unwrap().then_with(|| a.cmp(b))
    });
    Ok(ShortVectors { half, boundary })
}

/// Depth-first enumeration in coordinates of the upper-triangular Cholesky
/// factor `r` (`G = R^T R`).
fn fincke_pohst(
    n: usize,
    r: &[f64],
    bound: f64,
    x: &mut [i64],
    level: usize,
    partial: f64,
    visit: &mut dyn FnMut(&[i64]),
) {
    if level == 0 {
        if x.iter().any(|&v| v != 0) {
            visit(x);
        }
        return;
    }
    let i = level - 1;
    // q = sum_i (r_ii x_i + sum_{j>i} r_ij x_j)^2
    let mut c = 0.0;
    for j in i + 1..n {
        c += r[i * n + j] * x[j] as f64;
    }
    let rii = r[i * n + i];
    let center = -c / rii;
    let rem = bound - partial;
    if rem < 0.0 {
        return;
    }
    let w = rem.sqrt() / rii;
    let lo = (center - w).ceil() as i64;
    let hi = (center + w).floor() as i64;
    for v in lo..=hi {
        let d = rii * v as f64 + c;
        let p = partial + d * d;
        if p <= bound {
            x[i] = v;
            fincke_pohst(n, r, bound, x, level - 1, p, visit);
        }
    }
    x[i] = 0;
}

/// Exact integer LLL on row vectors under the standard inner product.
/// Returns the reduced rows.
pub fn lll_integer_rows(rows: &[Vec<BigInt>]) -> Result<Vec<Vec<BigInt>>> {
    let k = rows.len();
    let mut g = vec![BigRational::zero(); k * k];
    for i in 0..k {
        for j in 0..k {
            let s: BigInt = rows[i].iter().zip(&rows[j]).map(|(a, b)| a * b).sum();
            g[i * k + j] = BigRational::from_integer(s);
        }
    }
    let t = lll_gram_exact(k, &g)?;
    Ok((0..k)
        .map(|c| {
            let dim = rows[0].len();
            (0..dim)
                .map(|d| (0..k).map(|r| t.get(r, c) * &rows[r][d]).sum())
                .collect()
        })
        .collect())
}

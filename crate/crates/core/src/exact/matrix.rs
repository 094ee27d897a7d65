//! Exact integer and rational matrices: Hermite and Smith normal forms,
//! kernels, determinants and linear solves.

use std::fmt;

use num::integer::Integer;
use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix { rows, cols, data: vec![vec![BigInt::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> IntMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        IntMatrix { rows: r, cols: c, data: rows }
    }

    pub fn from_i64(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
    }

    /// Matrix whose columns are the given vectors (all of length `nrows`).
    pub fn from_cols(nrows: usize, cols: &[Vec<BigInt>]) -> IntMatrix {
        let mut m = IntMatrix::zeros(nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), nrows);
            for i in 0..nrows {
                m.data[i][j] = c[i].clone();
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i][j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i]
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.data[i][j].clone()).collect()
    }

    pub fn cols_vec(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j][i] = self.data[i][j].clone();
            }
        }
        t
    }

    pub fn mul(&self, o: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    if !o.data[k][j].is_zero() {
                        out.data[i][j] += a * &o.data[k][j];
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        self.data
            .iter()
            .map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn hcat(&self, o: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, o.rows);
        let data = self
            .data
            .iter()
            .zip(&o.data)
            .map(|(a, b)| a.iter().chain(b).cloned().collect())
            .collect();
        IntMatrix { rows: self.rows, cols: self.cols + o.cols, data }
    }

    pub fn vcat(&self, o: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, o.cols);
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        IntMatrix { rows: self.rows + o.rows, cols: self.cols, data }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().flatten().all(|v| v.is_zero())
    }

    pub fn to_rational(&self) -> RatMatrix {
        RatMatrix::from_rows(
            self.data
                .iter()
                .map(|r| r.iter().map(|v| BigRational::from_integer(v.clone())).collect())
                .collect(),
        )
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.data.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                    return BigInt::zero();
                };
                a.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for r in &mut self.data {
            r.swap(a, b);
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.data.swap(a, b);
    }

    /// col_dst += k * col_src
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for r in &mut self.data {
            let v = &r[src] * k;
            r[dst] += v;
        }
    }

    /// row_dst += k * row_src
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        let src_row = self.data[src].clone();
        for (d, s) in self.data[dst].iter_mut().zip(&src_row) {
            *d += s * k;
        }
    }

    fn neg_col(&mut self, j: usize) {
        for r in &mut self.data {
            r[j] = -r[j].clone();
        }
    }

    fn neg_row(&mut self, i: usize) {
        for v in &mut self.data[i] {
            *v = -v.clone();
        }
    }

    /// Replace columns (a, b) by (p*a + q*b, r*a + s*b).
    fn combine_cols(&mut self, a: usize, b: usize, p: &BigInt, q: &BigInt, r: &BigInt, s: &BigInt) {
        for row in &mut self.data {
            let x = &row[a] * p + &row[b] * q;
            let y = &row[a] * r + &row[b] * s;
            row[a] = x;
            row[b] = y;
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.data {
            let s: Vec<String> = r.iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]", s.join(", "))?;
        }
        Ok(())
    }
}

/// Result of a column-style Hermite reduction `M * U = [0 | H]`.
#[derive(Clone, Debug)]
pub struct HermiteForm {
    /// The nonzero columns: an upper-triangular (echelon from the bottom)
    /// basis of the column lattice with positive pivots.
    pub basis: IntMatrix,
    /// Unimodular transform with `M * transform = [kernel part | basis]`.
    pub transform: IntMatrix,
    /// Number of leading zero columns in `M * transform`; the first `nullity`
    /// columns of `transform` are a Z-basis of the integer kernel of `M`.
    pub nullity: usize,
}

/// Column Hermite normal form with transform.
///
/// Pivots are located bottom-up, so a full-rank square input yields an
/// upper-triangular `basis` whose off-diagonal entries in each pivot row lie
/// in `[0, pivot)`.
pub fn hermite(m: &IntMatrix) -> HermiteForm {
    let rows = m.rows;
    let cols = m.cols;
    let mut h = m.clone();
    let mut u = IntMatrix::identity(cols);
    // columns p+1..cols are finished pivot columns
    let mut p = cols as isize - 1;
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    for i in (0..rows).rev() {
        if p < 0 {
            break;
        }
        let pc = p as usize;
        // gather gcd of row i over columns 0..=pc into column pc
        for j in 0..pc {
            if h.data[i][j].is_zero() {
                continue;
            }
            let a = h.data[i][pc].clone();
            let b = h.data[i][j].clone();
            let eg = a.extended_gcd(&b);
            let (g, x, y) = (eg.gcd, eg.x, eg.y);
            // new col pc = x*pc + y*j ; new col j = (-b/g)*pc + (a/g)*j
            let ag = &a / &g;
            let bg = &b / &g;
            h.combine_cols(pc, j, &x, &y, &(-&bg), &ag);
            u.combine_cols(pc, j, &x, &y, &(-&bg), &ag);
        }
        if h.data[i][pc].is_zero() {
            continue;
        }
        if h.data[i][pc].is_negative() {
            h.neg_col(pc);
            u.neg_col(pc);
        }
        let piv = h.data[i][pc].clone();
        for j in pc + 1..cols {
            let q = h.data[i][j].div_floor(&piv);
            if !q.is_zero() {
                h.add_col(j, pc, &(-&q));
                u.add_col(j, pc, &(-&q));
            }
        }
        pivots.push((i, pc));
        p -= 1;
    }
    let nullity = (p + 1) as usize;
    let mut basis = IntMatrix::zeros(rows, cols - nullity);
    for i in 0..rows {
        for j in nullity..cols {
            basis.data[i][j - nullity] = h.data[i][j].clone();
        }
    }
    HermiteForm { basis, transform: u, nullity }
}

/// Column Hermite normal form (nonzero columns only).
pub fn hnf(m: &IntMatrix) -> IntMatrix {
    hermite(m).basis
}

/// Z-basis of `{v in Z^cols : M v = 0}` as columns.
pub fn integer_kernel(m: &IntMatrix) -> IntMatrix {
    let hf = hermite(m);
    let mut k = IntMatrix::zeros(m.cols, hf.nullity);
    for i in 0..m.cols {
        for j in 0..hf.nullity {
            k.data[i][j] = hf.transform.data[i][j].clone();
        }
    }
    // canonicalise the kernel basis itself
    if hf.nullity > 0 {
        hnf(&k)
    } else {
        k
    }
}

/// Smith normal form `U * M * V = D`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Diagonal entries `d_1 | d_2 | ...`, including zeros.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d.data[i][i].clone())
            .collect()
    }
}

pub fn snf(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let n = rows.min(cols);
    for t in 0..n {
        // choose the smallest nonzero entry in the remaining block as pivot
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = &d.data[i][j];
                    if !x.is_zero()
                        && best.is_none_or(|(bi, bj)| x.abs() < d.data[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish_snf(u, d, v);
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);
            let mut clean = true;
            for i in t + 1..rows {
                let q = d.data[i][t].div_floor(&d.data[t][t]);
                d.add_row(i, t, &(-&q));
                u.add_row(i, t, &(-&q));
                if !d.data[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let q = d.data[t][j].div_floor(&d.data[t][t]);
                d.add_col(j, t, &(-&q));
                v.add_col(j, t, &(-&q));
                if !d.data[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility: pivot must divide the whole remaining block
            let piv = d.data[t][t].clone();
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !(&d.data[i][j] % &piv).is_zero());
            match bad {
                Some((i, _)) => {
                    d.add_row(t, i, &BigInt::one());
                    u.add_row(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if d.data[t][t].is_negative() {
            d.neg_row(t);
            u.neg_row(t);
        }
    }
    finish_snf(u, d, v)
}

fn finish_snf(u: IntMatrix, d: IntMatrix, v: IntMatrix) -> SmithForm {
    let mut s = SmithForm { u, d, v };
    for t in 0..s.d.rows.min(s.d.cols) {
        if s.d.data[t][t].is_negative() {
            s.d.neg_row(t);
            s.u.neg_row(t);
        }
    }
    s
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<BigRational>>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> RatMatrix {
        RatMatrix { rows, cols, data: vec![vec![BigRational::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> RatMatrix {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = BigRational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> RatMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        RatMatrix { rows: r, cols: c, data: rows }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i][j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i]
    }

    pub fn rows_vec(&self) -> &[Vec<BigRational>] {
        &self.data
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = RatMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j][i] = self.data[i][j].clone();
            }
        }
        t
    }

    pub fn mul(&self, o: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let mut out = RatMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    if !o.data[k][j].is_zero() {
                        out.data[i][j] += a * &o.data[k][j];
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(self.cols, v.len());
        self.data
            .iter()
            .map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut a = self.data.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let inv = a[r][c].recip();
            for v in &mut a[r] {
                *v *= &inv;
            }
            let pr = a[r].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i != r && !row[c].is_zero() {
                    let f = row[c].clone();
                    for (x, y) in row.iter_mut().zip(&pr) {
                        *x -= &f * y;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (RatMatrix::from_rows_sized(a, self.rows, self.cols), pivots)
    }

    fn from_rows_sized(data: Vec<Vec<BigRational>>, rows: usize, cols: usize) -> RatMatrix {
        RatMatrix { rows, cols, data }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn det(&self) -> BigRational {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = BigRational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
                return BigRational::zero();
            };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            det *= &a[c][c];
            let inv = a[c][c].recip();
            for i in c + 1..n {
                if a[i][c].is_zero() {
                    continue;
                }
                let f = &a[i][c] * &inv;
                let pr = a[c].clone();
                for (x, y) in a[i].iter_mut().zip(&pr).skip(c) {
                    *x -= &f * y;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<RatMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = RatMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.data[i][j] = self.data[i][j].clone();
            }
            aug.data[i][n + i] = BigRational::one();
        }
        let (r, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        let mut inv = RatMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.data[i][j] = r.data[i][n + j].clone();
            }
        }
        Some(inv)
    }

    /// Solve `self * x = b` for square invertible `self`.
    /// Some `x` with `self * x = b` for a possibly non-square system, if consistent.
    pub fn solve_consistent(&self, b: &[BigRational]) -> Option<Vec<BigRational>> {
        let mut rows = self.data.clone();
        for (r, v) in rows.iter_mut().zip(b) {
            r.push(v.clone());
        }
        let aug = RatMatrix::from_rows_sized(rows, self.rows, self.cols + 1);
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![BigRational::zero(); self.cols];
        for (i, &c) in pivots.iter().enumerate() {
            x[c] = r.data[i][self.cols].clone();
        }
        Some(x)
    }

    pub fn solve(&self, b: &[BigRational]) -> Option<Vec<BigRational>> {
        self.inverse().map(|inv| inv.mul_vec(b))
    }
}

/// Basis of `{v : M v = 0}`, each vector scaled to coprime integers with its
/// first nonzero entry positive.
pub fn rational_kernel(m: &RatMatrix) -> Vec<Vec<BigInt>> {
    let (r, pivots) = m.rref();
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); m.cols];
            v[f] = BigRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.data[row][f].clone();
            }
            primitive_integer_vector(&v)
        })
        .collect()
}

/// Scale a rational vector to a primitive integer vector, first nonzero positive.
pub fn primitive_integer_vector(v: &[BigRational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut ints: Vec<BigInt> = v.iter().map(|x| (x * &l).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() {
        for x in &mut ints {
            *x /= &g;
        }
    }
    if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        for x in &mut ints {
            *x = -x.clone();
        }
    }
    ints
}

/// Solve `H y = x` over the integers for a square upper-triangular HNF `H`.
pub fn solve_upper_integral(h: &IntMatrix, x: &[BigInt]) -> Option<Vec<BigInt>> {
    let n = h.rows;
    if h.cols != n {
        return None;
    }
    let mut y = vec![BigInt::zero(); n];
    for i in (0..n).rev() {
        let mut s = x[i].clone();
        for j in i + 1..n {
            s -= &h.data[i][j] * &y[j];
        }
        let (q, r) = s.div_rem(&h.data[i][i]);
        if !r.is_zero() {
            return None;
        }
        y[i] = q;
    }
    Some(y)
}

pub fn check_dims(m: &IntMatrix, rows: usize, cols: usize) -> Result<()> {
    if m.rows != rows || m.cols != cols {
        return Err(Error::InvalidInput(format!(
            "expected a {rows}x{cols} matrix, got {}x{}",
            m.rows, m.cols
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn snf_of_diag_2_3_is_1_6() {
        let m = IntMatrix::from_i64(&[&[2, 0], &[0, 3]]);
        let s = snf(&m);
        assert_eq!(s.diagonal(), vec![bi(1), bi(6)]);
        assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
    }

    #[test]
    fn snf_of_zero_and_already_diagonal() {
        let z = IntMatrix::zeros(2, 3);
        assert!(snf(&z).d.is_zero());
        let m = IntMatrix::from_i64(&[&[2, 0], &[0, 2]]);
        assert_eq!(snf(&m).diagonal(), vec![bi(2), bi(2)]);
    }

    #[test]
    fn hnf_is_upper_triangular_and_reduced() {
        let m = IntMatrix::from_i64(&[&[4, 6, 1], &[2, 8, 3], &[0, 2, 5]]);
        let hf = hermite(&m);
        let h = &hf.basis;
        assert_eq!(h.ncols(), 3);
        for i in 0..3 {
            assert!(h.get(i, i).is_positive());
            for j in 0..i {
                assert!(h.get(i, j).is_zero());
            }
            for j in i + 1..3 {
                assert!(!h.get(i, j).is_negative() && h.get(i, j) < h.get(i, i));
            }
        }
        assert_eq!(m.mul(&hf.transform), h.clone());
        assert_eq!(h.det().abs(), m.det().abs());
    }

    #[test]
    fn integer_kernel_is_saturated() {
        // 2x - 4y = 0 has integer kernel generated by (2, 1)
        let m = IntMatrix::from_i64(&[&[2, -4]]);
        let k = integer_kernel(&m);
        assert_eq!(k.ncols(), 1);
        assert_eq!(k.col(0), vec![bi(2), bi(1)]);
    }

    #[test]
    fn rational_kernel_examples() {
        let m = IntMatrix::from_i64(&[&[1, -1]]).to_rational();
        assert_eq!(rational_kernel(&m), vec![vec![bi(1), bi(1)]]);
        assert!(rational_kernel(&IntMatrix::identity(3).to_rational()).is_empty());
    }

    #[test]
    fn bareiss_determinant() {
        let m = IntMatrix::from_i64(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]);
        assert_eq!(m.det(), bi(4));
        assert_eq!(m.to_rational().det(), BigRational::from_integer(bi(4)));
    }
}

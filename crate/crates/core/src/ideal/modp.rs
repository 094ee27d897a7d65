//! Dense linear algebra over `F_p` for word-sized primes.

pub fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

pub fn invmod(a: u64, p: u64) -> u64 {
    // p is prime
    powmod(a, p - 2, p)
}

/// Row-reduce in place; returns pivot columns.
pub fn rref(rows: &mut [Vec<u64>], p: u64) -> Vec<usize> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(piv) = (r..nrows).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = invmod(rows[r][c], p);
        for v in rows[r].iter_mut() {
            *v = mulmod(*v, inv, p);
        }
        for i in 0..nrows {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in 0..ncols {
                    let sub = mulmod(f, rows[r][j], p);
                    rows[i][j] = (rows[i][j] + p - sub) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<u64>], p: u64) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, p).len()
}

/// Basis of `{v : M v = 0}` where `M` is given by rows.
pub fn kernel(rows: &[Vec<u64>], ncols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, p);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; ncols];
            v[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - m[r][f]) % p;
            }
            v
        })
        .collect()
}

/// Row-echelon basis of the span of `vecs`.
pub fn span(vecs: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let mut m = vecs.to_vec();
    let k = rref(&mut m, p).len();
    m.truncate(k);
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_is_annihilated() {
        let p = 7;
        let rows = vec![vec![1, 2, 3], vec![2, 4, 6]];
        let k = kernel(&rows, 3, p);
        assert_eq!(k.len(), 2);
        for v in &k {
            for r in &rows {
                let s: u64 = r.iter().zip(v).map(|(a, b)| a * b).sum();
                assert_eq!(s % p, 0);
            }
        }
        assert_eq!(rank(&rows, p), 1);
        assert_eq!(invmod(3, 7), 5);
    }
}

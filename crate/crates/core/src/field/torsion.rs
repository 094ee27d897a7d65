//! Roots of unity by short-vector enumeration.

use num::BigInt;

use super::{Elt, NumberField};
use crate::error::Result;
use crate::exact::abelian::p_valuation;
use crate::exact::lattice::enumerate_short_vectors;

/// Search radius slack above `T2 = n`.
pub const TORSION_SLACK: f64 = 1.0 / (1u64 << 20) as f64;

#[derive(Clone, Debug)]
pub struct TorsionUnits {
    /// `w = |μ(K)|`.
    pub order: u64,
    /// A generator of exact multiplicative order `w`.
    pub generator: Elt,
    /// Integral coordinates of the generator.
    pub generator_coords: Vec<BigInt>,
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

/// Exact multiplicative order of `x` (integral coordinates) if it is a root
/// of unity of order `m` with `φ(m) <= n`.
pub fn root_of_unity_order(k: &NumberField, x: &[BigInt]) -> Option<u64> {
    let n = k.degree() as u64;
    let one = k.integral_coords(&k.one()).expect("1 is integral");
    let max_m = 2 * n * n + 2;
    let mut y = x.to_vec();
    for m in 1..=max_m {
        if y == one {
            return (euler_phi(m) <= n).then_some(m);
        }
        y = k.mul_basis_coords(&y, x);
    }
    None
}

/// `μ(K)`: every root of unity has `T2 = n`, so enumerate `T2 <= n + slack`
/// and keep the elements with an exact finite order.
pub fn torsion_units(k: &NumberField) -> Result<TorsionUnits> {
    let n = k.degree();
    let gram = k.t2_gram();
    let sv = enumerate_short_vectors(&gram, n as f64 + TORSION_SLACK)?;
    let mut best: (u64, Vec<BigInt>) = {
        let one = k.integral_coords(&k.one()).unwrap();
        let mut minus = one.clone();
        for v in &mut minus {
            *v = -v.clone();
        }
        (2, minus)
    };
    for v in sv.all() {
        let coords: Vec<BigInt> = v.iter().map(|&c| BigInt::from(c)).collect();
        if let Some(m) = root_of_unity_order(k, &coords) {
            if m > best.0 || (m == best.0 && coords < best.1) {
                best = (m, coords);
            }
        }
    }
    let generator = k.from_basis_coords(&best.1);
    Ok(TorsionUnits { order: best.0, generator, generator_coords: best.1 })
}

/// `ν(K, p)`: the p-adic valuation of `w`.
pub fn nu_valuation(t: &TorsionUnits, p: u64) -> u32 {
    p_valuation(t.order, p)
}

/// Check `ζ^w = 1` and `ζ^{w/q} != 1` for every prime `q | w`.
pub fn generator_has_exact_order(k: &NumberField, t: &TorsionUnits) -> bool {
    let w = t.order;
    let pow = |e: u64| k.pow(&t.generator, e);
    if pow(w) != k.one() {
        return false;
    }
    let mut m = w;
    let mut q = 2;
    while m > 1 {
        if m % q == 0 {
            if pow(w / q) == k.one() {
                return false;
            }
            while m % q == 0 {
                m /= q;
            }
        }
        q += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::Poly;
    use crate::field::make_field;

    fn w(c: &[i64]) -> u64 {
        let k = make_field("K", &Poly::from_i64(c), None, 128).unwrap();
        let t = torsion_units(&k).unwrap();
        assert!(generator_has_exact_order(&k, &t));
        t.order
    }

    #[test]
    fn small_fields() {
        assert_eq!(w(&[-1, 1]), 2);
        assert_eq!(w(&[1, 0, 1]), 4);
        assert_eq!(w(&[3, 0, 1]), 6);
        assert_eq!(w(&[-2, 0, 1]), 2);
        assert_eq!(w(&[1, 0, 0, 0, 1]), 8);
        assert_eq!(w(&[1, 0, -1, 0, 1]), 12);
        assert_eq!(w(&[1, 0, -10, 0, 1]), 2);
        assert_eq!(w(&[484, 0, 48, 0, 1]), 4);
    }
}

//! Truncated Dedekind zeta sums by multiplicative ideal counting.

use serde::Serialize;

use super::primes::factor_prime;
use crate::error::{Error, Result};
use crate::exact::ball::Ball;
use crate::field::NumberField;

#[derive(Clone, Debug, Serialize)]
pub struct ZetaPartial {
    pub sigma: f64,
    pub cutoff: u64,
    /// `sum_{N(A) <= cutoff} N(A)^{-σ}`.
    pub value: Ball,
    /// `n sum_{m > cutoff} m^{-σ} <= n cutoff^{1-σ} / (σ - 1)`. This assumes
    /// at most `n` ideals of each norm, which fails for some norms; it is an
    /// estimate, not a certificate.
    pub tail_estimate: f64,
    /// Number of integral ideals counted.
    pub ideals: u64,
}

/// Number of integral ideals of each norm `0..=cutoff`.
pub fn ideal_counts(k: &NumberField, cutoff: u64) -> Result<Vec<u64>> {
    let n = cutoff as usize;
    let mut a = vec![0u64; n + 1];
    if n >= 1 {
        a[1] = 1;
    }
    let mut sieve = vec![true; n + 1];
    for p in 2..=n {
        if !sieve[p] {
            continue;
        }
        let mut m = p * p;
        while m <= n {
            sieve[m] = false;
            m += p;
        }
        for q in factor_prime(k, p as u64)?.primes {
            let Some(qn) = (p as u64).checked_pow(q.f).filter(|&v| v <= cutoff) else {
                continue;
            };
            let qn = qn as usize;
            // multiply the Dirichlet series by 1 / (1 - N(P)^{-s})
            let mut m = qn;
            while m <= n {
                a[m] += a[m / qn];
                m += qn;
            }
        }
    }
    Ok(a)
}

pub fn zeta_partial(k: &NumberField, sigma: f64, cutoff: u64) -> Result<ZetaPartial> {
    if sigma <= 1.0 || !sigma.is_finite() {
        return Err(Error::InvalidInput("sigma must exceed 1".into()));
    }
    if cutoff == 0 {
        return Err(Error::InvalidInput("cutoff must be positive".into()));
    }
    let a = ideal_counts(k, cutoff)?;
    let mut value = Ball::ZERO;
    let s = Ball::exact(-sigma);
    // sum small terms first
    for m in (1..=cutoff as usize).rev() {
        if a[m] == 0 {
            continue;
        }
        let term = (Ball::exact(m as f64).ln() * s).exp().scale(a[m] as f64);
        value = value + term;
    }
    let tail_estimate = k.degree() as f64 * (cutoff as f64).powf(1.0 - sigma) / (sigma - 1.0);
    Ok(ZetaPartial { sigma, cutoff, value, tail_estimate, ideals: a.iter().sum() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::Poly;
    use crate::field::{make_field, rationals};

    #[test]
    fn riemann_zeta_two() {
        let z = zeta_partial(&rationals(), 2.0, 10_000).unwrap();
        let exact = std::f64::consts::PI.powi(2) / 6.0;
        assert!((z.value.mid - exact).abs() < 1e-4);
        assert_eq!(zeta_partial(&rationals(), 2.0, 1).unwrap().value.mid, 1.0);
    }

    #[test]
    fn gaussian_counts_match_sums_of_squares() {
        // ideals of norm m in Z[i] = r_2(m) / 4
        let k = make_field("Q(i)", &Poly::from_i64(&[1, 0, 1]), None, 128).unwrap();
        let a = ideal_counts(&k, 50).unwrap();
        for m in 1..=50i64 {
            let mut r2 = 0;
            for x in -8i64..=8 {
                for y in -8i64..=8 {
                    if x * x + y * y == m {
                        r2 += 1;
                    }
                }
            }
            assert_eq!(a[m as usize] * 4, r2, "m = {m}");
        }
    }
}

//! Midpoint-radius real numbers.
//!
//! Every operation widens the radius by a relative rounding allowance so that
//! the true value stays inside `[mid - rad, mid + rad]` as long as the inputs
//! did. This is deliberately lighter than a directed-rounding interval type.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Relative slack added after every arithmetic step.
const ROUND: f64 = 2.0 * f64::EPSILON;
/// Relative slack for libm transcendental functions.
const ROUND_TRANSCENDENTAL: f64 = 8.0 * f64::EPSILON;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Ball {
    #[serde(rename = "value")]
    pub mid: f64,
    #[serde(rename = "radius")]
    pub rad: f64,
}

fn widen(mid: f64, rad: f64, rel: f64) -> Ball {
    Ball {
        mid,
        rad: rad * (1.0 + ROUND) + mid.abs() * rel + f64::MIN_POSITIVE,
    }
}

impl Ball {
    pub const ZERO: Ball = Ball { mid: 0.0, rad: 0.0 };
    pub const ONE: Ball = Ball { mid: 1.0, rad: 0.0 };

    pub fn new(mid: f64, rad: f64) -> Ball {
        Ball { mid, rad: rad.abs() }
    }

    /// An exactly representable value.
    pub fn exact(v: f64) -> Ball {
        Ball { mid: v, rad: 0.0 }
    }

    pub fn from_int(v: i64) -> Ball {
        let mid = v as f64;
        if mid as i64 == v && mid.abs() < 9.0e15 {
            Ball::exact(mid)
        } else {
            widen(mid, 0.0, ROUND)
        }
    }

    pub fn from_bigint(v: &BigInt) -> Ball {
        match v.to_i64() {
            Some(s) => Ball::from_int(s),
            None => widen(v.to_f64().unwrap_or(f64::INFINITY), 0.0, ROUND),
        }
    }

    pub fn from_rational(q: &BigRational) -> Ball {
        if q.is_integer() {
            return Ball::from_bigint(q.numer());
        }
        let mid = rational_to_f64(q);
        widen(mid, 0.0, ROUND)
    }

    pub fn pi() -> Ball {
        widen(std::f64::consts::PI, 0.0, f64::EPSILON)
    }

    pub fn lower(&self) -> f64 {
        self.mid - self.rad
    }

    pub fn upper(&self) -> f64 {
        self.mid + self.rad
    }

    pub fn contains(&self, x: f64) -> bool {
        (x - self.mid).abs() <= self.rad
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(0.0)
    }

    pub fn is_positive(&self) -> bool {
        self.lower() > 0.0
    }

    /// Whether two balls can describe the same real.
    pub fn overlaps(&self, other: &Ball) -> bool {
        (self.mid - other.mid).abs() <= self.rad + other.rad
    }

    pub fn abs(&self) -> Ball {
        if self.mid.abs() >= self.rad {
            Ball::new(self.mid.abs(), self.rad)
        } else {
            let hi = self.upper().max(-self.lower());
            Ball::new(hi / 2.0, hi / 2.0 * (1.0 + ROUND))
        }
    }

    pub fn sqr(&self) -> Ball {
        let a = self.abs();
        let mid = a.mid * a.mid + a.rad * a.rad;
        widen(mid, 2.0 * a.mid * a.rad, ROUND)
    }

    pub fn inv(&self) -> Ball {
        assert!(!self.contains_zero(), "inverse of a ball containing zero");
        let m = 1.0 / self.mid;
        let lo = self.mid.abs() - self.rad;
        widen(m, self.rad / (self.mid.abs() * lo), ROUND)
    }

    pub fn div(&self, other: &Ball) -> Ball {
        *self * other.inv()
    }

    pub fn scale(&self, k: f64) -> Ball {
        *self * Ball::exact(k)
    }

    pub fn exp(&self) -> Ball {
        let m = self.mid.exp();
        // |e^x - e^m| <= e^{m} (e^{r} - 1) for |x - m| <= r
        let r = m * self.rad.exp_m1();
        widen(m, r, ROUND_TRANSCENDENTAL)
    }

    pub fn ln(&self) -> Ball {
        let lo = self.lower();
        assert!(lo > 0.0, "logarithm of a ball that is not positive: {self:?}");
        if self.mid == 1.0 && self.rad == 0.0 {
            return Ball::ZERO;
        }
        let m = self.mid.ln();
        let r = -(-self.rad / self.mid).ln_1p();
        widen(m, r.max(self.rad / lo), ROUND_TRANSCENDENTAL)
    }

    pub fn sqrt(&self) -> Ball {
        let lo = self.lower().max(0.0);
        let m = self.mid.max(0.0).sqrt();
        let r = (m - lo.sqrt()).max(self.upper().sqrt() - m);
        widen(m, r, ROUND_TRANSCENDENTAL)
    }

    pub fn ln_rational(q: &BigRational) -> Ball {
        assert!(q.is_positive());
        Ball::ln_bigint(q.numer()) - Ball::ln_bigint(q.denom())
    }

    pub fn ln_bigint(v: &BigInt) -> Ball {
        let bits = v.bits();
        if bits < 1000 {
            Ball::from_bigint(v).ln()
        } else {
            let shift = bits - 64;
            let top: BigInt = v >> shift;
            Ball::from_bigint(&top).ln() + Ball::from_int(shift as i64) * Ball::exact(2f64).ln()
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.mid.abs() + self.rad
    }
}

/// Error-free sum of two floats: `a + b = s + e` exactly.
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

impl Add for Ball {
    type Output = Ball;
    fn add(self, o: Ball) -> Ball {
        if self.rad == 0.0 && o.rad == 0.0 {
            let (s, e) = two_sum(self.mid, o.mid);
            if e == 0.0 && s.is_finite() {
                return Ball::exact(s);
            }
        }
        widen(self.mid + o.mid, self.rad + o.rad, ROUND)
    }
}

impl Sub for Ball {
    type Output = Ball;
    fn sub(self, o: Ball) -> Ball {
        self + -o
    }
}

impl Neg for Ball {
    type Output = Ball;
    fn neg(self) -> Ball {
        Ball::new(-self.mid, self.rad)
    }
}

impl Mul for Ball {
    type Output = Ball;
    fn mul(self, o: Ball) -> Ball {
        if (self.mid == 0.0 && self.rad == 0.0) || (o.mid == 0.0 && o.rad == 0.0) {
            return Ball::ZERO;
        }
        if self.rad == 0.0 && o.rad == 0.0 {
            let p = self.mid * o.mid;
            if p.is_finite() && self.mid.mul_add(o.mid, -p) == 0.0 && (p != 0.0 || self.mid == 0.0 || o.mid == 0.0) {
                return Ball::exact(p);
            }
        }
        let r = self.mid.abs() * o.rad + o.mid.abs() * self.rad + self.rad * o.rad;
        widen(self.mid * o.mid, r, ROUND)
    }
}

impl std::iter::Sum for Ball {
    fn sum<I: Iterator<Item = Ball>>(iter: I) -> Ball {
        iter.fold(Ball::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.15e} ± {:.1e}", self.mid, self.rad)
    }
}

/// Nearest-ish f64 of a big rational, robust to huge numerators and denominators.
pub fn rational_to_f64(q: &BigRational) -> f64 {
    if q.is_zero() {
        return 0.0;
    }
    let (n, d) = (q.numer(), q.denom());
    let nb = n.bits() as i64;
    let db = d.bits() as i64;
    // bring both to ~ 64 significant bits before dividing
    let ns = (nb - 64).max(0);
    let ds = (db - 64).max(0);
    let nn = (n >> ns as usize).to_f64().unwrap_or(0.0);
    let dd = (d >> ds as usize).to_f64().unwrap_or(1.0);
    let e = (ns - ds) as i32;
    (nn / dd) * 2f64.powi(e)
}

/// Complex ball as a pair of real balls.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CBall {
    pub re: Ball,
    pub im: Ball,
}

impl CBall {
    pub const ZERO: CBall = CBall { re: Ball::ZERO, im: Ball::ZERO };

    pub fn real(re: Ball) -> CBall {
        CBall { re, im: Ball::ZERO }
    }

    pub fn conj(&self) -> CBall {
        CBall { re: self.re, im: -self.im }
    }

    pub fn add(&self, o: &CBall) -> CBall {
        CBall { re: self.re + o.re, im: self.im + o.im }
    }

    pub fn mul(&self, o: &CBall) -> CBall {
        CBall {
            re: self.re * o.re - self.im * o.im,
            im: self.re * o.im + self.im * o.re,
        }
    }

    pub fn abs_sq(&self) -> Ball {
        self.re.sqr() + self.im.sqr()
    }

    /// `Re(self * conj(o))`.
    pub fn re_inner(&self, o: &CBall) -> Ball {
        self.re * o.re + self.im * o.im
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_ln_round_trip_contains_truth() {
        let x = Ball::exact(0.7);
        let y = x.exp().ln();
        assert!(y.contains(0.7));
        assert!(y.rad < 1e-14);
    }

    #[test]
    fn huge_rationals_convert() {
        let n = BigInt::from(3) << 2000usize;
        let d = BigInt::from(2) << 2000usize;
        let q = BigRational::new(n, d);
        assert!((rational_to_f64(&q) - 1.5).abs() < 1e-15);
        assert!(Ball::ln_bigint(&(BigInt::from(1) << 3000usize)).contains(3000.0 * 2f64.ln()));
    }

    #[test]
    fn abs_of_straddling_ball() {
        let b = Ball::new(0.1, 0.3).abs();
        assert!(b.contains(0.0) && b.contains(0.4));
    }
}

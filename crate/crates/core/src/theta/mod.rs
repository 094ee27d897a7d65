//! Theta-like sums over rings of integers under divisor-twisted Minkowski
//! metrics.
//!
//! A divisor `A = sum a_σ σ` at the infinite places weights a real place by
//! `e^{-2a_σ}` and a complex place by `2 e^{-a_σ}`, and
//! `η_A(K) = sum_{x in O_K} exp(-π ||x||^2_{K,A})`.

mod relation;

pub use relation::{
    check_change_metric, eta_relation_residual, trace_eta, ChangeOfMetric, EtaRelation, EtaTerm,
};

use std::str::FromStr;

use num::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::ball::Ball;
use crate::exact::lattice::{enumerate_short_vectors, lll_gram, GramMatrix, LLL_DELTA};
use crate::field::{Elt, NumberField, PlaceKind};

/// Largest number of lattice points a single sum may need.
pub const POINT_BUDGET: f64 = 2.0e7;

/// Coefficients at the infinite places of one field, in place order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InfiniteDivisor {
    pub field: String,
    pub coeffs: Vec<Ball>,
}

impl InfiniteDivisor {
    pub fn zero(k: &NumberField) -> InfiniteDivisor {
        InfiniteDivisor { field: k.name().to_string(), coeffs: vec![Ball::ZERO; k.places().len()] }
    }

    pub fn new(k: &NumberField, coeffs: Vec<Ball>) -> Result<InfiniteDivisor> {
        if coeffs.len() != k.places().len() {
            return Err(Error::InvalidInput(format!(
                "{} coefficients given for {} infinite places",
                coeffs.len(),
                k.places().len()
            )));
        }
        Ok(InfiniteDivisor { field: k.name().to_string(), coeffs })
    }

    pub fn from_f64(k: &NumberField, coeffs: &[f64]) -> Result<InfiniteDivisor> {
        InfiniteDivisor::new(k, coeffs.iter().map(|&a| Ball::exact(a)).collect())
    }

    pub fn add(&self, o: &InfiniteDivisor) -> InfiniteDivisor {
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| *a + *b).collect();
        InfiniteDivisor { field: self.field.clone(), coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|a| a.mid == 0.0 && a.rad == 0.0)
    }
}

/// Per-place weight of `|σ(x)|^2`: `e^{-2a}` real, `2e^{-a}` complex.
pub fn place_weights(k: &NumberField, a: &InfiniteDivisor) -> Vec<Ball> {
    k.places()
        .iter()
        .zip(&a.coeffs)
        .map(|(pl, c)| match pl.kind {
            PlaceKind::Real => c.scale(-2.0).exp(),
            PlaceKind::Complex => (-*c).exp().scale(2.0),
        })
        .collect()
}

/// Gram matrix of the integral basis under `||.||_{K,A}`.
pub fn metric_from_divisor(k: &NumberField, a: &InfiniteDivisor) -> Result<GramMatrix> {
    if a.coeffs.len() != k.places().len() {
        return Err(Error::InvalidInput("divisor does not match the field".into()));
    }
    let n = k.degree();
    let weights = place_weights(k, a);
    let places = k.places();
    let mut e = vec![Ball::ZERO; n * n];
    for i in 0..n {
        for j in i..n {
            let mut s = Ball::ZERO;
            for (pl, w) in places.iter().zip(&weights) {
                let t = k.basis_embedding(i, pl.embedding).re_inner(&k.basis_embedding(j, pl.embedding));
                s = s + t * *w;
            }
            e[i * n + j] = s;
            e[j * n + i] = s;
        }
    }
    GramMatrix::from_balls(n, e)
}

/// `||x||^2_{K,A}` from the embeddings of `x`.
pub fn twisted_norm(k: &NumberField, a: &InfiniteDivisor, x: &Elt) -> Ball {
    let weights = place_weights(k, a);
    k.places()
        .iter()
        .zip(&weights)
        .map(|(pl, w)| k.embed(x, pl.embedding).abs_sq() * *w)
        .sum()
}

#[derive(Clone, Debug, Serialize)]
pub struct EtaValue {
    /// Encloses the full sum, tail included.
    pub value: Ball,
    /// Sum over the enumerated points, `x = 0` included.
    pub partial: Ball,
    /// Certified bound on the omitted terms.
    pub tail_bound: f64,
    /// Enumeration radius `R^2`.
    pub radius_sq: f64,
    /// Lattice points summed, `x = 0` included.
    pub points: usize,
}

/// `sum_{t in Z} exp(-π t k^2) <= 1 + 1/sqrt(t)`; the lattice sum is bounded
/// coordinatewise through the smallest eigenvalue.
fn half_theta_bound(gram: &GramMatrix) -> Result<(f64, f64)> {
    let n = gram.dim();
    let t = lll_gram(n, &gram.mids(), LLL_DELTA)?;
    let lam = gram.restrict(&t)?.min_eigenvalue_lower()?;
    Ok(((1.0 + (2.0 / lam).sqrt()).powi(n as i32), lam))
}

/// Enumeration radius with `exp(-πR^2/2) Θ_half <= tol`.
pub(crate) fn radius_for(gram: &GramMatrix, tol: f64) -> Result<(f64, f64)> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidInput("tolerance must be positive".into()));
    }
    let n = gram.dim();
    let (theta, lam) = half_theta_bound(gram)?;
    let r2 = (2.0 / std::f64::consts::PI * (theta / tol).ln()).max(1e-3) * (1.0 + 1e-12);
    let tail = (-std::f64::consts::PI * r2 / 2.0).exp() * theta;
    let box_count = (1.0 + 2.0 * (r2 / lam).sqrt()).powi(n as i32);
    if box_count > POINT_BUDGET {
        return Err(Error::Budget(box_count.to_usize().unwrap_or(usize::MAX)));
    }
    Ok((r2, tail))
}

fn gaussian(q: Ball) -> Ball {
    (q * Ball::pi()).scale(-1.0).exp()
}

/// `sum_{v in Z^n} exp(-π v^T G v)`.
pub fn eta_from_gram(gram: &GramMatrix, tol: f64) -> Result<EtaValue> {
    let (r2, tail) = radius_for(gram, tol)?;
    let sv = enumerate_short_vectors(gram, r2)?;
    // smallest terms first
    let mut partial = Ball::ZERO;
    for v in sv.half.iter().rev() {
        partial = partial + gaussian(gram.eval(v)).scale(2.0);
    }
    partial = partial + Ball::ONE;
    let value = Ball::new(partial.mid + tail / 2.0, partial.rad + tail / 2.0);
    Ok(EtaValue { value, partial, tail_bound: tail, radius_sq: r2, points: 1 + 2 * sv.half.len() })
}

/// `η_A(K)` to within `tol`.
pub fn eta(k: &NumberField, a: &InfiniteDivisor, tol: f64) -> Result<EtaValue> {
    eta_from_gram(&metric_from_divisor(k, a)?, tol)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BVariant {
    /// `-log|H|/(2π)` at real places and `-log(|H|/2)/π` at complex ones.
    Paper,
    /// `-log|H|/2` at real places and `-log|H|` at complex ones, which makes
    /// every weight exactly `|H|` times the untwisted one.
    Trace,
}

impl FromStr for BVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<BVariant> {
        match s {
            "paper" => Ok(BVariant::Paper),
            "trace" => Ok(BVariant::Trace),
            _ => Err(Error::InvalidInput(format!("unknown variant {s:?}; expected paper or trace"))),
        }
    }
}

impl BVariant {
    pub fn name(&self) -> &'static str {
        match self {
            BVariant::Paper => "paper",
            BVariant::Trace => "trace",
        }
    }
}

/// The divisor `B(H)` on `k = L^H`.
pub fn b_divisor(k: &NumberField, order: usize, variant: BVariant) -> Result<InfiniteDivisor> {
    if order == 0 {
        return Err(Error::InvalidInput("|H| must be positive".into()));
    }
    if order == 1 {
        return Ok(InfiniteDivisor::zero(k));
    }
    let log_h = Ball::ln_bigint(&order.into());
    let pi = Ball::pi();
    let coeffs = k
        .places()
        .iter()
        .map(|pl| match (variant, pl.kind) {
            (BVariant::Paper, PlaceKind::Real) => -log_h.div(&pi.scale(2.0)),
            (BVariant::Paper, PlaceKind::Complex) => -(log_h - Ball::exact(2.0).ln()).div(&pi),
            (BVariant::Trace, PlaceKind::Real) => log_h.scale(-0.5),
            (BVariant::Trace, PlaceKind::Complex) => -log_h,
        })
        .collect();
    InfiniteDivisor::new(k, coeffs)
}

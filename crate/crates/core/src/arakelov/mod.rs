//! Arakelov divisors: finite primes with integer coefficients and infinite
//! places with real ones.
//!
//! Infinite coefficients use the product-formula normalization: a complex
//! place carries `-log|τ(f)|^2` in `div(f)` and every infinite place has
//! weight one in the degree. With this convention principal divisors have
//! degree zero.

mod genus;

pub use genus::{
    arakelov_genus, brauer_inputs, check_brauer_identity, check_genus_relation, real_quadratic_regulator,
    regulator, BrauerInput, BrauerReport, BrauerRow, GenusRelation, GenusRow, GenusValue, Provenance,
    RegulatorData, Tagged,
};

use std::fmt;

use num::BigInt;

use crate::error::{Error, Result};
use crate::exact::ball::Ball;
use crate::field::subfield::Subfield;
use crate::field::{Elt, NumberField, PlaceKind};
use crate::ideal::galois::{contract_ideal, extend_ideal};
use crate::ideal::primes::valuation;
use crate::ideal::principal::log_embedding;
use crate::ideal::{factor_ideal, factor_prime, Ideal, PrimeIdeal};

/// How infinite coefficients are read, echoed in reports.
pub const INFINITE_CONVENTION: &str =
    "complex places carry -log|f|^2 in div(f); every infinite place has weight 1 in deg";

#[derive(Clone, Debug, PartialEq)]
pub struct ArakelovDivisor {
    /// Name of the owner field.
    pub field: String,
    /// Nonzero coefficients, sorted by `(p, e, f, hnf)`.
    pub finite: Vec<(PrimeIdeal, i64)>,
    /// One coefficient per infinite place, in place order.
    pub infinite: Vec<Ball>,
}

fn prime_key(p: &PrimeIdeal) -> (u64, u32, u32, Vec<Vec<BigInt>>) {
    (p.p, p.e, p.f, p.ideal.basis_columns())
}

impl ArakelovDivisor {
    pub fn zero(k: &NumberField) -> ArakelovDivisor {
        ArakelovDivisor { field: k.name().to_string(), finite: vec![], infinite: vec![Ball::ZERO; k.places().len()] }
    }

    /// Divisor with the given infinite coefficients and no finite part.
    pub fn infinite(k: &NumberField, coeffs: Vec<Ball>) -> Result<ArakelovDivisor> {
        if coeffs.len() != k.places().len() {
            return Err(Error::InvalidInput(format!(
                "{} infinite coefficients for {} places",
                coeffs.len(),
                k.places().len()
            )));
        }
        Ok(ArakelovDivisor { field: k.name().to_string(), finite: vec![], infinite: coeffs })
    }

    /// `sum v_P(A) P` for a fractional ideal `A`.
    pub fn from_ideal(k: &NumberField, a: &Ideal) -> Result<ArakelovDivisor> {
        let mut d = ArakelovDivisor::zero(k);
        for (p, v) in factor_ideal(k, a)? {
            d.add_prime(p, v);
        }
        Ok(d)
    }

    pub fn add_prime(&mut self, p: PrimeIdeal, v: i64) {
        match self.finite.iter_mut().find(|(q, _)| q.ideal == p.ideal) {
            Some(entry) => entry.1 += v,
            None => self.finite.push((p, v)),
        }
        self.finite.retain(|(_, c)| *c != 0);
        self.finite.sort_by_key(|a| prime_key(&a.0));
    }

    pub fn add(&self, o: &ArakelovDivisor) -> Result<ArakelovDivisor> {
        if self.infinite.len() != o.infinite.len() {
            return Err(Error::InvalidInput("divisors live on different fields".into()));
        }
        let mut out = self.clone();
        for (p, v) in &o.finite {
            out.add_prime(p.clone(), *v);
        }
        for (a, b) in out.infinite.iter_mut().zip(&o.infinite) {
            *a = *a + *b;
        }
        Ok(out)
    }

    pub fn scale(&self, m: i64) -> ArakelovDivisor {
        let mut out = self.clone();
        out.finite.iter_mut().for_each(|(_, c)| *c *= m);
        out.finite.retain(|(_, c)| *c != 0);
        out.infinite.iter_mut().for_each(|a| *a = a.scale(m as f64));
        out
    }

    pub fn is_zero(&self) -> bool {
        self.finite.is_empty() && self.infinite.iter().all(|a| a.mid == 0.0 && a.rad == 0.0)
    }

    /// Same finite part and overlapping infinite coefficients.
    pub fn agrees_with(&self, o: &ArakelovDivisor) -> bool {
        self.finite == o.finite
            && self.infinite.len() == o.infinite.len()
            && self.infinite.iter().zip(&o.infinite).all(|(a, b)| (*a - *b).contains_zero())
    }
}

impl fmt::Display for ArakelovDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (p, v) in &self.finite {
            terms.push(format!("{v}*P({},e={},f={})", p.p, p.e, p.f));
        }
        for (i, a) in self.infinite.iter().enumerate() {
            if a.mid != 0.0 || a.rad != 0.0 {
                terms.push(format!("{:.12}*inf{i}", a.mid));
            }
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// `sum ν_P log N(P) + sum a_v`.
pub fn degree(d: &ArakelovDivisor) -> Ball {
    let mut acc = Ball::ZERO;
    for (p, v) in &d.finite {
        acc = acc + Ball::ln_bigint(&p.norm()).scale(*v as f64);
    }
    d.infinite.iter().fold(acc, |s, a| s + *a)
}

/// `div(f)`: valuations at finite primes, `-n_v log|σ_v f|` at infinite places.
pub fn principal_divisor(k: &NumberField, f: &Elt) -> Result<ArakelovDivisor> {
    if f.is_zero() {
        return Err(Error::InvalidInput("div(0) is undefined".into()));
    }
    let mut d = ArakelovDivisor::from_ideal(k, &Ideal::principal(k, f)?)?;
    d.infinite = log_embedding(k, f).into_iter().map(|b| -b).collect();
    Ok(d)
}

/// Place of `K` below each place of `L`, and the local degree `[L_w : K_v]`.
pub(crate) fn places_below(l: &NumberField, sub: &Subfield) -> Vec<(usize, u32)> {
    let k = &sub.field;
    l.places()
        .iter()
        .map(|w| {
            let v = k.place_of_embedding(sub.embedding_restriction[w.embedding]);
            let local = match (w.kind, k.places()[v].kind) {
                (PlaceKind::Complex, PlaceKind::Real) => 2,
                _ => 1,
            };
            (v, local)
        })
        .collect()
}

/// The prime of `K` below `P`.
fn prime_below(l: &NumberField, sub: &Subfield, p: &PrimeIdeal) -> Result<PrimeIdeal> {
    let c = contract_ideal(l, sub, &p.ideal)?;
    factor_prime(&sub.field, p.p)?
        .primes
        .into_iter()
        .find(|q| q.ideal == c)
        .ok_or_else(|| Error::Numerical(format!("no prime of {} below a prime over {}", sub.field.name(), p.p)))
}

/// `τ_*`: `P ↦ f(P/p) p`, and an infinite place maps onto the place below it.
pub fn pushforward(l: &NumberField, sub: &Subfield, d: &ArakelovDivisor) -> Result<ArakelovDivisor> {
    let k = &sub.field;
    let mut out = ArakelovDivisor::zero(k);
    for (p, v) in &d.finite {
        let q = prime_below(l, sub, p)?;
        let f = (p.f / q.f) as i64;
        out.add_prime(q, v * f);
    }
    for (a, (v, _)) in d.infinite.iter().zip(places_below(l, sub)) {
        out.infinite[v] = out.infinite[v] + *a;
    }
    Ok(out)
}

/// `τ^*`: `p ↦ sum_{P|p} e(P/p) P`; an infinite place of `K` pulls back with
/// local degree 2 to complex places above a real one.
pub fn pullback(l: &NumberField, sub: &Subfield, d: &ArakelovDivisor) -> Result<ArakelovDivisor> {
    let mut out = ArakelovDivisor::zero(l);
    for (q, v) in &d.finite {
        let up = extend_ideal(l, sub, &q.ideal)?;
        for big in factor_prime(l, q.p)?.primes {
            let e = valuation(l, &big, &up)? as i64;
            if e > 0 {
                out.add_prime(big, v * e);
            }
        }
    }
    for (w, (v, local)) in places_below(l, sub).into_iter().enumerate() {
        out.infinite[w] = d.infinite[v].scale(local as f64);
    }
    Ok(out)
}

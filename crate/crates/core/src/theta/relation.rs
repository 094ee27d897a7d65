//! Change of metric along `K = L^H ⊂ L`, the trace sums over fixed
//! sublattices, and the η relation with its element-grouped cross-check.

use num::{BigInt, BigRational, ToPrimitive};
use serde::Serialize;

use super::{b_divisor, eta_from_gram, metric_from_divisor, place_weights, radius_for, twisted_norm};
use super::{BVariant, EtaValue, InfiniteDivisor};
use crate::arakelov::places_below;
use crate::error::{Error, Result};
use crate::exact::ball::Ball;
use crate::exact::lattice::GramMatrix;
use crate::extension::GaloisExtension;
use crate::field::subfield::Subfield;
use crate::field::{Elt, NumberField};
use crate::group::IdempotentRelation;

/// `D^H` on `K` for an `H`-invariant `D` on `L`, and whether `D` is nonzero
/// at a real place of `K` that becomes complex in `L`.
pub fn invariant_part(l: &NumberField, sub: &Subfield, d: &InfiniteDivisor) -> Result<(InfiniteDivisor, bool)> {
    let k = &sub.field;
    if d.coeffs.len() != l.places().len() {
        return Err(Error::InvalidInput("divisor does not match the top field".into()));
    }
    let mut coeffs: Vec<Option<Ball>> = vec![None; k.places().len()];
    let mut ramified = false;
    for (w, (v, local)) in places_below(l, sub).into_iter().enumerate() {
        let a = d.coeffs[w];
        match coeffs[v] {
            None => coeffs[v] = Some(a),
            Some(b) if !(a - b).contains_zero() => {
                return Err(Error::InvalidInput(format!("divisor is not invariant under the subgroup fixing {}", k.name())));
            }
            Some(_) => {}
        }
        ramified |= local == 2 && !(a.mid == 0.0 && a.rad == 0.0);
    }
    let coeffs = coeffs.into_iter().map(|c| c.expect("every place of K lies below one of L")).collect();
    Ok((InfiniteDivisor::new(k, coeffs)?, ramified))
}

#[derive(Clone, Debug, Serialize)]
pub struct ChangeOfMetric {
    /// `||ι(x)||^2_{L,D}`.
    pub left: Ball,
    /// `|H| ||x||^2_{K,D^H}`.
    pub right: Ball,
    pub agree: bool,
    /// `D` is nonzero at a real place of `K` with complex places above it.
    /// There the complex weight `2e^{-a}` and the real weight `e^{-2a}`
    /// differ, and the two sides separate.
    pub ramified_support: bool,
}

pub fn check_change_metric(l: &NumberField, sub: &Subfield, d: &InfiniteDivisor, x: &Elt) -> Result<ChangeOfMetric> {
    let (dh, ramified_support) = invariant_part(l, sub, d)?;
    let left = twisted_norm(l, d, &sub.include(l, x));
    let right = twisted_norm(&sub.field, &dh, x).scale(sub.subgroup.len() as f64);
    let agree = (left - right).contains_zero();
    Ok(ChangeOfMetric { left, right, agree, ramified_support })
}

/// `sum_{x in O_{L^H}} exp(-π ||x||^2_{L,D})`, evaluated on the sublattice
/// `O_{L^H}` with the metric of `L`.
pub fn trace_eta(l: &NumberField, sub: &Subfield, d: &InfiniteDivisor, tol: f64) -> Result<EtaValue> {
    invariant_part(l, sub, d)?;
    let gram = metric_from_divisor(l, d)?.restrict(&sub.inclusion)?;
    eta_from_gram(&gram, tol)
}

#[derive(Clone, Debug, Serialize)]
pub struct EtaTerm {
    pub subgroup: usize,
    pub field: String,
    pub coefficient: i64,
    pub order: usize,
    /// `B(H) + D^H` on `L^H`.
    pub divisor: InfiniteDivisor,
    pub eta: EtaValue,
}

#[derive(Clone, Debug, Serialize)]
pub struct EtaRelation {
    pub variant: BVariant,
    pub tol: f64,
    pub terms: Vec<EtaTerm>,
    /// `sum n_H η_{B(H)+D^H}(L^H)`, tails included.
    pub residual: Ball,
    /// The same sum, collected point by point over `O_L`.
    pub residual_grouped: Ball,
    /// Points of `O_L` visited by the grouped route.
    pub grouped_points: usize,
    /// `|residual - residual_grouped| <= 2 tol`.
    pub routes_agree: bool,
}

struct GroupedTerm {
    coefficient: i64,
    gram: GramMatrix,
    radius_sq: f64,
    /// Integer matrices of the elements of `H` on integral coordinates of `L`.
    fixers: Vec<Vec<Vec<i64>>>,
    sub: usize,
}

fn to_i64_matrix(m: &crate::exact::matrix::IntMatrix) -> Result<Vec<Vec<i64>>> {
    (0..m.nrows())
        .map(|i| {
            (0..m.ncols())
                .map(|j| m.get(i, j).to_i64().ok_or_else(|| Error::Numerical("automorphism matrix overflows".into())))
                .collect()
        })
        .collect()
}

fn is_fixed(fixers: &[Vec<Vec<i64>>], x: &[i64]) -> bool {
    fixers.iter().all(|m| m.iter().zip(x).all(|(row, &xi)| row.iter().zip(x).map(|(a, b)| a * b).sum::<i64>() == xi))
}

/// Smallest ratio of the weight at a place of `K` to the summed weights of
/// the places of `L` above it, so that `||x||_K^2 >= c ||ι x||_L^2`.
fn comparison_constant(l: &NumberField, sub: &Subfield, wl: &[Ball], wk: &[Ball]) -> f64 {
    let mut above = vec![0.0f64; wk.len()];
    for (w, (v, _)) in places_below(l, sub).into_iter().enumerate() {
        above[v] += wl[w].upper();
    }
    wk.iter().zip(&above).map(|(k, s)| k.lower() / s).fold(f64::INFINITY, f64::min)
}

pub fn eta_relation_residual(
    ext: &GaloisExtension,
    rel: &IdempotentRelation,
    variant: BVariant,
    d: &InfiniteDivisor,
    tol: f64,
) -> Result<EtaRelation> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidInput("tolerance must be positive".into()));
    }
    let l = &ext.field;
    let weight: i64 = rel.support().map(|(_, c)| c.abs()).sum();
    let term_tol = if weight == 0 { tol } else { tol / weight as f64 };
    let wl = place_weights(l, d);

    let mut terms = Vec::new();
    let mut grouped_terms = Vec::new();
    let mut residual = Ball::ZERO;
    let mut outer_r2 = 0.0f64;
    for (i, c) in rel.support() {
        let sub = &ext.subfields[i];
        let k = &sub.field;
        let order = ext.subgroups[i].order();
        let (dh, _) = invariant_part(l, sub, d)?;
        let divisor = b_divisor(k, order, variant)?.add(&dh);
        let gram = metric_from_divisor(k, &divisor)?;
        let value = eta_from_gram(&gram, term_tol)?;
        residual = residual + value.value.scale(c as f64);
        let (r2, _) = radius_for(&gram, term_tol)?;
        let wk = place_weights(k, &divisor);
        outer_r2 = outer_r2.max(r2 / comparison_constant(l, sub, &wl, &wk));
        let fixers = ext.subgroups[i]
            .elements()
            .iter()
            .map(|&h| to_i64_matrix(ext.auts[h].basis_matrix()))
            .collect::<Result<Vec<_>>>()?;
        grouped_terms.push(GroupedTerm { coefficient: c, gram, radius_sq: r2, fixers, sub: i });
        terms.push(EtaTerm { subgroup: i, field: k.name().to_string(), coefficient: c, order, divisor, eta: value });
    }

    // walk O_L once and credit each point to every fixed field containing it
    let mut grouped = Ball::from_int(rel.support().map(|(_, c)| c).sum());
    let mut grouped_points = 1;
    if !grouped_terms.is_empty() {
        let gl = metric_from_divisor(l, d)?;
        let sv = crate::exact::lattice::enumerate_short_vectors(&gl, outer_r2 * (1.0 + 1e-9))?;
        grouped_points += 2 * sv.half.len();
        let mut contributions = Vec::new();
        for x in sv.all() {
            for t in &grouped_terms {
                if !is_fixed(&t.fixers, &x) {
                    continue;
                }
                let sub = &ext.subfields[t.sub];
                let rhs: Vec<BigRational> = x.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect();
                let y = sub
                    .inclusion
                    .to_rational()
                    .solve_consistent(&rhs)
                    .ok_or_else(|| Error::Numerical("fixed vector is not in the fixed lattice".into()))?;
                let y: Vec<i64> = y
                    .iter()
                    .map(|q| q.to_integer().to_i64().ok_or_else(|| Error::Numerical("coordinate overflow".into())))
                    .collect::<Result<_>>()?;
                let q = t.gram.eval(&y);
                if q.lower() <= t.radius_sq {
                    contributions.push((q.mid, (q * Ball::pi()).scale(-1.0).exp().scale(t.coefficient as f64)));
                }
            }
        }
        contributions.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
        for (_, c) in contributions {
            grouped = grouped + c;
        }
    }
    let gap = (residual.mid - grouped.mid).abs();
    let routes_agree = gap <= 2.0 * tol + residual.rad + grouped.rad;
    Ok(EtaRelation { variant, tol, terms, residual, residual_grouped: grouped, grouped_points, routes_agree })
}

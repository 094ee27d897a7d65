//! The Arakelov genus, regulators, and the relations they satisfy across the
//! fixed fields of an idempotent relation.

use num::{BigInt, BigRational, One, Signed};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::ball::Ball;
use crate::extension::GaloisExtension;
use crate::field::torsion::torsion_units;
use crate::field::{Elt, NumberField};
use crate::group::IdempotentRelation;
use crate::ideal::principal::{bounded_unit_search, real_quadratic_unit, supplied_unit, unit_data, UnitData, UnitSource};
use crate::ideal::class_group_with_units;

/// Where a reported number came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Closed form with no search involved.
    Exact,
    /// Short-vector enumeration of roots of unity.
    Enumeration,
    /// Exhaustive class group computation.
    ClassGroup,
    ContinuedFraction,
    BoundedSearch,
    /// Taken from the input and only checked for consistency.
    Supplied,
}

#[derive(Clone, Debug, Serialize)]
pub struct Tagged<T> {
    pub value: T,
    pub provenance: Provenance,
}

impl<T> Tagged<T> {
    pub fn new(value: T, provenance: Provenance) -> Tagged<T> {
        Tagged { value, provenance }
    }
}

/// `g_K = log(w sqrt|d| / (2^r (2π)^s))`, kept as
/// `½ log(w^2 |d| / 4^r) - s log(2π)` so that exact cancellations survive.
#[derive(Clone, Debug, Serialize)]
pub struct GenusValue {
    pub value: Ball,
    #[serde(skip)]
    pub rational_part: BigRational,
    pub complex_places: usize,
}

fn half_log(q: &BigRational) -> Ball {
    if q.is_one() {
        Ball::ZERO
    } else {
        Ball::ln_rational(q).scale(0.5)
    }
}

fn log_two_pi() -> Ball {
    (Ball::pi().scale(2.0)).ln()
}

pub fn arakelov_genus(k: &NumberField, w: u64) -> GenusValue {
    let (r, s) = k.signature();
    let num = BigInt::from(w) * BigInt::from(w) * k.discriminant().abs();
    let q = BigRational::new(num, num::pow(BigInt::from(4), r));
    let value = half_log(&q) - log_two_pi().scale(s as f64);
    GenusValue { value, rational_part: q, complex_places: s }
}

#[derive(Clone, Debug, Serialize)]
pub struct RegulatorData {
    pub value: Ball,
    pub provenance: Provenance,
    /// For supplied units: whether a bounded search found the same regulator.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cross_check: Option<bool>,
}

fn provenance_of(u: &UnitData) -> Provenance {
    match u.source {
        UnitSource::RankZero => Provenance::Exact,
        UnitSource::ContinuedFraction => Provenance::ContinuedFraction,
        UnitSource::BoundedSearch => Provenance::BoundedSearch,
        UnitSource::Supplied => Provenance::Supplied,
    }
}

pub fn real_quadratic_regulator(k: &NumberField) -> Result<RegulatorData> {
    let u = real_quadratic_unit(k)?;
    let eps = k.from_basis_coords(u.fundamental.as_ref().expect("rank one"));
    if !k.norm(&eps).abs().is_one() {
        return Err(Error::Numerical("continued fraction did not produce a unit".into()));
    }
    Ok(RegulatorData { value: u.regulator(), provenance: Provenance::ContinuedFraction, cross_check: None })
}

/// Units of `k`, preferring a supplied one, and the regulator they give.
pub fn regulator(k: &NumberField, supplied: Option<&Elt>) -> Result<(UnitData, RegulatorData)> {
    if let (Some(eps), 1) = (supplied, k.unit_rank()) {
        let u = supplied_unit(k, eps)?;
        let cross_check = if k.degree() == 2 {
            real_quadratic_unit(k).ok()
        } else {
            bounded_unit_search(k).ok()
        }
        .map(|v| v.regulator().overlaps(&u.regulator()));
        let reg = RegulatorData { value: u.regulator(), provenance: Provenance::Supplied, cross_check };
        return Ok((u, reg));
    }
    let u = unit_data(k)?;
    let reg = RegulatorData { value: u.regulator(), provenance: provenance_of(&u), cross_check: None };
    Ok((u, reg))
}

#[derive(Clone, Debug, Serialize)]
pub struct GenusRow {
    pub subgroup: usize,
    pub field: String,
    pub coefficient: i64,
    pub r: usize,
    pub s: usize,
    pub discriminant: String,
    pub w: u64,
    pub genus: Ball,
}

#[derive(Clone, Debug, Serialize)]
pub struct GenusRelation {
    pub rows: Vec<GenusRow>,
    /// `sum n_H g_H - sum n_H log w_H`, from the closed forms.
    pub residual: Ball,
    /// The same sum accumulated term by term from the genus values.
    pub residual_direct: Ball,
    /// `gcd(|H|, w_L) = 1` for every `H` in the support.
    pub coprime: bool,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn check_genus_relation(ext: &GaloisExtension, rel: &IdempotentRelation, w: &[u64]) -> Result<GenusRelation> {
    if w.len() != ext.subgroups.len() || rel.coeffs.len() != ext.subgroups.len() {
        return Err(Error::InvalidInput("one root-of-unity count per subgroup is needed".into()));
    }
    let w_top = w[ext.trivial_index()];
    let mut rows = Vec::new();
    let mut q = BigRational::one();
    let mut s_sum = 0i64;
    let mut direct = Ball::ZERO;
    let mut coprime = true;
    for (i, c) in rel.support() {
        let k = &ext.subfields[i].field;
        let g = arakelov_genus(k, w[i]);
        // g - log w = ½ log(|d| / 4^r) - s log 2π
        let r = k.signature().0;
        let part = BigRational::new(k.discriminant().abs(), num::pow(BigInt::from(4), r));
        q *= if c > 0 { num::pow(part, c as usize) } else { num::pow(part.recip(), (-c) as usize) };
        s_sum += c * g.complex_places as i64;
        direct = direct + (g.value - Ball::ln_bigint(&BigInt::from(w[i]))).scale(c as f64);
        coprime &= gcd(ext.subgroups[i].order() as u64, w_top) == 1;
        rows.push(GenusRow {
            subgroup: i,
            field: k.name().to_string(),
            coefficient: c,
            r,
            s: g.complex_places,
            discriminant: k.discriminant().to_string(),
            w: w[i],
            genus: g.value,
        });
    }
    let residual = half_log(&q) - log_two_pi().scale(s_sum as f64);
    Ok(GenusRelation { rows, residual, residual_direct: direct, coprime })
}

/// `(h, Reg, w)` of one fixed field.
#[derive(Clone, Debug, Serialize)]
pub struct BrauerInput {
    pub subgroup: usize,
    pub field: String,
    pub h: Tagged<u64>,
    pub regulator: RegulatorData,
    pub w: Tagged<u64>,
}

/// Compute `(h, Reg, w)` for every fixed field in the support of `rel`;
/// `top_unit` is a unit of the top field supplied by the caller.
pub fn brauer_inputs(ext: &GaloisExtension, rel: &IdempotentRelation, top_unit: Option<&Elt>) -> Result<Vec<BrauerInput>> {
    let mut out = Vec::new();
    for (i, _) in rel.support() {
        let k = &ext.subfields[i].field;
        let supplied = if i == ext.trivial_index() { top_unit } else { None };
        let (units, reg) = regulator(k, supplied)?;
        let h = class_group_with_units(k, units)?.order();
        let w = torsion_units(k)?.order;
        out.push(BrauerInput {
            subgroup: i,
            field: k.name().to_string(),
            h: Tagged::new(h, Provenance::ClassGroup),
            regulator: reg,
            w: Tagged::new(w, Provenance::Enumeration),
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct BrauerRow {
    pub input: BrauerInput,
    pub coefficient: i64,
    /// `log h + log Reg - log w`.
    pub term: Ball,
}

#[derive(Clone, Debug, Serialize)]
pub struct BrauerReport {
    pub rows: Vec<BrauerRow>,
    /// `sum r_H (log h + log Reg - log w)`.
    pub residual: Ball,
    /// `log prod (h/w)^{r_H} + sum r_H log Reg`, with the rational part exact.
    pub residual_grouped: Ball,
}

impl BrauerReport {
    pub fn routes_agree(&self) -> bool {
        self.residual.overlaps(&self.residual_grouped)
    }
}

pub fn check_brauer_identity(ext: &GaloisExtension, rel: &IdempotentRelation, inputs: &[BrauerInput]) -> Result<BrauerReport> {
    let mut rows = Vec::new();
    let mut residual = Ball::ZERO;
    let mut q = BigRational::one();
    let mut regs = Ball::ZERO;
    for (i, c) in rel.support() {
        let input = inputs.iter().find(|x| x.subgroup == i).ok_or_else(|| {
            Error::InvalidInput(format!("missing (h, Reg) for {}", ext.subfields[i].field.name()))
        })?;
        if !input.regulator.value.is_positive() {
            return Err(Error::InvalidInput(format!("regulator of {} is not positive", input.field)));
        }
        let hw = BigRational::new(BigInt::from(input.h.value), BigInt::from(input.w.value));
        let term = Ball::ln_bigint(&BigInt::from(input.h.value)) + input.regulator.value.ln()
            - Ball::ln_bigint(&BigInt::from(input.w.value));
        residual = residual + term.scale(c as f64);
        q *= if c > 0 { num::pow(hw, c as usize) } else { num::pow(hw.recip(), (-c) as usize) };
        regs = regs + input.regulator.value.ln().scale(c as f64);
        rows.push(BrauerRow { input: input.clone(), coefficient: c, term });
    }
    let residual_grouped = if q.is_one() { regs } else { Ball::ln_rational(&q) + regs };
    Ok(BrauerReport { rows, residual, residual_grouped })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::Poly;
    use crate::field::{make_field, rationals};

    fn quad(c: &[i64]) -> NumberField {
        make_field("K", &Poly::from_i64(c), None, 128).unwrap()
    }

    #[test]
    fn genus_closed_forms() {
        let g = arakelov_genus(&rationals(), 2);
        assert_eq!((g.value.mid, g.value.rad), (0.0, 0.0));
        let gi = arakelov_genus(&quad(&[1, 0, 1]), 4);
        assert!(gi.value.contains((4.0 / std::f64::consts::PI).ln()));
        let z8 = make_field("Z8", &Poly::from_i64(&[1, 0, 0, 0, 1]), None, 128).unwrap();
        let g8 = arakelov_genus(&z8, 8);
        assert!(g8.value.contains((32.0 / std::f64::consts::PI.powi(2)).ln()));
    }

    #[test]
    fn real_quadratic_regulators() {
        let r2 = real_quadratic_regulator(&quad(&[-2, 0, 1])).unwrap();
        assert!(r2.value.contains((1.0 + 2f64.sqrt()).ln()));
        let r5 = real_quadratic_regulator(&quad(&[-5, 0, 1])).unwrap();
        assert!(r5.value.contains(((1.0 + 5f64.sqrt()) / 2.0).ln()));
        let r3 = real_quadratic_regulator(&quad(&[-3, 0, 1])).unwrap();
        assert!(r3.value.contains((2.0 + 3f64.sqrt()).ln()));
        assert!(real_quadratic_regulator(&quad(&[1, 0, 1])).is_err());
    }

    #[test]
    fn zeta8_genus_relation_cancels() {
        let l = make_field("Q(zeta8)", &Poly::from_i64(&[1, 0, 0, 0, 1]), None, 128).unwrap();
        let ext = GaloisExtension::new(l, None).unwrap();
        let w: Vec<u64> = ext.subfields.iter().map(|s| torsion_units(&s.field).unwrap().order).collect();
        let rel = &ext.relations[0];
        let out = check_genus_relation(&ext, rel, &w).unwrap();
        assert_eq!((out.residual.mid, out.residual.rad), (0.0, 0.0));
        assert!(out.residual_direct.contains_zero());
        assert!(out.residual_direct.rad < 1e-13, "{:?}", out.residual_direct);
        // |H| = 2 divides w = 8
        assert!(!out.coprime);
        let zero = IdempotentRelation { coeffs: vec![0; ext.subgroups.len()] };
        assert_eq!(check_genus_relation(&ext, &zero, &w).unwrap().residual.mid, 0.0);
    }

    #[test]
    fn brauer_terms_cancel_for_repeated_subgroup() {
        let l = make_field("Q(i)", &Poly::from_i64(&[1, 0, 1]), None, 128).unwrap();
        let ext = GaloisExtension::new(l, None).unwrap();
        let rel = IdempotentRelation { coeffs: vec![1, 0] };
        let inputs = brauer_inputs(&ext, &rel, None).unwrap();
        assert_eq!(inputs[0].h.value, 1);
        assert_eq!(inputs[0].w.value, 4);
        let twice = vec![inputs[0].clone(), inputs[0].clone()];
        let mut rep = check_brauer_identity(&ext, &rel, &twice).unwrap();
        let t = rep.rows[0].term;
        rep.residual = rep.residual - t;
        assert!(rep.residual.contains_zero());
        assert!(check_brauer_identity(&ext, &IdempotentRelation { coeffs: vec![0, 1] }, &inputs).is_err());
    }
}

//! Units of rank at most one and principal ideal testing.

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::Ideal;
use crate::error::{Error, Result};
use crate::exact::ball::Ball;
use crate::exact::lattice::{enumerate_short_vectors, lll_reduce};
use crate::exact::matrix::IntMatrix;
use crate::field::{is_square, Elt, NumberField, PlaceKind};

/// Largest `T2` radius the bounded unit search will try.
const UNIT_SEARCH_LIMIT: f64 = 1.0e7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum UnitSource {
    /// No free part.
    RankZero,
    /// Continued fraction of a square root, reduced to a fundamental unit.
    ContinuedFraction,
    /// Short-vector search with a completeness radius.
    BoundedSearch,
    /// Given by the caller and only checked to be a unit.
    Supplied,
}

/// A fundamental unit modulo torsion (rank at most one).
#[derive(Clone, Debug)]
pub struct UnitData {
    pub rank: usize,
    /// Integral coordinates of `ε`, chosen with `|σ_0(ε)| > 1`.
    pub fundamental: Option<Vec<BigInt>>,
    /// `ℓ_v(ε) = n_v log|σ_v(ε)|` per place.
    pub log_embedding: Vec<Ball>,
    pub source: UnitSource,
}

impl UnitData {
    /// Regulator `|ℓ_v(ε)|` at the first place, or 1 for rank zero.
    pub fn regulator(&self) -> Ball {
        match self.log_embedding.first() {
            Some(l) if self.rank == 1 => l.abs(),
            _ => Ball::ONE,
        }
    }

    /// `max_v |ℓ_v(ε)|`, the unit-lattice spread used by principality tests.
    pub fn spread(&self) -> f64 {
        self.log_embedding.iter().map(|b| b.max_abs()).fold(0.0, f64::max)
    }
}

/// `ℓ_v(x) = n_v log|σ_v x|` at every place, certified.
pub fn log_embedding(k: &NumberField, x: &Elt) -> Vec<Ball> {
    k.places()
        .iter()
        .map(|pl| {
            let a2 = k.embed(x, pl.embedding).abs_sq();
            match pl.kind {
                PlaceKind::Real => a2.ln().scale(0.5),
                PlaceKind::Complex => a2.ln(),
            }
        })
        .collect()
}

fn is_unit(k: &NumberField, x: &Elt) -> bool {
    k.is_integral(x) && k.norm(x).abs().is_one()
}

fn orient(k: &NumberField, eps: Elt) -> Result<Elt> {
    // pick ε^{±1} with |σ_0(ε)| > 1
    let l = log_embedding(k, &eps);
    if l[0].contains_zero() {
        return Err(Error::Precision("unit log embedding is not separated from zero".into()));
    }
    if l[0].mid < 0.0 {
        k.inv(&eps)
    } else {
        Ok(eps)
    }
}

fn make_unit_data(k: &NumberField, eps: Elt, source: UnitSource) -> Result<UnitData> {
    let eps = orient(k, eps)?;
    let coords = k
        .integral_coords(&eps)
        .ok_or_else(|| Error::Numerical("unit is not integral".into()))?;
    Ok(UnitData { rank: 1, log_embedding: log_embedding(k, &eps), fundamental: Some(coords), source })
}

/// Fundamental unit data for fields of unit rank at most one.
pub fn unit_data(k: &NumberField) -> Result<UnitData> {
    match k.unit_rank() {
        0 => Ok(UnitData {
            rank: 0,
            fundamental: None,
            log_embedding: vec![Ball::ZERO; k.places().len()],
            source: UnitSource::RankZero,
        }),
        1 if k.degree() == 2 => real_quadratic_unit(k),
        1 => bounded_unit_search(k),
        r => Err(Error::Unsupported(format!("unsupported unit rank {r}"))),
    }
}

/// Accept a caller-provided unit after checking it is one.
pub fn supplied_unit(k: &NumberField, eps: &Elt) -> Result<UnitData> {
    if k.unit_rank() != 1 {
        return Err(Error::Unsupported(format!("unsupported unit rank {}", k.unit_rank())));
    }
    if !is_unit(k, eps) {
        return Err(Error::InvalidInput("supplied element is not a unit".into()));
    }
    let l = log_embedding(k, eps);
    if l[0].contains_zero() {
        return Err(Error::InvalidInput("supplied unit is a root of unity".into()));
    }
    make_unit_data(k, eps.clone(), UnitSource::Supplied)
}

/// `√d0` inside a quadratic field, with `d0` the squarefree kernel of the
/// polynomial discriminant.
fn quadratic_sqrt(k: &NumberField) -> (BigInt, Elt) {
    let b = k.poly().coeff(1);
    let c = k.poly().coeff(0);
    let disc = (&b * &b - BigRational::from_integer(4.into()) * &c).to_integer();
    let (m, d0) = crate::field::squarefree_decomposition(&disc);
    // θ = (-b ± m√d0)/2  ⇒  √d0 = ±(2θ + b)/m
    let two_theta = k.scale(&k.theta(), &BigRational::from_integer(2.into()));
    let s = k.scale(&k.add(&two_theta, &k.from_rational(b)), &BigRational::new(BigInt::one(), m));
    (d0, s)
}

/// Fundamental unit of a real quadratic field: the continued fraction of
/// `√d0` gives the Pell unit of `Z[√d0]`, and exact root extraction then
/// descends to `O_K`.
pub fn real_quadratic_unit(k: &NumberField) -> Result<UnitData> {
    if k.degree() != 2 || k.signature() != (2, 0) {
        return Err(Error::InvalidInput("not a real quadratic field".into()));
    }
    let (d0, sq) = quadratic_sqrt(k);
    let a0 = d0.sqrt();
    let (mut m, mut d, mut a) = (BigInt::zero(), BigInt::one(), a0.clone());
    let (mut h_prev, mut h) = (BigInt::one(), a0.clone());
    let (mut q_prev, mut q) = (BigInt::zero(), BigInt::one());
    let mut steps = 0usize;
    loop {
        let nrm = &h * &h - &d0 * &q * &q;
        if nrm.abs().is_one() {
            break;
        }
        m = &d * &a - &m;
        d = (&d0 - &m * &m) / &d;
        a = (&a0 + &m) / &d;
        let hn = &a * &h + &h_prev;
        let qn = &a * &q + &q_prev;
        h_prev = std::mem::replace(&mut h, hn);
        q_prev = std::mem::replace(&mut q, qn);
        steps += 1;
        if steps > 100_000 {
            return Err(Error::Budget(steps));
        }
    }
    let pell = k.add(&k.from_rational(BigRational::from_integer(h)), &k.scale(&sq, &BigRational::from_integer(q)));
    let pell = orient(k, pell)?;
    let eps = descend_to_fundamental(k, &pell, &d0, &sq)?;
    make_unit_data(k, eps, UnitSource::ContinuedFraction)
}

/// Largest exact root of a real quadratic unit that lies in `O_K`.
fn descend_to_fundamental(k: &NumberField, eps: &Elt, d0: &BigInt, sq: &Elt) -> Result<Elt> {
    let big_l = log_embedding(k, eps)[0].mid;
    // the smallest unit above 1 is at least the golden ratio
    let jmax = (big_l / 1.618_f64.ln()).floor().max(1.0) as u64;
    for j in (2..=jmax).rev() {
        let x = (big_l / j as f64).exp();
        for nsign in [1i64, -1] {
            // candidate root with conjugate nsign / x and trace t
            let t = (x + nsign as f64 / x).round();
            if !t.is_finite() || t.abs() > 1e15 {
                continue;
            }
            let t = BigInt::from(t as i64);
            let disc = &t * &t - BigInt::from(4 * nsign);
            if disc.is_negative() || !(&disc % d0).is_zero() {
                continue;
            }
            let u2 = &disc / d0;
            if !is_square(&u2) {
                continue;
            }
            let u = u2.sqrt();
            for us in [u.clone(), -u.clone()] {
                let cand = k.scale(
                    &k.add(&k.from_rational(BigRational::from_integer(t.clone())), &k.scale(sq, &BigRational::from_integer(us))),
                    &BigRational::new(BigInt::one(), BigInt::from(2)),
                );
                if !is_unit(k, &cand) {
                    continue;
                }
                let pw = k.pow(&cand, j);
                if pw == *eps || pw == k.neg(eps) {
                    return Ok(cand);
                }
            }
        }
    }
    Ok(eps.clone())
}

/// Rank-one unit search: enumerate `T2 <= B` for growing `B` until a
/// non-torsion unit appears, then search once more up to `n + T2(ε)`, which
/// covers every root of `ε` and therefore a fundamental unit.
pub fn bounded_unit_search(k: &NumberField) -> Result<UnitData> {
    if k.unit_rank() != 1 {
        return Err(Error::Unsupported(format!("unsupported unit rank {}", k.unit_rank())));
    }
    let n = k.degree() as f64;
    let gram = k.t2_gram();
    let mut b = 2.0 * n;
    let found = loop {
        if let Some(u) = smallest_unit(k, &gram, b)? {
            break u;
        }
        b *= 2.0;
        if b > UNIT_SEARCH_LIMIT {
            return Err(Error::Budget(b as usize));
        }
    };
    let t2 = k.t2(&found).upper();
    let eps = smallest_unit(k, &gram, n + t2 * (1.0 + 1e-9))?.expect("the first unit is within range");
    make_unit_data(k, eps, UnitSource::BoundedSearch)
}

fn smallest_unit(k: &NumberField, gram: &crate::exact::lattice::GramMatrix, b: f64) -> Result<Option<Elt>> {
    let sv = enumerate_short_vectors(gram, b)?;
    let mut best: Option<(f64, Elt)> = None;
    for v in &sv.half {
        let coords: Vec<BigInt> = v.iter().map(|&c| BigInt::from(c)).collect();
        let x = k.from_basis_coords(&coords);
        let nn = k.numeric_norm(&x);
        if !nn.contains(1.0) {
            continue;
        }
        if !is_unit(k, &x) {
            continue;
        }
        let l = log_embedding(k, &x);
        if l[0].contains_zero() {
            continue; // torsion
        }
        let size = l[0].mid.abs();
        if best.as_ref().is_none_or(|(s, _)| size < *s - 1e-9) {
            best = Some((size, x));
        }
    }
    Ok(best.map(|(_, x)| x))
}

/// Generator of an integral ideal if it is principal.
///
/// Reducing a generator by the unit lattice puts its balanced log vector
/// within half a unit period, so it satisfies
/// `T2(x) <= sum_v n_v N^{2/n} e^{spread / n_v}`; the enumeration over that
/// radius is exhaustive.
pub fn is_principal(k: &NumberField, a: &Ideal, units: &UnitData) -> Result<Option<Elt>> {
    let na = a.integral_norm()?;
    if na.is_one() {
        return Ok(Some(k.one()));
    }
    if units.rank != k.unit_rank() {
        return Err(Error::Unsupported(format!("unsupported unit rank {}", k.unit_rank())));
    }
    let n = k.degree();
    let nf = Ball::from_bigint(&na);
    let base = (nf.ln().scale(2.0 / n as f64)).exp();
    let spread = units.spread();
    let mut bound = Ball::ZERO;
    for pl in k.places() {
        let nv = if pl.kind == PlaceKind::Real { 1.0 } else { 2.0 };
        bound = bound + (base * Ball::exact(spread / nv).exp()).scale(nv);
    }
    let radius = bound.upper() * (1.0 + 1e-9) + 1e-9;

    let gram = k.t2_gram();
    let basis = lll_reduce(a.hnf(), &gram)?;
    let sub = gram.restrict(&basis)?;
    let sv = enumerate_short_vectors(&sub, radius)?;
    let target = BigRational::from_integer(na.clone());
    let nfl = na.to_f64().unwrap_or(f64::INFINITY);
    for v in &sv.half {
        let vb: Vec<BigInt> = v.iter().map(|&c| BigInt::from(c)).collect();
        let coords = basis.mul_vec(&vb);
        let x = k.from_basis_coords(&coords);
        let nn = k.numeric_norm(&x);
        if nn.upper() < nfl * (1.0 - 1e-12) || nn.lower() > nfl * (1.0 + 1e-12) {
            continue;
        }
        if k.norm(&x).abs() == target {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

/// Integral coordinates as a column matrix (helper for callers building
/// ideals from generators).
pub fn coords_matrix(k: &NumberField, xs: &[Elt]) -> Option<IntMatrix> {
    let cols: Option<Vec<Vec<BigInt>>> = xs.iter().map(|x| k.integral_coords(x)).collect();
    Some(IntMatrix::from_cols(k.degree(), &cols?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::Poly;
    use crate::field::make_field;

    fn field(c: &[i64]) -> NumberField {
        make_field("K", &Poly::from_i64(c), None, 128).unwrap()
    }

    #[test]
    fn real_quadratic_regulators() {
        for (poly, reg) in [
            (vec![-2, 0, 1], (1.0 + 2f64.sqrt()).ln()),
            (vec![-5, 0, 1], ((1.0 + 5f64.sqrt()) / 2.0).ln()),
            (vec![-3, 0, 1], (2.0 + 3f64.sqrt()).ln()),
            (vec![-23, 0, 1], (24.0 + 5.0 * 23f64.sqrt()).ln()),
        ] {
            let k = field(&poly);
            let u = real_quadratic_unit(&k).unwrap();
            assert!(u.regulator().contains(reg) || (u.regulator().mid - reg).abs() < 1e-12, "{poly:?}");
        }
    }

    #[test]
    fn search_agrees_with_continued_fraction() {
        let k = field(&[-5, 0, 1]);
        let a = real_quadratic_unit(&k).unwrap().regulator();
        let b = bounded_unit_search(&k).unwrap().regulator();
        assert!((a.mid - b.mid).abs() < 1e-12);
    }

    #[test]
    fn principal_tests() {
        let k = field(&[1, 0, 1]);
        let u = unit_data(&k).unwrap();
        let two = Ideal::from_integer(&k, &BigInt::from(2)).unwrap();
        let g = is_principal(&k, &two, &u).unwrap().unwrap();
        assert_eq!(k.norm(&g), BigRational::from_integer(4.into()));
        let k = field(&[5, 0, 1]);
        let u = unit_data(&k).unwrap();
        let p2 = crate::ideal::factor_prime(&k, 2).unwrap().primes[0].ideal.clone();
        assert!(is_principal(&k, &p2, &u).unwrap().is_none());
        assert_eq!(is_principal(&k, &Ideal::unit(&k), &u).unwrap(), Some(k.one()));
    }

    #[test]
    fn principal_in_real_quadratic() {
        // (3 + √23) has norm -14; its ideal must be recognised
        let k = field(&[-23, 0, 1]);
        let u = unit_data(&k).unwrap();
        let x = k.from_basis_coords_i64(&[3, 1]);
        let a = Ideal::principal(&k, &x).unwrap();
        assert!(is_principal(&k, &a, &u).unwrap().is_some());
    }
}

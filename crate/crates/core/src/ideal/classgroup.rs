//! Class groups from the Minkowski bound and exhaustive principality tests.

use num::{BigInt, ToPrimitive};
use serde::Serialize;

use super::primes::{factor_ideal, factor_prime, PrimeIdeal};
use super::principal::{is_principal, unit_data, UnitData};
use super::Ideal;
use crate::error::{Error, Result};
use crate::exact::abelian::{p_valuation, AbelianPresentation, FinAbelianGroup};
use crate::exact::ball::Ball;
use crate::exact::matrix::IntMatrix;
use crate::field::NumberField;

/// `(n!/n^n) (4/π)^s sqrt|d|`, certified.
pub fn minkowski_bound(k: &NumberField) -> Ball {
    let n = k.degree();
    let (_, s) = k.signature();
    let mut c = Ball::ONE;
    for i in 1..=n {
        c = c * Ball::exact(i as f64 / n as f64);
    }
    let four_over_pi = Ball::exact(4.0).div(&Ball::pi());
    for _ in 0..s {
        c = c * four_over_pi;
    }
    c * Ball::from_bigint(&num::Signed::abs(k.discriminant())).sqrt()
}

/// A class representative: an ideal with its exponent vector over the
/// factor base.
#[derive(Clone, Debug)]
struct Rep {
    ideal: Ideal,
    adjoint: Ideal,
    exps: Vec<i64>,
}

#[derive(Clone, Debug)]
pub struct ClassGroup {
    pub structure: FinAbelianGroup,
    /// One ideal per invariant factor, generating that cyclic summand.
    pub generators: Vec<Ideal>,
    /// Prime ideals of norm at most the Minkowski bound.
    pub factor_base: Vec<PrimeIdeal>,
    pub minkowski: Ball,
    pub units: UnitData,
    /// Number of principality tests performed.
    pub tests: usize,
    reps: Vec<Rep>,
    presentation: AbelianPresentation,
}

impl ClassGroup {
    pub fn order(&self) -> u64 {
        self.structure.order()
    }

    pub fn representatives(&self) -> Vec<&Ideal> {
        self.reps.iter().map(|r| &r.ideal).collect()
    }

    /// Coordinates of the class of `a` in the invariant-factor basis.
    pub fn class_of(&self, k: &NumberField, a: &Ideal) -> Result<Vec<u64>> {
        let num = a.numerator();
        if self.structure.is_trivial() {
            return Ok(vec![]);
        }
        for r in &self.reps {
            let test = num.mul(k, &r.adjoint);
            if is_principal(k, &test, &self.units)?.is_some() {
                return Ok(self.presentation.reduce(&to_big(&r.exps)));
            }
        }
        Err(Error::Numerical("ideal matches no class representative".into()))
    }

    /// Classes add componentwise modulo the invariant factors.
    pub fn add_classes(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(b)
            .zip(self.structure.invariants())
            .map(|((x, y), d)| (x + y) % d)
            .collect()
    }

    /// Invariant-factor coordinates of an exponent vector over the factor base.
    pub fn class_of_exponents(&self, exps: &[i64]) -> Vec<u64> {
        self.presentation.reduce(&to_big(exps))
    }

    /// An integral ideal in the class with the given coordinates.
    pub fn ideal_in_class(&self, c: &[u64]) -> Option<&Ideal> {
        self.reps
            .iter()
            .find(|r| self.presentation.reduce(&to_big(&r.exps)) == c)
            .map(|r| &r.ideal)
    }
}

fn to_big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn primes_up_to(m: u64) -> Vec<u64> {
    (2..=m).filter(|&p| (2..p).take_while(|q| q * q <= p).all(|q| p % q != 0)).collect()
}

/// All exponent vectors over `base` with `prod N(P)^e <= bound`.
fn ideals_below(norms: &[u64], bound: u64) -> Vec<(u64, Vec<i64>)> {
    fn rec(norms: &[u64], i: usize, cur: u64, bound: u64, exps: &mut Vec<i64>, out: &mut Vec<(u64, Vec<i64>)>) {
        if i == norms.len() {
            out.push((cur, exps.clone()));
            return;
        }
        let mut c = cur;
        let mut e = 0;
        loop {
            exps[i] = e;
            rec(norms, i + 1, c, bound, exps, out);
            match c.checked_mul(norms[i]) {
                Some(nc) if nc <= bound => {
                    c = nc;
                    e += 1;
                }
                _ => break,
            }
        }
        exps[i] = 0;
    }
    let mut out = Vec::new();
    let mut exps = vec![0; norms.len()];
    rec(norms, 0, 1, bound, &mut exps, &mut out);
    out.sort();
    out
}

fn ideal_from_exps(k: &NumberField, base: &[PrimeIdeal], exps: &[i64]) -> Ideal {
    let mut acc = Ideal::unit(k);
    for (q, &e) in base.iter().zip(exps) {
        if e > 0 {
            acc = acc.mul(k, &q.ideal.pow(k, e as u32));
        }
    }
    acc
}

/// Class group of a field of unit rank at most one.
pub fn class_group(k: &NumberField) -> Result<ClassGroup> {
    let units = unit_data(k)?;
    class_group_with_units(k, units)
}

pub fn class_group_with_units(k: &NumberField, units: UnitData) -> Result<ClassGroup> {
    let mb = minkowski_bound(k);
    let bound = mb.upper().floor().to_u64().unwrap_or(0);
    let mut base: Vec<PrimeIdeal> = Vec::new();
    for p in primes_up_to(bound) {
        for q in factor_prime(k, p)?.primes {
            if q.norm_f64() <= bound as f64 {
                base.push(q);
            }
        }
    }
    let norms: Vec<u64> = base.iter().map(|q| q.norm().to_u64().unwrap()).collect();
    let listed = ideals_below(&norms, bound.max(1));
    let mut tests = 0usize;

    // pairwise classification of every ideal of norm <= bound
    let mut reps: Vec<Rep> = Vec::new();
    let mut relations: Vec<Vec<i64>> = Vec::new();
    for (_, exps) in &listed {
        let a = ideal_from_exps(k, &base, exps);
        let mut found = None;
        for (ri, r) in reps.iter().enumerate() {
            tests += 1;
            if is_principal(k, &a.mul(k, &r.adjoint), &units)?.is_some() {
                found = Some(ri);
                break;
            }
        }
        match found {
            Some(ri) => relations.push(exps.iter().zip(&reps[ri].exps).map(|(x, y)| x - y).collect()),
            None => {
                let adjoint = a.adjoint(k)?;
                reps.push(Rep { ideal: a, adjoint, exps: exps.clone() });
            }
        }
    }
    let h = reps.len();

    // Schreier relations: rep * P_i lands in some rep's class
    for bi in 0..h {
        for (i, q) in base.iter().enumerate() {
            let prod = reps[bi].ideal.mul(k, &q.ideal);
            let mut hit = None;
            for (ci, c) in reps.iter().enumerate() {
                tests += 1;
                if is_principal(k, &prod.mul(k, &c.adjoint), &units)?.is_some() {
                    hit = Some(ci);
                    break;
                }
            }
            let ci = hit.ok_or_else(|| Error::Numerical("product left every known class".into()))?;
            let mut rel = reps[bi].exps.clone();
            rel[i] += 1;
            for (x, y) in rel.iter_mut().zip(&reps[ci].exps) {
                *x -= y;
            }
            relations.push(rel);
        }
    }

    let kb = base.len();
    let cols: Vec<Vec<BigInt>> = relations.iter().filter(|r| r.iter().any(|&x| x != 0)).map(|r| to_big(r)).collect();
    let rel_matrix = if cols.is_empty() { IntMatrix::zeros(kb, 0) } else { IntMatrix::from_cols(kb, &cols) };
    let presentation = AbelianPresentation::new(&rel_matrix)?;
    let structure = presentation.group.clone();
    if structure.order() != h as u64 {
        return Err(Error::Numerical(format!(
            "relation lattice has index {} but {} classes were found",
            structure.order(),
            h
        )));
    }
    let mut cg = ClassGroup {
        structure,
        generators: vec![],
        factor_base: base,
        minkowski: mb,
        units,
        tests,
        reps,
        presentation,
    };
    let mut gens = Vec::new();
    for g in &cg.presentation.generators {
        let c = cg.presentation.reduce(g);
        let ideal = cg
            .ideal_in_class(&c)
            .ok_or_else(|| Error::Numerical("no representative for a generator class".into()))?;
        gens.push(ideal.clone());
    }
    cg.generators = gens;
    Ok(cg)
}

/// Factor exponent vector of an ideal over the class group's factor base, if
/// every prime factor lies in it.
pub fn exponents_over_base(k: &NumberField, cg: &ClassGroup, a: &Ideal) -> Result<Option<Vec<i64>>> {
    let fac = factor_ideal(k, a)?;
    let mut exps = vec![0i64; cg.factor_base.len()];
    for (q, e) in fac {
        match cg.factor_base.iter().position(|b| b.ideal == q.ideal) {
            Some(i) => exps[i] += e,
            None => return Ok(None),
        }
    }
    Ok(Some(exps))
}

/// `λ_{p,n}`: the number of `Z/p^n` summands, for every prime dividing the
/// class number.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LambdaTable {
    /// `(p, n, λ_{p,n})` with `λ > 0`, sorted.
    pub entries: Vec<(u64, u32, usize)>,
}

impl LambdaTable {
    pub fn get(&self, p: u64, n: u32) -> usize {
        self.entries.iter().find(|e| e.0 == p && e.1 == n).map_or(0, |e| e.2)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

pub fn lambda_table(g: &FinAbelianGroup) -> LambdaTable {
    let mut primes: Vec<u64> = Vec::new();
    for &d in g.invariants() {
        let mut m = d;
        let mut p = 2;
        while m > 1 {
            if m % p == 0 {
                if !primes.contains(&p) {
                    primes.push(p);
                }
                m /= p;
            } else {
                p += 1;
            }
        }
    }
    primes.sort();
    let mut entries = Vec::new();
    for p in primes {
        let mut levels: Vec<(u32, usize)> = Vec::new();
        for &d in g.invariants() {
            let v = p_valuation(d, p);
            if v > 0 {
                match levels.iter_mut().find(|(n, _)| *n == v) {
                    Some(e) => e.1 += 1,
                    None => levels.push((v, 1)),
                }
            }
        }
        levels.sort();
        entries.extend(levels.into_iter().map(|(n, c)| (p, n, c)));
    }
    LambdaTable { entries }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::Poly;
    use crate::field::{make_field, rationals};

    fn field(c: &[i64]) -> NumberField {
        make_field("K", &Poly::from_i64(c), None, 128).unwrap()
    }

    #[test]
    fn minkowski_values() {
        assert!(minkowski_bound(&rationals()).contains(1.0));
        let b = minkowski_bound(&field(&[5, 0, 1]));
        assert!((b.mid - 0.5 * 4.0 / std::f64::consts::PI * 20f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn imaginary_quadratic_class_groups() {
        assert!(class_group(&field(&[1, 0, 1])).unwrap().structure.is_trivial());
        let c5 = class_group(&field(&[5, 0, 1])).unwrap();
        assert_eq!(c5.structure.invariants(), &[2]);
        let c23 = class_group(&field(&[6, -1, 1])).unwrap(); // x^2 - x + 6, disc -23
        assert_eq!(c23.structure.invariants(), &[3]);
        assert_eq!(c23.generators.len(), 1);
    }

    #[test]
    fn class_of_is_additive() {
        let k = field(&[5, 0, 1]);
        let cg = class_group(&k).unwrap();
        let p2 = factor_prime(&k, 2).unwrap().primes[0].ideal.clone();
        let p3 = factor_prime(&k, 3).unwrap().primes[0].ideal.clone();
        let a = cg.class_of(&k, &p2).unwrap();
        let b = cg.class_of(&k, &p3).unwrap();
        assert_eq!(a, vec![1]);
        assert_eq!(cg.class_of(&k, &p2.mul(&k, &p3)).unwrap(), cg.add_classes(&a, &b));
    }

    #[test]
    fn lambda_from_invariants() {
        let t = lambda_table(&FinAbelianGroup::new(vec![3, 9]).unwrap());
        assert_eq!(t.get(3, 1), 1);
        assert_eq!(t.get(3, 2), 1);
        assert!(lambda_table(&FinAbelianGroup::trivial()).is_empty());
    }
}

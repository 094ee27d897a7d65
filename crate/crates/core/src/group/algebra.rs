//! The rational group algebra, norm idempotents and their linear relations.

use std::fmt;

use num::{BigInt, BigRational, Integer, One, Signed, Zero};
use serde::Serialize;

use super::finite::FiniteGroup;
use super::subgroups::{subgroups, Subgroup};
use crate::exact::matrix::{integer_kernel, primitive_integer_vector, IntMatrix};

/// Element of `Q[G]`, one coefficient per group element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    coeffs: Vec<BigRational>,
}

impl GroupAlgebraElement {
    pub fn zero(n: usize) -> GroupAlgebraElement {
        GroupAlgebraElement { coeffs: vec![BigRational::zero(); n] }
    }

    pub fn basis(n: usize, g: usize) -> GroupAlgebraElement {
        let mut e = GroupAlgebraElement::zero(n);
        e.coeffs[g] = BigRational::one();
        e
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, o: &GroupAlgebraElement) -> GroupAlgebraElement {
        GroupAlgebraElement {
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, k: &BigRational) -> GroupAlgebraElement {
        GroupAlgebraElement { coeffs: self.coeffs.iter().map(|a| a * k).collect() }
    }

    /// Convolution product.
    pub fn mul(&self, o: &GroupAlgebraElement, g: &FiniteGroup) -> GroupAlgebraElement {
        let mut out = GroupAlgebraElement::zero(g.order());
        for (a, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in o.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    out.coeffs[g.mul(a, b)] += x * y;
                }
            }
        }
        out
    }
}

impl fmt::Display for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(g, c)| format!("{c}*g{g}"))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// `(1/|H|) * sum of h in H`.
pub fn norm_idempotent(g: &FiniteGroup, h: &Subgroup) -> GroupAlgebraElement {
    let mut e = GroupAlgebraElement::zero(g.order());
    let c = BigRational::new(BigInt::one(), BigInt::from(h.order()));
    for &x in h.elements() {
        e.coeffs[x] = c.clone();
    }
    e
}

/// Integer coefficients `r_H`, indexed like the subgroup list of the group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdempotentRelation {
    pub coeffs: Vec<i64>,
}

impl IdempotentRelation {
    pub fn coefficient_sum(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Nonzero `(subgroup index, coefficient)` pairs.
    pub fn support(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.coeffs.iter().copied().enumerate().filter(|&(_, c)| c != 0)
    }

    /// `sum r_H x_H` for exact integer data indexed by subgroup.
    pub fn pair(&self, values: &[i64]) -> i64 {
        self.coeffs.iter().zip(values).map(|(r, v)| r * v).sum()
    }
}

/// `sum r_H`. Vanishes on every valid relation (apply the trivial character).
pub fn relation_coefficient_sum(rel: &IdempotentRelation) -> i64 {
    rel.coefficient_sum()
}

/// `sum r_H eps_H`, which is zero exactly when `rel` is a relation.
pub fn verify_relation(
    g: &FiniteGroup,
    subs: &[Subgroup],
    rel: &IdempotentRelation,
) -> GroupAlgebraElement {
    let mut acc = GroupAlgebraElement::zero(g.order());
    for (i, c) in rel.support() {
        let e = norm_idempotent(g, &subs[i]);
        acc = acc.add(&e.scale(&BigRational::from_integer(BigInt::from(c))));
    }
    acc
}

/// The `|G| x #subgroups` matrix whose columns are `|G| * eps_H`.
pub fn idempotent_matrix(g: &FiniteGroup, subs: &[Subgroup]) -> IntMatrix {
    let n = g.order();
    let mut m = IntMatrix::zeros(n, subs.len());
    for (j, h) in subs.iter().enumerate() {
        for &x in h.elements() {
            m.set(x, j, BigInt::from(n / h.order()));
        }
    }
    m
}

/// A Z-basis of the lattice of relations among the norm idempotents of all
/// subgroups, each normalized to a primitive vector with first nonzero
/// coefficient positive.
pub fn find_relations(g: &FiniteGroup) -> (Vec<Subgroup>, Vec<IdempotentRelation>) {
    let subs = subgroups(g);
    let rels = relations_for(g, &subs);
    (subs, rels)
}

pub fn relations_for(g: &FiniteGroup, subs: &[Subgroup]) -> Vec<IdempotentRelation> {
    let m = idempotent_matrix(g, subs);
    let k = integer_kernel(&m);
    let mut rels: Vec<IdempotentRelation> = (0..k.ncols())
        .map(|j| {
            let v: Vec<BigRational> = k.col(j).into_iter().map(BigRational::from_integer).collect();
            let p = primitive_integer_vector(&v);
            IdempotentRelation {
                coeffs: p.iter().map(|x| i64::try_from(x.clone()).expect("small relation")).collect(),
            }
        })
        .collect();
    rels.sort_by(|a, b| {
        let la = leading(a);
        let lb = leading(b);
        la.cmp(&lb).then_with(|| a.coeffs.cmp(&b.coeffs))
    });
    for r in &rels {
        debug_assert!(verify_relation(g, subs, r).is_zero());
    }
    rels
}

fn leading(r: &IdempotentRelation) -> usize {
    r.coeffs.iter().position(|&c| c != 0).unwrap_or(usize::MAX)
}

/// gcd of the nonzero coefficients.
pub fn content(rel: &IdempotentRelation) -> i64 {
    rel.coeffs.iter().fold(0i64, |a, &b| a.gcd(&b)).abs()
}

pub fn is_primitive_normalized(rel: &IdempotentRelation) -> bool {
    content(rel) == 1 && rel.coeffs.iter().find(|&&c| c != 0).is_some_and(|c| c.is_positive())
}

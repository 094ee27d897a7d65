//! Fixed fields of subgroups of the automorphism group.

use num::{BigInt, BigRational, Signed};

use super::auts::Automorphism;
use super::{make_field, squarefree_decomposition, Elt, NumberField};
use crate::error::{Error, Result};
use crate::exact::lattice::lll_reduce;
use crate::exact::matrix::{integer_kernel, IntMatrix, RatMatrix};
use crate::exact::poly::Poly;

/// Candidate budget for the primitive element search.
pub const PRIMITIVE_BUDGET: usize = 10_000;
/// Number of valid primitive elements compared before choosing the one with
/// the smallest minimal polynomial.
const PRIMITIVE_SHORTLIST: usize = 40;

/// `K = L^H` as a standalone field together with its embedding into `L`.
#[derive(Clone, Debug)]
pub struct Subfield {
    pub field: NumberField,
    /// Indices (into the automorphism list of `L`) of the elements of `H`.
    pub subgroup: Vec<usize>,
    /// Column `j`: integral basis element `j` of `K` in integral coordinates of `L`.
    pub inclusion: IntMatrix,
    /// The generator of `K` inside `L`.
    pub generator: Elt,
    /// For each embedding of `L`, the embedding of `K` it restricts to.
    pub embedding_restriction: Vec<usize>,
}

impl Subfield {
    /// `ι(x)` for `x` in `K`.
    pub fn include(&self, l: &NumberField, x: &Elt) -> Elt {
        let mut acc = l.zero();
        for c in x.c.iter().rev() {
            acc = l.add(&l.mul(&acc, &self.generator), &l.from_rational(c.clone()));
        }
        acc
    }

    /// Preimage of an `H`-fixed element of `L`.
    pub fn restrict(&self, l: &NumberField, x: &Elt) -> Option<Elt> {
        let v = l.basis_coords(x);
        let w = self.inclusion.to_rational().solve_consistent(&v)?;
        let k = &self.field;
        let mut out = k.zero();
        for (c, b) in w.iter().zip(k.integral_basis()) {
            out = k.add(&out, &k.scale(b, c));
        }
        Some(out)
    }

    /// Include integral coordinates of `K` into integral coordinates of `L`.
    pub fn include_coords(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.inclusion.mul_vec(v)
    }

    /// Index of `H` in `G`, which is the degree of `K`.
    pub fn degree(&self) -> usize {
        self.field.degree()
    }
}

/// Fixed field of the automorphisms `auts[i]` for `i` in `h`.
pub fn fixed_field(l: &NumberField, auts: &[Automorphism], h: &[usize], name: &str) -> Result<Subfield> {
    let n = l.degree();
    if h.is_empty() || n % h.len() != 0 {
        return Err(Error::InvalidInput("subgroup order must divide the degree".into()));
    }
    let m = n / h.len();
    // O_L ∩ L^H as the integer kernel of the stacked (σ - 1)
    let mut stacked = IntMatrix::zeros(0, n);
    for &i in h {
        let mut d = auts[i].basis_matrix().clone();
        for j in 0..n {
            let v = d.get(j, j) - BigInt::from(1);
            d.set(j, j, v);
        }
        stacked = stacked.vcat(&d);
    }
    let kernel = integer_kernel(&stacked);
    if kernel.ncols() != m {
        return Err(Error::InvalidInput(format!(
            "fixed module has rank {} but the subgroup index is {m}",
            kernel.ncols()
        )));
    }
    let reduced = lll_reduce(&kernel, &l.t2_gram())?;
    let fixed: Vec<Elt> = (0..m).map(|j| l.from_basis_coords(&reduced.col(j))).collect();

    let (generator, poly) = if m == n {
        (l.theta(), l.poly().clone())
    } else if m == 1 {
        (l.one(), Poly::from_i64(&[-1, 1]))
    } else {
        primitive_element(l, &fixed, m)?
    };

    // K's integral basis: the fixed elements in powers of the generator
    let mut powers = vec![l.one()];
    for _ in 1..m {
        powers.push(l.mul(powers.last().unwrap(), &generator));
    }
    let pmat = RatMatrix::from_rows((0..n).map(|i| powers.iter().map(|p| p.c[i].clone()).collect()).collect());
    let (basis_rows, inclusion) = if m == n {
        let rows: Vec<Vec<BigRational>> = l.integral_basis().iter().map(|b| b.c.clone()).collect();
        (rows, IntMatrix::identity(n))
    } else {
        let rows = fixed
            .iter()
            .map(|x| {
                pmat.solve_consistent(&x.c)
                    .ok_or_else(|| Error::Numerical("fixed element outside the generated subfield".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        (rows, reduced)
    };
    let field = make_field(name, &poly, Some(basis_rows), l.precision())?;
    let field = with_source_note(field, m, n, l);

    // the field canonicalises its basis, so read the inclusion back off it
    let inclusion = if m == n {
        inclusion
    } else {
        let sub = Subfield {
            field: field.clone(),
            subgroup: vec![],
            inclusion: IntMatrix::zeros(n, m),
            generator: generator.clone(),
            embedding_restriction: vec![],
        };
        let cols = field
            .integral_basis()
            .iter()
            .map(|b| {
                l.integral_coords(&sub.include(l, b))
                    .ok_or_else(|| Error::Numerical("subfield basis is not integral in the top field".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        IntMatrix::from_cols(n, &cols)
    };
    let embedding_restriction = restrict_embeddings(l, &field, &generator)?;
    let mut sub: Vec<usize> = h.to_vec();
    sub.sort();
    Ok(Subfield { field, subgroup: sub, inclusion, generator, embedding_restriction })
}

fn with_source_note(mut k: NumberField, m: usize, n: usize, l: &NumberField) -> NumberField {
    if m == n {
        k.set_name(l.name());
    } else if m == 1 {
        k.set_name("Q");
    } else if m == 2 {
        let (_, d0) = squarefree_decomposition(k.discriminant());
        k.set_name(&quadratic_name(&d0));
    }
    k
}

fn quadratic_name(d: &BigInt) -> String {
    if *d == BigInt::from(-1) {
        "Q(i)".to_string()
    } else {
        format!("Q(sqrt({d}))")
    }
}

fn primitive_element(l: &NumberField, fixed: &[Elt], m: usize) -> Result<(Elt, Poly)> {
    let k = fixed.len();
    let mut tried = 0usize;
    let mut best: Option<(BigInt, usize, Elt, Poly)> = None;
    let mut valid = 0usize;
    // coefficient vectors by growing box radius, lexicographic inside a shell
    'outer: for radius in 1i64.. {
        let side = (2 * radius + 1) as usize;
        let total = side.pow(k as u32);
        for code in 0..total {
            let mut c = Vec::with_capacity(k);
            let mut rest = code;
            for _ in 0..k {
                c.push((rest % side) as i64 - radius);
                rest /= side;
            }
            if c.iter().map(|x| x.abs()).max() != Some(radius) {
                continue;
            }
            tried += 1;
            if tried > PRIMITIVE_BUDGET {
                break 'outer;
            }
            let mut g = l.zero();
            for (ci, x) in c.iter().zip(fixed) {
                if *ci != 0 {
                    g = l.add(&g, &l.scale(x, &BigRational::from_integer(BigInt::from(*ci))));
                }
            }
            let p = l.min_poly(&g);
            if p.degree() != Some(m) {
                continue;
            }
            valid += 1;
            let height: BigInt = p.coeffs().iter().map(|q| q.to_integer().abs()).sum();
            let better = best.as_ref().is_none_or(|(h, t, _, _)| (&height, tried) < (h, *t));
            if better {
                best = Some((height, tried, g, p));
            }
            if valid >= PRIMITIVE_SHORTLIST {
                break 'outer;
            }
        }
        if radius > 50 {
            break;
        }
    }
    match best {
        Some((_, _, g, p)) => Ok((g, p)),
        None => Err(Error::Budget(PRIMITIVE_BUDGET)),
    }
}

fn restrict_embeddings(l: &NumberField, k: &NumberField, gamma: &Elt) -> Result<Vec<usize>> {
    let kroots: Vec<_> = k.roots().embeddings().iter().map(|r| r.ball()).collect();
    (0..l.degree())
        .map(|e| {
            let v = l.embed(gamma, e);
            let hits: Vec<usize> = (0..kroots.len())
                .filter(|&j| v.re.overlaps(&kroots[j].re) && v.im.overlaps(&kroots[j].im))
                .collect();
            match hits.as_slice() {
                [j] => Ok(*j),
                _ => Err(Error::Precision("cannot match subfield embeddings".into())),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::auts::automorphisms;
    use crate::field::make_field;

    #[test]
    fn biquadratic_subfields() {
        let l = make_field("L", &Poly::from_i64(&[1, 0, -10, 0, 1]), None, 128).unwrap();
        let a = automorphisms(&l, None).unwrap();
        let mut discs = Vec::new();
        for i in 1..4 {
            let k = fixed_field(&l, &a, &[0, i], "K").unwrap();
            assert_eq!(k.degree(), 2);
            // every included basis element is fixed
            for b in k.field.integral_basis() {
                let x = k.include(&l, b);
                assert_eq!(a[i].apply(&x), x);
                assert_eq!(k.restrict(&l, &x).unwrap(), *b);
            }
            discs.push(k.field.discriminant().clone());
        }
        discs.sort();
        assert_eq!(discs, vec![BigInt::from(8), BigInt::from(12), BigInt::from(24)]);
        let q = fixed_field(&l, &a, &[0, 1, 2, 3], "Q").unwrap();
        assert_eq!(q.field.discriminant(), &BigInt::from(1));
        let top = fixed_field(&l, &a, &[0], "L").unwrap();
        assert_eq!(top.field.discriminant(), &BigInt::from(2304));
    }
}

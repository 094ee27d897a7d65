//! Field automorphisms: exact verification and recognition of root
//! correspondences by lattice reduction.

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use super::roots::{eval_crat, MAX_PRECISION};
use super::{Elt, NumberField};
use crate::error::{Error, Result};
use crate::exact::lattice::lll_integer_rows;
use crate::exact::matrix::{IntMatrix, RatMatrix};
use crate::group::FiniteGroup;

/// `θ ↦ image`, with its matrices on the power and integral bases and its
/// action on the embeddings.
#[derive(Clone, Debug)]
pub struct Automorphism {
    pub image: Elt,
    power_matrix: RatMatrix,
    basis_matrix: IntMatrix,
    /// `σ_k ∘ self = σ_{embedding_perm[k]}`.
    pub embedding_perm: Vec<usize>,
}

impl Automorphism {
    pub fn apply(&self, x: &Elt) -> Elt {
        Elt { c: self.power_matrix.mul_vec(&x.c) }
    }

    /// Action on integral-basis coordinates (column j is the image of `b_j`).
    pub fn basis_matrix(&self) -> &IntMatrix {
        &self.basis_matrix
    }

    pub fn apply_basis_coords(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.basis_matrix.mul_vec(v)
    }

    pub fn is_identity(&self) -> bool {
        self.basis_matrix == IntMatrix::identity(self.basis_matrix.nrows())
    }
}

/// Build and exactly verify the automorphism `θ ↦ image`.
pub fn verify_automorphism(k: &NumberField, image: &Elt) -> Result<Automorphism> {
    let n = k.degree();
    // f(image) ≡ 0
    let mut acc = k.zero();
    for c in k.poly().coeffs().iter().rev() {
        acc = k.add(&k.mul(&acc, image), &k.from_rational(c.clone()));
    }
    if !acc.is_zero() {
        return Err(Error::InvalidInput("image is not a root of the minimal polynomial".into()));
    }
    let mut pm = RatMatrix::zeros(n, n);
    let mut col = k.one();
    for i in 0..n {
        for r in 0..n {
            pm.set(r, i, col.c[r].clone());
        }
        col = k.mul(&col, image);
    }
    let apply = |x: &Elt| Elt { c: pm.mul_vec(&x.c) };
    let basis = k.integral_basis();
    let mut bm = IntMatrix::zeros(n, n);
    let mut images = Vec::with_capacity(n);
    for (j, b) in basis.iter().enumerate() {
        let im = apply(b);
        let v = k
            .integral_coords(&im)
            .ok_or_else(|| Error::InvalidInput("automorphism does not preserve the ring of integers".into()))?;
        for i in 0..n {
            bm.set(i, j, v[i].clone());
        }
        images.push(im);
    }
    // homomorphism on basis products
    for i in 0..n {
        for j in 0..n {
            if apply(&k.mul(&basis[i], &basis[j])) != k.mul(&images[i], &images[j]) {
                return Err(Error::InvalidInput("map is not multiplicative".into()));
            }
        }
    }
    if pm.det().is_zero() {
        return Err(Error::InvalidInput("map is not injective".into()));
    }
    let embedding_perm = embedding_permutation(k, image)?;
    Ok(Automorphism { image: image.clone(), power_matrix: pm, basis_matrix: bm, embedding_perm })
}

fn embedding_permutation(k: &NumberField, image: &Elt) -> Result<Vec<usize>> {
    let n = k.degree();
    let roots = k.roots().embeddings();
    let balls: Vec<_> = roots.iter().map(|r| r.ball()).collect();
    let mut perm = Vec::with_capacity(n);
    for kk in 0..n {
        let v = k.embed(image, kk);
        let hits: Vec<usize> = (0..n)
            .filter(|&j| v.re.overlaps(&balls[j].re) && v.im.overlaps(&balls[j].im))
            .collect();
        match hits.as_slice() {
            [j] => perm.push(*j),
            _ => return Err(Error::Precision("cannot match automorphism images to roots".into())),
        }
    }
    let mut seen = perm.clone();
    seen.sort();
    seen.dedup();
    if seen.len() != n {
        return Err(Error::Precision("embedding action is not a permutation".into()));
    }
    Ok(perm)
}

/// Try to write root `j` as a polynomial in root 0 with integral-basis
/// coordinates, using LLL on an embedded integer lattice.
fn recognise(k: &NumberField, j: usize, bits: u32) -> Option<Elt> {
    let n = k.degree();
    let roots = k.roots().embeddings();
    let z1 = &roots[0].center;
    let zj = &roots[j].center;
    let real = roots[0].is_real;
    if real && !roots[j].is_real {
        return None;
    }
    let scale = BigRational::from_integer(BigInt::one() << (bits.saturating_sub(10)) as usize);
    let round = |q: &BigRational| (q * &scale).round().to_integer();
    let basis = k.integral_basis();
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n + 1);
    for (i, b) in basis.iter().enumerate() {
        let v = eval_crat(&b.as_poly(), z1);
        let mut row = vec![BigInt::zero(); n + 1];
        row[i] = BigInt::one();
        row.push(round(&v.re));
        if !real {
            row.push(round(&v.im));
        }
        rows.push(row);
    }
    let mut target = vec![BigInt::zero(); n + 1];
    target[n] = BigInt::one();
    target.push(-round(&zj.re));
    if !real {
        target.push(-round(&zj.im));
    }
    rows.push(target);
    let reduced = lll_integer_rows(&rows).ok()?;
    for v in reduced {
        let t = &v[n];
        if !t.abs().is_one() {
            continue;
        }
        let sign = if t.is_positive() { BigInt::one() } else { -BigInt::one() };
        let coords: Vec<BigInt> = v[..n].iter().map(|c| c * &sign).collect();
        if coords.iter().any(|c| c.to_i64().is_none()) {
            continue;
        }
        let image = k.from_basis_coords(&coords);
        if verify_automorphism(k, &image).is_ok() {
            return Some(image);
        }
    }
    None
}

/// Automorphisms of `k`, identity first and the rest ordered by the
/// integral-basis coordinates of `σ(θ)`.
///
/// With `hints` the given images are verified and closed under composition;
/// without them every root is tried by lattice recognition, doubling the
/// precision up to the maximum while fewer than `n` are found. For a
/// non-normal field the automorphisms that exist are returned.
pub fn automorphisms(k: &NumberField, hints: Option<&[Elt]>) -> Result<Vec<Automorphism>> {
    let n = k.degree();
    let mut found: Vec<Automorphism> = vec![verify_automorphism(k, &k.theta())?];
    match hints {
        Some(h) => {
            for img in h {
                let a = verify_automorphism(k, img)?;
                if !found.iter().any(|b| b.image == a.image) {
                    found.push(a);
                }
            }
            close_under_composition(k, &mut found)?;
        }
        None => {
            let mut field = k.clone();
            let mut bits = k.precision();
            loop {
                for j in 1..n {
                    if found.iter().any(|a| a.embedding_perm[0] == j) {
                        continue;
                    }
                    if let Some(img) = recognise(&field, j, bits) {
                        // verify on the caller's field so embeddings match its roots
                        let a = verify_automorphism(k, &img)?;
                        if !found.iter().any(|b| b.image == a.image) {
                            found.push(a);
                        }
                    }
                }
                close_under_composition(k, &mut found)?;
                if found.len() == n || bits >= MAX_PRECISION {
                    break;
                }
                bits = (bits * 2).min(MAX_PRECISION);
                field = k.with_precision(bits)?;
            }
        }
    }
    sort_automorphisms(k, &mut found);
    Ok(found)
}

pub fn compose(k: &NumberField, a: &Automorphism, b: &Automorphism) -> Result<Automorphism> {
    verify_automorphism(k, &a.apply(&b.image))
}

fn close_under_composition(k: &NumberField, auts: &mut Vec<Automorphism>) -> Result<()> {
    loop {
        let mut added = false;
        let len = auts.len();
        for i in 0..len {
            for j in 0..len {
                let img = auts[i].apply(&auts[j].image);
                if !auts.iter().any(|x| x.image == img) {
                    auts.push(verify_automorphism(k, &img)?);
                    added = true;
                }
            }
        }
        if auts.len() > k.degree() {
            return Err(Error::InvalidInput("more automorphisms than the degree".into()));
        }
        if !added {
            return Ok(());
        }
    }
}

fn sort_automorphisms(k: &NumberField, auts: &mut [Automorphism]) {
    auts.sort_by(|a, b| {
        b.is_identity().cmp(&a.is_identity()).then_with(|| {
            let ka = k.integral_coords(&a.image).unwrap_or_default();
            let kb = k.integral_coords(&b.image).unwrap_or_default();
            ka.cmp(&kb)
        })
    });
}

/// The automorphism group as a finite group: element `i` is `auts[i]`,
/// and `i * j` is the composition `auts[i] ∘ auts[j]`.
pub fn automorphism_group(name: &str, auts: &[Automorphism]) -> Result<FiniteGroup> {
    let m = auts.len();
    let mut table = vec![vec![0usize; m]; m];
    for i in 0..m {
        for j in 0..m {
            let img = auts[i].apply(&auts[j].image);
            table[i][j] = auts
                .iter()
                .position(|x| x.image == img)
                .ok_or_else(|| Error::InvalidInput("automorphisms are not closed under composition".into()))?;
        }
    }
    FiniteGroup::from_table(name, table)
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
    fn gaussian_conjugation() {
        let k = field(&[1, 0, 1]);
        let a = automorphisms(&k, None).unwrap();
        assert_eq!(a.len(), 2);
        assert_eq!(a[1].image, k.neg(&k.theta()));
    }

    #[test]
    fn biquadratic_is_klein() {
        let k = field(&[1, 0, -10, 0, 1]);
        let a = automorphisms(&k, None).unwrap();
        assert_eq!(a.len(), 4);
        let g = automorphism_group("G", &a).unwrap();
        assert_eq!(g.exponent(), 2);
    }

    #[test]
    fn zeta8_exponent_maps() {
        let k = field(&[1, 0, 0, 0, 1]);
        let a = automorphisms(&k, None).unwrap();
        assert_eq!(a.len(), 4);
        for e in [1u64, 3, 5, 7] {
            let img = k.pow(&k.theta(), e);
            assert!(a.iter().any(|x| x.image == img));
        }
    }

    #[test]
    fn pure_cubic_has_only_identity() {
        let basis = vec![
            vec![BigRational::one(), BigRational::zero(), BigRational::zero()],
            vec![BigRational::zero(), BigRational::one(), BigRational::zero()],
            vec![BigRational::zero(), BigRational::zero(), BigRational::one()],
        ];
        let k = make_field("Q(2^(1/3))", &Poly::from_i64(&[-2, 0, 0, 1]), Some(basis), 128).unwrap();
        assert_eq!(automorphisms(&k, None).unwrap().len(), 1);
    }

    #[test]
    fn hints_are_verified() {
        let k = field(&[1, 0, 1]);
        let bad = k.add(&k.theta(), &k.one());
        assert!(automorphisms(&k, Some(&[bad])).is_err());
        let good = k.neg(&k.theta());
        assert_eq!(automorphisms(&k, Some(&[good])).unwrap().len(), 2);
    }
}

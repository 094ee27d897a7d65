//! Galois action on class groups, idempotent traces on their p-layers, and
//! the norm/extension transfer identities.

use num::{BigInt, One};
use serde::Serialize;

use super::classgroup::ClassGroup;
use super::modp::{invmod, mulmod, rank};
use super::Ideal;
use crate::error::{Error, Result};
use crate::exact::abelian::p_valuation;
use crate::exact::matrix::{hnf, integer_kernel, IntMatrix};
use crate::field::auts::Automorphism;
use crate::field::subfield::Subfield;
use crate::field::torsion::TorsionUnits;
use crate::field::NumberField;
use crate::group::FiniteGroup;

/// Column `j` of `matrices[σ]` is the class of `σ(g_j)` for the class-group
/// generator `g_j`.
#[derive(Clone, Debug, Serialize)]
pub struct ClassAction {
    pub invariants: Vec<u64>,
    pub matrices: Vec<Vec<Vec<u64>>>,
}

impl ClassAction {
    pub fn apply(&self, sigma: usize, c: &[u64]) -> Vec<u64> {
        let m = &self.matrices[sigma];
        self.invariants
            .iter()
            .enumerate()
            .map(|(i, &d)| {
                let s: u128 = c.iter().zip(m).map(|(&cj, col)| cj as u128 * col[i] as u128).sum();
                (s % d as u128) as u64
            })
            .collect()
    }

    fn compose(&self, a: usize, b: usize) -> Vec<Vec<u64>> {
        self.matrices[b].iter().map(|col| self.apply(a, col)).collect()
    }
}

pub fn galois_action_on_classes(
    l: &NumberField,
    cg: &ClassGroup,
    auts: &[Automorphism],
    group: &FiniteGroup,
) -> Result<ClassAction> {
    let invariants = cg.structure.invariants().to_vec();
    let mut matrices = Vec::with_capacity(auts.len());
    for s in auts {
        let cols = cg
            .generators
            .iter()
            .map(|g| cg.class_of(l, &g.apply(s)))
            .collect::<Result<Vec<_>>>()?;
        matrices.push(cols);
    }
    let act = ClassAction { invariants, matrices };
    for a in 0..auts.len() {
        for b in 0..auts.len() {
            if act.compose(a, b) != act.matrices[group.mul(a, b)] {
                return Err(Error::Numerical("class action is not a homomorphism".into()));
            }
        }
    }
    Ok(act)
}

/// `ε_H` acting on the level-`ν` layer
/// `(p^{ν-1} Cl_p ∩ Cl[p]) / (p^ν Cl_p ∩ Cl[p])`, an `F_p`-space of
/// dimension `λ_{p,ν}`.
#[derive(Clone, Debug, Serialize)]
pub struct LayerTrace {
    pub p: u64,
    pub level: u32,
    /// `dim` of the layer, which is `λ_{p,ν}` of the top field.
    pub dimension: usize,
    /// Trace of `ε_H` in `F_p`.
    pub trace_mod_p: u64,
    /// Rank of the projector `ε_H`; for an idempotent this is its trace as an
    /// integer.
    pub rank: usize,
}

pub fn idempotent_trace_on_classgroup(
    action: &ClassAction,
    h: &[usize],
    p: u64,
    level: u32,
) -> Result<LayerTrace> {
    if h.len() as u64 % p == 0 {
        return Err(Error::WildCase { p, order: h.len() });
    }
    if level == 0 {
        return Err(Error::InvalidInput("level must be at least 1".into()));
    }
    let inv = &action.invariants;
    let layer: Vec<usize> = (0..inv.len()).filter(|&i| p_valuation(inv[i], p) == level).collect();
    let upper: Vec<usize> = (0..inv.len()).filter(|&i| p_valuation(inv[i], p) >= level).collect();
    let dimension = layer.len();
    let hinv = invmod(h.len() as u64 % p, p);
    let mut e = vec![vec![0u64; dimension]; dimension];
    for (ci, &i) in layer.iter().enumerate() {
        // u_i = (d_i / p) g_i
        let mut u = vec![0u64; inv.len()];
        u[i] = inv[i] / p;
        let mut y = vec![0u64; inv.len()];
        for &s in h {
            let img = action.apply(s, &u);
            for j in 0..inv.len() {
                y[j] = (y[j] + img[j]) % inv[j];
            }
        }
        for &j in &upper {
            let unit = inv[j] / p;
            if y[j] % unit != 0 {
                return Err(Error::Numerical("layer is not stable under the action".into()));
            }
            if let Some(rj) = layer.iter().position(|&x| x == j) {
                e[rj][ci] = mulmod((y[j] / unit) % p, hinv, p);
            }
        }
    }
    let trace_mod_p = (0..dimension).fold(0u64, |acc, i| (acc + e[i][i]) % p);
    let r = if dimension == 0 { 0 } else { rank(&e, p) };
    Ok(LayerTrace { p, level, dimension, trace_mod_p, rank: r })
}

/// `a O_L` for an ideal `a` of the subfield.
pub fn extend_ideal(l: &NumberField, sub: &Subfield, a: &Ideal) -> Result<Ideal> {
    let gens: Vec<Vec<BigInt>> = a.basis_columns().iter().map(|c| sub.include_coords(c)).collect();
    let num = Ideal::from_generators(l, &gens)?;
    let n = l.degree();
    Ideal::from_module_basis(&IntMatrix::from_cols(n, &num.basis_columns()), a.denominator().clone())
}

/// `A ∩ O_K` for an integral ideal `A` of `L`.
pub fn contract_ideal(l: &NumberField, sub: &Subfield, a: &Ideal) -> Result<Ideal> {
    let n = l.degree();
    let m = sub.degree();
    // ι v = H w
    let h = a.hnf();
    let mut big = IntMatrix::zeros(n, m + n);
    for i in 0..n {
        for j in 0..m {
            big.set(i, j, sub.inclusion.get(i, j).clone());
        }
        for j in 0..n {
            big.set(i, m + j, -h.get(i, j).clone());
        }
    }
    let ker = integer_kernel(&big);
    let cols: Vec<Vec<BigInt>> = (0..ker.ncols()).map(|c| (0..m).map(|r| ker.get(r, c).clone()).collect()).collect();
    let basis = hnf(&IntMatrix::from_cols(m, &cols));
    Ideal::from_module_basis(&basis, BigInt::one())
}

/// `N_{L/K}(A)` as the contraction of `prod_{h in H} h(A)`.
pub fn relative_norm(l: &NumberField, sub: &Subfield, auts: &[Automorphism], a: &Ideal) -> Result<Ideal> {
    let num = a.numerator();
    let mut acc = Ideal::unit(l);
    for &s in &sub.subgroup {
        acc = acc.mul(l, &num.apply(&auts[s]));
    }
    let c = contract_ideal(l, sub, &acc)?;
    let dpow = num::pow(a.denominator().clone(), sub.subgroup.len());
    Ideal::from_module_basis(c.hnf(), dpow)
}

#[derive(Clone, Debug, Serialize)]
pub struct TransferRow {
    pub object: String,
    pub identity: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TransferReport {
    pub subgroup_order: usize,
    pub rows: Vec<TransferRow>,
}

impl TransferReport {
    pub fn pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }
}

/// Check `τ_* τ^* = |H|` on `Cl(K)` and `τ^* τ_* = sum_{h in H} h` on
/// `Cl(L)`, and the same pair of identities on roots of unity.
pub fn transfer_check(
    l: &NumberField,
    sub: &Subfield,
    auts: &[Automorphism],
    cl_l: &ClassGroup,
    cl_k: &ClassGroup,
    mu_l: &TorsionUnits,
    mu_k: &TorsionUnits,
) -> Result<TransferReport> {
    let k = &sub.field;
    let order = sub.subgroup.len();
    let mut rows = Vec::new();

    let mut ok = true;
    for g in &cl_k.generators {
        let c = cl_k.class_of(k, g)?;
        let back = relative_norm(l, sub, auts, &extend_ideal(l, sub, g)?)?;
        let lhs = cl_k.class_of(k, &back)?;
        let rhs: Vec<u64> = c.iter().zip(cl_k.structure.invariants()).map(|(x, d)| (x * order as u64) % d).collect();
        ok &= lhs == rhs;
    }
    rows.push(TransferRow { object: format!("Cl({})", k.name()), identity: format!("norm(extend(a)) = a^{order}"), pass: ok });

    let mut ok = true;
    for g in &cl_l.generators {
        let up = extend_ideal(l, sub, &relative_norm(l, sub, auts, g)?)?;
        let lhs = cl_l.class_of(l, &up)?;
        let mut rhs = vec![0u64; cl_l.structure.invariants().len()];
        for &s in &sub.subgroup {
            rhs = cl_l.add_classes(&rhs, &cl_l.class_of(l, &g.apply(&auts[s]))?);
        }
        ok &= lhs == rhs;
    }
    rows.push(TransferRow { object: format!("Cl({})", l.name()), identity: "extend(norm(A)) = sum of conjugates".into(), pass: ok });

    // roots of unity: N(ι ζ_K) = ζ_K^{|H|}
    let zk = sub.include(l, &mu_k.generator);
    let mut nz = l.one();
    for &s in &sub.subgroup {
        nz = l.mul(&nz, &auts[s].apply(&zk));
    }
    let ok = sub.restrict(l, &nz).is_some_and(|x| x == k.pow(&mu_k.generator, order as u64));
    rows.push(TransferRow { object: format!("mu({})", k.name()), identity: format!("norm(z) = z^{order}"), pass: ok });

    // ι N(ζ_L) = prod h(ζ_L), and N(ζ_L) is a root of unity of K
    let mut nl = l.one();
    for &s in &sub.subgroup {
        nl = l.mul(&nl, &auts[s].apply(&mu_l.generator));
    }
    let ok = match sub.restrict(l, &nl) {
        Some(x) => {
            let w = mu_k.order;
            sub.include(l, &x) == nl && k.pow(&x, w) == k.one() && !x.is_zero()
        }
        None => false,
    };
    rows.push(TransferRow { object: format!("mu({})", l.name()), identity: "extend(norm(z)) = product of conjugates".into(), pass: ok });

    Ok(TransferReport { subgroup_order: order, rows })
}

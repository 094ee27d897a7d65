//! Acceptance suite: one pass/fail line per criterion.
//!
//! Expected values are reproduced from oracles written here (binary
//! quadratic forms, box enumeration, hand expansion in the group-element
//! basis, closed forms) rather than taken from the library.

use std::collections::HashMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use num::{BigInt, BigRational, One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use galrel_core::arakelov::{
    brauer_inputs, check_brauer_identity, check_genus_relation, degree, principal_divisor, pullback, pushforward,
    ArakelovDivisor,
};
use galrel_core::corpus;
use galrel_core::exact::matrix::hermite;
use galrel_core::exact::{enumerate_short_vectors, hnf, snf, Ball, GramMatrix, IntMatrix};
use galrel_core::extension::GaloisExtension;
use galrel_core::field::torsion::{nu_valuation, torsion_units};
use galrel_core::field::{NumberField, PlaceKind};
use galrel_core::group::{build_group, find_relations, norm_idempotent, FiniteGroup, Subgroup};
use galrel_core::ideal::principal::supplied_unit;
use galrel_core::ideal::{class_group, class_group_with_units, factor_prime, lambda_table, zeta_partial};
use galrel_core::theta::{b_divisor, eta, eta_relation_residual, trace_eta, BVariant, InfiniteDivisor};
use galrel_core::theta::check_change_metric;

const BITS: u32 = 128;

type Check = Result<String, String>;

macro_rules! ensure {
    ($c:expr, $($fmt:tt)+) => {
        if !$c {
            return Err(format!($($fmt)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

struct Corpus {
    cache: HashMap<String, GaloisExtension>,
}

impl Corpus {
    fn ext(&mut self, name: &str) -> Result<&GaloisExtension, String> {
        if !self.cache.contains_key(name) {
            let spec = ok(corpus::fixture(name))?;
            let k = ok(spec.build(BITS))?;
            let hints = ok(spec.hints(&k))?;
            let e = ok(GaloisExtension::new(k, hints.as_deref()))?;
            self.cache.insert(name.to_string(), e);
        }
        Ok(&self.cache[name])
    }
}

// ---------- oracles ----------

/// `sum_H r_H ε_H` evaluated at group element `g`, by hand expansion.
fn expand_relation(g: &FiniteGroup, subs: &[Subgroup], coeffs: &[i64]) -> Vec<BigRational> {
    (0..g.order())
        .map(|x| {
            subs.iter().zip(coeffs).fold(BigRational::zero(), |acc, (h, &c)| {
                if h.elements().contains(&x) {
                    acc + BigRational::new(BigInt::from(c), BigInt::from(h.order()))
                } else {
                    acc
                }
            })
        })
        .collect()
}

fn isqrt(n: i64) -> i64 {
    let mut r = (n as f64).sqrt() as i64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Class number of the imaginary quadratic order of discriminant `d < 0` by
/// counting reduced forms.
fn forms_h_negative(d: i64) -> u64 {
    let mut h = 0;
    let mut a = 1;
    while 3 * a * a <= -d {
        for b in -a + 1..=a {
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (c == a && b < 0) {
                continue;
            }
            h += 1;
        }
        a += 1;
    }
    h
}

/// Narrow class number of discriminant `d > 0` as the number of cycles of
/// reduced indefinite forms.
fn forms_h_plus(d: i64) -> u64 {
    let sd = (d as f64).sqrt();
    let mut reduced = Vec::new();
    for b in 1..=isqrt(d) {
        if (b * b - d) % 4 != 0 {
            continue;
        }
        let ac = (b * b - d) / 4;
        for a in 1..=ac.abs() {
            if ac % a != 0 {
                continue;
            }
            for sa in [a, -a] {
                let (fa, fb) = (sa as f64, b as f64);
                if (sd - 2.0 * fa.abs()).abs() < fb && fb < sd {
                    reduced.push((sa, b, ac / sa));
                }
            }
        }
    }
    let rho = |(_, b, c): (i64, i64, i64)| {
        let m = 2 * c.abs();
        // b' = -b mod 2|c|, placed in (sqrt d - 2|c|, sqrt d)
        let mut nb = (-b).rem_euclid(m);
        while (nb as f64) < sd - m as f64 {
            nb += m;
        }
        while (nb as f64) > sd {
            nb -= m;
        }
        (c, nb, (nb * nb - d) / (4 * c))
    };
    let mut seen = vec![false; reduced.len()];
    let mut cycles = 0;
    for i in 0..reduced.len() {
        if seen[i] {
            continue;
        }
        cycles += 1;
        let mut f = reduced[i];
        loop {
            let j = reduced.iter().position(|&g| g == f).expect("rho keeps forms reduced");
            if seen[j] {
                break;
            }
            seen[j] = true;
            f = rho(f);
        }
    }
    cycles
}

/// Period length of the continued fraction of `sqrt(n)`.
fn cf_period(n: i64) -> usize {
    let a0 = isqrt(n);
    let (mut m, mut d, mut a) = (0, 1, a0);
    let mut len = 0;
    while a != 2 * a0 {
        m = d * a - m;
        d = (n - m * m) / d;
        a = (a0 + m) / d;
        len += 1;
    }
    len
}

/// Wide class number of a quadratic field of discriminant `d`.
fn forms_class_number(d: i64) -> u64 {
    if d < 0 {
        return forms_h_negative(d);
    }
    let hp = forms_h_plus(d);
    let d0 = if d % 4 == 0 { d / 4 } else { d };
    // N(ε) = -1 exactly when the period of sqrt(d0) is odd; valid here since
    // the corpus only uses d0 ≡ 2, 3 mod 4
    if cf_period(d0) % 2 == 1 {
        hp
    } else {
        hp / 2
    }
}

fn invert(n: usize, g: &[f64]) -> Vec<f64> {
    let mut a: Vec<Vec<f64>> = (0..n).map(|i| {
        let mut r = g[i * n..(i + 1) * n].to_vec();
        r.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
        r
    }).collect();
    for c in 0..n {
        let p = (c..n).max_by(|&x, &y| a[x][c].abs().total_cmp(&a[y][c].abs())).unwrap();
        a.swap(c, p);
        let piv = a[c][c];
        a[c].iter_mut().for_each(|v| *v /= piv);
        for r in 0..n {
            if r != c {
                let f = a[r][c];
                let row = a[c].clone();
                a[r].iter_mut().zip(row).for_each(|(v, w)| *v -= f * w);
            }
        }
    }
    (0..n * n).map(|k| a[k / n][n + k % n]).collect()
}

/// All integer vectors in the box that contains every `v` with
/// `v^T G v <= r2`.
fn box_vectors(n: usize, g: &[f64], r2: f64) -> Vec<Vec<i64>> {
    let inv = invert(n, g);
    let bound: Vec<i64> = (0..n).map(|i| (r2 * inv[i * n + i]).sqrt().floor() as i64 + 1).collect();
    let mut out = vec![vec![]];
    for b in bound {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| (-b..=b).map(move |x| {
                let mut w = v.clone();
                w.push(x);
                w
            }))
            .collect();
    }
    out
}

/// `w` by scanning the T2 box for elements with `x^120 = 1`; every root of
/// unity in degree at most 4 has order dividing 120.
fn roots_of_unity_by_box(k: &NumberField) -> u64 {
    let n = k.degree();
    assert!(n <= 4, "box oracle is for degree at most 4");
    let g = k.t2_gram().mids();
    let one = k.one();
    box_vectors(n, &g, n as f64 + 0.5)
        .into_iter()
        .filter(|v| v.iter().any(|&x| x != 0))
        .filter(|v| k.pow(&k.from_basis_coords_i64(v), 120) == one)
        .count() as u64
}

fn by_discriminant<T: Copy>(table: &[(i64, T)], d: &BigInt) -> Option<T> {
    table.iter().find(|(x, _)| BigInt::from(*x) == *d).map(|(_, v)| *v)
}

// ---------- criteria ----------

fn relation_discovery() -> Check {
    let g = ok(build_group("V4"))?;
    let (subs, rels) = find_relations(&g);
    ensure!(rels.len() == 1, "V4: {} relations", rels.len());
    let r = &rels[0].coeffs;
    let s = r[subs.iter().position(|h| h.order() == 2).unwrap()];
    for (h, &c) in subs.iter().zip(r) {
        let want = match h.order() {
            2 => s,
            1 => -s,
            _ => -2 * s,
        };
        ensure!(c == want && s.abs() == 1, "V4 relation {r:?}");
    }
    ensure!(expand_relation(&g, &subs, r).iter().all(|x| x.is_zero()), "V4 relation does not expand to 0");

    let g = ok(build_group("S3"))?;
    let (subs, rels) = find_relations(&g);
    ensure!(rels.len() == 1, "S3: {} relations", rels.len());
    let r = &rels[0].coeffs;
    let s = r[0].signum();
    for (h, &c) in subs.iter().zip(r) {
        let want = match h.order() {
            1 => 3,
            2 => -2,
            3 => -3,
            _ => 6,
        } * s;
        ensure!(c == want, "S3 relation {r:?}");
    }
    ensure!(expand_relation(&g, &subs, r).iter().all(|x| x.is_zero()), "S3 relation does not expand to 0");

    for p in [2, 3, 5, 7] {
        let g = ok(build_group(&format!("C{p}")))?;
        ensure!(find_relations(&g).1.is_empty(), "C{p} has a relation");
    }
    Ok("V4 (1,1,1,-1,-2), S3 (3,-2,-2,-2,-3,6) up to sign; C2,C3,C5,C7 none".into())
}

fn lambda_relation(c: &mut Corpus) -> Check {
    let mut notes = Vec::new();
    for name in ["q_sqrt2_sqrt3", "q_zeta8", "q_zeta12", "x3_minus_2"] {
        let t = Instant::now();
        let e = c.ext(name)?;
        let lam: Vec<i64> = e.subfields.iter().map(|s| s.field.unit_rank() as i64).collect();
        ensure!(!e.relations.is_empty(), "{name}: no relations");
        for rel in &e.relations {
            let terms: Vec<String> = rel.support().map(|(i, r)| format!("{r}*{}", lam[i])).collect();
            let sum = rel.pair(&lam);
            ensure!(sum == 0, "{name}: {} = {sum}", terms.join(" + "));
        }
        notes.push(format!("{name} {:.1}s", t.elapsed().as_secs_f64()));
    }
    Ok(notes.join(", "))
}

fn class_group_instance(c: &mut Corpus) -> Check {
    let e = c.ext("q_i_sqrtm23")?;
    let cl = ok(class_group(&e.field))?;
    let lt = lambda_table(&cl.structure);
    let three: Vec<u64> = cl.structure.invariants().iter().map(|&d| {
        let mut m = 1;
        let mut d = d;
        while d % 3 == 0 {
            m *= 3;
            d /= 3;
        }
        m
    }).filter(|&m| m > 1).collect();
    ensure!(three == vec![3], "Cl(L)_3 has invariants {three:?}");
    ensure!(lt.get(3, 1) == 1, "lambda_(3,1)(L) = {}", lt.get(3, 1));

    let oracle = [(-4i64, forms_class_number(-4)), (-23, forms_class_number(-23)), (92, forms_class_number(92)), (1, 1)];
    ensure!(oracle[..3].iter().map(|x| x.1).collect::<Vec<_>>() == vec![1, 3, 1], "forms oracle gives {oracle:?}");
    let mut lam = Vec::new();
    let mut seen = Vec::new();
    for (i, s) in e.subfields.iter().enumerate() {
        let cg = if i == e.trivial_index() { cl.clone() } else { ok(class_group(&s.field))? };
        if let Some(h) = by_discriminant(&oracle, s.field.discriminant()) {
            ensure!(cg.order() == h, "h({}) = {} but the forms oracle gives {h}", s.field.name(), cg.order());
            seen.push(format!("h({})={h}", s.field.discriminant()));
        }
        lam.push(lambda_table(&cg.structure).get(3, 1) as i64);
    }
    ensure!(seen.len() == 4, "only matched {seen:?}");
    for rel in &e.relations {
        ensure!(rel.pair(&lam) == 0, "sum r_H lambda_(H,3,1) = {}", rel.pair(&lam));
    }
    Ok(format!("Cl(L)_3 = Z/3, h(L)={}, {}, lambda sum 0", cl.order(), seen.join(" ")))
}

fn torsion_instance(c: &mut Corpus) -> Check {
    let e = c.ext("q_zeta12")?;
    let expected = [(144i64, 12u64), (-4, 4), (-3, 6), (12, 2), (1, 2)];
    let mut w = Vec::new();
    let mut nu = Vec::new();
    let mut got = Vec::new();
    for s in &e.subfields {
        let t = ok(torsion_units(&s.field))?;
        let boxed = roots_of_unity_by_box(&s.field);
        ensure!(t.order == boxed, "w({}) = {} but the box scan finds {boxed}", s.field.name(), t.order);
        let want = by_discriminant(&expected, s.field.discriminant())
            .ok_or_else(|| format!("unexpected subfield discriminant {}", s.field.discriminant()))?;
        ensure!(t.order == want, "w({}) = {}, expected {want}", s.field.name(), t.order);
        w.push(t.order);
        nu.push(nu_valuation(&t, 3) as i64);
        got.push((s.field.discriminant().clone(), t.order));
    }
    got.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    let ws: Vec<u64> = got.iter().map(|x| x.1).collect();
    ensure!(ws == vec![12, 6, 4, 2, 2], "w values {ws:?}");
    for rel in &e.relations {
        ensure!(rel.pair(&nu) == 0, "sum r_H nu(H,3) = {}", rel.pair(&nu));
    }
    Ok(format!("w = {w:?} by subgroup, sum r_H nu(H,3) = 0"))
}

fn genus_relation(c: &mut Corpus) -> Check {
    let e = c.ext("q_zeta8")?;
    let w: Vec<u64> = e.subfields.iter().map(|s| torsion_units(&s.field).map(|t| t.order)).collect::<Result<_, _>>().map_err(|x| x.to_string())?;
    let mut worst = 0.0f64;
    for rel in &e.relations {
        let g = ok(check_genus_relation(e, rel, &w))?;
        let bound = g.residual.mid.abs() + g.residual.rad;
        ensure!(bound < 1e-15, "residual bound {bound:e}");
        ensure!(g.residual_direct.contains_zero(), "term-by-term sum {:?} excludes 0", g.residual_direct);
        worst = worst.max(bound);
    }
    Ok(format!("|residual| <= {worst:e}"))
}

/// `log h + log Reg - log w` for every subfield of `Q(i, sqrt(-23))`,
/// recomputed without the library's unit or class group searches wherever
/// a closed form or oracle exists.
fn brauer_identity(c: &mut Corpus) -> Check {
    let e = c.ext("q_i_sqrtm23")?;
    let l = &e.field;
    let rel = e.relations.first().ok_or("no relation")?;

    // path A: the library end to end
    let inputs = ok(brauer_inputs(e, rel, None))?;
    let report = ok(check_brauer_identity(e, rel, &inputs))?;
    ensure!(report.routes_agree(), "library routes disagree: {:?} vs {:?}", report.residual, report.residual_grouped);
    let json = ok(serde_json::to_value(&inputs))?;
    for row in json.as_array().ok_or("inputs are not an array")? {
        for key in ["h", "regulator", "w"] {
            ensure!(row[key]["provenance"].is_string(), "missing provenance for {key} in {row}");
        }
    }

    // path B: explicit unit of L. With s = (θ^2 + 24)/2 = sqrt(23) and
    // i = θ(θ^2 + 26)/44, η = (5 + s)(1 - i)/2 satisfies η^2 = -i ε with
    // ε = 24 + 5s, so [E_L : μ_L E_K] = 2 and Reg_L = log ε.
    let th = l.theta();
    let th2 = l.mul(&th, &th);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let s = l.scale(&l.add(&th2, &l.from_int(24)), &half);
    let i = l.scale(&l.mul(&th, &l.add(&th2, &l.from_int(26))), &BigRational::new(BigInt::one(), BigInt::from(44)));
    ensure!(l.mul(&s, &s) == l.from_int(23) && l.mul(&i, &i) == l.from_int(-1), "sqrt(23) or i misidentified");
    let eta_u = l.scale(&l.mul(&l.add(&l.from_int(5), &s), &l.sub(&l.one(), &i)), &half);
    let eps = l.add(&l.from_int(24), &l.scale(&s, &BigRational::from_integer(5.into())));
    ensure!(l.mul(&eta_u, &eta_u) == l.neg(&l.mul(&i, &eps)), "eta^2 != -i eps");
    ensure!(l.norm(&eta_u).abs().is_one(), "eta is not a unit");
    let reg_closed = (24.0 + 5.0 * 23f64.sqrt()).ln();
    let h_l = ok(class_group_with_units(l, ok(supplied_unit(l, &eta_u))?))?.order();

    let table: [(i64, (u64, f64)); 4] = [
        (-4, (forms_class_number(-4), 1.0)),
        (-23, (forms_class_number(-23), 1.0)),
        (92, (forms_class_number(92), reg_closed)),
        (1, (1, 1.0)),
    ];
    let mut b = 0.0;
    let mut b_terms = Vec::new();
    for (idx, r) in rel.support() {
        let k = &e.subfields[idx].field;
        let (h, reg) = if idx == e.trivial_index() {
            (h_l, reg_closed)
        } else {
            by_discriminant(&table, k.discriminant()).ok_or_else(|| format!("no oracle row for {}", k.name()))?
        };
        let w = roots_of_unity_by_box(k);
        b += r as f64 * ((h as f64).ln() + reg.ln() - (w as f64).ln());
        b_terms.push(format!("{r}*({h},{w})"));
    }
    let a = report.residual;
    let diff = (a.mid - b).abs();
    ensure!(diff <= 1e-10 + a.rad, "library {:e} vs recomputed {b:e}", a.mid);
    Ok(format!("residual {:.3e} (±{:.1e}), recomputed {b:.3e}, |diff| {diff:.1e}; h(L)={h_l}", a.mid, a.rad))
}

fn zeta_relation(c: &mut Corpus) -> Check {
    let mut notes = Vec::new();
    for name in ["q_zeta8", "q_sqrt2_sqrt3"] {
        let e = c.ext(name)?;
        let z: Vec<_> = e.subfields.iter().map(|s| zeta_partial(&s.field, 2.0, 1000)).collect::<Result<_, _>>().map_err(|x| x.to_string())?;
        for rel in &e.relations {
            let mut sum = Ball::ZERO;
            let mut tail = 0.0;
            for (i, r) in rel.support() {
                sum = sum + z[i].value.ln().scale(r as f64);
                // log ζ moves by at most tail / partial when the tail is added
                tail += r.unsigned_abs() as f64 * z[i].tail_estimate / z[i].value.lower();
            }
            let bound = sum.mid.abs() + sum.rad;
            ensure!(bound <= tail, "{name}: |sum| {bound:e} exceeds tail {tail:e}");
            notes.push(format!("{name} |sum| {bound:.2e} <= {tail:.2e}"));
        }
    }
    Ok(notes.join(", "))
}

fn gaussian_sum(t: f64) -> f64 {
    (-30i64..=30).map(|n| (-std::f64::consts::PI * t * (n * n) as f64).exp()).sum()
}

fn eta_machinery(c: &mut Corpus) -> Check {
    let q = galrel_core::field::rationals();
    let tol = 1e-12;
    let e0 = ok(eta(&q, &InfiniteDivisor::zero(&q), tol))?;
    ensure!(e0.tail_bound <= tol, "tail {} above tol", e0.tail_bound);
    ensure!((e0.value.mid - 1.086434811213308).abs() <= 1e-10, "eta_0(Q) = {}", e0.value.mid);
    ensure!((e0.value.mid - gaussian_sum(1.0)).abs() <= 1e-10, "eta_0(Q) vs direct sum");

    let qi = c.ext("qi")?.field.clone();
    let ei = ok(eta(&qi, &InfiniteDivisor::zero(&qi), tol))?;
    let prod = gaussian_sum(2.0).powi(2);
    ensure!((ei.value.mid - prod).abs() <= 1e-10, "eta_0(Q(i)) = {} vs {prod}", ei.value.mid);

    let mut rng = ChaCha8Rng::seed_from_u64(0x6a6c);
    let (mut clean, mut ramified, mut ramified_agree) = (0, 0, 0);
    let mut trace_pairs = 0;
    let names: Vec<&str> = corpus::FIXTURES.iter().map(|(n, _)| *n).collect();
    for name in names {
        let e = c.ext(name)?;
        let l = &e.field;
        let proper: Vec<usize> = (0..e.subgroups.len()).filter(|&i| i != e.trivial_index()).collect();
        for sample in 0..20 {
            if proper.is_empty() {
                break;
            }
            let sub = &e.subfields[proper[sample % proper.len()]];
            let k = &sub.field;
            let x = k.from_basis_coords_i64(&(0..k.degree()).map(|_| rng.gen_range(-3..=3)).collect::<Vec<_>>());
            let avoid_ramified = sample % 2 == 0;
            let a: Vec<f64> = (0..k.places().len()).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let coeffs: Vec<f64> = l
                .places()
                .iter()
                .map(|w| {
                    let v = k.place_of_embedding(sub.embedding_restriction[w.embedding]);
                    let ram = w.kind == PlaceKind::Complex && k.places()[v].kind == PlaceKind::Real;
                    if ram && avoid_ramified {
                        0.0
                    } else {
                        a[v]
                    }
                })
                .collect();
            let d = ok(InfiniteDivisor::from_f64(l, &coeffs))?;
            let cm = ok(check_change_metric(l, sub, &d, &x))?;
            if cm.ramified_support {
                ramified += 1;
                ramified_agree += cm.agree as usize;
            } else {
                clean += 1;
                ensure!(cm.agree, "{name}: {:?} vs {:?} at x in {}", cm.left, cm.right, k.name());
            }
        }
        // trace eta against the trace-variant twist, D = 0
        if l.degree() <= 4 {
            let tol = 1e-9;
            for &i in &proper {
                let sub = &e.subfields[i];
                let k = &sub.field;
                let t = ok(trace_eta(l, sub, &InfiniteDivisor::zero(l), tol))?;
                let b = ok(eta(k, &ok(b_divisor(k, sub.subgroup.len(), BVariant::Trace))?, tol))?;
                let gap = (t.value.mid - b.value.mid).abs();
                ensure!(gap <= 2.0 * tol, "{name}: trace_eta {} vs B_trace eta {} on {}", t.value.mid, b.value.mid, k.name());
                trace_pairs += 1;
            }
        }
    }
    Ok(format!(
        "eta_0(Q)={:.12}, eta_0(Q(i)) matches product; change of metric {clean} unramified samples agree, {ramified} ramified samples ({ramified_agree} agree); {trace_pairs} trace pairs within 2 tol",
        e0.value.mid
    ))
}

fn eta_relation_routes(c: &mut Corpus) -> Check {
    let tol = 1e-8;
    let mut notes = Vec::new();
    for name in ["q_sqrt2_sqrt3", "q_zeta8"] {
        let e = c.ext(name)?;
        let zero = InfiniteDivisor::zero(&e.field);
        for variant in [BVariant::Paper, BVariant::Trace] {
            for rel in &e.relations {
                let r = ok(eta_relation_residual(e, rel, variant, &zero, tol))?;
                let gap = (r.residual.mid - r.residual_grouped.mid).abs();
                let allowed = 2.0 * tol + r.residual.rad + r.residual_grouped.rad;
                ensure!(r.routes_agree && gap <= allowed, "{name} {}: {:?} vs {:?}", variant.name(), r.residual, r.residual_grouped);
                notes.push(format!("{name}/{} residual {:.6e} gap {gap:.1e}", variant.name(), r.residual.mid));
            }
        }
    }
    Ok(notes.join(", "))
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, b: i64) -> IntMatrix {
    IntMatrix::from_rows((0..rows).map(|_| (0..cols).map(|_| BigInt::from(rng.gen_range(-b..=b))).collect()).collect())
}

fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> IntMatrix {
    let mut u = IntMatrix::identity(n);
    for _ in 0..3 * n {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i != j {
            let mut e = IntMatrix::identity(n);
            e.set(i, j, BigInt::from(rng.gen_range(-2..=2)));
            u = u.mul(&e);
        }
    }
    u
}

fn structural(c: &mut Corpus) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(10);

    for spec in ["V4", "S3", "D4", "Q8", "C6", "A4", "C2xC4"] {
        let g = ok(build_group(spec))?;
        let (subs, rels) = find_relations(&g);
        for h in &subs {
            let e = norm_idempotent(&g, h);
            ensure!(e.mul(&e, &g) == e, "{spec}: eps_H not idempotent");
        }
        for r in &rels {
            ensure!(expand_relation(&g, &subs, &r.coeffs).iter().all(|x| x.is_zero()), "{spec}: relation does not vanish");
        }
    }

    let mut ef_fields = 0;
    for (name, spec) in corpus::all() {
        let k = ok(spec.build(BITS))?;
        for p in [2u64, 3, 5, 7, 11, 13, 23, 29, 31, 37] {
            let s = ok(factor_prime(&k, p))?;
            ensure!(s.ef_sum() as usize == k.degree(), "{name}: sum ef over {p} is {}", s.ef_sum());
        }
        ef_fields += 1;
    }

    let mut degree_checks = 0;
    for name in ["qi", "q_sqrt2_sqrt3", "q_zeta8", "q_i_sqrtm23"] {
        let e = c.ext(name)?;
        let l = &e.field;
        for _ in 0..4 {
            let f = l.from_basis_coords_i64(&(0..l.degree()).map(|_| rng.gen_range(-4..=4)).collect::<Vec<_>>());
            if f.is_zero() {
                continue;
            }
            ensure!(degree(&ok(principal_divisor(l, &f))?).contains_zero(), "{name}: deg div(f) != 0");
            degree_checks += 1;
        }
        for (i, sub) in e.subfields.iter().enumerate() {
            if i == e.trivial_index() {
                continue;
            }
            let k = &sub.field;
            let n = (l.degree() / k.degree()) as i64;
            let p = [2u64, 3, 5][rng.gen_range(0..3)];
            let q = ok(factor_prime(k, p))?.primes.swap_remove(0);
            let mut dk = ok(ArakelovDivisor::infinite(k, (0..k.places().len()).map(|_| Ball::exact(rng.gen_range(-1.0..1.0))).collect()))?;
            dk.add_prime(q, rng.gen_range(1..=3));
            let up = ok(pullback(l, sub, &dk))?;
            let round = ok(pushforward(l, sub, &up))?;
            ensure!(round.agrees_with(&dk.scale(n)), "{name}: push(pull D) != [L:K] D on {}", k.name());
            ensure!((degree(&up) - degree(&dk).scale(n as f64)).contains_zero(), "{name}: deg pull D != [L:K] deg D");
            let big = ok(factor_prime(l, p))?.primes.swap_remove(0);
            let mut dl = ArakelovDivisor::zero(l);
            dl.add_prime(big, rng.gen_range(-2..=2).max(1));
            let down = ok(pushforward(l, sub, &dl))?;
            ensure!((degree(&down) - degree(&dl)).contains_zero(), "{name}: pushforward changes degree");
            degree_checks += 3;
        }
    }

    for _ in 0..25 {
        let m = random_matrix(&mut rng, 3, 4, 6);
        let s = snf(&m);
        ensure!(s.u.mul(&m).mul(&s.v) == s.d, "U M V != D");
        ensure!(s.u.det().abs().is_one() && s.v.det().abs().is_one(), "SNF transforms not unimodular");
        let diag = s.diagonal();
        for i in 0..3 {
            for j in 0..4 {
                if i != j {
                    ensure!(s.d.get(i, j).is_zero(), "SNF off-diagonal entry");
                }
            }
        }
        for w in diag.windows(2) {
            ensure!(w[0].is_zero() && w[1].is_zero() || !w[0].is_zero() && (&w[1] % &w[0]).is_zero(), "SNF divisibility {diag:?}");
        }
        let h = hnf(&m);
        ensure!(hnf(&h) == h, "HNF not idempotent");
        ensure!(hnf(&m.mul(&random_unimodular(&mut rng, 4))) == h, "HNF depends on the basis");
        let hf = hermite(&m);
        ensure!(hf.transform.det().abs().is_one(), "hermite transform not unimodular");
    }

    let mut enum_cases = 0;
    while enum_cases < 40 {
        let n = 1 + enum_cases % 4;
        let b = random_matrix(&mut rng, n, n, 3);
        if b.det().is_zero() {
            continue;
        }
        let g = b.transpose().mul(&b);
        let flat: Vec<f64> = (0..n * n).map(|k| g.get(k / n, k % n).to_string().parse().unwrap()).collect();
        let gram = ok(GramMatrix::from_f64(n, &flat))?;
        let r2 = rng.gen_range(1..20) as f64 + 0.5;
        let sv = ok(enumerate_short_vectors(&gram, r2))?;
        let by_box = box_vectors(n, &flat, r2)
            .into_iter()
            .filter(|v| v.iter().any(|&x| x != 0))
            .filter(|v| {
                let q: f64 = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| flat[i * n + j] * (v[i] * v[j]) as f64).sum();
                q <= r2
            })
            .count();
        ensure!(sv.all().len() == by_box, "dim {n}: enumeration {} vs box {by_box}", sv.all().len());
        enum_cases += 1;
    }

    Ok(format!(
        "idempotency on 7 groups, sum ef = n on {ef_fields} fields, {degree_checks} degree/transfer laws, SNF/HNF on 25 matrices, enumeration = box on {enum_cases} lattices"
    ))
}

fn main() {
    let mut corpus = Corpus { cache: HashMap::new() };
    let criteria: Vec<(&str, f64, Box<dyn FnOnce(&mut Corpus) -> Check>)> = vec![
        ("relation discovery", 1.0, Box::new(|_| relation_discovery())),
        ("unit-rank relation", 40.0, Box::new(lambda_relation)),
        ("class-group relation", 60.0, Box::new(class_group_instance)),
        ("torsion relation", 10.0, Box::new(torsion_instance)),
        ("genus relation", 5.0, Box::new(genus_relation)),
        ("Brauer identity", 60.0, Box::new(brauer_identity)),
        ("truncated zeta relation", 30.0, Box::new(zeta_relation)),
        ("eta machinery", 60.0, Box::new(eta_machinery)),
        ("eta relation routes", 120.0, Box::new(eta_relation_routes)),
        ("structural invariants", 120.0, Box::new(structural)),
    ];
    let mut failed = 0;
    for (n, (title, budget, f)) in criteria.into_iter().enumerate() {
        let t = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(|| f(&mut corpus))).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panic: {}", msg.unwrap_or_default()))
        });
        let secs = t.elapsed().as_secs_f64();
        let (pass, detail) = match out {
            Ok(d) if secs <= budget => (true, d),
            Ok(d) => (false, format!("{d}; over the {budget}s budget")),
            Err(d) => (false, d),
        };
        failed += !pass as usize;
        println!("criterion {:>2} {:<24} {} ({secs:.2}s) {detail}", n + 1, title, if pass { "PASS" } else { "FAIL" });
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all criteria passed");
}

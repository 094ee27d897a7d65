use std::sync::OnceLock;

use num::{BigInt, Signed, Zero};
use proptest::prelude::*;

use galrel_core::arakelov::{degree, principal_divisor, pullback, pushforward, ArakelovDivisor};
use galrel_core::corpus;
use galrel_core::exact::{hnf, snf, Ball, IntMatrix};
use galrel_core::extension::GaloisExtension;
use galrel_core::group::{build_group, find_relations, norm_idempotent, verify_relation};
use galrel_core::ideal::factor_prime;
use galrel_core::theta::{eta, metric_from_divisor, InfiniteDivisor};

fn ext(name: &str) -> GaloisExtension {
    let spec = corpus::fixture(name).unwrap();
    let k = spec.build(128).unwrap();
    let hints = spec.hints(&k).unwrap();
    GaloisExtension::new(k, hints.as_deref()).unwrap()
}

fn biquadratic() -> &'static GaloisExtension {
    static E: OnceLock<GaloisExtension> = OnceLock::new();
    E.get_or_init(|| ext("q_sqrt2_sqrt3"))
}

fn zeta8() -> &'static GaloisExtension {
    static E: OnceLock<GaloisExtension> = OnceLock::new();
    E.get_or_init(|| ext("q_zeta8"))
}

fn pick(which: bool) -> &'static GaloisExtension {
    if which {
        biquadratic()
    } else {
        zeta8()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn principal_divisors_have_degree_zero(which: bool, c in prop::collection::vec(-6i64..=6, 4)) {
        let l = &pick(which).field;
        let f = l.from_basis_coords_i64(&c);
        prop_assume!(!f.is_zero());
        let d = principal_divisor(l, &f).unwrap();
        prop_assert!(degree(&d).contains_zero());
    }

    #[test]
    fn push_after_pull_multiplies_by_the_degree(
        which: bool,
        sub in 1usize..5,
        coeffs in prop::collection::vec(-2.0f64..2.0, 2),
        p in prop::sample::select(vec![2u64, 3, 5, 7]),
        m in -3i64..=3,
    ) {
        let e = pick(which);
        let l = &e.field;
        let sub = &e.subfields[sub];
        let k = &sub.field;
        let inf = coeffs.iter().take(k.places().len()).map(|&a| Ball::exact(a)).collect();
        let mut d = ArakelovDivisor::infinite(k, inf).unwrap();
        d.add_prime(factor_prime(k, p).unwrap().primes.swap_remove(0), m);
        let n = (l.degree() / k.degree()) as i64;
        let up = pullback(l, sub, &d).unwrap();
        prop_assert!(pushforward(l, sub, &up).unwrap().agrees_with(&d.scale(n)));
        prop_assert!((degree(&up) - degree(&d).scale(n as f64)).contains_zero());
    }

    #[test]
    fn prime_splitting_fills_the_degree(which: bool, p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97])) {
        let l = &pick(which).field;
        prop_assert_eq!(factor_prime(l, p).unwrap().ef_sum() as usize, l.degree());
    }

    #[test]
    fn smith_form_is_exact(rows in prop::collection::vec(prop::collection::vec(-9i64..=9, 3), 3)) {
        let m = IntMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect());
        let s = snf(&m);
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d.clone());
        prop_assert!(s.u.det().abs() == BigInt::from(1) && s.v.det().abs() == BigInt::from(1));
        let diag = s.diagonal();
        for w in diag.windows(2) {
            prop_assert!(w[0].is_zero() && w[1].is_zero() || !w[0].is_zero() && (&w[1] % &w[0]).is_zero());
        }
        let h = hnf(&m);
        prop_assert_eq!(hnf(&h), h);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn eta_is_stable_under_more_precision(which: bool, coeffs in prop::collection::vec(-0.5f64..0.5, 4)) {
        let l = &pick(which).field;
        let a = InfiniteDivisor::from_f64(l, &coeffs[..l.places().len()]).unwrap();
        let fine = l.with_precision(256).unwrap();
        let tol = 1e-10;
        let x = eta(l, &a, tol).unwrap();
        let y = eta(&fine, &InfiniteDivisor { field: fine.name().to_string(), coeffs: a.coeffs.clone() }, tol).unwrap();
        prop_assert!((x.value.mid - y.value.mid).abs() <= 2.0 * tol + x.value.rad + y.value.rad);
    }

    #[test]
    fn norm_idempotents_are_idempotent(spec in prop::sample::select(vec!["V4", "S3", "D4", "Q8", "C6", "A4", "D5", "C2xC2xC2"])) {
        let g = build_group(spec).unwrap();
        let (subs, rels) = find_relations(&g);
        for h in &subs {
            let e = norm_idempotent(&g, h);
            prop_assert_eq!(e.mul(&e, &g), e);
        }
        for r in &rels {
            prop_assert!(verify_relation(&g, &subs, r).is_zero());
            prop_assert_eq!(r.coefficient_sum(), 0);
        }
    }
}

#[test]
fn zero_divisor_metric_is_t2() {
    for e in [biquadratic(), zeta8()] {
        let l = &e.field;
        let m = metric_from_divisor(l, &InfiniteDivisor::zero(l)).unwrap();
        let t2 = l.t2_gram();
        let n = l.degree();
        for i in 0..n {
            for j in 0..n {
                assert!(m.entry(i, j).overlaps(&t2.entry(i, j)));
            }
        }
    }
}

mod common;

use std::collections::BTreeSet;

use common::*;
use polylab::algebra::IntPoly;
use polylab::algebraic::{
    classify_irreducibility, cyclotomic, inverse_totient, low_degree_factors_enumerate, low_degree_factors_subset,
    rademacher_structural_certificate, Effort, FactorReport, Status, DEFAULT_CEILING,
};
use polylab::bounds::arith::{divisors, euler_phi};
use polylab::roots::find_roots;
use proptest::prelude::*;

fn factor_set(r: &FactorReport) -> BTreeSet<String> {
    r.polys().iter().map(|p| p.to_string()).collect()
}

fn divides_exactly(f: &IntPoly, g: &IntPoly) -> bool {
    let f = f.to_i64_coeffs().unwrap();
    let g = g.to_i64_coeffs().unwrap();
    rem_monic(&f, &g).iter().all(|&v| v == 0)
}

#[test]
fn enumerate_and_subset_agree_on_degree_ten() {
    for code in 0..1u64 << 10 {
        let f = poly(&sign_coeffs(10, code));
        let e = low_degree_factors_enumerate(&f, 2, Some(2.0), DEFAULT_CEILING).unwrap();
        let s = low_degree_factors_subset(&f, 2).unwrap();
        assert_eq!(factor_set(&e), factor_set(&s), "{f}");
    }
}

#[test]
fn enumerate_and_subset_agree_where_factors_exist() {
    for n in [6usize, 7, 9] {
        let mut found = 0;
        for code in 0..1u64 << n {
            let f = poly(&sign_coeffs(n, code));
            let e = low_degree_factors_enumerate(&f, 3, Some(2.0), DEFAULT_CEILING).unwrap();
            let s = low_degree_factors_subset(&f, 3).unwrap();
            assert_eq!(factor_set(&e), factor_set(&s), "{f}");
            found += e.factors.len();
        }
        assert!(found > 0);
    }
}

#[test]
fn classify_matches_trial_division_for_small_degrees() {
    for n in 1..=5 {
        for code in 0..1u64 << n {
            let c = sign_coeffs(n, code);
            let r = classify_irreducibility(&poly(&c), Effort::FULL).unwrap();
            let want = if n > 1 && small_sign_reducible(&c) {
                Status::Reducible
            } else {
                Status::Irreducible
            };
            assert_eq!(r.status, want, "{c:?}");
        }
    }
}

#[test]
fn structural_degrees_are_all_irreducible() {
    for n in [2usize, 4] {
        assert!(rademacher_structural_certificate(n));
        for code in 0..1u64 << n {
            let r = classify_irreducibility(&poly(&sign_coeffs(n, code)), Effort::FULL).unwrap();
            assert_eq!(r.status, Status::Irreducible);
        }
    }
}

#[test]
fn inverse_totient_sizes_are_linear() {
    for d in 1..=200u64 {
        let pre = inverse_totient(d);
        assert!(pre.len() as u64 <= 6 * d, "d = {d}");
        assert!(pre.iter().all(|&k| euler_phi(k) == d));
    }
    // independent count by scanning; phi(k) >= sqrt(k / 2), so k <= 2 d^2 suffices
    for d in 1..=40u64 {
        let scan = (1..=2 * d * d + 2).filter(|&k| euler_phi(k) == d).count();
        assert_eq!(inverse_totient(d).len(), scan, "d = {d}");
    }
}

#[test]
fn cyclotomic_degrees_and_products() {
    for kk in 1..=500u64 {
        assert_eq!(cyclotomic(kk).degree(), Some(euler_phi(kk) as usize));
        let prod = divisors(kk).into_iter().fold(IntPoly::one(), |acc, d| acc * cyclotomic(d));
        assert_eq!(prod, IntPoly::x_pow_minus_one(kk as usize), "kk = {kk}");
    }
}

fn sign_poly(min: usize, max: usize) -> impl Strategy<Value = Vec<i64>> {
    (min..=max).prop_flat_map(|n| any::<u64>().prop_map(move |code| sign_coeffs(n, code)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn reported_factors_divide(f in sign_poly(2, 16), k in 1usize..=4) {
        let f = poly(&f);
        for r in [
            low_degree_factors_subset(&f, k).unwrap(),
            classify_irreducibility(&f, Effort::default()).unwrap(),
        ] {
            prop_assert!(r.verify(&f));
            for g in r.polys() {
                prop_assert!(divides_exactly(&f, &g), "{} does not divide {}", g, f);
            }
        }
    }

    #[test]
    fn distinct_irreducible_factors_share_no_root(f in sign_poly(4, 14)) {
        let fp = poly(&f);
        let n = f.len() - 1;
        let r = low_degree_factors_subset(&fp, n - 1).unwrap();
        prop_assume!(r.status != Status::Unknown);
        let irreducible: Vec<IntPoly> = r
            .polys()
            .into_iter()
            .filter(|g| classify_irreducibility(g, Effort::FULL).unwrap().status == Status::Irreducible)
            .collect();
        let roots: Vec<_> = irreducible.iter().map(|g| find_roots(g).unwrap().roots).collect();
        for i in 0..roots.len() {
            for j in i + 1..roots.len() {
                for a in &roots[i] {
                    for b in &roots[j] {
                        prop_assert!((a - b).norm() > 1e-6, "{} and {} share a root", irreducible[i], irreducible[j]);
                    }
                }
            }
        }
    }
}

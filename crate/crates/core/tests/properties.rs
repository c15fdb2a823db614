use num_bigint::BigInt;
use proptest::prelude::*;

use modform::characters::DirichletCharacter;
use modform::cusps::{canonical, equivalent, representatives, Cusp};
use modform::numtheory::gcd;
use modform::projection::{basis_keys, eis_cusp_constant, orthogonality_check, project};
use modform::qseries::eta_qexp;
use modform::theta::{diagonal_gauss_sum, QuadraticForm};
use modform::{CycNumber, Rational};

fn brute_diagonal_sum(alphas: &[i64], a: i64, c: u64) -> CycNumber {
    let c_i = c as i64;
    let mut total = CycNumber::zero();
    let mut x = vec![0i64; alphas.len()];
    loop {
        let v: i64 = alphas.iter().zip(&x).map(|(al, xi)| al * xi * xi).sum();
        total += &CycNumber::exp_2pi_i(&Rational::new(BigInt::from(a * v), BigInt::from(c_i)));
        let mut j = 0;
        while j < x.len() {
            x[j] += 1;
            if x[j] < c_i {
                break;
            }
            x[j] = 0;
            j += 1;
        }
        if j == x.len() {
            return total;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn character_values_are_multiplicative(modulus in 1u64..60, idx in 0usize..64, m in 1i64..200, n in 1i64..200) {
        let all = DirichletCharacter::enumerate(modulus);
        let chi = &all[idx % all.len()];
        prop_assert_eq!(chi.eval(m * n), &chi.eval(m) * &chi.eval(n));
        prop_assert_eq!(chi.eval(m + modulus as i64), chi.eval(m));
    }

    #[test]
    fn primitive_gauss_sums_have_norm_conductor(m in 1u64..40, idx in 0usize..64) {
        let prims = DirichletCharacter::primitive_characters(m);
        prop_assume!(!prims.is_empty());
        let chi = &prims[idx % prims.len()];
        let g = chi.gauss_sum().unwrap();
        prop_assert_eq!(g.norm_sq(), CycNumber::from_int(m));
    }

    #[test]
    fn diagonal_gauss_sum_matches_enumeration(
        alphas in prop::collection::vec(1i64..5, 1..3),
        c in 1u64..10,
        a in 1i64..10,
    ) {
        prop_assume!(gcd(a, c as i64) == 1);
        prop_assert_eq!(diagonal_gauss_sum(&alphas, a, c).unwrap(), brute_diagonal_sum(&alphas, a, c));
    }

    #[test]
    fn theta_exp_sum_depends_on_a_mod_c(alphas in prop::collection::vec(1i64..4, 2..=2), c in 2u64..12, a in 1i64..12) {
        prop_assume!(gcd(a, c as i64) == 1);
        let mut d = alphas.clone();
        d.extend(alphas.iter());
        let form = QuadraticForm::diagonal(&d).unwrap();
        prop_assert_eq!(form.exp_sum(a, c).unwrap(), form.exp_sum(a + c as i64, c).unwrap());
    }

    #[test]
    fn cusp_canonicalisation_is_stable(level in 1u64..80, a in -50i64..50, c in 1u64..80) {
        prop_assume!(gcd(a, c as i64) == 1);
        let x = Cusp::new(a, c);
        let y = canonical(x, level);
        prop_assert!(equivalent(x, y, level));
        prop_assert_eq!(canonical(y, level), y);
        prop_assert!(representatives(level).contains(&y));
    }

    #[test]
    fn orthogonality_holds_for_random_pairs(level in 1u64..48, k in 2u32..7) {
        let chars = DirichletCharacter::enumerate(level);
        for chi in chars.iter().filter(|c| c.parity() == if k % 2 == 0 { 1 } else { -1 }).take(4) {
            let Ok(keys) = basis_keys(k, level, chi) else { continue };
            let mut seen = std::collections::HashSet::new();
            for key in keys {
                if seen.insert((key.eps.clone(), key.psi.clone())) {
                    let report = orthogonality_check(k, level, &key.eps, &key.psi);
                    prop_assert!(report.holds(), "N={} k={} ({}, {})", level, k, key.eps.label(), key.psi.label());
                }
            }
        }
    }

    #[test]
    fn eta_expansions_multiply(e1 in -2i64..3, e2 in -2i64..3) {
        prop_assume!(e1 + 2 * e2 >= 0 && e2 + 2 * e1 >= 0);
        let (e1, e2, t) = (24 * e1, 24 * e2, 25);
        let a = eta_qexp(&[(1, e1), (2, e2)], t).unwrap();
        let b = eta_qexp(&[(1, e2), (2, e1)], t).unwrap();
        let ab = eta_qexp(&[(1, e1 + e2), (2, e1 + e2)], t).unwrap();
        prop_assert_eq!(&a * &b, ab);
    }
}

/// Projecting a single basis element from its own cusp constants returns it.
#[test]
fn basis_elements_project_to_themselves() {
    for (level, k) in [(12u64, 3u32), (15, 2), (16, 4), (20, 3)] {
        for chi in DirichletCharacter::enumerate(level) {
            let Ok(keys) = basis_keys(k, level, &chi) else { continue };
            for key in keys.iter().filter(|key| !(k == 2 && key.eps.is_trivial() && key.psi.is_trivial())) {
                let oracle = |c: Cusp| eis_cusp_constant(k, &key.eps, &key.psi, key.d, c);
                let comb = project(k, level, &chi, &oracle).unwrap();
                let terms: Vec<_> = comb.nonzero_terms().collect();
                assert_eq!(terms.len(), 1, "N={level} k={k} {key}");
                assert_eq!(terms[0].key, *key);
                assert_eq!(terms[0].coeff, CycNumber::one());
            }
        }
    }
}

use proptest::prelude::*;

use givental::algebra::{basis_vector, commutator, koszul, supertrace, GradedAlgebra, LinOp};
use givental::catalog;
use givental::family::{infinitesimal_action, tft_seed};
use givental::koszul::{bracket, bracket_explicit};
use givental::Rational;

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=12).prop_map(|(n, d)| Rational::new(n, d))
}

fn huge_rational() -> impl Strategy<Value = Rational> {
    (any::<i64>(), 1i64..i64::MAX).prop_map(|(n, d)| Rational::new(n, d))
}

/// Random degree-`deg` operator on the algebra's space.
fn operator(alg: GradedAlgebra, deg: i64) -> impl Strategy<Value = LinOp> {
    let n = alg.dim();
    proptest::collection::vec(rational(), n * n).prop_map(move |vals| {
        let mut m = LinOp::zero(n, deg);
        for r in 0..n {
            for c in 0..n {
                if alg.degree(r) == alg.degree(c) + deg {
                    m.set(r, c, vals[r * n + c].clone());
                }
            }
        }
        m
    })
}

fn graded() -> GradedAlgebra {
    catalog::get("trunc_poly_3_odd_ext").unwrap().algebra
}

proptest! {
    #[test]
    fn field_laws(a in huge_rational(), b in huge_rational(), c in huge_rational()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a - &a, Rational::ZERO);
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.recip(), Rational::ONE);
            prop_assert_eq!(&(&b / &a) * &a, b.clone());
        }
    }

    #[test]
    fn serde_roundtrip(a in huge_rational()) {
        let text = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<Rational>(&text).unwrap(), a);
    }

    #[test]
    fn supertrace_of_commutator_vanishes(a in operator(graded(), 1), b in operator(graded(), -1)) {
        let alg = graded();
        prop_assert!(supertrace(alg.space(), &commutator(&a, &b)).is_zero());
    }

    #[test]
    fn even_self_commutator_vanishes(a in operator(graded(), 0)) {
        prop_assert!(commutator(&a, &a).is_zero());
    }

    #[test]
    fn left_mult_is_a_morphism(
        f in proptest::collection::vec(rational(), 4),
        g in proptest::collection::vec(rational(), 4),
    ) {
        let alg = graded();
        let lhs = alg.left_mult(&alg.mul(&f, &g));
        let rhs = alg.left_mult(&f).compose(&alg.left_mult(&g));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_is_graded_symmetric(d in operator(graded(), 1), i in 0usize..4, j in 0usize..4, k in 0usize..4) {
        let alg = graded();
        let e = |x| basis_vector(4, x);
        let ij = bracket(&alg, &d, &[e(i), e(j)]);
        let ji = bracket(&alg, &d, &[e(j), e(i)]);
        let s = Rational::from_int(koszul(alg.degree(i), alg.degree(j)));
        prop_assert_eq!(ij, ji.iter().map(|x| x * &s).collect::<Vec<_>>());
        let ijk = bracket(&alg, &d, &[e(i), e(j), e(k)]);
        let ikj = bracket(&alg, &d, &[e(i), e(k), e(j)]);
        let s = Rational::from_int(koszul(alg.degree(j), alg.degree(k)));
        prop_assert_eq!(ijk, ikj.iter().map(|x| x * &s).collect::<Vec<_>>());
    }

    #[test]
    fn bracket_matches_explicit_sum_on_vectors(
        d in operator(graded(), 0),
        f in proptest::collection::vec(rational(), 4),
        g in proptest::collection::vec(rational(), 4),
    ) {
        // inhomogeneous inputs, kept inside the even part
        let alg = graded();
        let even = |v: &Vec<Rational>| {
            let mut v = v.clone();
            v[3] = Rational::ZERO;
            v
        };
        let fs = [even(&f), even(&g)];
        prop_assert_eq!(bracket(&alg, &d, &fs), bracket_explicit(&alg, &d, &fs));
    }

    #[test]
    fn bracket_is_linear_in_the_operator(a in operator(graded(), 0), b in operator(graded(), 0), i in 0usize..4, j in 0usize..4) {
        let alg = graded();
        let fs = [basis_vector(4, i), basis_vector(4, j)];
        let sum = bracket(&alg, &a.add(&b), &fs);
        let parts: Vec<Rational> = bracket(&alg, &a, &fs).iter().zip(bracket(&alg, &b, &fs)).map(|(x, y)| x + &y).collect();
        prop_assert_eq!(sum, parts);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn infinitesimal_action_is_linear(a in operator(catalog::trunc_poly(3), 0), b in operator(catalog::trunc_poly(3), 0), l in 1usize..=2) {
        let alg = catalog::trunc_poly(3);
        let seed = tft_seed(&alg, 4, 3).unwrap();
        let sum = infinitesimal_action(&seed, &a.add(&b), l).unwrap();
        let parts = infinitesimal_action(&seed, &a, l).unwrap().add_scaled(&Rational::ONE, &infinitesimal_action(&seed, &b, l).unwrap());
        prop_assert_eq!(sum, parts);
    }
}

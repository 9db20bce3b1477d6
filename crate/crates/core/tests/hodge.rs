use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use givental::algebra::{GradedVectorSpace, LinOp};
use givental::catalog;
use givental::error::Error;
use givental::family::tft_seed;
use givental::hodge::{
    acyclic_example, gauge_check, gauge_example, hodge_vanishing_check, induced_cohft, is_multicomplex,
    multicomplex_commutator_defect, multicomplex_defect, transfer_compositions, transfer_sum, validate_retract,
    DeformationRetract, GaugeSeries,
};
use givental::Rational;

fn op(rows: usize, cols: usize, degree: i64, e: &[(usize, usize, i64)]) -> LinOp {
    let e: Vec<_> = e.iter().map(|&(r, c, v)| (r, c, Rational::from_int(v))).collect();
    LinOp::from_entries(rows, cols, degree, &e)
}

/// Compositions of `n` read off from subsets of the `n - 1` cut points.
fn cut_compositions(n: usize) -> Vec<Vec<usize>> {
    (0..1u32 << (n - 1))
        .map(|mask| {
            let mut parts = Vec::new();
            let mut run = 1;
            for k in 0..n - 1 {
                if mask & (1 << k) != 0 {
                    parts.push(run + 1);
                    run = 1;
                } else {
                    run += 1;
                }
            }
            parts.push(run + 1);
            parts
        })
        .collect()
}

fn oracle_transfer(ops: &[LinOp], r: &DeformationRetract, n: usize) -> LinOp {
    let hd = r.homology.dim();
    let mut out = LinOp::zeros(hd, hd, 2 * n as i64 - 1);
    for comp in cut_compositions(n) {
        if comp.iter().any(|&l| l > ops.len()) {
            continue;
        }
        let mut m = r.p.clone();
        for (idx, &l) in comp.iter().enumerate() {
            if idx > 0 {
                m = m.compose(&r.h);
            }
            m = m.compose(&ops[l - 1]);
        }
        m = m.compose(&r.i);
        let sign = if comp.len() % 2 == 1 { Rational::ONE } else { -Rational::ONE };
        out.add_assign_scaled(&sign, &m.with_degree(out.degree()));
    }
    out
}

fn random_op(rng: &mut ChaCha8Rng, dim: usize, degree: i64) -> LinOp {
    let mut e = Vec::new();
    for r in 0..dim {
        for c in 0..dim {
            if rng.gen_bool(0.4) {
                e.push((r, c, rng.gen_range(-2..=2)));
            }
        }
    }
    op(dim, dim, degree, &e)
}

#[test]
fn transfer_term_count() {
    for n in 1..=6 {
        let mut comps = transfer_compositions(n);
        assert_eq!(comps.len(), 1 << (n - 1));
        let mut oracle = cut_compositions(n);
        comps.sort();
        oracle.sort();
        assert_eq!(comps, oracle);
    }
}

#[test]
fn transfer_sum_matches_oracle_on_random_data() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let ops: Vec<LinOp> = (1..=5).map(|l| random_op(&mut rng, 3, 2 * l - 3)).collect();
        let r = DeformationRetract {
            homology: GradedVectorSpace::new(vec![0, 1]).unwrap(),
            p: op(2, 3, 0, &[(0, 0, 1), (1, 1, 1)]),
            i: op(3, 2, 0, &[(0, 0, 1), (1, 1, 1), (2, 0, rng.gen_range(-2..=2))]),
            h: random_op(&mut rng, 3, 1),
        };
        for n in 1..=4 {
            assert_eq!(transfer_sum(&ops, &r, n), oracle_transfer(&ops, &r, n), "n = {n}");
        }
    }
}

#[test]
fn first_two_transfer_terms() {
    let g = gauge_example();
    let r = &g.retract;
    let d2 = &g.ops[1];
    assert_eq!(transfer_sum(&g.ops, r, 1), r.p.compose(d2).compose(&r.i).with_degree(1));
    let expected = r.p.compose(d2).compose(&r.h).compose(d2).compose(&r.i).neg();
    assert_eq!(transfer_sum(&g.ops, r, 2), expected.with_degree(3));
}

#[test]
fn retract_examples() {
    let s = GradedVectorSpace::new(vec![0, -1, 2]).unwrap();
    assert!(validate_retract(&DeformationRetract::identity(&s), &LinOp::zero(3, -1)).valid());
    let d = op(2, 2, -1, &[(1, 0, 1)]);
    let acyclic = DeformationRetract {
        homology: GradedVectorSpace::empty(),
        p: LinOp::zeros(0, 2, 0),
        i: LinOp::zeros(2, 0, 0),
        h: op(2, 2, 1, &[(0, 1, -1)]),
    };
    let report = validate_retract(&acyclic, &d);
    assert!(report.valid());
    let mut flipped = acyclic.clone();
    flipped.h = flipped.h.neg();
    let report = validate_retract(&flipped, &d);
    assert!(report.shapes && report.pi_identity && !report.homotopy);
    let mut wrong_shape = acyclic;
    wrong_shape.h = LinOp::zero(3, 1);
    assert!(!validate_retract(&wrong_shape, &d).shapes);
}

#[test]
fn invalid_retract_is_rejected() {
    let mut g = gauge_example();
    g.retract.h = g.retract.h.neg();
    assert!(matches!(hodge_vanishing_check(&g.ops, &g.retract, 2), Err(Error::InvalidRetract(_))));
    assert!(matches!(
        induced_cohft(&g.algebra, &g.ops, &g.gauge, &g.retract, 3),
        Err(Error::InvalidRetract(_))
    ));
}

#[test]
fn gauge_holds_on_example_and_fails_on_every_entry_perturbation() {
    let g = gauge_example();
    let len = g.ops.len();
    assert!(gauge_check(&g.ops, &g.gauge, len).holds);
    let dim = g.algebra.dim();
    for (l, d) in g.ops.iter().enumerate().skip(1) {
        for r in 0..dim {
            for c in 0..dim {
                for delta in [1, -1] {
                    let mut ops = g.ops.clone();
                    let v = d.get(r, c) + &Rational::from_int(delta);
                    ops[l].set(r, c, v);
                    let report = gauge_check(&ops, &g.gauge, len);
                    assert!(!report.holds, "entry ({r},{c}) of D_{}", l + 1);
                    assert_eq!(report.first_failure, Some(l));
                }
            }
        }
    }
}

#[test]
fn perturbing_d1_along_the_centralizer_of_a_keeps_the_gauge() {
    let g = gauge_example();
    let mut ops = g.ops.clone();
    ops[0].set(0, 0, Rational::ONE);
    assert!(gauge_check(&ops, &g.gauge, 2).holds);
    let mut ops = g.ops.clone();
    ops[0].set(2, 2, Rational::ONE);
    assert_eq!(gauge_check(&ops, &g.gauge, 2).first_failure, Some(1));
}

#[test]
fn zero_gauge_needs_zero_higher_operators() {
    let g = gauge_example();
    assert!(gauge_check(&g.ops[..1], &GaugeSeries::zero(), 1).holds);
    assert_eq!(gauge_check(&g.ops, &GaugeSeries::zero(), 2).first_failure, Some(1));
}

#[test]
fn hodge_vanishing_on_example() {
    let g = gauge_example();
    for n_max in 1..=4 {
        assert!(hodge_vanishing_check(&g.ops, &g.retract, n_max).unwrap().holds);
    }
    for n in 1..=4 {
        assert!(oracle_transfer(&g.ops, &g.retract, n).is_zero());
    }
    let a = acyclic_example();
    assert!(hodge_vanishing_check(&a.ops, &a.retract, 4).unwrap().holds);
}

#[test]
fn induced_family_on_acyclic_summand() {
    let a = acyclic_example();
    let fam = induced_cohft(&a.algebra, &a.ops, &a.gauge, &a.retract, 5).unwrap();
    assert_eq!(fam, tft_seed(&catalog::trunc_poly(2), 5, 4).unwrap());
}

#[test]
fn gauge_violation_is_reported() {
    let g = gauge_example();
    let mut ops = g.ops.clone();
    ops[1] = ops[1].neg();
    assert!(matches!(
        induced_cohft(&g.algebra, &ops, &g.gauge, &g.retract, 3),
        Err(Error::GaugeViolation { power: 1 })
    ));
}

#[test]
fn commutator_form_is_twice_the_square_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..20 {
        let ops: Vec<LinOp> = (1..=4).map(|l| random_op(&mut rng, 4, 2 * l - 3)).collect();
        for n in 2..=5 {
            let twice = multicomplex_defect(&ops, n).scale(&Rational::from_int(2));
            assert_eq!(multicomplex_commutator_defect(&ops, n), twice);
        }
    }
    let g = gauge_example();
    assert!(is_multicomplex(&g.ops).unwrap().holds);
}

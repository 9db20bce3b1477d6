//! Linear algebra over Q and searches for operators satisfying linear conditions.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::{is_zero_vector, supertrace, GradedAlgebra, GradedVectorSpace, LinOp, Vector};
use crate::combinat::SortedTuples;
use crate::koszul::{bracket_coeffs, OpContext};
use crate::rational::Rational;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(rows: &mut Vec<Vector>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let (pivot_row, other) = if i < r {
                    let (a, b) = rows.split_at_mut(r);
                    (&b[0], &mut a[i])
                } else {
                    let (a, b) = rows.split_at_mut(i);
                    (&a[r], &mut b[0])
                };
                for (x, y) in other.iter_mut().zip(pivot_row) {
                    if !y.is_zero() {
                        *x -= &(&f * y);
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Vector], ncols: usize) -> usize {
    let mut m: Vec<Vector> = rows.iter().filter(|v| !is_zero_vector(v)).cloned().collect();
    rref(&mut m, ncols).len()
}

/// Basis of `{x : rows · x = 0}`.
pub fn nullspace(rows: &[Vector], ncols: usize) -> Vec<Vector> {
    let mut m: Vec<Vector> = rows.iter().filter(|v| !is_zero_vector(v)).cloned().collect();
    let pivots = rref(&mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::ZERO; ncols];
            v[f] = Rational::ONE;
            for (row, &p) in m.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Matrix positions allowed for a homogeneous map of the given degree.
pub fn homogeneous_slots(space: &GradedVectorSpace, degree: i64) -> Vec<(usize, usize)> {
    let n = space.dim();
    let mut out = Vec::new();
    for c in 0..n {
        for r in 0..n {
            if space.degree(r) == space.degree(c) + degree {
                out.push((r, c));
            }
        }
    }
    out
}

/// A linear condition on operators: the residual vector must vanish.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    OrderAtMost(usize),
    Getzler,
    /// `str(⟨b_1..b_{l-1}⟩ · (-)) = 0`
    StrongCompat(usize),
}

impl Condition {
    pub fn residual(&self, alg: &GradedAlgebra, op: &LinOp) -> Vector {
        let ctx = OpContext::new(alg, op);
        match *self {
            Condition::OrderAtMost(l) => {
                let coeffs = bracket_coeffs(l + 1);
                SortedTuples::new(l + 1, alg.dim())
                    .flat_map(|t| ctx.subset_sum(&t, &coeffs))
                    .collect()
            }
            Condition::Getzler => {
                let tr = alg.trace_form();
                let twelfth = Rational::new(1, 12);
                (0..alg.dim())
                    .map(|b| {
                        let e = crate::algebra::basis_vector(alg.dim(), b);
                        let lhs = &twelfth * &dot(&tr, &op.column(b));
                        lhs - supertrace(alg.space(), &op.compose(&alg.left_mult(&e)))
                    })
                    .collect()
            }
            Condition::StrongCompat(l) => {
                assert!(l >= 2);
                let tr = alg.trace_form();
                let coeffs = bracket_coeffs(l - 1);
                SortedTuples::new(l - 1, alg.dim())
                    .map(|t| dot(&tr, &ctx.subset_sum(&t, &coeffs)))
                    .collect()
            }
        }
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).filter(|(x, y)| !x.is_zero() && !y.is_zero()).map(|(x, y)| x * y).sum()
}

/// Basis of the space of degree-`degree` operators satisfying all conditions.
pub fn operator_family(alg: &GradedAlgebra, degree: i64, conditions: &[Condition]) -> Vec<LinOp> {
    let n = alg.dim();
    let slots = homogeneous_slots(alg.space(), degree);
    let elementary: Vec<LinOp> = slots
        .iter()
        .map(|&(r, c)| LinOp::from_entries(n, n, degree, &[(r, c, Rational::ONE)]))
        .collect();
    let mut columns: Vec<Vector> = vec![Vec::new(); slots.len()];
    for cond in conditions {
        for (s, e) in elementary.iter().enumerate() {
            columns[s].extend(cond.residual(alg, e));
        }
    }
    let nrows = columns.first().map_or(0, Vec::len);
    let rows: Vec<Vector> = (0..nrows).map(|i| columns.iter().map(|col| col[i].clone()).collect()).collect();
    nullspace(&rows, slots.len())
        .into_iter()
        .map(|v| combine(&elementary, &v, n, degree))
        .collect()
}

fn combine(ops: &[LinOp], coeffs: &[Rational], dim: usize, degree: i64) -> LinOp {
    let mut out = LinOp::zero(dim, degree);
    for (op, c) in ops.iter().zip(coeffs) {
        if !c.is_zero() {
            out.add_assign_scaled(c, op);
        }
    }
    out
}

fn small_int<R: Rng>(rng: &mut R) -> Rational {
    Rational::from_int(rng.gen_range(-3..=3))
}

/// Random integer combination of the family; zero if the family is empty.
pub fn random_in_family<R: Rng>(family: &[LinOp], dim: usize, degree: i64, rng: &mut R) -> LinOp {
    let coeffs: Vec<Rational> = family.iter().map(|_| small_int(rng)).collect();
    combine(family, &coeffs, dim, degree)
}

/// Random homogeneous operator with small integer entries on a random subset of slots.
pub fn random_operator<R: Rng>(space: &GradedVectorSpace, degree: i64, rng: &mut R) -> LinOp {
    let n = space.dim();
    let mut slots = homogeneous_slots(space, degree);
    slots.shuffle(rng);
    let keep = if slots.is_empty() { 0 } else { rng.gen_range(1..=slots.len()) };
    let mut op = LinOp::zero(n, degree);
    for &(r, c) in &slots[..keep] {
        op.set(r, c, small_int(rng));
    }
    op
}

/// Degrees `d` for which degree-`d` operators exist on the space.
pub fn available_degrees(space: &GradedVectorSpace) -> Vec<i64> {
    let mut out: Vec<i64> = Vec::new();
    for &a in space.degrees() {
        for &b in space.degrees() {
            if !out.contains(&(a - b)) {
                out.push(a - b);
            }
        }
    }
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::koszul::{getzler_check, order_at_most};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn nullspace_of_small_system() {
        // x + y + z = 0, x - z = 0
        let rows = vec![vec![r(1), r(1), r(1)], vec![r(1), r(0), r(-1)]];
        let ns = nullspace(&rows, 3);
        assert_eq!(ns, vec![vec![r(1), r(-2), r(1)]]);
        assert_eq!(rank(&rows, 3), 2);
        assert_eq!(nullspace(&[], 2).len(), 2);
    }

    #[test]
    fn derivations_of_truncated_polynomials() {
        // derivations of C[x]/(x^k): D(x) in (x), so k - 1 of them
        for k in 2..=5 {
            let a = catalog::trunc_poly(k);
            let fam = operator_family(&a, 0, &[Condition::OrderAtMost(1)]);
            assert_eq!(fam.len(), k - 1);
            for d in &fam {
                assert!(order_at_most(&a, d, 1));
            }
        }
    }

    #[test]
    fn searched_getzler_operators_pass() {
        let e = catalog::get("exterior_2").unwrap();
        let fam = operator_family(&e.algebra, 1, &[Condition::OrderAtMost(2), Condition::Getzler]);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let d = random_in_family(&fam, e.algebra.dim(), 1, &mut rng);
            assert!(order_at_most(&e.algebra, &d, 2));
            assert!(getzler_check(&e.algebra, &d).holds);
        }
    }

    #[test]
    fn random_operators_are_homogeneous() {
        let e = catalog::get("exterior_3").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for deg in available_degrees(e.algebra.space()) {
            let op = random_operator(e.algebra.space(), deg, &mut rng);
            assert!(op.check_homogeneous(e.algebra.space(), e.algebra.space()).is_ok());
        }
    }
}

//! Koszul bracket hierarchy, order detection and trace compatibility.

use serde::{Deserialize, Serialize};

use crate::algebra::{axpy, commutator, is_zero_vector, koszul, parity, zero_vector, GradedAlgebra, LinOp, Vector};
use crate::combinat::{mask_indices, shuffle_sign, SortedTuples};
use crate::error::{Error, Result};
use crate::rational::{binomial, Rational};

/// Outcome of an exhaustive check: the first failing basis tuple, if any.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub holds: bool,
    pub witness: Option<Vec<usize>>,
}

impl Check {
    pub fn pass() -> Self {
        Check {
            holds: true,
            witness: None,
        }
    }

    pub fn fail(witness: Vec<usize>) -> Self {
        Check {
            holds: false,
            witness: Some(witness),
        }
    }

    /// Runs `pred` over `tuples`, stopping at the first tuple where it is false.
    pub fn first_failure<I>(tuples: I, mut pred: impl FnMut(&[usize]) -> bool) -> Self
    where
        I: IntoIterator<Item = Vec<usize>>,
    {
        for t in tuples {
            if !pred(&t) {
                return Check::fail(t);
            }
        }
        Check::pass()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MinimalOrder {
    Order(usize),
    ExceedsMax(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderReport {
    pub operator: String,
    pub minimal_order: MinimalOrder,
    /// `witnesses[m]` is a tuple of length `m + 1` where bracket_{m+1} is nonzero.
    pub witnesses: Vec<Vec<usize>>,
}

impl OrderReport {
    pub fn order(&self) -> Option<usize> {
        match self.minimal_order {
            MinimalOrder::Order(m) => Some(m),
            MinimalOrder::ExceedsMax(_) => None,
        }
    }

    pub fn at_most(&self, l: usize) -> bool {
        self.order().is_some_and(|m| m <= l)
    }
}

/// Operator bound to an algebra, with per-tuple helpers for subset sums
/// `Σ_I c(I) ε(I) D(f_I) f_J`.
pub struct OpContext<'a> {
    pub alg: &'a GradedAlgebra,
    pub op: &'a LinOp,
    cols: Vec<Vec<(usize, Rational)>>,
}

impl<'a> OpContext<'a> {
    pub fn new(alg: &'a GradedAlgebra, op: &'a LinOp) -> Self {
        assert_eq!(op.rows(), alg.dim());
        assert_eq!(op.cols(), alg.dim());
        OpContext {
            alg,
            op,
            cols: op.sparse_columns(),
        }
    }

    pub fn degree(&self) -> i64 {
        self.op.degree()
    }

    pub fn apply(&self, v: &[Rational]) -> Vector {
        let mut out = zero_vector(self.alg.dim());
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r, m) in &self.cols[c] {
                out[*r] += &(m * x);
            }
        }
        out
    }

    pub fn tuple_degrees(&self, tuple: &[usize]) -> Vec<i64> {
        tuple.iter().map(|&b| self.alg.degree(b)).collect()
    }

    /// `ε(mask) D(b_I) b_J` for every mask; entry 0 (empty `I`) is the zero vector.
    pub fn subset_terms(&self, tuple: &[usize]) -> Vec<Vector> {
        let products = subset_products(self.alg, tuple);
        let degrees = self.tuple_degrees(tuple);
        let full = (1usize << tuple.len()) - 1;
        let mut out = Vec::with_capacity(full + 1);
        out.push(zero_vector(self.alg.dim()));
        for mask in 1..=full {
            let d = self.apply(&products[mask]);
            if is_zero_vector(&d) {
                out.push(d);
                continue;
            }
            let mut term = unit_aware_mul(self.alg, &d, &products[full & !mask]);
            if shuffle_sign(&degrees, mask) < 0 {
                for x in term.iter_mut() {
                    *x = -x.clone();
                }
            }
            out.push(term);
        }
        out
    }

    /// `Σ_{mask} coeffs[mask] ε(mask) D(b_I) b_J` over nonempty masks.
    pub fn subset_sum(&self, tuple: &[usize], coeffs: &[Rational]) -> Vector {
        let products = subset_products(self.alg, tuple);
        let degrees = self.tuple_degrees(tuple);
        let n = tuple.len();
        let full = (1usize << n) - 1;
        let mut out = zero_vector(self.alg.dim());
        for mask in 1..=full {
            let c = &coeffs[mask];
            if c.is_zero() || is_zero_vector(&products[mask]) {
                continue;
            }
            let d = self.apply(&products[mask]);
            if is_zero_vector(&d) {
                continue;
            }
            let rest = &products[full & !mask];
            let term = unit_aware_mul(self.alg, &d, rest);
            let s = shuffle_sign(&degrees, mask);
            axpy(&mut out, &c.scale(s), &term);
        }
        out
    }
}

/// Ordered products `b_I` for every mask. Entry 0 is an empty vector standing
/// for the empty product.
pub fn subset_products(alg: &GradedAlgebra, tuple: &[usize]) -> Vec<Vector> {
    let n = tuple.len();
    let dim = alg.dim();
    let mut products: Vec<Vector> = Vec::with_capacity(1 << n);
    products.push(Vec::new());
    for mask in 1usize..1 << n {
        let top = usize::BITS as usize - 1 - mask.leading_zeros() as usize;
        let rest = mask & !(1 << top);
        let v = if rest == 0 {
            let mut e = zero_vector(dim);
            e[tuple[top]] = Rational::ONE;
            e
        } else {
            alg.multiply_by_basis(&products[rest], tuple[top])
        };
        products.push(v);
    }
    products
}

/// Product where an empty slice stands for the empty product.
fn unit_aware_mul(alg: &GradedAlgebra, f: &[Rational], g: &[Rational]) -> Vector {
    match (f.is_empty(), g.is_empty()) {
        (true, _) => g.to_vec(),
        (false, true) => f.to_vec(),
        (false, false) => alg.mul(f, g),
    }
}

/// Coefficients `(-1)^{l-|I|}` of the explicit bracket formula.
pub fn bracket_coeffs(n: usize) -> Vec<Rational> {
    (0..1usize << n)
        .map(|mask| {
            if mask == 0 {
                Rational::ZERO
            } else {
                Rational::sign((n - mask.count_ones() as usize) as i64)
            }
        })
        .collect()
}

/// `⟨b_1, …, b_n⟩_n^D` on basis indices via the subset formula.
pub fn bracket_basis(ctx: &OpContext<'_>, tuple: &[usize]) -> Vector {
    assert!(!tuple.is_empty(), "bracket needs at least one argument");
    ctx.subset_sum(tuple, &bracket_coeffs(tuple.len()))
}

/// Expands every argument into homogeneous components and sums `f` over all
/// combinations, weighted by the product of component coefficients.
pub fn expand_basis(alg: &GradedAlgebra, fs: &[Vector], mut f: impl FnMut(&[usize]) -> Vector) -> Vector {
    let mut out = zero_vector(alg.dim());
    let supports: Vec<Vec<usize>> = fs
        .iter()
        .map(|v| (0..v.len()).filter(|&i| !v[i].is_zero()).collect())
        .collect();
    if supports.iter().any(Vec::is_empty) {
        return out;
    }
    let n = fs.len();
    let mut idx = vec![0usize; n];
    loop {
        let tuple: Vec<usize> = (0..n).map(|k| supports[k][idx[k]]).collect();
        let coeff: Rational = (0..n).map(|k| fs[k][tuple[k]].clone()).product();
        axpy(&mut out, &coeff, &f(&tuple));
        let mut pos = n;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < supports[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

fn check_args(alg: &GradedAlgebra, d: &LinOp, fs: &[Vector]) {
    assert!(!fs.is_empty(), "bracket needs at least one argument");
    assert!(d.rows() == alg.dim() && d.cols() == alg.dim());
    for f in fs {
        assert_eq!(f.len(), alg.dim(), "argument has wrong length");
    }
}

/// Koszul bracket via the recursive definition.
pub fn bracket(alg: &GradedAlgebra, d: &LinOp, fs: &[Vector]) -> Vector {
    check_args(alg, d, fs);
    let ctx = OpContext::new(alg, d);
    expand_basis(alg, fs, |tuple| {
        let args: Vec<(i64, Vector)> = tuple
            .iter()
            .map(|&b| {
                let mut e = zero_vector(alg.dim());
                e[b] = Rational::ONE;
                (alg.degree(b), e)
            })
            .collect();
        bracket_recursive(&ctx, &args)
    })
}

fn bracket_recursive(ctx: &OpContext<'_>, args: &[(i64, Vector)]) -> Vector {
    let n = args.len();
    if n == 1 {
        return ctx.apply(&args[0].1);
    }
    let alg = ctx.alg;
    let (deg_last, last) = &args[n - 1];
    let (deg_prev, prev) = &args[n - 2];
    let head = &args[..n - 2];

    let mut merged: Vec<(i64, Vector)> = head.to_vec();
    merged.push((deg_prev + deg_last, alg.mul(prev, last)));
    let mut out = bracket_recursive(ctx, &merged);

    let first = bracket_recursive(ctx, &args[..n - 1]);
    let t2 = alg.mul(&first, last);
    axpy(&mut out, &Rational::from_int(-1), &t2);

    let mut skip: Vec<(i64, Vector)> = head.to_vec();
    skip.push((*deg_last, last.clone()));
    let inner = bracket_recursive(ctx, &skip);
    let passed: i64 = ctx.degree() + head.iter().map(|(d, _)| d).sum::<i64>();
    let s = koszul(*deg_prev, passed);
    let t3 = alg.mul(prev, &inner);
    axpy(&mut out, &Rational::from_int(-s), &t3);
    out
}

/// Koszul bracket via the explicit subset sum.
pub fn bracket_explicit(alg: &GradedAlgebra, d: &LinOp, fs: &[Vector]) -> Vector {
    check_args(alg, d, fs);
    let ctx = OpContext::new(alg, d);
    expand_basis(alg, fs, |tuple| bracket_basis(&ctx, tuple))
}

/// First sorted basis tuple of length `n` on which bracket_n is nonzero.
pub fn bracket_nonzero_witness(ctx: &OpContext<'_>, n: usize) -> Option<Vec<usize>> {
    let coeffs = bracket_coeffs(n);
    SortedTuples::new(n, ctx.alg.dim()).find(|t| !is_zero_vector(&ctx.subset_sum(t, &coeffs)))
}

pub fn bracket_vanishes(alg: &GradedAlgebra, d: &LinOp, n: usize) -> bool {
    bracket_nonzero_witness(&OpContext::new(alg, d), n).is_none()
}

pub fn order_at_most(alg: &GradedAlgebra, d: &LinOp, l: usize) -> bool {
    bracket_vanishes(alg, d, l + 1)
}

pub fn min_order(alg: &GradedAlgebra, d: &LinOp, l_max: usize) -> OrderReport {
    min_order_named(alg, d, l_max, "")
}

pub fn min_order_named(alg: &GradedAlgebra, d: &LinOp, l_max: usize, name: &str) -> OrderReport {
    let ctx = OpContext::new(alg, d);
    let mut witnesses = Vec::new();
    for m in 0..=l_max {
        match bracket_nonzero_witness(&ctx, m + 1) {
            None => {
                return OrderReport {
                    operator: name.to_string(),
                    minimal_order: MinimalOrder::Order(m),
                    witnesses,
                }
            }
            Some(w) => witnesses.push(w),
        }
    }
    OrderReport {
        operator: name.to_string(),
        minimal_order: MinimalOrder::ExceedsMax(l_max),
        witnesses,
    }
}

/// `D(f_1⋯f_n) = Σ_{1≤|I|≤l} (-1)^{l-|I|} C(n-1-|I|, l-|I|) D(f_I) f_J`
/// on every sorted basis tuple.
pub fn product_identity_check(alg: &GradedAlgebra, d: &LinOp, l: usize, n: usize) -> Check {
    assert!(n > l, "the product identity needs n >= l + 1");
    let ctx = OpContext::new(alg, d);
    let full = (1usize << n) - 1;
    let coeffs: Vec<Rational> = (0..=full)
        .map(|mask| {
            let k = mask.count_ones() as usize;
            if mask == full {
                Rational::ONE
            } else if k >= 1 && k <= l {
                let c = binomial((n - 1 - k) as i64, (l - k) as i64);
                -(c.scale(if (l - k) % 2 == 0 { 1 } else { -1 }))
            } else {
                Rational::ZERO
            }
        })
        .collect();
    Check::first_failure(SortedTuples::new(n, alg.dim()), |t| is_zero_vector(&ctx.subset_sum(t, &coeffs)))
}

/// Bering's formula for the bracket of a supercommutator, on all basis tuples of length `n`.
pub fn bering_check(alg: &GradedAlgebra, a: &LinOp, b: &LinOp, n: usize) -> Check {
    assert!(n >= 1);
    let comm = commutator(a, b);
    let ctx_c = OpContext::new(alg, &comm);
    let ctx_a = OpContext::new(alg, a);
    let ctx_b = OpContext::new(alg, b);
    let s = Rational::from_int(koszul(a.degree(), b.degree()));
    Check::first_failure(crate::algebra::BasisTuples::new(n, alg.dim()), |t| {
        let lhs = bracket_basis(&ctx_c, t);
        let mut rhs = zero_vector(alg.dim());
        let degrees = ctx_a.tuple_degrees(t);
        for mask in 1usize..1 << n {
            let inner_idx = mask_indices(mask, n);
            let outer_idx = mask_indices(((1 << n) - 1) & !mask, n);
            let inner: Vec<usize> = inner_idx.iter().map(|&i| t[i]).collect();
            let outer: Vec<Vector> = outer_idx.iter().map(|&i| crate::algebra::basis_vector(alg.dim(), t[i])).collect();
            let eps = Rational::from_int(shuffle_sign(&degrees, mask));
            let nested = |inner_ctx: &OpContext<'_>, outer_op: &LinOp| {
                let v = bracket_basis(inner_ctx, &inner);
                let mut args = vec![v];
                args.extend(outer.iter().cloned());
                bracket_explicit(alg, outer_op, &args)
            };
            axpy(&mut rhs, &eps, &nested(&ctx_b, a));
            axpy(&mut rhs, &-(&eps * &s), &nested(&ctx_a, b));
        }
        lhs == rhs
    })
}

/// `str(⟨b_1, …, b_l⟩_l^D · (-)) = 0` on all sorted tuples.
pub fn trace_order_drop_check(alg: &GradedAlgebra, d: &LinOp, l: usize) -> Check {
    assert!(l >= 1);
    let ctx = OpContext::new(alg, d);
    let tr = alg.trace_form();
    let coeffs = bracket_coeffs(l);
    Check::first_failure(SortedTuples::new(l, alg.dim()), |t| {
        dot(&tr, &ctx.subset_sum(t, &coeffs)).is_zero()
    })
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).filter(|(x, y)| !x.is_zero() && !y.is_zero()).map(|(x, y)| x * y).sum()
}

/// `str(⟨b_1, …, b_{l-1}⟩ · (-)) = 0` without any precondition.
pub fn strong_compat_identity(alg: &GradedAlgebra, d: &LinOp, l: usize) -> Check {
    assert!(l >= 2);
    trace_order_drop_check(alg, d, l - 1)
}

/// `str(⟨b_1, …, b_k⟩ b_{k+1} · (-)) = 0` for all sorted `b_1..b_k` and all `b_{k+1}`.
pub fn trace_times_check(alg: &GradedAlgebra, d: &LinOp, k: usize) -> Check {
    let ctx = OpContext::new(alg, d);
    let tr = alg.trace_form();
    let coeffs = bracket_coeffs(k);
    let dim = alg.dim();
    let tuples = SortedTuples::new(k, dim).flat_map(move |t| {
        (0..dim).map(move |b| {
            let mut u = t.clone();
            u.push(b);
            u
        })
    });
    Check::first_failure(tuples, |u| {
        let v = ctx.subset_sum(&u[..k], &coeffs);
        let w = alg.multiply_by_basis(&v, u[k]);
        dot(&tr, &w).is_zero()
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrongCompatReport {
    pub check: Check,
    /// Set when the identity holds: the two derived trace identities.
    pub drop_order_2: Option<Check>,
    pub strong_compat_2: Option<Check>,
}

/// Strong compatibility with the trace for an operator of order at most `l >= 3`.
pub fn strong_compat_check(alg: &GradedAlgebra, d: &LinOp, l: usize) -> Result<StrongCompatReport> {
    if l < 3 {
        return Err(Error::PreconditionViolation(format!(
            "strong compatibility is defined for l >= 3, got l = {l}"
        )));
    }
    if !order_at_most(alg, d, l) {
        return Err(Error::PreconditionViolation(format!("operator has order greater than {l}")));
    }
    let check = strong_compat_identity(alg, d, l);
    if !check.holds {
        return Ok(StrongCompatReport {
            check,
            drop_order_2: None,
            strong_compat_2: None,
        });
    }
    let drop2 = trace_times_check(alg, d, l);
    let sc2 = trace_times_check(alg, d, l - 1);
    if !drop2.holds || !sc2.holds {
        return Err(Error::Inconsistency(format!(
            "strong compatibility holds but a derived trace identity fails: {drop2:?} {sc2:?}"
        )));
    }
    Ok(StrongCompatReport {
        check,
        drop_order_2: Some(drop2),
        strong_compat_2: Some(sc2),
    })
}

/// `(1/12) str(D(b)·(-)) = str(D(b·(-)))` for every basis vector `b`.
pub fn getzler_check(alg: &GradedAlgebra, d: &LinOp) -> Check {
    let tr = alg.trace_form();
    let twelfth = Rational::new(1, 12);
    Check::first_failure((0..alg.dim()).map(|b| vec![b]), |t| {
        let lhs = &twelfth * &dot(&tr, &d.column(t[0]));
        let rhs = crate::algebra::supertrace(alg.space(), &d.compose(&alg.left_mult(&crate::algebra::basis_vector(alg.dim(), t[0]))));
        lhs == rhs
    })
}

/// Orders of `A ∘ B` and `[A, B]` against `k + l` and `k + l - 1`, where
/// `k`, `l` are the given orders of `A`, `B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationReport {
    pub composition: bool,
    pub commutator: bool,
}

pub fn filtration_check(alg: &GradedAlgebra, a: &LinOp, k: usize, b: &LinOp, l: usize) -> FiltrationReport {
    let comp = a.compose(b);
    let comm = commutator(a, b);
    FiltrationReport {
        composition: order_at_most(alg, &comp, k + l),
        commutator: k + l == 0 && comm.is_zero() || k + l > 0 && order_at_most(alg, &comm, k + l - 1),
    }
}

/// Strong compatibility of `[D1, D2]` at order `k + l - 1`, including the order bound.
pub fn lie_subalgebra_check(alg: &GradedAlgebra, d1: &LinOp, k: usize, d2: &LinOp, l: usize) -> Check {
    let c = commutator(d1, d2);
    let order = k + l - 1;
    if let Some(w) = bracket_nonzero_witness(&OpContext::new(alg, &c), order + 1) {
        return Check::fail(w);
    }
    strong_compat_identity(alg, &c, order)
}

/// `[D2, Dl]` strongly compatible at order `l + 1`; `l == 2` means `Dl = D2`
/// and the order is 3.
pub fn comm_compat_check(alg: &GradedAlgebra, d2: &LinOp, dl: &LinOp, l: usize) -> Result<Check> {
    let mut failed = Vec::new();
    if parity(d2.degree()) != 1 {
        failed.push("D2 has even degree".to_string());
    }
    if parity(dl.degree()) != 1 {
        failed.push("Dl has even degree".to_string());
    }
    if !order_at_most(alg, d2, 2) {
        failed.push("D2 has order greater than 2".to_string());
    }
    if !getzler_check(alg, d2).holds {
        failed.push("D2 violates the Getzler relation".to_string());
    }
    if l == 2 {
        if d2 != dl {
            failed.push("l = 2 requires Dl = D2".to_string());
        }
    } else if l < 2 {
        failed.push(format!("l = {l} is not allowed"));
    } else {
        if !order_at_most(alg, dl, l) {
            failed.push(format!("Dl has order greater than {l}"));
        }
        if !strong_compat_identity(alg, dl, l).holds {
            failed.push("Dl is not strongly compatible with the trace".to_string());
        }
    }
    if !failed.is_empty() {
        return Err(Error::PreconditionViolation(failed.join("; ")));
    }
    let c = commutator(d2, dl);
    let order = l + 1;
    if let Some(w) = bracket_nonzero_witness(&OpContext::new(alg, &c), order + 1) {
        return Ok(Check::fail(w));
    }
    Ok(strong_compat_identity(alg, &c, order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::basis_vector;
    use crate::catalog;

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn second_derivative_bracket() {
        let a = catalog::trunc_poly(3);
        let d = catalog::poly_derivative(3, 2, 0);
        let x = basis_vector(3, 1);
        let rec = bracket(&a, &d, &[x.clone(), x.clone()]);
        let exp = bracket_explicit(&a, &d, &[x.clone(), x]);
        // D(x^2) - 2 x D(x) = 2
        assert_eq!(rec, vec![r(2), r(0), r(0)]);
        assert_eq!(exp, rec);
    }

    #[test]
    fn identity_bracket_is_signed_product() {
        let a = catalog::trunc_poly(4);
        let id = LinOp::identity(4);
        let x = basis_vector(4, 1);
        for l in 1..=3 {
            let args = vec![x.clone(); l];
            let v = bracket(&a, &id, &args);
            let mut expected = zero_vector(4);
            expected[l] = Rational::sign(l as i64 + 1);
            assert_eq!(v, expected);
        }
    }

    #[test]
    fn minimal_orders() {
        let a = catalog::trunc_poly(4);
        assert_eq!(min_order(&a, &LinOp::zero(4, 0), 3).minimal_order, MinimalOrder::Order(0));
        let euler = catalog::poly_weighted_derivative(4, 1, 1);
        let rep = min_order(&a, &euler, 3);
        assert_eq!(rep.minimal_order, MinimalOrder::Order(1));
        assert_eq!(rep.witnesses, vec![vec![1]]);
        // plain d/dx does not preserve (x^4): bracket_2(x, x^3) = -4x^3
        let dx = catalog::poly_derivative(4, 1, 0);
        let rep = min_order(&a, &dx, 6);
        assert_eq!(rep.minimal_order, MinimalOrder::Order(4));
        let ctx = OpContext::new(&a, &dx);
        assert_eq!(bracket_basis(&ctx, &[1, 3]), vec![r(0), r(0), r(0), r(-4)]);
        let id = min_order(&a, &LinOp::identity(4), 6);
        assert_eq!(id.minimal_order, MinimalOrder::ExceedsMax(6));
        assert_eq!(id.witnesses.len(), 7);
        assert!(id.witnesses.iter().all(|w| w.iter().all(|&b| b == 0)));
    }

    #[test]
    fn odd_brackets_agree() {
        let e = catalog::get("exterior_2_trunc_poly_2").unwrap();
        for (_, d) in &e.operators {
            let ctx = OpContext::new(&e.algebra, d);
            for t in crate::algebra::BasisTuples::new(3, e.algebra.dim()) {
                let args: Vec<Vector> = t.iter().map(|&b| basis_vector(8, b)).collect();
                assert_eq!(bracket(&e.algebra, d, &args), bracket_basis(&ctx, &t));
            }
        }
    }

    #[test]
    fn leibniz_and_second_order_product_identities() {
        let a5 = catalog::trunc_poly(5);
        assert!(product_identity_check(&a5, &catalog::poly_weighted_derivative(5, 1, 1), 1, 3).holds);
        let a6 = catalog::trunc_poly(6);
        assert!(product_identity_check(&a6, &catalog::poly_weighted_derivative(6, 2, 2), 2, 4).holds);
        let bad = catalog::poly_weighted_derivative(5, 1, 1).add(&LinOp::from_entries(5, 5, 0, &[(0, 2, r(1))]));
        let c = product_identity_check(&a5, &bad, 1, 3);
        assert!(!c.holds);
        assert!(c.witness.is_some());
    }

    #[test]
    fn bering_single_argument_is_commutator() {
        let a = catalog::exterior(2);
        let d1 = catalog::exterior_derivative(2, 0, 1);
        let d2 = catalog::exterior_derivative(2, 1, 1).compose(&catalog::exterior_derivative(2, 0, 1));
        assert!(bering_check(&a, &d1, &d2, 1).holds);
        assert!(bering_check(&a, &d1, &d2, 2).holds);
        assert!(bering_check(&a, &d1, &d2, 3).holds);
    }

    #[test]
    fn strong_compat_precondition() {
        let a = catalog::trunc_poly(3);
        assert!(strong_compat_check(&a, &LinOp::zero(3, 0), 2).is_err());
        let rep = strong_compat_check(&a, &LinOp::zero(3, 0), 3).unwrap();
        assert!(rep.check.holds);
    }

    #[test]
    fn getzler_fails_for_exterior_laplacian() {
        let e = catalog::get("exterior_2").unwrap();
        let lap = e.operator("bv_laplacian").unwrap();
        assert!(order_at_most(&e.algebra, lap, 2));
        let c = getzler_check(&e.algebra, lap);
        assert!(!c.holds);
        assert_eq!(c.witness, Some(vec![3]));
    }
}

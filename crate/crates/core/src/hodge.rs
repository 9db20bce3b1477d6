//! Multicomplexes, BV∞ structure checks, deformation retracts, homotopy
//! transfer and the gauge Hodge condition.

use serde::{Deserialize, Serialize};

use crate::algebra::{commutator, GradedAlgebra, GradedVectorSpace, LinOp, MultiLinearMap};
use crate::catalog;
use crate::error::{Error, Result};
use crate::family::{group_action_exp, infinitesimal_action, tft_seed, CorrelatorFamily};
use crate::givental::GiventalSeries;
use crate::koszul::{getzler_check, order_at_most, strong_compat_check};
use crate::rational::Rational;

/// `D_l` (1-based) must have degree `2l - 3`; zero maps are accepted as they are.
pub fn check_degrees(ops: &[LinOp]) -> Result<()> {
    for (k, d) in ops.iter().enumerate() {
        let l = k + 1;
        let expected = 2 * l as i64 - 3;
        if !d.is_zero() && d.degree() != expected {
            return Err(Error::DegreeMismatch {
                index: l,
                expected,
                found: d.degree(),
            });
        }
    }
    Ok(())
}

fn op_at(ops: &[LinOp], l: usize) -> Option<&LinOp> {
    ops.get(l.wrapping_sub(1)).filter(|d| !d.is_zero())
}

/// `Σ_{i+j=n} D_i D_j`.
pub fn multicomplex_defect(ops: &[LinOp], n: usize) -> LinOp {
    let dim = ops.first().map_or(0, LinOp::rows);
    let mut out = LinOp::zero(dim, 2 * n as i64 - 6);
    for i in 1..n {
        if let (Some(a), Some(b)) = (op_at(ops, i), op_at(ops, n - i)) {
            out.add_assign_scaled(&Rational::ONE, &a.compose(b));
        }
    }
    out
}

/// `Σ_{i+j=n} [D_i, D_j]` with the supercommutator.
pub fn multicomplex_commutator_defect(ops: &[LinOp], n: usize) -> LinOp {
    let dim = ops.first().map_or(0, LinOp::rows);
    let mut out = LinOp::zero(dim, 2 * n as i64 - 6);
    for i in 1..n {
        if let (Some(a), Some(b)) = (op_at(ops, i), op_at(ops, n - i)) {
            out.add_assign_scaled(&Rational::ONE, &commutator(a, b));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MulticomplexReport {
    pub holds: bool,
    pub failing_n: Option<usize>,
    pub defect: Option<LinOp>,
}

/// Checks `Σ_{i+j=n} D_i D_j = 0` for `2 <= n <= L + 1`.
pub fn is_multicomplex(ops: &[LinOp]) -> Result<MulticomplexReport> {
    check_degrees(ops)?;
    for n in 2..=ops.len() + 1 {
        let m = multicomplex_defect(ops, n);
        if !m.is_zero() {
            return Ok(MulticomplexReport {
                holds: false,
                failing_n: Some(n),
                defect: Some(m),
            });
        }
    }
    Ok(MulticomplexReport {
        holds: true,
        failing_n: None,
        defect: None,
    })
}

/// Multicomplex with `D_l` of order at most `l`.
pub fn is_comm_bv_infty(alg: &GradedAlgebra, ops: &[LinOp]) -> bool {
    match is_multicomplex(ops) {
        Ok(r) if r.holds => ops.iter().enumerate().all(|(k, d)| order_at_most(alg, d, k + 1)),
        _ => false,
    }
}

/// Commutative BV∞ plus the Getzler relation for `D_2` and strong
/// compatibility of every `D_k`, `k >= 3`.
pub fn is_wheeled_comm_bv_infty(alg: &GradedAlgebra, ops: &[LinOp]) -> bool {
    if !is_comm_bv_infty(alg, ops) {
        return false;
    }
    if let Some(d2) = ops.get(1) {
        if !getzler_check(alg, d2).holds {
            return false;
        }
    }
    ops.iter()
        .enumerate()
        .skip(2)
        .all(|(k, d)| strong_compat_check(alg, d, k + 1).map_or(false, |r| r.check.holds))
}

/// `p : V -> H`, `i : H -> V`, `h : V -> V` with `p i = id` and
/// `i p - id = D_1 h + h D_1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeformationRetract {
    pub homology: GradedVectorSpace,
    pub p: LinOp,
    pub i: LinOp,
    pub h: LinOp,
}

impl DeformationRetract {
    pub fn identity(space: &GradedVectorSpace) -> Self {
        let n = space.dim();
        DeformationRetract {
            homology: space.clone(),
            p: LinOp::identity(n),
            i: LinOp::identity(n),
            h: LinOp::zero(n, 1),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RetractReport {
    pub shapes: bool,
    pub pi_identity: bool,
    pub homotopy: bool,
}

impl RetractReport {
    pub fn valid(&self) -> bool {
        self.shapes && self.pi_identity && self.homotopy
    }
}

pub fn validate_retract(r: &DeformationRetract, d1: &LinOp) -> RetractReport {
    let v = d1.rows();
    let hd = r.homology.dim();
    let shapes = d1.cols() == v
        && (r.p.rows(), r.p.cols()) == (hd, v)
        && (r.i.rows(), r.i.cols()) == (v, hd)
        && (r.h.rows(), r.h.cols()) == (v, v);
    if !shapes {
        return RetractReport {
            shapes,
            pi_identity: false,
            homotopy: false,
        };
    }
    let pi_identity = r.p.compose(&r.i).sub(&LinOp::identity(hd)).is_zero();
    let lhs = r.i.compose(&r.p).sub(&LinOp::identity(v));
    let rhs = d1.compose(&r.h).add(&r.h.compose(d1));
    RetractReport {
        shapes,
        pi_identity,
        homotopy: lhs.sub(&rhs).is_zero(),
    }
}

/// Sequences `(l_1, …, l_k)` with `l_i >= 2` and `Σ (l_i - 1) = n`.
pub fn transfer_compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in transfer_compositions(n - first) {
            rest.insert(0, first + 1);
            out.push(rest);
        }
    }
    out
}

/// `Σ (-1)^{k-1} p D_{l_1} h D_{l_2} h … h D_{l_k} i` over `transfer_compositions(n)`.
pub fn transfer_sum(ops: &[LinOp], r: &DeformationRetract, n: usize) -> LinOp {
    assert!(n >= 1);
    let hd = r.homology.dim();
    let mut out = LinOp::zeros(hd, hd, 2 * n as i64 - 1);
    'terms: for comp in transfer_compositions(n) {
        let mut m = r.i.clone();
        for (idx, &l) in comp.iter().enumerate().rev() {
            let Some(d) = op_at(ops, l) else {
                continue 'terms;
            };
            m = d.compose(&m);
            if idx > 0 {
                m = r.h.compose(&m);
            }
        }
        let term = r.p.compose(&m);
        out.add_assign_scaled(&Rational::sign(comp.len() as i64 - 1), &term.with_degree(out.degree()));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishingReport {
    pub holds: bool,
    pub first_failure: Option<usize>,
}

/// `transfer_sum(n) = 0` for `1 <= n <= n_max`.
pub fn hodge_vanishing_check(ops: &[LinOp], r: &DeformationRetract, n_max: usize) -> Result<VanishingReport> {
    let d1 = ops.first().ok_or_else(|| Error::PreconditionViolation("no D_1 given".to_string()))?;
    if !validate_retract(r, d1).valid() {
        return Err(Error::InvalidRetract("retract does not satisfy p i = id and i p - id = D_1 h + h D_1".to_string()));
    }
    for n in 1..=n_max {
        if !transfer_sum(ops, r, n).is_zero() {
            return Ok(VanishingReport {
                holds: false,
                first_failure: Some(n),
            });
        }
    }
    Ok(VanishingReport {
        holds: true,
        first_failure: None,
    })
}

/// `A(z) = Σ_{l >= 1} A_l z^l`; `ops[0]` is `A_1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaugeSeries {
    pub ops: Vec<LinOp>,
}

impl GaugeSeries {
    pub fn zero() -> Self {
        GaugeSeries { ops: Vec::new() }
    }

    /// The same series in the `D_l z^{l-1}` indexing used by the Givental action.
    pub fn as_givental(&self, dim: usize) -> GiventalSeries {
        let mut ops = vec![LinOp::zero(dim, 0)];
        ops.extend(self.ops.iter().cloned());
        GiventalSeries::new(ops)
    }
}

fn series_mul(a: &[LinOp], b: &[LinOp], len: usize) -> Vec<LinOp> {
    let dim = a.first().or(b.first()).map_or(0, LinOp::rows);
    let mut out: Vec<LinOp> = (0..len).map(|_| LinOp::zero(dim, 0)).collect();
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            if i + j < len && !x.is_zero() && !y.is_zero() {
                let p = x.compose(y);
                let deg = p.degree();
                if out[i + j].is_zero() {
                    out[i + j] = out[i + j].clone().with_degree(deg);
                }
                out[i + j].add_assign_scaled(&Rational::ONE, &p);
            }
        }
    }
    out
}

/// Coefficients of `exp(-A(z)) D_1 exp(A(z))` at `z^0, …, z^{len-1}`,
/// expanded as `Σ_k (-1)^k/k! ad_A^k (D_1)`.
pub fn gauge_conjugate(d1: &LinOp, a: &GaugeSeries, len: usize) -> Vec<LinOp> {
    let dim = d1.rows();
    let mut a_series = vec![LinOp::zero(dim, 0)];
    a_series.extend(a.ops.iter().cloned());
    let mut term: Vec<LinOp> = (0..len).map(|m| if m == 0 { d1.clone() } else { LinOp::zero(dim, 0) }).collect();
    let mut out = term.clone();
    for k in 1..len {
        let ax = series_mul(&a_series, &term, len);
        let xa = series_mul(&term, &a_series, len);
        let coeff = Rational::new(-1, k as i64);
        term = ax
            .iter()
            .zip(&xa)
            .map(|(p, q)| {
                let diff = if p.is_zero() { q.neg() } else { p.sub(q) };
                diff.scale(&coeff)
            })
            .collect();
        for (o, t) in out.iter_mut().zip(&term) {
            if !t.is_zero() {
                if o.is_zero() {
                    *o = o.clone().with_degree(t.degree());
                }
                o.add_assign_scaled(&Rational::ONE, t);
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaugeReport {
    pub holds: bool,
    /// Power `m` of `z` where `exp(-A) D_1 exp(A)` and `D_{m+1}` differ.
    pub first_failure: Option<usize>,
}

/// `exp(-A(z)) D_1 exp(A(z)) = D(z)` up to `z^{L-1}`.
pub fn gauge_check(ops: &[LinOp], a: &GaugeSeries, len: usize) -> GaugeReport {
    let dim = ops.first().map_or(0, LinOp::rows);
    let d1 = ops.first().cloned().unwrap_or_else(|| LinOp::zero(dim, -1));
    let conj = gauge_conjugate(&d1, a, len);
    for (m, c) in conj.iter().enumerate() {
        let target = ops.get(m).cloned().unwrap_or_else(|| LinOp::zero(dim, 0));
        if !c.sub(&target.with_degree(c.degree())).is_zero() {
            return GaugeReport {
                holds: false,
                first_failure: Some(m),
            };
        }
    }
    GaugeReport {
        holds: true,
        first_failure: None,
    }
}

/// `exp(Â).TFT` restricted to `H(V, D_1)` through the retract. The family on
/// `V` must be `D_1`-closed before restriction.
pub fn induced_cohft(
    alg: &GradedAlgebra,
    ops: &[LinOp],
    gauge: &GaugeSeries,
    r: &DeformationRetract,
    n_max: usize,
) -> Result<CorrelatorFamily> {
    let dim = alg.dim();
    let d1 = ops.first().cloned().unwrap_or_else(|| LinOp::zero(dim, -1));
    let report = gauge_check(ops, gauge, ops.len().max(1));
    if let Some(power) = report.first_failure {
        return Err(Error::GaugeViolation { power });
    }
    if !validate_retract(r, &d1).valid() {
        return Err(Error::InvalidRetract("retract does not satisfy p i = id and i p - id = D_1 h + h D_1".to_string()));
    }
    let max_n1 = n_max.saturating_sub(1);
    let seed = tft_seed(alg, n_max, max_n1)?;
    let fam = group_action_exp(&seed, &gauge.as_givental(dim), n_max)?;
    if !d1.is_zero() && !infinitesimal_action(&fam, &d1, 1)?.is_zero() {
        return Err(Error::PreconditionViolation(
            "the transformed family is not D_1-closed; the operators do not stabilize the TFT".to_string(),
        ));
    }
    restrict(&fam, r)
}

/// `p ∘ C ∘ i^{⊗n}` in genus 0, `C ∘ i^{⊗n}` in genus 1.
pub fn restrict(fam: &CorrelatorFamily, r: &DeformationRetract) -> Result<CorrelatorFamily> {
    let hd = r.homology.dim();
    let mut out = CorrelatorFamily::new(r.homology.clone(), fam.max_n0(), fam.max_n1())?;
    let cols: Vec<Vec<Rational>> = (0..hd).map(|k| r.i.column(k)).collect();
    for (d0, d) in fam.keys0() {
        let Some(m) = fam.genus0_entry(d0, &d) else { continue };
        let res = MultiLinearMap::from_fn(d.len(), hd, hd, |t| {
            let args: Vec<Vec<Rational>> = t.iter().map(|&k| cols[k].clone()).collect();
            r.p.apply(&m.evaluate(&args))
        });
        out.set_genus0(d0, &d, res)?;
    }
    for d in fam.keys1() {
        let Some(m) = fam.genus1_entry(&d) else { continue };
        let res = MultiLinearMap::functional_from_fn(d.len(), hd, |t| {
            let args: Vec<Vec<Rational>> = t.iter().map(|&k| cols[k].clone()).collect();
            m.evaluate(&args)[0].clone()
        });
        out.set_genus1(&d, res)?;
    }
    Ok(out)
}

/// A complete input for the induced-CohFT construction.
#[derive(Debug, Clone)]
pub struct HodgeExample {
    pub name: String,
    pub algebra: GradedAlgebra,
    pub ops: Vec<LinOp>,
    pub gauge: GaugeSeries,
    pub retract: DeformationRetract,
}

fn entries(rows: usize, cols: usize, degree: i64, e: &[(usize, usize, i64)]) -> LinOp {
    let e: Vec<(usize, usize, Rational)> = e.iter().map(|&(r, c, v)| (r, c, Rational::from_int(v))).collect();
    LinOp::from_entries(rows, cols, degree, &e)
}

/// `C ⊕ span(a, b, c)` with degrees 0, 2, 1 and square-zero product;
/// `D_1 b = c`, `A_1 a = b`, `D_2 = D_1 A_1 - A_1 D_1` (so `D_2 a = c`).
/// Homology is spanned by `1, a`.
pub fn gauge_example() -> HodgeExample {
    let algebra = catalog::square_zero(&[0, 2, 1]);
    let d1 = entries(4, 4, -1, &[(3, 2, 1)]);
    let a1 = entries(4, 4, 2, &[(2, 1, 1)]);
    let d2 = d1.compose(&a1).sub(&a1.compose(&d1));
    let homology = GradedVectorSpace::new(vec![0, 0]).unwrap();
    let retract = DeformationRetract {
        homology,
        p: entries(2, 4, 0, &[(0, 0, 1), (1, 1, 1)]),
        i: entries(4, 2, 0, &[(0, 0, 1), (1, 1, 1)]),
        h: entries(4, 4, 1, &[(2, 3, -1)]),
    };
    HodgeExample {
        name: "gauge".to_string(),
        algebra,
        ops: vec![d1, d2],
        gauge: GaugeSeries { ops: vec![a1] },
        retract,
    }
}

/// `C[x]/(x^2) ⊕ span(u, v)` with `D_1 u = v`; homology is `C[x]/(x^2)`.
pub fn acyclic_example() -> HodgeExample {
    let algebra = catalog::acyclic_summand();
    let d1 = entries(4, 4, -1, &[(3, 2, 1)]);
    let retract = DeformationRetract {
        homology: GradedVectorSpace::new(vec![0, 0]).unwrap(),
        p: entries(2, 4, 0, &[(0, 0, 1), (1, 1, 1)]),
        i: entries(4, 2, 0, &[(0, 0, 1), (1, 1, 1)]),
        h: entries(4, 4, 1, &[(2, 3, -1)]),
    };
    HodgeExample {
        name: "acyclic".to_string(),
        algebra,
        ops: vec![d1],
        gauge: GaugeSeries::zero(),
        retract,
    }
}

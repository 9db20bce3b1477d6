//! The expressions F_l, G_l and E_k, stabilizer verdicts for a series
//! `Σ D_l z^{l-1}` acting on a TFT, the theorem cross-check, and the two
//! recursion lemmas.

use serde::{Deserialize, Serialize};

use crate::algebra::{axpy, is_zero_vector, koszul, supertrace, zero_vector, GradedAlgebra, LinOp, MultiLinearMap, Vector};
use crate::combinat::{mask_indices, sequences_with_sum, shuffle_sign, SortedTuples};
use crate::correlators::{genus0, genus1};
use crate::error::{Error, Result};
use crate::koszul::{getzler_check, min_order, strong_compat_identity, OpContext};
use crate::rational::Rational;

/// `Σ_{l=1}^{L} D_l z^{l-1}`; `ops[l-1]` is `D_l`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GiventalSeries {
    pub ops: Vec<LinOp>,
}

impl GiventalSeries {
    pub fn new(ops: Vec<LinOp>) -> Self {
        GiventalSeries { ops }
    }

    /// Series with the single component `D z^{l-1}`.
    pub fn single(dim: usize, l: usize, d: LinOp) -> Self {
        assert!(l >= 1);
        let mut ops: Vec<LinOp> = (1..l).map(|_| LinOp::zero(dim, 0)).collect();
        ops.push(d);
        GiventalSeries { ops }
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn op(&self, l: usize) -> &LinOp {
        &self.ops[l - 1]
    }

    pub fn neg(&self) -> Self {
        GiventalSeries {
            ops: self.ops.iter().map(LinOp::neg).collect(),
        }
    }
}

fn with(d: &[i64], extra: &[i64]) -> Vec<i64> {
    let mut v = extra.to_vec();
    v.extend_from_slice(d);
    v
}

fn pick(d: &[i64], mask: usize, inside: bool) -> Vec<i64> {
    d.iter()
        .enumerate()
        .filter(|(k, _)| (mask >> k & 1 == 1) == inside)
        .map(|(_, &x)| x)
        .collect()
}

/// Per-mask coefficients of the F-shaped expression with formal index `k`.
pub fn f_coefficients(k: i64, d0: i64, d: &[i64]) -> Vec<Rational> {
    let n = d.len();
    let full = (1usize << n) - 1;
    let mut c = vec![Rational::ZERO; full + 1];
    if n == 0 {
        return c;
    }
    c[full] += &genus0(&with(d, &[d0 + k - 1]));
    for m in 0..n {
        let mut dm = d.to_vec();
        dm[m] += k - 1;
        let v = genus0(&with(&dm, &[d0]));
        c[1 << m] += &v.scale(if k % 2 == 0 { 1 } else { -1 });
    }
    for mask in 1..=full {
        if mask.count_ones() < 2 {
            continue;
        }
        let di = pick(d, mask, true);
        let dj = pick(d, mask, false);
        for i in 0..=(k - 2).max(-1) {
            let j = k - 2 - i;
            let a = genus0(&with(&di, &[i]));
            if a.is_zero() {
                continue;
            }
            let b = genus0(&with(&dj, &[d0, j]));
            c[mask] += &(&a * &b).scale(if j % 2 == 0 { -1 } else { 1 });
        }
    }
    c
}

/// Per-mask coefficients of G_l and the weight of `str(D(f_1⋯f_n·(-)))`.
pub fn g_coefficients(l: i64, d: &[i64]) -> (Vec<Rational>, Rational) {
    let n = d.len();
    let full = (1usize << n) - 1;
    let mut c = vec![Rational::ZERO; full + 1];
    if n == 0 {
        return (c, Rational::ZERO);
    }
    for m in 0..n {
        let mut dm = d.to_vec();
        dm[m] += l - 1;
        c[1 << m] += &genus1(&dm).scale(if l % 2 == 0 { 1 } else { -1 });
    }
    let mut w = Rational::ZERO;
    for i in 0..=(l - 2).max(-1) {
        let j = l - 2 - i;
        let sign = if j % 2 == 0 { -1 } else { 1 };
        for mask in 1..=full {
            if mask.count_ones() < 2 {
                continue;
            }
            let a = genus0(&with(&pick(d, mask, true), &[i]));
            if a.is_zero() {
                continue;
            }
            let b = genus1(&with(&pick(d, mask, false), &[j]));
            c[mask] += &(&a * &b).scale(sign);
        }
        let mut all = with(d, &[i]);
        all.push(j);
        w += &genus0(&all).scale(sign);
    }
    (c, &w * &Rational::new(1, 2))
}

/// `b ↦ str(D ∘ L_b)` as a covector.
pub fn trace_after(alg: &GradedAlgebra, d: &LinOp) -> Vector {
    (0..alg.dim())
        .map(|k| supertrace(alg.space(), &d.compose(&alg.left_mult(&crate::algebra::basis_vector(alg.dim(), k)))))
        .collect()
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).filter(|(x, y)| !x.is_zero() && !y.is_zero()).map(|(x, y)| x * y).sum()
}

fn product_of(alg: &GradedAlgebra, tuple: &[usize]) -> Vector {
    let mut v = crate::algebra::basis_vector(alg.dim(), tuple[0]);
    for &b in &tuple[1..] {
        v = alg.multiply_by_basis(&v, b);
    }
    v
}

/// The F-shaped expression with formal index `k` built from `D`.
pub fn e_map(alg: &GradedAlgebra, d: &LinOp, k: i64, d0: i64, ds: &[i64]) -> MultiLinearMap {
    let n = ds.len();
    let dim = alg.dim();
    if n == 0 {
        return MultiLinearMap::zeros(0, dim, dim);
    }
    let ctx = OpContext::new(alg, d);
    let coeffs = f_coefficients(k, d0, ds);
    MultiLinearMap::from_fn(n, dim, dim, |t| ctx.subset_sum(t, &coeffs))
}

/// `F_l(d_1..d_n; d_0)` built from `D`.
pub fn f_map(alg: &GradedAlgebra, d: &LinOp, l: usize, d0: i64, ds: &[i64]) -> MultiLinearMap {
    assert!(l >= 1 && !ds.is_empty());
    e_map(alg, d, l as i64, d0, ds)
}

/// `G_l(d_1..d_n)` built from `D`, a functional.
pub fn g_map(alg: &GradedAlgebra, d: &LinOp, l: usize, ds: &[i64]) -> MultiLinearMap {
    assert!(l >= 1 && !ds.is_empty());
    let ctx = OpContext::new(alg, d);
    let tr = alg.trace_form();
    let s = trace_after(alg, d);
    let (c, w) = g_coefficients(l as i64, ds);
    MultiLinearMap::functional_from_fn(ds.len(), alg.dim(), |t| {
        let mut v = dot(&tr, &ctx.subset_sum(t, &c));
        if !w.is_zero() {
            v += &(&w * &dot(&s, &product_of(alg, t)));
        }
        v
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Stabilizes,
    Fails,
}

/// First failing evaluation: expression, arity, ψ-labels, basis inputs and
/// the nonzero coordinates of the value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub genus: u32,
    pub l: usize,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d0: Option<i64>,
    pub d: Vec<i64>,
    pub inputs: Vec<usize>,
    pub value: Vec<(usize, Rational)>,
}

impl Witness {
    /// Recomputes the failing value from scratch.
    pub fn reevaluate(&self, alg: &GradedAlgebra, d: &LinOp) -> Vector {
        match self.genus {
            0 => {
                let ctx = OpContext::new(alg, d);
                ctx.subset_sum(&self.inputs, &f_coefficients(self.l as i64, self.d0.unwrap_or(0), &self.d))
            }
            _ => vec![g_map(alg, d, self.l, &self.d).value(&self.inputs).clone()],
        }
    }
}

fn nonzero_coords(v: &[Rational]) -> Vec<(usize, Rational)> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(k, x)| (k, x.clone())).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelVerdict {
    pub l: usize,
    pub status: Status,
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizerVerdict {
    pub levels: Vec<LevelVerdict>,
}

impl StabilizerVerdict {
    pub fn stabilizes(&self) -> bool {
        self.levels.iter().all(|v| v.status == Status::Stabilizes)
    }

    pub fn first_failure(&self) -> Option<&LevelVerdict> {
        self.levels.iter().find(|v| v.status == Status::Fails)
    }
}

struct Key {
    d0: i64,
    d: Vec<i64>,
    terms: Vec<(usize, Rational)>,
    weight: Rational,
}

fn sparse(c: Vec<Rational>) -> Vec<(usize, Rational)> {
    c.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect()
}

fn genus0_keys(l: usize, n: usize) -> Vec<Key> {
    let mut keys = Vec::new();
    let Some(total) = (n as i64 - 1).checked_sub(l as i64).filter(|t| *t >= 0) else {
        return keys;
    };
    for d0 in 0..=total {
        for d in sequences_with_sum(n, (total - d0) as usize) {
            let d: Vec<i64> = d.into_iter().map(|x| x as i64).collect();
            let terms = sparse(f_coefficients(l as i64, d0, &d));
            if !terms.is_empty() {
                keys.push(Key {
                    d0,
                    d,
                    terms,
                    weight: Rational::ZERO,
                });
            }
        }
    }
    keys
}

fn genus1_keys(l: usize, n: usize) -> Vec<Key> {
    let mut keys = Vec::new();
    if n + 1 < l {
        return keys;
    }
    for d in sequences_with_sum(n, n + 1 - l) {
        let d: Vec<i64> = d.into_iter().map(|x| x as i64).collect();
        let (c, weight) = g_coefficients(l as i64, &d);
        let terms = sparse(c);
        if !terms.is_empty() || !weight.is_zero() {
            keys.push(Key { d0: 0, d, terms, weight });
        }
    }
    keys
}

/// Searches all keys of one arity over sorted basis tuples. Simultaneous
/// permutation of inputs and labels changes the value by a sign only, so
/// sorted inputs with all ordered labels cover every case.
fn scan_level(
    alg: &GradedAlgebra,
    d: &LinOp,
    l: usize,
    n: usize,
    genus0_keys: &[Key],
    genus1_keys: &[Key],
    trace_data: Option<(&Vector, &Vector)>,
) -> Option<Witness> {
    if genus0_keys.is_empty() && genus1_keys.is_empty() {
        return None;
    }
    let ctx = OpContext::new(alg, d);
    for tuple in SortedTuples::new(n, alg.dim()) {
        let terms = ctx.subset_terms(&tuple);
        for key in genus0_keys {
            let mut v = zero_vector(alg.dim());
            for (mask, c) in &key.terms {
                axpy(&mut v, c, &terms[*mask]);
            }
            if !is_zero_vector(&v) {
                return Some(Witness {
                    genus: 0,
                    l,
                    n,
                    d0: Some(key.d0),
                    d: key.d.clone(),
                    inputs: tuple,
                    value: nonzero_coords(&v),
                });
            }
        }
        if genus1_keys.is_empty() {
            continue;
        }
        let (tr, s) = trace_data.expect("trace data for genus one");
        let traced: Vec<Rational> = terms.iter().map(|t| dot(tr, t)).collect();
        let prod_trace = dot(s, &product_of(alg, &tuple));
        for key in genus1_keys {
            let mut v = Rational::ZERO;
            for (mask, c) in &key.terms {
                v += &(c * &traced[*mask]);
            }
            v += &(&key.weight * &prod_trace);
            if !v.is_zero() {
                return Some(Witness {
                    genus: 1,
                    l,
                    n,
                    d0: None,
                    d: key.d.clone(),
                    inputs: tuple,
                    value: vec![(0, v)],
                });
            }
        }
    }
    None
}

/// First nonzero F_l value for arities `n <= n_max`.
pub fn genus0_level(alg: &GradedAlgebra, d: &LinOp, l: usize, n_max: usize) -> Option<Witness> {
    (1..=n_max).find_map(|n| scan_level(alg, d, l, n, &genus0_keys(l, n), &[], None))
}

/// First nonzero F_l or G_l value for arities `n <= n_max`.
pub fn genus01_level(alg: &GradedAlgebra, d: &LinOp, l: usize, n_max: usize) -> Option<Witness> {
    let tr = alg.trace_form();
    let s = trace_after(alg, d);
    (1..=n_max).find_map(|n| scan_level(alg, d, l, n, &genus0_keys(l, n), &genus1_keys(l, n), Some((&tr, &s))))
}

/// First nonzero G_l value for arities `n <= n_max`.
pub fn genus1_level(alg: &GradedAlgebra, d: &LinOp, l: usize, n_max: usize) -> Option<Witness> {
    let tr = alg.trace_form();
    let s = trace_after(alg, d);
    (1..=n_max).find_map(|n| scan_level(alg, d, l, n, &[], &genus1_keys(l, n), Some((&tr, &s))))
}

fn verdict(series: &GiventalSeries, mut level: impl FnMut(usize, &LinOp) -> Option<Witness>) -> StabilizerVerdict {
    let levels = (1..=series.len())
        .map(|l| {
            let witness = level(l, series.op(l));
            LevelVerdict {
                l,
                status: if witness.is_some() { Status::Fails } else { Status::Stabilizes },
                witness,
            }
        })
        .collect();
    StabilizerVerdict { levels }
}

pub fn stabilizes_genus0(alg: &GradedAlgebra, series: &GiventalSeries, n_max: usize) -> StabilizerVerdict {
    verdict(series, |l, d| genus0_level(alg, d, l, n_max))
}

pub fn stabilizes_genus01(alg: &GradedAlgebra, series: &GiventalSeries, n_max: usize) -> StabilizerVerdict {
    verdict(series, |l, d| genus01_level(alg, d, l, n_max))
}

/// Trace condition of the genus 0–1 theorem at level `l`, for an operator of order at most `l`.
pub fn trace_condition(alg: &GradedAlgebra, d: &LinOp, l: usize) -> bool {
    match l {
        0 | 1 => true,
        2 => getzler_check(alg, d).holds,
        _ => strong_compat_identity(alg, d, l).holds,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrosscheckLine {
    pub l: usize,
    /// `n_max >= l + 1`, so the truncated scan sees the defining bracket.
    pub conclusive: bool,
    pub order_at_most_l: bool,
    pub f_vanishes: bool,
    pub f_witness: Option<Witness>,
    pub trace_condition: Option<bool>,
    pub fg_vanish: Option<bool>,
    pub g_witness: Option<Witness>,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrosscheckReport {
    pub lines: Vec<CrosscheckLine>,
    pub discrepancies: Vec<String>,
}

impl CrosscheckLine {
    pub fn consistent(&self) -> bool {
        self.f_vanishes == self.order_at_most_l && self.fg_vanish == self.trace_condition
    }
}

impl CrosscheckReport {
    pub fn is_clean(&self) -> bool {
        self.discrepancies.is_empty()
    }

    /// Recomputes agreement flags and the discrepancy list from the lines.
    pub fn reassess(&mut self, n_max: usize) {
        self.discrepancies.clear();
        for line in &mut self.lines {
            line.agrees = line.consistent();
            if line.conclusive && !line.agrees {
                self.discrepancies.push(describe_discrepancy(line, n_max));
            }
        }
    }
}

/// Compares the vanishing of F (and G when `genus1`) with the order and
/// trace conditions, level by level.
pub fn theorem_crosscheck(alg: &GradedAlgebra, series: &GiventalSeries, n_max: usize, genus1: bool) -> CrosscheckReport {
    let lines = (1..=series.len())
        .map(|l| {
            let d = series.op(l);
            crosscheck_level(alg, d, l, n_max, genus1, min_order(alg, d, l).order())
        })
        .collect();
    let mut report = CrosscheckReport {
        lines,
        discrepancies: Vec::new(),
    };
    report.reassess(n_max);
    report
}

fn describe_discrepancy(line: &CrosscheckLine, n_max: usize) -> String {
    let l = line.l;
    if line.f_vanishes != line.order_at_most_l {
        format!(
            "l = {l}: F vanishes up to n = {n_max} is {} but order <= {l} is {}",
            line.f_vanishes, line.order_at_most_l
        )
    } else {
        format!(
            "l = {l}: F and G vanish up to n = {n_max} is {:?} but order and trace condition is {:?}",
            line.fg_vanish, line.trace_condition
        )
    }
}

/// One level of the cross-check; `order` is the minimal order if known to be at most `l`.
pub fn crosscheck_level(alg: &GradedAlgebra, d: &LinOp, l: usize, n_max: usize, genus1: bool, order: Option<usize>) -> CrosscheckLine {
    let conclusive = n_max > l;
    let order_ok = order.is_some_and(|m| m <= l);
    let f_witness = genus0_level(alg, d, l, n_max);
    let f_vanishes = f_witness.is_none();
    let mut agrees = f_vanishes == order_ok;
    let (trace_ok, fg_vanish, g_witness) = if genus1 {
        let trace_ok = order_ok && trace_condition(alg, d, l);
        let g_witness = genus1_level(alg, d, l, n_max);
        let fg = f_vanishes && g_witness.is_none();
        agrees &= fg == trace_ok;
        (Some(trace_ok), Some(fg), g_witness)
    } else {
        (None, None, None)
    };
    CrosscheckLine {
        l,
        conclusive,
        order_at_most_l: order_ok,
        f_vanishes,
        f_witness,
        trace_condition: trace_ok,
        fg_vanish,
        g_witness,
        agrees,
    }
}

/// `Σ_k v_k E(e_k, b_rest)` for an E-shaped expression whose first slot gets `v`.
fn eval_first_slot(ctx: &OpContext<'_>, coeffs: &[Rational], v: &[Rational], rest: &[usize]) -> Vector {
    let mut out = zero_vector(ctx.alg.dim());
    let mut t = Vec::with_capacity(rest.len() + 1);
    for (k, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        t.clear();
        t.push(k);
        t.extend_from_slice(rest);
        axpy(&mut out, x, &ctx.subset_sum(&t, coeffs));
    }
    out
}

fn nonzero_coeffs(c: &[Rational]) -> bool {
    c.iter().any(|x| !x.is_zero())
}

struct Split {
    mask: usize,
    inside: Vec<usize>,
    outside: Vec<usize>,
}

fn splits(n: usize, include_empty: bool) -> impl Iterator<Item = Split> {
    let start = if include_empty { 0 } else { 1 };
    (start..1usize << n).map(move |mask| Split {
        mask,
        inside: mask_indices(mask, n),
        outside: mask_indices(((1 << n) - 1) & !mask, n),
    })
}

fn labels(ds: &[i64], idx: &[usize]) -> Vec<i64> {
    idx.iter().map(|&i| ds[i]).collect()
}

fn entries(tuple: &[usize], idx: &[usize]) -> Vec<usize> {
    idx.iter().map(|&i| tuple[i]).collect()
}

enum G0Term {
    /// `c ε F(0, d_J; d_0)(b_I, b_J)`
    Pivot { split: Split, c: Rational, coeffs: Vec<Rational> },
    /// `c ε (-1)^{|D||b_I|} b_I F(d_J; 0)(b_J)`
    Outside { split: Split, c: Rational, coeffs: Vec<Rational> },
}

/// Both sides of the genus-zero recursion lemma, prepared for evaluation on tuples.
pub struct LemmaG0<'a> {
    ctx: OpContext<'a>,
    lhs: Vec<Rational>,
    terms: Vec<G0Term>,
}

impl<'a> LemmaG0<'a> {
    pub fn new(alg: &'a GradedAlgebra, d: &'a LinOp, l: usize, d0: i64, ds: &[i64], pivot: usize) -> Self {
        let k = l as i64;
        let mut bumped = ds.to_vec();
        bumped[pivot] += 1;
        let mut lhs = f_coefficients(k, d0, &bumped);
        for (x, y) in lhs.iter_mut().zip(f_coefficients(k, d0 + 1, ds)) {
            *x += &y;
        }
        let mut terms = Vec::new();
        for split in splits(ds.len(), false) {
            let di = labels(ds, &split.inside);
            let dj = labels(ds, &split.outside);
            if split.mask >> pivot & 1 == 1 {
                let c = genus0(&with(&di, &[0]));
                let coeffs = f_coefficients(k, d0, &with(&dj, &[0]));
                if !c.is_zero() && nonzero_coeffs(&coeffs) {
                    terms.push(G0Term::Pivot { split, c, coeffs });
                }
            } else {
                let c = genus0(&with(&di, &[d0, 0]));
                let coeffs = f_coefficients(k, 0, &dj);
                if !c.is_zero() && nonzero_coeffs(&coeffs) {
                    terms.push(G0Term::Outside { split, c, coeffs });
                }
            }
        }
        LemmaG0 {
            ctx: OpContext::new(alg, d),
            lhs,
            terms,
        }
    }

    pub fn sides(&self, tuple: &[usize]) -> (Vector, Vector) {
        let alg = self.ctx.alg;
        let lhs = self.ctx.subset_sum(tuple, &self.lhs);
        let degrees = self.ctx.tuple_degrees(tuple);
        let mut rhs = zero_vector(alg.dim());
        for term in &self.terms {
            match term {
                G0Term::Pivot { split, c, coeffs } => {
                    let fi = product_of(alg, &entries(tuple, &split.inside));
                    let v = eval_first_slot(&self.ctx, coeffs, &fi, &entries(tuple, &split.outside));
                    let eps = shuffle_sign(&degrees, split.mask);
                    axpy(&mut rhs, &c.scale(eps), &v);
                }
                G0Term::Outside { split, c, coeffs } => {
                    let fi = product_of(alg, &entries(tuple, &split.inside));
                    let v = self.ctx.subset_sum(&entries(tuple, &split.outside), coeffs);
                    let deg_i = subset_degree(alg, tuple, &split.inside);
                    let eps = shuffle_sign(&degrees, split.mask) * koszul(self.ctx.degree(), deg_i);
                    axpy(&mut rhs, &c.scale(eps), &alg.mul(&fi, &v));
                }
            }
        }
        (lhs, rhs)
    }
}

fn subset_degree(alg: &GradedAlgebra, tuple: &[usize], idx: &[usize]) -> i64 {
    idx.iter().map(|&i| alg.degree(tuple[i])).sum()
}

/// Genus-zero recursion lemma on all basis tuples.
pub fn lemma_recursion_check_g0(alg: &GradedAlgebra, d: &LinOp, l: usize, d0: i64, ds: &[i64], pivot: usize) -> Result<crate::koszul::Check> {
    if pivot >= ds.len() {
        return Err(Error::PreconditionViolation(format!("pivot {pivot} out of range for {} points", ds.len())));
    }
    let lemma = LemmaG0::new(alg, d, l, d0, ds, pivot);
    Ok(crate::koszul::Check::first_failure(
        crate::algebra::BasisTuples::new(ds.len(), alg.dim()),
        |t| {
            let (a, b) = lemma.sides(t);
            a == b
        },
    ))
}

struct G1Term {
    split: Split,
    /// `-⟨τ_0 τ_{d_I}⟩_1` with the E_{l-1} coefficients
    first: Option<(Rational, Vec<Rational>)>,
    /// `(1/24)⟨τ_0^3 τ_{d_I}⟩_0` with the E_{l-2} coefficients
    second: Option<(Rational, Vec<Rational>)>,
}

/// Both sides of the genus-one recursion lemma, prepared for evaluation on tuples.
pub struct LemmaG1<'a> {
    ctx: OpContext<'a>,
    trace: Vector,
    trace_after: Vector,
    lhs: (Vec<Rational>, Rational),
    terms: Vec<G1Term>,
    /// At `l = 2` the `E_{l-2}` group is replaced by
    /// `⟨τ_0^2 τ_d⟩_0 ((1/24) Σ_m str(f_1⋯D(f_m)⋯f_n·(-)) - (1/2) str(D(f_1⋯f_n·(-))))`.
    getzler: Option<(Vec<Rational>, Rational)>,
}

impl<'a> LemmaG1<'a> {
    pub fn new(alg: &'a GradedAlgebra, d: &'a LinOp, l: usize, ds: &[i64]) -> Self {
        let k = l as i64;
        let mut terms = Vec::new();
        for split in splits(ds.len(), true) {
            if split.outside.is_empty() {
                continue;
            }
            let di = labels(ds, &split.inside);
            let dj = labels(ds, &split.outside);
            let c1 = -genus1(&with(&di, &[0]));
            let e1 = f_coefficients(k - 1, 0, &dj);
            let c2 = &genus0(&with(&di, &[0, 0, 0])) * &Rational::new(1, 24);
            let e2 = f_coefficients(k - 2, 0, &dj);
            let first = (!c1.is_zero() && nonzero_coeffs(&e1)).then_some((c1, e1));
            let second = (l > 2 && !c2.is_zero() && nonzero_coeffs(&e2)).then_some((c2, e2));
            if first.is_some() || second.is_some() {
                terms.push(G1Term { split, first, second });
            }
        }
        let getzler = (l == 2 && !ds.is_empty()).then(|| {
            let z = genus0(&with(ds, &[0, 0]));
            let mut c = vec![Rational::ZERO; 1 << ds.len()];
            for m in 0..ds.len() {
                c[1 << m] = &z * &Rational::new(1, 24);
            }
            (c, &z * &Rational::new(-1, 2))
        });
        LemmaG1 {
            ctx: OpContext::new(alg, d),
            trace: alg.trace_form(),
            trace_after: trace_after(alg, d),
            lhs: g_coefficients(k, ds),
            terms,
            getzler,
        }
    }

    pub fn sides(&self, tuple: &[usize]) -> (Rational, Rational) {
        let alg = self.ctx.alg;
        let (c, w) = &self.lhs;
        let mut lhs = dot(&self.trace, &self.ctx.subset_sum(tuple, c));
        if !w.is_zero() {
            lhs += &(w * &dot(&self.trace_after, &product_of(alg, tuple)));
        }
        let degrees = self.ctx.tuple_degrees(tuple);
        let mut rhs = Rational::ZERO;
        for term in &self.terms {
            let split = &term.split;
            let rest = entries(tuple, &split.outside);
            let eps = shuffle_sign(&degrees, split.mask) * koszul(self.ctx.degree(), subset_degree(alg, tuple, &split.inside));
            for (c, coeffs) in term.first.iter().chain(term.second.iter()) {
                let mut v = self.ctx.subset_sum(&rest, coeffs);
                if !split.inside.is_empty() {
                    v = alg.mul(&product_of(alg, &entries(tuple, &split.inside)), &v);
                }
                rhs += &(c * &dot(&self.trace, &v)).scale(eps);
            }
        }
        if let Some((c, w)) = &self.getzler {
            rhs += &dot(&self.trace, &self.ctx.subset_sum(tuple, c));
            rhs += &(w * &dot(&self.trace_after, &product_of(alg, tuple)));
        }
        (lhs, rhs)
    }
}

/// Genus-one recursion lemma on all basis tuples.
pub fn lemma_recursion_check_g1(alg: &GradedAlgebra, d: &LinOp, l: usize, ds: &[i64]) -> Result<crate::koszul::Check> {
    if l < 2 {
        return Err(Error::PreconditionViolation(format!("the genus-one recursion needs l >= 2, got {l}")));
    }
    let lemma = LemmaG1::new(alg, d, l, ds);
    Ok(crate::koszul::Check::first_failure(
        crate::algebra::BasisTuples::new(ds.len(), alg.dim()),
        |t| {
            let (a, b) = lemma.sides(t);
            a == b
        },
    ))
}

//! Tabulated genus-0 and genus-1 correlator families and the Givental action on them.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{axpy, koszul, parity, zero_vector, GradedAlgebra, GradedVectorSpace, LinOp, MultiLinearMap, Vector};
use crate::combinat::{mask_indices, sequences_with_sum, shuffle_sign};
use crate::correlators::{genus0, genus1};
use crate::error::{Error, Result};
use crate::givental::GiventalSeries;
use crate::rational::Rational;

/// Genus-0 entries are keyed by `(d_0, d_1..d_n)` with `n >= 2` inputs and
/// `d_0 + Σd <= n - 2`; genus-1 entries by `d_1..d_n` with `n >= 1` and
/// `Σd <= n`. Missing entries are zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelatorFamily {
    space: GradedVectorSpace,
    max_n0: usize,
    max_n1: usize,
    genus0: BTreeMap<(i64, Vec<i64>), MultiLinearMap>,
    genus1: BTreeMap<Vec<i64>, MultiLinearMap>,
}

fn valid0(d0: i64, d: &[i64]) -> bool {
    d.len() >= 2 && d0 >= 0 && d.iter().all(|&x| x >= 0) && d0 + d.iter().sum::<i64>() <= d.len() as i64 - 2
}

fn valid1(d: &[i64]) -> bool {
    !d.is_empty() && d.iter().all(|&x| x >= 0) && d.iter().sum::<i64>() <= d.len() as i64
}

impl CorrelatorFamily {
    /// Empty family; genus-one arities need one more genus-zero arity for the
    /// self-contraction term of the action.
    pub fn new(space: GradedVectorSpace, max_n0: usize, max_n1: usize) -> Result<Self> {
        if max_n1 > 0 && max_n1 + 1 > max_n0 {
            return Err(Error::TruncationExceeded(format!(
                "genus-one arity {max_n1} needs genus-zero arity {} but the family stops at {max_n0}",
                max_n1 + 1
            )));
        }
        Ok(CorrelatorFamily {
            space,
            max_n0,
            max_n1,
            genus0: BTreeMap::new(),
            genus1: BTreeMap::new(),
        })
    }

    pub fn space(&self) -> &GradedVectorSpace {
        &self.space
    }

    pub fn max_n0(&self) -> usize {
        self.max_n0
    }

    pub fn max_n1(&self) -> usize {
        self.max_n1
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// All admissible genus-0 keys, by arity then lexicographically.
    pub fn keys0(&self) -> Vec<(i64, Vec<i64>)> {
        let mut out = Vec::new();
        for n in 2..=self.max_n0 {
            for total in 0..=n - 2 {
                for seq in sequences_with_sum(n + 1, total) {
                    let seq: Vec<i64> = seq.into_iter().map(|x| x as i64).collect();
                    out.push((seq[0], seq[1..].to_vec()));
                }
            }
        }
        out
    }

    pub fn keys1(&self) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        for n in 1..=self.max_n1 {
            for total in 0..=n {
                for seq in sequences_with_sum(n, total) {
                    out.push(seq.into_iter().map(|x| x as i64).collect());
                }
            }
        }
        out
    }

    pub fn genus0_entry(&self, d0: i64, d: &[i64]) -> Option<&MultiLinearMap> {
        if d.len() > self.max_n0 {
            return None;
        }
        self.genus0.get(&(d0, d.to_vec()))
    }

    pub fn genus1_entry(&self, d: &[i64]) -> Option<&MultiLinearMap> {
        if d.len() > self.max_n1 {
            return None;
        }
        self.genus1.get(d)
    }

    fn check_arity0(&self, n: usize) -> Result<()> {
        if n > self.max_n0 {
            return Err(Error::TruncationExceeded(format!("genus-zero arity {n} exceeds {}", self.max_n0)));
        }
        Ok(())
    }

    pub fn set_genus0(&mut self, d0: i64, d: &[i64], m: MultiLinearMap) -> Result<()> {
        self.check_arity0(d.len())?;
        assert!(valid0(d0, d), "inadmissible genus-zero key ({d0}; {d:?})");
        assert!(!m.is_functional() && m.arity() == d.len() && m.in_dim() == self.dim() && m.out_dim() == self.dim());
        if m.is_zero() {
            self.genus0.remove(&(d0, d.to_vec()));
        } else {
            self.genus0.insert((d0, d.to_vec()), m);
        }
        Ok(())
    }

    pub fn set_genus1(&mut self, d: &[i64], m: MultiLinearMap) -> Result<()> {
        if d.len() > self.max_n1 {
            return Err(Error::TruncationExceeded(format!("genus-one arity {} exceeds {}", d.len(), self.max_n1)));
        }
        assert!(valid1(d), "inadmissible genus-one key {d:?}");
        assert!(m.is_functional() && m.arity() == d.len() && m.in_dim() == self.dim());
        if m.is_zero() {
            self.genus1.remove(d);
        } else {
            self.genus1.insert(d.to_vec(), m);
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.genus0.is_empty() && self.genus1.is_empty()
    }

    pub fn nonzero_entries(&self) -> usize {
        self.genus0.len() + self.genus1.len()
    }

    fn empty_like(&self) -> Self {
        CorrelatorFamily {
            space: self.space.clone(),
            max_n0: self.max_n0,
            max_n1: self.max_n1,
            genus0: BTreeMap::new(),
            genus1: BTreeMap::new(),
        }
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, c: &Rational, other: &CorrelatorFamily) -> CorrelatorFamily {
        assert_eq!((self.max_n0, self.max_n1, self.dim()), (other.max_n0, other.max_n1, other.dim()));
        let mut out = self.clone();
        for (k, m) in &other.genus0 {
            let e = out.genus0.entry(k.clone()).or_insert_with(|| MultiLinearMap::zeros(m.arity(), m.in_dim(), m.out_dim()));
            e.add_scaled(c, m);
        }
        for (k, m) in &other.genus1 {
            let e = out.genus1.entry(k.clone()).or_insert_with(|| MultiLinearMap::zero_functional(m.arity(), m.in_dim()));
            e.add_scaled(c, m);
        }
        out.genus0.retain(|_, m| !m.is_zero());
        out.genus1.retain(|_, m| !m.is_zero());
        out
    }

    pub fn scale(&self, c: &Rational) -> CorrelatorFamily {
        self.empty_like().add_scaled(c, self)
    }

    /// Restriction to smaller arities.
    pub fn truncate(&self, max_n0: usize, max_n1: usize) -> Result<CorrelatorFamily> {
        if max_n0 > self.max_n0 || max_n1 > self.max_n1 {
            return Err(Error::TruncationExceeded(format!(
                "cannot extend a family truncated at ({}, {}) to ({max_n0}, {max_n1})",
                self.max_n0, self.max_n1
            )));
        }
        let mut out = CorrelatorFamily::new(self.space.clone(), max_n0, max_n1)?;
        out.genus0 = self.genus0.iter().filter(|((_, d), _)| d.len() <= max_n0).map(|(k, v)| (k.clone(), v.clone())).collect();
        out.genus1 = self.genus1.iter().filter(|(d, _)| d.len() <= max_n1).map(|(k, v)| (k.clone(), v.clone())).collect();
        Ok(out)
    }
}

fn product_of(alg: &GradedAlgebra, tuple: &[usize]) -> Vector {
    let mut v = crate::algebra::basis_vector(alg.dim(), tuple[0]);
    for &b in &tuple[1..] {
        v = alg.multiply_by_basis(&v, b);
    }
    v
}

/// The family of a TFT: `⟨τ_{d_0} τ_d⟩_0 μ_n` in genus 0 and
/// `⟨τ_d⟩_1 str(μ_n(-) · (-))` in genus 1.
pub fn tft_seed(alg: &GradedAlgebra, max_n0: usize, max_n1: usize) -> Result<CorrelatorFamily> {
    let mut fam = CorrelatorFamily::new(alg.space().clone(), max_n0, max_n1)?;
    let dim = alg.dim();
    let tr = alg.trace_form();
    for (d0, d) in fam.keys0() {
        let c = genus0(&[&[d0][..], &d].concat());
        if c.is_zero() {
            continue;
        }
        let m = MultiLinearMap::from_fn(d.len(), dim, dim, |t| product_of(alg, t).iter().map(|x| x * &c).collect());
        fam.set_genus0(d0, &d, m)?;
    }
    for d in fam.keys1() {
        let c = genus1(&d);
        if c.is_zero() {
            continue;
        }
        let m = MultiLinearMap::functional_from_fn(d.len(), dim, |t| {
            let p = product_of(alg, t);
            &c * &tr.iter().zip(&p).map(|(a, b)| a * b).sum::<Rational>()
        });
        fam.set_genus1(&d, m)?;
    }
    Ok(fam)
}

/// `Σ_k v_k M(.., e_k at slot, ..)`.
fn eval_slot(m: &MultiLinearMap, tuple: &mut [usize], slot: usize, v: &[Rational], out: &mut Vector, c: &Rational) {
    let saved = tuple[slot];
    for (k, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        tuple[slot] = k;
        axpy(out, &(c * x), m.get(tuple));
    }
    tuple[slot] = saved;
}

struct Boundary<'a> {
    mask: usize,
    inside: Vec<usize>,
    outside: Vec<usize>,
    inner: &'a MultiLinearMap,
    outer: &'a MultiLinearMap,
    sign: Rational,
}

fn bump(d: &[i64], m: usize, by: i64) -> Vec<i64> {
    let mut v = d.to_vec();
    v[m] += by;
    v
}

fn labels(d: &[i64], idx: &[usize]) -> Vec<i64> {
    idx.iter().map(|&i| d[i]).collect()
}

fn boundary_terms<'a>(
    inner_fam: &'a CorrelatorFamily,
    l: i64,
    d: &[i64],
    outer_of: impl Fn(i64, &[i64]) -> Option<&'a MultiLinearMap>,
    min_outside: usize,
) -> Vec<Boundary<'a>> {
    let n = d.len();
    let mut out = Vec::new();
    for mask in 1usize..1 << n {
        let inside = mask_indices(mask, n);
        let outside = mask_indices(((1 << n) - 1) & !mask, n);
        if inside.len() < 2 || outside.len() < min_outside {
            continue;
        }
        for i in 0..=l - 2 {
            let j = l - 2 - i;
            let Some(inner) = inner_fam.genus0_entry(i, &labels(d, &inside)) else {
                continue;
            };
            let Some(outer) = outer_of(j, &labels(d, &outside)) else {
                continue;
            };
            out.push(Boundary {
                mask,
                inside: inside.clone(),
                outside: outside.clone(),
                inner,
                outer,
                sign: Rational::sign(i + 1),
            });
        }
    }
    out
}

fn apply_boundaries(terms: &[Boundary<'_>], d_op: &LinOp, tuple: &[usize], degrees: &[i64], out: &mut Vector) {
    for b in terms {
        let ti: Vec<usize> = b.inside.iter().map(|&i| tuple[i]).collect();
        let u = d_op.apply(b.inner.get(&ti));
        if u.iter().all(Rational::is_zero) {
            continue;
        }
        let mut to: Vec<usize> = Vec::with_capacity(b.outside.len() + 1);
        to.push(0);
        to.extend(b.outside.iter().map(|&j| tuple[j]));
        let eps = b.sign.scale(shuffle_sign(degrees, b.mask));
        eval_slot(b.outer, &mut to, 0, &u, out, &eps);
    }
}

/// The action splits as `lin(C) + quad(C, C)`, where `quad` collects the
/// terms gluing an outer correlator to `D` applied to an inner genus-0 one.
/// `lin` and `quad` are accumulated into `out` when given.
fn accumulate(
    out: &mut CorrelatorFamily,
    lin: Option<&CorrelatorFamily>,
    quad: Option<(&CorrelatorFamily, &CorrelatorFamily)>,
    d_op: &LinOp,
    l: usize,
    weight: &Rational,
) -> Result<()> {
    let dim = out.dim();
    let li = l as i64;
    let degs = out.space.degrees().to_vec();
    let out_sign = Rational::sign(li);
    let half = Rational::new(1, 2);
    let shape = out.clone();

    for (d0, d) in shape.keys0() {
        let n = d.len();
        let output = lin.and_then(|c| c.genus0_entry(d0 + li - 1, &d));
        let inputs: Vec<(usize, &MultiLinearMap)> = match lin {
            Some(c) => (0..n).filter_map(|m| c.genus0_entry(d0, &bump(&d, m, li - 1)).map(|e| (m, e))).collect(),
            None => Vec::new(),
        };
        let bounds = match quad {
            Some((outer, inner)) => boundary_terms(inner, li, &d, |j, dj| outer.genus0_entry(d0, &[&[j][..], dj].concat()), 1),
            None => Vec::new(),
        };
        if output.is_none() && inputs.is_empty() && bounds.is_empty() {
            continue;
        }
        let m = MultiLinearMap::from_fn(n, dim, dim, |t| {
            let degrees: Vec<i64> = t.iter().map(|&b| degs[b]).collect();
            let mut v = zero_vector(dim);
            if let Some(e) = output {
                axpy(&mut v, &out_sign, &d_op.apply(e.get(t)));
            }
            let mut tt = t.to_vec();
            for (slot, e) in &inputs {
                let passed: i64 = degrees[..*slot].iter().sum();
                let s = Rational::from_int(koszul(d_op.degree(), passed));
                eval_slot(e, &mut tt, *slot, &d_op.column(t[*slot]), &mut v, &s);
            }
            apply_boundaries(&bounds, d_op, t, &degrees, &mut v);
            v
        });
        let mut acc = out.genus0_entry(d0, &d).cloned().unwrap_or_else(|| MultiLinearMap::zeros(n, dim, dim));
        acc.add_scaled(weight, &m);
        out.set_genus0(d0, &d, acc)?;
    }

    for d in shape.keys1() {
        let n = d.len();
        if n + 1 > shape.max_n0 {
            return Err(Error::TruncationExceeded(format!("genus-one arity {n} needs genus-zero arity {}", n + 1)));
        }
        let inputs: Vec<(usize, &MultiLinearMap)> = match lin {
            Some(c) => (0..n).filter_map(|m| c.genus1_entry(&bump(&d, m, li - 1)).map(|e| (m, e))).collect(),
            None => Vec::new(),
        };
        let bounds = match quad {
            Some((outer, inner)) => boundary_terms(inner, li, &d, |j, dj| outer.genus1_entry(&[&[j][..], dj].concat()), 0),
            None => Vec::new(),
        };
        let mut loops: Vec<(Rational, &MultiLinearMap)> = Vec::new();
        if let Some(c) = lin {
            for i in 0..=li - 2 {
                let mut dd = d.clone();
                dd.push(li - 2 - i);
                if let Some(e) = c.genus0_entry(i, &dd) {
                    loops.push((&Rational::sign(i + 1) * &half, e));
                }
            }
        }
        if inputs.is_empty() && bounds.is_empty() && loops.is_empty() {
            continue;
        }
        let m = MultiLinearMap::functional_from_fn(n, dim, |t| {
            let degrees: Vec<i64> = t.iter().map(|&b| degs[b]).collect();
            let mut v = vec![Rational::ZERO];
            let mut tt = t.to_vec();
            for (slot, e) in &inputs {
                let passed: i64 = degrees[..*slot].iter().sum();
                let s = Rational::from_int(koszul(d_op.degree(), passed));
                eval_slot(e, &mut tt, *slot, &d_op.column(t[*slot]), &mut v, &s);
            }
            apply_boundaries(&bounds, d_op, t, &degrees, &mut v);
            let total: i64 = degrees.iter().sum();
            for (c, e) in &loops {
                // ξ: supertrace of x ↦ (-1)^{|D| Σ|b|} C(b, D x)
                let mut acc = Rational::ZERO;
                let mut full = t.to_vec();
                full.push(0);
                for x in 0..dim {
                    let mut col = vec![Rational::ZERO; dim];
                    eval_slot(e, &mut full, n, &d_op.column(x), &mut col, &Rational::ONE);
                    if !col[x].is_zero() {
                        acc += &col[x].scale(if parity(degs[x]) == 1 { -1 } else { 1 });
                    }
                }
                v[0] += &(&acc * c).scale(koszul(d_op.degree(), total));
            }
            v[0].clone()
        });
        let mut acc = out.genus1_entry(&d).cloned().unwrap_or_else(|| MultiLinearMap::zero_functional(n, dim));
        acc.add_scaled(weight, &m);
        out.set_genus1(&d, acc)?;
    }
    Ok(())
}

fn check_op(fam: &CorrelatorFamily, d_op: &LinOp) -> Result<()> {
    let dim = fam.dim();
    if d_op.rows() != dim || d_op.cols() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: d_op.rows() });
    }
    Ok(())
}

/// Infinitesimal action of `D z^{l-1}` (any `l >= 1`) on a family. It is
/// quadratic in the family.
pub fn infinitesimal_action(fam: &CorrelatorFamily, d_op: &LinOp, l: usize) -> Result<CorrelatorFamily> {
    assert!(l >= 1);
    check_op(fam, d_op)?;
    let mut out = fam.empty_like();
    if !d_op.is_zero() {
        accumulate(&mut out, Some(fam), Some((fam, fam)), d_op, l, &Rational::ONE)?;
    }
    Ok(out)
}

/// Sum of the infinitesimal actions of all components of the series.
pub fn series_action(fam: &CorrelatorFamily, series: &GiventalSeries) -> Result<CorrelatorFamily> {
    let mut out = fam.empty_like();
    for l in 1..=series.len() {
        let d = series.op(l);
        check_op(fam, d)?;
        if !d.is_zero() {
            accumulate(&mut out, Some(fam), Some((fam, fam)), d, l, &Rational::ONE)?;
        }
    }
    Ok(out)
}

fn is_nilpotent(d: &LinOp) -> bool {
    d.pow(d.rows() as u32).is_zero()
}

/// Time-one flow of the action of the series, truncated at genus-zero arity
/// `n_max` (genus one at `n_max - 1`). A nonzero `D_1` must be nilpotent.
///
/// The flow is the Taylor sum `Σ C^{(k)}/k!` with
/// `C^{(k+1)} = lin(C^{(k)}) + Σ_j binom(k, j) quad(C^{(j)}, C^{(k-j)})`.
/// Once `C^{(k)}` vanishes for all `k` in `[m, 2m - 1]` every later term does.
pub fn group_action_exp(fam: &CorrelatorFamily, series: &GiventalSeries, n_max: usize) -> Result<CorrelatorFamily> {
    if n_max > fam.max_n0 {
        return Err(Error::TruncationExceeded(format!("requested arity {n_max} beyond family truncation {}", fam.max_n0)));
    }
    if let Some(d1) = series.ops.first() {
        if !d1.is_zero() && !is_nilpotent(d1) {
            return Err(Error::NotNilpotent("the z^0 component is not nilpotent".to_string()));
        }
    }
    for l in 1..=series.len() {
        check_op(fam, series.op(l))?;
    }
    let base = fam.truncate(n_max, fam.max_n1.min(n_max.saturating_sub(1)))?;
    let bound = 8 * (n_max + 2) * (base.dim() + 1);
    let mut derivs = vec![base.clone()];
    let mut sum = base;
    let mut factorial = Rational::ONE;
    let mut zero_from: Option<usize> = None;
    for k in 0..bound {
        let mut next = sum.empty_like();
        for l in 1..=series.len() {
            let d = series.op(l);
            if d.is_zero() {
                continue;
            }
            accumulate(&mut next, Some(&derivs[k]), None, d, l, &Rational::ONE)?;
            for j in 0..=k {
                if derivs[j].is_zero() || derivs[k - j].is_zero() {
                    continue;
                }
                let c = crate::rational::binomial(k as i64, j as i64);
                accumulate(&mut next, None, Some((&derivs[j], &derivs[k - j])), d, l, &c)?;
            }
        }
        let k1 = k + 1;
        factorial = &factorial * &Rational::from_int(k1 as i64);
        if next.is_zero() {
            let m = *zero_from.get_or_insert(k1);
            if k1 + 1 >= 2 * m {
                return Ok(sum);
            }
        } else {
            zero_from = None;
            sum = sum.add_scaled(&factorial.recip(), &next);
        }
        derivs.push(next);
    }
    Err(Error::NotNilpotent(format!("flow did not terminate after {bound} steps")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::givental::{f_map, g_map};

    fn assert_matches_fg(alg: &GradedAlgebra, d: &LinOp, l: usize, max_n0: usize) {
        let seed = tft_seed(alg, max_n0, max_n0 - 1).unwrap();
        let act = infinitesimal_action(&seed, d, l).unwrap();
        let sign = Rational::sign(l as i64);
        for (d0, ds) in seed.keys0() {
            let f = f_map(alg, d, l, d0, &ds).scale(&sign);
            match act.genus0_entry(d0, &ds) {
                Some(m) => assert_eq!(m, &f, "genus 0 ({d0}; {ds:?})"),
                None => assert!(f.is_zero(), "genus 0 ({d0}; {ds:?})"),
            }
        }
        for ds in seed.keys1() {
            let g = g_map(alg, d, l, &ds).scale(&sign);
            match act.genus1_entry(&ds) {
                Some(m) => assert_eq!(m, &g, "genus 1 {ds:?}"),
                None => assert!(g.is_zero(), "genus 1 {ds:?}"),
            }
        }
    }

    #[test]
    fn seed_values() {
        let a = catalog::trunc_poly(3);
        let seed = tft_seed(&a, 3, 2).unwrap();
        let m = seed.genus0_entry(0, &[0, 0]).unwrap();
        assert_eq!(m.get(&[1, 1]), &[Rational::ZERO, Rational::ZERO, Rational::ONE]);
        let g = seed.genus1_entry(&[1]).unwrap();
        // (1/24) str(L_1) = 3/24
        assert_eq!(g.value(&[0]), &Rational::new(1, 8));
        assert!(tft_seed(&a, 3, 3).is_err());
    }

    #[test]
    fn action_on_seed_matches_f_and_g() {
        let e = catalog::get("dual_x_odd_theta").unwrap();
        for (_, d) in &e.operators {
            for l in 1..=3 {
                assert_matches_fg(&e.algebra, d, l, 4);
            }
        }
    }

    #[test]
    fn zero_operator_acts_trivially() {
        let a = catalog::trunc_poly(3);
        let seed = tft_seed(&a, 4, 3).unwrap();
        assert!(infinitesimal_action(&seed, &LinOp::zero(3, 0), 2).unwrap().is_zero());
        let s = GiventalSeries::new(vec![LinOp::zero(3, 0); 3]);
        assert_eq!(group_action_exp(&seed, &s, 4).unwrap(), seed);
    }

    #[test]
    fn exp_inverse() {
        let a = catalog::trunc_poly(3);
        let seed = tft_seed(&a, 4, 3).unwrap();
        let s = GiventalSeries::new(vec![
            LinOp::zero(3, 0),
            catalog::poly_derivative(3, 1, 0),
            catalog::poly_derivative(3, 2, 0),
        ]);
        let forward = group_action_exp(&seed, &s, 4).unwrap();
        assert_ne!(forward, seed);
        let back = group_action_exp(&forward, &s.neg(), 4).unwrap();
        assert_eq!(back, seed);
    }

    #[test]
    fn exp_inverse_with_nilpotent_z0() {
        let e = catalog::get("dual_x_odd_theta").unwrap();
        let a = &e.algebra;
        let seed = tft_seed(a, 4, 3).unwrap();
        let ops: Vec<LinOp> = e.operators.iter().map(|(_, d)| d.clone()).filter(|d| !d.is_zero()).collect();
        let nil = ops.iter().find(|d| is_nilpotent(d)).unwrap().clone();
        let s = GiventalSeries::new(vec![nil, ops[0].clone()]);
        let forward = group_action_exp(&seed, &s, 4).unwrap();
        let back = group_action_exp(&forward, &s.neg(), 4).unwrap();
        assert_eq!(back, seed);
    }

    #[test]
    fn action_commutes_with_swapping_inputs() {
        let e = catalog::get("dual_x_odd_theta").unwrap();
        let a = &e.algebra;
        let seed = tft_seed(a, 4, 3).unwrap();
        let degs = a.degrees();
        for (_, d) in &e.operators {
            let act = infinitesimal_action(&seed, d, 2).unwrap();
            for (d0, ds) in act.keys0() {
                let Some(m) = act.genus0_entry(d0, &ds) else { continue };
                let mut sw = ds.clone();
                sw.swap(0, 1);
                let zero = MultiLinearMap::zeros(ds.len(), a.dim(), a.dim());
                let m2 = act.genus0_entry(d0, &sw).unwrap_or(&zero);
                for t in crate::algebra::BasisTuples::new(ds.len(), a.dim()) {
                    let mut ts = t.clone();
                    ts.swap(0, 1);
                    let s = koszul(degs[t[0]], degs[t[1]]);
                    let lhs: Vector = m2.get(&ts).iter().map(|x| x.scale(s)).collect();
                    assert_eq!(m.get(&t), &lhs[..]);
                }
            }
        }
    }

    #[test]
    fn non_nilpotent_z0_rejected() {
        let a = catalog::trunc_poly(3);
        let seed = tft_seed(&a, 3, 2).unwrap();
        let s = GiventalSeries::new(vec![LinOp::identity(3)]);
        assert!(matches!(group_action_exp(&seed, &s, 3), Err(Error::NotNilpotent(_))));
        assert!(matches!(group_action_exp(&seed, &GiventalSeries::new(vec![]), 5), Err(Error::TruncationExceeded(_))));
    }
}

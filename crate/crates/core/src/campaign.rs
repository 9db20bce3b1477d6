//! Randomized sweeps comparing stabilizer verdicts with operator conditions.

use std::collections::HashMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{GradedAlgebra, LinOp};
use crate::catalog::CatalogEntry;
use crate::givental::{crosscheck_level, CrosscheckLine};
use crate::koszul::min_order;
use crate::search::{available_degrees, operator_family, random_in_family, random_operator, Condition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignOptions {
    pub seed: u64,
    pub random_ops: usize,
    pub n_max: usize,
    pub l_max: usize,
    pub genus1: bool,
}

impl Default for CampaignOptions {
    fn default() -> Self {
        CampaignOptions {
            seed: 20240611,
            random_ops: 50,
            n_max: 6,
            l_max: 4,
            genus1: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct OperatorCase {
    pub label: String,
    pub op: LinOp,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub algebra: String,
    pub operators: usize,
    pub levels: usize,
    /// Levels where the expressions vanish and the conditions hold.
    pub stabilizing: usize,
    /// Levels where both sides fail.
    pub failing: usize,
    pub discrepancies: Vec<String>,
}

struct Families<'a> {
    alg: &'a GradedAlgebra,
    cache: HashMap<(i64, usize, bool), Vec<LinOp>>,
}

impl<'a> Families<'a> {
    fn get(&mut self, degree: i64, l: usize, trace: bool) -> &[LinOp] {
        let alg = self.alg;
        self.cache.entry((degree, l, trace)).or_insert_with(|| {
            let mut conds = vec![Condition::OrderAtMost(l)];
            if trace {
                match l {
                    2 => conds.push(Condition::Getzler),
                    l if l >= 3 => conds.push(Condition::StrongCompat(l)),
                    _ => {}
                }
            }
            operator_family(alg, degree, &conds)
        })
    }
}

/// Catalog operators followed by `random_ops` seeded random operators: generic
/// ones, elements of order-`<= l` families (with and without the trace
/// conditions), order-`<= l+1` elements, and perturbed order-`<= l` elements.
pub fn campaign_operators(entry: &CatalogEntry, opts: &CampaignOptions) -> Vec<OperatorCase> {
    let alg = &entry.algebra;
    let dim = alg.dim();
    let mut cases: Vec<OperatorCase> = entry
        .operators
        .iter()
        .map(|(name, op)| OperatorCase {
            label: format!("catalog:{name}"),
            op: op.clone(),
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ fxhash(&entry.name));
    let degrees = available_degrees(alg.space());
    let mut families = Families {
        alg,
        cache: HashMap::new(),
    };
    for idx in 0..opts.random_ops {
        let degree = degrees[rng.gen_range(0..degrees.len())];
        let l = rng.gen_range(1..=opts.l_max.max(1));
        let kind = idx % 5;
        let op = match kind {
            0 => None,
            1 => Some(random_in_family(families.get(degree, l, false), dim, degree, &mut rng)),
            2 => Some(random_in_family(families.get(degree, l, true), dim, degree, &mut rng)),
            3 => Some(random_in_family(families.get(degree, l + 1, false), dim, degree, &mut rng)),
            _ => {
                let base = random_in_family(families.get(degree, l, false), dim, degree, &mut rng);
                let mut bump = LinOp::zero(dim, degree);
                let slots = crate::search::homogeneous_slots(alg.space(), degree);
                if !slots.is_empty() {
                    let (r, c) = slots[rng.gen_range(0..slots.len())];
                    bump.set(r, c, crate::rational::Rational::ONE);
                }
                Some(base.add(&bump))
            }
        };
        let op = match op {
            Some(op) if !op.is_zero() => op,
            _ => random_operator(alg.space(), degree, &mut rng),
        };
        let label = match kind {
            0 => format!("random#{idx}:generic"),
            1 => format!("random#{idx}:order<={l}"),
            2 => format!("random#{idx}:order<={l}+trace"),
            3 => format!("random#{idx}:order<={}", l + 1),
            _ => format!("random#{idx}:order<={l}+bump"),
        };
        cases.push(OperatorCase { label, op });
    }
    cases
}

fn fxhash(s: &str) -> u64 {
    s.bytes().fold(0xcbf29ce484222325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100000001b3))
}

/// Runs the per-level cross-check for every operator and level `1..=l_max`.
pub fn run_campaign(entry: &CatalogEntry, opts: &CampaignOptions) -> CampaignReport {
    let mut report = CampaignReport {
        algebra: entry.name.clone(),
        ..Default::default()
    };
    for case in campaign_operators(entry, opts) {
        report.operators += 1;
        let order = min_order(&entry.algebra, &case.op, opts.l_max).order();
        for l in 1..=opts.l_max {
            let line = crosscheck_level(&entry.algebra, &case.op, l, opts.n_max, opts.genus1, order);
            tally(&mut report, &case.label, &line);
        }
    }
    report
}

fn tally(report: &mut CampaignReport, label: &str, line: &CrosscheckLine) {
    report.levels += 1;
    let positive = if report_genus1(line) {
        line.fg_vanish == Some(true)
    } else {
        line.f_vanishes
    };
    if !line.agrees {
        report.discrepancies.push(format!("{}/{label} l = {}: {line:?}", report.algebra, line.l));
    } else if positive {
        report.stabilizing += 1;
    } else {
        report.failing += 1;
    }
}

fn report_genus1(line: &CrosscheckLine) -> bool {
    line.fg_vanish.is_some()
}

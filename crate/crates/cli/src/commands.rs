use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use givental::campaign::{run_campaign, CampaignOptions, CampaignReport};
use givental::catalog::{self, CatalogEntry};
use givental::correlators::{cache_to_json, load_cache_json, table};
use givental::error::{Error, Result};
use givental::family::CorrelatorFamily;
use givental::format::{catalog_entry_json, load_algebra, LoadedAlgebra};
use givental::givental::{stabilizes_genus0, stabilizes_genus01, theorem_crosscheck, GiventalSeries};
use givental::hodge::{
    acyclic_example, gauge_check, gauge_example, hodge_vanishing_check, induced_cohft, is_comm_bv_infty, is_multicomplex,
    is_wheeled_comm_bv_infty, transfer_sum, validate_retract, DeformationRetract, GaugeReport, GaugeSeries, HodgeExample,
    MulticomplexReport, RetractReport, VanishingReport,
};
use givental::algebra::{GradedVectorSpace, LinOp};
use givental::koszul::min_order_named;
use givental::Rational;

use crate::output::{self, json};
use crate::{Cli, Command, Example, Failure, Format, Mode};

fn cache_path(cli: &Cli) -> Option<PathBuf> {
    std::env::var_os("GIVENTAL_CACHE").map(PathBuf::from).or_else(|| cli.cache.clone())
}

fn load_cache(path: &Option<PathBuf>) -> Result<()> {
    if let Some(p) = path {
        if p.exists() {
            let text = std::fs::read_to_string(p).map_err(|e| Error::Format(format!("{}: {e}", p.display())))?;
            load_cache_json(&text)?;
        }
    }
    Ok(())
}

fn save_cache(path: &Option<PathBuf>) -> Result<()> {
    if let Some(p) = path {
        std::fs::write(p, cache_to_json()).map_err(|e| Error::Format(format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

pub fn run(cli: &Cli) -> std::result::Result<String, Failure> {
    let cache = cache_path(cli);
    load_cache(&cache)?;
    let out = dispatch(cli)?;
    save_cache(&cache)?;
    Ok(out)
}

fn dispatch(cli: &Cli) -> std::result::Result<String, Failure> {
    let fmt = cli.format;
    match &cli.command {
        Command::Correlators { genus, n_max } => Ok(correlators(fmt, *genus, *n_max)),
        Command::Order { algebra, operator, l_max } => Ok(order(fmt, algebra, operator, *l_max)?),
        Command::Verify {
            algebra,
            series,
            n_max,
            mode,
            inject_fault,
        } => verify(fmt, algebra, series, *n_max, *mode, *inject_fault),
        Command::Hodge {
            algebra,
            series,
            gauge,
            retract,
            n_max,
            induced,
            example,
        } => {
            let input = match example {
                Some(Example::Gauge) => gauge_example(),
                Some(Example::Acyclic) => acyclic_example(),
                None => hodge_input(algebra.as_deref().unwrap_or_default(), series, gauge, retract)?,
            };
            Ok(hodge(fmt, &input, !retract.is_empty() || example.is_some(), *n_max, *induced)?)
        }
        Command::Campaign {
            algebra,
            seed,
            random_ops,
            n_max,
            l_max,
            genus1,
        } => {
            let opts = CampaignOptions {
                seed: *seed,
                random_ops: *random_ops,
                n_max: *n_max,
                l_max: *l_max,
                genus1: *genus1,
            };
            campaign(fmt, algebra.as_deref(), &opts)
        }
        Command::Catalog { export } => Ok(catalog_cmd(fmt, export.as_deref())?),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelatorRow {
    pub genus: u32,
    pub d: Vec<i64>,
    pub value: Rational,
}

fn correlators(fmt: Format, genus: u32, n_max: usize) -> String {
    let rows: Vec<CorrelatorRow> = table(genus, n_max)
        .into_iter()
        .map(|(d, value)| CorrelatorRow { genus, d, value })
        .collect();
    let mut out = String::new();
    for r in &rows {
        match fmt {
            Format::Text => out.push_str(&format!("{}; {}; {}\n", r.genus, output::join(&r.d), r.value)),
            Format::Json => {
                out.push_str(&serde_json::to_string(r).expect("row serializes"));
                out.push('\n');
            }
        }
    }
    out
}

fn order(fmt: Format, algebra: &str, operator: &str, l_max: usize) -> Result<String> {
    let a = load_algebra(algebra)?;
    let op = a.operator(operator)?;
    let report = min_order_named(&a.algebra, &op, l_max, operator);
    Ok(match fmt {
        Format::Text => output::order_text(&report),
        Format::Json => json(&report),
    })
}

fn verify(fmt: Format, algebra: &str, names: &[String], n_max: usize, mode: Mode, inject_fault: bool) -> std::result::Result<String, Failure> {
    let a = load_algebra(algebra)?;
    let series = GiventalSeries::new(a.operators_named(names)?);
    match mode {
        Mode::Genus0 | Mode::Genus01 => {
            let verdict = if mode == Mode::Genus0 {
                stabilizes_genus0(&a.algebra, &series, n_max)
            } else {
                stabilizes_genus01(&a.algebra, &series, n_max)
            };
            Ok(match fmt {
                Format::Text => output::verdict_text(&verdict),
                Format::Json => json(&verdict),
            })
        }
        Mode::Crosscheck => {
            let mut report = theorem_crosscheck(&a.algebra, &series, n_max, true);
            if inject_fault {
                if let Some(line) = report.lines.iter_mut().find(|l| l.conclusive) {
                    line.f_vanishes = !line.f_vanishes;
                }
                report.reassess(n_max);
            }
            let text = match fmt {
                Format::Text => output::crosscheck_text(&report, names),
                Format::Json => json(&report),
            };
            if report.is_clean() {
                Ok(text)
            } else {
                Err(Failure::Discrepancy(text))
            }
        }
    }
}

fn homology_space(i: &LinOp, space: &GradedVectorSpace) -> Result<GradedVectorSpace> {
    let degrees = (0..i.cols())
        .map(|k| {
            space
                .homogeneous_degree(&i.column(k))
                .ok_or_else(|| Error::InvalidRetract(format!("i(e_{k}) is not homogeneous")))
        })
        .collect::<Result<Vec<i64>>>()?;
    if degrees.is_empty() {
        return Ok(GradedVectorSpace::empty());
    }
    GradedVectorSpace::new(degrees)
}

fn hodge_input(algebra: &str, series: &[String], gauge: &[String], retract: &[String]) -> Result<HodgeExample> {
    let a: LoadedAlgebra = load_algebra(algebra)?;
    let ops = a.operators_named(series)?;
    let gauge = GaugeSeries {
        ops: a.operators_named(gauge)?,
    };
    let retract = if retract.is_empty() {
        DeformationRetract::identity(a.algebra.space())
    } else {
        let p = a.operator(&retract[0])?;
        let i = a.operator(&retract[1])?;
        let h = a.operator(&retract[2])?;
        let homology = homology_space(&i, a.algebra.space())?;
        DeformationRetract { homology, p, i, h }
    };
    Ok(HodgeExample {
        name: a.name,
        algebra: a.algebra,
        ops,
        gauge,
        retract,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransferLine {
    pub n: usize,
    pub vanishes: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HodgeReport {
    pub name: String,
    pub multicomplex: MulticomplexReport,
    pub comm_bv_infty: bool,
    pub wheeled_comm_bv_infty: bool,
    pub retract: Option<RetractReport>,
    pub transfer: Vec<TransferLine>,
    pub hodge_vanishing: Option<VanishingReport>,
    pub gauge: GaugeReport,
    pub induced: Option<CorrelatorFamily>,
}

fn hodge(fmt: Format, input: &HodgeExample, with_retract: bool, n_max: usize, induced: bool) -> Result<String> {
    let alg = &input.algebra;
    let dim = alg.dim();
    let d1 = input.ops.first().cloned().unwrap_or_else(|| LinOp::zero(dim, -1));
    let multicomplex = is_multicomplex(&input.ops)?;
    let (retract, transfer, hodge_vanishing) = if with_retract {
        let r = validate_retract(&input.retract, &d1);
        if r.valid() {
            let transfer = (1..=n_max)
                .map(|n| TransferLine {
                    n,
                    vanishes: transfer_sum(&input.ops, &input.retract, n).is_zero(),
                })
                .collect();
            let ops = if input.ops.is_empty() { vec![d1.clone()] } else { input.ops.clone() };
            (Some(r), transfer, Some(hodge_vanishing_check(&ops, &input.retract, n_max)?))
        } else {
            (Some(r), Vec::new(), None)
        }
    } else {
        (None, Vec::new(), None)
    };
    let gauge = gauge_check(&input.ops, &input.gauge, input.ops.len().max(1));
    let induced = if induced {
        Some(induced_cohft(alg, &input.ops, &input.gauge, &input.retract, n_max)?)
    } else {
        None
    };
    let report = HodgeReport {
        name: input.name.clone(),
        multicomplex,
        comm_bv_infty: is_comm_bv_infty(alg, &input.ops),
        wheeled_comm_bv_infty: is_wheeled_comm_bv_infty(alg, &input.ops),
        retract,
        transfer,
        hodge_vanishing,
        gauge,
        induced,
    };
    Ok(match fmt {
        Format::Text => output::hodge_text(&report),
        Format::Json => json(&report),
    })
}

fn campaign(fmt: Format, algebra: Option<&str>, opts: &CampaignOptions) -> std::result::Result<String, Failure> {
    let entries: Vec<CatalogEntry> = match algebra {
        Some(spec) => {
            let a = load_algebra(spec)?;
            vec![CatalogEntry {
                name: a.name.clone(),
                description: String::new(),
                algebra: a.algebra,
                operators: a.operators.into_iter().collect(),
            }]
        }
        None => catalog::all(),
    };
    let reports: Vec<CampaignReport> = entries.iter().map(|e| run_campaign(e, opts)).collect();
    let text = match fmt {
        Format::Text => output::campaign_text(&reports),
        Format::Json => json(&reports),
    };
    if reports.iter().all(|r| r.discrepancies.is_empty()) {
        Ok(text)
    } else {
        Err(Failure::Discrepancy(text))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatalogLine {
    pub name: String,
    pub description: String,
    pub degrees: Vec<i64>,
    pub operators: Vec<String>,
}

fn catalog_cmd(fmt: Format, export: Option<&str>) -> Result<String> {
    if let Some(name) = export {
        let e = catalog::get(name).ok_or_else(|| Error::Format(format!("no catalog algebra named {name:?}")))?;
        return Ok(catalog_entry_json(&e) + "\n");
    }
    let lines: Vec<CatalogLine> = catalog::all()
        .into_iter()
        .map(|e| CatalogLine {
            degrees: e.algebra.degrees().to_vec(),
            operators: e.operators.iter().map(|(n, _)| n.clone()).collect(),
            name: e.name,
            description: e.description,
        })
        .collect();
    Ok(match fmt {
        Format::Text => output::catalog_text(&lines),
        Format::Json => json(&lines),
    })
}

use serde::Serialize;

use givental::algebra::{BasisTuples, MultiLinearMap};
use givental::campaign::CampaignReport;
use givental::family::CorrelatorFamily;
use givental::givental::{CrosscheckReport, StabilizerVerdict, Status, Witness};
use givental::koszul::{MinimalOrder, OrderReport};
use givental::Rational;

use crate::commands::{CatalogLine, HodgeReport};

pub fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serializes") + "\n"
}

pub fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn order_text(r: &OrderReport) -> String {
    let mut out = format!("operator: {}\n", r.operator);
    match r.minimal_order {
        MinimalOrder::Order(m) => out.push_str(&format!("minimal order: {m}\n")),
        MinimalOrder::ExceedsMax(l) => out.push_str(&format!("minimal order: exceeds {l}\n")),
    }
    for w in &r.witnesses {
        out.push_str(&format!("  bracket_{} nonzero at basis [{}]\n", w.len(), join(w)));
    }
    out
}

fn vector_text(v: &[(usize, Rational)]) -> String {
    if v.is_empty() {
        return "0".to_string();
    }
    v.iter().map(|(k, c)| format!("{c}*e{k}")).collect::<Vec<_>>().join(" + ")
}

fn witness_text(w: &Witness) -> String {
    let d0 = w.d0.map(|x| format!("d0 = {x}, ")).unwrap_or_default();
    format!(
        "genus {}, n = {}, {d0}d = [{}], inputs [{}], value {}",
        w.genus,
        w.n,
        join(&w.d),
        join(&w.inputs),
        vector_text(&w.value)
    )
}

pub fn verdict_text(v: &StabilizerVerdict) -> String {
    let mut out = String::new();
    for lv in &v.levels {
        match (&lv.status, &lv.witness) {
            (Status::Stabilizes, _) => out.push_str(&format!("l = {}: stabilizes\n", lv.l)),
            (Status::Fails, Some(w)) => out.push_str(&format!("l = {}: fails at {}\n", lv.l, witness_text(w))),
            (Status::Fails, None) => out.push_str(&format!("l = {}: fails\n", lv.l)),
        }
    }
    out.push_str(if v.stabilizes() { "verdict: stabilizes\n" } else { "verdict: fails\n" });
    out
}

pub fn crosscheck_text(r: &CrosscheckReport, names: &[String]) -> String {
    let mut out = String::new();
    for line in &r.lines {
        let name = names.get(line.l - 1).map(String::as_str).unwrap_or("?");
        out.push_str(&format!(
            "l = {} ({name}): order <= {}: {}; F vanishes: {}",
            line.l,
            line.l,
            yes(line.order_at_most_l),
            yes(line.f_vanishes)
        ));
        if let (Some(t), Some(fg)) = (line.trace_condition, line.fg_vanish) {
            out.push_str(&format!("; trace condition: {}; F and G vanish: {}", yes(t), yes(fg)));
        }
        out.push_str(if !line.conclusive {
            "; inconclusive (n_max <= l)\n"
        } else if line.agrees {
            "; agrees\n"
        } else {
            "; DISAGREES\n"
        });
        for w in line.f_witness.iter().chain(line.g_witness.iter()) {
            out.push_str(&format!("  witness: {}\n", witness_text(w)));
        }
    }
    for d in &r.discrepancies {
        out.push_str(&format!("discrepancy: {d}\n"));
    }
    out.push_str(&format!("discrepancies: {}\n", r.discrepancies.len()));
    out
}

fn entry_lines(out: &mut String, m: &MultiLinearMap) {
    for t in BasisTuples::new(m.arity(), m.in_dim()) {
        let v: Vec<(usize, Rational)> = m
            .get(&t)
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(k, x)| (k, x.clone()))
            .collect();
        if v.is_empty() {
            continue;
        }
        let value = if m.is_functional() { v[0].1.to_string() } else { vector_text(&v) };
        out.push_str(&format!("    [{}] -> {value}\n", join(&t)));
    }
}

pub fn family_text(f: &CorrelatorFamily) -> String {
    let mut out = String::new();
    for (d0, d) in f.keys0() {
        if let Some(m) = f.genus0_entry(d0, &d) {
            out.push_str(&format!("  0; {d0}; {}\n", join(&d)));
            entry_lines(&mut out, m);
        }
    }
    for d in f.keys1() {
        if let Some(m) = f.genus1_entry(&d) {
            out.push_str(&format!("  1; {}\n", join(&d)));
            entry_lines(&mut out, m);
        }
    }
    out
}

pub fn hodge_text(r: &HodgeReport) -> String {
    let mut out = format!("input: {}\n", r.name);
    match r.multicomplex.failing_n {
        None => out.push_str("multicomplex: yes\n"),
        Some(n) => {
            out.push_str(&format!("multicomplex: no, Σ D_i D_j ≠ 0 for i + j = {n}\n"));
            if let Some(m) = &r.multicomplex.defect {
                out.push_str(&format!("{m:?}\n"));
            }
        }
    }
    out.push_str(&format!("commutative BV∞: {}\n", yes(r.comm_bv_infty)));
    out.push_str(&format!("wheeled commutative BV∞: {}\n", yes(r.wheeled_comm_bv_infty)));
    if let Some(rr) = &r.retract {
        out.push_str(&format!("retract valid: {}\n", yes(rr.valid())));
    }
    for t in &r.transfer {
        out.push_str(&format!("transfer n = {}: {}\n", t.n, if t.vanishes { "0" } else { "nonzero" }));
    }
    if let Some(v) = &r.hodge_vanishing {
        match v.first_failure {
            None => out.push_str("hodge vanishing: yes\n"),
            Some(n) => out.push_str(&format!("hodge vanishing: no, first failure at n = {n}\n")),
        }
    }
    match r.gauge.first_failure {
        None => out.push_str("gauge condition: yes\n"),
        Some(m) => out.push_str(&format!("gauge condition: no, first failure at z^{m}\n")),
    }
    if let Some(f) = &r.induced {
        out.push_str("induced correlators on homology:\n");
        out.push_str(&family_text(f));
    }
    out
}

pub fn campaign_text(reports: &[CampaignReport]) -> String {
    let mut out = String::new();
    for r in reports {
        out.push_str(&format!(
            "{}: operators {}, levels {}, stabilizing {}, failing {}, discrepancies {}\n",
            r.algebra,
            r.operators,
            r.levels,
            r.stabilizing,
            r.failing,
            r.discrepancies.len()
        ));
        for d in &r.discrepancies {
            out.push_str(&format!("  {d}\n"));
        }
    }
    out
}

pub fn catalog_text(lines: &[CatalogLine]) -> String {
    let mut out = String::new();
    for l in lines {
        out.push_str(&format!("{}  degrees {{{}}}  {}\n", l.name, join(&l.degrees), l.description));
        out.push_str(&format!("  operators: {}\n", l.operators.join(", ")));
    }
    out
}

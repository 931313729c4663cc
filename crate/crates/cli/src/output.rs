//! Rendering of results as human-readable text or JSON.
//!
//! JSON goes through `serde_json::Value`, whose object map is ordered by key,
//! so every document has sorted keys and identical inputs give identical bytes.
//! Factor lists come out of `FactoredInteger` already sorted by prime.

use serde::Serialize;
use serde_json::{json, Value};
use trk::kgroups::{ComponentPart, DualStructure};
use trk::limits::LimDecomposition;
use trk::verify::VerifyReport;
use trk::{AbelianGroupInfo, FactoredInteger, KRow};

#[derive(Serialize)]
struct FactorDoc {
    prime: u64,
    exponent: u64,
}

#[derive(Serialize)]
struct CyclicDoc {
    prime: u64,
    exponent: u64,
    order: String,
}

fn factor_docs(n: &FactoredInteger) -> Vec<FactorDoc> {
    n.factors().map(|(prime, exponent)| FactorDoc { prime, exponent }).collect()
}

pub fn group_json(g: &AbelianGroupInfo) -> Value {
    let structure = g.structure().map(|fs| {
        fs.iter()
            .map(|c| CyclicDoc { prime: c.prime, exponent: c.exponent, order: c.order().to_decimal() })
            .collect::<Vec<_>>()
    });
    json!({
        "rank": g.rank(),
        "torsion": factor_docs(g.torsion_order()),
        "order_decimal": g.torsion_order().to_decimal(),
        "order_factored": g.torsion_order().factored_string(),
        "structure": structure,
        "structure_known": g.structure_known().as_str(),
        "group": g.to_string(),
    })
}

pub fn group_text(label: &str, g: &AbelianGroupInfo) -> String {
    let order = g.torsion_order();
    let mut out = format!("{label} = {g}\n");
    out += &format!("rank: {}\n", g.rank());
    out += &format!("torsion order: {}", order.to_decimal());
    if order.factors().count() > 1 || order.factors().any(|(_, e)| e > 1) {
        out += &format!(" = {}", order.factored_string());
    }
    out += &format!("\nstructure: {}\n", g.structure_known().as_str());
    out
}

/// A group result together with the query that produced it.
pub fn group_document(query: Value, label: &str, g: &AbelianGroupInfo, as_json: bool) -> String {
    if as_json {
        let mut doc = group_json(g);
        doc["query"] = query;
        doc["label"] = Value::String(label.to_string());
        to_json(&doc)
    } else {
        group_text(label, g)
    }
}

pub fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

pub fn decomposition_json(d: &LimDecomposition) -> Value {
    let entries: Vec<Value> = d
        .entries
        .iter()
        .map(|e| json!({ "j": e.j, "s": e.s, "level": e.level, "d": e.d, "length": e.length }))
        .collect();
    json!({ "p": d.p.get(), "entries": entries, "total_length": d.total_length() })
}

pub fn decomposition_text(d: &LimDecomposition) -> String {
    let mut out = format!("p = {}: total length {}\n", d.p, d.total_length());
    for e in &d.entries {
        out += &format!("  j = {:>4}  s = {:>2}  level = {:>2}  d = {:>5}  length = {}\n", e.j, e.s, e.level, e.d, e.length);
    }
    out
}

pub fn dual_json(d: &DualStructure) -> Value {
    let components: Vec<Value> = d
        .components
        .iter()
        .map(|c| {
            let (known, factors) = match &c.part {
                ComponentPart::Full(fs) => ("full", Some(fs.iter().map(|f| f.exponent).collect::<Vec<_>>())),
                ComponentPart::OrderOnly { .. } => ("order-only", None),
            };
            json!({
                "prime": c.prime,
                "order_decimal": c.order().to_decimal(),
                "exponents": factors,
                "structure_known": known,
            })
        })
        .collect();
    let mut doc = group_json(&d.group());
    doc["components"] = Value::Array(components);
    doc["query"] = json!({ "i": d.i });
    doc
}

pub fn dual_text(d: &DualStructure) -> String {
    let mut out = group_text(&format!("K_{}(Z[x]/(x^2),(x))", 2 * d.i), &d.group());
    for c in &d.components {
        let part = match &c.part {
            ComponentPart::Full(fs) if fs.is_empty() => "0".to_string(),
            ComponentPart::Full(fs) => AbelianGroupInfo::with_structure(0, fs.clone()).to_string(),
            ComponentPart::OrderOnly { exponent } => format!("order {}^{} (structure unknown)", c.prime, exponent),
        };
        out += &format!("  {}-primary: {}\n", c.prime, part);
    }
    out
}

pub fn report_json(r: &VerifyReport) -> Value {
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|c| json!({ "name": c.name, "cases": c.cases, "passed": c.passed(), "failures": c.failures }))
        .collect();
    json!({ "suite": r.suite.to_string(), "seed": r.seed, "passed": r.passed(), "checks": checks })
}

pub fn report_text(r: &VerifyReport) -> String {
    let mut out = String::new();
    for c in &r.checks {
        let status = if c.passed() { "PASS" } else { "FAIL" };
        out += &format!("{status} {} ({} cases)\n", c.name, c.cases);
        for f in c.failures.iter().take(10) {
            out += &format!("    {f}\n");
        }
        if c.failures.len() > 10 {
            out += &format!("    ... {} more\n", c.failures.len() - 10);
        }
    }
    let failed = r.checks.iter().filter(|c| !c.passed()).count();
    out += &format!("suite {} (seed {}): {} checks, {} failed\n", r.suite, r.seed, r.checks.len(), failed);
    out
}

/// The structure column of a table row: the decomposition when known, else empty.
fn structure_cell(g: &AbelianGroupInfo) -> String {
    match g.structure() {
        Some(_) => g.to_string(),
        None => String::new(),
    }
}

pub fn table_csv(rows: &[KRow]) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["m", "q", "rank", "order_decimal", "order_factored", "structure", "structure_known"])?;
    for r in rows {
        let g = &r.group;
        w.write_record([
            r.m.to_string(),
            r.q.to_string(),
            g.rank().to_string(),
            g.torsion_order().to_decimal(),
            g.torsion_order().factored_string(),
            structure_cell(g),
            g.structure_known().as_str().to_string(),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn table_markdown(rows: &[KRow]) -> String {
    let mut out = String::from("| m | q | rank | order | factored | structure | known |\n");
    out += "|---|---|---|---|---|---|---|\n";
    for r in rows {
        let g = &r.group;
        out += &format!(
            "| {} | {} | {} | {} | {} | {} | {} |\n",
            r.m,
            r.q,
            g.rank(),
            g.torsion_order().to_decimal(),
            g.torsion_order().factored_string(),
            structure_cell(g),
            g.structure_known().as_str()
        );
    }
    out
}

pub fn table_json(rows: &[KRow]) -> String {
    let docs: Vec<Value> = rows
        .iter()
        .map(|r| {
            let mut doc = group_json(&r.group);
            doc["m"] = json!(r.m);
            doc["q"] = json!(r.q);
            doc
        })
        .collect();
    to_json(&Value::Array(docs))
}

//! JSON serialization of reports. Keys are emitted in sorted order, so the
//! output for fixed inputs is byte-identical.

use serde_json::{json, Value};

use bochert::mindeg::MinDegResult;
use bochert::verify::{BoundRow, CountCheck, JordanTrace, SuiteReport, TraceReport};
use bochert::{GroupHandle, Permutation, Point, PointSet};

pub const SCHEMA: u64 = 1;

/// Group facts shared by every report.
pub struct Header {
    pub group: String,
    pub n: usize,
    pub order: String,
    pub t: Option<usize>,
    pub m: Option<usize>,
    pub method: Option<String>,
}

impl Header {
    pub fn of(handle: &GroupHandle, min: Option<&MinDegResult>) -> Header {
        Header {
            group: handle.label().to_string(),
            n: handle.degree(),
            order: handle.order().to_string(),
            t: Some(handle.transitivity_degree()),
            m: min.map(|r| r.m),
            method: min.map(|r| r.method.to_string()),
        }
    }
}

/// One named list of checks with free-form details.
pub struct Suite {
    pub name: String,
    pub applicable: bool,
    pub checks: Vec<CountCheck>,
    pub notes: Vec<String>,
    pub details: Value,
}

impl Suite {
    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.pass).count()
    }
}

pub fn document(
    command: &str,
    header: &Header,
    suites: &[Suite],
    seed: u64,
    elapsed_ms: u128,
) -> Value {
    json!({
        "schema": SCHEMA,
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "group": header.group,
        "n": header.n,
        "order": header.order,
        "t": header.t,
        "m": header.m,
        "method": header.method,
        "suites": suites.iter().map(suite_json).collect::<Vec<_>>(),
        "seed": seed,
        "elapsed_ms": elapsed_ms as u64,
    })
}

fn suite_json(s: &Suite) -> Value {
    json!({
        "name": s.name,
        "applicable": s.applicable,
        "checks": s.checks.iter().map(check_json).collect::<Vec<_>>(),
        "notes": s.notes,
        "details": s.details,
    })
}

pub fn check_json(c: &CountCheck) -> Value {
    json!({
        "label": c.label,
        "relation": c.relation.as_str(),
        "observed": c.observed.to_string(),
        "formula": c.formula.to_string(),
        "pass": c.pass,
    })
}

fn point(p: Option<Point>) -> Value {
    p.map_or(Value::Null, |p| json!(p + 1))
}

fn perm(p: &Option<Permutation>) -> Value {
    p.as_ref().map_or(Value::Null, |p| json!(p.to_string()))
}

fn set(s: &Option<PointSet>) -> Value {
    s.as_ref().map_or(Value::Null, |s| {
        json!(s.iter().map(|p| p + 1).collect::<Vec<_>>())
    })
}

pub fn suite_from_report(r: SuiteReport) -> Suite {
    Suite {
        name: r.name,
        applicable: r.applicable,
        checks: r.checks,
        notes: r.notes,
        details: Value::Null,
    }
}

pub fn jordan_suite(tr: JordanTrace, seeded: bool) -> Suite {
    let mut notes = Vec::new();
    if let Some(reason) = &tr.inapplicable {
        notes.push(format!("inapplicable: {reason}"));
    }
    if let Some(reason) = &tr.degenerate {
        notes.push(format!("construction degenerate: {reason}"));
    }
    let details = json!({
        "statement": "m ≥ 2t − 2 when t ≥ 2 and m > 3",
        "choices": if seeded { "seeded" } else { "least" },
        "u": perm(&tr.u),
        "p": tr.prime,
        "N": tr.quotient,
        "r": tr.remainder,
        "case": tr.case,
        "phi": set(&tr.phi),
        "psi": set(&tr.psi),
        "alpha": point(tr.alpha),
        "target": point(tr.target),
        "v": perm(&tr.v),
        "degenerate": tr.degenerate,
        "conclusion_holds": tr.conclusion_holds,
    });
    Suite {
        name: "trace".into(),
        applicable: tr.inapplicable.is_none(),
        checks: tr.checks,
        notes,
        details,
    }
}

pub fn trace_suite(r: TraceReport, seeded: bool) -> Suite {
    let mut notes = Vec::new();
    if let Some(reason) = &r.inapplicable {
        notes.push(format!("inapplicable: {reason}"));
    }
    if let Some(reason) = &r.gated {
        notes.push(format!("closing bound not asserted: {reason}"));
    }
    if let Some(reason) = &r.degenerate {
        notes.push(format!("construction degenerate: {reason}"));
    }
    notes.extend(r.notes.iter().cloned());
    let s = &r.sizes;
    let derived = r.derived.as_ref().map_or(Value::Null, |d| {
        json!({
            "M": d.big_m,
            "N": d.big_n,
            "N0": d.n0.to_string(),
            "p(M)": d.p_of_m.to_string(),
        })
    });
    let details = json!({
        "statement": r.bound.statement(),
        "choices": if seeded { "seeded" } else { "least" },
        "u": perm(&r.u),
        "v": perm(&r.v),
        "h": perm(&r.h),
        "alpha": point(r.alpha),
        "beta": point(r.beta),
        "delta_minus": point(r.delta_minus),
        "delta_plus": point(r.delta_plus),
        "sizes": {
            "E": s.e, "F": s.f, "calE": s.cal_e, "calF": s.cal_f,
            "calG": s.cal_g, "calH": s.cal_h, "Lambda": s.lambda,
        },
        "derived": derived,
        "degenerate": r.degenerate,
        "conclusion_holds": r.conclusion_holds,
    });
    Suite {
        name: "trace".into(),
        applicable: r.applicable(),
        checks: r.checks,
        notes,
        details,
    }
}

pub fn table_suite(rows: Vec<BoundRow>) -> Suite {
    let details = json!(rows
        .iter()
        .map(|r| json!({"group": r.group, "n": r.n, "t": r.t, "m": r.m, "bound": r.bound}))
        .collect::<Vec<_>>());
    let checks = rows
        .into_iter()
        .flat_map(|r| {
            let group = r.group;
            r.checks.into_iter().map(move |mut c| {
                c.label = format!("{group}: {}", c.label);
                c
            })
        })
        .collect();
    Suite {
        name: "table".into(),
        applicable: true,
        checks,
        notes: Vec::new(),
        details,
    }
}

pub fn mindeg_suite(r: &MinDegResult) -> Suite {
    Suite {
        name: "mindeg".into(),
        applicable: true,
        checks: Vec::new(),
        notes: Vec::new(),
        details: json!({
            "m": r.m,
            "witness": r.witness.to_string(),
            "method": r.method.to_string(),
            "elements_visited": r.elements_visited,
            "nodes_pruned": r.nodes_pruned,
        }),
    }
}

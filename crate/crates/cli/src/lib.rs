//! Commands behind the `polyadic` binary. Each returns a [`Report`]; the
//! binary prints it and maps the outcome to an exit code.

use std::path::Path;

use polyadic::catalog::{catalog, Catalog};
use polyadic::io::{nested_table, read_raw_polyadic, RawPolyadic};
use polyadic::polyadic::{verify_polyadic, PolyadicGroup};
use polyadic::profinite::{build_tower, validate_system, InverseSystem, TowerSpec};
use polyadic::suite::Report;
use polyadic::{Error, Result};
use serde_json::{json, Value};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;

pub fn exit_code(outcome: &Result<Report>) -> i32 {
    match outcome {
        Ok(r) if r.passed => EXIT_PASS,
        Ok(_) => EXIT_CHECK_FAILED,
        Err(_) => EXIT_INPUT_ERROR,
    }
}

/// Axioms, skew elements, Dörnte identities and n-ary identity of one file.
pub fn verify(path: &Path) -> Result<Report> {
    let raw = read_raw_polyadic(path)?;
    let mut report = Report::new("verify", vec![path.display().to_string()]);
    let group = match &raw {
        RawPolyadic::Table { arity, order, table } => {
            let v = verify_polyadic(table, *order, *arity)?;
            let valid = v.is_valid();
            report.check("axioms", valid, &v);
            if !valid {
                return Ok(report);
            }
            PolyadicGroup::from_table(*arity, *order, table.clone())?
        }
        RawPolyadic::Hg { arity, .. } => {
            let triple = match raw.triple().expect("hg input") {
                Ok(t) => t,
                Err(e) => {
                    report.check("hg_conditions", false, json!({"error": e.to_string()}));
                    return Ok(report);
                }
            };
            if let Err((condition, reason)) = triple.check(*arity) {
                report.check("hg_conditions", false, json!({"condition": condition, "reason": reason}));
                return Ok(report);
            }
            report.check("hg_conditions", true, Value::Null);
            raw.build()?
        }
    };
    skew_check(&mut report, &group);
    let d = group.check_dornte();
    report.check("dornte", d.holds, &d);
    let identity = group.find_nary_identity();
    report.check("nary_identity", true, json!({"identity": identity, "reducible": identity.is_some()}));
    Ok(report)
}

/// Each `x` has exactly one `y` with `f(x, .., x, y) = x`, found by scanning.
fn skew_check(report: &mut Report, p: &PolyadicGroup) {
    let n = p.arity();
    let mut skews = Vec::with_capacity(p.order());
    let mut failures = Vec::new();
    for x in p.elements() {
        let mut args = vec![x; n];
        let solutions: Vec<usize> = p
            .elements()
            .filter(|&y| {
                args[n - 1] = y;
                p.apply(&args) == x
            })
            .collect();
        if solutions.len() == 1 {
            skews.push(solutions[0]);
        } else {
            failures.push(json!({"x": x, "solutions": solutions}));
        }
    }
    let detail = if failures.is_empty() { json!({"skew": skews}) } else { json!({"failures": failures}) };
    report.check("skew", failures.is_empty(), detail);
}

/// One catalog entry in the polyadic file format, with provenance.
pub fn entry_json(c: &Catalog, k: usize) -> Value {
    let e = &c.entries[k];
    let base = e.group.hg_backing().expect("catalog entries are built from triples");
    json!({
        "name": e.label(),
        "arity": c.arity,
        "order": e.order(),
        "hg": {"group": {"order": base.group.order(), "table": base.group.rows()}, "theta": e.theta, "b": e.b},
        "table": nested_table(&e.group),
        "nary_identity": e.nary_identity,
        "reducible": e.reducible(),
        "parametrizations": e.parametrizations,
    })
}

pub fn catalog_json(c: &Catalog) -> Value {
    json!({
        "arity": c.arity,
        "max_order": c.max_order,
        "classes": c.entries.len(),
        "entries": (0..c.entries.len()).map(|k| entry_json(c, k)).collect::<Vec<_>>(),
        "cross_validation": c.cross_validation,
    })
}

/// Builds the catalog and reports the exhaustive cross-checks. The catalog
/// itself is returned for `--out`.
pub fn catalog_command(arity: usize, max_order: usize) -> Result<(Report, Catalog)> {
    if arity < 3 {
        return Err(Error::InvalidParams(format!("catalog needs arity >= 3, got {arity}")));
    }
    let c = catalog(arity, max_order)?;
    let mut report = Report::new("catalog", vec![format!("arity={arity}"), format!("max_order={max_order}")]);
    let summary: Vec<Value> = c
        .entries
        .iter()
        .map(|e| json!({"name": e.label(), "order": e.order(), "reducible": e.reducible(), "nary_identity": e.nary_identity}))
        .collect();
    report.check("classes", true, json!({"count": c.entries.len(), "entries": summary}));
    for cv in &c.cross_validation {
        report.check(
            format!("brute force agrees at order {}", cv.order),
            cv.agree && cv.solvability_mismatches == 0,
            cv,
        );
    }
    Ok((report, c))
}

fn system_json(s: &InverseSystem) -> Value {
    let stages: Vec<Value> = s
        .stages
        .iter()
        .map(|g| match g.hg_backing() {
            Some(t) => json!({
                "arity": g.arity(),
                "hg": {"group": {"order": t.group.order(), "table": t.group.rows()}, "theta": t.theta.map(), "b": t.b},
            }),
            None => json!({"arity": g.arity(), "table": nested_table(g)}),
        })
        .collect();
    let poset: Vec<[usize; 2]> = s.poset.strict_pairs().into_iter().map(|(i, j)| [i, j]).collect();
    let maps: Vec<Value> = s
        .maps()
        .filter(|((from, to), _)| from != to)
        .map(|((from, to), map)| json!({"from": from, "to": to, "map": map}))
        .collect();
    json!({"poset": poset, "stages": stages, "maps": maps})
}

pub fn tower_command(spec: &TowerSpec) -> Result<Report> {
    let s = build_tower(spec)?;
    let check = validate_system(&s)?;
    let label = match spec {
        TowerSpec::CyclicPk { p, depth, sign, b, arity } => {
            format!("cyclic_pk(p={p},depth={depth},sign={sign},b={b},arity={arity})")
        }
        TowerSpec::DerivedChain { groups, arity, .. } => {
            format!("derived_chain({} groups,arity={arity})", groups.len())
        }
    };
    let mut report = Report::new("tower", vec![label]);
    report.check(
        "system",
        check.valid,
        json!({
            "stage_orders": s.stages.iter().map(PolyadicGroup::order).collect::<Vec<_>>(),
            "directed": check.directed,
            "definition": system_json(&s),
        }),
    );
    Ok(report)
}

//! JSON file formats.
//!
//! Group: `{"order": m, "table": [[..], ..]}` or `{"library": "S3"}`.
//! Polyadic group: `{"arity": n, "table": nested}` with `n` levels of nesting
//! (a flat array of `m^n` entries is also accepted), or
//! `{"arity": n, "hg": {"group": G, "theta": [..], "b": k}}`.
//! Hom: `{"source": P, "target": Q, "map": [..]}`.
//! Congruence: `{"polyadic": P, "partition": [[..], ..]}`.
//! System: `{"poset": [[lower, upper], ..], "stages": [P, ..],
//! "maps": [{"from": i, "to": j, "map": [..]}, ..]}` or
//! `{"tower": {"kind": "cyclic_pk", "p": .., "depth": .., "sign": .., "b": .., "arity": ..}}`.
//!
//! Wherever a group or polyadic group is expected, a string is read as a path
//! relative to the directory of the file that contains it.

use std::path::{Path, PathBuf};

use serde::Deserialize;
use serde_json::Value;

use crate::congruence::Congruence;
use crate::error::{Error, Result};
use crate::group::{library, Automorphism, FiniteGroup};
use crate::polyadic::{HgTriple, PolyadicGroup};
use crate::profinite::{build_tower, InverseSystem, Poset, TowerSpec};

/// A polyadic group as written, before any axiom is checked.
#[derive(Clone, Debug)]
pub enum RawPolyadic {
    Table { arity: usize, order: usize, table: Vec<usize> },
    Hg { arity: usize, group: FiniteGroup, theta: Vec<usize>, b: usize },
}

impl RawPolyadic {
    pub fn arity(&self) -> usize {
        match self {
            RawPolyadic::Table { arity, .. } | RawPolyadic::Hg { arity, .. } => *arity,
        }
    }

    /// Checks the axioms (or the triple conditions) and builds the group.
    pub fn build(&self) -> Result<PolyadicGroup> {
        match self {
            RawPolyadic::Table { arity, order, table } => PolyadicGroup::from_table(*arity, *order, table.clone()),
            RawPolyadic::Hg { arity, group, theta, b } => {
                let theta = Automorphism::new(group, theta.clone())?;
                PolyadicGroup::derive_theta(group, &theta, *b, *arity)
            }
        }
    }

    pub fn triple(&self) -> Option<Result<HgTriple>> {
        match self {
            RawPolyadic::Table { .. } => None,
            RawPolyadic::Hg { group, theta, b, .. } => {
                Some(Automorphism::new(group, theta.clone()).map(|theta| HgTriple {
                    group: group.clone(),
                    theta,
                    b: *b,
                }))
            }
        }
    }
}

/// One input file, classified by its keys.
#[derive(Clone, Debug)]
pub enum Input {
    Polyadic(PolyadicGroup),
    Hom { source: PolyadicGroup, target: PolyadicGroup, map: Vec<usize> },
    Congruence { polyadic: PolyadicGroup, congruence: Congruence },
    System(InverseSystem),
}

fn parse_err(path: &Path, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("{}: {msg}", path.display()))
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| parse_err(path, e))?;
    serde_json::from_str(&text).map_err(|e| parse_err(path, e))
}

fn field<'a>(v: &'a Value, key: &str, path: &Path) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| parse_err(path, format!("missing field `{key}`")))
}

fn typed<T: for<'de> Deserialize<'de>>(v: &Value, what: &str, path: &Path) -> Result<T> {
    T::deserialize(v).map_err(|e| parse_err(path, format!("{what}: {e}")))
}

/// Resolves a string reference against `base` and loads it; inline objects
/// are returned as they are, with `base` as their own base.
fn deref(v: &Value, base: &Path) -> Result<(Value, PathBuf)> {
    match v {
        Value::String(rel) => {
            let target = base.parent().unwrap_or(Path::new(".")).join(rel);
            Ok((read_json(&target)?, target))
        }
        other => Ok((other.clone(), base.to_path_buf())),
    }
}

pub fn group_from_value(v: &Value, path: &Path) -> Result<FiniteGroup> {
    let (v, path) = deref(v, path)?;
    if let Some(name) = v.get("library") {
        let name: String = typed(name, "library", &path)?;
        return library::by_name(&name).ok_or_else(|| parse_err(&path, format!("no library group named {name}")));
    }
    let rows: Vec<Vec<usize>> = typed(field(&v, "table", &path)?, "group table", &path)?;
    if let Some(order) = v.get("order") {
        let order: usize = typed(order, "order", &path)?;
        if order != rows.len() {
            return Err(parse_err(&path, format!("order {order} but the table has {} rows", rows.len())));
        }
    }
    FiniteGroup::from_table(&rows)
}

/// Flattens `arity` levels of nesting, each of length `order`.
fn flatten(v: &Value, depth: usize, order: usize, out: &mut Vec<usize>, path: &Path) -> Result<()> {
    if depth == 0 {
        let x = v.as_u64().ok_or_else(|| parse_err(path, format!("expected an element index, found {v}")))?;
        out.push(x as usize);
        return Ok(());
    }
    let items = v.as_array().ok_or_else(|| parse_err(path, format!("expected an array at nesting depth {depth}")))?;
    if items.len() != order {
        return Err(parse_err(
            path,
            format!("expected {order} entries at nesting depth {depth}, found {}", items.len()),
        ));
    }
    items.iter().try_for_each(|item| flatten(item, depth - 1, order, out, path))
}

pub fn raw_polyadic_from_value(v: &Value, path: &Path) -> Result<RawPolyadic> {
    let (v, path) = deref(v, path)?;
    let arity: usize = typed(field(&v, "arity", &path)?, "arity", &path)?;
    if arity < 2 {
        return Err(parse_err(&path, format!("arity must be at least 2, got {arity}")));
    }
    if let Some(hg) = v.get("hg") {
        let group = group_from_value(field(hg, "group", &path)?, &path)?;
        let theta: Vec<usize> = typed(field(hg, "theta", &path)?, "theta", &path)?;
        let b: usize = typed(field(hg, "b", &path)?, "b", &path)?;
        if theta.len() != group.order() || theta.iter().any(|&x| x >= group.order()) || b >= group.order() {
            return Err(parse_err(&path, "theta or b does not fit the group"));
        }
        return Ok(RawPolyadic::Hg { arity, group, theta, b });
    }
    let table = field(&v, "table", &path)?;
    let top = table.as_array().ok_or_else(|| parse_err(&path, "table must be an array"))?;
    let mut flat = Vec::new();
    let order = if top.iter().all(Value::is_u64) {
        flat = typed(table, "table", &path)?;
        (1..=flat.len()).find(|&m| crate::budget::saturating_pow(m, arity) >= flat.len() as u128).unwrap_or(0)
    } else {
        let m = top.len();
        flatten(table, arity, m, &mut flat, &path)?;
        m
    };
    if order == 0 || crate::budget::saturating_pow(order, arity) != flat.len() as u128 {
        return Err(parse_err(&path, format!("a table of {} entries is not m^{arity} for any m", flat.len())));
    }
    if let Some(&x) = flat.iter().find(|&&x| x >= order) {
        return Err(parse_err(&path, format!("entry {x} is outside 0..{order}")));
    }
    Ok(RawPolyadic::Table { arity, order, table: flat })
}

pub fn polyadic_from_value(v: &Value, path: &Path) -> Result<PolyadicGroup> {
    raw_polyadic_from_value(v, path)?.build()
}

pub fn read_raw_polyadic(path: &Path) -> Result<RawPolyadic> {
    raw_polyadic_from_value(&read_json(path)?, path)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MapSpec {
    from: usize,
    to: usize,
    map: Vec<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields, tag = "kind", rename_all = "snake_case")]
enum TowerFile {
    CyclicPk { p: usize, depth: usize, sign: i8, b: usize, arity: usize },
}

pub fn system_from_value(v: &Value, path: &Path) -> Result<InverseSystem> {
    if let Some(tower) = v.get("tower") {
        let TowerFile::CyclicPk { p, depth, sign, b, arity } = typed(tower, "tower", path)?;
        return build_tower(&TowerSpec::CyclicPk { p, depth, sign, b, arity });
    }
    let stages = field(v, "stages", path)?
        .as_array()
        .ok_or_else(|| parse_err(path, "stages must be an array"))?
        .iter()
        .map(|s| polyadic_from_value(s, path))
        .collect::<Result<Vec<_>>>()?;
    let pairs: Vec<(usize, usize)> = match v.get("poset") {
        Some(p) => typed(p, "poset", path)?,
        None => Vec::new(),
    };
    let maps: Vec<MapSpec> = match v.get("maps") {
        Some(m) => typed(m, "maps", path)?,
        None => Vec::new(),
    };
    let poset = Poset::new(stages.len(), &pairs)?;
    InverseSystem::new(poset, stages, maps.into_iter().map(|m| ((m.from, m.to), m.map)).collect())
}

/// Reads any of the input formats, deciding by which keys are present.
pub fn read_input(path: &Path) -> Result<Input> {
    let v = read_json(path)?;
    if v.get("stages").is_some() || v.get("tower").is_some() {
        return system_from_value(&v, path).map(Input::System);
    }
    if let Some(partition) = v.get("partition") {
        let polyadic = polyadic_from_value(field(&v, "polyadic", path)?, path)?;
        let blocks: Vec<Vec<usize>> = typed(partition, "partition", path)?;
        let congruence = Congruence::from_blocks(polyadic.order(), &blocks)?;
        return Ok(Input::Congruence { polyadic, congruence });
    }
    if v.get("map").is_some() {
        let source = polyadic_from_value(field(&v, "source", path)?, path)?;
        let target = polyadic_from_value(field(&v, "target", path)?, path)?;
        let map: Vec<usize> = typed(field(&v, "map", path)?, "map", path)?;
        return Ok(Input::Hom { source, target, map });
    }
    if v.get("arity").is_some() {
        return polyadic_from_value(&v, path).map(Input::Polyadic);
    }
    Err(parse_err(path, "not a polyadic group, hom, congruence or system file"))
}

/// Nested-array form of a polyadic table.
pub fn nested_table(p: &PolyadicGroup) -> Option<Value> {
    fn nest(flat: &[usize], m: usize) -> Value {
        if flat.len() == 1 {
            return Value::from(flat[0]);
        }
        Value::Array(flat.chunks(flat.len() / m).map(|c| nest(c, m)).collect())
    }
    let flat = p.table()?;
    Some(nest(&flat, p.order()))
}

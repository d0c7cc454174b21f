//! JSON interchange formats.
//!
//! | object    | shape |
//! |-----------|-------|
//! | group     | `{"elements": [label], "table": [[index]]}` |
//! | module    | `{"moduli": [m], "action": {"kind": "trivial" \| "matrices", "matrices": {label: [[int]]}}}` |
//! | cochain   | `{"degree": n, "values": {"(i,j)": [int]}}` |
//! | cohomology| `{"degree": n, "factors": [int], "representatives": [cochain]}` |
//! | extension | `{"group", "module", "cocycle"}` in, plus `{"E", "inclusion", "projection", "section"}` out |
//! | sequence  | `{"A1", "A", "A2", "incl": [[int]], "proj": [[int]], "section": {"(a)": [int]}}` |
//! | function  | `{"values": {label: "p/q"}}` |
//! | Lie       | `{"dim": n, "brackets": {"i,j": {"k": "p/q"}}}` and `{"dim": m, "rep": [matrix]}` |
//!
//! Module matrices may be given for every element or for a generating set.
//! Cochain and function entries that are omitted are zero.

use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::abelian::FiniteAbelianGroup;
use crate::cochain::{tuple_at, tuple_count, tuple_index, Cochain};
use crate::cohomology::{CohomologyClass, CohomologyGroup};
use crate::error::{Error, Result};
use crate::exact::{ModuleSes, make_ses_with};
use crate::extension::Extension;
use crate::group::{build_group_with, FiniteGroup, GroupSpec};
use crate::haar::GroupFunction;
use crate::lie::{build_lie_algebra, LieAlgebra, LieModule};
use crate::module::{build_module, ActionSpec, GModule};
use crate::rational::{self, Q};
use crate::Limits;

fn err(path: &str, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("{path}: {msg}"))
}

fn field<'a>(v: &'a Value, key: &str, path: &str) -> Result<&'a Value> {
    v.as_object()
        .ok_or_else(|| err(path, "expected an object"))?
        .get(key)
        .ok_or_else(|| err(path, format!("missing field {key:?}")))
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| err(path, "expected an object"))
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| err(path, "expected an array"))
}

fn int(v: &Value, path: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| err(path, "expected an integer"))
}

fn index(v: &Value, path: &str) -> Result<usize> {
    v.as_u64()
        .and_then(|x| usize::try_from(x).ok())
        .ok_or_else(|| err(path, "expected a nonnegative integer"))
}

fn int_vec(v: &Value, path: &str) -> Result<Vec<i64>> {
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, x)| int(x, &format!("{path}[{i}]")))
        .collect()
}

fn int_matrix(v: &Value, path: &str) -> Result<Vec<Vec<i64>>> {
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, r)| int_vec(r, &format!("{path}[{i}]")))
        .collect()
}

fn rational(v: &Value, path: &str) -> Result<Q> {
    match v {
        Value::String(s) => rational::parse(s).map_err(|e| err(path, e)),
        Value::Number(n) => n
            .as_i64()
            .map(rational::int)
            .ok_or_else(|| err(path, "non-integer numbers must be written as \"p/q\" strings")),
        _ => Err(err(path, "expected a rational")),
    }
}

fn rational_matrix(v: &Value, path: &str) -> Result<Vec<Vec<Q>>> {
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, r)| {
            array(r, &format!("{path}[{i}]"))?
                .iter()
                .enumerate()
                .map(|(j, x)| rational(x, &format!("{path}[{i}][{j}]")))
                .collect()
        })
        .collect()
}

/// `"(i,j,...)"`, and `"()"` in degree 0.
pub fn tuple_key(t: &[usize]) -> String {
    format!("({})", t.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

fn parse_tuple_key(key: &str, path: &str) -> Result<Vec<usize>> {
    let inner = key
        .trim()
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| err(path, format!("key {key:?} is not of the form \"(i,j,...)\"")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|_| err(path, format!("bad index in key {key:?}"))))
        .collect()
}

fn element_key(a: &[i64]) -> String {
    format!("({})", a.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

fn parse_element_key(key: &str, path: &str) -> Result<Vec<i64>> {
    let inner = key
        .trim()
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .unwrap_or(key.trim());
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| err(path, format!("bad element key {key:?}"))))
        .collect()
}

// groups

pub fn group_to_json(g: &FiniteGroup) -> Value {
    json!({ "elements": g.labels(), "table": g.table() })
}

pub fn group_from_json(v: &Value, limits: &Limits) -> Result<FiniteGroup> {
    let labels = array(field(v, "elements", "group")?, "group.elements")?
        .iter()
        .enumerate()
        .map(|(i, x)| match x {
            Value::String(s) => Ok(s.clone()),
            Value::Number(n) => Ok(n.to_string()),
            _ => Err(err(&format!("group.elements[{i}]"), "expected a string label")),
        })
        .collect::<Result<Vec<_>>>()?;
    let table = array(field(v, "table", "group")?, "group.table")?
        .iter()
        .enumerate()
        .map(|(i, r)| {
            array(r, &format!("group.table[{i}]"))?
                .iter()
                .enumerate()
                .map(|(j, x)| index(x, &format!("group.table[{i}][{j}]")))
                .collect()
        })
        .collect::<Result<Vec<Vec<usize>>>>()?;
    build_group_with(&GroupSpec::Table { labels, table }, limits)
}

// modules

pub fn module_to_json(m: &GModule) -> Value {
    let action = if m.is_trivial_action() {
        json!({ "kind": "trivial" })
    } else {
        let mut matrices = Map::new();
        for s in 0..m.group().order() {
            matrices.insert(m.group().label(s).to_string(), json!(m.matrix(s)));
        }
        json!({ "kind": "matrices", "matrices": matrices })
    };
    json!({ "moduli": m.moduli(), "action": action })
}

pub fn module_from_json(v: &Value, group: Arc<FiniteGroup>) -> Result<GModule> {
    module_from_json_at(v, group, "module")
}

fn module_from_json_at(v: &Value, group: Arc<FiniteGroup>, path: &str) -> Result<GModule> {
    let moduli = int_vec(field(v, "moduli", path)?, &format!("{path}.moduli"))?;
    let carrier = FiniteAbelianGroup::new(moduli).map_err(|e| err(&format!("{path}.moduli"), e))?;
    let apath = format!("{path}.action");
    let spec = match object(v, path)?.get("action") {
        None => ActionSpec::Trivial,
        Some(action) => {
            let kind = field(action, "kind", &apath)?
                .as_str()
                .ok_or_else(|| err(&apath, "kind must be a string"))?;
            match kind {
                "trivial" => ActionSpec::Trivial,
                "matrices" => {
                    let mpath = format!("{apath}.matrices");
                    let given = object(field(action, "matrices", &apath)?, &mpath)?;
                    let mut gens = Vec::with_capacity(given.len());
                    for (label, mat) in given {
                        let s = group
                            .index_of(label)
                            .ok_or_else(|| err(&mpath, format!("unknown element {label:?}")))?;
                        gens.push((s, int_matrix(mat, &format!("{mpath}.{label}"))?));
                    }
                    if gens.len() == group.order() {
                        let mut ms = vec![Vec::new(); group.order()];
                        for (s, m) in gens {
                            ms[s] = m;
                        }
                        ActionSpec::Elements(ms)
                    } else {
                        ActionSpec::Generators(gens)
                    }
                }
                other => return Err(err(&apath, format!("unknown action kind {other:?}"))),
            }
        }
    };
    build_module(carrier, group, spec)
}

// cochains

pub fn cochain_to_json(f: &Cochain) -> Value {
    let order = f.module().group().order();
    let mut values = Map::new();
    for i in 0..f.tuple_count() {
        values.insert(tuple_key(&tuple_at(order, f.degree(), i)), json!(f.value_at(i)));
    }
    json!({ "degree": f.degree(), "values": values })
}

pub fn cochain_from_json(v: &Value, module: Arc<GModule>) -> Result<Cochain> {
    cochain_from_json_at(v, module, "cochain")
}

fn cochain_from_json_at(v: &Value, module: Arc<GModule>, path: &str) -> Result<Cochain> {
    let degree = index(field(v, "degree", path)?, &format!("{path}.degree"))?;
    let order = module.group().order();
    let count = tuple_count(order, degree);
    let limits = Limits::default();
    if count > limits.max_tuples {
        return Err(Error::SizeLimit {
            what: format!("|G|^{degree}"),
            size: count,
            limit: limits.max_tuples,
        });
    }
    let vpath = format!("{path}.values");
    let mut f = Cochain::zero(module.clone(), degree);
    let mut seen = vec![false; count as usize];
    for (key, val) in object(field(v, "values", path)?, &vpath)? {
        let kpath = format!("{vpath}.{key}");
        let t = parse_tuple_key(key, &kpath)?;
        if t.len() != degree || t.iter().any(|&x| x >= order) {
            return Err(err(&kpath, format!("not a {degree}-tuple of element indices below {order}")));
        }
        let i = tuple_index(order, &t);
        if std::mem::replace(&mut seen[i], true) {
            return Err(err(&kpath, "duplicate tuple"));
        }
        let a = int_vec(val, &kpath)?;
        if a.len() != module.rank() {
            return Err(err(&kpath, format!("expected {} coordinates", module.rank())));
        }
        f.set_at(i, &a);
    }
    Ok(f)
}

// cohomology

pub fn class_to_json(c: &CohomologyClass) -> Value {
    json!({ "degree": c.degree, "factors": c.factors, "coordinates": c.coordinates })
}

pub fn cohomology_to_json(h: &CohomologyGroup) -> Value {
    let reps: Vec<Value> = h.representatives().iter().map(cochain_to_json).collect();
    json!({ "degree": h.degree(), "factors": h.factors(), "representatives": reps })
}

// extensions

/// Group, module and cocycle of an extension request.
pub fn extension_input_from_json(v: &Value, limits: &Limits) -> Result<(Arc<FiniteGroup>, Arc<GModule>, Cochain)> {
    let g = Arc::new(group_from_json(field(v, "group", "input")?, limits)?);
    let m = Arc::new(module_from_json_at(field(v, "module", "input")?, g.clone(), "input.module")?);
    let f = cochain_from_json_at(field(v, "cocycle", "input")?, m.clone(), "input.cocycle")?;
    Ok((g, m, f))
}

pub fn extension_to_json(e: &Extension, cocycle: &Cochain) -> Value {
    json!({
        "group": group_to_json(e.module().group()),
        "module": module_to_json(e.module()),
        "cocycle": cochain_to_json(cocycle),
        "E": group_to_json(e.group()),
        "inclusion": e.inclusion(),
        "projection": e.projection(),
        "section": e.section(),
    })
}

// short exact sequences

pub fn ses_from_json(v: &Value, group: Arc<FiniteGroup>, limits: &Limits) -> Result<ModuleSes> {
    let a1 = Arc::new(module_from_json_at(field(v, "A1", "ses")?, group.clone(), "ses.A1")?);
    let a = Arc::new(module_from_json_at(field(v, "A", "ses")?, group.clone(), "ses.A")?);
    let a2 = Arc::new(module_from_json_at(field(v, "A2", "ses")?, group, "ses.A2")?);
    let incl = int_matrix(field(v, "incl", "ses")?, "ses.incl")?;
    let proj = int_matrix(field(v, "proj", "ses")?, "ses.proj")?;
    let section = match object(v, "ses")?.get("section") {
        None | Some(Value::Null) => None,
        Some(s) => {
            let map = object(s, "ses.section")?;
            let size = a2.carrier().order();
            if size > limits.max_enumeration {
                return Err(Error::SizeLimit {
                    what: "|A2|".into(),
                    size,
                    limit: limits.max_enumeration,
                });
            }
            let mut table: Vec<Option<Vec<i64>>> = vec![None; size as usize];
            for (key, val) in map {
                let kpath = format!("ses.section.{key}");
                let x = parse_element_key(key, &kpath)?;
                if x.len() != a2.rank() {
                    return Err(err(&kpath, "key is not an element of A2"));
                }
                let i = a2.carrier().index_of(&a2.carrier().reduce(&x));
                table[i] = Some(int_vec(val, &kpath)?);
            }
            let missing = table.iter().position(Option::is_none);
            if let Some(i) = missing {
                return Err(err(
                    "ses.section",
                    format!("no value for {}", element_key(&a2.carrier().element(i))),
                ));
            }
            Some(table.into_iter().map(Option::unwrap).collect())
        }
    };
    make_ses_with(a1, a, a2, &incl, &proj, section, limits)
}

pub fn ses_to_json(s: &ModuleSes) -> Value {
    let mut section = Map::new();
    for (i, x) in s.section_table().iter().enumerate() {
        section.insert(element_key(&s.quo().carrier().element(i)), json!(x));
    }
    json!({
        "A1": module_to_json(s.sub()),
        "A": module_to_json(s.mid()),
        "A2": module_to_json(s.quo()),
        "incl": s.inclusion().matrix(),
        "proj": s.projection().matrix(),
        "section": section,
    })
}

// functions on groups

pub fn function_to_json(f: &GroupFunction) -> Value {
    let mut values = Map::new();
    for (x, q) in f.values().iter().enumerate() {
        values.insert(f.group().label(x).to_string(), json!(rational::format(q)));
    }
    json!({ "values": values })
}

pub fn function_from_json(v: &Value, group: Arc<FiniteGroup>) -> Result<GroupFunction> {
    let mut values = vec![rational::int(0); group.order()];
    for (label, q) in object(field(v, "values", "function")?, "function.values")? {
        let path = format!("function.values.{label}");
        let x = group.index_of(label).ok_or_else(|| err(&path, "unknown element"))?;
        values[x] = rational(q, &path)?;
    }
    GroupFunction::new(group, values)
}

// Lie algebras

pub fn lie_to_json(l: &LieAlgebra) -> Value {
    let n = l.dim();
    let mut brackets = Map::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut terms = Map::new();
            for k in 0..n {
                let c = l.constant(i, j, k);
                if *c != rational::int(0) {
                    terms.insert(k.to_string(), json!(rational::format(c)));
                }
            }
            if !terms.is_empty() {
                brackets.insert(format!("{i},{j}"), Value::Object(terms));
            }
        }
    }
    json!({ "dim": n, "brackets": brackets })
}

pub fn lie_from_json(v: &Value) -> Result<LieAlgebra> {
    let dim = index(field(v, "dim", "lie")?, "lie.dim")?;
    let mut entries = Vec::new();
    if let Some(b) = object(v, "lie")?.get("brackets") {
        for (key, terms) in object(b, "lie.brackets")? {
            let path = format!("lie.brackets.{key}");
            let (i, j) = key
                .split_once(',')
                .and_then(|(i, j)| Some((i.trim().parse().ok()?, j.trim().parse().ok()?)))
                .ok_or_else(|| err(&path, "key must be \"i,j\""))?;
            let mut row = Vec::new();
            for (k, q) in object(terms, &path)? {
                let kpath = format!("{path}.{k}");
                let k: usize = k.trim().parse().map_err(|_| err(&kpath, "basis index expected"))?;
                row.push((k, rational(q, &kpath)?));
            }
            entries.push(((i, j), row));
        }
    }
    build_lie_algebra(dim, &entries)
}

pub fn lie_module_to_json(m: &LieModule) -> Value {
    let rep: Vec<Vec<Vec<String>>> = m
        .rep()
        .iter()
        .map(|mat| mat.iter().map(|r| r.iter().map(rational::format).collect()).collect())
        .collect();
    json!({ "dim": m.dim(), "rep": rep })
}

pub fn lie_module_from_json(v: &Value, alg: &LieAlgebra) -> Result<LieModule> {
    let dim = index(field(v, "dim", "lie module")?, "lie module.dim")?;
    let rep = array(field(v, "rep", "lie module")?, "lie module.rep")?
        .iter()
        .enumerate()
        .map(|(i, m)| rational_matrix(m, &format!("lie module.rep[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    LieModule::new(alg, dim, rep)
}

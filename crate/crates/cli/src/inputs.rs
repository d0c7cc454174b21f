//! Expansion of shorthand specs and input files into the JSON documents the
//! core parsers accept.

use std::path::Path;
use std::sync::Arc;

use fincohom_core::abelian::FiniteAbelianGroup;
use fincohom_core::group::{build_group_with, FiniteGroup, GroupSpec};
use fincohom_core::haar::GroupFunction;
use fincohom_core::json;
use fincohom_core::lie::{LieAlgebra, LieModule};
use fincohom_core::module::{build_module, ActionSpec};
use fincohom_core::rational;
use fincohom_core::{Error, Limits};
use serde_json::{json, Value};

use crate::error::CliError;

type Result<T> = std::result::Result<T, CliError>;

const GROUP_PREFIXES: &[&str] = &[
    "cyclic:",
    "dihedral:",
    "product:",
    "symmetric:",
    "alternating:",
    "dicyclic:",
    "trivial",
    "quaternion",
];
const MODULE_PREFIXES: &[&str] = &["trivial:", "negation:"];
const FUNCTION_PREFIXES: &[&str] = &["const:", "delta", "indicator:", "values:"];
const LIE_PREFIXES: &[&str] = &["sl2", "heisenberg", "abelian:"];
const LIE_MODULE_PREFIXES: &[&str] = &["trivial:", "adjoint"];
const SES_PREFIXES: &[&str] = &["chain:"];

fn is_shorthand(s: &str, prefixes: &[&str]) -> bool {
    prefixes.iter().any(|p| if p.ends_with(':') { s.starts_with(p) } else { s == *p })
}

/// Paths among the arguments, i.e. everything that is not a shorthand.
pub fn referenced_files<'a>(args: &[(&'a str, Option<&'a String>)]) -> Vec<&'a str> {
    args.iter()
        .filter_map(|(kind, v)| {
            let v = v.as_ref()?;
            let prefixes = match *kind {
                "group" => GROUP_PREFIXES,
                "module" => MODULE_PREFIXES,
                "function" => FUNCTION_PREFIXES,
                "lie" => LIE_PREFIXES,
                "lie-module" => LIE_MODULE_PREFIXES,
                "ses" => SES_PREFIXES,
                _ => &[],
            };
            (!is_shorthand(v, prefixes)).then_some(v.as_str())
        })
        .collect()
}

pub fn read_json(path: &str) -> Result<Value> {
    let text = std::fs::read_to_string(Path::new(path)).map_err(|e| CliError::Io {
        path: path.to_string(),
        message: e.to_string(),
    })?;
    serde_json::from_str(&text).map_err(|e| CliError::Json {
        path: path.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Core(Error::Parse(msg.into()))
}

fn parse_usize(s: &str, what: &str) -> Result<usize> {
    s.trim().parse().map_err(|_| bad(format!("{what}: expected a nonnegative integer, got {s:?}")))
}

/// Splits on commas that are not inside parentheses.
fn split_top(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn group_spec(s: &str) -> Result<GroupSpec> {
    let s = s.trim();
    if let Some(inner) = s.strip_prefix('(').and_then(|x| x.strip_suffix(')')) {
        return group_spec(inner);
    }
    let (head, arg) = s.split_once(':').unwrap_or((s, ""));
    let spec = match head {
        "trivial" => GroupSpec::Cyclic(1),
        "cyclic" => GroupSpec::Cyclic(parse_usize(arg, "cyclic")?),
        "dihedral" => GroupSpec::Dihedral(parse_usize(arg, "dihedral")?),
        "product" => GroupSpec::Product(split_top(arg).into_iter().map(group_spec).collect::<Result<_>>()?),
        "symmetric" | "alternating" | "dicyclic" | "quaternion" => {
            let n = if head == "quaternion" { 2 } else { parse_usize(arg, head)? };
            let g = match head {
                "symmetric" if (1..=5).contains(&n) => FiniteGroup::symmetric(n),
                "alternating" if (2..=5).contains(&n) => FiniteGroup::alternating(n),
                "dicyclic" | "quaternion" if n >= 1 => FiniteGroup::dicyclic(n),
                _ => return Err(bad(format!("{head}:{n} is not supported"))),
            };
            GroupSpec::Table {
                labels: g.labels().to_vec(),
                table: g.table().to_vec(),
            }
        }
        _ => return Err(bad(format!("unknown group shorthand {s:?}"))),
    };
    Ok(spec)
}

pub fn group_value(s: &str, limits: &Limits) -> Result<Value> {
    if is_shorthand(s, GROUP_PREFIXES) {
        let g = build_group_with(&group_spec(s)?, limits)?;
        Ok(json::group_to_json(&g))
    } else {
        read_json(s)
    }
}

/// `Z/2`, `Z/2xZ/2`, `Z/2×Z/4`, or plain moduli `2,2`.
fn carrier(s: &str) -> Result<FiniteAbelianGroup> {
    let parts: Vec<&str> = if s.contains('/') {
        s.split(['x', '×', '⊕', '+']).map(|p| p.trim().trim_start_matches('Z').trim_start_matches('/')).collect()
    } else {
        s.split(',').collect()
    };
    let moduli = parts
        .iter()
        .map(|p| p.trim().parse::<i64>().map_err(|_| bad(format!("bad carrier {s:?}"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(FiniteAbelianGroup::new(moduli)?)
}

/// A nontrivial homomorphism `G -> {±1}`, as a sign per element.
fn sign_character(g: &FiniteGroup) -> Option<Vec<bool>> {
    let gens = g.generators();
    for mask in 1u64..(1 << gens.len().min(20)) {
        let mut sign: Vec<Option<bool>> = vec![None; g.order()];
        sign[g.identity()] = Some(false);
        let mut queue = vec![g.identity()];
        let mut ok = true;
        while let Some(x) = queue.pop() {
            for (i, &s) in gens.iter().enumerate() {
                let y = g.mul(s, x);
                let v = sign[x].unwrap() ^ (mask >> i & 1 == 1);
                match sign[y] {
                    Some(w) if w != v => ok = false,
                    Some(_) => {}
                    None => {
                        sign[y] = Some(v);
                        queue.push(y);
                    }
                }
            }
            if !ok {
                break;
            }
        }
        if ok {
            return Some(sign.into_iter().map(|s| s.unwrap_or(false)).collect());
        }
    }
    None
}

pub fn module_value(s: &str, group: &Arc<FiniteGroup>) -> Result<Value> {
    if let Some(c) = s.strip_prefix("trivial:") {
        Ok(json::module_to_json(&build_module(carrier(c)?, group.clone(), ActionSpec::Trivial)?))
    } else if let Some(c) = s.strip_prefix("negation:") {
        let a = carrier(c)?;
        let sign = sign_character(group)
            .ok_or_else(|| bad("negation needs a group with a subgroup of index 2"))?;
        let k = a.rank();
        let mats = sign
            .iter()
            .map(|&neg| {
                (0..k)
                    .map(|i| (0..k).map(|j| if i != j { 0 } else if neg { -1 } else { 1 }).collect())
                    .collect()
            })
            .collect();
        Ok(json::module_to_json(&build_module(a, group.clone(), ActionSpec::Elements(mats))?))
    } else {
        read_json(s)
    }
}

pub fn function_value(s: &str, group: &Arc<FiniteGroup>) -> Result<Value> {
    let labels: Vec<usize> = (0..group.order()).collect();
    let f = if let Some(c) = s.strip_prefix("const:") {
        GroupFunction::constant(group.clone(), rational::parse(c)?)?
    } else if s == "delta" {
        GroupFunction::indicator(group.clone(), &[group.identity()])
    } else if let Some(set) = s.strip_prefix("indicator:") {
        let members = split_top(set)
            .into_iter()
            .map(|l| group.index_of(l.trim()).ok_or_else(|| bad(format!("unknown element {l:?}"))))
            .collect::<Result<Vec<_>>>()?;
        GroupFunction::indicator(group.clone(), &members)
    } else if let Some(vals) = s.strip_prefix("values:") {
        let values = vals.split(',').map(rational::parse).collect::<std::result::Result<Vec<_>, _>>()?;
        if values.len() != labels.len() {
            return Err(bad(format!("values: {} entries for a group of order {}", values.len(), labels.len())));
        }
        GroupFunction::new(group.clone(), values)?
    } else {
        return read_json(s);
    };
    Ok(json::function_to_json(&f))
}

pub fn lie_value(s: &str) -> Result<Value> {
    let l = match s {
        "sl2" => LieAlgebra::sl2(),
        "heisenberg" => LieAlgebra::heisenberg(),
        _ => match s.strip_prefix("abelian:") {
            Some(n) => LieAlgebra::abelian(parse_usize(n, "abelian")?),
            None => return read_json(s),
        },
    };
    Ok(json::lie_to_json(&l))
}

pub fn lie_module_value(s: &str, alg: &LieAlgebra) -> Result<Value> {
    if s == "adjoint" {
        Ok(json::lie_module_to_json(&LieModule::adjoint(alg)))
    } else if let Some(m) = s.strip_prefix("trivial:") {
        Ok(json::lie_module_to_json(&LieModule::trivial(alg, parse_usize(m, "trivial")?)))
    } else {
        read_json(s)
    }
}

/// `chain:m,n` is `0 -> Z/m -> Z/mn -> Z/n -> 0` with trivial action.
pub fn ses_value(s: &str) -> Result<Value> {
    match s.strip_prefix("chain:") {
        Some(arg) => {
            let parts: Vec<&str> = arg.split(',').collect();
            let [m, n] = parts.as_slice() else {
                return Err(bad("chain:m,n expects two moduli"));
            };
            let (m, n) = (parse_usize(m, "chain")? as i64, parse_usize(n, "chain")? as i64);
            if m < 1 || n < 1 {
                return Err(bad("chain moduli must be positive"));
            }
            let t = |k: i64| json!({ "moduli": [k], "action": { "kind": "trivial" } });
            Ok(json!({ "A1": t(m), "A": t(m * n), "A2": t(n), "incl": [[n]], "proj": [[1]] }))
        }
        None => read_json(s),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_shorthand() {
        let v = group_value("product:cyclic:2,cyclic:2", &Limits::default()).unwrap();
        assert_eq!(v["elements"].as_array().unwrap().len(), 4);
        let v = group_value("product:(product:cyclic:2,cyclic:2),cyclic:3", &Limits::default()).unwrap();
        assert_eq!(v["elements"].as_array().unwrap().len(), 12);
    }

    #[test]
    fn carriers() {
        assert_eq!(carrier("Z/2xZ/4").unwrap().moduli(), &[2, 4]);
        assert_eq!(carrier("Z/3").unwrap().moduli(), &[3]);
        assert_eq!(carrier("2,2").unwrap().moduli(), &[2, 2]);
    }

    #[test]
    fn negation_needs_index_two() {
        let g = Arc::new(FiniteGroup::cyclic(3));
        assert!(module_value("negation:Z/4", &g).is_err());
        let g = Arc::new(FiniteGroup::symmetric(3));
        let v = module_value("negation:Z/3", &g).unwrap();
        assert_eq!(v["action"]["kind"], "matrices");
    }
}

//! The `fincohom` command line.
//!
//! Every command expands its shorthand arguments into the JSON input
//! formats of `fincohom_core::json`, so `--emit-input` can print the exact
//! document that `--input` later replays.

pub mod error;
pub mod inputs;
pub mod table;
pub mod verify;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fincohom_core::cohomology::CohomologyGroup;
use fincohom_core::extension::{build_extension_with, classify_extensions_with};
use fincohom_core::exact::long_exact_sequence_with;
use fincohom_core::haar::{approx_integral, invariant_integral, relative_integral};
use fincohom_core::json;
use fincohom_core::lie::{ce_cohomology, differential_squares_to_zero, euler_characteristic};
use fincohom_core::{iso, rational, Limits};
use serde_json::{json, Map, Value};

use crate::error::CliError;
use crate::table::Table;

type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "fincohom", version, about = "Cohomology of finite groups, extensions, exact sequences, covering LPs and Lie algebra cohomology")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Print the expanded input document and stop.
    #[arg(long, global = true)]
    pub emit_input: bool,
    /// Read the input document written by --emit-input; flags override its fields.
    #[arg(long, global = true)]
    pub input: Option<String>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 2024)]
    pub seed: u64,
    #[arg(long, global = true)]
    pub max_group_order: Option<usize>,
    #[arg(long, global = true)]
    pub max_tuples: Option<u128>,
    #[arg(long, global = true)]
    pub max_degree: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// H^n(G, A), optionally classifying a cochain.
    Cohomology {
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        module: Option<String>,
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long)]
        cocycle: Option<String>,
    },
    /// Build the extension of a 2-cocycle, or classify all extensions.
    Extensions {
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        module: Option<String>,
        #[arg(long)]
        cocycle: Option<String>,
        #[arg(long)]
        classify: bool,
    },
    /// Long exact sequence of a short exact sequence of modules.
    Les {
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        ses: Option<String>,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Approximate, relative and invariant integrals on a finite group.
    Haar {
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        f: Option<String>,
        /// Reference function; defaults to the constant 1.
        #[arg(long)]
        g: Option<String>,
        #[arg(long)]
        phi: Option<String>,
    },
    /// Chevalley–Eilenberg cohomology of a Lie algebra.
    Lie {
        #[arg(long)]
        lie: Option<String>,
        /// Representation; defaults to the trivial one-dimensional module.
        #[arg(long)]
        module: Option<String>,
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Seeded randomized property checks across all modules.
    Verify {
        #[arg(long, default_value_t = 50)]
        cases: usize,
    },
}

/// Output of a command in both renderings.
pub struct Output {
    pub json: Value,
    pub table: Table,
}

impl Common {
    fn limits(&self) -> Limits {
        let mut l = Limits::default();
        if let Some(x) = self.max_group_order {
            l.max_group_order = x;
        }
        if let Some(x) = self.max_tuples {
            l.max_tuples = x;
        }
        if let Some(x) = self.max_degree {
            l.max_degree = x;
        }
        l
    }
}

/// Resolved inputs: flag values take precedence over the `--input` document.
struct Inputs {
    doc: Map<String, Value>,
}

impl Inputs {
    fn load(common: &Common) -> Result<Self> {
        let doc = match &common.input {
            None => Map::new(),
            Some(p) => match inputs::read_json(p)? {
                Value::Object(m) => m,
                _ => return Err(CliError::Usage("--input must hold a JSON object".into())),
            },
        };
        Ok(Self { doc })
    }

    fn resolve(
        &mut self,
        key: &str,
        flag: &Option<String>,
        expand: impl FnOnce(&str) -> Result<Value>,
    ) -> Result<Option<Value>> {
        let v = match flag {
            Some(s) => Some(expand(s)?),
            None => self.doc.get(key).cloned(),
        };
        if let Some(v) = &v {
            self.doc.insert(key.to_string(), v.clone());
        }
        Ok(v)
    }

    fn require(
        &mut self,
        key: &str,
        flag: &Option<String>,
        expand: impl FnOnce(&str) -> Result<Value>,
    ) -> Result<Value> {
        self.resolve(key, flag, expand)?
            .ok_or_else(|| CliError::Usage(format!("--{key} is required")))
    }

    fn number(&mut self, key: &str, flag: Option<usize>) -> Result<Option<usize>> {
        let v = match flag {
            Some(x) => Some(x),
            None => match self.doc.get(key) {
                None | Some(Value::Null) => None,
                Some(v) => Some(
                    v.as_u64()
                        .ok_or_else(|| CliError::Usage(format!("input field {key:?} must be a nonnegative integer")))?
                        as usize,
                ),
            },
        };
        if let Some(x) = v {
            self.doc.insert(key.to_string(), json!(x));
        }
        Ok(v)
    }

    fn flag(&mut self, key: &str, flag: bool) -> bool {
        let v = flag || self.doc.get(key).and_then(Value::as_bool).unwrap_or(false);
        if v {
            self.doc.insert(key.to_string(), json!(true));
        }
        v
    }

    fn into_value(self) -> Value {
        Value::Object(self.doc)
    }
}

/// Checks that every file named on the command line exists.
fn check_files(cli: &Cli) -> Result<()> {
    let c = &cli.common;
    let mut args: Vec<(&str, Option<&String>)> = vec![("input", c.input.as_ref())];
    match &cli.command {
        Command::Cohomology {
            group, module, cocycle, ..
        } => args.extend([("group", group.as_ref()), ("module", module.as_ref()), ("cocycle", cocycle.as_ref())]),
        Command::Extensions {
            group, module, cocycle, ..
        } => args.extend([("group", group.as_ref()), ("module", module.as_ref()), ("cocycle", cocycle.as_ref())]),
        Command::Les { group, ses, .. } => args.extend([("group", group.as_ref()), ("ses", ses.as_ref())]),
        Command::Haar { group, f, g, phi } => args.extend([
            ("group", group.as_ref()),
            ("function", f.as_ref()),
            ("function", g.as_ref()),
            ("function", phi.as_ref()),
        ]),
        Command::Lie { lie, module, .. } => args.extend([("lie", lie.as_ref()), ("lie-module", module.as_ref())]),
        Command::Verify { .. } => {}
    }
    for path in inputs::referenced_files(&args) {
        if !Path::new(path).is_file() {
            return Err(CliError::Io {
                path: path.to_string(),
                message: "no such file".into(),
            });
        }
    }
    Ok(())
}

pub fn run(cli: &Cli) -> Result<Output> {
    check_files(cli)?;
    let common = &cli.common;
    let limits = common.limits();
    let mut inp = Inputs::load(common)?;
    match &cli.command {
        Command::Cohomology {
            group,
            module,
            degree,
            cocycle,
        } => {
            let g = Arc::new(json::group_from_json(
                &inp.require("group", group, |s| inputs::group_value(s, &limits))?,
                &limits,
            )?);
            let m = Arc::new(json::module_from_json(
                &inp.require("module", module, |s| inputs::module_value(s, &g))?,
                g.clone(),
            )?);
            let cv = inp.resolve("cocycle", cocycle, inputs::read_json)?;
            let c = cv.map(|v| json::cochain_from_json(&v, m.clone())).transpose()?;
            let degree = inp.number("degree", *degree)?.or(c.as_ref().map(|c| c.degree())).unwrap_or(1);
            inp.doc.insert("degree".into(), json!(degree));
            if common.emit_input {
                return Ok(emitted(inp.into_value()));
            }
            let h = CohomologyGroup::compute(&m, degree, &limits)?;
            let mut out = json::cohomology_to_json(&h);
            out["order"] = json!(h.order().to_string());
            let mut t = Table::new(["field", "value"]);
            t.row(["degree", &degree.to_string()]);
            t.row(["factors", &format!("{:?}", h.factors())]);
            t.row(["order", &h.order().to_string()]);
            if let Some(c) = c {
                if c.degree() != degree {
                    return Err(CliError::Usage(format!(
                        "cocycle has degree {} but --degree is {degree}",
                        c.degree()
                    )));
                }
                let cl = h.classify(&c)?;
                out["classification"] = json!({
                    "is_cocycle": cl.is_cocycle,
                    "violation": cl.violation,
                    "is_coboundary": cl.is_coboundary,
                    "preimage": cl.preimage.as_ref().map(json::cochain_to_json),
                    "class": cl.class.as_ref().map(json::class_to_json),
                });
                t.row(["is_cocycle", &cl.is_cocycle.to_string()]);
                t.row(["is_coboundary", &cl.is_coboundary.to_string()]);
                if let Some(cls) = &cl.class {
                    t.row(["class", &format!("{:?}", cls.coordinates)]);
                }
                if let Some(v) = &cl.violation {
                    t.row(["violation", &format!("{v:?}")]);
                }
            }
            Ok(Output { json: out, table: t })
        }
        Command::Extensions {
            group,
            module,
            cocycle,
            classify,
        } => {
            let g = Arc::new(json::group_from_json(
                &inp.require("group", group, |s| inputs::group_value(s, &limits))?,
                &limits,
            )?);
            let m = Arc::new(json::module_from_json(
                &inp.require("module", module, |s| inputs::module_value(s, &g))?,
                g.clone(),
            )?);
            let cv = inp.resolve("cocycle", cocycle, inputs::read_json)?;
            let classify = inp.flag("classify", *classify) || cv.is_none();
            inp.doc.insert("classify".into(), json!(classify));
            if common.emit_input {
                return Ok(emitted(inp.into_value()));
            }
            if classify {
                let classes = classify_extensions_with(&m, &limits)?;
                let mut t = Table::new(["class", "|E|", "type"]);
                let entries: Vec<Value> = classes
                    .iter()
                    .map(|c| {
                        let label = c.label.clone();
                        t.row([
                            format!("{:?}", c.class.coordinates),
                            c.extension.order().to_string(),
                            label.clone().unwrap_or_else(|| "?".into()),
                        ]);
                        let mut v = json::extension_to_json(&c.extension, &c.cocycle);
                        let obj = v.as_object_mut().expect("object");
                        obj.remove("group");
                        obj.remove("module");
                        let mut entry = Map::new();
                        entry.insert("class".into(), json::class_to_json(&c.class));
                        entry.insert("label".into(), json!(label));
                        entry.extend(std::mem::take(obj));
                        Value::Object(entry)
                    })
                    .collect();
                let factors = classes.first().map(|c| c.class.factors.clone()).unwrap_or_default();
                let out = json!({
                    "group": json::group_to_json(&g),
                    "module": json::module_to_json(&m),
                    "h2_factors": factors,
                    "count": classes.len(),
                    "classes": entries,
                });
                Ok(Output { json: out, table: t })
            } else {
                let f = json::cochain_from_json(&cv.expect("cocycle present"), m.clone())?;
                let e = build_extension_with(&f, &limits)?;
                let label = (e.order() <= limits.max_label_order).then(|| iso::identify(e.group())).flatten();
                let mut out = json::extension_to_json(&e, &f);
                out["label"] = json!(label);
                let mut t = Table::new(["field", "value"]);
                t.row(["|E|".to_string(), e.order().to_string()]);
                t.row(["type".to_string(), label.unwrap_or_else(|| "?".into())]);
                t.row(["inclusion".to_string(), format!("{:?}", e.inclusion())]);
                t.row(["section".to_string(), format!("{:?}", e.section())]);
                Ok(Output { json: out, table: t })
            }
        }
        Command::Les { group, ses, cap } => {
            let g = Arc::new(json::group_from_json(
                &inp.require("group", group, |s| inputs::group_value(s, &limits))?,
                &limits,
            )?);
            let sv = inp.require("ses", ses, inputs::ses_value)?;
            let cap = inp.number("cap", *cap)?.unwrap_or(2);
            inp.doc.insert("cap".into(), json!(cap));
            if common.emit_input {
                return Ok(emitted(inp.into_value()));
            }
            let s = json::ses_from_json(&sv, g.clone(), &limits)?;
            let report = long_exact_sequence_with(&s, cap, &limits)?;
            let mut t = Table::new(["node", "factors", "exact"]);
            for n in &report.nodes {
                t.row([n.label.clone(), format!("{:?}", n.factors), n.exact.to_string()]);
            }
            t.footer(format!(
                "exact: {}  complex: {}  section-independent δ: {}",
                report.exact, report.is_complex, report.section_independent
            ));
            let mut out = json!({ "group": json::group_to_json(&g), "ses": json::ses_to_json(&s) });
            let rv = serde_json::to_value(&report).expect("report serializes");
            out.as_object_mut().unwrap().extend(rv.as_object().unwrap().clone());
            Ok(Output { json: out, table: t })
        }
        Command::Haar { group, f, g, phi } => {
            let grp = Arc::new(json::group_from_json(
                &inp.require("group", group, |s| inputs::group_value(s, &limits))?,
                &limits,
            )?);
            let fv = inp.require("f", f, |s| inputs::function_value(s, &grp))?;
            let gv = inp
                .resolve("g", g, |s| inputs::function_value(s, &grp))?
                .map_or_else(|| inputs::function_value("const:1", &grp), Ok)?;
            inp.doc.insert("g".into(), gv.clone());
            let pv = inp.resolve("phi", phi, |s| inputs::function_value(s, &grp))?;
            if common.emit_input {
                return Ok(emitted(inp.into_value()));
            }
            let fun = json::function_from_json(&fv, grp.clone())?;
            let gref = json::function_from_json(&gv, grp.clone())?;
            let approx = approx_integral(&fun, &gref)?;
            let inv = invariant_integral(&grp, Some(&gref))?;
            let value = inv.evaluate(&fun);
            let cert = inv.certify(&[fun.clone(), gref.clone()])?;
            let mut t = Table::new(["quantity", "value"]);
            t.row(["(f;g)".to_string(), rational::format(&approx.value)]);
            t.row(["I(f)".to_string(), rational::format(&value)]);
            t.row(["invariant integral certified".to_string(), cert.all_hold().to_string()]);
            let mut out = json!({
                "group": json::group_to_json(&grp),
                "f": fv,
                "g": gv,
                "approx": approx,
                "invariant": { "value": rational::format(&value), "certificate": cert },
            });
            if let Some(pv) = pv {
                let p = json::function_from_json(&pv, grp.clone())?;
                let rel = relative_integral(&fun, &p, &gref)?;
                t.row(["I_φ(f)".to_string(), rational::format(&rel.value)]);
                t.row(["I_φ properties hold".to_string(), rel.properties.all_hold().to_string()]);
                out["phi"] = pv;
                out["relative"] = serde_json::to_value(&rel).expect("serializes");
            }
            Ok(Output { json: out, table: t })
        }
        Command::Lie { lie, module, degree } => {
            let lv = inp.require("lie", lie, inputs::lie_value)?;
            let alg = json::lie_from_json(&lv)?;
            let mv = inp
                .resolve("module", module, |s| inputs::lie_module_value(s, &alg))?
                .map_or_else(|| inputs::lie_module_value("trivial:1", &alg), Ok)?;
            inp.doc.insert("module".into(), mv.clone());
            let degree = inp.number("degree", *degree)?;
            if common.emit_input {
                return Ok(emitted(inp.into_value()));
            }
            let rep = json::lie_module_from_json(&mv, &alg)?;
            let degrees: Vec<usize> = match degree {
                Some(d) => vec![d],
                None => (0..=alg.dim()).collect(),
            };
            let hs = degrees
                .iter()
                .map(|&n| ce_cohomology(&alg, &rep, n))
                .collect::<fincohom_core::Result<Vec<_>>>()?;
            let mut t = Table::new(["degree", "dim H", "dim C"]);
            for h in &hs {
                t.row([h.degree.to_string(), h.dim.to_string(), h.cochain_dim.to_string()]);
            }
            let d2 = differential_squares_to_zero(&alg, &rep)?;
            let euler = euler_characteristic(&alg, &rep)?;
            t.footer(format!("d∘d = 0: {d2}"));
            let out = json!({
                "algebra": lv,
                "module": mv,
                "cohomology": hs,
                "d_squared_zero": d2,
                "euler": euler,
            });
            Ok(Output { json: out, table: t })
        }
        Command::Verify { cases } => {
            inp.doc.insert("seed".into(), json!(common.seed));
            inp.doc.insert("cases".into(), json!(cases));
            if common.emit_input {
                return Ok(emitted(inp.into_value()));
            }
            let report = verify::run(common.seed, *cases);
            let mut t = Table::new(["check", "cases", "passed"]);
            for c in &report.checks {
                t.row([c.name.clone(), c.cases.to_string(), c.passed.to_string()]);
            }
            let json = serde_json::to_value(&report).expect("serializes");
            if !report.passed {
                return Err(CliError::Verify(json));
            }
            Ok(Output { json, table: t })
        }
    }
}

fn emitted(doc: Value) -> Output {
    let mut t = Table::new(["field"]);
    if let Value::Object(m) = &doc {
        for k in m.keys() {
            t.row([k.clone()]);
        }
    }
    Output { json: doc, table: t }
}

/// The exact bytes written for an output.
pub fn render(out: &Output, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&out.json).expect("JSON values serialize");
            s.push('\n');
            s
        }
        Format::Table => out.table.render(),
    }
}

/// Writes atomically so a failed run leaves no partial file.
pub fn write_output(path: Option<&Path>, text: &str) -> std::io::Result<()> {
    match path {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()
        }
        Some(p) => {
            let dir = p.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
            let tmp = dir.join(format!(
                ".{}.tmp",
                p.file_name().and_then(|n| n.to_str()).unwrap_or("fincohom-out")
            ));
            std::fs::write(&tmp, text)?;
            std::fs::rename(&tmp, p)
        }
    }
}

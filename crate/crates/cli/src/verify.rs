//! Seeded randomized property checks, run by `fincohom verify`.

use std::sync::Arc;

use fincohom_core::cohomology::CohomologyGroup;
use fincohom_core::extension::{build_extension, cocycle_from_section};
use fincohom_core::haar::{approx_integral, invariant_integral, unit_reference};
use fincohom_core::lie::{differential_squares_to_zero, euler_characteristic};
use fincohom_core::module::fixed_points;
use fincohom_core::{json, Cochain, FiniteGroup, GModule, LieAlgebra, LieModule, Limits};
use fincohom_core::{rational, GroupFunction};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::inputs;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub cases: usize,
    pub passed: bool,
    /// First failing case, described.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub cases: usize,
    pub checks: Vec<Check>,
    pub passed: bool,
}

fn groups() -> Vec<(&'static str, FiniteGroup)> {
    vec![
        ("Z/1", FiniteGroup::cyclic(1)),
        ("Z/2", FiniteGroup::cyclic(2)),
        ("Z/3", FiniteGroup::cyclic(3)),
        ("Z/4", FiniteGroup::cyclic(4)),
        ("Z/6", FiniteGroup::cyclic(6)),
        ("Z/2×Z/2", FiniteGroup::cyclic(2).direct_product(&FiniteGroup::cyclic(2))),
        ("S3", FiniteGroup::symmetric(3)),
    ]
}

const CARRIERS: &[&str] = &["Z/2", "Z/3", "Z/4", "Z/2xZ/2"];

/// A random small module together with a description.
fn random_module(rng: &mut ChaCha8Rng, max_group: usize, max_carrier: u128) -> (String, Arc<GModule>) {
    loop {
        let (name, g) = groups().into_iter().filter(|(_, g)| g.order() <= max_group).collect::<Vec<_>>()
            [rng.gen_range(0..groups().iter().filter(|(_, g)| g.order() <= max_group).count())]
        .clone();
        let carrier = CARRIERS.choose(rng).expect("nonempty");
        let g = Arc::new(g);
        let kind = if rng.gen_bool(0.5) { "negation" } else { "trivial" };
        let spec = format!("{kind}:{carrier}");
        let Ok(v) = inputs::module_value(&spec, &g) else { continue };
        let m = json::module_from_json(&v, g).expect("shorthand modules parse");
        if m.carrier().order() <= max_carrier {
            return (format!("{name} on {spec}"), Arc::new(m));
        }
    }
}

fn random_cochain(rng: &mut ChaCha8Rng, m: &Arc<GModule>, degree: usize) -> Cochain {
    let moduli = m.moduli().to_vec();
    Cochain::from_fn(m.clone(), degree, |_| moduli.iter().map(|&q| rng.gen_range(0..q)).collect())
}

struct Runner {
    checks: Vec<Check>,
}

impl Runner {
    fn check(&mut self, name: &str, cases: usize, mut case: impl FnMut(usize) -> Result<(), String>) {
        let failure = (0..cases).find_map(|i| case(i).err().map(|e| format!("case {i}: {e}")));
        self.checks.push(Check {
            name: name.into(),
            cases,
            passed: failure.is_none(),
            failure,
        });
    }
}

/// `|Z^1| / |B^1|` by enumerating every 1-cochain.
fn brute_h1(m: &Arc<GModule>) -> u128 {
    let n = m.group().order();
    let a: Vec<Vec<i64>> = m.carrier().elements().collect();
    let mut z1 = 0u128;
    let mut idx = vec![0usize; n];
    loop {
        let c = |s: usize| &a[idx[s]];
        let g = m.group();
        let crossed = (0..n).all(|s| {
            (0..n).all(|t| m.carrier().add(&m.act(s, c(t)), c(s)) == *c(g.mul(s, t)))
        });
        z1 += crossed as u128;
        let mut i = 0;
        while i < n && idx[i] + 1 == a.len() {
            idx[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
        idx[i] += 1;
    }
    let mut b1: Vec<Vec<Vec<i64>>> = a
        .iter()
        .map(|x| (0..n).map(|s| m.carrier().sub(&m.act(s, x), x)).collect())
        .collect();
    b1.sort();
    b1.dedup();
    z1 / b1.len() as u128
}

pub fn run(seed: u64, cases: usize) -> VerifyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let limits = Limits::default();
    let mut r = Runner { checks: Vec::new() };

    r.check("coboundary squares to zero", cases, |_| {
        let (name, m) = random_module(&mut rng, 6, 4);
        let degree = rng.gen_range(0..=2);
        let f = random_cochain(&mut rng, &m, degree);
        let dd = f.coboundary().coboundary();
        dd.is_zero().then_some(()).ok_or_else(|| format!("{name}, degree {degree}"))
    });

    r.check("H^0 equals the fixed points", cases, |_| {
        let (name, m) = random_module(&mut rng, 6, 4);
        let h0 = CohomologyGroup::compute(&m, 0, &limits).map_err(|e| e.to_string())?;
        let fp = fixed_points(&m);
        (h0.order() == fp.order() && h0.factors() == fp.factors)
            .then_some(())
            .ok_or_else(|| format!("{name}: H^0 {:?} vs A^G {:?}", h0.factors(), fp.factors))
    });

    r.check("H^1 matches brute-force enumeration", cases, |_| {
        let (name, m) = random_module(&mut rng, 4, 4);
        let h1 = CohomologyGroup::compute(&m, 1, &limits).map_err(|e| e.to_string())?;
        let oracle = brute_h1(&m);
        (h1.order() == oracle)
            .then_some(())
            .ok_or_else(|| format!("{name}: {} vs {oracle}", h1.order()))
    });

    r.check("cohomologous cochains share a class", cases, |_| {
        let (name, m) = random_module(&mut rng, 6, 4);
        let degree = rng.gen_range(1..=2);
        let h = CohomologyGroup::compute(&m, degree, &limits).map_err(|e| e.to_string())?;
        let classes = h.classes();
        let class = classes.choose(&mut rng).expect("H^n has a zero class");
        let rep = h.representative(class);
        let shifted = rep.add(&random_cochain(&mut rng, &m, degree - 1).coboundary());
        let got = h.class_of(&shifted).map_err(|e| e.to_string())?;
        (got == *class).then_some(()).ok_or_else(|| format!("{name}, degree {degree}"))
    });

    r.check("extension cocycle round trip", cases, |_| {
        let (name, m) = random_module(&mut rng, 4, 4);
        let h = CohomologyGroup::compute(&m, 2, &limits).map_err(|e| e.to_string())?;
        let classes = h.classes();
        let class = classes.choose(&mut rng).expect("nonempty");
        let f = h.representative(class).add(&random_cochain(&mut rng, &m, 1).coboundary());
        let e = build_extension(&f).map_err(|e| e.to_string())?;
        let back = cocycle_from_section(&e).map_err(|e| e.to_string())?;
        let got = h.class_of(&back).map_err(|e| e.to_string())?;
        (got == *class).then_some(()).ok_or_else(|| format!("{name}: class {:?}", class.coordinates))
    });

    r.check("covering LP certificates and invariant integral", cases, |_| {
        let (name, g) = groups().choose(&mut rng).expect("nonempty").clone();
        let g = Arc::new(g);
        let values = (0..g.order())
            .map(|_| rational::ratio(rng.gen_range(0..6), rng.gen_range(1..4)))
            .collect();
        let f = GroupFunction::new(g.clone(), values).map_err(|e| e.to_string())?;
        let one = unit_reference(&g);
        let report = approx_integral(&f, &one).map_err(|e| e.to_string())?;
        let inv = invariant_integral(&g, None).map_err(|e| e.to_string())?;
        let cert = inv.certify(&[f.clone(), one]).map_err(|e| e.to_string())?;
        (report.feasible && cert.all_hold())
            .then_some(())
            .ok_or_else(|| format!("{name}: feasible {} certificate {}", report.feasible, cert.all_hold()))
    });

    let lie_cases: Vec<(&str, LieAlgebra, bool)> = vec![
        ("sl2 trivial", LieAlgebra::sl2(), false),
        ("sl2 adjoint", LieAlgebra::sl2(), true),
        ("heisenberg trivial", LieAlgebra::heisenberg(), false),
        ("heisenberg adjoint", LieAlgebra::heisenberg(), true),
        ("abelian(3) trivial", LieAlgebra::abelian(3), false),
    ];
    r.check("Lie differential squares to zero and Euler characteristic", lie_cases.len(), |i| {
        let (name, alg, adjoint) = &lie_cases[i];
        let module = if *adjoint {
            LieModule::adjoint(alg)
        } else {
            LieModule::trivial(alg, 1)
        };
        let d2 = differential_squares_to_zero(alg, &module).map_err(|e| e.to_string())?;
        let euler = euler_characteristic(alg, &module).map_err(|e| e.to_string())?;
        (d2 && euler.from_cohomology == euler.from_cochains)
            .then_some(())
            .ok_or_else(|| name.to_string())
    });

    let passed = r.checks.iter().all(|c| c.passed);
    VerifyReport {
        seed,
        cases,
        checks: r.checks,
        passed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes_and_is_reproducible() {
        let a = run(7, 5);
        assert!(a.passed, "{:?}", a.checks);
        let b = run(7, 5);
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}

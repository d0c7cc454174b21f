//! The acceptance suite: one pass/fail line per criterion.
//!
//! All arithmetic is exact, so every comparison uses tolerance 0. Runtime
//! limits are checked where a criterion pins one.

mod common;

use std::collections::HashMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use common::{all_actions, all_small_modules, carriers_up_to, gcd, groups_up_to, z, Oracle};
use fincohom_core::exact::{connecting_matrix, make_ses};
use fincohom_core::extension::equivalent;
use fincohom_core::haar::unit_reference;
use fincohom_core::lie::{betti_numbers, ce_cohomology, differential_squares_to_zero};
use fincohom_core::rational::{int, ratio, Q};
use fincohom_core::{
    build_extension, classify_extensions, cocycle_from_section, connecting, dimension_shift_check, fixed_points,
    invariant_integral, long_exact_sequence, near_additivity_gap, overlap_function, product_set_check,
    relative_integral, validate_group, Cochain, CohomologyGroup, FiniteAbelianGroup, FiniteGroup, GModule,
    GroupFunction, LieAlgebra, LieModule, Limits, SymmetricSet,
};
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20240917;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn trivial(g: FiniteGroup, q: i64) -> Arc<GModule> {
    Arc::new(GModule::trivial(Arc::new(g), FiniteAbelianGroup::cyclic(q)))
}

fn cyclic_factors(k: i64) -> Vec<i64> {
    if k == 1 {
        vec![]
    } else {
        vec![k]
    }
}

fn basis_cochain(m: &Arc<GModule>, degree: usize, tuple: usize, j: usize) -> Cochain {
    let mut c = Cochain::zero(m.clone(), degree);
    let mut v = vec![0; m.rank()];
    v[j] = 1;
    c.set_at(tuple, &v);
    c
}

fn criterion_1() -> Outcome {
    let mut checked = 0;
    // d is additive, so d∘d vanishing on every basis cochain covers all cochains
    for (name, m) in all_small_modules(4, 4) {
        for n in 0..=2 {
            let tuples = m.group().order().pow(n as u32);
            for t in 0..tuples {
                for j in 0..m.rank() {
                    let c = basis_cochain(&m, n, t, j);
                    ensure(c.coboundary().coboundary().is_zero(), || format!("{name}, degree {n}, tuple {t}"))?;
                    checked += 1;
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let groups: Vec<(String, Arc<FiniteGroup>)> =
        groups_up_to(12).into_iter().map(|(n, g)| (n, Arc::new(g))).collect();
    let carriers = carriers_up_to(4);
    let mut actions: HashMap<(usize, usize), Vec<Arc<GModule>>> = HashMap::new();
    for case in 0..200 {
        let gi = rng.gen_range(0..groups.len());
        let ai = rng.gen_range(0..carriers.len());
        let mods = actions
            .entry((gi, ai))
            .or_insert_with(|| all_actions(&groups[gi].1, &carriers[ai]));
        let m = mods.choose(&mut rng).unwrap().clone();
        let degree = rng.gen_range(0..=3);
        let moduli = m.moduli().to_vec();
        let f = Cochain::from_fn(m.clone(), degree, |_| moduli.iter().map(|&q| rng.gen_range(0..q)).collect());
        ensure(f.coboundary().coboundary().is_zero(), || {
            format!("random case {case}: {} degree {degree}", groups[gi].0)
        })?;
    }
    Ok(format!("{checked} basis cochains exhaustively, 200 seeded random cochains (|G| <= 12, degree <= 3)"))
}

fn criterion_2() -> Outcome {
    let mut count = 0;
    for (name, m) in all_small_modules(6, 4) {
        let h0 = CohomologyGroup::compute(&m, 0, &Limits::default()).map_err(|e| e.to_string())?;
        let fp = fixed_points(&m);
        let brute = m
            .carrier()
            .elements()
            .filter(|a| (0..m.group().order()).all(|s| m.act(s, a) == *a))
            .count() as u128;
        ensure(h0.factors() == fp.factors && h0.order() == brute, || {
            format!("{name}: H^0 {:?}, A^G {:?}, brute {brute}", h0.factors(), fp.factors)
        })?;
        count += 1;
    }
    Ok(format!("{count} modules, |G| <= 6"))
}

fn criterion_3() -> Outcome {
    let mut count = 0;
    let mut nontrivial = 0;
    for (name, m) in all_small_modules(3, 3) {
        let oracle = Oracle::new(&m);
        for n in 1..=2 {
            let h = CohomologyGroup::compute(&m, n, &Limits::default()).map_err(|e| e.to_string())?;
            let expected = oracle.factors(n);
            ensure(h.factors() == expected, || {
                format!("{name}, H^{n}: {:?} vs enumeration {expected:?}", h.factors())
            })?;
        }
        count += 1;
        nontrivial += usize::from(!m.is_trivial_action());
    }
    Ok(format!("{count} (G, A) pairs ({nontrivial} with nontrivial action), H^1 and H^2"))
}

fn criterion_4() -> Outcome {
    for n in 2..=6usize {
        for q in 2..=6i64 {
            let m = trivial(z(n), q);
            let expected = cyclic_factors(gcd(n as i64, q));
            let h = CohomologyGroup::compute(&m, 2, &Limits::default()).map_err(|e| e.to_string())?;
            ensure(h.factors() == expected, || format!("H^2(Z/{n}, Z/{q}) = {:?}", h.factors()))?;
            if n <= 3 && q <= 3 {
                ensure(Oracle::new(&m).factors(2) == expected, || format!("oracle disagrees at ({n}, {q})"))?;
            }
            let classes = classify_extensions(&m).map_err(|e| e.to_string())?;
            ensure(classes.len() as i64 == gcd(n as i64, q), || {
                format!("{} extension classes for (Z/{n}, Z/{q})", classes.len())
            })?;
        }
    }
    Ok("2 <= n, m <= 6; extension counts agree".into())
}

fn criterion_5() -> Outcome {
    let mut detail = Vec::new();
    for q in [2usize, 3] {
        let m = trivial(z(q), q as i64);
        let h2 = CohomologyGroup::compute(&m, 2, &Limits::default()).map_err(|e| e.to_string())?;
        for class in h2.classes() {
            let e = build_extension(&h2.representative(&class)).map_err(|e| e.to_string())?;
            ensure(e.order() == q * q && validate_group(e.group().table()).is_valid(), || {
                format!("class {:?} does not give a group of order {}", class.coordinates, q * q)
            })?;
        }
        let oracle = Oracle::new(&m);
        let cocycles = oracle.cocycles(2);
        let boundaries = oracle.coboundaries(2);
        let exts = cocycles
            .iter()
            .map(|f| {
                let c = oracle.to_cochain(&m, f, 2);
                build_extension(&c).map(|e| (c, e))
            })
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| e.to_string())?;
        for (i, (c1, e1)) in exts.iter().enumerate() {
            let back = cocycle_from_section(e1).map_err(|e| e.to_string())?;
            ensure(h2.class_of(&back).unwrap() == h2.class_of(c1).unwrap(), || format!("round trip fails at {i}"))?;
            for (j, (c2, e2)) in exts.iter().enumerate() {
                let cohomologous = boundaries.contains(&oracle.from_cochain(&c1.sub(c2)));
                let equiv = equivalent(e1, e2).map_err(|e| e.to_string())?.is_some();
                ensure(cohomologous == equiv, || {
                    format!("(Z/{q}, Z/{q}) cocycles {i}, {j}: cohomologous {cohomologous}, equivalent {equiv}")
                })?;
            }
        }
        detail.push(format!("{} cocycles for (Z/{q}, Z/{q})", cocycles.len()));
    }
    let mut labels: Vec<String> = classify_extensions(&trivial(z(2), 2))
        .map_err(|e| e.to_string())?
        .into_iter()
        .map(|c| c.label.unwrap_or_default())
        .collect();
    labels.sort();
    ensure(labels == ["Z/2×Z/2", "Z/4"], || format!("labels {labels:?}"))?;
    detail.push("types Z/4 and Z/2×Z/2".into());
    Ok(detail.join(", "))
}

fn criterion_6() -> Outcome {
    for n in [2usize, 3] {
        for q in [2i64, 3] {
            let m = trivial(z(n), q);
            let r = dimension_shift_check(&m).map_err(|e| e.to_string())?;
            let order = |f: &[i64]| f.iter().product::<i64>();
            ensure(r.h1_induced.is_empty() && r.h2_induced.is_empty(), || {
                format!("I(A) not acyclic for (Z/{n}, Z/{q})")
            })?;
            ensure(order(&r.h2_base) == order(&r.h1_quotient) && r.bijective, || {
                format!("no bijection for (Z/{n}, Z/{q})")
            })?;
            // δ on every class of H^1(G, U(A)) hits distinct classes of H^2(G, A)
            let ind = fincohom_core::induced_module(&m).map_err(|e| e.to_string())?;
            let h1u = CohomologyGroup::compute(ind.quotient(), 1, &Limits::default()).map_err(|e| e.to_string())?;
            let h2 = CohomologyGroup::compute(&m, 2, &Limits::default()).map_err(|e| e.to_string())?;
            let mut images = h1u
                .classes()
                .iter()
                .map(|c| connecting(ind.ses(), &h1u.representative(c), &h2).map(|x| x.coordinates))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| e.to_string())?;
            images.sort();
            images.dedup();
            ensure(images.len() as u128 == h2.order(), || format!("δ not bijective for (Z/{n}, Z/{q})"))?;
        }
    }
    Ok("G, A in {Z/2, Z/3}".into())
}

fn criterion_7() -> Outcome {
    let g = Arc::new(z(2));
    let sub = Arc::new(GModule::trivial(g.clone(), FiniteAbelianGroup::cyclic(2)));
    let mid = Arc::new(GModule::trivial(g.clone(), FiniteAbelianGroup::cyclic(4)));
    let quo = sub.clone();
    let ses = make_ses(sub.clone(), mid, quo.clone(), &[vec![2]], &[vec![1]], None).map_err(|e| e.to_string())?;
    let report = long_exact_sequence(&ses, 2).map_err(|e| e.to_string())?;
    ensure(report.nodes.len() == 9 && report.nodes.iter().all(|n| n.exact) && report.exact, || {
        "not exact at every node".into()
    })?;
    let limits = Limits::default();
    let h1 = CohomologyGroup::compute(&quo, 1, &limits).map_err(|e| e.to_string())?;
    let h2 = CohomologyGroup::compute(&sub, 2, &limits).map_err(|e| e.to_string())?;
    let delta = connecting_matrix(&ses, &h1, &h2).map_err(|e| e.to_string())?;
    ensure(delta == vec![vec![1]], || format!("δ1 = {delta:?}"))?;
    let alt = ses.alternate_section();
    ensure(alt != ses.section_table(), || "alternate section equals the default".into())?;
    let other = ses.with_section(alt).map_err(|e| e.to_string())?;
    let delta2 = connecting_matrix(&other, &h1, &h2).map_err(|e| e.to_string())?;
    ensure(delta == delta2 && report.section_independent, || "δ depends on the section".into())?;
    Ok("9 nodes exact through degree 2, δ1 = [[1]] for two sections".into())
}

fn random_function(rng: &mut ChaCha8Rng, g: &Arc<FiniteGroup>, nonzero: bool) -> GroupFunction {
    loop {
        let values: Vec<Q> = (0..g.order())
            .map(|_| if rng.gen_bool(0.3) { Q::zero() } else { ratio(rng.gen_range(1..6), rng.gen_range(1..4)) })
            .collect();
        if !nonzero || values.iter().any(|v| !v.is_zero()) {
            return GroupFunction::new(g.clone(), values).unwrap();
        }
    }
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 8);
    let groups: Vec<Arc<FiniteGroup>> = groups_up_to(8).into_iter().map(|(_, g)| Arc::new(g)).collect();
    for case in 0..100 {
        let g = groups.choose(&mut rng).unwrap().clone();
        let n = g.order();
        let delta = GroupFunction::indicator(g.clone(), &[g.identity()]);
        let one = unit_reference(&g);
        let f = random_function(&mut rng, &g, false);
        let f2 = random_function(&mut rng, &g, false);
        let phi = if case % 4 == 0 { delta.clone() } else { random_function(&mut rng, &g, true) };
        let rel = relative_integral(&f, &phi, &one).map_err(|e| e.to_string())?;
        ensure(rel.properties.all_hold(), || format!("case {case}: {:?}", rel.properties))?;
        // with g ≡ 1 the cover needs max f translates; with δ_e every point separately
        let max = f.values().iter().max().cloned().unwrap_or_else(Q::zero);
        ensure(rel.numerator.value == fincohom_core::approx_integral(&f, &phi).unwrap().value, || {
            format!("case {case}: numerator")
        })?;
        ensure(fincohom_core::approx_integral(&f, &one).unwrap().value == max, || format!("case {case}: (f;1) != max f"))?;
        let sum = f.sum();
        let mean = &sum / int(n as i64);
        let at_delta = relative_integral(&f, &delta, &one).map_err(|e| e.to_string())?.value;
        ensure(at_delta == mean, || format!("case {case}: I_δ(f) = {at_delta}, mean {mean}"))?;
        let gap = near_additivity_gap(&f, &f2, &delta).map_err(|e| e.to_string())?;
        ensure(gap.is_zero(), || format!("case {case}: gap {gap} at δ_e"))?;
        let inv = invariant_integral(&g, None).map_err(|e| e.to_string())?;
        let cert = inv.certify(&[f.clone(), f2.clone(), one.clone()]).map_err(|e| e.to_string())?;
        ensure(cert.left_invariant && cert.additive && cert.positive && cert.all_hold(), || {
            format!("case {case}: {cert:?}")
        })?;
        ensure(inv.evaluate(&f) == mean, || format!("case {case}: I(f) is not the mean"))?;
    }
    Ok("100 seeded instances, |G| <= 8".into())
}

fn criterion_9() -> Outcome {
    let mut count = 0;
    for n in 1..=6 {
        let g = Arc::new(z(n));
        let all = SymmetricSet::all(&g);
        // every nonempty inverse-closed subset, counted independently
        let orbits = (0..n).filter(|&x| x <= (n - x) % n).count();
        ensure(all.len() == (1 << orbits) - 1, || format!("Z/{n}: {} symmetric sets", all.len()))?;
        for m in &all {
            let members = m.members();
            let r = product_set_check(m);
            let u = overlap_function(m);
            for x in 0..n {
                let brute = members.iter().filter(|&&y| members.contains(&((y + n - x) % n))).count();
                let in_product = members.iter().any(|&a| members.iter().any(|&b| (a + b) % n == x));
                ensure(*u.value(x) == int(brute as i64), || format!("Z/{n} {members:?}: u({x})"))?;
                ensure(brute == 0 || in_product, || format!("Z/{n} {members:?}: {x} in supp u but not in MM"))?;
            }
            ensure(r.holds() && *u.value(0) == int(members.len() as i64), || {
                format!("Z/{n} {members:?}: {r:?}")
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} symmetric subsets of Z/n, n <= 6"))
}

fn criterion_10() -> Outcome {
    let cases: Vec<(&str, LieAlgebra, Option<Vec<usize>>)> = vec![
        ("sl2", LieAlgebra::sl2(), Some(vec![1, 0, 0, 1])),
        ("heisenberg", LieAlgebra::heisenberg(), Some(vec![1, 2, 2, 1])),
        ("abelian(2)", LieAlgebra::abelian(2), Some(vec![1, 2, 1])),
        ("abelian(3)", LieAlgebra::abelian(3), Some(vec![1, 3, 3, 1])),
    ];
    for (name, alg, expected) in cases {
        for (mname, module) in [("trivial", LieModule::trivial(&alg, 1)), ("adjoint", LieModule::adjoint(&alg))] {
            let d2 = differential_squares_to_zero(&alg, &module).map_err(|e| e.to_string())?;
            ensure(d2, || format!("{name} {mname}: d∘d != 0"))?;
            if mname == "trivial" {
                let betti = betti_numbers(&alg, &module).map_err(|e| e.to_string())?;
                ensure(Some(&betti) == expected.as_ref(), || format!("{name}: betti {betti:?}"))?;
            }
        }
    }
    let sl2 = LieAlgebra::sl2();
    let triv = LieModule::trivial(&sl2, 1);
    for n in [1, 2] {
        let h = ce_cohomology(&sl2, &triv, n).map_err(|e| e.to_string())?;
        ensure(h.dim == 0, || format!("H^{n}(sl2) has dimension {}", h.dim))?;
    }
    Ok("sl2 1,0,0,1; Heisenberg 1,2,2,1; abelian(2) 1,2,1".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Option<u64>); 10] = [
        ("d∘d = 0, tolerance 0", criterion_1, Some(10)),
        ("H^0 = A^G, tolerance 0", criterion_2, None),
        ("SNF path = enumeration oracle for H^1, H^2", criterion_3, Some(60)),
        ("H^2(Z/n, Z/m) = Z/gcd(n, m) and extension counts", criterion_4, None),
        ("extension correspondence", criterion_5, None),
        ("induced-module acyclicity and dimension shift", criterion_6, None),
        ("LES exactness and section-independent δ", criterion_7, None),
        ("covering LP and invariant integral, exact", criterion_8, Some(30)),
        ("overlap support lies in MM and u(e) = |M|", criterion_9, None),
        ("Lie cohomology", criterion_10, Some(5)),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(s)) if elapsed > Duration::from_secs(*s) => {
                Err(format!("took {:.2}s, limit {s}s", elapsed.as_secs_f64()))
            }
            (o, _) => o,
        };
        let limit = limit.map(|s| format!(", limit {s}s")).unwrap_or_default();
        match outcome {
            Ok(detail) => println!("criterion {:>2}: PASS  {name}: {detail} ({:.2}s{limit})", i + 1, elapsed.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name}: {why} ({:.2}s{limit})", i + 1, elapsed.as_secs_f64());
            }
        }
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

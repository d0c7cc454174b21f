mod common;

use std::sync::Arc;

use common::{all_small_modules, z};
use fincohom_core::haar::unit_reference;
use fincohom_core::lie::{betti_numbers, differential_squares_to_zero};
use fincohom_core::rational::{ratio, Q};
use fincohom_core::{
    approx_integral, build_extension, classify_cochain, cocycle_from_section, fixed_points, long_exact_sequence,
    make_ses, ChangeOfGroups, Cochain, CohomologyGroup, FiniteAbelianGroup, GModule, GroupFunction, LieAlgebra,
    LieModule, Limits,
};
use num_traits::Zero;
use proptest::prelude::*;
use proptest::sample::Index;

fn modules(max_g: usize, max_a: u128) -> Vec<Arc<GModule>> {
    all_small_modules(max_g, max_a).into_iter().map(|(_, m)| m).collect()
}

fn cochain(m: &Arc<GModule>, degree: usize, raw: &[i64]) -> Cochain {
    let moduli = m.moduli().to_vec();
    let mut it = raw.iter().cycle();
    Cochain::from_fn(m.clone(), degree, |_| moduli.iter().map(|&q| it.next().unwrap().rem_euclid(q)).collect())
}

fn raw_values() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(0i64..64, 1..40)
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn coboundary_squares_to_zero(pick in any::<Index>(), degree in 0usize..=3, raw in raw_values()) {
        let ms = modules(6, 4);
        let m = pick.get(&ms);
        let f = cochain(m, degree, &raw);
        prop_assert!(f.coboundary().coboundary().is_zero());
    }

    #[test]
    fn coboundaries_are_cocycles_in_the_zero_class(pick in any::<Index>(), degree in 1usize..=2, raw in raw_values()) {
        let ms = modules(6, 4);
        let m = pick.get(&ms);
        let h = cochain(m, degree - 1, &raw);
        let f = h.coboundary();
        let c = classify_cochain(&f).unwrap();
        prop_assert!(c.is_cocycle && c.is_coboundary);
        prop_assert!(c.class.unwrap().is_zero());
        prop_assert_eq!(c.preimage.unwrap().coboundary(), f);
    }

    #[test]
    fn degree_zero_is_fixed_points(pick in any::<Index>()) {
        let ms = modules(8, 4);
        let m = pick.get(&ms);
        let h0 = CohomologyGroup::compute(m, 0, &Limits::default()).unwrap();
        let fp = fixed_points(m);
        prop_assert_eq!(h0.factors(), fp.factors);
        for a in fp.subgroup.elements() {
            for s in 0..m.group().order() {
                prop_assert_eq!(m.act(s, &a), m.carrier().reduce(&a));
            }
        }
    }

    #[test]
    fn representatives_are_cocycles_of_their_class(pick in any::<Index>(), degree in 1usize..=2, raw in raw_values()) {
        let ms = modules(6, 4);
        let m = pick.get(&ms);
        let h = CohomologyGroup::compute(m, degree, &Limits::default()).unwrap();
        for class in h.classes() {
            let rep = h.representative(&class);
            prop_assert!(rep.is_cocycle());
            let shifted = rep.add(&cochain(m, degree - 1, &raw).coboundary());
            prop_assert_eq!(h.class_of(&shifted).unwrap(), class);
        }
    }

    #[test]
    fn class_map_is_additive(pick in any::<Index>(), i in any::<Index>(), j in any::<Index>()) {
        let ms = modules(4, 4);
        let m = pick.get(&ms);
        let h = CohomologyGroup::compute(m, 2, &Limits::default()).unwrap();
        let classes = h.classes();
        let (a, b) = (i.get(&classes), j.get(&classes));
        let sum = h.class_of(&h.representative(a).add(&h.representative(b))).unwrap();
        let expected: Vec<i64> = a.coordinates.iter().zip(&b.coordinates).zip(&a.factors)
            .map(|((x, y), q)| (x + y) % q)
            .collect();
        prop_assert_eq!(sum.coordinates, expected);
    }

    #[test]
    fn restriction_composes(pick in any::<Index>(), x in any::<Index>(), degree in 1usize..=2) {
        let ms = modules(6, 4);
        let m = pick.get(&ms);
        let g = m.group().clone();
        let elements: Vec<usize> = (0..g.order()).collect();
        let h = g.generated(&[*x.get(&elements)]);
        let to_h = ChangeOfGroups::restriction(m, &h).unwrap();
        let to_e_from_h = ChangeOfGroups::restriction(to_h.target(), &[to_h.target().group().identity()]).unwrap();
        let composite = to_h.then(&to_e_from_h).unwrap();
        let limits = Limits::default();
        let hg = CohomologyGroup::compute(m, degree, &limits).unwrap();
        let hh = CohomologyGroup::compute(to_h.target(), degree, &limits).unwrap();
        let he = CohomologyGroup::compute(to_e_from_h.target(), degree, &limits).unwrap();
        for class in hg.classes() {
            let rep = hg.representative(&class);
            prop_assert_eq!(to_e_from_h.pull(&to_h.pull(&rep)), composite.pull(&rep));
            let step = to_e_from_h.induced_class(&to_h.induced_class(&class, &hg, &hh).unwrap(), &hh, &he).unwrap();
            prop_assert_eq!(step, composite.induced_class(&class, &hg, &he).unwrap());
            prop_assert!(to_h.pull(&rep).is_cocycle());
        }
    }

    #[test]
    fn extension_round_trip_preserves_class(pick in any::<Index>(), class in any::<Index>(), raw in raw_values()) {
        let ms = modules(4, 4);
        let m = pick.get(&ms);
        let h = CohomologyGroup::compute(m, 2, &Limits::default()).unwrap();
        let classes = h.classes();
        let class = class.get(&classes);
        let f = h.representative(class).add(&cochain(m, 1, &raw).coboundary());
        let e = build_extension(&f).unwrap();
        prop_assert_eq!(e.order() as u128, m.carrier().order() * m.group().order() as u128);
        let back = cocycle_from_section(&e).unwrap();
        prop_assert_eq!(&h.class_of(&back).unwrap(), class);
    }

    #[test]
    fn chain_sequences_are_exact(g in 1usize..=3, sub in 2i64..=4, quo in 2i64..=4, negate in any::<bool>()) {
        let grp = Arc::new(z(g));
        let negate = negate && g == 2;
        let module = |q: i64| {
            let a = FiniteAbelianGroup::cyclic(q);
            if negate {
                Arc::new(GModule::from_element_matrices(grp.clone(), a, vec![vec![vec![1]], vec![vec![q - 1]]]).unwrap())
            } else {
                Arc::new(GModule::trivial(grp.clone(), a))
            }
        };
        let ses = make_ses(module(sub), module(sub * quo), module(quo), &[vec![quo]], &[vec![1]], None).unwrap();
        let r = long_exact_sequence(&ses, 2).unwrap();
        prop_assert!(r.exact && r.is_complex && r.section_independent);
    }

    #[test]
    fn covering_numbers_are_transitive(
        pick in 0usize..6,
        fv in prop::collection::vec(0i64..5, 8),
        gv in prop::collection::vec(0i64..5, 8),
        hv in prop::collection::vec(0i64..5, 8),
    ) {
        let grp = Arc::new([z(2), z(3), z(4), z(5), common::klein(), fincohom_core::FiniteGroup::symmetric(3)][pick].clone());
        let func = |v: &[i64]| {
            let mut vals: Vec<Q> = (0..grp.order()).map(|i| ratio(v[i], 1)).collect();
            if vals.iter().all(Zero::is_zero) {
                vals[0] = ratio(1, 1);
            }
            GroupFunction::new(grp.clone(), vals).unwrap()
        };
        let (f, g, h) = (func(&fv), func(&gv), func(&hv));
        let fg = approx_integral(&f, &g).unwrap().value;
        let gh = approx_integral(&g, &h).unwrap().value;
        let fh = approx_integral(&f, &h).unwrap().value;
        prop_assert!(fh <= &fg * &gh);
        // the reported cover is a feasible majorization
        let one = unit_reference(&grp);
        prop_assert!(approx_integral(&f, &one).unwrap().feasible);
    }

    #[test]
    fn abelian_lie_betti_numbers_are_binomial(d in 1usize..=4, m in 1usize..=2) {
        let alg = LieAlgebra::abelian(d);
        let module = LieModule::trivial(&alg, m);
        prop_assert!(differential_squares_to_zero(&alg, &module).unwrap());
        let betti = betti_numbers(&alg, &module).unwrap();
        let expected: Vec<usize> = (0..=d).map(|k| m * binomial(d, k)).collect();
        prop_assert_eq!(betti, expected);
    }
}

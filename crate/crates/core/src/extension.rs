//! Extensions `1 -> A -> E -> G -> 1` with abelian kernel: the twisted
//! product built from a 2-cocycle, the cocycle of a section, strict
//! equivalence, and classification by `H^2(G, A)`.

use std::sync::Arc;

use crate::cochain::Cochain;
use crate::cohomology::{CohomologyClass, CohomologyGroup};
use crate::error::{check_size, Error, Result};
use crate::group::FiniteGroup;
use crate::iso;
use crate::module::GModule;
use crate::Limits;

/// An extension of `G` by the module `A` with a chosen section of the
/// projection. Elements of `A` and `G` are referred to by index.
#[derive(Debug, Clone)]
pub struct Extension {
    group: Arc<FiniteGroup>,
    module: Arc<GModule>,
    inclusion: Vec<usize>,
    projection: Vec<usize>,
    section: Vec<usize>,
    /// `E`-index to `A`-index on the image of the inclusion.
    kernel_index: Vec<Option<usize>>,
}

impl Extension {
    /// Checks exactness, the section, and that conjugation by the section
    /// induces the module action.
    pub fn new(
        group: Arc<FiniteGroup>,
        module: Arc<GModule>,
        inclusion: Vec<usize>,
        projection: Vec<usize>,
        section: Vec<usize>,
    ) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidExtension(m));
        let a = module.carrier();
        let g = module.group();
        let (na, ng, ne) = (a.order() as usize, g.order(), group.order());
        if inclusion.len() != na || projection.len() != ne || section.len() != ng {
            return bad("map sizes do not match the groups".into());
        }
        if inclusion.iter().chain(&section).any(|&x| x >= ne) || projection.iter().any(|&s| s >= ng) {
            return bad("map entry out of range".into());
        }
        let elems: Vec<Vec<i64>> = a.elements().collect();
        for (i, x) in elems.iter().enumerate() {
            for (j, y) in elems.iter().enumerate() {
                let sum = a.index_of(&a.add(x, y));
                if inclusion[sum] != group.mul(inclusion[i], inclusion[j]) {
                    return bad(format!("inclusion is not a homomorphism at ({x:?}, {y:?})"));
                }
            }
        }
        let mut kernel_index = vec![None; ne];
        for (i, &e) in inclusion.iter().enumerate() {
            if kernel_index[e].replace(i).is_some() {
                return bad(format!("inclusion is not injective at {:?}", elems[i]));
            }
        }
        for x in 0..ne {
            for y in 0..ne {
                if projection[group.mul(x, y)] != g.mul(projection[x], projection[y]) {
                    return bad(format!("projection is not a homomorphism at ({x}, {y})"));
                }
            }
        }
        for (e, &s) in projection.iter().enumerate() {
            if (s == g.identity()) != kernel_index[e].is_some() {
                return bad(format!("image of inclusion differs from kernel of projection at {e}"));
            }
        }
        for (s, &x) in section.iter().enumerate() {
            if projection[x] != s {
                return bad(format!("section does not split the projection at {}", g.label(s)));
            }
        }
        for s in 0..ng {
            let sx = section[s];
            for (i, x) in elems.iter().enumerate() {
                let conj = group.mul(group.mul(sx, inclusion[i]), group.inv(sx));
                if conj != inclusion[a.index_of(&module.act(s, x))] {
                    return bad(format!(
                        "conjugation by the section at {} does not match the action on {x:?}",
                        g.label(s)
                    ));
                }
            }
        }
        Ok(Self {
            group,
            module,
            inclusion,
            projection,
            section,
            kernel_index,
        })
    }

    /// The same extension with another section.
    pub fn with_section(&self, section: Vec<usize>) -> Result<Self> {
        Self::new(
            self.group.clone(),
            self.module.clone(),
            self.inclusion.clone(),
            self.projection.clone(),
            section,
        )
    }

    /// The group `E`.
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn module(&self) -> &Arc<GModule> {
        &self.module
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// `inclusion()[i]` is the image of the `i`-th element of `A`.
    pub fn inclusion(&self) -> &[usize] {
        &self.inclusion
    }

    pub fn projection(&self) -> &[usize] {
        &self.projection
    }

    pub fn section(&self) -> &[usize] {
        &self.section
    }

    pub fn include(&self, a: &[i64]) -> usize {
        self.inclusion[self.module.carrier().index_of(a)]
    }

    /// Writes `x = ı(a)·σ(s)` and returns `(a, s)`.
    pub fn decompose(&self, x: usize) -> (Vec<i64>, usize) {
        let s = self.projection[x];
        let k = self.group.mul(x, self.group.inv(self.section[s]));
        let a = self.kernel_index[k].expect("x σ(π x)⁻¹ lies in the kernel");
        (self.module.carrier().element(a), s)
    }
}

/// The twisted product on `A × G` with `(a,s)(b,t) = (a + s·b + F(s,t), st)`.
///
/// The identity is `(-F(e,e), e)` and `ı(a) = (a - F(e,e), e)`, which makes
/// the construction valid for cocycles that are not normalized. The section
/// is `σ(s) = (0, s)`, so the cocycle read back from it is `F` itself.
pub fn build_extension(f: &Cochain) -> Result<Extension> {
    build_extension_with(f, &Limits::default())
}

pub fn build_extension_with(f: &Cochain, limits: &Limits) -> Result<Extension> {
    if f.degree() != 2 {
        return Err(Error::InvalidCochain(format!("expected degree 2, got {}", f.degree())));
    }
    if let Some(witness) = f.coboundary().first_nonzero() {
        return Err(Error::NotCocycle { witness });
    }
    let m = f.module();
    let a = m.carrier();
    let g = m.group();
    let (na, ng) = (a.order() as usize, g.order());
    check_size("|A|·|G|", (na * ng) as u128, limits.max_group_order as u128)?;
    let elems: Vec<Vec<i64>> = a.elements().collect();
    let idx = |ai: usize, s: usize| ai * ng + s;
    let table: Vec<Vec<usize>> = (0..na * ng)
        .map(|x| {
            let (ai, s) = (x / ng, x % ng);
            (0..na * ng)
                .map(|y| {
                    let (bi, t) = (y / ng, y % ng);
                    let v = a.add(&a.add(&elems[ai], &m.act(s, &elems[bi])), f.value(&[s, t]));
                    idx(a.index_of(&v), g.mul(s, t))
                })
                .collect()
        })
        .collect();
    let labels = (0..na * ng)
        .map(|x| format!("({},{})", element_label(&elems[x / ng]), g.label(x % ng)))
        .collect();
    let e = Arc::new(FiniteGroup::from_table(labels, table)?);
    let c = f.value(&[g.identity(), g.identity()]);
    let inclusion = elems.iter().map(|x| idx(a.index_of(&a.sub(x, c)), g.identity())).collect();
    let projection = (0..na * ng).map(|x| x % ng).collect();
    let section = (0..ng).map(|s| idx(0, s)).collect();
    Extension::new(e, m.clone(), inclusion, projection, section)
}

fn element_label(a: &[i64]) -> String {
    match a {
        [x] => x.to_string(),
        _ => format!("[{}]", a.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")),
    }
}

/// `f_σ(s,t) = σ(s)σ(t)σ(st)⁻¹`, read in `A` through the inclusion.
pub fn cocycle_from_section(e: &Extension) -> Result<Cochain> {
    let g = e.module.group();
    let grp = &e.group;
    let mut out = Cochain::zero(e.module.clone(), 2);
    for s in 0..g.order() {
        for t in 0..g.order() {
            let x = grp.mul(
                grp.mul(e.section[s], e.section[t]),
                grp.inv(e.section[g.mul(s, t)]),
            );
            let a = e.kernel_index[x].ok_or_else(|| {
                Error::InvalidExtension(format!(
                    "σ({})σ({})σ({}{})⁻¹ is outside the image of the inclusion",
                    g.label(s),
                    g.label(t),
                    g.label(s),
                    g.label(t)
                ))
            })?;
            out.set(&[s, t], &e.module.carrier().element(a));
        }
    }
    Ok(out)
}

/// Searches for an isomorphism `θ: E₁ -> E₂` with `θ ∘ ı₁ = ı₂` and
/// `π₂ ∘ θ = π₁`, returned as an index map.
///
/// Such a `θ` is `ı₁(a)σ₁(s) ↦ ı₂(a + g(s))σ₂(s)` for some function
/// `g: G -> A`; the search backtracks over `g`, pruning on the
/// homomorphism condition at products of section elements.
pub fn equivalent(e1: &Extension, e2: &Extension) -> Result<Option<Vec<usize>>> {
    equivalent_with(e1, e2, &Limits::default())
}

pub fn equivalent_with(e1: &Extension, e2: &Extension, limits: &Limits) -> Result<Option<Vec<usize>>> {
    if e1.module != e2.module && e1.module.as_ref() != e2.module.as_ref() {
        return Err(Error::InvalidExtension("extensions have different modules".into()));
    }
    let size = e1.order().max(e2.order());
    check_size("|E|", size as u128, limits.max_extension_order as u128)?;
    if e1.order() != e2.order() {
        return Ok(None);
    }
    let m = &e1.module;
    let a = m.carrier();
    let g = m.group();
    let ng = g.order();
    let na = a.order() as usize;
    // σ₁(s)σ₁(t) = ı₁(c1[s][t]) σ₁(st), and likewise in E₂
    let f1 = cocycle_from_section(e1)?;
    let f2 = cocycle_from_section(e2)?;
    let mut assign: Vec<Option<Vec<i64>>> = vec![None; ng];
    let order: Vec<usize> = (0..ng).collect();
    let consistent = |assign: &[Option<Vec<i64>>], s: usize, t: usize| -> bool {
        let st = g.mul(s, t);
        match (&assign[s], &assign[t], &assign[st]) {
            (Some(gs), Some(gt), Some(gst)) => {
                // θ(σ₁(s)σ₁(t)) = ı₂(f1(s,t) + g(st)) σ₂(st)
                // θ(σ₁(s))θ(σ₁(t)) = ı₂(g(s) + s·g(t) + f2(s,t)) σ₂(st)
                let lhs = a.add(f1.value(&[s, t]), gst);
                let rhs = a.add(&a.add(gs, &m.act(s, gt)), f2.value(&[s, t]));
                lhs == rhs
            }
            _ => true,
        }
    };
    fn search(
        depth: usize,
        order: &[usize],
        na: usize,
        a: &crate::abelian::FiniteAbelianGroup,
        assign: &mut Vec<Option<Vec<i64>>>,
        ok: &dyn Fn(&[Option<Vec<i64>>], usize, usize) -> bool,
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let v = order[depth];
        for ai in 0..na {
            assign[v] = Some(a.element(ai));
            let fine = (0..=depth).all(|i| {
                let s = order[i];
                (0..=depth).all(|j| ok(assign, s, order[j]) && ok(assign, order[j], s))
            });
            if fine && search(depth + 1, order, na, a, assign, ok) {
                return true;
            }
        }
        assign[v] = None;
        false
    }
    if !search(0, &order, na, a, &mut assign, &consistent) {
        return Ok(None);
    }
    let gmap: Vec<Vec<i64>> = assign.into_iter().map(|x| x.expect("complete assignment")).collect();
    let theta: Vec<usize> = (0..e1.order())
        .map(|x| {
            let (av, s) = e1.decompose(x);
            e2.group.mul(e2.include(&a.add(&av, &gmap[s])), e2.section[s])
        })
        .collect();
    // certificate: θ is a bijective homomorphism commuting with ı and π
    let (grp1, grp2) = (&e1.group, &e2.group);
    let mut seen = vec![false; e2.order()];
    for &y in &theta {
        if std::mem::replace(&mut seen[y], true) {
            return Err(Error::InvalidExtension("equivalence search produced a non-bijection".into()));
        }
    }
    for x in 0..e1.order() {
        for y in 0..e1.order() {
            if theta[grp1.mul(x, y)] != grp2.mul(theta[x], theta[y]) {
                return Err(Error::InvalidExtension("equivalence search produced a non-homomorphism".into()));
            }
        }
    }
    debug_assert!((0..na).all(|i| theta[e1.inclusion[i]] == e2.inclusion[i]));
    debug_assert!((0..e1.order()).all(|x| e2.projection[theta[x]] == e1.projection[x]));
    Ok(Some(theta))
}

/// One extension per class of `H^2(G, A)`.
#[derive(Debug, Clone)]
pub struct ClassifiedExtension {
    pub class: CohomologyClass,
    pub cocycle: Cochain,
    pub extension: Extension,
    /// Isomorphism type of `E` from the catalog, when small enough to search.
    pub label: Option<String>,
}

/// Builds an extension from the representative of every class of
/// `H^2(G, A)` and checks that they are pairwise inequivalent.
pub fn classify_extensions(m: &Arc<GModule>) -> Result<Vec<ClassifiedExtension>> {
    classify_extensions_with(m, &Limits::default())
}

pub fn classify_extensions_with(m: &Arc<GModule>, limits: &Limits) -> Result<Vec<ClassifiedExtension>> {
    let h2 = CohomologyGroup::compute(m, 2, limits)?;
    check_size("|H^2|", h2.order(), limits.max_enumeration)?;
    let order = m.carrier().order() * m.group().order() as u128;
    check_size("|E|", order, limits.max_extension_order as u128)?;
    let mut out: Vec<ClassifiedExtension> = Vec::new();
    for class in h2.classes() {
        let cocycle = h2.representative(&class);
        let extension = build_extension_with(&cocycle, limits)?;
        for prev in &out {
            if equivalent_with(&prev.extension, &extension, limits)?.is_some() {
                return Err(Error::InvalidExtension(format!(
                    "classes {:?} and {:?} gave equivalent extensions",
                    prev.class.coordinates, class.coordinates
                )));
            }
        }
        let label = (extension.order() <= limits.max_label_order)
            .then(|| iso::identify(extension.group()))
            .flatten();
        out.push(ClassifiedExtension {
            class,
            cocycle,
            extension,
            label,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::FiniteAbelianGroup;
    use crate::cohomology::classify_cochain;

    fn trivial(g: usize, a: i64) -> Arc<GModule> {
        Arc::new(GModule::trivial(Arc::new(FiniteGroup::cyclic(g)), FiniteAbelianGroup::cyclic(a)))
    }

    #[test]
    fn zero_cocycle_is_direct_product() {
        let m = trivial(2, 3);
        let e = build_extension(&Cochain::zero(m, 2)).unwrap();
        assert_eq!(iso::identify(e.group()).as_deref(), Some("Z/6"));
        assert!(cocycle_from_section(&e).unwrap().is_zero());
    }

    #[test]
    fn nontrivial_cocycle_gives_z4() {
        let m = trivial(2, 2);
        let mut f = Cochain::zero(m, 2);
        f.set(&[1, 1], &[1]);
        let e = build_extension(&f).unwrap();
        assert_eq!(e.group().element_order(e.section()[1]), 4);
        assert_eq!(iso::identify(e.group()).as_deref(), Some("Z/4"));
    }

    #[test]
    fn perturbed_cocycle_is_rejected_with_triple() {
        let m = trivial(2, 2);
        let mut f = Cochain::zero(m, 2);
        f.set(&[0, 1], &[1]);
        match build_extension(&f) {
            Err(Error::NotCocycle { witness }) => assert_eq!(witness.len(), 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn non_normalized_cocycle_builds() {
        let m = trivial(2, 4);
        let f = Cochain::from_fn(m.clone(), 1, |t| vec![t[0] as i64 + 1]).coboundary();
        assert!(!f.is_normalized());
        let e = build_extension(&f).unwrap();
        assert_eq!(iso::identify(e.group()).as_deref(), Some("Z/2×Z/4"));
        let back = cocycle_from_section(&e).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn z4_from_a_section() {
        // E = Z/4, A = {0,2}, σ(1) = 1
        let g = Arc::new(FiniteGroup::cyclic(2));
        let m = Arc::new(GModule::trivial(g, FiniteAbelianGroup::cyclic(2)));
        let e4 = Arc::new(FiniteGroup::cyclic(4));
        let e = Extension::new(e4, m, vec![0, 2], vec![0, 1, 0, 1], vec![0, 1]).unwrap();
        let f = cocycle_from_section(&e).unwrap();
        assert_eq!(f.value(&[1, 1]), &[1]);
        assert_eq!(f.value(&[0, 1]), &[0]);
        let other = e.with_section(vec![2, 3]).unwrap();
        let diff = f.sub(&cocycle_from_section(&other).unwrap());
        assert!(classify_cochain(&diff).unwrap().is_coboundary);
    }

    #[test]
    fn z4_and_klein_are_inequivalent() {
        let m = trivial(2, 2);
        let mut f = Cochain::zero(m.clone(), 2);
        f.set(&[1, 1], &[1]);
        let z4 = build_extension(&f).unwrap();
        let v = build_extension(&Cochain::zero(m, 2)).unwrap();
        assert!(equivalent(&z4, &v).unwrap().is_none());
        let id = equivalent(&z4, &z4).unwrap().unwrap();
        assert_eq!(id, (0..4).collect::<Vec<_>>());
    }

    #[test]
    fn cohomologous_cocycles_are_equivalent() {
        let m = trivial(3, 3);
        let mut f = Cochain::zero(m.clone(), 2);
        f.set(&[1, 2], &[1]);
        f.set(&[2, 1], &[1]);
        f.set(&[2, 2], &[1]);
        assert!(f.is_cocycle());
        let g = Cochain::from_fn(m, 1, |t| vec![(2 * t[0] + 1) as i64]);
        let e1 = build_extension(&f).unwrap();
        let e2 = build_extension(&f.add(&g.coboundary())).unwrap();
        assert!(equivalent(&e1, &e2).unwrap().is_some());
    }

    #[test]
    fn classification_examples() {
        let c = classify_extensions(&trivial(2, 2)).unwrap();
        let labels: Vec<_> = c.iter().map(|x| x.label.clone().unwrap()).collect();
        assert_eq!(labels, vec!["Z/2×Z/2", "Z/4"]);
        let c = classify_extensions(&trivial(2, 3)).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].label.as_deref(), Some("Z/6"));
        let c = classify_extensions(&trivial(1, 5)).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].label.as_deref(), Some("Z/5"));
    }

    #[test]
    fn negation_action_gives_dihedral_and_quaternion_like_types() {
        let g = Arc::new(FiniteGroup::cyclic(2));
        let m = Arc::new(
            crate::module::build_module(
                FiniteAbelianGroup::cyclic(4),
                g,
                crate::module::ActionSpec::Elements(vec![vec![vec![1]], vec![vec![-1]]]),
            )
            .unwrap(),
        );
        let c = classify_extensions(&m).unwrap();
        let labels: Vec<_> = c.iter().map(|x| x.label.clone().unwrap()).collect();
        assert_eq!(labels, vec!["D8", "Q8"]);
    }
}

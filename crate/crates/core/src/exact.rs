//! Short exact sequences `0 -> A' -> A -> A'' -> 0` of G-modules, the
//! connecting map `δ[z] = [d(σ ∘ z)]`, and the long exact sequence.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::abelian::{AbelianHom, HomSolver, Subgroup};
use crate::cochain::Cochain;
use crate::cohomology::{CohomologyClass, CohomologyGroup};
use crate::error::{check_size, Error, Result};
use crate::module::{GModule, ModuleMap};
use crate::Limits;

/// A short exact sequence with a set-theoretic section of the projection.
/// The section need not be additive or equivariant.
#[derive(Debug, Clone)]
pub struct ModuleSes {
    incl: ModuleMap,
    proj: ModuleMap,
    /// `section[i]` lifts the `i`-th element of `A''` in enumeration order.
    section: Vec<Vec<i64>>,
    incl_solver: HomSolver,
}

/// Validates maps and exactness. Without a section, each `a''` is lifted to
/// its least preimage in the enumeration of `A`.
pub fn make_ses(
    sub: Arc<GModule>,
    mid: Arc<GModule>,
    quo: Arc<GModule>,
    incl: &[Vec<i64>],
    proj: &[Vec<i64>],
    section: Option<Vec<Vec<i64>>>,
) -> Result<ModuleSes> {
    make_ses_with(sub, mid, quo, incl, proj, section, &Limits::default())
}

pub fn make_ses_with(
    sub: Arc<GModule>,
    mid: Arc<GModule>,
    quo: Arc<GModule>,
    incl: &[Vec<i64>],
    proj: &[Vec<i64>],
    section: Option<Vec<Vec<i64>>>,
    limits: &Limits,
) -> Result<ModuleSes> {
    let bad = |e: Error| Error::InvalidSequence(e.to_string());
    let incl = ModuleMap::new(sub, mid.clone(), incl).map_err(bad)?;
    let proj = ModuleMap::new(mid, quo, proj).map_err(bad)?;
    ModuleSes::from_maps(incl, proj, section, limits)
}

impl ModuleSes {
    pub fn from_maps(
        incl: ModuleMap,
        proj: ModuleMap,
        section: Option<Vec<Vec<i64>>>,
        limits: &Limits,
    ) -> Result<Self> {
        if incl.target() != proj.source() {
            return Err(Error::InvalidSequence("inclusion target is not the projection source".into()));
        }
        let quo = proj.target().clone();
        check_size("|A''|", quo.carrier().order(), limits.max_enumeration)?;
        let ker_incl = incl.hom().kernel();
        if let Some(w) = first_nontrivial(&ker_incl) {
            return Err(Error::InvalidSequence(format!("inclusion is not injective: {w:?} maps to 0")));
        }
        let image_proj = proj.hom().image();
        if image_proj.order() != quo.carrier().order() {
            let missing = quo
                .carrier()
                .elements()
                .find(|a| !image_proj.contains(a))
                .expect("a proper subgroup misses some element");
            return Err(Error::InvalidSequence(format!(
                "projection is not surjective: {missing:?} has no preimage"
            )));
        }
        let image_incl = incl.hom().image();
        let ker_proj = proj.hom().kernel();
        if image_incl != ker_proj {
            let w = (0..ker_proj.len())
                .map(|j| ker_proj.row(j))
                .find(|r| !image_incl.contains(r))
                .map(|r| format!("{r:?} is in ker(proj) but not in im(incl)"))
                .or_else(|| {
                    (0..image_incl.len())
                        .map(|j| image_incl.row(j))
                        .find(|r| !ker_proj.contains(r))
                        .map(|r| format!("{r:?} is in im(incl) but not in ker(proj)"))
                })
                .unwrap_or_default();
            return Err(Error::InvalidSequence(format!("not exact in the middle: {w}")));
        }
        let mid = proj.source().clone();
        let section = match section {
            Some(s) => {
                if s.len() as u128 != quo.carrier().order() {
                    return Err(Error::InvalidSequence(format!(
                        "section has {} entries for |A''| = {}",
                        s.len(),
                        quo.carrier().order()
                    )));
                }
                let s: Vec<Vec<i64>> = s.iter().map(|a| mid.carrier().reduce(a)).collect();
                for (i, a) in s.iter().enumerate() {
                    let target = quo.carrier().element(i);
                    if a.len() != mid.rank() || proj.apply(a) != target {
                        return Err(Error::InvalidSequence(format!(
                            "section does not split the projection at {target:?}"
                        )));
                    }
                }
                s
            }
            None => {
                let solver = proj.hom().solver();
                quo.carrier()
                    .elements()
                    .map(|a| ker_proj.reduce(&solver.preimage(&a).expect("projection is surjective")))
                    .collect()
            }
        };
        let incl_solver = incl.hom().solver();
        Ok(Self {
            incl,
            proj,
            section,
            incl_solver,
        })
    }

    /// The same sequence with another section.
    pub fn with_section(&self, section: Vec<Vec<i64>>) -> Result<ModuleSes> {
        ModuleSes::from_maps(self.incl.clone(), self.proj.clone(), Some(section), &Limits::default())
    }

    pub fn sub(&self) -> &Arc<GModule> {
        self.incl.source()
    }

    pub fn mid(&self) -> &Arc<GModule> {
        self.incl.target()
    }

    pub fn quo(&self) -> &Arc<GModule> {
        self.proj.target()
    }

    pub fn inclusion(&self) -> &ModuleMap {
        &self.incl
    }

    pub fn projection(&self) -> &ModuleMap {
        &self.proj
    }

    pub fn section_table(&self) -> &[Vec<i64>] {
        &self.section
    }

    pub fn section(&self, a: &[i64]) -> &[i64] {
        &self.section[self.quo().carrier().index_of(a)]
    }

    /// Another section: the `i`-th lift is shifted by the `(i+1)`-th element
    /// of `A'` (cyclically), so it differs from the current one whenever `A'`
    /// is nontrivial.
    pub fn alternate_section(&self) -> Vec<Vec<i64>> {
        let sub = self.sub().carrier();
        let n = sub.order() as usize;
        self.section
            .iter()
            .enumerate()
            .map(|(i, x)| {
                let k = self.incl.apply(&sub.element((i + 1) % n));
                self.mid().carrier().add(x, &k)
            })
            .collect()
    }

    /// True if the section is additive and `G`-equivariant.
    pub fn section_is_splitting(&self) -> bool {
        let quo = self.quo();
        let mid = self.mid();
        let elems: Vec<Vec<i64>> = quo.carrier().elements().collect();
        elems.iter().all(|a| {
            elems
                .iter()
                .all(|b| self.section(&quo.carrier().add(a, b)) == mid.carrier().add(self.section(a), self.section(b)).as_slice())
                && (0..quo.group().order()).all(|s| self.section(&quo.act(s, a)) == mid.act(s, self.section(a)).as_slice())
        })
    }

    /// The cocycle `ı⁻¹ d(σ ∘ z)` over `A'`.
    pub fn connecting_cocycle(&self, z: &Cochain) -> Result<Cochain> {
        if z.module().as_ref() != self.quo().as_ref() {
            return Err(Error::InvalidCochain("cochain is not over the quotient module".into()));
        }
        if let Some(witness) = z.coboundary().first_nonzero() {
            return Err(Error::NotCocycle { witness });
        }
        let lifted = Cochain::from_fn(self.mid().clone(), z.degree(), |t| self.section(z.value(t)).to_vec());
        let dl = lifted.coboundary();
        let mut out = Cochain::zero(self.sub().clone(), z.degree() + 1);
        for (i, (t, v)) in dl.entries().enumerate() {
            let pre = self.incl_solver.preimage(v).ok_or_else(|| {
                Error::InvalidSequence(format!("d(σ∘z) leaves the image of the inclusion at {t:?}"))
            })?;
            out.set_at(i, &pre);
        }
        Ok(out)
    }
}

fn first_nontrivial(s: &Subgroup) -> Option<Vec<i64>> {
    (0..s.len()).map(|j| s.row(j)).find(|r| r.iter().zip(s.moduli()).any(|(&x, &m)| x % m != 0))
}

/// `δ[z]` in `H^(n+1)(G, A')` for a cocycle `z` over `A''`; `target` must be that group.
pub fn connecting(ses: &ModuleSes, z: &Cochain, target: &CohomologyGroup) -> Result<CohomologyClass> {
    target.class_of(&ses.connecting_cocycle(z)?)
}

/// Matrix of the map on cohomology induced by a module map.
pub fn induced_matrix(map: &ModuleMap, from: &CohomologyGroup, to: &CohomologyGroup) -> Result<Vec<Vec<i64>>> {
    let cols = from
        .representatives()
        .iter()
        .map(|r| to.class_of(&r.map_values(map.hom(), map.target().clone())).map(|c| c.coordinates))
        .collect::<Result<Vec<_>>>()?;
    Ok(columns_to_rows(&cols, to.factors().len()))
}

/// Matrix of `δ: H^n(A'') -> H^(n+1)(A')`.
pub fn connecting_matrix(ses: &ModuleSes, from: &CohomologyGroup, to: &CohomologyGroup) -> Result<Vec<Vec<i64>>> {
    let cols = from
        .representatives()
        .iter()
        .map(|r| connecting(ses, r, to).map(|c| c.coordinates))
        .collect::<Result<Vec<_>>>()?;
    Ok(columns_to_rows(&cols, to.factors().len()))
}

fn columns_to_rows(cols: &[Vec<i64>], rows: usize) -> Vec<Vec<i64>> {
    (0..rows).map(|i| cols.iter().map(|c| c[i]).collect()).collect()
}

/// Which term of the sequence a node belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Term {
    Sub,
    Mid,
    Quo,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LesNode {
    pub label: String,
    pub degree: usize,
    pub term: Term,
    pub factors: Vec<i64>,
    pub exact: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LesMap {
    pub label: String,
    pub from: String,
    pub to: String,
    /// Row-major on invariant-factor coordinates.
    pub matrix: Vec<Vec<i64>>,
}

/// Cohomology of the three modules through a degree cap, the maps between
/// them, and an exactness verdict at each node.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LesReport {
    pub cap: usize,
    pub nodes: Vec<LesNode>,
    pub maps: Vec<LesMap>,
    pub exact: bool,
    /// Consecutive maps compose to zero.
    pub is_complex: bool,
    /// Every `δ` matrix is unchanged under [`ModuleSes::alternate_section`].
    pub section_independent: bool,
}

pub fn long_exact_sequence(ses: &ModuleSes, cap: usize) -> Result<LesReport> {
    long_exact_sequence_with(ses, cap, &Limits::default())
}

pub fn long_exact_sequence_with(ses: &ModuleSes, cap: usize, limits: &Limits) -> Result<LesReport> {
    let tower = |m: &Arc<GModule>, top: usize| -> Result<Vec<CohomologyGroup>> {
        (0..=top).map(|n| CohomologyGroup::compute(m, n, limits)).collect()
    };
    let (hs, hm, hq) = std::thread::scope(|scope| {
        let a = scope.spawn(|| tower(ses.sub(), cap + 1));
        let b = scope.spawn(|| tower(ses.mid(), cap));
        let c = tower(ses.quo(), cap);
        (a.join().expect("tower thread"), b.join().expect("tower thread"), c)
    });
    let (hs, hm, hq) = (hs?, hm?, hq?);

    // node order: H^0(A'), H^0(A), H^0(A''), H^1(A'), ...
    // map k goes from node k to node k+1; the last map lands in H^(cap+1)(A')
    let mut groups: Vec<(&CohomologyGroup, Term)> = Vec::new();
    let mut maps: Vec<(String, AbelianHom)> = Vec::new();
    for n in 0..=cap {
        groups.push((&hs[n], Term::Sub));
        groups.push((&hm[n], Term::Mid));
        groups.push((&hq[n], Term::Quo));
        let i_star = induced_matrix(ses.inclusion(), &hs[n], &hm[n])?;
        let p_star = induced_matrix(ses.projection(), &hm[n], &hq[n])?;
        let delta = connecting_matrix(ses, &hq[n], &hs[n + 1])?;
        maps.push((format!("i*{n}"), AbelianHom::from_matrix(hs[n].factors(), hm[n].factors(), &i_star)?));
        maps.push((format!("p*{n}"), AbelianHom::from_matrix(hm[n].factors(), hq[n].factors(), &p_star)?));
        maps.push((format!("δ{n}"), AbelianHom::from_matrix(hq[n].factors(), hs[n + 1].factors(), &delta)?));
    }
    let label = |n: usize, t: Term| match t {
        Term::Sub => format!("H^{n}(A')"),
        Term::Mid => format!("H^{n}(A)"),
        Term::Quo => format!("H^{n}(A'')"),
    };

    let mut nodes = Vec::with_capacity(groups.len());
    let mut all_exact = true;
    let mut is_complex = true;
    for (k, (h, term)) in groups.iter().enumerate() {
        let factors = h.factors();
        let outgoing = &maps[k].1;
        let kernel = outgoing.kernel();
        let image = if k == 0 {
            Subgroup::zero(factors.clone())
        } else {
            maps[k - 1].1.image()
        };
        if k > 0 && !outgoing.compose(&maps[k - 1].1)?.is_zero() {
            is_complex = false;
        }
        let exact = kernel == image;
        let witness = (!exact).then(|| {
            (0..kernel.len())
                .map(|j| kernel.row(j))
                .find(|r| !image.contains(r))
                .map(|r| format!("{r:?} is in the kernel but not the image"))
                .or_else(|| {
                    (0..image.len())
                        .map(|j| image.row(j))
                        .find(|r| !kernel.contains(r))
                        .map(|r| format!("{r:?} is in the image but not the kernel"))
                })
                .unwrap_or_default()
        });
        all_exact &= exact;
        nodes.push(LesNode {
            label: label(h.degree(), *term),
            degree: h.degree(),
            term: *term,
            factors,
            exact,
            witness,
        });
    }
    let alt = ses.with_section(ses.alternate_section())?;
    let mut section_independent = true;
    for n in 0..=cap {
        section_independent &= connecting_matrix(&alt, &hq[n], &hs[n + 1])? == maps[3 * n + 2].1.matrix();
    }
    let node_label = |k: usize| {
        if k < nodes.len() {
            nodes[k].label.clone()
        } else {
            format!("H^{}(A')", cap + 1)
        }
    };
    let maps = maps
        .iter()
        .enumerate()
        .map(|(k, (name, hom))| LesMap {
            label: name.clone(),
            from: node_label(k),
            to: node_label(k + 1),
            matrix: hom.matrix(),
        })
        .collect();
    Ok(LesReport {
        cap,
        nodes,
        maps,
        exact: all_exact,
        is_complex,
        section_independent,
    })
}

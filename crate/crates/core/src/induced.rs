//! The induced module `I(A)` of all functions `G -> A` with
//! `(s·f)(t) = s·f(s⁻¹t)`, the sequence `0 -> A -> I(A) -> U(A) -> 0`,
//! and the dimension shift `H^1(G, U(A)) -> H^2(G, A)`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::abelian::{AbelianHom, FiniteAbelianGroup};
use crate::cohomology::{CohomologyClass, CohomologyGroup};
use crate::error::{check_size, Result};
use crate::exact::{connecting_matrix, ModuleSes};
use crate::module::{quotient_module, GModule, ModuleMap};
use crate::Limits;

#[derive(Debug, Clone)]
pub struct InducedModule {
    base: Arc<GModule>,
    induced: Arc<GModule>,
    quotient: Arc<GModule>,
    ses: ModuleSes,
}

impl InducedModule {
    pub fn base(&self) -> &Arc<GModule> {
        &self.base
    }

    /// `I(A)`; coordinate block `t` holds `f(t)`.
    pub fn induced(&self) -> &Arc<GModule> {
        &self.induced
    }

    /// `U(A) = I(A) / A`.
    pub fn quotient(&self) -> &Arc<GModule> {
        &self.quotient
    }

    /// `a ↦` the constant function `a`.
    pub fn embedding(&self) -> &ModuleMap {
        self.ses.inclusion()
    }

    pub fn projection(&self) -> &ModuleMap {
        self.ses.projection()
    }

    pub fn ses(&self) -> &ModuleSes {
        &self.ses
    }

    /// The value `f(t)` of an element of `I(A)`.
    pub fn value<'a>(&self, f: &'a [i64], t: usize) -> &'a [i64] {
        let k = self.base.rank();
        &f[t * k..(t + 1) * k]
    }
}

pub fn induced_module(m: &Arc<GModule>) -> Result<InducedModule> {
    induced_module_with(m, &Limits::default())
}

pub fn induced_module_with(m: &Arc<GModule>, limits: &Limits) -> Result<InducedModule> {
    let g = m.group().clone();
    let n = g.order();
    let k = m.rank();
    let size = (0..n).try_fold(1u128, |acc, _| acc.checked_mul(m.carrier().order())).unwrap_or(u128::MAX);
    check_size("|A|^|G|", size, limits.max_enumeration)?;

    let moduli: Vec<i64> = (0..n).flat_map(|_| m.moduli().iter().copied()).collect();
    let carrier = FiniteAbelianGroup::new(moduli.clone())?;
    // e_(t,j) goes to the function supported at s·t with value s·e_j
    let matrices: Vec<Vec<Vec<i64>>> = (0..n)
        .map(|s| {
            let a = m.matrix(s);
            let mut mat = vec![vec![0i64; n * k]; n * k];
            for t in 0..n {
                let st = g.mul(s, t);
                for i in 0..k {
                    for j in 0..k {
                        mat[st * k + i][t * k + j] = a[i][j];
                    }
                }
            }
            mat
        })
        .collect();
    let induced = Arc::new(GModule::from_element_matrices(g, carrier, matrices)?);

    let embed_matrix: Vec<Vec<i64>> = (0..n * k)
        .map(|r| (0..k).map(|j| i64::from(r % k == j)).collect())
        .collect();
    let embed = ModuleMap::new(m.clone(), induced.clone(), &embed_matrix)?;
    let q = quotient_module(&induced, &embed.hom().image(), limits)?;
    let quotient = q.module.clone();
    let section: Vec<Vec<i64>> = quotient.carrier().elements().map(|u| q.lift(&u)).collect();
    let ses = ModuleSes::from_maps(embed, q.projection, Some(section), limits)?;
    Ok(InducedModule {
        base: m.clone(),
        induced,
        quotient,
        ses,
    })
}

/// Both sides of `δ: H^1(G, U(A)) -> H^2(G, A)` and the map between them,
/// plus the acyclicity of `I(A)` in degrees 1 and 2.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionShiftReport {
    pub h2_base: Vec<i64>,
    pub h1_quotient: Vec<i64>,
    pub h1_induced: Vec<i64>,
    pub h2_induced: Vec<i64>,
    /// Row-major matrix of `δ` on invariant-factor coordinates.
    pub delta: Vec<Vec<i64>>,
    pub bijective: bool,
    /// Each generator of `H^1(G, U(A))` with its image in `H^2(G, A)`.
    pub matched: Vec<(CohomologyClass, CohomologyClass)>,
}

impl DimensionShiftReport {
    pub fn induced_acyclic(&self) -> bool {
        self.h1_induced.is_empty() && self.h2_induced.is_empty()
    }
}

pub fn dimension_shift_check(m: &Arc<GModule>) -> Result<DimensionShiftReport> {
    dimension_shift_check_with(m, &Limits::default())
}

pub fn dimension_shift_check_with(m: &Arc<GModule>, limits: &Limits) -> Result<DimensionShiftReport> {
    let ind = induced_module_with(m, limits)?;
    let h2 = CohomologyGroup::compute(m, 2, limits)?;
    let h1u = CohomologyGroup::compute(ind.quotient(), 1, limits)?;
    let h1i = CohomologyGroup::compute(ind.induced(), 1, limits)?;
    let h2i = CohomologyGroup::compute(ind.induced(), 2, limits)?;
    let delta = connecting_matrix(ind.ses(), &h1u, &h2)?;
    let hom = AbelianHom::from_matrix(h1u.factors(), h2.factors(), &delta)?;
    let bijective = hom.kernel().is_trivial() && hom.image().order() == h2.order();
    let matched = (0..h1u.factors().len())
        .map(|j| {
            let mut coords = vec![0; h1u.factors().len()];
            coords[j] = 1;
            let image = hom.apply(&coords);
            (
                CohomologyClass {
                    degree: 1,
                    factors: h1u.factors(),
                    coordinates: coords,
                },
                CohomologyClass {
                    degree: 2,
                    factors: h2.factors(),
                    coordinates: image,
                },
            )
        })
        .collect();
    Ok(DimensionShiftReport {
        h2_base: h2.factors(),
        h1_quotient: h1u.factors(),
        h1_induced: h1i.factors(),
        h2_induced: h2i.factors(),
        delta,
        bijective,
        matched,
    })
}

//! Cohomology groups `H^n(G, A) = Z^n / B^n` of the bar complex.
//!
//! `Z^n` is the kernel of `d^n` and `B^n` the image of `d^(n-1)`, both as
//! subgroups of `C^n = A^(|G|^n)`; the quotient is presented by its
//! invariant factors with one canonical representative cocycle per factor.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::abelian::{AbelianHom, HomSolver, Subgroup, Subquotient};
use crate::cochain::{coboundary_hom, tuple_count, Cochain};
use crate::error::{check_size, Error, Result};
use crate::group::GroupHom;
use crate::module::GModule;
use crate::Limits;

/// A class in `H^n`, written in coordinates against the invariant factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CohomologyClass {
    pub degree: usize,
    pub factors: Vec<i64>,
    pub coordinates: Vec<i64>,
}

impl CohomologyClass {
    pub fn is_zero(&self) -> bool {
        self.coordinates.iter().all(|&c| c == 0)
    }
}

#[derive(Debug, Clone)]
pub struct CohomologyGroup {
    module: Arc<GModule>,
    degree: usize,
    quotient: Subquotient,
    previous: Option<HomSolver>,
    representatives: Vec<Cochain>,
}

/// `H^n(G, A)` under the default limits.
pub fn cohomology(module: &Arc<GModule>, degree: usize) -> Result<CohomologyGroup> {
    CohomologyGroup::compute(module, degree, &Limits::default())
}

impl CohomologyGroup {
    pub fn compute(module: &Arc<GModule>, degree: usize, limits: &Limits) -> Result<Self> {
        if degree > limits.max_degree {
            return Err(Error::DegreeOutOfRange {
                degree,
                max: limits.max_degree,
            });
        }
        let d = coboundary_hom(module, degree, limits)?;
        let cocycles = d.kernel();
        let (coboundaries, previous) = if degree == 0 {
            (Subgroup::zero(cocycles.moduli().to_vec()), None)
        } else {
            let prev = coboundary_hom(module, degree - 1, limits)?;
            (prev.image(), Some(prev.solver()))
        };
        let quotient = Subquotient::new(cocycles, coboundaries);
        let representatives = quotient
            .generators()
            .iter()
            .map(|g| Cochain::from_flat(module.clone(), degree, g.clone()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            module: module.clone(),
            degree,
            quotient,
            previous,
            representatives,
        })
    }

    pub fn module(&self) -> &Arc<GModule> {
        &self.module
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Invariant factors; empty for the trivial group.
    pub fn factors(&self) -> Vec<i64> {
        self.quotient.factors()
    }

    pub fn order(&self) -> u128 {
        self.quotient.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    /// One cocycle per invariant factor, each the least value table in its class.
    pub fn representatives(&self) -> &[Cochain] {
        &self.representatives
    }

    pub fn cocycles(&self) -> &Subgroup {
        self.quotient.upper()
    }

    pub fn coboundaries(&self) -> &Subgroup {
        self.quotient.lower()
    }

    fn check_cochain(&self, f: &Cochain) -> Result<()> {
        if f.degree() != self.degree {
            return Err(Error::InvalidCochain(format!(
                "cochain of degree {} for H^{}",
                f.degree(),
                self.degree
            )));
        }
        if f.module().as_ref() != self.module.as_ref() {
            return Err(Error::InvalidCochain("cochain over a different module".into()));
        }
        Ok(())
    }

    /// The class of a cocycle.
    pub fn class_of(&self, f: &Cochain) -> Result<CohomologyClass> {
        self.check_cochain(f)?;
        match self.quotient.coordinates(f.flat()) {
            Some(coordinates) => Ok(CohomologyClass {
                degree: self.degree,
                factors: self.factors(),
                coordinates,
            }),
            None => Err(Error::NotCocycle {
                witness: f.coboundary().first_nonzero().unwrap_or_default(),
            }),
        }
    }

    /// Canonical cocycle in a class.
    pub fn representative(&self, class: &CohomologyClass) -> Cochain {
        Cochain::from_flat(self.module.clone(), self.degree, self.quotient.element(&class.coordinates))
            .expect("element has the right length")
    }

    pub fn zero_class(&self) -> CohomologyClass {
        CohomologyClass {
            degree: self.degree,
            factors: self.factors(),
            coordinates: vec![0; self.factors().len()],
        }
    }

    /// Every class, coordinates in lexicographic order.
    pub fn classes(&self) -> Vec<CohomologyClass> {
        self.quotient
            .all_coordinates()
            .into_iter()
            .map(|coordinates| CohomologyClass {
                degree: self.degree,
                factors: self.factors(),
                coordinates,
            })
            .collect()
    }

    /// Some `g` with `d g = f`, if `f` is a coboundary.
    pub fn coboundary_preimage(&self, f: &Cochain) -> Result<Option<Cochain>> {
        self.check_cochain(f)?;
        match &self.previous {
            None => Ok(if f.is_zero() {
                Some(Cochain::zero(self.module.clone(), 0))
            } else {
                None
            }),
            Some(solver) => solver
                .preimage(f.flat())
                .map(|g| Cochain::from_flat(self.module.clone(), self.degree - 1, g))
                .transpose(),
        }
    }

    pub fn classify(&self, f: &Cochain) -> Result<Classification> {
        self.check_cochain(f)?;
        let df = f.coboundary();
        if let Some(witness) = df.first_nonzero() {
            return Ok(Classification {
                is_cocycle: false,
                violation: Some(witness),
                is_coboundary: false,
                preimage: None,
                class: None,
            });
        }
        let class = self.class_of(f)?;
        let preimage = if class.is_zero() { self.coboundary_preimage(f)? } else { None };
        Ok(Classification {
            is_cocycle: true,
            violation: None,
            is_coboundary: class.is_zero(),
            preimage,
            class: Some(class),
        })
    }
}

/// Where a cochain sits in the complex.
#[derive(Debug, Clone)]
pub struct Classification {
    pub is_cocycle: bool,
    /// A tuple where `d f` is nonzero, when `f` is not a cocycle.
    pub violation: Option<Vec<usize>>,
    pub is_coboundary: bool,
    /// `g` with `d g = f` when `f` is a coboundary.
    pub preimage: Option<Cochain>,
    /// Class coordinates when `f` is a cocycle; nonzero exactly when it is not a coboundary.
    pub class: Option<CohomologyClass>,
}

/// Classifies `f` as cocycle / coboundary with witnesses.
pub fn classify_cochain(f: &Cochain) -> Result<Classification> {
    if !f.is_cocycle() {
        return Ok(Classification {
            is_cocycle: false,
            violation: f.coboundary().first_nonzero(),
            is_coboundary: false,
            preimage: None,
            class: None,
        });
    }
    cohomology(f.module(), f.degree())?.classify(f)
}

/// All crossed homomorphisms `c(st) = s·c(t) + c(s)`, i.e. the whole of `Z^1`.
pub fn crossed_homomorphisms(module: &Arc<GModule>) -> Result<Vec<Cochain>> {
    crossed_homomorphisms_with(module, &Limits::default())
}

pub fn crossed_homomorphisms_with(module: &Arc<GModule>, limits: &Limits) -> Result<Vec<Cochain>> {
    let z1 = coboundary_hom(module, 1, limits)?.kernel();
    check_size("|Z^1|", z1.order(), limits.max_enumeration)?;
    z1.elements()
        .into_iter()
        .map(|v| Cochain::from_flat(module.clone(), 1, v))
        .collect()
}

/// A compatible pair `φ: G' -> G`, `ψ: A -> A'` with `g'·ψ(a) = ψ(φ(g')·a)`.
/// Pulls cochains over `(G, A)` back to cochains over `(G', A')`.
#[derive(Debug, Clone)]
pub struct ChangeOfGroups {
    phi: GroupHom,
    psi: AbelianHom,
    source: Arc<GModule>,
    target: Arc<GModule>,
}

impl ChangeOfGroups {
    /// `source` is `A` over `G`, `target` is `A'` over `G'`.
    pub fn new(phi: GroupHom, psi: AbelianHom, source: Arc<GModule>, target: Arc<GModule>) -> Result<Self> {
        if phi.target().as_ref() != source.group().as_ref() || phi.source().as_ref() != target.group().as_ref() {
            return Err(Error::InvalidHom("group homomorphism does not match the modules".into()));
        }
        if psi.source() != source.moduli() || psi.target() != target.moduli() {
            return Err(Error::InvalidHom("module map does not match the carriers".into()));
        }
        let gp = target.group();
        for s in 0..gp.order() {
            for j in 0..source.rank() {
                let mut a = vec![0; source.rank()];
                a[j] = 1;
                let lhs = target.act(s, &psi.apply(&a));
                let rhs = psi.apply(&source.act(phi.apply(s), &a));
                if lhs != rhs {
                    return Err(Error::InvalidHom(format!(
                        "compatibility fails at g' = {}, a = {a:?}: {lhs:?} != {rhs:?}",
                        gp.label(s)
                    )));
                }
            }
        }
        Ok(Self {
            phi,
            psi,
            source,
            target,
        })
    }

    /// Restriction to the subgroup on `elements`, with the identity on `A`.
    pub fn restriction(module: &Arc<GModule>, elements: &[usize]) -> Result<Self> {
        let (sub, incl) = module.group().subgroup(elements)?;
        let matrices = (0..sub.order()).map(|s| module.matrix(incl.apply(s))).collect();
        let restricted = Arc::new(GModule::from_element_matrices(sub, module.carrier().clone(), matrices)?);
        let k = module.rank();
        let id = (0..k).map(|i| (0..k).map(|j| i64::from(i == j)).collect::<Vec<_>>()).collect::<Vec<_>>();
        let psi = AbelianHom::from_matrix(module.moduli().to_vec(), module.moduli().to_vec(), &id)?;
        Self::new(incl, psi, module.clone(), restricted)
    }

    pub fn source(&self) -> &Arc<GModule> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GModule> {
        &self.target
    }

    /// `f'(s1', ..., sn') = ψ(f(φ s1', ..., φ sn'))`.
    pub fn pull(&self, f: &Cochain) -> Cochain {
        Cochain::from_fn(self.target.clone(), f.degree(), |t| {
            let image: Vec<usize> = t.iter().map(|&s| self.phi.apply(s)).collect();
            self.psi.apply(f.value(&image))
        })
    }

    pub fn induced_class(
        &self,
        class: &CohomologyClass,
        from: &CohomologyGroup,
        to: &CohomologyGroup,
    ) -> Result<CohomologyClass> {
        to.class_of(&self.pull(&from.representative(class)))
    }

    /// Matrix of the induced map on invariant-factor coordinates (one column per source factor).
    pub fn induced_matrix(&self, from: &CohomologyGroup, to: &CohomologyGroup) -> Result<Vec<Vec<i64>>> {
        let cols = from
            .representatives()
            .iter()
            .map(|r| to.class_of(&self.pull(r)).map(|c| c.coordinates))
            .collect::<Result<Vec<_>>>()?;
        Ok((0..to.factors().len()).map(|i| cols.iter().map(|c| c[i]).collect()).collect())
    }

    /// `next ∘ self`: pull back along `self`, then along `next`.
    pub fn then(&self, next: &ChangeOfGroups) -> Result<ChangeOfGroups> {
        let phi = self.phi.compose(&next.phi)?;
        let psi = next.psi.compose(&self.psi)?;
        ChangeOfGroups::new(phi, psi, self.source.clone(), next.target.clone())
    }
}

/// Image of `class` under the change of groups `(φ, ψ)`.
pub fn change_of_groups(
    phi: GroupHom,
    psi: AbelianHom,
    class: &CohomologyClass,
    from: &CohomologyGroup,
    to: &CohomologyGroup,
) -> Result<CohomologyClass> {
    let cg = ChangeOfGroups::new(phi, psi, from.module().clone(), to.module().clone())?;
    cg.induced_class(class, from, to)
}

/// Size of the cochain space `C^n` in tuples, for callers checking limits up front.
pub fn cochain_tuples(module: &GModule, degree: usize) -> u128 {
    tuple_count(module.group().order(), degree)
}

//! G-modules: finite abelian groups with a group acting by automorphisms.

use std::collections::VecDeque;
use std::sync::Arc;

use crate::abelian::{AbelianHom, FiniteAbelianGroup, Subgroup, Subquotient};
use crate::error::{check_size, Error, Result};
use crate::group::FiniteGroup;
use crate::Limits;

/// A finite abelian group `A` with an action of `G` given by one integer
/// matrix per group element. Matrices act on column tuples modulo the
/// carrier moduli.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GModule {
    carrier: FiniteAbelianGroup,
    group: Arc<FiniteGroup>,
    action: Vec<AbelianHom>,
}

/// How the action is specified when building a module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ActionSpec {
    Trivial,
    /// Matrices for some elements (typically generators); the rest of the
    /// action is filled in by products and checked for consistency.
    Generators(Vec<(usize, Vec<Vec<i64>>)>),
    /// One matrix per group element, in element order.
    Elements(Vec<Vec<Vec<i64>>>),
}

/// Builds and validates a module from a carrier and an action spec.
pub fn build_module(carrier: FiniteAbelianGroup, group: Arc<FiniteGroup>, action: ActionSpec) -> Result<GModule> {
    match action {
        ActionSpec::Trivial => Ok(GModule::trivial(group, carrier)),
        ActionSpec::Elements(ms) => GModule::from_element_matrices(group, carrier, ms),
        ActionSpec::Generators(gens) => GModule::from_generator_matrices(group, carrier, gens),
    }
}

impl GModule {
    pub fn trivial(group: Arc<FiniteGroup>, carrier: FiniteAbelianGroup) -> Self {
        let id = identity_hom(&carrier);
        let action = vec![id; group.order()];
        Self { carrier, group, action }
    }

    pub fn from_element_matrices(
        group: Arc<FiniteGroup>,
        carrier: FiniteAbelianGroup,
        matrices: Vec<Vec<Vec<i64>>>,
    ) -> Result<Self> {
        if matrices.len() != group.order() {
            return Err(Error::InvalidModule(format!(
                "{} matrices for a group of order {}",
                matrices.len(),
                group.order()
            )));
        }
        let action = matrices
            .iter()
            .enumerate()
            .map(|(s, m)| {
                let moduli = carrier.moduli().to_vec();
                AbelianHom::from_matrix(moduli.clone(), moduli, m)
                    .map_err(|e| Error::InvalidModule(format!("action of {}: {e}", group.label(s))))
            })
            .collect::<Result<Vec<_>>>()?;
        let m = Self { carrier, group, action };
        m.validate()?;
        Ok(m)
    }

    /// Closes an action given on generators under products, breadth first.
    pub fn from_generator_matrices(
        group: Arc<FiniteGroup>,
        carrier: FiniteAbelianGroup,
        gens: Vec<(usize, Vec<Vec<i64>>)>,
    ) -> Result<Self> {
        let moduli = carrier.moduli().to_vec();
        let mut gen_homs = Vec::with_capacity(gens.len());
        for (s, m) in &gens {
            if *s >= group.order() {
                return Err(Error::InvalidModule(format!("generator index {s} out of range")));
            }
            let h = AbelianHom::from_matrix(moduli.clone(), moduli.clone(), m)
                .map_err(|e| Error::InvalidModule(format!("action of {}: {e}", group.label(*s))))?;
            gen_homs.push((*s, h));
        }
        let mut action: Vec<Option<AbelianHom>> = vec![None; group.order()];
        action[group.identity()] = Some(identity_hom(&carrier));
        let mut queue = VecDeque::from([group.identity()]);
        while let Some(x) = queue.pop_front() {
            for (s, hs) in &gen_homs {
                let y = group.mul(*s, x);
                let hy = hs.compose(action[x].as_ref().unwrap())?;
                match &action[y] {
                    Some(existing) if *existing != hy => {
                        return Err(Error::InvalidModule(format!(
                            "inconsistent action: {} * {} = {} but the matrices disagree",
                            group.label(*s),
                            group.label(x),
                            group.label(y)
                        )))
                    }
                    Some(_) => {}
                    None => {
                        action[y] = Some(hy);
                        queue.push_back(y);
                    }
                }
            }
        }
        if let Some(missing) = action.iter().position(|a| a.is_none()) {
            return Err(Error::InvalidModule(format!(
                "the given elements do not generate the group; no action for {}",
                group.label(missing)
            )));
        }
        let m = Self {
            carrier,
            group,
            action: action.into_iter().map(Option::unwrap).collect(),
        };
        m.validate()?;
        Ok(m)
    }

    /// Checks `action(e) = id`, `action(st) = action(s) action(t)`, and that
    /// every `action(s)` is invertible.
    pub fn validate(&self) -> Result<()> {
        let g = &self.group;
        let id = identity_hom(&self.carrier);
        if self.action[g.identity()] != id {
            return Err(Error::InvalidModule("identity does not act as the identity map".into()));
        }
        for s in 0..g.order() {
            if !self.action[s].kernel().is_trivial() {
                return Err(Error::InvalidModule(format!(
                    "action of {} is not an automorphism",
                    g.label(s)
                )));
            }
        }
        for s in 0..g.order() {
            for t in 0..g.order() {
                let st = self.action[s].compose(&self.action[t])?;
                if st != self.action[g.mul(s, t)] {
                    return Err(Error::InvalidModule(format!(
                        "action is not a homomorphism at the pair ({}, {})",
                        g.label(s),
                        g.label(t)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn carrier(&self) -> &FiniteAbelianGroup {
        &self.carrier
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn moduli(&self) -> &[i64] {
        self.carrier.moduli()
    }

    pub fn rank(&self) -> usize {
        self.carrier.rank()
    }

    pub fn action(&self, s: usize) -> &AbelianHom {
        &self.action[s]
    }

    /// `s · a`.
    pub fn act(&self, s: usize, a: &[i64]) -> Vec<i64> {
        self.action[s].apply(a)
    }

    pub fn is_trivial_action(&self) -> bool {
        let id = identity_hom(&self.carrier);
        self.action.iter().all(|a| *a == id)
    }

    /// Row-major action matrix of `s`.
    pub fn matrix(&self, s: usize) -> Vec<Vec<i64>> {
        self.action[s].matrix()
    }
}

fn identity_hom(carrier: &FiniteAbelianGroup) -> AbelianHom {
    let k = carrier.rank();
    let cols = (0..k).map(|j| (0..k).map(|i| i64::from(i == j)).collect()).collect();
    AbelianHom::new(carrier.moduli().to_vec(), carrier.moduli().to_vec(), cols).expect("identity is well defined")
}

/// A `G`-equivariant homomorphism between modules over the same group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleMap {
    source: Arc<GModule>,
    target: Arc<GModule>,
    hom: AbelianHom,
}

impl ModuleMap {
    /// `matrix` is row-major with `target.rank()` rows.
    pub fn new(source: Arc<GModule>, target: Arc<GModule>, matrix: &[Vec<i64>]) -> Result<Self> {
        let hom = AbelianHom::from_matrix(source.moduli().to_vec(), target.moduli().to_vec(), matrix)?;
        Self::from_hom(source, target, hom)
    }

    pub fn from_hom(source: Arc<GModule>, target: Arc<GModule>, hom: AbelianHom) -> Result<Self> {
        if source.group() != target.group() {
            return Err(Error::InvalidHom("module map between modules over different groups".into()));
        }
        let g = source.group();
        for s in 0..g.order() {
            for j in 0..source.rank() {
                let mut e = vec![0; source.rank()];
                e[j] = 1;
                let lhs = hom.apply(&source.act(s, &e));
                let rhs = target.act(s, &hom.apply(&e));
                if lhs != rhs {
                    return Err(Error::InvalidHom(format!(
                        "not equivariant: f({} · e_{j}) = {lhs:?} but {} · f(e_{j}) = {rhs:?}",
                        g.label(s),
                        g.label(s)
                    )));
                }
            }
        }
        Ok(Self { source, target, hom })
    }

    pub fn source(&self) -> &Arc<GModule> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GModule> {
        &self.target
    }

    pub fn hom(&self) -> &AbelianHom {
        &self.hom
    }

    pub fn apply(&self, a: &[i64]) -> Vec<i64> {
        self.hom.apply(a)
    }

    pub fn matrix(&self) -> Vec<Vec<i64>> {
        self.hom.matrix()
    }
}

/// The invariants `A^G` as a subgroup of the carrier.
#[derive(Debug, Clone)]
pub struct FixedPoints {
    pub subgroup: Subgroup,
    /// Invariant factors of `A^G`.
    pub factors: Vec<i64>,
    /// Carrier elements generating each factor; together they give the embedding.
    pub generators: Vec<Vec<i64>>,
}

impl FixedPoints {
    pub fn order(&self) -> u128 {
        self.subgroup.order()
    }
}

/// `{a : s·a = a for all s}`, computed as the kernel of `a ↦ (s·a − a)_s`.
pub fn fixed_points(m: &GModule) -> FixedPoints {
    let k = m.rank();
    let n = m.group().order();
    let moduli = m.moduli().to_vec();
    let target: Vec<i64> = (0..n).flat_map(|_| moduli.iter().copied()).collect();
    let columns = (0..k)
        .map(|j| {
            let mut e = vec![0; k];
            e[j] = 1;
            (0..n)
                .flat_map(|s| m.carrier().sub(&m.act(s, &e), &e))
                .collect::<Vec<_>>()
        })
        .collect();
    let hom = AbelianHom::new(moduli.clone(), target, columns).expect("difference map is well defined");
    let subgroup = hom.kernel();
    let q = Subquotient::new(subgroup.clone(), Subgroup::zero(moduli));
    FixedPoints {
        factors: q.factors(),
        generators: q.generators().to_vec(),
        subgroup,
    }
}

/// `A / S` for a `G`-stable subgroup `S`, presented on its invariant factors.
#[derive(Debug, Clone)]
pub struct QuotientModule {
    pub module: Arc<GModule>,
    pub projection: ModuleMap,
    quotient: Subquotient,
}

impl QuotientModule {
    /// Canonical preimage of a quotient element; a set-theoretic section.
    pub fn lift(&self, u: &[i64]) -> Vec<i64> {
        self.quotient.element(u)
    }
}

pub fn quotient_module(m: &Arc<GModule>, sub: &Subgroup, limits: &Limits) -> Result<QuotientModule> {
    check_size("carrier order", m.carrier().order(), limits.max_enumeration)?;
    let k = m.rank();
    for s in 0..m.group().order() {
        for j in 0..sub.len() {
            if !sub.contains(&m.act(s, &sub.row(j))) {
                return Err(Error::InvalidModule("subgroup is not G-stable".into()));
            }
        }
    }
    let q = Subquotient::new(Subgroup::whole(m.moduli().to_vec()), sub.clone());
    let factors = q.factors();
    let carrier = FiniteAbelianGroup::new(factors.clone())?;
    let matrices: Vec<Vec<Vec<i64>>> = (0..m.group().order())
        .map(|s| {
            let cols: Vec<Vec<i64>> = q
                .generators()
                .iter()
                .map(|g| q.coordinates(&m.act(s, g)).expect("whole group"))
                .collect();
            (0..factors.len()).map(|i| cols.iter().map(|c| c[i]).collect()).collect()
        })
        .collect();
    let module = Arc::new(GModule::from_element_matrices(m.group().clone(), carrier, matrices)?);
    let proj_cols: Vec<Vec<i64>> = (0..k)
        .map(|j| {
            let mut e = vec![0; k];
            e[j] = 1;
            q.coordinates(&e).expect("whole group")
        })
        .collect();
    let hom = AbelianHom::new(m.moduli().to_vec(), factors, proj_cols)?;
    let projection = ModuleMap::from_hom(m.clone(), module.clone(), hom)?;
    Ok(QuotientModule {
        module,
        projection,
        quotient: q,
    })
}

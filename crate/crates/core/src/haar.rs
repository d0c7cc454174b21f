//! Approximate integrals `(f;g)` as covering linear programs, the relative
//! integrals `I_φ`, the invariant integral, and the overlap function of a
//! symmetric set.
//!
//! Translation is on the left: `f_u(x) = f(u·x)`.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::lp;
use crate::rational::{int, serde_q, Q};

/// A nonnegative rational function on a finite group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupFunction {
    group: Arc<FiniteGroup>,
    values: Vec<Q>,
}

impl GroupFunction {
    pub fn new(group: Arc<FiniteGroup>, values: Vec<Q>) -> Result<Self> {
        if values.len() != group.order() {
            return Err(Error::InvalidFunction(format!(
                "{} values for a group of order {}",
                values.len(),
                group.order()
            )));
        }
        if let Some(x) = values.iter().position(|v| v.is_negative()) {
            return Err(Error::InvalidFunction(format!("negative value at {}", group.label(x))));
        }
        Ok(Self { group, values })
    }

    pub fn constant(group: Arc<FiniteGroup>, c: Q) -> Result<Self> {
        let n = group.order();
        Self::new(group, vec![c; n])
    }

    pub fn indicator(group: Arc<FiniteGroup>, set: &[usize]) -> Self {
        let mut values = vec![Q::zero(); group.order()];
        for &x in set {
            values[x] = Q::one();
        }
        Self { group, values }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn values(&self) -> &[Q] {
        &self.values
    }

    pub fn value(&self, x: usize) -> &Q {
        &self.values[x]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&x| !self.values[x].is_zero()).collect()
    }

    pub fn sum(&self) -> Q {
        self.values.iter().sum()
    }

    /// `f_u(x) = f(u·x)`.
    pub fn translate(&self, u: usize) -> Self {
        let values = (0..self.group.order()).map(|x| self.values[self.group.mul(u, x)].clone()).collect();
        Self {
            group: self.group.clone(),
            values,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        same_group(self, other)?;
        Ok(Self {
            group: self.group.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, c: &Q) -> Result<Self> {
        if c.is_negative() {
            return Err(Error::InvalidFunction("negative scalar".into()));
        }
        Ok(Self {
            group: self.group.clone(),
            values: self.values.iter().map(|v| v * c).collect(),
        })
    }
}

fn same_group(f: &GroupFunction, g: &GroupFunction) -> Result<()> {
    if Arc::ptr_eq(&f.group, &g.group) || f.group == g.group {
        Ok(())
    } else {
        Err(Error::InvalidFunction("functions live on different groups".into()))
    }
}

/// The optimum of the covering program for `(f;g)` with its certificates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HaarReport {
    #[serde(with = "serde_q")]
    pub value: Q,
    /// `c_u` for each translate `g_u`; `Σ_u c_u g(u·x) >= f(x)` at every `x`.
    #[serde(with = "serde_q::vec")]
    pub coefficients: Vec<Q>,
    /// Weights `y_x >= 0` with `Σ_x g(u·x) y_x <= 1` for all `u` and `Σ f·y = value`.
    #[serde(with = "serde_q::vec")]
    pub dual: Vec<Q>,
    pub feasible: bool,
}

/// `(f;g) = min Σ c_u` over `c >= 0` with `Σ_u c_u g_u >= f`.
///
/// Solved through the dual `max Σ f(x) y_x` subject to `Σ_x g(u·x) y_x <= 1`,
/// whose slack basis is feasible; the covering coefficients are the dual
/// values of that program.
pub fn approx_integral(f: &GroupFunction, g: &GroupFunction) -> Result<HaarReport> {
    same_group(f, g)?;
    if g.is_zero() {
        return Err(Error::InvalidFunction("(f;g) is undefined for g = 0".into()));
    }
    let grp = &f.group;
    let n = grp.order();
    let rows: Vec<Vec<Q>> = (0..n)
        .map(|u| (0..n).map(|x| g.values[grp.mul(u, x)].clone()).collect())
        .collect();
    let sol = lp::maximize(&f.values, &rows, &vec![Q::one(); n])?;
    let covers = (0..n).all(|x| {
        let s: Q = (0..n).map(|u| &sol.dual[u] * &rows[u][x]).sum();
        s >= f.values[x]
    });
    let cost: Q = sol.dual.iter().sum();
    let dual_ok = (0..n).all(|u| {
        let s: Q = (0..n).map(|x| &rows[u][x] * &sol.primal[x]).sum();
        s <= Q::one()
    });
    let feasible = covers && dual_ok && sol.dual.iter().all(|c| !c.is_negative()) && cost == sol.value;
    if !feasible {
        return Err(Error::InvalidFunction("covering program failed its certificate".into()));
    }
    Ok(HaarReport {
        value: sol.value,
        coefficients: sol.dual,
        dual: sol.primal,
        feasible,
    })
}

/// The default reference function `g ≡ 1`.
pub fn unit_reference(group: &Arc<FiniteGroup>) -> GroupFunction {
    GroupFunction {
        group: group.clone(),
        values: vec![Q::one(); group.order()],
    }
}

/// `I_φ(f) = (f;φ) / (g;φ)`.
pub fn relative_value(f: &GroupFunction, phi: &GroupFunction, g_ref: &GroupFunction) -> Result<Q> {
    if phi.is_zero() {
        return Err(Error::InvalidFunction("I_φ is undefined for φ = 0".into()));
    }
    if g_ref.is_zero() {
        return Err(Error::InvalidFunction("reference function must be nonzero".into()));
    }
    Ok(approx_integral(f, phi)?.value / approx_integral(g_ref, phi)?.value)
}

/// Checked properties of `I_φ` at one `f`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IphiProperties {
    /// `(g;f)⁻¹`, absent for `f = 0`.
    #[serde(with = "serde_q::option")]
    pub lower_bound: Option<Q>,
    /// `(f;g)`.
    #[serde(with = "serde_q")]
    pub upper_bound: Q,
    pub bounds: bool,
    /// `I_φ(f_x) = I_φ(f)` for every `x`.
    pub invariant: bool,
    /// `I_φ(f + f_x) <= I_φ(f) + I_φ(f_x)` for every `x`.
    pub subadditive: bool,
    /// `I_φ(c·f) = c·I_φ(f)` for the tested scalars.
    pub homogeneous: bool,
}

impl IphiProperties {
    pub fn all_hold(&self) -> bool {
        self.bounds && self.invariant && self.subadditive && self.homogeneous
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelativeIntegral {
    #[serde(with = "serde_q")]
    pub value: Q,
    pub numerator: HaarReport,
    pub denominator: HaarReport,
    pub properties: IphiProperties,
}

pub fn relative_integral(f: &GroupFunction, phi: &GroupFunction, g_ref: &GroupFunction) -> Result<RelativeIntegral> {
    same_group(f, phi)?;
    same_group(f, g_ref)?;
    if phi.is_zero() {
        return Err(Error::InvalidFunction("I_φ is undefined for φ = 0".into()));
    }
    let numerator = approx_integral(f, phi)?;
    let denominator = approx_integral(g_ref, phi)?;
    let value = &numerator.value / &denominator.value;
    let i = |h: &GroupFunction| relative_value(h, phi, g_ref);

    let upper_bound = approx_integral(f, g_ref)?.value;
    let lower_bound = if f.is_zero() {
        None
    } else {
        Some(approx_integral(g_ref, f)?.value.recip())
    };
    let bounds = match &lower_bound {
        Some(lo) => *lo <= value && value <= upper_bound,
        None => value.is_zero(),
    };
    let mut invariant = true;
    let mut subadditive = true;
    for x in 0..f.group.order() {
        let fx = f.translate(x);
        let ix = i(&fx)?;
        invariant &= ix == value;
        subadditive &= i(&f.add(&fx)?)? <= &value + &ix;
    }
    let mut homogeneous = true;
    for c in [int(0), int(3), Q::new(1.into(), 2.into())] {
        homogeneous &= i(&f.scale(&c)?)? == &c * &value;
    }
    Ok(RelativeIntegral {
        value,
        numerator,
        denominator,
        properties: IphiProperties {
            lower_bound,
            upper_bound,
            bounds,
            invariant,
            subadditive,
            homogeneous,
        },
    })
}

/// `|I_φ(f₁) + I_φ(f₂) - I_φ(f₁ + f₂)|` with `g_ref ≡ 1`.
pub fn near_additivity_gap(f1: &GroupFunction, f2: &GroupFunction, phi: &GroupFunction) -> Result<Q> {
    near_additivity_gap_with(f1, f2, phi, &unit_reference(&f1.group))
}

pub fn near_additivity_gap_with(
    f1: &GroupFunction,
    f2: &GroupFunction,
    phi: &GroupFunction,
    g_ref: &GroupFunction,
) -> Result<Q> {
    let a = relative_value(f1, phi, g_ref)?;
    let b = relative_value(f2, phi, g_ref)?;
    let c = relative_value(&f1.add(f2)?, phi, g_ref)?;
    Ok((a + b - c).abs())
}

/// Gap at each support in a family, with `φ` the indicator of the support.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportStudy {
    pub supports: Vec<Vec<usize>>,
    #[serde(with = "serde_q::vec")]
    pub gaps: Vec<Q>,
    pub non_increasing: bool,
}

pub fn shrinking_support_study(f1: &GroupFunction, f2: &GroupFunction, supports: &[Vec<usize>]) -> Result<SupportStudy> {
    let gaps = supports
        .iter()
        .map(|s| near_additivity_gap(f1, f2, &GroupFunction::indicator(f1.group.clone(), s)))
        .collect::<Result<Vec<_>>>()?;
    let non_increasing = gaps.windows(2).all(|w| w[1] <= w[0]);
    Ok(SupportStudy {
        supports: supports.to_vec(),
        gaps,
        non_increasing,
    })
}

/// The invariant integral `f ↦ Σf / Σg_ref`, the value of `I_φ` at the
/// smallest neighbourhood `φ = δ_e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantIntegral {
    g_ref: GroupFunction,
    normalizer: Q,
}

pub fn invariant_integral(group: &Arc<FiniteGroup>, g_ref: Option<&GroupFunction>) -> Result<InvariantIntegral> {
    let g_ref = g_ref.cloned().unwrap_or_else(|| unit_reference(group));
    if g_ref.group.as_ref() != group.as_ref() {
        return Err(Error::InvalidFunction("reference function lives on another group".into()));
    }
    if g_ref.is_zero() {
        return Err(Error::InvalidFunction("reference function must be nonzero".into()));
    }
    let normalizer = g_ref.sum();
    Ok(InvariantIntegral { g_ref, normalizer })
}

/// Properties of the invariant integral checked on sample functions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantCertificate {
    /// `(g;f)⁻¹ <= I(f) <= (f;g)` and `I(f) > 0` for nonzero samples.
    pub positive: bool,
    pub left_invariant: bool,
    pub homogeneous: bool,
    pub additive: bool,
    /// `I(f)` equals the covering-program value of `I_{δ_e}(f)`.
    pub matches_point_mass: bool,
}

impl InvariantCertificate {
    pub fn all_hold(&self) -> bool {
        self.positive && self.left_invariant && self.homogeneous && self.additive && self.matches_point_mass
    }
}

impl InvariantIntegral {
    pub fn reference(&self) -> &GroupFunction {
        &self.g_ref
    }

    pub fn evaluate(&self, f: &GroupFunction) -> Q {
        f.sum() / &self.normalizer
    }

    pub fn certify(&self, samples: &[GroupFunction]) -> Result<InvariantCertificate> {
        let group = self.g_ref.group.clone();
        let delta = GroupFunction::indicator(group.clone(), &[group.identity()]);
        let mut cert = InvariantCertificate {
            positive: true,
            left_invariant: true,
            homogeneous: true,
            additive: true,
            matches_point_mass: true,
        };
        for (k, f) in samples.iter().enumerate() {
            same_group(f, &self.g_ref)?;
            let v = self.evaluate(f);
            if !f.is_zero() {
                let lo = approx_integral(&self.g_ref, f)?.value.recip();
                let hi = approx_integral(f, &self.g_ref)?.value;
                cert.positive &= v.is_positive() && lo <= v && v <= hi;
            }
            cert.left_invariant &= (0..group.order()).all(|x| self.evaluate(&f.translate(x)) == v);
            cert.homogeneous &= [int(2), Q::new(1.into(), 3.into())]
                .iter()
                .all(|c| f.scale(c).map(|h| self.evaluate(&h) == c * &v).unwrap_or(false));
            for h in &samples[k..] {
                cert.additive &= self.evaluate(&f.add(h)?) == &v + self.evaluate(h);
            }
            cert.matches_point_mass &= relative_value(f, &delta, &self.g_ref)? == v;
        }
        Ok(cert)
    }
}

/// A nonempty subset closed under inverses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricSet {
    group: Arc<FiniteGroup>,
    members: BTreeSet<usize>,
}

impl SymmetricSet {
    pub fn new(group: Arc<FiniteGroup>, members: &[usize]) -> Result<Self> {
        let members: BTreeSet<usize> = members.iter().copied().collect();
        if members.iter().any(|&x| x >= group.order()) {
            return Err(Error::InvalidFunction("member out of range".into()));
        }
        if members.is_empty() {
            return Err(Error::InvalidFunction("symmetric set must be nonempty".into()));
        }
        if let Some(&x) = members.iter().find(|&&x| !members.contains(&group.inv(x))) {
            return Err(Error::InvalidFunction(format!(
                "not symmetric: {} is a member but its inverse is not",
                group.label(x)
            )));
        }
        Ok(Self { group, members })
    }

    /// Every nonempty symmetric subset of `group`, in a fixed order.
    pub fn all(group: &Arc<FiniteGroup>) -> Vec<SymmetricSet> {
        let mut pairs: Vec<Vec<usize>> = Vec::new();
        for x in 0..group.order() {
            let y = group.inv(x);
            if x <= y {
                pairs.push(if x == y { vec![x] } else { vec![x, y] });
            }
        }
        (1u64..1 << pairs.len())
            .map(|mask| {
                let mut members: BTreeSet<usize> = BTreeSet::new();
                for (i, p) in pairs.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        members.extend(p);
                    }
                }
                SymmetricSet {
                    group: group.clone(),
                    members,
                }
            })
            .collect()
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn members(&self) -> Vec<usize> {
        self.members.iter().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(&x)
    }

    /// `MM = {m·n : m, n ∈ M}`, sorted.
    pub fn product(&self) -> Vec<usize> {
        let mut out = BTreeSet::new();
        for &m in &self.members {
            for &n in &self.members {
                out.insert(self.group.mul(m, n));
            }
        }
        out.into_iter().collect()
    }
}

/// `u(x) = |M ∩ xM|` under counting measure.
pub fn overlap_function(m: &SymmetricSet) -> GroupFunction {
    let g = &m.group;
    let values = (0..g.order())
        .map(|x| int(m.members.iter().filter(|&&y| m.contains(g.mul(g.inv(x), y))).count() as i64))
        .collect();
    GroupFunction {
        group: g.clone(),
        values,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductSetReport {
    pub members: Vec<usize>,
    pub product: Vec<usize>,
    pub support: Vec<usize>,
    pub identity_value: usize,
    pub support_in_product: bool,
    pub identity_in_product: bool,
}

impl ProductSetReport {
    pub fn holds(&self) -> bool {
        self.support_in_product && self.identity_in_product && self.identity_value == self.members.len() && self.identity_value > 0
    }
}

pub fn product_set_check(m: &SymmetricSet) -> ProductSetReport {
    let u = overlap_function(m);
    let product = m.product();
    let support = u.support();
    let e = m.group.identity();
    let identity_value = u.values[e].to_integer().try_into().expect("small count");
    ProductSetReport {
        members: m.members(),
        support_in_product: support.iter().all(|x| product.binary_search(x).is_ok()),
        identity_in_product: product.binary_search(&e).is_ok(),
        product,
        support,
        identity_value,
    }
}

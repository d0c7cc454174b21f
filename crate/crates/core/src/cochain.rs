//! Inhomogeneous (bar) cochains `G^n -> A` and the coboundary
//!
//! ```text
//! (d f)(s1, ..., s(n+1)) = s1 · f(s2, ..., s(n+1))
//!                        + Σ_{i=1..n} (-1)^i f(s1, ..., si s(i+1), ..., s(n+1))
//!                        + (-1)^(n+1) f(s1, ..., sn)
//! ```
//!
//! A tuple `(s1, ..., sn)` is stored at index `Σ si |G|^(n-i)`, so `s1` is
//! the most significant digit. Cochains are not assumed normalized.

use std::sync::Arc;

use crate::abelian::{modp, AbelianHom};
use crate::error::{check_size, Error, Result};
use crate::module::GModule;
use crate::Limits;

/// Number of `n`-tuples over a group of the given order.
pub fn tuple_count(order: usize, degree: usize) -> u128 {
    (order as u128).pow(degree as u32)
}

pub fn tuple_index(order: usize, tuple: &[usize]) -> usize {
    tuple.iter().fold(0, |acc, &s| acc * order + s)
}

pub fn tuple_at(order: usize, degree: usize, mut index: usize) -> Vec<usize> {
    let mut t = vec![0; degree];
    for i in (0..degree).rev() {
        t[i] = index % order;
        index /= order;
    }
    t
}

/// A degree-`n` cochain with its full value table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    module: Arc<GModule>,
    degree: usize,
    /// Tuple-major, `rank` components per tuple.
    values: Vec<i64>,
}

impl Cochain {
    pub fn zero(module: Arc<GModule>, degree: usize) -> Self {
        let len = tuple_count(module.group().order(), degree) as usize * module.rank();
        Self {
            module,
            degree,
            values: vec![0; len],
        }
    }

    pub fn from_fn(module: Arc<GModule>, degree: usize, mut f: impl FnMut(&[usize]) -> Vec<i64>) -> Self {
        let mut c = Self::zero(module, degree);
        let order = c.module.group().order();
        for idx in 0..c.tuple_count() {
            let t = tuple_at(order, degree, idx);
            let v = f(&t);
            c.set_at(idx, &v);
        }
        c
    }

    /// From a flat coordinate vector as used by the linear algebra.
    pub fn from_flat(module: Arc<GModule>, degree: usize, values: Vec<i64>) -> Result<Self> {
        let c = Self::zero(module, degree);
        if values.len() != c.values.len() {
            return Err(Error::InvalidCochain(format!(
                "expected {} coordinates, got {}",
                c.values.len(),
                values.len()
            )));
        }
        let k = c.module.rank();
        let values = values
            .iter()
            .enumerate()
            .map(|(i, &v)| modp(v as i128, c.module.moduli()[i % k]))
            .collect();
        Ok(Self { values, ..c })
    }

    pub fn module(&self) -> &Arc<GModule> {
        &self.module
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn tuple_count(&self) -> usize {
        tuple_count(self.module.group().order(), self.degree) as usize
    }

    pub fn flat(&self) -> &[i64] {
        &self.values
    }

    pub fn value_at(&self, index: usize) -> &[i64] {
        let k = self.module.rank();
        &self.values[index * k..(index + 1) * k]
    }

    pub fn value(&self, tuple: &[usize]) -> &[i64] {
        assert_eq!(tuple.len(), self.degree);
        self.value_at(tuple_index(self.module.group().order(), tuple))
    }

    pub fn set_at(&mut self, index: usize, v: &[i64]) {
        let k = self.module.rank();
        let moduli = self.module.moduli();
        for (c, &x) in v.iter().enumerate().take(k) {
            self.values[index * k + c] = modp(x as i128, moduli[c]);
        }
    }

    pub fn set(&mut self, tuple: &[usize], v: &[i64]) {
        let idx = tuple_index(self.module.group().order(), tuple);
        self.set_at(idx, v);
    }

    /// Tuples in index order, paired with their values.
    pub fn entries(&self) -> impl Iterator<Item = (Vec<usize>, &[i64])> + '_ {
        let order = self.module.group().order();
        (0..self.tuple_count()).map(move |i| (tuple_at(order, self.degree, i), self.value_at(i)))
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&x| x == 0)
    }

    /// First tuple with a nonzero value.
    pub fn first_nonzero(&self) -> Option<Vec<usize>> {
        let order = self.module.group().order();
        (0..self.tuple_count())
            .find(|&i| self.value_at(i).iter().any(|&x| x != 0))
            .map(|i| tuple_at(order, self.degree, i))
    }

    fn zip_with(&self, other: &Cochain, f: impl Fn(i128, i128) -> i128) -> Cochain {
        assert_eq!(self.degree, other.degree, "degree mismatch");
        assert_eq!(self.module, other.module, "module mismatch");
        let k = self.module.rank();
        let moduli = self.module.moduli();
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .enumerate()
            .map(|(i, (&a, &b))| modp(f(a as i128, b as i128), moduli[i % k]))
            .collect();
        Cochain {
            module: self.module.clone(),
            degree: self.degree,
            values,
        }
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: i64) -> Cochain {
        let k = self.module.rank();
        let moduli = self.module.moduli();
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(i, &a)| modp(c as i128 * a as i128, moduli[i % k]))
            .collect();
        Cochain { values, ..self.clone() }
    }

    /// Applies a carrier homomorphism value by value, landing over `target`.
    pub fn map_values(&self, f: &AbelianHom, target: Arc<GModule>) -> Cochain {
        Cochain::from_fn(target, self.degree, |t| f.apply(self.value(t)))
    }

    /// Direct evaluation of the coboundary formula.
    pub fn coboundary(&self) -> Cochain {
        let g = self.module.group().clone();
        let order = g.order();
        let n = self.degree;
        let carrier = self.module.carrier().clone();
        Cochain::from_fn(self.module.clone(), n + 1, |s| {
            let mut acc = self.module.act(s[0], self.value(&s[1..]));
            let mut merged = Vec::with_capacity(n);
            for i in 1..=n {
                merged.clear();
                merged.extend_from_slice(&s[..i - 1]);
                merged.push(g.mul(s[i - 1], s[i]));
                merged.extend_from_slice(&s[i + 1..]);
                let v = self.value_at(tuple_index(order, &merged));
                acc = if i % 2 == 0 { carrier.add(&acc, v) } else { carrier.sub(&acc, v) };
            }
            let last = self.value(&s[..n]);
            if (n + 1) % 2 == 0 {
                carrier.add(&acc, last)
            } else {
                carrier.sub(&acc, last)
            }
        })
    }

    pub fn is_cocycle(&self) -> bool {
        self.coboundary().is_zero()
    }

    /// True if the value vanishes on every tuple containing the identity.
    pub fn is_normalized(&self) -> bool {
        let e = self.module.group().identity();
        self.entries().all(|(t, v)| !t.contains(&e) || v.iter().all(|&x| x == 0))
    }

    /// A cohomologous normalized cocycle `f - d g`, with `g`.
    pub fn normalize(&self) -> Result<(Cochain, Cochain)> {
        if let Some(witness) = self.coboundary().first_nonzero() {
            return Err(Error::NotCocycle { witness });
        }
        let module = self.module.clone();
        if self.degree == 0 {
            return Ok((self.clone(), Cochain::zero(module, 0)));
        }
        let order = module.group().order();
        let e = module.group().identity();
        let k = module.rank();
        let d = coboundary_hom(&module, self.degree - 1, &Limits::default())?;
        let degenerate: Vec<usize> = (0..self.tuple_count())
            .filter(|&i| tuple_at(order, self.degree, i).contains(&e))
            .collect();
        let moduli = module.moduli();
        let target: Vec<i64> = degenerate.iter().flat_map(|_| moduli.iter().copied()).collect();
        let restrict = |v: &[i64]| -> Vec<i64> {
            degenerate
                .iter()
                .flat_map(|&i| v[i * k..(i + 1) * k].iter().copied())
                .collect()
        };
        let cols = d.columns().iter().map(|c| restrict(c)).collect();
        let restricted = AbelianHom::new(d.source().to_vec(), target, cols)?;
        let g = restricted
            .solver()
            .preimage(&restrict(&self.values))
            .expect("every cocycle is cohomologous to a normalized one");
        let g = Cochain::from_flat(module, self.degree - 1, g)?;
        Ok((self.sub(&g.coboundary()), g))
    }
}

/// The coboundary `C^n -> C^(n+1)` as a homomorphism of finite abelian groups.
pub fn coboundary_hom(module: &GModule, n: usize, limits: &Limits) -> Result<AbelianHom> {
    let order = module.group().order();
    check_size("|G|^(n+1)", tuple_count(order, n + 1), limits.max_tuples)?;
    let g = module.group();
    let k = module.rank();
    let moduli = module.moduli();
    let src_tuples = tuple_count(order, n) as usize;
    let dst_tuples = src_tuples * order;
    let mut cols = vec![vec![0i64; dst_tuples * k]; src_tuples * k];
    let mut merged = Vec::with_capacity(n);
    for ti in 0..dst_tuples {
        let s = tuple_at(order, n + 1, ti);
        // s1 · f(s2, ...)
        let u0 = ti % src_tuples;
        let act = module.action(s[0]).columns();
        for c in 0..k {
            for r in 0..k {
                cols[u0 * k + c][ti * k + r] += act[c][r];
            }
        }
        for i in 1..=n {
            merged.clear();
            merged.extend_from_slice(&s[..i - 1]);
            merged.push(g.mul(s[i - 1], s[i]));
            merged.extend_from_slice(&s[i + 1..]);
            let u = tuple_index(order, &merged);
            let sign = if i % 2 == 0 { 1 } else { -1 };
            for c in 0..k {
                cols[u * k + c][ti * k + c] += sign;
            }
        }
        let ul = ti / order;
        let sign = if (n + 1) % 2 == 0 { 1 } else { -1 };
        for c in 0..k {
            cols[ul * k + c][ti * k + c] += sign;
        }
    }
    let source: Vec<i64> = (0..src_tuples).flat_map(|_| moduli.iter().copied()).collect();
    let target: Vec<i64> = (0..dst_tuples).flat_map(|_| moduli.iter().copied()).collect();
    AbelianHom::new(source, target, cols)
}

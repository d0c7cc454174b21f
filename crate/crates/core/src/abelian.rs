//! Finite abelian groups `Z/d1 ⊕ ... ⊕ Z/dk` and exact linear algebra over them.
//!
//! A subgroup `S` of `Z^N / diag(d)` is stored as its preimage lattice
//! `L ⊇ diag(d)` in Hermite echelon form. Because every `d_i e_i` lies in
//! `L`, coordinates may be reduced modulo `d_i` at any time, so all entries
//! stay below the moduli and the arithmetic is exact in machine integers.
//! Quotients `upper / lower` are read off a Smith normal form taken modulo
//! the exponent `e`; `e Z^N` is contained in every relation lattice that
//! appears, which makes reduction modulo `e` a sequence of exact lattice
//! operations rather than an approximation.

use std::fmt;

use crate::error::{Error, Result};

#[inline]
pub(crate) fn modp(x: i128, m: i64) -> i64 {
    (x.rem_euclid(m as i128)) as i64
}

/// Extended gcd: returns `(g, x, y)` with `a x + b y = g >= 0`.
pub fn egcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a as i128, b as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (r0, s0, t0) = (-r0, -s0, -t0);
    }
    (r0 as i64, s0 as i64, t0 as i64)
}

pub fn gcd(a: i64, b: i64) -> i64 {
    egcd(a, b).0
}

pub fn lcm(a: i64, b: i64) -> i64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// `Z/m1 ⊕ ... ⊕ Z/mk`, written additively with elements as residue tuples.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    moduli: Vec<i64>,
}

impl fmt::Debug for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.moduli.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.moduli.iter().map(|m| format!("Z/{m}")).collect();
        write!(f, "{}", parts.join("⊕"))
    }
}

impl FiniteAbelianGroup {
    pub fn new(moduli: Vec<i64>) -> Result<Self> {
        if let Some(m) = moduli.iter().find(|&&m| m < 1) {
            return Err(Error::InvalidModule(format!("modulus {m} must be at least 1")));
        }
        Ok(Self { moduli })
    }

    pub fn cyclic(m: i64) -> Self {
        Self::new(vec![m]).expect("positive modulus")
    }

    pub fn moduli(&self) -> &[i64] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn order(&self) -> u128 {
        self.moduli.iter().map(|&m| m as u128).product()
    }

    pub fn exponent(&self) -> i64 {
        self.moduli.iter().fold(1, |acc, &m| lcm(acc, m))
    }

    pub fn zero(&self) -> Vec<i64> {
        vec![0; self.rank()]
    }

    pub fn reduce(&self, v: &[i64]) -> Vec<i64> {
        v.iter().zip(&self.moduli).map(|(&x, &m)| modp(x as i128, m)).collect()
    }

    pub fn add(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        a.iter()
            .zip(b)
            .zip(&self.moduli)
            .map(|((&x, &y), &m)| modp(x as i128 + y as i128, m))
            .collect()
    }

    pub fn neg(&self, a: &[i64]) -> Vec<i64> {
        a.iter().zip(&self.moduli).map(|(&x, &m)| modp(-(x as i128), m)).collect()
    }

    pub fn sub(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, c: i64, a: &[i64]) -> Vec<i64> {
        a.iter().zip(&self.moduli).map(|(&x, &m)| modp(c as i128 * x as i128, m)).collect()
    }

    /// Position of `a` in the lexicographic enumeration of the carrier.
    pub fn index_of(&self, a: &[i64]) -> usize {
        let a = self.reduce(a);
        a.iter().zip(&self.moduli).fold(0usize, |acc, (&x, &m)| acc * m as usize + x as usize)
    }

    pub fn element(&self, mut index: usize) -> Vec<i64> {
        let mut out = vec![0; self.rank()];
        for i in (0..self.rank()).rev() {
            let m = self.moduli[i] as usize;
            out[i] = (index % m) as i64;
            index /= m;
        }
        out
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> impl Iterator<Item = Vec<i64>> + '_ {
        (0..self.order() as usize).map(move |i| self.element(i))
    }

    /// Invariant factors (each `>= 2`, dividing the next).
    pub fn invariant_factors(&self) -> Vec<i64> {
        Subquotient::new(Subgroup::whole(self.moduli.clone()), Subgroup::zero(self.moduli.clone())).factors()
    }

    /// Direct sum with another group.
    pub fn direct_sum(&self, other: &FiniteAbelianGroup) -> FiniteAbelianGroup {
        let mut moduli = self.moduli.clone();
        moduli.extend_from_slice(&other.moduli);
        FiniteAbelianGroup { moduli }
    }
}

/// A subgroup of `Z^N / diag(moduli)`, stored as an echelon basis of its
/// preimage lattice. Row `j` has zeros before `j` and pivot `p_j | d_j`.
/// Rows equal to `d_j e_j` are left implicit.
#[derive(Clone)]
pub struct Subgroup {
    moduli: Vec<i64>,
    rows: Vec<Option<Vec<i64>>>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subgroup")
            .field("moduli", &self.moduli)
            .field("order", &self.order())
            .finish()
    }
}

impl Subgroup {
    /// The zero subgroup.
    pub fn zero(moduli: Vec<i64>) -> Self {
        let n = moduli.len();
        Self {
            moduli,
            rows: vec![None; n],
        }
    }

    /// The whole group.
    pub fn whole(moduli: Vec<i64>) -> Self {
        let n = moduli.len();
        let mut s = Self::zero(moduli);
        for j in 0..n {
            let mut e = vec![0; n];
            e[j] = 1;
            s.insert(&e);
        }
        s
    }

    pub fn generated<'a>(moduli: Vec<i64>, gens: impl IntoIterator<Item = &'a Vec<i64>>) -> Self {
        let mut s = Self::zero(moduli);
        for g in gens {
            s.insert(g);
        }
        s
    }

    pub fn moduli(&self) -> &[i64] {
        &self.moduli
    }

    pub fn len(&self) -> usize {
        self.moduli.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moduli.is_empty()
    }

    #[inline]
    pub fn pivot(&self, j: usize) -> i64 {
        match &self.rows[j] {
            Some(r) => r[j],
            None => self.moduli[j],
        }
    }

    /// Row `j` of the echelon basis as a dense vector.
    pub fn row(&self, j: usize) -> Vec<i64> {
        match &self.rows[j] {
            Some(r) => r.clone(),
            None => {
                let mut r = vec![0; self.len()];
                r[j] = self.moduli[j];
                r
            }
        }
    }

    fn materialize(&mut self, j: usize) -> &mut Vec<i64> {
        if self.rows[j].is_none() {
            self.rows[j] = Some(self.row(j));
        }
        self.rows[j].as_mut().unwrap()
    }

    /// Adds `v` to the generating set.
    pub fn insert(&mut self, v: &[i64]) {
        let n = self.len();
        assert_eq!(v.len(), n, "vector length does not match subgroup ambient rank");
        let mut v: Vec<i64> = v.iter().zip(&self.moduli).map(|(&x, &m)| modp(x as i128, m)).collect();
        for j in 0..n {
            let a = v[j];
            if a == 0 {
                continue;
            }
            let p = self.pivot(j);
            if a % p == 0 {
                let q = a / p;
                if let Some(row) = &self.rows[j] {
                    for i in j..n {
                        if row[i] != 0 {
                            v[i] = modp(v[i] as i128 - q as i128 * row[i] as i128, self.moduli[i]);
                        }
                    }
                } else {
                    v[j] = 0;
                }
                continue;
            }
            let (g, x, y) = egcd(p, a);
            let moduli = self.moduli.clone();
            let row = self.materialize(j);
            let (pg, ag) = (p / g, a / g);
            for i in j..n {
                let (r, w) = (row[i] as i128, v[i] as i128);
                if r == 0 && w == 0 {
                    continue;
                }
                let m = moduli[i];
                let new_row = x as i128 * r + y as i128 * w;
                let new_v = pg as i128 * w - ag as i128 * r;
                row[i] = if i == j { g } else { modp(new_row, m) };
                v[i] = if i == j { 0 } else { modp(new_v, m) };
            }
        }
    }

    /// Lexicographically least representative of the coset `v + S`.
    pub fn reduce(&self, v: &[i64]) -> Vec<i64> {
        let n = self.len();
        let mut v: Vec<i64> = v.iter().zip(&self.moduli).map(|(&x, &m)| modp(x as i128, m)).collect();
        for j in 0..n {
            let p = self.pivot(j);
            let q = v[j] / p;
            if q == 0 {
                continue;
            }
            match &self.rows[j] {
                Some(row) => {
                    for i in j..n {
                        if row[i] != 0 {
                            v[i] = modp(v[i] as i128 - q as i128 * row[i] as i128, self.moduli[i]);
                        }
                    }
                }
                None => v[j] = 0,
            }
        }
        v
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn order(&self) -> u128 {
        (0..self.len()).map(|j| (self.moduli[j] / self.pivot(j)) as u128).product()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn contains_subgroup(&self, other: &Subgroup) -> bool {
        (0..other.len()).all(|j| self.contains(&other.row(j)))
    }

    /// Hermite normal form: unique for a given subgroup.
    pub fn canonical(&self) -> Vec<Vec<i64>> {
        let n = self.len();
        let mut rows: Vec<Vec<i64>> = (0..n).map(|j| self.row(j)).collect();
        for j in 0..n {
            for i in j + 1..n {
                let p = rows[i][i];
                let q = rows[j][i].div_euclid(p);
                if q != 0 {
                    let (head, tail) = rows.split_at_mut(i);
                    let rj = &mut head[j];
                    let ri = &tail[0];
                    for k in i..n {
                        rj[k] = modp(rj[k] as i128 - q as i128 * ri[k] as i128, self.moduli[k]);
                    }
                    // the pivot column entry is reduced into [0, p)
                    rj[i] = rj[i].rem_euclid(p);
                }
            }
        }
        rows
    }

    /// Every element, enumerated as `Σ c_j row_j` with `0 <= c_j < d_j / p_j`.
    pub fn elements(&self) -> Vec<Vec<i64>> {
        let n = self.len();
        let mut out = vec![vec![0i64; n]];
        for j in (0..n).rev() {
            let k = self.moduli[j] / self.pivot(j);
            if k == 1 {
                continue;
            }
            let row = self.row(j);
            let mut next = Vec::with_capacity(out.len() * k as usize);
            for base in &out {
                for c in 0..k {
                    next.push(
                        base.iter()
                            .zip(&row)
                            .zip(&self.moduli)
                            .map(|((&b, &r), &m)| modp(b as i128 + c as i128 * r as i128, m))
                            .collect(),
                    );
                }
            }
            out = next;
        }
        out.sort();
        out
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.moduli == other.moduli && self.canonical() == other.canonical()
    }
}

impl Eq for Subgroup {}

/// A homomorphism `⊕ Z/d_j -> ⊕ Z/d'_i` given by the images of the standard generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianHom {
    source: Vec<i64>,
    target: Vec<i64>,
    /// `columns[j]` is the image of `e_j`.
    columns: Vec<Vec<i64>>,
}

impl AbelianHom {
    pub fn new(source: Vec<i64>, target: Vec<i64>, columns: Vec<Vec<i64>>) -> Result<Self> {
        if columns.len() != source.len() || columns.iter().any(|c| c.len() != target.len()) {
            return Err(Error::InvalidHom("matrix shape does not match source and target".into()));
        }
        let columns: Vec<Vec<i64>> = columns
            .into_iter()
            .map(|c| c.iter().zip(&target).map(|(&x, &m)| modp(x as i128, m)).collect())
            .collect();
        for (j, col) in columns.iter().enumerate() {
            for (i, &x) in col.iter().enumerate() {
                if modp(x as i128 * source[j] as i128, target[i]) != 0 {
                    return Err(Error::InvalidHom(format!(
                        "not well defined: {} * e_{j} is zero but its image has component {i} = {}",
                        source[j],
                        modp(x as i128 * source[j] as i128, target[i])
                    )));
                }
            }
        }
        Ok(Self { source, target, columns })
    }

    /// From a row-major integer matrix (`rows = target rank`, `cols = source rank`).
    pub fn from_matrix(source: Vec<i64>, target: Vec<i64>, matrix: &[Vec<i64>]) -> Result<Self> {
        if matrix.len() != target.len() || matrix.iter().any(|r| r.len() != source.len()) {
            return Err(Error::InvalidHom(format!(
                "expected a {}x{} matrix",
                target.len(),
                source.len()
            )));
        }
        let columns = (0..source.len()).map(|j| matrix.iter().map(|r| r[j]).collect()).collect();
        Self::new(source, target, columns)
    }

    pub fn source(&self) -> &[i64] {
        &self.source
    }

    pub fn target(&self) -> &[i64] {
        &self.target
    }

    pub fn columns(&self) -> &[Vec<i64>] {
        &self.columns
    }

    /// Row-major matrix.
    pub fn matrix(&self) -> Vec<Vec<i64>> {
        (0..self.target.len())
            .map(|i| self.columns.iter().map(|c| c[i]).collect())
            .collect()
    }

    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        let mut out = vec![0i128; self.target.len()];
        for (j, &xj) in x.iter().enumerate() {
            if xj == 0 {
                continue;
            }
            for (o, &c) in out.iter_mut().zip(&self.columns[j]) {
                *o += xj as i128 * c as i128;
            }
        }
        out.iter().zip(&self.target).map(|(&v, &m)| modp(v, m)).collect()
    }

    pub fn compose(&self, inner: &AbelianHom) -> Result<AbelianHom> {
        if inner.target != self.source {
            return Err(Error::InvalidHom("composition of non-matching homomorphisms".into()));
        }
        let columns = inner.columns.iter().map(|c| self.apply(c)).collect();
        AbelianHom::new(inner.source.clone(), self.target.clone(), columns)
    }

    pub fn image(&self) -> Subgroup {
        Subgroup::generated(self.target.clone(), &self.columns)
    }

    pub fn solver(&self) -> HomSolver {
        HomSolver::new(self)
    }

    pub fn kernel(&self) -> Subgroup {
        self.solver().kernel()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.iter().all(|&x| x == 0))
    }
}

/// Echelon form of the graph `{(f(x), x)}` of a homomorphism; gives the
/// kernel and solves `f(x) = y`.
#[derive(Debug, Clone)]
pub struct HomSolver {
    target_rank: usize,
    graph: Subgroup,
}

impl HomSolver {
    pub fn new(f: &AbelianHom) -> Self {
        let m = f.target.len();
        let mut moduli = f.target.clone();
        moduli.extend_from_slice(&f.source);
        let mut graph = Subgroup::zero(moduli);
        let mut v = vec![0; graph.len()];
        for (j, col) in f.columns.iter().enumerate() {
            v[..m].copy_from_slice(col);
            v[m..].iter_mut().for_each(|x| *x = 0);
            v[m + j] = 1;
            graph.insert(&v);
        }
        Self { target_rank: m, graph }
    }

    pub fn kernel(&self) -> Subgroup {
        let m = self.target_rank;
        let n = self.graph.len() - m;
        let moduli = self.graph.moduli[m..].to_vec();
        let rows = (0..n)
            .map(|j| self.graph.rows[m + j].as_ref().map(|r| r[m..].to_vec()))
            .collect();
        Subgroup { moduli, rows }
    }

    /// Some `x` with `f(x) = y`, or `None` if `y` is not in the image.
    pub fn preimage(&self, y: &[i64]) -> Option<Vec<i64>> {
        let m = self.target_rank;
        let g = &self.graph;
        let mut v = vec![0; g.len()];
        for i in 0..m {
            v[i] = modp(y[i] as i128, g.moduli[i]);
        }
        for j in 0..m {
            if v[j] == 0 {
                continue;
            }
            let p = g.pivot(j);
            if v[j] % p != 0 {
                return None;
            }
            let q = v[j] / p;
            match &g.rows[j] {
                Some(row) => {
                    for i in j..g.len() {
                        if row[i] != 0 {
                            v[i] = modp(v[i] as i128 - q as i128 * row[i] as i128, g.moduli[i]);
                        }
                    }
                }
                None => v[j] = 0,
            }
        }
        Some(
            v[m..]
                .iter()
                .zip(&g.moduli[m..])
                .map(|(&x, &d)| modp(-(x as i128), d))
                .collect(),
        )
    }
}

/// The quotient `upper / lower` of two nested subgroups, with invariant
/// factors, generators, and a coordinate map.
#[derive(Debug, Clone)]
pub struct Subquotient {
    upper: Subgroup,
    lower: Subgroup,
    exponent: i64,
    /// Smith diagonal (length `N`); entries equal to 1 are dead coordinates.
    diagonal: Vec<i64>,
    /// `N x N` matrix modulo the exponent sending upper-basis coordinates to Smith coordinates.
    to_smith: Vec<Vec<i64>>,
    /// Ambient vectors generating each nontrivial factor, in factor order.
    generators: Vec<Vec<i64>>,
    live: Vec<usize>,
}

impl Subquotient {
    /// Panics if `lower` is not contained in `upper`; callers construct nested pairs.
    pub fn new(upper: Subgroup, lower: Subgroup) -> Self {
        assert_eq!(upper.moduli, lower.moduli, "subquotient of different ambients");
        debug_assert!(upper.contains_subgroup(&lower), "lower subgroup not contained in upper");
        let n = upper.len();
        let exponent = upper.moduli.iter().fold(1, |acc, &m| lcm(acc, m));
        let relations: Vec<Vec<i64>> = (0..n)
            .map(|j| {
                upper_coordinates(&upper, &lower.row(j), exponent)
                    .expect("lower subgroup contained in upper")
            })
            .collect();
        let smith = smith_mod(relations, n, exponent);
        let live: Vec<usize> = (0..n).filter(|&t| smith.diagonal[t] > 1).collect();
        let generators = live
            .iter()
            .map(|&t| {
                let w = &smith.inverse[t];
                let mut x = vec![0i128; n];
                for (j, &c) in w.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    let row = upper.row(j);
                    for (xi, &r) in x.iter_mut().zip(&row) {
                        *xi += c as i128 * r as i128;
                    }
                }
                let x: Vec<i64> = x.iter().zip(&upper.moduli).map(|(&v, &m)| modp(v, m)).collect();
                lower.reduce(&x)
            })
            .collect();
        Self {
            upper,
            lower,
            exponent,
            diagonal: smith.diagonal,
            to_smith: smith.transform,
            generators,
            live,
        }
    }

    pub fn upper(&self) -> &Subgroup {
        &self.upper
    }

    pub fn lower(&self) -> &Subgroup {
        &self.lower
    }

    /// Invariant factors, each `>= 2`, in divisibility order.
    pub fn factors(&self) -> Vec<i64> {
        self.live.iter().map(|&t| self.diagonal[t]).collect()
    }

    pub fn order(&self) -> u128 {
        self.factors().iter().map(|&f| f as u128).product()
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    /// Coordinates of the class of `x` against [`Self::factors`]; `None` if `x ∉ upper`.
    pub fn coordinates(&self, x: &[i64]) -> Option<Vec<i64>> {
        let c = upper_coordinates(&self.upper, x, self.exponent)?;
        Some(
            self.live
                .iter()
                .map(|&t| {
                    let s: i128 = c
                        .iter()
                        .zip(&self.to_smith)
                        .map(|(&ci, row)| ci as i128 * row[t] as i128)
                        .sum();
                    modp(s, self.diagonal[t])
                })
                .collect(),
        )
    }

    /// Canonical (lexicographically least) representative of a class given by coordinates.
    pub fn element(&self, coords: &[i64]) -> Vec<i64> {
        let n = self.upper.len();
        let mut x = vec![0i128; n];
        for (g, &c) in self.generators.iter().zip(coords) {
            for (xi, &gi) in x.iter_mut().zip(g) {
                *xi += c as i128 * gi as i128;
            }
        }
        let x: Vec<i64> = x.iter().zip(&self.upper.moduli).map(|(&v, &m)| modp(v, m)).collect();
        self.lower.reduce(&x)
    }

    /// Every tuple of coordinates, lexicographically.
    pub fn all_coordinates(&self) -> Vec<Vec<i64>> {
        let g = FiniteAbelianGroup { moduli: self.factors() };
        g.elements().collect()
    }
}

/// Coordinates of `x` in the echelon basis of `upper`, modulo `exponent`.
/// Intermediate coordinates are reduced modulo `exponent * d_i`, which
/// shifts the result only by multiples of `exponent`.
fn upper_coordinates(upper: &Subgroup, x: &[i64], exponent: i64) -> Option<Vec<i64>> {
    let n = upper.len();
    let big: Vec<i64> = upper.moduli.iter().map(|&d| d * exponent).collect();
    let mut r: Vec<i64> = x.iter().zip(&big).map(|(&v, &m)| modp(v as i128, m)).collect();
    let mut coords = vec![0; n];
    for j in 0..n {
        let rj = modp(r[j] as i128, big[j]);
        if rj == 0 {
            continue;
        }
        let p = upper.pivot(j);
        if rj % p != 0 {
            return None;
        }
        let q = rj / p;
        coords[j] = modp(q as i128, exponent);
        let row = upper.row(j);
        for i in j + 1..n {
            if row[i] != 0 {
                r[i] = modp(r[i] as i128 - q as i128 * row[i] as i128, big[i]);
            }
        }
        r[j] = 0;
    }
    Some(coords)
}

struct Smith {
    diagonal: Vec<i64>,
    transform: Vec<Vec<i64>>,
    inverse: Vec<Vec<i64>>,
}

/// Smith normal form of the row lattice `span(relations) + e Z^n`.
fn smith_mod(mut a: Vec<Vec<i64>>, n: usize, e: i64) -> Smith {
    let mut v: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    let mut w = v.clone();
    let mut diagonal = vec![1; n];
    if e == 1 {
        return Smith {
            diagonal,
            transform: v,
            inverse: w,
        };
    }
    for row in a.iter_mut() {
        for x in row.iter_mut() {
            *x = modp(*x as i128, e);
        }
    }
    let mut t = 0;
    while t < n {
        loop {
            // smallest nonzero entry of the lower-right block
            let mut best: Option<(i64, usize, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(t) {
                for (j, &x) in row.iter().enumerate().skip(t) {
                    if x != 0 && best.map_or(true, |(b, _, _)| x < b) {
                        best = Some((x, i, j));
                    }
                }
            }
            let Some((_, bi, bj)) = best else {
                for d in diagonal.iter_mut().skip(t) {
                    *d = e;
                }
                return Smith {
                    diagonal,
                    transform: v,
                    inverse: w,
                };
            };
            a.swap(t, bi);
            if bj != t {
                for row in a.iter_mut() {
                    row.swap(t, bj);
                }
                for row in v.iter_mut() {
                    row.swap(t, bj);
                }
                w.swap(t, bj);
            }
            let p = a[t][t];
            let (g, x, _) = egcd(p, e);
            if g != p {
                // replace (row_t, e e_t) by (x row_t, -(e/g) row_t) modulo e Z^n
                let old = a[t].clone();
                a[t] = old.iter().map(|&c| modp(x as i128 * c as i128, e)).collect();
                a.push(old.iter().map(|&c| modp(-((e / g) as i128) * c as i128, e)).collect());
            }
            let g = a[t][t];
            let mut dirty = false;
            for i in t + 1..a.len() {
                let c = a[i][t];
                if c == 0 {
                    continue;
                }
                let q = c / g;
                if q != 0 {
                    let (head, tail) = a.split_at_mut(i);
                    let (pivot_row, row) = (&head[t], &mut tail[0]);
                    for j in t..n {
                        if pivot_row[j] != 0 {
                            row[j] = modp(row[j] as i128 - q as i128 * pivot_row[j] as i128, e);
                        }
                    }
                }
                if a[i][t] != 0 {
                    dirty = true;
                }
            }
            for j in t + 1..n {
                let c = a[t][j];
                if c == 0 {
                    continue;
                }
                let q = c / g;
                if q != 0 {
                    for row in a.iter_mut() {
                        if row[t] != 0 {
                            row[j] = modp(row[j] as i128 - q as i128 * row[t] as i128, e);
                        }
                    }
                    for row in v.iter_mut() {
                        row[j] = modp(row[j] as i128 - q as i128 * row[t] as i128, e);
                    }
                    let (head, tail) = w.split_at_mut(j);
                    for (wt, &wj) in head[t].iter_mut().zip(&tail[0]) {
                        *wt = modp(*wt as i128 + q as i128 * wj as i128, e);
                    }
                }
                if a[t][j] != 0 {
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // pivot must divide the remaining block
            let offending = (t + 1..a.len()).find(|&i| a[i][t + 1..].iter().any(|&x| x % g != 0));
            match offending {
                Some(i) => {
                    let (head, tail) = a.split_at_mut(i);
                    for (pt, &ri) in head[t].iter_mut().zip(&tail[0]) {
                        *pt = modp(*pt as i128 + ri as i128, e);
                    }
                }
                None => {
                    diagonal[t] = g;
                    break;
                }
            }
        }
        t += 1;
    }
    Smith {
        diagonal,
        transform: v,
        inverse: w,
    }
}

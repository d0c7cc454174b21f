//! Finite groups given by Cayley tables.
//!
//! Elements are indices `0..n` into an ordered label list and every product
//! is a table lookup. Validation is exhaustive: all `n^3` associativity
//! triples are checked, so a group accepted here is a group with certainty.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::error::{check_size, Error, Result};
use crate::Limits;

/// A finite group stored as a multiplication table over element indices.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order())
            .field("labels", &self.labels)
            .finish()
    }
}

/// One violated group axiom together with the elements that witness it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NotSquare { row: usize, len: usize },
    EntryOutOfRange { row: usize, col: usize, value: usize },
    Empty,
    NoIdentity,
    /// Row `row` sends two columns to the same element, so left
    /// multiplication is not a bijection.
    RowNotBijective { row: usize, cols: (usize, usize) },
    ColumnNotBijective { col: usize, rows: (usize, usize) },
    NoInverse { element: usize },
    NonAssociative { triple: (usize, usize, usize) },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotSquare { row, len } => write!(f, "row {row} has length {len}, table is not square"),
            Violation::EntryOutOfRange { row, col, value } => {
                write!(f, "entry [{row}][{col}] = {value} is not an element index (closure)")
            }
            Violation::Empty => write!(f, "empty table"),
            Violation::NoIdentity => write!(f, "no two-sided identity element"),
            Violation::RowNotBijective { row, cols } => write!(
                f,
                "no inverse / not a bijection: row {row} repeats a value at columns {} and {}",
                cols.0, cols.1
            ),
            Violation::ColumnNotBijective { col, rows } => write!(
                f,
                "no inverse / not a bijection: column {col} repeats a value at rows {} and {}",
                rows.0, rows.1
            ),
            Violation::NoInverse { element } => write!(f, "element {element} has no two-sided inverse"),
            Violation::NonAssociative { triple: (a, b, c) } => {
                write!(f, "({a}*{b})*{c} != {a}*({b}*{c})")
            }
        }
    }
}

/// Outcome of [`validate_group`]; an empty violation list means the table is a group.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every group axiom on an index table and reports each violated
/// axiom with its first witness.
pub fn validate_group(table: &[Vec<usize>]) -> ValidationReport {
    let mut violations = Vec::new();
    let n = table.len();
    if n == 0 {
        violations.push(Violation::Empty);
        return ValidationReport { violations };
    }
    for (row, r) in table.iter().enumerate() {
        if r.len() != n {
            violations.push(Violation::NotSquare { row, len: r.len() });
            return ValidationReport { violations };
        }
    }
    for (row, r) in table.iter().enumerate() {
        if let Some((col, &value)) = r.iter().enumerate().find(|(_, &v)| v >= n) {
            violations.push(Violation::EntryOutOfRange { row, col, value });
            return ValidationReport { violations };
        }
    }

    for (row, r) in table.iter().enumerate() {
        let mut seen = vec![usize::MAX; n];
        let mut found = None;
        for (col, &v) in r.iter().enumerate() {
            if seen[v] != usize::MAX {
                found = Some((seen[v], col));
                break;
            }
            seen[v] = col;
        }
        if let Some(cols) = found {
            violations.push(Violation::RowNotBijective { row, cols });
            break;
        }
    }
    'cols: for col in 0..n {
        let mut seen = vec![usize::MAX; n];
        for (row, r) in table.iter().enumerate() {
            let v = r[col];
            if seen[v] != usize::MAX {
                violations.push(Violation::ColumnNotBijective { col, rows: (seen[v], row) });
                break 'cols;
            }
            seen[v] = row;
        }
    }

    let identity = find_identity(table);
    match identity {
        None => violations.push(Violation::NoIdentity),
        Some(e) => {
            for a in 0..n {
                if !(0..n).any(|b| table[a][b] == e && table[b][a] == e) {
                    violations.push(Violation::NoInverse { element: a });
                    break;
                }
            }
        }
    }

    'assoc: for a in 0..n {
        for b in 0..n {
            let ab = table[a][b];
            for c in 0..n {
                if table[ab][c] != table[a][table[b][c]] {
                    violations.push(Violation::NonAssociative { triple: (a, b, c) });
                    break 'assoc;
                }
            }
        }
    }
    ValidationReport { violations }
}

fn find_identity(table: &[Vec<usize>]) -> Option<usize> {
    let n = table.len();
    (0..n).find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
}

/// Recipe for a group: a cyclic group, a dihedral group, a direct product
/// of recipes, or an explicit table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    /// Dihedral group of order `2n`.
    Dihedral(usize),
    Product(Vec<GroupSpec>),
    Table { labels: Vec<String>, table: Vec<Vec<usize>> },
}

/// Builds and validates a group from a [`GroupSpec`] under the default limits.
pub fn build_group(spec: &GroupSpec) -> Result<FiniteGroup> {
    build_group_with(spec, &Limits::default())
}

pub fn build_group_with(spec: &GroupSpec, limits: &Limits) -> Result<FiniteGroup> {
    let g = match spec {
        GroupSpec::Cyclic(n) => {
            if *n == 0 {
                return Err(Error::InvalidGroup("cyclic group of order 0".into()));
            }
            check_size("group order", *n as u128, limits.max_group_order as u128)?;
            FiniteGroup::cyclic(*n)
        }
        GroupSpec::Dihedral(n) => {
            if *n == 0 {
                return Err(Error::InvalidGroup("dihedral group of order 0".into()));
            }
            check_size("group order", 2 * *n as u128, limits.max_group_order as u128)?;
            FiniteGroup::dihedral(*n)
        }
        GroupSpec::Product(parts) => {
            let mut acc = FiniteGroup::trivial();
            for p in parts {
                let g = build_group_with(p, limits)?;
                check_size(
                    "group order",
                    (acc.order() * g.order()) as u128,
                    limits.max_group_order as u128,
                )?;
                acc = if acc.order() == 1 { g } else { acc.direct_product(&g) };
            }
            acc
        }
        GroupSpec::Table { labels, table } => {
            check_size("group order", table.len() as u128, limits.max_group_order as u128)?;
            FiniteGroup::from_table(labels.clone(), table.clone())?
        }
    };
    Ok(g)
}

impl FiniteGroup {
    /// Validates `table` and builds the group. Labels must be distinct and
    /// match the table size.
    pub fn from_table(labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        if labels.len() != table.len() {
            return Err(Error::InvalidGroup(format!(
                "{} labels for a table of size {}",
                labels.len(),
                table.len()
            )));
        }
        let distinct: BTreeSet<&String> = labels.iter().collect();
        if distinct.len() != labels.len() {
            return Err(Error::InvalidGroup("element labels are not distinct".into()));
        }
        let report = validate_group(&table);
        if let Some(v) = report.violations.first() {
            return Err(Error::InvalidGroup(v.to_string()));
        }
        Ok(Self::from_valid_table(labels, table))
    }

    /// Builds from a table already known to satisfy the axioms.
    pub(crate) fn from_valid_table(labels: Vec<String>, table: Vec<Vec<usize>>) -> Self {
        let identity = find_identity(&table).expect("validated table has an identity");
        let n = table.len();
        let inverses = (0..n)
            .map(|a| (0..n).find(|&b| table[a][b] == identity).expect("validated table has inverses"))
            .collect();
        Self {
            labels,
            table,
            identity,
            inverses,
        }
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `Z/n` with elements labelled `0..n`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0);
        let labels = (0..n).map(|i| i.to_string()).collect();
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        Self::from_valid_table(labels, table)
    }

    /// Dihedral group of order `2n`: `r^i` is index `i`, `s r^i` is index `n + i`.
    pub fn dihedral(n: usize) -> Self {
        assert!(n > 0);
        let mut labels: Vec<String> = (0..n).map(|i| format!("r{i}")).collect();
        labels.extend((0..n).map(|i| format!("sr{i}")));
        // (s^a r^i)(s^b r^j) = s^(a+b) r^((-1)^b i + j)
        let idx = |a: usize, i: usize| a * n + i;
        let mut table = vec![vec![0; 2 * n]; 2 * n];
        for a in 0..2 {
            for i in 0..n {
                for b in 0..2 {
                    for j in 0..n {
                        let rot = if b == 0 { (i + j) % n } else { (n - i + j) % n };
                        table[idx(a, i)][idx(b, j)] = idx((a + b) % 2, rot);
                    }
                }
            }
        }
        Self::from_valid_table(labels, table)
    }

    /// Dicyclic group of order `4n` (`n >= 2`); `n = 2` is the quaternion group.
    pub fn dicyclic(n: usize) -> Self {
        assert!(n >= 2);
        let m = 2 * n;
        // elements a^i x^b, a^(2n) = 1, x^2 = a^n, x a x^-1 = a^-1
        let idx = |b: usize, i: usize| b * m + i;
        let mut labels: Vec<String> = (0..m).map(|i| format!("a{i}")).collect();
        labels.extend((0..m).map(|i| format!("a{i}x")));
        let mut table = vec![vec![0; 2 * m]; 2 * m];
        for b1 in 0..2 {
            for i in 0..m {
                for b2 in 0..2 {
                    for j in 0..m {
                        // a^i x^b1 a^j x^b2 = a^(i + (-1)^b1 j) x^(b1 + b2)
                        let mut e = if b1 == 0 { (i + j) % m } else { (i + m - j) % m };
                        let mut b = b1 + b2;
                        if b == 2 {
                            b = 0;
                            e = (e + n) % m;
                        }
                        table[idx(b1, i)][idx(b2, j)] = idx(b, e);
                    }
                }
            }
        }
        Self::from_valid_table(labels, table)
    }

    /// Symmetric group on `n` points, elements in lexicographic order of
    /// their one-line notation; composition is `(p q)(x) = p(q(x))`.
    pub fn symmetric(n: usize) -> Self {
        let perms = permutations(n);
        Self::from_permutations(perms)
    }

    /// Alternating group on `n` points.
    pub fn alternating(n: usize) -> Self {
        let perms = permutations(n).into_iter().filter(|p| parity(p) == 0).collect();
        Self::from_permutations(perms)
    }

    fn from_permutations(perms: Vec<Vec<usize>>) -> Self {
        let pos: HashMap<Vec<usize>, usize> = perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let table = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| {
                        let c: Vec<usize> = q.iter().map(|&x| p[x]).collect();
                        pos[&c]
                    })
                    .collect()
            })
            .collect();
        let labels = perms
            .iter()
            .map(|p| p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(""))
            .collect();
        Self::from_valid_table(labels, table)
    }

    /// Direct product with elements `(a, b)` at index `a * |other| + b`.
    pub fn direct_product(&self, other: &FiniteGroup) -> Self {
        let (n, m) = (self.order(), other.order());
        let mut labels = Vec::with_capacity(n * m);
        for a in &self.labels {
            for b in &other.labels {
                labels.push(format!("({a},{b})"));
            }
        }
        let table = (0..n * m)
            .map(|x| {
                (0..n * m)
                    .map(|y| self.table[x / m][y / m] * m + other.table[x % m][y % m])
                    .collect()
            })
            .collect();
        Self::from_valid_table(labels, table)
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (a..n).all(|b| self.table[a][b] == self.table[b][a]))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != self.identity {
            x = self.table[x][a];
            k += 1;
        }
        k
    }

    /// Sorted multiset of element orders, an isomorphism invariant.
    pub fn order_statistics(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.order()).map(|a| self.element_order(a)).collect();
        v.sort_unstable();
        v
    }

    /// Elements of the subgroup generated by `gens`, in increasing index order.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        let mut queue = VecDeque::from([self.identity]);
        seen[self.identity] = true;
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.table[x][g];
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order()).filter(|&i| seen[i]).collect()
    }

    /// A small generating set, chosen greedily by descending element order.
    pub fn generators(&self) -> Vec<usize> {
        let mut by_order: Vec<usize> = (0..self.order()).collect();
        by_order.sort_by_key(|&a| (std::cmp::Reverse(self.element_order(a)), a));
        let mut gens = Vec::new();
        let mut span = vec![self.identity];
        for a in by_order {
            if span.len() == self.order() {
                break;
            }
            if span.binary_search(&a).is_err() {
                gens.push(a);
                span = self.generated(&gens);
            }
        }
        gens
    }

    /// The subgroup on `elements` (which must be closed) as a group in its
    /// own right, with its inclusion.
    pub fn subgroup(self: &Arc<Self>, elements: &[usize]) -> Result<(Arc<FiniteGroup>, GroupHom)> {
        let mut elems: Vec<usize> = elements.to_vec();
        elems.sort_unstable();
        elems.dedup();
        let pos: HashMap<usize, usize> = elems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut table = Vec::with_capacity(elems.len());
        for &a in &elems {
            let mut row = Vec::with_capacity(elems.len());
            for &b in &elems {
                let p = self.mul(a, b);
                match pos.get(&p) {
                    Some(&i) => row.push(i),
                    None => {
                        return Err(Error::InvalidGroup(format!(
                            "subset not closed: {} * {} = {}",
                            self.label(a),
                            self.label(b),
                            self.label(p)
                        )))
                    }
                }
            }
            table.push(row);
        }
        let labels = elems.iter().map(|&e| self.labels[e].clone()).collect();
        let sub = Arc::new(FiniteGroup::from_table(labels, table)?);
        let incl = GroupHom::new(sub.clone(), self.clone(), elems)?;
        Ok((sub, incl))
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn parity(p: &[usize]) -> usize {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    inv % 2
}

/// A homomorphism between finite groups, stored as an index map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHom {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    mapping: Vec<usize>,
}

impl GroupHom {
    pub fn new(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>, mapping: Vec<usize>) -> Result<Self> {
        if mapping.len() != source.order() {
            return Err(Error::InvalidHom(format!(
                "mapping has {} entries for a source of order {}",
                mapping.len(),
                source.order()
            )));
        }
        if let Some(&bad) = mapping.iter().find(|&&m| m >= target.order()) {
            return Err(Error::InvalidHom(format!("image index {bad} out of range")));
        }
        if mapping[source.identity()] != target.identity() {
            return Err(Error::InvalidHom("identity not sent to identity".into()));
        }
        for x in 0..source.order() {
            for y in 0..source.order() {
                if mapping[source.mul(x, y)] != target.mul(mapping[x], mapping[y]) {
                    return Err(Error::InvalidHom(format!(
                        "f({}*{}) != f({})*f({})",
                        source.label(x),
                        source.label(y),
                        source.label(x),
                        source.label(y)
                    )));
                }
            }
        }
        Ok(Self { source, target, mapping })
    }

    pub fn identity(group: Arc<FiniteGroup>) -> Self {
        let mapping = (0..group.order()).collect();
        Self {
            source: group.clone(),
            target: group,
            mapping,
        }
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.mapping[x]
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &GroupHom) -> Result<GroupHom> {
        if inner.target.as_ref() != self.source.as_ref() {
            return Err(Error::InvalidHom("composition of non-matching homomorphisms".into()));
        }
        Ok(GroupHom {
            source: inner.source.clone(),
            target: self.target.clone(),
            mapping: inner.mapping.iter().map(|&x| self.mapping[x]).collect(),
        })
    }

    pub fn is_injective(&self) -> bool {
        let set: BTreeSet<usize> = self.mapping.iter().copied().collect();
        set.len() == self.mapping.len()
    }

    pub fn is_surjective(&self) -> bool {
        let set: BTreeSet<usize> = self.mapping.iter().copied().collect();
        set.len() == self.target.order()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_three_table() {
        let g = build_group(&GroupSpec::Cyclic(3)).unwrap();
        assert_eq!(g.order(), 3);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(g.mul(i, j), (i + j) % 3);
            }
        }
    }

    #[test]
    fn klein_four_from_product() {
        let g = build_group(&GroupSpec::Product(vec![GroupSpec::Cyclic(2), GroupSpec::Cyclic(2)])).unwrap();
        assert_eq!(g.order(), 4);
        for a in 0..4 {
            if a != g.identity() {
                assert_eq!(g.element_order(a), 2);
            }
        }
    }

    #[test]
    fn s3_explicit_table_is_accepted() {
        let s3 = FiniteGroup::symmetric(3);
        let table = s3.table().to_vec();
        // brute-force associativity over all 216 triples, independent of validate_group
        let mut checked = 0;
        for a in 0..6 {
            for b in 0..6 {
                for c in 0..6 {
                    assert_eq!(table[table[a][b]][c], table[a][table[b][c]]);
                    checked += 1;
                }
            }
        }
        assert_eq!(checked, 216);
        let g = build_group(&GroupSpec::Table {
            labels: s3.labels().to_vec(),
            table,
        })
        .unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
    }

    #[test]
    fn z4_validates_clean() {
        let g = FiniteGroup::cyclic(4);
        assert!(validate_group(g.table()).is_valid());
    }

    #[test]
    fn swapped_entry_reports_associativity_triple() {
        let mut t = FiniteGroup::cyclic(4).table().to_vec();
        // swap two entries in row 1 so rows stay bijective but associativity fails
        t[1].swap(2, 3);
        let report = validate_group(&t);
        let triple = report
            .violations
            .iter()
            .find_map(|v| match v {
                Violation::NonAssociative { triple } => Some(*triple),
                _ => None,
            })
            .expect("associativity violation");
        let (a, b, c) = triple;
        assert_ne!(t[t[a][b]][c], t[a][t[b][c]]);
    }

    #[test]
    fn duplicate_row_entry_reports_bijection_failure() {
        let mut t = FiniteGroup::cyclic(3).table().to_vec();
        t[1] = vec![1, 1, 0];
        let report = validate_group(&t);
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::RowNotBijective { row: 1, .. })));
        assert!(report.violations[0].to_string().contains("not a bijection"));
    }

    #[test]
    fn out_of_range_and_ragged_tables() {
        assert!(matches!(
            validate_group(&[vec![0, 1], vec![1]]).violations[0],
            Violation::NotSquare { row: 1, .. }
        ));
        assert!(matches!(
            validate_group(&[vec![0, 2], vec![1, 0]]).violations[0],
            Violation::EntryOutOfRange { .. }
        ));
    }

    #[test]
    fn order_cap_is_enforced() {
        let limits = Limits {
            max_group_order: 8,
            ..Limits::default()
        };
        let err = build_group_with(&GroupSpec::Cyclic(9), &limits).unwrap_err();
        assert!(err.is_resource());
    }

    #[test]
    fn standard_families_are_groups() {
        for g in [
            FiniteGroup::dihedral(4),
            FiniteGroup::dicyclic(2),
            FiniteGroup::dicyclic(3),
            FiniteGroup::alternating(4),
            FiniteGroup::symmetric(4),
        ] {
            assert!(validate_group(g.table()).is_valid());
        }
        assert_eq!(FiniteGroup::alternating(4).order(), 12);
        // Q8 has a single involution
        let q8 = FiniteGroup::dicyclic(2);
        assert_eq!(q8.order_statistics().iter().filter(|&&o| o == 2).count(), 1);
    }

    #[test]
    fn subgroup_inclusion_is_a_hom() {
        let g = Arc::new(FiniteGroup::cyclic(4));
        let (h, incl) = g.subgroup(&[0, 2]).unwrap();
        assert_eq!(h.order(), 2);
        assert!(incl.is_injective());
        assert!(g.subgroup(&[0, 1]).is_err());
    }

    #[test]
    fn product_order_multiplies() {
        for (a, b) in [(2, 3), (4, 2), (3, 3)] {
            let g = build_group(&GroupSpec::Product(vec![GroupSpec::Cyclic(a), GroupSpec::Cyclic(b)])).unwrap();
            assert_eq!(g.order(), a * b);
        }
    }
}

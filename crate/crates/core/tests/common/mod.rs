//! Test fixtures: small groups, every action on small carriers, and a
//! brute-force cohomology oracle that enumerates cochains directly.

#![allow(dead_code)]

use std::collections::HashSet;
use std::sync::Arc;

use fincohom_core::module::ActionSpec;
use fincohom_core::{build_module, Cochain, FiniteAbelianGroup, FiniteGroup, GModule};

pub fn z(n: usize) -> FiniteGroup {
    FiniteGroup::cyclic(n)
}

pub fn klein() -> FiniteGroup {
    z(2).direct_product(&z(2))
}

/// Groups of order at most `max`, named.
pub fn groups_up_to(max: usize) -> Vec<(String, FiniteGroup)> {
    let mut out: Vec<(String, FiniteGroup)> = (1..=max.min(12)).map(|n| (format!("Z/{n}"), z(n))).collect();
    let more = [
        ("Z/2×Z/2", klein()),
        ("S3", FiniteGroup::symmetric(3)),
        ("D8", FiniteGroup::dihedral(4)),
        ("Q8", FiniteGroup::dicyclic(2)),
        ("Z/2×Z/4", z(2).direct_product(&z(4))),
        ("Z/2×Z/2×Z/2", klein().direct_product(&z(2))),
        ("D10", FiniteGroup::dihedral(5)),
        ("Z/3×Z/3", z(3).direct_product(&z(3))),
        ("D12", FiniteGroup::dihedral(6)),
        ("A4", FiniteGroup::alternating(4)),
        ("Z/2×Z/6", z(2).direct_product(&z(6))),
        ("Dic12", FiniteGroup::dicyclic(3)),
    ];
    out.extend(more.into_iter().filter(|(_, g)| g.order() <= max).map(|(n, g)| (n.to_string(), g)));
    out
}

/// Carriers of order at most `max` among `Z/2, Z/3, Z/4, Z/2×Z/2`.
pub fn carriers_up_to(max: u128) -> Vec<FiniteAbelianGroup> {
    [vec![2], vec![3], vec![4], vec![2, 2]]
        .into_iter()
        .map(|m| FiniteAbelianGroup::new(m).unwrap())
        .filter(|a| a.order() <= max)
        .collect()
}

fn all_matrices(k: usize, bound: i64) -> Vec<Vec<Vec<i64>>> {
    let cells = k * k;
    let total = (bound as usize).pow(cells as u32);
    (0..total)
        .map(|mut idx| {
            let mut m = vec![vec![0; k]; k];
            for c in 0..cells {
                m[c / k][c % k] = (idx % bound as usize) as i64;
                idx /= bound as usize;
            }
            m
        })
        .collect()
}

/// Every action of `g` on `a` by automorphisms, up to equality of the action.
pub fn all_actions(g: &Arc<FiniteGroup>, a: &FiniteAbelianGroup) -> Vec<Arc<GModule>> {
    let gens = g.generators();
    let mats = all_matrices(a.rank(), a.exponent());
    let mut seen: HashSet<Vec<Vec<Vec<i64>>>> = HashSet::new();
    let mut out = Vec::new();
    let combos = mats.len().pow(gens.len() as u32);
    for mut idx in 0..combos {
        let assignment = gens
            .iter()
            .map(|&s| {
                let m = mats[idx % mats.len()].clone();
                idx /= mats.len();
                (s, m)
            })
            .collect();
        if let Ok(m) = build_module(a.clone(), g.clone(), ActionSpec::Generators(assignment)) {
            let key: Vec<_> = (0..g.order()).map(|s| m.matrix(s)).collect();
            if seen.insert(key) {
                out.push(Arc::new(m));
            }
        }
    }
    out
}

/// Every module over groups of order `<= max_g` with carriers of order `<= max_a`.
pub fn all_small_modules(max_g: usize, max_a: u128) -> Vec<(String, Arc<GModule>)> {
    let mut out = Vec::new();
    for (name, g) in groups_up_to(max_g) {
        let g = Arc::new(g);
        for a in carriers_up_to(max_a) {
            for (i, m) in all_actions(&g, &a).into_iter().enumerate() {
                out.push((format!("{name} on {:?} action #{i}", a.moduli()), m));
            }
        }
    }
    out
}

/// Cohomology by enumerating every cochain, with its own bar coboundary.
pub struct Oracle {
    n: usize,
    elems: Vec<Vec<i64>>,
    add: Vec<Vec<usize>>,
    neg: Vec<usize>,
    act: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
}

impl Oracle {
    pub fn new(m: &GModule) -> Self {
        let a = m.carrier();
        let elems: Vec<Vec<i64>> = a.elements().collect();
        let idx = |v: &[i64]| elems.iter().position(|e| e.as_slice() == a.reduce(v).as_slice()).unwrap();
        let add = elems.iter().map(|x| elems.iter().map(|y| idx(&a.add(x, y))).collect()).collect();
        let neg = elems.iter().map(|x| idx(&a.neg(x))).collect();
        let g = m.group();
        let n = g.order();
        let act = (0..n).map(|s| elems.iter().map(|x| idx(&m.act(s, x))).collect()).collect();
        let mul = (0..n).map(|s| (0..n).map(|t| g.mul(s, t)).collect()).collect();
        Self {
            n,
            elems,
            add,
            neg,
            act,
            mul,
        }
    }

    fn tuples(&self, degree: usize) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for _ in 0..degree {
            out = out
                .into_iter()
                .flat_map(|t| {
                    (0..self.n).map(move |s| {
                        let mut u = t.clone();
                        u.push(s);
                        u
                    })
                })
                .collect();
        }
        out
    }

    fn index(&self, t: &[usize]) -> usize {
        t.iter().fold(0, |acc, &s| acc * self.n + s)
    }

    /// `d f` where `f` lists carrier-element indices per tuple.
    pub fn coboundary(&self, f: &[usize], degree: usize) -> Vec<usize> {
        self.tuples(degree + 1)
            .iter()
            .map(|t| {
                let mut acc = self.act[t[0]][f[self.index(&t[1..])]];
                for i in 0..degree {
                    let mut merged: Vec<usize> = t[..i].to_vec();
                    merged.push(self.mul[t[i]][t[i + 1]]);
                    merged.extend_from_slice(&t[i + 2..]);
                    let v = f[self.index(&merged)];
                    let v = if i % 2 == 0 { self.neg[v] } else { v };
                    acc = self.add[acc][v];
                }
                let v = f[self.index(&t[..degree])];
                let v = if degree % 2 == 0 { self.neg[v] } else { v };
                self.add[acc][v]
            })
            .collect()
    }

    fn all_cochains(&self, degree: usize) -> Vec<Vec<usize>> {
        let len = self.n.pow(degree as u32);
        let q = self.elems.len();
        let total = q.pow(len as u32);
        (0..total)
            .map(|mut idx| {
                (0..len)
                    .map(|_| {
                        let v = idx % q;
                        idx /= q;
                        v
                    })
                    .collect()
            })
            .collect()
    }

    pub fn cocycles(&self, degree: usize) -> Vec<Vec<usize>> {
        self.all_cochains(degree)
            .into_iter()
            .filter(|f| self.coboundary(f, degree).iter().all(|&v| v == 0))
            .collect()
    }

    pub fn coboundaries(&self, degree: usize) -> HashSet<Vec<usize>> {
        if degree == 0 {
            return HashSet::from([vec![0]]);
        }
        self.all_cochains(degree - 1)
            .iter()
            .map(|h| self.coboundary(h, degree - 1))
            .collect()
    }

    /// The same cochain as a library value.
    pub fn to_cochain(&self, m: &Arc<GModule>, f: &[usize], degree: usize) -> Cochain {
        Cochain::from_fn(m.clone(), degree, |t| self.elems[f[self.index(t)]].clone())
    }

    pub fn from_cochain(&self, c: &Cochain) -> Vec<usize> {
        self.tuples(c.degree())
            .iter()
            .map(|t| self.elems.iter().position(|e| e.as_slice() == c.value(t)).unwrap())
            .collect()
    }

    fn times(&self, k: usize, f: &[usize]) -> Vec<usize> {
        f.iter()
            .map(|&v| (0..k).fold(0, |acc, _| self.add[acc][v]))
            .collect()
    }

    /// Invariant factors of `H^degree`, read off the counts `|H[k]|`.
    pub fn factors(&self, degree: usize) -> Vec<i64> {
        let z = self.cocycles(degree);
        let b = self.coboundaries(degree);
        let order = z.len() / b.len();
        let torsion = |k: usize| z.iter().filter(|f| b.contains(&self.times(k, f))).count() / b.len();
        let counts: Vec<usize> = (1..=order).map(torsion).collect();
        let matching: Vec<Vec<i64>> = factor_lists(order as i64)
            .into_iter()
            .filter(|fs| {
                (1..=order).all(|k| fs.iter().map(|&f| gcd(k as i64, f)).product::<i64>() as usize == counts[k - 1])
            })
            .collect();
        assert_eq!(matching.len(), 1, "torsion counts determine the group");
        matching.into_iter().next().unwrap()
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// All chains `f_1 | f_2 | ... ` with every `f_i > 1` and product `order`.
pub fn factor_lists(order: i64) -> Vec<Vec<i64>> {
    fn go(rest: i64, acc: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if rest == 1 {
            out.push(acc.clone());
            return;
        }
        // the next factor is a multiple of the previous one and divides what is left
        for f in 2..=rest {
            if rest % f == 0 && acc.last().map_or(true, |&p| f % p == 0) {
                acc.push(f);
                go(rest / f, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(order, &mut Vec::new(), &mut out);
    out
}

//! Chevalley–Eilenberg cohomology `H^n(L, V)` of a finite-dimensional Lie
//! algebra over the rationals.
//!
//! Cochains in degree `n` are alternating maps `L^n -> V`, stored on the
//! basis `e_I ⊗ v_a` with `I` running over increasing index sets in
//! lexicographic order (outer) and `a` over the basis of `V` (inner). The
//! differential is
//!
//! ```text
//! dω(x_0..x_n) = Σ_i (-1)^i ρ(x_i) ω(..x̂_i..)
//!              + Σ_{i<j} (-1)^(i+j) ω([x_i, x_j], ..x̂_i..x̂_j..)
//! ```

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{int, Q};

pub type Matrix = Vec<Vec<Q>>;

/// Structure constants `[e_i, e_j] = Σ_k c[i][j][k] e_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    c: Vec<Vec<Vec<Q>>>,
}

impl LieAlgebra {
    /// Validates antisymmetry and the Jacobi identity.
    pub fn new(c: Vec<Vec<Vec<Q>>>) -> Result<Self> {
        let dim = c.len();
        if c.iter().any(|r| r.len() != dim || r.iter().any(|v| v.len() != dim)) {
            return Err(Error::InvalidLie("structure constants must be dim × dim × dim".into()));
        }
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    if c[i][j][k] != -c[j][i][k].clone() {
                        return Err(Error::InvalidLie(format!(
                            "antisymmetry fails: c[{i}][{j}][{k}] != -c[{j}][{i}][{k}]"
                        )));
                    }
                }
            }
        }
        let alg = Self { dim, c };
        for i in 0..dim {
            for j in i + 1..dim {
                for k in j + 1..dim {
                    let (x, y, z) = (alg.basis(i), alg.basis(j), alg.basis(k));
                    let a = alg.bracket(&x, &alg.bracket(&y, &z));
                    let b = alg.bracket(&y, &alg.bracket(&z, &x));
                    let cc = alg.bracket(&z, &alg.bracket(&x, &y));
                    if a.iter().zip(&b).zip(&cc).any(|((p, q), r)| !(p + q + r).is_zero()) {
                        return Err(Error::InvalidLie(format!("Jacobi identity fails at ({i}, {j}, {k})")));
                    }
                }
            }
        }
        Ok(alg)
    }

    pub fn abelian(dim: usize) -> Self {
        Self {
            dim,
            c: vec![vec![vec![Q::zero(); dim]; dim]; dim],
        }
    }

    /// Basis `h, e, f` with `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h`.
    pub fn sl2() -> Self {
        build_lie_algebra(3, &[((0, 1), vec![(1, int(2))]), ((0, 2), vec![(2, int(-2))]), ((1, 2), vec![(0, int(1))])])
            .expect("sl2 is a Lie algebra")
    }

    /// Basis `x, y, z` with `[x,y] = z`.
    pub fn heisenberg() -> Self {
        build_lie_algebra(3, &[((0, 1), vec![(2, int(1))])]).expect("the Heisenberg algebra is a Lie algebra")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constants(&self) -> &[Vec<Vec<Q>>] {
        &self.c
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Q {
        &self.c[i][j][k]
    }

    fn basis(&self, i: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dim];
        v[i] = Q::one();
        v
    }

    pub fn bracket(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim];
        for i in 0..self.dim {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if y[j].is_zero() {
                    continue;
                }
                let s = &x[i] * &y[j];
                for k in 0..self.dim {
                    if !self.c[i][j][k].is_zero() {
                        out[k] += &s * &self.c[i][j][k];
                    }
                }
            }
        }
        out
    }
}

/// Builds from sparse entries `((i, j), [(k, c)])` meaning `[e_i, e_j] ∋ c·e_k`.
/// Entries for `(j, i)` are filled in by antisymmetry; an explicit entry for
/// both orders must agree with it.
pub fn build_lie_algebra(dim: usize, entries: &[((usize, usize), Vec<(usize, Q)>)]) -> Result<LieAlgebra> {
    let mut c = vec![vec![vec![Q::zero(); dim]; dim]; dim];
    let mut set = vec![vec![vec![false; dim]; dim]; dim];
    for ((i, j), terms) in entries {
        let (i, j) = (*i, *j);
        if i >= dim || j >= dim {
            return Err(Error::InvalidLie(format!("bracket index ({i}, {j}) out of range")));
        }
        for (k, q) in terms {
            let k = *k;
            if k >= dim {
                return Err(Error::InvalidLie(format!("basis index {k} out of range")));
            }
            if i == j && !q.is_zero() {
                return Err(Error::InvalidLie(format!("antisymmetry fails: [e{i}, e{i}] has e{k} coefficient {q}")));
            }
            for (a, b, v) in [(i, j, q.clone()), (j, i, -q.clone())] {
                if set[a][b][k] && c[a][b][k] != v {
                    return Err(Error::InvalidLie(format!(
                        "antisymmetry fails: inconsistent constants for ({i}, {j}) at e{k}"
                    )));
                }
                c[a][b][k] = v;
            }
            set[i][j][k] = true;
        }
    }
    LieAlgebra::new(c)
}

/// A representation `ρ: L -> gl(V)` given on the basis of `L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieModule {
    dim: usize,
    rep: Vec<Matrix>,
}

impl LieModule {
    /// Checks `ρ([e_i, e_j]) = [ρ(e_i), ρ(e_j)]` on all basis pairs.
    pub fn new(alg: &LieAlgebra, dim: usize, rep: Vec<Matrix>) -> Result<Self> {
        if rep.len() != alg.dim || rep.iter().any(|m| m.len() != dim || m.iter().any(|r| r.len() != dim)) {
            return Err(Error::InvalidLie(format!(
                "need {} matrices of size {dim} × {dim}",
                alg.dim
            )));
        }
        for i in 0..alg.dim {
            for j in i + 1..alg.dim {
                let mut lhs = vec![vec![Q::zero(); dim]; dim];
                for k in 0..alg.dim {
                    let c = &alg.c[i][j][k];
                    if !c.is_zero() {
                        for (lr, rr) in lhs.iter_mut().zip(&rep[k]) {
                            for (x, y) in lr.iter_mut().zip(rr) {
                                *x += c * y;
                            }
                        }
                    }
                }
                let ab = mat_mul(&rep[i], &rep[j]);
                let ba = mat_mul(&rep[j], &rep[i]);
                let ok = (0..dim).all(|r| (0..dim).all(|s| lhs[r][s] == &ab[r][s] - &ba[r][s]));
                if !ok {
                    return Err(Error::InvalidLie(format!("not a representation at basis pair ({i}, {j})")));
                }
            }
        }
        Ok(Self { dim, rep })
    }

    pub fn trivial(alg: &LieAlgebra, dim: usize) -> Self {
        Self {
            dim,
            rep: vec![vec![vec![Q::zero(); dim]; dim]; alg.dim],
        }
    }

    /// `ρ(e_i) e_j = [e_i, e_j]`.
    pub fn adjoint(alg: &LieAlgebra) -> Self {
        let n = alg.dim;
        let rep = (0..n)
            .map(|i| (0..n).map(|k| (0..n).map(|j| alg.c[i][j][k].clone()).collect()).collect())
            .collect();
        Self { dim: n, rep }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rep(&self) -> &[Matrix] {
        &self.rep
    }

    /// `{v : ρ(x)v = 0 for all x}`, as a basis.
    pub fn invariants(&self) -> Vec<Vec<Q>> {
        let stacked: Matrix = self.rep.iter().flatten().cloned().collect();
        nullspace(&stacked, self.dim)
    }
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| row.iter().zip(b).map(|(x, r)| x * &r[j]).sum())
                .collect()
        })
        .collect()
}

/// Increasing `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Matrix of `d: C^n -> C^(n+1)`, rows indexed by the degree `n+1` basis.
pub fn ce_differential(alg: &LieAlgebra, module: &LieModule, n: usize) -> Result<Matrix> {
    if n > alg.dim {
        return Err(Error::DegreeOutOfRange { degree: n, max: alg.dim });
    }
    let m = module.dim;
    let src = subsets(alg.dim, n);
    let dst = subsets(alg.dim, n + 1);
    let index: HashMap<&Vec<usize>, usize> = src.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut d = vec![vec![Q::zero(); src.len() * m]; dst.len() * m];
    // position of a sorted subset with sign, or None if it repeats an index
    let place = |k: usize, rest: &[usize]| -> Option<(usize, i64)> {
        if rest.contains(&k) {
            return None;
        }
        let pos = rest.iter().filter(|&&r| r < k).count();
        let mut s = rest.to_vec();
        s.insert(pos, k);
        Some((index[&s], if pos % 2 == 0 { 1 } else { -1 }))
    };
    for (row, xs) in dst.iter().enumerate() {
        for i in 0..xs.len() {
            let sign_i = if i % 2 == 0 { Q::one() } else { -Q::one() };
            let rest: Vec<usize> = xs.iter().enumerate().filter(|&(p, _)| p != i).map(|(_, &x)| x).collect();
            let col = index[&rest];
            // (-1)^i ρ(x_i) ω(rest): entry ρ(x_i)[a][b] from ω-component b
            let r = &module.rep[xs[i]];
            for a in 0..m {
                for b in 0..m {
                    if !r[a][b].is_zero() {
                        d[row * m + a][col * m + b] += &sign_i * &r[a][b];
                    }
                }
            }
            for j in i + 1..xs.len() {
                let sign = if (i + j) % 2 == 0 { Q::one() } else { -Q::one() };
                let rest2: Vec<usize> = xs
                    .iter()
                    .enumerate()
                    .filter(|&(p, _)| p != i && p != j)
                    .map(|(_, &x)| x)
                    .collect();
                for k in 0..alg.dim {
                    let c = &alg.c[xs[i]][xs[j]][k];
                    if c.is_zero() {
                        continue;
                    }
                    if let Some((col, s)) = place(k, &rest2) {
                        let coeff = &sign * c * int(s);
                        for a in 0..m {
                            d[row * m + a][col * m + a] += &coeff;
                        }
                    }
                }
            }
        }
    }
    Ok(d)
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(m: &mut Matrix, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pr = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pr) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    pivots
}

pub fn rank(m: &Matrix, cols: usize) -> usize {
    rref(&mut m.clone(), cols).len()
}

/// Basis of `{x : Mx = 0}`.
pub fn nullspace(m: &Matrix, cols: usize) -> Vec<Vec<Q>> {
    let mut a = m.clone();
    let pivots = rref(&mut a, cols);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Q::zero(); cols];
            v[free] = Q::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -a[r][free].clone();
            }
            v
        })
        .collect()
}

/// `H^n(L, V)`: its dimension and cocycles whose classes form a basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieCohomology {
    pub degree: usize,
    pub dim: usize,
    pub cochain_dim: usize,
    /// Coordinates on the cochain basis `e_I ⊗ v_a`.
    #[serde(with = "vec_of_q")]
    pub representatives: Vec<Vec<Q>>,
}

mod vec_of_q {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::rational::{format, parse, Q};

    pub fn serialize<S: Serializer>(v: &[Vec<Q>], s: S) -> Result<S::Ok, S::Error> {
        let strings: Vec<Vec<String>> = v.iter().map(|r| r.iter().map(format).collect()).collect();
        strings.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Q>>, D::Error> {
        Vec::<Vec<String>>::deserialize(d)?
            .iter()
            .map(|r| r.iter().map(|x| parse(x).map_err(serde::de::Error::custom)).collect())
            .collect()
    }
}

pub fn ce_cohomology(alg: &LieAlgebra, module: &LieModule, n: usize) -> Result<LieCohomology> {
    if n > alg.dim {
        return Err(Error::DegreeOutOfRange { degree: n, max: alg.dim });
    }
    let cdim = subsets(alg.dim, n).len() * module.dim;
    let d = ce_differential(alg, module, n)?;
    let kernel = nullspace(&d, cdim);
    let mut span: Matrix = if n == 0 {
        Vec::new()
    } else {
        let prev = ce_differential(alg, module, n - 1)?;
        let pcols = prev.first().map_or(0, Vec::len);
        // columns of d^(n-1) as vectors in C^n
        (0..pcols).map(|j| prev.iter().map(|r| r[j].clone()).collect()).collect()
    };
    let mut base_rank = rank(&span, cdim);
    let mut representatives = Vec::new();
    for v in kernel {
        span.push(v.clone());
        let r = rank(&span, cdim);
        if r > base_rank {
            base_rank = r;
            representatives.push(v);
        } else {
            span.pop();
        }
    }
    Ok(LieCohomology {
        degree: n,
        dim: representatives.len(),
        cochain_dim: cdim,
        representatives,
    })
}

/// `dim H^n` for `n = 0..=dim L`.
pub fn betti_numbers(alg: &LieAlgebra, module: &LieModule) -> Result<Vec<usize>> {
    (0..=alg.dim).map(|n| ce_cohomology(alg, module, n).map(|h| h.dim)).collect()
}

/// `d^(n+1) ∘ d^n = 0` for every degree.
pub fn differential_squares_to_zero(alg: &LieAlgebra, module: &LieModule) -> Result<bool> {
    for n in 0..alg.dim {
        let d0 = ce_differential(alg, module, n)?;
        let d1 = ce_differential(alg, module, n + 1)?;
        if mat_mul(&d1, &d0).iter().flatten().any(|x| !x.is_zero()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Both sides of `Σ (-1)^n dim H^n = Σ (-1)^n dim C^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerCheck {
    pub from_cohomology: i64,
    pub from_cochains: i64,
}

pub fn euler_characteristic(alg: &LieAlgebra, module: &LieModule) -> Result<EulerCheck> {
    let betti = betti_numbers(alg, module)?;
    let alt = |n: usize, x: usize| if n % 2 == 0 { x as i64 } else { -(x as i64) };
    Ok(EulerCheck {
        from_cohomology: betti.iter().enumerate().map(|(n, &b)| alt(n, b)).sum(),
        from_cochains: (0..=alg.dim).map(|n| alt(n, subsets(alg.dim, n).len() * module.dim)).sum(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abelian_plane() {
        let l = LieAlgebra::abelian(2);
        let v = LieModule::trivial(&l, 1);
        assert_eq!(betti_numbers(&l, &v).unwrap(), vec![1, 2, 1]);
    }

    #[test]
    fn sl2_trivial_and_adjoint() {
        let l = LieAlgebra::sl2();
        let v = LieModule::trivial(&l, 1);
        assert_eq!(betti_numbers(&l, &v).unwrap(), vec![1, 0, 0, 1]);
        let ad = LieModule::adjoint(&l);
        assert!(differential_squares_to_zero(&l, &ad).unwrap());
        assert_eq!(betti_numbers(&l, &ad).unwrap(), vec![0, 0, 0, 0]);
    }

    #[test]
    fn heisenberg() {
        let l = LieAlgebra::heisenberg();
        let v = LieModule::trivial(&l, 1);
        assert!(differential_squares_to_zero(&l, &v).unwrap());
        assert_eq!(betti_numbers(&l, &v).unwrap(), vec![1, 2, 2, 1]);
        let e = euler_characteristic(&l, &v).unwrap();
        assert_eq!(e.from_cohomology, e.from_cochains);
    }

    #[test]
    fn jacobi_failure_names_triple() {
        // [x,y] = x, [y,z] = y, [z,x] = z: Jacobi fails
        let err = build_lie_algebra(
            3,
            &[((0, 1), vec![(0, int(1))]), ((1, 2), vec![(1, int(1))]), ((2, 0), vec![(2, int(1))])],
        )
        .unwrap_err();
        assert!(err.to_string().contains("(0, 1, 2)"), "{err}");
    }

    #[test]
    fn inconsistent_antisymmetry_rejected() {
        let err = build_lie_algebra(2, &[((0, 1), vec![(0, int(1))]), ((1, 0), vec![(0, int(1))])]).unwrap_err();
        assert!(err.to_string().contains("antisymmetry"));
    }

    #[test]
    fn h0_is_invariants() {
        let l = LieAlgebra::sl2();
        let ad = LieModule::adjoint(&l);
        assert_eq!(ad.invariants().len(), ce_cohomology(&l, &ad, 0).unwrap().dim);
        let h = LieAlgebra::heisenberg();
        let adh = LieModule::adjoint(&h);
        assert_eq!(adh.invariants().len(), 1);
        assert_eq!(ce_cohomology(&h, &adh, 0).unwrap().dim, 1);
    }

    #[test]
    fn bad_representation_rejected() {
        let l = LieAlgebra::heisenberg();
        // ρ(x) = ρ(y) = 0 but ρ(z) = 1 violates ρ([x,y]) = [ρx, ρy]
        let rep = vec![vec![vec![int(0)]], vec![vec![int(0)]], vec![vec![int(1)]]];
        assert!(LieModule::new(&l, 1, rep).is_err());
    }

    #[test]
    fn degree_out_of_range() {
        let l = LieAlgebra::abelian(2);
        assert!(ce_cohomology(&l, &LieModule::trivial(&l, 1), 3).is_err());
    }
}

//! Brute-force isomorphism search and a small catalog of named groups.

use crate::group::FiniteGroup;

/// Searches for an isomorphism `a -> b`, returned as an index map.
///
/// Generator images are chosen by backtracking among elements of equal
/// order; each partial assignment is extended along right multiplication
/// and abandoned on the first inconsistency.
pub fn find_isomorphism(a: &FiniteGroup, b: &FiniteGroup) -> Option<Vec<usize>> {
    if a.order() != b.order() || a.order_statistics() != b.order_statistics() {
        return None;
    }
    let gens = a.generators();
    let b_orders: Vec<usize> = (0..b.order()).map(|x| b.element_order(x)).collect();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| {
            let o = a.element_order(g);
            (0..b.order()).filter(|&y| b_orders[y] == o).collect()
        })
        .collect();
    let mut images = Vec::with_capacity(gens.len());
    search(a, b, &gens, &candidates, &mut images)
}

fn search(
    a: &FiniteGroup,
    b: &FiniteGroup,
    gens: &[usize],
    candidates: &[Vec<usize>],
    images: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    let k = images.len();
    let map = extend(a, b, &gens[..k], images)?;
    if k == gens.len() {
        return if map.iter().all(|m| m.is_some()) && is_bijective(&map) {
            Some(map.into_iter().map(|m| m.unwrap()).collect())
        } else {
            None
        };
    }
    for &y in &candidates[k] {
        images.push(y);
        if let Some(found) = search(a, b, gens, candidates, images) {
            return Some(found);
        }
        images.pop();
    }
    None
}

/// Extends generator images to the generated subgroup; `None` if the
/// assignment is not consistent with a homomorphism or not injective.
fn extend(a: &FiniteGroup, b: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<Option<usize>>> {
    let mut map = vec![None; a.order()];
    let mut used = vec![false; b.order()];
    map[a.identity()] = Some(b.identity());
    used[b.identity()] = true;
    let mut queue = vec![a.identity()];
    while let Some(x) = queue.pop() {
        let fx = map[x].unwrap();
        for (&g, &fg) in gens.iter().zip(images) {
            let y = a.mul(x, g);
            let fy = b.mul(fx, fg);
            match map[y] {
                Some(v) if v != fy => return None,
                Some(_) => {}
                None => {
                    if used[fy] {
                        return None;
                    }
                    used[fy] = true;
                    map[y] = Some(fy);
                    queue.push(y);
                }
            }
        }
    }
    Some(map)
}

fn is_bijective(map: &[Option<usize>]) -> bool {
    let mut seen = vec![false; map.len()];
    for m in map.iter().flatten() {
        if seen[*m] {
            return false;
        }
        seen[*m] = true;
    }
    seen.iter().all(|&s| s)
}

/// Lists of invariant factors `d1 | d2 | ... | dk` with product `n`, all `>= 2`.
pub fn abelian_types(n: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, last: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 1 {
            let mut v = cur.clone();
            v.reverse();
            out.push(v);
            return;
        }
        // build from the largest factor down; each next factor divides the previous
        for d in (2..=rest).rev() {
            if rest % d == 0 && last % d == 0 {
                cur.push(d);
                rec(rest / d, d, cur, out);
                cur.pop();
            }
        }
    }
    if n == 1 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    // the largest factor must be a multiple of every other, so any d works as a bound
    rec(n, n, &mut Vec::new(), &mut out);
    out.retain(|v| v.windows(2).all(|w| w[1] % w[0] == 0));
    out
}

pub fn abelian_label(factors: &[usize]) -> String {
    if factors.is_empty() {
        return "1".to_string();
    }
    factors.iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join("×")
}

pub fn abelian_group(factors: &[usize]) -> FiniteGroup {
    factors
        .iter()
        .fold(FiniteGroup::trivial(), |acc, &d| {
            if acc.order() == 1 {
                FiniteGroup::cyclic(d)
            } else {
                acc.direct_product(&FiniteGroup::cyclic(d))
            }
        })
}

/// Named groups of order `n`: every abelian type, dihedral and dicyclic
/// groups, `A4`, `S4`, and products of those non-abelian groups with
/// abelian groups. Not a complete classification beyond small orders.
pub fn catalog(n: usize) -> Vec<(String, FiniteGroup)> {
    let mut out: Vec<(String, FiniteGroup)> = abelian_types(n)
        .into_iter()
        .map(|f| (abelian_label(&f), abelian_group(&f)))
        .collect();
    let mut nonabelian = Vec::new();
    for m in 6..=n {
        if n % m != 0 {
            continue;
        }
        if m % 2 == 0 {
            nonabelian.push((format!("D{m}"), FiniteGroup::dihedral(m / 2)));
        }
        if m % 4 == 0 && m >= 8 {
            let name = if m == 8 { "Q8".to_string() } else { format!("Dic{m}") };
            nonabelian.push((name, FiniteGroup::dicyclic(m / 4)));
        }
        if m == 12 {
            nonabelian.push(("A4".into(), FiniteGroup::alternating(4)));
        }
        if m == 24 {
            nonabelian.push(("S4".into(), FiniteGroup::symmetric(4)));
        }
    }
    for (name, g) in nonabelian {
        let k = n / g.order();
        for f in abelian_types(k) {
            if f.is_empty() {
                out.push((name.clone(), g.clone()));
            } else {
                out.push((format!("{name}×{}", abelian_label(&f)), g.direct_product(&abelian_group(&f))));
            }
        }
    }
    out
}

/// Name of the first catalog group isomorphic to `g`, if any.
pub fn identify(g: &FiniteGroup) -> Option<String> {
    catalog(g.order())
        .into_iter()
        .find(|(_, c)| find_isomorphism(g, c).is_some())
        .map(|(name, _)| name)
}

//! Exact predicates on rational polyhedral cones given by generators.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::linalg::{dot, nullspace, primitive_on_ray, rank, rat, Rat};
use crate::lp::{self, Constraint, Relation};

/// Whether `x ∈ pos(gens)`.
pub fn contains(gens: &[Vec<Rat>], x: &[Rat]) -> bool {
    let n = x.len();
    if gens.is_empty() {
        return x.iter().all(|v| v.is_zero());
    }
    let k = gens.len();
    let mut cons = Vec::with_capacity(n + k);
    for j in 0..n {
        cons.push(Constraint::new(gens.iter().map(|g| g[j].clone()).collect(), Relation::Eq, x[j].clone()));
    }
    for i in 0..k {
        let mut e = vec![Rat::zero(); k];
        e[i] = rat(1);
        cons.push(Constraint::new(e, Relation::Ge, Rat::zero()));
    }
    lp::is_feasible(k, &cons)
}

/// Some `w` with `w · g >= 1` for every generator, i.e. the cone is pointed.
pub fn is_strongly_convex(gens: &[Vec<Rat>], n: usize) -> bool {
    let cons: Vec<Constraint> = gens.iter().map(|g| Constraint::new(g.clone(), Relation::Ge, rat(1))).collect();
    lp::is_feasible(n, &cons)
}

/// Every generator spans an extremal ray.
pub fn generators_extremal(gens: &[Vec<Rat>]) -> bool {
    (0..gens.len()).all(|i| {
        let others: Vec<Vec<Rat>> = gens.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, g)| g.clone()).collect();
        !contains(&others, &gens[i])
    })
}

/// All `size`-element subsets of `0..k` in lexicographic order.
pub fn subsets(k: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, k: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..k {
            if k - i < size - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, k, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, k, size, &mut Vec::new(), &mut out);
    out
}

/// Facets of `pos(gens[idx])` as pairs (generator subset, inward normal) in
/// the ambient space. The normal vanishes on the facet and is positive on the
/// remaining generators of the cone.
pub fn facets(gens: &[Vec<Rat>], idx: &[usize]) -> Vec<(Vec<usize>, Vec<Rat>)> {
    let n = gens.first().map_or(0, |g| g.len());
    let own: Vec<Vec<Rat>> = idx.iter().map(|&i| gens[i].clone()).collect();
    let d = rank(&own);
    if d == 0 {
        return Vec::new();
    }
    let mut out: Vec<(Vec<usize>, Vec<Rat>)> = Vec::new();
    if d == 1 {
        return vec![(Vec::new(), own[0].clone())];
    }
    for sub in subsets(idx.len(), d - 1) {
        let rows: Vec<Vec<Rat>> = sub.iter().map(|&s| own[s].clone()).collect();
        if rank(&rows) != d - 1 {
            continue;
        }
        let Some(mut w) = nullspace(&rows, n).into_iter().find(|w| own.iter().any(|g| !dot(w, g).is_zero())) else {
            continue;
        };
        let vals: Vec<Rat> = own.iter().map(|g| dot(&w, g)).collect();
        let pos = vals.iter().any(|v| v.is_positive());
        let neg = vals.iter().any(|v| v.is_negative());
        if pos && neg {
            continue;
        }
        if neg {
            w = w.into_iter().map(|x| -x).collect();
        }
        let facet: Vec<usize> = idx.iter().zip(&vals).filter(|(_, v)| v.is_zero()).map(|(&i, _)| i).collect();
        if !out.iter().any(|(f, _)| *f == facet) {
            out.push((facet, w));
        }
    }
    out.sort();
    out
}

/// All nonempty faces of `pos(gens[idx])`, as generator index sets.
pub fn faces(gens: &[Vec<Rat>], idx: &[usize]) -> Vec<Vec<usize>> {
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut stack = vec![idx.to_vec()];
    while let Some(f) = stack.pop() {
        if f.is_empty() || !seen.insert(f.clone()) {
            continue;
        }
        for (g, _) in facets(gens, &f) {
            stack.push(g);
        }
    }
    let mut out: Vec<Vec<usize>> = seen.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    out
}

/// Primitive generators of the extremal rays of the pointed cone
/// `{x : w · x >= 0 for every w in normals}`, sorted.
pub fn extreme_rays(normals: &[Vec<Rat>], n: usize) -> Vec<Vec<BigInt>> {
    let mut out: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    if n == 1 {
        for s in [1, -1] {
            let x = vec![rat(s)];
            if normals.iter().all(|w| !dot(w, &x).is_negative()) {
                out.insert(vec![BigInt::from(s)]);
            }
        }
        return out.into_iter().collect();
    }
    for sub in subsets(normals.len(), n - 1) {
        let rows: Vec<Vec<Rat>> = sub.iter().map(|&s| normals[s].clone()).collect();
        if rank(&rows) != n - 1 {
            continue;
        }
        let line = nullspace(&rows, n).remove(0);
        for dir in [line.clone(), line.iter().map(|x| -x.clone()).collect()] {
            if normals.iter().all(|w| !dot(w, &dir).is_negative()) {
                out.insert(primitive_on_ray(&dir));
            }
        }
    }
    out.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> Vec<Rat> {
        x.iter().map(|&a| rat(a)).collect()
    }

    #[test]
    fn square_cone_faces() {
        let gens = vec![v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[1, 0, 1]), v(&[0, 1, 1])];
        let f = faces(&gens, &[0, 1, 2, 3]);
        // 4 rays, 4 two-dimensional faces, the cone itself
        assert_eq!(f.len(), 9);
        assert_eq!(facets(&gens, &[0, 1, 2, 3]).len(), 4);
        assert!(generators_extremal(&gens));
        assert!(is_strongly_convex(&gens, 3));
    }

    #[test]
    fn containment() {
        let gens = vec![v(&[1, 0]), v(&[-1, 2])];
        assert!(contains(&gens, &v(&[0, 1])));
        assert!(!contains(&gens, &v(&[0, -1])));
        assert!(!is_strongly_convex(&[v(&[1, 0]), v(&[-1, 0])], 2));
    }

    #[test]
    fn quadrant_extreme_rays() {
        let normals = vec![v(&[1, 0]), v(&[0, 1]), v(&[1, 1])];
        let r = extreme_rays(&normals, 2);
        assert_eq!(r.len(), 2);
    }
}

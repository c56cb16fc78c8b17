//! Bounded rational polytopes kept in both representations at once: an
//! inequality list and the vertex set, with the tight inequalities of every
//! vertex. Cutting by a halfspace updates both sides exactly, which is all
//! the face enumeration in this crate needs.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::linalg::{ceil_rat, dot, floor_rat, inverse, mat_vec, rank, to_rat, Rat};

/// `a · x <= b`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Halfspace {
    pub a: Vec<Rat>,
    pub b: Rat,
}

#[derive(Clone, Debug)]
pub struct Polytope {
    n: usize,
    ineqs: Vec<Halfspace>,
    vertices: Vec<Vec<Rat>>,
    tight: Vec<Vec<usize>>,
}

impl Polytope {
    /// `{x : lo_i <= ⟨p_i, x⟩ <= hi_i}` for linearly independent rows `p_i`.
    pub fn parallelepiped(p: &[Vec<Rat>], lo: &[Rat], hi: &[Rat]) -> Option<Polytope> {
        let n = p.len();
        let inv = inverse(p)?;
        let mut ineqs = Vec::with_capacity(2 * n);
        for i in 0..n {
            ineqs.push(Halfspace { a: p[i].clone(), b: hi[i].clone() });
            ineqs.push(Halfspace { a: p[i].iter().map(|x| -x.clone()).collect(), b: -lo[i].clone() });
        }
        let mut out = Polytope { n, ineqs, vertices: Vec::new(), tight: Vec::new() };
        for mask in 0u32..(1 << n) {
            let s: Vec<Rat> = (0..n).map(|i| if mask >> i & 1 == 1 { hi[i].clone() } else { lo[i].clone() }).collect();
            let x = mat_vec(&inv, &s);
            if out.vertices.contains(&x) {
                continue;
            }
            let t = out.tight_at(&x);
            out.vertices.push(x);
            out.tight.push(t);
        }
        Some(out)
    }

    /// The axis-parallel box `[lo, hi]`.
    pub fn cube(lo: &[Rat], hi: &[Rat]) -> Polytope {
        let n = lo.len();
        let id: Vec<Vec<Rat>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Rat::from_integer(1.into()) } else { Rat::zero() }).collect())
            .collect();
        Self::parallelepiped(&id, lo, hi).expect("identity is invertible")
    }

    fn tight_at(&self, x: &[Rat]) -> Vec<usize> {
        self.ineqs.iter().enumerate().filter(|(_, h)| dot(&h.a, x) == h.b).map(|(i, _)| i).collect()
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[Vec<Rat>] {
        &self.vertices
    }

    pub fn ineqs(&self) -> &[Halfspace] {
        &self.ineqs
    }

    fn common_tight(&self, u: usize, v: usize) -> Vec<usize> {
        let tv = &self.tight[v];
        self.tight[u].iter().copied().filter(|i| tv.binary_search(i).is_ok()).collect()
    }

    fn normals_rank(&self, idx: &[usize]) -> usize {
        let rows: Vec<Vec<Rat>> = idx.iter().map(|&i| self.ineqs[i].a.clone()).collect();
        rank(&rows)
    }

    /// Vertex pairs spanning an edge.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.vertices.len() {
            for v in u + 1..self.vertices.len() {
                if self.normals_rank(&self.common_tight(u, v)) + 1 == self.n {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Intersect with `a · x <= b`; `None` if the result is empty.
    pub fn cut(&self, a: &[Rat], b: &Rat) -> Option<Polytope> {
        let vals: Vec<Rat> = self.vertices.iter().map(|v| dot(a, v) - b).collect();
        if vals.iter().all(|x| x.is_positive()) {
            return None;
        }
        let new_idx = self.ineqs.len();
        let mut ineqs = self.ineqs.clone();
        ineqs.push(Halfspace { a: a.to_vec(), b: b.clone() });
        let mut vertices = Vec::new();
        let mut tight = Vec::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if vals[i].is_positive() {
                continue;
            }
            let mut t = self.tight[i].clone();
            if vals[i].is_zero() {
                t.push(new_idx);
            }
            vertices.push(v.clone());
            tight.push(t);
        }
        if vals.iter().any(|x| x.is_positive()) && vals.iter().any(|x| x.is_negative()) {
            for (u, v) in self.edges() {
                let (inside, outside) = match (vals[u].is_negative(), vals[v].is_positive(), vals[v].is_negative(), vals[u].is_positive()) {
                    (true, true, _, _) => (u, v),
                    (_, _, true, true) => (v, u),
                    _ => continue,
                };
                let t = &vals[inside] / (&vals[inside] - &vals[outside]);
                let p: Vec<Rat> = self.vertices[inside]
                    .iter()
                    .zip(&self.vertices[outside])
                    .map(|(x, y)| x + &t * (y - x))
                    .collect();
                if vertices.contains(&p) {
                    continue;
                }
                let mut tt = self.common_tight(inside, outside);
                tt.push(new_idx);
                vertices.push(p);
                tight.push(tt);
            }
        }
        Some(Polytope { n: self.n, ineqs, vertices, tight })
    }

    /// Intersect with the hyperplane `a · x = b`.
    pub fn cut_equal(&self, a: &[Rat], b: &Rat) -> Option<Polytope> {
        let neg: Vec<Rat> = a.iter().map(|x| -x.clone()).collect();
        self.cut(a, b)?.cut(&neg, &-b.clone())
    }

    /// Intersect with `lo <= a · x <= hi` (either side optional).
    pub fn cut_range(&self, a: &[Rat], lo: Option<&Rat>, hi: Option<&Rat>) -> Option<Polytope> {
        let mut p = self.clone();
        if let Some(h) = hi {
            p = p.cut(a, h)?;
        }
        if let Some(l) = lo {
            let neg: Vec<Rat> = a.iter().map(|x| -x.clone()).collect();
            p = p.cut(&neg, &-l.clone())?;
        }
        Some(p)
    }

    /// The polytope moved by `t`.
    pub fn translate(&self, t: &[Rat]) -> Polytope {
        Polytope {
            n: self.n,
            ineqs: self.ineqs.iter().map(|h| Halfspace { a: h.a.clone(), b: &h.b + dot(&h.a, t) }).collect(),
            vertices: self.vertices.iter().map(|v| v.iter().zip(t).map(|(x, y)| x + y).collect()).collect(),
            tight: self.tight.clone(),
        }
    }

    /// Vertices (as points) of the facet with the given vertex indices.
    pub fn face_points(&self, idx: &[usize]) -> Vec<Vec<Rat>> {
        idx.iter().map(|&i| self.vertices[i].clone()).collect()
    }

    /// Minimum and maximum of `a · x`.
    pub fn range_of(&self, a: &[Rat]) -> (Rat, Rat) {
        let mut vals = self.vertices.iter().map(|v| dot(a, v));
        let first = vals.next().expect("polytope has a vertex");
        vals.fold((first.clone(), first), |(lo, hi), x| {
            let lo = if x < lo { x.clone() } else { lo };
            let hi = if x > hi { x } else { hi };
            (lo, hi)
        })
    }

    pub fn affine_dim(&self) -> usize {
        affine_dim(&self.vertices)
    }

    /// Vertex centroid; lies in the relative interior.
    pub fn centroid(&self) -> Vec<Rat> {
        centroid(&self.vertices)
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.ineqs.iter().all(|h| dot(&h.a, x) <= h.b)
    }

    /// Facets as sorted vertex-index sets, deduplicated.
    pub fn facets(&self) -> Vec<Vec<usize>> {
        let d = self.affine_dim();
        if d == 0 {
            return Vec::new();
        }
        let mut out: Vec<Vec<usize>> = Vec::new();
        for i in 0..self.ineqs.len() {
            let vs: Vec<usize> = (0..self.vertices.len()).filter(|&v| self.tight[v].contains(&i)).collect();
            if vs.is_empty() || vs.len() == self.vertices.len() || out.contains(&vs) {
                continue;
            }
            let pts: Vec<Vec<Rat>> = vs.iter().map(|&v| self.vertices[v].clone()).collect();
            if affine_dim(&pts) + 1 == d {
                out.push(vs);
            }
        }
        out.sort();
        out
    }

    /// All integer points, by scanning the vertex bounding box.
    pub fn lattice_points(&self) -> Vec<Vec<BigInt>> {
        let lo: Vec<BigInt> = (0..self.n)
            .map(|i| self.vertices.iter().map(|v| ceil_rat(&v[i])).min().expect("vertex"))
            .collect();
        let hi: Vec<BigInt> = (0..self.n)
            .map(|i| self.vertices.iter().map(|v| floor_rat(&v[i])).max().expect("vertex"))
            .collect();
        let mut out = Vec::new();
        if lo.iter().zip(&hi).any(|(l, h)| l > h) {
            return out;
        }
        let mut cur = lo.clone();
        loop {
            let x: Vec<Rat> = cur.iter().map(to_rat).collect();
            if self.contains(&x) {
                out.push(cur.clone());
            }
            let mut i = 0;
            loop {
                if i == self.n {
                    return out;
                }
                if cur[i] < hi[i] {
                    cur[i] += 1;
                    break;
                }
                cur[i] = lo[i].clone();
                i += 1;
            }
        }
    }
}

pub fn affine_dim(points: &[Vec<Rat>]) -> usize {
    let Some(p0) = points.first() else {
        return 0;
    };
    let diffs: Vec<Vec<Rat>> = points[1..].iter().map(|p| p.iter().zip(p0).map(|(a, b)| a - b).collect()).collect();
    rank(&diffs)
}

pub fn centroid(points: &[Vec<Rat>]) -> Vec<Rat> {
    let n = points[0].len();
    let k = Rat::from_integer(BigInt::from(points.len()));
    (0..n)
        .map(|i| points.iter().fold(Rat::zero(), |acc, p| acc + &p[i]) / &k)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn r(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn unit_square_cut_by_diagonal() {
        let sq = Polytope::cube(&r(&[0, 0]), &r(&[1, 1]));
        assert_eq!(sq.vertices().len(), 4);
        assert_eq!(sq.edges().len(), 4);
        let tri = sq.cut(&r(&[1, 1]), &rat(1)).unwrap();
        assert_eq!(tri.vertices().len(), 3);
        assert_eq!(tri.edges().len(), 3);
        assert_eq!(tri.facets().len(), 3);
        let seg = sq.cut_equal(&r(&[1, 1]), &rat(1)).unwrap();
        assert_eq!(seg.affine_dim(), 1);
        assert_eq!(seg.vertices().len(), 2);
        assert!(sq.cut(&r(&[1, 1]), &rat(-1)).is_none());
    }

    #[test]
    fn cube_cut_through_middle() {
        let c = Polytope::cube(&r(&[0, 0, 0]), &r(&[1, 1, 1]));
        assert_eq!(c.edges().len(), 12);
        let half = Rat::new(3.into(), 2.into());
        let hex = c.cut_equal(&r(&[1, 1, 1]), &half).unwrap();
        assert_eq!(hex.vertices().len(), 6);
        assert_eq!(hex.affine_dim(), 2);
        assert_eq!(hex.facets().len(), 6);
    }

    #[test]
    fn lattice_points_of_triangle() {
        // k1, k2 <= 0, k1 + k2 >= -2
        let p = Polytope::cube(&r(&[-2, -2]), &r(&[0, 0])).cut(&r(&[-1, -1]), &rat(2)).unwrap();
        assert_eq!(p.lattice_points().len(), 6);
    }
}

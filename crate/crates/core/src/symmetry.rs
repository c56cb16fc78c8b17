//! The group of lattice automorphisms of `N` that permute the rays.

use std::collections::{BTreeSet, HashMap, VecDeque};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::class_group::{ClassGroup, DivisorClass};
use crate::error::{Error, Result};
use crate::linalg::{inverse, IntMatrix, Rat};
use crate::rays::RayConfig;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RaySymmetry {
    /// `g` acting on `N` (columns are images of the standard basis).
    pub matrix: IntMatrix,
    /// `g(u_ρ) = u_{ray_permutation[ρ]}`
    pub ray_permutation: Vec<usize>,
    /// `g_* = (g⁻¹)ᵀ` acting on `M`.
    pub dual_matrix: IntMatrix,
}

impl RaySymmetry {
    pub fn inverse_permutation(&self) -> Vec<usize> {
        let mut inv = vec![0; self.ray_permutation.len()];
        for (i, &j) in self.ray_permutation.iter().enumerate() {
            inv[j] = i;
        }
        inv
    }

    /// `g_* θ` for a point of `M_ℚ`.
    pub fn act_on_m(&self, theta: &[Rat]) -> Vec<Rat> {
        self.dual_matrix.mul_rat_vec(theta)
    }
}

#[derive(Clone, Debug)]
pub struct RaySymmetryGroup {
    pub elements: Vec<RaySymmetry>,
    pub generators: Vec<usize>,
    index: HashMap<Vec<usize>, usize>,
}

fn symmetry_from_matrix(g: IntMatrix, rays: &RayConfig) -> Option<RaySymmetry> {
    if !g.is_unimodular() {
        return None;
    }
    let mut perm = Vec::with_capacity(rays.len());
    for u in rays.rays() {
        perm.push(rays.position(&g.mul_vec(u))?);
    }
    let dual = g.inverse_unimodular()?.transpose();
    Some(RaySymmetry { matrix: g, ray_permutation: perm, dual_matrix: dual })
}

pub fn compute_symmetry_group(rays: &RayConfig) -> Result<RaySymmetryGroup> {
    let n = rays.dim();
    let basis = rays.basis()?.to_vec();
    // g = T B⁻¹ with B the basis rays as columns
    let b_cols: Vec<Vec<Rat>> = (0..n).map(|i| basis.iter().map(|&j| rays.rays_rat()[j][i].clone()).collect()).collect();
    let b_inv = inverse(&b_cols).ok_or(Error::NotSpanning)?;

    let mut found: BTreeSet<IntMatrix> = BTreeSet::new();
    let mut images = vec![0usize; n];
    let r = rays.len();
    fn rec(
        depth: usize,
        images: &mut Vec<usize>,
        r: usize,
        rays: &RayConfig,
        b_inv: &[Vec<Rat>],
        found: &mut BTreeSet<IntMatrix>,
    ) {
        let n = images.len();
        if depth == n {
            let mut entries = Vec::with_capacity(n * n);
            for i in 0..n {
                for k in 0..n {
                    let mut x = Rat::zero();
                    for (j, &img) in images.iter().enumerate() {
                        x += &rays.rays_rat()[img][i] * &b_inv[j][k];
                    }
                    if !x.is_integer() {
                        return;
                    }
                    entries.push(x.to_integer());
                }
            }
            found.insert(IntMatrix::new(n, n, entries).expect("square"));
            return;
        }
        for t in 0..r {
            if images[..depth].contains(&t) {
                continue;
            }
            images[depth] = t;
            rec(depth + 1, images, r, rays, b_inv, found);
        }
    }
    rec(0, &mut images, r, rays, &b_inv, &mut found);

    let elements: Vec<RaySymmetry> = found.into_iter().filter_map(|g| symmetry_from_matrix(g, rays)).collect();
    let index: HashMap<Vec<usize>, usize> =
        elements.iter().enumerate().map(|(i, e)| (e.ray_permutation.clone(), i)).collect();
    let mut group = RaySymmetryGroup { elements, generators: Vec::new(), index };
    group.generators = group.greedy_generators();
    Ok(group)
}

impl RaySymmetryGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        let n = self.elements[0].matrix.rows();
        self.elements.iter().position(|e| e.matrix == IntMatrix::identity(n)).expect("identity present")
    }

    /// The trivial subgroup, for callers that want to skip symmetry.
    pub fn trivial(rays: &RayConfig) -> RaySymmetryGroup {
        let n = rays.dim();
        let e = RaySymmetry {
            matrix: IntMatrix::identity(n),
            ray_permutation: (0..rays.len()).collect(),
            dual_matrix: IntMatrix::identity(n),
        };
        let index = [(e.ray_permutation.clone(), 0)].into_iter().collect();
        RaySymmetryGroup { elements: vec![e], generators: Vec::new(), index }
    }

    /// Index of `g h` (apply `h` first).
    pub fn compose(&self, g: usize, h: usize) -> usize {
        let pg = &self.elements[g].ray_permutation;
        let ph = &self.elements[h].ray_permutation;
        let p: Vec<usize> = ph.iter().map(|&i| pg[i]).collect();
        self.index[&p]
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.index[&self.elements[g].inverse_permutation()]
    }

    pub fn find_by_permutation(&self, perm: &[usize]) -> Option<usize> {
        self.index.get(perm).copied()
    }

    pub fn find_by_matrix(&self, m: &IntMatrix) -> Option<usize> {
        self.elements.iter().position(|e| &e.matrix == m)
    }

    fn closure(&self, gens: &[usize]) -> BTreeSet<usize> {
        let mut seen: BTreeSet<usize> = [self.identity()].into_iter().collect();
        let mut queue: VecDeque<usize> = seen.iter().copied().collect();
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.compose(g, x);
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = self.closure(&gens);
        for i in 0..self.order() {
            if !span.contains(&i) {
                gens.push(i);
                span = self.closure(&gens);
            }
        }
        gens
    }

    /// Full multiplication table, `table[g][h] = g h`.
    pub fn multiplication_table(&self) -> Vec<Vec<usize>> {
        (0..self.order()).map(|g| (0..self.order()).map(|h| self.compose(g, h)).collect()).collect()
    }
}

/// Push a class through `g`: the divisor `Σ a_ρ D_ρ` goes to `Σ a_ρ D_{g(ρ)}`.
pub fn act_on_class(g: &RaySymmetry, c: &DivisorClass, cg: &ClassGroup) -> Result<DivisorClass> {
    let a = cg.lift(c)?;
    if a.len() != g.ray_permutation.len() {
        return Err(Error::Dimension("group and class group have different ray counts".into()));
    }
    Ok(cg.degree(&act_on_divisor(g, &a)))
}

pub fn act_on_divisor(g: &RaySymmetry, a: &[BigInt]) -> Vec<BigInt> {
    let mut b = vec![BigInt::zero(); a.len()];
    for (rho, x) in a.iter().enumerate() {
        b[g.ray_permutation[rho]] = x.clone();
    }
    b
}

/// Orbit partition of `0..n_points` under `act(g, point) -> point`, each orbit
/// sorted, orbits ordered by smallest member.
pub fn orbits<F>(group_order: usize, n_points: usize, act: F) -> Vec<Vec<usize>>
where
    F: Fn(usize, usize) -> usize,
{
    let mut orbit_of = vec![usize::MAX; n_points];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for p in 0..n_points {
        if orbit_of[p] != usize::MAX {
            continue;
        }
        let mut orbit: BTreeSet<usize> = BTreeSet::new();
        for g in 0..group_order {
            orbit.insert(act(g, p));
        }
        for &q in &orbit {
            orbit_of[q] = out.len();
        }
        out.push(orbit.into_iter().collect());
    }
    out
}

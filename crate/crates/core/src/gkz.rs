//! Maximal chambers of the secondary fan in `Cl(X)_ℝ`.
//!
//! Write `q_ρ` for the degree of `D_ρ`. A full-rank subset `I` of rays gives
//! the simplicial cone `pos(q_I)`; the walls are the hyperplanes spanned by
//! `r - 1` independent degrees. Chambers are the regions of the effective
//! cone cut out by the walls, identified by their signature: the set of `I`
//! whose open cone contains the region. The chamber fan has maximal cones
//! `cone(u_ρ : ρ ∉ I)` over the signature.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::class_group::ClassGroup;
use crate::cone;
use crate::error::{Error, Result};
use crate::fan::{is_complete, is_simplicial, rational_lift, Fan};
use crate::linalg::{inverse, mat_vec, nullspace, primitive_on_ray, rank, to_rat, Rat, RatVector};
use crate::polytope::Polytope;
use crate::rays::RayConfig;
use crate::symmetry::{RaySymmetry, RaySymmetryGroup};

pub const MAX_CHAMBER_RANK: usize = 4;

#[derive(Clone, Debug)]
pub struct GKZChamber {
    pub id: usize,
    /// Free coordinates of an interior point.
    pub sample: RatVector,
    /// Sorted subsets `I` with the sample in the open cone `pos(q_I)`.
    pub basis_signature: Vec<Vec<usize>>,
    pub fan: Fan,
    pub unused_rays: Vec<usize>,
}

/// A full-rank subset of rays with the dual basis of its degrees.
struct Basis {
    rays: Vec<usize>,
    /// Rows `w_i` with `w_i · q_{I_j} = δ_ij`.
    dual: Vec<Vec<Rat>>,
}

impl Basis {
    fn coords(&self, x: &[Rat]) -> Vec<Rat> {
        mat_vec(&self.dual, x)
    }

    fn contains_open(&self, x: &[Rat]) -> bool {
        self.coords(x).iter().all(|c| c.is_positive())
    }

    fn contains_closed(&self, x: &[Rat]) -> bool {
        self.coords(x).iter().all(|c| !c.is_negative())
    }

    /// In the closed cone but not the open one.
    fn on_boundary(&self, x: &[Rat]) -> bool {
        let c = self.coords(x);
        c.iter().all(|v| !v.is_negative()) && c.iter().any(|v| v.is_zero())
    }
}

fn degrees(cg: &ClassGroup) -> Vec<Vec<Rat>> {
    (0..cg.n_rays()).map(|rho| cg.free_degree_rat(rho)).collect()
}

fn bases(q: &[Vec<Rat>], r: usize) -> Vec<Basis> {
    let mut out = Vec::new();
    for idx in cone::subsets(q.len(), r) {
        // columns are the degrees
        let m: Vec<Vec<Rat>> = (0..r).map(|k| idx.iter().map(|&i| q[i][k].clone()).collect()).collect();
        if let Some(dual) = inverse(&m) {
            out.push(Basis { rays: idx, dual });
        }
    }
    out
}

fn walls(q: &[Vec<Rat>], r: usize) -> Vec<Vec<Rat>> {
    let mut out: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    for idx in cone::subsets(q.len(), r - 1) {
        let rows: Vec<Vec<Rat>> = idx.iter().map(|&i| q[i].clone()).collect();
        if rank(&rows) + 1 != r {
            continue;
        }
        let w = primitive_on_ray(&nullspace(&rows, r).remove(0));
        let first = w.iter().find(|x| !x.is_zero()).expect("nonzero normal");
        let w = if first.is_negative() { w.iter().map(|x| -x).collect() } else { w };
        out.insert(w);
    }
    out.into_iter().map(|w| w.iter().map(to_rat).collect()).collect()
}

fn signature(bases: &[Basis], x: &[Rat]) -> Vec<Vec<usize>> {
    bases.iter().filter(|b| b.contains_open(x)).map(|b| b.rays.clone()).collect()
}

fn chamber_fan(rays: &RayConfig, sig: &[Vec<usize>]) -> Result<Fan> {
    let cones: Vec<Vec<usize>> =
        sig.iter().map(|i| (0..rays.len()).filter(|rho| !i.contains(rho)).collect()).collect();
    Fan::new(rays.clone(), cones)
}

pub fn enumerate_chambers(rays: &RayConfig, cg: &ClassGroup) -> Result<Vec<GKZChamber>> {
    let r = cg.rank();
    if r > MAX_CHAMBER_RANK {
        return Err(Error::ChamberRankTooLarge(r));
    }
    if !rays.positively_spans() {
        return Err(Error::NotPositivelySpanning);
    }
    if r == 0 {
        let fan = Fan::new(rays.clone(), vec![(0..rays.len()).collect()])?;
        return Ok(vec![GKZChamber {
            id: 0,
            sample: RatVector(Vec::new()),
            basis_signature: vec![Vec::new()],
            unused_rays: fan.unused_rays(),
            fan,
        }]);
    }
    let q = degrees(cg);
    let bases = bases(&q, r);
    let all: Vec<usize> = (0..q.len()).collect();
    let one = Rat::from_integer(1.into());
    let mut cell = Polytope::cube(&vec![-one.clone(); r], &vec![one; r]);
    for (_, w) in cone::facets(&q, &all) {
        let neg: Vec<Rat> = w.iter().map(|x| -x).collect();
        cell = cell.cut(&neg, &Rat::zero()).ok_or_else(|| Error::Internal("empty effective cone".into()))?;
    }
    let mut cells = vec![cell];
    for w in walls(&q, r) {
        let neg: Vec<Rat> = w.iter().map(|x| -x).collect();
        let mut next = Vec::with_capacity(cells.len());
        for c in cells {
            let (lo, hi) = c.range_of(&w);
            if lo.is_negative() && hi.is_positive() {
                next.extend(c.cut(&w, &Rat::zero()));
                next.extend(c.cut(&neg, &Rat::zero()));
            } else {
                next.push(c);
            }
        }
        cells = next;
    }
    let mut sigs: BTreeSet<Vec<Vec<usize>>> = BTreeSet::new();
    for c in cells.iter().filter(|c| c.affine_dim() == r) {
        let s = signature(&bases, &c.centroid());
        if !s.is_empty() {
            sigs.insert(s);
        }
    }
    let mut out = Vec::new();
    for sig in sigs {
        let fan = match chamber_fan(rays, &sig) {
            Ok(f) if is_simplicial(&f) && is_complete(&f) => f,
            _ => continue,
        };
        let normals: Vec<Vec<Rat>> = bases
            .iter()
            .filter(|b| sig.contains(&b.rays))
            .flat_map(|b| b.dual.iter().cloned())
            .collect();
        let mut sample = vec![Rat::zero(); r];
        for e in cone::extreme_rays(&normals, r) {
            for (s, x) in sample.iter_mut().zip(&e) {
                *s += to_rat(x);
            }
        }
        if signature(&bases, &sample) != sig {
            return Err(Error::Internal("chamber sample left its chamber".into()));
        }
        out.push(GKZChamber {
            id: out.len(),
            sample: RatVector(sample),
            basis_signature: sig,
            unused_rays: fan.unused_rays(),
            fan,
        });
    }
    Ok(out)
}

/// `g` acting on `Cl(X)_ℚ` through a rational lift.
pub fn act_on_degree(g: &RaySymmetry, q: &[Rat], cg: &ClassGroup) -> Result<Vec<Rat>> {
    let a = rational_lift(q, cg)?;
    let mut b = vec![Rat::zero(); a.len()];
    for (rho, x) in a.iter().enumerate() {
        b[g.ray_permutation[rho]] = x.clone();
    }
    Ok(cg.degree_rat(&b))
}

fn sorted_cones(c: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = c
        .iter()
        .map(|x| {
            let mut y = x.clone();
            y.sort();
            y
        })
        .collect();
    out.sort();
    out
}

/// `i ↦ g(i)`, checking that `g` carries each chamber fan onto its target.
pub fn chamber_action(g: &RaySymmetry, chambers: &[GKZChamber], cg: &ClassGroup) -> Result<Vec<usize>> {
    let r = cg.rank();
    if r == 0 {
        return Ok((0..chambers.len()).collect());
    }
    let q = degrees(cg);
    let bases = bases(&q, r);
    let mut perm = Vec::with_capacity(chambers.len());
    for ch in chambers {
        let x = act_on_degree(g, &ch.sample.0, cg)?;
        if bases.iter().any(|b| b.on_boundary(&x)) {
            return Err(Error::Internal("pushed chamber sample lies on a wall".into()));
        }
        let sig = signature(&bases, &x);
        let j = chambers
            .iter()
            .position(|c| c.basis_signature == sig)
            .ok_or_else(|| Error::Internal("pushed chamber sample lies in no chamber".into()))?;
        if sorted_cones(chambers[j].fan.max_cones()) != ch.fan.permute_cones(&g.ray_permutation) {
            return Err(Error::Internal(format!("g does not carry the fan of chamber {} onto chamber {j}", ch.id)));
        }
        perm.push(j);
    }
    Ok(perm)
}

/// Rows: group elements; entry `[g][i] = g(i)`.
pub fn chamber_action_table(group: &RaySymmetryGroup, chambers: &[GKZChamber], cg: &ClassGroup) -> Result<Vec<Vec<usize>>> {
    group.elements.iter().map(|g| chamber_action(g, chambers, cg)).collect()
}

/// Whether the table is a left action: `(gh)(i) = g(h(i))`.
pub fn is_group_action(group: &RaySymmetryGroup, table: &[Vec<usize>]) -> bool {
    (0..group.order()).all(|g| {
        (0..group.order()).all(|h| {
            let gh = group.compose(g, h);
            table[h].iter().enumerate().all(|(i, &hi)| table[gh][i] == table[g][hi])
        })
    })
}

/// Chambers whose closure contains the point `q` of `Cl(X)_ℚ`.
pub fn locate_point(q: &[Rat], chambers: &[GKZChamber], cg: &ClassGroup) -> Vec<usize> {
    let r = cg.rank();
    if r == 0 {
        return chambers.iter().map(|c| c.id).collect();
    }
    let degs = degrees(cg);
    let bases = bases(&degs, r);
    chambers
        .iter()
        .filter(|c| bases.iter().filter(|b| c.basis_signature.contains(&b.rays)).all(|b| b.contains_closed(q)))
        .map(|c| c.id)
        .collect()
}

pub fn locate_class(c: &crate::class_group::DivisorClass, chambers: &[GKZChamber], cg: &ClassGroup) -> Vec<usize> {
    let q: Vec<Rat> = c.free_part.iter().map(to_rat).collect();
    locate_point(&q, chambers, cg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::class_group::{class_group, DivisorClass};
    use crate::fan::is_nef_rational;
    use crate::symmetry::compute_symmetry_group;

    fn chambers(rays: &[&[i64]]) -> (RayConfig, ClassGroup, Vec<GKZChamber>) {
        let rc = RayConfig::from_i64(2, rays).unwrap();
        let cg = class_group(&rc);
        let ch = enumerate_chambers(&rc, &cg).unwrap();
        (rc, cg, ch)
    }

    #[test]
    fn chamber_counts() {
        let (_, cg, p2) = chambers(&[&[1, 0], &[0, 1], &[-1, -1]]);
        assert_eq!(p2.len(), 1);
        assert!(p2[0].unused_rays.is_empty());
        assert_eq!(locate_class(&DivisorClass::from_i64(&[0]), &p2, &cg), vec![0]);
        assert_eq!(locate_class(&DivisorClass::from_i64(&[1]), &p2, &cg), vec![0]);
        let (_, _, q) = chambers(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]);
        assert_eq!(q.len(), 1);
        let (rc, cg, bl) = chambers(&[&[1, 0], &[0, 1], &[-1, -1], &[1, 1]]);
        assert_eq!(bl.len(), 2);
        let unused: Vec<Vec<usize>> = bl.iter().map(|c| c.unused_rays.clone()).collect();
        assert!(unused.contains(&vec![]) && unused.contains(&vec![3]));
        for c in &bl {
            assert!(is_nef_rational(&c.sample.0, &c.fan, &cg).unwrap());
        }
        assert!(!is_nef_rational(&bl[0].sample.0, &bl[1].fan, &cg).unwrap());
        let g = compute_symmetry_group(&rc).unwrap();
        let table = chamber_action_table(&g, &bl, &cg).unwrap();
        assert!(table.iter().all(|row| row == &vec![0, 1]));
        assert!(is_group_action(&g, &table));
    }

    #[test]
    fn shared_wall_lies_in_both() {
        let (_, cg, bl) = chambers(&[&[1, 0], &[0, 1], &[-1, -1], &[1, 1]]);
        // the wall between the chambers is spanned by the degree of the exceptional ray's partner
        let wall_points: Vec<usize> = (0..4).filter(|&rho| locate_class(&cg.degree_of_ray(rho), &bl, &cg).len() == 2).collect();
        assert!(!wall_points.is_empty());
    }

    #[test]
    fn large_rank_refused() {
        let input = crate::input::ToricInput::builtin("perm4").unwrap();
        let rc = input.ray_config().unwrap();
        let cg = class_group(&rc);
        assert!(matches!(enumerate_chambers(&rc, &cg), Err(Error::ChamberRankTooLarge(11))));
    }
}

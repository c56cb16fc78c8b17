//! Bondal strata of `M_ℝ/M` and the Bondal-Thomsen collection `Θ`.

use std::collections::BTreeSet;

use num_bigint::BigInt;

use crate::arrangement::Arrangement;
use crate::class_group::{ClassGroup, DivisorClass};
use crate::error::{Error, Result};
use crate::linalg::{ceil_rat, floor_rat, to_rat, Rat, RatVector};
use crate::polytope::Polytope;
use crate::rays::RayConfig;
use crate::symmetry::{act_on_class, RaySymmetryGroup};

#[derive(Clone, Debug)]
pub struct BondalStratum {
    pub id: usize,
    /// Vertex centroid of the closure, in `[0,1)ⁿ`.
    pub sample: RatVector,
    pub dim: usize,
    /// Rays on which `⟨k, u_ρ⟩` is a constant integer on the stratum.
    pub j: Vec<usize>,
    /// The class of `-d_θ`.
    pub theta_class: DivisorClass,
    pub closure_vertices: Vec<Vec<Rat>>,
}

#[derive(Clone, Debug)]
pub struct ThetaCollection {
    pub strata: Vec<BondalStratum>,
    /// Distinct classes, sorted.
    pub classes: Vec<DivisorClass>,
    pub class_of_stratum: Vec<usize>,
    /// Per class, its unique top-dimensional stratum (`None` if there are several).
    pub class_top: Vec<Option<usize>>,
}

/// The divisor `Σ ⌊-⟨θ, u_ρ⟩⌋ D_ρ`, whose class is written `-d_θ`.
pub fn d_theta_divisor(theta: &[Rat], rays: &RayConfig) -> Vec<BigInt> {
    rays.pairings(theta).iter().map(|x| floor_rat(&-x)).collect()
}

pub fn d_theta(theta: &[Rat], rays: &RayConfig, cg: &ClassGroup) -> DivisorClass {
    cg.degree(&d_theta_divisor(theta, rays))
}

pub fn enumerate_strata(rays: &RayConfig, cg: &ClassGroup) -> Result<ThetaCollection> {
    let arr = Arrangement::new(rays, &[])?;
    let strata: Vec<BondalStratum> = arr
        .faces
        .iter()
        .enumerate()
        .map(|(id, f)| BondalStratum {
            id,
            sample: RatVector(f.sample.clone()),
            dim: f.dim,
            j: f.integral_rays(),
            theta_class: d_theta(&f.sample, rays, cg),
            closure_vertices: f.closure.vertices().to_vec(),
        })
        .collect();
    Ok(ThetaCollection::from_strata(strata))
}

impl ThetaCollection {
    pub fn from_strata(strata: Vec<BondalStratum>) -> ThetaCollection {
        let classes: Vec<DivisorClass> =
            strata.iter().map(|s| s.theta_class.clone()).collect::<BTreeSet<_>>().into_iter().collect();
        let class_of_stratum: Vec<usize> =
            strata.iter().map(|s| classes.binary_search(&s.theta_class).expect("listed class")).collect();
        let class_top = (0..classes.len())
            .map(|c| {
                let members: Vec<usize> = (0..strata.len()).filter(|&s| class_of_stratum[s] == c).collect();
                let top = members.iter().map(|&s| strata[s].dim).max().expect("nonempty class");
                let tops: Vec<usize> = members.into_iter().filter(|&s| strata[s].dim == top).collect();
                (tops.len() == 1).then(|| tops[0])
            })
            .collect();
        ThetaCollection { strata, classes, class_of_stratum, class_top }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn index_of(&self, c: &DivisorClass) -> Option<usize> {
        self.classes.binary_search(c).ok()
    }

    pub fn counts_by_dim(&self) -> Vec<usize> {
        let n = self.strata.iter().map(|s| s.dim).max().unwrap_or(0);
        let mut out = vec![0; n + 1];
        for s in &self.strata {
            out[s.dim] += 1;
        }
        out
    }

    /// The stratum that carries the data of class `c`.
    pub fn top_stratum(&self, c: usize) -> Result<&BondalStratum> {
        self.class_top[c]
            .map(|s| &self.strata[s])
            .ok_or_else(|| Error::IllDefinedGrouping(self.classes[c].to_string()))
    }

    pub fn class_dim(&self, c: usize) -> Result<usize> {
        Ok(self.top_stratum(c)?.dim)
    }

    pub fn class_j(&self, c: usize) -> Result<&[usize]> {
        Ok(&self.top_stratum(c)?.j)
    }

    /// A point `θ` with `-d_θ` in class `c`.
    pub fn class_sample(&self, c: usize) -> &[Rat] {
        let s = self.class_top[c].unwrap_or_else(|| {
            self.class_of_stratum.iter().position(|&k| k == c).expect("nonempty class")
        });
        &self.strata[s].sample.0
    }
}

/// Pairs `(g, stratum)` where `-d_{g_* θ}` differs from `g · (-d_θ)`.
pub fn equivariance_violations(
    theta: &ThetaCollection,
    group: &RaySymmetryGroup,
    rays: &RayConfig,
    cg: &ClassGroup,
) -> Result<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    for (gi, g) in group.elements.iter().enumerate() {
        for s in &theta.strata {
            let pushed = d_theta(&g.act_on_m(&s.sample.0), rays, cg);
            if pushed != act_on_class(g, &s.theta_class, cg)? {
                out.push((gi, s.id));
            }
        }
    }
    Ok(out)
}

/// `P_θ = {k : ⟨k, u_ρ⟩ <= ⌈⟨θ, u_ρ⟩⌉}`.
pub fn polytope_p(theta: &[Rat], rays: &RayConfig) -> Result<Polytope> {
    let b: Vec<Rat> = rays.pairings(theta).iter().map(|x| to_rat(&ceil_rat(x))).collect();
    rays.ray_polytope(&b)?.ok_or_else(|| Error::Internal("P_θ is empty but contains θ".into()))
}

/// Classes `-d_θ` for `θ` on the grid `(1/ℓ)ℤⁿ ∩ [0,1)ⁿ`.
pub fn frobenius_oracle(rays: &RayConfig, cg: &ClassGroup, ell: u64) -> BTreeSet<DivisorClass> {
    let n = rays.dim();
    let mut out = BTreeSet::new();
    let mut idx = vec![0u64; n];
    let ell_b = BigInt::from(ell.max(1));
    loop {
        let theta: Vec<Rat> = idx.iter().map(|&i| Rat::new(BigInt::from(i), ell_b.clone())).collect();
        out.insert(d_theta(&theta, rays, cg));
        let mut k = 0;
        loop {
            if k == n {
                return out;
            }
            idx[k] += 1;
            if idx[k] < ell.max(1) {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::class_group::class_group;
    use crate::linalg::int;

    fn p2() -> RayConfig {
        RayConfig::from_i64(2, &[&[1, 0], &[0, 1], &[-1, -1]]).unwrap()
    }

    fn q(p: i64, d: i64) -> Rat {
        Rat::new(int(p), int(d))
    }

    #[test]
    fn floor_formula_on_p2() {
        let rays = p2();
        let cg = class_group(&rays);
        assert_eq!(d_theta(&[q(0, 1), q(0, 1)], &rays, &cg), DivisorClass::from_i64(&[0]));
        assert_eq!(d_theta(&[q(-1, 3), q(-1, 3)], &rays, &cg), DivisorClass::from_i64(&[-1]));
        assert_eq!(d_theta(&[q(0, 1), q(-1, 2)], &rays, &cg), DivisorClass::from_i64(&[-1]));
    }

    #[test]
    fn p2_strata_and_polytopes() {
        let rays = p2();
        let cg = class_group(&rays);
        let t = enumerate_strata(&rays, &cg).unwrap();
        assert_eq!(t.strata.len(), 6);
        assert_eq!(t.classes, vec![DivisorClass::from_i64(&[-2]), DivisorClass::from_i64(&[-1]), DivisorClass::from_i64(&[0])]);
        assert_eq!(polytope_p(&[q(0, 1), q(0, 1)], &rays).unwrap().vertices().len(), 1);
        let p1 = polytope_p(&[q(-1, 3), q(-1, 3)], &rays).unwrap();
        assert_eq!(p1.lattice_points().len(), 3);
        let p2_ = polytope_p(&[q(-2, 3), q(-2, 3)], &rays).unwrap();
        assert_eq!(p2_.lattice_points().len(), 6);
    }

    #[test]
    fn oracle_small_cases() {
        let rays = p2();
        let cg = class_group(&rays);
        assert_eq!(frobenius_oracle(&rays, &cg, 1).len(), 1);
        assert_eq!(frobenius_oracle(&rays, &cg, 3).len(), 3);
        let p1 = RayConfig::from_i64(1, &[&[1], &[-1]]).unwrap();
        let cg1 = class_group(&p1);
        assert_eq!(frobenius_oracle(&p1, &cg1, 2).len(), 2);
    }
}

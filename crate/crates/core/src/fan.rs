//! Fans, stacky fans and maps between them.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::class_group::{ClassGroup, DivisorClass};
use crate::cone;
use crate::error::{Error, Result};
use crate::linalg::{coordinates_in, dot, rank, solve_square, to_rat, to_rat_vec, IntMatrix, Rat};
use crate::lp::{self, Constraint, Relation};
use crate::rays::RayConfig;

/// A fan given by its rays and maximal cones (sorted ray-index sets). Rays
/// that appear in no cone are kept and reported as unused.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    rays: RayConfig,
    max_cones: Vec<Vec<usize>>,
}

impl Fan {
    /// Validate and build. Cones whose ray set is contained in another listed
    /// cone are dropped, so `max_cones` really are maximal.
    pub fn new(rays: RayConfig, mut cones: Vec<Vec<usize>>) -> Result<Fan> {
        for c in cones.iter_mut() {
            c.sort();
            if c.is_empty() {
                return Err(Error::InvalidFan("empty cone".into()));
            }
            if c.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidFan(format!("cone {c:?} repeats a ray")));
            }
            if let Some(&bad) = c.iter().find(|&&i| i >= rays.len()) {
                return Err(Error::InvalidFan(format!("cone {c:?} uses ray {bad}, only {} rays", rays.len())));
            }
        }
        cones.sort();
        cones.dedup();
        let all = cones.clone();
        cones.retain(|c| !all.iter().any(|d| d != c && c.iter().all(|x| d.contains(x))));

        let gens = rays.rays_rat();
        for c in &cones {
            let g: Vec<Vec<Rat>> = c.iter().map(|&i| gens[i].clone()).collect();
            if !cone::is_strongly_convex(&g, rays.dim()) {
                return Err(Error::InvalidFan(format!("cone {c:?} is not strongly convex")));
            }
            if !cone::generators_extremal(&g) {
                return Err(Error::InvalidFan(format!("cone {c:?} has a generator that is not extremal")));
            }
        }
        for (i, s) in cones.iter().enumerate() {
            for t in &cones[i + 1..] {
                if !meet_in_common_face(gens, s, t) {
                    return Err(Error::InvalidFan(format!("cones {s:?} and {t:?} do not meet in a common face")));
                }
            }
        }
        Ok(Fan { rays, max_cones: cones })
    }

    pub fn from_i64(n: usize, rays: &[&[i64]], cones: &[&[usize]]) -> Result<Fan> {
        Fan::new(RayConfig::from_i64(n, rays)?, cones.iter().map(|c| c.to_vec()).collect())
    }

    pub fn dim(&self) -> usize {
        self.rays.dim()
    }

    pub fn rays(&self) -> &RayConfig {
        &self.rays
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    pub fn unused_rays(&self) -> Vec<usize> {
        (0..self.rays.len()).filter(|i| !self.max_cones.iter().any(|c| c.contains(i))).collect()
    }

    pub fn generators(&self, cone: &[usize]) -> Vec<Vec<Rat>> {
        cone.iter().map(|&i| self.rays.rays_rat()[i].clone()).collect()
    }

    /// All nonempty cones, each listed once.
    pub fn all_cones(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        for c in &self.max_cones {
            for f in cone::faces(self.rays.rays_rat(), c) {
                out.push(f);
            }
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        out.dedup();
        out
    }

    /// The cone of the fan whose relative interior contains `x`.
    pub fn minimal_cone_containing(&self, x: &[Rat]) -> Option<Vec<usize>> {
        let gens = self.rays.rays_rat();
        let c = self.max_cones.iter().find(|c| cone::contains(&self.generators(c), x))?;
        cone::faces(gens, c).into_iter().find(|f| cone::contains(&self.generators(f), x))
    }

    /// The image of the fan under a permutation of its rays.
    pub fn permute_cones(&self, perm: &[usize]) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = self
            .max_cones
            .iter()
            .map(|c| {
                let mut d: Vec<usize> = c.iter().map(|&i| perm[i]).collect();
                d.sort();
                d
            })
            .collect();
        out.sort();
        out
    }
}

fn meet_in_common_face(gens: &[Vec<Rat>], s: &[usize], t: &[usize]) -> bool {
    let n = gens[0].len();
    let mut cons = Vec::new();
    for &i in s {
        if t.contains(&i) {
            cons.push(Constraint::new(gens[i].clone(), Relation::Eq, Rat::zero()));
        } else {
            cons.push(Constraint::new(gens[i].clone(), Relation::Ge, Rat::one()));
        }
    }
    for &i in t {
        if !s.contains(&i) {
            cons.push(Constraint::new(gens[i].clone(), Relation::Le, -Rat::one()));
        }
    }
    lp::is_feasible(n, &cons)
}

pub fn is_simplicial(f: &Fan) -> bool {
    f.max_cones.iter().all(|c| rank(&f.generators(c)) == c.len())
}

/// Codimension-one faces of the full-dimensional cones of `cones` that lie
/// in exactly one of them.
fn boundary_walls(f: &Fan, cones: &[&Vec<usize>]) -> Vec<Vec<usize>> {
    let mut count: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for c in cones {
        for (wall, _) in cone::facets(f.rays.rays_rat(), c) {
            *count.entry(wall).or_default() += 1;
        }
    }
    count.into_iter().filter(|(_, k)| *k == 1).map(|(w, _)| w).collect()
}

/// Pure full-dimensional and without boundary walls.
pub fn is_complete(f: &Fan) -> bool {
    let n = f.dim();
    if f.max_cones.iter().any(|c| rank(&f.generators(c)) != n) {
        return false;
    }
    let all: Vec<&Vec<usize>> = f.max_cones.iter().collect();
    !all.is_empty() && boundary_walls(f, &all).is_empty()
}

/// Every cone of `fine` lies in a cone of `coarse`, and the supports agree.
pub fn is_refinement(fine: &Fan, coarse: &Fan) -> bool {
    if fine.dim() != coarse.dim() {
        return false;
    }
    let mut inside: Vec<Vec<&Vec<usize>>> = vec![Vec::new(); coarse.max_cones.len()];
    for c in &fine.max_cones {
        let g = fine.generators(c);
        let mut found = false;
        for (k, d) in coarse.max_cones.iter().enumerate() {
            if g.iter().all(|x| cone::contains(&coarse.generators(d), x)) {
                inside[k].push(c);
                found = true;
            }
        }
        if !found {
            return false;
        }
    }
    // each coarse cone must be covered by the fine cones of its own dimension inside it
    for (k, d) in coarse.max_cones.iter().enumerate() {
        let dim = rank(&coarse.generators(d));
        let same: Vec<&Vec<usize>> =
            inside[k].iter().copied().filter(|c| rank(&fine.generators(c)) == dim).collect();
        if same.is_empty() {
            return false;
        }
        let coarse_facets = cone::facets(coarse.rays.rays_rat(), d);
        for wall in boundary_walls(fine, &same) {
            let wg = fine.generators(&wall);
            let on_boundary = wall.is_empty() && dim == 1
                || coarse_facets.iter().any(|(_, w)| wg.iter().all(|x| dot(w, x).is_zero()));
            if !on_boundary {
                return false;
            }
        }
    }
    true
}

/// A support-function test: whether the class `c` is nef on the simplicial,
/// full-dimensional fan `f` whose rays are the rays of the class group.
/// For each maximal cone `σ` the linear function `m_σ` with
/// `⟨m_σ, u_ρ⟩ = -a_ρ` on `σ(1)` must satisfy `⟨m_σ, u_ρ⟩ >= -a_ρ` on every
/// ray of the configuration, used or not. This is independent of the lift.
pub fn is_nef(c: &DivisorClass, f: &Fan, cg: &ClassGroup) -> Result<bool> {
    let a: Vec<Rat> = cg.lift(c)?.iter().map(to_rat).collect();
    is_nef_divisor(&a, f)
}

/// The same test for a point of `Cl(X)_ℚ` (free coordinates only).
pub fn is_nef_rational(q: &[Rat], f: &Fan, cg: &ClassGroup) -> Result<bool> {
    let a = rational_lift(q, cg)?;
    is_nef_divisor(&a, f)
}

/// A rational divisor whose free class is `q`.
pub fn rational_lift(q: &[Rat], cg: &ClassGroup) -> Result<Vec<Rat>> {
    let den = q.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scaled: Vec<BigInt> = q.iter().map(|x| (x * to_rat(&den)).to_integer()).collect();
    let mut c = cg.zero();
    c.free_part = scaled;
    let a = cg.lift(&c)?;
    let d = to_rat(&den);
    Ok(a.iter().map(|x| to_rat(x) / &d).collect())
}

/// `Σ a_ρ D_ρ` nef on `f`, for a rational divisor.
pub fn is_nef_divisor(a: &[Rat], f: &Fan) -> Result<bool> {
    if !is_simplicial(f) {
        return Err(Error::NotSimplicial);
    }
    let n = f.dim();
    let gens = f.rays.rays_rat();
    for c in &f.max_cones {
        if c.len() != n {
            return Err(Error::Precondition("nef test needs full-dimensional cones".into()));
        }
        let m_rows: Vec<Vec<Rat>> = c.iter().map(|&i| gens[i].clone()).collect();
        let rhs: Vec<Rat> = c.iter().map(|&i| -a[i].clone()).collect();
        let m = solve_square(&m_rows, &rhs).ok_or(Error::NotSimplicial)?;
        if gens.iter().zip(a).any(|(u, x)| dot(&m, u) < -x.clone()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A fan with a positive integer weight on every ray: `β(e_ρ) = b_ρ u_ρ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StackyFan {
    pub fan: Fan,
    pub weights: Vec<BigInt>,
}

impl StackyFan {
    pub fn new(fan: Fan, weights: Vec<BigInt>) -> Result<StackyFan> {
        if weights.len() != fan.rays.len() {
            return Err(Error::Dimension(format!("{} weights for {} rays", weights.len(), fan.rays.len())));
        }
        if weights.iter().any(|w| !w.is_positive()) {
            return Err(Error::InvalidFan("stacky weights must be positive".into()));
        }
        Ok(StackyFan { fan, weights })
    }

    pub fn unweighted(fan: Fan) -> StackyFan {
        let k = fan.rays.len();
        StackyFan { fan, weights: vec![BigInt::one(); k] }
    }
}

/// How one source ray lands in the target: `f(u_ρ) = Σ c_τ u'_τ` over the
/// rays of the minimal target cone, `multiplier` the least common denominator
/// of the `c_τ`, and `witness` the integers `k_τ = b_ρ c_τ / b'_τ` when they
/// are all integral.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayLift {
    pub cone: Vec<usize>,
    pub coefficients: Vec<Rat>,
    pub multiplier: BigInt,
    pub witness: Option<Vec<BigInt>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanMap {
    pub source: StackyFan,
    pub target: StackyFan,
    pub lattice_map: IntMatrix,
    pub ray_lift: Vec<RayLift>,
}

impl FanMap {
    /// Compute the ray data of `f : N → N'`. Fails if a source ray lands
    /// outside the target support, or the target is not simplicial there.
    pub fn new(source: StackyFan, target: StackyFan, lattice_map: IntMatrix) -> Result<FanMap> {
        if lattice_map.cols() != source.fan.dim() || lattice_map.rows() != target.fan.dim() {
            return Err(Error::Dimension("lattice map does not match the fans".into()));
        }
        let mut ray_lift = Vec::new();
        for (rho, u) in source.fan.rays.rays().iter().enumerate() {
            let v = to_rat_vec(&lattice_map.mul_vec(u));
            let cone = target
                .fan
                .minimal_cone_containing(&v)
                .ok_or_else(|| Error::Precondition(format!("ray {rho} maps outside the target support")))?;
            let basis = target.fan.generators(&cone);
            let coefficients =
                coordinates_in(&basis, &v).ok_or(Error::NotSimplicial).and_then(|c| {
                    if rank(&basis) == basis.len() {
                        Ok(c)
                    } else {
                        Err(Error::NotSimplicial)
                    }
                })?;
            let multiplier = coefficients.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            let b = to_rat(&source.weights[rho]);
            let witness: Option<Vec<BigInt>> = cone
                .iter()
                .zip(&coefficients)
                .map(|(&t, c)| {
                    let k = &b * c / to_rat(&target.weights[t]);
                    k.is_integer().then(|| k.to_integer())
                })
                .collect();
            ray_lift.push(RayLift { cone, coefficients, multiplier, witness });
        }
        Ok(FanMap { source, target, lattice_map, ray_lift })
    }

    pub fn identity(f: StackyFan) -> FanMap {
        let n = f.fan.dim();
        FanMap::new(f.clone(), f, IntMatrix::identity(n)).expect("identity map")
    }
}

/// Cones map into cones and every source ray has an integral witness
/// `f(b_ρ u_ρ) = Σ k_τ b'_τ u'_τ` with `k_τ >= 0`.
pub fn is_map_of_stacky_fans(m: &FanMap) -> bool {
    let src = &m.source.fan;
    let tgt = &m.target.fan;
    for (rho, lift) in m.ray_lift.iter().enumerate() {
        let Some(k) = &lift.witness else {
            return false;
        };
        if k.iter().any(|x| x.is_negative()) {
            return false;
        }
        let lhs: Vec<BigInt> = m.lattice_map.mul_vec(src.rays.ray(rho)).iter().map(|x| x * &m.source.weights[rho]).collect();
        let mut rhs = vec![BigInt::zero(); tgt.dim()];
        for (t, kt) in lift.cone.iter().zip(k) {
            for (r, u) in rhs.iter_mut().zip(tgt.rays.ray(*t)) {
                *r += kt * &m.target.weights[*t] * u;
            }
        }
        if lhs != rhs {
            return false;
        }
    }
    for c in &src.max_cones {
        let images: Vec<Vec<Rat>> = c.iter().map(|&i| to_rat_vec(&m.lattice_map.mul_vec(src.rays.ray(i)))).collect();
        let mut p = vec![Rat::zero(); tgt.dim()];
        for v in &images {
            for (a, b) in p.iter_mut().zip(v) {
                *a += b;
            }
        }
        let Some(face) = tgt.minimal_cone_containing(&p) else {
            return false;
        };
        let g = tgt.generators(&face);
        if !images.iter().all(|v| cone::contains(&g, v)) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::class_group::class_group;

    fn p2() -> Fan {
        Fan::from_i64(2, &[&[1, 0], &[0, 1], &[-1, -1]], &[&[0, 1], &[1, 2], &[0, 2]]).unwrap()
    }

    fn p1xp1() -> Fan {
        Fan::from_i64(2, &[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]], &[&[0, 2], &[0, 3], &[1, 2], &[1, 3]]).unwrap()
    }

    #[test]
    fn predicates_on_small_fans() {
        assert!(is_simplicial(&p2()) && is_complete(&p2()));
        assert!(is_refinement(&p2(), &p2()));
        assert!(!is_refinement(&p2(), &p1xp1()));
        assert!(!is_refinement(&p1xp1(), &p2()));
        let square = Fan::from_i64(3, &[&[1, 0, 0], &[0, 1, 0], &[1, 0, 1], &[0, 1, 1]], &[&[0, 1, 2, 3]]).unwrap();
        assert!(!is_simplicial(&square));
        assert!(!is_complete(&square));
    }

    #[test]
    fn invalid_fans_rejected() {
        // overlapping cones
        let bad = Fan::from_i64(2, &[&[1, 0], &[0, 1], &[1, 1]], &[&[0, 1], &[0, 2]]);
        assert!(matches!(bad, Err(Error::InvalidFan(_))));
        let line = Fan::from_i64(1, &[&[1], &[-1]], &[&[0, 1]]);
        assert!(matches!(line, Err(Error::InvalidFan(_))));
    }

    #[test]
    fn nef_classes() {
        let f = p2();
        let cg = class_group(f.rays());
        assert!(is_nef(&cg.zero(), &f, &cg).unwrap());
        assert!(is_nef(&DivisorClass::from_i64(&[1]), &f, &cg).unwrap());
        assert!(!is_nef(&DivisorClass::from_i64(&[-1]), &f, &cg).unwrap());

        let bl = Fan::from_i64(2, &[&[1, 0], &[0, 1], &[-1, -1], &[1, 1]], &[&[0, 3], &[1, 3], &[1, 2], &[0, 2]]).unwrap();
        let cg = class_group(bl.rays());
        let e = cg.degree_of_ray(3);
        assert!(!is_nef(&e, &bl, &cg).unwrap());
        let h = cg.degree_of_ray(2);
        assert!(is_nef(&h, &bl, &cg).unwrap());
    }

    #[test]
    fn stacky_maps() {
        let id = FanMap::identity(StackyFan::unweighted(p2()));
        assert!(is_map_of_stacky_fans(&id));

        let target = Fan::from_i64(2, &[&[1, 0], &[-1, 2]], &[&[0, 1]]).unwrap();
        let source = Fan::from_i64(2, &[&[0, 1]], &[&[0]]).unwrap();
        let t = StackyFan::unweighted(target);
        let m1 = FanMap::new(StackyFan::unweighted(source.clone()), t.clone(), IntMatrix::identity(2)).unwrap();
        assert!(!is_map_of_stacky_fans(&m1));
        assert_eq!(m1.ray_lift[0].multiplier, BigInt::from(2));
        let s2 = StackyFan::new(source, vec![BigInt::from(2)]).unwrap();
        let m2 = FanMap::new(s2, t, IntMatrix::identity(2)).unwrap();
        assert!(is_map_of_stacky_fans(&m2));

        let smooth = Fan::from_i64(2, &[&[1, 0], &[0, 1]], &[&[0, 1]]).unwrap();
        let diag = Fan::from_i64(2, &[&[1, 1]], &[&[0]]).unwrap();
        let m = FanMap::new(StackyFan::unweighted(diag), StackyFan::unweighted(smooth), IntMatrix::identity(2)).unwrap();
        assert!(is_map_of_stacky_fans(&m));
        assert_eq!(m.ray_lift[0].multiplier, BigInt::one());
    }
}

//! A simplicial fan refining every chamber fan, stable under the symmetry
//! group, with stacky weights making each refinement map a map of stacky fans.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::cone;
use crate::error::{Error, Result};
use crate::fan::{is_complete, is_map_of_stacky_fans, is_refinement, is_simplicial, Fan, FanMap, StackyFan};
use crate::gkz::{chamber_action_table, GKZChamber};
use crate::class_group::ClassGroup;
use crate::linalg::{gcd_all, rank, IntMatrix, Rat};
use crate::lp;
use crate::rays::RayConfig;
use crate::symmetry::RaySymmetryGroup;

/// Inward facet normals of each maximal cone.
fn h_rep(f: &Fan, c: &[usize]) -> Vec<Vec<Rat>> {
    cone::facets(f.rays().rays_rat(), c).into_iter().map(|(_, w)| w).collect()
}

/// The fan of all full-dimensional intersections `σ_1 ∩ ⋯ ∩ σ_r` with `σ_i`
/// a maximal cone of the `i`-th fan.
pub fn common_refinement(fans: &[Fan]) -> Result<Fan> {
    let first = fans.first().ok_or_else(|| Error::Precondition("no fans to refine".into()))?;
    let n = first.dim();
    for f in fans {
        if f.dim() != n {
            return Err(Error::Dimension("fans live in different lattices".into()));
        }
        if !is_complete(f) {
            return Err(Error::NotComplete);
        }
    }
    let mut cells: Vec<Vec<Vec<Rat>>> = first.max_cones().iter().map(|c| h_rep(first, c)).collect();
    for f in &fans[1..] {
        let mut next = Vec::new();
        for cell in &cells {
            for c in f.max_cones() {
                let mut normals = cell.clone();
                for w in h_rep(f, c) {
                    if !normals.contains(&w) {
                        normals.push(w);
                    }
                }
                let strict: Vec<(Vec<Rat>, Rat)> =
                    normals.iter().map(|w| (w.iter().map(|x| -x).collect(), Rat::zero())).collect();
                if lp::strict_point(n, &strict, &[]).is_some() {
                    next.push(normals);
                }
            }
        }
        cells = next;
    }
    let generated: Vec<Vec<Vec<BigInt>>> = cells.iter().map(|normals| cone::extreme_rays(normals, n)).collect();
    // rays of the first fan keep their order; new rays follow, sorted
    let mut rays: Vec<Vec<BigInt>> = first.rays().rays().to_vec();
    let new: BTreeSet<Vec<BigInt>> = generated.iter().flatten().filter(|r| !rays.contains(r)).cloned().collect();
    rays.extend(new);
    let used: BTreeSet<&Vec<BigInt>> = generated.iter().flatten().collect();
    rays.retain(|r| used.contains(r));
    let cones: Vec<Vec<usize>> = generated
        .iter()
        .map(|gens| {
            let mut c: Vec<usize> = gens.iter().map(|g| rays.iter().position(|r| r == g).expect("listed ray")).collect();
            c.sort();
            c
        })
        .collect();
    Fan::new(RayConfig::new(n, rays)?, cones)
}

/// Where a ray of a barycentric subdivision comes from: the primitive part
/// of `Σ_{ρ ∈ cone} u_ρ`, which is `scale` times the ray.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayProvenance {
    pub cone: Vec<usize>,
    pub scale: BigInt,
}

#[derive(Clone, Debug)]
pub struct Subdivision {
    pub fan: Fan,
    pub provenance: Vec<RayProvenance>,
}

fn flags(gens: &[Vec<Rat>], c: &[usize]) -> Vec<Vec<Vec<usize>>> {
    let sub = cone::facets(gens, c);
    if rank(&c.iter().map(|&i| gens[i].clone()).collect::<Vec<_>>()) <= 1 {
        return vec![vec![c.to_vec()]];
    }
    let mut out = Vec::new();
    for (facet, _) in sub {
        for mut chain in flags(gens, &facet) {
            chain.push(c.to_vec());
            out.push(chain);
        }
    }
    out
}

/// Rays at the barycenters of all cones, maximal cones from complete flags.
pub fn barycentric_subdivision(f: &Fan) -> Result<Subdivision> {
    let n = f.dim();
    let cones = f.all_cones();
    let mut rays = Vec::with_capacity(cones.len());
    let mut provenance = Vec::with_capacity(cones.len());
    for c in &cones {
        let mut sum = vec![BigInt::zero(); n];
        for &i in c {
            for (s, x) in sum.iter_mut().zip(f.rays().ray(i)) {
                *s += x;
            }
        }
        let g = gcd_all(&sum);
        rays.push(sum.iter().map(|x| x / &g).collect::<Vec<BigInt>>());
        provenance.push(RayProvenance { cone: c.clone(), scale: g });
    }
    let gens = f.rays().rays_rat();
    let mut max_cones: BTreeSet<Vec<usize>> = BTreeSet::new();
    for m in f.max_cones() {
        for chain in flags(gens, m) {
            let mut idx: Vec<usize> = chain.iter().map(|c| cones.binary_search_by(|x| {
                x.len().cmp(&c.len()).then(x.cmp(c))
            }).expect("face of the fan")).collect();
            idx.sort();
            max_cones.insert(idx);
        }
    }
    let fan = Fan::new(RayConfig::new(n, rays)?, max_cones.into_iter().collect())?;
    Ok(Subdivision { fan, provenance })
}

#[derive(Clone, Debug)]
pub struct RefinementResult {
    /// The common refinement before subdivision.
    pub refinement: Fan,
    pub tilde_fan: StackyFan,
    /// Per ray of the subdivided fan, the cone of `refinement` it is the barycenter of.
    pub ray_provenance: Vec<RayProvenance>,
    pub per_chamber_maps: Vec<FanMap>,
    /// `multipliers[ρ][i] = a_{ρ,i}`
    pub multipliers: Vec<Vec<BigInt>>,
    /// Per group element, the induced permutation of the subdivided fan's rays.
    pub ray_permutations: Vec<Vec<usize>>,
}

pub fn equivariant_refinement(chambers: &[GKZChamber], group: &RaySymmetryGroup) -> Result<RefinementResult> {
    let fans: Vec<Fan> = chambers.iter().map(|c| c.fan.clone()).collect();
    let refinement = common_refinement(&fans)?;
    let Subdivision { fan: tilde, provenance } = barycentric_subdivision(&refinement)?;
    let tr = tilde.rays();
    let mut ray_permutations = Vec::with_capacity(group.order());
    for g in &group.elements {
        let perm: Vec<usize> = tr
            .rays()
            .iter()
            .map(|u| tr.position(&g.matrix.mul_vec(u)))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::Internal("g does not permute the refined rays".into()))?;
        ray_permutations.push(perm);
    }
    let unweighted = StackyFan::unweighted(tilde.clone());
    let mut multipliers = vec![Vec::with_capacity(fans.len()); tr.len()];
    for f in &fans {
        let m = FanMap::new(unweighted.clone(), StackyFan::unweighted(f.clone()), IntMatrix::identity(tilde.dim()))
            .map_err(|e| Error::Internal(format!("refined ray outside a chamber fan: {e}")))?;
        for (rho, lift) in m.ray_lift.iter().enumerate() {
            multipliers[rho].push(lift.multiplier.clone());
        }
    }
    let per_ray: Vec<BigInt> = multipliers.iter().map(|a| a.iter().fold(BigInt::one(), |acc, x| acc.lcm(x))).collect();
    let weights: Vec<BigInt> = (0..tr.len())
        .map(|rho| ray_permutations.iter().fold(BigInt::one(), |acc, p| acc.lcm(&per_ray[p[rho]])))
        .collect();
    let tilde_fan = StackyFan::new(tilde.clone(), weights)?;
    let per_chamber_maps = fans
        .iter()
        .map(|f| FanMap::new(tilde_fan.clone(), StackyFan::unweighted(f.clone()), IntMatrix::identity(tilde.dim())))
        .collect::<Result<_>>()?;
    Ok(RefinementResult { refinement, tilde_fan, ray_provenance: provenance, per_chamber_maps, multipliers, ray_permutations })
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort();
    v
}

impl RefinementResult {
    pub fn fan(&self) -> &Fan {
        &self.tilde_fan.fan
    }

    pub fn weights(&self) -> &[BigInt] {
        &self.tilde_fan.weights
    }

    pub fn is_simplicial(&self) -> bool {
        is_simplicial(self.fan())
    }

    pub fn refines_all(&self, chambers: &[GKZChamber]) -> bool {
        chambers.iter().all(|c| is_refinement(self.fan(), &c.fan))
    }

    /// `g(Σ̃) = Σ̃` for every group element.
    pub fn is_invariant(&self) -> bool {
        let own = self.fan().permute_cones(&(0..self.fan().rays().len()).collect::<Vec<_>>());
        self.ray_permutations.iter().all(|p| self.fan().permute_cones(p) == own)
    }

    pub fn weights_constant_on_orbits(&self) -> bool {
        let w = self.weights();
        self.ray_permutations.iter().all(|p| (0..w.len()).all(|rho| w[p[rho]] == w[rho]))
    }

    pub fn multipliers_divide_weights(&self) -> bool {
        self.multipliers.iter().zip(self.weights()).all(|(a, b)| a.iter().all(|x| (b % x).is_zero()))
    }

    pub fn maps_are_stacky(&self) -> bool {
        self.per_chamber_maps.iter().all(is_map_of_stacky_fans)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatibilityReport {
    /// `grid[g][i]`: the square for element `g` and chamber `i` commutes.
    pub grid: Vec<Vec<bool>>,
    pub chamber_permutations: Vec<Vec<usize>>,
}

impl CompatibilityReport {
    pub fn passed(&self) -> bool {
        self.grid.iter().all(|row| row.iter().all(|&x| x))
    }
}

/// For each `g` and chamber `i`, compare `π_{g(i)} ∘ g̃` with `g ∘ π_i` as
/// lattice maps and through the ray data.
pub fn verify_compatibility(
    result: &RefinementResult,
    group: &RaySymmetryGroup,
    chambers: &[GKZChamber],
    cg: &ClassGroup,
) -> Result<CompatibilityReport> {
    let table = chamber_action_table(group, chambers, cg)?;
    let w = result.weights();
    let mut grid = Vec::with_capacity(group.order());
    for (gi, g) in group.elements.iter().enumerate() {
        let rp = &result.ray_permutations[gi];
        let row = (0..chambers.len())
            .map(|i| {
                let j = table[gi][i];
                let (pi, pj) = (&result.per_chamber_maps[i], &result.per_chamber_maps[j]);
                let lattice = pj.lattice_map.mul(&g.matrix).ok() == g.matrix.mul(&pi.lattice_map).ok();
                let rays_ok = pi.ray_lift.iter().enumerate().all(|(rho, lift)| {
                    let moved = &pj.ray_lift[rp[rho]];
                    let image = sorted(lift.cone.iter().map(|&t| g.ray_permutation[t]).collect());
                    image == moved.cone
                        && lift.cone.iter().zip(&lift.coefficients).all(|(&t, c)| {
                            let k = moved.cone.iter().position(|&s| s == g.ray_permutation[t]).expect("same cone");
                            &moved.coefficients[k] == c
                        })
                        && w[rp[rho]] == w[rho]
                });
                lattice && rays_ok
            })
            .collect();
        grid.push(row);
    }
    Ok(CompatibilityReport { grid, chamber_permutations: table })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::class_group::class_group;
    use crate::gkz::enumerate_chambers;
    use crate::symmetry::compute_symmetry_group;

    fn p2() -> Fan {
        Fan::from_i64(2, &[&[1, 0], &[0, 1], &[-1, -1]], &[&[0, 1], &[1, 2], &[0, 2]]).unwrap()
    }

    fn quadrants() -> Fan {
        Fan::from_i64(2, &[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]], &[&[0, 2], &[0, 3], &[1, 2], &[1, 3]]).unwrap()
    }

    #[test]
    fn refinement_examples() {
        assert_eq!(common_refinement(&[p2()]).unwrap().max_cones().len(), 3);
        assert_eq!(common_refinement(&[p2(), p2()]).unwrap().max_cones().len(), 3);
        let both = common_refinement(&[quadrants(), p2()]).unwrap();
        assert_eq!(both.max_cones().len(), 5);
        assert_eq!(both.rays().len(), 5);
        assert!(is_refinement(&both, &p2()) && is_refinement(&both, &quadrants()));
    }

    #[test]
    fn barycentric_projective_plane() {
        let s = barycentric_subdivision(&p2()).unwrap();
        assert_eq!(s.fan.rays().len(), 6);
        assert_eq!(s.fan.max_cones().len(), 6);
        assert!(is_simplicial(&s.fan) && is_refinement(&s.fan, &p2()));
        let ray = Fan::from_i64(1, &[&[1], &[-1]], &[&[0], &[1]]).unwrap();
        assert_eq!(barycentric_subdivision(&ray).unwrap().fan.max_cones().len(), 2);
    }

    #[test]
    fn refinement_of_blowup_chambers() {
        let rc = RayConfig::from_i64(2, &[&[1, 0], &[0, 1], &[-1, -1], &[1, 1]]).unwrap();
        let cg = class_group(&rc);
        let ch = enumerate_chambers(&rc, &cg).unwrap();
        let g = compute_symmetry_group(&rc).unwrap();
        let r = equivariant_refinement(&ch, &g).unwrap();
        assert!(r.is_simplicial() && r.refines_all(&ch) && r.is_invariant());
        assert!(r.weights_constant_on_orbits() && r.multipliers_divide_weights() && r.maps_are_stacky());
        assert!(verify_compatibility(&r, &g, &ch, &cg).unwrap().passed());
        // e1 + e2 over the cone (e1, e2) of the plane's fan
        let diag = r.fan().rays().position(&[BigInt::from(1), BigInt::from(1)]).unwrap();
        assert!(r.multipliers[diag].iter().all(|a| a.is_one()));
    }
}

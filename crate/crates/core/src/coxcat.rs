//! Hom spaces, exceptional orderings, semi-orthogonal decompositions and the
//! symmetry action on `Θ`.

use std::collections::BTreeSet;

use crate::bondal::ThetaCollection;
use crate::class_group::ClassGroup;
use crate::error::{Error, Result};
use crate::linalg::{ceil_rat, to_rat, Rat};
use crate::rays::RayConfig;
use crate::symmetry::{act_on_class, RaySymmetryGroup};

/// `#{m ∈ M : m + θ_t ∈ P_{θ_s}}`, the dimension of `Hom(O(-d_{θ_s}), O(-d_{θ_t}))`.
pub fn hom_dimension(theta_s: &[Rat], theta_t: &[Rat], rays: &RayConfig) -> Result<usize> {
    let ps = rays.pairings(theta_s);
    let pt = rays.pairings(theta_t);
    let b: Vec<Rat> = ps.iter().zip(&pt).map(|(s, t)| to_rat(&ceil_rat(s)) - t).collect();
    Ok(match rays.ray_polytope(&b)? {
        Some(p) => p.lattice_points().len(),
        None => 0,
    })
}

/// `dims[s][t] = hom_dimension` between the classes of `Θ`, by class index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomMatrix {
    pub dims: Vec<Vec<usize>>,
}

impl HomMatrix {
    pub fn new(theta: &ThetaCollection, rays: &RayConfig) -> Result<HomMatrix> {
        let k = theta.len();
        let mut dims = vec![vec![0; k]; k];
        for (s, row) in dims.iter_mut().enumerate() {
            for (t, d) in row.iter_mut().enumerate() {
                *d = hom_dimension(theta.class_sample(s), theta.class_sample(t), rays)?;
            }
        }
        Ok(HomMatrix { dims })
    }

    pub fn size(&self) -> usize {
        self.dims.len()
    }
}

/// A linear extension of `c <= c'` iff `c' - c` is effective, picking the
/// lexicographically smallest available class at each step.
pub fn exceptional_order(theta: &ThetaCollection, cg: &ClassGroup, rays: &RayConfig) -> Result<Vec<usize>> {
    let k = theta.len();
    // below[j] = classes i != j with c_i <= c_j
    let mut below: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); k];
    for i in 0..k {
        for j in 0..k {
            if i != j && cg.is_effective(&cg.sub(&theta.classes[j], &theta.classes[i]), rays)? {
                below[j].insert(i);
            }
        }
    }
    let mut placed = vec![false; k];
    let mut order = Vec::with_capacity(k);
    while order.len() < k {
        let next = (0..k)
            .find(|&j| !placed[j] && below[j].iter().all(|&i| placed[i]))
            .ok_or_else(|| Error::Internal("effective order has a cycle".into()))?;
        placed[next] = true;
        order.push(next);
    }
    Ok(order)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SodKind {
    Dimension,
    Depth,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SodPiece {
    /// `δ` for dimension pieces, `|J|` for depth pieces.
    pub index: usize,
    pub classes: Vec<usize>,
}

/// Ordered pieces: `⟨A_n, …, A_0⟩` by stratum dimension, or `⟨B_0, …, B_N⟩`
/// by depth `|J|`. Empty pieces are left out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SODecomposition {
    pub kind: SodKind,
    pub pieces: Vec<SodPiece>,
}

impl SODecomposition {
    pub fn position_of(&self, class: usize) -> Option<usize> {
        self.pieces.iter().position(|p| p.classes.contains(&class))
    }

    /// The partition as sets, ignoring the order.
    pub fn partition(&self) -> BTreeSet<Vec<usize>> {
        self.pieces.iter().map(|p| p.classes.clone()).collect()
    }
}

pub fn sod(theta: &ThetaCollection, kind: SodKind) -> Result<SODecomposition> {
    let mut keyed = Vec::with_capacity(theta.len());
    for c in 0..theta.len() {
        keyed.push(match kind {
            SodKind::Dimension => theta.class_dim(c)?,
            SodKind::Depth => theta.class_j(c)?.len(),
        });
    }
    let mut values: Vec<usize> = keyed.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    if kind == SodKind::Dimension {
        values.reverse();
    }
    let pieces = values
        .into_iter()
        .map(|v| SodPiece { index: v, classes: (0..theta.len()).filter(|&c| keyed[c] == v).collect() })
        .collect();
    Ok(SODecomposition { kind, pieces })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SodReport {
    /// Pairs `(s, t)` with a nonzero Hom but `J_s ⊄ J_t`.
    pub j_violations: Vec<(usize, usize)>,
    /// Pairs `(s, t)` with a nonzero Hom from a later piece to an earlier one.
    pub order_violations: Vec<(usize, usize)>,
}

impl SodReport {
    pub fn passed(&self) -> bool {
        self.j_violations.is_empty() && self.order_violations.is_empty()
    }
}

pub fn verify_sod_semiorthogonality(theta: &ThetaCollection, hom: &HomMatrix, sod: &SODecomposition) -> Result<SodReport> {
    let mut report = SodReport { j_violations: Vec::new(), order_violations: Vec::new() };
    let pos: Vec<usize> = (0..theta.len())
        .map(|c| sod.position_of(c).ok_or_else(|| Error::Internal(format!("class {c} missing from the decomposition"))))
        .collect::<Result<_>>()?;
    for s in 0..theta.len() {
        for t in 0..theta.len() {
            if hom.dims[s][t] == 0 {
                continue;
            }
            let js = theta.class_j(s)?;
            let jt = theta.class_j(t)?;
            if !js.iter().all(|r| jt.contains(r)) {
                report.j_violations.push((s, t));
            }
            if pos[s] > pos[t] {
                report.order_violations.push((s, t));
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaOrbitReport {
    /// For each group element, the induced permutation of class indices.
    pub permutations: Vec<Vec<usize>>,
    pub orbits: Vec<Vec<usize>>,
    /// `g ↦ permutation` respects the multiplication table.
    pub homomorphism: bool,
    /// Every orbit lies in one dimension piece and one depth piece.
    pub orbits_respect_sod: bool,
}

pub fn theta_orbit_report(theta: &ThetaCollection, group: &RaySymmetryGroup, cg: &ClassGroup) -> Result<ThetaOrbitReport> {
    let mut permutations = Vec::with_capacity(group.order());
    for g in &group.elements {
        let mut perm = Vec::with_capacity(theta.len());
        for c in &theta.classes {
            let img = act_on_class(g, c, cg)?;
            perm.push(theta.index_of(&img).ok_or_else(|| Error::Internal(format!("g maps {c} outside Θ")))?);
        }
        let distinct: BTreeSet<usize> = perm.iter().copied().collect();
        if distinct.len() != perm.len() {
            return Err(Error::Internal("group element does not permute Θ".into()));
        }
        permutations.push(perm);
    }
    let mut homomorphism = true;
    for g in 0..group.order() {
        for h in 0..group.order() {
            let gh = group.compose(g, h);
            let composed: Vec<usize> = permutations[h].iter().map(|&c| permutations[g][c]).collect();
            homomorphism &= composed == permutations[gh];
        }
    }
    let orbits = crate::symmetry::orbits(group.order(), theta.len(), |g, c| permutations[g][c]);
    let mut orbits_respect_sod = true;
    for orbit in &orbits {
        let dims: BTreeSet<usize> = orbit.iter().map(|&c| theta.class_dim(c)).collect::<Result<_>>()?;
        let depths: BTreeSet<usize> = orbit.iter().map(|&c| theta.class_j(c).map(|j| j.len())).collect::<Result<_>>()?;
        orbits_respect_sod &= dims.len() == 1 && depths.len() == 1;
    }
    Ok(ThetaOrbitReport { permutations, orbits, homomorphism, orbits_respect_sod })
}

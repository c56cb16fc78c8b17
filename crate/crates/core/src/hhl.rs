//! Resolutions attached to a sublattice `φ : N' ↪ N`, built from the faces of
//! the Bondal stratification restricted to `T̃_φ = {θ : ⟨θ, v⟩ ∈ ℤ, v ∈ im φ}`.
//!
//! Each face `F` of dimension `j` contributes the summand `O(-d_F)` in degree
//! `j`. The differential sends `F` to the faces on the boundary of its
//! closure, by the monomial `x^{a(b_E) - a(b_F)}` where `a(θ)_ρ = ⌊-⟨θ, u_ρ⟩⌋`
//! and `b_E`, `b_F` are the centroids of the lifts involved. Entries are kept
//! as polynomials in the Cox variables.

use std::collections::{BTreeMap, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arrangement::Arrangement;
use crate::bondal::{d_theta, d_theta_divisor};
use crate::class_group::{ClassGroup, DivisorClass};
use crate::error::{Error, Result};
use crate::linalg::{coordinates_in, reduce_mod_one, rref, to_rat_vec, IntMatrix, Rat};
use crate::rays::RayConfig;
use crate::snf::smith_normal_form;
use crate::symmetry::{act_on_class, RaySymmetryGroup};

/// Exponent vector ↦ coefficient; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly(pub BTreeMap<Vec<BigInt>, BigInt>);

impl Poly {
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add_term(&mut self, exp: Vec<BigInt>, coeff: BigInt) {
        let entry = self.0.entry(exp.clone()).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.0.remove(&exp);
        }
    }

    pub fn add(&mut self, other: &Poly) {
        for (e, c) in &other.0 {
            self.add_term(e.clone(), c.clone());
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::default();
        for (e1, c1) in &self.0 {
            for (e2, c2) in &other.0 {
                out.add_term(e1.iter().zip(e2).map(|(a, b)| a + b).collect(), c1 * c2);
            }
        }
        out
    }

    /// Value at `x_ρ = 1` for all `ρ`.
    pub fn at_one(&self) -> BigInt {
        self.0.values().fold(BigInt::zero(), |acc, c| acc + c)
    }

    /// Rename variables: `x_ρ ↦ x_{perm[ρ]}`.
    pub fn permute_variables(&self, perm: &[usize]) -> Poly {
        let mut out = Poly::default();
        for (e, c) in &self.0 {
            let mut f = vec![BigInt::zero(); e.len()];
            for (rho, x) in e.iter().enumerate() {
                f[perm[rho]] = x.clone();
            }
            out.add_term(f, c.clone());
        }
        out
    }

    pub fn negate(&self) -> Poly {
        Poly(self.0.iter().map(|(e, c)| (e.clone(), -c)).collect())
    }

    /// Written in `x0, x1, …` with `^` for powers, like `x0*x2 - x1^2`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (e, c) in self.0.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| if x.is_one() { format!("x{i}") } else { format!("x{i}^{x}") })
                .collect();
            let mag = c.abs();
            let body = match (mono.is_empty(), mag.is_one()) {
                (true, _) => mag.to_string(),
                (false, true) => mono.join("*"),
                (false, false) => format!("{mag}*{}", mono.join("*")),
            };
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct HhlTerm {
    /// Face of the restricted arrangement.
    pub face: usize,
    pub dim: usize,
    pub sample: Vec<Rat>,
    pub class: DivisorClass,
}

#[derive(Clone, Debug)]
pub struct HHLComplex {
    pub phi: IntMatrix,
    /// Whether `im φ` is saturated in `N`.
    pub saturated: bool,
    pub faces: Vec<HhlTerm>,
    /// Per degree `j`, face indices of the summands.
    pub terms: Vec<Vec<usize>>,
    /// `differential[j]` maps degree `j` to degree `j - 1`, as rows indexed by
    /// degree `j - 1` positions and columns by degree `j` positions.
    /// `differential[0]` is empty.
    pub differential: Vec<Vec<Vec<Poly>>>,
    by_key: BTreeMap<Vec<Rat>, usize>,
    position: Vec<usize>,
}

/// Row-reduced basis of the direction space of a point set and its pivots.
fn direction_basis(points: &[Vec<Rat>]) -> (Vec<Vec<Rat>>, Vec<usize>) {
    let p0 = &points[0];
    let mut diffs: Vec<Vec<Rat>> =
        points[1..].iter().map(|p| p.iter().zip(p0).map(|(a, b)| a - b).collect()).collect();
    if diffs.is_empty() {
        return (Vec::new(), Vec::new());
    }
    let pivots = rref(&mut diffs);
    diffs.truncate(pivots.len());
    (diffs, pivots)
}

fn det_sign(mut m: Vec<Vec<Rat>>) -> i32 {
    let k = m.len();
    let mut sign = 1;
    for c in 0..k {
        let Some(p) = (c..k).find(|&r| !m[r][c].is_zero()) else {
            return 0;
        };
        if p != c {
            m.swap(p, c);
            sign = -sign;
        }
        if m[c][c].is_negative() {
            sign = -sign;
        }
        for r in c + 1..k {
            let f = &m[r][c] / &m[c][c];
            for j in c..k {
                let x = &f * &m[c][j];
                m[r][j] -= x;
            }
        }
    }
    sign
}

fn is_saturated(phi: &IntMatrix) -> bool {
    if phi.cols() == 0 {
        return true;
    }
    smith_normal_form(phi).invariant_factors().iter().all(|d| d.is_one())
}

pub fn phi_zero(n: usize) -> IntMatrix {
    IntMatrix::zeros(n, 0)
}

pub fn hhl_complex(phi: &IntMatrix, rays: &RayConfig, cg: &ClassGroup) -> Result<HHLComplex> {
    let n = rays.dim();
    if phi.rows() != n {
        return Err(Error::Dimension(format!("φ has {} rows in rank {n}", phi.rows())));
    }
    if phi.rank() != phi.cols() {
        return Err(Error::NotInjective);
    }
    let columns: Vec<Vec<BigInt>> = (0..phi.cols()).map(|j| phi.column(j)).collect();
    let arr = Arrangement::new(rays, &columns)?;
    let faces: Vec<HhlTerm> = arr
        .faces
        .iter()
        .enumerate()
        .map(|(i, f)| HhlTerm { face: i, dim: f.dim, sample: f.sample.clone(), class: d_theta(&f.sample, rays, cg) })
        .collect();
    let top = faces.iter().map(|f| f.dim).max().unwrap_or(0);
    let mut terms = vec![Vec::new(); top + 1];
    let mut position = vec![0; faces.len()];
    for f in &faces {
        position[f.face] = terms[f.dim].len();
        terms[f.dim].push(f.face);
    }
    let orientation: Vec<(Vec<Vec<Rat>>, Vec<usize>)> =
        arr.faces.iter().map(|f| direction_basis(f.closure.vertices())).collect();

    let mut differential: Vec<Vec<Vec<Poly>>> = vec![Vec::new()];
    for j in 1..=top {
        let mut d = vec![vec![Poly::default(); terms[j].len()]; terms[j - 1].len()];
        for (col, &fi) in terms[j].iter().enumerate() {
            let face = &arr.faces[fi];
            let b_f = face.closure.centroid();
            let a_f = d_theta_divisor(&b_f, rays);
            let pivots = &orientation[fi].1;
            for facet in face.closure.facets() {
                let pts = face.closure.face_points(&facet);
                let b_e = crate::polytope::centroid(&pts);
                let ei = arr
                    .face_with_centroid(&b_e)
                    .ok_or_else(|| Error::Internal("boundary face missing from the arrangement".into()))?;
                let w: Vec<Rat> = b_e.iter().zip(&b_f).map(|(e, f)| e - f).collect();
                let mut rows = vec![w];
                rows.extend(orientation[ei].0.iter().cloned());
                let square: Vec<Vec<Rat>> = rows.iter().map(|r| pivots.iter().map(|&p| r[p].clone()).collect()).collect();
                let sign = det_sign(square);
                if sign == 0 {
                    return Err(Error::Internal("degenerate boundary orientation".into()));
                }
                let a_e = d_theta_divisor(&b_e, rays);
                let exp: Vec<BigInt> = a_e.iter().zip(&a_f).map(|(e, f)| e - f).collect();
                d[position[ei]][col].add_term(exp, BigInt::from(sign));
            }
        }
        differential.push(d);
    }
    let by_key = faces.iter().map(|f| (f.sample.clone(), f.face)).collect();
    Ok(HHLComplex { phi: phi.clone(), saturated: is_saturated(phi), faces, terms, differential, by_key, position })
}

impl HHLComplex {
    pub fn top_degree(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn term_classes(&self, j: usize) -> Vec<DivisorClass> {
        self.terms[j].iter().map(|&f| self.faces[f].class.clone()).collect()
    }

    pub fn term_counts(&self) -> Vec<usize> {
        self.terms.iter().map(|t| t.len()).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.terms.iter().enumerate().map(|(j, t)| if j % 2 == 0 { t.len() as i64 } else { -(t.len() as i64) }).sum()
    }

    /// `differential[j]` with every entry evaluated at `x = 1`.
    pub fn integer_differential(&self, j: usize) -> Vec<Vec<BigInt>> {
        self.differential[j].iter().map(|row| row.iter().map(Poly::at_one).collect()).collect()
    }

    /// `d_{j-1} ∘ d_j = 0` as polynomial matrices, for all `j`.
    pub fn is_chain_complex(&self) -> bool {
        (2..=self.top_degree()).all(|j| {
            let (lower, upper) = (&self.differential[j - 1], &self.differential[j]);
            lower.iter().all(|row| {
                (0..self.terms[j].len()).all(|c| {
                    let mut acc = Poly::default();
                    for (k, entry) in row.iter().enumerate() {
                        acc.add(&entry.mul(&upper[k][c]));
                    }
                    acc.is_zero()
                })
            })
        })
    }

    fn face_of_sample(&self, theta: &[Rat]) -> Option<usize> {
        self.by_key.get(&reduce_mod_one(theta)).copied()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvarianceWitness {
    pub element: usize,
    /// Per degree, the position of the image of each summand.
    pub permutation: Vec<Vec<usize>>,
    /// Per degree, the sign attached to each summand.
    pub signs: Vec<Vec<i8>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvarianceReport {
    pub witnesses: Vec<InvarianceWitness>,
    pub violations: Vec<String>,
}

impl InvarianceReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn preserves_image(g: &IntMatrix, phi: &IntMatrix) -> bool {
    let cols: Vec<Vec<Rat>> = (0..phi.cols()).map(|j| to_rat_vec(&phi.column(j))).collect();
    (0..phi.cols()).all(|j| {
        let img = to_rat_vec(&g.mul_vec(&phi.column(j)));
        coordinates_in(&cols, &img).is_some_and(|c| c.iter().all(|x| x.is_integer()))
    })
}

/// For each listed element `g`, find a permutation of summands and signs `ε`
/// with `d[gE][gF] = ε_E ε_F · g(d[E][F])`, where `g` renames the Cox variables.
pub fn hhl_invariance(
    complex: &HHLComplex,
    group: &RaySymmetryGroup,
    elements: &[usize],
    cg: &ClassGroup,
) -> Result<InvarianceReport> {
    let mut report = InvarianceReport { witnesses: Vec::new(), violations: Vec::new() };
    for &gi in elements {
        let g = &group.elements[gi];
        if !preserves_image(&g.matrix, &complex.phi) {
            return Err(Error::SublatticeNotPreserved(gi));
        }
        let mut image = vec![0; complex.faces.len()];
        let mut ok = true;
        for f in &complex.faces {
            let Some(t) = complex.face_of_sample(&g.act_on_m(&f.sample)) else {
                return Err(Error::Internal(format!("element {gi} moves a face off the arrangement")));
            };
            if complex.faces[t].dim != f.dim {
                return Err(Error::Internal(format!("element {gi} changes a face dimension")));
            }
            if complex.faces[t].class != act_on_class(g, &f.class, cg)? {
                report.violations.push(format!("element {gi}: face {} maps to a summand of another class", f.face));
                ok = false;
            }
            image[f.face] = t;
        }
        // ε via propagation along nonzero entries
        let mut sign: Vec<Option<i8>> = vec![None; complex.faces.len()];
        for start in 0..complex.faces.len() {
            if sign[start].is_some() {
                continue;
            }
            sign[start] = Some(1);
            let mut queue = VecDeque::from([start]);
            while let Some(f) = queue.pop_front() {
                let j = complex.faces[f].dim;
                let sf = sign[f].expect("assigned");
                let mut neighbours: Vec<(usize, Poly, Poly)> = Vec::new();
                if j > 0 {
                    let col = complex.position[f];
                    for (row, &e) in complex.terms[j - 1].iter().enumerate() {
                        let entry = &complex.differential[j][row][col];
                        let target = &complex.differential[j][complex.position[image[e]]][complex.position[image[f]]];
                        neighbours.push((e, entry.permute_variables(&g.ray_permutation), target.clone()));
                    }
                }
                if j < complex.top_degree() {
                    let row = complex.position[f];
                    for (col, &e) in complex.terms[j + 1].iter().enumerate() {
                        let entry = &complex.differential[j + 1][row][col];
                        let target = &complex.differential[j + 1][complex.position[image[f]]][complex.position[image[e]]];
                        neighbours.push((e, entry.permute_variables(&g.ray_permutation), target.clone()));
                    }
                }
                for (e, moved, target) in neighbours {
                    if moved.is_zero() && target.is_zero() {
                        continue;
                    }
                    let rel = if target == moved {
                        1
                    } else if target == moved.negate() {
                        -1
                    } else {
                        report.violations.push(format!("element {gi}: entry at faces {f}, {e} is not carried over"));
                        ok = false;
                        continue;
                    };
                    let want = sf * rel;
                    match sign[e] {
                        None => {
                            sign[e] = Some(want);
                            queue.push_back(e);
                        }
                        Some(s) if s != want => {
                            report.violations.push(format!("element {gi}: no consistent sign at face {e}"));
                            ok = false;
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        if ok {
            report.witnesses.push(InvarianceWitness {
                element: gi,
                permutation: complex
                    .terms
                    .iter()
                    .map(|t| t.iter().map(|&f| complex.position[image[f]]).collect())
                    .collect(),
                signs: complex.terms.iter().map(|t| t.iter().map(|&f| sign[f].expect("assigned")).collect()).collect(),
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::class_group::class_group;
    use crate::symmetry::compute_symmetry_group;

    fn cls(v: &[i64]) -> DivisorClass {
        DivisorClass::from_i64(v)
    }

    #[test]
    fn projective_plane_full_torus() {
        let rays = RayConfig::from_i64(2, &[&[1, 0], &[0, 1], &[-1, -1]]).unwrap();
        let cg = class_group(&rays);
        let c = hhl_complex(&phi_zero(2), &rays, &cg).unwrap();
        assert_eq!(c.term_counts(), vec![1, 3, 2]);
        assert_eq!(c.term_classes(0), vec![cls(&[0])]);
        assert_eq!(c.term_classes(1), vec![cls(&[-1]); 3]);
        let mut top = c.term_classes(2);
        top.sort();
        assert_eq!(top, vec![cls(&[-2]), cls(&[-1])]);
        assert!(c.is_chain_complex());
        assert_eq!(c.euler_characteristic(), 0);
        let g = compute_symmetry_group(&rays).unwrap();
        let all: Vec<usize> = (0..g.order()).collect();
        assert!(hhl_invariance(&c, &g, &all, &cg).unwrap().passed());
    }

    #[test]
    fn identity_gives_structure_sheaf() {
        let rays = RayConfig::from_i64(2, &[&[1, 0], &[0, 1], &[-1, -1]]).unwrap();
        let cg = class_group(&rays);
        let c = hhl_complex(&IntMatrix::identity(2), &rays, &cg).unwrap();
        assert_eq!(c.term_counts(), vec![1]);
        assert_eq!(c.euler_characteristic(), 1);
    }

    #[test]
    fn diagonal_in_product_of_lines() {
        let rays = RayConfig::from_i64(2, &[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]).unwrap();
        let cg = class_group(&rays);
        let phi = IntMatrix::from_i64_rows(&[&[1], &[1]]);
        let c = hhl_complex(&phi, &rays, &cg).unwrap();
        assert_eq!(c.term_counts(), vec![1, 1]);
        assert_eq!(c.term_classes(1), vec![cls(&[-1, -1])]);
        let d = &c.differential[1][0][0];
        assert_eq!(d.0.len(), 2);
        assert_eq!(d.at_one(), BigInt::zero());
        let g = compute_symmetry_group(&rays).unwrap();
        let swap = g.find_by_matrix(&IntMatrix::from_i64_rows(&[&[0, 1], &[1, 0]])).unwrap();
        assert!(hhl_invariance(&c, &g, &[swap], &cg).unwrap().passed());
        let flip = g.find_by_matrix(&IntMatrix::from_i64_rows(&[&[-1, 0], &[0, 1]])).unwrap();
        assert!(matches!(hhl_invariance(&c, &g, &[flip], &cg), Err(Error::SublatticeNotPreserved(_))));
    }

    #[test]
    fn rejects_non_injective() {
        let rays = RayConfig::from_i64(2, &[&[1, 0], &[0, 1], &[-1, -1]]).unwrap();
        let cg = class_group(&rays);
        let phi = IntMatrix::from_i64_rows(&[&[1, 2], &[1, 2]]);
        assert!(matches!(hhl_complex(&phi, &rays, &cg), Err(Error::NotInjective)));
    }
}

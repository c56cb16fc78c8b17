//! Faces of the periodic hyperplane arrangement `{⟨k, u_ρ⟩ ∈ ℤ}` on the torus
//! `M_ℝ/M`, optionally restricted to the periodic subspace
//! `{⟨k, v⟩ ∈ ℤ for v in a list of extra vectors}`.
//!
//! Every point of the torus has one representative in the half-open cube
//! `[0,1)ⁿ`, which splits into relatively open cube faces (each coordinate
//! either `= 0` or in `(0,1)`). A depth-first search refines each cube face
//! by the level of every linear form, keeping the closure of the current
//! cell as a polytope. The leaves are pieces of relatively open lifted faces,
//! each identified by its level vector. A lifted face is rebuilt from its
//! levels and identified on the torus by its vertex centroid modulo `ℤⁿ`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{ceil_rat, dot, floor_rat, reduce_mod_one, to_rat, to_rat_vec, Rat};
use crate::polytope::Polytope;
use crate::rays::RayConfig;

/// A relatively open face of the arrangement on the torus, stored through
/// its lift whose vertex centroid lies in `[0,1)ⁿ`.
#[derive(Clone, Debug)]
pub struct TorusFace {
    pub dim: usize,
    /// Vertex centroid of the lift, in `[0,1)ⁿ`; doubles as the canonical key.
    pub sample: Vec<Rat>,
    /// Per ray: `2c` when `⟨k, u_ρ⟩ = c` on the face, `2c + 1` when it lies in `(c, c+1)`.
    pub ray_levels: Vec<BigInt>,
    /// Per extra vector: the integer value of `⟨k, v⟩` on the face.
    pub extra_levels: Vec<BigInt>,
    pub closure: Polytope,
}

impl TorusFace {
    /// Rays on which `⟨k, u_ρ⟩` is a constant integer over the face.
    pub fn integral_rays(&self) -> Vec<usize> {
        self.ray_levels.iter().enumerate().filter(|(_, f)| f.is_even()).map(|(i, _)| i).collect()
    }
}

#[derive(Clone, Debug)]
pub struct Arrangement {
    n: usize,
    rays: Vec<Vec<Rat>>,
    extra: Vec<Vec<Rat>>,
    basis: Vec<usize>,
    pub faces: Vec<TorusFace>,
    by_key: BTreeMap<Vec<Rat>, usize>,
}

fn level_of(x: &Rat) -> BigInt {
    if x.is_integer() {
        x.to_integer() * 2
    } else {
        floor_rat(x) * 2 + 1
    }
}

fn level_range(f: &BigInt) -> (Rat, Rat) {
    let lo = to_rat(&f.div_floor(&BigInt::from(2)));
    if f.is_even() {
        (lo.clone(), lo)
    } else {
        let hi = &lo + Rat::one();
        (lo, hi)
    }
}

struct Search<'a> {
    forms: &'a [Vec<Rat>],
    n_extra: usize,
    leaves: BTreeSet<Vec<BigInt>>,
}

impl Search<'_> {
    fn go(&mut self, depth: usize, cell: Polytope, levels: &mut Vec<BigInt>) {
        if depth == self.forms.len() {
            self.leaves.insert(levels.clone());
            return;
        }
        let a = &self.forms[depth];
        let (lo, hi) = cell.range_of(a);
        let extra = depth < self.n_extra;
        if lo == hi {
            if extra && !lo.is_integer() {
                return;
            }
            levels.push(if extra { lo.to_integer() } else { level_of(&lo) });
            self.go(depth + 1, cell, levels);
            levels.pop();
            return;
        }
        // hyperplanes strictly crossing the open cell
        let mut k = floor_rat(&lo) + 1;
        while to_rat(&k) < hi {
            let kr = to_rat(&k);
            if let Some(c) = cell.cut_equal(a, &kr) {
                levels.push(if extra { k.clone() } else { &k * 2 });
                self.go(depth + 1, c, levels);
                levels.pop();
            }
            k += 1;
        }
        if extra {
            return;
        }
        let mut j = floor_rat(&lo);
        let top = ceil_rat(&hi);
        while j < top {
            let jr = to_rat(&j);
            let jr1 = &jr + Rat::one();
            let lower = (jr > lo).then_some(&jr);
            let upper = (jr1 < hi).then_some(&jr1);
            if let Some(c) = cell.cut_range(a, lower, upper) {
                levels.push(&j * 2 + 1);
                self.go(depth + 1, c, levels);
                levels.pop();
            }
            j += 1;
        }
    }
}

impl Arrangement {
    /// The arrangement of `rays` restricted to `{⟨k, v⟩ ∈ ℤ : v ∈ extra}`.
    pub fn new(rays: &RayConfig, extra: &[Vec<BigInt>]) -> Result<Arrangement> {
        let n = rays.dim();
        let basis = rays.basis()?.to_vec();
        if let Some(v) = extra.iter().find(|v| v.len() != n) {
            return Err(Error::Dimension(format!("vector of length {} in rank {n}", v.len())));
        }
        let ray_forms = rays.rays_rat().to_vec();
        let extra: Vec<Vec<Rat>> = extra.iter().map(|v| to_rat_vec(v)).collect();
        let mut forms = extra.clone();
        forms.extend(ray_forms.iter().cloned());

        let mut search = Search { forms: &forms, n_extra: extra.len(), leaves: BTreeSet::new() };
        for mask in 0u32..(1 << n) {
            let lo = vec![Rat::zero(); n];
            let hi: Vec<Rat> = (0..n).map(|i| if mask >> i & 1 == 1 { Rat::zero() } else { Rat::one() }).collect();
            search.go(0, Polytope::cube(&lo, &hi), &mut Vec::new());
        }
        let leaves = std::mem::take(&mut search.leaves);

        let mut arr = Arrangement { n, rays: ray_forms, extra, basis, faces: Vec::new(), by_key: BTreeMap::new() };
        let mut found: BTreeMap<(usize, Vec<Rat>), TorusFace> = BTreeMap::new();
        for levels in leaves {
            let (extra_levels, ray_levels) = levels.split_at(arr.extra.len());
            let face = arr.build_face(ray_levels.to_vec(), extra_levels.to_vec())?;
            found.entry((face.dim, face.sample.clone())).or_insert(face);
        }
        arr.faces = found.into_values().collect();
        arr.by_key = arr.faces.iter().enumerate().map(|(i, f)| (f.sample.clone(), i)).collect();
        Ok(arr)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Closure of the lifted face with the given levels, moved so its vertex
    /// centroid lies in `[0,1)ⁿ`.
    fn build_face(&self, ray_levels: Vec<BigInt>, extra_levels: Vec<BigInt>) -> Result<TorusFace> {
        let closure = self.closure_of(&ray_levels, &extra_levels)?;
        let c = closure.centroid();
        let shift: Vec<BigInt> = c.iter().map(floor_rat).collect();
        if shift.iter().all(|x| x.is_zero()) {
            let dim = closure.affine_dim();
            return Ok(TorusFace { dim, sample: c, ray_levels, extra_levels, closure });
        }
        let ray_levels: Vec<BigInt> = ray_levels
            .iter()
            .zip(&self.rays)
            .map(|(f, u)| f - (dot(&to_rat_vec(&shift), u) * Rat::from_integer(2.into())).to_integer())
            .collect();
        let extra_levels: Vec<BigInt> = extra_levels
            .iter()
            .zip(&self.extra)
            .map(|(f, v)| f - dot(&to_rat_vec(&shift), v).to_integer())
            .collect();
        let closure = self.closure_of(&ray_levels, &extra_levels)?;
        let sample = closure.centroid();
        let dim = closure.affine_dim();
        Ok(TorusFace { dim, sample, ray_levels, extra_levels, closure })
    }

    fn closure_of(&self, ray_levels: &[BigInt], extra_levels: &[BigInt]) -> Result<Polytope> {
        let p: Vec<Vec<Rat>> = self.basis.iter().map(|&b| self.rays[b].clone()).collect();
        let (lo, hi): (Vec<Rat>, Vec<Rat>) = self.basis.iter().map(|&b| level_range(&ray_levels[b])).unzip();
        let mut poly = Polytope::parallelepiped(&p, &lo, &hi).expect("basis rays are independent");
        let empty = || Error::Internal("face closure is empty".into());
        for (i, u) in self.rays.iter().enumerate() {
            if self.basis.contains(&i) {
                continue;
            }
            let (l, h) = level_range(&ray_levels[i]);
            poly = poly.cut_range(u, Some(&l), Some(&h)).ok_or_else(empty)?;
        }
        for (v, k) in self.extra.iter().zip(extra_levels) {
            poly = poly.cut_equal(v, &to_rat(k)).ok_or_else(empty)?;
        }
        Ok(poly)
    }

    /// Face whose vertex centroid is congruent to `centroid` modulo `ℤⁿ`.
    pub fn face_with_centroid(&self, centroid: &[Rat]) -> Option<usize> {
        self.by_key.get(&reduce_mod_one(centroid)).copied()
    }

    /// The face containing the point `theta` (which must lie in the
    /// restricted subspace).
    pub fn locate(&self, theta: &[Rat]) -> Result<usize> {
        let ray_levels: Vec<BigInt> = self.rays.iter().map(|u| level_of(&dot(theta, u))).collect();
        let mut extra_levels = Vec::new();
        for v in &self.extra {
            let x = dot(theta, v);
            if !x.is_integer() {
                return Err(Error::Precondition("point is off the restricted subspace".into()));
            }
            extra_levels.push(x.to_integer());
        }
        let closure = self.closure_of(&ray_levels, &extra_levels)?;
        self.face_with_centroid(&closure.centroid())
            .ok_or_else(|| Error::Internal("located face missing from the enumeration".into()))
    }

    pub fn counts_by_dim(&self) -> Vec<usize> {
        let mut out = vec![0; self.n + 1];
        for f in &self.faces {
            out[f.dim] += 1;
        }
        out
    }
}

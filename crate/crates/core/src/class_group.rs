//! The class group `Cl(X) = coker(M → ℤ^{Σ(1)})` and divisor classes.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{dot_int, to_rat, IntMatrix, Rat};
use crate::rays::RayConfig;
use crate::snf::{row_hermite_form, smith_normal_form};

/// An element of `ℤ^rank ⊕ ⊕ ℤ/t_i`, torsion residues kept in `[0, t_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DivisorClass {
    pub free_part: Vec<BigInt>,
    pub torsion_part: Vec<BigInt>,
}

impl DivisorClass {
    pub fn free(coords: Vec<BigInt>) -> Self {
        DivisorClass { free_part: coords, torsion_part: Vec::new() }
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        Self::free(coords.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.free_part.iter().chain(&self.torsion_part).all(|x| x.is_zero())
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let free: Vec<String> = self.free_part.iter().map(|x| x.to_string()).collect();
        if self.free_part.len() == 1 && self.torsion_part.is_empty() {
            return write!(f, "{}", free[0]);
        }
        write!(f, "({})", free.join(", "))?;
        if !self.torsion_part.is_empty() {
            let tors: Vec<String> = self.torsion_part.iter().map(|x| x.to_string()).collect();
            write!(f, " + torsion [{}]", tors.join(", "))?;
        }
        Ok(())
    }
}

/// Presentation of `Cl(X)`. Rows of `degree_map` are coordinates: the first
/// `rank` are free, the rest are read modulo `torsion_orders`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassGroup {
    n_rays: usize,
    rank: usize,
    torsion_orders: Vec<BigInt>,
    degree_map: IntMatrix,
    // y = U a; quotient coordinates before the free part was put in Hermite form
    u_inverse: IntMatrix,
    snf_rank: usize,
    torsion_rows: Vec<usize>,
    hermite_inverse: IntMatrix,
}

pub fn class_group(rays: &RayConfig) -> ClassGroup {
    let p = rays.pairing_matrix();
    let r = rays.len();
    let s = smith_normal_form(&p);
    let k = s.rank();
    let diag: Vec<BigInt> = (0..k).map(|i| s.d.get(i, i).clone()).collect();
    let torsion_rows: Vec<usize> = (0..k).filter(|&i| !diag[i].is_one()).collect();
    let torsion_orders: Vec<BigInt> = torsion_rows.iter().map(|&i| diag[i].clone()).collect();

    let free_rows: Vec<Vec<BigInt>> = (k..r).map(|i| s.u.row(i).to_vec()).collect();
    let free = IntMatrix::from_rows(&free_rows, r).expect("row length");
    let (w, h) = row_hermite_form(&free);
    let mut rows = h.row_vecs();
    for (&i, t) in torsion_rows.iter().zip(&torsion_orders) {
        rows.push(s.u.row(i).iter().map(|x| x.mod_floor(t)).collect());
    }
    ClassGroup {
        n_rays: r,
        rank: r - k,
        torsion_orders,
        degree_map: IntMatrix::from_rows(&rows, r).expect("row length"),
        u_inverse: s.u.inverse_unimodular().expect("unimodular"),
        snf_rank: k,
        torsion_rows,
        hermite_inverse: w.inverse_unimodular().expect("unimodular"),
    }
}

impl ClassGroup {
    pub fn n_rays(&self) -> usize {
        self.n_rays
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion_orders(&self) -> &[BigInt] {
        &self.torsion_orders
    }

    pub fn degree_map(&self) -> &IntMatrix {
        &self.degree_map
    }

    pub fn zero(&self) -> DivisorClass {
        DivisorClass {
            free_part: vec![BigInt::zero(); self.rank],
            torsion_part: vec![BigInt::zero(); self.torsion_orders.len()],
        }
    }

    fn normalize(&self, mut c: DivisorClass) -> DivisorClass {
        for (x, t) in c.torsion_part.iter_mut().zip(&self.torsion_orders) {
            *x = x.mod_floor(t);
        }
        c
    }

    /// Class of the divisor `Σ a_ρ D_ρ`.
    pub fn degree(&self, a: &[BigInt]) -> DivisorClass {
        let free_part = (0..self.rank).map(|i| dot_int(self.degree_map.row(i), a)).collect();
        let torsion_part = (0..self.torsion_orders.len())
            .map(|j| dot_int(self.degree_map.row(self.rank + j), a))
            .collect();
        self.normalize(DivisorClass { free_part, torsion_part })
    }

    pub fn degree_of_ray(&self, rho: usize) -> DivisorClass {
        let mut e = vec![BigInt::zero(); self.n_rays];
        e[rho] = BigInt::one();
        self.degree(&e)
    }

    /// Image of `D_ρ` in `Cl(X)_ℚ`.
    pub fn free_degree_rat(&self, rho: usize) -> Vec<Rat> {
        (0..self.rank).map(|i| to_rat(self.degree_map.get(i, rho))).collect()
    }

    /// Free part of the class of a rational divisor.
    pub fn degree_rat(&self, a: &[Rat]) -> Vec<Rat> {
        (0..self.rank)
            .map(|i| a.iter().zip(self.degree_map.row(i)).fold(Rat::zero(), |acc, (x, d)| acc + x * d))
            .collect()
    }

    pub fn check(&self, c: &DivisorClass) -> Result<()> {
        if c.free_part.len() != self.rank || c.torsion_part.len() != self.torsion_orders.len() {
            return Err(Error::Dimension(format!(
                "class has shape ({}, {}), group has ({}, {})",
                c.free_part.len(),
                c.torsion_part.len(),
                self.rank,
                self.torsion_orders.len()
            )));
        }
        Ok(())
    }

    /// Some integral divisor whose class is `c`.
    pub fn lift(&self, c: &DivisorClass) -> Result<Vec<BigInt>> {
        self.check(c)?;
        let mut y = vec![BigInt::zero(); self.n_rays];
        for (&i, t) in self.torsion_rows.iter().zip(&c.torsion_part) {
            y[i] = t.clone();
        }
        let f = self.hermite_inverse.mul_vec(&c.free_part);
        for (j, x) in f.into_iter().enumerate() {
            y[self.snf_rank + j] = x;
        }
        let a = self.u_inverse.mul_vec(&y);
        if self.degree(&a) != self.normalize(c.clone()) {
            return Err(Error::Internal("class lift does not reproduce the class".into()));
        }
        Ok(a)
    }

    pub fn add(&self, a: &DivisorClass, b: &DivisorClass) -> DivisorClass {
        self.normalize(a.clone() + b.clone())
    }

    pub fn sub(&self, a: &DivisorClass, b: &DivisorClass) -> DivisorClass {
        self.normalize(a.clone() - b.clone())
    }

    pub fn neg(&self, a: &DivisorClass) -> DivisorClass {
        self.normalize(-a.clone())
    }

    /// Whether `c` is the class of an effective divisor. Every lift of `c` is
    /// `a + (⟨m, u_ρ⟩)_ρ`, so this asks for a lattice point of
    /// `{k : ⟨k, u_ρ⟩ <= a_ρ}`, a bounded polytope when the rays positively span.
    pub fn is_effective(&self, c: &DivisorClass, rays: &RayConfig) -> Result<bool> {
        let a = self.lift(c)?;
        let b: Vec<Rat> = a.iter().map(to_rat).collect();
        Ok(match rays.ray_polytope(&b)? {
            Some(p) => !p.lattice_points().is_empty(),
            None => false,
        })
    }

    /// Express `c` in a basis of `Cl(X)` given by divisors (free, torsion-free groups only).
    pub fn coordinates_in_basis(&self, c: &DivisorClass, basis: &[Vec<BigInt>]) -> Result<Vec<BigInt>> {
        if !self.torsion_orders.is_empty() || basis.len() != self.rank {
            return Err(Error::Precondition("class basis must be a basis of a free class group".into()));
        }
        let cols: Vec<Vec<BigInt>> = basis.iter().map(|d| self.degree(d).free_part).collect();
        let m = IntMatrix::from_columns(&cols, self.rank)?;
        let inv = m
            .inverse_unimodular()
            .ok_or_else(|| Error::Precondition("class basis is not a ℤ-basis".into()))?;
        Ok(inv.mul_vec(&c.free_part))
    }
}

impl Add for DivisorClass {
    type Output = DivisorClass;
    fn add(self, o: DivisorClass) -> DivisorClass {
        DivisorClass {
            free_part: self.free_part.iter().zip(&o.free_part).map(|(a, b)| a + b).collect(),
            torsion_part: self.torsion_part.iter().zip(&o.torsion_part).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for DivisorClass {
    type Output = DivisorClass;
    fn sub(self, o: DivisorClass) -> DivisorClass {
        self + (-o)
    }
}

impl Neg for DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        DivisorClass {
            free_part: self.free_part.into_iter().map(|x| -x).collect(),
            torsion_part: self.torsion_part.into_iter().map(|x| -x).collect(),
        }
    }
}

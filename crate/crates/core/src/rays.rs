//! Validated ray configurations.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{dot_mixed, gcd_all, rank, rat, to_rat_vec, IntMatrix, Rat};
use crate::lp::{self, Constraint, Relation};
use crate::polytope::Polytope;

/// A finite set of primitive, pairwise distinct, nonzero vectors in `N = ℤⁿ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayConfig {
    n: usize,
    rays: Vec<Vec<BigInt>>,
    rays_rat: Vec<Vec<Rat>>,
    basis: Option<Vec<usize>>,
    balance: Option<Vec<Rat>>,
}

fn fmt_vec(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

impl RayConfig {
    pub fn new(n: usize, rays: Vec<Vec<BigInt>>) -> Result<Self> {
        for (i, r) in rays.iter().enumerate() {
            if r.len() != n {
                return Err(Error::Dimension(format!("ray {i} has {} coordinates, lattice rank is {n}", r.len())));
            }
            if r.iter().all(|x| x.is_zero()) {
                return Err(Error::ZeroRay { index: i });
            }
            if !gcd_all(r).is_one() {
                return Err(Error::NonPrimitiveRay { index: i, ray: fmt_vec(r) });
            }
            if let Some(j) = rays[..i].iter().position(|s| s == r) {
                return Err(Error::DuplicateRay { first: j, second: i });
            }
        }
        let rays_rat: Vec<Vec<Rat>> = rays.iter().map(|r| to_rat_vec(r)).collect();

        // greedy lexicographically first basis
        let mut basis = Vec::new();
        let mut chosen: Vec<Vec<Rat>> = Vec::new();
        for (i, r) in rays_rat.iter().enumerate() {
            chosen.push(r.clone());
            if rank(&chosen) == chosen.len() {
                basis.push(i);
            } else {
                chosen.pop();
            }
        }
        let basis = (basis.len() == n).then_some(basis);

        // λ >= 1 with Σ λ_ρ u_ρ = 0
        let m = rays.len();
        let balance = if basis.is_some() && m > 0 {
            let mut cons = Vec::new();
            for j in 0..n {
                cons.push(Constraint::new(rays_rat.iter().map(|r| r[j].clone()).collect(), Relation::Eq, Rat::zero()));
            }
            for i in 0..m {
                let mut e = vec![Rat::zero(); m];
                e[i] = rat(1);
                cons.push(Constraint::new(e, Relation::Ge, rat(1)));
            }
            match lp::maximize(&vec![Rat::zero(); m], &cons) {
                lp::LpResult::Optimal { x, .. } => Some(x),
                _ => None,
            }
        } else {
            None
        };
        Ok(RayConfig { n, rays, rays_rat, basis, balance })
    }

    pub fn from_i64(n: usize, rays: &[&[i64]]) -> Result<Self> {
        Self::new(n, rays.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> &[BigInt] {
        &self.rays[i]
    }

    pub fn rays_rat(&self) -> &[Vec<Rat>] {
        &self.rays_rat
    }

    pub fn position(&self, v: &[BigInt]) -> Option<usize> {
        self.rays.iter().position(|r| r == v)
    }

    /// The `|Σ(1)| × n` matrix whose rows are the rays: `m ↦ (⟨m, u_ρ⟩)_ρ`.
    pub fn pairing_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(&self.rays, self.n).expect("validated rays")
    }

    pub fn spans(&self) -> bool {
        self.basis.is_some()
    }

    /// Indices of a basis of `N_ℚ` chosen greedily among the rays.
    pub fn basis(&self) -> Result<&[usize]> {
        self.basis.as_deref().ok_or(Error::NotSpanning)
    }

    pub fn positively_spans(&self) -> bool {
        self.balance.is_some()
    }

    /// `(⟨θ, u_ρ⟩)_ρ`
    pub fn pairings(&self, theta: &[Rat]) -> Vec<Rat> {
        self.rays.iter().map(|u| dot_mixed(theta, u)).collect()
    }

    /// The polytope `{k ∈ M_ℝ : ⟨k, u_ρ⟩ <= b_ρ}`, bounded because the rays
    /// positively span. `Ok(None)` when it is empty.
    pub fn ray_polytope(&self, b: &[Rat]) -> Result<Option<Polytope>> {
        let lambda = self.balance.as_ref().ok_or(Error::NotPositivelySpanning)?;
        let basis = self.basis()?;
        // Σ λ_ρ ⟨k,u_ρ⟩ = 0 gives ⟨k,u_σ⟩ >= -(Σ_{ρ≠σ} λ_ρ b_ρ) / λ_σ
        let total: Rat = lambda.iter().zip(b).fold(Rat::zero(), |acc, (l, x)| acc + l * x);
        let mut lo = Vec::with_capacity(self.n);
        let mut hi = Vec::with_capacity(self.n);
        for &s in basis {
            let rest = &total - &lambda[s] * &b[s];
            lo.push(-rest / &lambda[s]);
            hi.push(b[s].clone());
        }
        if lo.iter().zip(&hi).any(|(l, h)| l > h) {
            return Ok(None);
        }
        let p: Vec<Vec<Rat>> = basis.iter().map(|&s| self.rays_rat[s].clone()).collect();
        let mut poly = Polytope::parallelepiped(&p, &lo, &hi).expect("basis is invertible");
        for (i, u) in self.rays_rat.iter().enumerate() {
            if basis.contains(&i) {
                continue;
            }
            match poly.cut(u, &b[i]) {
                Some(q) => poly = q,
                None => return Ok(None),
            }
        }
        Ok(Some(poly))
    }
}

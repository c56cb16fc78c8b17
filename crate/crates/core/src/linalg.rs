//! Exact dense linear algebra over ℤ and ℚ.
//!
//! Matrices are small (desk-scale toric data), so everything is dense and
//! row-major. No floating point is used anywhere.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn rat(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

pub fn to_rat(v: &BigInt) -> Rat {
    Rat::from_integer(v.clone())
}

pub fn to_rat_vec(v: &[BigInt]) -> Vec<Rat> {
    v.iter().map(to_rat).collect()
}

pub fn int_vec(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

pub fn dot_int(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).fold(BigInt::zero(), |acc, (x, y)| acc + x * y)
}

/// `⟨a, b⟩` for a rational `a` and an integer `b`.
pub fn dot_mixed(a: &[Rat], b: &[BigInt]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

pub fn gcd_all(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

pub fn lcm(a: &BigInt, b: &BigInt) -> BigInt {
    a.lcm(b)
}

/// Scale a nonzero rational vector to the primitive integer vector on the same ray.
pub fn primitive_on_ray(v: &[Rat]) -> Vec<BigInt> {
    let denom = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scaled: Vec<BigInt> = v.iter().map(|x| (x * to_rat(&denom)).to_integer()).collect();
    let g = gcd_all(&scaled);
    if g.is_zero() {
        return scaled;
    }
    scaled.into_iter().map(|x| x / &g).collect()
}

/// Reduce `m` to reduced row echelon form in place and return the pivot columns.
pub fn rref(m: &mut [Vec<Rat>]) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let sub = &f * &m[r][j];
                    m[i][j] -= sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(vectors: &[Vec<Rat>]) -> usize {
    let mut m = vectors.to_vec();
    rref(&mut m).len()
}

pub fn rank_int(vectors: &[Vec<BigInt>]) -> usize {
    let m: Vec<Vec<Rat>> = vectors.iter().map(|v| to_rat_vec(v)).collect();
    rank(&m)
}

/// Basis of `{x : row · x = 0 for every row}` in `ℚ^n`.
pub fn nullspace(rows: &[Vec<Rat>], n: usize) -> Vec<Vec<Rat>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); n];
            v[f] = Rat::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

/// Inverse of a square rational matrix, `None` if singular.
pub fn inverse(a: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = a.len();
    let mut aug: Vec<Vec<Rat>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_vec(a: &[Vec<Rat>], x: &[Rat]) -> Vec<Rat> {
    a.iter().map(|row| dot(row, x)).collect()
}

/// Solve `a x = b` for a square nonsingular `a`.
pub fn solve_square(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    inverse(a).map(|inv| mat_vec(&inv, b))
}

/// Coordinates of `v` in the span of `basis` (rows), if it lies in that span.
/// The basis must be linearly independent.
pub fn coordinates_in(basis: &[Vec<Rat>], v: &[Rat]) -> Option<Vec<Rat>> {
    let k = basis.len();
    let n = v.len();
    // columns are basis vectors, last column is v
    let mut m: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rat> = basis.iter().map(|b| b[i].clone()).collect();
            row.push(v[i].clone());
            row
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.contains(&k) {
        return None;
    }
    let mut coords = vec![Rat::zero(); k];
    for (r, &p) in pivots.iter().enumerate() {
        coords[p] = m[r][k].clone();
    }
    Some(coords)
}

pub fn floor_rat(x: &Rat) -> BigInt {
    x.floor().to_integer()
}

pub fn ceil_rat(x: &Rat) -> BigInt {
    x.ceil().to_integer()
}

/// Fractional-part reduction of a point into `[0, 1)^n`.
pub fn reduce_mod_one(p: &[Rat]) -> Vec<Rat> {
    p.iter().map(|x| x - x.floor()).collect()
}

pub fn format_rat(x: &Rat) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Integer matrix with arbitrary-precision entries in row-major order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(IntMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Build from rows; all rows must have length `cols`.
    pub fn from_rows(rows: &[Vec<BigInt>], cols: usize) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::Dimension(format!("row of length {} in a {cols}-column matrix", bad.len())));
        }
        Ok(IntMatrix { rows: rows.len(), cols, entries: rows.concat() })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let v: Vec<Vec<BigInt>> = rows.iter().map(|r| int_vec(r)).collect();
        Self::from_rows(&v, cols).expect("ragged literal matrix")
    }

    /// Matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(columns: &[Vec<BigInt>], rows: usize) -> Result<Self> {
        Ok(Self::from_rows(columns, rows)?.transpose())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        (0..self.rows).map(|i| dot_int(self.row(i), v)).collect()
    }

    pub fn mul_rat_vec(&self, v: &[Rat]) -> Vec<Rat> {
        (0..self.rows).map(|i| dot_mixed(v, self.row(i))).collect()
    }

    pub fn to_rat_rows(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| to_rat_vec(self.row(i))).collect()
    }

    /// Determinant by fraction-free elimination. Panics on non-square input.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> = self.row_vecs();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                    return BigInt::zero();
                };
                a.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
            }
            prev = a[k][k].clone();
        }
        sign * a[n - 1][n - 1].clone()
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.det().abs().is_one()
    }

    pub fn rank(&self) -> usize {
        rank(&self.to_rat_rows())
    }

    /// Exact inverse, required to be integral (the matrix must be unimodular).
    pub fn inverse_unimodular(&self) -> Option<IntMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let inv = inverse(&self.to_rat_rows())?;
        let mut out = Self::zeros(self.rows, self.cols);
        for (i, row) in inv.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if !x.is_integer() {
                    return None;
                }
                out.set(i, j, x.to_integer());
            }
        }
        Some(out)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// A point with exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatVector(pub Vec<Rat>);

impl RatVector {
    pub fn from_fractions(coords: &[(i64, i64)]) -> Self {
        RatVector(coords.iter().map(|&(p, q)| Rat::new(int(p), int(q))).collect())
    }

    pub fn zero(dim: usize) -> Self {
        RatVector(vec![Rat::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.0
    }
}

impl fmt::Display for RatVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(format_rat).collect();
        write!(f, "({})", parts.join(", "))
    }
}

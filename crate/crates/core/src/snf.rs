//! Smith and Hermite normal forms over ℤ.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::linalg::IntMatrix;

/// Result of [`smith_normal_form`]: `u * m * v == d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries, each dividing the next.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d.get(i, i).clone()).filter(|x| !x.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

struct Work {
    d: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
}

impl Work {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap(a, b);
        self.u.swap(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for row in self.d.iter_mut() {
            row.swap(a, b);
        }
        for row in self.v.iter_mut() {
            row.swap(a, b);
        }
    }

    /// row[target] += factor * row[source]
    fn add_row(&mut self, target: usize, source: usize, factor: &BigInt) {
        for mat in [&mut self.d, &mut self.u] {
            let src = mat[source].clone();
            for (x, s) in mat[target].iter_mut().zip(src) {
                *x += factor * s;
            }
        }
    }

    /// col[target] += factor * col[source]
    fn add_col(&mut self, target: usize, source: usize, factor: &BigInt) {
        for mat in [&mut self.d, &mut self.v] {
            for row in mat.iter_mut() {
                let s = row[source].clone();
                row[target] += factor * s;
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        for mat in [&mut self.d, &mut self.u] {
            for x in mat[r].iter_mut() {
                *x = -x.clone();
            }
        }
    }
}

fn identity_rows(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

/// Smith normal form with unimodular transforms: `u * m * v = d`, `d` diagonal
/// with nonnegative entries `d_i` dividing `d_{i+1}`.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work { d: m.row_vecs(), u: identity_rows(rows), v: identity_rows(cols) };

    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if w.d[i][j].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| w.d[i][j].abs() < w.d[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break;
            };
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if !w.d[i][t].is_zero() {
                    let q = &w.d[i][t] / &w.d[t][t];
                    w.add_row(i, t, &-q);
                    clean &= w.d[i][t].is_zero();
                }
            }
            for j in t + 1..cols {
                if !w.d[t][j].is_zero() {
                    let q = &w.d[t][j] / &w.d[t][t];
                    w.add_col(j, t, &-q);
                    clean &= w.d[t][j].is_zero();
                }
            }
            if !clean {
                continue;
            }
            let pivot = w.d[t][t].clone();
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !w.d[i][j].is_multiple_of(&pivot)));
            match offender {
                Some(i) => w.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if w.d[t][t].is_negative() {
            w.negate_row(t);
        }
    }

    SmithForm {
        u: IntMatrix::from_rows(&w.u, rows).expect("square"),
        d: IntMatrix::from_rows(&w.d, cols).expect("shape"),
        v: IntMatrix::from_rows(&w.v, cols).expect("square"),
    }
}

/// Row-style Hermite normal form: returns `(w, h)` with `h = w * m`, `w`
/// unimodular, `h` in row echelon form with positive pivots and the entries
/// above each pivot reduced into `[0, pivot)`.
pub fn row_hermite_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work { d: m.row_vecs(), u: identity_rows(rows), v: Vec::new() };
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            let nonzero: Vec<usize> = (r..rows).filter(|&i| !w.d[i][c].is_zero()).collect();
            if nonzero.is_empty() {
                break;
            }
            let p = *nonzero.iter().min_by_key(|&&i| w.d[i][c].abs()).unwrap();
            w.swap_rows(r, p);
            let mut done = true;
            for i in r + 1..rows {
                if !w.d[i][c].is_zero() {
                    let q = &w.d[i][c] / &w.d[r][c];
                    w.add_row(i, r, &-q);
                    done &= w.d[i][c].is_zero();
                }
            }
            if done {
                break;
            }
        }
        if w.d[r][c].is_zero() {
            continue;
        }
        if w.d[r][c].is_negative() {
            w.negate_row(r);
        }
        for i in 0..r {
            let q = w.d[i][c].div_floor(&w.d[r][c]);
            if !q.is_zero() {
                w.add_row(i, r, &-q);
            }
        }
        r += 1;
    }
    (
        IntMatrix::from_rows(&w.u, rows).expect("square"),
        IntMatrix::from_rows(&w.d, cols).expect("shape"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;
    use proptest::prelude::*;

    fn check(m: &IntMatrix) -> SmithForm {
        let s = smith_normal_form(m);
        assert_eq!(s.u.mul(m).unwrap().mul(&s.v).unwrap(), s.d);
        assert!(s.u.is_unimodular() && s.v.is_unimodular());
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        let f = s.invariant_factors();
        for w in f.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        s
    }

    #[test]
    fn identity_is_fixed() {
        let s = check(&IntMatrix::identity(2));
        assert_eq!(s.d, IntMatrix::identity(2));
    }

    #[test]
    fn coprime_diagonal_becomes_one_six() {
        let s = check(&IntMatrix::from_i64_rows(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.invariant_factors(), vec![int(1), int(6)]);
    }

    #[test]
    fn row_of_ones() {
        let s = check(&IntMatrix::from_i64_rows(&[&[1, 1, 1]]));
        assert_eq!(s.d, IntMatrix::from_i64_rows(&[&[1, 0, 0]]));
    }

    #[test]
    fn hermite_form_of_p1xp1_free_part() {
        let m = IntMatrix::from_i64_rows(&[&[0, 0, -1, -1], &[1, 1, 1, 1]]);
        let (w, h) = row_hermite_form(&m);
        assert_eq!(w.mul(&m).unwrap(), h);
        assert_eq!(h, IntMatrix::from_i64_rows(&[&[1, 1, 0, 0], &[0, 0, 1, 1]]));
    }

    proptest! {
        #[test]
        fn smith_round_trip(entries in proptest::collection::vec(-6i64..=6, 12), rows in 1usize..=4) {
            let cols = 12 / rows;
            let data: Vec<BigInt> = entries[..rows * cols].iter().map(|&x| int(x)).collect();
            let m = IntMatrix::new(rows, cols, data).unwrap();
            let s = check(&m);
            prop_assert_eq!(s.rank(), m.rank());
        }
    }
}

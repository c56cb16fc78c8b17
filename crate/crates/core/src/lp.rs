//! A small exact linear-programming solver (dense two-phase simplex with
//! Bland's rule over ℚ). Used only for feasibility questions on tiny systems:
//! fan validity, strict separation and positive spanning.

use num_traits::{One, Signed, Zero};

use crate::linalg::{rat, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<Rat>,
    pub rel: Relation,
    pub rhs: Rat,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rat>, rel: Relation, rhs: Rat) -> Self {
        Constraint { coeffs, rel, rhs }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpResult {
    Optimal { x: Vec<Rat>, value: Rat },
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<Rat>>,
    basis: Vec<usize>,
    ncols: usize,
}

enum Outcome {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        self.basis[r] = c;
    }

    fn run(&mut self, cost: &[Rat], allowed: &[bool]) -> Outcome {
        let rhs = self.ncols;
        loop {
            let entering = (0..self.ncols).filter(|&j| allowed[j]).find(|&j| {
                let mut r = cost[j].clone();
                for (i, row) in self.rows.iter().enumerate() {
                    let cb = &cost[self.basis[i]];
                    if !cb.is_zero() && !row[j].is_zero() {
                        r -= cb * &row[j];
                    }
                }
                r.is_positive()
            });
            let Some(c) = entering else {
                return Outcome::Optimal;
            };
            let mut leave: Option<(usize, Rat)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[c].is_positive() {
                    continue;
                }
                let ratio = &row[rhs] / &row[c];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, _)) = leave else {
                return Outcome::Unbounded;
            };
            self.pivot(r, c);
        }
    }
}

/// Maximize `objective · x` over free variables `x` subject to `constraints`.
pub fn maximize(objective: &[Rat], constraints: &[Constraint]) -> LpResult {
    let n = objective.len();
    let m = constraints.len();
    let n_slack = constraints.iter().filter(|c| c.rel != Relation::Eq).count();
    let slack0 = 2 * n;
    let art0 = slack0 + n_slack;

    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(m);
    let mut slack_col = Vec::with_capacity(m);
    let mut s = 0;
    for c in constraints {
        let mut row = vec![Rat::zero(); art0];
        for (j, a) in c.coeffs.iter().enumerate() {
            row[j] = a.clone();
            row[n + j] = -a.clone();
        }
        let mut rhs = c.rhs.clone();
        let sc = match c.rel {
            Relation::Le => {
                row[slack0 + s] = Rat::one();
                s += 1;
                Some(slack0 + s - 1)
            }
            Relation::Ge => {
                row[slack0 + s] = -Rat::one();
                s += 1;
                Some(slack0 + s - 1)
            }
            Relation::Eq => None,
        };
        if rhs.is_negative() {
            for x in row.iter_mut() {
                *x = -x.clone();
            }
            rhs = -rhs;
        }
        row.push(rhs);
        slack_col.push(sc.filter(|&j| row[j].is_one()));
        rows.push(row);
    }

    // artificial columns for rows without a usable slack
    let needs_art: Vec<usize> = (0..m).filter(|&i| slack_col[i].is_none()).collect();
    let ncols = art0 + needs_art.len();
    for row in rows.iter_mut() {
        let rhs = row.pop().unwrap();
        row.resize(ncols, Rat::zero());
        row.push(rhs);
    }
    let mut basis = vec![0; m];
    for (i, sc) in slack_col.iter().enumerate() {
        if let Some(j) = sc {
            basis[i] = *j;
        }
    }
    for (k, &i) in needs_art.iter().enumerate() {
        rows[i][art0 + k] = Rat::one();
        basis[i] = art0 + k;
    }
    let mut t = Tableau { rows, basis, ncols };

    if !needs_art.is_empty() {
        let mut cost = vec![Rat::zero(); ncols];
        for c in cost.iter_mut().skip(art0) {
            *c = -Rat::one();
        }
        let allowed = vec![true; ncols];
        t.run(&cost, &allowed);
        let infeasible = t.rows.iter().zip(&t.basis).any(|(row, &b)| b >= art0 && !row[ncols].is_zero());
        if infeasible {
            return LpResult::Infeasible;
        }
        // drive zero-level artificials out of the basis, dropping redundant rows
        let mut i = 0;
        while i < t.rows.len() {
            if t.basis[i] >= art0 {
                if let Some(j) = (0..art0).find(|&j| !t.rows[i][j].is_zero()) {
                    t.pivot(i, j);
                } else {
                    t.rows.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
            i += 1;
        }
    }

    let mut cost = vec![Rat::zero(); ncols];
    for (j, c) in objective.iter().enumerate() {
        cost[j] = c.clone();
        cost[n + j] = -c.clone();
    }
    let allowed: Vec<bool> = (0..ncols).map(|j| j < art0).collect();
    match t.run(&cost, &allowed) {
        Outcome::Unbounded => LpResult::Unbounded,
        Outcome::Optimal => {
            let mut y = vec![Rat::zero(); ncols];
            for (i, &b) in t.basis.iter().enumerate() {
                y[b] = t.rows[i][ncols].clone();
            }
            let x: Vec<Rat> = (0..n).map(|j| &y[j] - &y[n + j]).collect();
            let value = objective.iter().zip(&x).fold(Rat::zero(), |acc, (c, v)| acc + c * v);
            LpResult::Optimal { x, value }
        }
    }
}

pub fn is_feasible(n: usize, constraints: &[Constraint]) -> bool {
    !matches!(maximize(&vec![Rat::zero(); n], constraints), LpResult::Infeasible)
}

/// A point satisfying `a·x < b` for every strict row and the non-strict
/// `constraints`, if one exists.
pub fn strict_point(n: usize, strict: &[(Vec<Rat>, Rat)], constraints: &[Constraint]) -> Option<Vec<Rat>> {
    let mut rows: Vec<Constraint> = constraints
        .iter()
        .map(|c| {
            let mut coeffs = c.coeffs.clone();
            coeffs.push(Rat::zero());
            Constraint::new(coeffs, c.rel, c.rhs.clone())
        })
        .collect();
    for (a, b) in strict {
        let mut coeffs = a.clone();
        coeffs.push(Rat::one());
        rows.push(Constraint::new(coeffs, Relation::Le, b.clone()));
    }
    let mut t_bound = vec![Rat::zero(); n];
    t_bound.push(Rat::one());
    rows.push(Constraint::new(t_bound, Relation::Le, rat(1)));
    let mut objective = vec![Rat::zero(); n];
    objective.push(Rat::one());
    match maximize(&objective, &rows) {
        LpResult::Optimal { mut x, value } if value.is_positive() || strict.is_empty() => {
            x.pop();
            Some(x)
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(coeffs: &[i64], rel: Relation, rhs: i64) -> Constraint {
        Constraint::new(coeffs.iter().map(|&x| rat(x)).collect(), rel, rat(rhs))
    }

    #[test]
    fn simple_optimum() {
        // max x + y s.t. x <= 2, y <= 3, x + y >= -10
        let r = maximize(
            &[rat(1), rat(1)],
            &[c(&[1, 0], Relation::Le, 2), c(&[0, 1], Relation::Le, 3), c(&[1, 1], Relation::Ge, -10)],
        );
        match r {
            LpResult::Optimal { value, .. } => assert_eq!(value, rat(5)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        assert_eq!(
            maximize(&[rat(0)], &[c(&[1], Relation::Ge, 2), c(&[1], Relation::Le, 1)]),
            LpResult::Infeasible
        );
        assert_eq!(maximize(&[rat(1)], &[c(&[1], Relation::Ge, 2)]), LpResult::Unbounded);
    }

    #[test]
    fn redundant_equalities() {
        let r = maximize(
            &[rat(1), rat(0)],
            &[c(&[1, 1], Relation::Eq, 1), c(&[2, 2], Relation::Eq, 2), c(&[0, 1], Relation::Ge, 0)],
        );
        match r {
            LpResult::Optimal { value, .. } => assert_eq!(value, rat(1)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn strictness() {
        // 0 < x < 0 has no solution, 0 < x < 1 does
        assert!(strict_point(1, &[(vec![rat(1)], rat(0)), (vec![rat(-1)], rat(0))], &[]).is_none());
        let p = strict_point(1, &[(vec![rat(1)], rat(1)), (vec![rat(-1)], rat(0))], &[]).unwrap();
        assert!(p[0] > rat(0) && p[0] < rat(1));
    }
}

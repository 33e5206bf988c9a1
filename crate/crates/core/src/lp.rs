//! Exact two-phase simplex over the rationals with Bland's anti-cycling rule.
//! Variables are implicitly nonnegative.

use num_traits::{One, Signed, Zero};

use crate::model::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cmp {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub cmp: Cmp,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rational>, cmp: Cmp, rhs: Rational) -> Self {
        Self { coeffs, cmp, rhs }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { value: Rational, x: Vec<Rational> },
}

impl LpOutcome {
    pub fn is_feasible(&self) -> bool {
        !matches!(self, LpOutcome::Infeasible)
    }
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            *v /= &p;
        }
        self.rhs[r] /= &p;
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for (v, pv) in self.rows[i].iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
            self.rhs[i] -= &f * &pivot_rhs;
        }
        self.basis[r] = c;
    }

    fn reduced_costs(&self, cost: &[Rational]) -> Vec<Rational> {
        let mut red = cost.to_vec();
        for (i, &b) in self.basis.iter().enumerate() {
            if cost[b].is_zero() {
                continue;
            }
            for (j, v) in self.rows[i].iter().enumerate() {
                if !v.is_zero() {
                    red[j] -= &cost[b] * v;
                }
            }
        }
        red
    }

    /// Maximizes `cost · x` over columns `< active`; false when unbounded.
    fn optimize(&mut self, cost: &[Rational], active: usize) -> bool {
        loop {
            let red = self.reduced_costs(cost);
            let Some(enter) = (0..active).find(|&j| red[j].is_positive()) else { return true };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][enter];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, _)) = leave else { return false };
            self.pivot(r, enter);
        }
    }
}

/// Maximizes `objective · x` subject to `constraints` and `x >= 0`.
pub fn maximize(n_vars: usize, constraints: &[Constraint], objective: &[Rational]) -> LpOutcome {
    let n_slack = constraints.iter().filter(|c| c.cmp != Cmp::Eq).count();
    let n_art = constraints
        .iter()
        .filter(|c| {
            let flip = c.rhs.is_negative();
            match c.cmp {
                Cmp::Eq => true,
                Cmp::Le => flip,
                Cmp::Ge => !flip,
            }
        })
        .count();
    let width = n_vars + n_slack + n_art;
    let mut t = Tableau { rows: Vec::new(), rhs: Vec::new(), basis: Vec::new() };
    let (mut slack, mut art) = (n_vars, n_vars + n_slack);
    for c in constraints {
        let flip = c.rhs.is_negative();
        let sign = if flip { -Rational::one() } else { Rational::one() };
        let mut row = vec![Rational::zero(); width];
        for (j, a) in c.coeffs.iter().enumerate() {
            row[j] = a * &sign;
        }
        let cmp = match (c.cmp, flip) {
            (Cmp::Le, true) => Cmp::Ge,
            (Cmp::Ge, true) => Cmp::Le,
            (other, _) => other,
        };
        let basic = match cmp {
            Cmp::Le => {
                row[slack] = Rational::one();
                slack += 1;
                slack - 1
            }
            Cmp::Ge => {
                row[slack] = -Rational::one();
                slack += 1;
                row[art] = Rational::one();
                art += 1;
                art - 1
            }
            Cmp::Eq => {
                row[art] = Rational::one();
                art += 1;
                art - 1
            }
        };
        t.rows.push(row);
        t.rhs.push(&c.rhs * &sign);
        t.basis.push(basic);
    }

    let art_start = n_vars + n_slack;
    if n_art > 0 {
        let phase1: Vec<Rational> =
            (0..width).map(|j| if j >= art_start { -Rational::one() } else { Rational::zero() }).collect();
        t.optimize(&phase1, width);
        let infeasibility: Rational =
            t.basis.iter().zip(&t.rhs).filter(|(&b, _)| b >= art_start).map(|(_, v)| v.clone()).sum();
        if infeasibility.is_positive() {
            return LpOutcome::Infeasible;
        }
        let mut i = 0;
        while i < t.rows.len() {
            if t.basis[i] >= art_start {
                match (0..art_start).find(|&j| !t.rows[i][j].is_zero()) {
                    Some(j) => t.pivot(i, j),
                    None => {
                        t.rows.remove(i);
                        t.rhs.remove(i);
                        t.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
    }

    let mut cost = vec![Rational::zero(); width];
    cost[..n_vars].clone_from_slice(&objective[..n_vars]);
    if !t.optimize(&cost, art_start) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Rational::zero(); n_vars];
    for (i, &b) in t.basis.iter().enumerate() {
        if b < n_vars {
            x[b] = t.rhs[i].clone();
        }
    }
    let value = x.iter().zip(objective).map(|(a, b)| a * b).sum();
    LpOutcome::Optimal { value, x }
}

/// Feasibility of `constraints` with `x >= 0`, returning a feasible point.
pub fn feasible_point(n_vars: usize, constraints: &[Constraint]) -> Option<Vec<Rational>> {
    match maximize(n_vars, constraints, &vec![Rational::zero(); n_vars]) {
        LpOutcome::Optimal { x, .. } => Some(x),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{rat, ratio};

    fn c(coeffs: &[i64], cmp: Cmp, rhs: i64) -> Constraint {
        Constraint::new(coeffs.iter().map(|&v| rat(v)).collect(), cmp, rat(rhs))
    }

    #[test]
    fn textbook_optimum() {
        let cons = [c(&[1, 1], Cmp::Le, 4), c(&[1, 3], Cmp::Le, 6)];
        match maximize(2, &cons, &[rat(3), rat(2)]) {
            LpOutcome::Optimal { value, x } => {
                assert_eq!(value, rat(12));
                assert_eq!(x, vec![rat(4), rat(0)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn fractional_vertex() {
        let cons = [c(&[2, 1], Cmp::Le, 3), c(&[1, 2], Cmp::Le, 3)];
        match maximize(2, &cons, &[rat(1), rat(1)]) {
            LpOutcome::Optimal { value, x } => {
                assert_eq!(value, rat(2));
                assert_eq!(x, vec![rat(1), rat(1)]);
            }
            other => panic!("{other:?}"),
        }
        let cons = [c(&[3, 0], Cmp::Le, 1)];
        assert_eq!(
            maximize(2, &cons, &[rat(1), rat(0)]),
            LpOutcome::Optimal { value: ratio(1, 3), x: vec![ratio(1, 3), rat(0)] }
        );
    }

    #[test]
    fn infeasible_and_unbounded() {
        let cons = [c(&[1], Cmp::Ge, 2), c(&[1], Cmp::Le, 1)];
        assert_eq!(maximize(1, &cons, &[rat(0)]), LpOutcome::Infeasible);
        let cons = [c(&[1, -1], Cmp::Le, 1)];
        assert_eq!(maximize(2, &cons, &[rat(0), rat(1)]), LpOutcome::Unbounded);
    }

    #[test]
    fn equalities_and_negative_rhs() {
        let cons = [c(&[1, 1, 1], Cmp::Eq, 3), c(&[-1, 0, 0], Cmp::Le, -2), c(&[0, 1, 0], Cmp::Ge, 1)];
        let x = feasible_point(3, &cons).unwrap();
        assert_eq!(&x[0] + &x[1] + &x[2], rat(3));
        assert!(x[0] >= rat(2) && x[1] >= rat(1));
        let redundant = [c(&[1, 1], Cmp::Eq, 2), c(&[2, 2], Cmp::Eq, 4)];
        assert!(feasible_point(2, &redundant).is_some());
    }
}

//! Exact two-phase simplex over arbitrary-precision rationals.
//!
//! The fan and polytope layers reduce every open/closed feasibility question
//! (strong convexity, face support, interior membership, component
//! nonemptiness) to tiny LPs. Bland's rule keeps the method finite, and the
//! rational pivots make every strict inequality decision exact. Problem
//! sizes here are a few dozen variables at most, so a dense tableau is fine.

use num_traits::{One, Signed, Zero};

use crate::rational::{Rat, RatVec};

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { x: RatVec, value: Rat },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn optimal(self) -> Option<(RatVec, Rat)> {
        match self {
            LpOutcome::Optimal { x, value } => Some((x, value)),
            _ => None,
        }
    }
}

struct Tableau {
    ncols: usize,
    a: Vec<RatVec>,
    b: RatVec,
    cost: RatVec, // reduced costs of a maximization objective
    obj: Rat,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, j: usize) {
        let p = self.a[r][j].clone();
        let inv = p.recip();
        for x in self.a[r].iter_mut() {
            *x *= &inv;
        }
        self.b[r] *= &inv;
        for i in 0..self.a.len() {
            if i == r || self.a[i][j].is_zero() {
                continue;
            }
            let f = self.a[i][j].clone();
            for c in 0..self.ncols {
                let t = &self.a[r][c] * &f;
                self.a[i][c] -= t;
            }
            let t = &self.b[r] * &f;
            self.b[i] -= t;
        }
        if !self.cost[j].is_zero() {
            let f = self.cost[j].clone();
            for c in 0..self.ncols {
                let t = &self.a[r][c] * &f;
                self.cost[c] -= t;
            }
            let t = &self.b[r] * &f;
            self.obj += t;
        }
        self.basis[r] = j;
    }

    /// Run simplex iterations until optimal or unbounded. Bland's rule on
    /// both the entering and leaving choice prevents cycling.
    fn run(&mut self, allowed: &[bool]) -> bool {
        loop {
            let Some(j) = (0..self.ncols)
                .find(|&j| allowed[j] && self.cost[j].is_positive() && !self.in_basis(j))
            else {
                return true; // optimal
            };
            let mut leave: Option<usize> = None;
            let mut best: Option<Rat> = None;
            for i in 0..self.a.len() {
                if self.a[i][j].is_positive() {
                    let ratio = &self.b[i] / &self.a[i][j];
                    let better = match &best {
                        None => true,
                        Some(cur) => {
                            ratio < *cur
                                || (ratio == *cur
                                    && self.basis[i] < self.basis[leave.unwrap()])
                        }
                    };
                    if better {
                        best = Some(ratio);
                        leave = Some(i);
                    }
                }
            }
            match leave {
                Some(r) => self.pivot(r, j),
                None => return false, // unbounded along j
            }
        }
    }

    fn in_basis(&self, j: usize) -> bool {
        self.basis.contains(&j)
    }

    fn solution(&self, nvars: usize) -> RatVec {
        let mut x = vec![Rat::zero(); nvars];
        for (i, &bj) in self.basis.iter().enumerate() {
            if bj < nvars {
                x[bj] = self.b[i].clone();
            }
        }
        x
    }
}

/// Maximize `c·x` subject to `a x = b`, `x ≥ 0`.
pub fn maximize(a: &[RatVec], b: &[Rat], c: &[Rat]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    debug_assert!(a.iter().all(|row| row.len() == n));

    // normalize to b >= 0
    let mut rows: Vec<RatVec> = Vec::with_capacity(m);
    let mut rhs: RatVec = Vec::with_capacity(m);
    for (row, r) in a.iter().zip(b) {
        if r.is_negative() {
            rows.push(row.iter().map(|x| -x.clone()).collect());
            rhs.push(-r.clone());
        } else {
            rows.push(row.clone());
            rhs.push(r.clone());
        }
    }

    // phase 1: artificial variables n..n+m, maximize -(sum of artificials)
    let ncols = n + m;
    let mut t = Tableau {
        ncols,
        a: rows
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut full = row.clone();
                full.extend((0..m).map(|k| {
                    if k == i {
                        Rat::one()
                    } else {
                        Rat::zero()
                    }
                }));
                full
            })
            .collect(),
        b: rhs,
        cost: vec![Rat::zero(); ncols],
        obj: Rat::zero(),
        basis: (n..n + m).collect(),
    };
    for j in 0..n {
        let mut s = Rat::zero();
        for i in 0..m {
            s += &t.a[i][j];
        }
        t.cost[j] = s;
    }
    for r in &t.b {
        t.obj -= r;
    }
    let allowed: Vec<bool> = (0..ncols).map(|j| j < n).collect();
    let finished = t.run(&allowed);
    debug_assert!(finished, "phase 1 is bounded above by zero");
    if t.obj.is_negative() {
        return LpOutcome::Infeasible;
    }

    // drive leftover artificials out of the basis; drop redundant rows
    let mut drop_rows: Vec<usize> = Vec::new();
    for i in 0..t.basis.len() {
        if t.basis[i] >= n {
            match (0..n).find(|&j| !t.a[i][j].is_zero()) {
                Some(j) => t.pivot(i, j),
                None => drop_rows.push(i),
            }
        }
    }
    for &i in drop_rows.iter().rev() {
        t.a.remove(i);
        t.b.remove(i);
        t.basis.remove(i);
    }

    // phase 2: rebuild reduced costs for the real objective
    for row in t.a.iter_mut() {
        row.truncate(n);
    }
    t.ncols = n;
    t.cost = c.to_vec();
    t.obj = Rat::zero();
    for (i, &bj) in t.basis.clone().iter().enumerate() {
        if c[bj].is_zero() {
            continue;
        }
        let f = c[bj].clone();
        for j in 0..n {
            let adj = &t.a[i][j] * &f;
            t.cost[j] -= adj;
        }
        let adj = &t.b[i] * &f;
        t.obj += adj;
    }
    let allowed = vec![true; n];
    if !t.run(&allowed) {
        return LpOutcome::Unbounded;
    }
    LpOutcome::Optimal {
        x: t.solution(n),
        value: t.obj.clone(),
    }
}

// ---------------------------------------------------------------------------
// Constraint builder
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cmp {
    Le,
    Ge,
    Eq,
}

/// Convenience layer turning free variables and mixed inequalities into the
/// standard form expected by [`maximize`].
pub struct LpBuilder {
    nonneg: Vec<bool>,
    rows: Vec<(RatVec, Cmp, Rat)>,
    objective: RatVec,
}

impl LpBuilder {
    pub fn new() -> Self {
        LpBuilder {
            nonneg: Vec::new(),
            rows: Vec::new(),
            objective: Vec::new(),
        }
    }

    pub fn add_var(&mut self, nonneg: bool) -> usize {
        self.nonneg.push(nonneg);
        self.objective.push(Rat::zero());
        self.nonneg.len() - 1
    }

    pub fn add_vars(&mut self, count: usize, nonneg: bool) -> Vec<usize> {
        (0..count).map(|_| self.add_var(nonneg)).collect()
    }

    pub fn set_objective(&mut self, var: usize, coeff: Rat) {
        self.objective[var] = coeff;
    }

    pub fn constraint(&mut self, terms: &[(usize, Rat)], cmp: Cmp, rhs: Rat) {
        let mut row = vec![Rat::zero(); self.nonneg.len()];
        for (v, c) in terms {
            row[*v] += c;
        }
        self.rows.push((row, cmp, rhs));
    }

    /// Maximize the configured objective.
    pub fn solve(&self) -> LpOutcome {
        let nuser = self.nonneg.len();
        // column layout: one column per nonneg var, two per free var, then slacks
        let mut col_of: Vec<(usize, Option<usize>)> = Vec::with_capacity(nuser);
        let mut ncols = 0;
        for &nn in &self.nonneg {
            if nn {
                col_of.push((ncols, None));
                ncols += 1;
            } else {
                col_of.push((ncols, Some(ncols + 1)));
                ncols += 2;
            }
        }
        let nslack = self.rows.iter().filter(|(_, c, _)| *c != Cmp::Eq).count();
        let total = ncols + nslack;

        let mut a: Vec<RatVec> = Vec::with_capacity(self.rows.len());
        let mut b: RatVec = Vec::with_capacity(self.rows.len());
        let mut slack_idx = ncols;
        for (row, cmp, rhs) in &self.rows {
            let mut full = vec![Rat::zero(); total];
            for (v, coeff) in row.iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                let (pos, neg) = col_of[v];
                full[pos] = coeff.clone();
                if let Some(ncol) = neg {
                    full[ncol] = -coeff.clone();
                }
            }
            match cmp {
                Cmp::Eq => {}
                Cmp::Le => {
                    full[slack_idx] = Rat::one();
                    slack_idx += 1;
                }
                Cmp::Ge => {
                    full[slack_idx] = -Rat::one();
                    slack_idx += 1;
                }
            }
            a.push(full);
            b.push(rhs.clone());
        }

        let mut c = vec![Rat::zero(); total];
        for (v, coeff) in self.objective.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let (pos, neg) = col_of[v];
            c[pos] = coeff.clone();
            if let Some(ncol) = neg {
                c[ncol] = -coeff.clone();
            }
        }

        match maximize(&a, &b, &c) {
            LpOutcome::Optimal { x, value } => {
                let user_x: RatVec = col_of
                    .iter()
                    .map(|&(pos, neg)| match neg {
                        None => x[pos].clone(),
                        Some(ncol) => &x[pos] - &x[ncol],
                    })
                    .collect();
                LpOutcome::Optimal {
                    x: user_x,
                    value,
                }
            }
            other => other,
        }
    }

    /// Pure feasibility check (zero objective).
    pub fn feasible(&self) -> Option<RatVec> {
        match self.solve() {
            LpOutcome::Optimal { x, .. } => Some(x),
            LpOutcome::Unbounded => unreachable!("zero objective cannot be unbounded"),
            LpOutcome::Infeasible => None,
        }
    }
}

impl Default for LpBuilder {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    #[test]
    fn textbook_maximum() {
        // max 3x + 5y st x <= 4, 2y <= 12, 3x + 2y <= 18 -> (2,6), value 36
        let mut lp = LpBuilder::new();
        let x = lp.add_var(true);
        let y = lp.add_var(true);
        lp.set_objective(x, rat_int(3));
        lp.set_objective(y, rat_int(5));
        lp.constraint(&[(x, rat_int(1))], Cmp::Le, rat_int(4));
        lp.constraint(&[(y, rat_int(2))], Cmp::Le, rat_int(12));
        lp.constraint(&[(x, rat_int(3)), (y, rat_int(2))], Cmp::Le, rat_int(18));
        let (sol, value) = lp.solve().optimal().unwrap();
        assert_eq!(value, rat_int(36));
        assert_eq!(sol, vec![rat_int(2), rat_int(6)]);
    }

    #[test]
    fn infeasible_detected() {
        let mut lp = LpBuilder::new();
        let x = lp.add_var(true);
        lp.constraint(&[(x, rat_int(1))], Cmp::Ge, rat_int(2));
        lp.constraint(&[(x, rat_int(1))], Cmp::Le, rat_int(1));
        assert_eq!(lp.solve(), LpOutcome::Infeasible);
    }

    #[test]
    fn unbounded_detected() {
        let mut lp = LpBuilder::new();
        let x = lp.add_var(true);
        lp.set_objective(x, rat_int(1));
        lp.constraint(&[(x, rat_int(1))], Cmp::Ge, rat_int(0));
        assert_eq!(lp.solve(), LpOutcome::Unbounded);
    }

    #[test]
    fn free_variables_work() {
        // find w with w·(1,0) = 0 and w·(0,1) >= 1; w free
        let mut lp = LpBuilder::new();
        let w = lp.add_vars(2, false);
        lp.constraint(&[(w[0], rat_int(1))], Cmp::Eq, rat_int(0));
        lp.constraint(&[(w[1], rat_int(1))], Cmp::Ge, rat_int(1));
        let sol = lp.feasible().unwrap();
        assert_eq!(sol[0], rat_int(0));
        assert!(sol[1] >= rat_int(1));
    }

    #[test]
    fn negative_optimum_via_free_var() {
        // max x st x <= -3/2, x free
        let mut lp = LpBuilder::new();
        let x = lp.add_var(false);
        lp.set_objective(x, rat_int(1));
        lp.constraint(&[(x, rat_int(1))], Cmp::Le, rat(-3, 2));
        let (sol, value) = lp.solve().optimal().unwrap();
        assert_eq!(value, rat(-3, 2));
        assert_eq!(sol[0], rat(-3, 2));
    }

    #[test]
    fn degenerate_problem_terminates() {
        // classic degeneracy: multiple constraints active at the optimum
        let mut lp = LpBuilder::new();
        let x = lp.add_var(true);
        let y = lp.add_var(true);
        lp.set_objective(x, rat_int(1));
        lp.set_objective(y, rat_int(1));
        lp.constraint(&[(x, rat_int(1)), (y, rat_int(1))], Cmp::Le, rat_int(1));
        lp.constraint(&[(x, rat_int(1))], Cmp::Le, rat_int(1));
        lp.constraint(&[(y, rat_int(1))], Cmp::Le, rat_int(1));
        lp.constraint(&[(x, rat_int(2)), (y, rat_int(1))], Cmp::Le, rat_int(2));
        let (_, value) = lp.solve().optimal().unwrap();
        assert_eq!(value, rat_int(1));
    }

    #[test]
    fn equality_system_with_redundant_row() {
        let mut lp = LpBuilder::new();
        let x = lp.add_var(true);
        let y = lp.add_var(true);
        lp.constraint(&[(x, rat_int(1)), (y, rat_int(1))], Cmp::Eq, rat_int(2));
        lp.constraint(&[(x, rat_int(2)), (y, rat_int(2))], Cmp::Eq, rat_int(4));
        lp.set_objective(x, rat_int(1));
        let (_, value) = lp.solve().optimal().unwrap();
        assert_eq!(value, rat_int(2));
    }
}

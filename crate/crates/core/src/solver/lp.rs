//! Exact linear programming over the rationals.
//!
//! Bounds for `max cᵀx s.t. Gx ≤ h` (x free) are obtained from the dual
//! `min hᵀy s.t. Gᵀy = c, y ≥ 0`, which is in standard form and has only as
//! many rows as there are unknowns.  Two-phase tableau simplex with Bland's
//! rule: slow in theory, but exact and terminating, and the systems here are
//! tiny.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::cyclotomic::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal(Rational),
}

/// `minimize cost·y s.t. a·y = b, y ≥ 0`.
pub fn minimize_standard(a: &[Vec<Rational>], b: &[Rational], cost: &[Rational]) -> LpOutcome {
    let m = cost.len();
    let rows = a.len();
    let width = m + rows + 1;
    let mut t: Vec<Vec<Rational>> = Vec::with_capacity(rows);
    for (i, row) in a.iter().enumerate() {
        let flip = b[i].is_negative();
        let mut r = Vec::with_capacity(width);
        for v in row {
            r.push(if flip { -v.clone() } else { v.clone() });
        }
        for k in 0..rows {
            r.push(if k == i { Rational::one() } else { Rational::zero() });
        }
        r.push(if flip { -b[i].clone() } else { b[i].clone() });
        t.push(r);
    }
    let mut basis: Vec<usize> = (m..m + rows).collect();

    // phase 1: minimise the sum of artificials
    let mut phase1 = vec![Rational::zero(); m + rows];
    for c in phase1.iter_mut().skip(m) {
        *c = Rational::one();
    }
    if !run_simplex(&mut t, &mut basis, &phase1, m + rows) {
        unreachable!("phase 1 is bounded below by zero");
    }
    let infeas: Rational = basis
        .iter()
        .enumerate()
        .filter(|(_, &j)| j >= m)
        .map(|(i, _)| t[i][width - 1].clone())
        .sum();
    if infeas.is_positive() {
        return LpOutcome::Infeasible;
    }

    // drive remaining (zero) artificials out, dropping redundant rows
    let mut i = 0;
    while i < t.len() {
        if basis[i] >= m {
            match (0..m).find(|&j| !t[i][j].is_zero()) {
                Some(j) => pivot(&mut t, &mut basis, i, j),
                None => {
                    t.remove(i);
                    basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }

    let mut cost2 = cost.to_vec();
    cost2.extend(std::iter::repeat_n(Rational::zero(), rows));
    if !run_simplex(&mut t, &mut basis, &cost2, m) {
        return LpOutcome::Unbounded;
    }
    let opt = basis
        .iter()
        .enumerate()
        .map(|(i, &j)| &cost2[j] * &t[i][width - 1])
        .sum();
    LpOutcome::Optimal(opt)
}

/// Runs Bland's-rule simplex; only columns `< allowed` may enter.  Returns
/// false when unbounded.
fn run_simplex(
    t: &mut [Vec<Rational>],
    basis: &mut [usize],
    cost: &[Rational],
    allowed: usize,
) -> bool {
    let width = t.first().map_or(0, Vec::len);
    loop {
        let entering = (0..allowed).find(|&j| {
            if basis.contains(&j) {
                return false;
            }
            let mut d = cost[j].clone();
            for (i, &bj) in basis.iter().enumerate() {
                if !cost[bj].is_zero() && !t[i][j].is_zero() {
                    d -= &cost[bj] * &t[i][j];
                }
            }
            d.is_negative()
        });
        let Some(j) = entering else {
            return true;
        };
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..t.len() {
            if t[i][j].is_positive() {
                let ratio = &t[i][width - 1] / &t[i][j];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        match leave {
            None => return false,
            Some((i, _)) => pivot(t, basis, i, j),
        }
    }
}

fn pivot(t: &mut [Vec<Rational>], basis: &mut [usize], row: usize, col: usize) {
    let p = t[row][col].clone();
    for v in t[row].iter_mut() {
        if !v.is_zero() {
            *v /= &p;
        }
    }
    let prow = t[row].clone();
    for (i, r) in t.iter_mut().enumerate() {
        if i == row || r[col].is_zero() {
            continue;
        }
        let f = r[col].clone();
        for (v, pv) in r.iter_mut().zip(&prow) {
            if !pv.is_zero() {
                *v -= &f * pv;
            }
        }
    }
    basis[row] = col;
}

/// Inequalities `a·x ≤ b` over integers, in a form the LP can consume.
#[derive(Debug, Clone, Default)]
pub struct Polyhedron {
    pub dim: usize,
    pub rows: Vec<(Vec<BigInt>, BigInt)>,
}

impl Polyhedron {
    pub fn new(dim: usize) -> Self {
        Polyhedron {
            dim,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, a: Vec<BigInt>, b: BigInt) {
        debug_assert_eq!(a.len(), self.dim);
        self.rows.push((a, b));
    }

    fn transposed(&self) -> Vec<Vec<Rational>> {
        (0..self.dim)
            .map(|k| {
                self.rows
                    .iter()
                    .map(|(a, _)| Rational::from_integer(a[k].clone()))
                    .collect()
            })
            .collect()
    }

    fn rhs(&self) -> Vec<Rational> {
        self.rows
            .iter()
            .map(|(_, b)| Rational::from_integer(b.clone()))
            .collect()
    }

    /// Whether some real point satisfies every row (Farkas certificate LP).
    pub fn is_feasible(&self) -> bool {
        if self.rows.is_empty() {
            return true;
        }
        let mut a = self.transposed();
        a.push(vec![Rational::one(); self.rows.len()]);
        let mut b = vec![Rational::zero(); self.dim];
        b.push(Rational::one());
        match minimize_standard(&a, &b, &self.rhs()) {
            LpOutcome::Optimal(v) => !v.is_negative(),
            LpOutcome::Infeasible => true,
            LpOutcome::Unbounded => unreachable!("the simplex Σy = 1 is bounded"),
        }
    }

    /// `max c·x` over the polyhedron, assumed feasible.
    pub fn maximize(&self, c: &[BigInt]) -> LpOutcome {
        let a = self.transposed();
        let b: Vec<Rational> = c.iter().map(|v| Rational::from_integer(v.clone())).collect();
        match minimize_standard(&a, &b, &self.rhs()) {
            LpOutcome::Optimal(v) => LpOutcome::Optimal(v),
            // dual infeasible with the primal feasible: primal unbounded
            LpOutcome::Infeasible => LpOutcome::Unbounded,
            LpOutcome::Unbounded => LpOutcome::Infeasible,
        }
    }
}

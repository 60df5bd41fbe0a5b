//! Integer points of a constraint system.
//!
//! Every condition becomes a row `Σ a_i x_i ∈ [lo, hi]`, `Σ a_i x_i ≡ r
//! (mod m)` over the free variables.  An exact LP relaxation gives the finite
//! box; depth-first search with interval and congruence propagation walks it.
//! Each box point that is not a solution is charged to exactly one
//! constraint, so the elimination counts partition the box.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::lp::{LpOutcome, Polyhedron};
use super::SolveError;
use crate::constraints::{ConstraintSystem, Label, LinearForm, PaVector};
use crate::cyclotomic::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
struct Row {
    label: usize,
    coeffs: Vec<i64>,
    lo: i64,
    hi: i64,
    modulus: i64,
    residue: i64,
}

/// The integer form of a [`ConstraintSystem`] over its free variables.
#[derive(Debug, Clone)]
pub struct IntegerSystem {
    pub variables: Vec<usize>,
    rows: Vec<Row>,
    labels: Vec<Label>,
}

/// Per-variable integer bounds; `None` when the relaxation is empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionBox {
    pub variables: Vec<usize>,
    pub bounds: Option<Vec<(i64, i64)>>,
}

impl SolutionBox {
    pub fn points(&self) -> u128 {
        match &self.bounds {
            None => 0,
            Some(b) => b.iter().map(|(l, u)| (u - l + 1) as u128).product(),
        }
    }

    pub fn bound_of(&self, class: usize) -> Option<(i64, i64)> {
        let i = self.variables.iter().position(|&v| v == class)?;
        self.bounds.as_ref().map(|b| b[i])
    }
}

#[derive(Debug, Clone, Default)]
pub struct Enumeration {
    pub solutions: Vec<PaVector>,
    pub eliminated: BTreeMap<Label, u128>,
    pub box_points: u128,
}

fn to_i64(v: &BigInt) -> Result<i64, SolveError> {
    v.to_i64().ok_or(SolveError::Overflow)
}

fn floor_div(a: i128, b: i128) -> i128 {
    Integer::div_floor(&a, &b)
}

fn ceil_div(a: i128, b: i128) -> i128 {
    -Integer::div_floor(&-a, &b)
}

impl IntegerSystem {
    pub fn new(sys: &ConstraintSystem) -> Result<Self, SolveError> {
        let mut labels = Vec::new();
        let mut rows = Vec::new();
        let mut add = |label: &Label,
                       form: &LinearForm,
                       lo: Rational,
                       hi: Rational,
                       integral: bool|
         -> Result<(), SolveError> {
            // scale so that every coefficient and the constant are integers
            let mut s = form.constant.denom().clone();
            for &v in &sys.variables {
                s = s.lcm(form.coefficients[v].denom());
            }
            let sq = Rational::from_integer(s.clone());
            let c0 = (&form.constant * &sq).to_integer();
            let coeffs: Vec<BigInt> = sys
                .variables
                .iter()
                .map(|&v| (&form.coefficients[v] * &sq).to_integer())
                .collect();
            let lo = (lo * &sq).ceil().to_integer() - &c0;
            let hi = (hi * &sq).floor().to_integer() - &c0;
            let (modulus, residue) = if integral {
                (s.clone(), (-&c0).mod_floor(&s))
            } else {
                (BigInt::from(1), BigInt::zero())
            };
            // divide out the content of the coefficients
            let g = coeffs.iter().fold(BigInt::zero(), |g, a| g.gcd(a));
            let (coeffs, lo, hi, modulus, residue) = if g > BigInt::from(1) {
                let gm = g.gcd(&modulus);
                if !(&residue % &gm).is_zero() {
                    // no integer point at all; keep an unsatisfiable row
                    (vec![BigInt::zero(); coeffs.len()], BigInt::from(1), BigInt::zero(), BigInt::from(1), BigInt::zero())
                } else {
                    let m2 = &modulus / &gm;
                    let (gr, rr) = (&g / &gm, &residue / &gm);
                    // g·y ≡ r (mod m)  <=>  y ≡ (r/gm)·(g/gm)^{-1} (mod m/gm)
                    let r2 = if m2 == BigInt::from(1) {
                        BigInt::zero()
                    } else {
                        let e = gr.mod_floor(&m2).extended_gcd(&m2);
                        (rr * e.x).mod_floor(&m2)
                    };
                    (
                        coeffs.iter().map(|a| a / &g).collect(),
                        Integer::div_ceil(&lo, &g),
                        hi.div_floor(&g),
                        m2,
                        r2,
                    )
                }
            } else {
                (coeffs, lo, hi, modulus, residue)
            };
            let row = Row {
                label: labels.len(),
                coeffs: coeffs.iter().map(to_i64).collect::<Result<_, _>>()?,
                lo: to_i64(&lo)?,
                hi: to_i64(&hi)?,
                modulus: to_i64(&modulus)?,
                residue: to_i64(&residue)?,
            };
            labels.push(label.clone());
            rows.push(row);
            Ok(())
        };
        for eq in &sys.equalities {
            let t = Rational::from_integer(BigInt::from(eq.value));
            add(&eq.label, &eq.form, t.clone(), t, false)?;
        }
        for mu in &sys.mu_forms {
            let upper = Rational::from_integer(BigInt::from(mu.upper));
            add(&mu.label, &mu.form, Rational::zero(), upper, true)?;
        }
        // identical rows add nothing; keep the first for attribution
        let mut seen = std::collections::HashSet::new();
        rows.retain(|r| seen.insert((r.coeffs.clone(), r.lo, r.hi, r.modulus, r.residue)));
        Ok(IntegerSystem {
            variables: sys.variables.clone(),
            rows,
            labels,
        })
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    fn polyhedron(&self) -> Polyhedron {
        let mut p = Polyhedron::new(self.variables.len());
        for r in &self.rows {
            let a: Vec<BigInt> = r.coeffs.iter().map(|&c| BigInt::from(c)).collect();
            p.push(a.clone(), BigInt::from(r.hi));
            p.push(a.iter().map(|c| -c).collect(), BigInt::from(-r.lo));
        }
        p
    }

    /// Integer bounds from the LP relaxation, or `None` if it is empty.
    pub fn lp_box(&self, class_id: impl Fn(usize) -> String) -> Result<SolutionBox, SolveError> {
        let n = self.variables.len();
        let p = self.polyhedron();
        if !p.is_feasible() {
            return Ok(SolutionBox {
                variables: self.variables.clone(),
                bounds: None,
            });
        }
        let mut bounds = Vec::with_capacity(n);
        for i in 0..n {
            let mut c = vec![BigInt::zero(); n];
            c[i] = BigInt::from(1);
            let hi = match p.maximize(&c) {
                LpOutcome::Optimal(v) => to_i64(&v.floor().to_integer())?,
                _ => return Err(SolveError::Unbounded(class_id(self.variables[i]))),
            };
            c[i] = BigInt::from(-1);
            let lo = match p.maximize(&c) {
                LpOutcome::Optimal(v) => -to_i64(&v.floor().to_integer())?,
                _ => return Err(SolveError::Unbounded(class_id(self.variables[i]))),
            };
            bounds.push((lo, hi));
        }
        if bounds.iter().any(|(l, h)| l > h) {
            return Ok(SolutionBox {
                variables: self.variables.clone(),
                bounds: None,
            });
        }
        Ok(SolutionBox {
            variables: self.variables.clone(),
            bounds: Some(bounds),
        })
    }

    /// Bounds of an arbitrary integer form `Σ c_i x_i` over the relaxation.
    pub fn lp_range(&self, c: &[i64]) -> Option<(Rational, Rational)> {
        let p = self.polyhedron();
        if !p.is_feasible() {
            return None;
        }
        let up: Vec<BigInt> = c.iter().map(|&v| BigInt::from(v)).collect();
        let down: Vec<BigInt> = c.iter().map(|&v| BigInt::from(-v)).collect();
        match (p.maximize(&up), p.maximize(&down)) {
            (LpOutcome::Optimal(hi), LpOutcome::Optimal(lo)) => Some((-lo, hi)),
            _ => None,
        }
    }

    /// Interval and congruence propagation to a fixpoint.  On failure
    /// returns the index of the row that emptied a domain.
    fn propagate(&self, dom: &mut [(i64, i64)], why: &mut [(usize, usize)]) -> Result<(), usize> {
        let mut changed = true;
        let mut rounds = 0;
        while changed && rounds < 64 {
            changed = false;
            rounds += 1;
            for (ri, r) in self.rows.iter().enumerate() {
                let (mut smin, mut smax) = (0i128, 0i128);
                let mut free = 0usize;
                let mut last_free = 0usize;
                for (j, &a) in r.coeffs.iter().enumerate() {
                    if a == 0 {
                        continue;
                    }
                    let (l, u) = (dom[j].0 as i128, dom[j].1 as i128);
                    let (x, y) = (a as i128 * l, a as i128 * u);
                    smin += x.min(y);
                    smax += x.max(y);
                    if l != u {
                        free += 1;
                        last_free = j;
                    }
                }
                let (lo, hi) = (r.lo as i128, r.hi as i128);
                if smin > hi || smax < lo {
                    return Err(ri);
                }
                if free == 0 {
                    if r.modulus > 1 && (smin - r.residue as i128).rem_euclid(r.modulus as i128) != 0 {
                        return Err(ri);
                    }
                    continue;
                }
                for (j, &a) in r.coeffs.iter().enumerate() {
                    if a == 0 || dom[j].0 == dom[j].1 {
                        continue;
                    }
                    let a = a as i128;
                    let (l, u) = (dom[j].0 as i128, dom[j].1 as i128);
                    let (x, y) = (a * l, a * u);
                    let rest_min = smin - x.min(y);
                    let rest_max = smax - x.max(y);
                    // a·x ∈ [lo - rest_max, hi - rest_min]
                    let (t_lo, t_hi) = (lo - rest_max, hi - rest_min);
                    let (nl, nu) = if a > 0 {
                        (ceil_div(t_lo, a), floor_div(t_hi, a))
                    } else {
                        (ceil_div(t_hi, a), floor_div(t_lo, a))
                    };
                    if nl > l {
                        dom[j].0 = nl as i64;
                        why[j].0 = ri;
                        changed = true;
                    }
                    if nu < u {
                        dom[j].1 = nu as i64;
                        why[j].1 = ri;
                        changed = true;
                    }
                    if dom[j].0 > dom[j].1 {
                        return Err(ri);
                    }
                }
                if free == 1 && r.modulus > 1 {
                    let j = last_free;
                    if dom[j].0 == dom[j].1 {
                        continue;
                    }
                    let m = r.modulus as i128;
                    let a = (r.coeffs[j] as i128).rem_euclid(m);
                    let fixed: i128 = r
                        .coeffs
                        .iter()
                        .enumerate()
                        .filter(|&(k, &c)| k != j && c != 0)
                        .map(|(k, &c)| c as i128 * dom[k].0 as i128)
                        .sum();
                    let target = (r.residue as i128 - fixed).rem_euclid(m);
                    let g = a.gcd(&m);
                    if target % g != 0 {
                        return Err(ri);
                    }
                    let m2 = m / g;
                    let x0 = if m2 == 1 {
                        0
                    } else {
                        let e = (a / g).extended_gcd(&m2);
                        ((target / g) * e.x).rem_euclid(m2)
                    };
                    let (l, u) = (dom[j].0 as i128, dom[j].1 as i128);
                    let nl = l + (x0 - l).rem_euclid(m2);
                    let nu = u - (u - x0).rem_euclid(m2);
                    if nl > l {
                        dom[j].0 = nl as i64;
                        why[j].0 = ri;
                        changed = true;
                    }
                    if nu < u {
                        dom[j].1 = nu as i64;
                        why[j].1 = ri;
                        changed = true;
                    }
                    if dom[j].0 > dom[j].1 {
                        return Err(ri);
                    }
                }
            }
        }
        Ok(())
    }

    /// Every integer point of `bx` satisfying the system, the post-filters
    /// and `extra`, in lexicographic order.
    pub fn enumerate(
        &self,
        sys: &ConstraintSystem,
        bx: &SolutionBox,
        extra: &dyn Fn(&PaVector) -> Option<Label>,
    ) -> Enumeration {
        let mut out = Enumeration {
            box_points: bx.points(),
            ..Default::default()
        };
        let Some(bounds) = &bx.bounds else {
            return out;
        };
        let n = self.variables.len();
        // suffix[k] = number of box points in coordinates k..n
        let mut suffix = vec![1u128; n + 1];
        for k in (0..n).rev() {
            suffix[k] = suffix[k + 1] * (bounds[k].1 - bounds[k].0 + 1) as u128;
        }
        let mut st = Dfs {
            sys: self,
            full: sys,
            bounds,
            suffix: &suffix,
            extra,
            out: &mut out,
        };
        let why = vec![(usize::MAX, usize::MAX); n];
        st.visit(0, bounds.clone(), why);
        out
    }
}

struct Dfs<'a> {
    sys: &'a IntegerSystem,
    full: &'a ConstraintSystem,
    bounds: &'a [(i64, i64)],
    suffix: &'a [u128],
    extra: &'a dyn Fn(&PaVector) -> Option<Label>,
    out: &'a mut Enumeration,
}

impl Dfs<'_> {
    fn charge(&mut self, label: Label, count: u128) {
        if count > 0 {
            *self.out.eliminated.entry(label).or_insert(0) += count;
        }
    }

    fn visit(&mut self, k: usize, mut dom: Vec<(i64, i64)>, mut why: Vec<(usize, usize)>) {
        if let Err(ri) = self.sys.propagate(&mut dom, &mut why) {
            let label = self.sys.labels[self.sys.rows[ri].label].clone();
            self.charge(label, self.suffix[k]);
            return;
        }
        let n = self.bounds.len();
        if k == n {
            self.leaf(&dom);
            return;
        }
        let (blo, bhi) = self.bounds[k];
        let (dlo, dhi) = dom[k];
        let below = (dlo - blo).max(0) as u128 * self.suffix[k + 1];
        let above = (bhi - dhi).max(0) as u128 * self.suffix[k + 1];
        if below > 0 {
            let l = self.sys.labels[self.sys.rows[why[k].0].label].clone();
            self.charge(l, below);
        }
        if above > 0 {
            let l = self.sys.labels[self.sys.rows[why[k].1].label].clone();
            self.charge(l, above);
        }
        for v in dlo..=dhi {
            let mut d = dom.clone();
            d[k] = (v, v);
            self.visit(k + 1, d, why.clone());
        }
    }

    fn leaf(&mut self, dom: &[(i64, i64)]) {
        let mut pa = PaVector::zero(self.full.order, self.full.num_classes);
        for (i, &c) in self.sys.variables.iter().enumerate() {
            pa.entries[c] = dom[i].0;
        }
        if let Some(l) = self.full.first_violation(&pa) {
            let l = l.clone();
            self.charge(l, 1);
            return;
        }
        if !self.full.passes_post_filters(&pa) {
            let p = self.full.cohn_livingstone.as_ref().map_or(0, |c| c.p);
            self.charge(Label::CohnLivingstone { p }, 1);
            return;
        }
        if let Some(l) = (self.extra)(&pa) {
            self.charge(l, 1);
            return;
        }
        self.out.solutions.push(pa);
    }
}

/// Bounds every free variable of `sys` by exact LP.
pub fn solve_box(
    sys: &ConstraintSystem,
    class_id: impl Fn(usize) -> String,
) -> Result<SolutionBox, SolveError> {
    IntegerSystem::new(sys)?.lp_box(class_id)
}

/// All integer points of `bx` that satisfy `sys`, lexicographic in class
/// order.
pub fn enumerate_integer_solutions(
    sys: &ConstraintSystem,
    bx: &SolutionBox,
) -> Result<Vec<PaVector>, SolveError> {
    let is = IntegerSystem::new(sys)?;
    Ok(is.enumerate(sys, bx, &|_| None).solutions)
}

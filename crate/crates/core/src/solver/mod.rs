//! Induction over the divisor lattice of unit orders.
//!
//! Orders are solved in increasing order.  For order `n`, every coherent
//! choice of the powers `u^p` (and of the image of `u` in each quotient) gives
//! one constraint system; the union of their integer solutions, wrapped with
//! the chosen powers, is the solved set for `n`.

pub mod lattice;
pub mod lp;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith;
use crate::constraints::{
    ConstraintError, Label, PaVector, PowerAssignment, QuotientImage, SystemBuilder, Toggles,
};
use crate::group::GroupData;
pub use lattice::{enumerate_integer_solutions, solve_box, IntegerSystem, SolutionBox};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("unbounded variable: the relaxation does not bound ε[{0}]")]
    Unbounded(String),
    #[error("integer overflow while scaling constraints")]
    Overflow,
    #[error(transparent)]
    Constraint(#[from] ConstraintError),
    #[error("dependency error: {0}")]
    Dependency(String),
    #[error("configuration error: {0}")]
    Config(String),
}

/// A unit together with the coherent tree of its prime powers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SolvedUnit {
    pub order: u64,
    pub pa: PaVector,
    pub children: BTreeMap<u64, Arc<SolvedUnit>>,
}

impl SolvedUnit {
    /// The group element of class `c`, with powers from the power maps.
    pub fn trivial(g: &GroupData, c: usize) -> Arc<SolvedUnit> {
        let mut memo = HashMap::new();
        Self::trivial_memo(g, c, &mut memo)
    }

    fn trivial_memo(
        g: &GroupData,
        c: usize,
        memo: &mut HashMap<usize, Arc<SolvedUnit>>,
    ) -> Arc<SolvedUnit> {
        if let Some(u) = memo.get(&c) {
            return u.clone();
        }
        let order = g.classes[c].order;
        let children = arith::prime_divisors(order)
            .into_iter()
            .map(|p| {
                let pc = g.power(c, p).expect("validated power maps");
                (p, Self::trivial_memo(g, pc, memo))
            })
            .collect();
        let u = Arc::new(SolvedUnit {
            order,
            pa: PaVector::trivial(order, g.num_classes(), c),
            children,
        });
        memo.insert(c, u.clone());
        u
    }

    /// Rationally conjugate to a group element: this unit and all its powers
    /// have a single nonzero partial augmentation, on a class of the right
    /// order, and the classes power correctly.
    pub fn is_trivial(&self, g: &GroupData) -> bool {
        let Some(c) = self.pa.trivial_class() else {
            return false;
        };
        if g.classes[c].order != self.order {
            return false;
        }
        self.children.iter().all(|(&p, ch)| {
            ch.is_trivial(g) && g.power(c, p).ok() == ch.pa.trivial_class()
        })
    }

    /// `u^d` by walking the tree.
    pub fn power(self: &Arc<Self>, d: u64) -> Option<Arc<SolvedUnit>> {
        let d = d % self.order;
        if d == 0 {
            return None;
        }
        let g = arith::gcd(d, self.order);
        let mut cur = self.clone();
        for (p, e) in arith::factor(g) {
            for _ in 0..e {
                cur = cur.children.get(&p)?.clone();
            }
        }
        // for d coprime to the order of what remains, u^d is a Galois twin
        // that the tree does not record
        (g == d).then_some(cur)
    }

    /// Diamond coherence of the whole tree.
    pub fn is_coherent(&self) -> bool {
        for (&p, a) in &self.children {
            if a.order * p != self.order || !a.is_coherent() {
                return false;
            }
            for (&q, b) in &self.children {
                if p < q && a.children.get(&q) != b.children.get(&p) {
                    return false;
                }
            }
        }
        self.children.len() == arith::prime_divisors(self.order).len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZcStatus {
    VerifiedTrivial,
    ReducedViaCentralTranslation,
    Open,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Translation {
    /// `n = m·k` with the `k`-part of `u` central.
    pub central_order: u64,
    pub cofactor_order: u64,
    pub central_classes: Vec<usize>,
    /// Whether the direct μ-system reached the same solution set.
    pub direct_agrees: bool,
    pub direct_solutions: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OrderTrace {
    pub variables: Vec<usize>,
    pub assignments: usize,
    pub systems: usize,
    pub box_points: u128,
    pub eliminated: BTreeMap<Label, u128>,
    /// Per-variable hull of the LP boxes over all systems.
    pub hull: BTreeMap<usize, (i64, i64)>,
    pub translation: Option<Translation>,
    pub excluded: Option<String>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderVerdict {
    pub order: u64,
    pub solutions: Vec<Arc<SolvedUnit>>,
    pub status: ZcStatus,
    pub trace: OrderTrace,
}

impl OrderVerdict {
    pub fn no_units(&self) -> bool {
        self.solutions.is_empty()
    }

    pub fn nontrivial<'a>(&'a self, g: &'a GroupData) -> impl Iterator<Item = &'a Arc<SolvedUnit>> {
        self.solutions.iter().filter(move |u| !u.is_trivial(g))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOptions {
    pub toggles: Toggles,
    /// Evaluate power assignments on the rayon pool when available.
    pub parallel: bool,
    /// Only these orders are solved (with their divisors); `None` = all.
    pub orders: Option<Vec<u64>>,
}

impl SolveOptions {
    pub fn new(toggles: Toggles) -> Self {
        SolveOptions {
            toggles,
            parallel: cfg!(feature = "parallel"),
            orders: None,
        }
    }
}

/// A solved quotient reachable through one of the group's links.
#[derive(Debug, Clone, Copy)]
pub struct QuotientContext<'a> {
    pub link: usize,
    pub group: &'a GroupData,
    pub verdicts: &'a BTreeMap<u64, OrderVerdict>,
}

pub fn trivial_solutions(g: &GroupData, n: u64) -> Vec<Arc<SolvedUnit>> {
    g.classes_of_order(n)
        .into_iter()
        .map(|c| SolvedUnit::trivial(g, c))
        .collect()
}

/// Coherent choices of the powers of `u`, one unit per maximal divisor.
pub fn enumerate_power_assignments(
    solved: &BTreeMap<u64, OrderVerdict>,
    n: u64,
) -> Result<Vec<PowerAssignment>, SolveError> {
    let primes = arith::prime_divisors(n);
    let mut pools = Vec::new();
    for &p in &primes {
        let v = solved.get(&(n / p)).ok_or_else(|| {
            SolveError::Dependency(format!("order {} must be solved before {n}", n / p))
        })?;
        pools.push(&v.solutions);
    }
    let mut out = Vec::new();
    let mut choice: Vec<Arc<SolvedUnit>> = Vec::new();
    fn rec(
        i: usize,
        n: u64,
        primes: &[u64],
        pools: &[&Vec<Arc<SolvedUnit>>],
        choice: &mut Vec<Arc<SolvedUnit>>,
        out: &mut Vec<PowerAssignment>,
    ) {
        if i == primes.len() {
            let mut powers = BTreeMap::new();
            for d in arith::divisors(n) {
                if d == 1 || d == n {
                    continue;
                }
                let k = primes.iter().position(|p| d % p == 0).expect("d > 1");
                let u = if d == primes[k] {
                    choice[k].clone()
                } else {
                    choice[k].power(d / primes[k]).expect("coherent tree")
                };
                powers.insert(d, u);
            }
            out.push(PowerAssignment { order: n, powers });
            return;
        }
        for u in pools[i] {
            // u^{p_i p_j} must agree with what the earlier choices say
            let ok = (0..i).all(|j| {
                choice[j].children.get(&primes[i]) == u.children.get(&primes[j])
            });
            if ok {
                choice.push(u.clone());
                rec(i + 1, n, primes, pools, choice, out);
                choice.pop();
            }
        }
    }
    rec(0, n, &primes, &pools, &mut choice, &mut out);
    Ok(out)
}

/// `z·u` for central `z`: the partial augmentation at `z·c` is `ε_c(u)`.
pub fn central_translate(g: &GroupData, pa: &PaVector, z: usize) -> Result<PaVector, SolveError> {
    if !g.is_central(z) {
        return Err(SolveError::Config(format!("{} is not central", g.class_id(z))));
    }
    let mut out = PaVector::zero(0, g.num_classes());
    for (c, &e) in pa.entries.iter().enumerate() {
        let zc = g.central_mult(z, c).ok_or_else(|| {
            SolveError::Config(format!("no central multiplication for {}", g.class_id(z)))
        })?;
        out.entries[zc] += e;
    }
    let zo = g.classes[z].order;
    // z·u has order lcm(o(z), o(u)) when the orders are coprime; in general
    // read it off from a trivial vector, otherwise keep the lcm bound
    out.order = match out.trivial_class() {
        Some(c) => g.classes[c].order,
        None => arith::lcm(zo, pa.order),
    };
    Ok(out)
}

fn fuse(g: &GroupData, link: usize, q: &GroupData, pa: &PaVector) -> Vec<i64> {
    let mut out = vec![0; q.num_classes()];
    for (c, &e) in pa.entries.iter().enumerate() {
        let qc = q
            .class_index(&g.quotients[link].fusion[c])
            .expect("link checked against quotient");
        out[qc] += e;
    }
    out
}

/// Candidate images of `u` in one quotient, given the powers of `u`.
fn quotient_images<'a>(
    g: &GroupData,
    n: u64,
    powers: &PowerAssignment,
    qc: &QuotientContext<'a>,
) -> Vec<QuotientImage<'a>> {
    let q = qc.group;
    let kernel = &g.quotients[qc.link].kernel;
    let mut out = Vec::new();
    for m in arith::divisors(n) {
        if m == 1 {
            // u would lie in the central kernel: handled as a central unit
            continue;
        }
        if m < n {
            // π(u^m) = 1 forces u^m into the kernel
            let um = &powers.powers[&m];
            match um.pa.trivial_class() {
                Some(c) if kernel.contains(&c) => {}
                _ => continue,
            }
        }
        let Some(v) = qc.verdicts.get(&m) else {
            continue;
        };
        for img in &v.solutions {
            let ok = arith::prime_divisors(n).into_iter().all(|p| {
                let up = if p == n { None } else { powers.powers.get(&p) };
                let fused = match up {
                    Some(u) => fuse(g, qc.link, q, &u.pa),
                    None => {
                        // u^p = 1
                        let mut id = vec![0; q.num_classes()];
                        id[0] = 1;
                        id
                    }
                };
                if m % p == 0 {
                    let want = match img.children.get(&p) {
                        Some(ch) => ch.pa.entries.clone(),
                        None => return false,
                    };
                    fused == want
                } else if let Some(c) = img.pa.trivial_class() {
                    let mut want = vec![0; q.num_classes()];
                    want[q.power(c, p).expect("validated")] = 1;
                    fused == want
                } else {
                    v.solutions.iter().any(|s| s.pa.entries == fused)
                }
            });
            if ok {
                out.push(QuotientImage {
                    quotient: q,
                    link: qc.link,
                    image: img.clone(),
                });
            }
        }
    }
    out
}

struct Combo<'a> {
    powers: PowerAssignment,
    images: Vec<QuotientImage<'a>>,
}

struct ComboResult {
    units: Vec<Arc<SolvedUnit>>,
    bx: SolutionBox,
    box_points: u128,
    eliminated: BTreeMap<Label, u128>,
}

fn run_parallel<T, R, F>(items: &[T], parallel: bool, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = parallel;
    items.iter().map(f).collect()
}

fn solve_combo(
    g: &GroupData,
    builder: &SystemBuilder<'_>,
    combo: &Combo<'_>,
) -> Result<ComboResult, SolveError> {
    let sys = builder.build(&combo.powers, &combo.images)?;
    let is = IntegerSystem::new(&sys)?;
    let bx = is.lp_box(|c| g.class_id(c).to_string())?;
    let n = sys.order;
    let children: BTreeMap<u64, Arc<SolvedUnit>> = arith::prime_divisors(n)
        .into_iter()
        .map(|p| {
            let up = if p == n {
                SolvedUnit::trivial(g, 0)
            } else {
                combo.powers.powers[&p].clone()
            };
            (p, up)
        })
        .collect();
    let children_trivial = children.values().all(|c| c.is_trivial(g));
    let coherence = |pa: &PaVector| -> Option<Label> {
        let c = pa.trivial_class()?;
        if !children_trivial {
            return None;
        }
        let bad = g.classes[c].order != n
            || children
                .iter()
                .any(|(&p, ch)| g.power(c, p).ok() != ch.pa.trivial_class());
        bad.then_some(Label::PowerCoherence)
    };
    let e = is.enumerate(&sys, &bx, &coherence);
    let units = e
        .solutions
        .into_iter()
        .map(|pa| {
            Arc::new(SolvedUnit {
                order: n,
                pa,
                children: children.clone(),
            })
        })
        .collect();
    Ok(ComboResult {
        units,
        bx,
        box_points: e.box_points,
        eliminated: e.eliminated,
    })
}

/// Solves order `n`, given verdicts for every proper divisor.
pub fn solve_order(
    g: &GroupData,
    n: u64,
    solved: &BTreeMap<u64, OrderVerdict>,
    quotients: &[QuotientContext<'_>],
    options: &SolveOptions,
) -> Result<OrderVerdict, SolveError> {
    let toggles = &options.toggles;
    let mut trace = OrderTrace::default();
    if n == 1 {
        return Ok(OrderVerdict {
            order: 1,
            solutions: vec![SolvedUnit::trivial(g, 0)],
            status: ZcStatus::VerifiedTrivial,
            trace,
        });
    }
    if toggles.fusion && quotients.len() != g.quotients.len() {
        return Err(SolveError::Dependency(format!(
            "fusion is enabled but {} of {} quotients of {} are solved",
            quotients.len(),
            g.quotients.len(),
            g.name
        )));
    }
    for qc in quotients {
        for m in arith::divisors(n).into_iter().skip(1) {
            if qc.group.exponent() % m == 0 && !qc.verdicts.contains_key(&m) {
                return Err(SolveError::Dependency(format!(
                    "order {m} of {} is not solved",
                    qc.group.name
                )));
            }
        }
    }

    let central: Vec<Arc<SolvedUnit>> = trivial_solutions(g, n)
        .into_iter()
        .filter(|u| g.is_central(u.pa.trivial_class().expect("trivial")))
        .collect();

    let assignments = enumerate_power_assignments(solved, n)?;
    trace.assignments = assignments.len();
    let mut combos: Vec<Combo<'_>> = Vec::new();
    for powers in assignments {
        let mut image_sets: Vec<Vec<QuotientImage<'_>>> = vec![Vec::new()];
        if toggles.fusion {
            for qc in quotients {
                let imgs = quotient_images(g, n, &powers, qc);
                let mut next = Vec::new();
                for prefix in &image_sets {
                    for img in &imgs {
                        let mut v = prefix.clone();
                        v.push(img.clone());
                        next.push(v);
                    }
                }
                image_sets = next;
            }
        }
        for images in image_sets {
            combos.push(Combo {
                powers: powers.clone(),
                images,
            });
        }
    }
    trace.systems = combos.len();

    let builder = SystemBuilder::new(g, n, toggles)?;
    trace.variables = builder.variables().to_vec();

    let results = run_parallel(&combos, options.parallel, |c| solve_combo(g, &builder, c));
    let mut direct: BTreeSet<Arc<SolvedUnit>> = BTreeSet::new();
    for r in results {
        let r = r?;
        trace.box_points += r.box_points;
        for (l, k) in r.eliminated {
            *trace.eliminated.entry(l).or_insert(0) += k;
        }
        if let Some(b) = &r.bx.bounds {
            for (&v, &(lo, hi)) in r.bx.variables.iter().zip(b) {
                let e = trace.hull.entry(v).or_insert((lo, hi));
                *e = (e.0.min(lo), e.1.max(hi));
            }
        }
        direct.extend(r.units);
    }
    direct.extend(central.iter().cloned());

    let translated = if toggles.central_translation {
        central_translation(g, n, solved, &combos)
    } else {
        None
    };

    let (solutions, status) = match translated {
        Some((mut tr, set)) => {
            let mut all: BTreeSet<Arc<SolvedUnit>> = set;
            all.extend(central.iter().cloned());
            tr.direct_agrees = all == direct;
            tr.direct_solutions = direct.len();
            if !tr.direct_agrees {
                trace.notes.push(format!(
                    "direct μ-system leaves {} solutions, central translation {}",
                    direct.len(),
                    all.len()
                ));
            }
            trace.translation = Some(tr);
            (all, ZcStatus::ReducedViaCentralTranslation)
        }
        None => {
            let status = if direct.iter().all(|u| u.is_trivial(g)) {
                ZcStatus::VerifiedTrivial
            } else {
                ZcStatus::Open
            };
            (direct, status)
        }
    };
    trace.notes.extend(builder.notes().iter().cloned());
    Ok(OrderVerdict {
        order: n,
        solutions: solutions.into_iter().collect(),
        status,
        trace,
    })
}

/// If every candidate unit has a central `k`-part and all units of the
/// complementary order `m` are group elements, `u = z·w` with `z` central
/// and `w` a group element of order `m`.
fn central_translation(
    g: &GroupData,
    n: u64,
    solved: &BTreeMap<u64, OrderVerdict>,
    combos: &[Combo<'_>],
) -> Option<(Translation, BTreeSet<Arc<SolvedUnit>>)> {
    if combos.is_empty() {
        return None;
    }
    let parts: Vec<u64> = arith::factor(n).into_iter().map(|(p, e)| p.pow(e)).collect();
    // every proper nonempty subset of prime-power parts is a candidate k
    let mut splits = Vec::new();
    for mask in 1..(1u32 << parts.len()) - 1 {
        let k: u64 = parts
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, q)| q)
            .product();
        splits.push(k);
    }
    splits.sort_unstable();
    for k in splits {
        let m = n / k;
        let Some(wm) = solved.get(&m) else { continue };
        if wm.solutions.is_empty() || !wm.solutions.iter().all(|w| w.is_trivial(g)) {
            continue;
        }
        let central_k = combos.iter().all(|c| {
            c.powers.powers[&m]
                .pa
                .trivial_class()
                .is_some_and(|cl| g.is_central(cl))
        });
        if !central_k {
            continue;
        }
        let zs: Vec<usize> = g
            .central_classes()
            .iter()
            .map(|&(z, _)| z)
            .filter(|&z| g.classes[z].order == k)
            .collect();
        let mut set = BTreeSet::new();
        for &z in &zs {
            for w in &wm.solutions {
                let c = w.pa.trivial_class().expect("trivial");
                let zc = g.central_mult(z, c)?;
                if g.classes[zc].order != n {
                    return None;
                }
                set.insert(SolvedUnit::trivial(g, zc));
            }
        }
        return Some((
            Translation {
                central_order: k,
                cofactor_order: m,
                central_classes: zs,
                direct_agrees: false,
                direct_solutions: 0,
            },
            set,
        ));
    }
    None
}

/// Verdicts for every candidate order of `g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub group: String,
    pub toggles: Toggles,
    pub exponent: u64,
    pub orders: BTreeMap<u64, OrderVerdict>,
}

impl Verification {
    pub fn zc1_verified(&self) -> bool {
        self.orders.values().all(|v| v.status != ZcStatus::Open)
    }

    pub fn open_orders(&self) -> Vec<u64> {
        self.orders
            .values()
            .filter(|v| v.status == ZcStatus::Open)
            .map(|v| v.order)
            .collect()
    }
}

/// Divisors of the exponent whose prime-power parts are element orders.
pub fn candidate_orders(g: &GroupData) -> Vec<u64> {
    arith::divisors(g.exponent())
        .into_iter()
        .filter(|&d| {
            arith::factor(d)
                .into_iter()
                .all(|(p, e)| g.has_element_order(p.pow(e)))
        })
        .collect()
}

/// Why order `d` cannot occur given the quotients, if it cannot.
fn spectrum_exclusion(g: &GroupData, d: u64, quotients: &[QuotientContext<'_>]) -> Option<String> {
    if g.classes.iter().any(|c| c.order == d && g.is_central(g.class_index(&c.id).unwrap())) {
        return None;
    }
    for qc in quotients {
        let kernel_orders: BTreeSet<u64> = g.quotients[qc.link]
            .kernel
            .iter()
            .map(|&c| g.classes[c].order)
            .collect();
        let possible = arith::divisors(d).into_iter().any(|m| {
            kernel_orders.contains(&(d / m))
                && (m == 1 || qc.verdicts.get(&m).is_some_and(|v| !v.solutions.is_empty()))
        });
        if !possible {
            return Some(format!(
                "no unit of {} has an order m with {d}/m the order of a kernel element",
                qc.group.name
            ));
        }
    }
    None
}

pub fn verify_zc1(
    g: &GroupData,
    quotients: &[QuotientContext<'_>],
    options: &SolveOptions,
) -> Result<Verification, SolveError> {
    if options.orders.as_ref().is_some_and(|os| os.contains(&0)) {
        return Err(SolveError::Config("unit orders are positive".into()));
    }
    let mut orders: BTreeMap<u64, OrderVerdict> = BTreeMap::new();
    let wanted: Option<BTreeSet<u64>> = options.orders.as_ref().map(|os| {
        os.iter()
            .flat_map(|&o| arith::divisors(o))
            .collect()
    });
    let fusion_ctx: &[QuotientContext<'_>] = if options.toggles.fusion { quotients } else { &[] };
    for d in candidate_orders(g) {
        if let Some(w) = &wanted {
            if !w.contains(&d) {
                continue;
            }
        }
        if let Some(reason) = spectrum_exclusion(g, d, fusion_ctx) {
            orders.insert(
                d,
                OrderVerdict {
                    order: d,
                    solutions: Vec::new(),
                    status: ZcStatus::VerifiedTrivial,
                    trace: OrderTrace {
                        excluded: Some(reason),
                        ..Default::default()
                    },
                },
            );
            continue;
        }
        let v = solve_order(g, d, &orders, fusion_ctx, options)?;
        orders.insert(d, v);
    }
    if let Some(os) = &options.orders {
        for &o in os {
            orders.entry(o).or_insert_with(|| OrderVerdict {
                order: o,
                solutions: Vec::new(),
                status: ZcStatus::VerifiedTrivial,
                trace: OrderTrace {
                    excluded: Some(format!(
                        "torsion unit orders divide the exponent {} and have prime-power parts among the element orders",
                        g.exponent()
                    )),
                    ..Default::default()
                },
            });
        }
    }
    Ok(Verification {
        group: g.name.clone(),
        toggles: options.toggles.clone(),
        exponent: g.exponent(),
        orders,
    })
}

/// Verifies `g` after recursively verifying its quotients, resolved by name.
pub fn verify_with_quotients(
    g: &GroupData,
    resolve: &dyn Fn(&str) -> Result<GroupData, String>,
    options: &SolveOptions,
) -> Result<(Verification, Vec<(GroupData, Verification)>), SolveError> {
    let mut stack = vec![g.name.clone()];
    let cache = Mutex::new(Vec::new());
    let v = verify_rec(g, resolve, options, &mut stack, &cache)?;
    Ok((v, cache.into_inner().expect("no poisoning")))
}

fn verify_rec(
    g: &GroupData,
    resolve: &dyn Fn(&str) -> Result<GroupData, String>,
    options: &SolveOptions,
    stack: &mut Vec<String>,
    cache: &Mutex<Vec<(GroupData, Verification)>>,
) -> Result<Verification, SolveError> {
    let mut solved_quotients = Vec::new();
    if options.toggles.fusion {
        for (i, link) in g.quotients.iter().enumerate() {
            if stack.contains(&link.quotient_name) {
                return Err(SolveError::Config(format!(
                    "quotient dependency cycle: {} -> {}",
                    stack.join(" -> "),
                    link.quotient_name
                )));
            }
            let q = resolve(&link.quotient_name).map_err(SolveError::Dependency)?;
            g.check_link(link, &q)
                .map_err(|e| SolveError::Dependency(e.to_string()))?;
            stack.push(q.name.clone());
            // a quotient's verdict is a fact about the quotient: solve all its
            // orders with its full constraint set, whatever is toggled here
            let qopts = SolveOptions {
                orders: None,
                toggles: Toggles::full(&q),
                ..options.clone()
            };
            let qv = verify_rec(&q, resolve, &qopts, stack, cache)?;
            stack.pop();
            solved_quotients.push((i, q, qv));
        }
    }
    let ctx: Vec<QuotientContext<'_>> = solved_quotients
        .iter()
        .map(|(i, q, v)| QuotientContext {
            link: *i,
            group: q,
            verdicts: &v.orders,
        })
        .collect();
    let v = verify_zc1(g, &ctx, options)?;
    let mut c = cache.lock().expect("no poisoning");
    for (_, q, qv) in solved_quotients {
        if !c.iter().any(|(g2, _): &(GroupData, Verification)| g2.name == q.name) {
            c.push((q, qv));
        }
    }
    Ok(v)
}

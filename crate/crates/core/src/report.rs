//! Machine- and human-readable reports of a verification run.
//!
//! The JSON layout is versioned by [`SCHEMA_VERSION`] and documented in
//! `docs/report-schema.md`.  Nothing run-dependent (timings, paths, thread
//! counts) goes into it, so reports are byte-stable.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::constraints::{Label, Toggles};
use crate::group::GroupData;
use crate::jsonfmt;
use crate::solver::{OrderVerdict, Verification, ZcStatus};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Verified,
    Open,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scope {
    /// Every candidate unit order of the group.
    Complete,
    /// Only the requested orders and their divisors.
    Partial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub group: String,
    pub group_order: u64,
    pub exponent: u64,
    pub classes: Vec<String>,
    pub toggles: Toggles,
    pub scope: Scope,
    pub zc1: Verdict,
    pub open_orders: Vec<u64>,
    pub quotients: Vec<QuotientSummary>,
    pub orders: Vec<OrderReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientSummary {
    pub name: String,
    pub zc1: Verdict,
    pub open_orders: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderReport {
    pub order: u64,
    pub status: ZcStatus,
    pub no_units: bool,
    pub excluded: Option<String>,
    pub variables: Vec<String>,
    pub bounds: Vec<Bound>,
    pub assignments: u64,
    pub systems: u64,
    pub box_points: u64,
    pub eliminated: Vec<Elimination>,
    pub translation: Option<TranslationReport>,
    pub notes: Vec<String>,
    pub solutions: Vec<SolutionReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bound {
    pub class: String,
    pub lo: i64,
    pub hi: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Elimination {
    pub constraint: Label,
    pub text: String,
    pub points: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranslationReport {
    pub central_order: u64,
    pub cofactor_order: u64,
    pub central_classes: Vec<String>,
    pub direct_agrees: bool,
    pub direct_solutions: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionReport {
    /// The class of the group element when the unit is trivial.
    pub class: Option<String>,
    pub trivial: bool,
    /// Partial augmentations in class order.
    pub pa: Vec<i64>,
    /// Partial augmentations of `u^p` for each prime `p`.
    pub powers: BTreeMap<String, Vec<i64>>,
}

fn sat(v: impl TryInto<u64>) -> u64 {
    v.try_into().unwrap_or(u64::MAX)
}

impl OrderReport {
    pub fn new(g: &GroupData, v: &OrderVerdict) -> Self {
        let t = &v.trace;
        OrderReport {
            order: v.order,
            status: v.status,
            no_units: v.no_units(),
            excluded: t.excluded.clone(),
            variables: t.variables.iter().map(|&c| g.class_id(c).to_string()).collect(),
            bounds: t
                .hull
                .iter()
                .map(|(&c, &(lo, hi))| Bound {
                    class: g.class_id(c).to_string(),
                    lo,
                    hi,
                })
                .collect(),
            assignments: sat(t.assignments),
            systems: sat(t.systems),
            box_points: sat(t.box_points),
            eliminated: t
                .eliminated
                .iter()
                .map(|(l, &k)| Elimination {
                    constraint: l.clone(),
                    text: l.to_string(),
                    points: sat(k),
                })
                .collect(),
            translation: t.translation.as_ref().map(|tr| TranslationReport {
                central_order: tr.central_order,
                cofactor_order: tr.cofactor_order,
                central_classes: tr
                    .central_classes
                    .iter()
                    .map(|&c| g.class_id(c).to_string())
                    .collect(),
                direct_agrees: tr.direct_agrees,
                direct_solutions: sat(tr.direct_solutions),
            }),
            notes: t.notes.clone(),
            solutions: v
                .solutions
                .iter()
                .map(|u| {
                    let trivial = u.is_trivial(g);
                    SolutionReport {
                        class: u.pa.trivial_class().map(|c| g.class_id(c).to_string()),
                        trivial,
                        pa: u.pa.entries.clone(),
                        powers: u
                            .children
                            .iter()
                            .map(|(p, ch)| (p.to_string(), ch.pa.entries.clone()))
                            .collect(),
                    }
                })
                .collect(),
        }
    }
}

fn verdict(v: &Verification) -> Verdict {
    if v.zc1_verified() {
        Verdict::Verified
    } else {
        Verdict::Open
    }
}

impl Report {
    pub fn new(g: &GroupData, v: &Verification, quotients: &[(GroupData, Verification)], scope: Scope) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            group: g.name.clone(),
            group_order: g.order,
            exponent: v.exponent,
            classes: g.classes.iter().map(|c| c.id.clone()).collect(),
            toggles: v.toggles.clone(),
            scope,
            zc1: verdict(v),
            open_orders: v.open_orders(),
            quotients: quotients
                .iter()
                .map(|(q, qv)| QuotientSummary {
                    name: q.name.clone(),
                    zc1: verdict(qv),
                    open_orders: qv.open_orders(),
                })
                .collect(),
            orders: v.orders.values().map(|o| OrderReport::new(g, o)).collect(),
        }
    }

    pub fn order(&self, n: u64) -> Option<&OrderReport> {
        self.orders.iter().find(|o| o.order == n)
    }

    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("report serialises");
        jsonfmt::to_string(&v)
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let w = &mut out;
        let _ = writeln!(w, "{} (order {}, exponent {})", self.group, self.group_order, self.exponent);
        let _ = writeln!(w, "constraints: {}", toggle_summary(&self.toggles));
        for q in &self.quotients {
            let _ = writeln!(w, "quotient {}: ZC1 {}", q.name, verdict_word(q.zc1, &q.open_orders));
        }
        for o in &self.orders {
            let _ = writeln!(w);
            write_order(w, self, o);
        }
        let _ = writeln!(w);
        let scope = match self.scope {
            Scope::Complete => "",
            Scope::Partial => " (reported orders only)",
        };
        let _ = writeln!(w, "ZC1{scope}: {}", verdict_word(self.zc1, &self.open_orders));
        out
    }
}

fn verdict_word(v: Verdict, open: &[u64]) -> String {
    match v {
        Verdict::Verified => "verified".into(),
        Verdict::Open => format!(
            "open (orders {})",
            open.iter().map(u64::to_string).collect::<Vec<_>>().join(", ")
        ),
    }
}

fn status_word(s: ZcStatus) -> &'static str {
    match s {
        ZcStatus::VerifiedTrivial => "verified-trivial",
        ZcStatus::ReducedViaCentralTranslation => "reduced-via-central-translation",
        ZcStatus::Open => "open",
    }
}

pub fn toggle_summary(t: &Toggles) -> String {
    let mut on = Vec::new();
    if t.ordinary {
        on.push(match &t.characters {
            None => "ordinary".to_string(),
            Some(cs) => format!("ordinary[{}]", cs.join(",")),
        });
    }
    for p in &t.modular {
        on.push(format!("modular:{p}"));
    }
    for (flag, name) in [
        (t.fusion, "fusion"),
        (t.berman_higman, "berman-higman"),
        (t.order_divisibility, "order-divisibility"),
        (t.cohn_livingstone, "cohn-livingstone"),
        (t.central_translation, "central-translation"),
    ] {
        if flag {
            on.push(name.to_string());
        }
    }
    if on.is_empty() {
        "none".into()
    } else {
        on.join(", ")
    }
}

fn render_pa(classes: &[String], pa: &[i64]) -> String {
    let parts: Vec<String> = pa
        .iter()
        .zip(classes)
        .filter(|(&e, _)| e != 0)
        .map(|(e, c)| format!("ε[{c}]={e}"))
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(", ")
    }
}

fn write_order(w: &mut String, r: &Report, o: &OrderReport) {
    let _ = write!(w, "order {}: {}", o.order, status_word(o.status));
    if let Some(why) = &o.excluded {
        let _ = writeln!(w, " — no torsion units of this order ({why})");
        return;
    }
    if o.no_units {
        let _ = writeln!(w, " — no torsion units of this order");
    } else {
        let nontrivial = o.solutions.iter().filter(|s| !s.trivial).count();
        let _ = writeln!(
            w,
            " — {} solution(s), {} nontrivial",
            o.solutions.len(),
            nontrivial
        );
    }
    if o.order == 1 {
        return;
    }
    let _ = writeln!(
        w,
        "  {} power assignment(s), {} system(s), {} box point(s)",
        o.assignments, o.systems, o.box_points
    );
    if !o.bounds.is_empty() {
        let b: Vec<String> = o
            .bounds
            .iter()
            .map(|b| format!("ε[{}] ∈ [{}, {}]", b.class, b.lo, b.hi))
            .collect();
        let _ = writeln!(w, "  box: {}", b.join(", "));
    }
    for e in &o.eliminated {
        let _ = writeln!(w, "  eliminated {} point(s) by {}", e.points, e.text);
    }
    if let Some(t) = &o.translation {
        let _ = writeln!(
            w,
            "  central translation: u = z·w with z central of order {} ({}) and w of order {}; direct system {} ({} solution(s))",
            t.central_order,
            t.central_classes.join(", "),
            t.cofactor_order,
            if t.direct_agrees { "agrees" } else { "disagrees" },
            t.direct_solutions
        );
    }
    for n in &o.notes {
        let _ = writeln!(w, "  note: {n}");
    }
    for s in &o.solutions {
        let kind = match (&s.class, s.trivial) {
            (Some(c), true) => format!("group element {c}"),
            _ => "NONTRIVIAL".to_string(),
        };
        let _ = writeln!(w, "  {} — {kind}", render_pa(&r.classes, &s.pa));
    }
}

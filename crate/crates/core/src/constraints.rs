//! The HeLP constraint system for a hypothetical torsion unit of order `n`.
//!
//! Unknowns are the partial augmentations `ε_c(u)`.  Every eigenvalue
//! multiplicity
//!
//! ```text
//! μ(ξ, u, χ) = (1/n) Σ_{d | n} Tr_{Q(ζ^d)/Q}(χ(u^d) ξ^{-d})
//! ```
//!
//! is affine in the `ε_c(u)` once the powers `u^d`, `d > 1`, are fixed, and
//! must be an integer in `[0, χ(1)]`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith;
use crate::cyclotomic::{Cyclotomic, Rational};
use crate::group::GroupData;
use crate::solver::SolvedUnit;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstraintError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unit of order {order} is not {p}-regular")]
    NotPRegular { p: u64, order: u64 },
    #[error("incomplete power assignment: no unit for u^{0}")]
    IncompleteAssignment(u64),
    #[error("dependency error: {0}")]
    Dependency(String),
}

/// Partial augmentations of a unit, one entry per class in table order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PaVector {
    pub order: u64,
    pub entries: Vec<i64>,
}

impl PaVector {
    pub fn zero(order: u64, num_classes: usize) -> Self {
        PaVector {
            order,
            entries: vec![0; num_classes],
        }
    }

    /// The vector of a group element in class `c`.
    pub fn trivial(order: u64, num_classes: usize, c: usize) -> Self {
        let mut pa = Self::zero(order, num_classes);
        pa.entries[c] = 1;
        pa
    }

    pub fn identity(num_classes: usize) -> Self {
        Self::trivial(1, num_classes, 0)
    }

    pub fn augmentation(&self) -> i64 {
        self.entries.iter().sum()
    }

    /// The class carrying the whole augmentation, if all other entries vanish.
    pub fn trivial_class(&self) -> Option<usize> {
        let mut nz = self.entries.iter().enumerate().filter(|(_, e)| **e != 0);
        match (nz.next(), nz.next()) {
            (Some((c, 1)), None) => Some(c),
            _ => None,
        }
    }

    pub fn by_id(&self, g: &GroupData) -> BTreeMap<String, i64> {
        self.entries
            .iter()
            .enumerate()
            .map(|(c, e)| (g.class_id(c).to_string(), *e))
            .collect()
    }
}

/// `constant + Σ coefficients[c]·ε_c`, dense over the class list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearForm {
    pub constant: Rational,
    pub coefficients: Vec<Rational>,
}

impl LinearForm {
    pub fn zero(num_classes: usize) -> Self {
        LinearForm {
            constant: Rational::zero(),
            coefficients: vec![Rational::zero(); num_classes],
        }
    }

    pub fn eval(&self, pa: &PaVector) -> Rational {
        let mut acc = self.constant.clone();
        for (c, e) in self.coefficients.iter().zip(&pa.entries) {
            if *e != 0 && !c.is_zero() {
                acc += c * Rational::from_integer(BigInt::from(*e));
            }
        }
        acc
    }

    /// Renders the form with class ids, e.g. `1/2 + 1/2·ε[8a] - 1/2·ε[8b]`.
    pub fn render(&self, g: &GroupData) -> String {
        let mut out = crate::cyclotomic::format_rational(&self.constant);
        for (c, q) in self.coefficients.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let neg = q < &Rational::zero();
            let abs = if neg { -q.clone() } else { q.clone() };
            let sign = if neg { " - " } else { " + " };
            let coef = if abs.is_one() {
                String::new()
            } else {
                format!("{}·", crate::cyclotomic::format_rational(&abs))
            };
            out.push_str(&format!("{sign}{coef}ε[{}]", g.class_id(c)));
        }
        out
    }
}

/// Which ingredient a constraint comes from; surfaces in reports.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Label {
    Augmentation,
    BermanHigman { class: String },
    OrderDivisibility { class: String },
    Mu { character: String, exponent: u64, order: u64 },
    ModularMu { p: u64, character: String, exponent: u64, order: u64 },
    Fusion { quotient: String, class: String },
    CohnLivingstone { p: u64 },
    /// A unit with nonnegative partial augmentations whose powers are all
    /// group elements is rationally conjugate to a group element
    /// (Marciniak–Ritter–Sehgal–Weiss), so its class must power correctly.
    PowerCoherence,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Augmentation => write!(f, "augmentation"),
            Label::BermanHigman { class } => write!(f, "berman-higman[{class}]"),
            Label::OrderDivisibility { class } => write!(f, "order-divisibility[{class}]"),
            Label::Mu { character, exponent, order } => {
                write!(f, "mu(E({order})^{exponent}, {character})")
            }
            Label::ModularMu { p, character, exponent, order } => {
                write!(f, "mu{p}(E({order})^{exponent}, {character})")
            }
            Label::Fusion { quotient, class } => write!(f, "fusion[{quotient}:{class}]"),
            Label::CohnLivingstone { p } => write!(f, "cohn-livingstone[p={p}]"),
            Label::PowerCoherence => write!(f, "power-coherence"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equality {
    pub label: Label,
    pub form: LinearForm,
    pub value: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MuConstraint {
    pub label: Label,
    pub form: LinearForm,
    /// The form must be an integer in `[0, upper]`.
    pub upper: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohnLivingstone {
    pub p: u64,
    pub classes: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintSystem {
    pub order: u64,
    pub num_classes: usize,
    /// Classes whose augmentation is not forced to zero, in table order.
    pub variables: Vec<usize>,
    pub forced_zero: Vec<(usize, Label)>,
    pub equalities: Vec<Equality>,
    pub mu_forms: Vec<MuConstraint>,
    pub cohn_livingstone: Option<CohnLivingstone>,
    pub notes: Vec<String>,
}

impl ConstraintSystem {
    /// Checks a full PA vector against every condition; returns the first
    /// violated label in deterministic order.
    pub fn first_violation(&self, pa: &PaVector) -> Option<&Label> {
        for (c, label) in &self.forced_zero {
            if pa.entries[*c] != 0 {
                return Some(label);
            }
        }
        for eq in &self.equalities {
            if eq.form.eval(pa) != Rational::from_integer(BigInt::from(eq.value)) {
                return Some(&eq.label);
            }
        }
        for mu in &self.mu_forms {
            let v = mu.form.eval(pa);
            if !v.is_integer() || v < Rational::zero() || v > Rational::from_integer(BigInt::from(mu.upper)) {
                return Some(&mu.label);
            }
        }
        None
    }

    pub fn passes_post_filters(&self, pa: &PaVector) -> bool {
        match &self.cohn_livingstone {
            None => true,
            Some(cl) => {
                let s: i64 = cl.classes.iter().map(|&c| pa.entries[c]).sum();
                s.rem_euclid(cl.p as i64) != 0
            }
        }
    }
}

/// Constraint ingredients; the defaults are the full method.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Toggles {
    pub ordinary: bool,
    /// Primes whose Brauer characters are used, where applicable.
    pub modular: Vec<u64>,
    pub fusion: bool,
    pub berman_higman: bool,
    pub order_divisibility: bool,
    pub cohn_livingstone: bool,
    pub central_translation: bool,
    /// Restricts the ordinary characters used; `None` means all of them.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub characters: Option<Vec<String>>,
}

impl Default for Toggles {
    fn default() -> Self {
        Toggles {
            ordinary: true,
            modular: Vec::new(),
            fusion: true,
            berman_higman: true,
            order_divisibility: true,
            cohn_livingstone: true,
            central_translation: true,
            characters: None,
        }
    }
}

impl Toggles {
    /// Every constraint family, with the modular primes of every shipped
    /// Brauer table.
    pub fn full(g: &GroupData) -> Self {
        Toggles {
            modular: g.brauer.iter().map(|b| b.p).collect(),
            ..Self::default()
        }
    }

    /// Ordinary characters only, without the Cohn–Livingstone condition.
    pub fn ordinary_only() -> Self {
        Toggles {
            cohn_livingstone: false,
            ..Self::default()
        }
    }
}

/// Powers `u^d` for every divisor `1 < d < n`; `u^n` is the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerAssignment {
    pub order: u64,
    pub powers: BTreeMap<u64, Arc<SolvedUnit>>,
}

impl PowerAssignment {
    pub fn empty(order: u64) -> Self {
        PowerAssignment {
            order,
            powers: BTreeMap::new(),
        }
    }

    fn pa_of_power(&self, d: u64, num_classes: usize) -> Result<PaVector, ConstraintError> {
        if d % self.order == 0 {
            return Ok(PaVector::identity(num_classes));
        }
        self.powers
            .get(&d)
            .map(|u| u.pa.clone())
            .ok_or(ConstraintError::IncompleteAssignment(d))
    }
}

/// A chosen image `π(u)` in a quotient group.
#[derive(Debug, Clone)]
pub struct QuotientImage<'a> {
    pub quotient: &'a GroupData,
    pub link: usize,
    pub image: Arc<SolvedUnit>,
}

pub fn value_of_character_at_unit(
    pa: &PaVector,
    values: &[Cyclotomic],
) -> Result<Cyclotomic, ConstraintError> {
    if pa.entries.len() != values.len() {
        return Err(ConstraintError::InvalidArgument(format!(
            "{} partial augmentations for {} character values",
            pa.entries.len(),
            values.len()
        )));
    }
    Ok(pa
        .entries
        .iter()
        .zip(values)
        .filter(|(e, _)| **e != 0)
        .map(|(e, v)| v.scale_int(*e))
        .sum())
}

/// `φ(u)` for a p-regular unit, summing over p-regular classes only.
pub fn value_of_brauer_at_unit(
    g: &GroupData,
    pa: &PaVector,
    phi: &[Cyclotomic],
    p: u64,
) -> Result<Cyclotomic, ConstraintError> {
    if pa.order % p == 0 {
        return Err(ConstraintError::NotPRegular { p, order: pa.order });
    }
    if pa.entries.len() != phi.len() || phi.len() != g.num_classes() {
        return Err(ConstraintError::InvalidArgument("length mismatch".into()));
    }
    for (c, e) in pa.entries.iter().enumerate() {
        if *e != 0 && g.classes[c].order % p == 0 {
            return Err(ConstraintError::InvalidArgument(format!(
                "nonzero partial augmentation at {}-singular class {}",
                p,
                g.class_id(c)
            )));
        }
    }
    value_of_character_at_unit(pa, phi)
}

fn inv(n: u64) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(n))
}

/// The part of `μ(ζ_n^j, u, χ)` that is linear in the `ε_c(u)`.
fn mu_coefficients(values: &[Cyclotomic], j: u64, n: u64) -> Vec<Rational> {
    if n == 1 {
        // u = u^n = 1: everything is known
        return vec![Rational::zero(); values.len()];
    }
    let xi_inv = Cyclotomic::root_of_unity(n, -(j as i64)).expect("n > 0");
    let scale = inv(n);
    values
        .iter()
        .map(|v| {
            (v * &xi_inv)
                .trace_in_field(n)
                .expect("n > 0")
                * &scale
        })
        .collect()
}

/// The contribution of the powers `u^d`, `d > 1`.
fn mu_constant(
    values: &[Cyclotomic],
    j: u64,
    n: u64,
    powers: &PowerAssignment,
) -> Result<Rational, ConstraintError> {
    let mut acc = Rational::zero();
    for d in arith::divisors(n).into_iter().filter(|&d| d > 1 || n == 1) {
        let pa = powers.pa_of_power(d, values.len())?;
        let chi = value_of_character_at_unit(&pa, values)?;
        let xi = Cyclotomic::root_of_unity(n, -((j * d) as i64)).expect("n > 0");
        acc += (&chi * &xi).trace_in_field(n / d).expect("n/d > 0");
    }
    Ok(acc * inv(n))
}

/// `μ(ζ_n^j, u, χ)` as an affine form in the partial augmentations of `u`.
pub fn mu_form(
    values: &[Cyclotomic],
    j: u64,
    n: u64,
    powers: &PowerAssignment,
) -> Result<LinearForm, ConstraintError> {
    if n == 0 {
        return Err(ConstraintError::InvalidArgument("unit order 0".into()));
    }
    if powers.order != n {
        return Err(ConstraintError::InvalidArgument(format!(
            "power assignment is for order {}, not {n}",
            powers.order
        )));
    }
    Ok(LinearForm {
        constant: mu_constant(values, j % n, n, powers)?,
        coefficients: mu_coefficients(values, j % n, n),
    })
}

struct ClassFunction {
    label: Box<dyn Fn(u64) -> Label + Send + Sync>,
    values: Vec<Cyclotomic>,
    degree: u64,
    /// `coefficients[j]` for `ξ = ζ_n^j`.
    coefficients: Vec<Vec<Rational>>,
}

/// Precomputes everything about the order-`n` system that does not depend on
/// the chosen powers, so that many assignments can be built cheaply.
pub struct SystemBuilder<'g> {
    g: &'g GroupData,
    n: u64,
    toggles: Toggles,
    functions: Vec<ClassFunction>,
    variables: Vec<usize>,
    forced_zero: Vec<(usize, Label)>,
    notes: Vec<String>,
}

impl<'g> SystemBuilder<'g> {
    pub fn new(g: &'g GroupData, n: u64, toggles: &Toggles) -> Result<Self, ConstraintError> {
        if n == 0 {
            return Err(ConstraintError::InvalidArgument("unit order 0".into()));
        }
        let h = g.num_classes();
        let mut notes = Vec::new();
        let mut forced_zero = Vec::new();
        for c in 0..h {
            let cl = &g.classes[c];
            if toggles.berman_higman && n > 1 && g.is_central(c) {
                forced_zero.push((c, Label::BermanHigman { class: cl.id.clone() }));
            } else if toggles.order_divisibility && n % cl.order != 0 {
                forced_zero.push((c, Label::OrderDivisibility { class: cl.id.clone() }));
            }
        }
        let variables = (0..h)
            .filter(|c| !forced_zero.iter().any(|(z, _)| z == c))
            .collect();

        let mut functions = Vec::new();
        if toggles.ordinary {
            for ch in &g.characters {
                if let Some(only) = &toggles.characters {
                    if !only.contains(&ch.id) {
                        continue;
                    }
                }
                let id = ch.id.clone();
                functions.push(ClassFunction {
                    label: Box::new(move |j| Label::Mu {
                        character: id.clone(),
                        exponent: j,
                        order: n,
                    }),
                    values: ch.values.clone(),
                    degree: ch.degree,
                    coefficients: Vec::new(),
                });
            }
        }
        let brauer = g.brauer_characters();
        for &p in &toggles.modular {
            if n % p == 0 {
                notes.push(format!("modular p = {p} skipped: it divides the unit order {n}"));
                continue;
            }
            let mut found = false;
            for phi in brauer.iter().filter(|phi| phi.p == p) {
                found = true;
                let id = phi.id.clone();
                functions.push(ClassFunction {
                    label: Box::new(move |j| Label::ModularMu {
                        p,
                        character: id.clone(),
                        exponent: j,
                        order: n,
                    }),
                    values: phi.values.clone(),
                    degree: phi.degree,
                    coefficients: Vec::new(),
                });
            }
            if !found {
                notes.push(format!("no {p}-modular Brauer characters in {}", g.name));
            }
        }
        for f in &mut functions {
            f.coefficients = (0..n).map(|j| mu_coefficients(&f.values, j, n)).collect();
        }
        Ok(SystemBuilder {
            g,
            n,
            toggles: toggles.clone(),
            functions,
            variables,
            forced_zero,
            notes,
        })
    }

    pub fn variables(&self) -> &[usize] {
        &self.variables
    }

    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    pub fn build(
        &self,
        powers: &PowerAssignment,
        images: &[QuotientImage<'_>],
    ) -> Result<ConstraintSystem, ConstraintError> {
        let (g, n, h) = (self.g, self.n, self.g.num_classes());
        if powers.order != n {
            return Err(ConstraintError::InvalidArgument(format!(
                "power assignment is for order {}, not {n}",
                powers.order
            )));
        }
        let mut equalities = vec![Equality {
            label: Label::Augmentation,
            form: LinearForm {
                constant: Rational::zero(),
                coefficients: vec![Rational::one(); h],
            },
            value: 1,
        }];

        if self.toggles.fusion {
            for img in images {
                let link = &g.quotients[img.link];
                let q = img.quotient;
                for (qc, qcl) in q.classes.iter().enumerate() {
                    let mut form = LinearForm::zero(h);
                    for (c, f) in link.fusion.iter().enumerate() {
                        if *f == qcl.id {
                            form.coefficients[c] = Rational::one();
                        }
                    }
                    equalities.push(Equality {
                        label: Label::Fusion {
                            quotient: q.name.clone(),
                            class: qcl.id.clone(),
                        },
                        form,
                        value: img.image.pa.entries[qc],
                    });
                }
            }
        }

        let mut mu_forms = Vec::new();
        for f in &self.functions {
            for j in 0..n {
                mu_forms.push(MuConstraint {
                    label: (f.label)(j),
                    form: LinearForm {
                        constant: mu_constant(&f.values, j, n, powers)?,
                        coefficients: f.coefficients[j as usize].clone(),
                    },
                    upper: f.degree,
                });
            }
        }

        let cohn_livingstone = match arith::factor(n).as_slice() {
            [(p, _)] if self.toggles.cohn_livingstone => Some(CohnLivingstone {
                p: *p,
                classes: g.classes_of_order(n),
            }),
            _ => None,
        };

        Ok(ConstraintSystem {
            order: n,
            num_classes: h,
            variables: self.variables.clone(),
            forced_zero: self.forced_zero.clone(),
            equalities,
            mu_forms,
            cohn_livingstone,
            notes: self.notes.clone(),
        })
    }
}

/// One-shot form of [`SystemBuilder`].
pub fn build_system(
    g: &GroupData,
    n: u64,
    powers: &PowerAssignment,
    images: &[QuotientImage<'_>],
    toggles: &Toggles,
) -> Result<ConstraintSystem, ConstraintError> {
    if toggles.fusion && images.is_empty() && !g.quotients.is_empty() && n > 1 {
        return Err(ConstraintError::Dependency(format!(
            "fusion is enabled but no quotient image was supplied for order {n}"
        )));
    }
    SystemBuilder::new(g, n, toggles)?.build(powers, images)
}

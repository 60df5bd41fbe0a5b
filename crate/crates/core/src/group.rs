//! Finite-group class data: conjugacy classes, power maps, central
//! multiplication, ordinary characters, Brauer recipes and quotient fusion.
//!
//! Everything is validated on load and immutable afterwards.  Classes are
//! addressed by index internally; ids appear only at the file boundary and in
//! reports.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Deserialize;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::arith;
use crate::cyclotomic::{Cyclotomic, Rational};

/// The named invariant a group file violated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Invariant {
    Structure,
    ClassSizes,
    PowerMap,
    CentralMult,
    Degree,
    CharacterField,
    FirstOrthogonality,
    SecondOrthogonality,
    EigenvalueMultiplicity,
    BrauerRecipe,
    Fusion,
    FusionSizes,
    Anchor,
}

impl Invariant {
    pub fn name(self) -> &'static str {
        match self {
            Invariant::Structure => "structure",
            Invariant::ClassSizes => "class-sizes",
            Invariant::PowerMap => "power-map-consistency",
            Invariant::CentralMult => "central-mult-bijection",
            Invariant::Degree => "degree-at-identity",
            Invariant::CharacterField => "character-field",
            Invariant::FirstOrthogonality => "first-orthogonality",
            Invariant::SecondOrthogonality => "second-orthogonality",
            Invariant::EigenvalueMultiplicity => "eigenvalue-multiplicity",
            Invariant::BrauerRecipe => "brauer-recipe",
            Invariant::Fusion => "fusion-map",
            Invariant::FusionSizes => "fusion-sizes",
            Invariant::Anchor => "anchor-values",
        }
    }
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error [{invariant}]: {detail}")]
    Validation { invariant: Invariant, detail: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl GroupError {
    pub fn invariant(&self) -> Option<Invariant> {
        match self {
            GroupError::Validation { invariant, .. } => Some(*invariant),
            _ => None,
        }
    }
}

fn violation(invariant: Invariant, detail: impl Into<String>) -> GroupError {
    GroupError::Validation {
        invariant,
        detail: detail.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjClass {
    pub id: String,
    pub order: u64,
    pub size: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    pub id: String,
    pub degree: u64,
    pub values: Vec<Cyclotomic>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrauerRecipe {
    pub id: String,
    pub plus: String,
    pub minus: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrauerTable {
    pub p: u64,
    pub recipes: Vec<BrauerRecipe>,
}

/// A Brauer character evaluated on the full class list; entries at
/// p-singular classes are zero and never read.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrauerCharacter {
    pub id: String,
    pub p: u64,
    pub degree: u64,
    pub values: Vec<Cyclotomic>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientLink {
    pub quotient_name: String,
    pub kernel: Vec<usize>,
    /// Quotient class id per class of the group, in class order.
    pub fusion: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupData {
    pub name: String,
    pub order: u64,
    pub classes: Vec<ConjClass>,
    power_maps: BTreeMap<u64, Vec<usize>>,
    /// `(class, inverse class)` for each singleton central class.
    central: Vec<(usize, usize)>,
    /// `central_mult[z][c]`, keyed by central class index.
    central_mult: BTreeMap<usize, Vec<usize>>,
    pub characters: Vec<Character>,
    pub brauer: Vec<BrauerTable>,
    pub quotients: Vec<QuotientLink>,
    index: HashMap<String, usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawClass {
    id: String,
    order: u64,
    size: u64,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawCentral {
    #[serde(default)]
    classes: Vec<RawCentralClass>,
    #[serde(default)]
    mult: BTreeMap<String, BTreeMap<String, String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCentralClass {
    id: String,
    inverse: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCharacter {
    id: String,
    degree: i64,
    values: Vec<Cyclotomic>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBrauer {
    p: u64,
    differences: Vec<RawDifference>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDifference {
    id: String,
    plus: String,
    minus: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawQuotient {
    name: String,
    kernel: Vec<String>,
    fusion: BTreeMap<String, String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGroup {
    name: String,
    order: u64,
    classes: Vec<RawClass>,
    power_maps: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default)]
    central: RawCentral,
    characters: Vec<RawCharacter>,
    #[serde(default)]
    brauer: Vec<RawBrauer>,
    #[serde(default)]
    quotients: Vec<RawQuotient>,
}

impl GroupData {
    /// Parses and fully validates a group file.
    pub fn load(bytes: &[u8]) -> Result<Self, GroupError> {
        let raw: RawGroup =
            serde_json::from_slice(bytes).map_err(|e| GroupError::Parse(e.to_string()))?;
        let g = Self::from_raw(raw)?;
        g.validate()?;
        Ok(g)
    }

    pub fn load_str(s: &str) -> Result<Self, GroupError> {
        Self::load(s.as_bytes())
    }

    fn from_raw(raw: RawGroup) -> Result<Self, GroupError> {
        use Invariant::{CentralMult, Degree, Fusion, PowerMap, Structure};
        if raw.classes.is_empty() {
            return Err(violation(Structure, "no classes"));
        }
        let mut index = HashMap::new();
        for (i, c) in raw.classes.iter().enumerate() {
            if index.insert(c.id.clone(), i).is_some() {
                return Err(violation(Structure, format!("duplicate class id {}", c.id)));
            }
        }
        let lookup = |id: &str, inv: Invariant, ctx: &str| {
            index
                .get(id)
                .copied()
                .ok_or_else(|| violation(inv, format!("{ctx}: unknown class {id:?}")))
        };
        let class_map = |m: &BTreeMap<String, String>, inv: Invariant, ctx: &str| {
            let mut out = vec![usize::MAX; raw.classes.len()];
            for (k, v) in m {
                out[lookup(k, inv, ctx)?] = lookup(v, inv, ctx)?;
            }
            if let Some(i) = out.iter().position(|&x| x == usize::MAX) {
                return Err(violation(
                    inv,
                    format!("{ctx}: no image for class {}", raw.classes[i].id),
                ));
            }
            Ok(out)
        };

        let mut power_maps = BTreeMap::new();
        for (p, m) in &raw.power_maps {
            let p: u64 = p
                .parse()
                .ok()
                .filter(|&p| arith::is_prime(p))
                .ok_or_else(|| violation(PowerMap, format!("power map key {p:?} is not a prime")))?;
            power_maps.insert(p, class_map(m, PowerMap, &format!("power map {p}"))?);
        }

        let mut central = Vec::new();
        for c in &raw.central.classes {
            central.push((
                lookup(&c.id, CentralMult, "central classes")?,
                lookup(&c.inverse, CentralMult, "central inverse")?,
            ));
        }
        let mut central_mult = BTreeMap::new();
        for (z, m) in &raw.central.mult {
            let zi = lookup(z, CentralMult, "central mult")?;
            central_mult.insert(zi, class_map(m, CentralMult, &format!("central mult {z}"))?);
        }

        let mut characters = Vec::new();
        for ch in raw.characters {
            if ch.degree <= 0 {
                return Err(violation(
                    Degree,
                    format!("{} has non-positive degree {}", ch.id, ch.degree),
                ));
            }
            if ch.values.len() != raw.classes.len() {
                return Err(violation(
                    Structure,
                    format!(
                        "{} has {} values for {} classes",
                        ch.id,
                        ch.values.len(),
                        raw.classes.len()
                    ),
                ));
            }
            characters.push(Character {
                id: ch.id,
                degree: ch.degree as u64,
                values: ch.values,
            });
        }

        let brauer = raw
            .brauer
            .into_iter()
            .map(|b| BrauerTable {
                p: b.p,
                recipes: b
                    .differences
                    .into_iter()
                    .map(|d| BrauerRecipe {
                        id: d.id,
                        plus: d.plus,
                        minus: d.minus,
                    })
                    .collect(),
            })
            .collect();

        let mut quotients = Vec::new();
        for q in &raw.quotients {
            let kernel = q
                .kernel
                .iter()
                .map(|k| lookup(k, Fusion, "quotient kernel"))
                .collect::<Result<Vec<_>, _>>()?;
            let mut fusion = vec![None; raw.classes.len()];
            for (k, v) in &q.fusion {
                fusion[lookup(k, Fusion, "fusion")?] = Some(v.clone());
            }
            let fusion = fusion
                .into_iter()
                .enumerate()
                .map(|(i, f)| {
                    f.ok_or_else(|| {
                        violation(
                            Fusion,
                            format!("fusion to {} misses class {}", q.name, raw.classes[i].id),
                        )
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            quotients.push(QuotientLink {
                quotient_name: q.name.clone(),
                kernel,
                fusion,
            });
        }

        let classes = raw
            .classes
            .into_iter()
            .map(|c| ConjClass {
                id: c.id,
                order: c.order,
                size: c.size,
            })
            .collect();

        Ok(GroupData {
            name: raw.name,
            order: raw.order,
            classes,
            power_maps,
            central,
            central_mult,
            characters,
            brauer,
            quotients,
            index,
        })
    }

    fn validate(&self) -> Result<(), GroupError> {
        self.check_classes()?;
        self.check_power_maps()?;
        self.check_central()?;
        self.check_characters()?;
        self.check_brauer()?;
        self.check_quotient_shapes()?;
        crate::anchors::check(self)
    }

    fn check_classes(&self) -> Result<(), GroupError> {
        use Invariant::*;
        if self.order == 0 {
            return Err(violation(Structure, "group order 0"));
        }
        let id = &self.classes[0];
        if id.order != 1 || id.size != 1 {
            return Err(violation(Structure, "first class must be the identity"));
        }
        for c in &self.classes {
            if c.order == 0 || self.order % c.order != 0 {
                return Err(violation(
                    Structure,
                    format!("element order {} of {} does not divide |G|", c.order, c.id),
                ));
            }
            if c.size == 0 || self.order % c.size != 0 {
                return Err(violation(
                    ClassSizes,
                    format!("size {} of {} does not divide |G|", c.size, c.id),
                ));
            }
        }
        let total: u64 = self.classes.iter().map(|c| c.size).sum();
        if total != self.order {
            return Err(violation(
                ClassSizes,
                format!("class sizes sum to {total}, not |G| = {}", self.order),
            ));
        }
        Ok(())
    }

    fn check_power_maps(&self) -> Result<(), GroupError> {
        use Invariant::PowerMap;
        for p in arith::prime_divisors(self.exponent()) {
            if !self.power_maps.contains_key(&p) {
                return Err(violation(PowerMap, format!("missing power map for p = {p}")));
            }
        }
        for (&p, map) in &self.power_maps {
            for (c, &img) in map.iter().enumerate() {
                let o = self.classes[c].order;
                let expect = if o % p == 0 { o / p } else { o };
                if self.classes[img].order != expect {
                    return Err(violation(
                        PowerMap,
                        format!(
                            "{}^{p} = {} has order {}, expected {expect}",
                            self.classes[c].id, self.classes[img].id, self.classes[img].order
                        ),
                    ));
                }
                if o % p != 0 && self.classes[img].size != self.classes[c].size {
                    return Err(violation(
                        PowerMap,
                        format!(
                            "{}^{p} = {} changes the class size",
                            self.classes[c].id, self.classes[img].id
                        ),
                    ));
                }
            }
        }
        Ok(())
    }

    fn check_central(&self) -> Result<(), GroupError> {
        use Invariant::CentralMult;
        let ids: BTreeSet<usize> = self.central.iter().map(|&(c, _)| c).collect();
        if !ids.contains(&0) {
            return Err(violation(CentralMult, "identity missing from central classes"));
        }
        for &(z, zinv) in &self.central {
            let (cz, ci) = (&self.classes[z], &self.classes[zinv]);
            if cz.size != 1 || ci.size != 1 || !ids.contains(&zinv) {
                return Err(violation(
                    CentralMult,
                    format!("{} or its inverse {} is not a singleton central class", cz.id, ci.id),
                ));
            }
            let mult = self.central_mult.get(&z).ok_or_else(|| {
                violation(CentralMult, format!("no multiplication table for {}", cz.id))
            })?;
            let image: BTreeSet<usize> = mult.iter().copied().collect();
            if image.len() != self.classes.len() {
                return Err(violation(
                    CentralMult,
                    format!("multiplication by {} is not a bijection on classes", cz.id),
                ));
            }
            if mult[0] != z || mult[zinv] != 0 {
                return Err(violation(
                    CentralMult,
                    format!("{}·1 or {}·{}^-1 is wrong", cz.id, cz.id, cz.id),
                ));
            }
            for (c, &zc) in mult.iter().enumerate() {
                let (a, b, oz) = (self.classes[c].order, self.classes[zc].order, cz.order);
                // g and zg differ by a commuting element of order oz
                if self.classes[c].size != self.classes[zc].size
                    || arith::lcm(a, oz) % b != 0
                    || arith::lcm(b, oz) % a != 0
                {
                    return Err(violation(
                        CentralMult,
                        format!(
                            "{}·{} = {} is inconsistent with element orders or sizes",
                            cz.id, self.classes[c].id, self.classes[zc].id
                        ),
                    ));
                }
            }
        }
        for &z in self.central_mult.keys() {
            if !ids.contains(&z) {
                return Err(violation(
                    CentralMult,
                    format!("multiplication table for non-central {}", self.classes[z].id),
                ));
            }
        }
        for (c, cl) in self.classes.iter().enumerate() {
            if cl.size == 1 && !ids.contains(&c) {
                return Err(violation(
                    CentralMult,
                    format!("singleton class {} not declared central", cl.id),
                ));
            }
        }
        Ok(())
    }

    fn check_characters(&self) -> Result<(), GroupError> {
        use Invariant::*;
        let h = self.classes.len();
        if self.characters.len() != h {
            return Err(violation(
                Structure,
                format!("{} characters for {h} classes; the table must be complete", self.characters.len()),
            ));
        }
        let mut seen = BTreeSet::new();
        for ch in &self.characters {
            if !seen.insert(&ch.id) {
                return Err(violation(Structure, format!("duplicate character id {}", ch.id)));
            }
            if ch.values[0] != Cyclotomic::from_integer(ch.degree as i64) {
                return Err(violation(
                    Degree,
                    format!("{}(1a) = {} but degree is {}", ch.id, ch.values[0], ch.degree),
                ));
            }
            for (c, v) in ch.values.iter().enumerate() {
                if !v.in_field(self.classes[c].order) {
                    return Err(violation(
                        CharacterField,
                        format!("{}({}) = {v} is not in Q(ζ_{})", ch.id, self.classes[c].id, self.classes[c].order),
                    ));
                }
            }
        }

        let conj: Vec<Vec<Cyclotomic>> = self
            .characters
            .iter()
            .map(|ch| ch.values.iter().map(Cyclotomic::conj).collect())
            .collect();
        let order = Cyclotomic::from_integer(self.order as i64);
        for (i, a) in self.characters.iter().enumerate() {
            for (j, bc) in conj.iter().enumerate().skip(i) {
                let s: Cyclotomic = (0..h)
                    .map(|c| (&a.values[c] * &bc[c]).scale_int(self.classes[c].size as i64))
                    .sum();
                let expect = if i == j { order.clone() } else { Cyclotomic::zero() };
                if s != expect {
                    return Err(violation(
                        FirstOrthogonality,
                        format!(
                            "<{}, {}> sums to {s}, expected {expect}",
                            a.id, self.characters[j].id
                        ),
                    ));
                }
            }
        }
        for c in 0..h {
            for d in c..h {
                let s: Cyclotomic = (0..self.characters.len())
                    .map(|k| &self.characters[k].values[c] * &conj[k][d])
                    .sum();
                let expect = if c == d {
                    Cyclotomic::from_integer((self.order / self.classes[c].size) as i64)
                } else {
                    Cyclotomic::zero()
                };
                if s != expect {
                    return Err(violation(
                        SecondOrthogonality,
                        format!("columns {} and {}", self.classes[c].id, self.classes[d].id),
                    ));
                }
            }
        }

        // Power maps against character values: χ(g^p) = σ_p(χ(g)) for p prime
        // to the order of g, and every group element has honest eigenvalue
        // multiplicities in every character.
        for (&p, map) in &self.power_maps {
            for ch in &self.characters {
                for (c, &img) in map.iter().enumerate() {
                    if self.classes[c].order % p == 0 {
                        continue;
                    }
                    let k = p as i64;
                    let expect = ch.values[c].galois(k).expect("p coprime to the conductor");
                    if ch.values[img] != expect {
                        return Err(violation(
                            PowerMap,
                            format!(
                                "{}({}^{p}) differs from the Galois conjugate of {}({})",
                                ch.id, self.classes[c].id, ch.id, self.classes[c].id
                            ),
                        ));
                    }
                }
            }
        }
        for ch in &self.characters {
            self.check_multiplicities(&ch.id, &ch.values, ch.degree, |_| true)?;
        }
        Ok(())
    }

    fn check_multiplicities(
        &self,
        id: &str,
        values: &[Cyclotomic],
        degree: u64,
        admissible: impl Fn(u64) -> bool,
    ) -> Result<(), GroupError> {
        for (c, cl) in self.classes.iter().enumerate() {
            if !admissible(cl.order) {
                continue;
            }
            for (j, m) in self.class_multiplicities(values, c).into_iter().enumerate() {
                let ok = m.is_integer() && !m.is_negative() && m <= Rational::from_integer(BigInt::from(degree));
                if !ok {
                    return Err(violation(
                        Invariant::EigenvalueMultiplicity,
                        format!(
                            "{id} at {}: multiplicity of ζ_{}^{j} is {m}",
                            cl.id, cl.order
                        ),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Eigenvalue multiplicities of `ζ_k^j`, `j = 0..k`, for a class of order
    /// `k` under a class function, via the trace formula over divisors of k.
    pub fn class_multiplicities(&self, values: &[Cyclotomic], c: usize) -> Vec<Rational> {
        let k = self.classes[c].order;
        let divs = arith::divisors(k);
        let powers: Vec<usize> = divs
            .iter()
            .map(|&d| self.power(c, d).expect("power maps validated"))
            .collect();
        let inv_k = Rational::new(BigInt::from(1), BigInt::from(k));
        (0..k)
            .map(|j| {
                let mut acc = Rational::zero();
                for (&d, &pc) in divs.iter().zip(&powers) {
                    let xi = Cyclotomic::root_of_unity(k, -((j * d) as i64)).expect("k > 0");
                    acc += (&values[pc] * &xi)
                        .trace_in_field(k / d)
                        .expect("positive conductor");
                }
                acc * &inv_k
            })
            .collect()
    }

    fn check_brauer(&self) -> Result<(), GroupError> {
        use Invariant::BrauerRecipe;
        for table in &self.brauer {
            if !arith::is_prime(table.p) {
                return Err(violation(BrauerRecipe, format!("{} is not a prime", table.p)));
            }
            for r in &table.recipes {
                let phi = self
                    .brauer_from_ordinary_difference(table.p, &r.plus, &r.minus)
                    .map_err(|e| violation(BrauerRecipe, format!("{}: {e}", r.id)))?;
                let p = table.p;
                self.check_multiplicities(&r.id, &phi.values, phi.degree, |o| o % p != 0)
                    .map_err(|e| match e {
                        GroupError::Validation { detail, .. } => violation(
                            BrauerRecipe,
                            format!("{} - {} is not a Brauer character: {detail}", r.plus, r.minus),
                        ),
                        other => other,
                    })?;
            }
        }
        Ok(())
    }

    fn check_quotient_shapes(&self) -> Result<(), GroupError> {
        use Invariant::Fusion;
        let central: BTreeSet<usize> = self.central.iter().map(|&(c, _)| c).collect();
        for q in &self.quotients {
            if q.kernel.first() != Some(&0) {
                return Err(violation(Fusion, format!("kernel of {} must start with 1a", q.quotient_name)));
            }
            for &k in &q.kernel {
                if !central.contains(&k) {
                    return Err(violation(
                        Fusion,
                        format!("kernel class {} is not central", self.classes[k].id),
                    ));
                }
                if q.fusion[k] != q.fusion[0] {
                    return Err(violation(
                        Fusion,
                        format!("kernel class {} does not fuse to the identity", self.classes[k].id),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Checks a quotient link against the loaded quotient group.
    pub fn check_link(&self, link: &QuotientLink, quotient: &GroupData) -> Result<(), GroupError> {
        use Invariant::*;
        if link.quotient_name != quotient.name {
            return Err(violation(
                Fusion,
                format!("link names {} but quotient is {}", link.quotient_name, quotient.name),
            ));
        }
        let n = link.kernel.len() as u64;
        if self.order != n * quotient.order {
            return Err(violation(
                FusionSizes,
                format!("|G| = {} but |N|·|Ḡ| = {}", self.order, n * quotient.order),
            ));
        }
        let mut image = vec![usize::MAX; self.classes.len()];
        for (c, id) in link.fusion.iter().enumerate() {
            image[c] = quotient
                .class_index(id)
                .ok_or_else(|| violation(Fusion, format!("unknown quotient class {id:?}")))?;
        }
        if image[0] != 0 {
            return Err(violation(Fusion, "identity does not fuse to the identity"));
        }
        let mut sums = vec![0u64; quotient.classes.len()];
        for (c, &qc) in image.iter().enumerate() {
            sums[qc] += self.classes[c].size;
            if self.classes[c].order % quotient.classes[qc].order != 0 {
                return Err(violation(
                    Fusion,
                    format!(
                        "{} (order {}) fuses to {} of order {}",
                        self.classes[c].id,
                        self.classes[c].order,
                        quotient.classes[qc].id,
                        quotient.classes[qc].order
                    ),
                ));
            }
        }
        for (qc, s) in sums.iter().enumerate() {
            if *s == 0 {
                return Err(violation(
                    Fusion,
                    format!("quotient class {} has no preimage", quotient.classes[qc].id),
                ));
            }
            if *s != n * quotient.classes[qc].size {
                return Err(violation(
                    FusionSizes,
                    format!(
                        "preimage of {} has total size {s}, expected {}",
                        quotient.classes[qc].id,
                        n * quotient.classes[qc].size
                    ),
                ));
            }
        }
        for (&p, map) in &self.power_maps {
            let Some(qmap) = quotient.power_maps.get(&p) else {
                continue;
            };
            for (c, &img) in map.iter().enumerate() {
                if image[img] != qmap[image[c]] {
                    return Err(violation(
                        Fusion,
                        format!("fusion does not commute with the {p}-power map at {}", self.classes[c].id),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn class_index(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn class_id(&self, c: usize) -> &str {
        &self.classes[c].id
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn exponent(&self) -> u64 {
        self.classes.iter().fold(1, |e, c| arith::lcm(e, c.order))
    }

    /// Whether some element has order `n`.
    pub fn has_element_order(&self, n: u64) -> bool {
        self.classes.iter().any(|c| c.order == n)
    }

    pub fn classes_of_order(&self, n: u64) -> Vec<usize> {
        (0..self.classes.len()).filter(|&c| self.classes[c].order == n).collect()
    }

    pub fn power_map(&self, p: u64) -> Option<&[usize]> {
        self.power_maps.get(&p).map(Vec::as_slice)
    }

    /// The class of `g^d` for `g` in class `c`, composing prime power maps.
    pub fn power(&self, c: usize, d: u64) -> Result<usize, GroupError> {
        let o = self.classes[c].order;
        let d = if o > 0 { d % o } else { d };
        if d == 0 {
            return Ok(0);
        }
        let mut cur = c;
        for (p, e) in arith::factor(d) {
            let map = self.power_maps.get(&p).ok_or_else(|| {
                GroupError::InvalidArgument(format!("no {p}-power map in {}", self.name))
            })?;
            for _ in 0..e {
                cur = map[cur];
            }
        }
        Ok(cur)
    }

    /// Central classes as `(class, inverse)`, identity first.
    pub fn central_classes(&self) -> &[(usize, usize)] {
        &self.central
    }

    pub fn is_central(&self, c: usize) -> bool {
        self.central.iter().any(|&(z, _)| z == c)
    }

    pub fn central_inverse(&self, z: usize) -> Option<usize> {
        self.central.iter().find(|&&(c, _)| c == z).map(|&(_, i)| i)
    }

    /// The class of `z·g` for central `z`.
    pub fn central_mult(&self, z: usize, c: usize) -> Option<usize> {
        self.central_mult.get(&z).map(|m| m[c])
    }

    pub fn character(&self, id: &str) -> Option<&Character> {
        self.characters.iter().find(|c| c.id == id)
    }

    pub fn p_regular_classes(&self, p: u64) -> Vec<usize> {
        (0..self.classes.len())
            .filter(|&c| self.classes[c].order % p != 0)
            .collect()
    }

    pub fn p_regular_class_ids(&self, p: u64) -> Vec<String> {
        self.p_regular_classes(p)
            .into_iter()
            .map(|c| self.classes[c].id.clone())
            .collect()
    }

    /// `(χ_plus − χ_minus)` restricted to p-regular classes.
    pub fn brauer_from_ordinary_difference(
        &self,
        p: u64,
        plus: &str,
        minus: &str,
    ) -> Result<BrauerCharacter, GroupError> {
        let a = self
            .character(plus)
            .ok_or_else(|| GroupError::InvalidArgument(format!("unknown character {plus}")))?;
        let b = self
            .character(minus)
            .ok_or_else(|| GroupError::InvalidArgument(format!("unknown character {minus}")))?;
        if a.degree < b.degree {
            return Err(GroupError::InvalidArgument(format!(
                "{plus} - {minus} has negative degree {}",
                a.degree as i64 - b.degree as i64
            )));
        }
        let values = (0..self.classes.len())
            .map(|c| {
                if self.classes[c].order % p == 0 {
                    Cyclotomic::zero()
                } else {
                    &a.values[c] - &b.values[c]
                }
            })
            .collect();
        Ok(BrauerCharacter {
            id: format!("{plus}-{minus}"),
            p,
            degree: a.degree - b.degree,
            values,
        })
    }

    /// All Brauer characters shipped as recipes, named by their recipe ids.
    pub fn brauer_characters(&self) -> Vec<BrauerCharacter> {
        self.brauer
            .iter()
            .flat_map(|t| {
                t.recipes.iter().map(move |r| {
                    let mut phi = self
                        .brauer_from_ordinary_difference(t.p, &r.plus, &r.minus)
                        .expect("recipes validated on load");
                    phi.id = r.id.clone();
                    phi
                })
            })
            .collect()
    }

    pub fn quotient(&self, name: &str) -> Option<&QuotientLink> {
        self.quotients.iter().find(|q| q.quotient_name == name)
    }

    /// Serialises to the documented file format with canonical literals.
    pub fn to_json(&self) -> Value {
        let ids = |v: &[usize]| -> Value {
            let mut m = Map::new();
            for (c, &img) in v.iter().enumerate() {
                m.insert(self.classes[c].id.clone(), json!(self.classes[img].id));
            }
            Value::Object(m)
        };
        let mut power_maps = Map::new();
        for (p, m) in &self.power_maps {
            power_maps.insert(p.to_string(), ids(m));
        }
        let mut mult = Map::new();
        for (z, m) in &self.central_mult {
            mult.insert(self.classes[*z].id.clone(), ids(m));
        }
        let quotients: Vec<Value> = self
            .quotients
            .iter()
            .map(|q| {
                let mut fusion = Map::new();
                for (c, f) in q.fusion.iter().enumerate() {
                    fusion.insert(self.classes[c].id.clone(), json!(f));
                }
                json!({
                    "name": q.quotient_name,
                    "kernel": q.kernel.iter().map(|&k| &self.classes[k].id).collect::<Vec<_>>(),
                    "fusion": fusion,
                })
            })
            .collect();
        json!({
            "name": self.name,
            "order": self.order,
            "classes": self.classes.iter().map(|c| json!({"id": c.id, "order": c.order, "size": c.size})).collect::<Vec<_>>(),
            "power_maps": power_maps,
            "central": {
                "classes": self.central.iter().map(|&(c, i)| json!({"id": self.classes[c].id, "inverse": self.classes[i].id})).collect::<Vec<_>>(),
                "mult": mult,
            },
            "characters": self.characters.iter().map(|ch| json!({"id": ch.id, "degree": ch.degree, "values": ch.values})).collect::<Vec<_>>(),
            "brauer": self.brauer.iter().map(|b| json!({
                "p": b.p,
                "differences": b.recipes.iter().map(|r| json!({"id": r.id, "plus": r.plus, "minus": r.minus})).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "quotients": quotients,
        })
    }

    pub fn to_json_string(&self) -> String {
        let mut out = String::new();
        crate::jsonfmt::write_value(&mut out, &self.to_json(), 0);
        out.push('\n');
        out
    }
}

/// The preimage of a quotient class under a fusion map, in table order.
pub fn fused_partition(
    g: &GroupData,
    link: &QuotientLink,
    quotient: &GroupData,
    quotient_class: &str,
) -> Result<Vec<String>, GroupError> {
    if quotient.class_index(quotient_class).is_none() {
        return Err(GroupError::InvalidArgument(format!(
            "unknown class {quotient_class:?} in {}",
            quotient.name
        )));
    }
    Ok(link
        .fusion
        .iter()
        .enumerate()
        .filter(|(_, f)| *f == quotient_class)
        .map(|(c, _)| g.classes[c].id.clone())
        .collect())
}

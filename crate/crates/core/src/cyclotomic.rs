//! Exact arithmetic in cyclotomic fields.
//!
//! An element of `Q(ζ_n)` is stored on the Zumbroich basis of its minimal
//! field: the conductor is the least `m` with the element in `Q(ζ_m)` and the
//! coefficients are those of the basis exponents of `ζ_m`.  Every operation
//! lifts its operands to a common conductor, computes on the dense power
//! basis and canonicalises again, so two equal field elements always have the
//! same stored form and `==` is field equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeMap, SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CyclotomicError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid automorphism: gcd({k}, {conductor}) != 1")]
    InvalidAutomorphism { k: i64, conductor: u64 },
    #[error("malformed cyclotomic literal: {0}")]
    Parse(String),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cyclotomic {
    conductor: u64,
    coeffs: BTreeMap<u64, Rational>,
}

/// Parses `"a"` or `"a/b"` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<Rational, CyclotomicError> {
    let bad = || CyclotomicError::Parse(format!("bad rational {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        None => Ok(Rational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
        Some((a, b)) => {
            let a = BigInt::from_str(a.trim()).map_err(|_| bad())?;
            let b = BigInt::from_str(b.trim()).map_err(|_| bad())?;
            if b.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(a, b))
        }
    }
}

pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Brings a dense power-basis vector of length `n` onto the Zumbroich basis
/// and then descends to the minimal conductor.
fn canonicalize(mut n: u64, mut dense: Vec<Rational>) -> Cyclotomic {
    debug_assert_eq!(dense.len() as u64, n);
    for (p, e) in arith::factor(n) {
        let pe = p.pow(e);
        let m = n / pe;
        let minv = arith::mod_inverse(m % pe, pe).expect("coprime");
        let top = pe / p;
        let step = n / p;
        for k in 0..n {
            if dense[k as usize].is_zero() {
                continue;
            }
            let digit = (k * minv % pe) / top;
            let bad = if p == 2 { digit == 1 } else { digit == 0 };
            if !bad {
                continue;
            }
            let c = std::mem::take(&mut dense[k as usize]);
            if p == 2 {
                // ζ^k = -ζ^(k + n/2)
                let t = ((k + step) % n) as usize;
                dense[t] -= &c;
            } else {
                // ζ^k = -(ζ^(k + n/p) + ... + ζ^(k + (p-1)n/p))
                for b in 1..p {
                    let t = ((k + b * step) % n) as usize;
                    dense[t] -= &c;
                }
            }
        }
    }

    'descend: loop {
        for (p, e) in arith::factor(n) {
            let step = n / p;
            let support: Vec<u64> = (0..n).filter(|&k| !dense[k as usize].is_zero()).collect();
            if e >= 2 || p == 2 {
                if support.iter().all(|k| k % p == 0) {
                    let m = n / p;
                    let mut next = vec![Rational::zero(); m as usize];
                    for k in support {
                        next[(k / p) as usize] = std::mem::take(&mut dense[k as usize]);
                    }
                    n = m;
                    dense = next;
                    continue 'descend;
                }
            } else {
                // p odd, exactly dividing n: the element lies in Q(ζ_{n/p})
                // iff every p-orbit carries one common coefficient
                let pe = p;
                let minv = arith::mod_inverse((n / pe) % pe, pe).expect("coprime");
                let mut orbit_coeff: BTreeMap<u64, Option<Rational>> = BTreeMap::new();
                for k in 0..n {
                    let rep = k % step;
                    let digit = k * minv % pe;
                    if digit == 0 {
                        continue;
                    }
                    let c = &dense[k as usize];
                    match orbit_coeff.get(&rep) {
                        None => {
                            orbit_coeff.insert(rep, Some(c.clone()));
                        }
                        Some(Some(prev)) if prev != c => {
                            orbit_coeff.insert(rep, None);
                        }
                        _ => {}
                    }
                }
                if orbit_coeff.values().all(|c| c.is_some()) {
                    let m = n / p;
                    let mut next = vec![Rational::zero(); m as usize];
                    for (rep, c) in orbit_coeff {
                        let c = c.expect("checked");
                        if c.is_zero() {
                            continue;
                        }
                        let k0 = (0..p)
                            .map(|b| rep + b * step)
                            .find(|k| k * minv % pe == 0)
                            .expect("orbit has a digit-zero member");
                        next[((k0 / p) % m) as usize] = -c;
                    }
                    n = m;
                    dense = next;
                    continue 'descend;
                }
            }
        }
        break;
    }

    let coeffs = dense
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k as u64, c))
        .collect::<BTreeMap<_, _>>();
    let conductor = if coeffs.is_empty() { 1 } else { n };
    Cyclotomic { conductor, coeffs }
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic {
            conductor: 1,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_integer(k: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(k)))
    }

    pub fn from_rational(q: Rational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !q.is_zero() {
            coeffs.insert(0, q);
        }
        Cyclotomic {
            conductor: 1,
            coeffs,
        }
    }

    /// `ζ_n^k`.
    pub fn root_of_unity(n: u64, k: i64) -> Result<Self, CyclotomicError> {
        if n == 0 {
            return Err(CyclotomicError::InvalidArgument(
                "root of unity of order 0".into(),
            ));
        }
        Ok(Self::from_terms(n, [(k, Rational::one())]))
    }

    /// `Σ c·ζ_n^k` over the given terms. Panics if `n == 0`.
    pub fn from_terms<I>(n: u64, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, Rational)>,
    {
        assert!(n > 0, "conductor must be positive");
        let mut dense = vec![Rational::zero(); n as usize];
        for (k, c) in terms {
            dense[arith::rem(k, n) as usize] += c;
        }
        canonicalize(n, dense)
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Canonical `(exponent, coefficient)` pairs with respect to `ζ_conductor`.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &Rational)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational()
            .then(|| self.coeffs.get(&0).cloned().unwrap_or_else(Rational::zero))
    }

    /// Whether the element lies in `Q(ζ_m)`.
    pub fn in_field(&self, m: u64) -> bool {
        m > 0 && m % self.conductor == 0
    }

    fn dense_in(&self, n: u64) -> Vec<Rational> {
        debug_assert!(n % self.conductor == 0);
        let scale = n / self.conductor;
        let mut dense = vec![Rational::zero(); n as usize];
        for (k, c) in &self.coeffs {
            dense[(k * scale) as usize] = c.clone();
        }
        dense
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, c * q)).collect(),
        }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&Rational::from_integer(BigInt::from(k)))
    }

    /// `σ_k`, the automorphism sending `ζ_m ↦ ζ_m^k` for the element's
    /// conductor `m`.
    pub fn galois(&self, k: i64) -> Result<Self, CyclotomicError> {
        let n = self.conductor;
        if n == 1 {
            return Ok(self.clone());
        }
        let k_raw = k;
        let k = arith::rem(k, n);
        if arith::gcd(k, n) != 1 {
            return Err(CyclotomicError::InvalidAutomorphism {
                k: k_raw,
                conductor: n,
            });
        }
        let mut dense = vec![Rational::zero(); n as usize];
        for (e, c) in &self.coeffs {
            dense[(e * k % n) as usize] += c;
        }
        Ok(canonicalize(n, dense))
    }

    /// Complex conjugation, `σ_{-1}`.
    pub fn conj(&self) -> Self {
        self.galois(-1).expect("-1 is a unit modulo every conductor")
    }

    /// Absolute trace `Tr_{Q(ζ_m)/Q}` where `m` is the conductor.
    pub fn trace(&self) -> Rational {
        let m = self.conductor;
        let phi_m = arith::totient(m) as i64;
        let mut acc = Rational::zero();
        for (k, c) in &self.coeffs {
            // Ramanujan sum: Tr(ζ_m^k) = μ(m') φ(m) / φ(m'), m' = m / gcd(k, m)
            let mp = m / arith::gcd(*k, m);
            let t = arith::mobius(mp) * phi_m / arith::totient(mp) as i64;
            acc += c * Rational::from_integer(BigInt::from(t));
        }
        acc
    }

    /// `Tr_{Q(ζ_m)/Q}` for an explicitly given ambient conductor, computed as
    /// `[φ(m)/φ(cond)]·trace()`.
    pub fn trace_in_field(&self, m: u64) -> Result<Rational, CyclotomicError> {
        if m == 0 {
            return Err(CyclotomicError::InvalidArgument(
                "ambient conductor 0".into(),
            ));
        }
        let ratio = Rational::new(
            BigInt::from(arith::totient(m)),
            BigInt::from(arith::totient(self.conductor)),
        );
        Ok(self.trace() * ratio)
    }

    fn combine(&self, other: &Self, f: impl Fn(&mut Rational, &Rational)) -> Self {
        let n = arith::lcm(self.conductor, other.conductor);
        let mut dense = self.dense_in(n);
        let so = n / other.conductor;
        for (k, c) in &other.coeffs {
            f(&mut dense[(k * so) as usize], c);
        }
        canonicalize(n, dense)
    }
}

impl Default for Cyclotomic {
    fn default() -> Self {
        Self::zero()
    }
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.combine(rhs, |a, b| *a += b)
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.combine(rhs, |a, b| *a -= b)
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.is_zero() || rhs.is_zero() {
            return Cyclotomic::zero();
        }
        if self.is_rational() {
            return rhs.scale(&self.coeffs[&0]);
        }
        if rhs.is_rational() {
            return self.scale(&rhs.coeffs[&0]);
        }
        let n = arith::lcm(self.conductor, rhs.conductor);
        let (sa, sb) = (n / self.conductor, n / rhs.conductor);
        let mut dense = vec![Rational::zero(); n as usize];
        for (ka, ca) in &self.coeffs {
            for (kb, cb) in &rhs.coeffs {
                dense[((ka * sa + kb * sb) % n) as usize] += ca * cb;
            }
        }
        canonicalize(n, dense)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: &'a Cyclotomic) -> Cyclotomic {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl std::iter::Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Self {
        iter.fold(Cyclotomic::zero(), |a, b| &a + &b)
    }
}

impl fmt::Display for Cyclotomic {
    /// GAP-style notation, e.g. `-E(8)+E(8)^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if let Some(q) = self.to_rational() {
            return write!(f, "{}", format_rational(&q));
        }
        let n = self.conductor;
        for (i, (k, c)) in self.coeffs.iter().enumerate() {
            let root = match k {
                0 => String::new(),
                1 => format!("E({n})"),
                _ => format!("E({n})^{k}"),
            };
            let neg = c.is_negative();
            let abs = c.abs();
            if i > 0 {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            } else if neg {
                write!(f, "-")?;
            }
            match (root.is_empty(), abs.is_one()) {
                (true, _) => write!(f, "{}", format_rational(&abs))?,
                (false, true) => write!(f, "{root}")?,
                (false, false) => write!(f, "{}*{root}", format_rational(&abs))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic({self})")
    }
}

// Literal syntax: an integer, a string "a/b", or
// {"n": conductor, "terms": [[k, "a/b"], ...]}.

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if let Some(q) = self.to_rational() {
            if q.is_integer() {
                if let Ok(v) = i64::try_from(q.numer()) {
                    return s.serialize_i64(v);
                }
            }
            return s.serialize_str(&format_rational(&q));
        }
        struct Terms<'a>(&'a BTreeMap<u64, Rational>);
        impl Serialize for Terms<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let mut seq = s.serialize_seq(Some(self.0.len()))?;
                for (k, c) in self.0 {
                    seq.serialize_element(&(k, format_rational(c)))?;
                }
                seq.end()
            }
        }
        let mut map = s.serialize_map(Some(2))?;
        map.serialize_entry("n", &self.conductor)?;
        map.serialize_entry("terms", &Terms(&self.coeffs))?;
        map.end()
    }
}

fn coefficient_from_json(v: &serde_json::Value) -> Result<Rational, CyclotomicError> {
    match v {
        serde_json::Value::Number(num) => num
            .as_i64()
            .map(|k| Rational::from_integer(BigInt::from(k)))
            .ok_or_else(|| CyclotomicError::Parse(format!("non-integer number {num}"))),
        serde_json::Value::String(s) => parse_rational(s),
        other => Err(CyclotomicError::Parse(format!("bad coefficient {other}"))),
    }
}

impl Cyclotomic {
    pub fn from_json(v: &serde_json::Value) -> Result<Self, CyclotomicError> {
        match v {
            serde_json::Value::Number(_) | serde_json::Value::String(_) => {
                Ok(Self::from_rational(coefficient_from_json(v)?))
            }
            serde_json::Value::Object(obj) => {
                let n = obj
                    .get("n")
                    .and_then(|n| n.as_u64())
                    .filter(|&n| n > 0)
                    .ok_or_else(|| CyclotomicError::Parse("missing positive \"n\"".into()))?;
                let terms = obj
                    .get("terms")
                    .and_then(|t| t.as_array())
                    .ok_or_else(|| CyclotomicError::Parse("missing \"terms\" array".into()))?;
                let mut parsed = Vec::with_capacity(terms.len());
                for t in terms {
                    let pair = t
                        .as_array()
                        .filter(|p| p.len() == 2)
                        .ok_or_else(|| CyclotomicError::Parse(format!("bad term {t}")))?;
                    let k = pair[0]
                        .as_i64()
                        .ok_or_else(|| CyclotomicError::Parse(format!("bad exponent {}", pair[0])))?;
                    parsed.push((k, coefficient_from_json(&pair[1])?));
                }
                Ok(Self::from_terms(n, parsed))
            }
            other => Err(CyclotomicError::Parse(format!("unexpected value {other}"))),
        }
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        Cyclotomic::from_json(&v).map_err(de::Error::custom)
    }
}

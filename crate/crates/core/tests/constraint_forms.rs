use std::collections::BTreeMap;
use std::sync::Arc;

use help_core::constraints::{
    mu_form, value_of_brauer_at_unit, value_of_character_at_unit, ConstraintError, LinearForm,
    PaVector, PowerAssignment,
};
use help_core::data;
use help_core::solver::SolvedUnit;
use help_core::{arith, Cyclotomic, GroupData, Rational};
use num_bigint::BigInt;
use proptest::prelude::*;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn pa(g: &GroupData, n: u64, entries: &[(&str, i64)]) -> PaVector {
    let mut v = PaVector::zero(n, g.num_classes());
    for (id, e) in entries {
        v.entries[g.class_index(id).unwrap()] = *e;
    }
    v
}

/// The powers of the group element in class `id`.
fn powers_of(g: &GroupData, id: &str) -> PowerAssignment {
    let u = SolvedUnit::trivial(g, g.class_index(id).unwrap());
    let n = u.order;
    let powers: BTreeMap<u64, Arc<SolvedUnit>> = arith::divisors(n)
        .into_iter()
        .filter(|&d| d > 1 && d < n)
        .map(|d| (d, u.power(d).unwrap()))
        .collect();
    PowerAssignment { order: n, powers }
}

fn coeff(g: &GroupData, f: &LinearForm, id: &str) -> Rational {
    f.coefficients[g.class_index(id).unwrap()].clone()
}

fn alpha() -> Cyclotomic {
    Cyclotomic::from_terms(8, [(1, q(-1, 1)), (3, q(1, 1))])
}

#[test]
fn character_values_at_units() {
    let g = data::bundled("2s5").unwrap();
    let chi5 = &g.character("chi5").unwrap().values;
    let chi11 = &g.character("chi11").unwrap().values;
    let v = value_of_character_at_unit(&pa(g, 3, &[("3a", 1)]), chi5).unwrap();
    assert_eq!(v, Cyclotomic::from_integer(-2));
    let v = value_of_character_at_unit(&pa(g, 8, &[("8a", 2), ("8b", -1)]), chi11).unwrap();
    assert_eq!(v, alpha().scale_int(3));
    let short = PaVector::zero(8, 3);
    assert!(matches!(
        value_of_character_at_unit(&short, chi11),
        Err(ConstraintError::InvalidArgument(_))
    ));
}

#[test]
fn brauer_values_need_p_regular_units() {
    let g = data::bundled("2s5").unwrap();
    let phi = g.brauer_characters().into_iter().find(|b| b.id == "phi2a").unwrap();
    let u = pa(g, 8, &[("8a", 1), ("8b", 1), ("4a", -1)]);
    let v = value_of_brauer_at_unit(g, &u, &phi.values, 5).unwrap();
    // φ(8a) = α, φ(8b) = φ(x^5) = −α, φ(4a) = 0
    assert_eq!(v, Cyclotomic::zero());
    let u = pa(g, 8, &[("8a", 1)]);
    assert_eq!(value_of_brauer_at_unit(g, &u, &phi.values, 5).unwrap(), alpha());
    let u5 = pa(g, 5, &[("5a", 1)]);
    assert!(matches!(
        value_of_brauer_at_unit(g, &u5, &phi.values, 5),
        Err(ConstraintError::NotPRegular { p: 5, order: 5 })
    ));
    let bad = pa(g, 4, &[("10a", 1)]);
    assert!(value_of_brauer_at_unit(g, &bad, &phi.values, 5).is_err());
}

#[test]
fn spin_mu_form_order_12() {
    // μ(ζ_12^7, u, χ6) = ½((ε12a − ε12b) + 1) with every proper power trivial
    let g = data::bundled("2s5").unwrap();
    let f = mu_form(&g.character("chi6").unwrap().values, 7, 12, &powers_of(g, "12a")).unwrap();
    assert_eq!(coeff(g, &f, "12a"), q(1, 2));
    assert_eq!(coeff(g, &f, "12b"), q(-1, 2));
    assert_eq!(f.constant, q(1, 2));
}

#[test]
fn spin_mu_form_order_8() {
    // μ(ζ_8^3, u, χ11) = ½((ε8a − ε8b) + 3)
    let g = data::bundled("2s5").unwrap();
    let f = mu_form(&g.character("chi11").unwrap().values, 3, 8, &powers_of(g, "8a")).unwrap();
    assert_eq!(coeff(g, &f, "8a"), q(1, 2));
    assert_eq!(coeff(g, &f, "8b"), q(-1, 2));
    assert_eq!(f.constant, q(3, 2));
    // and at the conjugate exponent: μ(ζ_8, u, χ11) = ½(−(ε8a − ε8b) + 3)
    let f = mu_form(&g.character("chi11").unwrap().values, 1, 8, &powers_of(g, "8a")).unwrap();
    assert_eq!(coeff(g, &f, "8a"), q(-1, 2));
    assert_eq!(f.constant, q(3, 2));
}

#[test]
fn mu_of_group_elements_counts_eigenvalues() {
    // for a group element the forms evaluate to honest multiplicities
    for stem in ["s5", "2s5", "gl25"] {
        let g = data::bundled(stem).unwrap();
        for (c, cl) in g.classes.iter().enumerate() {
            let powers = powers_of(g, &cl.id);
            let u = PaVector::trivial(cl.order, g.num_classes(), c);
            for ch in &g.characters {
                let mults = g.class_multiplicities(&ch.values, c);
                for j in 0..cl.order {
                    let f = mu_form(&ch.values, j, cl.order, &powers).unwrap();
                    assert_eq!(f.eval(&u), mults[j as usize], "{stem} {} {} j={j}", ch.id, cl.id);
                }
            }
        }
    }
}

#[test]
fn mu_form_rejects_mismatched_assignments() {
    let g = data::bundled("s5").unwrap();
    let chi = &g.character("chi3").unwrap().values;
    assert!(mu_form(chi, 0, 4, &PowerAssignment::empty(2)).is_err());
    assert!(matches!(
        mu_form(chi, 0, 4, &PowerAssignment::empty(4)),
        Err(ConstraintError::IncompleteAssignment(2))
    ));
    assert!(mu_form(chi, 0, 0, &PowerAssignment::empty(0)).is_err());
}

fn group_and_class() -> impl Strategy<Value = (&'static str, usize)> {
    prop_oneof![Just("s5"), Just("2s5"), Just("gl25")].prop_flat_map(|stem| {
        let h = data::bundled(stem).unwrap().num_classes();
        (Just(stem), 0..h)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Σ_ξ μ(ξ, u, χ) = χ(1) whatever the partial augmentations are.
    #[test]
    fn multiplicities_sum_to_the_degree((stem, c) in group_and_class(), seed in prop::collection::vec(-4i64..=4, 24)) {
        let g = data::bundled(stem).unwrap();
        let n = g.classes[c].order;
        let powers = powers_of(g, &g.classes[c].id);
        let mut u = PaVector::zero(n, g.num_classes());
        for (e, s) in u.entries.iter_mut().zip(&seed) {
            *e = *s;
        }
        for ch in &g.characters {
            let total: Rational = (0..n)
                .map(|j| mu_form(&ch.values, j, n, &powers).unwrap().eval(&u))
                .sum();
            prop_assert_eq!(total, Rational::from_integer(BigInt::from(ch.degree)));
        }
    }

    /// A recipe χ₊ − χ₋ evaluated on a p-regular unit is χ₊(u) − χ₋(u).
    #[test]
    fn brauer_recipes_are_differences((stem, _c) in group_and_class(), seed in prop::collection::vec(-3i64..=3, 24), n in prop_oneof![Just(2u64), Just(3), Just(4), Just(8), Just(12), Just(24)]) {
        let g = data::bundled(stem).unwrap();
        let mut u = PaVector::zero(n, g.num_classes());
        for (cidx, s) in seed.iter().enumerate().take(g.num_classes()) {
            if g.classes[cidx].order % 5 != 0 {
                u.entries[cidx] = *s;
            }
        }
        for t in &g.brauer {
            for r in &t.recipes {
                let phi = g.brauer_from_ordinary_difference(t.p, &r.plus, &r.minus).unwrap();
                let lhs = value_of_brauer_at_unit(g, &u, &phi.values, t.p).unwrap();
                let rhs = &value_of_character_at_unit(&u, &g.character(&r.plus).unwrap().values).unwrap()
                    - &value_of_character_at_unit(&u, &g.character(&r.minus).unwrap().values).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}

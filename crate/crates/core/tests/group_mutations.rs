//! Every corrupted field of a shipped group file must be rejected, naming
//! the invariant it breaks.

use help_core::data::{self, BUNDLED};
use help_core::{GroupData, GroupError, Invariant};
use serde_json::{json, Value};

fn bundled_json(stem: &str) -> Value {
    let (_, text) = BUNDLED.iter().find(|(k, _)| *k == stem).unwrap();
    serde_json::from_str(text).unwrap()
}

fn char_index(v: &Value, id: &str) -> usize {
    v["characters"].as_array().unwrap().iter().position(|c| c["id"] == id).unwrap()
}

fn class_index(v: &Value, id: &str) -> usize {
    v["classes"].as_array().unwrap().iter().position(|c| c["id"] == id).unwrap()
}

/// Loads the group and, when it has quotient links, checks them against the
/// bundled quotient.
fn load_and_link(v: &Value) -> Result<GroupData, GroupError> {
    let g = GroupData::load_str(&v.to_string())?;
    for link in &g.quotients {
        let q = data::bundled("s5").expect("bundled S5");
        g.check_link(link, q)?;
    }
    Ok(g)
}

struct Mutation {
    stem: &'static str,
    what: &'static str,
    expect: Invariant,
    apply: fn(&mut Value),
}

fn swap_class_ids(v: &mut Value, a: &str, b: &str) {
    let s = v
        .to_string()
        .replace(&format!("\"{a}\""), "\"\u{0}\"")
        .replace(&format!("\"{b}\""), &format!("\"{a}\""))
        .replace("\"\u{0}\"", &format!("\"{b}\""));
    *v = serde_json::from_str(&s).unwrap();
}

fn mutations() -> Vec<Mutation> {
    use Invariant::*;
    vec![
        Mutation { stem: "s5", what: "class size", expect: ClassSizes, apply: |v| v["classes"][1]["size"] = json!(16) },
        Mutation { stem: "s5", what: "class order", expect: Structure, apply: |v| v["classes"][2]["order"] = json!(9) },
        Mutation { stem: "s5", what: "duplicate class id", expect: Structure, apply: |v| v["classes"][2]["id"] = json!("2a") },
        Mutation { stem: "s5", what: "group order", expect: Structure, apply: |v| v["order"] = json!(121) },
        Mutation {
            stem: "s5",
            what: "missing character",
            expect: Structure,
            apply: |v| {
                v["characters"].as_array_mut().unwrap().pop();
            },
        },
        Mutation { stem: "s5", what: "power map to the wrong order", expect: PowerMap, apply: |v| v["power_maps"]["2"]["4a"] = json!("3a") },
        Mutation {
            stem: "s5",
            what: "missing power map",
            expect: PowerMap,
            apply: |v| {
                v["power_maps"].as_object_mut().unwrap().remove("3");
            },
        },
        // right order, wrong class: only the characters can tell
        Mutation { stem: "s5", what: "power map to the wrong class", expect: EigenvalueMultiplicity, apply: |v| v["power_maps"]["2"]["4a"] = json!("2b") },
        Mutation { stem: "2s5", what: "central multiplication", expect: CentralMult, apply: |v| v["central"]["mult"]["2a"]["3a"] = json!("3a") },
        Mutation { stem: "2s5", what: "central inverse", expect: CentralMult, apply: |v| v["central"]["classes"][1]["inverse"] = json!("1a") },
        Mutation {
            stem: "s5",
            what: "degree",
            expect: Degree,
            apply: |v| {
                let i = char_index(v, "chi5");
                v["characters"][i]["degree"] = json!(6)
            },
        },
        Mutation {
            stem: "s5",
            what: "character value",
            expect: FirstOrthogonality,
            apply: |v| {
                let i = char_index(v, "chi5");
                v["characters"][i]["values"][1] = json!(-1)
            },
        },
        Mutation {
            stem: "s5",
            what: "duplicated character",
            expect: FirstOrthogonality,
            apply: |v| {
                let a = v["characters"][5]["values"].clone();
                v["characters"][6]["values"] = a;
                v["characters"][6]["degree"] = json!(5)
            },
        },
        Mutation {
            stem: "s5",
            what: "value outside the character field",
            expect: CharacterField,
            apply: |v| {
                let i = char_index(v, "chi7");
                v["characters"][i]["values"][1] = json!({"n": 5, "terms": [[1, "1"]]})
            },
        },
        Mutation {
            stem: "2s5",
            what: "swapped irrational values",
            expect: FirstOrthogonality,
            apply: |v| {
                let (i, c, d) = (char_index(v, "chi11"), class_index(v, "8a"), class_index(v, "8b"));
                let (a, b) = (v["characters"][i]["values"][c].clone(), v["characters"][i]["values"][d].clone());
                v["characters"][i]["values"][c] = b;
                v["characters"][i]["values"][d] = a;
            },
        },
        Mutation { stem: "2s5", what: "trivial character subtracted", expect: BrauerRecipe, apply: |v| v["brauer"][0]["differences"][0]["minus"] = json!("chi1") },
        Mutation {
            stem: "gl25",
            what: "negative-degree difference",
            expect: BrauerRecipe,
            apply: |v| v["brauer"][0]["differences"][0] = json!({"id": "phi", "plus": "chi15", "minus": "chi9"}),
        },
        Mutation {
            stem: "2s5",
            what: "unknown recipe character",
            expect: BrauerRecipe,
            apply: |v| v["brauer"][0]["differences"][0]["plus"] = json!("chi99"),
        },
        Mutation { stem: "2s5", what: "fusion to an unknown class", expect: Fusion, apply: |v| v["quotients"][0]["fusion"]["8a"] = json!("9z") },
        Mutation { stem: "2s5", what: "fusion to the wrong order", expect: Fusion, apply: |v| v["quotients"][0]["fusion"]["8a"] = json!("3a") },
        Mutation { stem: "2s5", what: "kernel", expect: FusionSizes, apply: |v| v["quotients"][0]["kernel"] = json!(["1a"]) },
        Mutation {
            stem: "2s5",
            what: "relabelled spin characters",
            expect: Anchor,
            apply: |v| {
                let (i, j) = (char_index(v, "chi11"), char_index(v, "chi12"));
                v["characters"][i]["id"] = json!("chi12");
                v["characters"][j]["id"] = json!("chi11");
            },
        },
        Mutation {
            stem: "gl25",
            what: "relabelled order-24 classes",
            expect: Anchor,
            // a consistent relabelling everywhere is a different but valid
            // table; only the reference anchors pin the names
            apply: |v| swap_class_ids(v, "24a", "24b"),
        },
    ]
}

#[test]
fn each_corruption_is_rejected_with_its_invariant() {
    for m in mutations() {
        let mut v = bundled_json(m.stem);
        (m.apply)(&mut v);
        match load_and_link(&v) {
            Ok(_) => panic!("{} / {}: corruption accepted", m.stem, m.what),
            Err(e) => assert_eq!(
                e.invariant(),
                Some(m.expect),
                "{} / {}: {e}",
                m.stem,
                m.what
            ),
        }
    }
}

#[test]
fn unmodified_files_pass() {
    for (stem, _) in BUNDLED {
        load_and_link(&bundled_json(stem)).unwrap();
    }
}

#[test]
fn unknown_fields_and_syntax_are_parse_errors() {
    let mut v = bundled_json("s5");
    v["colour"] = json!("blue");
    assert!(matches!(GroupData::load_str(&v.to_string()), Err(GroupError::Parse(_))));
    assert!(matches!(GroupData::load(b"{\"name\": "), Err(GroupError::Parse(_))));
    let mut v = bundled_json("s5");
    v["characters"][0]["values"][0] = json!("1/0");
    assert!(GroupData::load_str(&v.to_string()).is_err());
}

#[test]
fn canonical_output_round_trips() {
    for (stem, text) in BUNDLED {
        let g = GroupData::load_str(text).unwrap();
        assert_eq!(&g.to_json_string(), text, "{stem} is not in canonical form");
        assert_eq!(GroupData::load_str(&g.to_json_string()).unwrap(), g);
    }
}

/// The spin-block recipe χ11 − χ5 sometimes quoted for φ2a is a virtual
/// character (φ4a − φ2b on the Brauer tree) that passes the per-class checks;
/// on 2-power classes it agrees with the shipped φ2a = χ11 − χ6.
#[test]
fn alternative_spin_recipe_agrees_on_two_power_classes() {
    let g = data::bundled("2s5").unwrap();
    let shipped = g.brauer_from_ordinary_difference(5, "chi11", "chi6").unwrap();
    let alternative = g.brauer_from_ordinary_difference(5, "chi11", "chi5").unwrap();
    for (c, cl) in g.classes.iter().enumerate() {
        if cl.order.is_power_of_two() {
            assert_eq!(shipped.values[c], alternative.values[c], "{}", cl.id);
        }
    }
    assert_ne!(shipped.values, alternative.values);
}

//! End-to-end acceptance checks.  Runs without the test harness so every
//! criterion prints exactly one PASS/FAIL line; exits nonzero on any failure.

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use help_core::arith::{self, gcd};
use help_core::constraints::{build_system, mu_form, PaVector, PowerAssignment, QuotientImage, Toggles};
use help_core::data::{self, BUNDLED};
use help_core::solver::{
    trivial_solutions, verify_with_quotients, IntegerSystem, SolveOptions, SolvedUnit, Verification,
    ZcStatus,
};
use help_core::{Cyclotomic, GroupData, GroupError, Invariant, Rational};
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn resolve(name: &str) -> Result<GroupData, String> {
    data::resolve(name).map_err(|e| e.to_string())
}

fn verify(g: &GroupData, toggles: Toggles, orders: Option<Vec<u64>>) -> Result<Verification, String> {
    let options = SolveOptions {
        toggles,
        parallel: cfg!(feature = "parallel"),
        orders,
    };
    verify_with_quotients(g, &resolve, &options)
        .map(|(v, _)| v)
        .map_err(|e| e.to_string())
}

fn bundled(stem: &str) -> &'static GroupData {
    data::bundled(stem).expect("bundled group")
}

fn idx(g: &GroupData, id: &str) -> usize {
    g.class_index(id).unwrap_or_else(|| panic!("{} has no class {id}", g.name))
}

fn int(r: &Rational) -> i64 {
    assert!(r.is_integer(), "{r} is not an integer");
    i64::try_from(r.to_integer()).unwrap()
}

/// The powers of the group element in class `id`.
fn powers_of(g: &GroupData, id: &str) -> PowerAssignment {
    let u = SolvedUnit::trivial(g, idx(g, id));
    let powers = arith::divisors(u.order)
        .into_iter()
        .filter(|&d| d > 1 && d < u.order)
        .map(|d| (d, u.power(d).unwrap()))
        .collect();
    PowerAssignment { order: u.order, powers }
}

/// Coefficient vector over the system's variables for `Σ sign·ε_c`.
fn form(is: &IntegerSystem, g: &GroupData, terms: &[(&str, i64)]) -> Vec<i64> {
    let mut c = vec![0; is.variables.len()];
    for (id, s) in terms {
        let i = is.variables.iter().position(|&v| v == idx(g, id)).expect("free variable");
        c[i] = *s;
    }
    c
}

fn range(is: &IntegerSystem, g: &GroupData, terms: &[(&str, i64)]) -> (i64, i64) {
    let (lo, hi) = is.lp_range(&form(is, g, terms)).expect("bounded, feasible relaxation");
    (int(&lo.ceil()), int(&hi.floor()))
}

/// The LP relaxation of order `n` with the powers of the group element in
/// `class` and the image of `u` in S5 fixed to `image`.
fn relaxation(g: &GroupData, n: u64, class: &str, image: &str) -> Result<IntegerSystem, String> {
    let s5 = bundled("s5");
    let link = g.quotients.iter().position(|l| l.quotient_name == s5.name).ok_or("no link to S5")?;
    let image = QuotientImage {
        quotient: s5,
        link,
        image: SolvedUnit::trivial(s5, idx(s5, image)),
    };
    let sys = build_system(g, n, &powers_of(g, class), &[image], &Toggles::full(g)).map_err(|e| e.to_string())?;
    IntegerSystem::new(&sys).map_err(|e| e.to_string())
}

fn projection(g: &GroupData, v: &Verification, n: u64, ids: &[&str]) -> Result<BTreeSet<Vec<i64>>, String> {
    let ov = v.orders.get(&n).ok_or(format!("order {n} not solved"))?;
    let keep: Vec<usize> = ids.iter().map(|id| idx(g, id)).collect();
    let mut out = BTreeSet::new();
    for u in &ov.solutions {
        for (c, &e) in u.pa.entries.iter().enumerate() {
            ensure!(keep.contains(&c) || e == 0, "order {n}: ε[{}] = {e} ≠ 0", g.class_id(c));
        }
        out.insert(keep.iter().map(|&c| u.pa.entries[c]).collect());
    }
    Ok(out)
}

fn set(points: &[[i64; 2]]) -> BTreeSet<Vec<i64>> {
    points.iter().map(|p| p.to_vec()).collect()
}

fn with_spin_recipe(plus: &str, minus: &str) -> GroupData {
    let (_, text) = BUNDLED.iter().find(|(k, _)| *k == "2s5").unwrap();
    let mut v: Value = serde_json::from_str(text).unwrap();
    v["brauer"] = json!([{"p": 5, "differences": [{"id": "phi", "plus": plus, "minus": minus}]}]);
    GroupData::load_str(&v.to_string()).expect("recipe accepted")
}

fn order8_with_modular(g: &GroupData) -> Result<BTreeSet<Vec<i64>>, String> {
    let t = Toggles {
        modular: vec![5],
        ..Toggles::ordinary_only()
    };
    let v = verify(g, t, Some(vec![8]))?;
    projection(g, &v, 8, &["8a", "8b"])
}

fn criterion_1() -> Outcome {
    let g = bundled("2s5");
    let v = verify(g, Toggles::ordinary_only(), Some(vec![8]))?;
    let got = projection(g, &v, 8, &["8a", "8b"])?;
    let expected = set(&[[1, 0], [0, 1], [-1, 2], [2, -1]]);
    ensure!(got.contains(&vec![1, 0]) && got.contains(&vec![0, 1]), "group elements missing: {got:?}");
    ensure!(got.is_subset(&expected), "outside the expected set: {got:?}");
    ensure!(got == expected, "strict shrink to {got:?}");
    Ok(format!("(ε8a, ε8b) ∈ {got:?}"))
}

fn criterion_2() -> Outcome {
    let want = set(&[[1, 0], [0, 1]]);
    let shipped = order8_with_modular(bundled("2s5"))?;
    ensure!(shipped == want, "shipped recipes χ11−χ6, χ12−χ7 give {shipped:?}");
    let alternative = order8_with_modular(&with_spin_recipe("chi11", "chi5"))?;
    ensure!(alternative == want, "χ11−χ5 gives {alternative:?}");
    Ok(format!("{want:?} with χ11−χ5 and with the shipped recipes"))
}

fn criterion_3() -> Outcome {
    let g = bundled("2s5");
    let v = verify(g, Toggles::full(g), Some(vec![12]))?;
    let ov = &v.orders[&12];
    let trivial: BTreeSet<_> = trivial_solutions(g, 12).into_iter().collect();
    let got: BTreeSet<_> = ov.solutions.iter().cloned().collect();
    ensure!(got == trivial && trivial.len() == 2, "solutions {:?}", projection(g, &v, 12, &["12a", "12b"]));
    ensure!(ov.status == ZcStatus::VerifiedTrivial, "status {:?}", ov.status);
    // the relaxation for powers as of a group element, with π(u) of order 6
    let is = relaxation(g, 12, "12a", "6a")?;
    let sum = range(&is, g, &[("12a", 1), ("12b", 1)]);
    let diff = range(&is, g, &[("12a", 1), ("12b", -1)]);
    ensure!(sum == (1, 1), "ε12a + ε12b ∈ {sum:?}");
    ensure!(diff.0 >= -1 && diff.1 <= 1, "ε12a − ε12b ∈ {diff:?}");
    Ok(format!("ε12a+ε12b = 1, ε12a−ε12b ∈ [{}, {}], two trivial solutions", diff.0, diff.1))
}

fn criterion_4() -> Outcome {
    let g = bundled("2s5");
    let v = verify(g, Toggles::full(g), Some(vec![6, 10]))?;
    let mut notes = Vec::new();
    for n in [6, 10] {
        let ov = &v.orders[&n];
        ensure!(ov.status == ZcStatus::ReducedViaCentralTranslation, "order {n}: {:?}", ov.status);
        let tr = ov.trace.translation.as_ref().ok_or(format!("order {n}: no translation"))?;
        ensure!(tr.direct_agrees, "order {n}: direct system disagrees ({} solutions)", tr.direct_solutions);
        ensure!(ov.solutions.iter().all(|u| u.is_trivial(g)), "order {n}: nontrivial unit");
        notes.push(format!("{n} = {}·{}", tr.central_order, tr.cofactor_order));
    }
    Ok(format!("{}; direct μ-systems agree", notes.join(", ")))
}

fn criterion_5() -> Outcome {
    let g = bundled("gl25");
    let v = verify(g, Toggles::full(g), None)?;
    let orders = [1, 2, 3, 4, 5, 6, 8, 10, 12, 20, 24];
    for n in orders {
        let ov = v.orders.get(&n).ok_or(format!("order {n} missing"))?;
        ensure!(ov.status != ZcStatus::Open, "order {n} open");
        ensure!(ov.trace.excluded.is_none(), "element order {n} excluded");
    }
    ensure!(v.zc1_verified(), "open orders {:?}", v.open_orders());
    // the fusion equalities for order 24: π(u) has order 6 in S5
    let is = relaxation(g, 24, "24a", "6a")?;
    for (fibre, want) in [
        (vec!["24a", "24b", "24c", "24d"], 1),
        (vec!["12a", "6a", "3a", "12b"], 0),
        (vec!["8a", "8b"], 0),
        (vec!["4c", "4d", "4e", "4g"], 0),
        (vec!["2b", "4f"], 0),
    ] {
        let terms: Vec<(&str, i64)> = fibre.iter().map(|c| (*c, 1)).collect();
        let r = range(&is, g, &terms);
        ensure!(r == (want, want), "Σ ε over {fibre:?} ∈ {r:?}, expected {want}");
    }
    let n24 = &v.orders[&24];
    ensure!(n24.solutions.len() == 4 && n24.solutions.iter().all(|u| u.is_trivial(g)), "order 24 solutions");
    Ok(format!("orders {orders:?} closed; order-24 fibre sums 1,0,0,0,0"))
}

fn criterion_6() -> Outcome {
    let g = bundled("s5");
    let v = verify(g, Toggles::full(g), None)?;
    for n in [2, 3, 4, 5, 6] {
        let ov = v.orders.get(&n).ok_or(format!("order {n} missing"))?;
        ensure!(ov.status != ZcStatus::Open, "order {n} open");
    }
    ensure!(v.zc1_verified(), "open orders {:?}", v.open_orders());
    Ok("orders 2,3,4,5,6 closed".into())
}

fn ramanujan(m: u64, t: u64) -> i64 {
    let s: f64 = (1..=m)
        .filter(|&k| gcd(k, m) == 1)
        .map(|k| (2.0 * PI * (k * t) as f64 / m as f64).cos())
        .sum();
    s.round() as i64
}

fn q(a: i64, b: i64) -> Rational {
    Rational::new(BigInt::from(a), BigInt::from(b))
}

fn random_cyclotomic(rng: &mut StdRng, m: u64) -> (Cyclotomic, Rational) {
    let terms: Vec<(u64, Rational)> = (0..rng.random_range(0..6))
        .map(|_| (rng.random_range(0..m), q(rng.random_range(-6..=6), rng.random_range(1..=4))))
        .collect();
    let trace = terms
        .iter()
        .map(|(t, c)| c * Rational::from_integer(BigInt::from(ramanujan(m, *t))))
        .sum();
    let x = Cyclotomic::from_terms(m, terms.into_iter().map(|(t, c)| (t as i64, c)));
    (x, trace)
}

fn property_cyclotomic(rng: &mut StdRng) -> Result<usize, String> {
    let mut checks = 0;
    for m in 1..=24u64 {
        for t in 0..m {
            let z = Cyclotomic::root_of_unity(m, t as i64).map_err(|e| e.to_string())?;
            let want = Rational::from_integer(BigInt::from(ramanujan(m, t)));
            ensure!(z.trace_in_field(m).unwrap() == want, "Tr(ζ_{m}^{t})");
            checks += 1;
        }
        for _ in 0..20 {
            let (x, tx) = random_cyclotomic(rng, m);
            let (y, ty) = random_cyclotomic(rng, m);
            ensure!(x.trace_in_field(m).unwrap() == tx, "trace oracle at conductor {m}");
            let c = q(rng.random_range(-5..=5), rng.random_range(1..=3));
            let lin = (&x.scale(&c) + &y).trace_in_field(m).unwrap();
            ensure!(lin == &c * &tx + &ty, "trace linearity at {m}");
            let units: Vec<u64> = (1..=m).filter(|&k| gcd(k, m) == 1).collect();
            let k = units[rng.random_range(0..units.len())];
            ensure!(x.galois(k as i64).unwrap().trace_in_field(m).unwrap() == tx, "Galois invariance at {m}");
            checks += 3;
        }
    }
    Ok(checks)
}

fn property_mu_sum(rng: &mut StdRng) -> Result<usize, String> {
    let mut checks = 0;
    for (stem, _) in BUNDLED {
        let g = bundled(stem);
        for cl in &g.classes {
            let n = cl.order;
            let powers = powers_of(g, &cl.id);
            let forms: Vec<Vec<_>> = g
                .characters
                .iter()
                .map(|ch| (0..n).map(|j| mu_form(&ch.values, j, n, &powers).unwrap()).collect())
                .collect();
            for _ in 0..8 {
                let mut u = PaVector::zero(n, g.num_classes());
                for e in u.entries.iter_mut() {
                    *e = rng.random_range(-4..=4);
                }
                for (ch, fs) in g.characters.iter().zip(&forms) {
                    let total: Rational = fs.iter().map(|f| f.eval(&u)).sum();
                    ensure!(total == Rational::from_integer(BigInt::from(ch.degree)), "{stem} {} {}", cl.id, ch.id);
                    checks += 1;
                }
            }
        }
    }
    Ok(checks)
}

fn property_floor() -> Result<usize, String> {
    let mut checks = 0;
    for (stem, _) in BUNDLED {
        let g = bundled(stem);
        let v = verify(g, Toggles::full(g), None)?;
        for (n, ov) in &v.orders {
            let sols: BTreeSet<Arc<SolvedUnit>> = ov.solutions.iter().cloned().collect();
            for t in trivial_solutions(g, *n) {
                ensure!(sols.contains(&t), "{stem}: group element of order {n} lost");
                checks += 1;
            }
            ensure!(ov.solutions.iter().all(|u| u.is_coherent()), "{stem}: incoherent unit of order {n}");
        }
    }
    Ok(checks)
}

fn property_mutations() -> Result<usize, String> {
    let mutations: Vec<(&str, Invariant, fn(&mut Value))> = vec![
        ("s5", Invariant::ClassSizes, |v| v["classes"][1]["size"] = json!(16)),
        ("s5", Invariant::Structure, |v| v["order"] = json!(121)),
        ("s5", Invariant::PowerMap, |v| v["power_maps"]["2"]["4a"] = json!("3a")),
        ("s5", Invariant::EigenvalueMultiplicity, |v| v["power_maps"]["2"]["4a"] = json!("2b")),
        ("s5", Invariant::Degree, |v| v["characters"][1]["degree"] = json!(7)),
        ("s5", Invariant::FirstOrthogonality, |v| v["characters"][1]["values"][1] = json!(5)),
        ("2s5", Invariant::CentralMult, |v| v["central"]["mult"]["2a"]["3a"] = json!("3a")),
        ("2s5", Invariant::BrauerRecipe, |v| v["brauer"][0]["differences"][0]["minus"] = json!("chi1")),
        ("2s5", Invariant::Fusion, |v| v["quotients"][0]["fusion"]["8a"] = json!("3a")),
        ("2s5", Invariant::FusionSizes, |v| v["quotients"][0]["kernel"] = json!(["1a"])),
        ("gl25", Invariant::Anchor, |v| {
            let s = v.to_string().replace("\"24a\"", "\"@\"").replace("\"24b\"", "\"24a\"").replace("\"@\"", "\"24b\"");
            *v = serde_json::from_str(&s).unwrap();
        }),
    ];
    for (stem, want, apply) in &mutations {
        let (_, text) = BUNDLED.iter().find(|(k, _)| k == stem).unwrap();
        let mut v: Value = serde_json::from_str(text).unwrap();
        apply(&mut v);
        let res: Result<GroupData, GroupError> = GroupData::load_str(&v.to_string()).and_then(|g| {
            for link in &g.quotients {
                g.check_link(link, bundled("s5"))?;
            }
            Ok(g)
        });
        match res {
            Ok(_) => return Err(format!("{stem}: {want:?} corruption accepted")),
            Err(e) => ensure!(e.invariant() == Some(*want), "{stem}: expected {want:?}, got {e}"),
        }
    }
    Ok(mutations.len())
}

fn criterion_7() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let a = property_cyclotomic(&mut rng)?;
    let b = property_mu_sum(&mut rng)?;
    let c = property_floor()?;
    let d = property_mutations()?;
    Ok(format!("(a) {a} cyclotomic checks, (b) {b} μ-sums, (c) {c} group elements kept, (d) {d} corruptions caught"))
}

fn run_cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_help-zc"))
        .args(args)
        .env_remove("HELP_ZC_DATA_DIR")
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(out.status.code() == Some(0), "help-zc {args:?} exited {:?}", out.status.code());
    Ok(out.stdout)
}

fn criterion_8() -> Outcome {
    let mut sizes = Vec::new();
    for (stem, _) in BUNDLED {
        let a = run_cli(&["verify", "--group", stem, "--format", "json"])?;
        let b = run_cli(&["verify", "--group", stem, "--format", "json"])?;
        ensure!(a == b, "{stem}: reports differ between runs");
        let c = run_cli(&["verify", "--group", stem, "--format", "json", "--sequential"])?;
        ensure!(a == c, "{stem}: parallel and sequential reports differ");
        sizes.push(format!("{stem} {} bytes", a.len()));
    }
    Ok(format!("byte-identical reports: {}", sizes.join(", ")))
}

struct Criterion {
    id: u32,
    title: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() {
    let criteria = [
        Criterion { id: 1, title: "2.S5 order 8, ordinary characters", limit: Some(Duration::from_secs(10)), run: criterion_1 },
        Criterion { id: 2, title: "2.S5 order 8, with the 5-modular character", limit: None, run: criterion_2 },
        Criterion { id: 3, title: "2.S5 order 12", limit: None, run: criterion_3 },
        Criterion { id: 4, title: "2.S5 orders 6 and 10 by central translation", limit: None, run: criterion_4 },
        Criterion { id: 5, title: "GL(2,5) every element order", limit: Some(Duration::from_secs(60)), run: criterion_5 },
        Criterion { id: 6, title: "S5 every element order", limit: Some(Duration::from_secs(10)), run: criterion_6 },
        Criterion { id: 7, title: "property suites", limit: Some(Duration::from_secs(30)), run: criterion_7 },
        Criterion { id: 8, title: "deterministic JSON reports", limit: None, run: criterion_8 },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let el = start.elapsed();
        let res = match (res, c.limit) {
            (Ok(_), Some(lim)) if el > lim => Err(format!("took {:.2} s, limit {} s", el.as_secs_f64(), lim.as_secs())),
            (r, _) => r,
        };
        let (tag, detail) = match &res {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("acceptance {tag} [{}] {} — {detail} ({:.2} s)", c.id, c.title, el.as_secs_f64());
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use help_core::constraints::{PaVector, Toggles};
use help_core::data;
use help_core::solver::{
    solve_order, trivial_solutions, verify_with_quotients, OrderVerdict, SolveError,
    SolveOptions, SolvedUnit, Verification, ZcStatus,
};
use help_core::GroupData;
use num_traits::ToPrimitive;

fn resolve(name: &str) -> Result<GroupData, String> {
    data::resolve(name).map_err(|e| e.to_string())
}

fn run(g: &GroupData, toggles: Toggles, parallel: bool) -> Result<Verification, SolveError> {
    let options = SolveOptions {
        toggles,
        parallel,
        orders: None,
    };
    verify_with_quotients(g, &resolve, &options).map(|(v, _)| v)
}

/// Subsets of the optional ingredients, on top of the ordinary characters:
/// all of them with the order restriction on, and two without it (dropping
/// it multiplies the box sizes, which gets slow).
fn lattice(g: &GroupData) -> Vec<(u32, Toggles)> {
    let full = Toggles::full(g);
    (0..64u32)
        .filter(|m| m & 8 != 0 || [0b010101, 0b110111].contains(m))
        .map(|m| {
            let t = Toggles {
                ordinary: true,
                modular: if m & 1 != 0 { full.modular.clone() } else { Vec::new() },
                fusion: m & 2 != 0,
                berman_higman: m & 4 != 0,
                order_divisibility: m & 8 != 0,
                cohn_livingstone: m & 16 != 0,
                central_translation: m & 32 != 0,
                characters: None,
            };
            (m, t)
        })
        .collect()
}

fn solution_set(v: &OrderVerdict) -> BTreeSet<Arc<SolvedUnit>> {
    v.solutions.iter().cloned().collect()
}

fn check_floor_and_coherence(g: &GroupData, v: &Verification, what: &str) {
    for (n, ov) in &v.orders {
        let sols = solution_set(ov);
        for u in &ov.solutions {
            assert!(u.is_coherent(), "{what}: incoherent unit of order {n}");
            assert_eq!(u.order, *n);
            assert_eq!(u.pa.entries.iter().sum::<i64>(), 1, "{what}: augmentation");
        }
        if ov.trace.excluded.is_none() {
            for t in trivial_solutions(g, *n) {
                assert!(sols.contains(&t), "{what}: group element of order {n} lost");
            }
        } else {
            assert!(g.classes_of_order(*n).is_empty(), "{what}: order {n} excluded");
        }
        if ov.status != ZcStatus::Open {
            assert!(ov.solutions.iter().all(|u| u.is_trivial(g)));
        }
    }
}

/// Adding an ingredient never adds a solution.
fn check_lattice(stem: &str) {
    let g = data::bundled(stem).unwrap();
    let runs: BTreeMap<u32, Verification> = lattice(g)
        .into_iter()
        .filter_map(|(m, t)| match run(g, t, true) {
            Ok(v) => Some((m, v)),
            // without enough constraints a box can be unbounded; the
            // comparison is then vacuous
            Err(SolveError::Unbounded(_)) => None,
            Err(e) => panic!("{stem} {m:06b}: {e}"),
        })
        .collect();
    assert!(runs.contains_key(&63));
    for (m, v) in &runs {
        check_floor_and_coherence(g, v, &format!("{stem} {m:06b}"));
        for (m2, v2) in &runs {
            if m == m2 || m & m2 != *m {
                continue;
            }
            for (n, strong) in &v2.orders {
                let Some(weak) = v.orders.get(n) else { continue };
                let weak = solution_set(weak);
                for u in &strong.solutions {
                    assert!(
                        weak.contains(u),
                        "{stem}: {m2:06b} ⊇ {m:06b} but order {n} gained {:?}",
                        u.pa.entries
                    );
                }
            }
        }
    }
}

#[test]
fn s5_toggle_lattice_is_monotone() {
    check_lattice("s5");
}

#[test]
fn double_cover_toggle_lattice_is_monotone() {
    check_lattice("2s5");
}

#[test]
fn gl25_full_run_is_sound_and_coherent() {
    let g = data::bundled("gl25").unwrap();
    let v = run(g, Toggles::full(g), true).unwrap();
    check_floor_and_coherence(g, &v, "gl25");
    assert!(v.zc1_verified());
}

#[test]
fn parallel_and_sequential_agree() {
    for stem in ["s5", "2s5"] {
        let g = data::bundled(stem).unwrap();
        let a = run(g, Toggles::full(g), true).unwrap();
        let b = run(g, Toggles::full(g), false).unwrap();
        assert_eq!(a, b, "{stem}");
        assert_eq!(a, run(g, Toggles::full(g), true).unwrap(), "{stem} rerun");
    }
}

/// Integer character values of a group with a rational character table.
fn rational_table(g: &GroupData) -> Vec<Vec<i64>> {
    g.characters
        .iter()
        .map(|ch| {
            ch.values
                .iter()
                .map(|v| v.to_rational().unwrap().to_integer().to_i64().unwrap())
                .collect()
        })
        .collect()
}

/// The HeLP conditions for a unit of prime order p with rational character
/// values, from the formula μ_j = (χ(1) + Tr(ζ_p^{-j})·χ(u)) / p.
fn oracle_accepts(table: &[Vec<i64>], orders: &[u64], p: i64, pa: &[i64]) -> bool {
    if pa.iter().sum::<i64>() != 1 {
        return false;
    }
    // nonnegative partial augmentations on u and u^p = 1 make u conjugate to
    // a group element (Marciniak–Ritter–Sehgal–Weiss), which has order p
    if let Some(c) = pa.iter().position(|&e| e == 1) {
        if pa.iter().all(|&e| e >= 0) && orders[c] != p as u64 {
            return false;
        }
    }
    table.iter().all(|chi| {
        let value: i64 = chi.iter().zip(pa).map(|(a, b)| a * b).sum();
        (0..p).all(|j| {
            let tr = if j == 0 { p - 1 } else { -1 };
            let num = chi[0] + tr * value;
            num >= 0 && num % p == 0
        })
    })
}

#[test]
fn s5_prime_orders_match_brute_force() {
    const R: i64 = 5;
    let g = data::bundled("s5").unwrap();
    let table = rational_table(g);
    let orders: Vec<u64> = g.classes.iter().map(|c| c.order).collect();
    let h = g.num_classes();
    let bare = Toggles {
        ordinary: true,
        modular: Vec::new(),
        fusion: false,
        berman_higman: false,
        order_divisibility: false,
        cohn_livingstone: false,
        central_translation: false,
        characters: None,
    };
    let options = SolveOptions {
        toggles: bare,
        parallel: false,
        orders: None,
    };
    let mut solved = BTreeMap::new();
    solved.insert(1, solve_order(g, 1, &BTreeMap::new(), &[], &options).unwrap());
    for p in [2u64, 3] {
        let v = solve_order(g, p, &solved, &[], &options).unwrap();
        let engine: BTreeSet<Vec<i64>> = v.solutions.iter().map(|u| u.pa.entries.clone()).collect();
        for s in &engine {
            assert!(s.iter().all(|e| e.abs() <= R), "order {p}: {s:?} outside the search box");
            assert!(oracle_accepts(&table, &orders, p as i64, s));
        }
        // the last coordinate is fixed by the augmentation
        let mut brute = BTreeSet::new();
        let mut x = vec![-R; h - 1];
        loop {
            let last = 1 - x.iter().sum::<i64>();
            if last.abs() <= R {
                let mut pa = x.clone();
                pa.push(last);
                if oracle_accepts(&table, &orders, p as i64, &pa) {
                    brute.insert(pa);
                }
            }
            let mut i = 0;
            while i < x.len() && x[i] == R {
                x[i] = -R;
                i += 1;
            }
            if i == x.len() {
                break;
            }
            x[i] += 1;
        }
        assert_eq!(engine, brute, "order {p}");
        let trivial: BTreeSet<Vec<i64>> = (0..h)
            .filter(|&c| g.classes[c].order == p)
            .map(|c| PaVector::trivial(p, h, c).entries)
            .collect();
        assert!(trivial.is_subset(&engine));
    }
}


//! Runs the full verification for each bundled group and prints a summary.

use help_core::constraints::Toggles;
use help_core::data;
use help_core::solver::{verify_with_quotients, SolveOptions};

fn main() {
    let stems: Vec<String> = std::env::args().skip(1).collect();
    for stem in if stems.is_empty() { vec!["s5".into(), "2s5".into(), "gl25".into()] } else { stems } {
        let g = data::bundled(&stem).expect("bundled group");
        let t = std::time::Instant::now();
        let opts = SolveOptions::new(Toggles::full(g));
        let (v, _) = verify_with_quotients(g, &|n| data::resolve(n).map_err(|e| e.to_string()), &opts)
            .expect("verification");
        println!("{} ({:?})", g.name, t.elapsed());
        for (n, o) in &v.orders {
            println!(
                "  {n:>3}: {:?} sols={} nontriv={} systems={} box={} excl={:?} tr={:?}",
                o.status,
                o.solutions.len(),
                o.nontrivial(g).count(),
                o.trace.systems,
                o.trace.box_points,
                o.trace.excluded.is_some(),
                o.trace.translation.as_ref().map(|t| (t.central_order, t.direct_agrees, t.direct_solutions)),
            );
            for u in o.nontrivial(g) {
                println!("       {:?}", u.pa.by_id(g));
            }
        }
    }
}

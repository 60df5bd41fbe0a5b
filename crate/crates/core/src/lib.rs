//! Exact HeLP (Hertweck–Luthar–Passi) constraint solving for torsion units
//! in integral group rings.

mod anchors;
pub mod arith;
pub mod constraints;
pub mod cyclotomic;
pub mod data;
pub mod group;
pub mod jsonfmt;
pub mod report;
pub mod solver;

pub use cyclotomic::{Cyclotomic, CyclotomicError, Rational};
pub use group::{GroupData, GroupError, Invariant};
pub use constraints::{Label, PaVector, Toggles};
pub use solver::{verify_zc1, OrderVerdict, SolveError, SolveOptions, Verification, ZcStatus};

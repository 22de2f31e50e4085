//! Soft constraint satisfaction over finite divisible residuated lattices.
//!
//! [`algebra`] builds and checks the valuation structures, [`csp`] holds
//! problems over them, [`enforce`] runs k-hyperarc consistency, [`oracle`]
//! solves and compares problems by enumeration, and [`io`] reads and writes
//! the JSON formats.

pub mod algebra;
pub mod csp;
pub mod enforce;
pub mod io;
pub mod oracle;
pub mod rng;

pub use algebra::{Elem, FiniteDRL};
pub use csp::{Constraint, ConstraintNetwork, Problem, RawProblem, Scope, Var};
pub use enforce::{enforce_k_hyperarc, Enforced, EnforcementOutcome, Strategy};
pub use oracle::{brute_force_solve, check_equivalent, Equivalence, OracleConfig};

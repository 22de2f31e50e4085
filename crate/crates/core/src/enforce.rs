//! k-hyperarc consistency enforcement.
//!
//! `Project(Y, i)` moves cost from `C_Y` onto the unary constraint `C_{i}`:
//! for each live value `a`, it picks a best entry `x` among
//! `{ C_Y(t · a) | t ∈ l(Y ∖ {i}) }`, folds it into `C_{i}(a)` with `⊙`, and
//! divides it out of every `C_Y(t · a)` with the residuum. The main loop runs
//! projections from a FIFO queue of variables until no unary domain shrinks.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{Elem, FiniteDRL};
use crate::csp::{ConstraintNetwork, Fiber, Problem, Scope, Var};
use crate::oracle::maximal_elements;
use crate::rng::SplitMix64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnforceError {
    #[error("k must be at least 2, got {0}")]
    BadK(usize),
    #[error("no constraint on scope {0}")]
    ScopeMissing(Scope),
    #[error("variable {var} is not in scope {scope}")]
    VariableNotInScope { scope: Scope, var: Var },
}

/// How the projected entry is chosen from the candidate set.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Strategy {
    /// The maximal element reached first in canonical tuple order.
    #[default]
    MaximalLex,
    /// A maximal element drawn uniformly with a seeded generator.
    MaximalSeeded(u64),
    /// The join of all candidates. Not necessarily an element of the set.
    Join,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::MaximalLex => write!(f, "maximal-lex"),
            Strategy::MaximalSeeded(seed) => write!(f, "maximal-seeded:{seed}"),
            Strategy::Join => write!(f, "join"),
        }
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "maximal-lex" => Ok(Strategy::MaximalLex),
            "join" => Ok(Strategy::Join),
            _ => s
                .strip_prefix("maximal-seeded:")
                .and_then(|seed| seed.parse().ok())
                .map(Strategy::MaximalSeeded)
                .ok_or_else(|| format!("unknown strategy `{s}`")),
        }
    }
}

/// A strategy together with its generator state for one run.
#[derive(Debug, Clone)]
pub struct Selector {
    strategy: Strategy,
    rng: SplitMix64,
}

impl Selector {
    pub fn new(strategy: Strategy) -> Self {
        let seed = match strategy {
            Strategy::MaximalSeeded(seed) => seed,
            _ => 0,
        };
        Selector {
            strategy,
            rng: SplitMix64::new(seed),
        }
    }

    /// Picks `x` from candidates listed in canonical tuple order.
    pub fn select(&mut self, algebra: &FiniteDRL, candidates: &[Elem]) -> Elem {
        match self.strategy {
            Strategy::Join => candidates
                .iter()
                .fold(algebra.bottom(), |acc, &v| algebra.join(acc, v)),
            Strategy::MaximalLex => {
                let maximal = maximal_elements(algebra, candidates).expect("nonempty fiber");
                *candidates
                    .iter()
                    .find(|v| maximal.binary_search(v).is_ok())
                    .expect("a maximal element occurs among the candidates")
            }
            Strategy::MaximalSeeded(_) => {
                let maximal = maximal_elements(algebra, candidates).expect("nonempty fiber");
                if maximal.len() == 1 {
                    maximal[0]
                } else {
                    maximal[self.rng.index(maximal.len())]
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Counters {
    pub main_loop_iterations: u64,
    pub project_calls: u64,
    /// Candidate scans plus entry rewrites, one per `(a, t)` pair each.
    pub inner_tuple_iterations: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Enforced {
    /// Every unary value of `variable` reached `⊥`.
    Inconsistent {
        variable: Var,
    },
    Consistent(Problem),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnforcementOutcome {
    pub result: Enforced,
    pub counters: Counters,
}

/// Runs `Project(Y, i)` in place. Returns whether some unary entry of `var`
/// became `⊥`.
pub fn project(
    problem: &mut Problem,
    scope: &Scope,
    var: Var,
    selector: &mut Selector,
) -> Result<bool, EnforceError> {
    project_counted(problem, scope, var, selector, &mut Counters::default())
}

fn project_counted(
    problem: &mut Problem,
    scope: &Scope,
    var: Var,
    selector: &mut Selector,
    counters: &mut Counters,
) -> Result<bool, EnforceError> {
    if problem.constraint(scope).is_none() || scope.len() < 2 {
        return Err(EnforceError::ScopeMissing(scope.clone()));
    }
    let fiber = Fiber::new(scope, problem.domain_sizes(), var).ok_or_else(|| {
        EnforceError::VariableNotInScope {
            scope: scope.clone(),
            var,
        }
    })?;
    let algebra = problem.algebra_arc().clone();
    let unary_scope = Scope::unary(var);
    let domain = problem.domain_sizes()[var];
    let mut shrinks = false;
    let mut candidates = Vec::with_capacity(fiber.len());

    for a in 0..domain {
        let u = problem.unary(var)[a];
        if u == algebra.bottom() {
            continue;
        }
        let table = problem.constraint_mut(scope).expect("checked above");
        candidates.clear();
        candidates.extend(fiber.indices(a).map(|idx| table.values()[idx]));
        let x = selector.select(&algebra, &candidates);

        let values = table.values_mut();
        for idx in fiber.indices(a) {
            values[idx] = algebra.residuum(x, values[idx]);
        }
        counters.inner_tuple_iterations += 2 * fiber.len() as u64;

        let new_u = algebra.otimes(u, x);
        problem
            .constraint_mut(&unary_scope)
            .expect("unary constraint present")
            .values_mut()[a] = new_u;
        if new_u == algebra.bottom() {
            shrinks = true;
        }
    }
    Ok(shrinks)
}

/// Enforces k-hyperarc consistency on a copy of `problem`.
///
/// Variables are processed from a FIFO queue seeded with `0..n`; for each
/// popped variable, every stored scope of arity `2..=k` containing it is
/// projected in canonical scope order. A variable whose domain shrinks is
/// re-queued unless already queued.
pub fn enforce_k_hyperarc(
    problem: &Problem,
    k: usize,
    strategy: Strategy,
) -> Result<EnforcementOutcome, EnforceError> {
    if k < 2 {
        return Err(EnforceError::BadK(k));
    }
    let mut work = problem.clone();
    let mut selector = Selector::new(strategy);
    let mut counters = Counters::default();
    let n = work.variable_count();
    let bottom = work.algebra().bottom();

    let mut incident: Vec<Vec<Scope>> = vec![Vec::new(); n];
    for c in work.constraints() {
        if (2..=k).contains(&c.arity()) {
            for &v in c.scope().vars() {
                incident[v].push(c.scope().clone());
            }
        }
    }

    let mut queue: VecDeque<Var> = (0..n).collect();
    let mut queued = vec![true; n];
    while let Some(i) = queue.pop_front() {
        queued[i] = false;
        counters.main_loop_iterations += 1;
        for scope in &incident[i] {
            let shrinks = project_counted(&mut work, scope, i, &mut selector, &mut counters)?;
            counters.project_calls += 1;
            if work.unary(i).iter().all(|&u| u == bottom) {
                return Ok(EnforcementOutcome {
                    result: Enforced::Inconsistent { variable: i },
                    counters,
                });
            }
            if shrinks && !queued[i] {
                queue.push_back(i);
                queued[i] = true;
            }
        }
    }
    Ok(EnforcementOutcome {
        result: Enforced::Consistent(work),
        counters,
    })
}

/// Checks the iteration bounds of a finished run: at most `n(d+1)` main-loop
/// iterations and `n(d+1)·e` projections.
pub fn check_counter_bound(counters: &Counters, n: usize, d: usize, e: usize) -> bool {
    let pushes = (n as u64) * (d as u64 + 1);
    counters.main_loop_iterations <= pushes && counters.project_calls <= pushes * e as u64
}

/// Upper bound on [`Counters::inner_tuple_iterations`]: every projection scans
/// at most `d` values with two passes over at most `d^(k-1)` tuples.
pub fn inner_iteration_bound(n: usize, d: usize, e: usize, k: usize) -> u64 {
    let (n, d, e) = (n as u64, d as u64, e as u64);
    n * (d + 1) * e * 2 * d.pow(k as u32)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::{boolean, direct_product, weighted, DEFAULT_CARRIER_CAP};
    use crate::csp::Constraint;

    fn weighted_example() -> Problem {
        let w = Arc::new(weighted(10).unwrap());
        let sizes = vec![2, 2];
        Problem::new(
            w.clone(),
            sizes.clone(),
            vec![
                Constraint::new(Scope::unary(0), vec![0, 1], &sizes, &w).unwrap(),
                Constraint::new(
                    Scope::new(vec![0, 1]).unwrap(),
                    vec![2, 5, 0, 3],
                    &sizes,
                    &w,
                )
                .unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn strategy_parsing() {
        assert_eq!("maximal-lex".parse(), Ok(Strategy::MaximalLex));
        assert_eq!("maximal-seeded:17".parse(), Ok(Strategy::MaximalSeeded(17)));
        assert_eq!("join".parse(), Ok(Strategy::Join));
        assert!("maximal-seeded:x".parse::<Strategy>().is_err());
        assert_eq!(Strategy::MaximalSeeded(3).to_string(), "maximal-seeded:3");
    }

    #[test]
    fn project_weighted_example() {
        let mut p = weighted_example();
        let y = Scope::new(vec![0, 1]).unwrap();
        let shrinks = project(&mut p, &y, 0, &mut Selector::new(Strategy::MaximalLex)).unwrap();
        assert!(!shrinks);
        assert_eq!(p.unary(0), &[2, 1]);
        assert_eq!(p.constraint(&y).unwrap().values(), &[0, 3, 0, 3]);
    }

    #[test]
    fn project_errors() {
        let mut p = weighted_example();
        let mut sel = Selector::new(Strategy::MaximalLex);
        assert!(matches!(
            project(&mut p, &Scope::new(vec![0, 2]).unwrap(), 0, &mut sel),
            Err(EnforceError::ScopeMissing(_))
        ));
        let w = Arc::new(weighted(3).unwrap());
        let sizes = vec![2, 2, 2];
        let mut q = Problem::new(
            w.clone(),
            sizes.clone(),
            vec![Constraint::constant(Scope::new(vec![0, 1]).unwrap(), 1, &sizes, &w).unwrap()],
        )
        .unwrap();
        assert!(matches!(
            project(&mut q, &Scope::new(vec![0, 1]).unwrap(), 2, &mut sel),
            Err(EnforceError::VariableNotInScope { var: 2, .. })
        ));
    }

    #[test]
    fn top_table_projection_is_identity() {
        let w = Arc::new(weighted(6).unwrap());
        let sizes = vec![3, 2];
        let y = Scope::new(vec![0, 1]).unwrap();
        let mut p = Problem::new(
            w.clone(),
            sizes.clone(),
            vec![
                Constraint::new(Scope::unary(0), vec![1, 2, 3], &sizes, &w).unwrap(),
                Constraint::constant(y.clone(), 0, &sizes, &w).unwrap(),
            ],
        )
        .unwrap();
        let before = p.clone();
        assert!(!project(&mut p, &y, 0, &mut Selector::new(Strategy::Join)).unwrap());
        assert_eq!(p, before);
    }

    #[test]
    fn boolean_square_witness_becomes_top() {
        let sq = Arc::new(direct_product(&boolean(), &boolean(), DEFAULT_CARRIER_CAP).unwrap());
        let sizes = vec![1, 2];
        let y = Scope::new(vec![0, 1]).unwrap();
        let mut p = Problem::new(
            sq.clone(),
            sizes.clone(),
            vec![Constraint::new(y.clone(), vec![2, 1], &sizes, &sq).unwrap()],
        )
        .unwrap();
        project(&mut p, &y, 0, &mut Selector::new(Strategy::MaximalLex)).unwrap();
        // (⊤,⊥) comes first in tuple order and is picked
        assert_eq!(p.unary(0), &[2]);
        assert_eq!(p.constraint(&y).unwrap().values(), &[3, 1]);
    }

    #[test]
    fn fixpoint_input_counts() {
        let w = Arc::new(weighted(4).unwrap());
        let sizes = vec![2, 2, 2];
        let p = Problem::new(
            w.clone(),
            sizes.clone(),
            vec![
                Constraint::constant(Scope::new(vec![0, 1]).unwrap(), 0, &sizes, &w).unwrap(),
                Constraint::constant(Scope::new(vec![1, 2]).unwrap(), 0, &sizes, &w).unwrap(),
            ],
        )
        .unwrap();
        let out = enforce_k_hyperarc(&p, 2, Strategy::MaximalLex).unwrap();
        assert_eq!(out.result, Enforced::Consistent(p));
        assert_eq!(out.counters.main_loop_iterations, 3);
        assert_eq!(out.counters.project_calls, 4);
        assert!(check_counter_bound(&out.counters, 3, 2, 5));
    }

    #[test]
    fn bad_k() {
        assert_eq!(
            enforce_k_hyperarc(&weighted_example(), 1, Strategy::MaximalLex),
            Err(EnforceError::BadK(1))
        );
    }

    #[test]
    fn all_values_driven_to_bottom() {
        let w = Arc::new(weighted(4).unwrap());
        let sizes = vec![2, 2];
        let p = Problem::new(
            w.clone(),
            sizes.clone(),
            vec![
                Constraint::new(Scope::unary(0), vec![2, 3], &sizes, &w).unwrap(),
                Constraint::new(
                    Scope::new(vec![0, 1]).unwrap(),
                    vec![2, 3, 1, 4],
                    &sizes,
                    &w,
                )
                .unwrap(),
            ],
        )
        .unwrap();
        let out = enforce_k_hyperarc(&p, 2, Strategy::MaximalLex).unwrap();
        assert_eq!(out.result, Enforced::Inconsistent { variable: 0 });
    }
}

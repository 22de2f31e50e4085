//! Brute-force ground truth: exhaustive enumeration of full assignments.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{Elem, FiniteDRL};
use crate::csp::ConstraintNetwork;

/// Default cap on `Π |D_i|` for enumeration.
pub const DEFAULT_TUPLE_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("maximal elements of an empty set")]
    EmptyInput,
    #[error("{count} full assignments exceed the cap of {cap}")]
    TooLarge { count: u128, cap: u64 },
    #[error("problems differ in shape: {0}")]
    ShapeMismatch(String),
}

#[derive(Debug, Clone, Copy)]
pub struct OracleConfig {
    pub tuple_cap: u64,
    /// Worker threads for enumeration; `1` runs on the calling thread.
    pub threads: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            tuple_cap: DEFAULT_TUPLE_CAP,
            threads: 1,
        }
    }
}

/// Maximal elements of `values` (duplicates allowed), as sorted ids.
///
/// Keeps a running antichain: each new value is dropped if something already
/// kept is at or above it, and otherwise evicts whatever it dominates.
pub fn maximal_elements(algebra: &FiniteDRL, values: &[Elem]) -> Result<Vec<Elem>, OracleError> {
    if values.is_empty() {
        return Err(OracleError::EmptyInput);
    }
    let mut front: Vec<Elem> = Vec::new();
    for &v in values {
        if front.iter().any(|&m| algebra.leq(v, m)) {
            continue;
        }
        front.retain(|&m| !algebra.leq(m, v));
        front.push(v);
    }
    front.sort_unstable();
    Ok(front)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolutionSet {
    pub optimal_values: Vec<Elem>,
    /// Full assignments, in canonical order, whose value is optimal.
    pub solutions: Vec<Vec<usize>>,
    pub inconsistent: bool,
}

fn assignment_count(sizes: &[usize], cap: u64) -> Result<usize, OracleError> {
    let count = sizes
        .iter()
        .fold(1u128, |acc, &d| acc.saturating_mul(d as u128));
    if count > cap as u128 {
        return Err(OracleError::TooLarge { count, cap });
    }
    Ok(count as usize)
}

fn decode(sizes: &[usize], mut index: usize, out: &mut [usize]) {
    for (slot, &d) in out.iter_mut().zip(sizes).rev() {
        *slot = index % d;
        index /= d;
    }
}

fn run<T: Send>(threads: usize, job: impl FnOnce() -> T + Send) -> T {
    if threads <= 1 {
        return job();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(job),
        Err(_) => job(),
    }
}

fn all_values<P: ConstraintNetwork + Sync>(p: &P, count: usize, threads: usize) -> Vec<Elem> {
    let sizes = p.domain_sizes();
    let eval = |i: usize| {
        let mut t = vec![0; sizes.len()];
        decode(sizes, i, &mut t);
        p.combined_value(&t)
    };
    if threads <= 1 {
        (0..count).map(eval).collect()
    } else {
        run(threads, || (0..count).into_par_iter().map(eval).collect())
    }
}

/// Enumerates every full assignment and returns the maximal combined values
/// with the assignments achieving them.
pub fn brute_force_solve<P: ConstraintNetwork + Sync>(
    problem: &P,
    config: &OracleConfig,
) -> Result<SolutionSet, OracleError> {
    let sizes = problem.domain_sizes();
    let count = assignment_count(sizes, config.tuple_cap)?;
    let values = all_values(problem, count, config.threads);
    let algebra = problem.algebra();
    let optimal_values = maximal_elements(algebra, &values)?;
    let solutions = values
        .iter()
        .enumerate()
        .filter(|(_, v)| optimal_values.binary_search(v).is_ok())
        .map(|(i, _)| {
            let mut t = vec![0; sizes.len()];
            decode(sizes, i, &mut t);
            t
        })
        .collect();
    let inconsistent = optimal_values == [algebra.bottom()];
    Ok(SolutionSet {
        optimal_values,
        solutions,
        inconsistent,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Equivalence {
    Equal,
    /// First full assignment (canonical order) where the combined values differ.
    Counterexample {
        tuple: Vec<usize>,
        left: Elem,
        right: Elem,
    },
}

impl Equivalence {
    pub fn is_equal(&self) -> bool {
        matches!(self, Equivalence::Equal)
    }
}

/// Compares combined values on every full assignment.
pub fn check_equivalent<P, Q>(
    left: &P,
    right: &Q,
    config: &OracleConfig,
) -> Result<Equivalence, OracleError>
where
    P: ConstraintNetwork + Sync,
    Q: ConstraintNetwork + Sync,
{
    if left.domain_sizes() != right.domain_sizes() {
        return Err(OracleError::ShapeMismatch(format!(
            "domains {:?} vs {:?}",
            left.domain_sizes(),
            right.domain_sizes()
        )));
    }
    if !left.algebra().same_tables(right.algebra()) {
        return Err(OracleError::ShapeMismatch("different algebras".into()));
    }
    let sizes = left.domain_sizes();
    let count = assignment_count(sizes, config.tuple_cap)?;
    let differs = |i: usize| {
        let mut t = vec![0; sizes.len()];
        decode(sizes, i, &mut t);
        let (l, r) = (left.combined_value(&t), right.combined_value(&t));
        (l != r).then_some(Equivalence::Counterexample {
            tuple: t,
            left: l,
            right: r,
        })
    };
    let first = if config.threads <= 1 {
        (0..count).find_map(differs)
    } else {
        run(config.threads, || {
            (0..count).into_par_iter().find_map_first(differs)
        })
    };
    Ok(first.unwrap_or(Equivalence::Equal))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::{boolean, direct_product, godel_chain, DEFAULT_CARRIER_CAP};
    use crate::csp::{Constraint, RawProblem, Scope};

    #[test]
    fn chain_subset_has_single_maximum() {
        let g = godel_chain(3).unwrap();
        assert_eq!(maximal_elements(&g, &[0, 2, 1]).unwrap(), vec![2]);
    }

    #[test]
    fn incomparable_pair_is_kept() {
        let sq = direct_product(&boolean(), &boolean(), DEFAULT_CARRIER_CAP).unwrap();
        assert_eq!(maximal_elements(&sq, &[2, 1]).unwrap(), vec![1, 2]);
        assert_eq!(maximal_elements(&sq, &[2, 1, 3]).unwrap(), vec![3]);
    }

    #[test]
    fn singleton_and_empty() {
        let g = godel_chain(3).unwrap();
        assert_eq!(maximal_elements(&g, &[0]).unwrap(), vec![0]);
        assert_eq!(maximal_elements(&g, &[]), Err(OracleError::EmptyInput));
    }

    #[test]
    fn all_top_problem() {
        let g = Arc::new(godel_chain(3).unwrap());
        let raw = RawProblem::new(g, vec![2, 2], vec![]).unwrap();
        let s = brute_force_solve(&raw, &OracleConfig::default()).unwrap();
        assert_eq!(s.optimal_values, vec![2]);
        assert_eq!(s.solutions.len(), 4);
        assert!(!s.inconsistent);
    }

    #[test]
    fn bottom_unary_is_inconsistent() {
        let g = Arc::new(godel_chain(3).unwrap());
        let sizes = vec![2, 2];
        let raw = RawProblem::new(
            g.clone(),
            sizes.clone(),
            vec![Constraint::new(Scope::unary(0), vec![0, 0], &sizes, &g).unwrap()],
        )
        .unwrap();
        let s = brute_force_solve(&raw, &OracleConfig::default()).unwrap();
        assert!(s.inconsistent);
        assert_eq!(s.optimal_values, vec![0]);
    }

    #[test]
    fn too_large() {
        let g = Arc::new(godel_chain(2).unwrap());
        let raw = RawProblem::new(g, vec![10; 7], vec![]).unwrap();
        assert!(matches!(
            brute_force_solve(&raw, &OracleConfig::default()),
            Err(OracleError::TooLarge { .. })
        ));
    }

    #[test]
    fn shape_mismatch() {
        let g = Arc::new(godel_chain(2).unwrap());
        let a = RawProblem::new(g.clone(), vec![2], vec![]).unwrap();
        let b = RawProblem::new(g, vec![3], vec![]).unwrap();
        assert!(matches!(
            check_equivalent(&a, &b, &OracleConfig::default()),
            Err(OracleError::ShapeMismatch(_))
        ));
    }

    #[test]
    fn threaded_matches_sequential() {
        let g = Arc::new(godel_chain(4).unwrap());
        let sizes = vec![3, 3, 3];
        let c = |s: Vec<usize>, f: &dyn Fn(usize) -> usize| {
            let scope = Scope::new(s).unwrap();
            let len = crate::csp::tuple_count(&scope, &sizes).unwrap();
            Constraint::new(scope, (0..len).map(f).collect(), &sizes, &g).unwrap()
        };
        let a = RawProblem::new(
            g.clone(),
            sizes.clone(),
            vec![c(vec![0, 1], &|i| i % 4), c(vec![1, 2], &|i| (i * 7) % 4)],
        )
        .unwrap();
        let b = RawProblem::new(
            g.clone(),
            sizes.clone(),
            vec![c(vec![0, 1], &|i| i % 4), c(vec![1, 2], &|i| (i * 5) % 4)],
        )
        .unwrap();
        let seq = OracleConfig::default();
        let par = OracleConfig { threads: 4, ..seq };
        assert_eq!(
            check_equivalent(&a, &b, &seq).unwrap(),
            check_equivalent(&a, &b, &par).unwrap()
        );
        assert_eq!(
            brute_force_solve(&a, &seq).unwrap(),
            brute_force_solve(&a, &par).unwrap()
        );
    }
}

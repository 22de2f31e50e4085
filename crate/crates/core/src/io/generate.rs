use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{Elem, FiniteDRL};
use crate::csp::{tuple_count, Constraint, CspError, Problem, Scope};
use crate::rng::SplitMix64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("asked for {wanted} non-unary scopes but only {available} exist")]
    NotEnoughScopes { wanted: usize, available: usize },
    #[error(transparent)]
    Csp(#[from] CspError),
}

// All strictly increasing subsets of 0..n with size in arities, in
// lexicographic order.
fn candidate_scopes(n: usize, min_arity: usize, max_arity: usize) -> Vec<Scope> {
    fn extend(
        n: usize,
        max: usize,
        min: usize,
        prefix: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if prefix.len() >= min {
            out.push(prefix.clone());
        }
        if prefix.len() == max {
            return;
        }
        let start = prefix.last().map_or(0, |&v| v + 1);
        for v in start..n {
            prefix.push(v);
            extend(n, max, min, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(n, max_arity, min_arity, &mut Vec::new(), &mut out);
    out.sort();
    out.into_iter()
        .map(|v| Scope::new(v).expect("increasing by construction"))
        .collect()
}

/// Builds a reproducible random problem with `n` variables of domain size
/// `d` and `e` constraints in total: one unary constraint per variable
/// (values drawn from the non-`⊥` elements) plus `e − n` distinct scopes of
/// arity `2..=max_arity` (values drawn from all elements).
///
/// Draw order: the `n` unary tables by variable, then for each extra
/// constraint its scope followed by its table.
pub fn gen_random_problem(
    algebra: Arc<FiniteDRL>,
    n: usize,
    d: usize,
    e: usize,
    max_arity: usize,
    seed: u64,
) -> Result<Problem, GenError> {
    if n < 1 || d < 1 {
        return Err(GenError::BadParams("need n >= 1 and d >= 1".into()));
    }
    if max_arity < 2 || max_arity > n {
        return Err(GenError::BadParams(format!(
            "max arity {max_arity} outside 2..={n}"
        )));
    }
    if e < n {
        return Err(GenError::BadParams(format!("e = {e} < n = {n}")));
    }
    let live: Vec<Elem> = algebra
        .elements()
        .filter(|&x| x != algebra.bottom())
        .collect();
    if live.is_empty() {
        return Err(GenError::BadParams(
            "algebra has no element above bottom".into(),
        ));
    }
    let mut remaining = candidate_scopes(n, 2, max_arity);
    let wanted = e - n;
    if wanted > remaining.len() {
        return Err(GenError::NotEnoughScopes {
            wanted,
            available: remaining.len(),
        });
    }

    let sizes = vec![d; n];
    let mut rng = SplitMix64::new(seed);
    let mut constraints = Vec::with_capacity(e);
    for v in 0..n {
        let values = (0..d).map(|_| live[rng.index(live.len())]).collect();
        constraints.push(Constraint::new(Scope::unary(v), values, &sizes, &algebra)?);
    }
    for _ in 0..wanted {
        let scope = remaining.remove(rng.index(remaining.len()));
        let len = tuple_count(&scope, &sizes).unwrap_or(usize::MAX);
        if len > crate::csp::MAX_TABLE_ENTRIES {
            return Err(CspError::TableTooLarge(scope).into());
        }
        let values = (0..len).map(|_| rng.index(algebra.size())).collect();
        constraints.push(Constraint::new(scope, values, &sizes, &algebra)?);
    }
    Ok(Problem::new(algebra, sizes, constraints)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::weighted;
    use crate::csp::{is_k_hyperarc_consistent, normalize, Normalized};

    #[test]
    fn candidate_scopes_order() {
        let s: Vec<Vec<usize>> = candidate_scopes(3, 2, 3)
            .iter()
            .map(|s| s.vars().to_vec())
            .collect();
        assert_eq!(s, vec![vec![0, 1], vec![0, 1, 2], vec![0, 2], vec![1, 2]]);
    }

    #[test]
    fn same_seed_same_problem() {
        let w = Arc::new(weighted(8).unwrap());
        let a = gen_random_problem(w.clone(), 4, 3, 7, 3, 42).unwrap();
        let b = gen_random_problem(w.clone(), 4, 3, 7, 3, 42).unwrap();
        let c = gen_random_problem(w, 4, 3, 7, 3, 43).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_eq!(a.constraint_count(), 7);
    }

    #[test]
    fn unary_only_is_consistent() {
        let w = Arc::new(weighted(8).unwrap());
        let p = gen_random_problem(w, 3, 3, 3, 2, 1).unwrap();
        assert_eq!(p.constraint_count(), 3);
        assert!(is_k_hyperarc_consistent(&p, 2).unwrap().is_consistent());
    }

    #[test]
    fn output_is_already_normalized() {
        let w = Arc::new(weighted(8).unwrap());
        for seed in 0..20 {
            let p = gen_random_problem(w.clone(), 4, 3, 7, 3, seed).unwrap();
            assert_eq!(normalize(&p.to_raw()), Normalized::Problem(p));
        }
    }

    #[test]
    fn parameter_errors() {
        let w = Arc::new(weighted(8).unwrap());
        assert!(matches!(
            gen_random_problem(w.clone(), 3, 2, 2, 2, 0),
            Err(GenError::BadParams(_))
        ));
        assert!(matches!(
            gen_random_problem(w.clone(), 3, 2, 4, 4, 0),
            Err(GenError::BadParams(_))
        ));
        assert_eq!(
            gen_random_problem(w, 3, 2, 8, 2, 0).unwrap_err(),
            GenError::NotEnoughScopes {
                wanted: 5,
                available: 3
            }
        );
    }
}

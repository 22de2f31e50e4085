use std::collections::BTreeMap;

use super::{index_tuple, tuple_count, tuple_index, Constraint, Problem, RawProblem, Scope, Var};
use crate::algebra::Elem;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Normalized {
    Problem(Problem),
    /// Every value of `variable` had a `⊥` unary cost.
    Inconsistent {
        variable: Var,
    },
}

impl Normalized {
    pub fn problem(self) -> Option<Problem> {
        match self {
            Normalized::Problem(p) => Some(p),
            Normalized::Inconsistent { .. } => None,
        }
    }
}

/// Brings a problem into the standard shape: one constraint per scope
/// (duplicates merged with `⊙`), a unary constraint on every variable
/// (constant `⊤` if absent), and no domain value whose unary cost is `⊥`.
///
/// Removing domain values re-indexes the remaining values in their original
/// order and re-projects every table.
pub fn normalize(raw: &RawProblem) -> Normalized {
    let algebra = raw.algebra_arc().clone();
    let sizes = raw.domain_sizes.clone();
    let mut merged: BTreeMap<Scope, Vec<Elem>> = BTreeMap::new();
    for c in raw.constraints() {
        match merged.get_mut(c.scope()) {
            Some(acc) => {
                for (a, &v) in acc.iter_mut().zip(c.values()) {
                    *a = algebra.otimes(*a, v);
                }
            }
            None => {
                merged.insert(c.scope().clone(), c.values().to_vec());
            }
        }
    }
    for (v, &d) in sizes.iter().enumerate() {
        merged
            .entry(Scope::unary(v))
            .or_insert_with(|| vec![algebra.top(); d]);
    }

    let kept: Vec<Vec<usize>> = (0..sizes.len())
        .map(|v| {
            merged[&Scope::unary(v)]
                .iter()
                .enumerate()
                .filter(|&(_, &x)| x != algebra.bottom())
                .map(|(a, _)| a)
                .collect()
        })
        .collect();
    if let Some(variable) = kept.iter().position(Vec::is_empty) {
        return Normalized::Inconsistent { variable };
    }

    let new_sizes: Vec<usize> = kept.iter().map(Vec::len).collect();
    let constraints = merged.into_iter().map(|(scope, values)| {
        let values = if new_sizes == sizes {
            values
        } else {
            reproject(&scope, &sizes, &new_sizes, &kept, &values)
        };
        Constraint::new(scope, values, &new_sizes, &algebra).expect("re-projected table is valid")
    });
    let constraints: Vec<Constraint> = constraints.collect();
    Normalized::Problem(
        Problem::new(algebra.clone(), new_sizes, constraints).expect("merged store is valid"),
    )
}

fn reproject(
    scope: &Scope,
    old_sizes: &[usize],
    new_sizes: &[usize],
    kept: &[Vec<usize>],
    values: &[Elem],
) -> Vec<Elem> {
    let count = tuple_count(scope, new_sizes).unwrap_or(0);
    (0..count)
        .map(|idx| {
            let t = index_tuple(scope, new_sizes, idx).expect("index in range");
            let old: Vec<usize> = t
                .iter()
                .zip(scope.vars())
                .map(|(&a, &v)| kept[v][a])
                .collect();
            values[tuple_index(scope, old_sizes, &old).expect("old tuple in range")]
        })
        .collect()
}

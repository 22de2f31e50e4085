use serde::Serialize;

use super::{ConstraintNetwork, CspError, Fiber, Problem, Scope, Var};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Consistency {
    Consistent,
    /// `value` of `variable` has no zero-cost extension through `scope`.
    Violation {
        scope: Scope,
        variable: Var,
        value: usize,
    },
}

impl Consistency {
    pub fn is_consistent(&self) -> bool {
        matches!(self, Consistency::Consistent)
    }
}

/// Checks k-hyperarc consistency over every stored scope `Y` with
/// `2 ≤ |Y| ≤ k`: each `a ∈ D_i` with `C_{i}(a) > ⊥` needs some
/// `t ∈ l(Y ∖ {i})` with `C_{i}(a) = C_{i}(a) ⊙ C_Y(t · a)`.
///
/// Reports the first violation in (scope, variable, value) order.
pub fn is_k_hyperarc_consistent(problem: &Problem, k: usize) -> Result<Consistency, CspError> {
    if k < 2 {
        return Err(CspError::BadK(k));
    }
    let a = problem.algebra();
    let sizes = problem.domain_sizes();
    for c in problem.constraints() {
        let scope = c.scope();
        if !(2..=k).contains(&scope.len()) {
            continue;
        }
        for &var in scope.vars() {
            let fiber = Fiber::new(scope, sizes, var).expect("variable in scope");
            for (value, &u) in problem.unary(var).iter().enumerate() {
                if u == a.bottom() {
                    continue;
                }
                let extends = fiber
                    .indices(value)
                    .any(|idx| a.otimes(u, c.values()[idx]) == u);
                if !extends {
                    return Ok(Consistency::Violation {
                        scope: scope.clone(),
                        variable: var,
                        value,
                    });
                }
            }
        }
    }
    Ok(Consistency::Consistent)
}

impl std::fmt::Display for Consistency {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Consistency::Consistent => write!(f, "OK"),
            Consistency::Violation {
                scope,
                variable,
                value,
            } => write!(
                f,
                "violation: scope {scope}, variable {variable}, value {value}"
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::weighted;
    use crate::csp::Constraint;

    #[test]
    fn bad_k() {
        let w = Arc::new(weighted(2).unwrap());
        let p = Problem::new(w, vec![2], vec![]).unwrap();
        assert_eq!(is_k_hyperarc_consistent(&p, 1), Err(CspError::BadK(1)));
    }

    #[test]
    fn top_tables_are_consistent() {
        let w = Arc::new(weighted(5).unwrap());
        let sizes = vec![2, 3, 2];
        let p = Problem::new(
            w.clone(),
            sizes.clone(),
            vec![
                Constraint::new(Scope::unary(0), vec![3, 1], &sizes, &w).unwrap(),
                Constraint::constant(Scope::new(vec![0, 1, 2]).unwrap(), 0, &sizes, &w).unwrap(),
            ],
        )
        .unwrap();
        assert!(is_k_hyperarc_consistent(&p, 3).unwrap().is_consistent());
    }

    #[test]
    fn scopes_above_k_are_ignored() {
        let w = Arc::new(weighted(5).unwrap());
        let sizes = vec![2, 2, 2];
        let p = Problem::new(
            w.clone(),
            sizes.clone(),
            vec![Constraint::constant(Scope::new(vec![0, 1, 2]).unwrap(), 2, &sizes, &w).unwrap()],
        )
        .unwrap();
        assert!(is_k_hyperarc_consistent(&p, 2).unwrap().is_consistent());
        assert_eq!(
            is_k_hyperarc_consistent(&p, 3).unwrap(),
            Consistency::Violation {
                scope: Scope::new(vec![0, 1, 2]).unwrap(),
                variable: 0,
                value: 0
            }
        );
    }
}

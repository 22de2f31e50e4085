//! Soft CSP instances: variables with finite domains and constraint tables
//! valued in a [`FiniteDRL`].

mod consistency;
mod normalize;
mod tuple;

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{Elem, FiniteDRL};

pub use consistency::{is_k_hyperarc_consistent, Consistency};
pub use normalize::{normalize, Normalized};
pub use tuple::{extend_tuple, index_tuple, project_tuple, tuple_count, tuple_index, Fiber};

/// A variable id.
pub type Var = usize;

/// Largest number of entries a single constraint table may hold.
pub const MAX_TABLE_ENTRIES: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CspError {
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("bad scope: {0}")]
    BadScope(String),
    #[error("constraint on {scope} has {got} values, expected {expected}")]
    TableLength {
        scope: Scope,
        expected: usize,
        got: usize,
    },
    #[error("value {value} is not an element of an algebra of size {size}")]
    ValueOutOfRange { value: Elem, size: usize },
    #[error("more than one constraint on scope {0}")]
    DuplicateScope(Scope),
    #[error("constraint on {0} exceeds {MAX_TABLE_ENTRIES} entries")]
    TableTooLarge(Scope),
    #[error("variable {0} has an empty domain")]
    EmptyDomain(Var),
    #[error("k must be at least 2, got {0}")]
    BadK(usize),
}

/// A strictly increasing list of variables.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
#[serde(transparent)]
pub struct Scope(Vec<Var>);

impl Scope {
    pub fn new(vars: Vec<Var>) -> Result<Self, CspError> {
        if vars.windows(2).any(|w| w[0] >= w[1]) {
            return Err(CspError::BadScope(format!(
                "{vars:?} is not strictly increasing"
            )));
        }
        Ok(Scope(vars))
    }

    pub fn unary(var: Var) -> Self {
        Scope(vec![var])
    }

    pub fn vars(&self) -> &[Var] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, var: Var) -> bool {
        self.0.binary_search(&var).is_ok()
    }

    pub fn position(&self, var: Var) -> Option<usize> {
        self.0.binary_search(&var).ok()
    }

    pub fn without(&self, var: Var) -> Scope {
        Scope(self.0.iter().copied().filter(|&v| v != var).collect())
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// `C_Y`: a dense table of element ids over the tuples of its scope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    scope: Scope,
    values: Vec<Elem>,
}

impl Constraint {
    /// Checks the table length and entries against the domains and algebra.
    pub fn new(
        scope: Scope,
        values: Vec<Elem>,
        domain_sizes: &[usize],
        algebra: &FiniteDRL,
    ) -> Result<Self, CspError> {
        let c = Constraint { scope, values };
        c.validate(domain_sizes, algebra)?;
        Ok(c)
    }

    fn validate(&self, domain_sizes: &[usize], algebra: &FiniteDRL) -> Result<(), CspError> {
        let scope = &self.scope;
        if let Some(&v) = scope.vars().iter().find(|&&v| v >= domain_sizes.len()) {
            return Err(CspError::BadScope(format!(
                "variable {v} does not exist ({} variables)",
                domain_sizes.len()
            )));
        }
        let expected = tuple_count(scope, domain_sizes)
            .filter(|&c| c <= MAX_TABLE_ENTRIES)
            .ok_or_else(|| CspError::TableTooLarge(scope.clone()))?;
        if self.values.len() != expected {
            return Err(CspError::TableLength {
                scope: scope.clone(),
                expected,
                got: self.values.len(),
            });
        }
        if let Some(&value) = self.values.iter().find(|&&v| v >= algebra.size()) {
            return Err(CspError::ValueOutOfRange {
                value,
                size: algebra.size(),
            });
        }
        Ok(())
    }

    /// A constraint with every entry equal to `value`.
    pub fn constant(
        scope: Scope,
        value: Elem,
        domain_sizes: &[usize],
        algebra: &FiniteDRL,
    ) -> Result<Self, CspError> {
        let len = tuple_count(&scope, domain_sizes).unwrap_or(usize::MAX);
        if len > MAX_TABLE_ENTRIES {
            return Err(CspError::TableTooLarge(scope));
        }
        Constraint::new(scope, vec![value; len], domain_sizes, algebra)
    }

    pub fn scope(&self) -> &Scope {
        &self.scope
    }

    pub fn values(&self) -> &[Elem] {
        &self.values
    }

    pub(crate) fn values_mut(&mut self) -> &mut [Elem] {
        &mut self.values
    }

    pub fn arity(&self) -> usize {
        self.scope.len()
    }

    /// `C_Y(t|_Y)` for a full assignment `t` over all variables.
    pub fn value_at(&self, domain_sizes: &[usize], full: &[usize]) -> Elem {
        let idx = self
            .scope
            .vars()
            .iter()
            .fold(0, |acc, &v| acc * domain_sizes[v] + full[v]);
        self.values[idx]
    }
}

/// Anything that assigns a combined value to full assignments.
pub trait ConstraintNetwork {
    fn algebra(&self) -> &FiniteDRL;
    fn domain_sizes(&self) -> &[usize];
    fn constraint_list(&self) -> Box<dyn Iterator<Item = &Constraint> + '_>;

    fn variable_count(&self) -> usize {
        self.domain_sizes().len()
    }

    /// `⊙` of every constraint at its projection of `full`; `⊤` for an empty
    /// store.
    fn combined_value(&self, full: &[usize]) -> Elem {
        let a = self.algebra();
        let sizes = self.domain_sizes();
        self.constraint_list()
            .fold(a.top(), |acc, c| a.otimes(acc, c.value_at(sizes, full)))
    }
}

fn check_domains(domain_sizes: &[usize]) -> Result<(), CspError> {
    match domain_sizes.iter().position(|&d| d == 0) {
        Some(v) => Err(CspError::EmptyDomain(v)),
        None => Ok(()),
    }
}

/// A problem whose store may hold several constraints on the same scope and
/// need not contain every unary constraint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawProblem {
    algebra: Arc<FiniteDRL>,
    domain_sizes: Vec<usize>,
    constraints: Vec<Constraint>,
}

impl RawProblem {
    pub fn new(
        algebra: Arc<FiniteDRL>,
        domain_sizes: Vec<usize>,
        constraints: Vec<Constraint>,
    ) -> Result<Self, CspError> {
        check_domains(&domain_sizes)?;
        for c in &constraints {
            c.validate(&domain_sizes, &algebra)?;
        }
        Ok(RawProblem {
            algebra,
            domain_sizes,
            constraints,
        })
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn algebra_arc(&self) -> &Arc<FiniteDRL> {
        &self.algebra
    }
}

impl ConstraintNetwork for RawProblem {
    fn algebra(&self) -> &FiniteDRL {
        &self.algebra
    }

    fn domain_sizes(&self) -> &[usize] {
        &self.domain_sizes
    }

    fn constraint_list(&self) -> Box<dyn Iterator<Item = &Constraint> + '_> {
        Box::new(self.constraints.iter())
    }
}

/// A problem with at most one constraint per scope and a unary constraint on
/// every variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Problem {
    algebra: Arc<FiniteDRL>,
    domain_sizes: Vec<usize>,
    constraints: BTreeMap<Scope, Constraint>,
}

impl Problem {
    /// Builds a scope-keyed problem. Duplicate scopes are rejected; missing
    /// unary constraints are added as constant `⊤`.
    pub fn new(
        algebra: Arc<FiniteDRL>,
        domain_sizes: Vec<usize>,
        constraints: impl IntoIterator<Item = Constraint>,
    ) -> Result<Self, CspError> {
        check_domains(&domain_sizes)?;
        let mut store = BTreeMap::new();
        for c in constraints {
            c.validate(&domain_sizes, &algebra)?;
            if store.contains_key(&c.scope) {
                return Err(CspError::DuplicateScope(c.scope));
            }
            store.insert(c.scope.clone(), c);
        }
        for v in 0..domain_sizes.len() {
            if let Entry::Vacant(slot) = store.entry(Scope::unary(v)) {
                let s = slot.key().clone();
                slot.insert(Constraint::constant(
                    s,
                    algebra.top(),
                    &domain_sizes,
                    &algebra,
                )?);
            }
        }
        Ok(Problem {
            algebra,
            domain_sizes,
            constraints: store,
        })
    }

    pub fn algebra_arc(&self) -> &Arc<FiniteDRL> {
        &self.algebra
    }

    /// Stored constraints in canonical scope order.
    pub fn constraints(&self) -> impl Iterator<Item = &Constraint> {
        self.constraints.values()
    }

    pub fn constraint(&self, scope: &Scope) -> Option<&Constraint> {
        self.constraints.get(scope)
    }

    pub(crate) fn constraint_mut(&mut self, scope: &Scope) -> Option<&mut Constraint> {
        self.constraints.get_mut(scope)
    }

    pub fn constraint_count(&self) -> usize {
        self.constraints.len()
    }

    /// `C_{i}` as a slice indexed by domain value.
    pub fn unary(&self, var: Var) -> &[Elem] {
        self.constraints[&Scope::unary(var)].values()
    }

    pub fn max_domain_size(&self) -> usize {
        self.domain_sizes.iter().copied().max().unwrap_or(0)
    }

    pub fn to_raw(&self) -> RawProblem {
        RawProblem {
            algebra: self.algebra.clone(),
            domain_sizes: self.domain_sizes.clone(),
            constraints: self.constraints.values().cloned().collect(),
        }
    }
}

impl ConstraintNetwork for Problem {
    fn algebra(&self) -> &FiniteDRL {
        &self.algebra
    }

    fn domain_sizes(&self) -> &[usize] {
        &self.domain_sizes
    }

    fn constraint_list(&self) -> Box<dyn Iterator<Item = &Constraint> + '_> {
        Box::new(self.constraints.values())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::weighted;

    #[test]
    fn scope_must_increase() {
        assert!(Scope::new(vec![2, 1]).is_err());
        assert!(Scope::new(vec![1, 1]).is_err());
        assert_eq!(Scope::new(vec![0, 3]).unwrap().to_string(), "{0,3}");
    }

    #[test]
    fn constraint_validation() {
        let w = weighted(4).unwrap();
        let sizes = [2, 3];
        let s = Scope::new(vec![0, 1]).unwrap();
        assert!(matches!(
            Constraint::new(s.clone(), vec![0; 5], &sizes, &w),
            Err(CspError::TableLength {
                expected: 6,
                got: 5,
                ..
            })
        ));
        assert!(matches!(
            Constraint::new(s.clone(), vec![5; 6], &sizes, &w),
            Err(CspError::ValueOutOfRange { value: 5, size: 5 })
        ));
        assert!(matches!(
            Constraint::new(Scope::unary(2), vec![0; 2], &sizes, &w),
            Err(CspError::BadScope(_))
        ));
    }

    #[test]
    fn empty_store_combines_to_top() {
        let w = Arc::new(weighted(4).unwrap());
        let raw = RawProblem::new(w, vec![2, 2], vec![]).unwrap();
        assert_eq!(raw.combined_value(&[1, 0]), 0);
    }

    #[test]
    fn combined_value_saturating_fold() {
        let w = Arc::new(weighted(10).unwrap());
        let sizes = vec![2, 2];
        let cs = vec![
            Constraint::new(Scope::unary(0), vec![0, 9], &sizes, &w).unwrap(),
            Constraint::new(Scope::unary(1), vec![1, 9], &sizes, &w).unwrap(),
            Constraint::new(
                Scope::new(vec![0, 1]).unwrap(),
                vec![3, 9, 9, 9],
                &sizes,
                &w,
            )
            .unwrap(),
        ];
        let p = Problem::new(w, sizes, cs).unwrap();
        assert_eq!(p.combined_value(&[0, 0]), 4);
        // 9 + 1 + 9 saturates at ⊥ = 10
        assert_eq!(p.combined_value(&[1, 0]), 10);
    }

    #[test]
    fn bottom_entry_annihilates() {
        let w = Arc::new(weighted(4).unwrap());
        let sizes = vec![2];
        let p = Problem::new(
            w.clone(),
            sizes.clone(),
            vec![Constraint::new(Scope::unary(0), vec![4, 0], &sizes, &w).unwrap()],
        )
        .unwrap();
        assert_eq!(p.combined_value(&[0]), w.bottom());
    }

    #[test]
    fn problem_fills_unaries_and_rejects_duplicates() {
        let w = Arc::new(weighted(4).unwrap());
        let sizes = vec![2, 3];
        let p = Problem::new(w.clone(), sizes.clone(), vec![]).unwrap();
        assert_eq!(p.constraint_count(), 2);
        assert_eq!(p.unary(1), &[0, 0, 0]);
        let c = Constraint::new(Scope::unary(0), vec![1, 2], &sizes, &w).unwrap();
        assert!(matches!(
            Problem::new(w, sizes, vec![c.clone(), c]),
            Err(CspError::DuplicateScope(_))
        ));
    }
}

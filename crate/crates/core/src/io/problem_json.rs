use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{load_algebra, to_canonical, AlgebraFile, FormatError};
use crate::algebra::{Elem, FiniteDRL};
use crate::csp::{
    normalize, Constraint, ConstraintNetwork, Normalized, Problem, RawProblem, Scope,
};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum AlgebraSource {
    /// Path to an algebra file, relative to the problem file's directory.
    Path(String),
    Inline(AlgebraFile),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConstraintFile {
    scope: Vec<usize>,
    values: Vec<Elem>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProblemFile {
    algebra: AlgebraSource,
    domains: Vec<usize>,
    constraints: Vec<ConstraintFile>,
}

fn resolve_algebra(
    source: AlgebraSource,
    base_dir: Option<&Path>,
) -> Result<FiniteDRL, FormatError> {
    match source {
        AlgebraSource::Inline(file) => {
            let parts = file.into_algebra_unchecked()?.to_parts();
            Ok(FiniteDRL::new(parts)?)
        }
        AlgebraSource::Path(p) => {
            let path = match base_dir {
                Some(dir) => dir.join(&p),
                None => p.clone().into(),
            };
            let text = std::fs::read_to_string(&path).map_err(|source| FormatError::Io {
                path: path.display().to_string(),
                source,
            })?;
            load_algebra(&text)
        }
    }
}

/// Parses a problem without normalizing it: duplicate scopes are kept and
/// missing unary constraints are not added.
pub fn parse_raw_problem(text: &str, base_dir: Option<&Path>) -> Result<RawProblem, FormatError> {
    let file: ProblemFile = serde_json::from_str(text)?;
    let algebra = Arc::new(resolve_algebra(file.algebra, base_dir)?);
    let constraints = file
        .constraints
        .into_iter()
        .map(|c| Constraint::new(Scope::new(c.scope)?, c.values, &file.domains, &algebra))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RawProblem::new(algebra, file.domains, constraints)?)
}

/// Parses and normalizes a problem.
pub fn load_problem(text: &str, base_dir: Option<&Path>) -> Result<Normalized, FormatError> {
    Ok(normalize(&parse_raw_problem(text, base_dir)?))
}

fn save_network<'a>(
    algebra: &FiniteDRL,
    domains: &[usize],
    constraints: impl Iterator<Item = &'a Constraint>,
) -> String {
    to_canonical(&ProblemFile {
        algebra: AlgebraSource::Inline(AlgebraFile::from_algebra(algebra)),
        domains: domains.to_vec(),
        constraints: constraints
            .map(|c| ConstraintFile {
                scope: c.scope().vars().to_vec(),
                values: c.values().to_vec(),
            })
            .collect(),
    })
}

/// Writes a problem with its algebra inline, constraints in scope order.
pub fn save_problem(problem: &Problem) -> String {
    save_network(
        problem.algebra(),
        problem.domain_sizes(),
        problem.constraints(),
    )
}

pub fn save_raw_problem(problem: &RawProblem) -> String {
    save_network(
        problem.algebra(),
        problem.domain_sizes(),
        problem.constraints().iter(),
    )
}

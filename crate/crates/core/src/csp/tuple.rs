//! Mixed-radix tuple indexing.
//!
//! A tuple over scope `Y = (y_0 < y_1 < …)` is stored at
//! `Σ_j t[j] · Π_{l>j} |D_{y_l}|`: row-major, last scope variable fastest.

use super::{CspError, Scope, Var};

fn radices<'a>(scope: &'a Scope, domain_sizes: &'a [usize]) -> impl Iterator<Item = usize> + 'a {
    scope.vars().iter().map(|&v| domain_sizes[v])
}

/// Number of tuples over `scope`, or `None` on overflow.
pub fn tuple_count(scope: &Scope, domain_sizes: &[usize]) -> Option<usize> {
    radices(scope, domain_sizes).try_fold(1usize, |acc, d| acc.checked_mul(d))
}

pub fn tuple_index(
    scope: &Scope,
    domain_sizes: &[usize],
    tuple: &[usize],
) -> Result<usize, CspError> {
    if tuple.len() != scope.len() {
        return Err(CspError::OutOfRange(format!(
            "tuple has {} entries for a scope of arity {}",
            tuple.len(),
            scope.len()
        )));
    }
    radices(scope, domain_sizes)
        .zip(tuple)
        .zip(scope.vars())
        .try_fold(0usize, |acc, ((d, &a), &v)| {
            if a < d {
                Ok(acc * d + a)
            } else {
                Err(CspError::OutOfRange(format!(
                    "value {a} for variable {v} with domain size {d}"
                )))
            }
        })
}

pub fn index_tuple(
    scope: &Scope,
    domain_sizes: &[usize],
    index: usize,
) -> Result<Vec<usize>, CspError> {
    let count = tuple_count(scope, domain_sizes).unwrap_or(usize::MAX);
    if index >= count {
        return Err(CspError::OutOfRange(format!(
            "index {index} for a table of {count} tuples"
        )));
    }
    let mut rest = index;
    let mut out = vec![0; scope.len()];
    for (slot, d) in out
        .iter_mut()
        .zip(radices(scope, domain_sizes).collect::<Vec<_>>())
        .rev()
    {
        *slot = rest % d;
        rest /= d;
    }
    Ok(out)
}

/// `t|_Z`: restricts a tuple over `scope` to the variables of `sub`, which
/// must be a subset of `scope`.
pub fn project_tuple(scope: &Scope, tuple: &[usize], sub: &Scope) -> Vec<usize> {
    sub.vars()
        .iter()
        .map(|v| tuple[scope.position(*v).expect("sub-scope variable")])
        .collect()
}

/// `t · a`: inserts value `a` for variable `var` into a tuple over
/// `scope ∖ {var}`, giving a tuple over `scope`.
pub fn extend_tuple(scope: &Scope, var: Var, rest: &[usize], a: usize) -> Vec<usize> {
    let pos = scope.position(var).expect("variable in scope");
    let mut out = Vec::with_capacity(rest.len() + 1);
    out.extend_from_slice(&rest[..pos]);
    out.push(a);
    out.extend_from_slice(&rest[pos..]);
    out
}

/// Table positions of `{ t · a | t ∈ l(Y ∖ {i}) }` for a fixed scope and
/// variable, enumerated in canonical order of `t`.
#[derive(Debug, Clone, Copy)]
pub struct Fiber {
    outer: usize,
    radix: usize,
    stride: usize,
}

impl Fiber {
    pub fn new(scope: &Scope, domain_sizes: &[usize], var: Var) -> Option<Self> {
        let pos = scope.position(var)?;
        let sizes: Vec<usize> = radices(scope, domain_sizes).collect();
        Some(Fiber {
            outer: sizes[..pos].iter().product(),
            radix: sizes[pos],
            stride: sizes[pos + 1..].iter().product(),
        })
    }

    /// `|l(Y ∖ {i})|`.
    pub fn len(&self) -> usize {
        self.outer * self.stride
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn indices(&self, a: usize) -> impl Iterator<Item = usize> {
        let Fiber {
            outer,
            radix,
            stride,
        } = *self;
        (0..outer).flat_map(move |o| {
            let base = o * radix * stride + a * stride;
            base..base + stride
        })
    }
}

//! Finite divisible residuated lattices given by explicit operation tables.
//!
//! Elements of an algebra of size `n` are the dense ids `0..n`. Every
//! operation is stored as a full `n × n` table, which keeps exhaustive
//! axiom checking simple and bit-exact.

mod axioms;
mod builtin;
mod classify;
mod lattice;
mod residuum;

use std::fmt;
use std::ops::Range;

use thiserror::Error;

pub use axioms::{check_axioms, Axiom, AxiomEntry, AxiomReport, Profile};
pub use builtin::{
    boolean, direct_product, expand_cis, godel_chain, heyting_from_lattice, lukasiewicz_chain,
    make_builtin, weighted, Builtin, CisReduct, DEFAULT_CARRIER_CAP,
};
pub use classify::{classify, Variety, VarietyFlags};
pub use lattice::{derive_lattice, distributive_lattices, is_distributive, Lattice};
pub use residuum::{residuum_from_tables, sup_residuum};

/// An element id.
pub type Elem = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("relation is not a partial order at ({0}, {1}, {2})")]
    NotAPartialOrder(Elem, Elem, Elem),
    #[error("elements {0} and {1} have no greatest lower bound or no least upper bound")]
    NotALattice(Elem, Elem),
    #[error("order has no greatest or no least element")]
    NotBounded,
    #[error("derived residuum violates residuation at ({0}, {1}, {2})")]
    ResiduationFails(Elem, Elem, Elem),
    #[error("lattice is not distributive at ({0}, {1}, {2})")]
    NotDistributive(Elem, Elem, Elem),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("carrier of size {size} exceeds the cap of {cap}")]
    SizeOverflow { size: usize, cap: usize },
    #[error("input is not a commutative idempotent semiring: {axiom} fails at {counterexample:?}")]
    NotACis {
        axiom: Axiom,
        counterexample: [Elem; 3],
    },
    #[error("malformed tables: {0}")]
    Malformed(String),
    #[error("axiom check failed:\n{0}")]
    AxiomViolation(AxiomReport),
}

/// A square table of element ids.
#[derive(Clone, PartialEq, Eq)]
pub struct Table {
    size: usize,
    cells: Vec<u32>,
}

impl Table {
    pub fn from_fn(size: usize, mut f: impl FnMut(Elem, Elem) -> Elem) -> Self {
        let mut cells = Vec::with_capacity(size * size);
        for x in 0..size {
            for y in 0..size {
                cells.push(f(x, y) as u32);
            }
        }
        Table { size, cells }
    }

    /// Builds a table from rows, checking squareness and that all entries are
    /// valid ids.
    pub fn from_rows(rows: &[Vec<Elem>]) -> Result<Self, AlgebraError> {
        let size = rows.len();
        let mut cells = Vec::with_capacity(size * size);
        for (x, row) in rows.iter().enumerate() {
            if row.len() != size {
                return Err(AlgebraError::Malformed(format!(
                    "row {x} has {} entries, expected {size}",
                    row.len()
                )));
            }
            for (y, &v) in row.iter().enumerate() {
                if v >= size {
                    return Err(AlgebraError::Malformed(format!(
                        "entry ({x}, {y}) = {v} is not an element id"
                    )));
                }
                cells.push(v as u32);
            }
        }
        Ok(Table { size, cells })
    }

    #[inline]
    pub fn get(&self, x: Elem, y: Elem) -> Elem {
        self.cells[x * self.size + y] as Elem
    }

    #[inline]
    pub fn set(&mut self, x: Elem, y: Elem, v: Elem) {
        assert!(v < self.size, "entry {v} is not an element id");
        self.cells[x * self.size + y] = v as u32;
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn rows(&self) -> Vec<Vec<Elem>> {
        self.cells
            .chunks(self.size.max(1))
            .take(self.size)
            .map(|r| r.iter().map(|&v| v as Elem).collect())
            .collect()
    }
}

impl fmt::Debug for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

/// A square boolean relation, read as `x ≤ y`.
#[derive(Clone, PartialEq, Eq)]
pub struct Order {
    size: usize,
    cells: Vec<bool>,
}

impl Order {
    pub fn from_fn(size: usize, mut f: impl FnMut(Elem, Elem) -> bool) -> Self {
        let mut cells = Vec::with_capacity(size * size);
        for x in 0..size {
            for y in 0..size {
                cells.push(f(x, y));
            }
        }
        Order { size, cells }
    }

    pub fn from_rows(rows: &[Vec<bool>]) -> Result<Self, AlgebraError> {
        let size = rows.len();
        if let Some((x, row)) = rows.iter().enumerate().find(|(_, r)| r.len() != size) {
            return Err(AlgebraError::Malformed(format!(
                "order row {x} has {} entries, expected {size}",
                row.len()
            )));
        }
        Ok(Order {
            size,
            cells: rows.concat(),
        })
    }

    /// The total order `0 < 1 < … < size-1`.
    pub fn chain(size: usize) -> Self {
        Order::from_fn(size, |x, y| x <= y)
    }

    #[inline]
    pub fn leq(&self, x: Elem, y: Elem) -> bool {
        self.cells[x * self.size + y]
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn rows(&self) -> Vec<Vec<bool>> {
        self.cells
            .chunks(self.size.max(1))
            .take(self.size)
            .map(<[bool]>::to_vec)
            .collect()
    }

    /// Checks reflexivity, antisymmetry and transitivity. Returns the
    /// lexicographically least offending triple on failure.
    pub fn check_partial_order(&self) -> Result<(), AlgebraError> {
        let n = self.size;
        for x in 0..n {
            if !self.leq(x, x) {
                return Err(AlgebraError::NotAPartialOrder(x, x, x));
            }
        }
        for x in 0..n {
            for y in 0..n {
                if x != y && self.leq(x, y) && self.leq(y, x) {
                    return Err(AlgebraError::NotAPartialOrder(x, y, 0));
                }
                if !self.leq(x, y) {
                    continue;
                }
                for z in 0..n {
                    if self.leq(y, z) && !self.leq(x, z) {
                        return Err(AlgebraError::NotAPartialOrder(x, y, z));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_total(&self) -> bool {
        (0..self.size).all(|x| (0..self.size).all(|y| self.leq(x, y) || self.leq(y, x)))
    }
}

impl fmt::Debug for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(
                self.rows()
                    .into_iter()
                    .map(|r| r.into_iter().map(u8::from).collect::<Vec<_>>()),
            )
            .finish()
    }
}

/// The raw pieces of an algebra, before any axiom is checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DrlParts {
    pub name: String,
    pub leq: Order,
    pub meet: Table,
    pub join: Table,
    pub otimes: Table,
    pub residuum: Table,
    pub top: Elem,
    pub bottom: Elem,
}

/// A finite commutative bounded divisible residuated lattice.
///
/// Values built through [`FiniteDRL::new`] have passed the full
/// [`Profile::Drl`] check. [`FiniteDRL::new_unchecked`] only verifies that the
/// tables are well formed, and exists so that broken tables can be inspected
/// with [`check_axioms`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteDRL {
    name: String,
    size: usize,
    leq: Order,
    meet: Table,
    join: Table,
    otimes: Table,
    residuum: Table,
    top: Elem,
    bottom: Elem,
}

impl FiniteDRL {
    pub fn new(parts: DrlParts) -> Result<Self, AlgebraError> {
        let algebra = Self::new_unchecked(parts)?;
        let report = check_axioms(&algebra, Profile::Drl);
        if report.all_passed() {
            Ok(algebra)
        } else {
            Err(AlgebraError::AxiomViolation(report))
        }
    }

    pub fn new_unchecked(parts: DrlParts) -> Result<Self, AlgebraError> {
        let size = parts.leq.size();
        if size == 0 {
            return Err(AlgebraError::Malformed("empty carrier".into()));
        }
        for (label, table) in [
            ("meet", &parts.meet),
            ("join", &parts.join),
            ("otimes", &parts.otimes),
            ("residuum", &parts.residuum),
        ] {
            if table.size() != size {
                return Err(AlgebraError::Malformed(format!(
                    "{label} table has size {}, expected {size}",
                    table.size()
                )));
            }
        }
        if parts.top >= size || parts.bottom >= size {
            return Err(AlgebraError::Malformed(
                "top or bottom is not an element id".into(),
            ));
        }
        Ok(FiniteDRL {
            name: parts.name,
            size,
            leq: parts.leq,
            meet: parts.meet,
            join: parts.join,
            otimes: parts.otimes,
            residuum: parts.residuum,
            top: parts.top,
            bottom: parts.bottom,
        })
    }

    pub fn to_parts(&self) -> DrlParts {
        DrlParts {
            name: self.name.clone(),
            leq: self.leq.clone(),
            meet: self.meet.clone(),
            join: self.join.clone(),
            otimes: self.otimes.clone(),
            residuum: self.residuum.clone(),
            top: self.top,
            bottom: self.bottom,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn elements(&self) -> Range<Elem> {
        0..self.size
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    #[inline]
    pub fn leq(&self, x: Elem, y: Elem) -> bool {
        self.leq.leq(x, y)
    }

    #[inline]
    pub fn lt(&self, x: Elem, y: Elem) -> bool {
        x != y && self.leq.leq(x, y)
    }

    #[inline]
    pub fn meet(&self, x: Elem, y: Elem) -> Elem {
        self.meet.get(x, y)
    }

    #[inline]
    pub fn join(&self, x: Elem, y: Elem) -> Elem {
        self.join.get(x, y)
    }

    #[inline]
    pub fn otimes(&self, x: Elem, y: Elem) -> Elem {
        self.otimes.get(x, y)
    }

    #[inline]
    pub fn residuum(&self, x: Elem, y: Elem) -> Elem {
        self.residuum.get(x, y)
    }

    /// `¬x = x → ⊥`.
    #[inline]
    pub fn neg(&self, x: Elem) -> Elem {
        self.residuum(x, self.bottom)
    }

    pub fn order(&self) -> &Order {
        &self.leq
    }

    pub fn meet_table(&self) -> &Table {
        &self.meet
    }

    pub fn join_table(&self) -> &Table {
        &self.join
    }

    pub fn otimes_table(&self) -> &Table {
        &self.otimes
    }

    pub fn residuum_table(&self) -> &Table {
        &self.residuum
    }

    pub fn is_chain(&self) -> bool {
        self.leq.is_total()
    }

    /// Compares every table and constant, ignoring the name.
    pub fn same_tables(&self, other: &FiniteDRL) -> bool {
        self.size == other.size
            && self.top == other.top
            && self.bottom == other.bottom
            && self.leq == other.leq
            && self.meet == other.meet
            && self.join == other.join
            && self.otimes == other.otimes
            && self.residuum == other.residuum
    }
}

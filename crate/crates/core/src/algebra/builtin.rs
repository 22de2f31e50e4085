//! Builtin algebra families and constructions on algebras.

use super::axioms::first_failure;
use super::{
    derive_lattice, is_distributive, residuum_from_tables, AlgebraError, Axiom, DrlParts, Elem,
    FiniteDRL, Order, Profile, Table,
};

/// Largest carrier [`direct_product`] builds unless told otherwise.
pub const DEFAULT_CARRIER_CAP: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Builtin {
    Boolean,
    /// `n`-element chain with `⊙ = min`.
    GodelChain(usize),
    /// `n`-element chain with `i ⊙ j = max(0, i + j − (n − 1))`.
    LukasiewiczChain(usize),
    /// Costs `0..=N` ordered in reverse, combined by truncated addition.
    Weighted(usize),
    /// `⊙ = ∧` on a finite distributive lattice.
    HeytingFromLattice(Order),
}

pub fn make_builtin(kind: &Builtin) -> Result<FiniteDRL, AlgebraError> {
    match kind {
        Builtin::Boolean => Ok(boolean()),
        Builtin::GodelChain(n) => godel_chain(*n),
        Builtin::LukasiewiczChain(n) => lukasiewicz_chain(*n),
        Builtin::Weighted(n) => weighted(*n),
        Builtin::HeytingFromLattice(order) => heyting_from_lattice(order),
    }
}

// Derives the lattice and residuum, then runs the full DRL check.
fn assemble(name: String, leq: Order, otimes: Table) -> Result<FiniteDRL, AlgebraError> {
    let lattice = derive_lattice(&leq)?;
    let residuum = residuum_from_tables(&leq, &lattice.join, &otimes)?;
    FiniteDRL::new(DrlParts {
        name,
        leq,
        meet: lattice.meet,
        join: lattice.join,
        otimes,
        residuum,
        top: lattice.top,
        bottom: lattice.bottom,
    })
}

pub fn boolean() -> FiniteDRL {
    godel_chain(2)
        .expect("two-element chain is a DRL")
        .with_name("boolean")
}

pub fn godel_chain(n: usize) -> Result<FiniteDRL, AlgebraError> {
    if n < 2 {
        return Err(AlgebraError::BadParams(format!("chain length {n} < 2")));
    }
    assemble(
        format!("godel({n})"),
        Order::chain(n),
        Table::from_fn(n, |x, y| x.min(y)),
    )
}

pub fn lukasiewicz_chain(n: usize) -> Result<FiniteDRL, AlgebraError> {
    if n < 2 {
        return Err(AlgebraError::BadParams(format!("chain length {n} < 2")));
    }
    assemble(
        format!("lukasiewicz({n})"),
        Order::chain(n),
        Table::from_fn(n, |x, y| (x + y).saturating_sub(n - 1)),
    )
}

/// Id `k` means cost `k`; lower cost is better, so `0` is `⊤` and `max_cost`
/// is `⊥`.
pub fn weighted(max_cost: usize) -> Result<FiniteDRL, AlgebraError> {
    if max_cost < 1 {
        return Err(AlgebraError::BadParams("weighted needs N >= 1".into()));
    }
    let n = max_cost + 1;
    assemble(
        format!("weighted({max_cost})"),
        Order::from_fn(n, |x, y| x >= y),
        Table::from_fn(n, |x, y| (x + y).min(max_cost)),
    )
}

pub fn heyting_from_lattice(leq: &Order) -> Result<FiniteDRL, AlgebraError> {
    let lattice = derive_lattice(leq)?;
    is_distributive(&lattice)?;
    assemble(
        format!("heyting({})", leq.size()),
        leq.clone(),
        lattice.meet,
    )
}

/// Componentwise product. The pair `(x, y)` gets id `x · |B| + y`.
///
/// DRLs form a variety, so the product is a DRL whenever both factors are;
/// the result is not re-checked here (that would be cubic in `|A|·|B|`).
pub fn direct_product(
    left: &FiniteDRL,
    right: &FiniteDRL,
    cap: usize,
) -> Result<FiniteDRL, AlgebraError> {
    let nb = right.size();
    let size =
        left.size()
            .checked_mul(nb)
            .filter(|&s| s <= cap)
            .ok_or(AlgebraError::SizeOverflow {
                size: left.size().saturating_mul(nb),
                cap,
            })?;
    let split = |p: Elem| (p / nb, p % nb);
    let pair = |x: Elem, y: Elem| x * nb + y;
    let lift = |f: fn(&FiniteDRL, Elem, Elem) -> Elem| {
        Table::from_fn(size, |p, q| {
            let ((p1, p2), (q1, q2)) = (split(p), split(q));
            pair(f(left, p1, q1), f(right, p2, q2))
        })
    };
    FiniteDRL::new_unchecked(DrlParts {
        name: format!("{}×{}", left.name(), right.name()),
        leq: Order::from_fn(size, |p, q| {
            let ((p1, p2), (q1, q2)) = (split(p), split(q));
            left.leq(p1, q1) && right.leq(p2, q2)
        }),
        meet: lift(FiniteDRL::meet),
        join: lift(FiniteDRL::join),
        otimes: lift(FiniteDRL::otimes),
        residuum: lift(FiniteDRL::residuum),
        top: pair(left.top(), right.top()),
        bottom: pair(left.bottom(), right.bottom()),
    })
}

/// The `(∨, ⊙, ⊤, ⊥)` reduct of an algebra, or a candidate commutative
/// idempotent semiring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CisReduct {
    pub join: Table,
    pub otimes: Table,
    pub top: Elem,
    pub bottom: Elem,
}

impl CisReduct {
    pub fn of(a: &FiniteDRL) -> Self {
        CisReduct {
            join: a.join_table().clone(),
            otimes: a.otimes_table().clone(),
            top: a.top(),
            bottom: a.bottom(),
        }
    }

    pub fn size(&self) -> usize {
        self.join.size()
    }

    /// First failing semiring axiom, if any.
    pub fn first_violation(&self) -> Option<(Axiom, [Elem; 3])> {
        Profile::CisReduct.axioms().iter().find_map(|&axiom| {
            first_failure(self.size(), axiom.arity(), |t| {
                axiom.holds_reduct(self, t).unwrap_or(true)
            })
            .map(|t| (axiom, t))
        })
    }
}

/// Expands a commutative idempotent semiring to a Heyting algebra with
/// `∧ = ⊙` and the residuum given by the sup formula.
pub fn expand_cis(cis: &CisReduct) -> Result<FiniteDRL, AlgebraError> {
    let n = cis.size();
    if cis.otimes.size() != n || cis.top >= n || cis.bottom >= n {
        return Err(AlgebraError::Malformed("inconsistent reduct sizes".into()));
    }
    if let Some((axiom, counterexample)) = cis.first_violation() {
        return Err(AlgebraError::NotACis {
            axiom,
            counterexample,
        });
    }
    let leq = Order::from_fn(n, |x, y| cis.join.get(x, y) == y);
    let residuum = residuum_from_tables(&leq, &cis.join, &cis.otimes)?;
    FiniteDRL::new(DrlParts {
        name: format!("cis-expansion({n})"),
        leq,
        meet: cis.otimes.clone(),
        join: cis.join.clone(),
        otimes: cis.otimes.clone(),
        residuum,
        top: cis.top,
        bottom: cis.bottom,
    })
}

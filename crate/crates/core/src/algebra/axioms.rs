//! Exhaustive axiom checking over all element pairs and triples.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{CisReduct, Elem, FiniteDRL};

/// Which group of axioms to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Profile {
    /// Bounded lattice, commutative monoid, residuation and divisibility.
    Drl,
    /// Consequences that every DRL satisfies; useful to cross-check a checker.
    Derived,
    /// Commutative idempotent semiring axioms on the `(∨, ⊙, ⊤, ⊥)` reduct.
    CisReduct,
}

impl Profile {
    pub fn axioms(self) -> &'static [Axiom] {
        use Axiom::*;
        match self {
            Profile::Drl => &[
                OrderReflexive,
                OrderAntisymmetric,
                OrderTransitive,
                Bounds,
                MeetIsGlb,
                JoinIsLub,
                MonoidCommutative,
                MonoidAssociative,
                MonoidIdentity,
                Residuation,
                Divisibility,
            ],
            Profile::Derived => &[
                ProductAssociative,
                ProductCommutative,
                ProductTopIdentity,
                ProductBottomAnnihilates,
                ProductMonotone,
                ResiduumTopIffLeq,
                QuotientBelow,
                QuotientCancels,
                ProductDistributesOverJoin,
            ],
            Profile::CisReduct => &[
                JoinCommutative,
                JoinAssociative,
                JoinIdempotent,
                JoinBottomIdentity,
                JoinTopAbsorbs,
                OtimesCommutative,
                OtimesAssociative,
                OtimesIdempotent,
                OtimesTopIdentity,
                OtimesBottomAbsorbs,
                OtimesDistributesOverJoin,
            ],
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Profile::Drl => "drl",
            Profile::Derived => "derived",
            Profile::CisReduct => "cis-reduct",
        })
    }
}

impl FromStr for Profile {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "drl" => Ok(Profile::Drl),
            "derived" => Ok(Profile::Derived),
            "cis-reduct" => Ok(Profile::CisReduct),
            other => Err(format!("unknown profile `{other}`")),
        }
    }
}

/// A single checkable law, quantified over at most three elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    OrderReflexive,
    OrderAntisymmetric,
    OrderTransitive,
    Bounds,
    MeetIsGlb,
    JoinIsLub,
    MonoidCommutative,
    MonoidAssociative,
    MonoidIdentity,
    /// `x ⊙ z ≤ y` iff `z ≤ x → y`
    Residuation,
    /// `x ∧ y = x ⊙ (x → y)`
    Divisibility,

    ProductAssociative,
    ProductCommutative,
    ProductTopIdentity,
    ProductBottomAnnihilates,
    /// `x ≤ y` implies `x ⊙ z ≤ y ⊙ z`, and `x ⊙ x ≤ x`
    ProductMonotone,
    /// `x ≤ y` iff `x → y = ⊤`
    ResiduumTopIffLeq,
    /// `y ≤ x` implies `x ⊙ (x → y) = y`
    QuotientBelow,
    /// `y ≤ z` implies `(x ⊙ z) ⊙ (z → y) = x ⊙ y`
    QuotientCancels,
    /// `x ⊙ (y ∨ z) = (x ⊙ y) ∨ (x ⊙ z)`
    ProductDistributesOverJoin,

    JoinCommutative,
    JoinAssociative,
    JoinIdempotent,
    JoinBottomIdentity,
    JoinTopAbsorbs,
    OtimesCommutative,
    OtimesAssociative,
    OtimesIdempotent,
    OtimesTopIdentity,
    OtimesBottomAbsorbs,
    OtimesDistributesOverJoin,
}

impl Axiom {
    /// Number of quantified variables.
    pub fn arity(self) -> usize {
        use Axiom::*;
        match self {
            OrderReflexive
            | Bounds
            | MonoidIdentity
            | ProductTopIdentity
            | ProductBottomAnnihilates
            | JoinIdempotent
            | JoinBottomIdentity
            | JoinTopAbsorbs
            | OtimesIdempotent
            | OtimesTopIdentity
            | OtimesBottomAbsorbs => 1,
            OrderAntisymmetric | MonoidCommutative | Divisibility | ProductCommutative
            | ResiduumTopIffLeq | QuotientBelow | JoinCommutative | OtimesCommutative => 2,
            _ => 3,
        }
    }

    pub fn label(self) -> &'static str {
        use Axiom::*;
        match self {
            OrderReflexive => "order-reflexive",
            OrderAntisymmetric => "order-antisymmetric",
            OrderTransitive => "order-transitive",
            Bounds => "bounds",
            MeetIsGlb => "meet-is-glb",
            JoinIsLub => "join-is-lub",
            MonoidCommutative => "monoid-commutative",
            MonoidAssociative => "monoid-associative",
            MonoidIdentity => "monoid-identity",
            Residuation => "residuation",
            Divisibility => "divisibility",
            ProductAssociative => "product-associative",
            ProductCommutative => "product-commutative",
            ProductTopIdentity => "product-top-identity",
            ProductBottomAnnihilates => "product-bottom-annihilates",
            ProductMonotone => "product-monotone",
            ResiduumTopIffLeq => "residuum-top-iff-leq",
            QuotientBelow => "quotient-below",
            QuotientCancels => "quotient-cancels",
            ProductDistributesOverJoin => "product-distributes-over-join",
            JoinCommutative => "join-commutative",
            JoinAssociative => "join-associative",
            JoinIdempotent => "join-idempotent",
            JoinBottomIdentity => "join-bottom-identity",
            JoinTopAbsorbs => "join-top-absorbs",
            OtimesCommutative => "otimes-commutative",
            OtimesAssociative => "otimes-associative",
            OtimesIdempotent => "otimes-idempotent",
            OtimesTopIdentity => "otimes-top-identity",
            OtimesBottomAbsorbs => "otimes-bottom-absorbs",
            OtimesDistributesOverJoin => "otimes-distributes-over-join",
        }
    }

    /// Evaluates the law at one point. Unused coordinates are ignored.
    pub fn holds(self, a: &FiniteDRL, [x, y, z]: [Elem; 3]) -> bool {
        use Axiom::*;
        let leq = |p, q| a.leq(p, q);
        let m = |p, q| a.otimes(p, q);
        let r = |p, q| a.residuum(p, q);
        match self {
            OrderReflexive => leq(x, x),
            OrderAntisymmetric => !(leq(x, y) && leq(y, x)) || x == y,
            OrderTransitive => !(leq(x, y) && leq(y, z)) || leq(x, z),
            Bounds => leq(a.bottom(), x) && leq(x, a.top()),
            MeetIsGlb => {
                let g = a.meet(x, y);
                leq(g, x) && leq(g, y) && (!(leq(z, x) && leq(z, y)) || leq(z, g))
            }
            JoinIsLub => {
                let l = a.join(x, y);
                leq(x, l) && leq(y, l) && (!(leq(x, z) && leq(y, z)) || leq(l, z))
            }
            MonoidCommutative | ProductCommutative => m(x, y) == m(y, x),
            MonoidAssociative | ProductAssociative => m(x, m(y, z)) == m(m(x, y), z),
            MonoidIdentity | ProductTopIdentity => m(x, a.top()) == x,
            Residuation => leq(m(x, z), y) == leq(z, r(x, y)),
            Divisibility => a.meet(x, y) == m(x, r(x, y)),
            ProductBottomAnnihilates => m(x, a.bottom()) == a.bottom(),
            ProductMonotone => (!leq(x, y) || leq(m(x, z), m(y, z))) && leq(m(x, x), x),
            ResiduumTopIffLeq => leq(x, y) == (r(x, y) == a.top()),
            QuotientBelow => !leq(y, x) || m(x, r(x, y)) == y,
            QuotientCancels => !leq(y, z) || m(m(x, z), r(z, y)) == m(x, y),
            ProductDistributesOverJoin => m(x, a.join(y, z)) == a.join(m(x, y), m(x, z)),
            _ => self
                .holds_reduct(&CisReduct::of(a), [x, y, z])
                .expect("every remaining axiom is a semiring law"),
        }
    }

    /// Evaluates a semiring law on a `(∨, ⊙, ⊤, ⊥)` reduct. Returns `None`
    /// for laws that need more structure than the reduct carries.
    pub fn holds_reduct(self, c: &CisReduct, [x, y, z]: [Elem; 3]) -> Option<bool> {
        use Axiom::*;
        let j = |p, q| c.join.get(p, q);
        let m = |p, q| c.otimes.get(p, q);
        Some(match self {
            JoinCommutative => j(x, y) == j(y, x),
            JoinAssociative => j(x, j(y, z)) == j(j(x, y), z),
            JoinIdempotent => j(x, x) == x,
            JoinBottomIdentity => j(x, c.bottom) == x,
            JoinTopAbsorbs => j(x, c.top) == c.top,
            OtimesCommutative => m(x, y) == m(y, x),
            OtimesAssociative => m(x, m(y, z)) == m(m(x, y), z),
            OtimesIdempotent => m(x, x) == x,
            OtimesTopIdentity => m(x, c.top) == x,
            OtimesBottomAbsorbs => m(x, c.bottom) == c.bottom,
            OtimesDistributesOverJoin => m(x, j(y, z)) == j(m(x, y), m(x, z)),
            _ => return None,
        })
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomEntry {
    pub axiom: Axiom,
    pub passed: bool,
    /// Lexicographically least failing point, padded with zeros beyond the
    /// axiom's arity.
    pub counterexample: Option<[Elem; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub profile: Profile,
    pub entries: Vec<AxiomEntry>,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomEntry> {
        self.entries.iter().filter(|e| !e.passed)
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "profile {}", self.profile)?;
        for e in &self.entries {
            match e.counterexample {
                None => writeln!(f, "  pass  {}", e.axiom)?,
                Some(t) => writeln!(f, "  FAIL  {} at {:?}", e.axiom, &t[..e.axiom.arity()])?,
            }
        }
        Ok(())
    }
}

/// Finds the least point (in lexicographic order over `0..size`) where `law`
/// is false.
pub(crate) fn first_failure(
    size: usize,
    arity: usize,
    mut law: impl FnMut([Elem; 3]) -> bool,
) -> Option<[Elem; 3]> {
    let ys = if arity >= 2 { size } else { 1 };
    let zs = if arity >= 3 { size } else { 1 };
    for x in 0..size {
        for y in 0..ys {
            for z in 0..zs {
                if !law([x, y, z]) {
                    return Some([x, y, z]);
                }
            }
        }
    }
    None
}

/// Checks every axiom of `profile` exhaustively. Failures become report
/// entries, never errors.
pub fn check_axioms(algebra: &FiniteDRL, profile: Profile) -> AxiomReport {
    let reduct = (profile == Profile::CisReduct).then(|| CisReduct::of(algebra));
    let entries = profile
        .axioms()
        .iter()
        .map(|&axiom| {
            let counterexample = match &reduct {
                Some(c) => first_failure(algebra.size(), axiom.arity(), |t| {
                    axiom.holds_reduct(c, t).unwrap_or(true)
                }),
                None => first_failure(algebra.size(), axiom.arity(), |t| axiom.holds(algebra, t)),
            };
            AxiomEntry {
                axiom,
                passed: counterexample.is_none(),
                counterexample,
            }
        })
        .collect();
    AxiomReport { profile, entries }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{boolean, lukasiewicz_chain, DrlParts, Table};

    #[test]
    fn boolean_passes_every_profile() {
        let b = boolean();
        for p in [Profile::Drl, Profile::Derived, Profile::CisReduct] {
            assert!(check_axioms(&b, p).all_passed(), "{p}");
        }
    }

    #[test]
    fn lukasiewicz_with_min_product_fails_and_replays() {
        let l3 = lukasiewicz_chain(3).unwrap();
        let parts = DrlParts {
            otimes: Table::from_fn(3, |x, y| x.min(y)),
            ..l3.to_parts()
        };
        let broken = FiniteDRL::new_unchecked(parts).unwrap();
        let report = check_axioms(&broken, Profile::Drl);
        assert!(!report.all_passed());
        let failed: Vec<Axiom> = report.failures().map(|e| e.axiom).collect();
        assert!(
            failed.contains(&Axiom::Residuation) || failed.contains(&Axiom::Divisibility),
            "{report}"
        );
        for e in report.failures() {
            assert!(!e.axiom.holds(&broken, e.counterexample.unwrap()));
        }
        // min against the Łukasiewicz residuum: ½ ⊙ ½ = ½ ≰ 0 while ½ ≤ ½ → 0 = ½
        let res = report
            .entries
            .iter()
            .find(|e| e.axiom == Axiom::Residuation)
            .unwrap();
        assert_eq!(res.counterexample, Some([1, 0, 1]));
    }

    #[test]
    fn first_failure_respects_arity() {
        assert_eq!(first_failure(3, 1, |[x, _, _]| x != 2), Some([2, 0, 0]));
        assert_eq!(first_failure(3, 2, |[x, y, _]| x + y < 3), Some([1, 2, 0]));
        assert_eq!(first_failure(3, 3, |_| true), None);
    }
}

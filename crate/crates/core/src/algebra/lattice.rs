use std::collections::BTreeSet;

use super::{AlgebraError, Elem, Order, Table};

/// Bounded lattice operations induced by a partial order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    pub meet: Table,
    pub join: Table,
    pub top: Elem,
    pub bottom: Elem,
}

/// Computes glb/lub tables and the bounds of a finite partial order.
pub fn derive_lattice(leq: &Order) -> Result<Lattice, AlgebraError> {
    leq.check_partial_order()?;
    let n = leq.size();
    let top = (0..n)
        .find(|&t| (0..n).all(|x| leq.leq(x, t)))
        .ok_or(AlgebraError::NotBounded)?;
    let bottom = (0..n)
        .find(|&b| (0..n).all(|x| leq.leq(b, x)))
        .ok_or(AlgebraError::NotBounded)?;

    let mut meet = Table::from_fn(n, |_, _| 0);
    let mut join = Table::from_fn(n, |_, _| 0);
    for x in 0..n {
        for y in 0..n {
            let lower: Vec<Elem> = (0..n).filter(|&z| leq.leq(z, x) && leq.leq(z, y)).collect();
            let glb = lower
                .iter()
                .copied()
                .find(|&m| lower.iter().all(|&l| leq.leq(l, m)))
                .ok_or(AlgebraError::NotALattice(x, y))?;
            let upper: Vec<Elem> = (0..n).filter(|&z| leq.leq(x, z) && leq.leq(y, z)).collect();
            let lub = upper
                .iter()
                .copied()
                .find(|&m| upper.iter().all(|&u| leq.leq(m, u)))
                .ok_or(AlgebraError::NotALattice(x, y))?;
            meet.set(x, y, glb);
            join.set(x, y, lub);
        }
    }
    Ok(Lattice {
        meet,
        join,
        top,
        bottom,
    })
}

/// Returns the least triple violating `x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z)`.
pub fn is_distributive(lattice: &Lattice) -> Result<(), AlgebraError> {
    let n = lattice.meet.size();
    let (m, j) = (&lattice.meet, &lattice.join);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if m.get(x, j.get(y, z)) != j.get(m.get(x, y), m.get(x, z)) {
                    return Err(AlgebraError::NotDistributive(x, y, z));
                }
            }
        }
    }
    Ok(())
}

/// All distributive lattices with `2..=max_size` elements, one per
/// isomorphism class.
///
/// Each representative uses id 0 for the bottom and `size - 1` for the top.
/// The output is sorted by size and then by a canonical encoding, so it is
/// stable across runs. Intended for small sizes (the search is exponential in
/// the number of non-bound elements).
pub fn distributive_lattices(max_size: usize) -> Vec<Order> {
    let mut out = Vec::new();
    for size in 2..=max_size {
        let inner = size - 2;
        let pairs: Vec<(usize, usize)> = (0..inner)
            .flat_map(|i| (0..inner).filter(move |&j| j != i).map(move |j| (i, j)))
            .collect();
        let mut seen = BTreeSet::new();
        let mut found = Vec::new();
        for mask in 0u64..(1u64 << pairs.len()) {
            let below = |i: usize, j: usize| -> bool {
                i == j
                    || pairs
                        .iter()
                        .position(|&p| p == (i, j))
                        .is_some_and(|bit| mask >> bit & 1 == 1)
            };
            let order = Order::from_fn(size, |x, y| {
                if x == y || x == 0 || y == size - 1 {
                    true
                } else if y == 0 || x == size - 1 {
                    false
                } else {
                    below(x - 1, y - 1)
                }
            });
            if order.check_partial_order().is_err() {
                continue;
            }
            let Ok(lattice) = derive_lattice(&order) else {
                continue;
            };
            if is_distributive(&lattice).is_err() {
                continue;
            }
            let code = canonical_code(&order);
            if seen.insert(code.clone()) {
                found.push((code, order));
            }
        }
        found.sort_by(|a, b| a.0.cmp(&b.0));
        out.extend(found.into_iter().map(|(_, o)| o));
    }
    out
}

// Lexicographically least strict-order bit string over all relabellings of the
// non-bound elements.
fn canonical_code(order: &Order) -> Vec<bool> {
    let size = order.size();
    let inner: Vec<usize> = (1..size - 1).collect();
    let mut best: Option<Vec<bool>> = None;
    for perm in permutations(&inner) {
        let code: Vec<bool> = perm
            .iter()
            .flat_map(|&a| perm.iter().map(move |&b| (a, b)))
            .map(|(a, b)| a != b && order.leq(a, b))
            .collect();
        if best.as_ref().is_none_or(|c| code < *c) {
            best = Some(code);
        }
    }
    best.unwrap_or_default()
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &head) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn diamond() -> Order {
        // 0 = ⊥, 1 = a, 2 = b, 3 = ⊤
        Order::from_fn(4, |x, y| x == y || x == 0 || y == 3)
    }

    #[test]
    fn two_element_lattice() {
        let l = derive_lattice(&Order::chain(2)).unwrap();
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(l.meet.get(x, y), x.min(y));
                assert_eq!(l.join.get(x, y), x.max(y));
            }
        }
        assert_eq!((l.top, l.bottom), (1, 0));
    }

    #[test]
    fn diamond_meet_and_join() {
        let l = derive_lattice(&diamond()).unwrap();
        assert_eq!(l.meet.get(1, 2), 0);
        assert_eq!(l.join.get(1, 2), 3);
        assert!(is_distributive(&l).is_ok());
    }

    #[test]
    fn two_maximal_elements_is_unbounded() {
        // 0 below both 1 and 2, which are incomparable
        let o = Order::from_fn(3, |x, y| x == y || x == 0);
        assert_eq!(derive_lattice(&o), Err(AlgebraError::NotBounded));
    }

    #[test]
    fn bounded_non_lattice_is_rejected() {
        // ⊥ < a, b < c, d < ⊤ with both a, b below both c, d: a ∨ b is ambiguous
        let o = Order::from_fn(6, |x, y| {
            x == y || x == 0 || y == 5 || (matches!(x, 1 | 2) && matches!(y, 3 | 4))
        });
        assert_eq!(derive_lattice(&o), Err(AlgebraError::NotALattice(1, 2)));
    }

    #[test]
    fn pentagon_and_m3_are_not_distributive() {
        // N5: ⊥ < a < b < ⊤, ⊥ < c < ⊤
        let n5 = Order::from_fn(5, |x, y| x == y || x == 0 || y == 4 || (x == 1 && y == 2));
        assert!(is_distributive(&derive_lattice(&n5).unwrap()).is_err());
        let m3 = Order::from_fn(5, |x, y| x == y || x == 0 || y == 4);
        assert!(is_distributive(&derive_lattice(&m3).unwrap()).is_err());
    }

    #[test]
    fn counts_match_known_sequence() {
        // distributive lattices up to isomorphism: 1, 1, 2, 3, 5 for sizes 2..=6
        let counts: Vec<usize> = (2..=6)
            .map(|n| {
                distributive_lattices(6)
                    .iter()
                    .filter(|o| o.size() == n)
                    .count()
            })
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5]);
    }
}

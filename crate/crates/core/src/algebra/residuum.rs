use super::{AlgebraError, Elem, Order, Table};

/// `x → y = ⋁{ z | x ⊙ z ≤ y }`, with no validation of the result.
pub fn sup_residuum(leq: &Order, join: &Table, otimes: &Table, bottom: Elem) -> Table {
    let n = leq.size();
    Table::from_fn(n, |x, y| {
        (0..n)
            .filter(|&z| leq.leq(otimes.get(x, z), y))
            .fold(bottom, |acc, z| join.get(acc, z))
    })
}

/// Derives the residuum of `otimes` and verifies residuation
/// (`x ⊙ z ≤ y` iff `z ≤ x → y`) over every triple.
///
/// A failure means the monoid does not distribute over joins (or is not
/// monotone), so no residuum exists.
pub fn residuum_from_tables(
    leq: &Order,
    join: &Table,
    otimes: &Table,
) -> Result<Table, AlgebraError> {
    let n = leq.size();
    let bottom = (0..n)
        .find(|&b| (0..n).all(|x| leq.leq(b, x)))
        .ok_or(AlgebraError::NotBounded)?;
    let residuum = sup_residuum(leq, join, otimes, bottom);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if leq.leq(otimes.get(x, z), y) != leq.leq(z, residuum.get(x, y)) {
                    return Err(AlgebraError::ResiduationFails(x, y, z));
                }
            }
        }
    }
    Ok(residuum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::derive_lattice;

    fn chain_residuum(n: usize, otimes: impl Fn(usize, usize) -> usize) -> Table {
        let leq = Order::chain(n);
        let lat = derive_lattice(&leq).unwrap();
        residuum_from_tables(&leq, &lat.join, &Table::from_fn(n, otimes)).unwrap()
    }

    #[test]
    fn boolean_bottom_implies_everything() {
        let r = chain_residuum(2, |x, y| x.min(y));
        assert_eq!(r.get(0, 0), 1);
        assert_eq!(r.get(0, 1), 1);
    }

    #[test]
    fn lukasiewicz_three_half_implies_zero() {
        // {0, ½, 1} as ids 0, 1, 2; x ⊙ y = max(0, x + y − 2)
        let r = chain_residuum(3, |x, y| (x + y).saturating_sub(2));
        assert_eq!(r.get(1, 0), 1);
    }

    #[test]
    fn godel_three_values() {
        let r = chain_residuum(3, |x, y| x.min(y));
        assert_eq!(r.get(2, 1), 1);
        assert_eq!(r.get(1, 2), 2);
    }

    #[test]
    fn non_distributing_monoid_fails() {
        // diamond with a ⊙ b = ⊤-ish nonsense: not monotone
        let leq = Order::from_fn(4, |x, y| x == y || x == 0 || y == 3);
        let lat = derive_lattice(&leq).unwrap();
        let otimes = Table::from_fn(4, |x, y| match (x, y) {
            (0, _) | (_, 0) => 0,
            (3, v) | (v, 3) => v,
            (1, 2) | (2, 1) => 3,
            (v, _) => v,
        });
        assert!(matches!(
            residuum_from_tables(&leq, &lat.join, &otimes),
            Err(AlgebraError::ResiduationFails(..))
        ));
    }
}

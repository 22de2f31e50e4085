//! Shared workloads for the benchmarks in `benches/`.

use std::sync::Arc;

use softcsp_core::algebra::lukasiewicz_chain;
use softcsp_core::io::gen_random_problem;
use softcsp_core::Problem;

/// Variables, constraints and consistency level of the scaling ladder.
pub const LADDER: (usize, usize, usize) = (4, 10, 3);

/// Seeded problems with domain size `d` at the ladder's fixed `n`, `e`, `k`.
pub fn ladder_instances(d: usize, count: u64) -> Vec<Problem> {
    let (n, e, k) = LADDER;
    let alg = Arc::new(lukasiewicz_chain(16).expect("valid chain"));
    (0..count)
        .map(|s| gen_random_problem(alg.clone(), n, d, e, k, 1000 + s).expect("valid parameters"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ladder_shapes() {
        let ps = ladder_instances(3, 2);
        assert_eq!(ps.len(), 2);
        assert!(ps
            .iter()
            .all(|p| p.constraint_count() == LADDER.1 && p.max_domain_size() == 3));
    }
}

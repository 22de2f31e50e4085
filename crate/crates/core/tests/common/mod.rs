#![allow(dead_code)]

use std::sync::Arc;

use softcsp_core::algebra::{
    boolean, direct_product, distributive_lattices, godel_chain, heyting_from_lattice,
    lukasiewicz_chain, weighted, FiniteDRL, DEFAULT_CARRIER_CAP,
};
use softcsp_core::csp::{Constraint, RawProblem, Scope};
use softcsp_core::rng::SplitMix64;

pub fn chains() -> Vec<FiniteDRL> {
    let mut out = vec![boolean()];
    for n in 2..=5 {
        out.push(godel_chain(n).unwrap());
        out.push(lukasiewicz_chain(n).unwrap());
    }
    for n in 1..=6 {
        out.push(weighted(n).unwrap());
    }
    out
}

pub fn non_chains() -> Vec<FiniteDRL> {
    let mut out: Vec<FiniteDRL> = distributive_lattices(6)
        .iter()
        .map(|o| heyting_from_lattice(o).unwrap())
        .filter(|a| !a.is_chain())
        .collect();
    let small = [
        boolean(),
        godel_chain(3).unwrap(),
        lukasiewicz_chain(3).unwrap(),
    ];
    for l in &small {
        for r in &small {
            out.push(direct_product(l, r, DEFAULT_CARRIER_CAP).unwrap());
        }
    }
    out
}

pub fn all_algebras() -> Vec<FiniteDRL> {
    let mut out = chains();
    out.extend(non_chains());
    out
}

/// Every strictly increasing subset of `0..n` of size `1..=max`.
pub fn scopes(n: usize, max: usize) -> Vec<Vec<usize>> {
    (1u32..(1 << n))
        .map(|mask| (0..n).filter(|&v| mask & (1 << v) != 0).collect::<Vec<_>>())
        .filter(|s| s.len() <= max)
        .collect()
}

/// A raw store with repeated scopes, some unary constraints left out, and
/// values drawn from the whole carrier (or above `⊥` when `avoid_bottom`).
pub fn random_raw(
    algebra: &Arc<FiniteDRL>,
    sizes: &[usize],
    count: usize,
    seed: u64,
    avoid_bottom: bool,
) -> RawProblem {
    let mut rng = SplitMix64::new(seed);
    let pool = scopes(sizes.len(), 3);
    let values: Vec<usize> = algebra
        .elements()
        .filter(|&x| !avoid_bottom || x != algebra.bottom())
        .collect();
    let constraints = (0..count)
        .map(|_| {
            let vars = pool[rng.index(pool.len())].clone();
            let len: usize = vars.iter().map(|&v| sizes[v]).product();
            let table = (0..len).map(|_| values[rng.index(values.len())]).collect();
            Constraint::new(Scope::new(vars).unwrap(), table, sizes, algebra).unwrap()
        })
        .collect();
    RawProblem::new(algebra.clone(), sizes.to_vec(), constraints).unwrap()
}

/// Odometer over full assignments, last variable fastest.
pub fn assignments(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &d in sizes {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..d).map(move |a| {
                    let mut t = t.clone();
                    t.push(a);
                    t
                })
            })
            .collect();
    }
    out
}

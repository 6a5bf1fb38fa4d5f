#![allow(dead_code)]

use cnf_hierarchy::{Clause, ClauseSet};
use proptest::prelude::*;
use rand::Rng;

pub fn cs(c: &[&[i32]]) -> ClauseSet {
    ClauseSet::from_lits(c).unwrap()
}

/// Unsatisfiable, hd 3 and whd 2.
pub fn diffw2u2() -> ClauseSet {
    cs(&[
        &[2, 3, 4],
        &[-4, 2],
        &[-2, 1, 5],
        &[-5, -2],
        &[-3, 1, 6],
        &[-6, -3],
        &[7, 8, 9],
        &[-9, 7],
        &[-7, -1, 10],
        &[-10, -7],
        &[-8, -1, 11],
        &[-11, -8],
    ])
}

/// The six clauses C1..C6 of the trigger example, in that order.
pub fn trigger_example() -> Vec<Clause> {
    [
        &[1, -3, -4][..],
        &[2, 3, -4],
        &[2, -3, 4],
        &[-2, 3, 4],
        &[1, 3, 4],
        &[1, 2],
    ]
    .iter()
    .map(|c| Clause::from_ints(c).unwrap())
    .collect()
}

/// Random clause over variables `1..=n` with length in `1..=max_len`.
pub fn random_clause<R: Rng>(rng: &mut R, n: u32, max_len: usize) -> Clause {
    let len = rng.gen_range(1..=max_len.min(n as usize));
    let mut vars: Vec<i32> = (1..=n as i32).collect();
    for i in 0..len {
        let j = rng.gen_range(i..vars.len());
        vars.swap(i, j);
    }
    let lits: Vec<i32> = vars[..len]
        .iter()
        .map(|&v| if rng.gen() { v } else { -v })
        .collect();
    Clause::from_ints(&lits).unwrap()
}

pub fn random_cnf<R: Rng>(rng: &mut R, n: u32, c: usize, max_len: usize) -> ClauseSet {
    (0..c).map(|_| random_clause(rng, n, max_len)).collect()
}

/// Clause-sets over at most `n` variables with at most `c` clauses.
pub fn clause_set(n: i32, c: usize, max_len: usize) -> impl Strategy<Value = ClauseSet> {
    let clause = proptest::collection::btree_map(1..=n, any::<bool>(), 1..=max_len).prop_map(|m| {
        Clause::from_ints(
            &m.into_iter()
                .map(|(v, s)| if s { v } else { -v })
                .collect::<Vec<_>>(),
        )
        .unwrap()
    });
    proptest::collection::vec(clause, 0..=c).prop_map(|v| v.into_iter().collect())
}

//! Generalised unit propagation r_k at increasing k on an unsatisfiable
//! set that needs k = 3, and the forced literals of a satisfiable one.

use cnf_hierarchy::propagation::{forced_literals, r_inf, r_k};
use cnf_hierarchy::ClauseSet;

fn main() {
    let f = ClauseSet::from_lits(&[
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
    .unwrap();
    for k in 0..=3 {
        let r = r_k(&f, k).unwrap();
        println!(
            "r_{k}: refuted={} assigned={} remaining={}",
            r.refuted,
            r.assigned,
            r.reduced.len()
        );
    }

    let g = ClauseSet::from_lits(&[&[1, 2], &[1, -2], &[-1, 3, 4], &[-3, 4]]).unwrap();
    println!("forced in {g}: {:?}", forced_literals(&g).unwrap());
    let r = r_inf(&g).unwrap();
    println!("r_inf: {} with {}", r.reduced, r.assigned);
}

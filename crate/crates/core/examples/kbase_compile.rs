//! k-bases of a doped extremal clause-set for k = 1, 2, 3, with the
//! minimum equivalent size for comparison.

use cnf_hierarchy::compile::k_base;
use cnf_hierarchy::experiment::extremal_doped;
use cnf_hierarchy::primes::prime_implicates;
use cnf_hierarchy::trigger::{min_equivalent_size, MinEquivMode};
use cnf_hierarchy::Limits;

fn main() {
    let limits = Limits::default();
    let f = extremal_doped(1, 2).unwrap();
    let p = prime_implicates(&f, &limits).unwrap();
    println!("F has {} clauses and {} primes", f.len(), p.len());
    for k in 1..=3 {
        let b = k_base(&p, k, &limits).unwrap();
        println!(
            "{k}-base: {} clauses, minimal={}, added {}, removed {}",
            b.clauses.len(),
            b.minimal,
            b.provenance.added.len(),
            b.provenance.removed.len()
        );
    }
    let m = min_equivalent_size(&f, 1, MinEquivMode::Exhaustive, &limits).unwrap();
    println!(
        "smallest equivalent set with whd <= 1: {} clauses: {}",
        m.size, m.representative
    );
}

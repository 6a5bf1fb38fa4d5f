//! Prime implicates, prime implicants and essential primes, checked
//! against the truth-table oracle.

use cnf_hierarchy::primes::{equivalent, essential_primes, prime_implicants, prime_implicates};
use cnf_hierarchy::{oracle, ClauseSet, Limits};

fn main() {
    let limits = Limits::default();
    let f = ClauseSet::from_lits(&[
        &[1, -3, -4],
        &[2, 3, -4],
        &[2, -3, 4],
        &[-2, 3, 4],
        &[1, 3, 4],
        &[1, 2],
    ])
    .unwrap();
    let p = prime_implicates(&f, &limits).unwrap();
    println!("{} prime implicates: {}", p.len(), p.primes);
    println!("same as input: {}", p.primes == f);
    println!(
        "brute force agrees: {}",
        oracle::prime_implicates(&f).unwrap() == p.primes
    );
    println!("essential: {}", essential_primes(&f, &limits).unwrap());
    println!(
        "implicants: {}",
        prime_implicants(&f, &limits).unwrap().primes
    );

    let g = ClauseSet::from_lits(&[&[1, 2], &[-1, 3]]).unwrap();
    let pg = prime_implicates(&g, &limits).unwrap().primes;
    println!(
        "{g} has primes {pg}, equivalent: {}",
        equivalent(&g, &pg).unwrap()
    );
}

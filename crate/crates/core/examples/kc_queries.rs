//! Knowledge-compilation queries answered with k-resolution.

use cnf_hierarchy::compile::{Query, QueryEngine};
use cnf_hierarchy::experiment::horn_chain;
use cnf_hierarchy::{Clause, ClauseSet, Limits, Lit, PartialAssignment};

fn main() {
    let f = horn_chain(2).unwrap();
    println!("F = {f}");
    let mut e = QueryEngine::new(&f, 1, &Limits::default()).unwrap();
    let queries = [
        Query::Co,
        Query::Va,
        Query::Ce(Clause::from_ints(&[1, 3, 4]).unwrap()),
        Query::Ce(Clause::from_ints(&[4]).unwrap()),
        Query::Im(PartialAssignment::from_true_lits([1, 5].map(|v| Lit::new(v).unwrap())).unwrap()),
        Query::Se(ClauseSet::from_lits(&[&[1, 3, 4], &[3, 4, 5]]).unwrap()),
        Query::Eq(f.clone()),
        Query::Mc,
    ];
    for q in &queries {
        let a = e.answer(q).unwrap();
        println!(
            "{} -> {}",
            serde_json::to_string(q).unwrap(),
            serde_json::to_string(&a).unwrap()
        );
    }
    for m in e.enumerate().unwrap().iter().take(4) {
        println!("model cube {m}");
    }
}

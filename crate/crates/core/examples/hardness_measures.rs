//! hd, whd, phd and wid side by side on a few clause-sets, including one
//! where hardness and w-hardness differ.

use cnf_hierarchy::hardness::hardness_report;
use cnf_hierarchy::{ClauseSet, Limits};

fn main() {
    let limits = Limits::default();
    let chain = |q: i32| -> ClauseSet {
        (1..=q)
            .map(|i| cnf_hierarchy::Clause::from_ints(&[i, -(i % q + 1)]).unwrap())
            .collect()
    };
    let cases = [
        ("top", ClauseSet::top()),
        ("bottom", ClauseSet::bottom()),
        (
            "full 2-clause set",
            ClauseSet::from_lits(&[&[1, 2], &[-1, 2], &[1, -2], &[-1, -2]]).unwrap(),
        ),
        ("chain q=4", chain(4)),
        (
            "whd 2, hd 3",
            ClauseSet::from_lits(&[
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
            .unwrap(),
        ),
    ];
    for (name, f) in cases {
        let r = hardness_report(&f, &limits).unwrap();
        println!(
            "{name:>18}: hd={} whd={} phd={} wid={} witness={}",
            r.hd.value,
            r.whd.value,
            r.phd.map_or("-".to_string(), |p| p.value.to_string()),
            r.wid.map_or("-".to_string(), |w| w.value.to_string()),
            r.hd.witness.map_or("-".to_string(), |c| c.to_string()),
        );
    }
}

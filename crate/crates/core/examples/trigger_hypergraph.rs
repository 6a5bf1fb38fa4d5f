//! Trigger hypergraphs at each level, with exact transversal and matching
//! numbers, and a Sperner family on an extremal tree.

use cnf_hierarchy::mpsdope::dope;
use cnf_hierarchy::trees::{clause_cv, extremal_tree, smu1};
use cnf_hierarchy::trigger::{
    matching_number, matching_number_seeded, sperner_witness, transversal_number,
    trigger_hypergraph,
};
use cnf_hierarchy::{ClauseSet, Limits};

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
    for k in 0..=3 {
        let g = trigger_hypergraph(&f, k, &limits).unwrap();
        let tau = transversal_number(&g, &limits);
        let nu = matching_number(&g, &limits);
        println!(
            "T_{k}: tau={} nu={} edges={:?}",
            tau.value(),
            nu.value(),
            g.edges
        );
    }

    let t = extremal_tree(1, 3).unwrap();
    let d = dope(&smu1(&t));
    let g = trigger_hypergraph(&d.doped, 0, &limits).unwrap();
    let witness = sperner_witness(&t, 0).unwrap();
    let seed: Vec<usize> = witness
        .iter()
        .map(|v| g.index_of(&clause_cv(&t, &d, v).unwrap()).unwrap())
        .collect();
    let nu = matching_number_seeded(&g, &seed, &limits);
    println!(
        "{} Sperner leaf sets, nu(T_0) = {}",
        witness.len(),
        nu.value()
    );
}

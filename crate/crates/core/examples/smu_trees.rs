//! Trees and saturated minimally unsatisfiable clause-sets of deficiency
//! one: smu1, tsmu1, instantiation and the Horton-Strahler number.

use cnf_hierarchy::hardness::hd;
use cnf_hierarchy::trees::{apply_to_tree, smu1, tree_stats, tsmu1, LabeledTree};
use cnf_hierarchy::{Limits, Lit, PartialAssignment};

fn main() {
    let t = LabeledTree::parse_term("(1 (2 (3 . .) (4 . .)) (5 . .))").unwrap();
    let f = smu1(&t);
    println!("tree {} has {:?}", t.term(), tree_stats(&t));
    println!("smu1 = {f}");
    println!("hd = {}", hd(&f, &Limits::default()).unwrap().value);
    println!("tsmu1 recovers the tree: {}", tsmu1(&f).unwrap() == t);

    let x = Lit::new(2).unwrap();
    let t2 = apply_to_tree(&t, x).unwrap();
    let phi = PartialAssignment::from_true_lits([x]).unwrap();
    println!("<2->1> on the tree: {}", t2.term());
    println!("matches instantiation: {}", smu1(&t2) == phi.apply(&f));

    match tsmu1(&cnf_hierarchy::ClauseSet::from_lits(&[&[1, 2], &[-1, -2]]).unwrap()) {
        Ok(_) => println!("unexpected"),
        Err(e) => println!("not a tree: {e}"),
    }
}

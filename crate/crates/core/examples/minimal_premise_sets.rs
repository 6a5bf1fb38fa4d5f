//! Minimal premise sets by subset enumeration and via doping, on G_3.

use cnf_hierarchy::experiment::g_n;
use cnf_hierarchy::mpsdope::{dope, is_mps, mps_enumerate, mps_via_doping, pure_clause};
use cnf_hierarchy::{ClauseSet, Limits};

fn main() {
    let limits = Limits::default();
    let f = ClauseSet::from_lits(&[&[1, 2], &[-1, -3]]).unwrap();
    println!("purec({f}) = {}", pure_clause(&f));

    let g3 = g_n(3);
    let d = dope(&g3);
    println!("D(G_3) = {}", d.doped);
    for (c, u) in &d.doping_map {
        println!("  {c} gets {}", u.0);
    }
    let direct = mps_enumerate(&g3, &limits).unwrap();
    let doped = mps_via_doping(&g3, &limits).unwrap();
    println!(
        "|mps(G_3)| = {} (by doping {}), agree: {}",
        direct.len(),
        doped.len(),
        direct.sets() == doped.sets()
    );
    for m in direct.members.iter().take(5) {
        println!("  {:?} -> {}", m.indices, m.pure_clause);
    }
    println!("G_3 itself is an mps: {}", is_mps(&g3).unwrap().is_mps);
}

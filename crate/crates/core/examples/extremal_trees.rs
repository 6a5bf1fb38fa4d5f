//! Extremal trees exhst(k,h), their leaf counts and the hardness of the
//! doped clause-sets built from them.

use cnf_hierarchy::hardness::hd;
use cnf_hierarchy::mpsdope::dope;
use cnf_hierarchy::primes::prime_implicates;
use cnf_hierarchy::trees::{alpha, extremal_tree, smu1, tree_stats};
use cnf_hierarchy::Limits;

fn main() {
    let limits = Limits::default();
    for (k, h) in [(1, 3), (2, 2), (2, 3), (3, 3), (2, 4)] {
        let t = extremal_tree(k, h).unwrap();
        let st = tree_stats(&t);
        let d = dope(&smu1(&t)).doped;
        println!(
            "exhst({k},{h}): leaves={} (alpha={}) hts={} height={} primes(D)={} hd(D)={}",
            st.nlvs,
            alpha(k, h).unwrap(),
            st.hts,
            st.height,
            prime_implicates(&d, &limits).unwrap().len(),
            hd(&d, &limits).unwrap().value
        );
    }
    println!("{}", extremal_tree(2, 3).unwrap().term());
}

//! Invariants checked on generated clause-sets and trees.

mod common;

use cnf_hierarchy::compile::{canon_primes, k_base};
use cnf_hierarchy::hardness::{hd, phd, whd, wid};
use cnf_hierarchy::mpsdope::{dope, is_mps, mps_enumerate, mps_via_doping};
use cnf_hierarchy::primes::{equivalent, essential_primes, implies, prime_implicates};
use cnf_hierarchy::propagation::{is_satisfiable, r_k, r_k_in_order, rk_refutes, RefuteOptions};
use cnf_hierarchy::trees::{apply_to_tree, random_tree, smu1, tree_stats, tsmu1};
use cnf_hierarchy::trigger::{
    matching_number, min_equivalent_size, transversal_number, trigger_hypergraph, MinEquivMode,
    TriggerHypergraph,
};
use cnf_hierarchy::{emit_dimacs, oracle, parse_dimacs, ClauseSet, Limits, Lit, PartialAssignment};
use common::clause_set;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn lim() -> Limits {
    Limits::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn dimacs_round_trip(f in clause_set(8, 10, 4)) {
        prop_assert_eq!(parse_dimacs(&emit_dimacs(&f)).unwrap(), f);
    }

    #[test]
    fn rk_monotone_and_sound(f in clause_set(6, 9, 3)) {
        let sat = is_satisfiable(&f).unwrap();
        let mut before = false;
        for k in 0..=4 {
            let r = r_k(&f, k).unwrap();
            prop_assert!(!before || r.refuted);
            prop_assert!(!(r.refuted && sat));
            before = r.refuted;
        }
    }

    #[test]
    fn r1_is_unit_propagation(f in clause_set(6, 9, 3)) {
        prop_assert_eq!(r_k(&f, 1).unwrap().reduced, oracle::unit_propagation(&f));
    }

    #[test]
    fn r2_is_failed_literal_elimination(f in clause_set(6, 9, 3)) {
        prop_assert_eq!(r_k(&f, 2).unwrap().reduced, oracle::failed_literal_elimination(&f));
    }

    #[test]
    fn rk_confluent(f in clause_set(6, 9, 3), k in 0usize..4) {
        let mut order: Vec<Lit> = f.occurring_lits().into_iter().collect();
        order.reverse();
        // the reduced set is unique; the literals assigned on the way to a
        // contradiction are not
        let (a, b) = (r_k_in_order(&f, k, &order).unwrap(), r_k(&f, k).unwrap());
        prop_assert_eq!(&a.reduced, &b.reduced);
        prop_assert_eq!(a.refuted, b.refuted);
        if !a.refuted {
            prop_assert_eq!(a.assigned, b.assigned);
        }
    }

    #[test]
    fn refutation_shortcuts_agree(f in clause_set(6, 9, 3), k in 0usize..4) {
        let fast = rk_refutes(&f, k, RefuteOptions::default()).unwrap();
        prop_assert_eq!(fast, rk_refutes(&f, k, RefuteOptions::plain()).unwrap());
        prop_assert_eq!(fast, oracle::rk_refutes(&f, k));
    }

    #[test]
    fn measure_chain(f in clause_set(6, 8, 3)) {
        let (h, w, p, s) = (
            hd(&f, &lim()).unwrap().value,
            whd(&f, &lim()).unwrap().value,
            phd(&f, &lim()).unwrap().value,
            wid(&f, &lim()).unwrap().value,
        );
        prop_assert!(w <= h && h <= p && w <= s, "hd={} whd={} phd={} wid={}", h, w, p, s);
    }

    #[test]
    fn primes_sound(f in clause_set(6, 8, 3)) {
        let p = prime_implicates(&f, &lim()).unwrap().primes;
        prop_assert!(equivalent(&f, &p).unwrap());
        prop_assert_eq!(p.clone().subsumption_eliminate(), p.clone());
        for c in p.iter() {
            for l in c.iter() {
                let smaller = cnf_hierarchy::Clause::new(c.iter().filter(|&x| x != l)).unwrap();
                prop_assert!(!implies(&f, &smaller).unwrap());
            }
        }
        prop_assert_eq!(hd(&p, &lim()).unwrap().value, 0);
        let e = essential_primes(&f, &lim()).unwrap();
        prop_assert!(e.is_subset(&p));
    }

    #[test]
    fn canon_with_full_bound_gives_primes(f in clause_set(5, 7, 3)) {
        prop_assume!(!f.is_empty());
        prop_assert_eq!(canon_primes(&f, f.len(), &lim()).unwrap(), prime_implicates(&f, &lim()).unwrap().primes);
    }

    #[test]
    fn mps_two_ways(f in clause_set(5, 8, 3)) {
        let a = mps_enumerate(&f, &lim()).unwrap();
        let b = mps_via_doping(&f, &lim()).unwrap();
        prop_assert_eq!(a.sets(), b.sets());
        prop_assert_eq!(a.len(), prime_implicates(&dope(&f).doped, &lim()).unwrap().len());
        for s in a.sets().iter().take(8) {
            prop_assert!(is_mps(s).unwrap().is_mps);
        }
    }

    #[test]
    fn trigger_invariants(f in clause_set(5, 7, 3), k in 0usize..4) {
        let g = trigger_hypergraph(&f, k, &lim()).unwrap();
        for (i, e) in g.edges.iter().enumerate() {
            prop_assert!(e.contains(&i));
            for &j in e {
                let (c, d) = (&g.vertices[i], &g.vertices[j]);
                prop_assert!(c.clash_count(d) == 0 && d.difference(c).len() <= k);
            }
        }
        let p = prime_implicates(&f, &lim()).unwrap().primes;
        prop_assert_eq!(&TriggerHypergraph::from_primes(&p, k).unwrap(), &g);
        let tau = transversal_number(&g, &lim());
        let nu = matching_number(&g, &lim());
        prop_assert!(tau.exact && nu.exact);
        prop_assert!(nu.upper <= tau.upper);
        prop_assert!(g.is_transversal(&tau.witness));
        prop_assert_eq!(nu.witness.len(), nu.upper);
        for (a, &x) in nu.witness.iter().enumerate() {
            for &y in &nu.witness[a + 1..] {
                prop_assert!(!g.edges[x].iter().any(|v| g.edges[y].contains(v)));
            }
        }
    }

    #[test]
    fn equivalent_sets_need_a_transversal(f in clause_set(4, 6, 3), k in 0usize..3) {
        let p = prime_implicates(&f, &lim()).unwrap();
        prop_assume!(p.len() <= 12);
        let m = min_equivalent_size(&f, k, MinEquivMode::ExhaustiveUnpruned, &lim()).unwrap();
        let g = trigger_hypergraph(&f, k, &lim()).unwrap();
        let tau = transversal_number(&g, &lim());
        prop_assert!(m.size >= tau.upper);
        prop_assert!(whd(&m.representative, &lim()).unwrap().value <= k);
        prop_assert!(equivalent(&m.representative, &f).unwrap());
        let pruned = min_equivalent_size(&f, k, MinEquivMode::Exhaustive, &lim()).unwrap();
        prop_assert_eq!(pruned.size, m.size);
    }

    #[test]
    fn kbase_invariants(f in clause_set(5, 7, 3), k in 1usize..4) {
        let p = prime_implicates(&f, &lim()).unwrap();
        let b = k_base(&p, k, &lim()).unwrap();
        prop_assert!(equivalent(&b.clauses, &f).unwrap());
        prop_assert!(hd(&b.clauses, &lim()).unwrap().value <= k);
        prop_assert!(b.minimal);
        for c in b.clauses.iter() {
            let mut rest = b.clauses.clone();
            rest.remove(c);
            let still = equivalent(&rest, &f).unwrap() && hd(&rest, &lim()).unwrap().value <= k;
            prop_assert!(!still);
        }
        let b2 = k_base(&p, k + 1, &lim()).unwrap();
        prop_assert!(b2.clauses.len() <= b.clauses.len());
    }

    #[test]
    fn tree_round_trip(seed in any::<u64>(), leaves in 1usize..=16) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_tree(leaves, &mut rng);
        let f = smu1(&t);
        prop_assert_eq!(tsmu1(&f).unwrap(), t.clone());
        prop_assert_eq!(f.measures().delta, 1);
    }

    #[test]
    fn tree_instantiation(seed in any::<u64>(), leaves in 2usize..=10, pick in any::<usize>(), pos in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_tree(leaves, &mut rng);
        let vars = t.vars();
        let x = vars[pick % vars.len()].lit(pos);
        let phi = PartialAssignment::from_true_lits([x]).unwrap();
        prop_assert_eq!(smu1(&apply_to_tree(&t, x).unwrap()), phi.apply(&smu1(&t)));
    }

    #[test]
    fn smu1_hardness_is_strahler(seed in any::<u64>(), leaves in 1usize..=10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_tree(leaves, &mut rng);
        prop_assert_eq!(hd(&smu1(&t), &lim()).unwrap().value, tree_stats(&t).hts);
    }
}

#[test]
fn kbase_size_is_monotone_on_corpus() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut violations = Vec::new();
    for _ in 0..60 {
        let f: ClauseSet = common::random_cnf(&mut rng, 6, 7, 3);
        let p = prime_implicates(&f, &lim()).unwrap();
        let sizes: Vec<usize> = (1..=4)
            .map(|k| k_base(&p, k, &lim()).unwrap().clauses.len())
            .collect();
        if sizes.windows(2).any(|w| w[1] > w[0]) {
            violations.push((f.to_string(), sizes));
        }
    }
    assert!(violations.is_empty(), "{violations:?}");
}

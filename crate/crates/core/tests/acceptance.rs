//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on failure.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use cnf_hierarchy::compile::{
    answer_query, canon_primes, k_base, k_base_exhaustive, Answer, Query,
};
use cnf_hierarchy::experiment::{extremal_doped, g_n, horn_chain};
use cnf_hierarchy::hardness::{hd, k_res_refutes, whd, wid};
use cnf_hierarchy::mpsdope::{dope, mps_enumerate, mps_via_doping, pure_clause};
use cnf_hierarchy::primes::{equivalent, prime_implicates};
use cnf_hierarchy::trees::{
    all_shapes, apply_to_tree, clause_cv, extremal_tree, leaf_set_from_indices, pure_of_leafset,
    random_tree, smu1, tsmu1, LabeledTree,
};
use cnf_hierarchy::trigger::{
    binomial, matching_number, min_equivalent_size, sperner_witness, transversal_number,
    trigger_hypergraph, MinEquivMode, TriggerHypergraph,
};
use cnf_hierarchy::{oracle, Clause, ClauseSet, Limits, Lit, PartialAssignment};
use common::{cs, diffw2u2, random_cnf, trigger_example};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = std::result::Result<String, String>;

const WORKED_EXAMPLES_BUDGET: Duration = Duration::from_secs(1);
const HORN_BUDGET: Duration = Duration::from_secs(30);
const SPERNER_ROW_BUDGET: Duration = Duration::from_secs(300);
const CORPUS_SEED: u64 = 20_240_601;
const CORPUS_SIZE: usize = 200;

fn lim() -> Limits {
    Limits::default()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<T, E: std::fmt::Display>(r: std::result::Result<T, E>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn worked_examples() -> Check {
    let start = Instant::now();
    let p = pure_clause(&cs(&[&[1, 2], &[-1, -3]]));
    ensure(p == e(Clause::from_ints(&[2, -3]))?, || {
        format!("pure clause {p}")
    })?;

    let t = e(LabeledTree::parse_term("(1 (2 (3 . .) (4 . .)) (5 . .))"))?;
    let s = t.stats();
    ensure((s.hts, s.height) == (2, 3), || format!("hts/height {s:?}"))?;
    let expect = cs(&[
        &[1, 2, 3],
        &[1, 2, -3],
        &[1, -2, 4],
        &[1, -2, -4],
        &[-1, 5],
        &[-1, -5],
    ]);
    ensure(smu1(&t) == expect, || {
        format!("smu1 {:?}", smu1(&t).to_ints())
    })?;
    let x = e(Lit::new(2))?;
    let inst = e(PartialAssignment::from_true_lits([x]))?.apply(&expect);
    ensure(
        inst == cs(&[&[1, 4], &[1, -4], &[-1, 5], &[-1, -5]]),
        || format!("instantiation {:?}", inst.to_ints()),
    )?;
    ensure(smu1(&e(apply_to_tree(&t, x))?) == inst, || {
        "tree surgery disagrees".into()
    })?;

    let t7 = e(LabeledTree::parse_term(
        "(1 (2 (3 . .) (4 . .)) (5 (6 . .) .))",
    ))?;
    let v = e(leaf_set_from_indices(&t7, &[1, 3, 4, 7]))?;
    let pv = e(pure_of_leafset(&t7, &v))?;
    ensure(pv == e(Clause::from_ints(&[3, -5]))?, || {
        format!("P_V {pv}")
    })?;

    let t4 = e(LabeledTree::parse_term("(1 (2 . .) (3 . .))"))?;
    let d = dope(&smu1(&t4));
    let cv = e(clause_cv(&t4, &d, &e(leaf_set_from_indices(&t4, &[1, 3]))?))?;
    ensure(cv == e(Clause::from_ints(&[2, 3, 4, 6]))?, || {
        format!("C_V {cv}")
    })?;

    let el = start.elapsed();
    ensure(el < WORKED_EXAMPLES_BUDGET, || format!("took {el:?}"))?;
    Ok(format!("six examples in {el:?}"))
}

fn hardness_separations() -> Check {
    let start = Instant::now();
    let f = diffw2u2();
    let (h, w) = (e(hd(&f, &lim()))?.value, e(whd(&f, &lim()))?.value);
    ensure((h, w) == (3, 2), || format!("hd={h} whd={w}"))?;
    // Horn minimally unsatisfiable sets
    let mut horn = vec![
        cs(&[&[1], &[-1, 2], &[-2, 3], &[-3]]),
        cs(&[&[1], &[2], &[-1, -2, 3], &[-3]]),
        cs(&[&[1], &[-1, 2], &[-1, 3], &[-2, -3, 4], &[-4, 5], &[-5]]),
    ];
    horn.extend((1..=6).map(g_n));
    for g in &horn {
        let w = e(whd(g, &lim()))?.value;
        let width = e(wid(g, &lim()))?.value;
        let maxlen = g.iter().map(Clause::len).max().unwrap_or(0);
        ensure(w <= 1 && width == maxlen, || {
            format!("{:?}: whd={w} wid={width}", g.to_ints())
        })?;
    }
    let el = start.elapsed();
    ensure(el < HORN_BUDGET, || format!("took {el:?}"))?;
    Ok(format!("hd=3 whd=2; {} Horn sets in {el:?}", horn.len()))
}

fn doped_prime_counts() -> Check {
    let mut shapes = 0;
    for c in 2..=8 {
        for t in all_shapes(c) {
            let n = e(prime_implicates(&dope(&smu1(&t)).doped, &lim()))?.len();
            ensure(n == (1 << c) - 1, || format!("{}: {n} primes", t.term()))?;
            shapes += 1;
        }
    }
    for n in 2..=6 {
        let g = g_n(n);
        let m = e(mps_enumerate(&g, &lim()))?.len();
        let p = e(prime_implicates(&dope(&g).doped, &lim()))?.len();
        ensure(m == p && p == (1 << n) + n, || {
            format!("G_{n}: mps={m} primes={p}")
        })?;
    }
    Ok(format!("{shapes} shapes, G_2..G_6"))
}

fn mps_and_roundtrip() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    for i in 0..CORPUS_SIZE {
        let c = rng.gen_range(1..=10);
        let n = rng.gen_range(2..=6);
        let f = random_cnf(&mut rng, n, c, 3);
        let a = e(mps_enumerate(&f, &lim()))?.sets();
        let b = e(mps_via_doping(&f, &lim()))?.sets();
        ensure(a == b, || {
            format!("instance {i} {:?}: {} vs {}", f.to_ints(), a.len(), b.len())
        })?;
    }
    for i in 0..CORPUS_SIZE {
        let t = random_tree(rng.gen_range(1..=16), &mut rng);
        let back = e(tsmu1(&smu1(&t)))?;
        ensure(back == t, || {
            format!("tree {i} {} came back as {}", t.term(), back.term())
        })?;
    }
    Ok(format!("{CORPUS_SIZE} clause-sets, {CORPUS_SIZE} trees"))
}

fn hardness_equals_hts() -> Check {
    let check = |t: &LabeledTree, doped: bool| -> std::result::Result<(), String> {
        let f = smu1(t);
        let hts = t.stats().hts;
        let a = e(hd(&f, &lim()))?.value;
        ensure(a == hts, || format!("{}: hd={a} hts={hts}", t.term()))?;
        if doped {
            let b = e(hd(&dope(&f).doped, &lim()))?.value;
            ensure(b == hts, || format!("{}: doped hd={b} hts={hts}", t.term()))?;
        }
        Ok(())
    };
    let mut count = 0;
    for c in 1..=8 {
        for t in all_shapes(c) {
            check(&t, true)?;
            count += 1;
        }
    }
    let mut undoped_only = Vec::new();
    for k in 0..=2 {
        for h in k + 1..=5 {
            let t = e(extremal_tree(k + 1, h))?;
            let leaves = t.stats().nlvs;
            check(&t, leaves <= 16)?;
            if leaves > 16 {
                undoped_only.push(format!("({},{h})", k + 1));
            }
            count += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED + 5);
    for _ in 0..12 {
        let t = random_tree(rng.gen_range(9..=16), &mut rng);
        check(&t, true)?;
        count += 1;
    }
    Ok(format!(
        "{count} trees; doped check skipped for exhst {}",
        undoped_only.join(" ")
    ))
}

fn trigger_example_checks() -> Check {
    let c = trigger_example();
    let f: ClauseSet = c.iter().cloned().collect();
    let p = e(prime_implicates(&f, &lim()))?.primes;
    ensure(p == f, || format!("primes {:?}", p.to_ints()))?;
    let edge = |g: &TriggerHypergraph, i: usize| -> BTreeSet<Clause> {
        g.edge_of(&c[i])
            .unwrap_or(&[])
            .iter()
            .map(|&v| g.vertices[v].clone())
            .collect()
    };
    let g1 = e(trigger_hypergraph(&f, 1, &lim()))?;
    let g2 = e(trigger_hypergraph(&f, 2, &lim()))?;
    ensure(edge(&g1, 5) == [c[5].clone()].into(), || "E^1 of C6".into())?;
    let want: BTreeSet<Clause> = [0, 1, 2, 4, 5].iter().map(|&i| c[i].clone()).collect();
    ensure(edge(&g2, 5) == want, || {
        format!("E^2 of C6 has {} clauses", edge(&g2, 5).len())
    })?;
    for k in [3, 4] {
        let g = e(trigger_hypergraph(&f, k, &lim()))?;
        ensure(g.edges == g2.edges, || format!("T_{k} differs from T_2"))?;
    }
    let mut graphs = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED + 6);
    let mut sets = vec![f];
    sets.extend((0..40).map(|_| random_cnf(&mut rng, 5, 6, 3)));
    for s in &sets {
        for k in 0..=3 {
            let g = e(trigger_hypergraph(s, k, &lim()))?;
            let tau = transversal_number(&g, &lim());
            let nu = matching_number(&g, &lim());
            ensure(tau.exact && nu.exact && tau.upper >= nu.upper, || {
                format!("{:?} k={k}: tau={tau:?} nu={nu:?}", s.to_ints())
            })?;
            graphs += 1;
        }
    }
    Ok(format!("tau >= nu on {graphs} hypergraphs"))
}

fn sperner_lower_bounds() -> Check {
    let mut out = Vec::new();
    for (k, h) in [(0, 3), (0, 4), (0, 5), (1, 2), (1, 3), (2, 3)] {
        let start = Instant::now();
        let t = e(extremal_tree(k + 1, h))?;
        let f = e(extremal_doped(k, h))?;
        let d = dope(&smu1(&t));
        let g = e(trigger_hypergraph(&f, k, &lim()))?;
        let m = 1 + h - k;
        let bound = binomial(m, m / 2) as usize;
        let sets = e(sperner_witness(&t, k))?;
        let mut seed = Vec::new();
        for v in &sets {
            let cv = e(clause_cv(&t, &d, v))?;
            seed.push(
                g.index_of(&cv)
                    .ok_or_else(|| format!("C_V {cv} is not prime"))?,
            );
        }
        for (a, &x) in seed.iter().enumerate() {
            for &y in &seed[a + 1..] {
                ensure(!g.edges[x].iter().any(|v| g.edges[y].contains(v)), || {
                    format!("(k={k},h={h}): witness edges {x},{y} intersect")
                })?;
            }
        }
        ensure(seed.len() >= bound, || {
            format!("(k={k},h={h}): {} witness edges < {bound}", seed.len())
        })?;
        let nu = matching_number(&g, &lim());
        ensure(nu.lower >= bound, || {
            format!("(k={k},h={h}): nu >= {} < {bound}", nu.lower)
        })?;
        let el = start.elapsed();
        ensure(el < SPERNER_ROW_BUDGET, || {
            format!("(k={k},h={h}) took {el:?}")
        })?;
        out.push(format!("({k},{h}) nu>={} C={bound}", nu.lower));
    }
    Ok(out.join("; "))
}

fn minimum_sizes() -> Check {
    let f = e(extremal_doped(1, 2))?;
    let g = e(trigger_hypergraph(&f, 1, &lim()))?;
    let tau = transversal_number(&g, &lim());
    let m = e(min_equivalent_size(
        &f,
        1,
        MinEquivMode::ExhaustiveUnpruned,
        &lim(),
    ))?;
    ensure(m.exact && tau.exact, || "inexact search".into())?;
    ensure(m.size >= tau.upper && m.size > 4, || {
        format!("F^1_2: min={} tau={}", m.size, tau.upper)
    })?;
    let mut out = vec![format!("F^1_2 min={} tau={}", m.size, tau.upper)];
    for h in 3..=5 {
        let t = e(extremal_tree(1, h))?;
        let c = t.stats().nlvs;
        let f = e(horn_chain(h))?;
        let p = e(prime_implicates(&f, &lim()))?.primes;
        let m = e(min_equivalent_size(&f, 0, MinEquivMode::Exhaustive, &lim()))?;
        ensure(
            c == h + 1 && m.exact && m.size == (1 << (h + 1)) - 1,
            || format!("h={h}: c={c} min={}", m.size),
        )?;
        // k = 0 only refutes through the empty clause, so no proper subset works
        for drop in p.iter() {
            let phi = PartialAssignment::falsifying(drop);
            let all = e(k_res_refutes(&phi.apply(&p), 0, &lim()))?.refuted;
            let mut rest = p.clone();
            rest.remove(drop);
            let without = e(k_res_refutes(&phi.apply(&rest), 0, &lim()))?.refuted;
            ensure(all && !without, || format!("h={h}: dropping {drop}"))?;
        }
        out.push(format!("F_{h} min={}", m.size));
    }
    Ok(out.join("; "))
}

fn expand(
    cubes: &[PartialAssignment],
    f: &ClauseSet,
) -> std::result::Result<BTreeSet<PartialAssignment>, String> {
    let mut out = BTreeSet::new();
    let vars: Vec<_> = f.vars().into_iter().collect();
    for c in cubes {
        let free: Vec<_> = vars
            .iter()
            .copied()
            .filter(|v| c.get(*v).is_none())
            .collect();
        for a in oracle::all_total_assignments(&free) {
            out.insert(e(c.compose(&a))?);
        }
    }
    Ok(out)
}

fn oracle_equivalences() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED + 9);
    let mut checked = [0usize; 3];
    for _ in 0..60 {
        let n = rng.gen_range(3..=8);
        let f = {
            let c = rng.gen_range(1..=9);
            random_cnf(&mut rng, n, c, 3)
        };
        let a = e(hd(&f, &lim()))?.value;
        let b = e(oracle::hd_all_assignments(&f))?;
        ensure(a == b, || format!("hd {:?}: {a} vs {b}", f.to_ints()))?;
        checked[0] += 1;
    }
    for _ in 0..40 {
        let n = rng.gen_range(3..=10);
        let f = {
            let c = rng.gen_range(1..=12);
            random_cnf(&mut rng, n, c, 4)
        };
        let p = e(prime_implicates(&f, &lim()))?.primes;
        ensure(p == e(oracle::prime_implicates(&f))?, || {
            format!("primes {:?}", f.to_ints())
        })?;
        let c = e(canon_primes(&f, f.len().max(1), &lim()))?;
        ensure(c == p, || format!("canon {:?}", f.to_ints()))?;
        checked[1] += 1;
    }
    for i in 0..40 {
        let n = rng.gen_range(3..=12);
        let f = {
            let c = rng.gen_range(1..=14);
            random_cnf(&mut rng, n, c, 4)
        };
        // alternate between the primes at level 0 and F itself at level whd(F)
        let (g, k) = if i % 2 == 0 {
            (e(prime_implicates(&f, &lim()))?.primes, 0)
        } else {
            let k = e(whd(&f, &lim()))?.value;
            (f.clone(), k)
        };
        let ask = |q: &Query| {
            answer_query(q, &g, k, &lim()).map_err(|e| format!("{:?} {q:?}: {e}", g.to_ints()))
        };
        let truth = e(oracle::models(&g))?;
        ensure(ask(&Query::Co)? == Answer::Bool(!truth.is_empty()), || {
            "CO".into()
        })?;
        ensure(ask(&Query::Va)? == Answer::Bool(g.is_top()), || "VA".into())?;
        ensure(
            ask(&Query::Mc)? == Answer::Count(truth.len() as u128),
            || "MC".into(),
        )?;
        match ask(&Query::Me)? {
            Answer::Models(cubes) => {
                let got = expand(&cubes, &g)?;
                ensure(got == truth.iter().cloned().collect(), || {
                    format!("ME {:?}", g.to_ints())
                })?;
            }
            other => return Err(format!("ME answered {other:?}")),
        }
        for _ in 0..6 {
            let c = common::random_clause(&mut rng, n, 3);
            ensure(
                ask(&Query::Ce(c.clone()))? == Answer::Bool(e(oracle::implies(&g, &c))?),
                || format!("CE {c}"),
            )?;
            let phi = PartialAssignment::falsifying(&c);
            let implicant =
                oracle::all_total_assignments(&g.vars().into_iter().collect::<Vec<_>>())
                    .into_iter()
                    .filter_map(|a| phi.compose(&a).ok())
                    .all(|a| a.apply(&g).is_top());
            ensure(
                ask(&Query::Im(phi.clone()))? == Answer::Bool(implicant),
                || format!("IM {c}"),
            )?;
            let mut h2 = f.clone();
            h2.insert(c.clone());
            let other = e(prime_implicates(&h2, &lim()))?.primes;
            let entails = other
                .iter()
                .all(|d| oracle::implies(&g, d).unwrap_or(false));
            ensure(
                ask(&Query::Se(other.clone()))? == Answer::Bool(entails),
                || format!("SE + {c}"),
            )?;
            let eq = e(oracle::equivalent(&g, &other))?;
            ensure(ask(&Query::Eq(other))? == Answer::Bool(eq), || {
                format!("EQ + {c}")
            })?;
        }
        checked[2] += 1;
    }
    Ok(format!(
        "hd x{}, primes/canon x{}, queries x{}",
        checked[0], checked[1], checked[2]
    ))
}

fn kbase_checks() -> Check {
    for h in 1..=4 {
        let f = e(horn_chain(h))?;
        let p = e(prime_implicates(&f, &lim()))?;
        let b = e(k_base(&p, 1, &lim()))?;
        ensure(b.clauses == f && b.minimal, || {
            format!("h={h}: greedy base differs")
        })?;
        let x = e(k_base_exhaustive(&p, 1, &lim()))?;
        ensure(x.clauses.len() == f.len() && x.clauses == f, || {
            format!("h={h}: exhaustive size {}", x.clauses.len())
        })?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED + 10);
    let mut bases = 0;
    for _ in 0..30 {
        let f = {
            let c = rng.gen_range(2..=8);
            random_cnf(&mut rng, 6, c, 3)
        };
        let p = e(prime_implicates(&f, &lim()))?;
        for k in 0..=3 {
            let b = e(k_base(&p, k, &lim()))?;
            ensure(e(equivalent(&b.clauses, &f))?, || {
                format!("{:?} k={k}: not equivalent", f.to_ints())
            })?;
            ensure(e(hd(&b.clauses, &lim()))?.value <= k, || {
                format!("{:?} k={k}: too hard", f.to_ints())
            })?;
            for c in b.clauses.iter() {
                let mut rest = b.clauses.clone();
                rest.remove(c);
                let fine = e(equivalent(&rest, &f))? && e(hd(&rest, &lim()))?.value <= k;
                ensure(!fine, || {
                    format!("{:?} k={k}: {c} is redundant", f.to_ints())
                })?;
            }
            bases += 1;
        }
    }
    Ok(format!(
        "chains h=1..4 exact; {bases} random bases verified"
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("worked examples", worked_examples),
        ("hardness separations and Horn sets", hardness_separations),
        ("doped prime counts", doped_prime_counts),
        (
            "minimal premise sets two ways, tree round trip",
            mps_and_roundtrip,
        ),
        (
            "hardness equals Horton-Strahler number",
            hardness_equals_hts,
        ),
        ("trigger hypergraph example", trigger_example_checks),
        ("Sperner lower bound on matchings", sperner_lower_bounds),
        ("minimum equivalent sizes", minimum_sizes),
        ("oracle equivalences", oracle_equivalences),
        ("k-bases", kbase_checks),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match run() {
            Ok(detail) => println!("PASS {}: {name} ({detail}; {:.2?})", i + 1, start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL {}: {name} ({why})", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}

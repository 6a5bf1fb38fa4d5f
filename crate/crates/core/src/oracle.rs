//! Brute-force reference implementations.
//!
//! These follow the definitions literally, work on [`ClauseSet`] values
//! only, and share no code with the fast paths. They are meant for
//! cross-checking on small inputs.

use crate::clause::{Clause, ClauseSet, Lit, PartialAssignment, Var};
use crate::error::{cap, Result};

/// Every partial assignment over `vars` (all `3^n` of them).
pub fn all_partial_assignments(vars: &[Var]) -> Vec<PartialAssignment> {
    let mut out = vec![PartialAssignment::new()];
    for &v in vars {
        let mut next = Vec::with_capacity(out.len() * 3);
        for pa in &out {
            next.push(pa.clone());
            for b in [true, false] {
                let mut p = pa.clone();
                p.set_true(v.lit(b)).expect("fresh variable");
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// Every total assignment over `vars`.
pub fn all_total_assignments(vars: &[Var]) -> Vec<PartialAssignment> {
    let mut out = vec![PartialAssignment::new()];
    for &v in vars {
        out = out
            .into_iter()
            .flat_map(|pa| {
                [true, false].map(|b| {
                    let mut p = pa.clone();
                    p.set_true(v.lit(b)).expect("fresh variable");
                    p
                })
            })
            .collect();
    }
    out
}

/// The satisfying total assignments over `var(F)`, by truth table.
pub fn models(f: &ClauseSet) -> Result<Vec<PartialAssignment>> {
    let vars: Vec<Var> = f.vars().into_iter().collect();
    cap("variables for the truth table", vars.len(), 20)?;
    Ok(all_total_assignments(&vars)
        .into_iter()
        .filter(|a| a.apply(f).is_top())
        .collect())
}

pub fn is_sat(f: &ClauseSet) -> Result<bool> {
    Ok(!models(f)?.is_empty())
}

/// `F ⊨ C` by truth table over `var(F) ∪ var(C)`.
pub fn implies(f: &ClauseSet, c: &Clause) -> Result<bool> {
    let mut vars: Vec<Var> = f.vars().into_iter().collect();
    for v in c.vars() {
        if !vars.contains(&v) {
            vars.push(v);
        }
    }
    cap("variables for the truth table", vars.len(), 20)?;
    let cset: ClauseSet = [c.clone()].into_iter().collect();
    Ok(all_total_assignments(&vars)
        .into_iter()
        .all(|a| !a.apply(f).is_top() || a.apply(&cset).is_top()))
}

pub fn equivalent(f: &ClauseSet, g: &ClauseSet) -> Result<bool> {
    let mut vars: Vec<Var> = f.vars().union(&g.vars()).copied().collect();
    vars.sort();
    cap("variables for the truth table", vars.len(), 20)?;
    Ok(all_total_assignments(&vars)
        .into_iter()
        .all(|a| a.apply(f).is_top() == a.apply(g).is_top()))
}

/// Prime implicates by enumerating every clause over `var(F)` and keeping the
/// implicates none of whose one-literal weakenings is an implicate.
pub fn prime_implicates(f: &ClauseSet) -> Result<ClauseSet> {
    let vars: Vec<Var> = f.vars().into_iter().collect();
    cap("variables for brute-force primes", vars.len(), 10)?;
    let ms = models(f)?;
    let is_implicate = |c: &Clause| {
        ms.iter()
            .all(|m| c.iter().any(|l| m.value(l) == Some(true)))
    };
    let mut out = ClauseSet::top();
    for pa in all_partial_assignments(&vars) {
        let c = Clause::new(pa.true_lits()).expect("assignment literals are consistent");
        if !is_implicate(&c) {
            continue;
        }
        let minimal = c.iter().all(|l| {
            let smaller = Clause::new(c.iter().filter(|&x| x != l)).expect("subset of a clause");
            !is_implicate(&smaller)
        });
        if minimal {
            out.insert(c);
        }
    }
    Ok(out)
}

/// Unit-clause propagation written out directly.
pub fn unit_propagation(f: &ClauseSet) -> ClauseSet {
    let mut cur = f.clone();
    loop {
        if cur.contains_empty() {
            return ClauseSet::bottom();
        }
        let Some(unit) = cur.iter().find(|c| c.len() == 1) else {
            return cur;
        };
        let phi = PartialAssignment::from_true_lits(unit.iter()).expect("single literal");
        cur = phi.apply(&cur);
    }
}

/// Iterated failed-literal elimination: set `x` whenever unit propagation
/// refutes `<x→0> * F`, until nothing changes.
pub fn failed_literal_elimination(f: &ClauseSet) -> ClauseSet {
    let mut cur = unit_propagation(f);
    loop {
        if cur.contains_empty() {
            return ClauseSet::bottom();
        }
        let lits: Vec<Lit> = cur.occurring_lits().into_iter().collect();
        let failed = lits.into_iter().find(|&x| {
            let phi = PartialAssignment::from_true_lits([x.complement()]).expect("single literal");
            unit_propagation(&phi.apply(&cur)).contains_empty()
        });
        let Some(x) = failed else { return cur };
        let phi = PartialAssignment::from_true_lits([x]).expect("single literal");
        cur = unit_propagation(&phi.apply(&cur));
    }
}

/// Whether `r_k` refutes `F`, by the defining recursion: `r_0` only sees
/// the empty clause, and `r_{k+1}` sets `x` to false whenever `r_k` refutes
/// `<x→1> * F`.
pub fn rk_refutes(f: &ClauseSet, k: usize) -> bool {
    if f.contains_empty() {
        return true;
    }
    if k == 0 {
        return false;
    }
    for x in f.occurring_lits() {
        let pos = PartialAssignment::from_true_lits([x]).expect("single literal");
        if rk_refutes(&pos.apply(f), k - 1) {
            let neg = PartialAssignment::from_true_lits([x.complement()]).expect("single literal");
            return rk_refutes(&neg.apply(f), k);
        }
    }
    false
}

/// Hardness from its definition: the maximum, over all partial assignments
/// `φ` with `φ * F` unsatisfiable, of the least `k` with `r_k(φ * F)` refuted.
pub fn hd_all_assignments(f: &ClauseSet) -> Result<usize> {
    let vars: Vec<Var> = f.vars().into_iter().collect();
    cap("variables for the hardness oracle", vars.len(), 10)?;
    let mut best = 0;
    for pa in all_partial_assignments(&vars) {
        let g = pa.apply(f);
        if is_sat(&g)? {
            continue;
        }
        let mut k = 0;
        while !rk_refutes(&g, k) {
            k += 1;
        }
        best = best.max(k);
    }
    Ok(best)
}

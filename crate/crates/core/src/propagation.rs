//! Generalised unit-clause propagation `r_k`, forced literals and the
//! satisfiability oracle.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::clause::{ClauseSet, Lit, PartialAssignment};
use crate::error::{cap, Result};
use crate::limits::Limits;
use crate::packed::{apply_all, prune_pure, union_all, unit_propagate, Bits, VarIndex};
use crate::sat;

/// Outcome of `r_k` or `r_∞`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropagationResult {
    pub reduced: ClauseSet,
    /// The forced assignments that were applied.
    pub assigned: PartialAssignment,
    pub refuted: bool,
}

/// Switches for the shortcuts used when only refutation by `r_k` matters.
/// All of them preserve the answer; they exist so tests can compare.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RefuteOptions {
    /// Drop clauses containing pure literals before searching.
    pub prune_pure: bool,
    /// Answer "not refuted" at once for satisfiable inputs.
    pub sat_shortcut: bool,
    pub memo: bool,
}

impl Default for RefuteOptions {
    fn default() -> Self {
        RefuteOptions {
            prune_pure: true,
            sat_shortcut: true,
            memo: true,
        }
    }
}

impl RefuteOptions {
    /// Plain recursion without any shortcut.
    pub fn plain() -> Self {
        RefuteOptions {
            prune_pure: false,
            sat_shortcut: false,
            memo: false,
        }
    }
}

const MEMO_LIMIT: usize = 1 << 21;

/// Decides "is `r_k(F)` refuted" on packed clause-sets, memoising on the
/// canonical form.
pub(crate) struct Refuter {
    opts: RefuteOptions,
    memo: HashMap<(usize, Vec<Bits>), bool>,
}

impl Default for Refuter {
    fn default() -> Self {
        Refuter::new(RefuteOptions::default())
    }
}

impl Refuter {
    pub fn new(opts: RefuteOptions) -> Self {
        Refuter {
            opts,
            memo: HashMap::new(),
        }
    }

    pub fn refutes(&mut self, k: usize, f: &[Bits]) -> bool {
        if f.iter().any(|c| c.is_empty()) {
            return true;
        }
        if k == 0 {
            return false;
        }
        // Unit propagation is the first level of every r_k with k >= 1.
        let Some((mut g, _)) = unit_propagate(f) else {
            return true;
        };
        if self.opts.prune_pure {
            prune_pure(&mut g);
        }
        if g.is_empty() || k == 1 {
            return false;
        }
        let key = if self.opts.memo {
            let key = (k, g.clone());
            if let Some(&r) = self.memo.get(&key) {
                return r;
            }
            Some(key)
        } else {
            None
        };
        let r = if self.opts.sat_shortcut && sat::is_sat(&g) {
            false
        } else {
            self.search(k, g)
        };
        if let Some(key) = key {
            if self.memo.len() >= MEMO_LIMIT {
                self.memo.clear();
            }
            self.memo.insert(key, r);
        }
        r
    }

    fn search(&mut self, k: usize, mut g: Vec<Bits>) -> bool {
        loop {
            let mut changed = false;
            for (bit, s) in union_all(&g).lits() {
                let present = union_all(&g);
                let here = if s { present.pos } else { present.neg };
                if (here >> bit) & 1 == 0 {
                    continue;
                }
                let h = apply_all(&g, Bits::lit(bit, !s));
                if self.refutes(k - 1, &h) {
                    let Some((mut next, _)) = unit_propagate(&apply_all(&g, Bits::lit(bit, s)))
                    else {
                        return true;
                    };
                    if self.opts.prune_pure {
                        prune_pure(&mut next);
                    }
                    if next.is_empty() {
                        return false;
                    }
                    g = next;
                    changed = true;
                }
            }
            if !changed {
                return false;
            }
        }
    }
}

/// Exact `r_k` on a packed set, scanning literals in the order given by
/// `order` (pairs of bit and polarity). Literal tests use `refuter`.
pub(crate) fn rk_exact_packed(
    f: &[Bits],
    k: usize,
    order: &[(u32, bool)],
    refuter: &mut Refuter,
) -> (Vec<Bits>, Bits, bool) {
    let mut g = f.to_vec();
    let mut assigned = Bits::EMPTY;
    if g.iter().any(|c| c.is_empty()) {
        return (vec![Bits::EMPTY], assigned, true);
    }
    if k == 0 {
        return (g, assigned, false);
    }
    loop {
        let mut changed = false;
        for &(bit, s) in order {
            let present = union_all(&g);
            let here = if s { present.pos } else { present.neg };
            if (here >> bit) & 1 == 0 {
                continue;
            }
            let h = apply_all(&g, Bits::lit(bit, !s));
            if refuter.refutes(k - 1, &h) {
                let t = Bits::lit(bit, s);
                assigned = assigned.union(t);
                g = apply_all(&g, t);
                if g.iter().any(|c| c.is_empty()) {
                    return (vec![Bits::EMPTY], assigned, true);
                }
                changed = true;
            }
        }
        if !changed {
            return (g, assigned, false);
        }
    }
}

fn to_result(idx: &VarIndex, reduced: &[Bits], assigned: Bits, refuted: bool) -> PropagationResult {
    PropagationResult {
        reduced: idx.unpack_set(reduced),
        assigned: idx.unpack_assignment(assigned),
        refuted,
    }
}

/// Generalised unit-clause propagation: `r_0` only detects `⊥ ∈ F`; `r_k`
/// repeatedly sets `x` true whenever `r_{k-1}(<x→0> * F)` is refuted.
///
/// Literals are scanned by ascending variable, positive first.
pub fn r_k(f: &ClauseSet, k: usize) -> Result<PropagationResult> {
    let idx = VarIndex::of(f)?;
    let packed = idx.pack_set(f)?;
    let order: Vec<(u32, bool)> = (0..idx.len() as u32)
        .flat_map(|b| [(b, true), (b, false)])
        .collect();
    let (red, asg, refuted) = rk_exact_packed(&packed, k, &order, &mut Refuter::default());
    Ok(to_result(&idx, &red, asg, refuted))
}

/// `r_k` with a caller-chosen literal scan order. Literals missing from
/// `order` are scanned afterwards in canonical order.
pub fn r_k_in_order(f: &ClauseSet, k: usize, order: &[Lit]) -> Result<PropagationResult> {
    let idx = VarIndex::of(f)?;
    let packed = idx.pack_set(f)?;
    let mut scan: Vec<(u32, bool)> = order
        .iter()
        .filter_map(|l| idx.bit(l.var()).map(|b| (b, l.is_positive())))
        .collect();
    for b in 0..idx.len() as u32 {
        for s in [true, false] {
            if !scan.contains(&(b, s)) {
                scan.push((b, s));
            }
        }
    }
    let (red, asg, refuted) = rk_exact_packed(&packed, k, &scan, &mut Refuter::default());
    Ok(to_result(&idx, &red, asg, refuted))
}

/// Whether `r_k(F)` is refuted, using the given shortcuts.
pub fn rk_refutes(f: &ClauseSet, k: usize, opts: RefuteOptions) -> Result<bool> {
    let idx = VarIndex::of(f)?;
    let packed = idx.pack_set(f)?;
    Ok(Refuter::new(opts).refutes(k, &packed))
}

/// `r_∞`: applies every forced assignment. Forced literals are found with
/// the satisfiability oracle; one round suffices because a literal forced
/// after applying forced literals was already forced before.
pub fn r_inf(f: &ClauseSet) -> Result<PropagationResult> {
    let idx = VarIndex::of(f)?;
    let packed = idx.pack_set(f)?;
    let (red, asg, refuted) = rinf_packed(&packed);
    Ok(to_result(&idx, &red, asg, refuted))
}

pub(crate) fn rinf_packed(f: &[Bits]) -> (Vec<Bits>, Bits, bool) {
    match forced_packed(f) {
        None => (vec![Bits::EMPTY], Bits::EMPTY, true),
        Some(t) => (apply_all(f, t), t, false),
    }
}

/// True-literal mask of the forced literals, or `None` if `f` is unsatisfiable.
pub(crate) fn forced_packed(f: &[Bits]) -> Option<Bits> {
    let model = sat::solve(f)?;
    let mut forced = Bits::EMPTY;
    for (bit, s) in union_all(f).lits() {
        // A literal false in the model is certainly not forced.
        let m = if s { model.neg } else { model.pos };
        if (m >> bit) & 1 == 1 {
            continue;
        }
        if !sat::is_sat(&apply_all(f, Bits::lit(bit, !s))) {
            forced = forced.union(Bits::lit(bit, s));
        }
    }
    Some(forced)
}

/// The forced literals of a clause-set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Forced {
    /// The clause-set is unsatisfiable, so every literal is forced.
    All,
    Lits(BTreeSet<Lit>),
}

/// The literals `x` with `<x→0> * F` unsatisfiable.
pub fn forced_literals(f: &ClauseSet) -> Result<Forced> {
    let idx = VarIndex::of(f)?;
    let packed = idx.pack_set(f)?;
    Ok(match forced_packed(&packed) {
        None => Forced::All,
        Some(t) => Forced::Lits(idx.unpack(t).iter().collect()),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SatResult {
    pub satisfiable: bool,
    /// A total assignment over `var(F)` satisfying `F`.
    pub model: Option<PartialAssignment>,
}

/// Backtracking satisfiability test with unit propagation, restricted to
/// `limits.sat_vars` variables.
pub fn sat_oracle(f: &ClauseSet, limits: &Limits) -> Result<SatResult> {
    cap(
        "variables for the sat oracle",
        f.num_vars(),
        limits.sat_vars,
    )?;
    let idx = VarIndex::of(f)?;
    let packed = idx.pack_set(f)?;
    Ok(match sat::solve(&packed) {
        None => SatResult {
            satisfiable: false,
            model: None,
        },
        Some(t) => {
            let all =
                (0..idx.len() as u32).fold(Bits::EMPTY, |acc, b| acc.union(Bits::lit(b, false)));
            let total = Bits {
                pos: t.pos,
                neg: all.neg & !t.pos,
            };
            SatResult {
                satisfiable: true,
                model: Some(idx.unpack_assignment(total)),
            }
        }
    })
}

/// Whether `F` is satisfiable, for up to 128 variables.
pub fn is_satisfiable(f: &ClauseSet) -> Result<bool> {
    let idx = VarIndex::of(f)?;
    Ok(sat::is_sat(&idx.pack_set(f)?))
}

//! k-base compilation, prime implicates by collapsing small subsets, and
//! knowledge-compilation queries answered by k-resolution.

use serde::Serialize;

use crate::clause::{Clause, ClauseSet, PartialAssignment, Var};
use crate::error::{Error, Result};
use crate::hardness::{Rule, Saturator};
use crate::limits::Limits;
use crate::mpsdope::pure_clause;
use crate::packed::{apply_all, Bits, VarIndex};
use crate::primes::{essential_packed, PrimeSet};
use crate::propagation::Refuter;
use crate::sat;
use crate::trigger::greedy_subset;

/// How a k-base was obtained.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub essential: ClauseSet,
    /// Phase-1 additions, in order.
    pub added: Vec<Clause>,
    /// Phase-2 removals, in order.
    pub removed: Vec<Clause>,
    /// The essential primes were equivalent on their own but too hard.
    pub essential_too_hard: bool,
    pub exhaustive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KBase {
    pub clauses: ClauseSet,
    pub level: usize,
    /// No clause can be removed without losing equivalence or raising the
    /// hardness above `level`.
    pub minimal: bool,
    pub provenance: Provenance,
}

/// For `sub` a subset of `primes`: `sub` is equivalent to the primes and has
/// hardness at most `k`.
fn uc_k_equivalent(sub: &[Bits], primes: &[Bits], k: usize, r: &mut Refuter) -> bool {
    primes
        .iter()
        .all(|&c| r.refutes(k, &apply_all(sub, c.complement())))
}

fn packed_primes(p: &PrimeSet) -> Result<(VarIndex, Vec<Bits>)> {
    let idx = VarIndex::of(&p.primes)?;
    let packed = idx.pack_set(&p.primes)?;
    Ok((idx, packed))
}

/// The k-base heuristic: start from the essential primes, add the others by
/// ascending length until equivalent with hardness at most `k`, then try to
/// drop clauses by descending length. Ties follow canonical clause order.
pub fn k_base(p: &PrimeSet, k: usize, _limits: &Limits) -> Result<KBase> {
    let (idx, primes) = packed_primes(p)?;
    let essential = essential_packed(&primes);
    let mut r = Refuter::default();
    let essential_too_hard =
        sat_entails_all(&essential, &primes) && !uc_k_equivalent(&essential, &primes, k, &mut r);
    let (cur, added, removed) = greedy_subset(&primes, &essential, |s| {
        Ok(uc_k_equivalent(s, &primes, k, &mut r))
    })?;
    let base = idx.unpack_set(&cur);
    let minimal = is_minimal(&cur, &primes, k, &mut r);
    Ok(KBase {
        clauses: base,
        level: k,
        minimal,
        provenance: Provenance {
            essential: idx.unpack_set(&essential),
            added: added.iter().map(|&c| idx.unpack(c)).collect(),
            removed: removed.iter().map(|&c| idx.unpack(c)).collect(),
            essential_too_hard,
            exhaustive: false,
        },
    })
}

fn sat_entails_all(sub: &[Bits], primes: &[Bits]) -> bool {
    primes
        .iter()
        .all(|&c| !sat::is_sat(&apply_all(sub, c.complement())))
}

fn is_minimal(cur: &[Bits], primes: &[Bits], k: usize, r: &mut Refuter) -> bool {
    (0..cur.len()).all(|i| {
        let rest: Vec<Bits> = cur
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &c)| c)
            .collect();
        !uc_k_equivalent(&rest, primes, k, r)
    })
}

/// A smallest k-base, by trying subsets containing the essential primes in
/// order of size. Enumeration is capped by `limits.exhaustive_primes` on the
/// number of non-essential primes, unless the essential primes suffice.
pub fn k_base_exhaustive(p: &PrimeSet, k: usize, limits: &Limits) -> Result<KBase> {
    let (idx, primes) = packed_primes(p)?;
    let essential = essential_packed(&primes);
    let mut r = Refuter::default();
    let free: Vec<Bits> = primes
        .iter()
        .copied()
        .filter(|c| !essential.contains(c))
        .collect();
    let essential_ok = uc_k_equivalent(&essential, &primes, k, &mut r);
    if !essential_ok && free.len() > limits.exhaustive_primes {
        return Err(Error::CapExceeded {
            what: "free prime implicates for exhaustive k-base",
            value: free.len() as u64,
            limit: limits.exhaustive_primes as u64,
        });
    }
    for extra in 0..=free.len() {
        for combo in combinations(free.len(), extra) {
            let mut sub = essential.clone();
            sub.extend(combo.iter().map(|&i| free[i]));
            if uc_k_equivalent(&sub, &primes, k, &mut r) {
                sub.sort();
                return Ok(KBase {
                    clauses: idx.unpack_set(&sub),
                    level: k,
                    minimal: is_minimal(&sub, &primes, k, &mut r),
                    provenance: Provenance {
                        essential: idx.unpack_set(&essential),
                        added: combo.iter().map(|&i| idx.unpack(free[i])).collect(),
                        removed: Vec::new(),
                        essential_too_hard: !essential_ok && sat_entails_all(&essential, &primes),
                        exhaustive: true,
                    },
                });
            }
        }
    }
    Err(Error::Integrity(
        "the full prime set has hardness above 0".to_string(),
    ))
}

/// Subsets of `0..n` of size `s` in lexicographic order.
pub(crate) fn combinations(n: usize, s: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur: Option<Vec<usize>> = (s <= n).then(|| (0..s).collect());
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let c = cur.as_mut().expect("present");
        let mut i = s;
        loop {
            if i == 0 {
                cur = None;
                break;
            }
            i -= 1;
            if c[i] < n - s + i {
                c[i] += 1;
                for j in i + 1..s {
                    c[j] = c[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    })
}

/// The result of [`canon_primes_report`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CanonReport {
    pub clauses: ClauseSet,
    /// Prime implicates not produced (the premise bound was too small).
    pub missing: ClauseSet,
    /// Produced clauses that are not prime implicates.
    pub spurious: ClauseSet,
    pub subsets: u64,
}

/// Pure clauses `purec(F')` of the subsets `F' ⊆ F` with `c(F') ≤ K` and
/// `F' ⊨ purec(F')`, reduced by subsumption. This is the set of prime
/// implicates whenever every prime follows from at most `K` clauses.
pub fn canon_primes(f: &ClauseSet, bound: usize, limits: &Limits) -> Result<ClauseSet> {
    Ok(canon_collect(f, bound, limits)?.0)
}

fn canon_collect(f: &ClauseSet, bound: usize, limits: &Limits) -> Result<(ClauseSet, u64)> {
    if bound == 0 || bound > f.len().max(1) {
        return Err(Error::Domain(format!(
            "premise bound {bound} must lie in 1..={}",
            f.len().max(1)
        )));
    }
    let clauses: Vec<Clause> = f.iter().cloned().collect();
    let total: u128 = (1..=bound)
        .map(|s| crate::trigger::binomial(clauses.len(), s))
        .sum();
    if total > limits.search_nodes as u128 {
        return Err(Error::CapExceeded {
            what: "premise subsets",
            value: total.min(u64::MAX as u128) as u64,
            limit: limits.search_nodes,
        });
    }
    let mut out = ClauseSet::top();
    let mut count = 0u64;
    for s in 1..=bound {
        for combo in combinations(clauses.len(), s) {
            count += 1;
            let sub: ClauseSet = combo.iter().map(|&i| clauses[i].clone()).collect();
            let pc = pure_clause(&sub);
            if crate::primes::implies(&sub, &pc)? {
                out.insert(pc);
            }
        }
    }
    Ok((out.subsumption_eliminate(), count))
}

/// [`canon_primes`] compared against the prime implicates.
pub fn canon_primes_report(f: &ClauseSet, bound: usize, limits: &Limits) -> Result<CanonReport> {
    let (clauses, subsets) = canon_collect(f, bound, limits)?;
    let primes = crate::primes::prime_implicates(f, limits)?.primes;
    Ok(CanonReport {
        missing: primes
            .iter()
            .filter(|c| !clauses.contains(c))
            .cloned()
            .collect(),
        spurious: clauses
            .iter()
            .filter(|c| !primes.contains(c))
            .cloned()
            .collect(),
        clauses,
        subsets,
    })
}

/// A knowledge-compilation query.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "arg")]
pub enum Query {
    /// Consistency.
    Co,
    /// Clausal entailment.
    Ce(Clause),
    /// Validity.
    Va,
    /// The assignment is an implicant.
    Im(PartialAssignment),
    /// `F` entails the given clause-set.
    Se(ClauseSet),
    Eq(ClauseSet),
    /// Model enumeration, as disjoint cubes over `var(F)`.
    Me,
    /// Model count over `var(F)`.
    Mc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Answer {
    Bool(bool),
    Models(Vec<PartialAssignment>),
    Count(u128),
}

/// Answers queries on `F ∈ WC_k` with k-resolution only. A negative
/// k-resolution verdict is cross-checked by a SAT call; if they disagree
/// the precondition is violated and an integrity error names the
/// instantiation.
pub struct QueryEngine {
    idx: VarIndex,
    f: Vec<Bits>,
    k: usize,
    sat: Saturator,
    max_models: usize,
}

impl QueryEngine {
    pub fn new(f: &ClauseSet, k: usize, limits: &Limits) -> Result<Self> {
        let idx = VarIndex::of(f)?;
        let packed = idx.pack_set(f)?;
        Ok(QueryEngine {
            idx,
            f: packed,
            k,
            sat: Saturator::new(limits.closure_clauses),
            max_models: limits.models,
        })
    }

    /// k-resolution refutes `t * F`.
    fn refuted_under(&mut self, f: &[Bits], t: Bits) -> Result<bool> {
        let g = apply_all(f, t);
        let refuted = self.sat.refutes(&g, Rule::KResolution(self.k))?;
        if !refuted && !sat::is_sat(&g) {
            let phi = self.idx.unpack_assignment(t);
            return Err(Error::Integrity(format!(
                "{phi} makes the clause-set unsatisfiable but {}-resolution finds no refutation",
                self.k
            )));
        }
        Ok(refuted)
    }

    /// Packs a clause over the engine's variables; `None` if it mentions
    /// variables outside `var(F)`, keeping only the shared literals in `Some`.
    fn pack_clause(&self, c: &Clause) -> (Bits, bool) {
        let mut b = Bits::EMPTY;
        let mut foreign = false;
        for l in c.iter() {
            match self.idx.bit(l.var()) {
                Some(bit) => b = b.union(Bits::lit(bit, l.is_positive())),
                None => foreign = true,
            }
        }
        (b, foreign)
    }

    /// `F ⊨ C`. Literals over variables outside `var(F)` can be dropped,
    /// except that a satisfiable `F` never entails the empty remainder.
    pub fn entails_clause(&mut self, c: &Clause) -> Result<bool> {
        let (b, _) = self.pack_clause(c);
        let f = self.f.clone();
        self.refuted_under(&f, b.complement())
    }

    pub fn answer(&mut self, q: &Query) -> Result<Answer> {
        Ok(match q {
            Query::Co => {
                let f = self.f.clone();
                Answer::Bool(!self.refuted_under(&f, Bits::EMPTY)?)
            }
            Query::Ce(c) => Answer::Bool(self.entails_clause(c)?),
            Query::Va => Answer::Bool(self.f.is_empty()),
            Query::Im(phi) => {
                let t = self.pack_assignment(phi);
                Answer::Bool(apply_all(&self.f, t).is_empty())
            }
            Query::Se(g) => Answer::Bool(self.entails_set(g)?),
            Query::Eq(g) => {
                let there = self.entails_set(g)?;
                let back = if there {
                    let mut other = QueryEngine {
                        idx: VarIndex::of(g)?,
                        f: VarIndex::of(g)?.pack_set(g)?,
                        k: self.k,
                        sat: Saturator::new(self.sat.max_clauses),
                        max_models: self.max_models,
                    };
                    let own: Vec<Clause> = self.idx.unpack_set(&self.f).into_iter().collect();
                    let mut all = true;
                    for c in own {
                        if !other.entails_clause(&c)? {
                            all = false;
                            break;
                        }
                    }
                    all
                } else {
                    false
                };
                Answer::Bool(there && back)
            }
            Query::Me => Answer::Models(self.enumerate()?),
            Query::Mc => {
                let n = self.idx.len() as u32;
                let cubes = self.enumerate()?;
                Answer::Count(
                    cubes
                        .iter()
                        .map(|phi| 1u128 << (n - phi.len() as u32))
                        .sum(),
                )
            }
        })
    }

    fn pack_assignment(&self, phi: &PartialAssignment) -> Bits {
        let mut t = Bits::EMPTY;
        for l in phi.true_lits() {
            if let Some(bit) = self.idx.bit(l.var()) {
                t = t.union(Bits::lit(bit, l.is_positive()));
            }
        }
        t
    }

    fn entails_set(&mut self, g: &ClauseSet) -> Result<bool> {
        for c in g.iter() {
            if !self.entails_clause(c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Decision-tree enumeration on variables in ascending order; a branch
    /// is abandoned as soon as k-resolution refutes it, so every explored
    /// leaf is a model cube.
    pub fn enumerate(&mut self) -> Result<Vec<PartialAssignment>> {
        let mut out = Vec::new();
        let f = self.f.clone();
        if !self.refuted_under(&f, Bits::EMPTY)? {
            self.branch(Bits::EMPTY, &mut out)?;
        }
        Ok(out)
    }

    fn branch(&mut self, t: Bits, out: &mut Vec<PartialAssignment>) -> Result<()> {
        let g = apply_all(&self.f, t);
        if g.is_empty() {
            out.push(self.idx.unpack_assignment(t));
            return crate::error::cap("model cubes", out.len(), self.max_models);
        }
        let vars = crate::packed::union_all(&g).vars();
        let bit = vars.trailing_zeros();
        for s in [true, false] {
            let t2 = t.union(Bits::lit(bit, s));
            if !self.refuted_under(&self.f.clone(), t2)? {
                self.branch(t2, out)?;
            }
        }
        Ok(())
    }

    pub fn vars(&self) -> Vec<Var> {
        (0..self.idx.len() as u32)
            .map(|b| self.idx.var(b))
            .collect()
    }
}

/// One-shot [`QueryEngine::answer`].
pub fn answer_query(q: &Query, f: &ClauseSet, k: usize, limits: &Limits) -> Result<Answer> {
    QueryEngine::new(f, k, limits)?.answer(q)
}

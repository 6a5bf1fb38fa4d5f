//! Prime implicates and implicants, essential primes, entailment and
//! equivalence.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use crate::clause::{Clause, ClauseSet, PartialAssignment, Var};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::packed::{apply_all, Bits, VarIndex};
use crate::sat;

/// The prime implicates (or implicants) of a clause-set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeSet {
    pub primes: ClauseSet,
    pub source_vars: BTreeSet<Var>,
}

impl PrimeSet {
    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }
}

/// `F ⊨ C`, decided as unsatisfiability of `φ_C * F`.
pub fn implies(f: &ClauseSet, c: &Clause) -> Result<bool> {
    let idx = VarIndex::of(f)?;
    let packed = idx.pack_set(f)?;
    let t = idx.pack_assignment(&PartialAssignment::falsifying(c));
    Ok(!sat::is_sat(&apply_all(&packed, t)))
}

/// Every clause of `g` is entailed by `f`.
pub fn entails(f: &ClauseSet, g: &ClauseSet) -> Result<bool> {
    let idx = VarIndex::of(f)?;
    let packed = idx.pack_set(f)?;
    for c in g.iter() {
        let t = idx.pack_assignment(&PartialAssignment::falsifying(c));
        if sat::is_sat(&apply_all(&packed, t)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Mutual entailment.
pub fn equivalent(f: &ClauseSet, g: &ClauseSet) -> Result<bool> {
    Ok(entails(f, g)? && entails(g, f)?)
}

/// Clause store kept free of subsumed clauses. Forward subsumption uses a
/// literal trie, backward subsumption per-literal occurrence lists.
pub(crate) struct SubsumptionDb {
    clauses: Vec<Bits>,
    alive: Vec<bool>,
    trie: Vec<TrieNode>,
    occ: Vec<Vec<usize>>,
    present: HashSet<Bits>,
    has_empty: bool,
    count: usize,
}

#[derive(Default)]
struct TrieNode {
    children: Vec<(u8, u32)>,
    terminal: Option<usize>,
}

fn code(bit: u32, positive: bool) -> usize {
    2 * bit as usize + usize::from(!positive)
}

fn has_code(r: Bits, c: u8) -> bool {
    let bit = c / 2;
    if c % 2 == 0 {
        (r.pos >> bit) & 1 == 1
    } else {
        (r.neg >> bit) & 1 == 1
    }
}

impl SubsumptionDb {
    pub fn new() -> Self {
        SubsumptionDb {
            clauses: Vec::new(),
            alive: Vec::new(),
            trie: vec![TrieNode::default()],
            occ: vec![Vec::new(); 256],
            present: HashSet::new(),
            has_empty: false,
            count: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.count
    }

    fn subset_below(&self, node: usize, r: Bits) -> bool {
        let n = &self.trie[node];
        if n.terminal.is_some_and(|i| self.alive[i]) {
            return true;
        }
        n.children
            .iter()
            .any(|&(c, child)| has_code(r, c) && self.subset_below(child as usize, r))
    }

    /// Some stored clause is a subset of (or equal to) `r`.
    pub fn is_subsumed(&self, r: Bits) -> bool {
        self.has_empty || self.present.contains(&r) || self.subset_below(0, r)
    }

    fn kill(&mut self, i: usize) {
        self.alive[i] = false;
        self.present.remove(&self.clauses[i]);
        self.count -= 1;
    }

    /// Inserts `r` unless subsumed, removing the clauses it subsumes.
    pub fn insert(&mut self, r: Bits) -> bool {
        if self.is_subsumed(r) {
            return false;
        }
        if r.is_empty() {
            for i in 0..self.clauses.len() {
                if self.alive[i] {
                    self.kill(i);
                }
            }
            self.has_empty = true;
        } else {
            let rarest = r
                .lits()
                .map(|(b, s)| code(b, s))
                .min_by_key(|&c| self.occ[c].len())
                .expect("non-empty clause");
            let mut list = std::mem::take(&mut self.occ[rarest]);
            for &i in &list {
                if self.alive[i] && r.subsumes(self.clauses[i]) {
                    self.kill(i);
                }
            }
            list.retain(|&i| self.alive[i]);
            self.occ[rarest] = list;
        }
        let i = self.clauses.len();
        self.clauses.push(r);
        self.alive.push(true);
        self.present.insert(r);
        self.count += 1;
        let mut node = 0usize;
        for (b, s) in r.lits() {
            let c = code(b, s);
            self.occ[c].push(i);
            let c = c as u8;
            node = match self.trie[node].children.iter().find(|&&(x, _)| x == c) {
                Some(&(_, child)) => child as usize,
                None => {
                    let child = self.trie.len();
                    self.trie.push(TrieNode::default());
                    self.trie[node].children.push((c, child as u32));
                    child
                }
            };
        }
        self.trie[node].terminal = Some(i);
        true
    }

    pub fn iter(&self) -> impl Iterator<Item = Bits> + '_ {
        self.clauses
            .iter()
            .zip(&self.alive)
            .filter(|(_, &a)| a)
            .map(|(&c, _)| c)
    }

    pub fn into_sorted(self) -> Vec<Bits> {
        let mut v: Vec<Bits> = self.iter().collect();
        v.sort_unstable();
        v
    }
}

/// Tison's method: for each variable in turn, add all resolvents on it,
/// keeping the store subsumption-free. One pass per variable suffices, in
/// any variable order; the variable with the fewest clause pairs goes next.
pub(crate) fn primes_packed(f: &[Bits], nvars: usize, max_primes: usize) -> Result<Vec<Bits>> {
    let mut db = SubsumptionDb::new();
    let mut sorted = f.to_vec();
    sorted.sort_by_key(|c| c.len());
    for c in sorted {
        db.insert(c);
    }
    let mut todo: Vec<u32> = (0..nvars as u32).collect();
    while !todo.is_empty() {
        // next variable: fewest resolution pairs, lowest index on ties
        let (pos, &bit) = todo
            .iter()
            .enumerate()
            .min_by_key(|&(_, &b)| {
                let m = 1u128 << b;
                let np = db.iter().filter(|c| c.pos & m != 0).count();
                let nn = db.iter().filter(|c| c.neg & m != 0).count();
                (np * nn, b)
            })
            .expect("non-empty");
        todo.remove(pos);
        let m = 1u128 << bit;
        let p: Vec<Bits> = db.iter().filter(|c| c.pos & m != 0).collect();
        let n: Vec<Bits> = db.iter().filter(|c| c.neg & m != 0).collect();
        let mut new: Vec<Bits> = Vec::new();
        for a in &p {
            for b in &n {
                if let Some(r) = a.resolve(*b) {
                    new.push(r);
                }
            }
        }
        new.sort_unstable_by_key(|c| (c.len(), *c));
        new.dedup();
        for r in new {
            db.insert(r);
            if db.len() > max_primes {
                return Err(Error::CapExceeded {
                    what: "prime implicates",
                    value: db.len() as u64,
                    limit: max_primes as u64,
                });
            }
        }
    }
    Ok(db.into_sorted())
}

/// All prime implicates, by Tison's resolution method.
pub fn prime_implicates(f: &ClauseSet, limits: &Limits) -> Result<PrimeSet> {
    let idx = VarIndex::of(f)?;
    let packed = idx.pack_set(f)?;
    let primes = primes_packed(&packed, idx.len(), limits.primes)?;
    Ok(PrimeSet {
        primes: idx.unpack_set(&primes),
        source_vars: f.vars(),
    })
}

/// All prime implicants: inclusion-minimal non-tautological literal sets
/// meeting every clause.
pub fn prime_implicants(f: &ClauseSet, limits: &Limits) -> Result<PrimeSet> {
    let idx = VarIndex::of(f)?;
    let packed = idx.pack_set(f)?;
    let mut found = Vec::new();
    hitting_sets(&packed, Bits::EMPTY, &mut found, limits.primes)?;
    let mut db = SubsumptionDb::new();
    found.sort_unstable_by_key(|c| (c.len(), *c));
    for h in found {
        db.insert(h);
    }
    Ok(PrimeSet {
        primes: idx.unpack_set(&db.into_sorted()),
        source_vars: f.vars(),
    })
}

fn hitting_sets(f: &[Bits], cur: Bits, out: &mut Vec<Bits>, max: usize) -> Result<()> {
    let unhit = f
        .iter()
        .find(|c| c.pos & cur.pos == 0 && c.neg & cur.neg == 0);
    let Some(&c) = unhit else {
        out.push(cur);
        if out.len() > max {
            return Err(Error::CapExceeded {
                what: "prime implicant candidates",
                value: out.len() as u64,
                limit: max as u64,
            });
        }
        return Ok(());
    };
    for (bit, s) in c.lits() {
        let l = Bits::lit(bit, s);
        if cur.clash_mask(l) != 0 {
            continue;
        }
        hitting_sets(f, cur.union(l), out, max)?;
    }
    Ok(())
}

/// The prime implicates `C` such that the other primes do not entail `C`.
pub fn essential_primes(f: &ClauseSet, limits: &Limits) -> Result<ClauseSet> {
    let idx = VarIndex::of(f)?;
    let packed = idx.pack_set(f)?;
    let primes = primes_packed(&packed, idx.len(), limits.primes)?;
    Ok(idx.unpack_set(&essential_packed(&primes)))
}

pub(crate) fn essential_packed(primes: &[Bits]) -> Vec<Bits> {
    let mut out = Vec::new();
    for (i, &c) in primes.iter().enumerate() {
        let rest: Vec<Bits> = primes
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &d)| d)
            .collect();
        if sat::is_sat(&apply_all(&rest, c.complement())) {
            out.push(c);
        }
    }
    out
}

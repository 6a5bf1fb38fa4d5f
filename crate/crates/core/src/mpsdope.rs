//! Pure clauses, minimal premise sets, (saturated) minimal unsatisfiability
//! and doping.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::clause::{Clause, ClauseSet, Lit, PartialAssignment, Var};
use crate::error::{cap, Error, Result};
use crate::limits::Limits;
use crate::packed::{Bits, VarIndex};
use crate::primes::primes_packed;
use crate::sat;

/// `purec(F)`: the literals of `F` whose complement does not occur in `F`.
pub fn pure_clause(f: &ClauseSet) -> Clause {
    let lits = f.occurring_lits();
    Clause::new(
        lits.iter()
            .copied()
            .filter(|l| !lits.contains(&l.complement())),
    )
    .expect("pure literals never clash")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MuFlags {
    pub mu: bool,
    pub smu: bool,
    pub smu_delta1: bool,
}

fn without(f: &[Bits], i: usize) -> Vec<Bits> {
    f.iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(_, &c)| c)
        .collect()
}

fn mu_packed(f: &[Bits]) -> bool {
    !sat::is_sat(f) && (0..f.len()).all(|i| sat::is_sat(&without(f, i)))
}

/// Minimal unsatisfiability, saturation, and deficiency one.
pub fn classify_mu(f: &ClauseSet) -> Result<MuFlags> {
    let idx = VarIndex::of(f)?;
    let p = idx.pack_set(f)?;
    let mu = mu_packed(&p);
    let smu = mu && {
        let all = (0..idx.len() as u32).fold(0u128, |a, b| a | 1 << b);
        (0..p.len()).all(|i| {
            let c = p[i];
            let free = all & !c.vars();
            let rest = without(&p, i);
            (0..idx.len() as u32)
                .filter(|b| (free >> b) & 1 == 1)
                .all(|b| {
                    [true, false].into_iter().all(|s| {
                        let mut g = rest.clone();
                        g.push(c.union(Bits::lit(b, s)));
                        sat::is_sat(&g)
                    })
                })
        })
    };
    let m = f.measures();
    Ok(MuFlags {
        mu,
        smu,
        smu_delta1: smu && m.delta == 1,
    })
}

/// Result of the minimal-premise-set test, with the pure clause that an mps
/// entails minimally.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MpsCheck {
    pub is_mps: bool,
    pub pure_clause: Clause,
    pub contraction_free: bool,
}

/// Clause images under `φ`, as a list: `None` for satisfied clauses.
fn images(f: &ClauseSet, phi: &PartialAssignment) -> Vec<Option<Clause>> {
    f.iter()
        .map(|c| {
            if c.iter().any(|l| phi.value(l) == Some(true)) {
                None
            } else {
                Some(Clause::new(c.iter().filter(|&l| phi.value(l).is_none())).expect("sub-clause"))
            }
        })
        .collect()
}

/// No two clauses of `F` are mapped to the same clause by `φ`.
pub fn contraction_free(f: &ClauseSet, phi: &PartialAssignment) -> bool {
    let imgs: Vec<Clause> = images(f, phi).into_iter().flatten().collect();
    let distinct: BTreeSet<&Clause> = imgs.iter().collect();
    distinct.len() == imgs.len()
}

/// `F` is an mps iff `φ_{purec(F)}` is contraction-free for `F` and
/// `φ_{purec(F)} * F` is minimally unsatisfiable.
pub fn is_mps(f: &ClauseSet) -> Result<MpsCheck> {
    let p = pure_clause(f);
    let phi = PartialAssignment::falsifying(&p);
    let cf = contraction_free(f, &phi);
    let ok = !f.is_top() && cf && classify_mu(&phi.apply(f))?.mu;
    Ok(MpsCheck {
        is_mps: ok,
        pure_clause: p,
        contraction_free: cf,
    })
}

/// One member of `mps(F)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct MpsMember {
    /// Positions of the member's clauses in the canonical order of `F`.
    pub indices: Vec<usize>,
    #[serde(skip)]
    pub clauses: ClauseSet,
    pub pure_clause: Clause,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MpsFamily {
    pub members: Vec<MpsMember>,
}

impl MpsFamily {
    fn new(mut members: Vec<MpsMember>) -> Self {
        members.sort();
        members.dedup();
        MpsFamily { members }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// The members as a set of clause-sets.
    pub fn sets(&self) -> BTreeSet<ClauseSet> {
        self.members.iter().map(|m| m.clauses.clone()).collect()
    }
}

fn member(f: &ClauseSet, indices: Vec<usize>) -> MpsMember {
    let clauses: ClauseSet = indices
        .iter()
        .map(|&i| f.iter().nth(i).expect("index").clone())
        .collect();
    let pure_clause = pure_clause(&clauses);
    MpsMember {
        indices,
        clauses,
        pure_clause,
    }
}

/// All non-empty subsets of `F` that are mps, by testing every subset.
pub fn mps_enumerate(f: &ClauseSet, limits: &Limits) -> Result<MpsFamily> {
    cap(
        "clauses for subset enumeration",
        f.len(),
        limits.subset_clauses,
    )?;
    let cls: Vec<&Clause> = f.iter().collect();
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << cls.len()) {
        let indices: Vec<usize> = (0..cls.len()).filter(|i| (mask >> i) & 1 == 1).collect();
        let sub: ClauseSet = indices.iter().map(|&i| cls[i].clone()).collect();
        if is_mps(&sub)?.is_mps {
            out.push(member(f, indices));
        }
    }
    Ok(MpsFamily::new(out))
}

/// `F` together with its doped version `D(F)`, where clause `C` receives the
/// fresh variable `u_C`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DopedClauseSet {
    pub base: ClauseSet,
    pub doped: ClauseSet,
    #[serde(serialize_with = "pairs")]
    pub doping_map: BTreeMap<Clause, Var>,
}

fn pairs<S: serde::Serializer>(
    m: &BTreeMap<Clause, Var>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(m.iter())
}

impl DopedClauseSet {
    pub fn doping_var(&self, c: &Clause) -> Option<Var> {
        self.doping_map.get(c).copied()
    }

    /// `D_F(C)` for a clause of the base.
    pub fn doped_clause(&self, c: &Clause) -> Option<Clause> {
        let u = self.doping_var(c)?;
        Some(Clause::new(c.iter().chain([u.pos()])).expect("fresh variable"))
    }

    /// The base clause doped with `u`, if `u` is a doping variable.
    pub fn clause_of(&self, u: Var) -> Option<&Clause> {
        self.doping_map
            .iter()
            .find(|&(_, &v)| v == u)
            .map(|(c, _)| c)
    }

    pub fn is_doping_var(&self, v: Var) -> bool {
        let m = self.base.max_var();
        v.0 > m && (v.0 - m) as usize <= self.base.len()
    }
}

/// Doping: `u_C = max_var(F) + rank of C` in canonical clause order,
/// ranks counted from 1.
pub fn dope(f: &ClauseSet) -> DopedClauseSet {
    let base_max = f.max_var();
    let mut doping_map = BTreeMap::new();
    let mut doped = ClauseSet::top();
    for (i, c) in f.iter().enumerate() {
        let u = Var(base_max + 1 + i as u32);
        doping_map.insert(c.clone(), u);
        doped.insert(Clause::new(c.iter().chain([u.pos()])).expect("fresh variable"));
    }
    DopedClauseSet {
        base: f.clone(),
        doped,
        doping_map,
    }
}

/// `mps(F)` read off the prime implicates of `D(F)`: the prime `C` stands for
/// the member `{D ∈ F : u_D ∈ var(C)}`.
pub fn mps_via_doping(f: &ClauseSet, limits: &Limits) -> Result<MpsFamily> {
    let d = dope(f);
    let idx = VarIndex::of(&d.doped)?;
    let packed = idx.pack_set(&d.doped)?;
    let primes = primes_packed(&packed, idx.len(), limits.primes)?;
    let rank: BTreeMap<Var, usize> = f
        .iter()
        .enumerate()
        .map(|(i, c)| (d.doping_map[c], i))
        .collect();
    let mut out = Vec::with_capacity(primes.len());
    for p in primes {
        let c = idx.unpack(p);
        let indices: Vec<usize> = c.vars().filter_map(|v| rank.get(&v).copied()).collect();
        if indices.is_empty() {
            return Err(Error::Integrity(format!(
                "prime implicate {c} of a doped clause-set has no doping variable"
            )));
        }
        out.push(member(f, indices));
    }
    Ok(MpsFamily::new(out))
}

/// Every non-empty subset is an mps: `φ_{purec(F)}` is contraction-free and
/// `φ_{purec(F)} * F` is saturated minimally unsatisfiable of deficiency 1.
pub fn is_total_mps(f: &ClauseSet) -> Result<bool> {
    let phi = PartialAssignment::falsifying(&pure_clause(f));
    Ok(contraction_free(f, &phi) && classify_mu(&phi.apply(f))?.smu_delta1)
}

/// `|primec_0(F)| = 2^{c(F)} - 1`: `F` is a total mps and every clause has a
/// variable of its own.
pub fn has_max_primes(f: &ClauseSet) -> Result<bool> {
    if !is_total_mps(f)? {
        return Ok(false);
    }
    let mut occ: BTreeMap<Var, usize> = BTreeMap::new();
    for c in f.iter() {
        for v in c.vars() {
            *occ.entry(v).or_default() += 1;
        }
    }
    Ok(f.iter().all(|c| c.vars().any(|v| occ[&v] == 1)))
}

/// The literals of `C` over base variables, i.e. `C` with doping variables
/// removed.
pub fn strip_doping(d: &DopedClauseSet, c: &Clause) -> Clause {
    Clause::new(c.iter().filter(|l: &Lit| !d.is_doping_var(l.var()))).expect("sub-clause")
}

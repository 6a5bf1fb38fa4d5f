//! Literals, clauses, clause-sets and partial assignments.
//!
//! Clauses are kept in canonical form: literals sorted by variable (the
//! positive literal before the negative one), without duplicates and without
//! complementary pairs. A [`ClauseSet`] is an ordered set of such clauses, so
//! equality, hashing and iteration order are independent of how a value was
//! built.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A propositional variable, numbered from 1 as in DIMACS.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Var(pub u32);

impl Var {
    pub fn pos(self) -> Lit {
        Lit(self.0 as i32)
    }

    pub fn neg(self) -> Lit {
        Lit(-(self.0 as i32))
    }

    /// The literal of this variable with the given polarity.
    pub fn lit(self, positive: bool) -> Lit {
        if positive {
            self.pos()
        } else {
            self.neg()
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A literal in DIMACS convention: `v` or `-v` for a variable `v >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Lit(i32);

impl Lit {
    pub fn new(value: i32) -> Result<Lit> {
        if value == 0 || value == i32::MIN {
            return Err(Error::ZeroLiteral);
        }
        Ok(Lit(value))
    }

    pub fn value(self) -> i32 {
        self.0
    }

    pub fn var(self) -> Var {
        Var(self.0.unsigned_abs())
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    pub fn complement(self) -> Lit {
        Lit(-self.0)
    }
}

impl std::ops::Neg for Lit {
    type Output = Lit;
    fn neg(self) -> Lit {
        self.complement()
    }
}

impl Ord for Lit {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.var(), self.0 < 0).cmp(&(other.var(), other.0 < 0))
    }
}

impl PartialOrd for Lit {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A complement-free finite set of literals. The empty clause is `⊥`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Clause {
    lits: Vec<Lit>,
}

impl Clause {
    /// The empty clause `⊥`.
    pub fn empty() -> Clause {
        Clause { lits: Vec::new() }
    }

    /// Builds a clause; duplicate literals are merged and a complementary
    /// pair is rejected.
    pub fn new(lits: impl IntoIterator<Item = Lit>) -> Result<Clause> {
        let mut lits: Vec<Lit> = lits.into_iter().collect();
        lits.sort();
        lits.dedup();
        for w in lits.windows(2) {
            if w[0].var() == w[1].var() {
                return Err(Error::Tautology(w[0].var().0));
            }
        }
        Ok(Clause { lits })
    }

    pub fn from_ints(values: &[i32]) -> Result<Clause> {
        let lits = values
            .iter()
            .map(|&v| Lit::new(v))
            .collect::<Result<Vec<_>>>()?;
        Clause::new(lits)
    }

    pub(crate) fn from_sorted_unchecked(lits: Vec<Lit>) -> Clause {
        debug_assert!(lits.windows(2).all(|w| w[0].var() < w[1].var()));
        Clause { lits }
    }

    pub fn lits(&self) -> &[Lit] {
        &self.lits
    }

    pub fn iter(&self) -> impl Iterator<Item = Lit> + '_ {
        self.lits.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.lits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }

    pub fn contains(&self, lit: Lit) -> bool {
        self.lits.binary_search(&lit).is_ok()
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.lits.iter().map(|l| l.var())
    }

    pub fn is_subset(&self, other: &Clause) -> bool {
        self.len() <= other.len() && self.lits.iter().all(|&l| other.contains(l))
    }

    /// Literals `x` of `self` with `-x` in `other`.
    pub fn clashes<'a>(&'a self, other: &'a Clause) -> impl Iterator<Item = Lit> + 'a {
        self.lits
            .iter()
            .copied()
            .filter(move |l| other.contains(l.complement()))
    }

    pub fn clash_count(&self, other: &Clause) -> usize {
        self.clashes(other).count()
    }

    /// Union of two clauses, failing if the result would be tautological.
    pub fn union(&self, other: &Clause) -> Result<Clause> {
        Clause::new(self.iter().chain(other.iter()))
    }

    /// The clause with the literals of `other` removed.
    pub fn difference(&self, other: &Clause) -> Clause {
        Clause {
            lits: self.iter().filter(|&l| !other.contains(l)).collect(),
        }
    }

    pub fn to_ints(&self) -> Vec<i32> {
        self.lits.iter().map(|l| l.value()).collect()
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, l) in self.lits.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for Lit {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i32(self.value())
    }
}

impl Serialize for Clause {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_ints().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Clause {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<i32>::deserialize(d)?;
        Clause::from_ints(&v).map_err(serde::de::Error::custom)
    }
}

/// Resolves two clauses that clash in exactly one literal.
pub fn resolve(c: &Clause, d: &Clause) -> Result<Clause> {
    let clashes: Vec<Lit> = c.clashes(d).collect();
    if clashes.len() != 1 {
        return Err(Error::NotResolvable {
            clashes: clashes.len(),
        });
    }
    let v = clashes[0].var();
    let lits = c.iter().chain(d.iter()).filter(|l| l.var() != v);
    Clause::new(lits)
}

/// Size measures of a clause-set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Measures {
    pub n: usize,
    pub c: usize,
    pub ell: usize,
    pub delta: i64,
}

/// Structural flags reported by [`ClauseSet::classify`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub hitting: bool,
    pub one_regular_hitting: bool,
    pub horn: bool,
    pub contains_full_clause: bool,
}

/// A finite set of clauses, read as a CNF. The empty clause-set is `⊤`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ClauseSet {
    clauses: BTreeSet<Clause>,
}

impl ClauseSet {
    /// The empty clause-set `⊤`.
    pub fn top() -> ClauseSet {
        ClauseSet::default()
    }

    /// The clause-set `{⊥}`.
    pub fn bottom() -> ClauseSet {
        ClauseSet::from_iter([Clause::empty()])
    }

    /// Builds a clause-set from DIMACS-style integer clauses.
    pub fn from_lits(clauses: &[&[i32]]) -> Result<ClauseSet> {
        clauses.iter().map(|c| Clause::from_ints(c)).collect()
    }

    pub fn insert(&mut self, c: Clause) -> bool {
        self.clauses.insert(c)
    }

    pub fn remove(&mut self, c: &Clause) -> bool {
        self.clauses.remove(c)
    }

    pub fn contains(&self, c: &Clause) -> bool {
        self.clauses.contains(c)
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = &Clause> + ExactSizeIterator + Clone {
        self.clauses.iter()
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn is_top(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn contains_empty(&self) -> bool {
        self.clauses.first().is_some_and(Clause::is_empty)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.clauses.iter().flat_map(|c| c.vars()).collect()
    }

    pub fn num_vars(&self) -> usize {
        self.vars().len()
    }

    pub fn max_var(&self) -> u32 {
        self.clauses
            .iter()
            .flat_map(|c| c.vars())
            .map(|v| v.0)
            .max()
            .unwrap_or(0)
    }

    /// All literals occurring in some clause.
    pub fn occurring_lits(&self) -> BTreeSet<Lit> {
        self.clauses.iter().flat_map(|c| c.iter()).collect()
    }

    pub fn measures(&self) -> Measures {
        let n = self.num_vars();
        let c = self.len();
        Measures {
            n,
            c,
            ell: self.clauses.iter().map(Clause::len).sum(),
            delta: c as i64 - n as i64,
        }
    }

    /// Keeps only the clauses minimal under inclusion.
    pub fn subsumption_eliminate(&self) -> ClauseSet {
        let mut by_len: Vec<&Clause> = self.clauses.iter().collect();
        by_len.sort_by_key(|c| c.len());
        let mut kept: Vec<&Clause> = Vec::new();
        for c in by_len {
            if !kept.iter().any(|k| k.is_subset(c)) {
                kept.push(c);
            }
        }
        kept.into_iter().cloned().collect()
    }

    pub fn classify(&self) -> Classification {
        let cls: Vec<&Clause> = self.clauses.iter().collect();
        let mut hitting = true;
        let mut one_regular = true;
        for (i, c) in cls.iter().enumerate() {
            for d in &cls[i + 1..] {
                match c.clash_count(d) {
                    0 => {
                        hitting = false;
                        one_regular = false;
                    }
                    1 => {}
                    _ => one_regular = false,
                }
            }
        }
        let horn = cls
            .iter()
            .all(|c| c.iter().filter(|l| l.is_positive()).count() <= 1);
        let n = self.num_vars();
        let contains_full_clause = !cls.is_empty() && cls.iter().any(|c| c.len() == n);
        Classification {
            hitting,
            one_regular_hitting: one_regular,
            horn,
            contains_full_clause,
        }
    }

    pub fn union(&self, other: &ClauseSet) -> ClauseSet {
        self.clauses.union(&other.clauses).cloned().collect()
    }

    pub fn is_subset(&self, other: &ClauseSet) -> bool {
        self.clauses.is_subset(&other.clauses)
    }

    pub fn to_ints(&self) -> Vec<Vec<i32>> {
        self.clauses.iter().map(Clause::to_ints).collect()
    }
}

impl FromIterator<Clause> for ClauseSet {
    fn from_iter<I: IntoIterator<Item = Clause>>(iter: I) -> Self {
        ClauseSet {
            clauses: iter.into_iter().collect(),
        }
    }
}

impl IntoIterator for ClauseSet {
    type Item = Clause;
    type IntoIter = std::collections::btree_set::IntoIter<Clause>;
    fn into_iter(self) -> Self::IntoIter {
        self.clauses.into_iter()
    }
}

impl<'a> IntoIterator for &'a ClauseSet {
    type Item = &'a Clause;
    type IntoIter = std::collections::btree_set::Iter<'a, Clause>;
    fn into_iter(self) -> Self::IntoIter {
        self.clauses.iter()
    }
}

impl fmt::Display for ClauseSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.clauses.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for ClauseSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_ints().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ClauseSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<Vec<i32>>::deserialize(d)?;
        v.iter()
            .map(|c| Clause::from_ints(c))
            .collect::<Result<ClauseSet>>()
            .map_err(serde::de::Error::custom)
    }
}

/// A partial assignment: a finite map from variables to truth values.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PartialAssignment {
    bindings: BTreeMap<Var, bool>,
}

impl PartialAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    /// The assignment making every given literal true.
    pub fn from_true_lits(lits: impl IntoIterator<Item = Lit>) -> Result<Self> {
        let mut pa = Self::new();
        for l in lits {
            pa.set_true(l)?;
        }
        Ok(pa)
    }

    /// `φ_C`: sets precisely the literals of `clause` to false.
    pub fn falsifying(clause: &Clause) -> Self {
        PartialAssignment {
            bindings: clause.iter().map(|l| (l.var(), !l.is_positive())).collect(),
        }
    }

    /// Makes `lit` true; fails if its variable is already bound the other way.
    pub fn set_true(&mut self, lit: Lit) -> Result<()> {
        match self.bindings.insert(lit.var(), lit.is_positive()) {
            Some(old) if old != lit.is_positive() => Err(Error::Domain(format!(
                "variable {} bound twice with different values",
                lit.var()
            ))),
            _ => Ok(()),
        }
    }

    pub fn get(&self, v: Var) -> Option<bool> {
        self.bindings.get(&v).copied()
    }

    /// Value of a literal under the assignment, if its variable is bound.
    pub fn value(&self, lit: Lit) -> Option<bool> {
        self.get(lit.var()).map(|b| b == lit.is_positive())
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, bool)> + '_ {
        self.bindings.iter().map(|(&v, &b)| (v, b))
    }

    /// The literals made true.
    pub fn true_lits(&self) -> Vec<Lit> {
        self.iter().map(|(v, b)| v.lit(b)).collect()
    }

    /// Union of two compatible assignments.
    pub fn compose(&self, other: &PartialAssignment) -> Result<PartialAssignment> {
        let mut out = self.clone();
        for l in other.true_lits() {
            out.set_true(l)?;
        }
        Ok(out)
    }

    /// `φ * F`: drops satisfied clauses and deletes falsified literals.
    pub fn apply(&self, f: &ClauseSet) -> ClauseSet {
        f.iter()
            .filter(|c| !c.iter().any(|l| self.value(l) == Some(true)))
            .map(|c| {
                Clause::from_sorted_unchecked(
                    c.iter().filter(|&l| self.value(l).is_none()).collect(),
                )
            })
            .collect()
    }
}

impl fmt::Display for PartialAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, (v, b)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}->{}", u8::from(b))?;
        }
        write!(f, ">")
    }
}

impl Serialize for PartialAssignment {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.true_lits()
            .iter()
            .map(|l| l.value())
            .collect::<Vec<_>>()
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PartialAssignment {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<i32>::deserialize(d)?;
        let lits = v
            .into_iter()
            .map(Lit::new)
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        PartialAssignment::from_true_lits(lits).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cs(c: &[&[i32]]) -> ClauseSet {
        ClauseSet::from_lits(c).unwrap()
    }

    fn cl(c: &[i32]) -> Clause {
        Clause::from_ints(c).unwrap()
    }

    #[test]
    fn literal_complement_is_involutive() {
        let l = Lit::new(-7).unwrap();
        assert_eq!(l.complement().complement(), l);
        assert_eq!(l.var(), Var(7));
        assert!(Lit::new(0).is_err());
    }

    #[test]
    fn tautological_clause_rejected() {
        assert_eq!(Clause::from_ints(&[1, 2, -1]), Err(Error::Tautology(1)));
    }

    #[test]
    fn canonical_literal_order() {
        assert_eq!(cl(&[-3, 1, 2]).to_ints(), vec![1, 2, -3]);
        assert_eq!(cl(&[2, 2, 1]).to_ints(), vec![1, 2]);
    }

    #[test]
    fn apply_removes_satisfied_and_falsified() {
        // a=1, b=2, c=3
        let f = cs(&[&[1, 2], &[-1, 3]]);
        let phi = PartialAssignment::from_true_lits([Lit::new(1).unwrap()]).unwrap();
        assert_eq!(phi.apply(&f), cs(&[&[3]]));
    }

    #[test]
    fn falsifying_assignment_of_member_yields_bottom() {
        let f = cs(&[&[1, 2, 3], &[-1, 4]]);
        let c = cl(&[1, 2, 3]);
        assert!(PartialAssignment::falsifying(&c).apply(&f).contains_empty());
    }

    #[test]
    fn resolve_examples() {
        assert_eq!(resolve(&cl(&[1, 2]), &cl(&[-1, 3])).unwrap(), cl(&[2, 3]));
        assert_eq!(
            resolve(&cl(&[1, 2]), &cl(&[-1, -2])),
            Err(Error::NotResolvable { clashes: 2 })
        );
        assert_eq!(resolve(&cl(&[1]), &cl(&[-1])).unwrap(), Clause::empty());
        assert!(resolve(&cl(&[1]), &cl(&[2])).is_err());
    }

    #[test]
    fn measures_of_top() {
        let m = ClauseSet::top().measures();
        assert_eq!((m.n, m.c, m.ell, m.delta), (0, 0, 0, 0));
    }

    #[test]
    fn measures_of_g_n() {
        for n in 2..6i32 {
            let mut f: Vec<Vec<i32>> = (1..=n).map(|v| vec![v]).collect();
            f.push((1..=n).map(|v| -v).collect());
            let f: ClauseSet = f.iter().map(|c| Clause::from_ints(c).unwrap()).collect();
            let m = f.measures();
            assert_eq!((m.n, m.c, m.delta), (n as usize, n as usize + 1, 1));
        }
    }

    #[test]
    fn subsumption_examples() {
        assert_eq!(cs(&[&[1], &[1, 2]]).subsumption_eliminate(), cs(&[&[1]]));
        let f = cs(&[&[1, 2], &[-1, 2], &[3]]);
        assert_eq!(f.subsumption_eliminate(), f);
        assert_eq!(
            cs(&[&[], &[1], &[2, 3]]).subsumption_eliminate(),
            ClauseSet::bottom()
        );
    }

    #[test]
    fn classify_examples() {
        // {¬a∨b, ¬b∨c, ¬c∨a} is 1-regular hitting
        let f = cs(&[&[-1, 2], &[-2, 3], &[-3, 1]]);
        let k = f.classify();
        assert!(k.hitting && k.one_regular_hitting);
        let top = ClauseSet::top().classify();
        assert!(top.hitting && top.one_regular_hitting && top.horn && !top.contains_full_clause);
        let g = cs(&[&[1, 2], &[-1, -2], &[1]]);
        let k = g.classify();
        assert!(!k.hitting && !k.horn && k.contains_full_clause);
    }

    #[test]
    fn compose_detects_conflicts() {
        let a = PartialAssignment::from_true_lits([Lit::new(1).unwrap()]).unwrap();
        let b = PartialAssignment::from_true_lits([Lit::new(-1).unwrap()]).unwrap();
        assert!(a.compose(&b).is_err());
    }
}

//! Bit-packed clauses for the inner loops.
//!
//! A [`VarIndex`] maps up to 128 variables onto bit positions in ascending
//! variable order, so the ascending-bit scan order coincides with the
//! canonical literal order of [`Clause`].

use std::collections::BTreeSet;

use crate::clause::{Clause, ClauseSet, Lit, PartialAssignment, Var};
use crate::error::{Error, Result};

pub(crate) const MAX_VARS: usize = 128;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub(crate) struct Bits {
    pub pos: u128,
    pub neg: u128,
}

impl Bits {
    pub const EMPTY: Bits = Bits { pos: 0, neg: 0 };

    pub fn lit(bit: u32, positive: bool) -> Bits {
        if positive {
            Bits {
                pos: 1 << bit,
                neg: 0,
            }
        } else {
            Bits {
                pos: 0,
                neg: 1 << bit,
            }
        }
    }

    #[inline]
    pub fn len(self) -> u32 {
        self.pos.count_ones() + self.neg.count_ones()
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.pos | self.neg == 0
    }

    #[inline]
    pub fn vars(self) -> u128 {
        self.pos | self.neg
    }

    #[inline]
    pub fn subsumes(self, other: Bits) -> bool {
        self.pos & !other.pos == 0 && self.neg & !other.neg == 0
    }

    #[inline]
    pub fn clash_mask(self, other: Bits) -> u128 {
        (self.pos & other.neg) | (self.neg & other.pos)
    }

    /// The resolvent, if the clauses clash in exactly one variable.
    #[inline]
    pub fn resolve(self, other: Bits) -> Option<Bits> {
        let m = self.clash_mask(other);
        if m == 0 || m & (m - 1) != 0 {
            return None;
        }
        Some(Bits {
            pos: (self.pos | other.pos) & !m,
            neg: (self.neg | other.neg) & !m,
        })
    }

    #[inline]
    pub fn union(self, other: Bits) -> Bits {
        Bits {
            pos: self.pos | other.pos,
            neg: self.neg | other.neg,
        }
    }

    /// The literals of `self`, complemented: the true-literal mask of `φ_C`.
    #[inline]
    pub fn complement(self) -> Bits {
        Bits {
            pos: self.neg,
            neg: self.pos,
        }
    }

    /// Applies the assignment making every literal of `t` true.
    /// Returns `None` when the clause is satisfied.
    #[inline]
    pub fn apply(self, t: Bits) -> Option<Bits> {
        if self.pos & t.pos != 0 || self.neg & t.neg != 0 {
            return None;
        }
        let drop = t.pos | t.neg;
        Some(Bits {
            pos: self.pos & !drop,
            neg: self.neg & !drop,
        })
    }

    /// Literals in scan order: ascending bit, positive first.
    pub fn lits(self) -> impl Iterator<Item = (u32, bool)> {
        let mut vars = self.vars();
        std::iter::from_fn(move || {
            if vars == 0 {
                return None;
            }
            let b = vars.trailing_zeros();
            vars &= vars - 1;
            Some(b)
        })
        .flat_map(move |b| {
            let p = (self.pos >> b) & 1 == 1;
            let n = (self.neg >> b) & 1 == 1;
            [(b, true), (b, false)]
                .into_iter()
                .filter(move |&(_, s)| if s { p } else { n })
        })
    }
}

/// Applies `t` to every clause, returning a sorted, duplicate-free set.
pub(crate) fn apply_all(f: &[Bits], t: Bits) -> Vec<Bits> {
    let mut out: Vec<Bits> = f.iter().filter_map(|c| c.apply(t)).collect();
    normalize(&mut out);
    out
}

pub(crate) fn normalize(f: &mut Vec<Bits>) {
    f.sort_unstable();
    f.dedup();
}

pub(crate) fn union_all(f: &[Bits]) -> Bits {
    f.iter().fold(Bits::EMPTY, |a, &c| a.union(c))
}

/// Removes, to a fixpoint, clauses containing a pure literal.
///
/// No resolution refutation (tree-like or not) uses such a clause, since the
/// pure literal can never be resolved away.
pub(crate) fn prune_pure(f: &mut Vec<Bits>) {
    loop {
        let u = union_all(f);
        let pure = Bits {
            pos: u.pos & !u.neg,
            neg: u.neg & !u.pos,
        };
        if pure.is_empty() {
            return;
        }
        let before = f.len();
        f.retain(|c| c.pos & pure.pos == 0 && c.neg & pure.neg == 0);
        if f.len() == before {
            return;
        }
    }
}

/// Unit propagation to a fixpoint. Returns `None` on conflict, otherwise the
/// reduced set and the accumulated true-literal mask.
pub(crate) fn unit_propagate(f: &[Bits]) -> Option<(Vec<Bits>, Bits)> {
    let mut cur: Vec<Bits> = f.to_vec();
    let mut assigned = Bits::EMPTY;
    loop {
        let mut units = Bits::EMPTY;
        for c in &cur {
            match c.len() {
                0 => return None,
                1 => units = units.union(*c),
                _ => {}
            }
        }
        if units.is_empty() {
            normalize(&mut cur);
            return Some((cur, assigned));
        }
        if units.pos & units.neg != 0 {
            return None;
        }
        assigned = assigned.union(units);
        cur = cur.iter().filter_map(|c| c.apply(units)).collect();
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct VarIndex {
    vars: Vec<Var>,
}

impl VarIndex {
    pub fn new(vars: impl IntoIterator<Item = Var>) -> Result<VarIndex> {
        let vars: Vec<Var> = vars
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        if vars.len() > MAX_VARS {
            return Err(Error::CapExceeded {
                what: "variables in packed representation",
                value: vars.len() as u64,
                limit: MAX_VARS as u64,
            });
        }
        Ok(VarIndex { vars })
    }

    pub fn of(f: &ClauseSet) -> Result<VarIndex> {
        VarIndex::new(f.vars())
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn var(&self, bit: u32) -> Var {
        self.vars[bit as usize]
    }

    pub fn bit(&self, v: Var) -> Option<u32> {
        self.vars.binary_search(&v).ok().map(|i| i as u32)
    }

    /// Packs a clause; literals over unknown variables are an error.
    pub fn pack(&self, c: &Clause) -> Result<Bits> {
        let mut b = Bits::EMPTY;
        for l in c.iter() {
            let i = self
                .bit(l.var())
                .ok_or_else(|| Error::Domain(format!("variable {} not indexed", l.var())))?;
            b = b.union(Bits::lit(i, l.is_positive()));
        }
        Ok(b)
    }

    /// Packs a partial assignment as a true-literal mask, ignoring variables
    /// outside the index.
    pub fn pack_assignment(&self, phi: &PartialAssignment) -> Bits {
        let mut b = Bits::EMPTY;
        for (v, val) in phi.iter() {
            if let Some(i) = self.bit(v) {
                b = b.union(Bits::lit(i, val));
            }
        }
        b
    }

    pub fn pack_set(&self, f: &ClauseSet) -> Result<Vec<Bits>> {
        let mut out = f.iter().map(|c| self.pack(c)).collect::<Result<Vec<_>>>()?;
        normalize(&mut out);
        Ok(out)
    }

    pub fn lit(&self, bit: u32, positive: bool) -> Lit {
        self.var(bit).lit(positive)
    }

    pub fn unpack(&self, b: Bits) -> Clause {
        Clause::from_sorted_unchecked(b.lits().map(|(i, s)| self.lit(i, s)).collect())
    }

    pub fn unpack_set(&self, f: &[Bits]) -> ClauseSet {
        f.iter().map(|&b| self.unpack(b)).collect()
    }

    pub fn unpack_assignment(&self, t: Bits) -> PartialAssignment {
        PartialAssignment::from_true_lits(self.unpack(t).iter()).expect("mask is consistent")
    }
}

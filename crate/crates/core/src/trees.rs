//! Labelled full binary trees and the clause-sets they represent.
//!
//! Inner nodes carry distinct variables. The left edge below a node labelled
//! `v` carries the literal `v`, the right edge carries `-v`, and the clause of
//! a leaf collects the literals on its root path. Leaves are addressed by
//! root-to-leaf bitstrings, `0` for left.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::clause::{Clause, ClauseSet, Lit, PartialAssignment, Var};
use crate::error::{Error, Result};
use crate::mpsdope::DopedClauseSet;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum LabeledTree {
    Leaf,
    Inner {
        var: Var,
        left: Box<LabeledTree>,
        right: Box<LabeledTree>,
    },
}

/// A leaf position: the branch directions from the root, `false` for left.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LeafPath(pub Vec<bool>);

impl LeafPath {
    pub fn root() -> Self {
        LeafPath(Vec::new())
    }

    pub fn child(&self, right: bool) -> Self {
        let mut p = self.0.clone();
        p.push(right);
        LeafPath(p)
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn starts_with(&self, prefix: &LeafPath) -> bool {
        self.0.starts_with(&prefix.0)
    }

    pub fn parse(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::Domain(format!("`{s}` is not a leaf bitstring"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(LeafPath)
    }
}

impl fmt::Display for LeafPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl Serialize for LeafPath {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for LeafPath {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        LeafPath::parse(&s).map_err(serde::de::Error::custom)
    }
}

pub type LeafSet = BTreeSet<LeafPath>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TreeStats {
    pub hts: usize,
    pub height: usize,
    pub nlvs: usize,
    pub nnds: usize,
}

impl LabeledTree {
    pub fn leaf() -> Self {
        LabeledTree::Leaf
    }

    pub fn inner(var: u32, left: LabeledTree, right: LabeledTree) -> Self {
        LabeledTree::Inner {
            var: Var(var),
            left: Box::new(left),
            right: Box::new(right),
        }
    }

    /// Checks that inner labels are pairwise distinct and nonzero.
    pub fn validate(&self) -> Result<()> {
        let mut seen = HashSet::new();
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            if let LabeledTree::Inner { var, left, right } = t {
                if var.0 == 0 || var.0 > i32::MAX as u32 {
                    return Err(Error::Domain(format!("invalid variable label {var}")));
                }
                if !seen.insert(*var) {
                    return Err(Error::Domain(format!("variable {var} labels two nodes")));
                }
                stack.push(left);
                stack.push(right);
            }
        }
        Ok(())
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, LabeledTree::Leaf)
    }

    pub fn stats(&self) -> TreeStats {
        match self {
            LabeledTree::Leaf => TreeStats {
                hts: 0,
                height: 0,
                nlvs: 1,
                nnds: 1,
            },
            LabeledTree::Inner { left, right, .. } => {
                let (l, r) = (left.stats(), right.stats());
                TreeStats {
                    hts: if l.hts == r.hts {
                        l.hts + 1
                    } else {
                        l.hts.max(r.hts)
                    },
                    height: 1 + l.height.max(r.height),
                    nlvs: l.nlvs + r.nlvs,
                    nnds: 1 + l.nnds + r.nnds,
                }
            }
        }
    }

    /// Inner-node variables in preorder.
    pub fn vars(&self) -> Vec<Var> {
        let mut out = Vec::new();
        self.walk(&mut |t| {
            if let LabeledTree::Inner { var, .. } = t {
                out.push(*var);
            }
        });
        out
    }

    fn walk<'a>(&'a self, f: &mut impl FnMut(&'a LabeledTree)) {
        f(self);
        if let LabeledTree::Inner { left, right, .. } = self {
            left.walk(f);
            right.walk(f);
        }
    }

    /// Leaf positions in depth-first, left-to-right order.
    pub fn leaves(&self) -> Vec<LeafPath> {
        let mut out = Vec::new();
        self.collect_leaves(LeafPath::root(), &mut out);
        out
    }

    fn collect_leaves(&self, at: LeafPath, out: &mut Vec<LeafPath>) {
        match self {
            LabeledTree::Leaf => out.push(at),
            LabeledTree::Inner { left, right, .. } => {
                left.collect_leaves(at.child(false), out);
                right.collect_leaves(at.child(true), out);
            }
        }
    }

    /// The subtree at a node position.
    pub fn subtree(&self, at: &LeafPath) -> Option<&LabeledTree> {
        let mut t = self;
        for &b in &at.0 {
            match t {
                LabeledTree::Leaf => return None,
                LabeledTree::Inner { left, right, .. } => t = if b { right } else { left },
            }
        }
        Some(t)
    }

    /// `C_w`: the literals on the path to the leaf `w`.
    pub fn clause_of_leaf(&self, w: &LeafPath) -> Result<Clause> {
        let mut t = self;
        let mut lits = Vec::new();
        for &b in &w.0 {
            match t {
                LabeledTree::Leaf => {
                    return Err(Error::Domain(format!("`{w}` is not a leaf position")))
                }
                LabeledTree::Inner { var, left, right } => {
                    lits.push(var.lit(!b));
                    t = if b { right } else { left };
                }
            }
        }
        if !t.is_leaf() {
            return Err(Error::Domain(format!("`{w}` is not a leaf position")));
        }
        Clause::new(lits)
    }

    /// The one-line term: `.` for a leaf, `(v L R)` for an inner node.
    pub fn term(&self) -> String {
        match self {
            LabeledTree::Leaf => ".".to_string(),
            LabeledTree::Inner { var, left, right } => {
                format!("({var} {} {})", left.term(), right.term())
            }
        }
    }

    pub fn parse_term(s: &str) -> Result<LabeledTree> {
        let toks: Vec<String> = s
            .replace('(', " ( ")
            .replace(')', " ) ")
            .split_whitespace()
            .map(str::to_string)
            .collect();
        let mut pos = 0;
        let t = parse_tokens(&toks, &mut pos)?;
        if pos != toks.len() {
            return Err(Error::Domain(format!("trailing input in tree term `{s}`")));
        }
        t.validate()?;
        Ok(t)
    }

    /// Relabels inner nodes in preorder with `1..`.
    pub fn relabel_preorder(&self) -> LabeledTree {
        fn go(t: &LabeledTree, next: &mut u32) -> LabeledTree {
            match t {
                LabeledTree::Leaf => LabeledTree::Leaf,
                LabeledTree::Inner { left, right, .. } => {
                    let v = *next;
                    *next += 1;
                    let l = go(left, next);
                    let r = go(right, next);
                    LabeledTree::inner(v, l, r)
                }
            }
        }
        go(self, &mut 1)
    }

    /// Replaces the label of each inner node by `map(label)`.
    pub fn map_labels(&self, map: &impl Fn(Var) -> Var) -> LabeledTree {
        match self {
            LabeledTree::Leaf => LabeledTree::Leaf,
            LabeledTree::Inner { var, left, right } => LabeledTree::Inner {
                var: map(*var),
                left: Box::new(left.map_labels(map)),
                right: Box::new(right.map_labels(map)),
            },
        }
    }
}

fn parse_tokens(toks: &[String], pos: &mut usize) -> Result<LabeledTree> {
    let bad = || Error::Domain("malformed tree term".to_string());
    let t = toks.get(*pos).ok_or_else(bad)?;
    *pos += 1;
    match t.as_str() {
        "." => Ok(LabeledTree::Leaf),
        "(" => {
            let v: u32 = toks.get(*pos).ok_or_else(bad)?.parse().map_err(|_| bad())?;
            *pos += 1;
            let l = parse_tokens(toks, pos)?;
            let r = parse_tokens(toks, pos)?;
            if toks.get(*pos).map(String::as_str) != Some(")") {
                return Err(bad());
            }
            *pos += 1;
            Ok(LabeledTree::inner(v, l, r))
        }
        _ => Err(bad()),
    }
}

impl fmt::Display for LabeledTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.term())
    }
}

#[derive(Serialize, Deserialize)]
struct NodeRepr {
    var: Var,
    left: Option<Box<NodeRepr>>,
    right: Option<Box<NodeRepr>>,
}

fn to_repr(t: &LabeledTree) -> Option<Box<NodeRepr>> {
    match t {
        LabeledTree::Leaf => None,
        LabeledTree::Inner { var, left, right } => Some(Box::new(NodeRepr {
            var: *var,
            left: to_repr(left),
            right: to_repr(right),
        })),
    }
}

fn from_repr(r: Option<Box<NodeRepr>>) -> LabeledTree {
    match r {
        None => LabeledTree::Leaf,
        Some(n) => LabeledTree::Inner {
            var: n.var,
            left: Box::new(from_repr(n.left)),
            right: Box::new(from_repr(n.right)),
        },
    }
}

impl Serialize for LabeledTree {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        to_repr(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for LabeledTree {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let t = from_repr(Option::<Box<NodeRepr>>::deserialize(d)?);
        t.validate().map_err(serde::de::Error::custom)?;
        Ok(t)
    }
}

pub fn tree_stats(t: &LabeledTree) -> TreeStats {
    t.stats()
}

/// The clause-set `{C_w : w leaf}`.
pub fn smu1(t: &LabeledTree) -> ClauseSet {
    fn go(t: &LabeledTree, path: &mut Vec<Lit>, out: &mut ClauseSet) {
        match t {
            LabeledTree::Leaf => {
                out.insert(Clause::new(path.iter().copied()).expect("distinct labels"));
            }
            LabeledTree::Inner { var, left, right } => {
                path.push(var.pos());
                go(left, path, out);
                path.pop();
                path.push(var.neg());
                go(right, path, out);
                path.pop();
            }
        }
    }
    let mut out = ClauseSet::top();
    go(t, &mut Vec::new(), &mut out);
    out
}

/// Inverse of [`smu1`] on saturated minimally unsatisfiable clause-sets of
/// deficiency 1. The root variable is the unique variable occurring in every
/// clause; the left subtree comes from `<v→0> * F`.
pub fn tsmu1(f: &ClauseSet) -> Result<LabeledTree> {
    if f.is_top() {
        return Err(Error::Domain(
            "the empty clause-set is satisfiable".to_string(),
        ));
    }
    let d = f.measures().delta;
    if d != 1 {
        return Err(Error::Domain(format!("deficiency is {d}, expected 1")));
    }
    split(f)
}

fn split(f: &ClauseSet) -> Result<LabeledTree> {
    if f.is_top() {
        return Err(Error::Domain(
            "a branch ends without an empty clause".to_string(),
        ));
    }
    if *f == ClauseSet::bottom() {
        return Ok(LabeledTree::Leaf);
    }
    let mut it = f.iter();
    let first: BTreeSet<Var> = it.next().expect("non-empty").vars().collect();
    let common: BTreeSet<Var> = it.fold(first, |acc, c| {
        let vs: BTreeSet<Var> = c.vars().collect();
        acc.intersection(&vs).copied().collect()
    });
    let v = match common.len() {
        0 => {
            return Err(Error::Domain(format!(
                "no variable common to all clauses of {f}"
            )))
        }
        1 => *common.iter().next().expect("one element"),
        _ => {
            let vs: Vec<String> = common.iter().map(|v| v.to_string()).collect();
            return Err(Error::Domain(format!(
                "variables {} all occur in every clause of {f}",
                vs.join(",")
            )));
        }
    };
    let left = split(&PartialAssignment::from_true_lits([v.neg()])?.apply(f))?;
    let right = split(&PartialAssignment::from_true_lits([v.pos()])?.apply(f))?;
    Ok(LabeledTree::Inner {
        var: v,
        left: Box::new(left),
        right: Box::new(right),
    })
}

/// The tree of `<x→1> * smu1(T)`: the subtree reached through the edge `x`
/// is dropped and its sibling takes the place of the node.
pub fn apply_to_tree(t: &LabeledTree, x: Lit) -> Result<LabeledTree> {
    fn go(t: &LabeledTree, x: Lit) -> Option<LabeledTree> {
        match t {
            LabeledTree::Leaf => None,
            LabeledTree::Inner { var, left, right } => {
                if *var == x.var() {
                    return Some(if x.is_positive() {
                        (**right).clone()
                    } else {
                        (**left).clone()
                    });
                }
                if let Some(l) = go(left, x) {
                    return Some(LabeledTree::Inner {
                        var: *var,
                        left: Box::new(l),
                        right: right.clone(),
                    });
                }
                go(right, x).map(|r| LabeledTree::Inner {
                    var: *var,
                    left: left.clone(),
                    right: Box::new(r),
                })
            }
        }
    }
    go(t, x).ok_or_else(|| Error::Domain(format!("variable {} labels no node", x.var())))
}

fn check_pair(k: usize, h: usize) -> Result<()> {
    if h < k || (k == 0 && h != 0) {
        return Err(Error::Domain(format!("no extremal tree for k={k}, h={h}")));
    }
    Ok(())
}

/// The canonical tree of maximal size with Horton-Strahler number `k` and
/// height `h`, the subtree of larger Horton-Strahler number on the left,
/// labelled in preorder.
pub fn extremal_tree(k: usize, h: usize) -> Result<LabeledTree> {
    check_pair(k, h)?;
    fn shape(k: usize, h: usize) -> LabeledTree {
        match (k, h) {
            (0, _) => LabeledTree::Leaf,
            (1, 0) => unreachable!("checked pair"),
            (1, h) => LabeledTree::inner(
                0,
                if h == 1 {
                    LabeledTree::Leaf
                } else {
                    shape(1, h - 1)
                },
                LabeledTree::Leaf,
            ),
            (k, h) => LabeledTree::inner(0, shape(k.min(h - 1), h - 1), shape(k - 1, h - 1)),
        }
    }
    Ok(shape(k, h).relabel_preorder())
}

/// `α(k,h) = Σ_{i≤k} C(h,i)`, the number of leaves of an extremal tree.
pub fn alpha(k: usize, h: usize) -> Result<u128> {
    check_pair(k, h)?;
    let mut sum: u128 = 0;
    let mut b: u128 = 1;
    for i in 0..=k {
        if i > 0 {
            b = b
                .checked_mul((h + 1 - i) as u128)
                .ok_or_else(|| Error::Domain("alpha overflows".to_string()))?
                / i as u128;
        }
        sum = sum
            .checked_add(b)
            .ok_or_else(|| Error::Domain("alpha overflows".to_string()))?;
    }
    Ok(sum)
}

fn check_leaves(t: &LabeledTree, v: &LeafSet) -> Result<()> {
    let all: HashSet<LeafPath> = t.leaves().into_iter().collect();
    for w in v {
        if !all.contains(w) {
            return Err(Error::Domain(format!("`{w}` is not a leaf position")));
        }
    }
    Ok(())
}

/// The pure clause of `{C_w : w ∈ V}`, read off the tree: `x` belongs to it
/// iff `V` meets the leaves below the edge `x` but none below `-x`.
pub fn pure_of_leafset(t: &LabeledTree, v: &LeafSet) -> Result<Clause> {
    check_leaves(t, v)?;
    fn go(t: &LabeledTree, at: LeafPath, v: &LeafSet, out: &mut Vec<Lit>) -> bool {
        match t {
            LabeledTree::Leaf => v.contains(&at),
            LabeledTree::Inner { var, left, right } => {
                let l = go(left, at.child(false), v, out);
                let r = go(right, at.child(true), v, out);
                if l && !r {
                    out.push(var.pos());
                }
                if r && !l {
                    out.push(var.neg());
                }
                l || r
            }
        }
    }
    let mut out = Vec::new();
    go(t, LeafPath::root(), v, &mut out);
    Clause::new(out)
}

/// `C_V = {u_w : w ∈ V} ∪ P_V`, a prime implicate of `D(smu1(T))`.
pub fn clause_cv(t: &LabeledTree, doped: &DopedClauseSet, v: &LeafSet) -> Result<Clause> {
    if v.is_empty() {
        return Err(Error::Domain("the leaf set must be non-empty".to_string()));
    }
    let p = pure_of_leafset(t, v)?;
    let mut lits: Vec<Lit> = p.iter().collect();
    for w in v {
        let c = t.clause_of_leaf(w)?;
        let u = doped
            .doping_var(&c)
            .ok_or_else(|| Error::Domain(format!("clause {c} is not in the doped base")))?;
        lits.push(u.pos());
    }
    Clause::new(lits)
}

/// Leaf positions from 1-based indices in depth-first order.
pub fn leaf_set_from_indices(t: &LabeledTree, indices: &[usize]) -> Result<LeafSet> {
    let leaves = t.leaves();
    indices
        .iter()
        .map(|&i| {
            i.checked_sub(1)
                .and_then(|j| leaves.get(j).cloned())
                .ok_or_else(|| Error::Domain(format!("leaf index {i} out of range")))
        })
        .collect()
}

/// Nodes at depth exactly `k`, left to right, with their positions.
pub fn subtrees_at_depth(t: &LabeledTree, k: usize) -> Vec<(LeafPath, &LabeledTree)> {
    fn go<'a>(
        t: &'a LabeledTree,
        at: LeafPath,
        k: usize,
        out: &mut Vec<(LeafPath, &'a LabeledTree)>,
    ) {
        if at.depth() == k {
            out.push((at, t));
            return;
        }
        if let LabeledTree::Inner { left, right, .. } = t {
            go(left, at.child(false), k, out);
            go(right, at.child(true), k, out);
        }
    }
    let mut out = Vec::new();
    go(t, LeafPath::root(), k, &mut out);
    out
}

/// Every full binary tree shape with `leaves` leaves, labelled in preorder.
pub fn all_shapes(leaves: usize) -> Vec<LabeledTree> {
    fn shapes(n: usize) -> Vec<LabeledTree> {
        if n == 1 {
            return vec![LabeledTree::Leaf];
        }
        let mut out = Vec::new();
        for l in 1..n {
            let ls = shapes(l);
            let rs = shapes(n - l);
            for a in &ls {
                for b in &rs {
                    out.push(LabeledTree::inner(0, a.clone(), b.clone()));
                }
            }
        }
        out
    }
    if leaves == 0 {
        return Vec::new();
    }
    shapes(leaves)
        .into_iter()
        .map(|t| t.relabel_preorder())
        .collect()
}

/// A random tree with `leaves` leaves: the leaf count of the left subtree is
/// uniform at every node. Labels are a random permutation of `1..leaves`.
pub fn random_tree<R: Rng>(leaves: usize, rng: &mut R) -> LabeledTree {
    fn shape<R: Rng>(n: usize, rng: &mut R) -> LabeledTree {
        if n <= 1 {
            return LabeledTree::Leaf;
        }
        let l = rng.gen_range(1..n);
        let left = shape(l, rng);
        let right = shape(n - l, rng);
        LabeledTree::inner(0, left, right)
    }
    let t = shape(leaves.max(1), rng).relabel_preorder();
    let mut labels: Vec<u32> = (1..leaves.max(1) as u32).collect();
    for i in (1..labels.len()).rev() {
        let j = rng.gen_range(0..=i);
        labels.swap(i, j);
    }
    t.map_labels(&|v| Var(labels[(v.0 - 1) as usize]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpsdope::dope;

    /// The six-leaf tree with root 1, left child 2 (children 3, 4), right
    /// child 5.
    fn six() -> LabeledTree {
        use LabeledTree as T;
        T::inner(
            1,
            T::inner(
                2,
                T::inner(3, T::Leaf, T::Leaf),
                T::inner(4, T::Leaf, T::Leaf),
            ),
            T::inner(5, T::Leaf, T::Leaf),
        )
    }

    fn cs(c: &[&[i32]]) -> ClauseSet {
        ClauseSet::from_lits(c).unwrap()
    }

    #[test]
    fn stats_of_six() {
        let s = six().stats();
        assert_eq!((s.hts, s.height, s.nlvs, s.nnds), (2, 3, 6, 11));
        let l = LabeledTree::Leaf.stats();
        assert_eq!((l.hts, l.height), (0, 0));
    }

    #[test]
    fn smu1_of_six() {
        let expect = cs(&[
            &[1, 2, 3],
            &[1, 2, -3],
            &[1, -2, 4],
            &[1, -2, -4],
            &[-1, 5],
            &[-1, -5],
        ]);
        assert_eq!(smu1(&six()), expect);
        assert_eq!(tsmu1(&expect).unwrap(), six());
    }

    #[test]
    fn single_node() {
        let t = LabeledTree::inner(7, LabeledTree::Leaf, LabeledTree::Leaf);
        assert_eq!(smu1(&t), cs(&[&[7], &[-7]]));
        assert_eq!(tsmu1(&cs(&[&[7], &[-7]])).unwrap(), t);
        assert_eq!(
            apply_to_tree(&t, Lit::new(7).unwrap()).unwrap(),
            LabeledTree::Leaf
        );
        assert_eq!(smu1(&LabeledTree::Leaf), ClauseSet::bottom());
    }

    #[test]
    fn apply_matches_instantiation() {
        let t = six();
        for v in 1..=5 {
            for x in [v, -v] {
                let lit = Lit::new(x).unwrap();
                let t2 = apply_to_tree(&t, lit).unwrap();
                let phi = PartialAssignment::from_true_lits([lit]).unwrap();
                assert_eq!(smu1(&t2), phi.apply(&smu1(&t)), "x={x}");
            }
        }
        assert!(apply_to_tree(&t, Lit::new(9).unwrap()).is_err());
    }

    #[test]
    fn tsmu1_diagnostics() {
        let g3 = cs(&[&[1], &[2], &[3], &[-1, -2, -3]]);
        let e = tsmu1(&g3).unwrap_err().to_string();
        assert!(e.contains("no variable common"), "{e}");
        let e = tsmu1(&cs(&[&[1, 2], &[-1, -2]])).unwrap_err().to_string();
        assert!(e.contains("deficiency"), "{e}");
        let e = tsmu1(&cs(&[&[1, 2], &[-1, -2], &[1, -2]]))
            .unwrap_err()
            .to_string();
        assert!(e.contains("all occur"), "{e}");
        assert!(tsmu1(&ClauseSet::top()).is_err());
    }

    #[test]
    fn extremal_sizes() {
        assert_eq!(extremal_tree(2, 3).unwrap().stats().nlvs, 7);
        assert_eq!(alpha(2, 3).unwrap(), 7);
        assert_eq!(alpha(0, 0).unwrap(), 1);
        for k in 0..6 {
            let t = extremal_tree(k, k).unwrap();
            let s = t.stats();
            assert_eq!(s.nlvs, 1 << k);
            assert_eq!((s.hts, s.height), (k, k));
        }
        for h in 1..8 {
            assert_eq!(extremal_tree(1, h).unwrap().stats().nlvs, h + 1);
        }
        assert!(extremal_tree(0, 1).is_err());
        assert!(extremal_tree(3, 2).is_err());
        assert_eq!(
            extremal_tree(2, 2).unwrap().vars(),
            vec![Var(1), Var(2), Var(3)]
        );
    }

    #[test]
    fn pure_of_leafset_example() {
        use LabeledTree as T;
        // root 1; left 2 (3, 4); right 5 (6, leaf)
        let t = T::inner(
            1,
            T::inner(
                2,
                T::inner(3, T::Leaf, T::Leaf),
                T::inner(4, T::Leaf, T::Leaf),
            ),
            T::inner(5, T::inner(6, T::Leaf, T::Leaf), T::Leaf),
        );
        let v = leaf_set_from_indices(&t, &[1, 3, 4, 7]).unwrap();
        assert_eq!(
            pure_of_leafset(&t, &v).unwrap(),
            Clause::from_ints(&[3, -5]).unwrap()
        );
        let all: LeafSet = t.leaves().into_iter().collect();
        assert_eq!(pure_of_leafset(&t, &all).unwrap(), Clause::empty());
        for w in t.leaves() {
            let single: LeafSet = [w.clone()].into();
            assert_eq!(
                pure_of_leafset(&t, &single).unwrap(),
                t.clause_of_leaf(&w).unwrap()
            );
        }
    }

    #[test]
    fn clause_cv_example() {
        use LabeledTree as T;
        let t = T::inner(
            1,
            T::inner(2, T::Leaf, T::Leaf),
            T::inner(3, T::Leaf, T::Leaf),
        );
        let d = dope(&smu1(&t));
        // base clauses in canonical order get u = 4, 5, 6, 7
        let v = leaf_set_from_indices(&t, &[1, 3]).unwrap();
        assert_eq!(
            clause_cv(&t, &d, &v).unwrap(),
            Clause::from_ints(&[2, 3, 4, 6]).unwrap()
        );
        assert!(clause_cv(&t, &d, &LeafSet::new()).is_err());
    }

    #[test]
    fn term_and_json_roundtrip() {
        let t = six();
        assert_eq!(t.term(), "(1 (2 (3 . .) (4 . .)) (5 . .))");
        assert_eq!(LabeledTree::parse_term(&t.term()).unwrap(), t);
        let j = serde_json::to_string(&t).unwrap();
        assert_eq!(serde_json::from_str::<LabeledTree>(&j).unwrap(), t);
        assert_eq!(serde_json::to_string(&LabeledTree::Leaf).unwrap(), "null");
        assert!(LabeledTree::parse_term("(1 (1 . .) .)").is_err());
    }

    #[test]
    fn shape_counts_are_catalan() {
        let counts: Vec<usize> = (1..=7).map(|n| all_shapes(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 14, 42, 132]);
    }

    #[test]
    fn random_trees_are_valid() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in 1..20 {
            let t = random_tree(n, &mut rng);
            t.validate().unwrap();
            assert_eq!(t.stats().nlvs, n);
        }
    }
}

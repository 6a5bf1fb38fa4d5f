//! Trigger hypergraphs, exact transversal and matching numbers, Sperner
//! families of leaf sets, and the search for small equivalent clause-sets.

use serde::Serialize;

use crate::clause::{Clause, ClauseSet};
use crate::compile::combinations;
use crate::error::{cap, Error, Result};
use crate::hardness::{Rule, Saturator};
use crate::limits::Limits;
use crate::packed::{apply_all, Bits, VarIndex};
use crate::primes::{essential_packed, primes_packed};
use crate::trees::{LabeledTree, LeafSet};

/// `T_k(F)`: one vertex per prime implicate and, for each prime `C`, the
/// edge `E^k_C` of primes `C'` with `C' ∩ -C = ∅` and `|C' ∖ C| ≤ k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TriggerHypergraph {
    pub k: usize,
    pub vertices: Vec<Clause>,
    /// `edges[i]` is `E^k` of `vertices[i]`, as sorted vertex indices.
    pub edges: Vec<Vec<usize>>,
}

impl TriggerHypergraph {
    /// Builds the hypergraph from a complete set of prime implicates.
    pub fn from_primes(primes: &ClauseSet, k: usize) -> Result<Self> {
        let idx = VarIndex::of(primes)?;
        let packed: Vec<Bits> = primes.iter().map(|c| idx.pack(c)).collect::<Result<_>>()?;
        Ok(TriggerHypergraph {
            k,
            vertices: primes.iter().cloned().collect(),
            edges: edges_packed(&packed, k),
        })
    }

    pub fn index_of(&self, c: &Clause) -> Option<usize> {
        self.vertices.binary_search(c).ok()
    }

    pub fn edge_of(&self, c: &Clause) -> Option<&[usize]> {
        self.index_of(c).map(|i| self.edges[i].as_slice())
    }

    pub fn is_transversal(&self, vertices: &[usize]) -> bool {
        self.edges
            .iter()
            .all(|e| e.iter().any(|v| vertices.contains(v)))
    }
}

fn edges_packed(primes: &[Bits], k: usize) -> Vec<Vec<usize>> {
    primes
        .iter()
        .map(|&c| {
            primes
                .iter()
                .enumerate()
                .filter(|&(_, &d)| {
                    d.clash_mask(c) == 0 && {
                        let extra = Bits {
                            pos: d.pos & !c.pos,
                            neg: d.neg & !c.neg,
                        };
                        extra.len() as usize <= k
                    }
                })
                .map(|(j, _)| j)
                .collect()
        })
        .collect()
}

pub fn trigger_hypergraph(f: &ClauseSet, k: usize, limits: &Limits) -> Result<TriggerHypergraph> {
    let idx = VarIndex::of(f)?;
    let packed = idx.pack_set(f)?;
    let primes = idx.unpack_set(&primes_packed(&packed, idx.len(), limits.primes)?);
    cap(
        "trigger hypergraph vertices",
        primes.len(),
        limits.hypergraph_vertices,
    )?;
    TriggerHypergraph::from_primes(&primes, k)
}

/// Outcome of an exact search: `lower ≤ optimum ≤ upper`, equal when exact.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub lower: usize,
    pub upper: usize,
    pub exact: bool,
    /// Vertices of a transversal, or indices of pairwise disjoint edges.
    pub witness: Vec<usize>,
    pub nodes: u64,
}

impl SearchResult {
    /// The optimum when exact, otherwise the bound the search guarantees.
    pub fn value(&self) -> usize {
        if self.exact {
            self.upper
        } else {
            self.lower
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct BitSet(Vec<u64>);

impl BitSet {
    fn new(n: usize) -> Self {
        BitSet(vec![0; n.div_ceil(64)])
    }
    fn from_iter(n: usize, it: impl IntoIterator<Item = usize>) -> Self {
        let mut b = BitSet::new(n);
        for i in it {
            b.set(i);
        }
        b
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn unset(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }
    fn get(&self, i: usize) -> bool {
        (self.0[i / 64] >> (i % 64)) & 1 == 1
    }
    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }
    fn intersects(&self, o: &BitSet) -> bool {
        self.0.iter().zip(&o.0).any(|(a, b)| a & b != 0)
    }
    fn is_subset(&self, o: &BitSet) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & !b == 0)
    }
    fn and(&self, o: &BitSet) -> BitSet {
        BitSet(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn and_not(&self, o: &BitSet) -> BitSet {
        BitSet(self.0.iter().zip(&o.0).map(|(a, b)| a & !b).collect())
    }
    fn first(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(wi, &w)| wi * 64 + w.trailing_zeros() as usize)
    }
    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }
}

/// Inclusion-minimal distinct edges, with the index of one original edge
/// each; a hitting set or matching of these is one of the original family.
fn minimal_edges(g: &TriggerHypergraph) -> Vec<(BitSet, usize)> {
    let n = g.vertices.len();
    let mut es: Vec<(BitSet, usize)> = g
        .edges
        .iter()
        .enumerate()
        .map(|(i, e)| (BitSet::from_iter(n, e.iter().copied()), i))
        .collect();
    es.sort_by_key(|(b, i)| (b.count(), *i));
    let mut kept: Vec<(BitSet, usize)> = Vec::new();
    for (b, i) in es {
        if !kept.iter().any(|(k, _)| k.is_subset(&b)) {
            kept.push((b, i));
        }
    }
    kept
}

struct TauSearch<'a> {
    edges: &'a [BitSet],
    order: Vec<usize>,
    best: Vec<usize>,
    nodes: u64,
    budget: u64,
    aborted: bool,
}

impl TauSearch<'_> {
    fn greedy_disjoint(&self, unhit: &[usize]) -> usize {
        let mut used: Option<BitSet> = None;
        let mut count = 0;
        for &e in unhit {
            let b = &self.edges[e];
            match &mut used {
                Some(u) if u.intersects(b) => {}
                Some(u) => {
                    for i in b.iter() {
                        u.set(i);
                    }
                    count += 1;
                }
                None => {
                    used = Some(b.clone());
                    count += 1;
                }
            }
        }
        count
    }

    fn run(&mut self, chosen: &mut Vec<usize>, unhit: Vec<usize>, forbidden: &BitSet) {
        if self.aborted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.aborted = true;
            return;
        }
        if unhit.is_empty() {
            if chosen.len() < self.best.len() {
                self.best = chosen.clone();
            }
            return;
        }
        if chosen.len() + self.greedy_disjoint(&unhit) >= self.best.len() {
            return;
        }
        let pick = *unhit
            .iter()
            .min_by_key(|&&e| (self.edges[e].and_not(forbidden).count(), e))
            .expect("non-empty");
        let avail = self.edges[pick].and_not(forbidden);
        if avail.is_empty() {
            return;
        }
        let mut cands: Vec<usize> = avail.iter().collect();
        cands.sort_by_key(|&v| self.order[v]);
        let mut forb = forbidden.clone();
        for v in cands {
            let rest: Vec<usize> = unhit
                .iter()
                .copied()
                .filter(|&e| !self.edges[e].get(v))
                .collect();
            chosen.push(v);
            self.run(chosen, rest, &forb);
            chosen.pop();
            forb.set(v);
            if self.aborted {
                return;
            }
        }
    }
}

/// Minimum transversal by branch and bound: branch on the vertices of the
/// smallest unhit edge, most frequent first, excluding vertices already
/// tried; bound by a greedy packing of disjoint unhit edges.
pub fn transversal_number(g: &TriggerHypergraph, limits: &Limits) -> SearchResult {
    let n = g.vertices.len();
    let mins: Vec<BitSet> = minimal_edges(g).into_iter().map(|(b, _)| b).collect();
    if mins.is_empty() {
        return SearchResult {
            lower: 0,
            upper: 0,
            exact: true,
            witness: Vec::new(),
            nodes: 0,
        };
    }
    let mut freq = vec![0usize; n];
    for e in &mins {
        for v in e.iter() {
            freq[v] += 1;
        }
    }
    let mut by_freq: Vec<usize> = (0..n).collect();
    by_freq.sort_by_key(|&v| (std::cmp::Reverse(freq[v]), v));
    let mut order = vec![0; n];
    for (rank, &v) in by_freq.iter().enumerate() {
        order[v] = rank;
    }
    // Greedy upper bound: repeatedly take the vertex hitting most unhit edges.
    let mut greedy = Vec::new();
    let mut unhit: Vec<usize> = (0..mins.len()).collect();
    while !unhit.is_empty() {
        let v = (0..n)
            .max_by_key(|&v| {
                (
                    unhit.iter().filter(|&&e| mins[e].get(v)).count(),
                    std::cmp::Reverse(v),
                )
            })
            .expect("vertices exist");
        greedy.push(v);
        unhit.retain(|&e| !mins[e].get(v));
    }
    let mut s = TauSearch {
        edges: &mins,
        order,
        best: greedy,
        nodes: 0,
        budget: limits.search_nodes,
        aborted: false,
    };
    let all: Vec<usize> = (0..mins.len()).collect();
    let root_lower = s.greedy_disjoint(&all);
    let mut chosen = Vec::new();
    s.best.push(usize::MAX); // so that a transversal of the greedy size is still found
    let greedy_size = s.best.len() - 1;
    s.run(&mut chosen, all, &BitSet::new(n));
    if s.best.last() == Some(&usize::MAX) {
        s.best.pop();
    }
    let mut witness = s.best.clone();
    witness.sort();
    let upper = witness.len().min(greedy_size);
    SearchResult {
        lower: if s.aborted { root_lower } else { upper },
        upper,
        exact: !s.aborted,
        witness,
        nodes: s.nodes,
    }
}

/// Maximum number of pairwise disjoint edges: a maximum clique in the
/// disjointness graph of the minimal edges, with a greedy colouring bound.
pub fn matching_number(g: &TriggerHypergraph, limits: &Limits) -> SearchResult {
    matching_number_seeded(g, &[], limits)
}

/// As [`matching_number`], starting from a known matching (edge indices),
/// which must be pairwise disjoint.
pub fn matching_number_seeded(
    g: &TriggerHypergraph,
    seed: &[usize],
    limits: &Limits,
) -> SearchResult {
    let mins = minimal_edges(g);
    let m = mins.len();
    if m == 0 {
        return SearchResult {
            lower: 0,
            upper: 0,
            exact: true,
            witness: Vec::new(),
            nodes: 0,
        };
    }
    let adj: Vec<BitSet> = (0..m)
        .map(|i| {
            BitSet::from_iter(
                m,
                (0..m).filter(|&j| j != i && !mins[i].0.intersects(&mins[j].0)),
            )
        })
        .collect();
    // Greedy seed: smallest edges first.
    let mut best: Vec<usize> = Vec::new();
    for i in 0..m {
        if best.iter().all(|&j| adj[i].get(j)) {
            best.push(i);
        }
    }
    let seed_valid = seed.iter().enumerate().all(|(a, &x)| {
        seed.iter().skip(a + 1).all(|&y| {
            let (ex, ey) = (&g.edges[x], &g.edges[y]);
            !ex.iter().any(|v| ey.contains(v))
        })
    });
    let mut seed_orig: Option<Vec<usize>> = None;
    if seed_valid && seed.len() > best.len() {
        seed_orig = Some(seed.to_vec());
    }
    let mut search = CliqueSearch {
        adj: &adj,
        best_len: best.len().max(seed_orig.as_ref().map_or(0, Vec::len)),
        best: best.clone(),
        improved: false,
        nodes: 0,
        budget: limits.search_nodes,
        aborted: false,
    };
    let all = BitSet::from_iter(m, 0..m);
    let mut cur = Vec::new();
    search.expand(&mut cur, all);
    let (upper, lower, witness) = if search.improved || seed_orig.is_none() {
        let w: Vec<usize> = search.best.iter().map(|&i| mins[i].1).collect();
        (search.best.len(), search.best.len(), w)
    } else {
        let s = seed_orig.expect("checked");
        (s.len(), s.len(), s)
    };
    let mut witness = witness;
    witness.sort();
    if search.aborted {
        // Colouring of the whole graph bounds the clique number.
        let bound = colour_bound(&adj, &BitSet::from_iter(m, 0..m));
        SearchResult {
            lower,
            upper: bound.max(lower),
            exact: false,
            witness,
            nodes: search.nodes,
        }
    } else {
        SearchResult {
            lower,
            upper,
            exact: true,
            witness,
            nodes: search.nodes,
        }
    }
}

fn colour_bound(adj: &[BitSet], p: &BitSet) -> usize {
    colour_order(adj, p).last().map_or(0, |&(_, c)| c)
}

/// Greedy sequential colouring of the candidate set; returns vertices with
/// their colour numbers, in non-decreasing colour order.
fn colour_order(adj: &[BitSet], p: &BitSet) -> Vec<(usize, usize)> {
    let mut uncol = p.clone();
    let mut out = Vec::new();
    let mut colour = 0;
    while !uncol.is_empty() {
        colour += 1;
        let mut q = uncol.clone();
        while let Some(v) = q.first() {
            uncol.unset(v);
            q.unset(v);
            q = q.and_not(&adj[v]);
            out.push((v, colour));
        }
    }
    out
}

struct CliqueSearch<'a> {
    adj: &'a [BitSet],
    best: Vec<usize>,
    best_len: usize,
    improved: bool,
    nodes: u64,
    budget: u64,
    aborted: bool,
}

impl CliqueSearch<'_> {
    fn expand(&mut self, cur: &mut Vec<usize>, mut p: BitSet) {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.aborted = true;
            return;
        }
        let order = colour_order(self.adj, &p);
        for &(v, c) in order.iter().rev() {
            if cur.len() + c <= self.best_len {
                return;
            }
            cur.push(v);
            let np = p.and(&self.adj[v]);
            if np.is_empty() {
                if cur.len() > self.best_len {
                    self.best = cur.clone();
                    self.best_len = cur.len();
                    self.improved = true;
                }
            } else {
                self.expand(cur, np);
            }
            cur.pop();
            p.unset(v);
            if self.aborted {
                return;
            }
        }
    }
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Leaf sets that are pairwise incomparable on every subtree rooted at depth
/// `k`: the `⌊m/2⌋`-subsets of the smallest such subtree (leftmost on ties,
/// `m` its leaf count), each extended by the subset of the same rank in
/// every other depth-`k` subtree.
pub fn sperner_witness(t: &LabeledTree, k: usize) -> Result<Vec<LeafSet>> {
    if t.leaves().iter().any(|w| w.depth() <= k) {
        return Err(Error::Domain(format!(
            "every leaf must lie below depth {k}"
        )));
    }
    let subs = crate::trees::subtrees_at_depth(t, k);
    let leaf_lists: Vec<Vec<crate::trees::LeafPath>> = subs
        .iter()
        .map(|(at, s)| {
            s.leaves()
                .into_iter()
                .map(|w| {
                    let mut p = at.0.clone();
                    p.extend(w.0);
                    crate::trees::LeafPath(p)
                })
                .collect()
        })
        .collect();
    let m = leaf_lists
        .iter()
        .map(Vec::len)
        .min()
        .expect("at least one subtree");
    let s = m / 2;
    let count = binomial(m, s) as usize;
    let per_subtree: Vec<Vec<Vec<usize>>> = leaf_lists
        .iter()
        .map(|l| combinations(l.len(), s).take(count).collect())
        .collect();
    Ok((0..count)
        .map(|j| {
            let mut v = LeafSet::new();
            for (ls, combos) in leaf_lists.iter().zip(&per_subtree) {
                for &i in &combos[j] {
                    v.insert(ls[i].clone());
                }
            }
            v
        })
        .collect())
}

/// Search strategy for [`min_equivalent_size`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MinEquivMode {
    /// Exact; sizes below `max(τ(T_k(F)), #essential)` are skipped.
    Exhaustive,
    /// Exact, from the definition only: starts at the number of essential
    /// primes and does not use the hypergraph.
    ExhaustiveUnpruned,
    /// Greedy additions by ascending size, then removals by descending size.
    Heuristic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinEquivalent {
    /// The size found: the minimum in the exhaustive modes.
    pub size: usize,
    pub exact: bool,
    pub representative: ClauseSet,
    pub primes: usize,
    pub essential: usize,
    pub tau: Option<SearchResult>,
    /// Subsets tested.
    pub tested: u64,
}

/// Every prime `C` is refuted from `φ_C * F'` by k-resolution; for a subset
/// `F'` of the primes this says `F'` is equivalent and `whd(F') ≤ k`.
pub(crate) fn wc_k_equivalent(
    sub: &[Bits],
    primes: &[Bits],
    k: usize,
    sat: &mut Saturator,
) -> Result<bool> {
    for &c in primes {
        if !sat.refutes(&apply_all(sub, c.complement()), Rule::KResolution(k))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Greedy reduction in the style of the k-base heuristic, for an arbitrary
/// acceptance test that is monotone under supersets.
pub(crate) fn greedy_subset(
    primes: &[Bits],
    essential: &[Bits],
    mut ok: impl FnMut(&[Bits]) -> Result<bool>,
) -> Result<(Vec<Bits>, Vec<Bits>, Vec<Bits>)> {
    let mut cur: Vec<Bits> = essential.to_vec();
    let mut rest: Vec<Bits> = primes
        .iter()
        .copied()
        .filter(|c| !essential.contains(c))
        .collect();
    rest.sort_by_key(|c| (c.len(), *c));
    let mut added = Vec::new();
    let mut it = rest.into_iter();
    while !ok(&cur)? {
        let c = it.next().ok_or_else(|| {
            Error::Integrity("the full prime set fails the acceptance test".to_string())
        })?;
        cur.push(c);
        added.push(c);
    }
    let mut by_desc = cur.clone();
    by_desc.sort_by_key(|c| (std::cmp::Reverse(c.len()), *c));
    let mut removed = Vec::new();
    for c in by_desc {
        let trial: Vec<Bits> = cur.iter().copied().filter(|&d| d != c).collect();
        if ok(&trial)? {
            cur = trial;
            removed.push(c);
        }
    }
    cur.sort();
    Ok((cur, added, removed))
}

/// The least `c(F')` over sub-clause-sets `F'` of the prime implicates that
/// are equivalent to `F` and have `whd(F') ≤ k`.
pub fn min_equivalent_size(
    f: &ClauseSet,
    k: usize,
    mode: MinEquivMode,
    limits: &Limits,
) -> Result<MinEquivalent> {
    let idx = VarIndex::of(f)?;
    let packed = idx.pack_set(f)?;
    let primes = primes_packed(&packed, idx.len(), limits.primes)?;
    let essential = essential_packed(&primes);
    let mut sat = Saturator::new(limits.closure_clauses);
    let unpack = |v: &[Bits]| idx.unpack_set(v);
    if mode == MinEquivMode::Heuristic {
        let (cur, _, _) = greedy_subset(&primes, &essential, |s| {
            wc_k_equivalent(s, &primes, k, &mut sat)
        })?;
        return Ok(MinEquivalent {
            size: cur.len(),
            exact: false,
            representative: unpack(&cur),
            primes: primes.len(),
            essential: essential.len(),
            tau: None,
            tested: 0,
        });
    }
    let tau = if mode == MinEquivMode::Exhaustive {
        cap(
            "trigger hypergraph vertices",
            primes.len(),
            limits.hypergraph_vertices,
        )?;
        let g = TriggerHypergraph::from_primes(&idx.unpack_set(&primes), k)?;
        Some(transversal_number(&g, limits))
    } else {
        None
    };
    let free: Vec<Bits> = primes
        .iter()
        .copied()
        .filter(|c| !essential.contains(c))
        .collect();
    let start = essential.len().max(tau.as_ref().map_or(0, |t| t.lower));
    if start < primes.len() && free.len() > limits.exhaustive_primes {
        return Err(Error::CapExceeded {
            what: "free prime implicates for exhaustive search",
            value: free.len() as u64,
            limit: limits.exhaustive_primes as u64,
        });
    }
    let mut tested = 0u64;
    for size in start..=primes.len() {
        let need = size - essential.len();
        for combo in combinations(free.len(), need) {
            let mut sub = essential.clone();
            sub.extend(combo.iter().map(|&i| free[i]));
            tested += 1;
            if wc_k_equivalent(&sub, &primes, k, &mut sat)? {
                sub.sort();
                return Ok(MinEquivalent {
                    size,
                    exact: true,
                    representative: unpack(&sub),
                    primes: primes.len(),
                    essential: essential.len(),
                    tau,
                    tested,
                });
            }
        }
    }
    Err(Error::Integrity(
        "the full prime set is not equivalent with w-hardness 0".to_string(),
    ))
}

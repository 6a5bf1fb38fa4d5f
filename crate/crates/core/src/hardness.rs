//! Hardness `hd`, p-hardness `phd`, w-hardness `whd`, symmetric width `wid`
//! and k-resolution.
//!
//! For satisfiable inputs each measure is the maximum of the measure over
//! the instantiations `φ_C * F` for prime implicates `C`: every partial
//! assignment making `F` unsatisfiable extends some `φ_C`, and all four
//! refutation notions survive further instantiation.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};

use serde::Serialize;

use crate::clause::{Clause, ClauseSet, PartialAssignment};
use crate::error::{cap, Error, Result};
use crate::limits::Limits;
use crate::packed::{apply_all, normalize, prune_pure, Bits, VarIndex};
use crate::primes::primes_packed;
use crate::propagation::{rinf_packed, Refuter};
use crate::sat;

/// `b = e^{1/8}`, the base of the resolution size bound.
pub const RESOLUTION_BASE: f64 = 1.133_148_453_066_826_3;

/// A measure value with the prime implicate `C` whose instantiation `φ_C * F`
/// attains it (absent for unsatisfiable inputs or value 0).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Measured {
    pub value: usize,
    pub witness: Option<Clause>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PhdMeasured {
    pub value: usize,
    /// A partial assignment `φ` where `r_{value-1}(φ * F) ≠ r_∞(φ * F)`.
    pub witness: Option<PartialAssignment>,
}

/// One resolution step of a refutation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResolutionStep {
    pub resolvent: Clause,
    pub left: Clause,
    pub right: Clause,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KResOutcome {
    pub refuted: bool,
    /// Steps in derivation order, ending with `⊥`; empty when `⊥ ∈ F`.
    pub trace: Option<Vec<ResolutionStep>>,
}

/// Saturation under k-resolution (or width-bounded resolution), returning
/// whether `⊥` is derived.
pub(crate) struct Saturator {
    pub max_clauses: usize,
    pub prune_pure: bool,
    /// Record parents so a refutation can be extracted.
    pub trace: bool,
    parents: HashMap<Bits, (Bits, Bits)>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum Rule {
    /// One parent has length at most k.
    KResolution(usize),
    /// Every clause, axioms included, has length at most k.
    Width(usize),
}

impl Saturator {
    pub fn new(max_clauses: usize) -> Self {
        Saturator {
            max_clauses,
            prune_pure: true,
            trace: false,
            parents: HashMap::new(),
        }
    }

    pub fn refutes(&mut self, f: &[Bits], rule: Rule) -> Result<bool> {
        self.parents.clear();
        if f.iter().any(|c| c.is_empty()) {
            return Ok(true);
        }
        let mut g: Vec<Bits> = match rule {
            Rule::KResolution(_) => f.to_vec(),
            Rule::Width(k) => f
                .iter()
                .copied()
                .filter(|c| c.len() as usize <= k)
                .collect(),
        };
        if self.prune_pure {
            prune_pure(&mut g);
        }
        if g.is_empty() || sat::is_sat(&g) {
            return Ok(false);
        }
        let mut kept: Vec<Bits> = Vec::new();
        let mut seen: HashSet<Bits> = g.iter().copied().collect();
        let mut queue: BinaryHeap<Reverse<(u32, Bits)>> =
            g.iter().map(|&c| Reverse((c.len(), c))).collect();
        while let Some(Reverse((_, given))) = queue.pop() {
            if kept.iter().any(|d| d.subsumes(given)) {
                continue;
            }
            kept.retain(|d| !given.subsumes(*d));
            for &d in &kept {
                let allowed = match rule {
                    Rule::KResolution(k) => given.len() as usize <= k || d.len() as usize <= k,
                    Rule::Width(_) => true,
                };
                if !allowed {
                    continue;
                }
                let Some(r) = given.resolve(d) else { continue };
                if let Rule::Width(k) = rule {
                    if r.len() as usize > k {
                        continue;
                    }
                }
                if !seen.insert(r) {
                    continue;
                }
                if self.trace {
                    self.parents.insert(r, (given, d));
                }
                if r.is_empty() {
                    return Ok(true);
                }
                queue.push(Reverse((r.len(), r)));
            }
            kept.push(given);
            cap(
                "clauses in resolution closure",
                seen.len(),
                self.max_clauses,
            )?;
        }
        Ok(false)
    }

    /// The recorded derivation of `⊥`, parents before children.
    fn extract(&self) -> Vec<(Bits, Bits, Bits)> {
        let mut out = Vec::new();
        let mut done = HashSet::new();
        let mut stack = vec![(Bits::EMPTY, false)];
        while let Some((c, expanded)) = stack.pop() {
            let Some(&(a, b)) = self.parents.get(&c) else {
                continue;
            };
            if expanded {
                if done.insert(c) {
                    out.push((c, a, b));
                }
                continue;
            }
            if done.contains(&c) {
                continue;
            }
            stack.push((c, true));
            stack.push((b, false));
            stack.push((a, false));
        }
        out
    }
}

/// Whether k-resolution (every step has a parent of length at most `k`)
/// derives `⊥` from `F`, with a refutation when it does.
pub fn k_res_refutes(f: &ClauseSet, k: usize, limits: &Limits) -> Result<KResOutcome> {
    k_res_refutes_with(f, k, limits, true)
}

/// [`k_res_refutes`] with pure-literal pruning switchable, for comparison.
pub fn k_res_refutes_with(
    f: &ClauseSet,
    k: usize,
    limits: &Limits,
    prune_pure: bool,
) -> Result<KResOutcome> {
    let idx = VarIndex::of(f)?;
    let packed = idx.pack_set(f)?;
    let mut s = Saturator::new(limits.closure_clauses);
    s.prune_pure = prune_pure;
    s.trace = true;
    let refuted = s.refutes(&packed, Rule::KResolution(k))?;
    let trace = refuted.then(|| {
        s.extract()
            .into_iter()
            .map(|(r, a, b)| ResolutionStep {
                resolvent: idx.unpack(r),
                left: idx.unpack(a),
                right: idx.unpack(b),
            })
            .collect()
    });
    Ok(KResOutcome { refuted, trace })
}

/// Maximum over the unsatisfiable instantiations `φ_C * F` of the least
/// level at which `refutes` succeeds; the least level for unsatisfiable `F`.
pub(crate) fn lift_over_primes(
    f: &[Bits],
    nvars: usize,
    limits: &Limits,
    mut refutes: impl FnMut(usize, &[Bits]) -> Result<bool>,
) -> Result<(usize, Option<Bits>)> {
    let least = |g: &[Bits],
                 from: usize,
                 refutes: &mut dyn FnMut(usize, &[Bits]) -> Result<bool>|
     -> Result<usize> {
        let mut k = from;
        while !refutes(k, g)? {
            k += 1;
            if k > nvars + 1 {
                return Err(Error::Integrity(format!(
                    "no refutation found up to level {k}"
                )));
            }
        }
        Ok(k)
    };
    if !sat::is_sat(f) {
        return Ok((least(f, 0, &mut refutes)?, None));
    }
    let primes = primes_packed(f, nvars, limits.primes)?;
    let mut best = 0;
    let mut witness = None;
    for c in primes {
        let mut g = apply_all(f, c.complement());
        normalize(&mut g);
        let k = least(&g, best, &mut refutes)?;
        if k > best {
            best = k;
            witness = Some(c);
        }
    }
    Ok((best, witness))
}

fn measured(idx: &VarIndex, (value, w): (usize, Option<Bits>)) -> Measured {
    Measured {
        value,
        witness: w.map(|c| idx.unpack(c)),
    }
}

/// Hardness: the least `k` such that `r_k` refutes every unsatisfiable
/// instantiation of `F`.
pub fn hd(f: &ClauseSet, limits: &Limits) -> Result<Measured> {
    let idx = VarIndex::of(f)?;
    let packed = idx.pack_set(f)?;
    let mut r = Refuter::default();
    let res = lift_over_primes(&packed, idx.len(), limits, |k, g| Ok(r.refutes(k, g)))?;
    Ok(measured(&idx, res))
}

/// W-hardness: as [`hd`] with k-resolution in place of `r_k`.
pub fn whd(f: &ClauseSet, limits: &Limits) -> Result<Measured> {
    let idx = VarIndex::of(f)?;
    let packed = idx.pack_set(f)?;
    let mut s = Saturator::new(limits.closure_clauses);
    let res = lift_over_primes(&packed, idx.len(), limits, |k, g| {
        s.refutes(g, Rule::KResolution(k))
    })?;
    Ok(measured(&idx, res))
}

/// Symmetric width: the least `k` such that every unsatisfiable
/// instantiation has a refutation using only clauses of length at most `k`.
pub fn wid(f: &ClauseSet, limits: &Limits) -> Result<Measured> {
    let idx = VarIndex::of(f)?;
    let packed = idx.pack_set(f)?;
    let mut s = Saturator::new(limits.closure_clauses);
    let res = lift_over_primes(&packed, idx.len(), limits, |k, g| {
        s.refutes(g, Rule::Width(k))
    })?;
    Ok(measured(&idx, res))
}

/// P-hardness: the least `k` with `r_k(φ * F) = r_∞(φ * F)` for every
/// partial assignment `φ` over `var(F)`. Exhaustive over `3^n` assignments.
pub fn phd(f: &ClauseSet, limits: &Limits) -> Result<PhdMeasured> {
    cap("variables for p-hardness", f.num_vars(), limits.phd_vars)?;
    let idx = VarIndex::of(f)?;
    let packed = idx.pack_set(f)?;
    let n = idx.len();
    let mut refuter = Refuter::default();
    let mut seen: HashSet<Vec<Bits>> = HashSet::new();
    let mut best = 0usize;
    let mut witness = None;
    let total = 3usize.pow(n as u32);
    let order: Vec<(u32, bool)> = (0..n as u32)
        .flat_map(|b| [(b, true), (b, false)])
        .collect();
    for code in 0..total {
        let mut t = Bits::EMPTY;
        let mut c = code;
        for b in 0..n as u32 {
            match c % 3 {
                1 => t = t.union(Bits::lit(b, true)),
                2 => t = t.union(Bits::lit(b, false)),
                _ => {}
            }
            c /= 3;
        }
        let g = apply_all(&packed, t);
        if !seen.insert(g.clone()) {
            continue;
        }
        let (target, _, _) = rinf_packed(&g);
        let mut k = best;
        loop {
            let (red, _, _) = crate::propagation::rk_exact_packed(&g, k, &order, &mut refuter);
            if red == target {
                break;
            }
            k += 1;
        }
        if k > best {
            best = k;
            witness = Some(t);
        }
    }
    Ok(PhdMeasured {
        value: best,
        witness: witness.map(|t| idx.unpack_assignment(t)),
    })
}

/// `b^{whd²/n}`, a lower bound on the size of resolution refutations.
pub fn res_lower_bound(whd_value: usize, n: usize) -> f64 {
    assert!(n >= 1, "n must be positive");
    let w = whd_value as f64;
    (w * w / (8.0 * n as f64)).exp()
}

/// All hardness measures of one clause-set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HardnessReport {
    pub hd: Measured,
    pub whd: Measured,
    /// `None` when `n(F)` exceeds the p-hardness cap.
    pub phd: Option<PhdMeasured>,
    pub wid: Option<Measured>,
    pub res_lower_bound: Option<f64>,
}

pub fn hardness_report(f: &ClauseSet, limits: &Limits) -> Result<HardnessReport> {
    let hd = hd(f, limits)?;
    let whd = whd(f, limits)?;
    let phd = match phd(f, limits) {
        Ok(p) => Some(p),
        Err(Error::CapExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    let wid = match wid(f, limits) {
        Ok(w) => Some(w),
        Err(Error::CapExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    let n = f.num_vars();
    let res_lower_bound = (n > 0).then(|| res_lower_bound(whd.value, n));
    Ok(HardnessReport {
        hd,
        whd,
        phd,
        wid,
        res_lower_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cs(c: &[&[i32]]) -> ClauseSet {
        ClauseSet::from_lits(c).unwrap()
    }

    fn lim() -> Limits {
        Limits::default()
    }

    fn diffw2u2() -> ClauseSet {
        cs(&[
            &[2, 3, 4],
            &[-4, 2],
            &[-2, 1, 5],
            &[-5, -2],
            &[-3, 1, 6],
            &[-6, -3],
            &[7, 8, 9],
            &[-9, 7],
            &[-7, -1, 10],
            &[-10, -7],
            &[-8, -1, 11],
            &[-11, -8],
        ])
    }

    #[test]
    fn separating_example() {
        let f = diffw2u2();
        assert_eq!(hd(&f, &lim()).unwrap().value, 3);
        assert_eq!(whd(&f, &lim()).unwrap().value, 2);
        assert!(k_res_refutes(&f, 2, &lim()).unwrap().refuted);
        assert!(!k_res_refutes(&f, 1, &lim()).unwrap().refuted);
    }

    #[test]
    fn top_is_zero_everywhere() {
        let t = ClauseSet::top();
        assert_eq!(hd(&t, &lim()).unwrap().value, 0);
        assert_eq!(whd(&t, &lim()).unwrap().value, 0);
        assert_eq!(phd(&t, &lim()).unwrap().value, 0);
        assert_eq!(wid(&t, &lim()).unwrap().value, 0);
    }

    #[test]
    fn bottom_refuted_at_zero() {
        let o = k_res_refutes(&ClauseSet::bottom(), 0, &lim()).unwrap();
        assert!(o.refuted);
        assert_eq!(o.trace, Some(vec![]));
        assert_eq!(wid(&ClauseSet::bottom(), &lim()).unwrap().value, 0);
    }

    #[test]
    fn horn_unsat_width() {
        // a, ¬a∨b, ¬a∨¬b∨c, ¬c
        let f = cs(&[&[1], &[-1, 2], &[-1, -2, 3], &[-3]]);
        assert!(k_res_refutes(&f, 1, &lim()).unwrap().refuted);
        assert_eq!(whd(&f, &lim()).unwrap().value, 1);
        assert_eq!(wid(&f, &lim()).unwrap().value, 3);
    }

    #[test]
    fn trace_is_a_valid_refutation() {
        let f = diffw2u2();
        let o = k_res_refutes(&f, 2, &lim()).unwrap();
        let steps = o.trace.unwrap();
        let mut known: HashSet<Clause> = f.iter().cloned().collect();
        for s in &steps {
            assert!(known.contains(&s.left) && known.contains(&s.right));
            assert!(s.left.len() <= 2 || s.right.len() <= 2);
            assert_eq!(
                crate::clause::resolve(&s.left, &s.right).unwrap(),
                s.resolvent
            );
            known.insert(s.resolvent.clone());
        }
        assert!(steps.last().unwrap().resolvent.is_empty());
    }

    #[test]
    fn chain_phd_two() {
        // a1∨¬a2, a2∨¬a3, a3∨¬a4, a4∨a1
        let f = cs(&[&[1, -2], &[2, -3], &[3, -4], &[4, 1]]);
        assert_eq!(hd(&f, &lim()).unwrap().value, 1);
        let p = phd(&f, &lim()).unwrap();
        assert_eq!(p.value, 2);
        assert!(p.witness.is_some());
    }

    #[test]
    fn lower_bound_values() {
        assert_eq!(res_lower_bound(0, 5), 1.0);
        assert!((res_lower_bound(4, 4) - 0.5f64.exp()).abs() < 1e-12);
        assert!((RESOLUTION_BASE - (0.125f64).exp()).abs() < 1e-15);
        // the printed value is truncated after seven decimals
        assert_eq!((RESOLUTION_BASE * 1e7).floor(), 11_331_484.0);
    }

    #[test]
    fn sat_case_witness() {
        // hd 2 only after instantiation: the diffw2u2 example with a fresh
        // variable added to one clause is satisfiable
        let mut f = diffw2u2();
        f.remove(&Clause::from_ints(&[2, 3, 4]).unwrap());
        f.insert(Clause::from_ints(&[2, 3, 4, 12]).unwrap());
        let h = hd(&f, &lim()).unwrap();
        assert_eq!(h.value, 3);
        let w = h.witness.unwrap();
        assert!(w.contains(crate::clause::Lit::new(12).unwrap()));
    }
}

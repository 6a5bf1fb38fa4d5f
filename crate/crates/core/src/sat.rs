//! Backtracking satisfiability search on packed clauses.

use crate::packed::{union_all, unit_propagate, Bits};

/// Returns the true-literal mask of a satisfying partial assignment, or
/// `None` when `f` is unsatisfiable. Variables absent from the mask may take
/// either value.
pub(crate) fn solve(f: &[Bits]) -> Option<Bits> {
    dpll(f, Bits::EMPTY)
}

pub(crate) fn is_sat(f: &[Bits]) -> bool {
    solve(f).is_some()
}

fn dpll(f: &[Bits], acc: Bits) -> Option<Bits> {
    let (mut f, units) = unit_propagate(f)?;
    let mut acc = acc.union(units);
    // Pure literals are set true: an autarky, so satisfiability is unchanged.
    loop {
        let u = union_all(&f);
        let pure = Bits {
            pos: u.pos & !u.neg,
            neg: u.neg & !u.pos,
        };
        if pure.is_empty() {
            break;
        }
        acc = acc.union(pure);
        f.retain(|c| c.apply(pure).is_some());
    }
    if f.is_empty() {
        return Some(acc);
    }
    let shortest = f
        .iter()
        .copied()
        .min_by_key(|c| c.len())
        .expect("non-empty");
    let (bit, positive) = shortest
        .lits()
        .next()
        .expect("no empty clause after propagation");
    for value in [positive, !positive] {
        let t = Bits::lit(bit, value);
        let g: Vec<Bits> = f.iter().filter_map(|c| c.apply(t)).collect();
        if let Some(m) = dpll(&g, acc.union(t)) {
            return Some(m);
        }
    }
    None
}

/// Whether the true-literal mask `t` satisfies every clause.
#[cfg(test)]
pub(crate) fn satisfies(f: &[Bits], t: Bits) -> bool {
    f.iter().all(|c| c.apply(t).is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clause::ClauseSet;
    use crate::packed::VarIndex;

    fn packed(c: &[&[i32]]) -> Vec<Bits> {
        let f = ClauseSet::from_lits(c).unwrap();
        VarIndex::of(&f).unwrap().pack_set(&f).unwrap()
    }

    #[test]
    fn empty_set_is_sat() {
        assert_eq!(solve(&[]), Some(Bits::EMPTY));
    }

    #[test]
    fn bottom_is_unsat() {
        assert!(solve(&[Bits::EMPTY]).is_none());
    }

    #[test]
    fn model_satisfies() {
        let f = packed(&[&[1, 2, 3], &[-1, -2], &[-2, -3], &[2, -3], &[-1, 3]]);
        let m = solve(&f).unwrap();
        assert!(satisfies(&f, m));
    }

    #[test]
    fn pigeonhole_three_two_unsat() {
        // p_ij = pigeon i in hole j, variable 2*(i-1)+j
        let mut c: Vec<Vec<i32>> = (0..3).map(|i| vec![2 * i + 1, 2 * i + 2]).collect();
        for j in 1..=2 {
            for a in 0..3 {
                for b in a + 1..3 {
                    c.push(vec![-(2 * a + j), -(2 * b + j)]);
                }
            }
        }
        let refs: Vec<&[i32]> = c.iter().map(|v| v.as_slice()).collect();
        assert!(solve(&packed(&refs)).is_none());
    }
}

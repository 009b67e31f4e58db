//! Minimal degree `m = min{|supp(g)| : 1 ≠ g ∈ G}`.
//!
//! Both searches report the lexicographically least image sequence among
//! the elements of minimal support as the witness, so they agree exactly.

use std::fmt;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::{GroupHandle, StabilizerChain};
use crate::perm::Permutation;

/// Exhaustive scans are refused above this many elements.
pub const DEFAULT_ORDER_CAP: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Exhaustive,
    Backtrack,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Exhaustive => "exhaustive",
            Method::Backtrack => "backtrack",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MethodChoice {
    Auto,
    Exhaustive,
    Backtrack,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinDegResult {
    pub m: usize,
    pub witness: Permutation,
    pub method: Method,
    pub elements_visited: u64,
    pub nodes_pruned: u64,
}

/// Scans every non-identity element.
pub fn minimal_degree_exhaustive(chain: &StabilizerChain, order_cap: u64) -> Result<MinDegResult> {
    let order = chain.order();
    if order > BigUint::from(order_cap) {
        return Err(Error::OrderCapExceeded {
            order: order.to_string(),
            cap: order_cap,
        });
    }
    if chain.is_trivial() {
        return Err(Error::TrivialGroup);
    }
    let mut best: Option<(usize, Permutation)> = None;
    let mut visited = 0u64;
    for g in chain.elements() {
        visited += 1;
        let s = g.support_size();
        if s == 0 {
            continue;
        }
        let better = match &best {
            None => true,
            Some((bs, bw)) => s < *bs || (s == *bs && g < *bw),
        };
        if better {
            best = Some((s, g));
        }
    }
    let (m, witness) = best.expect("non-trivial group has a non-identity element");
    Ok(MinDegResult {
        m,
        witness,
        method: Method::Exhaustive,
        elements_visited: visited,
        nodes_pruned: 0,
    })
}

/// Depth-first search over the chain maximizing the number of fixed points.
pub fn minimal_degree_backtrack(chain: &StabilizerChain) -> Result<MinDegResult> {
    minimal_degree_backtrack_parallel(chain, 1)
}

/// Backtrack search with the top-level branches spread over `jobs` workers.
///
/// Every branch starts from the same incumbent, so the counters and the
/// witness do not depend on the schedule.
pub fn minimal_degree_backtrack_parallel(
    chain: &StabilizerChain,
    jobs: usize,
) -> Result<MinDegResult> {
    if chain.is_trivial() {
        return Err(Error::TrivialGroup);
    }
    let search = Search::new(chain);
    let n = chain.degree();

    // Seed with the best strong generator; it is a group element and is
    // visited again by the search, so ties still resolve lexicographically.
    let seed = chain
        .strong_generators()
        .iter()
        .filter(|g| !g.is_identity())
        .map(|g| (n - g.support_size(), g.images().to_vec()))
        .reduce(better)
        .expect("non-trivial chain has generators");

    let top = &chain.levels()[0];
    let run_branch = |beta: usize| -> BranchOutcome {
        let mut state = BranchOutcome {
            best_fix: seed.0,
            best: seed.1.clone(),
            visited: 0,
            pruned: 0,
        };
        let mut bufs = vec![vec![0u32; n]; search.depth + 1];
        let rep = top.representative(beta).unwrap();
        bufs[1].copy_from_slice(rep.images());
        search.descend(1, &mut bufs, &mut state);
        state
    };

    let outcomes: Vec<BranchOutcome> = if jobs <= 1 {
        top.orbit().iter().map(|&b| run_branch(b)).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::InvalidParameter(e.to_string()))?;
        pool.install(|| top.orbit().par_iter().map(|&b| run_branch(b)).collect())
    };

    let mut visited = 0;
    let mut pruned = 0;
    let mut best = seed;
    for o in outcomes {
        visited += o.visited;
        pruned += o.pruned;
        best = better(best, (o.best_fix, o.best));
    }
    Ok(MinDegResult {
        m: n - best.0,
        witness: Permutation::from_raw(best.1),
        method: Method::Backtrack,
        elements_visited: visited,
        nodes_pruned: pruned,
    })
}

/// Minimal degree with caching on the handle.
///
/// `Auto` scans exhaustively when the order is at most `order_cap`, and
/// otherwise runs the backtrack search.
pub fn min_degree(
    handle: &GroupHandle,
    choice: MethodChoice,
    order_cap: u64,
    jobs: usize,
) -> Result<&MinDegResult> {
    let method = match choice {
        MethodChoice::Exhaustive => Method::Exhaustive,
        MethodChoice::Backtrack => Method::Backtrack,
        MethodChoice::Auto => {
            if handle.order() <= &BigUint::from(order_cap) {
                Method::Exhaustive
            } else {
                Method::Backtrack
            }
        }
    };
    let cell = match method {
        Method::Exhaustive => &handle.min_degree_exhaustive,
        Method::Backtrack => &handle.min_degree_backtrack,
    };
    if let Some(r) = cell.get() {
        return Ok(r);
    }
    let result = match method {
        Method::Exhaustive => minimal_degree_exhaustive(handle.chain(), order_cap)?,
        Method::Backtrack => minimal_degree_backtrack_parallel(handle.chain(), jobs)?,
    };
    Ok(cell.get_or_init(|| result))
}

fn better(a: (usize, Vec<u32>), b: (usize, Vec<u32>)) -> (usize, Vec<u32>) {
    if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
        b
    } else {
        a
    }
}

struct BranchOutcome {
    best_fix: usize,
    best: Vec<u32>,
    visited: u64,
    pruned: u64,
}

struct Search<'a> {
    chain: &'a StabilizerChain,
    depth: usize,
    /// `orbit_ids[i][α]`: index of the orbit of `α` under the stabilizer
    /// `G^(i)` of the first `i` base points.
    orbit_ids: Vec<Vec<u32>>,
}

impl<'a> Search<'a> {
    fn new(chain: &'a StabilizerChain) -> Self {
        let n = chain.degree();
        let depth = chain.levels().len();
        let orbit_ids = (0..=depth)
            .map(|i| {
                let gens = chain.levels().get(i).map(|l| l.generators()).unwrap_or(&[]);
                orbit_partition(n, gens)
            })
            .collect();
        Search {
            chain,
            depth,
            orbit_ids,
        }
    }

    /// `bufs[level]` holds the partial product `p = u_level ⋯ u_1`; the
    /// elements below this node form the coset `G^(level) p`.
    fn descend(&self, level: usize, bufs: &mut [Vec<u32>], state: &mut BranchOutcome) {
        let n = self.chain.degree();
        let ids = &self.orbit_ids[level];
        let p = &bufs[level];
        // h p fixes α iff α^(p⁻¹) = β lies in the G^(level)-orbit of α = β^p.
        let bound = (0..n).filter(|&b| ids[b] == ids[p[b] as usize]).count();

        if level == self.depth {
            state.visited += 1;
            if bound == n {
                return;
            }
            if bound > state.best_fix || (bound == state.best_fix && p[..] < state.best[..]) {
                state.best_fix = bound;
                state.best.copy_from_slice(p);
            }
            return;
        }
        // Ties are explored so the lexicographic minimum is found.
        if bound < state.best_fix {
            state.pruned += 1;
            return;
        }

        let lvl = &self.chain.levels()[level];
        if level + 1 == self.depth {
            // Leaves: evaluate u p without materializing when it cannot win.
            let p = &bufs[level];
            for &beta in lvl.orbit() {
                let rep = lvl.representative(beta).unwrap().images();
                state.visited += 1;
                let fix = (0..n).filter(|&a| p[rep[a] as usize] as usize == a).count();
                if fix == n || fix < state.best_fix {
                    continue;
                }
                let candidate: Vec<u32> = rep.iter().map(|&r| p[r as usize]).collect();
                if fix > state.best_fix || candidate < state.best {
                    state.best_fix = fix;
                    state.best = candidate;
                }
            }
            return;
        }
        for &beta in lvl.orbit() {
            let rep = lvl.representative(beta).unwrap().images();
            let (head, tail) = bufs.split_at_mut(level + 1);
            let p = &head[level];
            for (dst, &r) in tail[0].iter_mut().zip(rep) {
                *dst = p[r as usize];
            }
            self.descend(level + 1, bufs, state);
        }
    }
}

fn orbit_partition(n: usize, gens: &[Permutation]) -> Vec<u32> {
    let mut ids = vec![u32::MAX; n];
    let mut next = 0u32;
    for start in 0..n {
        if ids[start] != u32::MAX {
            continue;
        }
        ids[start] = next;
        let mut stack = vec![start];
        while let Some(a) = stack.pop() {
            for g in gens {
                let b = g.image(a);
                if ids[b] == u32::MAX {
                    ids[b] = next;
                    stack.push(b);
                }
            }
        }
        next += 1;
    }
    ids
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GeneratorSet;
    use crate::perm::parse_cycles;

    fn handle(n: usize, cycles: &[&str]) -> GroupHandle {
        let gens = cycles.iter().map(|c| parse_cycles(c, n).unwrap()).collect();
        GroupHandle::new(GeneratorSet::new(n, gens, "test").unwrap()).unwrap()
    }

    #[test]
    fn small_groups() {
        let s5 = handle(5, &["(1,2)", "(1,2,3,4,5)"]);
        let r = minimal_degree_exhaustive(s5.chain(), 1000).unwrap();
        assert_eq!(r.m, 2);
        assert_eq!(r.witness.cycles().len(), 1);
        assert_eq!(r.elements_visited, 120);

        let a5 = handle(5, &["(1,2,3)", "(1,2,4)", "(1,2,5)"]);
        assert_eq!(minimal_degree_exhaustive(a5.chain(), 1000).unwrap().m, 3);
        assert_eq!(minimal_degree_backtrack(a5.chain()).unwrap().m, 3);

        let d4 = handle(4, &["(1,2,3,4)", "(2,4)"]);
        let r = minimal_degree_backtrack(d4.chain()).unwrap();
        assert_eq!(r.m, 2);
        assert_eq!(
            r,
            MinDegResult {
                method: Method::Backtrack,
                ..r.clone()
            }
        );
        assert_eq!(
            r.witness,
            minimal_degree_exhaustive(d4.chain(), 100).unwrap().witness
        );

        let c5 = handle(5, &["(1,2,3,4,5)"]);
        assert_eq!(minimal_degree_backtrack(c5.chain()).unwrap().m, 5);
    }

    #[test]
    fn errors() {
        let triv = handle(3, &[]);
        assert_eq!(
            minimal_degree_exhaustive(triv.chain(), 10),
            Err(Error::TrivialGroup)
        );
        assert_eq!(
            minimal_degree_backtrack(triv.chain()),
            Err(Error::TrivialGroup)
        );
        let s5 = handle(5, &["(1,2)", "(1,2,3,4,5)"]);
        assert!(matches!(
            minimal_degree_exhaustive(s5.chain(), 100),
            Err(Error::OrderCapExceeded { .. })
        ));
    }

    #[test]
    fn dispatch_and_cache() {
        let s6 = handle(6, &["(1,2)", "(1,2,3,4,5,6)"]);
        let first = min_degree(&s6, MethodChoice::Auto, DEFAULT_ORDER_CAP, 1).unwrap();
        assert_eq!(first.method, Method::Exhaustive);
        assert_eq!(first.m, 2);
        let again = min_degree(&s6, MethodChoice::Auto, DEFAULT_ORDER_CAP, 1).unwrap();
        assert!(std::ptr::eq(first, again));
        let bt = min_degree(&s6, MethodChoice::Auto, 100, 1).unwrap();
        assert_eq!(bt.method, Method::Backtrack);
        assert_eq!(bt.witness, first.witness);
    }

    #[test]
    fn parallel_matches_serial() {
        let g = handle(
            8,
            &["(1,2,3,4,5,6,7)", "(1,2,4)(3,6,5)", "(1,8)(2,7)(3,4)(5,6)"],
        );
        let serial = minimal_degree_backtrack(g.chain()).unwrap();
        let par = minimal_degree_backtrack_parallel(g.chain(), 4).unwrap();
        assert_eq!(serial, par);
    }
}

//! Exact verification of commutator support laws, orbit counting
//! identities, and the minimal degree bounds for multiply transitive groups.
//!
//! Every comparison is made in exact rational arithmetic. Theorem traces
//! pick their witnesses deterministically by default; setting
//! [`TraceOptions::seed`] replaces each choice by a random valid one.

mod check;
mod counting;
mod jordan;
mod laws;
mod suites;
mod table;
mod theorems;

pub use check::{all_pass, int, ratio, CountCheck, Rational, Relation};
pub use counting::{
    act_on_pair, act_on_point, check_orbit_counts, check_product_action, distinct_pairs,
    ActionDomain, Clause, OrbitCountReport,
};
pub use jordan::{check_jordan, check_jordan_with, JordanTrace};
pub use laws::{
    check_commutator_laws, check_two_set_bound, maximal_phi_psi, two_set_hypotheses, CommutatorLaws,
};
pub use suites::{counts_suite, laws_suite, SuiteOptions, SuiteReport};
pub use table::{lower_bound, mathieu_bound_table, BoundRow, PUBLISHED_ROWS};
pub use theorems::{trace_bound, Bound, DerivedQuantities, SetSizes, TraceReport};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::group::{GroupHandle, DEFAULT_ORBIT_CAP};
use crate::mindeg::{min_degree, MethodChoice, DEFAULT_ORDER_CAP};
use crate::perm::{Permutation, Point, PointSet};

/// Resource limits and witness selection for theorem traces.
#[derive(Clone, Debug)]
pub struct TraceOptions {
    pub method: MethodChoice,
    pub order_cap: u64,
    pub orbit_cap: usize,
    pub jobs: usize,
    /// Draw witnesses at random from this seed instead of taking the least.
    pub seed: Option<u64>,
}

impl Default for TraceOptions {
    fn default() -> Self {
        TraceOptions {
            method: MethodChoice::Auto,
            order_cap: DEFAULT_ORDER_CAP,
            orbit_cap: DEFAULT_ORBIT_CAP,
            jobs: 1,
            seed: None,
        }
    }
}

impl TraceOptions {
    pub fn seeded(seed: u64) -> Self {
        TraceOptions {
            seed: Some(seed),
            ..Self::default()
        }
    }

    fn min_degree(&self, handle: &GroupHandle) -> Result<Permutation> {
        Ok(min_degree(handle, self.method, self.order_cap, self.jobs)?
            .witness
            .clone())
    }
}

/// Makes each free choice in a construction: the least option, or a random
/// one when seeded.
pub(crate) struct Choices {
    rng: Option<ChaCha8Rng>,
}

impl Choices {
    pub(crate) fn new(opts: &TraceOptions) -> Self {
        Choices {
            rng: opts.seed.map(ChaCha8Rng::seed_from_u64),
        }
    }

    /// `u` itself, or a random conjugate of it inside the group.
    pub(crate) fn conjugate_in(&mut self, handle: &GroupHandle, u: &Permutation) -> Permutation {
        match &mut self.rng {
            None => u.clone(),
            Some(rng) => u.conjugate_by(&handle.chain().random_element(rng)),
        }
    }

    pub(crate) fn pick(&mut self, set: &PointSet) -> Option<Point> {
        match &mut self.rng {
            None => set.first(),
            Some(rng) => set.to_vec().choose(rng).copied(),
        }
    }

    /// Nontrivial cycles, ordered by least point or shuffled.
    pub(crate) fn ordered_cycles(&mut self, u: &Permutation) -> Vec<Vec<Point>> {
        let mut cycles: Vec<Vec<Point>> = u.cycles().into_iter().filter(|c| c.len() > 1).collect();
        match &mut self.rng {
            None => cycles.sort(),
            Some(rng) => cycles.shuffle(rng),
        }
        cycles
    }

    /// Some `g` with `src[i]^g = dst[i]`; when seeded, a uniformly random one.
    pub(crate) fn transporter(
        &mut self,
        handle: &GroupHandle,
        src: &[Point],
        dst: &[Point],
    ) -> Result<Option<Permutation>> {
        let Some(h) = handle.transporter(src, dst)? else {
            return Ok(None);
        };
        match &mut self.rng {
            None => Ok(Some(h)),
            Some(rng) => {
                let fixed = PointSet::from_points(handle.degree(), src.iter().copied())?;
                let stab = handle.pointwise_stabilizer(&fixed)?;
                Ok(Some(stab.chain().random_element(rng).then(&h)))
            }
        }
    }
}

use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::{GeneratorSet, StabilizerChain};
use crate::error::{Error, Result};
use crate::mindeg::MinDegResult;
use crate::perm::{Permutation, Point, PointSet};

/// A group together with its stabilizer chain and lazily computed invariants.
#[derive(Debug)]
pub struct GroupHandle {
    generators: GeneratorSet,
    chain: StabilizerChain,
    order: BigUint,
    transitivity: OnceLock<usize>,
    pub(crate) min_degree_exhaustive: OnceLock<MinDegResult>,
    pub(crate) min_degree_backtrack: OnceLock<MinDegResult>,
}

impl GroupHandle {
    pub fn new(generators: GeneratorSet) -> Result<Self> {
        let chain = StabilizerChain::new(generators.degree(), generators.generators(), &[])?;
        Ok(Self::from_chain(generators, chain))
    }

    fn from_chain(generators: GeneratorSet, chain: StabilizerChain) -> Self {
        let order = chain.order();
        GroupHandle {
            generators,
            chain,
            order,
            transitivity: OnceLock::new(),
            min_degree_exhaustive: OnceLock::new(),
            min_degree_backtrack: OnceLock::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.generators.degree()
    }

    pub fn label(&self) -> &str {
        self.generators.label()
    }

    pub fn generators(&self) -> &GeneratorSet {
        &self.generators
    }

    pub fn chain(&self) -> &StabilizerChain {
        &self.chain
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.order.to_u64()
    }

    pub fn is_trivial(&self) -> bool {
        self.order == BigUint::from(1u32)
    }

    pub fn contains(&self, g: &Permutation) -> Result<bool> {
        self.chain.contains(g)
    }

    /// `G₍Δ₎`, read off a chain whose base starts with `Δ`.
    pub fn pointwise_stabilizer(&self, delta: &PointSet) -> Result<GroupHandle> {
        if delta.degree() != self.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: delta.degree(),
            });
        }
        let prefix = delta.to_vec();
        let chain = self.chain.rebased(&prefix)?.suffix(prefix.len());
        let gens = GeneratorSet::new(
            self.degree(),
            chain.strong_generators().to_vec(),
            format!("{}_({})", self.label(), delta),
        )?;
        Ok(Self::from_chain(gens, chain))
    }

    /// Some `g ∈ G` with `src[i]^g = dst[i]` for all `i`, if one exists.
    pub fn transporter(&self, src: &[Point], dst: &[Point]) -> Result<Option<Permutation>> {
        let n = self.degree();
        if src.len() != dst.len() {
            return Err(Error::MalformedTuple(format!(
                "lengths differ: {} vs {}",
                src.len(),
                dst.len()
            )));
        }
        for tuple in [src, dst] {
            let mut seen = vec![false; n];
            for &p in tuple {
                if p >= n {
                    return Err(Error::PointOutOfRange {
                        point: p,
                        degree: n,
                    });
                }
                if std::mem::replace(&mut seen[p], true) {
                    return Err(Error::MalformedTuple(format!("point {} repeated", p + 1)));
                }
            }
        }
        let chain = self.chain.rebased(src)?;
        // g = u_k ⋯ u_1; after choosing u_1..u_i the partial product p
        // must satisfy src[i]^(u_{i+1} p) = dst[i].
        let mut p = Permutation::identity(n);
        let mut p_inv = Permutation::identity(n);
        for (i, level) in chain.levels().iter().take(src.len()).enumerate() {
            let target = p_inv.image(dst[i]);
            match level.representative(target) {
                Some(rep) => {
                    p = rep.then(&p);
                    p_inv = p.inverse();
                }
                None => return Ok(None),
            }
        }
        debug_assert!(src.iter().zip(dst).all(|(&s, &d)| p.image(s) == d));
        Ok(Some(p))
    }

    /// Largest `t` such that `G` is transitive on ordered `t`-tuples of
    /// distinct points: `G` is `t`-transitive iff it is transitive and the
    /// stabilizer of a point is `(t-1)`-transitive on the rest.
    pub fn transitivity_degree(&self) -> usize {
        *self.transitivity.get_or_init(|| {
            let n = self.degree();
            let mut chain = self.chain.clone();
            let mut prefix: Vec<Point> = Vec::new();
            while prefix.len() < n {
                let next = prefix.len();
                prefix.push(next);
                chain = chain
                    .rebased(&prefix)
                    .expect("prefix of distinct in-range points");
                if chain.levels()[next].orbit_len() != n - next {
                    return next;
                }
            }
            n
        })
    }

    /// Whether `G ≥ Alt(Ω)`: the order is at least `n!/2` and the 3-cycle
    /// `(1,2,3)` sifts through the chain.
    pub fn contains_alternating(&self) -> bool {
        let n = self.degree();
        if n < 3 {
            return true;
        }
        let factorial: BigUint = (1..=n).map(BigUint::from).product();
        if &self.order * 2u32 < factorial {
            return false;
        }
        let three_cycle = Permutation::cycle(n, &[0, 1, 2]).unwrap();
        self.contains(&three_cycle).unwrap()
    }
}

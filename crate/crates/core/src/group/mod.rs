//! Permutation groups given by generators, backed by a stabilizer chain.

mod chain;
mod handle;
mod orbit;

pub use chain::{Elements, Level, StabilizerChain};
pub use handle::GroupHandle;
pub use orbit::{conjugate_orbit, orbit, ConjugateOrbit, DEFAULT_ORBIT_CAP};

use crate::error::{Error, Result};
use crate::perm::Permutation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    degree: usize,
    generators: Vec<Permutation>,
    label: String,
}

impl GeneratorSet {
    pub fn new(
        degree: usize,
        generators: Vec<Permutation>,
        label: impl Into<String>,
    ) -> Result<Self> {
        if degree == 0 {
            return Err(Error::ZeroDegree);
        }
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch {
                left: degree,
                right: g.degree(),
            });
        }
        Ok(GeneratorSet {
            degree,
            generators,
            label: label.into(),
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Conjugates every generator by `g` (a relabelling of the points).
    pub fn relabelled(&self, g: &Permutation) -> Result<Self> {
        let gens = self
            .generators
            .iter()
            .map(|x| crate::perm::conjugate(x, g))
            .collect::<Result<Vec<_>>>()?;
        GeneratorSet::new(self.degree, gens, self.label.clone())
    }
}

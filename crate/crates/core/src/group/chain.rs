//! Deterministic Schreier–Sims.
//!
//! Level `i` of a chain holds the base point `b_i`, the strong generators
//! fixing `b_0, .., b_{i-1}`, the fundamental orbit of `b_i` under them and
//! a transversal `u_β` with `b_i^{u_β} = β`. Every group element factors
//! uniquely as `u_k ⋯ u_1` (left-to-right product, `u_i` from level `i-1`).

use num_bigint::BigUint;
use rand::Rng;

use crate::error::{Error, Result};
use crate::perm::{Permutation, Point};

#[derive(Clone, Debug)]
pub struct Level {
    base_point: Point,
    generators: Vec<Permutation>,
    orbit: Vec<Point>,
    transversal: Vec<Option<Permutation>>,
}

impl Level {
    fn new(degree: usize, base_point: Point, generators: Vec<Permutation>) -> Self {
        let mut level = Level {
            base_point,
            generators,
            orbit: Vec::new(),
            transversal: Vec::new(),
        };
        level.rebuild(degree);
        level
    }

    fn rebuild(&mut self, degree: usize) {
        let mut transversal: Vec<Option<Permutation>> = vec![None; degree];
        transversal[self.base_point] = Some(Permutation::identity(degree));
        let mut orbit = vec![self.base_point];
        let mut i = 0;
        while i < orbit.len() {
            let gamma = orbit[i];
            for s in &self.generators {
                let delta = s.image(gamma);
                if transversal[delta].is_none() {
                    let rep = transversal[gamma].as_ref().unwrap().then(s);
                    transversal[delta] = Some(rep);
                    orbit.push(delta);
                }
            }
            i += 1;
        }
        self.orbit = orbit;
        self.transversal = transversal;
    }

    pub fn base_point(&self) -> Point {
        self.base_point
    }

    /// Strong generators fixing all earlier base points.
    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Fundamental orbit in discovery order; the base point comes first.
    pub fn orbit(&self) -> &[Point] {
        &self.orbit
    }

    pub fn orbit_len(&self) -> usize {
        self.orbit.len()
    }

    /// The coset representative mapping the base point to `point`.
    pub fn representative(&self, point: Point) -> Option<&Permutation> {
        self.transversal.get(point).and_then(Option::as_ref)
    }
}

#[derive(Clone, Debug)]
pub struct StabilizerChain {
    degree: usize,
    levels: Vec<Level>,
    strong_generators: Vec<Permutation>,
}

impl StabilizerChain {
    /// Runs Schreier–Sims on `generators`. The base starts with
    /// `base_prefix` and is extended by the least moved point of whichever
    /// element needs a new level.
    pub fn new(degree: usize, generators: &[Permutation], base_prefix: &[Point]) -> Result<Self> {
        for g in generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        let mut seen = vec![false; degree];
        for &b in base_prefix {
            if b >= degree {
                return Err(Error::PointOutOfRange { point: b, degree });
            }
            if std::mem::replace(&mut seen[b], true) {
                return Err(Error::RepeatedPoint(b + 1));
            }
        }

        let mut gens: Vec<Permutation> = Vec::new();
        for g in generators {
            if !g.is_identity() && !gens.contains(g) {
                gens.push(g.clone());
            }
        }

        let mut base: Vec<Point> = base_prefix.to_vec();
        for g in &gens {
            if base.iter().all(|&b| g.fixes(b)) {
                base.push(first_moved_point(g).unwrap());
            }
        }
        let mut levels: Vec<Level> = base
            .iter()
            .enumerate()
            .map(|(i, &b)| {
                let fixing = gens
                    .iter()
                    .filter(|g| base[..i].iter().all(|&c| g.fixes(c)))
                    .cloned()
                    .collect();
                Level::new(degree, b, fixing)
            })
            .collect();

        let mut i = levels.len();
        while i > 0 {
            let level_idx = i - 1;
            match find_nontrivial_schreier_residue(&levels, level_idx) {
                Some((residue, drop_level)) => {
                    if drop_level == levels.len() {
                        let b = first_moved_point(&residue).unwrap();
                        levels.push(Level::new(degree, b, Vec::new()));
                    }
                    for level in &mut levels[level_idx + 1..=drop_level] {
                        level.generators.push(residue.clone());
                        level.rebuild(degree);
                    }
                    i = drop_level + 1;
                }
                None => i -= 1,
            }
        }

        let strong_generators = levels
            .first()
            .map(|l| l.generators.clone())
            .unwrap_or_default();
        Ok(StabilizerChain {
            degree,
            levels,
            strong_generators,
        })
    }

    /// A chain for the same group whose base begins with `prefix`.
    pub fn rebased(&self, prefix: &[Point]) -> Result<Self> {
        if self.base().starts_with(prefix) {
            return Ok(self.clone());
        }
        StabilizerChain::new(self.degree, &self.strong_generators, prefix)
    }

    /// The chain of the stabilizer of the first `depth` base points.
    pub fn suffix(&self, depth: usize) -> StabilizerChain {
        let levels: Vec<Level> = self.levels.iter().skip(depth).cloned().collect();
        let strong_generators = levels
            .first()
            .map(|l| l.generators.clone())
            .unwrap_or_default();
        StabilizerChain {
            degree: self.degree,
            levels,
            strong_generators,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn base(&self) -> Vec<Point> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        &self.strong_generators
    }

    pub fn is_trivial(&self) -> bool {
        self.levels.iter().all(|l| l.orbit_len() == 1)
    }

    /// Product of the fundamental orbit sizes.
    pub fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::from(1u32), |acc, l| {
            acc * BigUint::from(l.orbit_len())
        })
    }

    /// Sifts `g` from level `start`. Returns the residue and the index of the
    /// level where sifting stopped (`levels().len()` if it went through).
    pub fn sift_from(&self, g: &Permutation, start: usize) -> (Permutation, usize) {
        sift(&self.levels, g, start)
    }

    pub fn contains(&self, g: &Permutation) -> Result<bool> {
        if g.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: g.degree(),
            });
        }
        let (residue, level) = self.sift_from(g, 0);
        Ok(level == self.levels.len() && residue.is_identity())
    }

    /// Uniformly random element: a random representative from every level.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let mut acc = Permutation::identity(self.degree);
        for level in self.levels.iter().rev() {
            let beta = level.orbit[rng.gen_range(0..level.orbit_len())];
            acc = acc.then(level.representative(beta).unwrap());
        }
        acc
    }

    /// Every element exactly once.
    pub fn elements(&self) -> Elements<'_> {
        let top = self.levels.first().map_or(1, Level::orbit_len);
        self.elements_in_top_range(0..top)
    }

    /// Elements whose top-level representative index lies in `range`; the
    /// ranges of a partition of `0..orbit_len(0)` enumerate the group
    /// disjointly.
    pub fn elements_in_top_range(&self, range: std::ops::Range<usize>) -> Elements<'_> {
        Elements::new(self, range)
    }
}

fn first_moved_point(g: &Permutation) -> Option<Point> {
    (0..g.degree()).find(|&p| !g.fixes(p))
}

fn sift(levels: &[Level], g: &Permutation, start: usize) -> (Permutation, usize) {
    let mut h = g.clone();
    for (i, level) in levels.iter().enumerate().skip(start) {
        let beta = h.image(level.base_point);
        match level.representative(beta) {
            Some(rep) => h = h.then(&rep.inverse()),
            None => return (h, i),
        }
    }
    (h, levels.len())
}

/// Scans the Schreier generators `u_β s u_{β^s}⁻¹` of one level and returns
/// the first that does not sift to the identity through the deeper levels.
fn find_nontrivial_schreier_residue(
    levels: &[Level],
    level_idx: usize,
) -> Option<(Permutation, usize)> {
    let level = &levels[level_idx];
    for &beta in &level.orbit {
        let u_beta = level.representative(beta).unwrap();
        for s in &level.generators {
            let product = u_beta.then(s);
            let u_image = level.representative(s.image(beta)).unwrap();
            if &product == u_image {
                continue;
            }
            let schreier = product.then(&u_image.inverse());
            let (residue, drop) = sift(levels, &schreier, level_idx + 1);
            if drop < levels.len() || !residue.is_identity() {
                return Some((residue, drop));
            }
        }
    }
    None
}

/// Odometer over transversal choices, deepest level fastest.
pub struct Elements<'a> {
    chain: &'a StabilizerChain,
    end_top: usize,
    indices: Vec<usize>,
    partial: Vec<Permutation>,
    done: bool,
}

impl<'a> Elements<'a> {
    fn new(chain: &'a StabilizerChain, range: std::ops::Range<usize>) -> Self {
        let k = chain.levels.len();
        let mut it = Elements {
            chain,
            end_top: range.end,
            indices: vec![0; k],
            partial: Vec::with_capacity(k),
            done: range.start >= range.end,
        };
        if k > 0 && !it.done {
            it.indices[0] = range.start;
            it.fill_from(0);
        }
        it
    }

    fn rep(&self, level: usize) -> &Permutation {
        let l = &self.chain.levels[level];
        l.representative(l.orbit[self.indices[level]]).unwrap()
    }

    fn fill_from(&mut self, level: usize) {
        self.partial.truncate(level);
        for i in level..self.chain.levels.len() {
            let p = match i {
                0 => self.rep(0).clone(),
                _ => self.rep(i).then(&self.partial[i - 1]),
            };
            self.partial.push(p);
        }
    }
}

impl Iterator for Elements<'_> {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let k = self.chain.levels.len();
        let current = self
            .partial
            .last()
            .cloned()
            .unwrap_or_else(|| Permutation::identity(self.chain.degree));
        // advance
        let mut level = k;
        loop {
            if level == 0 {
                self.done = true;
                break;
            }
            level -= 1;
            let limit = if level == 0 {
                self.end_top
            } else {
                self.chain.levels[level].orbit_len()
            };
            if self.indices[level] + 1 < limit {
                self.indices[level] += 1;
                for idx in &mut self.indices[level + 1..] {
                    *idx = 0;
                }
                self.fill_from(level);
                break;
            }
        }
        Some(current)
    }
}

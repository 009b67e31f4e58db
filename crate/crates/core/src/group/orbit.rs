use std::collections::HashSet;

use super::GroupHandle;
use crate::error::{Error, Result};
use crate::perm::{Permutation, Point, PointSet};

/// Largest conjugate orbit built before giving up.
pub const DEFAULT_ORBIT_CAP: usize = 10_000_000;

/// The smallest set containing `alpha` that is closed under `generators`.
pub fn orbit(degree: usize, generators: &[Permutation], alpha: Point) -> Result<PointSet> {
    if alpha >= degree {
        return Err(Error::PointOutOfRange {
            point: alpha,
            degree,
        });
    }
    let mut set = PointSet::empty(degree);
    set.insert(alpha);
    let mut queue = vec![alpha];
    while let Some(p) = queue.pop() {
        for g in generators {
            let q = g.image(p);
            if !set.contains(q) {
                set.insert(q);
                queue.push(q);
            }
        }
    }
    Ok(set)
}

/// `E = {g⁻¹ u g : g ∈ H}` for a group `H` fixing a set `Δ ⊆ supp(u)` pointwise.
#[derive(Clone, Debug)]
pub struct ConjugateOrbit {
    base: Permutation,
    fixed: PointSet,
    elements: Vec<Permutation>,
}

impl ConjugateOrbit {
    pub fn base(&self) -> &Permutation {
        &self.base
    }

    /// The set `Δ`.
    pub fn fixed(&self) -> &PointSet {
        &self.fixed
    }

    /// Members in discovery order; `u` is first.
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Closes `{u}` under conjugation by the generators of `stab`.
///
/// `stab` must fix every point of `delta`, and `delta ⊆ supp(u)`.
pub fn conjugate_orbit(
    stab: &GroupHandle,
    u: &Permutation,
    delta: &PointSet,
    cap: usize,
) -> Result<ConjugateOrbit> {
    let n = stab.degree();
    if u.degree() != n {
        return Err(Error::DegreeMismatch {
            left: n,
            right: u.degree(),
        });
    }
    if delta.degree() != n {
        return Err(Error::DegreeMismatch {
            left: n,
            right: delta.degree(),
        });
    }
    if !delta.is_subset(&u.support()) {
        return Err(Error::Precondition(format!(
            "Δ = {delta} is not contained in supp(u)"
        )));
    }
    let gens = stab.chain().strong_generators();
    if gens.iter().any(|g| delta.iter().any(|d| !g.fixes(d))) {
        return Err(Error::Precondition(
            "stabilizer does not fix Δ pointwise".to_string(),
        ));
    }

    let mut seen: HashSet<Permutation> = HashSet::new();
    seen.insert(u.clone());
    let mut elements = vec![u.clone()];
    let mut i = 0;
    while i < elements.len() {
        for g in gens {
            let x = elements[i].conjugate_by(g);
            if !seen.contains(&x) {
                if elements.len() >= cap {
                    return Err(Error::OrbitCapExceeded { cap });
                }
                seen.insert(x.clone());
                elements.push(x);
            }
        }
        i += 1;
    }
    Ok(ConjugateOrbit {
        base: u.clone(),
        fixed: delta.clone(),
        elements,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GeneratorSet;
    use crate::perm::parse_cycles;

    fn sym4() -> GroupHandle {
        let gens = vec![
            parse_cycles("(1,2)", 4).unwrap(),
            parse_cycles("(1,2,3,4)", 4).unwrap(),
        ];
        GroupHandle::new(GeneratorSet::new(4, gens, "S4").unwrap()).unwrap()
    }

    #[test]
    fn orbits() {
        let c4 = [parse_cycles("(1,2,3,4)", 4).unwrap()];
        assert_eq!(orbit(4, &c4, 0).unwrap().len(), 4);
        assert_eq!(orbit(4, &[], 2).unwrap().to_vec(), vec![2]);
        assert!(orbit(4, &[], 4).is_err());
    }

    #[test]
    fn conjugates_in_sym4() {
        let g = sym4();
        let delta = PointSet::from_points(4, [0]).unwrap();
        let stab = g.pointwise_stabilizer(&delta).unwrap();

        let four_cycle = parse_cycles("(1,2,3,4)", 4).unwrap();
        let e = conjugate_orbit(&stab, &four_cycle, &delta, DEFAULT_ORBIT_CAP).unwrap();
        assert_eq!(e.len(), 6);
        assert!(e
            .elements()
            .iter()
            .all(|x| x.cycles().len() == 1 && x.support_size() == 4));

        let three_cycle = parse_cycles("(1,2,3)", 4).unwrap();
        let e = conjugate_orbit(&stab, &three_cycle, &delta, DEFAULT_ORBIT_CAP).unwrap();
        assert_eq!(e.len(), 6);
        assert!(e
            .elements()
            .iter()
            .all(|x| x.support_size() == 3 && !x.fixes(0)));
        assert_eq!(e.elements()[0], three_cycle);
    }

    #[test]
    fn trivial_stabilizer_gives_singleton() {
        let triv = GroupHandle::new(GeneratorSet::new(4, vec![], "1").unwrap()).unwrap();
        let u = parse_cycles("(1,2)", 4).unwrap();
        let e = conjugate_orbit(&triv, &u, &PointSet::empty(4), 10).unwrap();
        assert_eq!(e.elements(), &[u]);
    }

    #[test]
    fn preconditions_and_cap() {
        let g = sym4();
        let u = parse_cycles("(1,2,3)", 4).unwrap();
        let outside = PointSet::from_points(4, [3]).unwrap();
        assert!(matches!(
            conjugate_orbit(&g, &u, &outside, 10),
            Err(Error::Precondition(_))
        ));
        let delta = PointSet::from_points(4, [0]).unwrap();
        assert!(matches!(
            conjugate_orbit(&g, &u, &delta, 10),
            Err(Error::Precondition(_))
        ));
        assert_eq!(
            conjugate_orbit(&g, &u, &PointSet::empty(4), 3).unwrap_err(),
            Error::OrbitCapExceeded { cap: 3 }
        );
    }
}

//! Double counting over relations between two transitive actions, and exact
//! counts over conjugate orbits `E = {u^g : g ∈ G₍Δ₎}`.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::hash::Hash;

use super::check::{int, ratio, CountCheck};
use crate::error::{Error, Result};
use crate::group::{conjugate_orbit, ConjugateOrbit, GroupHandle};
use crate::perm::{Permutation, Point, PointSet};

/// A finite set acted on by permutations through `act`.
pub struct ActionDomain<'a, T> {
    pub points: Vec<T>,
    pub act: &'a dyn Fn(&T, &Permutation) -> T,
}

impl<T> ActionDomain<'_, T>
where
    T: Clone + Eq + Hash,
{
    fn is_transitive(&self, generators: &[Permutation]) -> bool {
        let Some(first) = self.points.first() else {
            return true;
        };
        let mut seen: HashSet<T> = HashSet::from([first.clone()]);
        let mut queue = vec![first.clone()];
        while let Some(x) = queue.pop() {
            for g in generators {
                let y = (self.act)(&x, g);
                if seen.insert(y.clone()) {
                    queue.push(y);
                }
            }
        }
        let all: HashSet<&T> = self.points.iter().collect();
        seen.len() == all.len() && seen.iter().all(|x| all.contains(x))
    }
}

/// The action of a permutation on points.
pub fn act_on_point(p: &Point, g: &Permutation) -> Point {
    g.image(*p)
}

/// The induced action on ordered pairs.
pub fn act_on_pair(p: &(Point, Point), g: &Permutation) -> (Point, Point) {
    (g.image(p.0), g.image(p.1))
}

/// Ordered pairs of distinct points outside `delta`.
pub fn distinct_pairs(delta: &PointSet) -> Vec<(Point, Point)> {
    let rest = delta.complement().to_vec();
    let mut pairs = Vec::with_capacity(rest.len() * rest.len().saturating_sub(1));
    for &a in &rest {
        for &b in &rest {
            if a != b {
                pairs.push((a, b));
            }
        }
    }
    pairs
}

/// Checks that a relation `E ⊆ Ω × Ω'` invariant under the product action
/// has constant row counts `M`, constant column counts `M'`, and
/// `M|Ω| = M'|Ω'|`.
pub fn check_product_action<A, B>(
    generators: &[Permutation],
    omega: &ActionDomain<'_, A>,
    omega2: &ActionDomain<'_, B>,
    relation: &HashSet<(A, B)>,
) -> Result<Vec<CountCheck>>
where
    A: Clone + Eq + Hash,
    B: Clone + Eq + Hash,
{
    if !omega.is_transitive(generators) {
        return Err(Error::NotTransitive("first domain"));
    }
    if !omega2.is_transitive(generators) {
        return Err(Error::NotTransitive("second domain"));
    }
    for (a, b) in relation {
        for g in generators {
            if !relation.contains(&((omega.act)(a, g), (omega2.act)(b, g))) {
                return Err(Error::NotInvariant);
            }
        }
    }

    let mut rows: HashMap<&A, usize> = omega.points.iter().map(|a| (a, 0)).collect();
    let mut cols: HashMap<&B, usize> = omega2.points.iter().map(|b| (b, 0)).collect();
    for (a, b) in relation {
        match (rows.get_mut(a), cols.get_mut(b)) {
            (Some(r), Some(c)) => {
                *r += 1;
                *c += 1;
            }
            _ => {
                return Err(Error::Validation {
                    label: "relation".into(),
                    reason: "pair outside the product of the domains".into(),
                })
            }
        }
    }
    let (row_lo, row_hi) = spread(rows.values().copied());
    let (col_lo, col_hi) = spread(cols.values().copied());
    Ok(vec![
        CountCheck::eq(
            "largest row count = smallest row count (M)",
            row_hi,
            int(row_lo),
        ),
        CountCheck::eq(
            "largest column count = smallest column count (M')",
            col_hi,
            int(col_lo),
        ),
        CountCheck::eq(
            "M|Ω| = M'|Ω'|",
            row_lo * omega.points.len(),
            int(col_lo * omega2.points.len()),
        ),
        CountCheck::eq(
            "|E| = M|Ω|",
            relation.len(),
            int(row_lo * omega.points.len()),
        ),
    ])
}

fn spread(counts: impl Iterator<Item = usize> + Clone) -> (usize, usize) {
    (counts.clone().min().unwrap_or(0), counts.max().unwrap_or(0))
}

/// The five counting identities over a conjugate orbit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Clause {
    /// `|{x ∈ E : γ^x = γ}| = |E|(n−m)/(n−|Δ|)`, needs `|Δ| ≤ t−1`.
    Fixers,
    /// `|{x ∈ E : γ^x ≠ γ}| = |E|(m−|Δ|)/(n−|Δ|)`, needs `|Δ| ≤ t−1`.
    Movers,
    /// `|{x ∈ E : γ ∈ fix(x), δ ∈ supp(x)}| = |E|(n−m)(m−|Δ|)/((n−|Δ|)(n−|Δ|−1))`,
    /// needs `|Δ| ≤ t−2`.
    FixAndMove,
    /// `|{x ∈ E : γ^x ∈ Δ}| = |E|/(n−1)`, needs `|Δ| = 1`.
    IntoDelta,
    /// `|{x ∈ E : γ^x = δ}| = |E|(m−2)/((n−1)(n−2))`, needs `|Δ| = 1`, `t ≥ 3`.
    Transport,
}

impl Clause {
    pub const ALL: [Clause; 5] = [
        Clause::Fixers,
        Clause::Movers,
        Clause::FixAndMove,
        Clause::IntoDelta,
        Clause::Transport,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Clause::Fixers => "fixers",
            Clause::Movers => "movers",
            Clause::FixAndMove => "fix-and-move",
            Clause::IntoDelta => "into-delta",
            Clause::Transport => "transport",
        }
    }

    fn uses_pair(&self) -> bool {
        matches!(self, Clause::FixAndMove | Clause::Transport)
    }

    /// Why the clause does not apply for `|Δ| = d` in a `t`-transitive group.
    pub fn inapplicable_reason(&self, d: usize, t: usize) -> Option<String> {
        if t < 2 {
            return Some(format!("requires t ≥ 2, group has t = {t}"));
        }
        match self {
            Clause::Fixers | Clause::Movers if d + 1 > t => {
                Some(format!("requires |Δ| ≤ t−1, have |Δ| = {d}, t = {t}"))
            }
            Clause::FixAndMove if d + 2 > t => {
                Some(format!("requires |Δ| ≤ t−2, have |Δ| = {d}, t = {t}"))
            }
            Clause::IntoDelta if d != 1 => Some(format!("requires |Δ| = 1, have {d}")),
            Clause::Transport if d != 1 || t < 3 => Some(format!(
                "requires |Δ| = 1 and t ≥ 3, have |Δ| = {d}, t = {t}"
            )),
            _ => None,
        }
    }

    /// Exact predicted count for an orbit of size `e`.
    pub fn formula(&self, e: usize, n: usize, m: usize, d: usize) -> super::Rational {
        let e = e as i64;
        let (n, m, d) = (n as i64, m as i64, d as i64);
        match self {
            Clause::Fixers => ratio(e * (n - m), n - d),
            Clause::Movers => ratio(e * (m - d), n - d),
            Clause::FixAndMove => ratio(e * (n - m) * (m - d), (n - d) * (n - d - 1)),
            Clause::IntoDelta => ratio(e, n - 1),
            Clause::Transport => ratio(e * (m - 2), (n - 1) * (n - 2)),
        }
    }

    fn count(&self, orbit: &ConjugateOrbit, gamma: Point, delta: Option<Point>) -> usize {
        let set = orbit.fixed();
        orbit
            .elements()
            .iter()
            .filter(|x| match self {
                Clause::Fixers => x.fixes(gamma),
                Clause::Movers => !x.fixes(gamma),
                Clause::FixAndMove => x.fixes(gamma) && !x.fixes(delta.unwrap()),
                Clause::IntoDelta => set.contains(x.image(gamma)),
                Clause::Transport => x.image(gamma) == delta.unwrap(),
            })
            .count()
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug)]
pub struct OrbitCountReport {
    pub orbit_size: usize,
    pub checks: Vec<CountCheck>,
    pub inapplicable: Vec<(Clause, String)>,
}

/// Builds `E` over `G₍Δ₎` and compares brute-force counts with the exact
/// formulas, for every applicable clause. `singles` feed the one-point
/// clauses, `pairs` the two-point ones.
pub fn check_orbit_counts(
    handle: &GroupHandle,
    u: &Permutation,
    delta: &PointSet,
    singles: &[Point],
    pairs: &[(Point, Point)],
    orbit_cap: usize,
) -> Result<OrbitCountReport> {
    let n = handle.degree();
    if u.degree() != n {
        return Err(Error::DegreeMismatch {
            left: n,
            right: u.degree(),
        });
    }
    if !handle.contains(u)? {
        return Err(Error::Precondition(format!("{u} is not in the group")));
    }
    if u.is_identity() {
        return Err(Error::IdentityNotAllowed);
    }
    if !delta.is_subset(&u.support()) {
        return Err(Error::Precondition(format!(
            "Δ = {delta} is not inside supp(u)"
        )));
    }
    for &g in singles
        .iter()
        .chain(pairs.iter().flat_map(|p| [&p.0, &p.1]))
    {
        if g >= n {
            return Err(Error::PointOutOfRange {
                point: g,
                degree: n,
            });
        }
        if delta.contains(g) {
            return Err(Error::Precondition(format!(
                "sample point {} lies in Δ",
                g + 1
            )));
        }
    }
    if let Some(&(g, _)) = pairs.iter().find(|(g, d)| g == d) {
        return Err(Error::Precondition(format!(
            "sample pair repeats {}",
            g + 1
        )));
    }

    let t = handle.transitivity_degree();
    let m = u.support_size();
    let d = delta.len();
    let mut inapplicable = Vec::new();
    let active: Vec<Clause> = Clause::ALL
        .into_iter()
        .filter(|c| match c.inapplicable_reason(d, t) {
            Some(reason) => {
                inapplicable.push((*c, reason));
                false
            }
            None => true,
        })
        .collect();
    if active.is_empty() {
        return Ok(OrbitCountReport {
            orbit_size: 0,
            checks: Vec::new(),
            inapplicable,
        });
    }

    let stab = handle.pointwise_stabilizer(delta)?;
    let orbit = conjugate_orbit(&stab, u, delta, orbit_cap)?;
    let e = orbit.len();
    let mut checks = Vec::new();
    for clause in active {
        let samples = if clause.uses_pair() {
            pairs.len()
        } else {
            singles.len()
        };
        if samples == 0 {
            continue;
        }
        let formula = clause.formula(e, n, m, d);
        if clause.uses_pair() {
            for &(g, dl) in pairs {
                checks.push(CountCheck::eq(
                    format!("{clause} γ={} δ={}", g + 1, dl + 1),
                    clause.count(&orbit, g, Some(dl)),
                    formula.clone(),
                ));
            }
        } else {
            for &g in singles {
                checks.push(CountCheck::eq(
                    format!("{clause} γ={}", g + 1),
                    clause.count(&orbit, g, None),
                    formula.clone(),
                ));
            }
        }
    }
    Ok(OrbitCountReport {
        orbit_size: e,
        checks,
        inapplicable,
    })
}

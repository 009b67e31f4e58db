//! Seeded property suites over random group elements.
//!
//! Samples are drawn sequentially from one seeded generator, evaluated in
//! parallel on `jobs` workers, and returned sorted by label, so a report
//! depends only on the group, the sample count and the seed.

use std::collections::{BTreeMap, HashSet};

use rand::seq::{IteratorRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::check::{int, CountCheck};
use super::counting::{
    act_on_pair, act_on_point, check_orbit_counts, check_product_action, distinct_pairs,
    ActionDomain, Clause,
};
use super::laws::{check_commutator_laws, check_two_set_bound, maximal_phi_psi};
use crate::error::{Error, Result};
use crate::group::{GroupHandle, DEFAULT_ORBIT_CAP};
use crate::perm::{Permutation, Point, PointSet};

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub samples: usize,
    pub seed: u64,
    pub jobs: usize,
    pub orbit_cap: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            samples: 1000,
            seed: 0,
            jobs: 1,
            orbit_cap: DEFAULT_ORBIT_CAP,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: String,
    pub applicable: bool,
    pub checks: Vec<CountCheck>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidParameter(format!("cannot start {jobs} workers: {e}")))
}

fn width(samples: usize) -> usize {
    samples.saturating_sub(1).to_string().len()
}

/// Commutator support laws and the two-set bound (with the largest
/// admissible `Φ`, `Ψ`) on random pairs. One check per law counts the
/// failing pairs.
pub fn laws_suite(handle: &GroupHandle, opts: &SuiteOptions) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let chain = handle.chain();
    let pairs: Vec<(Permutation, Permutation)> = (0..opts.samples)
        .map(|_| {
            (
                chain.random_element(&mut rng),
                chain.random_element(&mut rng),
            )
        })
        .collect();

    let outcomes: Vec<Result<(Vec<bool>, bool)>> = pool(opts.jobs)?.install(|| {
        pairs
            .par_iter()
            .map(|(u, v)| {
                let laws = check_commutator_laws(u, v)?;
                let (phi, psi) = maximal_phi_psi(u, v);
                let mut passes: Vec<bool> = laws.checks.iter().map(|c| c.pass).collect();
                passes.push(check_two_set_bound(u, v, &phi, &psi)?.pass);
                Ok((passes, laws.forward_image_form_holds))
            })
            .collect()
    });

    let names = [
        "supp([u,v]) ⊆ Δ ∪ Δ^(u⁻¹) ∪ Δ^(v⁻¹)",
        "|supp([u,v])| ≤ 3|Δ| − |Δ ∩ Δ^u| − |Δ ∩ Δ^v|",
        "supp([u,v]) ⊆ Δ ∪ {α ∈ fix(u) : α^v ∈ Δ} ∪ {α ∈ fix(v) : α^u ∈ Δ}",
        "|supp([u,v])| ≤ 2|supp(u)| − |Φ| − |Ψ|",
    ];
    let mut failures = [0usize; 4];
    let mut first_failure: [Option<usize>; 4] = [None; 4];
    let mut forward = 0;
    for (i, outcome) in outcomes.into_iter().enumerate() {
        let (passes, fwd) = outcome?;
        forward += usize::from(fwd);
        for (k, ok) in passes.into_iter().enumerate() {
            if !ok {
                failures[k] += 1;
                first_failure[k].get_or_insert(i);
            }
        }
    }
    let mut checks: Vec<CountCheck> = names
        .iter()
        .zip(failures)
        .map(|(name, f)| CountCheck::eq(format!("{name}: failing pairs"), f, int(0)))
        .collect();
    checks.sort_by(|a, b| a.label.cmp(&b.label));
    let mut notes = vec![format!(
        "forward-image containment supp([u,v]) ⊆ Δ ∪ Δ^u ∪ Δ^v held in {forward} of {} pairs",
        opts.samples
    )];
    for (name, first) in names.iter().zip(first_failure) {
        if let Some(i) = first {
            let (u, v) = &pairs[i];
            notes.push(format!("{name} first fails at u = {u}, v = {v}"));
        }
    }
    Ok(SuiteReport {
        name: "laws".into(),
        applicable: true,
        checks,
        notes,
    })
}

struct CountSample {
    u: Permutation,
    delta: PointSet,
    gamma: Point,
    pair: Option<(Point, Point)>,
}

/// Orbit counting identities on random `(u, Δ, γ, δ)`, plus double
/// counting between the actions on points and on ordered pairs.
pub fn counts_suite(handle: &GroupHandle, opts: &SuiteOptions) -> Result<SuiteReport> {
    let n = handle.degree();
    let t = handle.transitivity_degree();
    if t < 2 {
        let notes = Clause::ALL
            .iter()
            .map(|c| format!("{c}: inapplicable, requires t ≥ 2 (group has t = {t})"))
            .collect();
        return Ok(SuiteReport {
            name: "counts".into(),
            applicable: false,
            checks: Vec::new(),
            notes,
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let chain = handle.chain();
    let mut samples = Vec::with_capacity(opts.samples);
    for _ in 0..opts.samples {
        let u = loop {
            let g = chain.random_element(&mut rng);
            if !g.is_identity() {
                break g;
            }
        };
        let supp = u.support().to_vec();
        let d = rng.gen_range(0..=supp.len().min(t - 1));
        let delta = PointSet::from_points(n, supp.choose_multiple(&mut rng, d).copied())?;
        let rest = delta.complement().to_vec();
        let gamma = *rest.choose(&mut rng).expect("|Δ| < n");
        let pair = if rest.len() >= 2 {
            let two: Vec<Point> = rest.iter().copied().choose_multiple(&mut rng, 2);
            let (a, b) = if rng.gen_bool(0.5) {
                (two[0], two[1])
            } else {
                (two[1], two[0])
            };
            Some((a, b))
        } else {
            None
        };
        samples.push(CountSample {
            u,
            delta,
            gamma,
            pair,
        });
    }

    let w = width(opts.samples);
    let reports: Vec<Result<(Vec<CountCheck>, Vec<Clause>)>> = pool(opts.jobs)?.install(|| {
        samples
            .par_iter()
            .enumerate()
            .map(|(i, s)| {
                let pairs: Vec<(Point, Point)> = s.pair.into_iter().collect();
                let report =
                    check_orbit_counts(handle, &s.u, &s.delta, &[s.gamma], &pairs, opts.orbit_cap)?;
                let checks = report
                    .checks
                    .into_iter()
                    .map(|mut c| {
                        c.label = format!("sample {i:0w$} |Δ|={}: {}", s.delta.len(), c.label);
                        c
                    })
                    .collect();
                Ok((
                    checks,
                    report.inapplicable.into_iter().map(|(c, _)| c).collect(),
                ))
            })
            .collect()
    });

    let mut checks = Vec::new();
    let mut skipped: BTreeMap<Clause, usize> = BTreeMap::new();
    for r in reports {
        let (c, inapplicable) = r?;
        checks.extend(c);
        for clause in inapplicable {
            *skipped.entry(clause).or_default() += 1;
        }
    }
    checks.extend(product_action_checks(handle)?);
    checks.sort_by(|a, b| a.label.cmp(&b.label));

    let notes = skipped
        .into_iter()
        .map(|(c, k)| format!("{c}: inapplicable in {k} of {} samples", opts.samples))
        .collect();
    Ok(SuiteReport {
        name: "counts".into(),
        applicable: true,
        checks,
        notes,
    })
}

/// Points against ordered pairs of distinct points, under two invariant
/// relations: "is the first coordinate" and "is not in the pair".
fn product_action_checks(handle: &GroupHandle) -> Result<Vec<CountCheck>> {
    let n = handle.degree();
    let gens = handle.generators().generators();
    let points = ActionDomain {
        points: (0..n).collect::<Vec<Point>>(),
        act: &act_on_point,
    };
    let pairs = ActionDomain {
        points: distinct_pairs(&PointSet::empty(n)),
        act: &act_on_pair,
    };
    let first: HashSet<(Point, (Point, Point))> =
        pairs.points.iter().map(|&(a, b)| (a, (a, b))).collect();
    let outside: HashSet<(Point, (Point, Point))> = pairs
        .points
        .iter()
        .flat_map(|&(a, b)| {
            (0..n)
                .filter(move |&g| g != a && g != b)
                .map(move |g| (g, (a, b)))
        })
        .collect();
    let mut checks = Vec::new();
    for (name, rel) in [("first coordinate", first), ("outside the pair", outside)] {
        for mut c in check_product_action(gens, &points, &pairs, &rel)? {
            c.label = format!("product action, {name}: {}", c.label);
            checks.push(c);
        }
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin;

    fn handle(name: &str) -> GroupHandle {
        GroupHandle::new(builtin(name).unwrap()).unwrap()
    }

    #[test]
    fn laws_pass_and_are_deterministic() {
        let h = handle("S6");
        let opts = SuiteOptions {
            samples: 300,
            seed: 3,
            ..SuiteOptions::default()
        };
        let a = laws_suite(&h, &opts).unwrap();
        assert!(a.all_pass());
        let b = laws_suite(&h, &SuiteOptions { jobs: 4, ..opts }).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn counts_pass_and_are_deterministic() {
        let h = handle("PGL(2,5)");
        let opts = SuiteOptions {
            samples: 200,
            seed: 11,
            ..SuiteOptions::default()
        };
        let a = counts_suite(&h, &opts).unwrap();
        assert!(a.applicable);
        assert!(
            a.all_pass(),
            "{:?}",
            a.checks.iter().filter(|c| !c.pass).collect::<Vec<_>>()
        );
        let b = counts_suite(&h, &SuiteOptions { jobs: 3, ..opts }).unwrap();
        assert_eq!(a, b);
        let mut sorted = a.checks.clone();
        sorted.sort_by(|x, y| x.label.cmp(&y.label));
        assert_eq!(sorted, a.checks);
    }

    #[test]
    fn cyclic_counts_inapplicable() {
        let r = counts_suite(&handle("C6"), &SuiteOptions::default()).unwrap();
        assert!(!r.applicable);
        assert!(r.checks.is_empty());
        assert_eq!(r.notes.len(), 5);
    }
}

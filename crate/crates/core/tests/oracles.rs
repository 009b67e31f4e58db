//! Cross-checks of the group engine and the counting identities against
//! brute-force computations that share no code with the library's chain
//! machinery: groups are closed by breadth-first multiplication, tuple
//! orbits are enumerated directly, and formulas are re-derived here.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigUint;
use num_rational::BigRational;

use bochert::catalog::builtin;
use bochert::mindeg::{min_degree, MethodChoice};
use bochert::perm::parse_cycles;
use bochert::verify::{check_commutator_laws, check_orbit_counts, check_two_set_bound, CountCheck};
use bochert::{GroupHandle, Permutation, PointSet};

/// All elements, by closing the generators under right multiplication.
fn closure(n: usize, gens: &[Permutation]) -> Vec<Vec<usize>> {
    let id: Vec<usize> = (0..n).collect();
    let gens: Vec<Vec<usize>> = gens
        .iter()
        .map(|g| (0..n).map(|i| g.image(i)).collect())
        .collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y: Vec<usize> = x.iter().map(|&i| g[i]).collect();
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen.into_iter().collect()
}

fn moved(x: &[usize]) -> usize {
    x.iter().enumerate().filter(|(i, &y)| *i != y).count()
}

/// Largest `k` for which the orbit of `(0, …, k−1)` has `n!/(n−k)!` tuples.
fn tuple_transitivity(n: usize, gens: &[Permutation]) -> usize {
    let mut best = 0;
    for k in 1..=n {
        let start: Vec<usize> = (0..k).collect();
        let mut seen: HashSet<Vec<usize>> = HashSet::from([start.clone()]);
        let mut queue = vec![start];
        while let Some(t) = queue.pop() {
            for g in gens {
                let u: Vec<usize> = t.iter().map(|&p| g.image(p)).collect();
                if seen.insert(u.clone()) {
                    queue.push(u);
                }
            }
        }
        let full: usize = (n - k + 1..=n).product();
        if seen.len() != full {
            break;
        }
        best = k;
    }
    best
}

fn handle(name: &str) -> GroupHandle {
    GroupHandle::new(builtin(name).unwrap()).unwrap()
}

const SMALL: &[&str] = &[
    "S3", "S4", "S5", "S6", "A4", "A5", "A6", "C5", "C6", "D4", "D5", "D6", "PSL(2,5)", "PGL(2,5)",
    "PSL(2,7)", "PGL(2,7)",
];

#[test]
fn orders_and_min_degree_match_closure() {
    for &name in SMALL.iter().chain(&["M11"]) {
        let h = handle(name);
        let n = h.degree();
        let elements = closure(n, h.generators().generators());
        assert_eq!(h.order(), &BigUint::from(elements.len()), "{name}");
        let m = elements
            .iter()
            .map(|x| moved(x))
            .filter(|&k| k > 0)
            .min()
            .unwrap();
        for method in [MethodChoice::Exhaustive, MethodChoice::Backtrack] {
            assert_eq!(
                min_degree(&h, method, 1 << 20, 1).unwrap().m,
                m,
                "{name} {method:?}"
            );
        }
    }
}

#[test]
fn transitivity_matches_tuple_orbits() {
    for &name in SMALL.iter().chain(&["M11", "M12"]) {
        let h = handle(name);
        let oracle = tuple_transitivity(h.degree(), h.generators().generators());
        assert_eq!(h.transitivity_degree(), oracle, "{name}");
    }
}

#[test]
fn membership_matches_closure() {
    let h = handle("PSL(2,7)");
    let inside: HashSet<Vec<usize>> = closure(8, h.generators().generators())
        .into_iter()
        .collect();
    let sym = closure(8, handle("S8").generators().generators());
    for x in sym.iter().step_by(37) {
        let p = Permutation::from_images(x.iter().copied()).unwrap();
        assert_eq!(h.contains(&p).unwrap(), inside.contains(x));
    }
}

#[test]
fn hand_composed_commutator() {
    let u = parse_cycles("(1,2,3)", 5).unwrap();
    let v = parse_cycles("(3,4,5)", 5).unwrap();
    // image chase of u v u⁻¹ v⁻¹, applied left to right
    let u_inv = [2, 0, 1, 3, 4];
    let v_inv = [0, 1, 4, 2, 3];
    let chased: Vec<usize> = (0..5).map(|a| v_inv[u_inv[v.image(u.image(a))]]).collect();
    let c = u.commutator_with(&v);
    assert_eq!((0..5).map(|a| c.image(a)).collect::<Vec<_>>(), chased);
    assert_eq!(c, parse_cycles("(2,3,5)", 5).unwrap());

    let laws = check_commutator_laws(&u, &v).unwrap();
    assert!(laws.checks.iter().all(|c| c.pass));
    let phi = PointSet::from_points(5, [0]).unwrap();
    let psi = PointSet::from_points(5, [0, 1]).unwrap();
    let bound = check_two_set_bound(&u, &v, &phi, &psi).unwrap();
    assert!(bound.pass);
    assert_eq!(bound.observed, 3.into());
}

/// Takes the least element of `G` moving `k` points, with `Δ` its first `d`
/// moved points, recomputes `E` from the closure of `G` and compares every
/// reported count.
fn brute_force_counts(name: &str, k: usize, d: usize) {
    let h = handle(name);
    let n = h.degree();
    let t = h.transitivity_degree();
    let mut elements = closure(n, h.generators().generators());
    elements.sort();
    let uu = elements.iter().find(|x| moved(x) == k).unwrap().clone();
    let u = Permutation::from_images(uu.iter().copied()).unwrap();
    let delta = u.support().to_vec()[..d].to_vec();
    let delta_set = PointSet::from_points(n, delta.iter().copied()).unwrap();
    let stab: Vec<Vec<usize>> = elements
        .into_iter()
        .filter(|g| delta_set.iter().all(|d| g[d] == d))
        .collect();
    // g⁻¹ u g sends g(a) to g(u(a))
    let e: HashSet<Vec<usize>> = stab
        .iter()
        .map(|g| {
            let mut x = vec![0; n];
            for a in 0..n {
                x[g[a]] = g[uu[a]];
            }
            x
        })
        .collect();
    let rest: Vec<usize> = (0..n).filter(|p| !delta_set.contains(*p)).collect();
    let pairs: Vec<(usize, usize)> = rest
        .iter()
        .flat_map(|&a| rest.iter().filter(move |&&b| b != a).map(move |&b| (a, b)))
        .collect();
    let report = check_orbit_counts(&h, &u, &delta_set, &rest, &pairs, 1 << 20).unwrap();
    assert_eq!(report.orbit_size, e.len());

    let (ne, nn, m, d) = (
        e.len() as i64,
        n as i64,
        u.support_size() as i64,
        delta.len() as i64,
    );
    let q = |a: i64, b: i64| BigRational::new(a.into(), b.into());
    let lookup = |label: String| -> &CountCheck {
        report
            .checks
            .iter()
            .find(|c| c.label == label)
            .unwrap_or_else(|| panic!("{name}: missing {label}"))
    };
    let mut compared = 0;
    if d < t as i64 {
        for &g in &rest {
            let fixers = e.iter().filter(|x| x[g] == g).count();
            let c = lookup(format!("fixers γ={}", g + 1));
            assert_eq!(c.observed, fixers.into());
            assert_eq!(c.formula, q(ne * (nn - m), nn - d));
            assert!(c.pass);
            compared += 1;
        }
    }
    if d + 2 <= t as i64 {
        for &(g, dl) in &pairs {
            let k = e.iter().filter(|x| x[g] == g && x[dl] != dl).count();
            let c = lookup(format!("fix-and-move γ={} δ={}", g + 1, dl + 1));
            assert_eq!(c.observed, k.into());
            assert_eq!(
                c.formula,
                q(ne * (nn - m) * (m - d), (nn - d) * (nn - d - 1))
            );
            assert!(c.pass);
            compared += 1;
        }
    }
    if d == 1 && t >= 3 {
        for &(g, dl) in &pairs {
            let k = e.iter().filter(|x| x[g] == dl).count();
            let c = lookup(format!("transport γ={} δ={}", g + 1, dl + 1));
            assert_eq!(c.observed, k.into());
            assert_eq!(c.formula, q(ne * (m - 2), (nn - 1) * (nn - 2)));
            compared += 1;
        }
    }
    assert!(compared > 0, "{name}: nothing compared");
    assert!(report.checks.iter().all(|c| c.pass), "{name}");
}

#[test]
fn orbit_counts_match_brute_force() {
    brute_force_counts("S4", 3, 1);
    brute_force_counts("S5", 4, 0);
    brute_force_counts("A6", 5, 2);
    brute_force_counts("PGL(2,7)", 6, 1);
    brute_force_counts("M11", 8, 2);
    brute_force_counts("M11", 8, 1);
}

#[test]
fn sym4_published_counts() {
    let h = handle("S4");
    let u = parse_cycles("(1,2,3)", 4).unwrap();
    let delta = PointSet::from_points(4, [0]).unwrap();
    let r = check_orbit_counts(&h, &u, &delta, &[3], &[(1, 2), (3, 1)], 100).unwrap();
    let get = |l: &str| {
        r.checks
            .iter()
            .find(|c| c.label == l)
            .unwrap()
            .observed
            .clone()
    };
    assert_eq!(r.orbit_size, 6);
    assert_eq!(get("fixers γ=4"), 2.into());
    assert_eq!(get("transport γ=2 δ=3"), 1.into());
    assert_eq!(get("fix-and-move γ=4 δ=2"), 2.into());
}

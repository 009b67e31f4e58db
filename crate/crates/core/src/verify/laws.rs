//! Support laws for commutators `[u,v] = u v u⁻¹ v⁻¹` of arbitrary
//! permutations, with `Δ = supp(u) ∩ supp(v)`.

use super::check::{int, CountCheck};
use crate::error::{Error, Result};
use crate::perm::{Permutation, PointSet};

#[derive(Clone, Debug)]
pub struct CommutatorLaws {
    pub checks: Vec<CountCheck>,
    /// Whether `supp([u,v]) ⊆ Δ ∪ Δ^u ∪ Δ^v` with forward images. Under
    /// left-to-right composition this form can fail; it is reported, not
    /// checked.
    pub forward_image_form_holds: bool,
}

pub fn check_commutator_laws(u: &Permutation, v: &Permutation) -> Result<CommutatorLaws> {
    if u.degree() != v.degree() {
        return Err(Error::DegreeMismatch {
            left: u.degree(),
            right: v.degree(),
        });
    }
    let c = u.commutator_with(v);
    let supp_c = c.support();
    let supp_u = u.support();
    let supp_v = v.support();
    let delta = supp_u.intersection(&supp_v);

    let inverse_images = delta.union(&delta.preimage(u)).union(&delta.preimage(v));
    let containment = CountCheck::subset(
        "supp([u,v]) ⊆ Δ ∪ Δ^(u⁻¹) ∪ Δ^(v⁻¹)",
        &supp_c,
        &inverse_images,
    );

    let delta_u = delta.image(u);
    let delta_v = delta.image(v);
    let bound =
        3 * delta.len() - delta.intersection_len(&delta_u) - delta.intersection_len(&delta_v);
    let cardinality = CountCheck::le(
        "|supp([u,v])| ≤ 3|Δ| − |Δ ∩ Δ^u| − |Δ ∩ Δ^v|",
        supp_c.len(),
        int(bound),
    );

    // {α ∈ fix(u) : α^v ∈ Δ} = fix(u) ∩ Δ^(v⁻¹)
    let fix_side = delta
        .union(&supp_u.complement().intersection(&delta.preimage(v)))
        .union(&supp_v.complement().intersection(&delta.preimage(u)));
    let fixed_point = CountCheck::subset(
        "supp([u,v]) ⊆ Δ ∪ {α ∈ fix(u) : α^v ∈ Δ} ∪ {α ∈ fix(v) : α^u ∈ Δ}",
        &supp_c,
        &fix_side,
    );

    let forward = delta.union(&delta_u).union(&delta_v);
    Ok(CommutatorLaws {
        checks: vec![containment, cardinality, fixed_point],
        forward_image_form_holds: supp_c.is_subset(&forward),
    })
}

/// `|supp([u,v])| ≤ 2|supp(u)| − |Φ| − |Ψ|` for
/// `Φ ⊆ fix([u,v]) ∩ supp(u)` and `Ψ ⊆ supp(v u v⁻¹) ∩ supp(u)`.
///
/// A set violating its hypothesis is an error, not a failed check.
pub fn check_two_set_bound(
    u: &Permutation,
    v: &Permutation,
    phi: &PointSet,
    psi: &PointSet,
) -> Result<CountCheck> {
    if u.degree() != v.degree() {
        return Err(Error::DegreeMismatch {
            left: u.degree(),
            right: v.degree(),
        });
    }
    let (phi_ok, psi_ok) = two_set_hypotheses(u, v, phi, psi);
    if !phi_ok {
        return Err(Error::Precondition(format!(
            "Φ = {phi} is not contained in fix([u,v]) ∩ supp(u)"
        )));
    }
    if !psi_ok {
        return Err(Error::Precondition(format!(
            "Ψ = {psi} is not contained in supp(v u v⁻¹) ∩ supp(u)"
        )));
    }
    let c = u.commutator_with(v);
    let bound = 2 * u.support_size() as i64 - phi.len() as i64 - psi.len() as i64;
    Ok(CountCheck::le(
        "|supp([u,v])| ≤ 2|supp(u)| − |Φ| − |Ψ|",
        c.support_size(),
        int(bound),
    ))
}

/// Whether `Φ` and `Ψ` satisfy their containment hypotheses.
pub fn two_set_hypotheses(
    u: &Permutation,
    v: &Permutation,
    phi: &PointSet,
    psi: &PointSet,
) -> (bool, bool) {
    let supp_u = u.support();
    let c = u.commutator_with(v);
    let vuv = v.then(u).then(&v.inverse());
    let phi_ok = phi.is_subset(&c.fixed_points().intersection(&supp_u));
    let psi_ok = psi.is_subset(&vuv.support().intersection(&supp_u));
    (phi_ok, psi_ok)
}

/// The largest admissible `Φ` and `Ψ`.
pub fn maximal_phi_psi(u: &Permutation, v: &Permutation) -> (PointSet, PointSet) {
    let supp_u = u.support();
    let c = u.commutator_with(v);
    let vuv = v.then(u).then(&v.inverse());
    (
        c.fixed_points().intersection(&supp_u),
        vuv.support().intersection(&supp_u),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_cycles;

    fn p(s: &str) -> Permutation {
        parse_cycles(s, 5).unwrap()
    }

    fn set(points: &[usize]) -> PointSet {
        PointSet::from_points(5, points.iter().map(|x| x - 1)).unwrap()
    }

    #[test]
    fn worked_example() {
        let laws = check_commutator_laws(&p("(1,2,3)"), &p("(3,4,5)")).unwrap();
        assert!(laws.checks.iter().all(|c| c.pass));
        // supp = {2,3,5}, bound 3·1 − 0 − 0
        assert_eq!(laws.checks[1].observed, 3.into());
        assert_eq!(laws.checks[1].formula, int(3));
        // forward images give {3,1,4}, which misses 2 and 5
        assert!(!laws.forward_image_form_holds);
    }

    #[test]
    fn degenerate_pairs() {
        let laws = check_commutator_laws(&p("(1,2)"), &p("(3,4,5)")).unwrap();
        assert!(laws.checks.iter().all(|c| c.pass));
        assert_eq!(laws.checks[1].observed, 0.into());

        let u = p("(1,2,3)(4,5)");
        let laws = check_commutator_laws(&u, &u).unwrap();
        assert!(laws.checks.iter().all(|c| c.pass));
        // 0 ≤ 3m − 2m = m
        assert_eq!(laws.checks[1].formula, int(5));
    }

    #[test]
    fn two_set_example() {
        let u = p("(1,2,3)");
        let v = p("(3,4,5)");
        let c = check_two_set_bound(&u, &v, &set(&[1]), &set(&[1, 2])).unwrap();
        assert!(c.pass);
        assert_eq!(c.observed, 3.into());
        assert_eq!(c.formula, int(3));

        let c = check_two_set_bound(&u, &v, &set(&[]), &set(&[])).unwrap();
        assert_eq!(c.formula, int(6));

        assert!(matches!(
            check_two_set_bound(&u, &v, &set(&[2]), &set(&[])),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            check_two_set_bound(&u, &v, &set(&[]), &set(&[3])),
            Err(Error::Precondition(_))
        ));
        let (phi, psi) = maximal_phi_psi(&u, &v);
        assert_eq!(phi, set(&[1]));
        assert_eq!(psi, set(&[1, 2]));
    }
}

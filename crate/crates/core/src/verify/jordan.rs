//! Replays the argument that a `t`-transitive group with minimal degree
//! `m > 3` has `m ≥ 2t − 2`: pick `u` of prime order `p` with support `m`,
//! write `t − 1 = Np + r`, and build `v` so that `[u,v]` is a nonidentity
//! element whose support is small by the two-set bound.

use super::check::{int, CountCheck};
use super::laws::{check_two_set_bound, two_set_hypotheses};
use super::{Choices, TraceOptions};
use crate::error::Result;
use crate::group::GroupHandle;
use crate::perm::{prime_order_witness, Permutation, Point, PointSet};

#[derive(Clone, Debug)]
pub struct JordanTrace {
    pub group: String,
    pub n: usize,
    pub t: usize,
    pub m: usize,
    /// Set when `t ≥ 2` and `m > 3` do not both hold.
    pub inapplicable: Option<String>,
    /// Set when the prescribed `v` cannot be built in this group.
    pub degenerate: Option<String>,
    pub u: Option<Permutation>,
    pub prime: u64,
    pub quotient: usize,
    pub remainder: usize,
    /// 1 when `r = 0`, else 2.
    pub case: u8,
    pub phi: Option<PointSet>,
    pub psi: Option<PointSet>,
    pub alpha: Option<Point>,
    /// Required image of `α` under `v`.
    pub target: Option<Point>,
    pub v: Option<Permutation>,
    pub checks: Vec<CountCheck>,
    pub conclusion_holds: Option<bool>,
}

impl JordanTrace {
    pub fn applicable(&self) -> bool {
        self.inapplicable.is_none()
    }
}

pub fn check_jordan(handle: &GroupHandle) -> Result<JordanTrace> {
    check_jordan_with(handle, &TraceOptions::default())
}

pub fn check_jordan_with(handle: &GroupHandle, opts: &TraceOptions) -> Result<JordanTrace> {
    let n = handle.degree();
    let t = handle.transitivity_degree();
    let base = opts.min_degree(handle)?;
    let m = base.support_size();
    let mut trace = JordanTrace {
        group: handle.label().to_string(),
        n,
        t,
        m,
        inapplicable: None,
        degenerate: None,
        u: None,
        prime: 0,
        quotient: 0,
        remainder: 0,
        case: 0,
        phi: None,
        psi: None,
        alpha: None,
        target: None,
        v: None,
        checks: Vec::new(),
        conclusion_holds: None,
    };
    if t < 2 || m <= 3 {
        trace.inapplicable = Some(format!("needs t ≥ 2 and m > 3, have t = {t}, m = {m}"));
        return Ok(trace);
    }
    let mut choices = Choices::new(opts);
    let checks = &mut trace.checks;
    checks.push(CountCheck::ge("m > t", m, int(t + 1)));

    let u = choices.conjugate_in(handle, &prime_order_witness(&base)?);
    let p = u.order();
    checks.push(CountCheck::eq(
        "|supp(u)| = m after reduction to prime order",
        u.support_size(),
        int(m),
    ));
    let (nq, r) = ((t - 1) / p as usize, (t - 1) % p as usize);
    trace.prime = p;
    trace.quotient = nq;
    trace.remainder = r;
    trace.case = if r == 0 { 1 } else { 2 };

    let cycles = choices.ordered_cycles(&u);
    let mut phi = PointSet::empty(n);
    for cycle in cycles.iter().take(nq) {
        for &x in cycle {
            phi.insert(x);
        }
    }
    checks.push(CountCheck::eq("|Φ| = t − 1 − r", phi.len(), int(t - 1 - r)));
    checks.push(CountCheck::subset("Φ^u ⊆ Φ", &phi.image(&u), &phi));

    let rest = u.support().difference(&phi);
    let Some(alpha) = choices.pick(&rest) else {
        trace.degenerate = Some("supp(u) ∖ Φ is empty".into());
        return Ok(finish(trace));
    };
    trace.alpha = Some(alpha);
    trace.u = Some(u.clone());

    let phi_tuple = phi.to_vec();
    if r == 0 {
        let Some(beta) = choices.pick(&u.fixed_points()) else {
            trace.phi = Some(phi);
            trace.degenerate = Some("u has no fixed point".into());
            return Ok(finish(trace));
        };
        trace.target = Some(beta);
        let src: Vec<Point> = phi_tuple.iter().copied().chain([alpha]).collect();
        let dst: Vec<Point> = phi_tuple.iter().copied().chain([beta]).collect();
        let Some(v) = choices.transporter(handle, &src, &dst)? else {
            trace.phi = Some(phi);
            trace.degenerate = Some("no element fixes Φ and maps α into fix(u)".into());
            return Ok(finish(trace));
        };
        let c = u.commutator_with(&v);
        let checks = &mut trace.checks;
        checks.push(CountCheck::subset("Φ ⊆ fix(v)", &phi, &v.fixed_points()));
        checks.push(CountCheck::eq("α^v = β", v.image(alpha) + 1, int(beta + 1)));
        checks.push(CountCheck::ge(
            "|supp([u,v])| ≥ 1",
            c.support_size(),
            int(1),
        ));
        checks.push(CountCheck::ge(
            "|supp([u,v])| ≥ m",
            c.support_size(),
            int(m),
        ));
        checks.push(check_two_set_bound(&u, &v, &phi, &phi)?);
        trace.psi = Some(phi.clone());
        trace.phi = Some(phi);
        trace.v = Some(v);
        return Ok(finish(trace));
    }

    // α₋ₖ = α^(u^(−k)), k = 1..r
    let u_inv = u.inverse();
    let mut back = Vec::with_capacity(r);
    let mut x = alpha;
    for _ in 0..r {
        x = u_inv.image(x);
        back.push(x);
    }
    let back_set = PointSet::from_points(n, back.iter().copied())?;
    let mut psi = phi.union(&back_set);
    trace.checks.push(CountCheck::containment(
        "{α₋₁, …, α₋ᵣ} ∩ Φ = ∅",
        back_set.intersection_len(&phi),
        0,
        back_set.is_disjoint(&phi),
    ));
    let alpha_u = u.image(alpha);
    trace.target = Some(alpha_u);
    trace.phi = Some(phi.clone());
    trace.psi = Some(psi.clone());
    if psi.contains(alpha_u) {
        trace.degenerate = Some(format!(
            "α^u ∈ Ψ because r = p − 1 = {r}; no v can fix Ψ and send α to α^u"
        ));
        return Ok(finish(trace));
    }
    let psi_tuple = psi.to_vec();
    let src: Vec<Point> = psi_tuple.iter().copied().chain([alpha]).collect();
    let dst: Vec<Point> = psi_tuple.iter().copied().chain([alpha_u]).collect();
    let Some(v) = choices.transporter(handle, &src, &dst)? else {
        trace.degenerate = Some("no element fixes Ψ and maps α to α^u".into());
        return Ok(finish(trace));
    };
    let alpha_m1 = back[0];
    let c = u.commutator_with(&v);
    let mut phi2 = psi.clone();
    phi2.remove(alpha_m1);
    psi.insert(alpha);
    let checks = &mut trace.checks;
    checks.push(CountCheck::subset(
        "Ψ ⊆ fix(v)",
        &back_set.union(&phi),
        &v.fixed_points(),
    ));
    checks.push(CountCheck::eq(
        "α^v = α^u",
        v.image(alpha) + 1,
        int(alpha_u + 1),
    ));
    checks.push(CountCheck::containment(
        "α₋₁^(vu) ≠ α₋₁^(uv)",
        usize::from(v.then(&u).image(alpha_m1) == u.then(&v).image(alpha_m1)),
        0,
        v.then(&u).image(alpha_m1) != u.then(&v).image(alpha_m1),
    ));
    checks.push(CountCheck::ge(
        "|supp([u,v])| ≥ m",
        c.support_size(),
        int(m),
    ));
    let (phi_ok, psi_ok) = two_set_hypotheses(&u, &v, &phi2, &psi);
    let fix_c = c.fixed_points().intersection(&u.support());
    checks.push(CountCheck::containment(
        "Ψ ∖ {α₋₁} ⊆ fix([u,v]) ∩ supp(u)",
        phi2.len(),
        fix_c.len(),
        phi_ok,
    ));
    let conj = v
        .then(&u)
        .then(&v.inverse())
        .support()
        .intersection(&u.support());
    checks.push(CountCheck::containment(
        "Ψ ∪ {α} ⊆ supp(v u v⁻¹) ∩ supp(u)",
        psi.len(),
        conj.len(),
        psi_ok,
    ));
    if phi_ok && psi_ok {
        checks.push(check_two_set_bound(&u, &v, &phi2, &psi)?);
    }
    trace.v = Some(v);
    Ok(finish(trace))
}

fn finish(mut trace: JordanTrace) -> JordanTrace {
    let bound = 2 * trace.t - 2;
    trace
        .checks
        .push(CountCheck::ge("m ≥ 2t − 2", trace.m, int(bound)));
    trace.conclusion_holds = Some(trace.m >= bound);
    trace
}

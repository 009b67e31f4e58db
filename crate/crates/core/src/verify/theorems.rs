//! Traces of the double-counting arguments bounding the minimal degree `m`
//! of a `t`-transitive group of degree `n` from below:
//!
//! * [`Bound::Quarter`]: `t ≥ 2` gives `n ≤ 4m + 6/(m−3)`, so `m ≥ n/4` once `n ≥ 38`;
//! * [`Bound::Third`]: `t ≥ 3` gives `n ≤ 3m + 4/(m−3)`, so `m ≥ n/3` once `n ≥ 23`;
//! * [`Bound::Half`]: `t ≥ 4` gives `m ≥ 6` and `n − 3 ≤ 2m`.
//!
//! Each trace builds the concrete sets of the argument from a minimal-degree
//! witness `u` and checks every count and inequality along the way. All
//! counts are over a conjugate orbit `E` and `Δ_x = supp(x) ∩ supp(u)`.

use std::fmt;

use num_bigint::BigInt;

use super::check::{int, ratio, CountCheck, Rational};
use super::{Choices, TraceOptions};
use crate::error::Result;
use crate::group::{conjugate_orbit, GroupHandle};
use crate::perm::{prime_order_witness, Permutation, Point, PointSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bound {
    Quarter,
    Third,
    Half,
}

impl Bound {
    pub fn required_transitivity(&self) -> usize {
        match self {
            Bound::Quarter => 2,
            Bound::Third => 3,
            Bound::Half => 4,
        }
    }

    pub fn statement(&self) -> &'static str {
        match self {
            Bound::Quarter => "m ≥ n/4 for n ≥ 38",
            Bound::Third => "m ≥ n/3 for n ≥ 23",
            Bound::Half => "m ≥ 6 and n − 3 ≤ 2m",
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.statement())
    }
}

/// Sizes of the sets built by a trace: `E`, `F`, the pair sets `𝓔`, `𝓕`,
/// `𝓖`, `𝓗`, and `Λ`. Sets a trace does not use stay `None`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SetSizes {
    pub e: Option<usize>,
    pub f: Option<usize>,
    pub cal_e: Option<usize>,
    pub cal_f: Option<usize>,
    pub cal_g: Option<usize>,
    pub cal_h: Option<usize>,
    pub lambda: Option<usize>,
}

/// `M = m − 3`, `N = n − 3`, `N₀ = (3(M+1)² − M)/(2M)` and
/// `p(M) = M⁴ + 14M³ + 35M² + 30M + 9`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedQuantities {
    pub big_m: i64,
    pub big_n: i64,
    pub n0: Rational,
    pub p_of_m: BigInt,
}

#[derive(Clone, Debug)]
pub struct TraceReport {
    pub bound: Bound,
    pub group: String,
    pub n: usize,
    pub m: usize,
    pub t: usize,
    /// Set when the transitivity hypothesis fails; no checks are run.
    pub inapplicable: Option<String>,
    /// Set when identities are checked but the closing bound is not asserted.
    pub gated: Option<String>,
    /// Set when a construction step has no solution in this group.
    pub degenerate: Option<String>,
    pub u: Option<Permutation>,
    pub v: Option<Permutation>,
    pub h: Option<Permutation>,
    pub alpha: Option<Point>,
    pub beta: Option<Point>,
    pub delta_minus: Option<Point>,
    pub delta_plus: Option<Point>,
    pub sizes: SetSizes,
    pub derived: Option<DerivedQuantities>,
    pub checks: Vec<CountCheck>,
    pub notes: Vec<String>,
    pub conclusion_holds: Option<bool>,
}

impl TraceReport {
    /// Whether the closing bound was asserted.
    pub fn applicable(&self) -> bool {
        self.inapplicable.is_none() && self.gated.is_none() && self.degenerate.is_none()
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

pub fn trace_bound(handle: &GroupHandle, bound: Bound, opts: &TraceOptions) -> Result<TraceReport> {
    let n = handle.degree();
    let t = handle.transitivity_degree();
    let base = opts.min_degree(handle)?;
    let m = base.support_size();
    let mut report = TraceReport {
        bound,
        group: handle.label().to_string(),
        n,
        m,
        t,
        inapplicable: None,
        gated: None,
        degenerate: None,
        u: None,
        v: None,
        h: None,
        alpha: None,
        beta: None,
        delta_minus: None,
        delta_plus: None,
        sizes: SetSizes::default(),
        derived: None,
        checks: Vec::new(),
        notes: Vec::new(),
        conclusion_holds: None,
    };
    let needed = bound.required_transitivity();
    if t < needed {
        report.inapplicable = Some(format!("requires t ≥ {needed}, group has t = {t}"));
        return Ok(report);
    }
    let alt = handle.contains_alternating();
    if bound == Bound::Half && (alt || m <= 3) {
        report.inapplicable = Some(if alt {
            "group contains Alt(Ω)".into()
        } else {
            format!("requires m > 3, have m = {m}")
        });
        return Ok(report);
    }
    if alt {
        report.gated = Some("group contains Alt(Ω)".into());
    } else if m <= 3 {
        report.gated = Some(format!("requires m > 3, have m = {m}"));
    }

    let mut choices = Choices::new(opts);
    let u = choices.conjugate_in(handle, &prime_order_witness(&base)?);
    report.u = Some(u.clone());
    let ctx = Ctx {
        handle,
        u: &u,
        supp_u: u.support(),
        n: n as i64,
        m: m as i64,
        orbit_cap: opts.orbit_cap,
    };
    match bound {
        Bound::Quarter => quarter(&mut report, &ctx, &mut choices)?,
        Bound::Third => third(&mut report, &ctx, &mut choices)?,
        Bound::Half => half(&mut report, &ctx, &mut choices)?,
    }
    Ok(report)
}

struct Ctx<'a> {
    handle: &'a GroupHandle,
    u: &'a Permutation,
    supp_u: PointSet,
    n: i64,
    m: i64,
    orbit_cap: usize,
}

impl Ctx<'_> {
    /// Conjugates of `v` under the pointwise stabilizer of `fixed`.
    fn orbit(&self, v: &Permutation, fixed: &[Point], delta: &[Point]) -> Result<Vec<Permutation>> {
        let n = self.handle.degree();
        let stab = self
            .handle
            .pointwise_stabilizer(&PointSet::from_points(n, fixed.iter().copied())?)?;
        let delta = PointSet::from_points(n, delta.iter().copied())?;
        Ok(conjugate_orbit(&stab, v, &delta, self.orbit_cap)?
            .elements()
            .to_vec())
    }

    fn overlap(&self, x: &Permutation) -> PointSet {
        x.support().intersection(&self.supp_u)
    }

    fn commutes(&self, x: &Permutation) -> bool {
        x.then(self.u) == self.u.then(x)
    }

    /// Whether `|supp([u,x])| ≤ 3|Δ_x| − |Δ_x ∩ Δ_x^u| − |Δ_x ∩ Δ_x^x|`.
    fn cardinality_bound_holds(&self, x: &Permutation) -> bool {
        let d = self.overlap(x);
        let bound =
            3 * d.len() - d.intersection_len(&d.image(self.u)) - d.intersection_len(&d.image(x));
        self.u.commutator_with(x).support_size() <= bound
    }
}

fn count(e: &[Permutation], pred: impl Fn(&Permutation) -> bool) -> usize {
    e.iter().filter(|x| pred(x)).count()
}

fn one_based(p: Point) -> usize {
    p + 1
}

fn quarter(r: &mut TraceReport, ctx: &Ctx<'_>, choices: &mut Choices) -> Result<()> {
    let (n, m) = (ctx.n, ctx.m);
    let u = ctx.u;
    let alpha = choices.pick(&ctx.supp_u).expect("u is not the identity");
    let beta = u.image(alpha);
    r.alpha = Some(alpha);
    r.beta = Some(beta);

    let e = ctx.orbit(u, &[alpha], &[alpha])?;
    let f: Vec<Permutation> = e.iter().filter(|x| x.fixes(beta)).cloned().collect();
    let mut lambda = ctx.supp_u.clone();
    lambda.remove(alpha);
    lambda.remove(beta);
    let cal_f: usize = f.iter().map(|x| ctx.overlap(x).len()).sum();
    let (ei, fi) = (e.len() as i64, f.len() as i64);
    r.sizes = SetSizes {
        e: Some(e.len()),
        f: Some(f.len()),
        cal_f: Some(cal_f),
        lambda: Some(lambda.len()),
        ..SetSizes::default()
    };

    let checks = &mut r.checks;
    checks.push(CountCheck::eq(
        "|F| = |E|(n−m)/(n−1)",
        fi,
        ratio(ei * (n - m), n - 1),
    ));
    checks.push(CountCheck::eq(
        "|{x ∈ F : xu = ux}| = 0",
        count(&f, |x| ctx.commutes(x)),
        int(0),
    ));
    checks.push(CountCheck::eq(
        "|{x ∈ F : |supp([u,x])| > 3|Δ_x| − |Δ_x ∩ Δ_x^u| − |Δ_x ∩ Δ_x^x|}| = 0",
        count(&f, |x| !ctx.cardinality_bound_holds(x)),
        int(0),
    ));
    if !f.is_empty() {
        let min_comm = f
            .iter()
            .map(|x| u.commutator_with(x).support_size())
            .min()
            .unwrap();
        checks.push(CountCheck::ge(
            "min over F of |supp([u,x])| ≥ m",
            min_comm,
            int(m),
        ));
        let min_overlap = f.iter().map(|x| ctx.overlap(x).len()).min().unwrap();
        checks.push(CountCheck::ge(
            "min over F of |Δ_x| ≥ m/3",
            min_overlap,
            ratio(m, 3),
        ));
    }
    checks.push(CountCheck::ge("|𝓕| ≥ |F|m/3", cal_f, ratio(fi * m, 3)));
    checks.push(CountCheck::eq(
        "|{x ∈ F : β ∈ Δ_x}| = 0",
        count(&f, |x| !x.fixes(beta)),
        int(0),
    ));
    let partition: usize = f.len()
        + lambda
            .iter()
            .map(|g| count(&f, |x| !x.fixes(g)))
            .sum::<usize>();
    checks.push(CountCheck::eq(
        "|𝓕| = |F| + Σ_{γ∈Λ} |{x ∈ F : γ ∈ supp(x)}|",
        cal_f,
        int(partition),
    ));
    for g in lambda.iter() {
        checks.push(CountCheck::eq(
            format!(
                "|{{x ∈ E : γ ∈ supp(x)}}| = |E|(m−1)/(n−1), γ={}",
                one_based(g)
            ),
            count(&e, |x| !x.fixes(g)),
            ratio(ei * (m - 1), n - 1),
        ));
    }
    checks.push(CountCheck::le(
        "|𝓕| ≤ |F| + (m−2)|E|(m−1)/(n−1)",
        cal_f,
        int(fi) + ratio((m - 2) * ei * (m - 1), n - 1),
    ));
    checks.push(CountCheck::ge(
        "|𝓕| − |F| ≥ (m/3 − 1)|E|(n−m)/(n−1)",
        cal_f as i64 - fi,
        ratio((m - 3) * ei * (n - m), 3 * (n - 1)),
    ));
    checks.push(CountCheck::le(
        "(m−3)(n−m) ≤ 3(m−1)(m−2)",
        (m - 3) * (n - m),
        int(3 * (m - 1) * (m - 2)),
    ));
    r.notes.push(
        "|Δ_x| ≥ m/3 is derived from the cardinality bound |supp([u,x])| ≤ 3|Δ_x| − |Δ_x ∩ Δ_x^u| − |Δ_x ∩ Δ_x^x|"
            .into(),
    );

    if r.gated.is_none() {
        let mut closing = vec![CountCheck::le(
            "n ≤ 4m + 6/(m−3)",
            n,
            int(4 * m) + ratio(6, m - 3),
        )];
        if n >= 38 {
            closing.push(CountCheck::ge("4m ≥ n", 4 * m, int(n)));
        } else {
            r.notes
                .push(format!("n = {n} < 38: m ≥ n/4 is not asserted"));
        }
        r.conclusion_holds = Some(closing.iter().all(|c| c.pass));
        r.checks.extend(closing);
    }
    Ok(())
}

fn third(r: &mut TraceReport, ctx: &Ctx<'_>, choices: &mut Choices) -> Result<()> {
    let (n, m) = (ctx.n, ctx.m);
    let u = ctx.u;
    let alpha = choices.pick(&ctx.supp_u).expect("u is not the identity");
    r.alpha = Some(alpha);
    let Some(beta) = choices.pick(&u.fixed_points()) else {
        r.degenerate = Some("u has no fixed point to serve as β".into());
        return Ok(());
    };
    r.beta = Some(beta);
    let alpha_u = u.image(alpha);
    let Some(h) = choices.transporter(ctx.handle, &[alpha, beta], &[alpha, alpha_u])? else {
        r.degenerate = Some("no h ∈ G_α with β^h = α^u".into());
        return Ok(());
    };
    let v = h.then(u).then(&h.inverse());
    r.h = Some(h);
    r.checks.push(CountCheck::eq(
        "α^v = β",
        one_based(v.image(alpha)),
        int(one_based(beta)),
    ));
    r.checks
        .push(CountCheck::eq("|supp(v)| = m", v.support_size(), int(m)));

    let e = ctx.orbit(&v, &[alpha, beta], &[alpha, beta])?;
    r.v = Some(v);
    let ei = e.len() as i64;
    let mut lambda = ctx.supp_u.clone();
    lambda.remove(alpha);
    let u_inv = u.inverse();

    let mut cal_e = 0;
    let mut cal_f = 0;
    let mut cal_g = 0;
    let mut cal_g_alt = 0;
    for x in &e {
        let d = ctx.overlap(x);
        let supp_x = x.support();
        cal_e += u.commutator_with(x).support_size();
        cal_f += d.len();
        cal_g += d.intersection_len(&d.image(u));
        cal_g_alt += ctx
            .supp_u
            .iter()
            .filter(|&g| supp_x.contains(g) && supp_x.contains(u_inv.image(g)))
            .count();
    }
    r.sizes = SetSizes {
        e: Some(e.len()),
        cal_e: Some(cal_e),
        cal_f: Some(cal_f),
        cal_g: Some(cal_g),
        lambda: Some(lambda.len()),
        ..SetSizes::default()
    };

    let movers = ratio(ei * (m - 2), n - 2);
    let checks = &mut r.checks;
    checks.push(CountCheck::eq(
        "|{x ∈ E : xu = ux}| = 0",
        count(&e, |x| ctx.commutes(x)),
        int(0),
    ));
    checks.push(CountCheck::ge("|𝓔| ≥ |E|m", cal_e, int(ei * m)));
    checks.push(CountCheck::eq(
        "|{x ∈ E : |supp([u,x])| > 3|Δ_x| − |Δ_x ∩ Δ_x^u| − |Δ_x ∩ Δ_x^x|}| = 0",
        count(&e, |x| !ctx.cardinality_bound_holds(x)),
        int(0),
    ));
    checks.push(CountCheck::le(
        "|𝓔| ≤ 3|𝓕| − |𝓖|",
        cal_e,
        int(3 * cal_f - cal_g),
    ));
    checks.push(CountCheck::eq(
        "|𝓖| = |{(x,γ) : γ ∈ supp(u), {γ, γ^(u⁻¹)} ⊆ supp(x)}|",
        cal_g,
        int(cal_g_alt),
    ));
    let partition: usize = e.len()
        + lambda
            .iter()
            .map(|g| count(&e, |x| !x.fixes(g)))
            .sum::<usize>();
    checks.push(CountCheck::eq(
        "|𝓕| = |E| + Σ_{γ∈Λ} |{x ∈ E : γ ∈ supp(x)}|",
        cal_f,
        int(partition),
    ));
    for g in lambda.iter() {
        checks.push(CountCheck::eq(
            format!(
                "|{{x ∈ E : γ ∈ supp(x)}}| = |E|(m−2)/(n−2), γ={}",
                one_based(g)
            ),
            count(&e, |x| !x.fixes(g)),
            movers.clone(),
        ));
    }
    checks.push(CountCheck::eq(
        "|𝓕| = |E|(1 + (m−1)(m−2)/(n−2))",
        cal_f,
        ratio(ei * ((n - 2) + (m - 1) * (m - 2)), n - 2),
    ));

    let delta_minus = u_inv.image(alpha);
    let delta_plus = alpha_u;
    r.delta_minus = Some(delta_minus);
    r.delta_plus = Some(delta_plus);
    let pm = PointSet::from_points(u.degree(), [delta_minus, delta_plus])?;
    let ab = PointSet::from_points(u.degree(), [alpha, beta])?;
    checks.push(CountCheck::containment(
        "{δ₋, δ₊} ∩ {α, β} = ∅",
        pm.intersection_len(&ab),
        0,
        pm.is_disjoint(&ab),
    ));
    let minus = count(&e, |x| !x.fixes(delta_minus));
    let plus = count(&e, |x| !x.fixes(delta_plus));
    checks.push(CountCheck::eq(
        "|{x ∈ E : δ₋ ∈ supp(x)}| = |E|(m−2)/(n−2)",
        minus,
        movers.clone(),
    ));
    checks.push(CountCheck::eq(
        "|{x ∈ E : δ₊ ∈ supp(x)}| = |E|(m−2)/(n−2)",
        plus,
        movers,
    ));
    // (x, γ) ∈ 𝓖 iff γ and γ^(u⁻¹) both lie in Δ_x
    let in_g = |x: &Permutation, g: Point| {
        let d = ctx.overlap(x);
        d.contains(g) && d.contains(u_inv.image(g))
    };
    let contained = e
        .iter()
        .filter(|x| !x.fixes(delta_minus))
        .all(|x| in_g(x, alpha))
        && e.iter()
            .filter(|x| !x.fixes(delta_plus))
            .all(|x| in_g(x, delta_plus));
    checks.push(CountCheck::containment(
        "{(x,α) : δ₋ ∈ supp(x)} + {(x,δ₊) : δ₊ ∈ supp(x)} ⊆ 𝓖",
        minus + plus,
        cal_g,
        contained && delta_plus != alpha,
    ));
    checks.push(CountCheck::ge(
        "|𝓖| ≥ 2|E|(m−2)/(n−2)",
        cal_g,
        ratio(2 * ei * (m - 2), n - 2),
    ));
    checks.push(CountCheck::le(
        "m ≤ 3 + (3m−5)(m−2)/(n−2)",
        m,
        int(3) + ratio((3 * m - 5) * (m - 2), n - 2),
    ));
    r.notes
        .push("the lower bound on |𝓖| counts movers of δ₋ and δ₊ over E with |Δ| = 2".into());

    if r.gated.is_none() {
        let mut closing = vec![CountCheck::le(
            "n ≤ 3m + 4/(m−3)",
            n,
            int(3 * m) + ratio(4, m - 3),
        )];
        if n >= 23 {
            closing.push(CountCheck::ge("3m ≥ n", 3 * m, int(n)));
        } else {
            r.notes
                .push(format!("n = {n} < 23: m ≥ n/3 is not asserted"));
        }
        r.conclusion_holds = Some(closing.iter().all(|c| c.pass));
        r.checks.extend(closing);
    }
    Ok(())
}

fn half(r: &mut TraceReport, ctx: &Ctx<'_>, choices: &mut Choices) -> Result<()> {
    let (n, m) = (ctx.n, ctx.m);
    let u = ctx.u;
    let degree = u.degree();
    let alpha = choices.pick(&ctx.supp_u).expect("u is not the identity");
    let beta = u.image(alpha);
    r.alpha = Some(alpha);
    r.beta = Some(beta);
    let mut lambda = ctx.supp_u.clone();
    lambda.remove(alpha);
    lambda.remove(beta);
    let fix_u = u.fixed_points();
    let (Some(to_fixed), Some(to_lambda)) = (choices.pick(&fix_u), choices.pick(&lambda)) else {
        r.degenerate = Some("u has no fixed point or Λ is empty".into());
        return Ok(());
    };
    let Some(h) = choices.transporter(ctx.handle, &[alpha, beta], &[to_fixed, to_lambda])? else {
        r.degenerate = Some("no h with α^h ∈ fix(u) and β^h ∈ Λ".into());
        return Ok(());
    };
    let v = h.then(u).then(&h.inverse());
    r.h = Some(h);
    let alpha_set = PointSet::from_points(degree, [alpha])?;
    let beta_set = PointSet::from_points(degree, [beta])?;
    r.checks.push(CountCheck::subset(
        "{α} ⊆ fix(v)",
        &alpha_set,
        &v.fixed_points(),
    ));
    r.checks
        .push(CountCheck::subset("{β} ⊆ supp(v)", &beta_set, &v.support()));
    r.checks
        .push(CountCheck::eq("|supp(v)| = m", v.support_size(), int(m)));

    let e = ctx.orbit(&v, &[alpha, beta], &[beta])?;
    r.v = Some(v);
    let ei = e.len() as i64;

    let mut cal_e = 0;
    let mut cal_f = 0;
    let mut cal_g = 0;
    let mut cal_h = 0;
    let mut union_total = 0;
    let mut covered = true;
    let mut g_superset = 0;
    let mut g_inside = true;
    let mut rest_u = ctx.supp_u.clone();
    rest_u.remove(alpha);
    for x in &e {
        let d = ctx.overlap(x);
        let supp_c = u.commutator_with(x).support();
        // 𝓖_x = {γ ∈ fix(u) : γ^x ∈ Δ_x}, 𝓗_x = {γ ∈ fix(x) : γ^u ∈ Δ_x}
        let g_x = fix_u.intersection(&d.preimage(x));
        let h_x = x.fixed_points().intersection(&d.preimage(u));
        let union = d.union(&g_x).union(&h_x);
        cal_e += supp_c.len();
        cal_f += d.len();
        cal_g += g_x.len();
        cal_h += h_x.len();
        union_total += union.len();
        covered &= supp_c.is_subset(&union);
        let wide = fix_u.intersection(&rest_u.preimage(x));
        g_superset += wide.len();
        g_inside &= g_x.is_subset(&wide);
    }
    r.sizes = SetSizes {
        e: Some(e.len()),
        cal_e: Some(cal_e),
        cal_f: Some(cal_f),
        cal_g: Some(cal_g),
        cal_h: Some(cal_h),
        lambda: Some(lambda.len()),
        ..SetSizes::default()
    };

    let nn = (n - 2) * (n - 3);
    let checks = &mut r.checks;
    checks.push(CountCheck::eq(
        "|{x ∈ E : α^x ≠ α or β^x = β}| = 0",
        count(&e, |x| !x.fixes(alpha) || x.fixes(beta)),
        int(0),
    ));
    checks.push(CountCheck::eq(
        "|{x ∈ E : [u,x] = 1}| = 0",
        count(&e, |x| ctx.commutes(x)),
        int(0),
    ));
    checks.push(CountCheck::ge("|𝓔| ≥ |E|m", cal_e, int(ei * m)));
    checks.push(CountCheck::containment(
        "𝓔 ⊆ 𝓕 ∪ 𝓖 ∪ 𝓗",
        cal_e,
        union_total,
        covered,
    ));
    checks.push(CountCheck::le(
        "|𝓔| ≤ |𝓕| + |𝓖| + |𝓗|",
        cal_e,
        int(cal_f + cal_g + cal_h),
    ));

    // 𝓕 = E × {β} + Σ_{γ∈Λ}
    let partition: usize = e.len()
        + lambda
            .iter()
            .map(|g| count(&e, |x| !x.fixes(g)))
            .sum::<usize>();
    checks.push(CountCheck::eq(
        "|𝓕| = |E| + Σ_{γ∈Λ} |{x ∈ E : γ ∈ supp(x)}|",
        cal_f,
        int(partition),
    ));
    for g in lambda.iter() {
        checks.push(CountCheck::eq(
            format!(
                "|{{x ∈ E : γ ∈ supp(x)}}| = |E|(m−1)/(n−2), γ={}",
                one_based(g)
            ),
            count(&e, |x| !x.fixes(g)),
            ratio(ei * (m - 1), n - 2),
        ));
    }
    checks.push(CountCheck::eq(
        "|𝓕| = |E|(1 + (m−1)(m−2)/(n−2))",
        cal_f,
        ratio(ei * ((n - 2) + (m - 1) * (m - 2)), n - 2),
    ));

    checks.push(CountCheck::containment(
        "𝓖 ⊆ {(x,γ) : γ ∈ fix(u), γ^x ∈ supp(u) ∖ {α}}",
        cal_g,
        g_superset,
        g_inside,
    ));
    for g in fix_u.iter() {
        checks.push(CountCheck::eq(
            format!("|{{x ∈ E : γ^x = β}}| = |E|/(n−2), γ={}", one_based(g)),
            count(&e, |x| x.image(g) == beta),
            ratio(ei, n - 2),
        ));
        for dl in lambda.iter() {
            checks.push(CountCheck::eq(
                format!(
                    "|{{x ∈ E : γ^x = δ}}| = |E|(m−2)/((n−2)(n−3)), γ={} δ={}",
                    one_based(g),
                    one_based(dl)
                ),
                count(&e, |x| x.image(g) == dl),
                ratio(ei * (m - 2), nn),
            ));
        }
    }
    checks.push(CountCheck::le(
        "|𝓖| ≤ |E|(n−m)/(n−2)((m−2)²/(n−3) + 1)",
        cal_g,
        ratio(ei * (n - m) * ((m - 2) * (m - 2) + n - 3), nn),
    ));

    // 𝓗 = E × {α} + Σ_{γ∈Λ}
    let mut h_parts = e.len();
    for g in lambda.iter() {
        let gu = u.image(g);
        let c = count(&e, |x| x.fixes(g) && !x.fixes(gu));
        h_parts += c;
        checks.push(CountCheck::le(
            format!(
                "|{{x ∈ E : γ ∈ fix(x), γ^u ∈ supp(x)}}| ≤ |E|(n−m)(m−2)/((n−2)(n−3)), γ={}",
                one_based(g)
            ),
            c,
            ratio(ei * (n - m) * (m - 2), nn),
        ));
        if gu == alpha {
            checks.push(CountCheck::eq(
                format!(
                    "|{{x ∈ E : γ ∈ fix(x), γ^u ∈ supp(x)}}| = 0 for γ^u = α, γ={}",
                    one_based(g)
                ),
                c,
                int(0),
            ));
        } else {
            checks.push(CountCheck::eq(
                format!(
                    "|{{x ∈ E : γ ∈ fix(x), γ^u ∈ supp(x)}}| = |E|(n−1−m)(m−1)/((n−2)(n−3)), γ={}",
                    one_based(g)
                ),
                c,
                ratio(ei * (n - 1 - m) * (m - 1), nn),
            ));
        }
    }
    checks.push(CountCheck::eq(
        "|𝓗| = |E| + Σ_{γ∈Λ} |{x ∈ E : γ ∈ fix(x), γ^u ∈ supp(x)}|",
        cal_h,
        int(h_parts),
    ));
    checks.push(CountCheck::le(
        "|𝓗| ≤ |E|(1 + (n−m)(m−2)²/((n−2)(n−3)))",
        cal_h,
        int(ei) + ratio(ei * (n - m) * (m - 2) * (m - 2), nn),
    ));
    r.notes.push(
        "the exact per-γ count of 𝓗 uses the action of G_(αβ) on Ω ∖ {α}; it is compared alongside the per-γ bound".into(),
    );

    let sq = (m - 2) * (m - 2);
    let assembled = (int(1) + ratio((m - 1) * (m - 2), n - 2))
        + ratio((n - m) * (sq + n - 3), nn)
        + (int(1) + ratio((n - m) * sq, nn));
    checks.push(CountCheck::le(
        "m ≤ (1 + (m−1)(m−2)/(n−2)) + (n−m)/(n−2)((m−2)²/(n−3) + 1) + (1 + (n−m)(m−2)²/((n−2)(n−3)))",
        m,
        assembled,
    ));
    checks.push(CountCheck::le(
        "m − 3 ≤ (m−2)²/(n−2) + 2(n−m)(m−2)²/((n−2)(n−3))",
        m - 3,
        ratio(sq, n - 2) + ratio(2 * (n - m) * sq, nn),
    ));

    let big_m = m - 3;
    let big_n = n - 3;
    let mp1 = (big_m + 1) * (big_m + 1);
    let lead = 3 * mp1 - big_m;
    let p_of_m =
        BigInt::from(big_m.pow(4) + 14 * big_m.pow(3) + 35 * big_m.pow(2) + 30 * big_m + 9);
    let n0 = ratio(lead, 2 * big_m);
    r.derived = Some(DerivedQuantities {
        big_m,
        big_n,
        n0: n0.clone(),
        p_of_m: p_of_m.clone(),
    });
    checks.push(CountCheck::le(
        "N(N+1) ≤ 3(M+1)²N/M − 2(M+1)²",
        big_n * (big_n + 1),
        ratio(3 * mp1 * big_n, big_m) - int(2 * mp1),
    ));
    checks.push(CountCheck::eq(
        "p(M) = (3(M+1)² − M)² − 8M²(M+1)²",
        p_of_m.clone(),
        int(lead * lead - 8 * big_m * big_m * mp1),
    ));
    let l = 2 * big_m * big_n - lead;
    checks.push(CountCheck::le(
        "(2MN − (3(M+1)² − M))² ≤ p(M)",
        l * l,
        Rational::from_integer(p_of_m.clone()),
    ));
    checks.push(CountCheck::le(
        "max(0, 2MN − (3(M+1)² − M))² ≤ p(M)",
        l.max(0) * l.max(0),
        Rational::from_integer(p_of_m.clone()),
    ));
    checks.push(CountCheck::ge("M ≥ 3", big_m, int(3)));
    let cap = (big_m * big_m + 7 * big_m) * (big_m * big_m + 7 * big_m);
    checks.push(CountCheck::le("p(M) < (M² + 7M)²", p_of_m, int(cap - 1)));
    checks.push(CountCheck::le(
        "2MN < 4M² + 12M + 3",
        2 * big_m * big_n,
        int(4 * big_m * big_m + 12 * big_m + 2),
    ));

    let closing = [
        CountCheck::ge("m ≥ 6", m, int(6)),
        CountCheck::le("n − 3 ≤ 2m", n - 3, int(2 * m)),
    ];
    r.conclusion_holds = Some(closing.iter().all(|c| c.pass));
    r.checks.extend(closing);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin;

    fn handle(name: &str) -> GroupHandle {
        GroupHandle::new(builtin(name).unwrap()).unwrap()
    }

    fn failures(r: &TraceReport) -> Vec<String> {
        r.checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.to_string())
            .collect()
    }

    #[test]
    fn projective_groups() {
        for name in ["PSL(2,7)", "PGL(2,7)"] {
            let h = handle(name);
            let r = trace_bound(&h, Bound::Quarter, &TraceOptions::default()).unwrap();
            assert!(r.all_pass(), "{name}: {:?}", failures(&r));
            assert_eq!(r.conclusion_holds, Some(true));
        }
        let h = handle("PGL(2,7)");
        let r = trace_bound(&h, Bound::Third, &TraceOptions::default()).unwrap();
        assert!(r.all_pass(), "{:?}", failures(&r));
        assert!(r.notes.iter().any(|n| n.contains("< 23")));
        let r = trace_bound(&h, Bound::Half, &TraceOptions::default()).unwrap();
        assert!(r.inapplicable.is_some());
    }

    #[test]
    fn symmetric_group_gated() {
        let h = handle("S5");
        let r = trace_bound(&h, Bound::Quarter, &TraceOptions::default()).unwrap();
        assert!(r.gated.is_some());
        assert!(r.all_pass(), "{:?}", failures(&r));
        assert_eq!(r.conclusion_holds, None);
        let r = trace_bound(&handle("S8"), Bound::Half, &TraceOptions::default()).unwrap();
        assert!(r.inapplicable.is_some());
    }

    #[test]
    fn mathieu_11_all_bounds() {
        let h = handle("M11");
        for bound in [Bound::Quarter, Bound::Third, Bound::Half] {
            let r = trace_bound(&h, bound, &TraceOptions::default()).unwrap();
            assert!(r.applicable(), "{bound}");
            assert!(r.all_pass(), "{bound}: {:?}", failures(&r));
            assert_eq!(r.conclusion_holds, Some(true));
        }
        let r = trace_bound(&h, Bound::Half, &TraceOptions::default()).unwrap();
        let d = r.derived.unwrap();
        assert_eq!((d.big_m, d.big_n), (5, 8));
        assert_eq!(d.n0, ratio(103, 10));
        assert_eq!(d.p_of_m, BigInt::from(3409));
    }

    #[test]
    fn seeded_choices_agree() {
        let h = handle("M11");
        for seed in 0..4 {
            for bound in [Bound::Quarter, Bound::Third, Bound::Half] {
                let r = trace_bound(&h, bound, &TraceOptions::seeded(seed)).unwrap();
                assert!(r.all_pass(), "seed {seed} {bound}: {:?}", failures(&r));
            }
        }
    }
}

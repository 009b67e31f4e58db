use super::check::{int, CountCheck};
use super::TraceOptions;
use crate::error::Result;
use crate::group::GroupHandle;

/// Published `(group, n, m, lower bound)` rows for the four Mathieu groups.
pub const PUBLISHED_ROWS: [(&str, usize, usize, usize); 4] = [
    ("M11", 11, 8, 6),
    ("M12", 12, 8, 6),
    ("M23", 23, 16, 10),
    ("M24", 24, 16, 11),
];

#[derive(Clone, Debug)]
pub struct BoundRow {
    pub group: String,
    pub n: usize,
    pub t: usize,
    pub m: usize,
    /// `max(6, ⌈(n−3)/2⌉)`, the bound implied by `m ≥ 6` and `n − 3 ≤ 2m`.
    pub bound: usize,
    pub checks: Vec<CountCheck>,
}

pub fn lower_bound(n: usize) -> usize {
    6.max(n.saturating_sub(3).div_ceil(2))
}

/// One row per handle, compared against [`PUBLISHED_ROWS`] when the label
/// matches a published group.
pub fn mathieu_bound_table(handles: &[&GroupHandle], opts: &TraceOptions) -> Result<Vec<BoundRow>> {
    let mut rows = Vec::with_capacity(handles.len());
    for handle in handles {
        let n = handle.degree();
        let t = handle.transitivity_degree();
        let m = opts.min_degree(handle)?.support_size();
        let bound = lower_bound(n);
        let mut checks = vec![CountCheck::le("bound ≤ m", bound, int(m))];
        if let Some(&(_, pn, pm, pb)) = PUBLISHED_ROWS.iter().find(|r| r.0 == handle.label()) {
            checks.push(CountCheck::eq("n matches published row", n, int(pn)));
            checks.push(CountCheck::eq("m matches published row", m, int(pm)));
            checks.push(CountCheck::eq(
                "bound matches published row",
                bound,
                int(pb),
            ));
        }
        rows.push(BoundRow {
            group: handle.label().to_string(),
            n,
            t,
            m,
            bound,
            checks,
        });
    }
    Ok(rows)
}

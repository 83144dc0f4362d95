//! The Bruhat poset I(d, n): enumeration, lattice operations, lengths,
//! intervals, boundaries, exchanges and the w0 involution.

use crate::error::{Error, Result};
use crate::index::{GrassContext, PluckerIndex, RichardsonId, RootPair};

/// All binomial(n, d) indices in lexicographic order.
pub fn enumerate_indices(ctx: GrassContext) -> Vec<PluckerIndex> {
    let (d, n) = (ctx.d(), ctx.n());
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=d).collect();
    loop {
        out.push(PluckerIndex::from_sorted_unchecked(cur.clone(), n));
        // advance to the next combination
        let Some(i) = (0..d).rev().find(|&i| cur[i] < n - (d - 1 - i)) else {
            break;
        };
        cur[i] += 1;
        for j in i + 1..d {
            cur[j] = cur[j - 1] + 1;
        }
    }
    out
}

pub fn meet(a: &PluckerIndex, b: &PluckerIndex) -> Result<PluckerIndex> {
    a.same_context(b)?;
    let entries = a
        .entries()
        .iter()
        .zip(b.entries())
        .map(|(x, y)| *x.min(y))
        .collect();
    Ok(PluckerIndex::from_sorted_unchecked(entries, a.n()))
}

pub fn join(a: &PluckerIndex, b: &PluckerIndex) -> Result<PluckerIndex> {
    a.same_context(b)?;
    let entries = a
        .entries()
        .iter()
        .zip(b.entries())
        .map(|(x, y)| *x.max(y))
        .collect();
    Ok(PluckerIndex::from_sorted_unchecked(entries, a.n()))
}

/// X_{w1}^{v1} ∩ X_{w2}^{v2} = X_{w1 ∧ w2}^{v1 ∨ v2}, or `None` when empty.
pub fn intersect_richardson(x1: &RichardsonId, x2: &RichardsonId) -> Result<Option<RichardsonId>> {
    let w = meet(x1.w(), x2.w())?;
    let v = join(x1.v(), x2.v())?;
    if v.is_below(&w) {
        Ok(Some(RichardsonId::new(w, v)?))
    } else {
        Ok(None)
    }
}

/// Σ (a_t - t): the length of the minimal coset representative.
pub fn length(a: &PluckerIndex) -> usize {
    a.entries()
        .iter()
        .enumerate()
        .map(|(t, &e)| e - (t + 1))
        .sum()
}

/// l(w) - l(v).
pub fn dim_richardson(x: &RichardsonId) -> usize {
    length(x.w()) - length(x.v())
}

/// All tau with v <= tau <= w, lexicographic.
pub fn interval(x: &RichardsonId) -> Vec<PluckerIndex> {
    enumerate_indices(x.context())
        .into_iter()
        .filter(|t| x.contains(t))
        .collect()
}

/// Elements covered by `a` (one entry decreased by one).
pub fn lower_covers(a: &PluckerIndex) -> Vec<PluckerIndex> {
    let e = a.entries();
    let mut out = Vec::new();
    for t in 0..e.len() {
        let floor = if t == 0 { 0 } else { e[t - 1] };
        if e[t] - 1 > floor {
            let mut next = e.to_vec();
            next[t] -= 1;
            out.push(PluckerIndex::from_sorted_unchecked(next, a.n()));
        }
    }
    out.sort();
    out
}

/// Elements covering `a` (one entry increased by one).
pub fn upper_covers(a: &PluckerIndex) -> Vec<PluckerIndex> {
    let e = a.entries();
    let mut out = Vec::new();
    for t in 0..e.len() {
        let ceil = if t + 1 == e.len() { a.n() + 1 } else { e[t + 1] };
        if e[t] + 1 < ceil {
            let mut next = e.to_vec();
            next[t] += 1;
            out.push(PluckerIndex::from_sorted_unchecked(next, a.n()));
        }
    }
    out.sort();
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Lower w by one step: w > w' >= tau.
    Plus,
    /// Raise v by one step: tau >= v' > v.
    Minus,
}

/// The boundary sets used by the multiplicity recursion.
pub fn boundary(x: &RichardsonId, tau: &PluckerIndex, side: Side) -> Result<Vec<PluckerIndex>> {
    x.require_point(tau)?;
    match side {
        Side::Plus => {
            if tau == x.w() {
                return Err(Error::BoundaryInapplicable("plus side needs w > tau"));
            }
            Ok(lower_covers(x.w())
                .into_iter()
                .filter(|w1| tau.is_below(w1))
                .collect())
        }
        Side::Minus => {
            if tau == x.v() {
                return Err(Error::BoundaryInapplicable("minus side needs tau > v"));
            }
            Ok(upper_covers(x.v())
                .into_iter()
                .filter(|v1| v1.is_below(tau))
                .collect())
        }
    }
}

/// s_β τ mod W_P: replace `removed` by `added` and re-sort.
pub fn reflect(tau: &PluckerIndex, r: RootPair) -> Result<PluckerIndex> {
    if !tau.contains(r.removed) || tau.contains(r.added) || r.added < 1 || r.added > tau.n() {
        return Err(Error::InvalidRootPair {
            removed: r.removed,
            added: r.added,
            tau: tau.to_string(),
        });
    }
    let mut entries: Vec<usize> = tau
        .entries()
        .iter()
        .map(|&e| if e == r.removed { r.added } else { e })
        .collect();
    entries.sort_unstable();
    Ok(PluckerIndex::from_sorted_unchecked(entries, tau.n()))
}

/// a ↦ sorted {n + 1 - a_t}; an order reversing involution.
pub fn w0_conjugate(a: &PluckerIndex) -> PluckerIndex {
    let n = a.n();
    let entries = a.entries().iter().rev().map(|&e| n + 1 - e).collect();
    PluckerIndex::from_sorted_unchecked(entries, n)
}

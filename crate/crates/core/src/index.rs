//! Index types shared by every module: the ambient Grassmannian, Plücker
//! indices (T-fixed points), Richardson varieties and root exchanges.

use std::fmt;

use crate::error::{Error, Result};

/// The Grassmannian G(d, n) of d-planes in an n-dimensional space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GrassContext {
    d: usize,
    n: usize,
}

impl GrassContext {
    pub fn new(d: usize, n: usize) -> Result<Self> {
        if d == 0 || d >= n {
            return Err(Error::InvalidContext { d, n });
        }
        Ok(GrassContext { d, n })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// d(n - d), the dimension of the Grassmannian.
    pub fn dim(&self) -> usize {
        self.d * (self.n - self.d)
    }

    /// The identity coset (1, ..., d), the unique minimal element.
    pub fn bottom(&self) -> PluckerIndex {
        PluckerIndex {
            entries: (1..=self.d).collect(),
            n: self.n,
        }
    }

    /// (n + 1 - d, ..., n), the unique maximal element.
    pub fn top(&self) -> PluckerIndex {
        PluckerIndex {
            entries: (self.n + 1 - self.d..=self.n).collect(),
            n: self.n,
        }
    }

    /// Sorts and validates `entries` into an index of this context.
    pub fn index(&self, entries: &[usize]) -> Result<PluckerIndex> {
        let mut sorted = entries.to_vec();
        sorted.sort_unstable();
        let bad = |reason| Error::InvalidIndex {
            entries: entries.to_vec(),
            d: self.d,
            n: self.n,
            reason,
        };
        if sorted.len() != self.d {
            return Err(bad("wrong number of entries"));
        }
        if sorted.windows(2).any(|p| p[0] == p[1]) {
            return Err(bad("repeated entry"));
        }
        if sorted.first().is_some_and(|&e| e < 1) || sorted.last().is_some_and(|&e| e > self.n) {
            return Err(bad("entry out of range"));
        }
        Ok(PluckerIndex {
            entries: sorted,
            n: self.n,
        })
    }

    /// Parses the comma separated text form, e.g. `"2,4"`.
    pub fn parse_index(&self, text: &str) -> Result<PluckerIndex> {
        let entries = text
            .split(',')
            .map(|t| {
                t.trim().parse::<usize>().map_err(|e| Error::Parse {
                    input: text.to_string(),
                    reason: e.to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        self.index(&entries)
    }

    /// Parses `"d,n"`.
    pub fn parse(text: &str) -> Result<Self> {
        let parse_err = |reason: &str| Error::Parse {
            input: text.to_string(),
            reason: reason.to_string(),
        };
        let (d, n) = text
            .split_once(',')
            .ok_or_else(|| parse_err("expected `d,n`"))?;
        let d = d.trim().parse().map_err(|_| parse_err("bad d"))?;
        let n = n.trim().parse().map_err(|_| parse_err("bad n"))?;
        GrassContext::new(d, n)
    }
}

impl fmt::Display for GrassContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.d, self.n)
    }
}

/// A strictly increasing d-tuple in {1..n}.
///
/// The derived `Ord` is lexicographic on the entries and is only used for
/// deterministic ordering; the Bruhat order is [`PluckerIndex::leq`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PluckerIndex {
    entries: Vec<usize>,
    n: usize,
}

impl PluckerIndex {
    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn d(&self) -> usize {
        self.entries.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn context(&self) -> GrassContext {
        GrassContext {
            d: self.entries.len(),
            n: self.n,
        }
    }

    pub fn contains(&self, entry: usize) -> bool {
        self.entries.binary_search(&entry).is_ok()
    }

    /// Entries of {1..n} not in this index, ascending.
    pub fn complement(&self) -> Vec<usize> {
        (1..=self.n).filter(|&e| !self.contains(e)).collect()
    }

    pub(crate) fn same_context(&self, other: &PluckerIndex) -> Result<()> {
        if self.n != other.n || self.entries.len() != other.entries.len() {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    /// Bruhat order without the context check.
    pub fn is_below(&self, other: &PluckerIndex) -> bool {
        debug_assert_eq!(self.n, other.n);
        self.entries
            .iter()
            .zip(&other.entries)
            .all(|(a, b)| a <= b)
    }

    pub fn is_comparable(&self, other: &PluckerIndex) -> bool {
        self.is_below(other) || other.is_below(self)
    }

    /// Bruhat order: `self <= other` iff every entry is at most the
    /// corresponding entry of `other`.
    pub fn leq(&self, other: &PluckerIndex) -> Result<bool> {
        self.same_context(other)?;
        Ok(self.is_below(other))
    }

    pub(crate) fn from_sorted_unchecked(entries: Vec<usize>, n: usize) -> Self {
        debug_assert!(entries.windows(2).all(|p| p[0] < p[1]));
        PluckerIndex { entries, n }
    }
}

impl fmt::Display for PluckerIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// The Richardson variety X_w^v = X_w ∩ X^v. Only nonempty varieties
/// (w >= v) can be constructed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RichardsonId {
    w: PluckerIndex,
    v: PluckerIndex,
}

impl RichardsonId {
    pub fn new(w: PluckerIndex, v: PluckerIndex) -> Result<Self> {
        w.same_context(&v)?;
        if !v.is_below(&w) {
            return Err(Error::EmptyVariety {
                w: w.to_string(),
                v: v.to_string(),
            });
        }
        Ok(RichardsonId { w, v })
    }

    /// The Schubert variety X_w.
    pub fn schubert(w: PluckerIndex) -> Self {
        let v = w.context().bottom();
        RichardsonId { w, v }
    }

    /// The opposite Schubert variety X^v.
    pub fn opposite(v: PluckerIndex) -> Self {
        let w = v.context().top();
        RichardsonId { w, v }
    }

    /// The whole Grassmannian.
    pub fn full(ctx: GrassContext) -> Self {
        RichardsonId {
            w: ctx.top(),
            v: ctx.bottom(),
        }
    }

    pub fn w(&self) -> &PluckerIndex {
        &self.w
    }

    pub fn v(&self) -> &PluckerIndex {
        &self.v
    }

    pub fn context(&self) -> GrassContext {
        self.w.context()
    }

    /// v <= tau <= w.
    pub fn contains(&self, tau: &PluckerIndex) -> bool {
        self.v.is_below(tau) && tau.is_below(&self.w)
    }

    pub(crate) fn require_point(&self, tau: &PluckerIndex) -> Result<()> {
        self.w.same_context(tau)?;
        if !self.contains(tau) {
            return Err(Error::NotInInterval {
                tau: tau.to_string(),
                w: self.w.to_string(),
                v: self.v.to_string(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for RichardsonId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X_({})^({})", self.w, self.v)
    }
}

/// An exchange `removed -> added` of one entry of a fixed index tau. It
/// stands for a root β in τ(R⁺ \ R_P⁺) and its tangent vector X_{-β}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootPair {
    pub removed: usize,
    pub added: usize,
}

impl RootPair {
    pub fn new(removed: usize, added: usize) -> Self {
        RootPair { removed, added }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructors_sort_and_validate() {
        let ctx = GrassContext::new(2, 4).unwrap();
        assert_eq!(ctx.index(&[4, 2]).unwrap().entries(), &[2, 4]);
        assert!(ctx.index(&[2, 2]).is_err());
        assert!(ctx.index(&[0, 2]).is_err());
        assert!(ctx.index(&[2, 5]).is_err());
        assert!(ctx.index(&[1, 2, 3]).is_err());
        assert!(GrassContext::new(0, 3).is_err());
        assert!(GrassContext::new(3, 3).is_err());
    }

    #[test]
    fn text_round_trip() {
        let ctx = GrassContext::parse("3,6").unwrap();
        assert_eq!((ctx.d(), ctx.n()), (3, 6));
        let a = ctx.parse_index("1, 5,3").unwrap();
        assert_eq!(a.to_string(), "1,3,5");
        assert!(ctx.parse_index("1,x,3").is_err());
        assert!(GrassContext::parse("3").is_err());
    }

    #[test]
    fn empty_richardson_is_rejected() {
        let ctx = GrassContext::new(2, 4).unwrap();
        let w = ctx.parse_index("1,4").unwrap();
        let v = ctx.parse_index("2,3").unwrap();
        assert!(matches!(
            RichardsonId::new(w, v),
            Err(Error::EmptyVariety { .. })
        ));
    }

    #[test]
    fn mismatched_contexts() {
        let a = GrassContext::new(2, 4).unwrap().bottom();
        let b = GrassContext::new(2, 5).unwrap().bottom();
        assert_eq!(a.leq(&b), Err(Error::ContextMismatch));
    }
}

//! Standard monomials on Richardson varieties and their unions: counting,
//! Hilbert polynomials and degrees.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::index::{PluckerIndex, RichardsonId};
use crate::linalg::factorial;
use crate::poly::Polynomial;
use crate::poset::{dim_richardson, enumerate_indices, interval, length, lower_covers, upper_covers};

/// A weakly decreasing chain τ1 >= ... >= τm, i.e. the standard monomial
/// p_{τ1}···p_{τm}.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiChain {
    pub chain: Vec<PluckerIndex>,
}

impl MultiChain {
    pub fn is_weakly_decreasing(&self) -> bool {
        self.chain.windows(2).all(|p| p[1].is_below(&p[0]))
    }

    pub fn is_standard_on(&self, x: &RichardsonId) -> bool {
        self.is_weakly_decreasing()
            && self.chain.first().is_none_or(|t| t.is_below(x.w()))
            && self.chain.last().is_none_or(|t| x.v().is_below(t))
    }
}

/// All standard monomials of degree m on X_w^v, generated depth first with
/// each position running through the interval in lexicographic order.
pub fn enumerate_standard(x: &RichardsonId, m: usize) -> Vec<MultiChain> {
    let elems = interval(x);
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m);
    extend_chains(&elems, m, &mut cur, &mut out);
    out
}

fn extend_chains(elems: &[PluckerIndex], m: usize, cur: &mut Vec<PluckerIndex>, out: &mut Vec<MultiChain>) {
    if cur.len() == m {
        out.push(MultiChain { chain: cur.clone() });
        return;
    }
    for t in elems {
        if cur.last().is_none_or(|prev| t.is_below(prev)) {
            cur.push(t.clone());
            extend_chains(elems, m, cur, out);
            cur.pop();
        }
    }
}

/// The poset [v, w] sorted by length, with the strict-or-equal down sets.
struct IntervalPoset {
    elems: Vec<PluckerIndex>,
    below: Vec<Vec<usize>>,
}

impl IntervalPoset {
    fn new(mut elems: Vec<PluckerIndex>) -> Self {
        elems.sort_by_key(|t| (length(t), t.clone()));
        let below = elems
            .iter()
            .map(|a| {
                (0..elems.len())
                    .filter(|&j| elems[j].is_below(a))
                    .collect()
            })
            .collect();
        IntervalPoset { elems, below }
    }

    /// counts[i] = number of weakly decreasing chains of length m whose
    /// first element is elems[i].
    fn chains_by_top(&self, m: usize) -> Vec<BigInt> {
        let mut counts = vec![BigInt::one(); self.elems.len()];
        for _ in 1..m {
            counts = self
                .below
                .iter()
                .map(|down| down.iter().map(|&j| &counts[j]).sum())
                .collect();
        }
        counts
    }
}

/// s(w, v, m): the number of standard monomials of degree m on X_w^v.
pub fn count_standard(x: &RichardsonId, m: usize) -> BigInt {
    if m == 0 {
        return BigInt::one();
    }
    IntervalPoset::new(interval(x)).chains_by_top(m).into_iter().sum()
}

/// Drops duplicate components and components contained in another one.
pub fn prune_components(xs: &[RichardsonId]) -> Vec<RichardsonId> {
    let unique: BTreeSet<RichardsonId> = xs.iter().cloned().collect();
    let unique: Vec<RichardsonId> = unique.into_iter().collect();
    unique
        .iter()
        .filter(|a| {
            !unique.iter().any(|b| {
                b != *a && b.v().is_below(a.v()) && a.w().is_below(b.w())
            })
        })
        .cloned()
        .collect()
}

/// s(X, m) for a union X of Richardson varieties: a monomial is standard
/// on X when it is standard on some component.
pub fn count_union(xs: &[RichardsonId], m: usize) -> Result<BigInt> {
    let Some(first) = xs.first() else {
        return Err(Error::EmptyUnion);
    };
    for x in xs {
        x.w().same_context(first.w())?;
    }
    if m == 0 {
        return Ok(BigInt::one());
    }
    let parts = prune_components(xs);
    let universe: Vec<PluckerIndex> = enumerate_indices(first.context())
        .into_iter()
        .filter(|t| parts.iter().any(|x| x.contains(t)))
        .collect();
    let poset = IntervalPoset::new(universe);
    let size = poset.elems.len();
    // ending[a]: chains of the current length from top a down to bottom b
    let mut total = BigInt::zero();
    for b in 0..size {
        let mut ending: Vec<BigInt> = (0..size)
            .map(|a| if a == b { BigInt::one() } else { BigInt::zero() })
            .collect();
        for _ in 1..m {
            ending = poset
                .below
                .iter()
                .map(|down| down.iter().map(|&c| &ending[c]).sum())
                .collect();
        }
        for (a, count) in ending.iter().enumerate() {
            if count.is_zero() {
                continue;
            }
            let (top, bottom) = (&poset.elems[a], &poset.elems[b]);
            if parts.iter().any(|x| top.is_below(x.w()) && x.v().is_below(bottom)) {
                total += count;
            }
        }
    }
    Ok(total)
}

/// The components X_{w'}^v, w' covered by w, of ∂⁺X_w^v.
pub fn plus_boundary(x: &RichardsonId) -> Vec<RichardsonId> {
    lower_covers(x.w())
        .into_iter()
        .filter(|w1| x.v().is_below(w1))
        .map(|w1| RichardsonId::new(w1, x.v().clone()).expect("w' >= v"))
        .collect()
}

/// The components X_w^{v'}, v' covering v, of ∂⁻X_w^v.
pub fn minus_boundary(x: &RichardsonId) -> Vec<RichardsonId> {
    upper_covers(x.v())
        .into_iter()
        .filter(|v1| v1.is_below(x.w()))
        .map(|v1| RichardsonId::new(x.w().clone(), v1).expect("w >= v'"))
        .collect()
}

/// Number of values beyond the interpolation nodes that must also match.
pub const LOOKAHEAD: usize = 3;

/// The Hilbert polynomial of X_w^v in the Plücker embedding, as an exact
/// rational polynomial in m.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertPoly {
    pub poly: Polynomial,
}

impl HilbertPoly {
    pub fn coefficients(&self) -> &[BigRational] {
        self.poly.coefficients()
    }

    pub fn degree(&self) -> usize {
        self.poly.degree()
    }

    pub fn eval(&self, m: i64) -> BigRational {
        self.poly.eval(m)
    }
}

/// Interpolates s(w, v, m) at m = 0..=dim and checks the next
/// [`LOOKAHEAD`] values.
pub fn hilbert_polynomial(x: &RichardsonId) -> Result<HilbertPoly> {
    let u = dim_richardson(x);
    let poset = IntervalPoset::new(interval(x));
    let count = |m: usize| -> BigInt {
        if m == 0 {
            BigInt::one()
        } else {
            poset.chains_by_top(m).into_iter().sum()
        }
    };
    let values: Vec<BigInt> = (0..=u).map(count).collect();
    let poly = Polynomial::interpolate(0, &values);
    for m in u + 1..=u + LOOKAHEAD {
        let expect = count(m);
        if poly.eval(m as i64) != BigRational::from_integer(expect.clone()) {
            return Err(Error::Interpolation(format!(
                "Hilbert polynomial of {x} predicts {} at m = {m}, count is {expect}",
                poly.eval(m as i64)
            )));
        }
    }
    Ok(HilbertPoly { poly })
}

/// Leading coefficient of the Hilbert polynomial times dim!.
pub fn degree_of_variety(x: &RichardsonId) -> Result<BigInt> {
    let h = hilbert_polynomial(x)?;
    let u = dim_richardson(x);
    let scaled = h.poly.leading() * BigRational::from_integer(factorial(u));
    if h.degree() != u || !crate::linalg::is_positive_integer(&scaled) {
        return Err(Error::Interpolation(format!(
            "degree of {x} is not a positive integer: {scaled}"
        )));
    }
    Ok(scaled.to_integer())
}

/// Number of saturated chains from v to w.
pub fn maximal_chain_count(x: &RichardsonId) -> BigInt {
    let poset = IntervalPoset::new(interval(x));
    let mut counts: Vec<BigInt> = vec![BigInt::zero(); poset.elems.len()];
    for i in 0..poset.elems.len() {
        let a = &poset.elems[i];
        if a == x.v() {
            counts[i] = BigInt::one();
            continue;
        }
        counts[i] = poset.below[i]
            .iter()
            .filter(|&&j| length(&poset.elems[j]) + 1 == length(a))
            .map(|&j| counts[j].clone())
            .sum();
    }
    let top = poset.elems.iter().position(|t| t == x.w()).expect("w in interval");
    counts[top].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::GrassContext;
    use crate::linalg::binomial;
    use crate::poset::intersect_richardson;

    fn ctx(d: usize, n: usize) -> GrassContext {
        GrassContext::new(d, n).unwrap()
    }

    fn rid(c: GrassContext, w: &str, v: &str) -> RichardsonId {
        RichardsonId::new(c.parse_index(w).unwrap(), c.parse_index(v).unwrap()).unwrap()
    }

    fn all_varieties(c: GrassContext) -> Vec<RichardsonId> {
        let all = enumerate_indices(c);
        let mut out = Vec::new();
        for w in &all {
            for v in all.iter().filter(|v| v.is_below(w)) {
                out.push(RichardsonId::new(w.clone(), v.clone()).unwrap());
            }
        }
        out
    }

    fn quadric_count(m: i64) -> BigInt {
        binomial(m + 5, 5) - binomial(m + 3, 5)
    }

    #[test]
    fn enumeration_examples() {
        let c = ctx(2, 4);
        let full = RichardsonId::full(c);
        assert_eq!(enumerate_standard(&full, 0), vec![MultiChain { chain: vec![] }]);
        let p = rid(c, "2,3", "2,3");
        for m in 0..5 {
            let chains = enumerate_standard(&p, m);
            assert_eq!(chains.len(), 1);
            assert!(chains[0].chain.iter().all(|t| t == p.w()));
        }
        assert_eq!(enumerate_standard(&full, 1).len(), 6);
    }

    #[test]
    fn counts_of_g24() {
        let full = RichardsonId::full(ctx(2, 4));
        assert_eq!(count_standard(&full, 2), BigInt::from(20));
        for m in 0..=5 {
            assert_eq!(count_standard(&full, m), quadric_count(m as i64));
        }
        for x in all_varieties(ctx(2, 4)) {
            assert_eq!(count_standard(&x, 0), BigInt::one());
        }
    }

    #[test]
    fn dynamic_program_matches_enumeration() {
        for (d, n) in [(2, 4), (2, 5), (3, 6)] {
            for x in all_varieties(ctx(d, n)) {
                for m in 0..=3 {
                    let chains = enumerate_standard(&x, m);
                    assert!(chains.iter().all(|ch| ch.is_standard_on(&x)));
                    assert_eq!(count_standard(&x, m), BigInt::from(chains.len()), "{x} m={m}");
                }
            }
        }
    }

    #[test]
    fn union_examples() {
        let c = ctx(2, 4);
        let a = RichardsonId::schubert(c.parse_index("1,4").unwrap());
        let b = RichardsonId::schubert(c.parse_index("2,3").unwrap());
        assert_eq!(count_union(&[a.clone(), b.clone()], 1).unwrap(), BigInt::from(4));
        for m in 0..4 {
            assert_eq!(count_union(std::slice::from_ref(&a), m).unwrap(), count_standard(&a, m));
            assert_eq!(count_union(&[a.clone(), a.clone()], m).unwrap(), count_standard(&a, m));
        }
        assert_eq!(count_union(&[], 1), Err(Error::EmptyUnion));
    }

    #[test]
    fn union_matches_deduplicated_enumeration() {
        let vars = all_varieties(ctx(2, 4));
        for (i, a) in vars.iter().enumerate() {
            for b in &vars[i..] {
                for m in 0..=3 {
                    let set: BTreeSet<MultiChain> = enumerate_standard(a, m)
                        .into_iter()
                        .chain(enumerate_standard(b, m))
                        .collect();
                    assert_eq!(count_union(&[a.clone(), b.clone()], m).unwrap(), BigInt::from(set.len()));
                }
            }
        }
    }

    #[test]
    fn inclusion_exclusion() {
        for (d, n) in [(2, 4), (2, 5)] {
            let vars = all_varieties(ctx(d, n));
            for a in &vars {
                for b in &vars {
                    let Some(meet) = intersect_richardson(a, b).unwrap() else {
                        continue;
                    };
                    for m in 0..=3 {
                        let lhs = count_union(&[a.clone(), b.clone()], m).unwrap();
                        let rhs = count_standard(a, m) + count_standard(b, m) - count_standard(&meet, m);
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn pieri_recursions() {
        for (d, n) in [(2, 4), (2, 5)] {
            for x in all_varieties(ctx(d, n)) {
                if x.w() == x.v() {
                    continue;
                }
                for m in 1..=4 {
                    let prev = count_standard(&x, m - 1);
                    let plus = count_union(&plus_boundary(&x), m).unwrap();
                    let minus = count_union(&minus_boundary(&x), m).unwrap();
                    assert_eq!(count_standard(&x, m), &prev + plus, "{x} m={m}");
                    assert_eq!(count_standard(&x, m), prev + minus, "{x} m={m}");
                }
            }
        }
    }

    #[test]
    fn monotone_under_inclusion() {
        let vars = all_varieties(ctx(2, 5));
        for a in &vars {
            for b in vars.iter().filter(|b| b.v().is_below(a.v()) && a.w().is_below(b.w())) {
                for m in 0..=3 {
                    assert!(count_standard(a, m) <= count_standard(b, m));
                }
            }
        }
    }

    #[test]
    fn hilbert_polynomial_examples() {
        let c = ctx(2, 4);
        let p = hilbert_polynomial(&rid(c, "1,3", "1,3")).unwrap();
        assert_eq!(p.coefficients(), &[BigRational::one()]);
        let full = hilbert_polynomial(&RichardsonId::full(c)).unwrap();
        assert_eq!(full.degree(), 4);
        for m in 0..12 {
            assert_eq!(full.eval(m), BigRational::from_integer(quadric_count(m)));
        }
        // (m+1)(m+2)^2(m+3)/12 expanded
        let twelfth = |k: i64| BigRational::new(k.into(), 12.into());
        assert_eq!(
            full.coefficients(),
            &[twelfth(12), twelfth(28), twelfth(23), twelfth(8), twelfth(1)]
        );
    }

    #[test]
    fn hilbert_degree_is_dimension() {
        for (d, n) in [(2, 4), (2, 5), (3, 6)] {
            for x in all_varieties(ctx(d, n)) {
                assert_eq!(hilbert_polynomial(&x).unwrap().degree(), dim_richardson(&x), "{x}");
            }
        }
    }

    #[test]
    fn degree_examples() {
        let c = ctx(2, 4);
        assert_eq!(degree_of_variety(&rid(c, "2,3", "2,3")).unwrap(), BigInt::one());
        assert_eq!(degree_of_variety(&RichardsonId::full(c)).unwrap(), BigInt::from(2));
        let x = rid(c, "2,4", "1,3");
        assert_eq!(degree_of_variety(&x).unwrap(), maximal_chain_count(&x));
    }

    #[test]
    fn chain_count_examples() {
        let c = ctx(2, 4);
        assert_eq!(maximal_chain_count(&rid(c, "2,3", "2,3")), BigInt::one());
        assert_eq!(maximal_chain_count(&RichardsonId::full(c)), BigInt::from(2));
        assert_eq!(maximal_chain_count(&rid(c, "2,4", "1,3")), BigInt::from(2));
    }

    #[test]
    fn degree_equals_chain_count() {
        for (d, n) in [(2, 4), (2, 5), (3, 6)] {
            for x in all_varieties(ctx(d, n)) {
                assert_eq!(degree_of_variety(&x).unwrap(), maximal_chain_count(&x), "{x}");
            }
        }
    }
}

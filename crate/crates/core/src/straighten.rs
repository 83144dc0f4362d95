//! Standard monomials and the straightening algorithm.
//!
//! A product p_{τ1}···p_{τm} is standard when τ1 >= τ2 >= ... >= τm in the
//! Bruhat order. Products of two incomparable coordinates are rewritten
//! with the quadratic shuffle relation until every term is standard; a
//! general monomial is rewritten at its first violation. Each rewrite
//! strictly increases the measure N_F = Σ l(τ_i) N^{m-i}, which bounds
//! the number of steps.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::index::{GrassContext, PluckerIndex, RichardsonId};
use crate::plucker::{plucker, random_matrix, MatrixPoint};
use crate::poset::length;

/// A product of Plücker coordinates, kept in the given factor order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    factors: Vec<PluckerIndex>,
}

impl Monomial {
    pub fn new(factors: Vec<PluckerIndex>) -> Self {
        Monomial { factors }
    }

    /// The degree-0 monomial 1.
    pub fn unit() -> Self {
        Monomial { factors: Vec::new() }
    }

    pub fn factors(&self) -> &[PluckerIndex] {
        &self.factors
    }

    pub fn degree(&self) -> usize {
        self.factors.len()
    }

    pub fn is_standard(&self) -> bool {
        self.first_violation().is_none()
    }

    /// The least 1-based position t with τ_{t-1} not >= τ_t.
    pub fn first_violation(&self) -> Option<usize> {
        self.factors
            .windows(2)
            .position(|p| !p[1].is_below(&p[0]))
            .map(|i| i + 2)
    }

    pub fn measure(&self) -> TerminationMeasure {
        TerminationMeasure::of(self)
    }

    pub fn evaluate(&self, a: &MatrixPoint) -> Result<BigRational> {
        self.factors
            .iter()
            .try_fold(BigRational::one(), |acc, t| Ok(acc * plucker(a, t)?))
    }

    /// Parses `"1,4;2,3"`.
    pub fn parse(ctx: GrassContext, text: &str) -> Result<Self> {
        if text.trim().is_empty() {
            return Ok(Monomial::unit());
        }
        let factors = text
            .split(';')
            .map(|s| ctx.parse_index(s))
            .collect::<Result<Vec<_>>>()?;
        Ok(Monomial { factors })
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, t) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "p[{t}]")?;
        }
        Ok(())
    }
}

/// N_F = Σ l(τ_i) N^{m-i} with base N = d(n-d) + 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TerminationMeasure(pub BigInt);

impl TerminationMeasure {
    pub fn of(m: &Monomial) -> Self {
        let Some(first) = m.factors.first() else {
            return TerminationMeasure(BigInt::zero());
        };
        let base = BigInt::from(first.context().dim() + 1);
        let value = m
            .factors
            .iter()
            .fold(BigInt::zero(), |acc, t| acc * &base + BigInt::from(length(t)));
        TerminationMeasure(value)
    }
}

/// A formal integer combination of monomials of equal degree, with terms
/// in canonical sorted order and no zero coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Combination {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Combination {
    pub fn zero() -> Self {
        Combination::default()
    }

    pub fn from_monomial(m: Monomial) -> Self {
        let mut c = Combination::zero();
        c.add(m, BigInt::one());
        c
    }

    pub fn add(&mut self, m: Monomial, coef: BigInt) {
        debug_assert!(self.terms.keys().next().is_none_or(|k| k.degree() == m.degree()));
        let entry = self.terms.entry(m).or_insert_with(BigInt::zero);
        *entry += coef;
        if entry.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn is_standard(&self) -> bool {
        self.terms.keys().all(Monomial::is_standard)
    }

    pub fn evaluate(&self, a: &MatrixPoint) -> Result<BigRational> {
        self.terms.iter().try_fold(BigRational::zero(), |acc, (m, c)| {
            Ok(acc + m.evaluate(a)? * BigRational::from_integer(c.clone()))
        })
    }
}

impl fmt::Display for Combination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c < &BigInt::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

/// Number of random matrices each new exchange relation is checked on.
pub const CERTIFY_SAMPLES: usize = 10;
const CERTIFY_SEED: u64 = 0x5eed_0002;

/// Straightening engine with a memo of degree-2 relations.
///
/// The memo is behind a lock; concurrent readers are fine and racing
/// inserts of the same key store identical values.
#[derive(Debug, Default)]
pub struct Straightener {
    memo: RwLock<HashMap<(PluckerIndex, PluckerIndex), Combination>>,
}

impl Straightener {
    pub fn new() -> Self {
        Straightener::default()
    }

    /// The standard expression of p_a p_b for incomparable a, b. Every
    /// term p_α p_β has α above both inputs and β below both.
    pub fn quadratic_relation(&self, a: &PluckerIndex, b: &PluckerIndex) -> Result<Combination> {
        a.same_context(b)?;
        if a.is_comparable(b) {
            return Err(Error::ComparablePair {
                a: a.to_string(),
                b: b.to_string(),
            });
        }
        let (lo, hi) = canonical_orientation(a, b);
        let key = (lo.clone(), hi.clone());
        if let Some(c) = self.memo.read().expect("memo lock").get(&key) {
            return Ok(c.clone());
        }
        let result = self.straighten_pair(lo, hi)?;
        certify(a, b, &result)?;
        self.memo
            .write()
            .expect("memo lock")
            .entry(key)
            .or_insert_with(|| result.clone());
        Ok(result)
    }

    fn straighten_pair(&self, lo: &PluckerIndex, hi: &PluckerIndex) -> Result<Combination> {
        let top_length = length(hi);
        let mut out = Combination::zero();
        for (coef, left, right) in shuffle_relation(lo, hi) {
            assert!(
                length(&left).max(length(&right)) > top_length,
                "exchange did not raise the leading length"
            );
            if right.is_below(&left) {
                out.add(Monomial::new(vec![left, right]), coef);
            } else if left.is_below(&right) {
                out.add(Monomial::new(vec![right, left]), coef);
            } else {
                for (m, c) in self.quadratic_relation(&left, &right)?.terms {
                    out.add(m, c * &coef);
                }
            }
        }
        Ok(out)
    }

    /// Rewrites `m` as a combination of standard monomials.
    pub fn straighten(&self, m: &Monomial) -> Result<Combination> {
        let mut done = Combination::zero();
        let mut pending: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        pending.insert(m.clone(), BigInt::one());
        while let Some((mono, coef)) = pending.pop_first() {
            let Some(t) = mono.first_violation() else {
                done.add(mono, coef);
                continue;
            };
            let (a, b) = (&mono.factors[t - 2], &mono.factors[t - 1]);
            let replacement: Vec<(Vec<PluckerIndex>, BigInt)> = if a.is_below(b) {
                vec![(vec![b.clone(), a.clone()], BigInt::one())]
            } else {
                self.quadratic_relation(a, b)?
                    .terms
                    .into_iter()
                    .map(|(m, c)| (m.factors, c))
                    .collect()
            };
            let before = mono.measure();
            for (pair, c) in replacement {
                let mut factors = mono.factors[..t - 2].to_vec();
                factors.extend(pair);
                factors.extend_from_slice(&mono.factors[t..]);
                let next = Monomial::new(factors);
                assert!(next.measure() > before, "termination measure did not increase");
                let entry = pending.entry(next).or_insert_with(BigInt::zero);
                *entry += &coef * c;
            }
            pending.retain(|_, c| !c.is_zero());
        }
        Ok(done)
    }
}

/// One-shot form of [`Straightener::quadratic_relation`].
pub fn quadratic_relation(a: &PluckerIndex, b: &PluckerIndex) -> Result<Combination> {
    Straightener::new().quadratic_relation(a, b)
}

/// One-shot form of [`Straightener::straighten`].
pub fn straighten(m: &Monomial) -> Result<Combination> {
    Straightener::new().straighten(m)
}

/// Keeps the terms all of whose factors lie in [v, w]; the others vanish
/// on X_w^v.
pub fn restrict(c: &Combination, x: &RichardsonId) -> Combination {
    Combination {
        terms: c
            .terms
            .iter()
            .filter(|(m, _)| m.factors.iter().all(|t| x.contains(t)))
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect(),
    }
}

// The member of larger length goes to the right (`hi`); ties by lex order.
fn canonical_orientation<'a>(a: &'a PluckerIndex, b: &'a PluckerIndex) -> (&'a PluckerIndex, &'a PluckerIndex) {
    if (length(a), a) < (length(b), b) {
        (a, b)
    } else {
        (b, a)
    }
}

/// The shuffle relation for the two-column tableau (lo | hi) at its first
/// row s with lo_s > hi_s: alternating over the d + 1 entries
/// lo_s..lo_d, hi_1..hi_s. Returns the terms other than p_lo p_hi, already
/// negated, so that p_lo p_hi = Σ coef · p_left p_right.
fn shuffle_relation(lo: &PluckerIndex, hi: &PluckerIndex) -> Vec<(BigInt, PluckerIndex, PluckerIndex)> {
    let (x, y) = (lo.entries(), hi.entries());
    let d = x.len();
    let n = lo.n();
    let s = (0..d).find(|&t| x[t] > y[t]).expect("incomparable pair has a violation");
    let pool: Vec<usize> = x[s..].iter().chain(&y[..=s]).copied().collect();
    let left_size = d - s;

    let mut out = Vec::new();
    for chosen in subsets(pool.len(), left_size) {
        if chosen.iter().copied().eq(0..left_size) {
            continue;
        }
        // listing the chosen positions first: each chosen c jumps over
        // the c - rank unchosen positions before it
        let inversions: usize = chosen.iter().enumerate().map(|(rank, &c)| c - rank).sum();
        let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
        let left: Vec<usize> = x[..s].iter().copied().chain(chosen.iter().map(|&i| pool[i])).collect();
        let right: Vec<usize> = (0..pool.len())
            .filter(|i| !chosen.contains(i))
            .map(|i| pool[i])
            .chain(y[s + 1..].iter().copied())
            .collect();
        let (Some((sl, left)), Some((sr, right))) = (sort_with_sign(left), sort_with_sign(right)) else {
            continue;
        };
        let coef = -(sign * sl * sr);
        out.push((
            BigInt::from(coef),
            PluckerIndex::from_sorted_unchecked(left, n),
            PluckerIndex::from_sorted_unchecked(right, n),
        ));
    }
    out
}

// k-subsets of 0..n as increasing position lists, lexicographic
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

// Sorts ascending; returns the permutation sign, or None on a repeat.
fn sort_with_sign(mut v: Vec<usize>) -> Option<(i32, Vec<usize>)> {
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|p| p[0] == p[1]) {
        return None;
    }
    Some((sign, v))
}

fn certify(a: &PluckerIndex, b: &PluckerIndex, result: &Combination) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(CERTIFY_SEED);
    let product = Monomial::new(vec![a.clone(), b.clone()]);
    for _ in 0..CERTIFY_SAMPLES {
        let m = random_matrix(a.context(), &mut rng);
        if product.evaluate(&m)? != result.evaluate(&m)? {
            return Err(Error::Certification(format!(
                "p[{a}]*p[{b}] != {result} on a random matrix"
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rank_rational;
    use crate::poset::enumerate_indices;

    fn ctx(d: usize, n: usize) -> GrassContext {
        GrassContext::new(d, n).unwrap()
    }

    fn mono(c: GrassContext, s: &str) -> Monomial {
        Monomial::parse(c, s).unwrap()
    }

    fn agrees_on_random_matrices(m: &Monomial, c: &Combination, seed: u64) -> bool {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ctx = m.factors()[0].context();
        (0..10).all(|_| {
            let a = random_matrix(ctx, &mut rng);
            m.evaluate(&a).unwrap() == c.evaluate(&a).unwrap()
        })
    }

    #[test]
    fn first_violation_examples() {
        let c = ctx(2, 4);
        assert_eq!(mono(c, "1,4;2,3").first_violation(), Some(2));
        assert_eq!(mono(c, "2,4;1,3").first_violation(), None);
        assert_eq!(mono(c, "1,2;3,4").first_violation(), Some(2));
        assert_eq!(mono(c, "3,4;2,4;1,4;2,3").first_violation(), Some(4));
        assert!(Monomial::unit().is_standard());
    }

    #[test]
    fn quadratic_relation_g24() {
        let c = ctx(2, 4);
        let rel = quadratic_relation(&c.parse_index("1,4").unwrap(), &c.parse_index("2,3").unwrap()).unwrap();
        let mut expect = Combination::zero();
        expect.add(mono(c, "2,4;1,3"), BigInt::one());
        expect.add(mono(c, "3,4;1,2"), -BigInt::one());
        assert_eq!(rel, expect);
        assert_eq!(rel.to_string(), "p[2,4]*p[1,3] - p[3,4]*p[1,2]");
    }

    #[test]
    fn quadratic_relation_g36_shape() {
        let c = ctx(3, 6);
        let a = c.parse_index("1,2,6").unwrap();
        let b = c.parse_index("3,4,5").unwrap();
        let rel = quadratic_relation(&a, &b).unwrap();
        assert!(!rel.is_empty());
        for (m, _) in rel.terms() {
            let (alpha, beta) = (&m.factors()[0], &m.factors()[1]);
            assert!(a.is_below(alpha) && b.is_below(alpha) && alpha != &a && alpha != &b);
            assert!(beta.is_below(&a) && beta.is_below(&b) && beta != &a && beta != &b);
        }
        assert!(agrees_on_random_matrices(&Monomial::new(vec![a, b]), &rel, 1));
    }

    #[test]
    fn comparable_pair_is_rejected() {
        let c = ctx(2, 4);
        let err = quadratic_relation(&c.parse_index("1,3").unwrap(), &c.parse_index("2,4").unwrap());
        assert!(matches!(err, Err(Error::ComparablePair { .. })));
    }

    #[test]
    fn straighten_examples() {
        let c = ctx(2, 4);
        let s = Straightener::new();
        let m = mono(c, "2,4;1,3");
        assert_eq!(s.straighten(&m).unwrap(), Combination::from_monomial(m));
        let m = mono(c, "1,4;2,3");
        let got = s.straighten(&m).unwrap();
        assert_eq!(got.to_string(), "p[2,4]*p[1,3] - p[3,4]*p[1,2]");
        let m = mono(c, "1,4;2,3;1,4");
        let got = s.straighten(&m).unwrap();
        assert!(got.is_standard());
        assert!(agrees_on_random_matrices(&m, &got, 2));
        assert_eq!(s.straighten(&Monomial::unit()).unwrap(), Combination::from_monomial(Monomial::unit()));
    }

    #[test]
    fn restrict_examples() {
        let c = ctx(2, 4);
        let rel = straighten(&mono(c, "1,4;2,3")).unwrap();
        assert_eq!(restrict(&rel, &RichardsonId::full(c)), rel);
        let x = RichardsonId::new(c.parse_index("2,4").unwrap(), c.parse_index("1,3").unwrap()).unwrap();
        assert_eq!(restrict(&rel, &x), Combination::from_monomial(mono(c, "2,4;1,3")));
        let p = c.parse_index("2,3").unwrap();
        let point = RichardsonId::new(p.clone(), p).unwrap();
        let mut comb = Combination::from_monomial(mono(c, "2,3;2,3"));
        comb.add(mono(c, "2,4;2,3"), BigInt::from(3));
        assert_eq!(restrict(&comb, &point), Combination::from_monomial(mono(c, "2,3;2,3")));
    }

    #[test]
    fn every_incomparable_pair_straightens_with_shape() {
        for (d, n) in [(2, 4), (2, 5), (3, 6)] {
            let s = Straightener::new();
            let all = enumerate_indices(ctx(d, n));
            for a in &all {
                for b in all.iter().filter(|b| !b.is_comparable(a)) {
                    let rel = s.quadratic_relation(a, b).unwrap();
                    for (m, _) in rel.terms() {
                        let (alpha, beta) = (&m.factors()[0], &m.factors()[1]);
                        assert!(a.is_below(alpha) && b.is_below(alpha));
                        assert!(beta.is_below(a) && beta.is_below(b));
                    }
                    let prod = Monomial::new(vec![a.clone(), b.clone()]);
                    assert!(agrees_on_random_matrices(&prod, &rel, 17));
                }
            }
        }
    }

    #[test]
    fn desk_scale_exchange_coefficients_are_units() {
        for (d, n) in [(2, 4), (2, 5), (3, 6)] {
            let s = Straightener::new();
            let all = enumerate_indices(ctx(d, n));
            for a in &all {
                for b in all.iter().filter(|b| !b.is_comparable(a)) {
                    let rel = s.quadratic_relation(a, b).unwrap();
                    assert!(rel.terms().all(|(_, c)| c == &BigInt::one() || c == &-BigInt::one()));
                }
            }
        }
    }

    #[test]
    fn cubic_monomials_straighten_to_equal_functions() {
        let c = ctx(2, 4);
        let all = enumerate_indices(c);
        let s = Straightener::new();
        for a in &all {
            for b in &all {
                for e in &all {
                    let m = Monomial::new(vec![a.clone(), b.clone(), e.clone()]);
                    let got = s.straighten(&m).unwrap();
                    assert!(got.is_standard());
                    assert!(agrees_on_random_matrices(&m, &got, 23));
                }
            }
        }
    }

    #[test]
    fn standard_quadrics_of_g24_are_a_basis() {
        let c = ctx(2, 4);
        let all = enumerate_indices(c);
        let mut standard = Vec::new();
        let mut every = Vec::new();
        for (i, a) in all.iter().enumerate() {
            for b in &all[i..] {
                let m = if a.is_below(b) {
                    Monomial::new(vec![b.clone(), a.clone()])
                } else {
                    Monomial::new(vec![a.clone(), b.clone()])
                };
                if m.is_standard() {
                    standard.push(m.clone());
                }
                every.push(m);
            }
        }
        assert_eq!((standard.len(), every.len()), (20, 21));
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let points: Vec<MatrixPoint> = (0..25).map(|_| random_matrix(c, &mut rng)).collect();
        let values: Vec<Vec<BigRational>> = standard
            .iter()
            .map(|m| points.iter().map(|p| m.evaluate(p).unwrap()).collect())
            .collect();
        assert_eq!(rank_rational(&values), 20);
        let s = Straightener::new();
        for m in &every {
            let got = s.straighten(m).unwrap();
            assert!(got.terms().all(|(t, _)| standard.contains(t)));
        }
    }

    #[test]
    fn measure_orders_by_leading_length() {
        let c = ctx(2, 4);
        assert!(mono(c, "2,4;1,3").measure() > mono(c, "1,4;2,3").measure());
        assert!(mono(c, "3,4;1,2").measure() > mono(c, "2,4;1,3").measure());
    }
}

//! Exhaustive cross-verification at small sizes.
//!
//! Every check is deterministic for a given seed, and the rendered report
//! carries no timings, so two runs can be compared byte for byte.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::index::{GrassContext, PluckerIndex, RichardsonId};
use crate::linalg::rank_rational_fast;
use crate::multiplicity::{deg_tau, mult_all, tangent_cone_hilbert};
use crate::plucker::{local_fn, measured_degree, patch_point, plucker, random_matrix, MatrixPoint, PatchAssignment};
use crate::poset::{
    boundary, enumerate_indices, join, length, lower_covers, meet, upper_covers, w0_conjugate, Side,
};
use crate::smt::{
    count_standard, count_union, degree_of_variety, enumerate_standard, hilbert_polynomial,
    maximal_chain_count, minus_boundary, plus_boundary,
};
use crate::straighten::{Monomial, Straightener, CERTIFY_SAMPLES};
use crate::tangent::{ambient_dim, is_smooth_at, jacobian_rank, smooth_product_check, tangent_basis};

pub const DEFAULT_SEED: u64 = 0x5eed_0001;

const KEPT_FAILURES: usize = 5;

/// (2,4) and (2,5), plus (3,6) when `deep`.
pub fn default_contexts(deep: bool) -> Vec<GrassContext> {
    let mut sizes = vec![(2, 4), (2, 5)];
    if deep {
        sizes.push((3, 6));
    }
    sizes
        .into_iter()
        .map(|(d, n)| GrassContext::new(d, n).expect("valid size"))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub context: GrassContext,
    pub name: &'static str,
    pub cases: usize,
    pub failure_count: usize,
    /// The first few failures.
    pub failures: Vec<String>,
    /// Observations that are recorded but never fail the check.
    pub note: Option<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelftestReport {
    pub seed: u64,
    pub checks: Vec<CheckResult>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn failed_checks(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed()).count()
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "selftest seed={}", self.seed).unwrap();
        for c in &self.checks {
            let status = if c.passed() { "PASS" } else { "FAIL" };
            write!(out, "{status}  G({})  {:<28} cases={}", c.context, c.name, c.cases).unwrap();
            if c.failure_count > 0 {
                write!(out, " failures={}", c.failure_count).unwrap();
            }
            if let Some(note) = &c.note {
                write!(out, "  [{note}]").unwrap();
            }
            out.push('\n');
            for f in &c.failures {
                writeln!(out, "      {f}").unwrap();
            }
        }
        writeln!(
            out,
            "{} checks, {} failed",
            self.checks.len(),
            self.failed_checks()
        )
        .unwrap();
        out
    }
}

struct Tally {
    context: GrassContext,
    name: &'static str,
    cases: usize,
    failure_count: usize,
    failures: Vec<String>,
    note: Option<String>,
}

impl Tally {
    fn new(context: GrassContext, name: &'static str) -> Self {
        Tally {
            context,
            name,
            cases: 0,
            failure_count: 0,
            failures: vec![],
            note: None,
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.fail(what());
        }
    }

    fn fail(&mut self, what: String) {
        self.failure_count += 1;
        if self.failures.len() < KEPT_FAILURES {
            self.failures.push(what);
        }
    }

    fn attempt<T>(&mut self, r: Result<T>, what: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(t) => Some(t),
            Err(e) => {
                self.cases += 1;
                self.fail(format!("{}: {e}", what()));
                None
            }
        }
    }

    fn finish(self) -> CheckResult {
        CheckResult {
            context: self.context,
            name: self.name,
            cases: self.cases,
            failure_count: self.failure_count,
            failures: self.failures,
            note: self.note,
        }
    }
}

struct Fixture {
    ctx: GrassContext,
    all: Vec<PluckerIndex>,
    varieties: Vec<RichardsonId>,
}

impl Fixture {
    fn new(ctx: GrassContext) -> Self {
        let all = enumerate_indices(ctx);
        let varieties = all
            .iter()
            .flat_map(|w| {
                all.iter()
                    .filter(|v| v.is_below(w))
                    .map(|v| RichardsonId::new(w.clone(), v.clone()).expect("w >= v"))
            })
            .collect();
        Fixture { ctx, all, varieties }
    }

    fn triples(&self) -> impl Iterator<Item = (&RichardsonId, &PluckerIndex)> {
        self.varieties
            .iter()
            .flat_map(move |x| self.all.iter().filter(|t| x.contains(t)).map(move |t| (x, t)))
    }
}

/// Runs every check on every context. Each context gets its own generator
/// derived from `seed`.
pub fn run_selftest(contexts: &[GrassContext], seed: u64) -> SelftestReport {
    let mut checks = Vec::new();
    for &ctx in contexts {
        let fx = Fixture::new(ctx);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((ctx.d() as u64) << 32 | ctx.n() as u64));
        checks.push(poset_order(&fx));
        checks.push(poset_lattice(&fx));
        checks.push(poset_grading(&fx));
        checks.push(poset_w0(&fx));
        checks.push(poset_boundary(&fx));
        checks.push(plucker_patch(&fx, &mut rng));
        checks.push(plucker_degree(&fx, &mut rng));
        checks.push(straighten_pairs(&fx, &mut rng));
        checks.push(straighten_basis(&fx, &mut rng));
        checks.push(smt_counts(&fx));
        checks.push(smt_pieri(&fx));
        checks.push(smt_hilbert(&fx));
        checks.push(tangent_laws(&fx));
        checks.push(mult_agreement(&fx));
        checks.push(mult_embedding(&fx));
    }
    SelftestReport { seed, checks }
}

fn poset_order(fx: &Fixture) -> CheckResult {
    let mut t = Tally::new(fx.ctx, "poset.partial_order");
    for a in &fx.all {
        t.check(a.is_below(a), || format!("{a} not <= itself"));
        for b in &fx.all {
            if a != b && a.is_below(b) {
                t.check(!b.is_below(a), || format!("{a} and {b} below each other"));
            }
            for c in &fx.all {
                if a.is_below(b) && b.is_below(c) {
                    t.check(a.is_below(c), || format!("{a} <= {b} <= {c} but not {a} <= {c}"));
                }
            }
        }
    }
    t.finish()
}

fn poset_lattice(fx: &Fixture) -> CheckResult {
    let mut t = Tally::new(fx.ctx, "poset.lattice");
    for a in &fx.all {
        for b in &fx.all {
            let (Ok(m), Ok(j)) = (meet(a, b), join(a, b)) else {
                t.fail(format!("meet/join failed on {a}, {b}"));
                continue;
            };
            t.check(m.is_below(a) && m.is_below(b), || format!("meet {m} not below {a}, {b}"));
            t.check(a.is_below(&j) && b.is_below(&j), || format!("join {j} not above {a}, {b}"));
            for c in &fx.all {
                if c.is_below(a) && c.is_below(b) {
                    t.check(c.is_below(&m), || format!("{c} below {a}, {b} but not their meet"));
                }
                if a.is_below(c) && b.is_below(c) {
                    t.check(j.is_below(c), || format!("{c} above {a}, {b} but not their join"));
                }
            }
        }
    }
    t.finish()
}

fn poset_grading(fx: &Fixture) -> CheckResult {
    let mut t = Tally::new(fx.ctx, "poset.grading");
    t.check(length(&fx.ctx.bottom()) == 0, || "bottom has nonzero length".into());
    t.check(length(&fx.ctx.top()) == fx.ctx.dim(), || "top length is not d(n-d)".into());
    for a in &fx.all {
        for c in lower_covers(a) {
            t.check(length(&c) + 1 == length(a) && c.is_below(a), || format!("bad lower cover {c} of {a}"));
        }
        for c in upper_covers(a) {
            t.check(length(&c) == length(a) + 1 && a.is_below(&c), || format!("bad upper cover {c} of {a}"));
        }
        for b in &fx.all {
            if a.is_below(b) && a != b {
                t.check(length(a) < length(b), || format!("{a} < {b} without length increase"));
            }
        }
    }
    t.finish()
}

fn poset_w0(fx: &Fixture) -> CheckResult {
    let mut t = Tally::new(fx.ctx, "poset.w0_map");
    for a in &fx.all {
        let c = w0_conjugate(a);
        t.check(w0_conjugate(&c) == *a, || format!("w0 not an involution at {a}"));
        t.check(length(&c) == fx.ctx.dim() - length(a), || format!("w0 length at {a}"));
        for b in &fx.all {
            if a.is_below(b) {
                t.check(w0_conjugate(b).is_below(&c), || format!("w0 does not reverse {a} <= {b}"));
            }
        }
    }
    t.finish()
}

fn poset_boundary(fx: &Fixture) -> CheckResult {
    let mut t = Tally::new(fx.ctx, "poset.boundary");
    for (x, tau) in fx.triples() {
        for side in [Side::Plus, Side::Minus] {
            let end = match side {
                Side::Plus => x.w(),
                Side::Minus => x.v(),
            };
            match boundary(x, tau, side) {
                Ok(parts) => {
                    // elements one step in from the end, still on the far side of tau
                    let expect: Vec<PluckerIndex> = fx
                        .all
                        .iter()
                        .filter(|c| match side {
                            Side::Plus => c.is_below(x.w()) && tau.is_below(c) && length(c) + 1 == length(x.w()),
                            Side::Minus => x.v().is_below(c) && c.is_below(tau) && length(c) == length(x.v()) + 1,
                        })
                        .cloned()
                        .collect();
                    t.check(end != tau && sorted(parts) == sorted(expect), || {
                        format!("{side:?} boundary of {x} at {tau}")
                    });
                }
                Err(Error::BoundaryInapplicable(_)) => {
                    t.check(end == tau, || format!("{side:?} boundary of {x} at {tau} refused"))
                }
                Err(e) => t.fail(format!("{x} at {tau}: {e}")),
            }
        }
    }
    t.finish()
}

fn sorted(mut v: Vec<PluckerIndex>) -> Vec<PluckerIndex> {
    v.sort();
    v
}

fn plucker_patch(fx: &Fixture, rng: &mut ChaCha8Rng) -> CheckResult {
    let mut t = Tally::new(fx.ctx, "plucker.patch");
    let zero = PatchAssignment::zero(fx.ctx);
    for tau in &fx.all {
        let a = PatchAssignment::random(fx.ctx, rng);
        if let Some(p) = t.attempt(patch_point(fx.ctx, tau, &a), || format!("patch at {tau}")) {
            t.check(plucker(&p, tau).ok() == Some(BigRational::one()), || format!("p_tau != 1 on patch {tau}"));
        }
        for theta in &fx.all {
            let expect = if theta == tau { BigRational::one() } else { BigRational::zero() };
            t.check(local_fn(theta, tau, &zero).ok() == Some(expect), || {
                format!("local p_{theta}/p_{tau} at the origin")
            });
        }
        let e = MatrixPoint::coordinate_point(tau);
        for theta in &fx.all {
            let expect = if theta == tau { BigRational::one() } else { BigRational::zero() };
            t.check(plucker(&e, theta).ok() == Some(expect), || format!("p_{theta}(e_{tau})"));
        }
    }
    t.finish()
}

fn plucker_degree(fx: &Fixture, rng: &mut ChaCha8Rng) -> CheckResult {
    let mut t = Tally::new(fx.ctx, "plucker.local_degree");
    for tau in &fx.all {
        for theta in &fx.all {
            if let Some(m) = t.attempt(measured_degree(theta, tau, rng), || format!("degree of {theta} at {tau}")) {
                t.check(m == deg_tau(tau, theta), || {
                    format!("measured degree {m} of {theta} at {tau}, expected {}", deg_tau(tau, theta))
                });
            }
        }
    }
    t.finish()
}

fn straighten_pairs(fx: &Fixture, rng: &mut ChaCha8Rng) -> CheckResult {
    let mut t = Tally::new(fx.ctx, "straighten.quadratic");
    let engine = Straightener::new();
    let samples: Vec<MatrixPoint> = (0..CERTIFY_SAMPLES).map(|_| random_matrix(fx.ctx, rng)).collect();
    for (i, a) in fx.all.iter().enumerate() {
        for b in &fx.all[i + 1..] {
            if a.is_comparable(b) {
                continue;
            }
            let Some(rel) = t.attempt(engine.quadratic_relation(a, b), || format!("p_{a} p_{b}")) else {
                continue;
            };
            let shaped = rel.terms().all(|(m, c)| {
                let f = m.factors();
                !c.is_zero()
                    && f.len() == 2
                    && a.is_below(&f[0])
                    && b.is_below(&f[0])
                    && f[1].is_below(a)
                    && f[1].is_below(b)
            });
            t.check(shaped, || format!("shape of p_{a} p_{b} = {rel}"));
            let lhs = Monomial::new(vec![a.clone(), b.clone()]);
            for s in &samples {
                let same = match (lhs.evaluate(s), rel.evaluate(s)) {
                    (Ok(x), Ok(y)) => x == y,
                    _ => false,
                };
                t.check(same, || format!("p_{a} p_{b} = {rel} fails at a sample point"));
            }
        }
    }
    t.finish()
}

fn straighten_basis(fx: &Fixture, rng: &mut ChaCha8Rng) -> CheckResult {
    let mut t = Tally::new(fx.ctx, "straighten.degree2_basis");
    let full = RichardsonId::full(fx.ctx);
    let standard: Vec<Monomial> = enumerate_standard(&full, 2)
        .into_iter()
        .map(|c| Monomial::new(c.chain))
        .collect();
    let points: Vec<MatrixPoint> = (0..standard.len() + 5).map(|_| random_matrix(fx.ctx, rng)).collect();
    let rows: Option<Vec<Vec<BigRational>>> = points
        .iter()
        .map(|p| standard.iter().map(|m| m.evaluate(p).ok()).collect())
        .collect();
    match rows {
        Some(rows) => {
            let rank = rank_rational_fast(&rows);
            t.check(rank == standard.len(), || format!("rank {rank} of {} standard monomials", standard.len()));
        }
        None => t.fail("evaluation failed".into()),
    }
    let engine = Straightener::new();
    let mut total = 0;
    for a in &fx.all {
        for b in &fx.all {
            total += 1;
            let m = Monomial::new(vec![a.clone(), b.clone()]);
            if let Some(c) = t.attempt(engine.straighten(&m), || format!("straighten {m}")) {
                t.check(c.is_standard(), || format!("{m} -> {c} not standard"));
            }
        }
    }
    t.note = Some(format!("{} standard, {total} monomials straightened", standard.len()));
    t.finish()
}

fn smt_counts(fx: &Fixture) -> CheckResult {
    let mut t = Tally::new(fx.ctx, "smt.count_vs_enumeration");
    for x in &fx.varieties {
        for m in 0..=3 {
            let listed = enumerate_standard(x, m);
            let all_standard = listed.iter().all(|c| c.is_standard_on(x));
            t.check(all_standard, || format!("nonstandard chain listed for {x}, m = {m}"));
            let n = BigInt::from(listed.len());
            t.check(count_standard(x, m) == n, || format!("count of {x} at m = {m}"));
        }
    }
    t.finish()
}

fn smt_pieri(fx: &Fixture) -> CheckResult {
    let mut t = Tally::new(fx.ctx, "smt.pieri");
    for x in &fx.varieties {
        if x.w() == x.v() {
            continue;
        }
        for m in 1..=4 {
            let prev = count_standard(x, m - 1);
            let here = count_standard(x, m);
            for (label, parts) in [("plus", plus_boundary(x)), ("minus", minus_boundary(x))] {
                if let Some(b) = t.attempt(count_union(&parts, m), || format!("{label} boundary of {x}")) {
                    t.check(here == &prev + b, || format!("{label} recursion for {x} at m = {m}"));
                }
            }
        }
    }
    t.finish()
}

fn smt_hilbert(fx: &Fixture) -> CheckResult {
    let mut t = Tally::new(fx.ctx, "smt.hilbert_degree");
    for x in &fx.varieties {
        let u = crate::poset::dim_richardson(x);
        if let Some(h) = t.attempt(hilbert_polynomial(x), || format!("Hilbert polynomial of {x}")) {
            t.check(h.degree() == u, || format!("Hilbert degree of {x}"));
            for m in 0..=u + 4 {
                t.check(h.eval(m as i64) == BigRational::from_integer(count_standard(x, m)), || {
                    format!("Hilbert polynomial of {x} at m = {m}")
                });
            }
        }
        if let Some(deg) = t.attempt(degree_of_variety(x), || format!("degree of {x}")) {
            t.check(deg == maximal_chain_count(x), || format!("degree of {x} vs chain count"));
        }
    }
    t.finish()
}

fn tangent_laws(fx: &Fixture) -> CheckResult {
    let mut t = Tally::new(fx.ctx, "tangent.smoothness");
    for (x, tau) in fx.triples() {
        let Some(b) = t.attempt(tangent_basis(x, tau), || format!("{x} at {tau}")) else {
            continue;
        };
        let u = crate::poset::dim_richardson(x);
        let smooth = is_smooth_at(x, tau).unwrap_or(false);
        t.check(b.dim() >= u, || format!("tangent space of {x} at {tau} too small"));
        t.check((b.dim() == u) == smooth, || format!("smoothness of {x} at {tau}"));
        t.check(b.reflections().iter().all(|(_, r)| x.contains(r)), || format!("reflection leaves {x}"));
        t.check(jacobian_rank(x, tau).ok() == Some(ambient_dim(fx.ctx) - b.dim()), || {
            format!("Jacobian rank of {x} at {tau}")
        });
        if let Some(r) = t.attempt(smooth_product_check(x, tau), || format!("{x} at {tau}")) {
            t.check(r.conjunction_holds(), || format!("conjunction law for {x} at {tau}"));
        }
    }
    t.finish()
}

fn mult_agreement(fx: &Fixture) -> CheckResult {
    let mut t = Tally::new(fx.ctx, "mult.four_way");
    let mut unit_singular = 0;
    for (x, tau) in fx.triples() {
        let Some(r) = t.attempt(mult_all(x, tau), || format!("{x} at {tau}")) else {
            continue;
        };
        t.check(r.agree, || {
            format!(
                "{x} at {tau}: {} {} {} {}",
                r.recursive, r.product, r.determinantal, r.oracle
            )
        });
        t.check(r.combined_recursion != Some(false), || format!("combined recursion for {x} at {tau}"));
        let smooth = is_smooth_at(x, tau).unwrap_or(false);
        if smooth {
            t.check(r.recursive.is_one(), || format!("smooth point {tau} of {x} has mult {}", r.recursive));
        } else if r.recursive.is_one() {
            unit_singular += 1;
        }
    }
    t.note = Some(format!("singular points of multiplicity 1: {unit_singular}"));
    t.finish()
}

fn mult_embedding(fx: &Fixture) -> CheckResult {
    let mut t = Tally::new(fx.ctx, "mult.cone_degree_one");
    let mut equal = 0;
    for (x, tau) in fx.triples() {
        let (Ok(first), Ok(b)) = (tangent_cone_hilbert(x, tau, 1), tangent_basis(x, tau)) else {
            t.fail(format!("{x} at {tau}"));
            continue;
        };
        let z1 = fx
            .all
            .iter()
            .filter(|th| x.contains(th) && th.is_comparable(tau) && deg_tau(tau, th) == 1)
            .count();
        t.check(first == BigInt::from(z1), || format!("degree-1 cone piece of {x} at {tau}"));
        t.check(first >= BigInt::from(b.dim()), || format!("cone of {x} at {tau} below tangent space"));
        if first == BigInt::from(b.dim()) {
            equal += 1;
        }
    }
    t.note = Some(format!("equal to tangent dimension in {equal} of {} cases", t.cases / 2));
    t.finish()
}

//! Exact evaluation of Plücker coordinates, the affine patch around a
//! T-fixed point, and homogeneity measurement of the local functions
//! f_{θ,τ} = p_θ / p_τ.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::index::{GrassContext, PluckerIndex};
use crate::linalg::det_rational;

/// An n×d matrix with exact rational entries; its column span is a point
/// of G(d, n) when it has full rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixPoint {
    ctx: GrassContext,
    rows: Vec<Vec<BigRational>>,
}

impl MatrixPoint {
    pub fn new(ctx: GrassContext, rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.len() != ctx.n() || rows.iter().any(|r| r.len() != ctx.d()) {
            return Err(Error::MatrixShape {
                rows: rows.len(),
                cols,
                n: ctx.n(),
                d: ctx.d(),
            });
        }
        Ok(MatrixPoint { ctx, rows })
    }

    /// The coordinate point e_θ: row θ_j is the j-th unit row.
    pub fn coordinate_point(theta: &PluckerIndex) -> Self {
        let ctx = theta.context();
        let mut rows = vec![vec![BigRational::zero(); ctx.d()]; ctx.n()];
        for (j, &r) in theta.entries().iter().enumerate() {
            rows[r - 1][j] = BigRational::one();
        }
        MatrixPoint { ctx, rows }
    }

    /// Parses n whitespace separated rows of d rationals (`p/q` or integers).
    /// Blank lines and lines starting with `#` are skipped.
    pub fn parse(ctx: GrassContext, text: &str) -> Result<Self> {
        let rows = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| l.split_whitespace().map(parse_rational).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        MatrixPoint::new(ctx, rows)
    }

    pub fn context(&self) -> GrassContext {
        self.ctx
    }

    pub fn rows(&self) -> &[Vec<BigRational>] {
        &self.rows
    }

    pub fn swap_columns(&mut self, a: usize, b: usize) {
        for row in &mut self.rows {
            row.swap(a, b);
        }
    }

    /// Multiplies column `col` by `factor`.
    pub fn scale_column(&mut self, col: usize, factor: &BigRational) {
        for row in &mut self.rows {
            row[col] = &row[col] * factor;
        }
    }
}

impl fmt::Display for MatrixPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

pub fn parse_rational(text: &str) -> Result<BigRational> {
    let err = |reason: &str| Error::Parse {
        input: text.to_string(),
        reason: reason.to_string(),
    };
    let (num, den) = match text.split_once('/') {
        Some((p, q)) => (p, q),
        None => (text, "1"),
    };
    let num: BigInt = num.trim().parse().map_err(|_| err("bad numerator"))?;
    let den: BigInt = den.trim().parse().map_err(|_| err("bad denominator"))?;
    if den.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(BigRational::new(num, den))
}

/// p_θ(A): the minor on rows θ, in increasing row order.
pub fn plucker(a: &MatrixPoint, theta: &PluckerIndex) -> Result<BigRational> {
    if theta.context() != a.ctx {
        return Err(Error::ContextMismatch);
    }
    let minor: Vec<Vec<BigRational>> = theta
        .entries()
        .iter()
        .map(|&r| a.rows[r - 1].clone())
        .collect();
    Ok(det_rational(&minor))
}

/// Values for the d(n-d) coordinates x_{kj} of the patch U_τ⁻e_τ.
///
/// Labels follow the identity chart: the label row k runs over d+1..n
/// and addresses the (k-d)-th row of the matrix not in τ (ascending), so
/// the same label names the same root coordinate for every τ.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PatchAssignment {
    values: BTreeMap<(usize, usize), BigRational>,
}

impl PatchAssignment {
    pub fn new() -> Self {
        PatchAssignment::default()
    }

    /// The assignment with every coordinate zero.
    pub fn zero(ctx: GrassContext) -> Self {
        let mut a = PatchAssignment::new();
        for k in ctx.d() + 1..=ctx.n() {
            for j in 1..=ctx.d() {
                a.set(k, j, BigRational::zero());
            }
        }
        a
    }

    pub fn set(&mut self, label_row: usize, col: usize, value: BigRational) -> &mut Self {
        self.values.insert((label_row, col), value);
        self
    }

    pub fn with(mut self, label_row: usize, col: usize, value: i64) -> Self {
        self.set(label_row, col, BigRational::from_integer(value.into()));
        self
    }

    pub fn get(&self, label_row: usize, col: usize) -> Option<&BigRational> {
        self.values.get(&(label_row, col))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Every value multiplied by `lambda`.
    pub fn scaled(&self, lambda: &BigRational) -> Self {
        PatchAssignment {
            values: self
                .values
                .iter()
                .map(|(k, v)| (*k, v * lambda))
                .collect(),
        }
    }

    pub fn random<R: Rng + ?Sized>(ctx: GrassContext, rng: &mut R) -> Self {
        let mut a = PatchAssignment::new();
        for k in ctx.d() + 1..=ctx.n() {
            for j in 1..=ctx.d() {
                a.set(k, j, random_rational(rng));
            }
        }
        a
    }

    fn check(&self, ctx: GrassContext) -> Result<()> {
        if let Some(&(k, j)) = self
            .values
            .keys()
            .find(|&&(k, j)| k <= ctx.d() || k > ctx.n() || j < 1 || j > ctx.d())
        {
            return Err(Error::PatchAssignment(format!("unexpected label x{k}{j}")));
        }
        if self.values.len() != ctx.dim() {
            return Err(Error::PatchAssignment(format!(
                "expected {} labels, got {}",
                ctx.dim(),
                self.values.len()
            )));
        }
        Ok(())
    }
}

/// The point of U_τ⁻e_τ with coordinates `a`: row τ_j is the j-th unit
/// row and the remaining rows carry the assignment.
pub fn patch_point(ctx: GrassContext, tau: &PluckerIndex, a: &PatchAssignment) -> Result<MatrixPoint> {
    if tau.context() != ctx {
        return Err(Error::ContextMismatch);
    }
    a.check(ctx)?;
    let mut m = MatrixPoint::coordinate_point(tau);
    for (offset, row) in tau.complement().into_iter().enumerate() {
        let label = ctx.d() + 1 + offset;
        for j in 1..=ctx.d() {
            m.rows[row - 1][j - 1] = a.values[&(label, j)].clone();
        }
    }
    Ok(m)
}

/// f_{θ,τ} = p_θ / p_τ evaluated on the patch at `a`.
pub fn local_fn(theta: &PluckerIndex, tau: &PluckerIndex, a: &PatchAssignment) -> Result<BigRational> {
    theta.same_context(tau)?;
    let m = patch_point(tau.context(), tau, a)?;
    let p_tau = plucker(&m, tau)?;
    debug_assert!(!p_tau.is_zero());
    Ok(plucker(&m, theta)? / p_tau)
}

const MEASURE_ATTEMPTS: usize = 32;
const SCALINGS: [i64; 3] = [2, 3, 5];

/// Homogeneity degree of f_{θ,τ} measured by scaling: f(λa) = λ^k f(a)
/// for three values of λ at a random non-vanishing point a.
pub fn measured_degree<R: Rng + ?Sized>(theta: &PluckerIndex, tau: &PluckerIndex, rng: &mut R) -> Result<usize> {
    theta.same_context(tau)?;
    let ctx = tau.context();
    for _ in 0..MEASURE_ATTEMPTS {
        let a = PatchAssignment::random(ctx, rng);
        let base = local_fn(theta, tau, &a)?;
        if base.is_zero() {
            continue;
        }
        let mut degree = None;
        for lambda in SCALINGS {
            let lambda = BigRational::from_integer(lambda.into());
            let ratio = local_fn(theta, tau, &a.scaled(&lambda))? / &base;
            let k = (0..=ctx.d())
                .find(|&k| num_traits::pow(lambda.clone(), k) == ratio)
                .ok_or_else(|| Error::Interpolation(format!("f_({theta}),({tau}) is not homogeneous")))?;
            if degree.is_some_and(|d| d != k) {
                return Err(Error::Interpolation(format!(
                    "inconsistent scaling degrees for f_({theta}),({tau})"
                )));
            }
            degree = Some(k);
        }
        return Ok(degree.expect("at least one scaling"));
    }
    Err(Error::DegreeMeasurement(MEASURE_ATTEMPTS))
}

/// A rational with numerator in [-20, 20] and denominator in [1, 7].
pub fn random_rational<R: Rng + ?Sized>(rng: &mut R) -> BigRational {
    let num: i64 = rng.random_range(-20..=20);
    let den: i64 = rng.random_range(1..=7);
    BigRational::new(num.into(), den.into())
}

/// A random n×d matrix with small rational entries.
pub fn random_matrix<R: Rng + ?Sized>(ctx: GrassContext, rng: &mut R) -> MatrixPoint {
    let rows = (0..ctx.n())
        .map(|_| (0..ctx.d()).map(|_| random_rational(rng)).collect())
        .collect();
    MatrixPoint { ctx, rows }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::enumerate_indices;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(x: i64) -> BigRational {
        BigRational::from_integer(x.into())
    }

    fn g24() -> GrassContext {
        GrassContext::new(2, 4).unwrap()
    }

    fn idx(s: &str) -> PluckerIndex {
        g24().parse_index(s).unwrap()
    }

    #[test]
    fn coordinate_points_are_dual_to_indices() {
        let ctx = GrassContext::new(3, 6).unwrap();
        let all = enumerate_indices(ctx);
        for j in &all {
            let e = MatrixPoint::coordinate_point(j);
            for i in &all {
                let expect = if i == j { q(1) } else { q(0) };
                assert_eq!(plucker(&e, i).unwrap(), expect);
            }
        }
    }

    #[test]
    fn column_swap_negates() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let a = random_matrix(g24(), &mut rng);
        let mut b = a.clone();
        b.swap_columns(0, 1);
        for t in enumerate_indices(g24()) {
            assert_eq!(plucker(&b, &t).unwrap(), -plucker(&a, &t).unwrap());
        }
    }

    #[test]
    fn column_scaling_is_linear() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let ctx = GrassContext::new(3, 6).unwrap();
        let a = random_matrix(ctx, &mut rng);
        let lambda = BigRational::new(7.into(), 3.into());
        let mut b = a.clone();
        b.scale_column(1, &lambda);
        for t in enumerate_indices(ctx) {
            assert_eq!(plucker(&b, &t).unwrap(), plucker(&a, &t).unwrap() * &lambda);
        }
    }

    #[test]
    fn g24_quadric_vanishes() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let a = random_matrix(g24(), &mut rng);
            let p = |s: &str| plucker(&a, &idx(s)).unwrap();
            let rel = p("1,2") * p("3,4") - p("1,3") * p("2,4") + p("1,4") * p("2,3");
            assert!(rel.is_zero());
        }
    }

    #[test]
    fn patch_at_identity_is_coordinate_point() {
        let tau = idx("1,2");
        let m = patch_point(g24(), &tau, &PatchAssignment::zero(g24())).unwrap();
        assert_eq!(m, MatrixPoint::coordinate_point(&tau));
    }

    #[test]
    fn patch_expressions_for_g24() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let a = PatchAssignment::random(g24(), &mut rng);
            let x = |k, j| a.get(k, j).unwrap().clone();
            // tau = (2,3)
            let m = patch_point(g24(), &idx("2,3"), &a).unwrap();
            assert_eq!(plucker(&m, &idx("1,2")).unwrap(), -x(3, 2));
            assert_eq!(plucker(&m, &idx("1,3")).unwrap(), x(3, 1));
            assert_eq!(plucker(&m, &idx("1,4")).unwrap(), x(3, 1) * x(4, 2) - x(4, 1) * x(3, 2));
            assert_eq!(plucker(&m, &idx("2,3")).unwrap(), q(1));
            assert_eq!(plucker(&m, &idx("2,4")).unwrap(), x(4, 2));
            assert_eq!(plucker(&m, &idx("3,4")).unwrap(), -x(4, 1));
            // tau = (1,2)
            let m = patch_point(g24(), &idx("1,2"), &a).unwrap();
            assert_eq!(plucker(&m, &idx("1,3")).unwrap(), x(3, 2));
            assert_eq!(plucker(&m, &idx("1,4")).unwrap(), x(4, 2));
            assert_eq!(plucker(&m, &idx("3,4")).unwrap(), x(3, 1) * x(4, 2) - x(4, 1) * x(3, 2));
        }
    }

    #[test]
    fn patch_rejects_bad_labels() {
        let a = PatchAssignment::zero(g24()).with(1, 1, 0);
        assert!(matches!(
            patch_point(g24(), &idx("1,2"), &a),
            Err(Error::PatchAssignment(_))
        ));
        let mut a = PatchAssignment::new();
        a.set(3, 1, q(0));
        assert!(patch_point(g24(), &idx("1,2"), &a).is_err());
    }

    #[test]
    fn local_function_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let tau = idx("2,3");
        for _ in 0..3 {
            let a = PatchAssignment::random(g24(), &mut rng);
            assert_eq!(local_fn(&tau, &tau, &a).unwrap(), q(1));
        }
        let a = PatchAssignment::zero(g24()).with(3, 1, 1).with(4, 2, 1);
        assert_eq!(local_fn(&idx("1,4"), &idx("2,3"), &a).unwrap(), q(1));
        let a = PatchAssignment::zero(g24()).with(3, 2, 5);
        assert_eq!(local_fn(&idx("1,3"), &idx("1,2"), &a).unwrap(), q(5));
    }

    #[test]
    fn measured_degree_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let tau = idx("1,2");
        assert_eq!(measured_degree(&tau, &tau, &mut rng).unwrap(), 0);
        assert_eq!(measured_degree(&idx("3,4"), &tau, &mut rng).unwrap(), 2);
        assert_eq!(measured_degree(&idx("1,3"), &tau, &mut rng).unwrap(), 1);
    }

    #[test]
    fn parse_matrix_text() {
        let m = MatrixPoint::parse(g24(), "1 0\n# comment\n0 1\n1/2 -3\n2 5/7\n").unwrap();
        assert_eq!(m.rows()[2][0], BigRational::new(1.into(), 2.into()));
        assert_eq!(plucker(&m, &idx("1,2")).unwrap(), q(1));
        assert!(MatrixPoint::parse(g24(), "1 0\n0 1\n").is_err());
        assert!(MatrixPoint::parse(g24(), "1 0\n0 1\n1/0 1\n1 1").is_err());
    }
}

//! Multiplicity of X_w^v at a T-fixed point e_τ, computed four ways:
//!
//! * `recursive`: the boundary recursion
//!   mult(X_w^v) · deg_τ(w) = Σ_{w' ∈ ∂⁺} mult(X_{w'}^v), and its ∂⁻ twin;
//! * `product`: mult(X_w) · mult(X^v), each by the binomial determinant;
//! * `determinantal`: one determinant of the product of both binomial
//!   matrices;
//! * `oracle`: the degree of the tangent cone, read off the Hilbert
//!   function of its graded basis of chains in Z_τ.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::index::{PluckerIndex, RichardsonId};
use crate::linalg::{binomial, det_bareiss, factorial, mat_mul};
use crate::poly::Polynomial;
use crate::poset::{boundary, dim_richardson, interval, w0_conjugate, Side};

/// d minus the number of shared entries of τ and θ: the degree of
/// p_θ/p_τ in the patch coordinates around e_τ.
pub fn deg_tau(tau: &PluckerIndex, theta: &PluckerIndex) -> usize {
    let shared = theta.entries().iter().filter(|&&e| tau.contains(e)).count();
    tau.d() - shared
}

/// Recursion over ∂⁺ while w > τ, then over ∂⁻ once w = τ.
pub fn mult_recursive(x: &RichardsonId, tau: &PluckerIndex) -> Result<BigInt> {
    x.require_point(tau)?;
    let mut memo = HashMap::new();
    recurse(x, tau, &mut memo)
}

fn recurse(
    x: &RichardsonId,
    tau: &PluckerIndex,
    memo: &mut HashMap<RichardsonId, BigInt>,
) -> Result<BigInt> {
    if let Some(m) = memo.get(x) {
        return Ok(m.clone());
    }
    let value = if x.w() == tau && x.v() == tau {
        BigInt::one()
    } else {
        let (side, degree) = if x.w() != tau {
            (Side::Plus, deg_tau(tau, x.w()))
        } else {
            (Side::Minus, deg_tau(tau, x.v()))
        };
        let mut sum = BigInt::zero();
        for b in boundary(x, tau, side)? {
            let next = match side {
                Side::Plus => RichardsonId::new(b, x.v().clone())?,
                Side::Minus => RichardsonId::new(x.w().clone(), b)?,
            };
            sum += recurse(&next, tau, memo)?;
        }
        let (q, r) = sum.div_rem(&BigInt::from(degree));
        if !r.is_zero() {
            return Err(Error::InexactDivision {
                numerator: sum.to_string(),
                denominator: degree.to_string(),
            });
        }
        q
    };
    memo.insert(x.clone(), value.clone());
    Ok(value)
}

/// κ_q = #{τ_p > w_q}.
fn kappa(w: &PluckerIndex, tau: &PluckerIndex) -> Vec<usize> {
    w.entries()
        .iter()
        .map(|&i| tau.entries().iter().filter(|&&t| t > i).count())
        .collect()
}

/// γ_q = #{τ_p < v_q}.
fn gamma(v: &PluckerIndex, tau: &PluckerIndex) -> Vec<usize> {
    v.entries()
        .iter()
        .map(|&j| tau.entries().iter().filter(|&&t| t < j).count())
        .collect()
}

/// Column q holds binomial(top_q, r - shift_q) for rows r = 0..d-1.
fn binomial_matrix(tops: &[usize], shifts: &[usize]) -> Vec<Vec<BigInt>> {
    let d = tops.len();
    (0..d)
        .map(|r| {
            tops.iter()
                .zip(shifts)
                .map(|(&top, &shift)| binomial(top as i64, r as i64 - shift as i64))
                .collect()
        })
        .collect()
}

fn signed(value: BigInt, exponent: usize) -> BigInt {
    if exponent.is_multiple_of(2) {
        value
    } else {
        -value
    }
}

fn require_positive(value: BigInt, what: &str) -> Result<BigInt> {
    if value.is_positive() {
        Ok(value)
    } else {
        Err(Error::Multiplicity(format!("{what} gave {value}")))
    }
}

/// mult of the Schubert variety X_w at e_τ as a signed d×d binomial
/// determinant.
pub fn mult_schubert_det(w: &PluckerIndex, tau: &PluckerIndex) -> Result<BigInt> {
    w.same_context(tau)?;
    if !tau.is_below(w) {
        return Err(Error::NotInInterval {
            tau: tau.to_string(),
            w: w.to_string(),
            v: w.context().bottom().to_string(),
        });
    }
    let k = kappa(w, tau);
    let m = binomial_matrix(w.entries(), &k);
    let value = signed(det_bareiss(&m), k.iter().sum());
    require_positive(value, "Schubert determinant")
}

/// mult of the opposite Schubert variety X^v at e_τ, through the w0 map.
pub fn mult_opposite(v: &PluckerIndex, tau: &PluckerIndex) -> Result<BigInt> {
    v.same_context(tau)?;
    if !v.is_below(tau) {
        return Err(Error::NotInInterval {
            tau: tau.to_string(),
            w: v.context().top().to_string(),
            v: v.to_string(),
        });
    }
    mult_schubert_det(&w0_conjugate(v), &w0_conjugate(tau))
}

pub fn mult_product(x: &RichardsonId, tau: &PluckerIndex) -> Result<BigInt> {
    x.require_point(tau)?;
    Ok(mult_schubert_det(x.w(), tau)? * mult_opposite(x.v(), tau)?)
}

/// (-1)^c det(A · B) with A the Schubert binomial matrix of (w, τ) and B
/// the one built from n + 1 - v_q with shifts γ_q, columns taken from
/// q = d down to 1.
pub fn mult_richardson_det(x: &RichardsonId, tau: &PluckerIndex) -> Result<BigInt> {
    x.require_point(tau)?;
    let n = tau.n();
    let k = kappa(x.w(), tau);
    let g = gamma(x.v(), tau);
    let a = binomial_matrix(x.w().entries(), &k);
    let tops: Vec<usize> = x.v().entries().iter().rev().map(|&j| n + 1 - j).collect();
    let shifts: Vec<usize> = g.iter().rev().copied().collect();
    let b = binomial_matrix(&tops, &shifts);
    let c: usize = k.iter().sum::<usize>() + g.iter().sum::<usize>();
    let value = signed(det_bareiss(&mat_mul(&a, &b)), c);
    require_positive(value, "Richardson determinant")
}

/// Counts the graded basis of the tangent cone of X_w^v at e_τ: weakly
/// decreasing chains in (Z_τ ∩ [v, w]) \ {τ}, graded by Σ deg_τ.
///
/// τ itself is left out of the chains: f_{τ,τ} = 1, so a chain through τ
/// is the same function as the chain without it.
#[derive(Debug, Clone)]
pub struct GradedChainCounter {
    tau: PluckerIndex,
    elems: Vec<PluckerIndex>,
    grades: Vec<usize>,
    below: Vec<Vec<usize>>,
    // by_top[r][i]: chains of grade r whose first element is elems[i]
    by_top: Vec<Vec<BigInt>>,
    series: Vec<BigInt>,
}

impl GradedChainCounter {
    pub fn new(x: &RichardsonId, tau: &PluckerIndex) -> Result<Self> {
        x.require_point(tau)?;
        let elems: Vec<PluckerIndex> = interval(x)
            .into_iter()
            .filter(|t| t != tau && t.is_comparable(tau))
            .collect();
        let grades = elems.iter().map(|t| deg_tau(tau, t)).collect();
        let below = elems
            .iter()
            .map(|a| (0..elems.len()).filter(|&j| elems[j].is_below(a)).collect())
            .collect();
        Ok(GradedChainCounter {
            tau: tau.clone(),
            elems,
            grades,
            below,
            by_top: vec![],
            series: vec![],
        })
    }

    pub fn tau(&self) -> &PluckerIndex {
        &self.tau
    }

    /// The participating elements with their grades.
    pub fn grading(&self) -> impl Iterator<Item = (&PluckerIndex, usize)> {
        self.elems.iter().zip(self.grades.iter().copied())
    }

    /// dim of the degree r piece of the tangent cone.
    pub fn hilbert(&mut self, r: usize) -> BigInt {
        while self.series.len() <= r {
            self.extend();
        }
        self.series[r].clone()
    }

    fn extend(&mut self) {
        let r = self.by_top.len();
        let row: Vec<BigInt> = (0..self.elems.len())
            .map(|i| {
                let g = self.grades[i];
                if r < g {
                    return BigInt::zero();
                }
                let rest = r - g;
                let tail: BigInt = if rest == 0 {
                    BigInt::one()
                } else {
                    self.below[i].iter().map(|&j| &self.by_top[rest][j]).sum()
                };
                tail
            })
            .collect();
        let total = if r == 0 {
            BigInt::one()
        } else {
            row.iter().sum()
        };
        self.by_top.push(row);
        self.series.push(total);
    }
}

/// φ(r) for the tangent cone of X_w^v at e_τ.
pub fn tangent_cone_hilbert(x: &RichardsonId, tau: &PluckerIndex, r: usize) -> Result<BigInt> {
    Ok(GradedChainCounter::new(x, tau)?.hilbert(r))
}

/// How many values past the fitting window must also be predicted.
pub const ORACLE_LOOKAHEAD: usize = 3;

/// Fits the degree (u - 1) polynomial through φ on a window starting at
/// R = u (advancing up to 4u if the look-ahead check fails) and returns
/// its leading coefficient times (u - 1)!.
pub fn mult_oracle(x: &RichardsonId, tau: &PluckerIndex) -> Result<BigInt> {
    let mut counter = GradedChainCounter::new(x, tau)?;
    let u = dim_richardson(x);
    if u == 0 {
        return Ok(BigInt::one());
    }
    for start in u..=4 * u {
        let values: Vec<BigInt> = (start..start + u + ORACLE_LOOKAHEAD)
            .map(|r| counter.hilbert(r))
            .collect();
        let poly = Polynomial::interpolate(start as i64, &values[..u]);
        let predicts = (u..u + ORACLE_LOOKAHEAD).all(|i| {
            poly.eval((start + i) as i64) == BigRational::from_integer(values[i].clone())
        });
        if !predicts {
            continue;
        }
        let lead = poly
            .coefficients()
            .get(u - 1)
            .cloned()
            .unwrap_or_else(BigRational::zero);
        let mult = lead * BigRational::from_integer(factorial(u - 1));
        if !crate::linalg::is_positive_integer(&mult) {
            return Err(Error::Multiplicity(format!(
                "tangent cone degree of {x} at {tau} is {mult}"
            )));
        }
        return Ok(mult.to_integer());
    }
    Err(Error::Multiplicity(format!(
        "tangent cone Hilbert function of {x} at {tau} did not stabilise by r = {}",
        4 * u
    )))
}

/// The four multiplicities side by side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityReport {
    pub recursive: BigInt,
    pub product: BigInt,
    pub determinantal: BigInt,
    pub oracle: BigInt,
    pub agree: bool,
    /// The two-sided recursion, checked when w > τ > v.
    pub combined_recursion: Option<bool>,
}

pub fn mult_all(x: &RichardsonId, tau: &PluckerIndex) -> Result<MultiplicityReport> {
    let recursive = mult_recursive(x, tau)?;
    let product = mult_product(x, tau)?;
    let determinantal = mult_richardson_det(x, tau)?;
    let oracle = mult_oracle(x, tau)?;
    let agree = recursive == product && product == determinantal && determinantal == oracle;
    let combined_recursion = combined_recursion_holds(x, tau, &recursive)?;
    Ok(MultiplicityReport {
        recursive,
        product,
        determinantal,
        oracle,
        agree,
        combined_recursion,
    })
}

/// mult · (deg_τ w + deg_τ v) = Σ_{∂⁺} mult + Σ_{∂⁻} mult, for w > τ > v.
pub fn combined_recursion_holds(x: &RichardsonId, tau: &PluckerIndex, mult: &BigInt) -> Result<Option<bool>> {
    if x.w() == tau || x.v() == tau {
        return Ok(None);
    }
    let lhs = mult * BigInt::from(deg_tau(tau, x.w()) + deg_tau(tau, x.v()));
    let mut rhs = BigInt::zero();
    for w1 in boundary(x, tau, Side::Plus)? {
        rhs += mult_recursive(&RichardsonId::new(w1, x.v().clone())?, tau)?;
    }
    for v1 in boundary(x, tau, Side::Minus)? {
        rhs += mult_recursive(&RichardsonId::new(x.w().clone(), v1)?, tau)?;
    }
    Ok(Some(lhs == rhs))
}

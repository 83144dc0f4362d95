//! Univariate polynomials with exact rational coefficients, enough for
//! interpolating Hilbert functions.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::linalg::factorial;

/// Coefficients in increasing degree; no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    coefficients: Vec<BigRational>,
}

impl Polynomial {
    pub fn new(mut coefficients: Vec<BigRational>) -> Self {
        while coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        Polynomial { coefficients }
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coefficients
    }

    /// Degree, with the zero polynomial reported as degree 0.
    pub fn degree(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn leading(&self) -> BigRational {
        self.coefficients.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, x: i64) -> BigRational {
        let x = BigRational::from_integer(x.into());
        self.coefficients
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * &x + c)
    }

    /// The unique polynomial of degree < values.len() through
    /// (start + i, values[i]), by Newton forward differences.
    pub fn interpolate(start: i64, values: &[BigInt]) -> Self {
        let mut diffs: Vec<BigInt> = values.to_vec();
        let mut leading_diffs = Vec::with_capacity(values.len());
        for _ in 0..values.len() {
            leading_diffs.push(diffs[0].clone());
            diffs = diffs.windows(2).map(|p| &p[1] - &p[0]).collect();
        }
        // Σ_j Δ^j y_0 · binomial(x - start, j)
        let mut result = vec![BigRational::zero(); values.len().max(1)];
        let mut falling = vec![BigRational::one()];
        for (j, delta) in leading_diffs.iter().enumerate() {
            let scale = BigRational::new(delta.clone(), factorial(j));
            for (k, c) in falling.iter().enumerate() {
                result[k] += c * &scale;
            }
            // falling *= (x - start - j)
            let shift = BigRational::from_integer(BigInt::from(start + j as i64));
            let mut next = vec![BigRational::zero(); falling.len() + 1];
            for (k, c) in falling.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * &shift;
            }
            falling = next;
        }
        Polynomial::new(result)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})m")?,
                _ => write!(f, "({c})m^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn interpolation_reproduces_integer_polynomials(
            coefs in proptest::collection::vec(-20i64..20, 1..6),
            start in -5i64..5,
        ) {
            let p = Polynomial::new(coefs.iter().map(|&c| BigRational::from_integer(c.into())).collect());
            let values: Vec<BigInt> = (0..coefs.len())
                .map(|i| p.eval(start + i as i64).to_integer())
                .collect();
            let q = Polynomial::interpolate(start, &values);
            prop_assert_eq!(q, p);
        }
    }

    #[test]
    fn squares() {
        let values: Vec<BigInt> = (0..3).map(|r: i64| BigInt::from((r + 1) * (r + 1))).collect();
        let p = Polynomial::interpolate(0, &values);
        let one = BigRational::one();
        assert_eq!(p.coefficients(), &[one.clone(), BigRational::from_integer(2.into()), one]);
        assert_eq!(p.eval(6), BigRational::from_integer(49.into()));
        assert_eq!(p.to_string(), "(1)m^2 + (2)m + 1");
    }
}

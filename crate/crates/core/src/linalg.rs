//! Small exact linear algebra over the integers and the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Determinant of a square integer matrix by fraction-free (Bareiss)
/// elimination. Every intermediate division is exact.
pub fn det_bareiss(matrix: &[Vec<BigInt>]) -> BigInt {
    let n = matrix.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = matrix.to_vec();
    let mut sign = 1;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                debug_assert!((&num % &prev).is_zero());
                m[i][j] = num / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Determinant over the rationals by Gaussian elimination.
pub fn det_rational(matrix: &[Vec<BigRational>]) -> BigRational {
    let n = matrix.len();
    let mut m: Vec<Vec<BigRational>> = matrix.to_vec();
    let mut det = BigRational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return BigRational::zero();
        };
        if p != k {
            m.swap(k, p);
            det = -det;
        }
        let pivot = m[k][k].clone();
        det *= &pivot;
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let factor = &m[i][k] / &pivot;
            for j in k..n {
                let delta = &factor * &m[k][j];
                m[i][j] -= delta;
            }
        }
    }
    det
}

/// Rank of a rational matrix (any shape). Rows are cleared of
/// denominators and then reduced fraction-free.
pub fn rank_rational(matrix: &[Vec<BigRational>]) -> usize {
    let rows: Vec<Vec<BigInt>> = matrix
        .iter()
        .map(|row| {
            let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
        })
        .collect();
    rank_integer(&rows)
}

/// Rank of an integer matrix by fraction-free echelon reduction.
pub fn rank_integer(matrix: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = matrix.to_vec();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for i in rank + 1..rows {
            for j in c + 1..cols {
                let num = &m[i][j] * &m[rank][c] - &m[i][c] * &m[rank][j];
                debug_assert!((&num % &prev).is_zero());
                m[i][j] = num / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[rank][c].clone();
        rank += 1;
    }
    rank
}

/// 2^61 - 1.
pub const MERSENNE_61: u64 = (1 << 61) - 1;

/// Rank of the reduction of a rational matrix modulo the prime `p`, or
/// None if some denominator vanishes mod p. Never exceeds the rank over
/// the rationals, so a full modular rank certifies full rational rank.
pub fn rank_mod_prime(matrix: &[Vec<BigRational>], p: u64) -> Option<usize> {
    let modulus = BigInt::from(p);
    let reduce = |x: &BigInt| -> u64 {
        let r = x.mod_floor(&modulus);
        r.try_into().expect("reduced below p")
    };
    let mut m: Vec<Vec<u64>> = Vec::with_capacity(matrix.len());
    for row in matrix {
        let mut out = Vec::with_capacity(row.len());
        for x in row {
            let den = reduce(x.denom());
            if den == 0 {
                return None;
            }
            out.push(mul_mod(reduce(x.numer()), inv_mod(den, p), p));
        }
        m.push(out);
    }
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = inv_mod(m[rank][c], p);
        for i in rank + 1..rows {
            if m[i][c] == 0 {
                continue;
            }
            let factor = mul_mod(m[i][c], inv, p);
            for j in c..cols {
                let delta = mul_mod(factor, m[rank][j], p);
                m[i][j] = (m[i][j] + p - delta) % p;
            }
        }
        rank += 1;
    }
    Some(rank)
}

/// Exact rank, trying the modular shortcut first when it can settle the
/// question (full column rank).
pub fn rank_rational_fast(matrix: &[Vec<BigRational>]) -> usize {
    let cols = matrix.first().map_or(0, Vec::len);
    let full = cols.min(matrix.len());
    match rank_mod_prime(matrix, MERSENNE_61) {
        Some(r) if r == full => r,
        _ => rank_rational(matrix),
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Integer product of two square matrices.
pub fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| {
            (0..cols)
                .map(|j| (0..inner).map(|k| &a[i][k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// binomial(top, bottom), zero when bottom < 0 or bottom > top.
pub fn binomial(top: i64, bottom: i64) -> BigInt {
    if bottom < 0 || top < 0 || bottom > top {
        return BigInt::zero();
    }
    let k = bottom.min(top - bottom);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(top - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub(crate) fn is_positive_integer(x: &BigRational) -> bool {
    x.is_integer() && x.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn int_matrix(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    fn to_rational(m: &[Vec<BigInt>]) -> Vec<Vec<BigRational>> {
        m.iter()
            .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
            .collect()
    }

    // Leibniz expansion; exponential but fine for n <= 5
    fn det_leibniz(m: &[Vec<BigInt>]) -> BigInt {
        let n = m.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut total = BigInt::zero();
        permute(&mut perm, 0, m, &mut total);
        total
    }

    fn permute(perm: &mut Vec<usize>, k: usize, m: &[Vec<BigInt>], total: &mut BigInt) {
        let n = perm.len();
        if k == n {
            let mut inv = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if perm[i] > perm[j] {
                        inv += 1;
                    }
                }
            }
            let prod: BigInt = (0..n).map(|i| m[i][perm[i]].clone()).product();
            if inv % 2 == 0 {
                *total += prod;
            } else {
                *total -= prod;
            }
            return;
        }
        for i in k..n {
            perm.swap(k, i);
            permute(perm, k + 1, m, total);
            perm.swap(k, i);
        }
    }

    #[test]
    fn small_determinants() {
        assert_eq!(det_bareiss(&int_matrix(&[&[1, 1], &[2, 4]])), BigInt::from(2));
        assert_eq!(det_bareiss(&int_matrix(&[&[0, 1], &[1, 4]])), BigInt::from(-1));
        assert_eq!(det_bareiss(&int_matrix(&[&[1, 4], &[4, 17]])), BigInt::from(1));
        assert_eq!(det_bareiss(&[]), BigInt::one());
        assert_eq!(det_bareiss(&int_matrix(&[&[1, 2], &[2, 4]])), BigInt::zero());
    }

    #[test]
    fn binomial_conventions() {
        assert_eq!(binomial(4, -1), BigInt::zero());
        assert_eq!(binomial(2, 3), BigInt::zero());
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(0, 0), BigInt::one());
        assert_eq!(factorial(5), BigInt::from(120));
    }

    // plain rational row reduction
    fn rank_gauss(matrix: &[Vec<BigRational>]) -> usize {
        let mut m = matrix.to_vec();
        let cols = m.first().map_or(0, Vec::len);
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            for i in rank + 1..m.len() {
                let factor = &m[i][c] / &m[rank][c];
                for j in c..cols {
                    let delta = &factor * &m[rank][j];
                    m[i][j] -= delta;
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn rank_examples() {
        let m = to_rational(&int_matrix(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]));
        assert_eq!(rank_rational(&m), 2);
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let third = BigRational::new(BigInt::from(1), BigInt::from(3));
        let m = vec![vec![half.clone(), third.clone()], vec![third * BigInt::from(3), half * BigInt::from(3)]];
        assert_eq!(rank_rational(&m), 2);
        assert_eq!(rank_integer(&int_matrix(&[&[0, 0], &[0, 0]])), 0);
        // singular mod 5 only
        let m = to_rational(&int_matrix(&[&[1, 2], &[3, 1]]));
        assert_eq!(rank_mod_prime(&m, 5), Some(1));
        assert_eq!(rank_rational(&m), 2);
        assert_eq!(rank_mod_prime(&[vec![BigRational::new(1.into(), 5.into())]], 5), None);
    }

    proptest! {
        #[test]
        fn bareiss_matches_leibniz(n in 1usize..5, seed in proptest::collection::vec(-9i64..10, 16)) {
            let m: Vec<Vec<BigInt>> = (0..n)
                .map(|i| (0..n).map(|j| BigInt::from(seed[i * 4 + j])).collect())
                .collect();
            let expect = det_leibniz(&m);
            prop_assert_eq!(det_bareiss(&m), expect.clone());
            prop_assert_eq!(det_rational(&to_rational(&m)), BigRational::from_integer(expect));
        }

        #[test]
        fn fraction_free_rank_matches_gauss(
            rows in 1usize..6,
            cols in 1usize..6,
            num in proptest::collection::vec(-3i64..4, 25),
            den in proptest::collection::vec(1i64..4, 25),
        ) {
            let m: Vec<Vec<BigRational>> = (0..rows)
                .map(|i| (0..cols).map(|j| BigRational::new(num[i * 5 + j].into(), den[i * 5 + j].into())).collect())
                .collect();
            let exact = rank_gauss(&m);
            prop_assert_eq!(rank_rational(&m), exact);
            prop_assert_eq!(rank_rational_fast(&m), exact);
            prop_assert!(rank_mod_prime(&m, 5).is_none_or(|r| r <= exact));
        }

        #[test]
        fn determinant_is_multiplicative(a in proptest::collection::vec(-5i64..6, 9), b in proptest::collection::vec(-5i64..6, 9)) {
            let to_m = |v: &[i64]| -> Vec<Vec<BigInt>> {
                (0..3).map(|i| (0..3).map(|j| BigInt::from(v[i * 3 + j])).collect()).collect()
            };
            let (ma, mb) = (to_m(&a), to_m(&b));
            prop_assert_eq!(det_bareiss(&mat_mul(&ma, &mb)), det_bareiss(&ma) * det_bareiss(&mb));
        }
    }
}

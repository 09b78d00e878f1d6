//! Exact integer and rational arithmetic plus the elementary number-theoretic
//! primitives used throughout the crate.
//!
//! Rationals are `num_rational::BigRational`, which is always kept in lowest
//! terms with a positive denominator. Everything here is a pure function.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Shorthand for an integral rational.
pub fn rat(value: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(value.into())
}

/// Shorthand for `num / den`; panics on a zero denominator.
pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// Renders a rational as `p` or `p/q`, never as a decimal.
pub fn format_rational(q: &BigRational) -> String {
    q.to_string()
}

/// Parses `p` or `p/q` (optionally signed). The result is reduced.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let trimmed = text.trim();
    let parsed: BigRational = trimmed
        .parse()
        .map_err(|_| Error::ParseRational(text.to_string()))?;
    Ok(parsed)
}

pub fn factorial(m: i64) -> Result<BigInt> {
    if m < 0 {
        return Err(Error::OutOfRange {
            name: "m",
            min: 0,
            value: m,
        });
    }
    Ok((2..=m).fold(BigInt::one(), |acc, i| acc * i))
}

/// `m!! = m (m-2) (m-4) ...`, with `(-1)!! = 0!! = 1`.
pub fn double_factorial(m: i64) -> Result<BigInt> {
    if m < -1 {
        return Err(Error::OutOfRange {
            name: "m",
            min: -1,
            value: m,
        });
    }
    let mut acc = BigInt::one();
    let mut i = m;
    while i > 1 {
        acc *= i;
        i -= 2;
    }
    Ok(acc)
}

pub fn gcd(a: u64, b: u64) -> Result<u64> {
    if a == 0 || b == 0 {
        return Err(Error::OutOfRange {
            name: if a == 0 { "a" } else { "b" },
            min: 1,
            value: 0,
        });
    }
    Ok(num_integer::gcd(a, b))
}

/// Möbius function by trial factorization.
pub fn mobius(n: u64) -> Result<i8> {
    if n == 0 {
        return Err(Error::OutOfRange {
            name: "n",
            min: 1,
            value: 0,
        });
    }
    let mut rest = n;
    let mut sign = 1i8;
    let mut p = 2u64;
    while p * p <= rest {
        if rest % p == 0 {
            rest /= p;
            if rest % p == 0 {
                return Ok(0);
            }
            sign = -sign;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        sign = -sign;
    }
    Ok(sign)
}

/// Möbius values for `0..=limit` from a linear sieve; index 0 holds 0.
pub fn mobius_sieve(limit: usize) -> Vec<i8> {
    let mut mu = vec![0i8; limit + 1];
    if limit == 0 {
        return mu;
    }
    mu[1] = 1;
    let mut composite = vec![false; limit + 1];
    let mut primes: Vec<usize> = Vec::new();
    for i in 2..=limit {
        if !composite[i] {
            primes.push(i);
            mu[i] = -1;
        }
        for &p in &primes {
            let multiple = i * p;
            if multiple > limit {
                break;
            }
            composite[multiple] = true;
            if i % p == 0 {
                mu[multiple] = 0;
                break;
            }
            mu[multiple] = -mu[i];
        }
    }
    mu
}

/// Mertens function `M(n) = sum_{k <= n} mu(k)`.
pub fn mertens(n: u64) -> i64 {
    mobius_sieve(n as usize).iter().map(|&m| i64::from(m)).sum()
}

/// Fibonacci numbers indexed so that `F_1 = F_2 = 1`.
pub fn fibonacci(m: i64) -> Result<BigInt> {
    if m < 1 {
        return Err(Error::OutOfRange {
            name: "m",
            min: 1,
            value: m,
        });
    }
    let (mut prev, mut cur) = (BigInt::zero(), BigInt::one());
    for _ in 1..m {
        let next = &prev + &cur;
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(cur)
}

/// Number of divisors of `n` by trial division over `1..=n`.
///
/// Deliberately naive: this is the reference every analytic route is
/// compared against.
pub fn divisor_count_oracle(n: u64) -> u64 {
    (1..=n).filter(|k| n % k == 0).count() as u64
}

/// A number under test together with a candidate divisor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NaturalPair {
    pub n: u64,
    pub k: u64,
}

impl NaturalPair {
    pub fn new(n: u64, k: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::OutOfRange {
                name: "n",
                min: 1,
                value: 0,
            });
        }
        if k == 0 {
            return Err(Error::OutOfRange {
                name: "k",
                min: 1,
                value: 0,
            });
        }
        Ok(Self { n, k })
    }

    pub fn divides(&self) -> bool {
        self.n % self.k == 0
    }

    /// `j = n / k` when `k | n`.
    pub fn quotient(&self) -> Option<u64> {
        self.divides().then(|| self.n / self.k)
    }

    pub fn divisor_point(&self) -> Option<DivisorPoint> {
        self.quotient().map(|j| DivisorPoint {
            n: self.n,
            k: self.k,
            j,
        })
    }
}

/// A lattice point `(n, k)` with `k | n`; `j` is the ray it sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DivisorPoint {
    pub n: u64,
    pub k: u64,
    pub j: u64,
}

impl DivisorPoint {
    pub fn new(n: u64, k: u64) -> Option<Self> {
        NaturalPair::new(n, k).ok()?.divisor_point()
    }

    /// Point on ray `j` at divisor `k`; `None` if either is zero.
    pub fn from_ray(k: u64, j: u64) -> Option<Self> {
        if k == 0 || j == 0 {
            return None;
        }
        Some(Self { n: j * k, k, j })
    }
}

/// Every divisor point with `n <= limit`, ordered by `(n, k)`.
pub fn divisor_points(limit: u64) -> Vec<DivisorPoint> {
    let mut points: Vec<DivisorPoint> = (1..=limit)
        .flat_map(|k| (1..=limit / k).map(move |j| DivisorPoint { n: j * k, k, j }))
        .collect();
    points.sort();
    points
}

/// `sum_{n <= limit} sigma_0(n)`, via the oracle.
pub fn divisor_summatory_oracle(limit: u64) -> u64 {
    (1..=limit).map(divisor_count_oracle).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn factorial_values() {
        assert_eq!(factorial(0).unwrap(), BigInt::from(1));
        assert_eq!(factorial(5).unwrap(), BigInt::from(120));
        // iterated multiplication in u64
        let oracle: u64 = (1..=20u64).product();
        assert_eq!(oracle, 2432902008176640000);
        assert_eq!(factorial(20).unwrap(), BigInt::from(oracle));
        assert!(factorial(-1).is_err());
    }

    #[test]
    fn factorial_ratio() {
        for m in 1..=200 {
            let q = factorial(m).unwrap() / factorial(m - 1).unwrap();
            assert_eq!(q, BigInt::from(m));
        }
    }

    #[test]
    fn double_factorial_values() {
        assert_eq!(double_factorial(-1).unwrap(), BigInt::from(1));
        assert_eq!(double_factorial(0).unwrap(), BigInt::from(1));
        assert_eq!(double_factorial(5).unwrap(), BigInt::from(15));
        assert_eq!(double_factorial(8).unwrap(), BigInt::from(8 * 6 * 4 * 2));
        assert_eq!(double_factorial(8).unwrap(), BigInt::from(384));
        assert!(double_factorial(-2).is_err());
    }

    #[test]
    fn gcd_values() {
        assert_eq!(gcd(2, 4).unwrap(), 2);
        assert_eq!(gcd(12, 18).unwrap(), 6);
        assert_eq!(gcd(1, 977).unwrap(), 1);
        assert!(gcd(0, 3).is_err());
        assert!(gcd(3, 0).is_err());
    }

    #[test]
    fn mobius_values() {
        assert_eq!(mobius(1).unwrap(), 1);
        assert_eq!(mobius(6).unwrap(), 1);
        assert_eq!(mobius(4).unwrap(), 0);
        assert_eq!(mobius(30).unwrap(), -1);
        assert_eq!(mobius(97).unwrap(), -1);
        assert!(mobius(0).is_err());
    }

    #[test]
    fn sieve_agrees_with_trial_factorization() {
        let sieve = mobius_sieve(5000);
        for n in 1..=5000u64 {
            assert_eq!(sieve[n as usize], mobius(n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn mobius_divisor_sum_is_delta() {
        for n in 1..=10_000u64 {
            let total: i64 = (1..=n)
                .filter(|d| n % d == 0)
                .map(|d| i64::from(mobius(d).unwrap()))
                .sum();
            assert_eq!(total, i64::from(n == 1), "n = {n}");
        }
    }

    #[test]
    fn mertens_small() {
        assert_eq!(mertens(1), 1);
        assert_eq!(mertens(5), -2);
        assert_eq!(mertens(10), -1);
    }

    #[test]
    fn fibonacci_values() {
        assert_eq!(fibonacci(1).unwrap(), BigInt::from(1));
        assert_eq!(fibonacci(2).unwrap(), BigInt::from(1));
        assert_eq!(fibonacci(5).unwrap(), BigInt::from(5));
        // linear recurrence oracle
        let mut seq = vec![0u64, 1, 1];
        while seq.len() <= 10 {
            let l = seq.len();
            seq.push(seq[l - 1] + seq[l - 2]);
        }
        assert_eq!(seq[10], 55);
        assert_eq!(fibonacci(10).unwrap(), BigInt::from(seq[10]));
        assert!(fibonacci(0).is_err());
    }

    #[test]
    fn divisor_count_values() {
        assert_eq!(divisor_count_oracle(1), 1);
        assert_eq!(divisor_count_oracle(6), 4);
        assert_eq!(divisor_count_oracle(12), 6);
        assert_eq!(divisor_count_oracle(36), 9);
    }

    #[test]
    fn natural_pair_quotient() {
        let p = NaturalPair::new(12, 4).unwrap();
        assert_eq!(p.quotient(), Some(3));
        assert_eq!(NaturalPair::new(12, 5).unwrap().quotient(), None);
        assert!(NaturalPair::new(0, 1).is_err());
        assert!(NaturalPair::new(1, 0).is_err());
    }

    #[test]
    fn divisor_points_count() {
        let pts = divisor_points(10);
        assert_eq!(pts.len() as u64, divisor_summatory_oracle(10));
        assert_eq!(pts.len(), 27);
        assert!(pts.iter().all(|p| p.n == p.j * p.k && p.k <= p.n));
    }

    #[test]
    fn rational_formatting() {
        assert_eq!(format_rational(&ratio(-2, 4)), "-1/2");
        assert_eq!(format_rational(&rat(7)), "7");
        assert_eq!(parse_rational(" 6/-4 ").ok(), Some(ratio(-3, 2)));
        assert!(parse_rational("1.5").is_err());
        assert!(parse_rational("1/0").is_err());
    }

    proptest! {
        #[test]
        fn gcd_divides_and_commutes(a in 1u64..1_000_000, b in 1u64..1_000_000) {
            let g = gcd(a, b).unwrap();
            prop_assert_eq!(a % g, 0);
            prop_assert_eq!(b % g, 0);
            prop_assert_eq!(g, gcd(b, a).unwrap());
        }

        #[test]
        fn rational_round_trip(num in any::<i64>(), den in 1i64..i64::MAX) {
            let q = ratio(num, den);
            prop_assert_eq!(parse_rational(&format_rational(&q)).unwrap(), q);
        }
    }
}

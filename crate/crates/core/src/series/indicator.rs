//! Divisor indicators `alpha_nk`, equal to 1 iff `k | n`.
//!
//! The primary route is the normalized derivative of a substituted generator,
//! `N(n/k) / n! * d^n/dx^n f(x^k) |_{x=0}`. The remaining routes are independent
//! closed forms used to cross-check it: the scaled exponential, the reciprocal
//! gamma of the remainder, the Kronecker-delta sum over rays, and the
//! binomial-sum limits for the explicit, geometric and logarithmic forms.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{compose_with_power, derivative_at_zero, Generator, PowerSeries};
use crate::error::{Error, Result};
use crate::exactnum::{factorial, rat, ratio, BigRational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "u8")]
pub struct AlphaValue(bool);

impl AlphaValue {
    pub const ZERO: AlphaValue = AlphaValue(false);
    pub const ONE: AlphaValue = AlphaValue(true);

    pub fn value(self) -> u8 {
        u8::from(self.0)
    }

    pub fn is_one(self) -> bool {
        self.0
    }

    /// Accepts only the exact rationals 0 and 1.
    fn from_rational(value: &BigRational, n: u64, k: u64) -> Result<Self> {
        if value.is_zero() {
            Ok(AlphaValue::ZERO)
        } else if value.is_one() {
            Ok(AlphaValue::ONE)
        } else {
            Err(Error::NotNormalized {
                n,
                k,
                value: value.clone(),
            })
        }
    }
}

impl From<bool> for AlphaValue {
    fn from(b: bool) -> Self {
        AlphaValue(b)
    }
}

impl From<AlphaValue> for u8 {
    fn from(a: AlphaValue) -> u8 {
        a.value()
    }
}

impl fmt::Display for AlphaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// Intermediate values of the derivative route.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaTrace {
    /// `d^n/dx^n f(x^k)` at 0, before normalization.
    pub raw_derivative: BigRational,
    /// `N(n/k)`; absent when `k` does not divide `n`.
    pub normalization: Option<BigRational>,
    pub value: AlphaValue,
}

fn check_pair(n: u64, k: u64) -> Result<()> {
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
    if k > n {
        return Err(Error::DivisorExceedsNumber { n, k });
    }
    Ok(())
}

fn check_positive(n: u64, k: u64) -> Result<()> {
    for (name, value) in [("n", n), ("k", k)] {
        if value == 0 {
            return Err(Error::OutOfRange {
                name,
                min: 1,
                value: 0,
            });
        }
    }
    Ok(())
}

pub fn alpha(g: Generator, n: u64, k: u64) -> Result<AlphaValue> {
    alpha_traced(g, n, k).map(|t| t.value)
}

pub fn alpha_traced(g: Generator, n: u64, k: u64) -> Result<AlphaTrace> {
    check_pair(n, k)?;
    // c_j for j > n/k only reaches exponents above n.
    alpha_with_series(g, &g.series((n / k) as usize), n, k)
}

/// Derivative route with a precomputed generator series, for bulk evaluation.
/// `series` must reach order `n / k`.
pub fn alpha_with_series(g: Generator, series: &PowerSeries, n: u64, k: u64) -> Result<AlphaTrace> {
    check_pair(n, k)?;
    let composed = compose_with_power(series, k, n as usize)?;
    let raw = derivative_at_zero(&composed, n as usize)?;
    if n % k != 0 {
        // No exponent jk equals n, so the raw derivative is already 0.
        let value = AlphaValue::from_rational(&raw, n, k)?;
        return Ok(AlphaTrace {
            raw_derivative: raw,
            normalization: None,
            value,
        });
    }
    let norm = g.normalization_factor(n / k)?;
    let scaled = &norm * &raw / rat(factorial(n as i64)?);
    let value = AlphaValue::from_rational(&scaled, n, k)?;
    Ok(AlphaTrace {
        raw_derivative: raw,
        normalization: Some(norm),
        value,
    })
}

/// `(k!)^{n/k} (n/k)! / n! * d^n/dx^n e^{x^k / k!} |_0`.
pub fn alpha_exp_scaled(n: u64, k: u64) -> Result<AlphaValue> {
    check_pair(n, k)?;
    let k_fact = rat(factorial(k as i64)?);
    let top = (n / k) as usize;
    // e^{y / k!}: c_j = 1 / ((k!)^j j!)
    let mut coeffs = Vec::with_capacity(top + 1);
    let mut c = BigRational::one();
    for j in 0..=top {
        if j > 0 {
            c /= &k_fact * rat(j as u64);
        }
        coeffs.push(c.clone());
    }
    let composed = compose_with_power(&PowerSeries::new(coeffs), k, n as usize)?;
    let raw = derivative_at_zero(&composed, n as usize)?;
    if n % k != 0 {
        return AlphaValue::from_rational(&raw, n, k);
    }
    let j = n / k;
    let prefactor = rat(num_traits::pow(factorial(k as i64)?, j as usize))
        * rat(factorial(j as i64)?)
        / rat(factorial(n as i64)?);
    AlphaValue::from_rational(&(prefactor * raw), n, k)
}

/// `1 / Gamma(s)` for integer `s`: `1/(s-1)!` for `s >= 1`, and 0 at the
/// poles `s <= 0`.
pub fn reciprocal_gamma(s: i64) -> BigRational {
    if s <= 0 {
        BigRational::zero()
    } else {
        ratio(1, factorial(s - 1).expect("s - 1 >= 0"))
    }
}

/// `1 / Gamma(1 - (n mod k))`.
pub fn alpha_gamma_mod(n: u64, k: u64) -> Result<AlphaValue> {
    check_positive(n, k)?;
    let remainder = (n % k) as i64;
    AlphaValue::from_rational(&reciprocal_gamma(1 - remainder), n, k)
}

/// `sum_{j=1}^{n} [j k = n]`.
pub fn alpha_delta_sum(n: u64, k: u64) -> Result<AlphaValue> {
    check_positive(n, k)?;
    let hits = (1..=n).filter(|j| j * k == n).count() as i64;
    AlphaValue::from_rational(&rat(hits), n, k)
}

/// Integer binomial `C(top, bottom)`, zero when `bottom > top`.
pub fn binomial(top: u64, bottom: u64) -> BigInt {
    if bottom > top {
        return BigInt::zero();
    }
    let bottom = bottom.min(top - bottom);
    let mut acc = BigInt::one();
    for i in 0..bottom {
        acc = acc * (top - i) / (i + 1);
    }
    acc
}

/// Value at `x -> 0` of `sum_{j >= 0} w_j C(jk, n) x^{jk - n}`.
///
/// Terms with `jk < n` vanish through the binomial and terms with `jk > n`
/// through the positive power of `x`; the loop still evaluates every
/// binomial up to `jk = n` rather than jumping to the survivor.
pub fn limit_binomial_sum(n: u64, k: u64, weight: impl Fn(u64) -> BigRational) -> BigRational {
    let mut total = BigRational::zero();
    for j in 0..=n / k {
        let power = j * k;
        let c = binomial(power, n);
        if c.is_zero() {
            continue;
        }
        assert!(power == n, "nonzero binomial below the surviving exponent");
        total += weight(j) * rat(c);
    }
    total
}

/// `(n/k)! / f^{(n/k)}(0) * sum_j f^{(j)}(0)/j! C(jk, n) x^{jk-n} |_0`.
///
/// When `k` does not divide `n` the sum vanishes and the prefactor is
/// irrelevant.
pub fn alpha_explicit(g: Generator, n: u64, k: u64) -> Result<AlphaValue> {
    check_pair(n, k)?;
    let sum = limit_binomial_sum(n, k, |j| g.coefficient(j));
    if n % k != 0 {
        return AlphaValue::from_rational(&sum, n, k);
    }
    let j = n / k;
    let j_fact = rat(factorial(j as i64)?);
    let derivative = &j_fact * g.coefficient(j);
    AlphaValue::from_rational(&(j_fact / derivative * sum), n, k)
}

/// Geometric generator written as `sum_{j>=1} C(jk, n) x^{jk-n} |_0`.
pub fn alpha_geometric_binomial(n: u64, k: u64) -> Result<AlphaValue> {
    check_pair(n, k)?;
    let sum = limit_binomial_sum(n, k, |j| if j == 0 { rat(0) } else { rat(1) });
    AlphaValue::from_rational(&sum, n, k)
}

/// Logarithmic form `(-1)^{n/k} (n/k) sum_{j>=1} (-1)^j / j C(jk, n) x^{jk-n} |_0`.
pub fn alpha_log_binomial(n: u64, k: u64) -> Result<AlphaValue> {
    check_pair(n, k)?;
    let sum = limit_binomial_sum(n, k, |j| {
        if j == 0 {
            rat(0)
        } else {
            ratio(if j % 2 == 0 { 1 } else { -1 }, j as i64)
        }
    });
    if n % k != 0 {
        return AlphaValue::from_rational(&sum, n, k);
    }
    let j = n / k;
    let sign = if j % 2 == 0 { 1 } else { -1 };
    let value = rat(sign) * rat(j) * sum;
    debug_assert!(!value.is_negative());
    AlphaValue::from_rational(&value, n, k)
}

/// Any of the available ways of computing `alpha_nk`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Indicator {
    /// Trial division.
    Oracle,
    /// Scaled exponential `e^{x^k / k!}`.
    ExpScaled,
    /// Reciprocal gamma of the remainder.
    GammaMod,
    /// Sum of Kronecker deltas over rays.
    DeltaSum,
    /// Normalized derivative of a catalog generator.
    Series(Generator),
}

impl Indicator {
    pub fn name(self) -> &'static str {
        match self {
            Indicator::Oracle => "oracle",
            Indicator::ExpScaled => "exp_scaled",
            Indicator::GammaMod => "gamma_mod",
            Indicator::DeltaSum => "delta_sum",
            Indicator::Series(g) => g.name(),
        }
    }

    /// Every non-oracle route.
    pub fn analytic() -> Vec<Indicator> {
        let mut all = vec![
            Indicator::ExpScaled,
            Indicator::GammaMod,
            Indicator::DeltaSum,
        ];
        all.extend(Generator::ALL.into_iter().map(Indicator::Series));
        all
    }

    /// `alpha_nk` for `1 <= k <= n`.
    pub fn evaluate(self, n: u64, k: u64) -> Result<AlphaValue> {
        check_pair(n, k)?;
        match self {
            Indicator::Oracle => Ok(AlphaValue::from(n % k == 0)),
            Indicator::ExpScaled => alpha_exp_scaled(n, k),
            Indicator::GammaMod => alpha_gamma_mod(n, k),
            Indicator::DeltaSum => alpha_delta_sum(n, k),
            Indicator::Series(g) => alpha(g, n, k),
        }
    }
}

impl fmt::Display for Indicator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Indicator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "oracle" => Ok(Indicator::Oracle),
            "exp_scaled" => Ok(Indicator::ExpScaled),
            "gamma_mod" => Ok(Indicator::GammaMod),
            "delta_sum" => Ok(Indicator::DeltaSum),
            other => other.parse().map(Indicator::Series),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha(Generator::Exp, 6, 2).unwrap(), AlphaValue::ONE);
        assert_eq!(alpha(Generator::Exp, 6, 4).unwrap(), AlphaValue::ZERO);
        assert_eq!(alpha(Generator::Fibonacci, 9, 3).unwrap(), AlphaValue::ONE);
        assert_eq!(alpha(Generator::Log1m, 1, 1).unwrap(), AlphaValue::ONE);
    }

    #[test]
    fn alpha_rejects_bad_pairs() {
        assert_eq!(
            alpha(Generator::Exp, 3, 4),
            Err(Error::DivisorExceedsNumber { n: 3, k: 4 })
        );
        assert!(alpha(Generator::Exp, 3, 0).is_err());
        assert!(alpha(Generator::Exp, 0, 0).is_err());
    }

    #[test]
    fn trace_exposes_raw_derivative() {
        // d^6/dx^6 e^{x^2} at 0 = 6! / 3! = 120, normalized by 3! / 6!
        let t = alpha_traced(Generator::Exp, 6, 2).unwrap();
        assert_eq!(t.raw_derivative, rat(120));
        assert_eq!(t.normalization, Some(rat(6)));
        assert_eq!(t.value, AlphaValue::ONE);

        // sqrt(1+x) at n = 2, k = 1: 2! * (-1/8)
        let t = alpha_traced(Generator::Sqrt1p, 2, 1).unwrap();
        assert_eq!(t.raw_derivative, ratio(-1, 4));
        assert_eq!(t.normalization, Some(rat(-8)));

        let t = alpha_traced(Generator::Exp, 7, 2).unwrap();
        assert_eq!(t.raw_derivative, rat(0));
        assert_eq!(t.normalization, None);
    }

    #[test]
    fn exp_scaled_examples() {
        assert_eq!(alpha_exp_scaled(6, 3).unwrap(), AlphaValue::ONE);
        assert_eq!(alpha_exp_scaled(7, 2).unwrap(), AlphaValue::ZERO);
        assert_eq!(alpha_exp_scaled(8, 4).unwrap(), AlphaValue::ONE);
    }

    #[test]
    fn gamma_mod_examples() {
        assert_eq!(alpha_gamma_mod(10, 5).unwrap(), AlphaValue::ONE);
        assert_eq!(alpha_gamma_mod(10, 4).unwrap(), AlphaValue::ZERO);
        for n in 1..50 {
            assert_eq!(alpha_gamma_mod(n, 1).unwrap(), AlphaValue::ONE);
        }
        // k > n is meaningful here: remainder n
        assert_eq!(alpha_gamma_mod(3, 5).unwrap(), AlphaValue::ZERO);
        assert_eq!(reciprocal_gamma(4), ratio(1, 6));
        assert_eq!(reciprocal_gamma(-3), rat(0));
    }

    #[test]
    fn delta_sum_examples() {
        assert_eq!(alpha_delta_sum(6, 3).unwrap(), AlphaValue::ONE);
        assert_eq!(alpha_delta_sum(6, 5).unwrap(), AlphaValue::ZERO);
        assert_eq!(alpha_delta_sum(1, 1).unwrap(), AlphaValue::ONE);
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(10, 3), BigInt::from(120));
        assert_eq!(binomial(3, 10), BigInt::from(0));
        assert_eq!(binomial(7, 7), BigInt::from(1));
    }

    #[test]
    fn closed_binomial_forms() {
        for n in 1..=100u64 {
            for k in 1..=n {
                let expected = AlphaValue::from(n % k == 0);
                assert_eq!(alpha_geometric_binomial(n, k).unwrap(), expected);
                assert_eq!(alpha_log_binomial(n, k).unwrap(), expected);
                assert_eq!(
                    alpha_explicit(Generator::Geometric, n, k).unwrap(),
                    expected
                );
            }
        }
    }

    #[test]
    fn geometric_binomial_matches_derivative_route() {
        for n in 1..=100u64 {
            for k in 1..=n {
                assert_eq!(
                    alpha_geometric_binomial(n, k).unwrap(),
                    alpha(Generator::Geometric, n, k).unwrap()
                );
            }
        }
    }

    #[test]
    fn indicator_names_parse() {
        for ind in Indicator::analytic().into_iter().chain([Indicator::Oracle]) {
            assert_eq!(ind.name().parse::<Indicator>().unwrap(), ind);
        }
        assert!("sinh".parse::<Indicator>().is_err());
    }
}

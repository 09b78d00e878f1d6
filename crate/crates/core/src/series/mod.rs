//! Truncated formal power series over exact rationals.
//!
//! A [`PowerSeries`] stores `c_0 ..= c_order`, where `c_j = f^(j)(0) / j!`.
//! Only the operations the divisor indicators need are provided: substitution
//! `x -> x^k`, coefficient-wise addition, and the n-th derivative at zero.

mod generator;
mod indicator;

use std::ops::Add;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{factorial, rat, BigRational};

pub use generator::Generator;
pub use indicator::{
    alpha, alpha_delta_sum, alpha_exp_scaled, alpha_explicit, alpha_gamma_mod,
    alpha_geometric_binomial, alpha_log_binomial, alpha_traced, alpha_with_series, binomial,
    limit_binomial_sum, reciprocal_gamma, AlphaTrace, AlphaValue, Indicator,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<BigRational>,
}

impl PowerSeries {
    /// Builds a series from `c_0, c_1, ...`; an empty list is the zero series
    /// of order 0.
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(BigRational::zero());
        }
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn truncation_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, index: usize) -> Option<&BigRational> {
        self.coeffs.get(index)
    }

    /// Drops every coefficient above `order`. Never extends.
    pub fn truncate(&self, order: usize) -> Self {
        let keep = order.min(self.truncation_order()) + 1;
        Self {
            coeffs: self.coeffs[..keep].to_vec(),
        }
    }

    /// `true` when every stored coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;

    /// Sum truncated at the smaller of the two orders.
    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        PowerSeries { coeffs }
    }
}

/// `p (p-1) ... (p-j+1) / j!` for rational `p`.
pub fn generalized_binomial(p: &BigRational, j: u64) -> BigRational {
    let mut acc = BigRational::one();
    for i in 0..j {
        acc = acc * (p - rat(i)) / rat(i + 1);
    }
    acc
}

/// Series of `f(x^k)` truncated at `order`.
///
/// Coefficient `m` of the result is `c_{m/k}` when `k | m` and zero otherwise.
/// If `f` is too short to determine every coefficient up to `order`, the
/// result is truncated at the highest index it can vouch for, which is
/// `k * f.order + k - 1`.
pub fn compose_with_power(f: &PowerSeries, k: u64, order: usize) -> Result<PowerSeries> {
    if k == 0 {
        return Err(Error::OutOfRange {
            name: "k",
            min: 1,
            value: 0,
        });
    }
    let k = k as usize;
    let known = k * f.truncation_order() + (k - 1);
    let order = order.min(known);
    let coeffs = (0..=order)
        .map(|m| {
            if m % k == 0 {
                f.coeffs[m / k].clone()
            } else {
                BigRational::zero()
            }
        })
        .collect();
    Ok(PowerSeries { coeffs })
}

/// `d^n/dx^n f(x) |_{x=0} = n! c_n`.
///
/// Terms below `x^n` are annihilated by differentiation and terms above it
/// still carry a positive power of `x`, so only `c_n` survives at the origin.
pub fn derivative_at_zero(f: &PowerSeries, n: usize) -> Result<BigRational> {
    let c = f.coeff(n).ok_or(Error::InsufficientOrder {
        order: f.truncation_order(),
        requested: n,
    })?;
    Ok(c * BigRational::from_integer(factorial(n as i64)?))
}

/// Converts an integral series to plain integers, or reports the first
/// non-integral index.
pub fn integer_coefficients(f: &PowerSeries) -> std::result::Result<Vec<BigInt>, usize> {
    f.coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| {
            if c.is_integer() {
                Ok(c.to_integer())
            } else {
                Err(i)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::ratio;
    use proptest::prelude::*;

    fn ints(values: &[i64]) -> Vec<BigRational> {
        values.iter().map(|&v| rat(v)).collect()
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(generalized_binomial(&ratio(1, 2), 2), ratio(-1, 8));
        assert_eq!(generalized_binomial(&ratio(-1, 2), 1), ratio(-1, 2));
        assert_eq!(generalized_binomial(&ratio(7, 3), 0), rat(1));
        // integer p reproduces Pascal's triangle
        assert_eq!(generalized_binomial(&rat(6), 3), rat(20));
        assert_eq!(generalized_binomial(&rat(3), 5), rat(0));
    }

    #[test]
    fn compose_geometric_square() {
        let geometric = Generator::Geometric.series(3);
        let composed = compose_with_power(&geometric, 2, 6).unwrap();
        assert_eq!(composed.coeffs(), ints(&[0, 0, 1, 0, 1, 0, 1]).as_slice());
    }

    #[test]
    fn compose_exp_cube() {
        let exp = Generator::Exp.series(2);
        let composed = compose_with_power(&exp, 3, 6).unwrap();
        let expected = vec![rat(1), rat(0), rat(0), rat(1), rat(0), rat(0), ratio(1, 2)];
        assert_eq!(composed.coeffs(), expected.as_slice());
    }

    #[test]
    fn compose_identity_is_truncation() {
        let f = Generator::LambertW.series(9);
        assert_eq!(compose_with_power(&f, 1, 5).unwrap(), f.truncate(5));
        assert_eq!(compose_with_power(&f, 1, 20).unwrap(), f);
    }

    #[test]
    fn compose_caps_at_known_order() {
        let f = Generator::Exp.series(2);
        let composed = compose_with_power(&f, 3, 100).unwrap();
        assert_eq!(composed.truncation_order(), 8);
        assert!(compose_with_power(&f, 0, 4).is_err());
    }

    #[test]
    fn derivative_examples() {
        let exp_sq = compose_with_power(&Generator::Exp.series(2), 2, 4).unwrap();
        assert_eq!(derivative_at_zero(&exp_sq, 4).unwrap(), rat(12));
        assert_eq!(derivative_at_zero(&exp_sq, 3).unwrap(), rat(0));
        let geometric = Generator::Geometric.series(5);
        assert_eq!(derivative_at_zero(&geometric, 5).unwrap(), rat(120));
        assert!(matches!(
            derivative_at_zero(&geometric, 6),
            Err(Error::InsufficientOrder {
                order: 5,
                requested: 6
            })
        ));
    }

    #[test]
    fn addition_truncates_to_shorter() {
        let a = PowerSeries::new(ints(&[1, 2, 3]));
        let b = PowerSeries::new(ints(&[1, 1]));
        assert_eq!(&a + &b, PowerSeries::new(ints(&[2, 3])));
    }

    proptest! {
        // Substitution never disturbs coefficients below the truncation order.
        #[test]
        fn composition_preserves_prefix(
            values in proptest::collection::vec(-50i64..50, 1..12),
            k in 1u64..5,
            order in 0usize..40,
            lower in 0usize..40,
        ) {
            let f = PowerSeries::new(ints(&values));
            let full = compose_with_power(&f, k, order).unwrap();
            let low = compose_with_power(&f, k, lower.min(order)).unwrap();
            prop_assert_eq!(&full.coeffs()[..low.coeffs().len()], low.coeffs());
            for (m, c) in full.coeffs().iter().enumerate() {
                let expected = if m as u64 % k == 0 { rat(values[m / k as usize]) } else { rat(0) };
                prop_assert_eq!(c, &expected);
            }
        }
    }
}

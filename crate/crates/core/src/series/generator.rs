//! The catalog of generator functions whose substituted derivatives detect
//! divisibility, with their exact coefficient and normalization rules.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{generalized_binomial, PowerSeries};
use crate::error::{Error, Result};
use crate::exactnum::{double_factorial, factorial, fibonacci, rat, ratio, BigRational};

/// An analytic `f(x) = sum c_j x^j` with `c_j != 0` for every `j >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Generator {
    /// `e^x`
    Exp,
    /// `x / (1 - x)`
    Geometric,
    /// `ln(1 - x)`
    Log1m,
    /// `sqrt(1 + x)`
    Sqrt1p,
    /// `1 / sqrt(1 + x)`
    InvSqrt1p,
    /// `(1 + x)^(-3/2)`
    PowM3h,
    /// Lambert `W(x)`
    LambertW,
    /// `1 / (1 - x - x^2)`
    Fibonacci,
}

impl Generator {
    pub const ALL: [Generator; 8] = [
        Generator::Exp,
        Generator::Geometric,
        Generator::Log1m,
        Generator::Sqrt1p,
        Generator::InvSqrt1p,
        Generator::PowM3h,
        Generator::LambertW,
        Generator::Fibonacci,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Generator::Exp => "exp",
            Generator::Geometric => "geometric",
            Generator::Log1m => "log1m",
            Generator::Sqrt1p => "sqrt1p",
            Generator::InvSqrt1p => "invsqrt1p",
            Generator::PowM3h => "pow_m3h",
            Generator::LambertW => "lambert_w",
            Generator::Fibonacci => "fibonacci",
        }
    }

    /// Whether `c_0 = 0`, which is allowed since only `c_j` for `j >= 1` enter.
    pub fn constant_term_vanishes(self) -> bool {
        matches!(
            self,
            Generator::Geometric | Generator::Log1m | Generator::LambertW
        )
    }

    /// Closed-form `c_j`.
    pub fn coefficient(self, j: u64) -> BigRational {
        let ji = j as i64;
        match self {
            Generator::Exp => ratio(1, factorial(ji).expect("j >= 0")),
            Generator::Geometric if j == 0 => BigRational::zero(),
            Generator::Geometric => BigRational::one(),
            Generator::Log1m if j == 0 => BigRational::zero(),
            Generator::Log1m => ratio(-1, ji),
            Generator::Sqrt1p => generalized_binomial(&ratio(1, 2), j),
            Generator::InvSqrt1p => generalized_binomial(&ratio(-1, 2), j),
            Generator::PowM3h => generalized_binomial(&ratio(-3, 2), j),
            Generator::LambertW if j == 0 => BigRational::zero(),
            Generator::LambertW => ratio(
                BigInt::from(-ji).pow(j as u32 - 1),
                factorial(ji).expect("j >= 0"),
            ),
            Generator::Fibonacci => rat(fibonacci(ji + 1).expect("j + 1 >= 1")),
        }
    }

    /// `c_0 ..= c_order`, built by running recurrences where one exists.
    pub fn series(self, order: usize) -> PowerSeries {
        let mut coeffs = Vec::with_capacity(order + 1);
        match self {
            Generator::Exp => {
                let mut c = BigRational::one();
                for j in 0..=order {
                    if j > 0 {
                        c /= rat(j as u64);
                    }
                    coeffs.push(c.clone());
                }
            }
            Generator::Sqrt1p | Generator::InvSqrt1p | Generator::PowM3h => {
                let p = match self {
                    Generator::Sqrt1p => ratio(1, 2),
                    Generator::InvSqrt1p => ratio(-1, 2),
                    _ => ratio(-3, 2),
                };
                let mut c = BigRational::one();
                for j in 0..=order {
                    if j > 0 {
                        c = c * (&p - rat(j as u64 - 1)) / rat(j as u64);
                    }
                    coeffs.push(c.clone());
                }
            }
            Generator::Fibonacci => {
                let (mut a, mut b) = (BigInt::one(), BigInt::one());
                for _ in 0..=order {
                    coeffs.push(rat(a.clone()));
                    let next = &a + &b;
                    a = std::mem::replace(&mut b, next);
                }
            }
            _ => coeffs.extend((0..=order as u64).map(|j| self.coefficient(j))),
        }
        PowerSeries::new(coeffs)
    }

    /// Factor `N(j)` that scales `(1/n!) d^n/dx^n f(x^k)|_0` to exactly 1 when
    /// `j = n/k` is an integer. Every row satisfies `N(j) c_j = 1`.
    pub fn normalization_factor(self, j: u64) -> Result<BigRational> {
        if j == 0 {
            return Err(Error::OutOfRange {
                name: "j",
                min: 1,
                value: 0,
            });
        }
        let ji = j as i64;
        let j_fact = rat(factorial(ji)?);
        let minus_two_pow = rat(BigInt::from(-2).pow(j as u32));
        let factor = match self {
            Generator::Exp => j_fact,
            Generator::Geometric => BigRational::one(),
            Generator::Log1m => rat(-ji),
            Generator::Sqrt1p => -minus_two_pow * j_fact / rat(double_factorial(2 * ji - 3)?),
            // Gamma(1/2) / Gamma(j + 1/2) = 2^j / (2j - 1)!!
            Generator::InvSqrt1p => minus_two_pow * j_fact / rat(double_factorial(2 * ji - 1)?),
            Generator::PowM3h => minus_two_pow * j_fact / rat(double_factorial(2 * ji + 1)?),
            Generator::LambertW => {
                let sign = if j % 2 == 1 { 1 } else { -1 };
                j_fact * rat(sign) / rat(BigInt::from(ji).pow(j as u32 - 1))
            }
            Generator::Fibonacci => ratio(1, fibonacci(ji + 1)?),
        };
        Ok(factor)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Generator::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| Error::UnknownGenerator(s.to_string()))
    }
}

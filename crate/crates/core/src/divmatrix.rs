//! The divisor matrix `alpha_nk`, its inverse `beta_nk = mu(n/k) [k | n]`, and
//! the identities that tie them to `sigma_0`, the Mertens function and the
//! Lambert series `sum x^k / (1 - x^k)`.
//!
//! Indices are 1-based throughout: `get(n, k)` is row `n`, column `k`.
//! Dense matrices are meant for desk-scale sizes (a few hundred); the
//! `*_row` functions evaluate single rows lazily for larger `n`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{divisor_count_oracle, mobius, mobius_sieve, DivisorPoint};
use crate::series::{
    alpha_with_series, compose_with_power, integer_coefficients, Generator, Indicator, PowerSeries,
};

/// Square integer matrix with 1-based indexing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    dim: usize,
    entries: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    dim: usize,
    rows: Vec<Vec<i64>>,
}

impl IntMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![0; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 1..=dim {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let dim = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch {
                left: dim,
                right: bad.len(),
            });
        }
        Ok(Self {
            dim,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, n: usize, k: usize) -> i64 {
        self.entries[(n - 1) * self.dim + (k - 1)]
    }

    pub fn set(&mut self, n: usize, k: usize, value: i64) {
        self.entries[(n - 1) * self.dim + (k - 1)] = value;
    }

    pub fn row(&self, n: usize) -> &[i64] {
        &self.entries[(n - 1) * self.dim..n * self.dim]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[i64]> {
        self.entries.chunks(self.dim.max(1))
    }

    pub fn row_sum(&self, n: usize) -> i64 {
        self.row(n).iter().sum()
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.iter().filter(|&&v| v != 0).count()
    }

    pub fn is_lower_triangular(&self) -> bool {
        (1..=self.dim).all(|n| (n + 1..=self.dim).all(|k| self.get(n, k) == 0))
    }

    pub fn multiply(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: rhs.dim,
            });
        }
        let dim = self.dim;
        let entries = (0..dim)
            .into_par_iter()
            .flat_map_iter(|r| {
                let left = &self.entries[r * dim..(r + 1) * dim];
                (0..dim).map(move |c| {
                    left.iter()
                        .enumerate()
                        .filter(|(_, &a)| a != 0)
                        .map(|(i, &a)| a * rhs.entries[i * dim + c])
                        .sum::<i64>()
                })
            })
            .collect();
        Ok(IntMatrix { dim, entries })
    }

    /// One row per line, comma-separated, newline-terminated.
    pub fn to_csv(&self) -> Result<String> {
        let mut writer = csv::WriterBuilder::new()
            .has_headers(false)
            .from_writer(Vec::new());
        for row in self.rows() {
            writer
                .write_record(row.iter().map(i64::to_string))
                .map_err(|e| Error::Export(e.to_string()))?;
        }
        let bytes = writer
            .into_inner()
            .map_err(|e| Error::Export(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Export(e.to_string()))
    }

    /// `{"dim": N, "rows": [[...], ...]}`.
    pub fn to_json(&self) -> Result<String> {
        let doc = MatrixJson {
            dim: self.dim,
            rows: self.rows().map(<[i64]>::to_vec).collect(),
        };
        serde_json::to_string(&doc).map_err(|e| Error::Export(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: MatrixJson =
            serde_json::from_str(text).map_err(|e| Error::Export(e.to_string()))?;
        let m = Self::from_rows(doc.rows)?;
        if m.dim != doc.dim {
            return Err(Error::DimensionMismatch {
                left: doc.dim,
                right: m.dim,
            });
        }
        Ok(m)
    }
}

/// `alpha_nk`: 1 iff `k | n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorMatrix(IntMatrix);

/// `beta_nk = mu(n/k)` if `k | n`, else 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InverseMatrix(IntMatrix);

impl DivisorMatrix {
    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn get(&self, n: usize, k: usize) -> i64 {
        self.0.get(n, k)
    }
}

impl InverseMatrix {
    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn get(&self, n: usize, k: usize) -> i64 {
        self.0.get(n, k)
    }
}

fn check_dim(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::OutOfRange {
            name: "N",
            min: 1,
            value: 0,
        });
    }
    Ok(())
}

/// Builds `alpha_nk` for `1 <= k <= n <= dim` from the chosen indicator.
/// Rows are computed in parallel.
pub fn build_divisor_matrix(dim: usize, source: Indicator) -> Result<DivisorMatrix> {
    check_dim(dim)?;
    let shared: Option<(Generator, PowerSeries)> = match source {
        Indicator::Series(g) => Some((g, g.series(dim))),
        _ => None,
    };
    let rows: Vec<Vec<i64>> = (1..=dim as u64)
        .into_par_iter()
        .map(|n| {
            let mut row = vec![0i64; dim];
            for k in 1..=n {
                let value = match &shared {
                    Some((g, series)) => alpha_with_series(*g, series, n, k)?.value,
                    None => source.evaluate(n, k)?,
                };
                row[(k - 1) as usize] = i64::from(value.value());
            }
            Ok(row)
        })
        .collect::<Result<_>>()?;
    Ok(DivisorMatrix(IntMatrix::from_rows(rows)?))
}

pub fn build_inverse_matrix(dim: usize) -> Result<InverseMatrix> {
    check_dim(dim)?;
    let mu = mobius_sieve(dim);
    let mut m = IntMatrix::zeros(dim);
    for k in 1..=dim {
        for j in 1..=dim / k {
            m.set(j * k, k, i64::from(mu[j]));
        }
    }
    Ok(InverseMatrix(m))
}

/// Divisors of `n` in ascending order: the support of row `n`.
pub fn divisor_row(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Nonzero entries `(k, mu(n/k))` of row `n` of the inverse matrix.
pub fn inverse_row(n: u64) -> Result<Vec<(u64, i8)>> {
    let mut row = Vec::new();
    for k in divisor_row(n) {
        let m = mobius(n / k)?;
        if m != 0 {
            row.push((k, m));
        }
    }
    Ok(row)
}

/// `true` iff `DivisorMatrix(N) * InverseMatrix(N)` is the identity.
pub fn verify_inverse(dim: usize) -> Result<bool> {
    let a = build_divisor_matrix(dim, Indicator::Oracle)?;
    let b = build_inverse_matrix(dim)?;
    Ok(a.0.multiply(&b.0)? == IntMatrix::identity(dim))
}

/// Exact determinant by fraction-free (Bareiss) elimination with row pivoting.
///
/// Triangularity is never assumed, so a unit-diagonal result is a genuine
/// computation rather than a restatement.
pub fn determinant(m: &IntMatrix) -> BigInt {
    let dim = m.dim;
    if dim == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m
        .rows()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for p in 0..dim {
        if a[p][p].is_zero() {
            match (p + 1..dim).find(|&r| !a[r][p].is_zero()) {
                Some(r) => {
                    a.swap(p, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for r in p + 1..dim {
            for c in p + 1..dim {
                let value = (&a[r][c] * &a[p][p] - &a[r][p] * &a[p][c]) / &prev;
                a[r][c] = value;
            }
            a[r][p] = BigInt::zero();
        }
        prev = a[p][p].clone();
    }
    sign * &a[dim - 1][dim - 1]
}

/// Redheffer matrix: `R[n][k] = 1` iff `k = 1` or `n | k`.
pub fn build_redheffer(dim: usize) -> Result<IntMatrix> {
    check_dim(dim)?;
    let mut m = IntMatrix::zeros(dim);
    for n in 1..=dim {
        m.set(n, 1, 1);
        for k in (n..=dim).step_by(n) {
            m.set(n, k, 1);
        }
    }
    Ok(m)
}

/// `sigma_0(n) = sum_{k <= n} alpha_nk` with the chosen indicator.
pub fn sigma0(n: u64, source: Indicator) -> Result<u64> {
    if n == 0 {
        return Err(Error::OutOfRange {
            name: "n",
            min: 1,
            value: 0,
        });
    }
    match source {
        Indicator::Oracle => Ok(divisor_count_oracle(n)),
        Indicator::Series(g) => {
            let series = g.series(n as usize);
            (1..=n).try_fold(0u64, |acc, k| {
                Ok(acc + u64::from(alpha_with_series(g, &series, n, k)?.value.value()))
            })
        }
        other => (1..=n).try_fold(0u64, |acc, k| {
            Ok(acc + u64::from(other.evaluate(n, k)?.value()))
        }),
    }
}

/// Coefficients of `x^1 ..= x^N` in `sum_{k=1}^{N} x^k / (1 - x^k)`.
///
/// Each term is the geometric generator with `x -> x^k`, accumulated as an
/// exact truncated series.
pub fn lambert_coefficients(limit: usize) -> Result<Vec<u64>> {
    check_dim(limit)?;
    let geometric = Generator::Geometric.series(limit);
    let mut total = PowerSeries::zero(limit);
    for k in 1..=limit as u64 {
        total = &total + &compose_with_power(&geometric, k, limit)?;
    }
    let ints = integer_coefficients(&total).map_err(|index| Error::NotNormalized {
        n: index as u64,
        k: 0,
        value: total.coeffs()[index].clone(),
    })?;
    Ok(ints[1..]
        .iter()
        .map(|c| u64::try_from(c).expect("divisor counts are small and nonnegative"))
        .collect())
}

/// All points of ray `j`: `n = j k` for `k = 1 ..= N / j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RayLayer {
    pub j: u64,
    pub points: Vec<DivisorPoint>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RayDecomposition {
    pub n_max: u64,
    pub j_max: u64,
    pub layers: Vec<RayLayer>,
}

impl RayDecomposition {
    /// Union of all layers as `(n, k)` pairs.
    pub fn support(&self) -> BTreeSet<(u64, u64)> {
        self.layers
            .iter()
            .flat_map(|l| l.points.iter().map(|p| (p.n, p.k)))
            .collect()
    }

    pub fn point_count(&self) -> usize {
        self.layers.iter().map(|l| l.points.len()).sum()
    }
}

pub fn ray_decomposition(n_max: u64, j_max: u64) -> Result<RayDecomposition> {
    for (name, value) in [("N", n_max), ("j_max", j_max)] {
        if value == 0 {
            return Err(Error::OutOfRange {
                name,
                min: 1,
                value: 0,
            });
        }
    }
    let layers = (1..=j_max)
        .map(|j| RayLayer {
            j,
            points: (1..=n_max / j)
                .filter_map(|k| DivisorPoint::from_ray(k, j))
                .collect(),
        })
        .collect();
    Ok(RayDecomposition {
        n_max,
        j_max,
        layers,
    })
}

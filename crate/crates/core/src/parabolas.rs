//! Parabola families through divisor points.
//!
//! For positive integers `mu`, `nu` the family is
//! `g_i(k) = -(mu/nu) k^2 + (i/nu) k`. A divisor point `(n, k)` with
//! `n = j k` lies on `g_i` exactly when `i = mu k + nu j`, so every point sits
//! on one member of every family. Membership is always tested in the
//! cleared-denominator form `nu n = -mu k^2 + i k`.
//!
//! The index set `{mu k + nu j : k, j >= 1}` is a shifted numerical semigroup
//! and can have gaps; [`ParabolaFamily::audit_step_claim`] reports them
//! rather than assuming equidistant indices.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
pub use crate::exactnum::DivisorPoint;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ParabolaFamily {
    mu: u64,
    nu: u64,
    delta: u64,
}

/// Outcome of checking the equidistant-index claim for one family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepAudit {
    pub mu: u64,
    pub nu: u64,
    pub delta: u64,
    #[serde(rename = "N")]
    pub n_max: u64,
    pub min_index: u64,
    pub max_index: u64,
    /// Indices up to this bound are fully determined by points with `n <= N`:
    /// any index `i <= delta * N` that occurs at all occurs with `n <= N`.
    pub complete_up_to: u64,
    /// Every observed index is a multiple of `delta`.
    pub all_divisible: bool,
    /// Multiples of `delta` in `[mu + nu, complete_up_to]` that never occur.
    pub gaps: Vec<u64>,
    pub claim_exact: bool,
}

impl ParabolaFamily {
    pub fn new(mu: u64, nu: u64) -> Result<Self> {
        let delta = crate::exactnum::gcd(mu, nu)?;
        Ok(Self { mu, nu, delta })
    }

    pub fn mu(&self) -> u64 {
        self.mu
    }

    pub fn nu(&self) -> u64 {
        self.nu
    }

    /// `gcd(mu, nu)`.
    pub fn delta(&self) -> u64 {
        self.delta
    }

    /// Smallest index, reached by the point `(1, 1)`.
    pub fn min_index(&self) -> u64 {
        self.mu + self.nu
    }

    /// The unique `i` with `g_i(k) = n`.
    pub fn index_of_point(&self, p: &DivisorPoint) -> u64 {
        let i = self.mu * p.k + self.nu * p.j;
        debug_assert!(i % self.delta == 0 && i >= self.min_index());
        i
    }

    /// `nu n + mu k^2 == i k`.
    pub fn passes_through(&self, i: u64, n: u64, k: u64) -> bool {
        let (i, n, k) = (i as u128, n as u128, k as u128);
        self.nu as u128 * n + self.mu as u128 * k * k == i * k
    }

    /// Value of `g_i` at real `k`, for drawing.
    pub fn evaluate(&self, i: u64, k: f64) -> f64 {
        (-(self.mu as f64) * k * k + i as f64 * k) / self.nu as f64
    }

    /// Divisor points with `n <= limit` on `g_i`, ordered by `k`.
    pub fn points_on_parabola(&self, i: u64, limit: u64) -> Vec<DivisorPoint> {
        let mut points = Vec::new();
        let mut k = 1u64;
        while self.mu * k < i {
            let rest = i - self.mu * k;
            if rest % self.nu == 0 {
                let j = rest / self.nu;
                let n = j * k;
                if n <= limit {
                    debug_assert!(self.passes_through(i, n, k));
                    points.push(DivisorPoint { n, k, j });
                }
            }
            k += 1;
        }
        points
    }

    /// Indices of all parabolas carrying a divisor point with `n <= limit`.
    pub fn index_set(&self, limit: u64) -> BTreeSet<u64> {
        (1..=limit)
            .flat_map(|k| (1..=limit / k).map(move |j| (k, j)))
            .map(|(k, j)| self.mu * k + self.nu * j)
            .collect()
    }

    pub fn audit_step_claim(&self, limit: u64) -> Result<StepAudit> {
        if limit == 0 {
            return Err(Error::OutOfRange {
                name: "N",
                min: 1,
                value: 0,
            });
        }
        let indices = self.index_set(limit);
        let min_index = *indices.first().expect("(1, 1) is always present");
        let max_index = *indices.last().expect("non-empty");
        let complete_up_to = max_index.min(self.delta * limit);
        let all_divisible = indices.iter().all(|i| i % self.delta == 0);
        let gaps: Vec<u64> = (self.min_index()..=complete_up_to)
            .step_by(self.delta as usize)
            .filter(|i| !indices.contains(i))
            .collect();
        Ok(StepAudit {
            mu: self.mu,
            nu: self.nu,
            delta: self.delta,
            n_max: limit,
            min_index,
            max_index,
            complete_up_to,
            all_divisible,
            claim_exact: gaps.is_empty(),
            gaps,
        })
    }

    /// First divisor point with `n <= limit` that is missing from the
    /// parabola its index names.
    pub fn find_uncovered(&self, limit: u64) -> Option<DivisorPoint> {
        (1..=limit)
            .flat_map(|k| (1..=limit / k).filter_map(move |j| DivisorPoint::from_ray(k, j)))
            .find(|p| {
                let i = self.index_of_point(p);
                !self.passes_through(i, p.n, p.k) || !self.points_on_parabola(i, limit).contains(p)
            })
    }
}

/// All families with `mu <= mu_max`, `nu <= nu_max`, ordered by `(mu, nu)`.
pub fn families(mu_max: u64, nu_max: u64) -> Result<Vec<ParabolaFamily>> {
    (1..=mu_max)
        .flat_map(|mu| (1..=nu_max).map(move |nu| ParabolaFamily::new(mu, nu)))
        .collect()
}

/// `true` iff every divisor point with `n <= limit` lies on its parabola in
/// every family up to `(mu_max, nu_max)`.
pub fn coverage_check(mu_max: u64, nu_max: u64, limit: u64) -> Result<bool> {
    Ok(coverage_failure(mu_max, nu_max, limit)?.is_none())
}

/// Witness for a failed [`coverage_check`], lowest `(mu, nu)` first.
pub fn coverage_failure(
    mu_max: u64,
    nu_max: u64,
    limit: u64,
) -> Result<Option<(ParabolaFamily, DivisorPoint)>> {
    for (name, value) in [("mu_max", mu_max), ("nu_max", nu_max), ("N", limit)] {
        if value == 0 {
            return Err(Error::OutOfRange {
                name,
                min: 1,
                value: 0,
            });
        }
    }
    let fams = families(mu_max, nu_max)?;
    let failures: Vec<_> = fams
        .par_iter()
        .map(|f| f.find_uncovered(limit).map(|p| (*f, p)))
        .collect();
    Ok(failures.into_iter().flatten().next())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::divisor_points;

    fn fam(mu: u64, nu: u64) -> ParabolaFamily {
        ParabolaFamily::new(mu, nu).unwrap()
    }

    fn pt(n: u64, k: u64) -> DivisorPoint {
        DivisorPoint::new(n, k).unwrap()
    }

    /// i is of the form mu a + nu b with a, b >= 1, searching over a.
    fn representable(mu: u64, nu: u64, i: u64) -> bool {
        (1..i).any(|a| mu * a < i && (i - mu * a) % nu == 0)
    }

    #[test]
    fn index_examples() {
        let f = fam(1, 1);
        assert_eq!(f.index_of_point(&pt(6, 2)), 5);
        assert!(f.passes_through(5, 6, 2));
        assert_eq!(f.evaluate(5, 2.0), 6.0);
        assert_eq!(f.index_of_point(&pt(1, 1)), 2);
        assert_eq!(fam(2, 3).index_of_point(&pt(4, 2)), 10);
    }

    #[test]
    fn rejects_zero_parameters() {
        assert!(ParabolaFamily::new(0, 1).is_err());
        assert!(ParabolaFamily::new(1, 0).is_err());
        assert_eq!(fam(4, 6).delta(), 2);
    }

    #[test]
    fn points_on_parabola_examples() {
        let got: Vec<_> = fam(1, 1)
            .points_on_parabola(5, 10)
            .iter()
            .map(|p| (p.n, p.k))
            .collect();
        assert_eq!(got, vec![(4, 1), (6, 2), (6, 3), (4, 4)]);
        assert_eq!(fam(1, 1).points_on_parabola(2, 10), vec![pt(1, 1)]);
        assert!(fam(2, 3).points_on_parabola(6, 100).is_empty());
    }

    #[test]
    fn index_set_examples() {
        let got: Vec<u64> = fam(1, 1).index_set(4).into_iter().collect();
        assert_eq!(got, vec![2, 3, 4, 5]);
        let got: Vec<u64> = fam(2, 2).index_set(6).into_iter().collect();
        assert_eq!(got, vec![4, 6, 8, 10, 12, 14]);
        let set = fam(2, 3).index_set(500);
        assert!(set.contains(&5) && set.contains(&7) && set.contains(&8));
        assert!(!set.contains(&6));
    }

    #[test]
    fn audit_examples() {
        let a = fam(1, 1).audit_step_claim(100).unwrap();
        assert!(a.claim_exact && a.gaps.is_empty() && a.all_divisible);
        assert_eq!(a.min_index, 2);
        let a = fam(1, 2).audit_step_claim(100).unwrap();
        assert!(a.gaps.is_empty(), "{:?}", a.gaps);
        let a = fam(2, 3).audit_step_claim(100).unwrap();
        assert_eq!(a.gaps, vec![6]);
        assert!(!a.claim_exact);
    }

    #[test]
    fn audit_gaps_match_semigroup_oracle() {
        for mu in 1..=6 {
            for nu in 1..=6 {
                let f = fam(mu, nu);
                let a = f.audit_step_claim(300).unwrap();
                let oracle: Vec<u64> = (f.min_index()..=a.complete_up_to)
                    .step_by(f.delta() as usize)
                    .filter(|&i| !representable(mu, nu, i))
                    .collect();
                assert_eq!(a.gaps, oracle, "({mu}, {nu})");
            }
        }
    }

    #[test]
    fn audit_json_shape() {
        let a = fam(2, 3).audit_step_claim(10).unwrap();
        let v: serde_json::Value = serde_json::to_value(&a).unwrap();
        for key in ["mu", "nu", "delta", "N", "min_index", "gaps", "claim_exact"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
    }

    #[test]
    fn exact_membership_and_partition() {
        let points = divisor_points(200);
        for f in families(4, 4).unwrap() {
            for p in &points {
                let i = f.index_of_point(p);
                assert!(f.passes_through(i, p.n, p.k));
                assert_eq!(f.nu * p.n + f.mu * p.k * p.k, i * p.k);
                // no other member of the family passes through p
                for other in f.min_index()..i + 10 {
                    assert_eq!(f.passes_through(other, p.n, p.k), other == i);
                }
            }
        }
    }

    #[test]
    fn ray_parabola_intersections() {
        for f in families(3, 3).unwrap() {
            for i in f.min_index()..60 {
                let on: Vec<(u64, u64)> = f
                    .points_on_parabola(i, u64::MAX)
                    .iter()
                    .map(|p| (p.k, p.j))
                    .collect();
                let brute: Vec<(u64, u64)> = (1..i)
                    .flat_map(|k| (1..i).map(move |j| (k, j)))
                    .filter(|&(k, j)| f.mu * k + f.nu * j == i)
                    .collect();
                assert_eq!(on, brute);
            }
        }
    }

    #[test]
    fn coverage_examples() {
        assert!(coverage_check(1, 1, 50).unwrap());
        assert!(coverage_check(1, 1, 1).unwrap());
        assert!(coverage_check(5, 5, 300).unwrap());
        assert!(coverage_check(0, 1, 1).is_err());
    }
}

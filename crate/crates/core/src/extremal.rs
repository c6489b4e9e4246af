// Copyright 2026 The distinguish Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Extremal minimum-error success over symmetric ensembles at fixed
//! unambiguous success.
//!
//! Fixing the smallest coefficient `c₀ = √(P_USD/N)` and extremizing
//! `(Σ c_r)²/N` under normalization, the stationary points put `N₀`
//! coefficients at `c₀` and the remaining `N − N₀` at a common value
//! `√((1 − N₀c₀²)/(N − N₀))`. The resulting value decreases with `N₀`, so
//! `N₀ = 1` gives the upper bound and `N₀ = N − 1` the lower bound.

use crate::ensembles::SymmetricEnsemble;
use crate::error::{check_range, Error, Result};
use crate::par::Backend;

/// Slack used by the `N₀` monotonicity check.
pub const MONOTONICITY_SLACK: f64 = 1e-12;

/// A stationary configuration: `n0` of `n` coefficients at the minimum,
/// which is pinned by `p_usd`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtremalConfig {
    n: usize,
    n0: usize,
    p_usd: f64,
}

impl ExtremalConfig {
    pub fn new(n: usize, n0: usize, p_usd: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewStates(n));
        }
        if n0 < 1 || n0 >= n {
            return Err(Error::InfeasibleConfig(format!(
                "n0 = {n0} must lie in 1..={}",
                n - 1
            )));
        }
        if !(p_usd > 0.0 && p_usd <= 1.0) {
            return Err(Error::InfeasibleConfig(format!(
                "p_usd = {p_usd} must lie in (0, 1]"
            )));
        }
        Ok(Self { n, n0, p_usd })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn n0(&self) -> usize {
        self.n0
    }

    pub fn p_usd(&self) -> f64 {
        self.p_usd
    }

    /// The pinned minimum coefficient `√(P_USD / N)`.
    pub fn min_coeff(&self) -> f64 {
        (self.p_usd / self.n as f64).sqrt()
    }

    /// The common value of the `N − N₀` free coefficients.
    pub fn free_coeff(&self) -> f64 {
        let c0 = self.min_coeff();
        ((1.0 - self.n0 as f64 * c0 * c0) / (self.n - self.n0) as f64).sqrt()
    }
}

/// Symmetric ensemble with coefficients `(c₀ ×N₀, c_free ×(N−N₀))`, minimal
/// coefficients first.
pub fn extremal_coefficients(cfg: &ExtremalConfig) -> Result<SymmetricEnsemble> {
    let c0 = cfg.min_coeff();
    let free = cfg.free_coeff();
    // at P_USD = 1 both values are √(1/N) up to rounding
    if !(free >= c0 * (1.0 - 1e-12)) || !free.is_finite() {
        return Err(Error::InfeasibleConfig(format!(
            "free coefficient {free} falls below the minimum {c0}"
        )));
    }
    let free = free.max(c0);
    let coeffs: Vec<f64> = (0..cfg.n)
        .map(|r| if r < cfg.n0 { c0 } else { free })
        .collect();
    // already unit norm; renormalizing would only add rounding
    Ok(SymmetricEnsemble::from_normalized(cfg.n, coeffs))
}

/// `(1/N²)(N₀√P + √((N−N₀)(N−N₀P)))²` for integer `n0` in `1..n` and
/// `p_usd` in `[0, 1]`.
///
/// The square is expanded so that the `P = 0` and `P = 1` endpoints are
/// evaluated without an intermediate square root of a non-square.
pub fn stationary_value(n: usize, n0: usize, p_usd: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::TooFewStates(n));
    }
    if n0 < 1 || n0 >= n {
        return Err(Error::InfeasibleConfig(format!(
            "n0 = {n0} must lie in 1..={}",
            n - 1
        )));
    }
    let p = check_range("p_usd", p_usd, 0.0, 1.0)?;
    let (nf, k) = (n as f64, n0 as f64);
    let a2 = k * k * p;
    let b2 = (nf - k) * (nf - k * p);
    let cross = 2.0 * (a2 * b2).sqrt();
    Ok((a2 + cross + b2) / (nf * nf))
}

/// Minimum-error success of [`extremal_coefficients`]`(cfg)`, in closed form.
pub fn local_extremum_p_hyp(cfg: &ExtremalConfig) -> Result<f64> {
    stationary_value(cfg.n, cfg.n0, cfg.p_usd)
}

/// Tight upper bound on minimum-error success at fixed unambiguous success
/// (`N₀ = 1`).
pub fn p_hyp_upper_bound(n: usize, p_usd: f64) -> Result<f64> {
    stationary_value(n, 1, p_usd)
}

/// Tight lower bound (`N₀ = N − 1`).
pub fn p_hyp_lower_bound(n: usize, p_usd: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::TooFewStates(n));
    }
    stationary_value(n, n - 1, p_usd)
}

/// Stationary values for `N₀ = 1..N−1`.
pub fn n0_profile(n: usize, p_usd: f64) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::TooFewStates(n));
    }
    (1..n).map(|k| stationary_value(n, k, p_usd)).collect()
}

/// Checks that the stationary value is nonincreasing over integer `N₀` for
/// every grid value. Values outside `[0, 1]` fail the check.
pub fn verify_n0_monotonicity(n: usize, p_usd_grid: &[f64]) -> bool {
    verify_n0_monotonicity_with(n, p_usd_grid, Backend::default())
}

pub fn verify_n0_monotonicity_with(n: usize, p_usd_grid: &[f64], backend: Backend) -> bool {
    if n < 2 {
        return false;
    }
    backend.all(p_usd_grid.len(), |i| match n0_profile(n, p_usd_grid[i]) {
        Ok(profile) => profile
            .windows(2)
            .all(|w| w[1] <= w[0] + MONOTONICITY_SLACK),
        Err(_) => false,
    })
}

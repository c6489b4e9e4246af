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

//! Ordering incompatibility between unambiguous and minimum-error success.
//!
//! Pairs are built from the extremal symmetric ensembles: `E₁` sits on the
//! lower bound at `P_USD = p`, `E₂` on the upper bound at `P_USD = p − ε`.
//! Whenever the upper bound at `p − ε` exceeds the lower bound at `p`, `E₁`
//! wins on unambiguous success while `E₂` wins on minimum-error success.

use serde::Serialize;

use crate::ensembles::{make_symmetric, SymmetricEnsemble};
use crate::error::{check_range, Error, Result};
use crate::extremal::{extremal_coefficients, p_hyp_lower_bound, p_hyp_upper_bound, ExtremalConfig};
use crate::fmt::sig;
use crate::measures::{p_hyp_symmetric, p_usd_symmetric};
use crate::par::Backend;

/// Margin both inequalities must clear to count as a reversal.
pub const STRICTNESS_MARGIN: f64 = 1e-12;
/// Slack on the `ε ≤ P_USD(E₁)` grid mask.
const MASK_SLACK: f64 = 1e-12;

/// A pair ordered one way by unambiguous success and the other way by
/// minimum-error success.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReversalWitness {
    #[serde(skip)]
    pub e1: SymmetricEnsemble,
    #[serde(skip)]
    pub e2: SymmetricEnsemble,
    pub p_usd_1: f64,
    pub p_usd_2: f64,
    pub p_hyp_1: f64,
    pub p_hyp_2: f64,
    pub epsilon: f64,
}

/// `E₁` on the lower bound at `p_usd_1`, `E₂` on the upper bound at
/// `p_usd_1 − epsilon`.
pub fn build_candidate_pair(
    n: usize,
    p_usd_1: f64,
    epsilon: f64,
) -> Result<(SymmetricEnsemble, SymmetricEnsemble)> {
    if n < 3 {
        return Err(Error::TooFewStates(n));
    }
    let p1 = check_range("p_usd_1", p_usd_1, 0.0, 1.0)?;
    if !(epsilon > 0.0) || epsilon > p1 {
        return Err(Error::OutOfRange {
            name: "epsilon",
            value: epsilon,
            lo: 0.0,
            hi: p1,
        });
    }
    let e1 = extremal_coefficients(&ExtremalConfig::new(n, n - 1, p1)?)?;
    let e2 = extremal_coefficients(&ExtremalConfig::new(n, 1, p1 - epsilon)?)?;
    Ok((e1, e2))
}

/// Returns a witness iff `P_USD(E₂) < P_USD(E₁)` and `P_HYP(E₂) > P_HYP(E₁)`,
/// both by more than [`STRICTNESS_MARGIN`].
pub fn check_reversal(
    e1: &SymmetricEnsemble,
    e2: &SymmetricEnsemble,
) -> Result<Option<ReversalWitness>> {
    if e1.n() != e2.n() {
        return Err(Error::DimensionMismatch {
            expected: e1.n(),
            got: e2.n(),
        });
    }
    let (p_usd_1, p_usd_2) = (p_usd_symmetric(e1), p_usd_symmetric(e2));
    let (p_hyp_1, p_hyp_2) = (p_hyp_symmetric(e1), p_hyp_symmetric(e2));
    if p_usd_2 < p_usd_1 - STRICTNESS_MARGIN && p_hyp_2 > p_hyp_1 + STRICTNESS_MARGIN {
        Ok(Some(ReversalWitness {
            e1: e1.clone(),
            e2: e2.clone(),
            p_usd_1,
            p_usd_2,
            p_hyp_1,
            p_hyp_2,
            epsilon: p_usd_1 - p_usd_2,
        }))
    } else {
        Ok(None)
    }
}

/// `P_HYP(E₂)/P_HYP(E₁)` for the extremal pair, straight from the bounds.
pub fn bound_ratio(n: usize, p_usd_1: f64, epsilon: f64) -> Result<f64> {
    let p2 = (p_usd_1 - epsilon).max(0.0);
    Ok(p_hyp_upper_bound(n, p2)? / p_hyp_lower_bound(n, p_usd_1)?)
}

/// Ratio grid over `P_USD(E₁)` and `ε`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioGrid {
    pub n: usize,
    pub p_usd_axis: Vec<f64>,
    pub epsilon_axis: Vec<f64>,
    /// `ratios[i][k]` for `p_usd_axis[i]`, `epsilon_axis[k]`; `None` where
    /// `ε > P_USD(E₁)`.
    pub ratios: Vec<Vec<Option<f64>>>,
}

/// Where the ratio exceeds one and where it peaks.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridSummary {
    pub valid_cells: usize,
    pub cells_above_one: usize,
    pub cells_below_one: usize,
    pub fraction_above_one: f64,
    pub max_ratio: f64,
    pub max_p_usd_1: f64,
    pub max_epsilon: f64,
}

impl RatioGrid {
    pub fn cells(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        self.p_usd_axis.iter().enumerate().flat_map(move |(i, &p)| {
            self.epsilon_axis
                .iter()
                .enumerate()
                .filter_map(move |(k, &eps)| self.ratios[i][k].map(|r| (p, eps, r)))
        })
    }

    /// Ratio at the grid point nearest to `(p_usd_1, epsilon)`.
    pub fn ratio_at(&self, p_usd_1: f64, epsilon: f64) -> Option<f64> {
        let nearest = |axis: &[f64], x: f64| {
            axis.iter()
                .enumerate()
                .min_by(|a, b| (a.1 - x).abs().total_cmp(&(b.1 - x).abs()))
                .map(|(i, _)| i)
        };
        let i = nearest(&self.p_usd_axis, p_usd_1)?;
        let k = nearest(&self.epsilon_axis, epsilon)?;
        self.ratios[i][k]
    }

    pub fn summary(&self) -> GridSummary {
        let mut s = GridSummary {
            valid_cells: 0,
            cells_above_one: 0,
            cells_below_one: 0,
            fraction_above_one: 0.0,
            max_ratio: f64::NEG_INFINITY,
            max_p_usd_1: f64::NAN,
            max_epsilon: f64::NAN,
        };
        for (p, eps, r) in self.cells() {
            s.valid_cells += 1;
            if r > 1.0 {
                s.cells_above_one += 1;
            } else if r < 1.0 {
                s.cells_below_one += 1;
            }
            if r > s.max_ratio {
                s.max_ratio = r;
                s.max_p_usd_1 = p;
                s.max_epsilon = eps;
            }
        }
        if s.valid_cells > 0 {
            s.fraction_above_one = s.cells_above_one as f64 / s.valid_cells as f64;
        }
        s
    }

    /// `p_usd_1,epsilon,ratio` rows for valid cells, 12 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("p_usd_1,epsilon,ratio\n");
        for (p, eps, r) in self.cells() {
            out.push_str(&format!("{},{},{}\n", sig(p, 12), sig(eps, 12), sig(r, 12)));
        }
        out
    }

    /// Axes plus the masked matrix (`null` for invalid cells).
    pub fn to_json(&self) -> serde_json::Value {
        let round = |v: &[f64]| -> Vec<serde_json::Value> {
            v.iter().map(|&x| number(x)).collect()
        };
        let ratios: Vec<Vec<serde_json::Value>> = self
            .ratios
            .iter()
            .map(|row| {
                row.iter()
                    .map(|r| r.map(number).unwrap_or(serde_json::Value::Null))
                    .collect()
            })
            .collect();
        serde_json::json!({
            "n": self.n,
            "p_usd_axis": round(&self.p_usd_axis),
            "epsilon_axis": round(&self.epsilon_axis),
            "ratios": ratios,
        })
    }
}

/// A JSON number carrying 12 significant digits.
pub fn number(x: f64) -> serde_json::Value {
    serde_json::Number::from_f64(crate::fmt::round_sig(x, 12))
        .map(serde_json::Value::Number)
        .unwrap_or(serde_json::Value::Null)
}

/// `P_USD(E₁) = i/p_usd_steps` for `i = 1..=p_usd_steps` and
/// `ε = k/epsilon_steps` for `k = 0..epsilon_steps`.
pub fn figure1_grid(n: usize, p_usd_steps: usize, epsilon_steps: usize) -> Result<RatioGrid> {
    figure1_grid_with(n, p_usd_steps, epsilon_steps, Backend::default())
}

pub fn figure1_grid_with(
    n: usize,
    p_usd_steps: usize,
    epsilon_steps: usize,
    backend: Backend,
) -> Result<RatioGrid> {
    if n < 3 {
        return Err(Error::TooFewStates(n));
    }
    if p_usd_steps < 2 || epsilon_steps < 2 {
        return Err(Error::OutOfRange {
            name: "steps",
            value: p_usd_steps.min(epsilon_steps) as f64,
            lo: 2.0,
            hi: f64::INFINITY,
        });
    }
    let p_usd_axis: Vec<f64> = (1..=p_usd_steps)
        .map(|i| i as f64 / p_usd_steps as f64)
        .collect();
    let epsilon_axis: Vec<f64> = (0..epsilon_steps)
        .map(|k| k as f64 / epsilon_steps as f64)
        .collect();
    let cells = backend.map(p_usd_axis.len() * epsilon_axis.len(), |idx| {
        let p = p_usd_axis[idx / epsilon_steps];
        let eps = epsilon_axis[idx % epsilon_steps];
        if eps <= p + MASK_SLACK {
            bound_ratio(n, p, eps).ok()
        } else {
            None
        }
    });
    let ratios = cells.chunks(epsilon_steps).map(|c| c.to_vec()).collect();
    Ok(RatioGrid {
        n,
        p_usd_axis,
        epsilon_axis,
        ratios,
    })
}

/// Minimum-error success of two equiprobable states as a function of their
/// unambiguous success: substitutes overlap `1 − P_USD` into the Helstrom
/// expression.
pub fn two_state_relation(p_usd: f64) -> Result<f64> {
    let p = check_range("p_usd", p_usd, 0.0, 1.0)?;
    let s = 1.0 - p;
    Ok(0.5 * (1.0 + (1.0 - s * s).sqrt()))
}

/// Strict increase of [`two_state_relation`] over `grid_points` uniform
/// points on `[0, 1]`.
pub fn verify_no_two_state_reversal(grid_points: usize) -> bool {
    if grid_points < 2 {
        return false;
    }
    let last = (grid_points - 1) as f64;
    let values: Vec<f64> = (0..grid_points)
        .map(|i| two_state_relation(i as f64 / last).unwrap_or(f64::NAN))
        .collect();
    values.windows(2).all(|w| w[1] > w[0])
}

/// Counts reversal witnesses among all ordered pairs of two-state symmetric
/// ensembles with `c₀ = k/(grid_values+1)`, `k = 1..=grid_values`.
pub fn count_two_state_reversals(grid_values: usize) -> Result<usize> {
    count_two_state_reversals_with(grid_values, Backend::default())
}

pub fn count_two_state_reversals_with(grid_values: usize, backend: Backend) -> Result<usize> {
    let family: Vec<SymmetricEnsemble> = (1..=grid_values)
        .map(|k| {
            let c0 = k as f64 / (grid_values + 1) as f64;
            make_symmetric(2, &[c0, (1.0 - c0 * c0).sqrt()])
        })
        .collect::<Result<_>>()?;
    let m = family.len();
    Ok(backend.count(m * m, |idx| {
        matches!(check_reversal(&family[idx / m], &family[idx % m]), Ok(Some(_)))
    }))
}

/// Numbers for the `P_USD = 0.5 / 0.4`, three-state example.
///
/// `p_usd_*` are the values the pair is built at; `realized_p_usd_*` are
/// recomputed from the coefficients and differ by rounding only (no
/// binary64 `c` has `3c² = 0.4`).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WorkedExample {
    pub p_usd_1: f64,
    pub p_usd_2: f64,
    pub realized_p_usd_1: f64,
    pub realized_p_usd_2: f64,
    pub p_hyp_1: f64,
    pub p_hyp_2: f64,
    pub ratio: f64,
    pub witness: bool,
    pub pass: bool,
}

/// Reference values: `P_HYP(E₁) = 8/9` and `P_HYP(E₂) ≈ 0.943`.
pub const REFERENCE_P_HYP_1: f64 = 8.0 / 9.0;
pub const REFERENCE_P_HYP_2: f64 = 0.943;
pub const REFERENCE_P_HYP_1_TOL: f64 = 1e-12;
pub const REFERENCE_P_HYP_2_TOL: f64 = 1e-3;
const REFERENCE_P_USD_TOL: f64 = 1e-12;

pub fn reproduce_worked_example() -> Result<WorkedExample> {
    const P1: f64 = 0.5;
    const EPSILON: f64 = 0.1;
    let (e1, e2) = build_candidate_pair(3, P1, EPSILON)?;
    let witness = check_reversal(&e1, &e2)?;
    let (p_usd_1, p_usd_2) = (P1, P1 - EPSILON);
    let (realized_p_usd_1, realized_p_usd_2) = (p_usd_symmetric(&e1), p_usd_symmetric(&e2));
    let (p_hyp_1, p_hyp_2) = (p_hyp_symmetric(&e1), p_hyp_symmetric(&e2));
    let pass = witness.is_some()
        && (realized_p_usd_1 - p_usd_1).abs() <= REFERENCE_P_USD_TOL
        && (realized_p_usd_2 - p_usd_2).abs() <= REFERENCE_P_USD_TOL
        && (p_hyp_1 - REFERENCE_P_HYP_1).abs() <= REFERENCE_P_HYP_1_TOL
        && (p_hyp_2 - REFERENCE_P_HYP_2).abs() <= REFERENCE_P_HYP_2_TOL;
    Ok(WorkedExample {
        p_usd_1,
        p_usd_2,
        realized_p_usd_1,
        realized_p_usd_2,
        p_hyp_1,
        p_hyp_2,
        ratio: p_hyp_2 / p_hyp_1,
        witness: witness.is_some(),
        pass,
    })
}

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

//! Closed-form versus oracle suites. Every case draws from its own generator
//! seeded from `(seed, suite, case)`, so results do not depend on the backend
//! or on scheduling.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::ensembles::{random_symmetric, realize, Ensemble, PureState};
use crate::error::Result;
use crate::extremal::{
    extremal_coefficients, local_extremum_p_hyp, p_hyp_lower_bound, p_hyp_upper_bound,
    verify_n0_monotonicity_with, ExtremalConfig,
};
use crate::measures::{
    ensemble_entropy_two_state, hyp_success_probability, jaeger_shimony_branches,
    jaeger_shimony_threshold, optimality_certificate, p_hyp_symmetric, p_usd_symmetric,
    square_root_measurement,
};
use crate::oracles::{entropy_oracle, hyp_random_search_with, usd_oracle};
use crate::ordering::{count_two_state_reversals_with, verify_no_two_state_reversal};
use crate::par::Backend;

/// Outcome of one suite.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: bool,
    pub cases: usize,
    pub worst_deviation: f64,
    pub tolerance: f64,
}

fn case_rng(seed: u64, suite: u64, case: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(
        seed.wrapping_mul(0x9E37_79B9_7F4A_7C15)
            .wrapping_add(suite << 32)
            .wrapping_add(case as u64),
    )
}

fn worst(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, |a, b| if b.is_nan() { f64::INFINITY } else { a.max(b) })
}

/// Two-state ensemble with given overlap modulus and priors `((1±Δ)/2)`.
pub fn two_state_ensemble(overlap: f64, delta: f64) -> Result<Ensemble> {
    let b = PureState::new(vec![
        Complex64::new(overlap, 0.0),
        Complex64::new((1.0 - overlap * overlap).max(0.0).sqrt(), 0.0),
    ])?;
    let p1 = 0.5 * (1.0 + delta);
    Ensemble::new(vec![PureState::basis(2, 0), b], vec![p1, 1.0 - p1])
}

/// Square-root measurement against `(Σc)²/N` on random symmetric ensembles,
/// with completeness and the optimality certificate.
pub fn srm_suite(seed: u64, cases: usize, backend: Backend) -> SuiteResult {
    const TOL: f64 = 1e-10;
    let devs = backend.map(cases, |i| {
        let mut rng = case_rng(seed, 1, i);
        let n = 2 + i % 5;
        let mut run = || -> Result<f64> {
            let sym = random_symmetric(n, &mut rng)?;
            let e = realize(&sym);
            let m = square_root_measurement(&e)?;
            let dev = (hyp_success_probability(&e, &m)? - p_hyp_symmetric(&sym)).abs();
            if m.completeness_error() > 1e-9 || !optimality_certificate(&e, &m)? {
                return Ok(f64::INFINITY);
            }
            Ok(dev)
        };
        run().unwrap_or(f64::INFINITY)
    });
    let w = worst(devs);
    SuiteResult {
        name: "srm_closed_form",
        passed: w <= TOL,
        cases,
        worst_deviation: w,
        tolerance: TOL,
    }
}

/// Unambiguous optimizer against `N·min c²` for random three-state ensembles.
pub fn usd_suite(seed: u64, cases: usize, refinement_steps: usize, backend: Backend) -> SuiteResult {
    const TOL: f64 = 1e-6;
    let devs = backend.map(cases, |i| {
        let mut rng = case_rng(seed, 2, i);
        let mut run = || -> Result<f64> {
            let sym = random_symmetric(3, &mut rng)?;
            let sol = usd_oracle(&realize(&sym), refinement_steps)?;
            if sol.inconclusive_min_eig < -1e-10 {
                return Ok(f64::INFINITY);
            }
            Ok((sol.average - p_usd_symmetric(&sym)).abs())
        };
        run().unwrap_or(f64::INFINITY)
    });
    let w = worst(devs);
    SuiteResult {
        name: "usd_oracle",
        passed: w <= TOL,
        cases,
        worst_deviation: w,
        tolerance: TOL,
    }
}

/// Bound violation of random symmetric ensembles (positive means outside).
pub fn sandwich_suite(seed: u64, cases: usize, backend: Backend) -> SuiteResult {
    const TOL: f64 = 1e-10;
    let devs = backend.map(cases, |i| {
        let mut rng = case_rng(seed, 3, i);
        let n = 3 + i % 4;
        let mut run = || -> Result<f64> {
            let sym = random_symmetric(n, &mut rng)?;
            let (pu, ph) = (p_usd_symmetric(&sym), p_hyp_symmetric(&sym));
            let lo = p_hyp_lower_bound(n, pu)?;
            let hi = p_hyp_upper_bound(n, pu)?;
            Ok((lo - ph).max(ph - hi).max(0.0))
        };
        run().unwrap_or(f64::INFINITY)
    });
    let w = worst(devs);
    SuiteResult {
        name: "extremal_sandwich",
        passed: w <= TOL,
        cases,
        worst_deviation: w,
        tolerance: TOL,
    }
}

/// Closed-form stationary values against the constructed extremal ensembles.
pub fn extremal_consistency_suite() -> SuiteResult {
    const TOL: f64 = 1e-12;
    let mut devs = Vec::new();
    for n in 2..=8 {
        for n0 in 1..n {
            for k in 1..=20 {
                let p = k as f64 / 20.0;
                let dev = ExtremalConfig::new(n, n0, p)
                    .and_then(|cfg| {
                        let sym = extremal_coefficients(&cfg)?;
                        Ok((local_extremum_p_hyp(&cfg)? - p_hyp_symmetric(&sym))
                            .abs()
                            .max((p_usd_symmetric(&sym) - p).abs()))
                    })
                    .unwrap_or(f64::INFINITY);
                devs.push(dev);
            }
        }
    }
    let w = worst(devs.iter().copied());
    SuiteResult {
        name: "extremal_consistency",
        passed: w <= TOL,
        cases: devs.len(),
        worst_deviation: w,
        tolerance: TOL,
    }
}

/// Endpoint values `(N−1)/N`, `1/N` at zero and `1` at one, and `N₀`
/// monotonicity for `N = 3..10`.
pub fn endpoint_and_monotonicity_suite(backend: Backend) -> SuiteResult {
    let mut devs = Vec::new();
    for n in 2..=10usize {
        let nf = n as f64;
        let checks = [
            p_hyp_upper_bound(n, 0.0).map(|v| (v - (nf - 1.0) / nf).abs()),
            p_hyp_lower_bound(n, 0.0).map(|v| (v - 1.0 / nf).abs()),
            p_hyp_upper_bound(n, 1.0).map(|v| (v - 1.0).abs()),
            p_hyp_lower_bound(n, 1.0).map(|v| (v - 1.0).abs()),
        ];
        devs.extend(checks.into_iter().map(|c| c.unwrap_or(f64::INFINITY)));
    }
    let grid: Vec<f64> = (1..=19).map(|k| k as f64 * 0.05).collect();
    let monotone = (3..=10).all(|n| verify_n0_monotonicity_with(n, &grid, backend));
    let w = worst(devs.iter().copied());
    SuiteResult {
        name: "extremal_endpoints_monotonicity",
        passed: w == 0.0 && monotone,
        cases: devs.len() + 8,
        worst_deviation: w,
        tolerance: 0.0,
    }
}

/// Binary-entropy closed form against the density-operator spectrum.
pub fn entropy_suite(seed: u64, cases: usize, backend: Backend) -> SuiteResult {
    const TOL: f64 = 1e-12;
    let devs = backend.map(cases, |i| {
        let mut rng = case_rng(seed, 6, i);
        let s: f64 = rng.random_range(0.0..=1.0);
        let d: f64 = rng.random_range(0.0..=1.0);
        two_state_ensemble(s, d)
            .and_then(|e| {
                let (s, d) = e.two_state_scalars()?;
                Ok((ensemble_entropy_two_state(s, d)? - entropy_oracle(&e)?).abs())
            })
            .unwrap_or(f64::INFINITY)
    });
    let w = worst(devs);
    SuiteResult {
        name: "entropy",
        passed: w <= TOL,
        cases,
        worst_deviation: w,
        tolerance: TOL,
    }
}

/// Agreement of both unambiguous branches with `Δ` at the switch point.
pub fn jaeger_shimony_suite() -> SuiteResult {
    const TOL: f64 = 1e-12;
    let devs: Vec<f64> = (0..10)
        .map(|k| {
            let d = k as f64 / 10.0;
            jaeger_shimony_branches(jaeger_shimony_threshold(d), d)
                .map(|(a, b)| (a - b).abs().max((a - d).abs()).max((b - d).abs()))
                .unwrap_or(f64::INFINITY)
        })
        .collect();
    let w = worst(devs.iter().copied());
    SuiteResult {
        name: "jaeger_shimony_continuity",
        passed: w <= TOL,
        cases: devs.len(),
        worst_deviation: w,
        tolerance: TOL,
    }
}

/// Two-state relation strictly increasing and no two-state reversal found.
pub fn two_state_suite(backend: Backend) -> SuiteResult {
    let increasing = verify_no_two_state_reversal(1000);
    let found = count_two_state_reversals_with(200, backend).unwrap_or(usize::MAX);
    SuiteResult {
        name: "two_state_no_reversal",
        passed: increasing && found == 0,
        cases: 1000 + 200 * 200,
        worst_deviation: found as f64,
        tolerance: 0.0,
    }
}

/// Random POVMs never beat the square-root measurement on symmetric
/// ensembles. Deviation is the largest excess.
pub fn random_search_suite(seed: u64, cases: usize, trials: usize, backend: Backend) -> SuiteResult {
    const TOL: f64 = 1e-9;
    let mut devs = Vec::with_capacity(cases);
    for i in 0..cases {
        let mut rng = case_rng(seed, 9, i);
        let dev = random_symmetric(3, &mut rng)
            .map(|sym| {
                let found = hyp_random_search_with(&realize(&sym), trials, rng.random(), backend);
                (found - p_hyp_symmetric(&sym)).max(0.0)
            })
            .unwrap_or(f64::INFINITY);
        devs.push(dev);
    }
    let w = worst(devs);
    SuiteResult {
        name: "random_povm_lower_bound",
        passed: w <= TOL,
        cases,
        worst_deviation: w,
        tolerance: TOL,
    }
}

pub fn run_all(seed: u64) -> Vec<SuiteResult> {
    run_all_with(seed, Backend::default())
}

pub fn run_all_with(seed: u64, backend: Backend) -> Vec<SuiteResult> {
    vec![
        srm_suite(seed, 100, backend),
        usd_suite(seed, 50, 25, backend),
        sandwich_suite(seed, 100, backend),
        extremal_consistency_suite(),
        endpoint_and_monotonicity_suite(backend),
        entropy_suite(seed, 100, backend),
        jaeger_shimony_suite(),
        two_state_suite(backend),
        random_search_suite(seed, 5, 500, backend),
    ]
}

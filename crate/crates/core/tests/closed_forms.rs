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

//! Cross-checks of closed forms against brute force and edge geometries.

use std::f64::consts::PI;

use num_complex::Complex64;

use distinguish_core::ensembles::{make_symmetric, Ensemble, PureState};
use distinguish_core::extremal::{p_hyp_lower_bound, p_hyp_upper_bound};
use distinguish_core::measures::{
    hyp_success_probability, jaeger_shimony_branches, jaeger_shimony_threshold, optimality_certificate,
    p_hyp_symmetric, square_root_measurement,
};

fn symmetric_states(dim: usize, coeffs: &[f64]) -> Ensemble {
    let n = coeffs.len();
    let states = (0..n)
        .map(|j| {
            let mut amps = vec![Complex64::new(0.0, 0.0); dim];
            for (r, &c) in coeffs.iter().enumerate() {
                amps[r] = Complex64::from_polar(c, 2.0 * PI * ((j * r) % n) as f64 / n as f64);
            }
            PureState::normalized(amps).unwrap()
        })
        .collect();
    Ensemble::equal_priors(states).unwrap()
}

#[test]
fn srm_on_dependent_symmetric_states() {
    // One vanishing coefficient: three states spanning a plane.
    let c = [0.6f64, 0.8, 0.0];
    let e = symmetric_states(3, &c);
    let m = square_root_measurement(&e).unwrap();
    assert!(m.completeness_error() <= 1e-9);
    let expected = c.iter().sum::<f64>().powi(2) / 3.0;
    assert!((hyp_success_probability(&e, &m).unwrap() - expected).abs() <= 1e-10);
    assert!(optimality_certificate(&e, &m).unwrap());
}

#[test]
fn srm_with_spare_dimension() {
    let c = [0.3f64, 0.5, (1.0f64 - 0.34).sqrt()];
    let padded = symmetric_states(5, &c);
    let sym = make_symmetric(3, &c).unwrap();
    let m = square_root_measurement(&padded).unwrap();
    assert!(m.completeness_error() <= 1e-9);
    assert!((hyp_success_probability(&padded, &m).unwrap() - p_hyp_symmetric(&sym)).abs() <= 1e-10);
    assert!(optimality_certificate(&padded, &m).unwrap());
}

#[test]
fn n3_bounds_match_brute_force_sweep() {
    // Fix the smallest coefficient and sweep the remaining two over the arc.
    for p in [0.05, 0.2, 0.5, 0.8, 0.95] {
        let c0 = (p / 3.0f64).sqrt();
        let rho = (1.0 - c0 * c0).sqrt();
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        let (t0, t1) = ((c0 / rho).asin(), (c0 / rho).acos());
        for k in 0..=200_000 {
            let t = t0 + (t1 - t0) * k as f64 / 200_000.0;
            let (a, b) = (rho * t.cos(), rho * t.sin());
            let v = (c0 + a + b).powi(2) / 3.0;
            lo = lo.min(v);
            hi = hi.max(v);
        }
        let (l, u) = (p_hyp_lower_bound(3, p).unwrap(), p_hyp_upper_bound(3, p).unwrap());
        assert!(l <= lo + 1e-12 && hi <= u + 1e-12, "p = {p}: sweep [{lo}, {hi}] vs [{l}, {u}]");
        assert!((hi - u).abs() <= 1e-6, "p = {p}: upper {u} vs sweep {hi}");
        assert!((lo - l).abs() <= 1e-6, "p = {p}: lower {l} vs sweep {lo}");
    }
}

#[test]
fn n3_upper_bound_at_half() {
    let u = p_hyp_upper_bound(3, 0.5).unwrap();
    assert!((u - 0.962475).abs() <= 1e-6, "{u}");
    let brute = (0.5f64.sqrt() + 2.0 * 1.25f64.sqrt()).powi(2) / 9.0;
    assert!((u - brute).abs() <= 1e-12);
}

#[test]
fn jaeger_shimony_continuous_at_threshold() {
    for k in 0..100 {
        let delta = k as f64 / 100.0;
        let t = jaeger_shimony_threshold(delta);
        let (a, b) = jaeger_shimony_branches(t, delta).unwrap();
        assert!((a - b).abs() <= 1e-12, "delta = {delta}");
        assert!((a - delta).abs() <= 1e-12, "delta = {delta}");
    }
}

#[test]
fn independent_random_ensembles_get_certified_srm_only_when_optimal() {
    // Three non-symmetric states in C^3 with unequal priors: the square-root
    // measurement is generally suboptimal and the certificate must say so.
    let s = |v: [f64; 3]| PureState::normalized(v.iter().map(|&x| Complex64::new(x, 0.0)).collect()).unwrap();
    let e = Ensemble::new(vec![s([1.0, 0.0, 0.0]), s([0.9, 0.4, 0.0]), s([0.2, 0.3, 0.9])], vec![0.7, 0.2, 0.1]).unwrap();
    let m = square_root_measurement(&e).unwrap();
    let p = hyp_success_probability(&e, &m).unwrap();
    let searched = distinguish_core::oracles::hyp_random_search(&e, 4000, 3);
    if searched > p + 1e-9 {
        assert!(!optimality_certificate(&e, &m).unwrap());
    }
}

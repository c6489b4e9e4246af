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

//! Invariants from the module contracts, checked as properties.

use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use distinguish_core::ensembles::{gram, is_linearly_independent, make_symmetric, realize, Ensemble, PureState};
use distinguish_core::extremal::{
    extremal_coefficients, local_extremum_p_hyp, p_hyp_lower_bound, p_hyp_upper_bound, ExtremalConfig,
};
use distinguish_core::measures::{
    ensemble_entropy_two_state, helstrom_two_state, hyp_success_probability, jaeger_shimony,
    optimality_certificate, p_hyp_symmetric, p_usd_symmetric, square_root_measurement,
};
use distinguish_core::numerics::{hermitian_eig, matrix_function, ComplexMatrix, NullPolicy};
use distinguish_core::oracles::{entropy_oracle, hyp_random_search, usd_oracle};
use distinguish_core::ordering::{figure1_grid, figure1_grid_with};
use distinguish_core::Backend;

fn gaussian_matrix(dim: usize, seed: u64) -> ComplexMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let entries: Vec<Complex64> = (0..dim * dim)
        .map(|_| Complex64::new(StandardNormal.sample(&mut rng), StandardNormal.sample(&mut rng)))
        .collect();
    ComplexMatrix::from_row_major(dim, dim, &entries).unwrap()
}

fn random_hermitian(dim: usize, seed: u64, scale: f64) -> ComplexMatrix {
    gaussian_matrix(dim, seed).hermitian_part().scale(scale)
}

/// Gram-Schmidt on the columns of a Gaussian matrix.
fn random_unitary(dim: usize, seed: u64) -> ComplexMatrix {
    let g = gaussian_matrix(dim, seed);
    let mut cols: Vec<Vec<Complex64>> = Vec::new();
    for c in 0..dim {
        let mut v: Vec<Complex64> = (0..dim).map(|r| g.get(r, c)).collect();
        for u in &cols {
            let proj: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (x, y) in v.iter_mut().zip(u) {
                *x -= proj * y;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        cols.push(v.into_iter().map(|z| z / norm).collect());
    }
    ComplexMatrix::from_fn(dim, dim, |r, c| cols[c][r]).unwrap()
}

fn coeffs_strategy(lo: usize, hi: usize) -> impl Strategy<Value = Vec<f64>> {
    (lo..=hi).prop_flat_map(|n| prop::collection::vec(0.01f64..1.0, n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eigen_decomposition_contract(dim in 2usize..=6, seed in any::<u64>(), scale in 0.01f64..300.0) {
        let a = random_hermitian(dim, seed, scale);
        let eig = hermitian_eig(&a).unwrap();
        prop_assert!(eig.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
        prop_assert!(eig.reconstruct().max_abs_diff(&a) <= 1e-10);
        let v = &eig.eigenvectors;
        prop_assert!((&v.adjoint() * v).max_abs_diff(&ComplexMatrix::identity(dim)) <= 1e-10);
        let tr: f64 = eig.eigenvalues.iter().sum();
        prop_assert!((tr - a.trace().re).abs() <= 1e-9);
    }

    #[test]
    fn square_root_squares_back(dim in 2usize..=6, seed in any::<u64>()) {
        let g = gaussian_matrix(dim, seed);
        let psd = (&g * &g.adjoint()).hermitian_part();
        let root = matrix_function(&psd, f64::sqrt, NullPolicy::Reject).unwrap();
        prop_assert!((&root * &root).max_abs_diff(&psd) <= 1e-9);
    }

    #[test]
    fn matrix_function_is_basis_covariant(dim in 2usize..=6, seed in any::<u64>()) {
        let a = random_hermitian(dim, seed, 1.0);
        let u = random_unitary(dim, seed ^ 0xABCD);
        let f = |x: f64| x.exp() - 0.5 * x * x;
        let rotated = (&(&u * &a) * &u.adjoint()).hermitian_part();
        let lhs = matrix_function(&rotated, f, NullPolicy::Reject).unwrap();
        let rhs = &(&u * &matrix_function(&a, f, NullPolicy::Reject).unwrap()) * &u.adjoint();
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-9);
    }

    #[test]
    fn symmetric_ensembles_are_unit_norm_and_independent(raw in coeffs_strategy(2, 8)) {
        let sym = make_symmetric(raw.len(), &raw).unwrap();
        let e = realize(&sym);
        for s in e.states() {
            let norm = s.amplitudes().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            prop_assert!((norm - 1.0).abs() <= 1e-12);
        }
        prop_assert!(is_linearly_independent(&e));
        let n = sym.n() as f64;
        let mut expected: Vec<f64> = sym.coeffs().iter().map(|c| n * c * c).collect();
        expected.sort_by(f64::total_cmp);
        let got = gram(&e).eigenvalues().unwrap();
        for (a, b) in got.iter().zip(&expected) {
            prop_assert!((a - b).abs() <= 1e-9);
        }
    }

    #[test]
    fn srm_closed_form_completeness_and_certificate(raw in coeffs_strategy(2, 6)) {
        let sym = make_symmetric(raw.len(), &raw).unwrap();
        let e = realize(&sym);
        let m = square_root_measurement(&e).unwrap();
        prop_assert!(m.completeness_error() <= 1e-9);
        let p = hyp_success_probability(&e, &m).unwrap();
        prop_assert!((p - p_hyp_symmetric(&sym)).abs() <= 1e-10);
        prop_assert!(optimality_certificate(&e, &m).unwrap());
    }

    #[test]
    fn measures_ignore_coefficient_order(raw in coeffs_strategy(2, 6), rot in 0usize..6) {
        let sym = make_symmetric(raw.len(), &raw).unwrap();
        let mut permuted = raw.clone();
        permuted.rotate_left(rot % raw.len());
        permuted.reverse();
        let other = make_symmetric(raw.len(), &permuted).unwrap();
        prop_assert!((p_usd_symmetric(&sym) - p_usd_symmetric(&other)).abs() <= 1e-15);
        prop_assert!((p_hyp_symmetric(&sym) - p_hyp_symmetric(&other)).abs() <= 1e-14);
        let a = entropy_oracle(&realize(&sym)).unwrap();
        let b = entropy_oracle(&realize(&other)).unwrap();
        prop_assert!((a - b).abs() <= 1e-10);
    }

    #[test]
    fn sandwich_bounds_hold(raw in coeffs_strategy(3, 6)) {
        let n = raw.len();
        let sym = make_symmetric(n, &raw).unwrap();
        let (pu, ph) = (p_usd_symmetric(&sym), p_hyp_symmetric(&sym));
        prop_assert!(p_hyp_lower_bound(n, pu).unwrap() - 1e-10 <= ph);
        prop_assert!(ph <= p_hyp_upper_bound(n, pu).unwrap() + 1e-10);
    }

    #[test]
    fn extremal_consistency(n in 2usize..=8, n0_frac in 0.0f64..1.0, p in 0.001f64..=1.0) {
        let n0 = 1 + ((n - 1) as f64 * n0_frac) as usize;
        let n0 = n0.min(n - 1);
        let cfg = ExtremalConfig::new(n, n0, p).unwrap();
        let sym = extremal_coefficients(&cfg).unwrap();
        prop_assert!((local_extremum_p_hyp(&cfg).unwrap() - p_hyp_symmetric(&sym)).abs() <= 1e-12);
        prop_assert!((p_usd_symmetric(&sym) - p).abs() <= 1e-12);
    }

    #[test]
    fn usd_oracle_is_sound(raw in coeffs_strategy(3, 3)) {
        let sym = make_symmetric(3, &raw).unwrap();
        let sol = usd_oracle(&realize(&sym), 20).unwrap();
        prop_assert!(sol.average <= p_usd_symmetric(&sym) + 1e-6);
        prop_assert!((sol.average - p_usd_symmetric(&sym)).abs() <= 1e-6);
        prop_assert!(sol.inconclusive_min_eig >= -1e-10);
        prop_assert!(sol.conclusive_probs.iter().all(|p| (0.0..=1.0).contains(p)));
    }

    #[test]
    fn entropy_range_and_unitary_invariance(raw in coeffs_strategy(2, 5), seed in any::<u64>()) {
        let e = realize(&make_symmetric(raw.len(), &raw).unwrap());
        let s = entropy_oracle(&e).unwrap();
        prop_assert!(s >= 0.0 && s <= (e.dim() as f64).log2() + 1e-12);
        let u = random_unitary(e.dim(), seed);
        let rotated: Vec<PureState> = e
            .states()
            .iter()
            .map(|st| PureState::normalized(u.apply(st.amplitudes())).unwrap())
            .collect();
        let r = Ensemble::new(rotated, e.priors().to_vec()).unwrap();
        prop_assert!((entropy_oracle(&r).unwrap() - s).abs() <= 1e-10);
    }

    #[test]
    fn random_search_never_beats_optimum(raw in coeffs_strategy(3, 3), seed in any::<u64>()) {
        let sym = make_symmetric(3, &raw).unwrap();
        let found = hyp_random_search(&realize(&sym), 200, seed);
        prop_assert!(found <= p_hyp_symmetric(&sym) + 1e-9);
    }

    #[test]
    fn entropy_decreases_with_prior_imbalance(s in 0.0f64..=1.0) {
        let grid: Vec<f64> = (0..=50).map(|k| ensemble_entropy_two_state(s, k as f64 / 50.0).unwrap()).collect();
        prop_assert!(grid.windows(2).all(|w| w[1] <= w[0] + 1e-12));
        prop_assert_eq!(grid[50], 0.0);
    }
}

#[test]
fn two_state_measures_monotone_in_overlap() {
    let h: Vec<f64> = (0..1000).map(|k| helstrom_two_state(k as f64 / 999.0, 0.0).unwrap()).collect();
    let j: Vec<f64> = (0..1000).map(|k| jaeger_shimony(k as f64 / 999.0, 0.0).unwrap()).collect();
    assert!(h.windows(2).all(|w| w[1] <= w[0]));
    assert!(j.windows(2).all(|w| w[1] <= w[0]));
}

#[test]
fn two_state_measures_nondecreasing_in_delta() {
    for k in 0..=20 {
        let s = k as f64 / 20.0;
        let deltas: Vec<f64> = (0..100).map(|i| i as f64 / 100.0).collect();
        let h: Vec<f64> = deltas.iter().map(|&d| helstrom_two_state(s, d).unwrap()).collect();
        let j: Vec<f64> = deltas.iter().map(|&d| jaeger_shimony(s, d).unwrap()).collect();
        assert!(h.windows(2).all(|w| w[1] >= w[0] - 1e-12), "helstrom at s = {s}");
        assert!(j.windows(2).all(|w| w[1] >= w[0] - 1e-12), "jaeger-shimony at s = {s}");
    }
}

#[test]
fn random_search_monotone_in_trials() {
    let e = realize(&make_symmetric(3, &[0.3, 0.6, 0.9]).unwrap());
    let mut last = 0.0;
    for trials in [10, 50, 200, 1000] {
        let v = hyp_random_search(&e, trials, 42);
        assert!(v >= last);
        last = v;
    }
    assert_eq!(hyp_random_search(&e, 500, 9), hyp_random_search(&e, 500, 9));
}

#[test]
fn grid_ratio_at_zero_epsilon() {
    let g = figure1_grid(3, 100, 100).unwrap();
    for (i, &p) in g.p_usd_axis.iter().enumerate() {
        let r = g.ratios[i][0].unwrap();
        if p == 1.0 {
            assert_eq!(r, 1.0);
        } else {
            assert!(r > 1.0, "p = {p}, r = {r}");
        }
    }
}

#[test]
fn grid_identical_across_backends() {
    let a = figure1_grid_with(4, 40, 30, Backend::Sequential).unwrap();
    let b = figure1_grid_with(4, 40, 30, Backend::default()).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.to_csv(), b.to_csv());
}

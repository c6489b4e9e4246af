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

//! Independent numerical checks for the closed forms: an unambiguous
//! discrimination optimizer over reciprocal-state measurements, a random POVM
//! search giving lower bounds on minimum-error success, and entropy from the
//! density-operator spectrum.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::ensembles::{gram, Ensemble, PureState, INDEPENDENCE_THRESHOLD};
use crate::error::{Error, Result};
use crate::measures::{hyp_success_probability, Povm};
use crate::numerics::{self, ComplexMatrix, NullPolicy, Tolerance};
use crate::par::Backend;

const INITIAL_STEP: f64 = 0.1;
const BISECTION_ROUNDS: usize = 80;
const MAX_SWEEPS_PER_ROUND: usize = 1_000;

/// Best unambiguous measurement found by [`usd_oracle`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UsdSolution {
    /// Conclusive probability for each state.
    pub conclusive_probs: Vec<f64>,
    /// Prior-weighted average of `conclusive_probs`.
    pub average: f64,
    /// Smallest eigenvalue of the inconclusive element.
    pub inconclusive_min_eig: f64,
}

/// Unnormalized duals `φ̃_j = Σ_k ψ_k (G⁻¹)_{kj}`, so that `<ψ_k|φ̃_j> = δ_kj`.
fn dual_frame(e: &Ensemble) -> Result<Vec<Vec<Complex64>>> {
    let g = gram(e);
    let min = g.min_eigenvalue()?;
    if e.len() > e.dim() || !(min > INDEPENDENCE_THRESHOLD) {
        return Err(Error::LinearlyDependent(min));
    }
    let g_inv = numerics::matrix_function(g.matrix(), |x| 1.0 / x, NullPolicy::Reject)?;
    let n = e.len();
    Ok((0..n)
        .map(|j| {
            (0..e.dim())
                .map(|i| {
                    (0..n)
                        .map(|k| e.states()[k].amplitudes()[i] * g_inv.get(k, j))
                        .sum()
                })
                .collect()
        })
        .collect())
}

/// Unit vectors each orthogonal to every ensemble state but one.
pub fn reciprocal_states(e: &Ensemble) -> Result<Vec<PureState>> {
    dual_frame(e)?.into_iter().map(PureState::normalized).collect()
}

struct UsdProblem {
    /// `|φ̃_j><φ̃_j|`, the conclusive element for state j at unit probability.
    directions: Vec<ComplexMatrix>,
    priors: Vec<f64>,
    dim: usize,
    tol: Tolerance,
}

impl UsdProblem {
    fn inconclusive(&self, probs: &[f64]) -> ComplexMatrix {
        let mut acc = ComplexMatrix::identity(self.dim);
        for (d, &p) in self.directions.iter().zip(probs) {
            acc = &acc - &d.scale(p);
        }
        acc.hermitian_part()
    }

    fn min_eig(&self, probs: &[f64]) -> f64 {
        numerics::min_eigenvalue_with(&self.inconclusive(probs), &self.tol).unwrap_or(f64::NEG_INFINITY)
    }

    fn feasible(&self, probs: &[f64]) -> bool {
        probs.iter().all(|&p| (0.0..=1.0).contains(&p)) && self.min_eig(probs) >= self.tol.psd_floor
    }

    fn objective(&self, probs: &[f64]) -> f64 {
        probs.iter().zip(&self.priors).map(|(a, b)| a * b).sum()
    }
}

/// Maximizes average conclusive probability over measurements with
/// conclusive elements along the reciprocal states.
///
/// Starts from the largest feasible equal vector `P_j = t` (found by
/// bisection), then hill-climbs with single-coordinate raises, pairwise
/// trades (`+h` on one state, `−h/2` on another) and uniform raises. The step
/// starts at 0.1 and is halved after each of `refinement_steps` rounds.
pub fn usd_oracle(e: &Ensemble, refinement_steps: usize) -> Result<UsdSolution> {
    let duals = dual_frame(e)?;
    let problem = UsdProblem {
        directions: duals.iter().map(|v| ComplexMatrix::outer(v)).collect(),
        priors: e.priors().to_vec(),
        dim: e.dim(),
        tol: Tolerance::default(),
    };
    let n = e.len();

    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    if problem.feasible(&vec![hi; n]) {
        lo = hi;
    } else {
        for _ in 0..BISECTION_ROUNDS {
            let mid = 0.5 * (lo + hi);
            if problem.feasible(&vec![mid; n]) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }
    let mut probs = vec![lo; n];
    let mut best = problem.objective(&probs);

    let mut step = INITIAL_STEP;
    for _ in 0..refinement_steps {
        for _ in 0..MAX_SWEEPS_PER_ROUND {
            let mut improved = false;
            for candidate in moves(&probs, step) {
                let value = problem.objective(&candidate);
                if value > best && problem.feasible(&candidate) {
                    probs = candidate;
                    best = value;
                    improved = true;
                }
            }
            if !improved {
                break;
            }
        }
        step *= 0.5;
    }

    Ok(UsdSolution {
        inconclusive_min_eig: problem.min_eig(&probs),
        average: best,
        conclusive_probs: probs,
    })
}

fn moves(probs: &[f64], h: f64) -> Vec<Vec<f64>> {
    let n = probs.len();
    let mut out = Vec::with_capacity(n * n + 1);
    out.push(probs.iter().map(|p| (p + h).min(1.0)).collect());
    for j in 0..n {
        let mut up = probs.to_vec();
        up[j] = (up[j] + h).min(1.0);
        out.push(up);
        for k in (0..n).filter(|&k| k != j) {
            let mut trade = probs.to_vec();
            trade[j] = (trade[j] + h).min(1.0);
            trade[k] = (trade[k] - 0.5 * h).max(0.0);
            out.push(trade);
        }
    }
    out
}

/// Best minimum-error success over `trials` random POVMs; a lower bound on
/// the optimum. Trial `i` draws from a generator seeded with `seed + i`.
pub fn hyp_random_search(e: &Ensemble, trials: usize, seed: u64) -> f64 {
    hyp_random_search_with(e, trials, seed, Backend::default())
}

pub fn hyp_random_search_with(e: &Ensemble, trials: usize, seed: u64, backend: Backend) -> f64 {
    backend
        .map(trials, |i| {
            random_povm(e.dim(), e.len(), seed.wrapping_add(i as u64))
                .and_then(|m| hyp_success_probability(e, &m))
                .unwrap_or(0.0)
        })
        .into_iter()
        .fold(0.0, f64::max)
}

/// `count` rank-one Gaussian operators `A_j`, rescaled to a POVM by
/// `E_j = S^{-1/2} A_j S^{-1/2}` with `S = Σ A_j`.
pub fn random_povm(dim: usize, count: usize, seed: u64) -> Result<Povm> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draws: Vec<ComplexMatrix> = (0..count)
        .map(|_| {
            let v: Vec<Complex64> = (0..dim)
                .map(|_| {
                    Complex64::new(StandardNormal.sample(&mut rng), StandardNormal.sample(&mut rng))
                })
                .collect();
            ComplexMatrix::outer(&v)
        })
        .collect();
    let mut total = ComplexMatrix::zeros(dim);
    for a in &draws {
        total = &total + a;
    }
    // the draws span the space when count >= dim; otherwise complete with the null projector
    let eig = numerics::hermitian_eig(&total.hermitian_part())?;
    let inv_sqrt = eig.apply(|x| x.powf(-0.5), NullPolicy::MapZeroToZero, 1e-12)?;
    let mut elements: Vec<ComplexMatrix> = draws
        .iter()
        .map(|a| (&(&inv_sqrt * a) * &inv_sqrt).hermitian_part())
        .collect();
    if let Some(last) = elements.last_mut() {
        *last = &*last + &eig.null_projector(1e-12);
    }
    Povm::new(elements)
}

/// Von Neumann entropy (bits) of `Σ_j p_j |ψ_j><ψ_j|` from its spectrum.
pub fn entropy_oracle(e: &Ensemble) -> Result<f64> {
    let eig = numerics::hermitian_eig(&e.density_operator())?;
    Ok(eig
        .eigenvalues
        .iter()
        .filter(|&&l| l > 0.0)
        .map(|&l| -l * l.log2())
        .sum::<f64>()
        .max(0.0))
}

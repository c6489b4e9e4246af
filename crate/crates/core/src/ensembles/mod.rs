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

//! Pure-state ensembles, the symmetric family generated by a single
//! coefficient vector, and Gram-matrix analysis.

mod file;

pub use file::{DocumentError, EnsembleSpec, LoadedEnsemble};

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::numerics::{self, ComplexMatrix, Tolerance};

/// Unit-norm tolerance for [`PureState`].
pub const NORM_EPS: f64 = 1e-10;
/// Tolerance on the sum of priors.
pub const PRIOR_SUM_EPS: f64 = 1e-12;
/// Gram minimum-eigenvalue threshold separating independent from dependent sets.
pub const INDEPENDENCE_THRESHOLD: f64 = 1e-9;

/// A unit vector of complex amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: Vec<Complex64>,
}

impl PureState {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = numerics::vector_norm(&amplitudes);
        if amplitudes.is_empty() || !norm.is_finite() || (norm - 1.0).abs() > NORM_EPS {
            return Err(Error::NotNormalized { index: 0, norm });
        }
        Ok(Self { amplitudes })
    }

    /// Rescales `amplitudes` to unit norm.
    pub fn normalized(amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = numerics::vector_norm(&amplitudes);
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::NotNormalized { index: 0, norm });
        }
        Ok(Self {
            amplitudes: amplitudes.into_iter().map(|z| z / norm).collect(),
        })
    }

    /// Computational basis state `|index>` in dimension `dim`.
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Self { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn inner(&self, other: &Self) -> Complex64 {
        numerics::inner(&self.amplitudes, &other.amplitudes)
    }

    pub fn projector(&self) -> ComplexMatrix {
        ComplexMatrix::outer(&self.amplitudes)
    }
}

/// States with their prior probabilities.
#[derive(Debug, Clone, PartialEq)]
pub struct Ensemble {
    states: Vec<PureState>,
    priors: Vec<f64>,
}

impl Ensemble {
    pub fn new(states: Vec<PureState>, priors: Vec<f64>) -> Result<Self> {
        let Some(first) = states.first() else {
            return Err(Error::EmptyEnsemble);
        };
        if priors.len() != states.len() {
            return Err(Error::CountMismatch {
                priors: priors.len(),
                states: states.len(),
            });
        }
        let dim = first.dim();
        if let Some(bad) = states.iter().find(|s| s.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: bad.dim(),
            });
        }
        for (index, &value) in priors.iter().enumerate() {
            if !value.is_finite() || value < 0.0 {
                return Err(Error::InvalidPrior { index, value });
            }
        }
        let sum: f64 = priors.iter().sum();
        if (sum - 1.0).abs() > PRIOR_SUM_EPS {
            return Err(Error::PriorsNotNormalized(sum));
        }
        Ok(Self { states, priors })
    }

    pub fn equal_priors(states: Vec<PureState>) -> Result<Self> {
        let n = states.len().max(1);
        Self::new(states, vec![1.0 / n as f64; n])
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.states[0].dim()
    }

    pub fn states(&self) -> &[PureState] {
        &self.states
    }

    pub fn priors(&self) -> &[f64] {
        &self.priors
    }

    pub fn has_equal_priors(&self) -> bool {
        let p = 1.0 / self.len() as f64;
        self.priors.iter().all(|&q| (q - p).abs() <= PRIOR_SUM_EPS)
    }

    /// `Σ_j p_j |ψ_j><ψ_j|`.
    pub fn density_operator(&self) -> ComplexMatrix {
        self.weighted_sum(|j| self.priors[j])
    }

    /// The unweighted frame operator `Σ_j |ψ_j><ψ_j|`.
    pub fn frame_operator(&self) -> ComplexMatrix {
        self.weighted_sum(|_| 1.0)
    }

    fn weighted_sum(&self, w: impl Fn(usize) -> f64) -> ComplexMatrix {
        let mut acc = ComplexMatrix::zeros(self.dim());
        for (j, s) in self.states.iter().enumerate() {
            acc = &acc + &s.projector().scale(w(j));
        }
        acc.hermitian_part()
    }

    /// `(|<ψ_1|ψ_2>|, |p_1 - p_2|)` for a two-state ensemble.
    pub fn two_state_scalars(&self) -> Result<(f64, f64)> {
        if self.len() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: self.len(),
            });
        }
        let overlap = self.states[0].inner(&self.states[1]).norm().min(1.0);
        let delta = (self.priors[0] - self.priors[1]).abs().min(1.0);
        Ok((overlap, delta))
    }
}

/// Equal-prior symmetric ensemble `|ψ_j> = Σ_r c_r e^{2πijr/n} |r>` with real
/// positive, normalized coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricEnsemble {
    n: usize,
    coeffs: Vec<f64>,
}

impl SymmetricEnsemble {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Trusted constructor for coefficients that are positive and unit
    /// norm by construction.
    pub(crate) fn from_normalized(n: usize, coeffs: Vec<f64>) -> Self {
        debug_assert!(coeffs.len() == n && coeffs.iter().all(|&c| c > 0.0));
        debug_assert!((coeffs.iter().map(|c| c * c).sum::<f64>() - 1.0).abs() < 1e-12);
        SymmetricEnsemble { n, coeffs }
    }

    pub fn min_coeff(&self) -> f64 {
        self.coeffs.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// Normalizes positive magnitudes into a [`SymmetricEnsemble`].
pub fn make_symmetric(n: usize, coeffs: &[f64]) -> Result<SymmetricEnsemble> {
    Ok(make_symmetric_scaled(n, coeffs)?.0)
}

/// Like [`make_symmetric`], also returning the factor the inputs were
/// multiplied by.
pub fn make_symmetric_scaled(n: usize, coeffs: &[f64]) -> Result<(SymmetricEnsemble, f64)> {
    if n < 2 {
        return Err(Error::TooFewStates(n));
    }
    if coeffs.len() != n {
        return Err(Error::BadLength {
            expected: n,
            got: coeffs.len(),
        });
    }
    for (index, &value) in coeffs.iter().enumerate() {
        if !(value > 0.0) || !value.is_finite() {
            return Err(Error::ZeroCoefficient { index, value });
        }
    }
    let norm = coeffs.iter().map(|c| c * c).sum::<f64>().sqrt();
    if !norm.is_finite() {
        return Err(Error::NotNormalized { index: 0, norm });
    }
    let scale = 1.0 / norm;
    let coeffs: Vec<f64> = coeffs.iter().map(|c| c * scale).collect();
    if let Some((index, &value)) = coeffs.iter().enumerate().find(|(_, c)| !(**c > 0.0)) {
        return Err(Error::ZeroCoefficient { index, value });
    }
    Ok((SymmetricEnsemble { n, coeffs }, scale))
}

/// Amplitude of symmetric state `j` at basis index `r`.
fn symmetric_amplitude(n: usize, c: f64, j: usize, r: usize) -> Complex64 {
    let k = (j * r) % n;
    Complex64::from_polar(c, 2.0 * PI * k as f64 / n as f64)
}

/// The symmetric states in the computational basis, priors `1/n`.
pub fn realize(sym: &SymmetricEnsemble) -> Ensemble {
    let n = sym.n;
    let states = (0..n)
        .map(|j| PureState {
            amplitudes: (0..n)
                .map(|r| symmetric_amplitude(n, sym.coeffs[r], j, r))
                .collect(),
        })
        .collect();
    Ensemble {
        states,
        priors: vec![1.0 / n as f64; n],
    }
}

/// Matrix of inner products `<ψ_j|ψ_k>`.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix(ComplexMatrix);

impl GramMatrix {
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn entry(&self, j: usize, k: usize) -> Complex64 {
        self.0.get(j, k)
    }

    /// Largest deviation of `entry(j, k)` from `entry(0, (k - j) mod n)`.
    pub fn circulant_error(&self) -> f64 {
        let n = self.0.rows();
        let mut worst = 0.0f64;
        for j in 0..n {
            for k in 0..n {
                let d = self.entry(j, k) - self.entry(0, (k + n - j) % n);
                worst = worst.max(d.norm());
            }
        }
        worst
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(numerics::hermitian_eig(&self.0)?.eigenvalues)
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        numerics::min_eigenvalue(&self.0)
    }
}

pub fn gram(e: &Ensemble) -> GramMatrix {
    let n = e.len();
    let m = ComplexMatrix::from_fn(n, n, |j, k| e.states[j].inner(&e.states[k]))
        .expect("inner products of finite unit vectors are finite");
    GramMatrix(m.hermitian_part())
}

pub fn is_linearly_independent(e: &Ensemble) -> bool {
    is_linearly_independent_with(e, INDEPENDENCE_THRESHOLD)
}

pub fn is_linearly_independent_with(e: &Ensemble, threshold: f64) -> bool {
    if e.len() > e.dim() {
        return false;
    }
    gram(e)
        .min_eigenvalue()
        .map(|m| m > threshold)
        .unwrap_or(false)
}

/// Draws magnitudes uniformly from `[0.01, 1)` and normalizes them.
pub fn random_symmetric<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<SymmetricEnsemble> {
    let raw: Vec<f64> = (0..n).map(|_| rng.random_range(0.01..1.0)).collect();
    make_symmetric(n, &raw)
}

/// PSD check of a Gram matrix against the default floor.
pub fn gram_is_psd(g: &GramMatrix) -> bool {
    g.min_eigenvalue()
        .map(|m| m >= Tolerance::default().psd_floor)
        .unwrap_or(false)
}

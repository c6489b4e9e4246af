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

use thiserror::Error;

/// Errors produced by the numerical kernel, ensemble construction and the
/// measure computations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("expected {expected} entries for the requested shape, got {got}")]
    ShapeMismatch { expected: usize, got: usize },

    #[error("non-finite matrix entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not Hermitian (max |A - A^H| = {0:e})")]
    NotHermitian(f64),

    #[error("Hermitian eigen-decomposition did not converge")]
    NumericalFailure,

    #[error("matrix function is singular at numerically zero eigenvalue {0:e}")]
    SingularInput(f64),

    #[error("matrix function produced a non-finite value at eigenvalue {0:e}")]
    NonFiniteFunction(f64),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("state {index} is not normalized (norm = {norm})")]
    NotNormalized { index: usize, norm: f64 },

    #[error("ensemble has no states")]
    EmptyEnsemble,

    #[error("{priors} priors given for {states} states")]
    CountMismatch { priors: usize, states: usize },

    #[error("prior {index} is negative or non-finite: {value}")]
    InvalidPrior { index: usize, value: f64 },

    #[error("priors must sum to 1 (sum = {0:.15})")]
    PriorsNotNormalized(f64),

    #[error("symmetric ensembles need n >= 2, got {0}")]
    TooFewStates(usize),

    #[error("expected {expected} coefficients, got {got}")]
    BadLength { expected: usize, got: usize },

    #[error("coefficient {index} must be positive, got {value}")]
    ZeroCoefficient { index: usize, value: f64 },

    #[error("{name} = {value} is outside [{lo}, {hi}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("infeasible extremal configuration: {0}")]
    InfeasibleConfig(String),

    #[error("square-root measurement frame is singular (completeness error {0:e})")]
    SingularFrame(f64),

    #[error("invalid POVM: {0}")]
    InvalidPovm(String),

    #[error("states are linearly dependent (min Gram eigenvalue {0:e})")]
    LinearlyDependent(f64),

    #[error("invalid tolerance: {0}")]
    InvalidTolerance(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Range check shared by the scalar closed forms.
pub(crate) fn check_range(name: &'static str, value: f64, lo: f64, hi: f64) -> Result<f64> {
    if value.is_finite() && value >= lo && value <= hi {
        Ok(value)
    } else {
        Err(Error::OutOfRange { name, value, lo, hi })
    }
}

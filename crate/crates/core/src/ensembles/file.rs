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

//! JSON ensemble documents.
//!
//! ```json
//! {"kind": "symmetric", "n": 3, "coeffs": [1, 1, 2]}
//! {"kind": "explicit", "priors": [0.5, 0.5], "states": [[[1, 0], [0, 0]], [[0.6, 0], [0.8, 0]]]}
//! ```
//!
//! Symmetric coefficients may be unnormalized; the loader rescales them and
//! keeps the applied factor. A document may also be an object carrying the
//! ensemble under an `"ensemble"` key (as emitted by `compute`).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{make_symmetric_scaled, realize, Ensemble, PureState, SymmetricEnsemble};
use crate::error::Error;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum EnsembleSpec {
    Symmetric {
        n: usize,
        coeffs: Vec<f64>,
    },
    Explicit {
        priors: Vec<f64>,
        /// One list of `[re, im]` pairs per state.
        states: Vec<Vec<[f64; 2]>>,
    },
}

/// Failure to read an ensemble document.
#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("JSON syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("schema error: {0}")]
    Schema(String),
    /// The document parsed but describes an invalid ensemble.
    #[error("invalid ensemble: {0}")]
    Invalid(#[from] Error),
}

/// An ensemble as loaded from a document.
#[derive(Debug, Clone)]
pub struct LoadedEnsemble {
    pub ensemble: Ensemble,
    pub symmetric: Option<SymmetricEnsemble>,
    /// Factor applied to the input coefficients (1 for explicit ensembles).
    pub scale_factor: f64,
}

impl LoadedEnsemble {
    /// Normalized document for this ensemble, at full precision.
    pub fn to_spec(&self) -> EnsembleSpec {
        match &self.symmetric {
            Some(sym) => EnsembleSpec::Symmetric {
                n: sym.n(),
                coeffs: sym.coeffs().to_vec(),
            },
            None => EnsembleSpec::Explicit {
                priors: self.ensemble.priors().to_vec(),
                states: self
                    .ensemble
                    .states()
                    .iter()
                    .map(|s| s.amplitudes().iter().map(|z| [z.re, z.im]).collect())
                    .collect(),
            },
        }
    }
}

impl EnsembleSpec {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| DocumentError::Syntax {
                line: e.line(),
                column: e.column(),
                message: e.to_string(),
            })?;
        let inner = match value {
            serde_json::Value::Object(mut map) if map.contains_key("ensemble") => {
                map.remove("ensemble").unwrap_or_default()
            }
            other => other,
        };
        serde_json::from_value(inner).map_err(|e| DocumentError::Schema(e.to_string()))
    }

    pub fn build(&self) -> Result<LoadedEnsemble, Error> {
        match self {
            EnsembleSpec::Symmetric { n, coeffs } => {
                let (sym, scale_factor) = make_symmetric_scaled(*n, coeffs)?;
                Ok(LoadedEnsemble {
                    ensemble: realize(&sym),
                    symmetric: Some(sym),
                    scale_factor,
                })
            }
            EnsembleSpec::Explicit { priors, states } => {
                let states = states
                    .iter()
                    .enumerate()
                    .map(|(index, amps)| {
                        let v: Vec<Complex64> =
                            amps.iter().map(|[re, im]| Complex64::new(*re, *im)).collect();
                        PureState::new(v).map_err(|e| match e {
                            Error::NotNormalized { norm, .. } => Error::NotNormalized { index, norm },
                            other => other,
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(LoadedEnsemble {
                    ensemble: Ensemble::new(states, priors.clone())?,
                    symmetric: None,
                    scale_factor: 1.0,
                })
            }
        }
    }
}

/// Parses and builds in one step.
pub fn load(text: &str) -> Result<LoadedEnsemble, DocumentError> {
    Ok(EnsembleSpec::parse(text)?.build()?)
}

impl LoadedEnsemble {
    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        load(text)
    }
}

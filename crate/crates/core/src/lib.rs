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

//! Distinguishability measures for ensembles of pure quantum states.
//!
//! The crate computes the optimal minimum-error ("hypothesis testing") and
//! unambiguous discrimination probabilities for two-state ensembles and for
//! equal-prior symmetric ensembles, builds the square-root measurement and
//! certifies its optimality, and locates pairs of ensembles that the two
//! measures rank in opposite orders.
//!
//! Module map:
//!
//! - [`numerics`]: dense Hermitian eigen-decomposition and matrix functions.
//! - [`ensembles`]: pure states, ensembles, the symmetric family and its JSON form.
//! - [`measures`]: closed forms, the square-root measurement, optimality certificate.
//! - [`extremal`]: bounds on minimum-error success at fixed unambiguous success.
//! - [`ordering`]: reversal witnesses and the ratio grid.
//! - [`oracles`]: brute-force cross-checks.
//! - [`verify`]: closed-form versus oracle suites.
//!
//! Batch work (grids, random trials, suites) runs on rayon when the
//! `parallel` feature is enabled, which it is by default.

#![forbid(unsafe_code)]
// `!(x > 0.0)` is how NaN gets rejected alongside the range check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod ensembles;
pub mod error;
pub mod extremal;
pub mod fmt;
pub mod measures;
pub mod numerics;
pub mod oracles;
pub mod ordering;
pub mod par;
pub mod verify;

pub use error::{Error, Result};
pub use par::Backend;

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

//! Distinguishability measures: closed forms for two states and for the
//! symmetric family, the square-root measurement, and the minimum-error
//! optimality conditions used to certify a measurement.

use serde::Serialize;

use crate::ensembles::{Ensemble, SymmetricEnsemble};
use crate::error::{check_range, Error, Result};
use crate::numerics::{self, ComplexMatrix, NullPolicy, Tolerance};

/// Completeness tolerance `‖Σ E_j − I‖_max`.
pub const COMPLETENESS_EPS: f64 = 1e-9;
/// Hermiticity tolerance on the certificate operator.
pub const CERTIFICATE_HERMITICITY_EPS: f64 = 1e-8;

/// Positive operators summing to the identity.
#[derive(Debug, Clone)]
pub struct Povm {
    elements: Vec<ComplexMatrix>,
}

impl Povm {
    pub fn new(elements: Vec<ComplexMatrix>) -> Result<Self> {
        Self::new_with(elements, &Tolerance::default())
    }

    pub fn new_with(elements: Vec<ComplexMatrix>, tol: &Tolerance) -> Result<Self> {
        let Some(first) = elements.first() else {
            return Err(Error::InvalidPovm("no elements".into()));
        };
        let dim = first.rows();
        for (k, el) in elements.iter().enumerate() {
            if el.rows() != dim || el.cols() != dim {
                return Err(Error::InvalidPovm(format!(
                    "element {k} is {}x{}, expected {dim}x{dim}",
                    el.rows(),
                    el.cols()
                )));
            }
            let min = numerics::min_eigenvalue_with(el, tol)
                .map_err(|e| Error::InvalidPovm(format!("element {k}: {e}")))?;
            if min < tol.psd_floor {
                return Err(Error::InvalidPovm(format!(
                    "element {k} has negative eigenvalue {min:e}"
                )));
            }
        }
        let povm = Self { elements };
        let err = povm.completeness_error();
        if err > COMPLETENESS_EPS {
            return Err(Error::InvalidPovm(format!(
                "elements sum to identity only within {err:e}"
            )));
        }
        Ok(povm)
    }

    /// Identity split evenly over `count` outcomes.
    pub fn uniform(dim: usize, count: usize) -> Self {
        let e = ComplexMatrix::identity(dim).scale(1.0 / count as f64);
        Self {
            elements: vec![e; count],
        }
    }

    /// Projective measurement onto the given orthonormal states.
    pub fn projective(states: &[crate::ensembles::PureState]) -> Result<Self> {
        Self::new(states.iter().map(|s| s.projector()).collect())
    }

    pub fn elements(&self) -> &[ComplexMatrix] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.elements[0].rows()
    }

    pub fn completeness_error(&self) -> f64 {
        let dim = self.dim();
        let mut sum = ComplexMatrix::zeros(dim);
        for e in &self.elements {
            sum = &sum + e;
        }
        sum.max_abs_diff(&ComplexMatrix::identity(dim))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    Oracle,
}

/// One named measure value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasureReport {
    pub measure_name: String,
    pub value: f64,
    pub method: Method,
    pub certificate_ok: Option<bool>,
}

impl MeasureReport {
    /// A probability-valued report; rejects values outside `[0, 1 + 1e-12]`.
    pub fn probability(
        name: &str,
        value: f64,
        method: Method,
        certificate_ok: Option<bool>,
    ) -> Result<Self> {
        check_range("probability", value, 0.0, 1.0 + 1e-12)?;
        Ok(Self {
            measure_name: name.to_string(),
            value,
            method,
            certificate_ok,
        })
    }

    /// An entropy report, in bits.
    pub fn entropy(name: &str, value: f64, method: Method) -> Result<Self> {
        check_range("entropy", value, 0.0, f64::MAX)?;
        Ok(Self {
            measure_name: name.to_string(),
            value,
            method,
            certificate_ok: None,
        })
    }
}

/// Optimal minimum-error success probability for two pure states with
/// overlap modulus `overlap` and prior difference `delta`.
pub fn helstrom_two_state(overlap: f64, delta: f64) -> Result<f64> {
    let s = check_range("overlap", overlap, 0.0, 1.0)?;
    let d = check_range("delta", delta, 0.0, 1.0)?;
    Ok(0.5 * (1.0 + (1.0 - (1.0 - d * d) * s * s).max(0.0).sqrt()))
}

/// The two branch expressions of the optimal two-state unambiguous
/// probability, without selecting one. Returns `(square-root branch,
/// single-outcome branch)`.
pub fn jaeger_shimony_branches(overlap: f64, delta: f64) -> Result<(f64, f64)> {
    let s = check_range("overlap", overlap, 0.0, 1.0)?;
    let d = check_range("delta", delta, 0.0, 1.0)?;
    let first = 1.0 - (1.0 - d * d).sqrt() * s;
    let second = 0.5 * (1.0 + d) * (1.0 - s * s);
    Ok((first, second))
}

/// Overlap at which the optimal unambiguous strategy switches branch.
pub fn jaeger_shimony_threshold(delta: f64) -> f64 {
    ((1.0 - delta) / (1.0 + delta)).sqrt()
}

/// Optimal unambiguous discrimination probability for two pure states.
/// `delta` must lie in `[0, 1)`.
pub fn jaeger_shimony(overlap: f64, delta: f64) -> Result<f64> {
    check_range("delta", delta, 0.0, 1.0)?;
    if delta >= 1.0 {
        return Err(Error::OutOfRange {
            name: "delta",
            value: delta,
            lo: 0.0,
            hi: 1.0,
        });
    }
    let (first, second) = jaeger_shimony_branches(overlap, delta)?;
    if jaeger_shimony_threshold(delta) >= overlap {
        Ok(first)
    } else {
        Ok(second)
    }
}

/// `N · min_r c_r²`.
pub fn p_usd_symmetric(sym: &SymmetricEnsemble) -> f64 {
    let m = sym.min_coeff();
    sym.n() as f64 * m * m
}

/// `(Σ_r c_r)² / N`, attained by the square-root measurement.
pub fn p_hyp_symmetric(sym: &SymmetricEnsemble) -> f64 {
    let s: f64 = sym.coeffs().iter().sum();
    s * s / sym.n() as f64
}

/// Square-root measurement `E_j = |ω_j><ω_j|`, `|ω_j> = Φ^{-1/2}|ψ_j>`,
/// with `Φ = Σ_j |ψ_j><ψ_j|`. When the states do not span the ambient space
/// the projector onto the null space of `Φ` is appended as a final element.
pub fn square_root_measurement(e: &Ensemble) -> Result<Povm> {
    square_root_measurement_with(e, &Tolerance::default())
}

pub fn square_root_measurement_with(e: &Ensemble, tol: &Tolerance) -> Result<Povm> {
    let frame = e.frame_operator();
    let eig = numerics::hermitian_eig_with(&frame, tol)?;
    let inv_sqrt = eig.apply(|x| x.powf(-0.5), NullPolicy::MapZeroToZero, tol.equality_eps)?;
    let mut elements: Vec<ComplexMatrix> = e
        .states()
        .iter()
        .map(|s| ComplexMatrix::outer(&inv_sqrt.apply(s.amplitudes())))
        .collect();
    if eig.eigenvalues.iter().any(|x| x.abs() < tol.equality_eps) {
        elements.push(eig.null_projector(tol.equality_eps));
    }
    let mut sum = ComplexMatrix::zeros(e.dim());
    for el in &elements {
        sum = &sum + el;
    }
    let err = sum.max_abs_diff(&ComplexMatrix::identity(e.dim()));
    if !(err <= COMPLETENESS_EPS) {
        return Err(Error::SingularFrame(err));
    }
    Povm::new_with(elements, tol)
}

/// `Σ_j p_j <ψ_j|E_j|ψ_j>`; element `j` scores state `j`, extra elements
/// score nothing.
pub fn hyp_success_probability(e: &Ensemble, m: &Povm) -> Result<f64> {
    check_shapes(e, m)?;
    Ok(e.states()
        .iter()
        .zip(e.priors())
        .zip(m.elements())
        .map(|((s, p), el)| p * el.sandwich(s.amplitudes(), s.amplitudes()).re)
        .sum())
}

fn check_shapes(e: &Ensemble, m: &Povm) -> Result<()> {
    if m.len() < e.len() {
        return Err(Error::DimensionMismatch {
            expected: e.len(),
            got: m.len(),
        });
    }
    if m.dim() != e.dim() {
        return Err(Error::DimensionMismatch {
            expected: e.dim(),
            got: m.dim(),
        });
    }
    Ok(())
}

/// Minimum-error optimality conditions: with `Υ = Σ_j p_j E_j ρ_j`, the
/// measurement is optimal iff `Υ` is Hermitian and `Υ − p_j ρ_j ≥ 0` for all j.
pub fn optimality_certificate(e: &Ensemble, m: &Povm) -> Result<bool> {
    optimality_certificate_with(e, m, &Tolerance::default())
}

pub fn optimality_certificate_with(e: &Ensemble, m: &Povm, tol: &Tolerance) -> Result<bool> {
    Ok(certificate_margin(e, m, tol)?.is_some_and(|min| min >= tol.psd_floor * e.dim() as f64))
}

/// Smallest eigenvalue over all `Υ − p_j ρ_j`, or `None` when `Υ` fails the
/// Hermiticity check.
pub fn certificate_margin(e: &Ensemble, m: &Povm, tol: &Tolerance) -> Result<Option<f64>> {
    check_shapes(e, m)?;
    let dim = e.dim();
    let weighted: Vec<ComplexMatrix> = e
        .states()
        .iter()
        .zip(e.priors())
        .map(|(s, &p)| s.projector().scale(p))
        .collect();
    let mut upsilon = ComplexMatrix::zeros(dim);
    for (el, rho) in m.elements().iter().zip(&weighted) {
        upsilon = &upsilon + &(el * rho);
    }
    if upsilon.hermiticity_error() > CERTIFICATE_HERMITICITY_EPS {
        return Ok(None);
    }
    let upsilon = upsilon.hermitian_part();
    let mut worst = f64::INFINITY;
    for rho in &weighted {
        let diff = (&upsilon - rho).hermitian_part();
        worst = worst.min(numerics::min_eigenvalue_with(&diff, tol)?);
    }
    Ok(Some(worst))
}

/// `−x log₂ x − (1−x) log₂(1−x)` with `0 log 0 = 0`.
pub fn binary_entropy(x: f64) -> f64 {
    let term = |p: f64| if p > 0.0 { -p * p.log2() } else { 0.0 };
    term(x) + term(1.0 - x)
}

/// Von Neumann entropy (bits) of the two-state ensemble density operator.
pub fn ensemble_entropy_two_state(overlap: f64, delta: f64) -> Result<f64> {
    let s = check_range("overlap", overlap, 0.0, 1.0)?;
    let d = check_range("delta", delta, 0.0, 1.0)?;
    let x = 0.5 * (1.0 + (1.0 - (1.0 - d * d) * (1.0 - s * s)).max(0.0).sqrt());
    Ok(binary_entropy(x))
}

/// Helstrom probability of a two-state ensemble.
pub fn helstrom(e: &Ensemble) -> Result<f64> {
    let (s, d) = e.two_state_scalars()?;
    helstrom_two_state(s, d)
}

/// Optimal unambiguous probability of a two-state ensemble.
pub fn jaeger_shimony_ensemble(e: &Ensemble) -> Result<f64> {
    let (s, d) = e.two_state_scalars()?;
    jaeger_shimony(s, d)
}

/// Closed-form entropy of a two-state ensemble.
pub fn entropy_two_state(e: &Ensemble) -> Result<f64> {
    let (s, d) = e.two_state_scalars()?;
    ensemble_entropy_two_state(s, d)
}

//! Spectral quantities of the interpolated Hamiltonian: low-lying eigenpairs,
//! gap curves over the schedule, degeneracy, operator norms and runtime
//! estimates.

use std::io::Write;

use num_complex::Complex;
use rayon::prelude::*;
use serde::Serialize;

use crate::eigen::eigh;
use crate::error::{Error, Result};
use crate::hamiltonian::{DiagonalHamiltonian, InitialHamiltonian, Interpolation, ScheduleGrid};
use crate::mco::{scalarize, trivial_solutions, Linearization, McoInstance};
use crate::operator::HermitianOperator;
use crate::scalar::{Real, Scalar};

/// Default absolute tolerance for calling two eigenvalues equal.
pub const DEFAULT_DEGENERACY_TOL: f64 = 1e-9;

/// Default number of schedule points in a gap scan.
pub const DEFAULT_GRID_POINTS: usize = 512;

#[derive(Clone, Debug, PartialEq)]
pub struct EigenPair<T> {
    pub value: T,
    pub vector: Vec<Complex<T>>,
}

/// The two algebraically smallest eigenpairs.
pub fn smallest_two<T: Real>(h: &HermitianOperator<T>) -> Result<(EigenPair<T>, EigenPair<T>)> {
    if h.dim() < 2 {
        return Err(Error::InvalidArgument("need dimension >= 2".into()));
    }
    let eig = eigh(h, true)?;
    let mut vectors = eig.vectors.expect("vectors requested").into_iter();
    let first = EigenPair {
        value: eig.values[0],
        vector: vectors.next().unwrap(),
    };
    let second = EigenPair {
        value: eig.values[1],
        vector: vectors.next().unwrap(),
    };
    Ok((first, second))
}

/// Largest absolute eigenvalue.
pub fn operator_norm<T: Real>(h: &HermitianOperator<T>) -> Result<T> {
    let eig = eigh(h, false)?;
    Ok(eig.values.iter().fold(T::zero(), |m, v| m.max(v.abs())))
}

/// `max_s ||dH/ds||`; the linear schedule has constant `dH/ds = H_w - H_0`.
pub fn delta_max<T: Real>(h0: &InitialHamiltonian<T>, hw: &DiagonalHamiltonian<T>) -> Result<T> {
    operator_norm(&Interpolation::new(h0, hw)?.derivative())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GapSample<T> {
    pub s: T,
    pub lambda0: T,
    pub lambda1: T,
    pub gap: T,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GapCurve<T> {
    pub samples: Vec<GapSample<T>>,
    pub g_min: T,
    pub argmin_s: T,
}

impl<T: Real> GapCurve<T> {
    pub fn first(&self) -> &GapSample<T> {
        &self.samples[0]
    }

    pub fn last(&self) -> &GapSample<T> {
        &self.samples[self.samples.len() - 1]
    }

    /// `s,lambda0,lambda1,gap`, one row per sample.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "s,lambda0,lambda1,gap")?;
        for p in &self.samples {
            writeln!(w, "{},{},{},{}", p.s, p.lambda0, p.lambda1, p.gap)?;
        }
        Ok(())
    }
}

/// Two smallest eigenvalues of `H(s)` at every grid point.
///
/// Points are solved in parallel and merged in grid order.
pub fn gap_scan<T: Real>(
    h0: &InitialHamiltonian<T>,
    hw: &DiagonalHamiltonian<T>,
    grid: &ScheduleGrid<T>,
) -> Result<GapCurve<T>> {
    let interp = Interpolation::new(h0, hw)?;
    let samples = grid
        .points()
        .par_iter()
        .map(|&s| {
            // Both endpoint spectra are known exactly.
            if s == T::zero() || s == T::one() {
                let mut vals: Vec<T> = if s.is_zero() {
                    h0.h_values().iter().map(|&h| h * h0.scale()).collect()
                } else {
                    hw.diagonal().to_vec()
                };
                vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
                return Ok(GapSample {
                    s,
                    lambda0: vals[0],
                    lambda1: vals[1],
                    gap: vals[1] - vals[0],
                });
            }
            let m = interp.real_at(s)?;
            let (vals, _) =
                crate::eigen::symmetric_eigen(interp.dim(), m, false).map_err(|e| match e {
                    Error::NoConvergence { .. } => Error::NoConvergence {
                        at_s: Some(s.as_f64()),
                    },
                    other => other,
                })?;
            Ok(GapSample {
                s,
                lambda0: vals[0],
                lambda1: vals[1],
                gap: vals[1] - vals[0],
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let best = samples
        .iter()
        .min_by(|a, b| a.gap.partial_cmp(&b.gap).unwrap())
        .expect("grid is nonempty");
    Ok(GapCurve {
        g_min: best.gap,
        argmin_s: best.s,
        samples,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DegeneracyReport<T> {
    pub min_eigenvalue: T,
    pub multiplicity: usize,
    /// Domain indices attaining the minimum; empty for dense operators.
    pub witness_indices: Vec<usize>,
}

impl<T> DegeneracyReport<T> {
    pub fn is_degenerate(&self) -> bool {
        self.multiplicity > 1
    }
}

/// Multiplicity of the smallest diagonal entry within `tol`.
pub fn degeneracy_check<T: Scalar>(hw: &DiagonalHamiltonian<T>, tol: T) -> DegeneracyReport<T> {
    diagonal_degeneracy(hw.diagonal(), tol)
}

pub(crate) fn diagonal_degeneracy<T: Scalar>(diag: &[T], tol: T) -> DegeneracyReport<T> {
    let min = diag.iter().copied().fold(diag[0], |a, b| a.min_of(b));
    let witness_indices: Vec<usize> = diag
        .iter()
        .enumerate()
        .filter(|(_, &v)| v - min <= tol)
        .map(|(x, _)| x)
        .collect();
    DegeneracyReport {
        min_eigenvalue: min,
        multiplicity: witness_indices.len(),
        witness_indices,
    }
}

/// Multiplicity of the smallest eigenvalue of a dense operator.
pub fn spectral_degeneracy<T: Real>(
    h: &HermitianOperator<T>,
    tol: T,
) -> Result<DegeneracyReport<T>> {
    let eig = eigh(h, false)?;
    let min = eig.values[0];
    Ok(DegeneracyReport {
        min_eigenvalue: min,
        multiplicity: eig.values.iter().filter(|&&v| v - min <= tol).count(),
        witness_indices: Vec::new(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RuntimeEstimate {
    pub g_min: f64,
    pub delta_max: f64,
    /// `delta_max / g_min^2`.
    #[serde(rename = "tBig0")]
    pub t_big_o: f64,
    /// `1e5 / delta^2 * max(|H'|^3 / lambda^4, |H'| |H''| / lambda^3)`.
    pub t_theorem1: f64,
}

/// Runtime estimates for the linear schedule, where `H'' = 0`.
pub fn runtime_estimate(
    g_min: f64,
    delta_max: f64,
    delta: f64,
    gap_floor: f64,
) -> Result<RuntimeEstimate> {
    runtime_estimate_with(g_min, delta_max, delta, gap_floor, 0.0)
}

/// As [`runtime_estimate`] with an explicit `||H''||`.
pub fn runtime_estimate_with(
    g_min: f64,
    delta_max: f64,
    delta: f64,
    gap_floor: f64,
    second_derivative: f64,
) -> Result<RuntimeEstimate> {
    if !(g_min > 0.0) {
        return Err(Error::DegenerateGap(g_min));
    }
    if !(gap_floor > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "gap floor must be positive, got {gap_floor}"
        )));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "delta must lie in (0, 1), got {delta}"
        )));
    }
    if !(delta_max >= 0.0) || !(second_derivative >= 0.0) {
        return Err(Error::InvalidArgument(
            "derivative norms must be nonnegative".into(),
        ));
    }
    let first = delta_max.powi(3) / gap_floor.powi(4);
    let second = delta_max * second_derivative / gap_floor.powi(3);
    Ok(RuntimeEstimate {
        g_min,
        delta_max,
        t_big_o: delta_max / (g_min * g_min),
        // divide twice: 1e5 / 0.1 / 0.1 lands on 1e7 exactly, 1e5 / 0.01 does not
        t_theorem1: 1e5 / delta / delta * first.max(second),
    })
}

/// Smallest/second-smallest scalarization values and the bounds that relate
/// them to the gap vector. Every check is reported, none is enforced.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EndGapDiagnostics {
    pub minimizer: usize,
    pub runner_up: usize,
    pub sigma_w: f64,
    pub alpha_w: f64,
    pub end_gap: f64,
    pub lambda_dot_w: f64,
    pub minimizer_trivial: bool,
    /// `sigma_w > <w, lambda>`; `None` when the minimizer is trivial.
    pub lemma4_holds: Option<bool>,
    /// `alpha_w - sigma_w >= <lambda, w>`.
    pub lemma5_bound_holds: bool,
    /// `g_min >= end gap`; `None` without a scan.
    pub conjecture_holds: Option<bool>,
    pub g_min: Option<f64>,
}

pub fn end_gap_diagnostics<T: Scalar>(
    inst: &McoInstance<T>,
    w: &Linearization<T>,
    lambda: &[T],
    g_min: Option<f64>,
) -> Result<EndGapDiagnostics> {
    if lambda.len() != inst.d() {
        return Err(Error::Dimension {
            expected: inst.d(),
            got: lambda.len(),
        });
    }
    let values = scalarize(inst, w)?;
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap().then(a.cmp(&b)));
    let (minimizer, runner_up) = (order[0], order[1]);
    let sigma = values[minimizer];
    let alpha = values[runner_up];
    let lw = w.apply(lambda);
    let trivial = trivial_solutions(inst).contains(&minimizer);
    let end_gap = alpha - sigma;
    Ok(EndGapDiagnostics {
        minimizer,
        runner_up,
        sigma_w: sigma.as_f64(),
        alpha_w: alpha.as_f64(),
        end_gap: end_gap.as_f64(),
        lambda_dot_w: lw.as_f64(),
        minimizer_trivial: trivial,
        lemma4_holds: (!trivial).then(|| sigma > lw),
        lemma5_bound_holds: end_gap >= lw,
        conjecture_holds: g_min.map(|g| g >= end_gap.as_f64()),
        g_min,
    })
}

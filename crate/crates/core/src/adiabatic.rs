//! Adiabatic evolution: ground-state preparation, Schroedinger propagation
//! under `H(t / T)` and computational-basis measurement.

use std::io::Write;

use num_complex::Complex;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::eigen::symmetric_eigen;
use crate::error::{Error, Result};
use crate::hamiltonian::{
    commutes, CommutatorCheck, DiagonalHamiltonian, InitialHamiltonian, Interpolation,
};
use crate::scalar::Real;
use crate::spectral::{degeneracy_check, DEFAULT_DEGENERACY_TOL};

/// Default number of piecewise-constant slices.
pub const DEFAULT_STEPS: usize = 4096;

/// Norm deviation tolerated on input states.
pub const NORM_TOL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector<T> {
    amplitudes: Vec<Complex<T>>,
}

impl<T: Real> StateVector<T> {
    /// Wraps amplitudes whose norm is one within [`NORM_TOL`].
    pub fn new(amplitudes: Vec<Complex<T>>) -> Result<Self> {
        if amplitudes.len() < 2 || !amplitudes.len().is_power_of_two() {
            return Err(Error::NotPowerOfTwo(amplitudes.len()));
        }
        let state = Self { amplitudes };
        let norm = state.norm().as_f64();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(state)
    }

    /// Computational basis state `|x>`.
    pub fn basis(n: u32, x: usize) -> Result<Self> {
        let dim = 1usize << n;
        if x >= dim {
            return Err(Error::InvalidArgument(format!("basis index {x} >= {dim}")));
        }
        let mut amps = vec![Complex::zero(); dim];
        amps[x] = Complex::from(T::one());
        Self::new(amps)
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amplitudes
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn norm(&self) -> T {
        self.amplitudes
            .iter()
            .fold(T::zero(), |s, z| s + z.norm_sqr())
            .sqrt()
    }

    /// Born probabilities `|a_x|^2`.
    pub fn probabilities(&self) -> Vec<T> {
        self.amplitudes.iter().map(|z| z.norm_sqr()).collect()
    }

    /// `|<self|other>|^2`; global phase drops out.
    pub fn overlap_sq(&self, other: &Self) -> T {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .fold(Complex::zero(), |acc: Complex<T>, (a, b)| {
                acc + a.conj() * b
            })
            .norm_sqr()
    }
}

impl<T: Real> Serialize for StateVector<T> {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let re: Vec<f64> = self.amplitudes.iter().map(|z| z.re.as_f64()).collect();
        let im: Vec<f64> = self.amplitudes.iter().map(|z| z.im.as_f64()).collect();
        let mut st = ser.serialize_struct("StateVector", 2)?;
        st.serialize_field("re", &re)?;
        st.serialize_field("im", &im)?;
        st.end()
    }
}

/// Uniform superposition `2^{-n/2} sum_x |x>`, the ground state of `H_0`.
pub fn initial_ground_state<T: Real>(n: u32) -> Result<StateVector<T>> {
    if n == 0 {
        return Err(Error::InvalidArgument("need at least one qubit".into()));
    }
    let dim = 1usize << n;
    let amp = T::one() / T::from_usize(dim).unwrap().sqrt();
    StateVector::new(vec![Complex::from(amp); dim])
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EvolutionResult<T: Real> {
    pub final_state: StateVector<T>,
    /// `|<target|psi(T)>|^2` against the unique minimizer of `H_w`.
    pub ground_fidelity: Option<f64>,
    pub target_index: Option<usize>,
    /// The minimum of `H_w` is degenerate, so no fidelity is reported.
    pub target_degenerate: bool,
    pub distribution: Vec<f64>,
    /// Largest `| ||psi|| - 1 |` seen after any slice.
    pub norm_drift: f64,
    pub total_time: f64,
    pub steps: usize,
    pub commutator: CommutatorCheck,
    pub warnings: Vec<String>,
}

/// Integrates `i dpsi/dt = H(t/T) psi` over `[0, T]`.
///
/// Each of the `steps` slices applies the exact propagator of the Hamiltonian
/// at the slice midpoint, obtained from its eigendecomposition.
pub fn evolve<T: Real>(
    h0: &InitialHamiltonian<T>,
    hw: &DiagonalHamiltonian<T>,
    total_time: T,
    steps: usize,
    psi0: &StateVector<T>,
) -> Result<EvolutionResult<T>> {
    if steps == 0 {
        return Err(Error::InvalidArgument("steps must be positive".into()));
    }
    if !(total_time >= T::zero()) || !total_time.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "total time must be >= 0, got {total_time}"
        )));
    }
    let interp = Interpolation::new(h0, hw)?;
    if psi0.dim() != interp.dim() {
        return Err(Error::Dimension {
            expected: interp.dim(),
            got: psi0.dim(),
        });
    }
    let norm0 = psi0.norm().as_f64();
    if (norm0 - 1.0).abs() > NORM_TOL {
        return Err(Error::NotNormalized(norm0));
    }

    let mut warnings = Vec::new();
    let commutator = commutes(h0, hw, T::lit(1e-12))?;
    if !commutator.noncommuting {
        warnings.push(
            "initial and final Hamiltonians commute; the evolution cannot move the ground state"
                .into(),
        );
    }

    let dim = interp.dim();
    let mut psi = psi0.amplitudes().to_vec();
    let mut norm_drift = 0.0f64;
    if total_time > T::zero() {
        let dt = total_time / T::from_usize(steps).unwrap();
        let steps_t = T::from_usize(steps).unwrap();
        let half = T::lit(0.5);
        // Slice propagators are independent; build them in parallel batches
        // and apply them in time order.
        let batch = rayon::current_num_threads().max(1) * 4;
        let mut k0 = 0;
        let mut coeff = vec![Complex::zero(); dim];
        while k0 < steps {
            let k1 = (k0 + batch).min(steps);
            let slices = (k0..k1)
                .into_par_iter()
                .map(|k| {
                    let s = (T::from_usize(k).unwrap() + half) / steps_t;
                    let m = interp.real_at(s)?;
                    let (vals, vecs) = symmetric_eigen(dim, m, true).map_err(|e| match e {
                        Error::NoConvergence { .. } => Error::NoConvergence {
                            at_s: Some(s.as_f64()),
                        },
                        other => other,
                    })?;
                    Ok((vals, vecs.expect("vectors requested")))
                })
                .collect::<Result<Vec<_>>>()?;
            for (vals, vecs) in slices {
                // psi <- V exp(-i dt L) V^T psi
                for (c, (v, &lam)) in coeff.iter_mut().zip(vecs.iter().zip(&vals)) {
                    let proj = v
                        .iter()
                        .zip(&psi)
                        .fold(Complex::zero(), |acc: Complex<T>, (&vk, &pk)| acc + pk * vk);
                    let phase = -lam * dt;
                    *c = proj * Complex::new(phase.cos(), phase.sin());
                }
                psi.iter_mut().for_each(|p| *p = Complex::zero());
                for (v, &c) in vecs.iter().zip(&coeff) {
                    for (p, &vk) in psi.iter_mut().zip(v) {
                        *p = *p + c * vk;
                    }
                }
                let norm = psi.iter().fold(T::zero(), |s, z| s + z.norm_sqr()).sqrt();
                norm_drift = norm_drift.max((norm.as_f64() - 1.0).abs());
            }
            k0 = k1;
        }
    }

    let final_state = StateVector { amplitudes: psi };
    let deg = degeneracy_check(hw, T::lit(DEFAULT_DEGENERACY_TOL));
    let (ground_fidelity, target_index) = if deg.is_degenerate() {
        warnings.push(format!(
            "final Hamiltonian minimum is degenerate over {:?}; fidelity omitted",
            deg.witness_indices
        ));
        (None, None)
    } else {
        let x = deg.witness_indices[0];
        (
            Some(final_state.amplitudes[x].norm_sqr().as_f64().min(1.0)),
            Some(x),
        )
    };
    let distribution = final_state
        .probabilities()
        .iter()
        .map(|p| p.as_f64())
        .collect();
    Ok(EvolutionResult {
        final_state,
        ground_fidelity,
        target_index,
        target_degenerate: deg.is_degenerate(),
        distribution,
        norm_drift,
        total_time: total_time.as_f64(),
        steps,
        commutator,
        warnings,
    })
}

/// `shots` i.i.d. computational-basis outcomes; returns counts per index.
pub fn measure<T: Real>(state: &StateVector<T>, shots: u64, seed: u64) -> Result<Vec<u64>> {
    let norm = state.norm().as_f64();
    if (norm - 1.0).abs() > NORM_TOL {
        return Err(Error::NotNormalized(norm));
    }
    let mut cdf = Vec::with_capacity(state.dim());
    let mut acc = 0.0f64;
    for p in state.probabilities() {
        acc += p.as_f64();
        cdf.push(acc);
    }
    let total = acc;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = vec![0u64; state.dim()];
    for _ in 0..shots {
        let u: f64 = rng.random::<f64>() * total;
        // first index whose cumulative mass exceeds u
        let x = cdf.partition_point(|&c| c <= u).min(state.dim() - 1);
        counts[x] += 1;
    }
    Ok(counts)
}

/// `x,count,probability` where `probability` is the Born probability of `x`.
pub fn write_histogram_csv<T: Real, W: Write>(
    state: &StateVector<T>,
    counts: &[u64],
    mut w: W,
) -> Result<()> {
    writeln!(w, "x,count,probability")?;
    for (x, (c, p)) in counts.iter().zip(state.probabilities()).enumerate() {
        writeln!(w, "{x},{c},{p}")?;
    }
    Ok(())
}

//! Initial, final and interpolated Hamiltonians.
//!
//! `H(s) = (1 - s) H_0 + s H_w` with `H_w = sum_x <f(x), w> |x><x|` and
//! `H_0 = c sum_x h(x) |x^><x^|` diagonal in the Hadamard basis. Units have
//! `hbar = 1`.

use num_complex::Complex;
use serde::Serialize;

use crate::eigen::eigh;
use crate::error::{Error, Result};
use crate::mco::{scalarize, Linearization, McoInstance};
use crate::operator::HermitianOperator;
use crate::scalar::{Real, Scalar};
use crate::walsh::hadamard_transform_real;

/// Largest qubit count for which dense operators are built.
pub const MAX_DENSE_QUBITS: u32 = 12;

/// Default multiplier on the initial Hamiltonian.
pub const DEFAULT_INITIAL_SCALE: f64 = 8.0;

/// Final Hamiltonian, diagonal in the computational basis.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiagonalHamiltonian<T> {
    diagonal: Vec<T>,
}

impl<T: Scalar> DiagonalHamiltonian<T> {
    pub fn new(diagonal: Vec<T>) -> Result<Self> {
        if !diagonal.len().is_power_of_two() || diagonal.len() < 2 {
            return Err(Error::NotPowerOfTwo(diagonal.len()));
        }
        if diagonal
            .iter()
            .any(|v| !v.is_finite_value() || *v < T::zero())
        {
            return Err(Error::InvalidArgument(
                "diagonal entries must be finite and nonnegative".into(),
            ));
        }
        Ok(Self { diagonal })
    }

    pub fn dim(&self) -> usize {
        self.diagonal.len()
    }

    pub fn diagonal(&self) -> &[T] {
        &self.diagonal
    }
}

impl<T: Real> DiagonalHamiltonian<T> {
    pub fn dense(&self) -> HermitianOperator<T> {
        HermitianOperator::from_diagonal(&self.diagonal).expect("dimension checked at construction")
    }
}

/// `H_w`: entry `x` is `<f(x), w>`.
pub fn build_final<T: Scalar>(
    inst: &McoInstance<T>,
    w: &Linearization<T>,
) -> Result<DiagonalHamiltonian<T>> {
    DiagonalHamiltonian::new(scalarize(inst, w)?)
}

/// `c * sum_x h(x) |x^><x^|` with `h(0) = 0` and `h(x) >= 1` elsewhere.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct InitialHamiltonian<T> {
    n: u32,
    h_values: Vec<T>,
    scale: T,
    /// `h = (0, 1, 1, ..., 1)`, so the operator is `c (I - |u><u|)`.
    default_h: bool,
}

pub fn build_initial<T: Real>(
    n: u32,
    scale: T,
    h_values: Option<Vec<T>>,
) -> Result<InitialHamiltonian<T>> {
    if n == 0 || n > MAX_DENSE_QUBITS {
        return Err(Error::InvalidArgument(format!(
            "qubit count must be in 1..={MAX_DENSE_QUBITS}, got {n}"
        )));
    }
    if !(scale > T::zero()) || !scale.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "initial scale must be positive, got {scale}"
        )));
    }
    let dim = 1usize << n;
    let (h_values, default_h) = match h_values {
        None => {
            let mut h = vec![T::one(); dim];
            h[0] = T::zero();
            (h, true)
        }
        Some(h) => {
            if h.len() != dim {
                return Err(Error::InvalidH(format!(
                    "{} values for dimension {dim}",
                    h.len()
                )));
            }
            if !h[0].is_zero() {
                return Err(Error::InvalidH(format!("h(0) must be 0, got {}", h[0])));
            }
            if let Some((x, v)) = h
                .iter()
                .enumerate()
                .skip(1)
                .find(|(_, v)| !(**v >= T::one()) || !v.is_finite())
            {
                return Err(Error::InvalidH(format!("h({x}) = {v} is below 1")));
            }
            let default_h = h.iter().skip(1).all(|v| *v == T::one());
            (h, default_h)
        }
    };
    Ok(InitialHamiltonian {
        n,
        h_values,
        scale,
        default_h,
    })
}

impl<T: Real> InitialHamiltonian<T> {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn scale(&self) -> T {
        self.scale
    }

    pub fn h_values(&self) -> &[T] {
        &self.h_values
    }

    pub fn is_default(&self) -> bool {
        self.default_h
    }

    /// Real symmetric row-major entries.
    pub fn dense_real(&self) -> Vec<T> {
        let dim = self.dim();
        if self.default_h {
            // c (I - J / N)
            let off = -self.scale / T::from_usize(dim).unwrap();
            let mut m = vec![off; dim * dim];
            for i in 0..dim {
                m[i * dim + i] = self.scale + off;
            }
            return m;
        }
        // Column b is F diag(c h) F e_b.
        let mut m = vec![T::zero(); dim * dim];
        let mut col = vec![T::zero(); dim];
        for b in 0..dim {
            col.iter_mut().for_each(|v| *v = T::zero());
            col[b] = T::one();
            hadamard_transform_real(&mut col).expect("power-of-two dimension");
            for (v, &h) in col.iter_mut().zip(&self.h_values) {
                *v = *v * h * self.scale;
            }
            hadamard_transform_real(&mut col).expect("power-of-two dimension");
            for (a, &v) in col.iter().enumerate() {
                m[a * dim + b] = v;
            }
        }
        // Symmetrize away rounding.
        for a in 0..dim {
            for b in a + 1..dim {
                let avg = (m[a * dim + b] + m[b * dim + a]) / T::lit(2.0);
                m[a * dim + b] = avg;
                m[b * dim + a] = avg;
            }
        }
        m
    }

    pub fn dense(&self) -> HermitianOperator<T> {
        let entries = self.dense_real().into_iter().map(Complex::from).collect();
        HermitianOperator::from_parts_unchecked(self.dim(), entries)
    }
}

/// Evaluation grid for the schedule parameter `s`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScheduleGrid<T> {
    points: Vec<T>,
}

impl<T: Real> ScheduleGrid<T> {
    /// Sorted points in `[0, 1]` including both endpoints.
    pub fn new(points: Vec<T>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidArgument(
                "grid needs at least two points".into(),
            ));
        }
        if points.iter().any(|s| !(*s >= T::zero() && *s <= T::one())) {
            return Err(Error::InvalidArgument(
                "grid points must lie in [0, 1]".into(),
            ));
        }
        if points.windows(2).any(|p| p[1] <= p[0]) {
            return Err(Error::InvalidArgument(
                "grid points must be strictly increasing".into(),
            ));
        }
        if !points[0].is_zero() || points[points.len() - 1] != T::one() {
            return Err(Error::InvalidArgument(
                "grid must include s = 0 and s = 1".into(),
            ));
        }
        Ok(Self { points })
    }

    pub fn uniform(count: usize) -> Result<Self> {
        if count < 2 {
            return Err(Error::InvalidArgument(
                "grid needs at least two points".into(),
            ));
        }
        let last = T::from_usize(count - 1).unwrap();
        let mut pts: Vec<T> = (0..count)
            .map(|k| T::from_usize(k).unwrap() / last)
            .collect();
        pts[count - 1] = T::one();
        Self::new(pts)
    }

    pub fn points(&self) -> &[T] {
        &self.points
    }
}

/// `H(s)` with the dense `H_0` cached, for repeated evaluation.
#[derive(Clone, Debug)]
pub struct Interpolation<T> {
    h0: Vec<T>,
    hw: Vec<T>,
    dim: usize,
}

impl<T: Real> Interpolation<T> {
    pub fn new(h0: &InitialHamiltonian<T>, hw: &DiagonalHamiltonian<T>) -> Result<Self> {
        if h0.dim() != hw.dim() {
            return Err(Error::Dimension {
                expected: h0.dim(),
                got: hw.dim(),
            });
        }
        Ok(Self {
            h0: h0.dense_real(),
            hw: hw.diagonal().to_vec(),
            dim: hw.dim(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Real symmetric row-major entries of `H(s)`.
    pub fn real_at(&self, s: T) -> Result<Vec<T>> {
        if !(s >= T::zero() && s <= T::one()) {
            return Err(Error::InvalidArgument(format!("s = {s} outside [0, 1]")));
        }
        let a = T::one() - s;
        let mut m: Vec<T> = self.h0.iter().map(|&v| v * a).collect();
        for (i, &d) in self.hw.iter().enumerate() {
            let k = i * self.dim + i;
            m[k] = m[k] + s * d;
        }
        Ok(m)
    }

    pub fn at(&self, s: T) -> Result<HermitianOperator<T>> {
        let m = self.real_at(s)?;
        Ok(HermitianOperator::from_parts_unchecked(
            self.dim,
            m.into_iter().map(Complex::from).collect(),
        ))
    }

    /// `dH/ds = H_w - H_0`, constant along the linear schedule.
    pub fn derivative(&self) -> HermitianOperator<T> {
        let mut m: Vec<T> = self.h0.iter().map(|&v| -v).collect();
        for (i, &d) in self.hw.iter().enumerate() {
            let k = i * self.dim + i;
            m[k] = m[k] + d;
        }
        HermitianOperator::from_parts_unchecked(
            self.dim,
            m.into_iter().map(Complex::from).collect(),
        )
    }
}

/// Dense `(1 - s) H_0 + s H_w`.
pub fn assemble<T: Real>(
    h0: &InitialHamiltonian<T>,
    hw: &DiagonalHamiltonian<T>,
    s: T,
) -> Result<HermitianOperator<T>> {
    Interpolation::new(h0, hw)?.at(s)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CommutatorCheck {
    /// `||H_0 H_w - H_w H_0||`.
    pub norm: f64,
    pub noncommuting: bool,
}

/// Operator norm of `[H_0, H_w]` and whether it exceeds `tol`.
pub fn commutes<T: Real>(
    h0: &InitialHamiltonian<T>,
    hw: &DiagonalHamiltonian<T>,
    tol: T,
) -> Result<CommutatorCheck> {
    if h0.dim() != hw.dim() {
        return Err(Error::Dimension {
            expected: h0.dim(),
            got: hw.dim(),
        });
    }
    let c = h0.dense().commutator_i(&hw.dense())?;
    let eig = eigh(&c, false)?;
    let norm = eig.values.iter().fold(T::zero(), |m, v| m.max(v.abs()));
    Ok(CommutatorCheck {
        norm: norm.as_f64(),
        noncommuting: norm > tol,
    })
}

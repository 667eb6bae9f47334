use std::ops::Deref;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Largest qubit count an instance table may have.
pub const MAX_QUBITS: u32 = 24;

/// Complete objective table of a multiobjective problem over `{0,1}^n`.
///
/// Row `x` holds `(f_1(x), ..., f_d(x))`. Rows are addressed by domain index
/// `0..2^n`. `label_offset` maps a domain index to the label a report should
/// print next to it (`label = index + label_offset`), for data sets whose
/// published numbering does not start at zero.
#[derive(Clone, Debug, PartialEq)]
pub struct McoInstance<T> {
    n: u32,
    d: usize,
    values: Vec<T>,
    lambda: Option<Vec<T>>,
    label_offset: usize,
}

impl<T: Scalar> McoInstance<T> {
    /// Builds an instance from a row-major `2^n x d` table.
    pub fn new(n: u32, d: usize, values: Vec<T>) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::InvalidInstance(format!(
                "qubit count must be in 1..={MAX_QUBITS}, got {n}"
            )));
        }
        if d < 2 {
            return Err(Error::InvalidInstance(format!(
                "need at least two objectives, got {d}"
            )));
        }
        let rows = 1usize << n;
        if values.len() != rows * d {
            return Err(Error::InvalidInstance(format!(
                "table has {} entries, expected {rows} rows x {d} objectives",
                values.len()
            )));
        }
        for (k, v) in values.iter().enumerate() {
            if !v.is_finite_value() || *v < T::zero() {
                return Err(Error::InvalidInstance(format!(
                    "f{}({}) = {v} is not a finite nonnegative value",
                    k % d + 1,
                    k / d
                )));
            }
        }
        Ok(Self {
            n,
            d,
            values,
            lambda: None,
            label_offset: 0,
        })
    }

    /// Builds an instance from one objective vector per domain element.
    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let count = rows.len();
        if count < 2 || !count.is_power_of_two() {
            return Err(Error::InvalidInstance(format!(
                "row count {count} is not 2^n with n >= 1"
            )));
        }
        let d = rows[0].len();
        let mut values = Vec::with_capacity(count * d);
        for (x, row) in rows.iter().enumerate() {
            if row.len() != d {
                return Err(Error::InvalidInstance(format!(
                    "row {x} has {} objectives, expected {d}",
                    row.len()
                )));
            }
            values.extend_from_slice(row);
        }
        Self::new(count.trailing_zeros(), d, values)
    }

    pub fn with_lambda(mut self, lambda: Vec<T>) -> Result<Self> {
        if lambda.len() != self.d {
            return Err(Error::Dimension {
                expected: self.d,
                got: lambda.len(),
            });
        }
        if lambda
            .iter()
            .any(|l| !l.is_finite_value() || *l <= T::zero())
        {
            return Err(Error::InvalidInstance(
                "gap vector entries must be positive".into(),
            ));
        }
        self.lambda = Some(lambda);
        Ok(self)
    }

    pub fn without_lambda(mut self) -> Self {
        self.lambda = None;
        self
    }

    pub fn with_label_offset(mut self, offset: usize) -> Self {
        self.label_offset = offset;
        self
    }

    /// Qubit count.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Objective count.
    pub fn d(&self) -> usize {
        self.d
    }

    /// Domain size `2^n`.
    pub fn len(&self) -> usize {
        1 << self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn lambda(&self) -> Option<&[T]> {
        self.lambda.as_deref()
    }

    pub fn label_offset(&self) -> usize {
        self.label_offset
    }

    pub fn label(&self, x: usize) -> usize {
        x + self.label_offset
    }

    /// Objective vector `f(x)`.
    pub fn row(&self, x: usize) -> &[T] {
        &self.values[x * self.d..(x + 1) * self.d]
    }

    pub fn objective(&self, x: usize) -> ObjectiveVector<T> {
        ObjectiveVector(self.row(x).to_vec())
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> + '_ {
        self.values.chunks_exact(self.d)
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// `m = max_{x,i} f_i(x)`.
    pub fn max_value(&self) -> T {
        self.values.iter().fold(T::zero(), |acc, &v| acc.max_of(v))
    }

    pub(crate) fn check_index(&self, x: usize) -> Result<()> {
        if x >= self.len() {
            return Err(Error::InvalidArgument(format!(
                "index {x} outside domain 0..{}",
                self.len()
            )));
        }
        Ok(())
    }

    /// Converts every table entry into another scalar type.
    pub fn map_scalar<U: Scalar>(&self) -> Result<McoInstance<U>> {
        let conv = |v: &T| {
            U::from_f64(v.as_f64())
                .ok_or_else(|| Error::InvalidInstance(format!("value {v} not representable")))
        };
        let values = self.values.iter().map(conv).collect::<Result<Vec<U>>>()?;
        let mut out =
            McoInstance::new(self.n, self.d, values)?.with_label_offset(self.label_offset);
        if let Some(l) = &self.lambda {
            out = out.with_lambda(l.iter().map(conv).collect::<Result<Vec<U>>>()?)?;
        }
        Ok(out)
    }
}

/// `f(x) = (f_1(x), ..., f_d(x))`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct ObjectiveVector<T>(pub Vec<T>);

impl<T> Deref for ObjectiveVector<T> {
    type Target = [T];
    fn deref(&self) -> &[T] {
        &self.0
    }
}

/// Weight vector `w` with every `w_i` in `[0, 1)` and `sum w_i = 1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Linearization<T> {
    weights: Vec<T>,
}

impl<T: Scalar> Linearization<T> {
    pub fn new(weights: Vec<T>) -> Result<Self> {
        if weights.len() < 2 {
            return Err(Error::InvalidLinearization(format!(
                "need at least two weights, got {}",
                weights.len()
            )));
        }
        let mut sum = T::zero();
        for (i, &w) in weights.iter().enumerate() {
            if !w.is_finite_value() || w < T::zero() || w >= T::one() {
                return Err(Error::InvalidLinearization(format!(
                    "w{} = {w} is outside [0, 1)",
                    i + 1
                )));
            }
            sum = sum + w;
        }
        if (sum - T::one()).abs() > T::sum_tolerance() {
            return Err(Error::InvalidLinearization(format!(
                "weights sum to {sum}, not 1"
            )));
        }
        Ok(Self { weights })
    }

    /// Two-objective shorthand `(w, 1 - w)`.
    pub fn pair(w1: T) -> Result<Self> {
        Self::new(vec![w1, T::one() - w1])
    }

    pub fn uniform(d: usize) -> Result<Self> {
        let share = T::one() / T::from_usize(d).expect("objective count fits scalar");
        Self::new(vec![share; d])
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn d(&self) -> usize {
        self.weights.len()
    }

    /// `<f, w>`.
    pub fn apply(&self, f: &[T]) -> T {
        f.iter()
            .zip(&self.weights)
            .fold(T::zero(), |acc, (&fi, &wi)| acc + fi * wi)
    }

    /// `||self - other||_1`.
    pub fn l1_distance(&self, other: &Self) -> T {
        self.weights
            .iter()
            .zip(&other.weights)
            .fold(T::zero(), |acc, (&a, &b)| acc + (a - b).abs())
    }

    pub fn check_dim(&self, d: usize) -> Result<()> {
        if self.d() != d {
            return Err(Error::InvalidLinearization(format!(
                "{} weights for {d} objectives",
                self.d()
            )));
        }
        Ok(())
    }
}

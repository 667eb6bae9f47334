//! Dense Hermitian operators.

use std::io::Write;

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Dense `dim x dim` Hermitian matrix stored row-major. `dim` is a power of two.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianOperator<T> {
    dim: usize,
    entries: Vec<Complex<T>>,
}

/// Allowed `|a_ij - conj(a_ji)|`, relative to `max(1, max |a_ij|)`.
pub fn hermitian_tolerance<T: Real>() -> T {
    T::lit(1e-12).max(T::epsilon() * T::lit(8.0))
}

impl<T: Real> HermitianOperator<T> {
    /// Wraps `entries`, checking the shape and conjugate symmetry.
    pub fn from_entries(dim: usize, entries: Vec<Complex<T>>) -> Result<Self> {
        if !dim.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(dim));
        }
        if entries.len() != dim * dim {
            return Err(Error::Dimension {
                expected: dim * dim,
                got: entries.len(),
            });
        }
        let op = Self { dim, entries };
        let asym = op.max_asymmetry();
        let scale = T::one().max(op.max_abs());
        if asym > hermitian_tolerance::<T>() * scale {
            return Err(Error::NotHermitian(asym.as_f64()));
        }
        Ok(op)
    }

    pub fn from_real_symmetric(dim: usize, entries: Vec<T>) -> Result<Self> {
        Self::from_entries(dim, entries.into_iter().map(Complex::from).collect())
    }

    pub fn from_diagonal(diag: &[T]) -> Result<Self> {
        let dim = diag.len();
        if !dim.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(dim));
        }
        let mut entries = vec![Complex::zero(); dim * dim];
        for (i, &v) in diag.iter().enumerate() {
            entries[i * dim + i] = Complex::from(v);
        }
        Ok(Self { dim, entries })
    }

    /// Skips validation; callers guarantee Hermitian structure.
    pub(crate) fn from_parts_unchecked(dim: usize, entries: Vec<Complex<T>>) -> Self {
        Self { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> Complex<T> {
        self.entries[i * self.dim + j]
    }

    pub fn entries(&self) -> &[Complex<T>] {
        &self.entries
    }

    /// True when every imaginary part is exactly zero.
    pub fn is_real(&self) -> bool {
        self.entries.iter().all(|z| z.im.is_zero())
    }

    pub fn max_abs(&self) -> T {
        self.entries.iter().fold(T::zero(), |m, z| m.max(z.norm()))
    }

    pub fn max_asymmetry(&self) -> T {
        let n = self.dim;
        let mut worst = T::zero();
        for i in 0..n {
            for j in i..n {
                let d = (self.get(i, j) - self.get(j, i).conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    pub fn diagonal(&self) -> Vec<T> {
        (0..self.dim).map(|i| self.get(i, i).re).collect()
    }

    /// `a * self + b * other`.
    pub fn lin_comb(&self, a: T, other: &Self, b: T) -> Result<Self> {
        self.check_same_dim(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&x, &y)| x * a + y * b)
            .collect();
        Ok(Self::from_parts_unchecked(self.dim, entries))
    }

    pub fn scaled(&self, c: T) -> Self {
        Self::from_parts_unchecked(self.dim, self.entries.iter().map(|&z| z * c).collect())
    }

    /// `i (A B - B A)`, Hermitian whenever `A` and `B` are.
    pub fn commutator_i(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let ab = self.matmul(other);
        let ba = other.matmul(self);
        let i = Complex::new(T::zero(), T::one());
        let entries = ab.iter().zip(&ba).map(|(&x, &y)| (x - y) * i).collect();
        Ok(Self::from_parts_unchecked(self.dim, entries))
    }

    fn matmul(&self, other: &Self) -> Vec<Complex<T>> {
        let n = self.dim;
        let mut out = vec![Complex::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                let row = &other.entries[k * n..(k + 1) * n];
                for (o, &b) in out[i * n..(i + 1) * n].iter_mut().zip(row) {
                    *o = *o + a * b;
                }
            }
        }
        out
    }

    /// `H v`.
    pub fn apply(&self, v: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        if v.len() != self.dim {
            return Err(Error::Dimension {
                expected: self.dim,
                got: v.len(),
            });
        }
        Ok(self
            .entries
            .chunks_exact(self.dim)
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(Complex::zero(), |acc, (&a, &b)| acc + a * b)
            })
            .collect())
    }

    pub fn identity(dim: usize) -> Result<Self> {
        Self::from_diagonal(&vec![T::one(); dim])
    }

    fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::Dimension {
                expected: self.dim,
                got: other.dim,
            });
        }
        Ok(())
    }

    /// Debug dump: `# dim=N`, then `re,im` per entry in row-major order.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "# dim={}", self.dim)?;
        writeln!(w, "re,im")?;
        for z in &self.entries {
            writeln!(w, "{},{}", z.re, z.im)?;
        }
        Ok(())
    }
}

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// In-place `F^{(x)n}` on `2^n` amplitudes, `1/sqrt(2)` per butterfly stage.
///
/// The transform is orthogonal and its own inverse.
pub fn hadamard_transform<T: Real>(amps: &mut [Complex<T>]) -> Result<()> {
    let len = amps.len();
    if len == 0 || !len.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(len));
    }
    let norm = T::lit(std::f64::consts::FRAC_1_SQRT_2);
    let mut half = 1;
    while half < len {
        for block in amps.chunks_exact_mut(2 * half) {
            let (lo, hi) = block.split_at_mut(half);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = (x + y) * norm;
                *b = (x - y) * norm;
            }
        }
        half *= 2;
    }
    Ok(())
}

/// Real-valued variant used for building operators.
pub fn hadamard_transform_real<T: Real>(vals: &mut [T]) -> Result<()> {
    let len = vals.len();
    if len == 0 || !len.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(len));
    }
    let norm = T::lit(std::f64::consts::FRAC_1_SQRT_2);
    let mut half = 1;
    while half < len {
        for block in vals.chunks_exact_mut(2 * half) {
            let (lo, hi) = block.split_at_mut(half);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = (x + y) * norm;
                *b = (x - y) * norm;
            }
        }
        half *= 2;
    }
    Ok(())
}

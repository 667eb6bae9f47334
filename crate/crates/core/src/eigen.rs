//! Dense Hermitian eigensolvers.
//!
//! Real symmetric input goes through Householder tridiagonalization followed by
//! implicit QL with Wilkinson-style shifts (the EISPACK `tred2`/`tql2` pair).
//! Input with nonzero imaginary parts uses cyclic complex Jacobi rotations.
//! Both return eigenvalues in ascending order.

// Index loops follow the reference algorithms line by line.
#![allow(clippy::needless_range_loop, clippy::type_complexity)]

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::operator::HermitianOperator;
use crate::scalar::Real;

const MAX_QL_ITERATIONS: usize = 60;
const MAX_JACOBI_SWEEPS: usize = 100;

/// Eigenvalues (ascending) and, when requested, unit eigenvectors.
#[derive(Clone, Debug)]
pub struct Eigen<T> {
    pub values: Vec<T>,
    /// `vectors[k]` belongs to `values[k]`.
    pub vectors: Option<Vec<Vec<Complex<T>>>>,
}

pub fn eigh<T: Real>(h: &HermitianOperator<T>, want_vectors: bool) -> Result<Eigen<T>> {
    if h.dim() == 1 {
        return Ok(Eigen {
            values: vec![h.get(0, 0).re],
            vectors: want_vectors.then(|| vec![vec![Complex::from(T::one())]]),
        });
    }
    if h.is_real() {
        let a: Vec<T> = h.entries().iter().map(|z| z.re).collect();
        let (values, vecs) = symmetric_eigen(h.dim(), a, want_vectors)?;
        let vectors = vecs.map(|v| {
            v.into_iter()
                .map(|col| col.into_iter().map(Complex::from).collect())
                .collect()
        });
        Ok(Eigen { values, vectors })
    } else {
        let (values, vectors) = jacobi_hermitian(h)?;
        Ok(Eigen {
            values,
            vectors: want_vectors.then_some(vectors),
        })
    }
}

/// Eigen-decomposition of a real symmetric row-major matrix.
///
/// Returns ascending eigenvalues and, if requested, the eigenvectors as
/// columns (`out[k]` is the vector of value `k`).
pub fn symmetric_eigen<T: Real>(
    n: usize,
    a: Vec<T>,
    want_vectors: bool,
) -> Result<(Vec<T>, Option<Vec<Vec<T>>>)> {
    debug_assert_eq!(a.len(), n * n);
    let mut v: Vec<Vec<T>> = a.chunks_exact(n).map(<[T]>::to_vec).collect();
    let mut d = vec![T::zero(); n];
    let mut e = vec![T::zero(); n];
    tred2(&mut v, &mut d, &mut e, want_vectors);
    tql2(&mut v, &mut d, &mut e, want_vectors)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].partial_cmp(&d[j]).unwrap());
    let values = order.iter().map(|&k| d[k]).collect();
    let vectors = want_vectors.then(|| {
        order
            .iter()
            .map(|&k| (0..n).map(|row| v[row][k]).collect())
            .collect()
    });
    Ok((values, vectors))
}

/// Householder reduction to tridiagonal form. On return `d` is the diagonal
/// and `e[1..]` the subdiagonal; `v` holds the accumulated transform when
/// `accumulate` is set.
fn tred2<T: Real>(v: &mut [Vec<T>], d: &mut [T], e: &mut [T], accumulate: bool) {
    let n = d.len();
    d.copy_from_slice(&v[n - 1]);
    for i in (1..n).rev() {
        let mut scale = T::zero();
        let mut h = T::zero();
        for k in 0..i {
            scale = scale + d[k].abs();
        }
        if scale.is_zero() {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[i - 1][j];
                v[i][j] = T::zero();
                v[j][i] = T::zero();
            }
        } else {
            for k in 0..i {
                d[k] = d[k] / scale;
                h = h + d[k] * d[k];
            }
            let mut f = d[i - 1];
            let mut g = h.sqrt();
            if f > T::zero() {
                g = -g;
            }
            e[i] = scale * g;
            h = h - f * g;
            d[i - 1] = f - g;
            for ej in e.iter_mut().take(i) {
                *ej = T::zero();
            }
            for j in 0..i {
                f = d[j];
                v[j][i] = f;
                g = e[j] + v[j][j] * f;
                for k in j + 1..i {
                    g = g + v[k][j] * d[k];
                    e[k] = e[k] + v[k][j] * f;
                }
                e[j] = g;
            }
            f = T::zero();
            for j in 0..i {
                e[j] = e[j] / h;
                f = f + e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] = e[j] - hh * d[j];
            }
            for j in 0..i {
                f = d[j];
                g = e[j];
                for k in j..i {
                    v[k][j] = v[k][j] - (f * e[k] + g * d[k]);
                }
                d[j] = v[i - 1][j];
                v[i][j] = T::zero();
            }
        }
        d[i] = h;
    }

    if !accumulate {
        for (j, dj) in d.iter_mut().enumerate() {
            *dj = v[j][j];
        }
        e[0] = T::zero();
        return;
    }

    for i in 0..n - 1 {
        v[n - 1][i] = v[i][i];
        v[i][i] = T::one();
        let h = d[i + 1];
        if !h.is_zero() {
            for k in 0..=i {
                d[k] = v[k][i + 1] / h;
            }
            for j in 0..=i {
                let mut g = T::zero();
                for k in 0..=i {
                    g = g + v[k][i + 1] * v[k][j];
                }
                for k in 0..=i {
                    v[k][j] = v[k][j] - g * d[k];
                }
            }
        }
        for row in v.iter_mut().take(i + 1) {
            row[i + 1] = T::zero();
        }
    }
    for j in 0..n {
        d[j] = v[n - 1][j];
        v[n - 1][j] = T::zero();
    }
    v[n - 1][n - 1] = T::one();
    e[0] = T::zero();
}

/// Implicit QL on the tridiagonal `(d, e)`, rotating `v` when `accumulate`.
fn tql2<T: Real>(v: &mut [Vec<T>], d: &mut [T], e: &mut [T], accumulate: bool) -> Result<()> {
    let n = d.len();
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = T::zero();

    let two = T::lit(2.0);
    let eps = T::epsilon();
    let mut f = T::zero();
    let mut tst1 = T::zero();
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }
        // e[n-1] is zero, so m < n here.
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > MAX_QL_ITERATIONS {
                    return Err(Error::NoConvergence { at_s: None });
                }
                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (two * e[l]);
                let mut r = p.hypot(T::one());
                if p < T::zero() {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().skip(l + 2) {
                    *di = *di - h;
                }
                f = f + h;

                p = d[m];
                let mut c = T::one();
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = T::zero();
                let mut s2 = T::zero();
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    if accumulate {
                        for row in v.iter_mut() {
                            let hk = row[i + 1];
                            row[i + 1] = s * row[i] + c * hk;
                            row[i] = c * row[i] - s * hk;
                        }
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] = d[l] + f;
        e[l] = T::zero();
    }
    Ok(())
}

/// Cyclic Jacobi for complex Hermitian matrices.
///
/// Each rotation first removes the phase of `a_pq` with a diagonal unitary on
/// index `q`, then zeroes the now real entry with a plane rotation.
fn jacobi_hermitian<T: Real>(h: &HermitianOperator<T>) -> Result<(Vec<T>, Vec<Vec<Complex<T>>>)> {
    let n = h.dim();
    let mut a: Vec<Complex<T>> = h.entries().to_vec();
    // v is row-major; eigenvector k is column k.
    let mut v = vec![Complex::<T>::zero(); n * n];
    for i in 0..n {
        v[i * n + i] = Complex::from(T::one());
    }
    let idx = |i: usize, j: usize| i * n + j;

    let total: T = a.iter().fold(T::zero(), |s, z| s + z.norm_sqr());
    let target = T::epsilon() * T::epsilon() * total;
    let mut converged = false;
    for _ in 0..MAX_JACOBI_SWEEPS {
        let mut off = T::zero();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    off = off + a[idx(i, j)].norm_sqr();
                }
            }
        }
        if off <= target {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[idx(p, q)];
                let mag = apq.norm();
                if mag.is_zero() {
                    continue;
                }
                // A <- P^H A P with P_qq = conj(phase).
                let phase = apq / mag;
                let ph_conj = phase.conj();
                for k in 0..n {
                    a[idx(k, q)] = a[idx(k, q)] * ph_conj;
                }
                for k in 0..n {
                    a[idx(q, k)] = a[idx(q, k)] * phase;
                }
                for k in 0..n {
                    v[idx(k, q)] = v[idx(k, q)] * ph_conj;
                }

                let app = a[idx(p, p)].re;
                let aqq = a[idx(q, q)].re;
                let theta = (aqq - app) / (T::lit(2.0) * mag);
                let sign = if theta < T::zero() {
                    -T::one()
                } else {
                    T::one()
                };
                let t = sign / (theta.abs() + (theta * theta + T::one()).sqrt());
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[idx(k, p)];
                    let akq = a[idx(k, q)];
                    a[idx(k, p)] = akp * c - akq * s;
                    a[idx(k, q)] = akp * s + akq * c;
                }
                for k in 0..n {
                    let apk = a[idx(p, k)];
                    let aqk = a[idx(q, k)];
                    a[idx(p, k)] = apk * c - aqk * s;
                    a[idx(q, k)] = apk * s + aqk * c;
                }
                a[idx(p, q)] = Complex::zero();
                a[idx(q, p)] = Complex::zero();
                for k in 0..n {
                    let vkp = v[idx(k, p)];
                    let vkq = v[idx(k, q)];
                    v[idx(k, p)] = vkp * c - vkq * s;
                    v[idx(k, q)] = vkp * s + vkq * c;
                }
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence { at_s: None });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[idx(i, i)].re.partial_cmp(&a[idx(j, j)].re).unwrap());
    let values = order.iter().map(|&k| a[idx(k, k)].re).collect();
    let vectors = order
        .iter()
        .map(|&k| (0..n).map(|row| v[idx(row, k)]).collect())
        .collect();
    Ok((values, vectors))
}
